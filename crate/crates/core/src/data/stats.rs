use serde::{Deserialize, Serialize};

use super::{Axis, SurfaceDataset};

/// Summary of one axis. `std` is the population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    pub std: f64,
    pub range: f64,
    /// Most frequent exact value; ties go to the smallest.
    pub mode: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub x: AxisStats,
    pub y: AxisStats,
    pub z: AxisStats,
    pub count: usize,
    /// Third standardized moment of y (population); 0 when y is constant.
    pub y_skewness: f64,
}

impl DatasetStats {
    pub fn axis(&self, axis: Axis) -> &AxisStats {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }
}

/// Running central moments, updated one sample at a time.
#[derive(Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
    m3: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        let n1 = self.n;
        self.n += 1.0;
        let delta = x - self.mean;
        let delta_n = delta / self.n;
        let term1 = delta * delta_n * n1;
        self.mean += delta_n;
        self.m3 += term1 * delta_n * (self.n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
    }

    fn variance(&self) -> f64 {
        (self.m2 / self.n).max(0.0)
    }

    fn skewness(&self) -> f64 {
        if self.m2 <= 0.0 {
            return 0.0;
        }
        self.n.sqrt() * self.m3 / self.m2.powf(1.5)
    }
}

fn axis_stats(values: &mut [f64]) -> (AxisStats, Moments) {
    let mut moments = Moments::default();
    for &v in values.iter() {
        moments.push(v);
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    let median = if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    };

    // Sorted ascending, so the first run to reach the top count is the smallest mode.
    let mut mode = values[0];
    let mut best = 0usize;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[j] == values[i] {
            j += 1;
        }
        if j - i > best {
            best = j - i;
            mode = values[i];
        }
        i = j;
    }

    let (min, max) = (values[0], values[n - 1]);
    let stats = AxisStats {
        min,
        max,
        mean: moments.mean,
        median,
        std: moments.variance().sqrt(),
        range: max - min,
        mode,
    };
    (stats, moments)
}

pub fn compute_stats(dataset: &SurfaceDataset) -> DatasetStats {
    let column = |axis| dataset.axis_values(axis).collect::<Vec<f64>>();
    let (x, _) = axis_stats(&mut column(Axis::X));
    let (y, y_moments) = axis_stats(&mut column(Axis::Y));
    let (z, _) = axis_stats(&mut column(Axis::Z));
    DatasetStats {
        x,
        y,
        z,
        count: dataset.len(),
        y_skewness: y_moments.skewness(),
    }
}

/// Map `value` onto [0, 1] using the axis extent. A flat axis maps everything to 0.5.
pub fn normalize(value: f64, axis: Axis, stats: &DatasetStats) -> f64 {
    let s = stats.axis(axis);
    if s.range == 0.0 {
        return 0.5;
    }
    ((value - s.min) / s.range).clamp(0.0, 1.0)
}
