use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AxisMeta, DataError, Point, SurfaceDataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyntheticKind {
    Gaussian,
    Sinusoidal,
    BenzeneLike,
}

impl SyntheticKind {
    pub const ALL: [SyntheticKind; 3] = [Self::Gaussian, Self::Sinusoidal, Self::BenzeneLike];

    pub fn name(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Sinusoidal => "sinusoidal",
            Self::BenzeneLike => "benzene_like",
        }
    }
}

impl FromStr for SyntheticKind {
    type Err = DataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| DataError::InvalidParams(format!("unknown synthetic dataset {s:?}")))
    }
}

/// Shape parameters. `cols`/`rows` count samples along X and Z; the benzene-like
/// surface has a fixed 41 × 76 lattice and ignores them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticParams {
    pub cols: usize,
    pub rows: usize,
    pub amplitude: f64,
    /// Half-width of uniform noise added to y.
    pub noise: f64,
    pub seed: u64,
}

impl SyntheticParams {
    pub fn for_kind(kind: SyntheticKind) -> Self {
        let (cols, rows) = match kind {
            SyntheticKind::Gaussian => (50, 50),
            SyntheticKind::Sinusoidal => (40, 40),
            SyntheticKind::BenzeneLike => (BENZENE_COLS, BENZENE_ROWS),
        };
        Self {
            cols,
            rows,
            amplitude: 1.0,
            noise: 0.0,
            seed: 0,
        }
    }
}

const BENZENE_COLS: usize = 41;
const BENZENE_ROWS: usize = 76;

fn lattice(cols: usize, rows: usize, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> {
    let step = move |i: usize, n: usize| {
        if n == 1 {
            (lo + hi) / 2.0
        } else {
            lo + (hi - lo) * (i as f64 / (n - 1) as f64)
        }
    };
    (0..rows).flat_map(move |r| (0..cols).map(move |c| (step(c, cols), step(r, rows))))
}

/// Sharp single peak over a slowly decaying baseline, peaking at exactly 2 intensity units.
fn benzene_intensity(x: f64, z: f64) -> f64 {
    let baseline = |x: f64, z: f64| 0.06 * (-(x - 120.0) / 80.0).exp() * (1.0 + 0.5 * (z * PI / 7.5).cos()) / 1.5;
    let (px, pz) = (150.0, 6.0);
    let bump = (-((x - px).powi(2) / (2.0 * 3.0f64.powi(2)) + (z - pz).powi(2) / (2.0 * 1.2f64.powi(2)))).exp();
    baseline(x, z) + (2.0 - baseline(px, pz)) * bump
}

/// Deterministic synthetic surfaces. Points are emitted row by row (Z outer, X inner).
pub fn generate_synthetic(
    kind: SyntheticKind,
    params: &SyntheticParams,
) -> Result<SurfaceDataset, DataError> {
    if !params.amplitude.is_finite() || !params.noise.is_finite() || params.noise < 0.0 {
        return Err(DataError::InvalidParams(
            "amplitude and noise must be finite, noise non-negative".into(),
        ));
    }
    if kind != SyntheticKind::BenzeneLike && (params.cols == 0 || params.rows == 0) {
        return Err(DataError::InvalidParams("grid dimensions must be positive".into()));
    }

    let (points, meta): (Vec<Point>, [AxisMeta; 3]) = match kind {
        SyntheticKind::Gaussian => (
            lattice(params.cols, params.rows, -3.0, 3.0)
                .map(|(x, z)| Point::new(x, params.amplitude * (-(x * x + z * z)).exp(), z))
                .collect(),
            [AxisMeta::new("x", ""), AxisMeta::new("height", ""), AxisMeta::new("z", "")],
        ),
        SyntheticKind::Sinusoidal => (
            lattice(params.cols, params.rows, 0.0, TAU)
                .map(|(x, z)| Point::new(x, params.amplitude * x.sin() * z.sin(), z))
                .collect(),
            [AxisMeta::new("x", ""), AxisMeta::new("height", ""), AxisMeta::new("z", "")],
        ),
        SyntheticKind::BenzeneLike => (
            (0..BENZENE_ROWS)
                .flat_map(|r| (0..BENZENE_COLS).map(move |c| (c, r)))
                .map(|(c, r)| {
                    let x = 120.0 + 2.0 * c as f64;
                    let z = r as f64 / 5.0;
                    Point::new(x, params.amplitude * benzene_intensity(x, z), z)
                })
                .collect(),
            [
                AxisMeta::new("wavelength", "nm"),
                AxisMeta::new("intensity", "AU"),
                AxisMeta::new("time", "min"),
            ],
        ),
    };

    let points = if params.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        points
            .into_iter()
            .map(|p| Point::new(p.x, p.y + rng.random_range(-params.noise..=params.noise), p.z))
            .collect()
    } else {
        points
    };
    SurfaceDataset::new(points, meta, kind.name())
}
