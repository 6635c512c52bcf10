//! Independent reference implementations used to cross-check the engine.
//!
//! Each oracle deliberately takes a different route from the production code:
//! two-pass moments instead of online updates, rank counting instead of
//! sorting, compensated summation, and an insertion sort.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sonoterrain_core::data::{AxisMeta, GridModel, Point, SurfaceDataset};
use sonoterrain_core::nav::{FocusKind, FocusSample};
use sonoterrain_core::data::GridPos;
use sonoterrain_core::salience::{PeakSign, SalienceConfig};

pub fn meta() -> [AxisMeta; 3] {
    [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")]
}

pub fn dataset(points: Vec<Point>) -> SurfaceDataset {
    SurfaceDataset::new(points, meta(), "oracle").unwrap()
}

/// Population mean and standard deviation, two passes.
pub fn two_pass(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Per-rectangle member lists by scanning every point against explicit bin edges.
pub fn rebin(points: &[Point], rows: usize, cols: usize) -> Vec<Vec<usize>> {
    let (x_lo, x_hi) = extent(points.iter().map(|p| p.x));
    let (z_lo, z_hi) = extent(points.iter().map(|p| p.z));
    let edge = |lo: f64, hi: f64, n: usize, i: usize| if i == n { hi } else { lo + (hi - lo) * (i as f64 / n as f64) };
    let inside = |v: f64, lo: f64, hi: f64, n: usize, i: usize| {
        if hi <= lo {
            return i == 0;
        }
        let (a, b) = (edge(lo, hi, n, i), edge(lo, hi, n, i + 1));
        a <= v && (v < b || (i == n - 1 && v <= b))
    };
    let mut cells = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let members = points
                .iter()
                .enumerate()
                .filter(|(_, p)| inside(p.x, x_lo, x_hi, cols, c) && inside(p.z, z_lo, z_hi, rows, r))
                .map(|(i, _)| i)
                .collect();
            cells.push(members);
        }
    }
    cells
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// `(rect_index, sign)` in final order, found by counting ranks rather than sorting.
pub fn peaks(grid: &GridModel, config: &SalienceConfig) -> Vec<(usize, PeakSign)> {
    let rects: Vec<(usize, f64, f64, f64)> = grid
        .rectangles()
        .iter()
        .filter(|r| !r.empty)
        .map(|r| (r.index, r.center_x, r.center_z, r.avg_y))
        .collect();
    if rects.is_empty() {
        return Vec::new();
    }
    let k = config.candidate_count;

    // Rank = number of rectangles strictly ahead in the ordering.
    let higher = |a: &(usize, f64, f64, f64), b: &(usize, f64, f64, f64)| a.3 > b.3 || (a.3 == b.3 && a.0 < b.0);
    let lower = |a: &(usize, f64, f64, f64), b: &(usize, f64, f64, f64)| a.3 < b.3 || (a.3 == b.3 && a.0 < b.0);

    let mut top = vec![None; k];
    for r in &rects {
        let rank = rects.iter().filter(|o| higher(o, r)).count();
        if rank < k {
            top[rank] = Some(*r);
        }
    }
    let top: Vec<_> = top.into_iter().flatten().collect();
    let rest: Vec<_> = rects.iter().filter(|r| !top.iter().any(|t| t.0 == r.0)).copied().collect();
    let mut bottom = vec![None; k];
    for r in &rest {
        let rank = rest.iter().filter(|o| lower(o, r)).count();
        if rank < k {
            bottom[rank] = Some(*r);
        }
    }
    let bottom: Vec<_> = bottom.into_iter().flatten().collect();

    let mut kept: Vec<((usize, f64, f64, f64), PeakSign)> = Vec::new();
    for (r, sign) in top
        .iter()
        .map(|r| (*r, PeakSign::Positive))
        .chain(bottom.iter().map(|r| (*r, PeakSign::Negative)))
    {
        if !kept.iter().any(|(o, _)| o.1 == r.1 && o.2 == r.2 && o.3 == r.3) {
            kept.push((r, sign));
        }
    }

    let mut sum = 0.0;
    let (mut min, mut max) = (rects[0].3, rects[0].3);
    for r in &rects {
        sum += r.3;
        if r.3 < min {
            min = r.3;
        }
        if r.3 > max {
            max = r.3;
        }
    }
    let mean = sum / rects.len() as f64;
    let threshold = (max - min) * config.threshold_fraction;
    let near = |v: f64| (v - mean).abs() <= threshold;

    let pos: Vec<_> = kept.iter().filter(|(_, s)| *s == PeakSign::Positive).collect();
    let neg: Vec<_> = kept.iter().filter(|(_, s)| *s == PeakSign::Negative).collect();
    let pos_near = pos.iter().all(|(r, _)| near(r.3));
    let neg_near = neg.iter().all(|(r, _)| near(r.3));
    let want_pos = !(pos_near && !neg_near);
    let want_neg = !(neg_near && !pos_near);

    let mut out = Vec::new();
    if want_pos {
        out.extend(pos.iter().take(config.select_count).map(|(r, s)| (r.0, *s)));
    }
    if want_neg {
        out.extend(neg.iter().take(config.select_count).map(|(r, s)| (r.0, *s)));
    }
    out
}

/// Neumaier-compensated mean.
pub fn compensated_mean(values: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / values.len() as f64
}

/// Insertion sort keyed `(z, x, index)`.
pub fn front_to_back(items: &[FocusSample]) -> Vec<FocusSample> {
    let before = |a: &FocusSample, b: &FocusSample| {
        a.z < b.z || (a.z == b.z && (a.x < b.x || (a.x == b.x && a.index < b.index)))
    };
    let mut out: Vec<FocusSample> = Vec::with_capacity(items.len());
    for item in items {
        let at = out.iter().position(|o| before(item, o)).unwrap_or(out.len());
        out.insert(at, *item);
    }
    out
}

/// A random dataset of one of several shapes, chosen by the seed: full lattices,
/// sparse clouds with empty cells, heavily tied heights, and planted spikes or pits.
pub fn random_surface(seed: u64) -> SurfaceDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = match seed % 5 {
        0 => lattice(20, 20, |_, _| rng.random_range(-5.0..5.0)),
        1 => (0..rng.random_range(30..300))
            .map(|_| Point::new(rng.random_range(0.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0)))
            .collect(),
        2 => lattice(20, 20, |_, _| rng.random_range(0..4) as f64),
        3 => {
            let (pr, pc) = (rng.random_range(0..20), rng.random_range(0..20));
            let h = rng.random_range(50.0..100.0);
            lattice(20, 20, |r, c| if (r, c) == (pr, pc) { h } else { rng.random_range(0.0..1.0) })
        }
        _ => {
            let (pr, pc) = (rng.random_range(0..20), rng.random_range(0..20));
            lattice(40, 40, |r, c| if (r / 2, c / 2) == (pr, pc) { -50.0 } else { rng.random_range(0.0..0.5) })
        }
    };
    dataset(points)
}

fn lattice(rows: usize, cols: usize, mut y: impl FnMut(usize, usize) -> f64) -> Vec<Point> {
    let mut pts = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            pts.push(Point::new(c as f64, y(r, c), r as f64));
        }
    }
    pts
}

pub fn random_sample(rng: &mut ChaCha8Rng, index: usize) -> FocusSample {
    // Coarse coordinates so ties in z and x actually occur.
    let x = rng.random_range(0..6) as f64;
    let z = rng.random_range(0..6) as f64;
    let y = rng.random_range(-10.0..10.0);
    FocusSample {
        x,
        y,
        z,
        x_norm: x / 5.0,
        y_norm: (y + 10.0) / 20.0,
        z_norm: z / 5.0,
        kind: FocusKind::Rectangle,
        index,
        cell: GridPos::new(z as usize, x as usize),
    }
}
