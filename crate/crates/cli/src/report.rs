use std::fmt::Write;

use sonoterrain_core::data::{compute_stats, Axis, AxisStats, DatasetStats};
use sonoterrain_core::nav::Surface;
use sonoterrain_core::salience::{PeakSet, PeakSign};
use sonoterrain_core::SurfaceDataset;

fn axis_block(out: &mut String, dataset: &SurfaceDataset, axis: Axis, s: &AxisStats) {
    let meta = dataset.axis_meta(axis);
    let heading = if meta.unit.is_empty() {
        meta.label.clone()
    } else {
        format!("{} ({})", meta.label, meta.unit)
    };
    let _ = writeln!(out, "{heading}");
    for (name, v) in [
        ("min", s.min),
        ("max", s.max),
        ("range", s.range),
        ("mean", s.mean),
        ("median", s.median),
        ("std", s.std),
        ("mode", s.mode),
    ] {
        let _ = writeln!(out, "  {name}: {v:.3}");
    }
}

/// Sidebar-style summary: one block per axis, then dataset totals.
pub fn stats_text(dataset: &SurfaceDataset) -> String {
    let stats: DatasetStats = compute_stats(dataset);
    let mut out = String::new();
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        axis_block(&mut out, dataset, axis, stats.axis(axis));
    }
    let x = &dataset.axis_meta(Axis::X).label;
    let y = &dataset.axis_meta(Axis::Y).label;
    let _ = writeln!(out, "Summary");
    let _ = writeln!(out, "  count: {}", stats.count);
    let _ = writeln!(out, "  integrity: valid");
    let _ = writeln!(out, "  mode {x}: {:.3}", stats.x.mode);
    let _ = writeln!(out, "  skewness of {y}: {:.3}", stats.y_skewness);
    out
}

pub fn stats_json(dataset: &SurfaceDataset) -> serde_json::Value {
    serde_json::to_value(compute_stats(dataset)).expect("stats always serialize")
}

pub fn peaks_text(peaks: &PeakSet, surface: &Surface) -> String {
    let mut out = String::new();
    for (i, p) in peaks.peaks.iter().enumerate() {
        let pos = surface.grid.pos_of(p.rect_index);
        let sign = match p.sign {
            PeakSign::Positive => "peak",
            PeakSign::Negative => "trough",
        };
        let _ = writeln!(
            out,
            "{:>2}  {sign:<6}  row {:>2}, column {:>2}  x={:.3}  z={:.3}  avg_y={:.6}",
            i + 1,
            pos.row + 1,
            pos.col + 1,
            p.x,
            p.z,
            p.avg_y
        );
    }
    out
}
