//! Height-field datasets: ingestion, statistics, normalization and grid binning.

mod grid;
mod stats;
mod synthetic;

pub use grid::{build_grid, AxisBins, GridModel, GridPos, Rectangle};
pub use stats::{compute_stats, normalize, AxisStats, DatasetStats};
pub use synthetic::{generate_synthetic, SyntheticKind, SyntheticParams};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("missing header row")]
    MissingHeader,
    #[error("header must name exactly three columns, found {0}")]
    BadHeader(usize),
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("non-finite value at line {line}, column {column}")]
    NonFiniteValue { line: u64, column: usize },
    #[error("dataset contains no points")]
    EmptyDataset,
    #[error("invalid synthetic parameters: {0}")]
    InvalidParams(String),
}

/// One of the three data axes. X and Z span the ground plane, Y is height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn get(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }
}

/// Label and unit of an axis, as parsed from a header cell like `wavelength (nm)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisMeta {
    pub label: String,
    pub unit: String,
}

impl AxisMeta {
    pub fn new(label: impl Into<String>, unit: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            unit: unit.into(),
        }
    }

    fn from_header(cell: &str) -> Self {
        let cell = cell.trim();
        match (cell.find('('), cell.ends_with(')')) {
            (Some(open), true) => Self::new(
                cell[..open].trim(),
                cell[open + 1..cell.len() - 1].trim(),
            ),
            _ => Self::new(cell, ""),
        }
    }

    fn header_cell(&self) -> String {
        if self.unit.is_empty() {
            self.label.clone()
        } else {
            format!("{} ({})", self.label, self.unit)
        }
    }
}

/// A validated height field: every coordinate is finite and there is at least one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDataset {
    points: Vec<Point>,
    axis_meta: [AxisMeta; 3],
    source_name: String,
}

impl SurfaceDataset {
    pub fn new(
        points: Vec<Point>,
        axis_meta: [AxisMeta; 3],
        source_name: impl Into<String>,
    ) -> Result<Self, DataError> {
        if points.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        for (i, p) in points.iter().enumerate() {
            for (column, v) in [p.x, p.y, p.z].into_iter().enumerate() {
                if !v.is_finite() {
                    return Err(DataError::NonFiniteValue {
                        line: i as u64 + 2,
                        column,
                    });
                }
            }
        }
        Ok(Self {
            points,
            axis_meta,
            source_name: source_name.into(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn axis_meta(&self, axis: Axis) -> &AxisMeta {
        &self.axis_meta[axis as usize]
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn with_source_name(mut self, name: impl Into<String>) -> Self {
        self.source_name = name.into();
        self
    }

    pub fn axis_values(&self, axis: Axis) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(move |p| p.get(axis))
    }

    /// Smallest and largest coordinate on `axis`.
    pub fn extent(&self, axis: Axis) -> (f64, f64) {
        self.axis_values(axis)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Serialize as CSV. `parse_dataset(export_csv(d))` reproduces `d` bit for bit.
    pub fn export_csv(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * 24);
        let header: Vec<String> = self.axis_meta.iter().map(AxisMeta::header_cell).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for p in &self.points {
            // `{}` on f64 prints the shortest representation that parses back exactly.
            out.push_str(&format!("{},{},{}\n", p.x, p.y, p.z));
        }
        out
    }
}

/// Parse a three-column CSV with a header row. Lines are reported 1-based, header included.
pub fn parse_dataset(csv_text: &str) -> Result<SurfaceDataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(csv_text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| DataError::MalformedRow {
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(DataError::MissingHeader);
    }
    if headers.len() != 3 {
        return Err(DataError::BadHeader(headers.len()));
    }
    let axis_meta = [
        AxisMeta::from_header(&headers[0]),
        AxisMeta::from_header(&headers[1]),
        AxisMeta::from_header(&headers[2]),
    ];

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| DataError::MalformedRow {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 3 {
            return Err(DataError::MalformedRow {
                line,
                reason: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let mut xyz = [0.0; 3];
        for (column, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| DataError::MalformedRow {
                line,
                reason: format!("field {} is not a number: {cell:?}", column + 1),
            })?;
            if !v.is_finite() {
                return Err(DataError::NonFiniteValue { line, column });
            }
            xyz[column] = v;
        }
        points.push(Point::new(xyz[0], xyz[1], xyz[2]));
    }
    if points.is_empty() {
        return Err(DataError::EmptyDataset);
    }
    Ok(SurfaceDataset {
        points,
        axis_meta,
        source_name: String::from("csv"),
    })
}
