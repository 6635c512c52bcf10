use serde::{Deserialize, Serialize};

use super::{Axis, SurfaceDataset};

/// Cell coordinates on the wireframe grid. Rows run along Z, columns along X.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPos {
    pub row: usize,
    pub col: usize,
}

impl GridPos {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// Equal-width half-open bins over `[min, max]`; the last bin also takes `max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisBins {
    edges: Vec<f64>,
}

impl AxisBins {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        assert!(count >= 1, "bin count must be positive");
        let span = max - min;
        let edges = (0..=count)
            .map(|i| {
                if i == count {
                    max
                } else {
                    min + span * (i as f64 / count as f64)
                }
            })
            .collect();
        Self { edges }
    }

    pub fn count(&self) -> usize {
        self.edges.len() - 1
    }

    /// Lower edge of bin `i`; `lower(count())` is the upper edge of the last bin.
    pub fn lower(&self, i: usize) -> f64 {
        self.edges[i]
    }

    pub fn center(&self, i: usize) -> f64 {
        (self.edges[i] + self.edges[i + 1]) / 2.0
    }

    pub fn bin(&self, v: f64) -> usize {
        let n = self.count();
        if self.edges[n] <= self.edges[0] {
            return 0;
        }
        // Number of lower edges at or below v, over bins 0..n.
        let above = self.edges[..n].partition_point(|&e| e <= v);
        above.saturating_sub(1).min(n - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub center_x: f64,
    pub center_z: f64,
    /// Mean y of the members; 0.0 for an empty rectangle.
    pub avg_y: f64,
    pub member_indices: Vec<usize>,
    pub empty: bool,
}

impl Rectangle {
    pub fn pos(&self) -> GridPos {
        GridPos::new(self.row, self.col)
    }
}

/// The surface-mode navigation space: `rows × cols` rectangles in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridModel {
    rows: usize,
    cols: usize,
    x_bins: AxisBins,
    z_bins: AxisBins,
    rectangles: Vec<Rectangle>,
    point_cell: Vec<usize>,
}

impl GridModel {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rectangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rectangles.is_empty()
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rectangles
    }

    pub fn x_bins(&self) -> &AxisBins {
        &self.x_bins
    }

    pub fn z_bins(&self) -> &AxisBins {
        &self.z_bins
    }

    pub fn index_of(&self, pos: GridPos) -> usize {
        pos.row * self.cols + pos.col
    }

    pub fn pos_of(&self, index: usize) -> GridPos {
        GridPos::new(index / self.cols, index % self.cols)
    }

    pub fn contains(&self, pos: GridPos) -> bool {
        pos.row < self.rows && pos.col < self.cols
    }

    pub fn rect(&self, pos: GridPos) -> &Rectangle {
        &self.rectangles[self.index_of(pos)]
    }

    pub fn is_empty_at(&self, pos: GridPos) -> bool {
        self.rect(pos).empty
    }

    pub fn non_empty(&self) -> impl Iterator<Item = &Rectangle> {
        self.rectangles.iter().filter(|r| !r.empty)
    }

    /// First non-empty rectangle in row-major order.
    pub fn first_non_empty(&self) -> Option<GridPos> {
        self.non_empty().next().map(Rectangle::pos)
    }

    /// Index of the rectangle that holds dataset point `point_index`.
    pub fn cell_of_point(&self, point_index: usize) -> usize {
        self.point_cell[point_index]
    }
}

/// Partition the X–Z extent into `rows × cols` equal cells and bin every point.
pub fn build_grid(dataset: &SurfaceDataset, rows: usize, cols: usize) -> GridModel {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one row and column");
    let (x_min, x_max) = dataset.extent(Axis::X);
    let (z_min, z_max) = dataset.extent(Axis::Z);
    let x_bins = AxisBins::new(x_min, x_max, cols);
    let z_bins = AxisBins::new(z_min, z_max, rows);

    let mut members = vec![Vec::new(); rows * cols];
    let mut point_cell = Vec::with_capacity(dataset.len());
    for (i, p) in dataset.points().iter().enumerate() {
        let cell = z_bins.bin(p.z) * cols + x_bins.bin(p.x);
        members[cell].push(i);
        point_cell.push(cell);
    }

    let rectangles = members
        .into_iter()
        .enumerate()
        .map(|(index, member_indices)| {
            let (row, col) = (index / cols, index % cols);
            let empty = member_indices.is_empty();
            let avg_y = if empty {
                0.0
            } else {
                let sum: f64 = member_indices.iter().map(|&i| dataset.points()[i].y).sum();
                sum / member_indices.len() as f64
            };
            Rectangle {
                index,
                row,
                col,
                center_x: x_bins.center(col),
                center_z: z_bins.center(row),
                avg_y,
                member_indices,
                empty,
            }
        })
        .collect();

    GridModel {
        rows,
        cols,
        x_bins,
        z_bins,
        rectangles,
        point_cell,
    }
}
