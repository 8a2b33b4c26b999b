//! Lattice cells, axis-aligned boxes, and boundary facets.
//!
//! A cell is the unit cube `[a1, a1+1] x ... x [an, an+1]` identified by its
//! minimal corner `(a1, ..., an)` in lattice units. All coordinates are
//! bounded machine integers; arithmetic that could leave the representable
//! range is checked.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimal corner of a unit lattice cube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(Vec<i64>);

impl Cell {
    pub fn new(coords: Vec<i64>) -> Self {
        Cell(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Cell shifted by `delta` along one axis.
    pub fn shifted(&self, axis: usize, delta: i64) -> Result<Cell> {
        let mut coords = self.0.clone();
        coords[axis] = coords[axis].checked_add(delta).ok_or(Error::Overflow)?;
        Ok(Cell(coords))
    }

    /// Cell translated by an offset vector of matching length.
    pub fn translated(&self, offset: &[i64]) -> Result<Cell> {
        debug_assert_eq!(offset.len(), self.0.len());
        let coords = self
            .0
            .iter()
            .zip(offset)
            .map(|(&a, &d)| a.checked_add(d).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell(coords))
    }

    /// Projection that drops one coordinate.
    pub fn dropped(&self, axis: usize) -> Cell {
        let mut coords = Vec::with_capacity(self.0.len() - 1);
        coords.extend_from_slice(&self.0[..axis]);
        coords.extend_from_slice(&self.0[axis + 1..]);
        Cell(coords)
    }

    /// Inverse of [`Cell::dropped`]: insert a coordinate at `axis`.
    pub fn inserted(&self, axis: usize, value: i64) -> Cell {
        let mut coords = Vec::with_capacity(self.0.len() + 1);
        coords.extend_from_slice(&self.0[..axis]);
        coords.push(value);
        coords.extend_from_slice(&self.0[axis..]);
        Cell(coords)
    }
}

impl Index<usize> for Cell {
    type Output = i64;

    fn index(&self, axis: usize) -> &i64 {
        &self.0[axis]
    }
}

impl From<Vec<i64>> for Cell {
    fn from(coords: Vec<i64>) -> Self {
        Cell(coords)
    }
}

impl From<&[i64]> for Cell {
    fn from(coords: &[i64]) -> Self {
        Cell(coords.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Cell {
    fn from(coords: [i64; N]) -> Self {
        Cell(coords.to_vec())
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Axis-aligned lattice box `prod [lo_i, hi_i)` whose cell set is the full
/// grid product. Bounds are strict: `lo < hi` componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl GridBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidBox);
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidBox);
        }
        Ok(GridBox { lo, hi })
    }

    /// The cube `[lo, hi)^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        GridBox::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn side(&self, axis: usize) -> i64 {
        self.hi[axis] - self.lo[axis]
    }

    /// True when every side has the same length.
    pub fn is_cube(&self) -> bool {
        let s = self.side(0);
        (0..self.dim()).all(|a| self.side(a) == s)
    }

    pub fn contains_cell(&self, cell: &Cell) -> bool {
        cell.dim() == self.dim()
            && (0..self.dim()).all(|a| self.lo[a] <= cell[a] && cell[a] < self.hi[a])
    }

    pub fn cell_count(&self) -> u128 {
        (0..self.dim())
            .map(|a| self.side(a) as u128)
            .product()
    }

    /// All cells of the box in lexicographic order.
    pub fn cells(&self) -> Vec<Cell> {
        let dim = self.dim();
        let mut out = Vec::new();
        let mut cur: Vec<i64> = self.lo.clone();
        loop {
            out.push(Cell::new(cur.clone()));
            // odometer increment, last axis fastest
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                cur[axis] += 1;
                if cur[axis] < self.hi[axis] {
                    break;
                }
                cur[axis] = self.lo[axis];
            }
        }
    }
}

/// An (n-1)-dimensional face of a unit cell. The facet spans a unit interval
/// on every axis except `axis`, where it is pinned to the plane coordinate
/// stored in `corner[axis]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub corner: Cell,
    pub axis: usize,
}

impl Facet {
    pub fn new(corner: Cell, axis: usize) -> Self {
        Facet { corner, axis }
    }

    /// The two cells that share this facet: the one above the plane along
    /// `axis` and the one below.
    pub fn incident_cells(&self) -> Result<(Cell, Cell)> {
        let above = self.corner.clone();
        let below = self.corner.shifted(self.axis, -1)?;
        Ok((above, below))
    }

    /// The (n-2)-faces of this facet. Each ridge is identified by a corner
    /// and the unordered pair of pinned axes.
    pub fn ridges(&self) -> Result<Vec<Ridge>> {
        let mut out = Vec::with_capacity(2 * (self.corner.dim() - 1));
        for other in 0..self.corner.dim() {
            if other == self.axis {
                continue;
            }
            let (a, b) = if other < self.axis {
                (other, self.axis)
            } else {
                (self.axis, other)
            };
            out.push(Ridge {
                corner: self.corner.clone(),
                axis_a: a,
                axis_b: b,
            });
            out.push(Ridge {
                corner: self.corner.shifted(other, 1)?,
                axis_a: a,
                axis_b: b,
            });
        }
        Ok(out)
    }
}

/// An (n-2)-face shared by boundary facets; pinned on two axes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ridge {
    pub corner: Cell,
    pub axis_a: usize,
    pub axis_b: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_cells_are_lexicographic() {
        let b = GridBox::new(vec![0, -1], vec![2, 1]).unwrap();
        let cells = b.cells();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0], Cell::from([0, -1]));
        assert_eq!(cells[1], Cell::from([0, 0]));
        assert_eq!(cells[2], Cell::from([1, -1]));
        assert_eq!(cells[3], Cell::from([1, 0]));
        assert_eq!(b.cell_count(), 4);
    }

    #[test]
    fn degenerate_box_rejected() {
        assert!(GridBox::new(vec![0, 0], vec![1, 0]).is_err());
        assert!(GridBox::new(vec![2], vec![2]).is_err());
    }

    #[test]
    fn facet_ridges_count() {
        let f = Facet::new(Cell::from([0, 0, 0]), 1);
        assert_eq!(f.ridges().unwrap().len(), 4);
    }
}
