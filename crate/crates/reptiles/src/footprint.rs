//! Stacks of cubes and their labeled footprints.
//!
//! A stack of cubes in stacking direction `+x_n` is a polycube whose cells
//! all lie at non-negative height and in which every cell not resting on the
//! base hyperplane `x_n = 0` has another cell directly below it. Such a
//! polycube is determined by its footprint, the projection to the base
//! hyperplane, together with an integer column height per footprint cell.

use std::collections::BTreeMap;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::polycube::Polycube;

/// An (n-1)-dimensional footprint with a column-height label per cell.
/// Height-zero cells are allowed; they mark deliberate holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFootprint {
    dim: usize,
    scale_den: u64,
    max_height: u64,
    heights: BTreeMap<Cell, u64>,
}

impl LabeledFootprint {
    pub fn new(
        dim: usize,
        scale_den: u64,
        max_height: u64,
        heights: impl IntoIterator<Item = (Cell, u64)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        if scale_den == 0 {
            return Err(Error::InvalidScale);
        }
        if max_height == 0 {
            return Err(Error::HeightAboveMax { h: 0, max: 0 });
        }
        let mut map = BTreeMap::new();
        for (cell, h) in heights {
            if cell.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: cell.dim(),
                });
            }
            if h > max_height {
                return Err(Error::HeightAboveMax { h, max: max_height });
            }
            if map.insert(cell.clone(), h).is_some() {
                return Err(Error::DuplicateCell(cell));
            }
        }
        Ok(LabeledFootprint {
            dim,
            scale_den,
            max_height,
            heights: map,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale_den(&self) -> u64 {
        self.scale_den
    }

    pub fn max_height(&self) -> u64 {
        self.max_height
    }

    pub fn heights(&self) -> impl Iterator<Item = (&Cell, u64)> {
        self.heights.iter().map(|(c, &h)| (c, h))
    }

    pub fn height_of(&self, cell: &Cell) -> u64 {
        self.heights.get(cell).copied().unwrap_or(0)
    }

    /// Labels actually used, sorted ascending.
    pub fn label_set(&self) -> Vec<u64> {
        let mut labels: Vec<u64> = self.heights.values().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// The positive-height cells as an (n-1)-dimensional polycube.
    pub fn support(&self) -> Result<Polycube> {
        Polycube::new(
            self.dim,
            self.scale_den,
            self.heights
                .iter()
                .filter(|(_, &h)| h > 0)
                .map(|(c, _)| c.clone()),
        )
    }
}

/// Build the stack of cubes described by a labeled footprint: above each
/// footprint cell, a column from height 0 up to its label, stacked along a
/// new last axis. The cell count is the sum of the labels.
pub fn stack_from_footprint(f: &LabeledFootprint) -> Result<Polycube> {
    let mut cells = Vec::new();
    for (cell, h) in f.heights() {
        for level in 0..h {
            cells.push(cell.inserted(f.dim(), level as i64));
        }
    }
    if cells.is_empty() {
        return Err(Error::AllZeroFootprint);
    }
    Polycube::new(f.dim() + 1, f.scale_den(), cells)
}

/// Recover the labeled footprint of a stack of cubes, or fail when the
/// polycube is not a stack in the given direction.
///
/// For `direction = +1` the base hyperplane is `x_axis = 0` and cells occupy
/// heights `0..h`; for `direction = -1` the mirror convention is used (cells
/// occupy `-h..0` below the base). A cell floating above a gap, or any cell
/// on the wrong side of the base, fails with [`Error::NotAStack`].
pub fn footprint_of(p: &Polycube, axis: usize, direction: i8) -> Result<LabeledFootprint> {
    if p.is_empty() {
        return Err(Error::EmptyPolycube);
    }
    if p.dim() < 2 {
        return Err(Error::DimensionTooSmall {
            min: 2,
            got: p.dim(),
        });
    }
    if axis >= p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: axis,
        });
    }
    let dir = direction as i64;
    let mut heights: BTreeMap<Cell, u64> = BTreeMap::new();
    for cell in p.cells() {
        // level 0 rests on the base; higher levels need support beneath
        let level = if dir > 0 { cell[axis] } else { -cell[axis] - 1 };
        if level < 0 {
            return Err(Error::NotAStack(cell.clone()));
        }
        if level > 0 && !p.contains(&cell.shifted(axis, -dir)?) {
            return Err(Error::NotAStack(cell.clone()));
        }
        let h = (level + 1) as u64;
        let footprint_cell = cell.dropped(axis);
        let entry = heights.entry(footprint_cell).or_insert(0);
        *entry = (*entry).max(h);
    }
    let max = heights.values().copied().max().unwrap_or(0);
    LabeledFootprint::new(p.dim() - 1, p.scale_den(), max, heights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_footprint_builds_eight_cell_stack() {
        let f = LabeledFootprint::new(
            1,
            1,
            4,
            [
                (Cell::from([0]), 2),
                (Cell::from([1]), 0),
                (Cell::from([2]), 4),
                (Cell::from([3]), 2),
            ],
        )
        .unwrap();
        let s = stack_from_footprint(&f).unwrap();
        assert_eq!(s.len(), 8);
        let expected: Vec<Cell> = [
            [0, 0],
            [0, 1],
            [2, 0],
            [2, 1],
            [2, 2],
            [2, 3],
            [3, 0],
            [3, 1],
        ]
        .into_iter()
        .map(Cell::from)
        .collect();
        let got: Vec<Cell> = s.cells().cloned().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn single_footprint_cell_height_one() {
        let f =
            LabeledFootprint::new(1, 1, 1, [(Cell::from([0]), 1)]).unwrap();
        let s = stack_from_footprint(&f).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(&Cell::from([0, 0])));
    }

    #[test]
    fn all_zero_footprint_rejected() {
        let f =
            LabeledFootprint::new(1, 1, 3, [(Cell::from([0]), 0)]).unwrap();
        assert!(matches!(stack_from_footprint(&f), Err(Error::AllZeroFootprint)));
    }

    #[test]
    fn floating_cell_is_not_a_stack() {
        let p = Polycube::single_cell(Cell::from([0, 1]), 1).unwrap();
        assert!(matches!(footprint_of(&p, 1, 1), Err(Error::NotAStack(_))));
    }

    #[test]
    fn footprint_round_trips() {
        let f = LabeledFootprint::new(
            2,
            1,
            5,
            [
                (Cell::from([0, 0]), 2),
                (Cell::from([0, 1]), 5),
                (Cell::from([1, 0]), 1),
            ],
        )
        .unwrap();
        let s = stack_from_footprint(&f).unwrap();
        let back = footprint_of(&s, 2, 1).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn negative_direction_mirrors() {
        let p = Polycube::new(2, 1, [[0, -1], [0, -2], [1, -1]].into_iter().map(Cell::from))
            .unwrap();
        let f = footprint_of(&p, 1, -1).unwrap();
        assert_eq!(f.height_of(&Cell::from([0])), 2);
        assert_eq!(f.height_of(&Cell::from([1])), 1);
        // the same cells are not a stack in the positive direction
        assert!(footprint_of(&p, 1, 1).is_err());
    }
}
