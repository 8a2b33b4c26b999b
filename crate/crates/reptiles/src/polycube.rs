//! Finite unions of unit lattice cells at a dyadic/rational working scale.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cell::{Cell, Facet, GridBox};
use crate::error::{Error, Result};

/// A finite, duplicate-free set of unit cells in dimension `dim`. Cells have
/// side `1/scale_den` in ambient coordinates, so the ambient volume is
/// `cells.len() / scale_den^dim`.
///
/// Values are immutable after construction; every operation returns a new
/// polycube.
#[derive(Clone, PartialEq, Eq)]
pub struct Polycube {
    dim: usize,
    scale_den: u64,
    cells: BTreeSet<Cell>,
}

impl std::fmt::Debug for Polycube {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Polycube")
            .field("dim", &self.dim)
            .field("scale_den", &self.scale_den)
            .field("cells", &self.cells.len())
            .finish()
    }
}

impl Polycube {
    /// Build a polycube from explicit cells. Rejects duplicate cells and
    /// cells of the wrong dimension.
    pub fn new(dim: usize, scale_den: u64, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { min: 1, got: 0 });
        }
        if scale_den == 0 {
            return Err(Error::InvalidScale);
        }
        let mut set = BTreeSet::new();
        for cell in cells {
            if cell.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: cell.dim(),
                });
            }
            if !set.insert(cell.clone()) {
                return Err(Error::DuplicateCell(cell));
            }
        }
        Ok(Polycube {
            dim,
            scale_den,
            cells: set,
        })
    }

    pub fn empty(dim: usize, scale_den: u64) -> Result<Self> {
        Polycube::new(dim, scale_den, std::iter::empty())
    }

    pub fn single_cell(cell: Cell, scale_den: u64) -> Result<Self> {
        let dim = cell.dim();
        Polycube::new(dim, scale_den, std::iter::once(cell))
    }

    /// All cells of a box, as a polycube.
    pub fn from_box(b: &GridBox, scale_den: u64) -> Result<Self> {
        Polycube::new(b.dim(), scale_den, b.cells())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale_den(&self) -> u64 {
        self.scale_den
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Smallest box containing every cell.
    pub fn bounding_box(&self) -> Result<GridBox> {
        if self.is_empty() {
            return Err(Error::EmptyPolycube);
        }
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for cell in &self.cells {
            for a in 0..self.dim {
                lo[a] = lo[a].min(cell[a]);
                hi[a] = hi[a].max(cell[a] + 1);
            }
        }
        GridBox::new(lo, hi)
    }

    pub fn translated(&self, offset: &[i64]) -> Result<Polycube> {
        if offset.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: offset.len(),
            });
        }
        let cells = self
            .cells
            .iter()
            .map(|c| c.translated(offset))
            .collect::<Result<Vec<_>>>()?;
        Polycube::new(self.dim, self.scale_den, cells)
    }

    /// Translate so the bounding box has its minimal corner at the origin.
    pub fn normalized(&self) -> Result<Polycube> {
        let bb = self.bounding_box()?;
        let offset: Vec<i64> = bb.lo().iter().map(|&v| -v).collect();
        self.translated(&offset)
    }

    /// True when the two polycubes are equal after translating both to the
    /// origin. Scale and dimension must match exactly.
    pub fn eq_up_to_translation(&self, other: &Polycube) -> Result<bool> {
        if self.dim != other.dim || self.scale_den != other.scale_den {
            return Ok(false);
        }
        if self.is_empty() || other.is_empty() {
            return Ok(self.is_empty() && other.is_empty());
        }
        Ok(self.normalized()? == other.normalized()?)
    }

    /// Subdivide every cell into `factor^dim` subcells. The ambient point set
    /// is unchanged; the scale denominator multiplies by `factor`.
    pub fn refined(&self, factor: u64) -> Result<Polycube> {
        if factor == 0 {
            return Err(Error::InvalidRefinement);
        }
        let scale_den = self.scale_den.checked_mul(factor).ok_or(Error::Overflow)?;
        let f = i64::try_from(factor).map_err(|_| Error::Overflow)?;
        let mut cells = BTreeSet::new();
        for cell in &self.cells {
            let base: Vec<i64> = cell
                .coords()
                .iter()
                .map(|&v| v.checked_mul(f).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let sub = GridBox::new(
                base.clone(),
                base.iter().map(|&v| v + f).collect(),
            )?;
            cells.extend(sub.cells());
        }
        Ok(Polycube {
            dim: self.dim,
            scale_den,
            cells,
        })
    }

    /// Dilate by an integer factor along every axis, keeping the scale
    /// denominator. The result occupies `factor` times the original extent.
    pub fn dilated(&self, factor: u64) -> Result<Polycube> {
        if factor == 0 {
            return Err(Error::InvalidRefinement);
        }
        let f = i64::try_from(factor).map_err(|_| Error::Overflow)?;
        let mut cells = BTreeSet::new();
        for cell in &self.cells {
            let base: Vec<i64> = cell
                .coords()
                .iter()
                .map(|&v| v.checked_mul(f).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let sub = GridBox::new(
                base.clone(),
                base.iter().map(|&v| v + f).collect(),
            )?;
            cells.extend(sub.cells());
        }
        Ok(Polycube {
            dim: self.dim,
            scale_den: self.scale_den,
            cells,
        })
    }

    /// Replicate cells by an integer factor along a single axis.
    pub fn stretched_axis(&self, axis: usize, factor: u64) -> Result<Polycube> {
        if factor == 0 {
            return Err(Error::InvalidRefinement);
        }
        let f = i64::try_from(factor).map_err(|_| Error::Overflow)?;
        let mut cells = BTreeSet::new();
        for cell in &self.cells {
            let base = cell[axis].checked_mul(f).ok_or(Error::Overflow)?;
            for d in 0..f {
                let mut coords = cell.coords().to_vec();
                coords[axis] = base + d;
                cells.insert(Cell::new(coords));
            }
        }
        Ok(Polycube {
            dim: self.dim,
            scale_den: self.scale_den,
            cells,
        })
    }

    /// Cells of `b` that are not cells of `self`. Every cell of `self` must
    /// lie inside `b`.
    pub fn complement_in(&self, b: &GridBox) -> Result<Polycube> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: b.dim(),
            });
        }
        if let Some(outside) = self.cells.iter().find(|c| !b.contains_cell(c)) {
            return Err(Error::CellOutsideBox(outside.clone()));
        }
        let cells: Vec<Cell> = b
            .cells()
            .into_iter()
            .filter(|c| !self.cells.contains(c))
            .collect();
        Polycube::new(self.dim, self.scale_den, cells)
    }

    /// Union of disjoint polycubes at matching dimension and scale. Errors on
    /// any shared cell.
    pub fn disjoint_union(&self, other: &Polycube) -> Result<Polycube> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if other.scale_den != self.scale_den {
            return Err(Error::ScaleMismatch(self.scale_den, other.scale_den));
        }
        let mut cells = self.cells.clone();
        for cell in &other.cells {
            if !cells.insert(cell.clone()) {
                return Err(Error::DuplicateCell(cell.clone()));
            }
        }
        Ok(Polycube {
            dim: self.dim,
            scale_den: self.scale_den,
            cells,
        })
    }

    /// Face-adjacent neighbors of a cell that belong to the polycube.
    fn neighbors_in(&self, cell: &Cell) -> Vec<Cell> {
        let mut out = Vec::with_capacity(2 * self.dim);
        for axis in 0..self.dim {
            for delta in [-1i64, 1] {
                if let Ok(n) = cell.shifted(axis, delta) {
                    if self.cells.contains(&n) {
                        out.push(n);
                    }
                }
            }
        }
        out
    }

    /// Partition into face-connected components. Cells are adjacent iff they
    /// share an (n-1)-face; corner contact does not connect.
    pub fn connected_components(&self) -> Vec<Polycube> {
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let mut components = Vec::new();
        for start in &self.cells {
            if seen.contains(start) {
                continue;
            }
            let mut component = BTreeSet::new();
            let mut queue = VecDeque::new();
            queue.push_back(start.clone());
            seen.insert(start.clone());
            while let Some(cell) = queue.pop_front() {
                component.insert(cell.clone());
                for n in self.neighbors_in(&cell) {
                    if seen.insert(n.clone()) {
                        queue.push_back(n);
                    }
                }
            }
            components.push(Polycube {
                dim: self.dim,
                scale_den: self.scale_den,
                cells: component,
            });
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.connected_components().len() == 1
    }

    /// Facets incident to exactly one cell of the polycube.
    pub fn boundary_facets(&self) -> Result<Vec<Facet>> {
        let mut out = Vec::new();
        for cell in &self.cells {
            for axis in 0..self.dim {
                let below = cell.shifted(axis, -1)?;
                if !self.cells.contains(&below) {
                    out.push(Facet::new(cell.clone(), axis));
                }
                let above = cell.shifted(axis, 1)?;
                if !self.cells.contains(&above) {
                    out.push(Facet::new(above, axis));
                }
            }
        }
        Ok(out)
    }

    /// Number of connected components of the boundary facet graph, where two
    /// boundary facets are adjacent iff they share an (n-2)-face.
    ///
    /// Requires the boundary to pass the pseudomanifold precheck: every ridge
    /// of a boundary facet must lie in exactly two boundary facets. Inputs
    /// failing the precheck (e.g. two cells meeting only at a corner) are
    /// rejected rather than given a meaningless count.
    pub fn boundary_component_count(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPolycube);
        }
        if self.dim < 2 {
            return Err(Error::DimensionTooSmall {
                min: 2,
                got: self.dim,
            });
        }
        let facets = self.boundary_facets()?;
        let index: BTreeMap<&Facet, usize> =
            facets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut ridge_map: BTreeMap<crate::cell::Ridge, Vec<usize>> = BTreeMap::new();
        for (i, facet) in facets.iter().enumerate() {
            for ridge in facet.ridges()? {
                ridge_map.entry(ridge).or_default().push(i);
            }
        }
        for (ridge, incident) in &ridge_map {
            if incident.len() != 2 {
                return Err(Error::NotPseudomanifold {
                    corner: ridge.corner.clone(),
                    axis_a: ridge.axis_a,
                    axis_b: ridge.axis_b,
                    count: incident.len(),
                });
            }
        }
        // union-find over facets
        let mut parent: Vec<usize> = (0..facets.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for incident in ridge_map.values() {
            let a = find(&mut parent, incident[0]);
            let b = find(&mut parent, incident[1]);
            if a != b {
                parent[a] = b;
            }
        }
        let mut roots = BTreeSet::new();
        for i in 0..facets.len() {
            let r = find(&mut parent, i);
            roots.insert(r);
        }
        let _ = index;
        Ok(roots.len())
    }

    /// True iff some cell shares a facet with exactly one other cell. A lone
    /// cell shares zero facets and is not a peninsula.
    pub fn has_peninsula(&self) -> bool {
        self.cells
            .iter()
            .any(|c| self.neighbors_in(c).len() == 1)
    }

    /// First peninsula cell in lexicographic order, if any.
    pub fn find_peninsula(&self) -> Option<Cell> {
        self.cells
            .iter()
            .find(|c| self.neighbors_in(c).len() == 1)
            .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chair() -> Polycube {
        Polycube::new(
            2,
            1,
            [[0, 0], [1, 0], [0, 1]].into_iter().map(Cell::from),
        )
        .unwrap()
    }

    #[test]
    fn duplicate_cells_rejected() {
        let err = Polycube::new(2, 1, [[0, 0], [0, 0]].into_iter().map(Cell::from));
        assert!(matches!(err, Err(Error::DuplicateCell(_))));
    }

    #[test]
    fn refine_multiplies_cell_count() {
        let single = Polycube::single_cell(Cell::from([0, 0]), 1).unwrap();
        assert_eq!(single.refined(2).unwrap().len(), 4);
        assert_eq!(chair().refined(3).unwrap().len(), 27);
    }

    #[test]
    fn refine_composes() {
        let p = chair();
        let a = p.refined(6).unwrap();
        let b = p.refined(2).unwrap().refined(3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complement_involution() {
        let b = GridBox::cube(2, 0, 4).unwrap();
        let p = chair();
        let c = p.complement_in(&b).unwrap();
        assert_eq!(c.len(), 16 - 3);
        assert_eq!(c.complement_in(&b).unwrap(), p);
        let full = Polycube::from_box(&b, 1).unwrap();
        assert!(full.complement_in(&b).unwrap().is_empty());
    }

    #[test]
    fn complement_requires_containment() {
        let b = GridBox::cube(2, 0, 2).unwrap();
        let p = Polycube::single_cell(Cell::from([5, 5]), 1).unwrap();
        assert!(matches!(
            p.complement_in(&b),
            Err(Error::CellOutsideBox(_))
        ));
    }

    #[test]
    fn corner_contact_does_not_connect() {
        let p = Polycube::new(2, 1, [[0, 0], [1, 1]].into_iter().map(Cell::from)).unwrap();
        assert_eq!(p.connected_components().len(), 2);
        let single = Polycube::single_cell(Cell::from([3, 3]), 1).unwrap();
        assert_eq!(single.connected_components().len(), 1);
    }

    #[test]
    fn boundary_facet_count_of_single_cell() {
        for dim in 1..=4 {
            let p = Polycube::single_cell(Cell::new(vec![0; dim]), 1).unwrap();
            assert_eq!(p.boundary_facets().unwrap().len(), 2 * dim);
        }
    }

    #[test]
    fn boundary_components_basics() {
        let single = Polycube::single_cell(Cell::from([0, 0, 0]), 1).unwrap();
        assert_eq!(single.boundary_component_count().unwrap(), 1);

        let far = Polycube::new(2, 1, [[0, 0], [5, 5]].into_iter().map(Cell::from)).unwrap();
        assert_eq!(far.boundary_component_count().unwrap(), 2);
    }

    #[test]
    fn corner_touch_fails_pseudomanifold_precheck() {
        let p = Polycube::new(2, 1, [[0, 0], [1, 1]].into_iter().map(Cell::from)).unwrap();
        assert!(matches!(
            p.boundary_component_count(),
            Err(Error::NotPseudomanifold { .. })
        ));
    }

    #[test]
    fn peninsula_detection() {
        let domino = Polycube::new(2, 1, [[0, 0], [1, 0]].into_iter().map(Cell::from)).unwrap();
        assert!(domino.has_peninsula());
        let single = Polycube::single_cell(Cell::from([0, 0]), 1).unwrap();
        assert!(!single.has_peninsula());
        // subdividing by 3 removes all peninsulas
        assert!(!domino.refined(3).unwrap().has_peninsula());
        assert!(!chair().refined(3).unwrap().has_peninsula());
    }

    #[test]
    fn dilation_and_stretch() {
        let p = chair();
        let d = p.dilated(2).unwrap();
        assert_eq!(d.len(), 12);
        assert_eq!(d.scale_den(), 1);
        let s = p.stretched_axis(0, 2).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn translation_normalization() {
        let p = chair().translated(&[3, -2]).unwrap();
        assert!(p.eq_up_to_translation(&chair()).unwrap());
        assert_eq!(p.normalized().unwrap(), chair());
    }
}
