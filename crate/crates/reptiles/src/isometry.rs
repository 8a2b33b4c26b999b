//! Lattice isometries: signed-permutation linear parts with integer
//! translations. These are exactly the isometries of Euclidean space that
//! carry the cell structure of the integer lattice to itself.

use crate::cell::{Cell, Facet};
use crate::error::{Error, Result};
use crate::polycube::Polycube;

/// An isometry `x -> y` with `y[perm[i]] = signs[i] * x[i] + trans[perm[i]]`.
/// The linear part is a signed permutation matrix, so composition and
/// inversion stay in the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeIsometry {
    perm: Vec<usize>,
    signs: Vec<i8>,
    trans: Vec<i64>,
}

impl LatticeIsometry {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, trans: Vec<i64>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n || trans.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: signs.len().max(trans.len()),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(perm.clone()));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSigns);
        }
        Ok(LatticeIsometry { perm, signs, trans })
    }

    pub fn identity(dim: usize) -> Self {
        LatticeIsometry {
            perm: (0..dim).collect(),
            signs: vec![1; dim],
            trans: vec![0; dim],
        }
    }

    pub fn translation(offset: Vec<i64>) -> Self {
        let dim = offset.len();
        LatticeIsometry {
            perm: (0..dim).collect(),
            signs: vec![1; dim],
            trans: offset,
        }
    }

    /// Reflection about the hyperplane `x_axis = 0`.
    pub fn axis_reflection(dim: usize, axis: usize) -> Self {
        let mut signs = vec![1i8; dim];
        signs[axis] = -1;
        LatticeIsometry {
            perm: (0..dim).collect(),
            signs,
            trans: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.signs.iter().all(|&s| s == 1)
            && self.trans.iter().all(|&t| t == 0)
    }

    pub fn apply_point(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut out = vec![0i64; self.dim()];
        for i in 0..self.dim() {
            let v = x[i]
                .checked_mul(self.signs[i] as i64)
                .and_then(|v| v.checked_add(self.trans[self.perm[i]]))
                .ok_or(Error::Overflow)?;
            out[self.perm[i]] = v;
        }
        Ok(out)
    }

    /// Image of a unit cell: the cell spanned by the images of its two
    /// extreme corners, identified by the componentwise minimum.
    pub fn apply_cell(&self, cell: &Cell) -> Result<Cell> {
        if cell.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: cell.dim(),
            });
        }
        let mut out = vec![0i64; self.dim()];
        for i in 0..self.dim() {
            let c = cell[i];
            let lo = if self.signs[i] == 1 {
                c
            } else {
                c.checked_neg().and_then(|v| v.checked_sub(1)).ok_or(Error::Overflow)?
            };
            out[self.perm[i]] = lo
                .checked_add(self.trans[self.perm[i]])
                .ok_or(Error::Overflow)?;
        }
        Ok(Cell::new(out))
    }

    /// Image of an axis-aligned cube of integer side `span` given by its
    /// minimal corner, again as a minimal corner.
    pub fn apply_span_corner(&self, corner: &[i64], span: i64) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.dim()];
        for i in 0..self.dim() {
            let c = corner[i];
            let lo = if self.signs[i] == 1 {
                c
            } else {
                c.checked_add(span)
                    .and_then(|v| v.checked_neg())
                    .ok_or(Error::Overflow)?
            };
            out[self.perm[i]] = lo
                .checked_add(self.trans[self.perm[i]])
                .ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    /// Image of a facet. The pinned axis maps to `perm[axis]`; the pinned
    /// plane coordinate transforms as a point coordinate while the spanned
    /// axes transform as cell coordinates.
    pub fn apply_facet(&self, facet: &Facet) -> Result<Facet> {
        let dim = self.dim();
        if facet.corner.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: facet.corner.dim(),
            });
        }
        let mut out = vec![0i64; dim];
        for i in 0..dim {
            let c = facet.corner[i];
            let v = if i == facet.axis {
                c.checked_mul(self.signs[i] as i64).ok_or(Error::Overflow)?
            } else if self.signs[i] == 1 {
                c
            } else {
                c.checked_neg().and_then(|v| v.checked_sub(1)).ok_or(Error::Overflow)?
            };
            out[self.perm[i]] = v
                .checked_add(self.trans[self.perm[i]])
                .ok_or(Error::Overflow)?;
        }
        Ok(Facet::new(Cell::new(out), self.perm[facet.axis]))
    }

    pub fn apply_polycube(&self, p: &Polycube) -> Result<Polycube> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        let cells = p
            .cells()
            .map(|c| self.apply_cell(c))
            .collect::<Result<Vec<_>>>()?;
        Polycube::new(p.dim(), p.scale_den(), cells)
    }

    /// Composition `self o other`: apply `other` first.
    pub fn compose(&self, other: &LatticeIsometry) -> Result<LatticeIsometry> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            signs[i] = self.signs[j] * other.signs[i];
        }
        let trans = self.apply_point(&other.trans)?;
        Ok(LatticeIsometry { perm, signs, trans })
    }

    pub fn inverse(&self) -> Result<LatticeIsometry> {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        let mut trans = vec![0i64; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            signs[j] = self.signs[i];
            trans[i] = self.trans[j]
                .checked_mul(self.signs[i] as i64)
                .and_then(|v| v.checked_neg())
                .ok_or(Error::Overflow)?;
        }
        Ok(LatticeIsometry { perm, signs, trans })
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, k: i32) -> Result<LatticeIsometry> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = LatticeIsometry::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out)?;
        }
        Ok(out)
    }

    /// Extend to dimension `dim + 1` by inserting a fixed axis at `pos`.
    /// The new axis maps to itself with sign +1 and no translation.
    pub fn insert_fixed_axis(&self, pos: usize) -> LatticeIsometry {
        let n = self.dim();
        let shift = |x: usize| if x >= pos { x + 1 } else { x };
        let mut perm = Vec::with_capacity(n + 1);
        let mut signs = Vec::with_capacity(n + 1);
        let mut trans = vec![0i64; n + 1];
        for i in 0..=n {
            if i == pos {
                perm.push(pos);
                signs.push(1);
            } else {
                let j = if i > pos { i - 1 } else { i };
                perm.push(shift(self.perm[j]));
                signs.push(self.signs[j]);
            }
        }
        for j in 0..n {
            trans[shift(j)] = self.trans[j];
        }
        LatticeIsometry { perm, signs, trans }
    }
}

/// Rotation by `quarter_turns * pi/2` in the plane of the two given axes,
/// about the integer center point `(center.0, center.1)` of that plane, and
/// the identity elsewhere. A single quarter turn carries the first axis to
/// the second.
pub fn plane_rotation(
    dim: usize,
    axes: (usize, usize),
    quarter_turns: u8,
    center: (i64, i64),
) -> Result<LatticeIsometry> {
    let (a, b) = axes;
    if a == b || a >= dim || b >= dim {
        return Err(Error::InvalidRotationAxes);
    }
    if quarter_turns == 0 || quarter_turns > 3 {
        return Err(Error::InvalidQuarterTurns);
    }
    // one quarter turn about the origin: (x_a, x_b) -> (-x_b, x_a)
    let mut perm: Vec<usize> = (0..dim).collect();
    let mut signs = vec![1i8; dim];
    perm[a] = b;
    signs[a] = 1;
    perm[b] = a;
    signs[b] = -1;
    let quarter = LatticeIsometry::new(perm, signs, vec![0; dim])?;
    let linear = quarter.pow(quarter_turns as i32)?;
    // conjugate by the center: trans = c - linear(c)
    let mut c = vec![0i64; dim];
    c[a] = center.0;
    c[b] = center.1;
    let lc = linear.apply_point(&c)?;
    let trans: Vec<i64> = c
        .iter()
        .zip(&lc)
        .map(|(&u, &v)| u.checked_sub(v).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    LatticeIsometry::new(linear.perm, linear.signs, trans)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_polycube() {
        let p = Polycube::new(2, 1, [[0, 0], [1, 0], [0, 1]].into_iter().map(Cell::from))
            .unwrap();
        let id = LatticeIsometry::identity(2);
        assert_eq!(id.apply_polycube(&p).unwrap(), p);
    }

    #[test]
    fn half_turn_about_two_two() {
        // rotation by pi about (2,2): x -> 4 - x on both axes
        let r = plane_rotation(2, (0, 1), 2, (2, 2)).unwrap();
        assert_eq!(r.apply_point(&[0, 0]).unwrap(), vec![4, 4]);
        assert_eq!(r.apply_cell(&Cell::from([0, 0])).unwrap(), Cell::from([3, 3]));
    }

    #[test]
    fn quarter_turn_carries_first_axis_to_second() {
        let r = plane_rotation(2, (0, 1), 1, (0, 0)).unwrap();
        assert_eq!(r.apply_point(&[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(r.apply_cell(&Cell::from([0, 0])).unwrap(), Cell::from([-1, 0]));
    }

    #[test]
    fn quarter_turn_has_order_four() {
        let r = plane_rotation(4, (1, 2), 1, (5, -3)).unwrap();
        assert!(r.pow(4).unwrap().is_identity());
        assert!(!r.pow(2).unwrap().is_identity());
    }

    #[test]
    fn compose_matches_pointwise_application() {
        let g = plane_rotation(3, (0, 2), 1, (1, 2)).unwrap();
        let h = plane_rotation(3, (1, 2), 3, (0, 4)).unwrap();
        let gh = g.compose(&h).unwrap();
        for p in [[0, 0, 0], [3, -1, 7], [-2, 5, 1]] {
            let direct = g.apply_point(&h.apply_point(&p).unwrap()).unwrap();
            assert_eq!(gh.apply_point(&p).unwrap(), direct);
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = plane_rotation(3, (0, 1), 1, (2, 6)).unwrap();
        assert!(g.compose(&g.inverse().unwrap()).unwrap().is_identity());
        assert!(g.inverse().unwrap().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn isometry_preserves_cell_count_and_adjacency() {
        let p = Polycube::new(
            3,
            1,
            [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1]]
                .into_iter()
                .map(Cell::from),
        )
        .unwrap();
        let g = plane_rotation(3, (0, 2), 1, (3, 1)).unwrap();
        let q = g.apply_polycube(&p).unwrap();
        assert_eq!(q.len(), p.len());
        // the cell bijection preserves facet adjacency
        let cells: Vec<_> = p.cells().cloned().collect();
        for a in &cells {
            for b in &cells {
                let adjacent = (0..3).any(|axis| {
                    (0..3).all(|o| {
                        if o == axis {
                            (a[o] - b[o]).abs() == 1
                        } else {
                            a[o] == b[o]
                        }
                    })
                });
                let (ga, gb) = (g.apply_cell(a).unwrap(), g.apply_cell(b).unwrap());
                let image_adjacent = (0..3).any(|axis| {
                    (0..3).all(|o| {
                        if o == axis {
                            (ga[o] - gb[o]).abs() == 1
                        } else {
                            ga[o] == gb[o]
                        }
                    })
                });
                assert_eq!(adjacent, image_adjacent);
            }
        }
    }

    #[test]
    fn facet_mapping_is_consistent_with_cells() {
        let g = plane_rotation(2, (0, 1), 1, (0, 0)).unwrap();
        // lower facet of cell (5,0) on axis 1 maps into the plane x_0 = 0
        let f = Facet::new(Cell::from([5, 0]), 1);
        let image = g.apply_facet(&f).unwrap();
        assert_eq!(image.axis, 0);
        assert_eq!(image.corner, Cell::from([0, 5]));
    }

    #[test]
    fn inserted_axis_is_fixed() {
        let r = plane_rotation(2, (0, 1), 2, (2, 2)).unwrap();
        let r3 = r.insert_fixed_axis(0);
        assert_eq!(r3.apply_point(&[7, 0, 0]).unwrap(), vec![7, 4, 4]);
        assert_eq!(r3.apply_cell(&Cell::from([2, 0, 0])).unwrap(), Cell::from([2, 3, 3]));
    }
}
