//! Integral cubical homology of polycubes.
//!
//! The cubical complex of a polycube consists of all elementary cubes
//! (products of unit and degenerate intervals) underlying its cells, closed
//! under taking faces. Homology is computed from Smith normal forms of the
//! boundary matrices; a free-face collapse pass shrinks the complex first,
//! which preserves homology exactly and keeps the elimination small even in
//! ambient dimension five.

mod snf;

pub use snf::{smith_normal_form, SmithForm, SparseIntMatrix};

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycube::Polycube;

/// An elementary cube: minimal corner plus a bitmask of the axes along which
/// the cube extends. `mask.count_ones()` is the cube's dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeKey {
    pub corner: Vec<i64>,
    pub mask: u32,
}

impl CubeKey {
    pub fn cube_dim(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Codimension-1 faces with their boundary coefficients, in the
    /// standard alternating-sign cubical convention.
    fn boundary(&self) -> Vec<(CubeKey, i64)> {
        let mut out = Vec::with_capacity(2 * self.cube_dim());
        let mut seen_extended = 0u32;
        for axis in 0..self.corner.len() {
            let bit = 1u32 << axis;
            if self.mask & bit == 0 {
                continue;
            }
            let sign = if seen_extended % 2 == 0 { 1 } else { -1 };
            seen_extended += 1;
            let reduced = self.mask & !bit;
            let mut hi_corner = self.corner.clone();
            hi_corner[axis] += 1;
            out.push((CubeKey { corner: hi_corner, mask: reduced }, sign));
            out.push((
                CubeKey { corner: self.corner.clone(), mask: reduced },
                -sign,
            ));
        }
        out
    }

    /// Candidate codimension-1 cofaces (not necessarily present in a given
    /// complex).
    fn coface_candidates(&self) -> Vec<CubeKey> {
        let mut out = Vec::new();
        for axis in 0..self.corner.len() {
            let bit = 1u32 << axis;
            if self.mask & bit != 0 {
                continue;
            }
            let grown = self.mask | bit;
            out.push(CubeKey { corner: self.corner.clone(), mask: grown });
            let mut lo_corner = self.corner.clone();
            lo_corner[axis] -= 1;
            out.push(CubeKey { corner: lo_corner, mask: grown });
        }
        out
    }
}

/// The face-closed cubical complex of a polycube, with per-dimension index
/// maps and liveness flags for the collapse pass.
pub struct CubicalComplex {
    ambient_dim: usize,
    cubes: Vec<Vec<CubeKey>>,
    index: HashMap<CubeKey, (usize, usize)>,
    alive: Vec<Vec<bool>>,
    original_counts: Vec<usize>,
}

impl CubicalComplex {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of k-cubes in the original (uncollapsed) complex.
    pub fn count(&self, k: usize) -> usize {
        self.original_counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.original_counts
    }

    pub fn live_count(&self, k: usize) -> usize {
        self.alive
            .get(k)
            .map_or(0, |v| v.iter().filter(|&&a| a).count())
    }

    /// Alternating sum of face counts, taken over the original complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.original_counts
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Verify that consecutive boundary maps compose to zero, cube by cube.
    pub fn check_boundary_squares_to_zero(&self) -> Result<()> {
        for k in 2..=self.ambient_dim {
            for cube in &self.cubes[k] {
                let mut acc: HashMap<CubeKey, i64> = HashMap::new();
                for (facet, s1) in cube.boundary() {
                    for (ridge, s2) in facet.boundary() {
                        *acc.entry(ridge).or_insert(0) += s1 * s2;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::ContractViolated(
                        "boundary of boundary is nonzero".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Boundary matrix from live k-cubes to live (k-1)-cubes.
    pub fn boundary_matrix(&self, k: usize) -> SparseIntMatrix {
        if k == 0 || k > self.ambient_dim {
            let cols = if k <= self.ambient_dim {
                self.live_count(k)
            } else {
                0
            };
            return SparseIntMatrix::new(0, cols);
        }
        // reindex live cubes densely
        let live_rows: Vec<usize> = (0..self.cubes[k - 1].len())
            .filter(|&i| self.alive[k - 1][i])
            .collect();
        let row_pos: HashMap<usize, usize> =
            live_rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut triplets = Vec::new();
        let mut col = 0usize;
        for (i, cube) in self.cubes[k].iter().enumerate() {
            if !self.alive[k][i] {
                continue;
            }
            for (face, sign) in cube.boundary() {
                let &(fd, fi) = self.index.get(&face).expect("complex is face-closed");
                debug_assert_eq!(fd, k - 1);
                if self.alive[fd][fi] {
                    triplets.push((row_pos[&fi], col, sign));
                }
            }
            col += 1;
        }
        SparseIntMatrix::from_triplets(live_rows.len(), col, &triplets)
    }

    /// Remove free pairs until none remain. A (k-1)-cube with exactly one
    /// live coface is removed together with that coface; each removal is an
    /// elementary collapse, so homology (including torsion) is unchanged.
    pub fn collapse(&mut self) {
        let mut coface_count: Vec<Vec<u32>> = self
            .cubes
            .iter()
            .map(|level| vec![0u32; level.len()])
            .collect();
        for k in 1..=self.ambient_dim {
            for (i, cube) in self.cubes[k].iter().enumerate() {
                if !self.alive[k][i] {
                    continue;
                }
                for (face, _) in cube.boundary() {
                    let &(fd, fi) = self.index.get(&face).expect("face-closed");
                    coface_count[fd][fi] += 1;
                }
            }
        }
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for k in 0..self.ambient_dim {
            for i in 0..self.cubes[k].len() {
                if self.alive[k][i] && coface_count[k][i] == 1 {
                    queue.push_back((k, i));
                }
            }
        }
        while let Some((k, i)) = queue.pop_front() {
            if !self.alive[k][i] || coface_count[k][i] != 1 {
                continue;
            }
            // locate the unique live coface
            let sigma = self.cubes[k][i].clone();
            let mut tau: Option<(usize, usize)> = None;
            for cand in sigma.coface_candidates() {
                if let Some(&(cd, ci)) = self.index.get(&cand) {
                    if self.alive[cd][ci] {
                        tau = Some((cd, ci));
                        break;
                    }
                }
            }
            let (td, ti) = tau.expect("free face has a live coface");
            self.alive[k][i] = false;
            self.alive[td][ti] = false;
            let tau_cube = self.cubes[td][ti].clone();
            for cube in [&sigma, &tau_cube] {
                for (face, _) in cube.boundary() {
                    let &(fd, fi) = self.index.get(&face).expect("face-closed");
                    if !self.alive[fd][fi] {
                        continue;
                    }
                    coface_count[fd][fi] -= 1;
                    if coface_count[fd][fi] == 1 {
                        queue.push_back((fd, fi));
                    }
                }
            }
        }
    }
}

/// Build the full cubical complex of a polycube: its cells together with all
/// of their faces.
pub fn build_complex(p: &Polycube) -> Result<CubicalComplex> {
    if p.is_empty() {
        return Err(Error::EmptyPolycube);
    }
    let dim = p.dim();
    if dim > 32 {
        return Err(Error::DimensionTooSmall { min: 1, got: dim });
    }
    let mut levels: Vec<BTreeSet<CubeKey>> = vec![BTreeSet::new(); dim + 1];
    for cell in p.cells() {
        // enumerate all 3^dim faces: per axis, extended / pinned low / pinned high
        let mut partial: Vec<(Vec<i64>, u32)> = vec![(Vec::with_capacity(dim), 0)];
        for axis in 0..dim {
            let c = cell[axis];
            let mut next = Vec::with_capacity(partial.len() * 3);
            for (corner, mask) in partial {
                let mut ext = corner.clone();
                ext.push(c);
                next.push((ext, mask | (1 << axis)));
                let mut lo = corner.clone();
                lo.push(c);
                next.push((lo, mask));
                let mut hi = corner;
                hi.push(c + 1);
                next.push((hi, mask));
            }
            partial = next;
        }
        for (corner, mask) in partial {
            let key = CubeKey { corner, mask };
            levels[key.cube_dim()].insert(key);
        }
    }
    let cubes: Vec<Vec<CubeKey>> = levels
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let mut index = HashMap::new();
    for (k, level) in cubes.iter().enumerate() {
        for (i, cube) in level.iter().enumerate() {
            index.insert(cube.clone(), (k, i));
        }
    }
    let alive = cubes.iter().map(|l| vec![true; l.len()]).collect();
    let original_counts = cubes.iter().map(|l| l.len()).collect();
    Ok(CubicalComplex {
        ambient_dim: dim,
        cubes,
        index,
        alive,
        original_counts,
    })
}

/// Betti numbers and torsion divisors per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<u64>,
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyProfile {
    /// Equality as a topological signature: degrees beyond either vector are
    /// implicitly zero / torsion-free.
    pub fn matches(&self, other: &HomologyProfile) -> bool {
        let degrees = self.betti.len().max(other.betti.len());
        for k in 0..degrees {
            if self.betti.get(k).copied().unwrap_or(0) != other.betti.get(k).copied().unwrap_or(0)
            {
                return false;
            }
            let empty: Vec<u64> = Vec::new();
            let a = self.torsion.get(k).unwrap_or(&empty);
            let b = other.torsion.get(k).unwrap_or(&empty);
            if a != b {
                return false;
            }
        }
        true
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Profile with `betti_0 = 1`, `betti_k = 1`, zeros elsewhere — the
    /// signature of a k-sphere (ambient-padded).
    pub fn sphere(k: usize, degrees: usize) -> HomologyProfile {
        let mut betti = vec![0; degrees];
        betti[0] = 1;
        betti[k] += 1;
        HomologyProfile {
            betti,
            torsion: vec![Vec::new(); degrees],
        }
    }

    pub fn ball(degrees: usize) -> HomologyProfile {
        let mut betti = vec![0; degrees];
        betti[0] = 1;
        HomologyProfile {
            betti,
            torsion: vec![Vec::new(); degrees],
        }
    }
}

/// Integral homology of a polycube's cubical complex.
pub fn homology(p: &Polycube) -> Result<HomologyProfile> {
    homology_with_options(p, true)
}

/// As [`homology`], with the collapse preprocessing optionally disabled
/// (used to cross-check the collapse pass itself).
pub fn homology_with_options(p: &Polycube, collapse: bool) -> Result<HomologyProfile> {
    let mut complex = build_complex(p)?;
    complex.check_boundary_squares_to_zero()?;
    let euler = complex.euler_characteristic();
    if collapse {
        complex.collapse();
    }
    let dim = complex.ambient_dim();
    let mut ranks = vec![0usize; dim + 2];
    let mut divisors: Vec<Vec<u64>> = vec![Vec::new(); dim + 2];
    for k in 1..=dim {
        let form = smith_normal_form(&complex.boundary_matrix(k))?;
        ranks[k] = form.rank;
        divisors[k] = form.divisors;
    }
    let mut betti = Vec::with_capacity(dim + 1);
    let mut torsion = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let cycles = complex.live_count(k) - ranks[k];
        let boundaries = ranks[k + 1];
        betti.push((cycles - boundaries) as u64);
        torsion.push(
            divisors[k + 1]
                .iter()
                .copied()
                .filter(|&d| d > 1)
                .collect(),
        );
    }
    // independent cross-check: the alternating Betti sum must equal the
    // Euler characteristic of the original complex
    let alt: i64 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if alt != euler {
        return Err(Error::ContractViolated(format!(
            "Euler characteristic mismatch: betti sum {alt} vs cell count sum {euler}"
        )));
    }
    Ok(HomologyProfile { betti, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::Cell;

    fn poly(dim: usize, cells: &[&[i64]]) -> Polycube {
        Polycube::new(dim, 1, cells.iter().map(|c| Cell::from(*c))).unwrap()
    }

    #[test]
    fn single_square_face_counts() {
        let p = poly(2, &[&[0, 0]]);
        let c = build_complex(&p).unwrap();
        assert_eq!(c.count(2), 1);
        assert_eq!(c.count(1), 4);
        assert_eq!(c.count(0), 4);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn chair_face_counts() {
        let p = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let c = build_complex(&p).unwrap();
        assert_eq!(c.count(2), 3);
        assert_eq!(c.count(1), 10);
        assert_eq!(c.count(0), 8);
    }

    #[test]
    fn each_k_cube_has_2k_facets() {
        let p = poly(3, &[&[0, 0, 0]]);
        let c = build_complex(&p).unwrap();
        for k in 1..=3 {
            for cube in &c.cubes[k] {
                assert_eq!(cube.boundary().len(), 2 * k);
            }
        }
        c.check_boundary_squares_to_zero().unwrap();
    }

    #[test]
    fn contractible_polycubes() {
        for p in [
            poly(1, &[&[0]]),
            poly(2, &[&[0, 0], &[1, 0], &[0, 1]]),
            poly(3, &[&[0, 0, 0], &[0, 0, 1]]),
        ] {
            let h = homology(&p).unwrap();
            assert!(h.matches(&HomologyProfile::ball(p.dim() + 1)), "{h:?}");
        }
    }

    #[test]
    fn square_annulus_is_a_circle() {
        // 3x3 block minus its center
        let cells: Vec<Cell> = (0..3)
            .flat_map(|x| (0..3).map(move |y| Cell::from([x, y])))
            .filter(|c| *c != Cell::from([1, 1]))
            .collect();
        let p = Polycube::new(2, 1, cells).unwrap();
        let h = homology(&p).unwrap();
        assert_eq!(h.betti, vec![1, 1, 0]);
        assert!(h.is_torsion_free());
    }

    #[test]
    fn hollow_cube_is_a_two_sphere() {
        // 3x3x3 block minus its center cell
        let cells: Vec<Cell> = (0..3)
            .flat_map(|x| {
                (0..3).flat_map(move |y| (0..3).map(move |z| Cell::from([x, y, z])))
            })
            .filter(|c| *c != Cell::from([1, 1, 1]))
            .collect();
        let p = Polycube::new(3, 1, cells).unwrap();
        let h = homology(&p).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1, 0]);
        assert!(h.is_torsion_free());
    }

    #[test]
    fn disconnected_components_add_in_degree_zero() {
        let p = poly(2, &[&[0, 0], &[5, 5], &[9, 0]]);
        let h = homology(&p).unwrap();
        assert_eq!(h.betti, vec![3, 0, 0]);
    }

    #[test]
    fn collapse_agrees_with_direct_computation() {
        let shapes = [
            poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[2, 1], &[2, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[0, 1, 0]]),
        ];
        for p in shapes {
            let fast = homology_with_options(&p, true).unwrap();
            let slow = homology_with_options(&p, false).unwrap();
            assert_eq!(fast, slow);
        }
        // and on a shape with a 1-cycle
        let cells: Vec<Cell> = (0..3)
            .flat_map(|x| (0..3).map(move |y| Cell::from([x, y])))
            .filter(|c| *c != Cell::from([1, 1]))
            .collect();
        let p = Polycube::new(2, 1, cells).unwrap();
        assert_eq!(
            homology_with_options(&p, true).unwrap(),
            homology_with_options(&p, false).unwrap()
        );
    }

    #[test]
    fn homology_is_invariant_under_refinement() {
        let cells: Vec<Cell> = (0..3)
            .flat_map(|x| (0..3).map(move |y| Cell::from([x, y])))
            .filter(|c| *c != Cell::from([1, 1]))
            .collect();
        let p = Polycube::new(2, 1, cells).unwrap();
        let h = homology(&p).unwrap();
        for factor in [2u64, 3] {
            assert_eq!(homology(&p.refined(factor).unwrap()).unwrap(), h);
        }
    }
}
