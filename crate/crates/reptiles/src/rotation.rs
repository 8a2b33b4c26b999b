//! The commuting family of coordinate-plane quarter turns whose orbit of the
//! unit cube tiles `[-1,1]^n`, indexed by words over Z4.
//!
//! For even `n` the generators are the quarter turns `r_k` in the planes
//! `(x_{2k-1}, x_{2k})` about the origin; the `2^n` words in `(Z4)^{n/2}`
//! carry the unit cube onto the `2^n` unit subcubes of `[-1,1]^n`, and the
//! word is recovered from the image of the all-ones corner. For odd `n` an
//! extra half turn `f` in the last two coordinate axes doubles the family.

use crate::error::{Error, Result};
use crate::isometry::{plane_rotation, LatticeIsometry};

/// A word `y` over Z4, one letter per coordinate plane, plus an extra flag
/// for the half-turn generator in odd dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationWord {
    dim: usize,
    y: Vec<u8>,
    f_flag: bool,
}

impl RotationWord {
    pub fn new(dim: usize, y: Vec<u8>, f_flag: bool) -> Result<Self> {
        if dim == 0 || y.len() != dim / 2 {
            return Err(Error::InvalidRotationWord { dim });
        }
        if dim % 2 == 0 && f_flag {
            return Err(Error::InvalidRotationWord { dim });
        }
        Ok(RotationWord {
            dim,
            y: y.into_iter().map(|v| v % 4).collect(),
            f_flag,
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        RotationWord::new(dim, vec![0; dim / 2], false)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn letters(&self) -> &[u8] {
        &self.y
    }

    pub fn f_flag(&self) -> bool {
        self.f_flag
    }
}

/// The quarter turn `r_k` (1-based pair index) in the plane of axes
/// `(2k-1, 2k)` about the origin, carrying the first of the pair to the
/// second.
pub fn pair_quarter_turn(dim: usize, k: usize) -> Result<LatticeIsometry> {
    if k == 0 || 2 * k > dim {
        return Err(Error::InvalidRotationAxes);
    }
    plane_rotation(dim, (2 * k - 2, 2 * k - 1), 1, (0, 0))
}

/// The half turn `f` about the codimension-2 plane where the last two
/// coordinates vanish. Only meaningful for odd `dim`, where it supplies the
/// neighbor across the last face.
pub fn odd_half_turn(dim: usize) -> Result<LatticeIsometry> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: dim });
    }
    plane_rotation(dim, (dim - 2, dim - 1), 2, (0, 0))
}

/// Evaluate a word: `r_{n/2}^{y_{n/2}} o ... o r_1^{y_1} o f^{f_flag}`. The
/// plane turns commute with each other, so their order is immaterial; the
/// half turn is applied first.
pub fn rotation_word_to_isometry(w: &RotationWord) -> Result<LatticeIsometry> {
    let mut iso = if w.f_flag {
        odd_half_turn(w.dim)?
    } else {
        LatticeIsometry::identity(w.dim)
    };
    for (idx, &letter) in w.y.iter().enumerate() {
        if letter % 4 == 0 {
            continue;
        }
        let r = pair_quarter_turn(w.dim, idx + 1)?.pow((letter % 4) as i32)?;
        iso = r.compose(&iso)?;
    }
    Ok(iso)
}

/// Every word of the tiling family for dimension `n`: all of `(Z4)^{n/2}`
/// when `n` is even, and all `(y, f_flag)` pairs when `n` is odd. The family
/// has `2^n` members either way.
pub fn tiling_rotation_words(dim: usize) -> Result<Vec<RotationWord>> {
    if dim == 0 {
        return Err(Error::DimensionTooSmall { min: 1, got: 0 });
    }
    let pairs = dim / 2;
    let mut words = Vec::new();
    let flags: &[bool] = if dim % 2 == 1 { &[false, true] } else { &[false] };
    let total = 4u64.pow(pairs as u32);
    for &f_flag in flags {
        for code in 0..total {
            let mut y = Vec::with_capacity(pairs);
            let mut c = code;
            for _ in 0..pairs {
                y.push((c % 4) as u8);
                c /= 4;
            }
            words.push(RotationWord::new(dim, y, f_flag)?);
        }
    }
    Ok(words)
}

/// The isometries of the tiling family, in the order of
/// [`tiling_rotation_words`].
pub fn tiling_rotation_family(dim: usize) -> Result<Vec<LatticeIsometry>> {
    tiling_rotation_words(dim)?
        .iter()
        .map(rotation_word_to_isometry)
        .collect()
}

/// Invert the corner map in even dimensions: given the unique all-nonzero
/// corner `c` of a word image of the unit cube (entries all +1 or -1),
/// recover the word via `y_k = -(c_{2k} - 1) - (c_{2k-1} c_{2k} - 1) / 2`.
pub fn corner_to_y(corner: &[i64]) -> Result<RotationWord> {
    let dim = corner.len();
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::OddDimensionCorner(dim));
    }
    if corner.iter().any(|&c| c != 1 && c != -1) {
        return Err(Error::InvalidCorner);
    }
    let mut y = Vec::with_capacity(dim / 2);
    for k in 0..dim / 2 {
        let c_odd = corner[2 * k];
        let c_even = corner[2 * k + 1];
        let v = -(c_even - 1) - (c_odd * c_even - 1) / 2;
        y.push(v.rem_euclid(4) as u8);
    }
    RotationWord::new(dim, y, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::Cell;

    #[test]
    fn zero_word_is_identity() {
        let w = RotationWord::identity(4).unwrap();
        assert!(rotation_word_to_isometry(&w).unwrap().is_identity());
    }

    #[test]
    fn single_letter_word_is_the_quarter_turn() {
        let w = RotationWord::new(2, vec![1], false).unwrap();
        let iso = rotation_word_to_isometry(&w).unwrap();
        assert_eq!(iso, pair_quarter_turn(2, 1).unwrap());
    }

    #[test]
    fn plane_turns_commute() {
        let r1 = pair_quarter_turn(4, 1).unwrap();
        let r2 = pair_quarter_turn(4, 2).unwrap();
        assert_eq!(r1.compose(&r2).unwrap(), r2.compose(&r1).unwrap());
    }

    #[test]
    fn family_size_is_two_to_the_n() {
        assert_eq!(tiling_rotation_words(2).unwrap().len(), 4);
        assert_eq!(tiling_rotation_words(3).unwrap().len(), 8);
        assert_eq!(tiling_rotation_words(6).unwrap().len(), 64);
        assert_eq!(tiling_rotation_words(7).unwrap().len(), 128);
    }

    #[test]
    fn corner_formula_matches_examples() {
        assert_eq!(corner_to_y(&[1, 1]).unwrap().letters(), &[0]);
        assert_eq!(corner_to_y(&[-1, 1]).unwrap().letters(), &[1]);
        assert_eq!(corner_to_y(&[-1, -1]).unwrap().letters(), &[2]);
        assert_eq!(corner_to_y(&[1, -1]).unwrap().letters(), &[3]);
    }

    #[test]
    fn corner_map_round_trips_in_dimension_four() {
        for w in tiling_rotation_words(4).unwrap() {
            let iso = rotation_word_to_isometry(&w).unwrap();
            let corner = iso.apply_point(&[1, 1, 1, 1]).unwrap();
            assert!(corner.iter().all(|&c| c == 1 || c == -1));
            assert_eq!(corner_to_y(&corner).unwrap(), w);
        }
    }

    #[test]
    fn word_images_are_distinct_unit_cells() {
        // the four word images of the unit square partition [-1,1]^2
        let mut images = std::collections::BTreeSet::new();
        for w in tiling_rotation_words(2).unwrap() {
            let iso = rotation_word_to_isometry(&w).unwrap();
            images.insert(iso.apply_cell(&Cell::from([0, 0])).unwrap());
        }
        assert_eq!(images.len(), 4);
        for c in [[0, 0], [-1, 0], [-1, -1], [0, -1]] {
            assert!(images.contains(&Cell::from(c)));
        }
    }
}
