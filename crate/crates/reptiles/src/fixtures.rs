//! Shipped input fixtures and reproducible random polycubes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cell::{Cell, GridBox};
use crate::error::{Error, Result};
use crate::polycube::Polycube;

/// A cube decomposition at scale 1/8 suitable for the self-tiler assembly:
/// the distinguished piece together with one ball per face, positioned so
/// the boundary pattern validates. Shipped for dimensions 2 and 3.
///
/// Each ball is a two-cell bar hugging its face. In dimension 2 the face
/// patches sit away from the corners so the quarter-turn images stay clear
/// of each other; in dimension 3 the patches follow the quarter-point /
/// three-quarter-point layout, with the last ball centered on the edge of
/// its face.
pub fn rstar_fixture(dim: usize) -> Result<(Polycube, Vec<Polycube>)> {
    let scale: u64 = 8;
    let cube = GridBox::cube(dim, 0, 8)?;
    let balls: Vec<Polycube> = match dim {
        2 => vec![
            Polycube::new(2, scale, [[0, 1], [0, 2]].into_iter().map(Cell::from))?,
            Polycube::new(2, scale, [[5, 0], [6, 0]].into_iter().map(Cell::from))?,
        ],
        3 => vec![
            Polycube::new(
                3,
                scale,
                [[0, 7, 1], [0, 7, 2]].into_iter().map(Cell::from),
            )?,
            Polycube::new(
                3,
                scale,
                [[7, 0, 5], [7, 0, 6]].into_iter().map(Cell::from),
            )?,
            Polycube::new(
                3,
                scale,
                [[3, 7, 0], [4, 7, 0]].into_iter().map(Cell::from),
            )?,
        ],
        other => return Err(Error::NoSuchFixture(other)),
    };
    let mut occupied = Polycube::empty(dim, scale)?;
    for b in &balls {
        occupied = occupied.disjoint_union(b)?;
    }
    let r = occupied.complement_in(&cube)?;
    Ok((r, balls))
}

/// A face-connected polycube of `cells` cells grown from the origin by
/// repeatedly attaching a random facet neighbor. Deterministic for a given
/// seed.
pub fn random_connected_polycube(dim: usize, cells: usize, seed: u64) -> Result<Polycube> {
    if dim == 0 || cells == 0 {
        return Err(Error::EmptyPolycube);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grow_connected(dim, cells, &mut rng)
}

/// As [`random_connected_polycube`], drawing from a caller-owned generator.
pub fn grow_connected<R: Rng>(dim: usize, cells: usize, rng: &mut R) -> Result<Polycube> {
    let mut set: Vec<Cell> = vec![Cell::new(vec![0; dim])];
    let mut member: std::collections::BTreeSet<Cell> = set.iter().cloned().collect();
    while set.len() < cells {
        let base = &set[rng.gen_range(0..set.len())];
        let axis = rng.gen_range(0..dim);
        let delta = if rng.gen_bool(0.5) { 1 } else { -1 };
        let candidate = base.shifted(axis, delta)?;
        if member.insert(candidate.clone()) {
            set.push(candidate);
        }
    }
    Polycube::new(dim, 1, member)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_partition_the_cube() {
        for dim in [2usize, 3] {
            let (r, balls) = rstar_fixture(dim).unwrap();
            let total: usize = r.len() + balls.iter().map(Polycube::len).sum::<usize>();
            assert_eq!(total as u128, 8u128.pow(dim as u32));
            assert!(r.is_connected());
            for b in &balls {
                assert!(b.is_connected());
            }
        }
        assert!(matches!(rstar_fixture(4), Err(Error::NoSuchFixture(4))));
    }

    #[test]
    fn random_polycubes_are_connected_and_reproducible() {
        for seed in 0..5 {
            let a = random_connected_polycube(3, 9, seed).unwrap();
            let b = random_connected_polycube(3, 9, seed).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), 9);
            assert!(a.is_connected());
        }
    }
}
