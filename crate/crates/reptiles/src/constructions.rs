//! Explicit rep-tile constructions.
//!
//! Every operation here that claims a tiling verifies its certificate before
//! returning; a construction that cannot prove its own claim fails closed
//! with an error rather than handing back an unchecked object.

use std::collections::BTreeSet;

use crate::cell::{Cell, GridBox};
use crate::error::{Error, Result};
use crate::footprint::{footprint_of, stack_from_footprint, LabeledFootprint};
use crate::homology::homology;
use crate::isometry::{plane_rotation, LatticeIsometry};
use crate::polycube::Polycube;
use crate::rotation::{odd_half_turn, pair_quarter_turn, tiling_rotation_family};
use crate::verify::{validate_boundary_pattern, verify_tiling, Placement, TilingCertificate};

/// Certificate that `tile` and `partner(tile)` partition `target`.
pub fn pair_certificate(
    tile: &Polycube,
    partner: &LatticeIsometry,
    target: &GridBox,
) -> Result<TilingCertificate> {
    Ok(TilingCertificate {
        tile: tile.clone(),
        target: Polycube::from_box(target, tile.scale_den())?,
        placements: vec![
            Placement::isometric(LatticeIsometry::identity(tile.dim())),
            Placement::isometric(partner.clone()),
        ],
    })
}

fn require_pair_tiling(
    tile: &Polycube,
    partner: &LatticeIsometry,
    target: &GridBox,
) -> Result<TilingCertificate> {
    let cert = pair_certificate(tile, partner, target)?;
    let report = verify_tiling(&cert)?;
    if !report.pass {
        return Err(Error::PairTilingFailed(format!("{:?}", report.failure)));
    }
    Ok(cert)
}

/// The half turn pairing a stack with its complement in the ambient box
/// `[0,4]^dim` (in ambient coordinates): rotation by pi about the plane
/// where the last two coordinates equal 2.
pub fn standard_pair_rotation(dim: usize, scale_den: u64) -> Result<LatticeIsometry> {
    let c = 2 * scale_den as i64;
    plane_rotation(dim, (dim - 2, dim - 1), 2, (c, c))
}

/// The labeled footprint of the sphere-family tile: over `[0,4]^(n+1)`, the
/// core cells (those around the center point) carry 4 above the midplane and
/// 0 below it, and every shell cell carries 2.
pub fn sphere_footprint(n: usize) -> Result<LabeledFootprint> {
    let fp_dim = n + 1;
    let grid = GridBox::cube(fp_dim, 0, 4)?;
    let heights = grid.cells().into_iter().map(|cell| {
        let in_core = (0..fp_dim).all(|a| cell[a] == 1 || cell[a] == 2);
        let h = if in_core {
            if cell[fp_dim - 1] == 2 {
                4
            } else {
                0
            }
        } else {
            2
        };
        (cell, h)
    });
    LabeledFootprint::new(fp_dim, 1, 4, heights)
}

/// The half turn whose orbit pairs the sphere-family tile with its
/// complement in `[0,4]^(n+2)`.
pub fn sphere_pair_rotation(n: usize) -> Result<LatticeIsometry> {
    standard_pair_rotation(n + 2, 1)
}

/// The (n+2)-dimensional tile with the homotopy type of the n-sphere: the
/// stack of cubes over [`sphere_footprint`]. It occupies exactly half of
/// `[0,4]^(n+2)`, and together with its half-turn image partitions that box
/// (verified on every call). For `n = 0` the tile is disconnected (two
/// bars); tiling verification does not require connectivity.
pub fn sphere_reptile(n: usize) -> Result<Polycube> {
    let s = stack_from_footprint(&sphere_footprint(n)?)?;
    let target = GridBox::cube(n + 2, 0, 4)?;
    require_pair_tiling(&s, &sphere_pair_rotation(n)?, &target)?;
    Ok(s)
}

/// Verified certificate that the sphere-family tile and its half-turn image
/// partition `[0,4]^(n+2)`.
pub fn sphere_certificate(n: usize) -> Result<TilingCertificate> {
    let s = stack_from_footprint(&sphere_footprint(n)?)?;
    let target = GridBox::cube(n + 2, 0, 4)?;
    require_pair_tiling(&s, &sphere_pair_rotation(n)?, &target)
}

/// Replace a sub-union `cells` of `p` by its image under `g`, keeping the
/// cell count. Fails if `cells` is not contained in `p` or the image
/// collides with a retained cell.
pub fn cube_swap(p: &Polycube, cells: &[Cell], g: &LatticeIsometry) -> Result<Polycube> {
    let moving: BTreeSet<&Cell> = cells.iter().collect();
    for cell in cells {
        if !p.contains(cell) {
            return Err(Error::SwapSourceMissing(cell.clone()));
        }
    }
    let mut out: BTreeSet<Cell> = p
        .cells()
        .filter(|c| !moving.contains(c))
        .cloned()
        .collect();
    for cell in cells {
        let image = g.apply_cell(cell)?;
        if !out.insert(image.clone()) {
            return Err(Error::SwapCollision(image));
        }
    }
    let swapped = Polycube::new(p.dim(), p.scale_den(), out)?;
    debug_assert_eq!(swapped.len(), p.len());
    Ok(swapped)
}

/// Check the two gluing conditions a wedge summand must satisfy in its
/// ambient box `[0,4]^dim`: its slice at the first-axis walls is exactly the
/// half-height slab, and it partitions the box with its half-turn image.
pub fn check_wedge_conditions(r: &Polycube) -> Result<()> {
    let dim = r.dim();
    if dim < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: dim });
    }
    let m = r.scale_den() as i64;
    for (which, wall) in [("low", 0), ("high", 4 * m - 1)] {
        let mut lo = vec![0i64; dim];
        let mut hi = vec![4 * m; dim];
        lo[0] = wall;
        hi[0] = wall + 1;
        hi[dim - 1] = 2 * m;
        let expected: BTreeSet<Cell> = GridBox::new(lo, hi)?.cells().into_iter().collect();
        let actual: BTreeSet<Cell> = r.cells().filter(|c| c[0] == wall).cloned().collect();
        if expected != actual {
            return Err(Error::GluingFaceViolated { which });
        }
    }
    let target = GridBox::cube(dim, 0, 4 * m)?;
    require_pair_tiling(r, &standard_pair_rotation(dim, r.scale_den())?, &target)?;
    Ok(())
}

/// Glue two wedge summands along the first axis and renormalize.
///
/// `r2` is translated so its first-axis range follows `r1`'s; the union is
/// then compressed by one half along the first axis while the lattice is
/// refined by two, so the result again occupies `[0,4]^dim` (at twice the
/// scale denominator) and satisfies both wedge conditions. The two summands
/// meet in a single face slab, so the union carries the homotopy type of the
/// one-point join of the summands.
pub fn wedge_sum(r1: &Polycube, r2: &Polycube) -> Result<Polycube> {
    let dim = r1.dim();
    if r2.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: r2.dim(),
        });
    }
    if r2.scale_den() != r1.scale_den() {
        return Err(Error::ScaleMismatch(r1.scale_den(), r2.scale_den()));
    }
    check_wedge_conditions(r1)?;
    check_wedge_conditions(r2)?;
    let m = r1.scale_den() as i64;
    let mut shift = vec![0i64; dim];
    shift[0] = 4 * m;
    let union = r1.disjoint_union(&r2.translated(&shift)?)?;
    // compress the first axis by 1/2 and refine the lattice by 2: each cell
    // becomes a 1 x 2 x ... x 2 block of the doubled lattice
    let mut cells = Vec::with_capacity(union.len() << (dim - 1));
    for cell in union.cells() {
        let mut offsets = vec![0i64; dim - 1];
        loop {
            let mut coords = Vec::with_capacity(dim);
            coords.push(cell[0]);
            for (a, &d) in offsets.iter().enumerate() {
                coords.push(2 * cell[a + 1] + d);
            }
            cells.push(Cell::new(coords));
            let mut axis = dim - 1;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                offsets[axis] += 1;
                if offsets[axis] < 2 {
                    break;
                }
                offsets[axis] = 0;
            }
            if offsets.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    let out = Polycube::new(dim, r1.scale_den() * 2, cells)?;
    check_wedge_conditions(&out)?;
    Ok(out)
}

/// Thicken a wedge summand into a higher ambient dimension, preserving both
/// wedge conditions and the homotopy type (the result is the summand times a
/// ball).
///
/// For inputs of dimension at least 3 this is the plain product with the
/// full box on `extra` new axes, inserted immediately after the first axis:
/// the gluing axis stays first and the rotation plane stays in the last two
/// coordinates. A 2-dimensional input needs its own embedding, because there
/// the rotation plane contains the gluing axis: its thickening is rebuilt
/// from the footprint — a connected input becomes the uniform half-height
/// slab, a two-component input becomes a staircase whose two flaps attach to
/// opposite walls without meeting. Both conditions are re-verified on the
/// output either way.
pub fn thicken(s: &Polycube, extra: usize) -> Result<Polycube> {
    if extra == 0 {
        return Err(Error::InvalidRefinement);
    }
    check_wedge_conditions(s)?;
    let m = s.scale_den() as i64;
    let dim = s.dim();
    let new_dim = dim + extra;
    let out = if dim >= 3 {
        let mut cells = Vec::new();
        let mut w = vec![0i64; extra];
        loop {
            for cell in s.cells() {
                let mut coords = Vec::with_capacity(new_dim);
                coords.push(cell[0]);
                coords.extend_from_slice(&w);
                coords.extend_from_slice(&cell.coords()[1..]);
                cells.push(Cell::new(coords));
            }
            let mut axis = extra;
            loop {
                if axis == 0 {
                    break;
                }
                axis -= 1;
                w[axis] += 1;
                if w[axis] < 4 * m {
                    break;
                }
                w[axis] = 0;
            }
            if w.iter().all(|&d| d == 0) {
                break;
            }
        }
        Polycube::new(new_dim, s.scale_den(), cells)?
    } else {
        // A 2-dimensional summand is a stack over a segment, so it is either
        // a ball or two balls. Its thickening is rebuilt directly: the
        // half-height slab is a ball satisfying both conditions, and for the
        // two-ball case one bottom cell is traded to the far pocket under
        // the pairing rotation — a cube swap, so the tiling property
        // survives, while the traded cube floats two units clear of the slab.
        let components = s.connected_components().len();
        if components > 2 {
            return Err(Error::ContractViolated(format!(
                "thickening a 2-dimensional summand with {components} components is not supported"
            )));
        }
        let mut lo = vec![0i64; new_dim];
        let mut hi = vec![4 * m; new_dim];
        lo[new_dim - 1] = 0;
        hi[new_dim - 1] = 2 * m;
        let slab = Polycube::from_box(&GridBox::new(lo, hi)?, s.scale_den())?;
        if components == 1 {
            slab
        } else {
            let mut u = vec![0i64; new_dim];
            u[0] = 1;
            cube_swap(
                &slab,
                &[Cell::new(u)],
                &standard_pair_rotation(new_dim, s.scale_den())?,
            )?
        }
    };
    check_wedge_conditions(&out)?;
    Ok(out)
}

/// Suspend a stack: take four unit slices of `r` along a new first axis and,
/// in the outermost two slices, move the cells at the top of full-height
/// columns onto the base-level holes of the same slice via `rot`. Each move
/// is a cube swap under `rot x identity`, so the result still partitions
/// `[0,4]^(n+1)` with its image under that extended rotation (verified).
///
/// `r` must be a stack of cubes along its last axis inside `[0,4]^n`
/// (lattice units) that partitions the box with `rot(r)`.
pub fn suspend(r: &Polycube, rot: &LatticeIsometry) -> Result<Polycube> {
    let n = r.dim();
    footprint_of(r, n - 1, 1)?;
    let box_n = GridBox::cube(n, 0, 4)?;
    require_pair_tiling(r, rot, &box_n)?;

    let tops: BTreeSet<Cell> = r.cells().filter(|c| c[n - 1] == 3).cloned().collect();
    let mut cells = Vec::with_capacity(4 * r.len());
    for slice in 0..4i64 {
        let swap_slice = slice == 0 || slice == 3;
        for cell in r.cells() {
            if swap_slice && tops.contains(cell) {
                cells.push(rot.apply_cell(cell)?.inserted(0, slice));
            } else {
                cells.push(cell.inserted(0, slice));
            }
        }
    }
    let out = Polycube::new(n + 1, r.scale_den(), cells)?;
    let partner = rot.insert_fixed_axis(0);
    require_pair_tiling(&out, &partner, &GridBox::cube(n + 1, 0, 4)?)?;
    Ok(out)
}

/// The partner rotation of a suspension: the input pairing extended by the
/// identity on the new first axis.
pub fn suspension_pair_rotation(rot: &LatticeIsometry) -> LatticeIsometry {
    rot.insert_fixed_axis(0)
}

/// An n-dimensional two-copy tiler with the homotopy type of any connected
/// (n-1)-dimensional polycube `p`.
///
/// The footprint embeds `p` in the upper half of a slab, grows a width-one
/// finger down to the base, and adds a full base layer; columns over that
/// support get height `k+2`, the mirrored support below the base gets
/// `k+2`, the remaining lower cells get `2k+4`, and everything else gets 0.
/// Paired column labels sum to `2k+4`, so the stack and its image under the
/// half turn about the base-and-midheight plane partition the ambient box
/// (verified), and the stack retracts to `p` (homology checked).
pub fn footprint_reptile(p: &Polycube) -> Result<(Polycube, TilingCertificate)> {
    let fp_dim = p.dim();
    let n = fp_dim + 1;
    if p.is_empty() {
        return Err(Error::EmptyPolycube);
    }
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    let p0 = p.normalized()?;
    let bb = p0.bounding_box()?;
    let extent = (0..fp_dim).map(|a| bb.hi()[a]).max().unwrap();
    let k = if extent % 2 == 0 { extent } else { extent + 1 };
    let kp2 = k + 2;
    let last = fp_dim - 1;

    // shift the support two units up the last footprint axis
    let mut shift = vec![0i64; fp_dim];
    shift[last] = 2;
    let ps = p0.translated(&shift)?;
    // width-one finger from the lex-least bottom cell down to the base layer
    let anchor = ps
        .cells()
        .find(|c| c[last] == 2)
        .cloned()
        .expect("normalized support touches its base");
    let finger = Polycube::single_cell(anchor.shifted(last, -1)?, p.scale_den())?;
    // full base layer
    let mut slab_lo = vec![0i64; fp_dim];
    let mut slab_hi = vec![kp2; fp_dim];
    slab_lo[last] = 0;
    slab_hi[last] = 1;
    let slab = Polycube::from_box(&GridBox::new(slab_lo, slab_hi)?, p.scale_den())?;
    let support = ps.disjoint_union(&finger)?.disjoint_union(&slab)?;

    // labels over [0,k+2)^(fp_dim-1) x [-(k+2), k+2)
    let mut fp_lo = vec![0i64; fp_dim];
    let mut fp_hi = vec![kp2; fp_dim];
    fp_lo[last] = -kp2;
    fp_hi[last] = kp2;
    let footprint_box = GridBox::new(fp_lo.clone(), fp_hi.clone())?;
    let heights = footprint_box.cells().into_iter().map(|cell| {
        let h = if cell[last] >= 0 {
            if support.contains(&cell) {
                kp2 as u64
            } else {
                0
            }
        } else {
            let mut mirrored = cell.coords().to_vec();
            mirrored[last] = -cell[last] - 1;
            if support.contains(&Cell::new(mirrored)) {
                kp2 as u64
            } else {
                2 * kp2 as u64
            }
        };
        (cell, h)
    });
    let labeled = LabeledFootprint::new(fp_dim, p.scale_den(), 2 * kp2 as u64, heights)?;
    let s = stack_from_footprint(&labeled)?;

    // half turn about the plane where the last footprint axis vanishes and
    // the stacking axis sits at mid-height
    let rho = plane_rotation(n, (n - 2, n - 1), 2, (0, kp2))?;
    let mut target_lo = vec![0i64; n];
    let mut target_hi = vec![kp2; n];
    target_lo[n - 2] = -kp2;
    target_hi[n - 2] = kp2;
    target_lo[n - 1] = 0;
    target_hi[n - 1] = 2 * kp2;
    let target = GridBox::new(target_lo, target_hi)?;
    let cert = require_pair_tiling(&s, &rho, &target)?;

    let hs = homology(&s)?;
    let hp = homology(p)?;
    if !hs.matches(&hp) {
        return Err(Error::ContractViolated(format!(
            "stack homology {hs:?} differs from footprint homology {hp:?}"
        )));
    }
    Ok((s, cert))
}

fn cell_boundary_facets(p: &Polycube, cell: &Cell) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    for axis in 0..p.dim() {
        if !p.contains(&cell.shifted(axis, -1)?) {
            out.push((axis, false));
        }
        if !p.contains(&cell.shifted(axis, 1)?) {
            out.push((axis, true));
        }
    }
    Ok(out)
}

/// Subdivide by three and remove the subcell at the center of one boundary
/// facet. The subdivision eliminates every peninsula, and the removal dents
/// the boundary without creating one, so the result has no peninsulas and
/// unchanged homology — while any tiling of space by the result would force
/// a peninsula into the notch, which is impossible.
///
/// In dimension 2 the notched cell must meet the boundary in exactly one
/// facet; if no such cell exists the polycube is pre-refined by two (at most
/// twice) until one does.
pub fn notch_non_tiler(x: &Polycube) -> Result<Polycube> {
    if x.is_empty() {
        return Err(Error::EmptyPolycube);
    }
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = x.dim();
    let (base, cell, axis, upper) = if n == 2 {
        let mut base = x.clone();
        let mut chosen = None;
        for _ in 0..3 {
            let hit = base
                .cells()
                .map(|c| cell_boundary_facets(&base, c).map(|f| (c.clone(), f)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|(_, facets)| facets.len() == 1);
            if let Some((c, facets)) = hit {
                chosen = Some((base.clone(), c, facets[0].0, facets[0].1));
                break;
            }
            base = base.refined(2)?;
        }
        chosen.ok_or_else(|| {
            Error::ContractViolated(
                "no cell meets the boundary in exactly one facet after pre-refinement".into(),
            )
        })?
    } else {
        let cell = x.cells().next().expect("nonempty").clone();
        let facets = cell_boundary_facets(x, &cell)?;
        let (axis, upper) = *facets.first().expect("every finite polycube has a boundary facet");
        (x.clone(), cell, axis, upper)
    };
    let refined = base.refined(3)?;
    let mut sub: Vec<i64> = cell.coords().iter().map(|&v| 3 * v + 1).collect();
    sub[axis] = 3 * cell[axis] + if upper { 2 } else { 0 };
    let notch = Cell::new(sub);
    debug_assert!(refined.contains(&notch));
    let out = Polycube::new(
        n,
        refined.scale_den(),
        refined.cells().filter(|c| **c != notch).cloned(),
    )?;
    if let Some(pen) = out.find_peninsula() {
        return Err(Error::UnexpectedPeninsula(pen));
    }
    Ok(out)
}

/// Assemble the self-tiler induced by a cube decomposition: the distinguished
/// piece `r` plus, for each coordinate-plane pair, the quarter-turn images of
/// the paired balls in the neighboring cubes (plus the extra half-turn image
/// of the last ball in odd dimension).
///
/// `r` and `balls` must partition the cells of the unit cube at their
/// common scale and pass the boundary-pattern validation. The result has
/// exactly the cube's cell count (ambient volume one), and the full rotation
/// family places `2^n` copies of it in an exact partition of `[-1,1]^n`
/// (verified; the certificate is returned).
pub fn assemble_rstar(
    r: &Polycube,
    balls: &[Polycube],
) -> Result<(Polycube, TilingCertificate)> {
    let n = r.dim();
    let m = r.scale_den();
    let pattern = validate_boundary_pattern(r, balls)?;
    if let Some(v) = pattern.violation {
        return Err(Error::PatternViolated {
            property: v.property,
            face_axis: v.face_axis,
        });
    }
    let mut star = r.clone();
    for k in 1..=n / 2 {
        let rk = pair_quarter_turn(n, k)?;
        star = star.disjoint_union(&rk.inverse()?.apply_polycube(&balls[2 * k - 2])?)?;
        star = star.disjoint_union(&rk.apply_polycube(&balls[2 * k - 1])?)?;
    }
    if n % 2 == 1 {
        let g = odd_half_turn(n)?.compose(&pair_quarter_turn(n, (n - 1) / 2)?.inverse()?)?;
        star = star.disjoint_union(&g.apply_polycube(&balls[n - 1])?)?;
    }
    let expected = (m as u128).pow(n as u32);
    if star.len() as u128 != expected {
        return Err(Error::ContractViolated(format!(
            "assembled tile has {} cells, expected {expected}",
            star.len()
        )));
    }
    let side = m as i64;
    let target = GridBox::cube(n, -side, side)?;
    let cert = TilingCertificate {
        tile: star.clone(),
        target: Polycube::from_box(&target, m)?,
        placements: tiling_rotation_family(n)?
            .into_iter()
            .map(Placement::isometric)
            .collect(),
    };
    let report = verify_tiling(&cert)?;
    if !report.pass {
        return Err(Error::CertificateFailed(format!("{:?}", report.failure)));
    }
    Ok((star, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_footprint_labels_and_counts() {
        let f = sphere_footprint(0).unwrap();
        assert_eq!(f.label_set(), vec![0, 2, 4]);
        assert_eq!(f.height_of(&Cell::from([0])), 2);
        assert_eq!(f.height_of(&Cell::from([1])), 0);
        assert_eq!(f.height_of(&Cell::from([2])), 4);
        assert_eq!(f.height_of(&Cell::from([3])), 2);
        for n in 0..=2 {
            assert_eq!(sphere_footprint(n).unwrap().label_set(), vec![0, 2, 4]);
        }
    }

    #[test]
    fn sphere_reptile_zero_is_the_eight_cell_stack() {
        let s = sphere_reptile(0).unwrap();
        let expected: BTreeSet<Cell> = [
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
        assert_eq!(s.cell_set(), &expected);
        assert_eq!(s.connected_components().len(), 2);
    }

    #[test]
    fn sphere_cell_counts_are_half_the_box() {
        for n in 0..=2 {
            let s = sphere_reptile(n).unwrap();
            assert_eq!(s.len() as u128, 4u128.pow(n as u32 + 2) / 2);
        }
    }

    #[test]
    fn sphere_boundary_is_connected_for_n_one() {
        let s = sphere_reptile(1).unwrap();
        assert_eq!(s.boundary_component_count().unwrap(), 1);
    }

    #[test]
    fn cube_swap_identity_and_counting() {
        let s = sphere_reptile(0).unwrap();
        let id = LatticeIsometry::identity(2);
        let top = Cell::from([2, 3]);
        assert_eq!(cube_swap(&s, &[], &id).unwrap(), s);
        // moving the top of the full column onto the paired hole keeps the
        // pair tiling property
        let r = sphere_pair_rotation(0).unwrap();
        let swapped = cube_swap(&s, &[top], &r).unwrap();
        assert_eq!(swapped.len(), s.len());
        assert!(swapped.contains(&Cell::from([1, 0])));
        let target = GridBox::cube(2, 0, 4).unwrap();
        assert!(require_pair_tiling(&swapped, &r, &target).is_ok());
    }

    #[test]
    fn cube_swap_rejects_collisions() {
        let s = sphere_reptile(0).unwrap();
        let id = LatticeIsometry::identity(2);
        let err = cube_swap(&s, &[Cell::from([9, 9])], &id);
        assert!(matches!(err, Err(Error::SwapSourceMissing(_))));
        let shift = LatticeIsometry::translation(vec![0, 1]);
        let err = cube_swap(&s, &[Cell::from([2, 0])], &shift);
        assert!(matches!(err, Err(Error::SwapCollision(_))));
    }

    #[test]
    fn wedge_of_two_sphere_zeros() {
        let s = sphere_reptile(0).unwrap();
        let w = wedge_sum(&s, &s).unwrap();
        // 16 union cells, each becoming a 1 x 2 block of the doubled lattice
        assert_eq!(w.len(), 2 * s.len() * 2);
        assert_eq!(w.scale_den(), 2);
        check_wedge_conditions(&w).unwrap();
    }

    #[test]
    fn thicken_multiplies_by_the_box() {
        let s = sphere_reptile(0).unwrap();
        let t = thicken(&s, 1).unwrap();
        assert_eq!(t.len(), 8 * 4);
        assert_eq!(t.dim(), 3);
        check_wedge_conditions(&t).unwrap();
        let h = homology(&t).unwrap();
        assert!(h.matches(&homology(&s).unwrap()));
    }

    #[test]
    fn suspension_of_sphere_zero() {
        let s = sphere_reptile(0).unwrap();
        let r = sphere_pair_rotation(0).unwrap();
        let out = suspend(&s, &r).unwrap();
        assert_eq!(out.len(), 4 * s.len());
        assert_eq!(out.dim(), 3);
        let h = homology(&out).unwrap();
        assert_eq!(h.betti, vec![1, 1, 0, 0]);
    }

    #[test]
    fn footprint_reptile_of_single_square_is_a_ball() {
        let p = Polycube::single_cell(Cell::from([0, 0]), 1).unwrap();
        let (s, cert) = footprint_reptile(&p).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(verify_tiling(&cert).unwrap().pass);
        let h = homology(&s).unwrap();
        assert_eq!(h.betti, vec![1, 0, 0, 0]);
    }

    #[test]
    fn notch_of_a_single_cube() {
        let x = Polycube::single_cell(Cell::from([0, 0, 0]), 1).unwrap();
        let out = notch_non_tiler(&x).unwrap();
        assert_eq!(out.len(), 26);
        assert!(!out.has_peninsula());
    }

    #[test]
    fn notch_cell_count_in_two_dimensions() {
        // an L-shape has edge cells meeting the boundary in exactly one facet
        let x = Polycube::new(
            2,
            1,
            [[0, 0], [1, 0], [2, 0], [0, 1], [0, 2], [1, 1]]
                .into_iter()
                .map(Cell::from),
        )
        .unwrap();
        let out = notch_non_tiler(&x).unwrap();
        assert_eq!(out.len(), 9 * x.len() - 1);
        assert!(!out.has_peninsula());
    }

    #[test]
    fn notch_of_single_square_refines_first() {
        let x = Polycube::single_cell(Cell::from([0, 0]), 1).unwrap();
        let out = notch_non_tiler(&x).unwrap();
        // two pre-refinements by 2, then subdivision by 3, minus the notch
        assert_eq!(out.len(), 16 * 9 - 1);
        assert!(!out.has_peninsula());
    }
}
