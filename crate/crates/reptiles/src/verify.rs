//! Exact tiling certificates and their verification.
//!
//! A certificate lists a tile, a target polycube, and a set of similarity
//! placements. Verification refines all geometry to the least common lattice
//! and compares cell sets exactly; there is no epsilon anywhere. Failures
//! are reported with a witness cell rather than thrown.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;

use crate::cell::{Cell, Facet};
use crate::error::{Error, Result};
use crate::isometry::LatticeIsometry;
use crate::polycube::Polycube;
use crate::rotation::{odd_half_turn, pair_quarter_turn};

/// A similarity placement: scale the tile by `scale_num/scale_den`, then
/// apply the isometry. The isometry's translation is an integer vector on
/// the lattice refined from the target's lattice by the ratio denominator,
/// i.e. in units of `1 / (target.scale_den * scale_den)`. This convention
/// keeps composed substitution placements integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub iso: LatticeIsometry,
    scale_num: u64,
    scale_den: u64,
}

impl Placement {
    pub fn new(iso: LatticeIsometry, scale_num: u64, scale_den: u64) -> Result<Self> {
        if scale_num == 0 || scale_den == 0 {
            return Err(Error::InvalidScaleRatio);
        }
        let g = scale_num.gcd(&scale_den);
        Ok(Placement {
            iso,
            scale_num: scale_num / g,
            scale_den: scale_den / g,
        })
    }

    /// An isometric placement (ratio 1).
    pub fn isometric(iso: LatticeIsometry) -> Self {
        Placement {
            iso,
            scale_num: 1,
            scale_den: 1,
        }
    }

    pub fn scale_num(&self) -> u64 {
        self.scale_num
    }

    pub fn scale_den(&self) -> u64 {
        self.scale_den
    }

    pub fn is_isometric(&self) -> bool {
        self.scale_num == 1 && self.scale_den == 1
    }
}

/// Tile + target + placements witnessing `target = union of placed copies`.
#[derive(Clone, Debug)]
pub struct TilingCertificate {
    pub tile: Polycube,
    pub target: Polycube,
    pub placements: Vec<Placement>,
}

/// Why a tiling certificate failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingFailure {
    /// Total placed volume differs from the target volume (fast path; no
    /// cell witness).
    VolumeMismatch,
    /// Some refined cell is covered by two placements.
    DoublyCovered(Cell),
    /// Some refined target cell is covered by no placement.
    Uncovered(Cell),
}

/// Outcome of [`verify_tiling`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub pass: bool,
    pub failure: Option<TilingFailure>,
    /// Scale denominator of the common refined lattice used for the check.
    pub refined_scale: u64,
}

impl TilingReport {
    fn pass(refined_scale: u64) -> Self {
        TilingReport {
            pass: true,
            failure: None,
            refined_scale,
        }
    }

    fn fail(refined_scale: u64, failure: TilingFailure) -> Self {
        TilingReport {
            pass: false,
            failure: Some(failure),
            refined_scale,
        }
    }
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).ok_or(Error::Overflow)
}

/// Verify a tiling certificate exactly.
///
/// All geometry is refined to the least common lattice; each placement's
/// cells are generated there and checked for pairwise disjointness and exact
/// coverage of the target. A necessary volume condition runs first so that
/// grossly wrong certificates fail before any cells are generated.
pub fn verify_tiling(cert: &TilingCertificate) -> Result<TilingReport> {
    let dim = cert.tile.dim();
    if cert.target.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: cert.target.dim(),
        });
    }
    let mt = cert.tile.scale_den();
    let mg = cert.target.scale_den();

    // common refined lattice
    let mut l = mg;
    for p in &cert.placements {
        if p.iso.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.iso.dim(),
            });
        }
        let tile_side_den = {
            // side of a placed tile cell is num / (mt * den)
            let den = mt.checked_mul(p.scale_den).ok_or(Error::Overflow)?;
            den / den.gcd(&p.scale_num)
        };
        l = checked_lcm(l, tile_side_den)?;
        let trans_den = mg.checked_mul(p.scale_den).ok_or(Error::Overflow)?;
        l = checked_lcm(l, trans_den)?;
    }

    // volume fast path
    let target_factor = l / mg;
    let mut placed_volume: u128 = 0;
    let mut spans = Vec::with_capacity(cert.placements.len());
    for p in &cert.placements {
        let num = (l as u128)
            .checked_mul(p.scale_num as u128)
            .ok_or(Error::Overflow)?;
        let den = (mt as u128) * (p.scale_den as u128);
        debug_assert_eq!(num % den, 0);
        let span = num / den;
        let span_i64 = i64::try_from(span).map_err(|_| Error::Overflow)?;
        let mut copy_volume = cert.tile.len() as u128;
        for _ in 0..dim {
            copy_volume = copy_volume.checked_mul(span).ok_or(Error::Overflow)?;
        }
        placed_volume = placed_volume
            .checked_add(copy_volume)
            .ok_or(Error::Overflow)?;
        spans.push(span_i64);
    }
    let mut target_volume = cert.target.len() as u128;
    for _ in 0..dim {
        target_volume = target_volume
            .checked_mul(target_factor as u128)
            .ok_or(Error::Overflow)?;
    }
    if placed_volume != target_volume {
        return Ok(TilingReport::fail(l, TilingFailure::VolumeMismatch));
    }

    // refined target cell set
    let target_refined = cert.target.refined(target_factor)?;
    let target_cells: HashSet<&Cell> = target_refined.cells().collect();

    // place every copy on the refined lattice
    let mut occupied: HashSet<Cell> = HashSet::with_capacity(target_refined.len());
    let mut any_outside = false;
    for (p, &span) in cert.placements.iter().zip(&spans) {
        // translation rescaled from its own unit to the refined lattice
        let trans_factor = (l / (mg * p.scale_den)) as i64;
        let trans: Vec<i64> = p
            .iso
            .trans()
            .iter()
            .map(|&t| t.checked_mul(trans_factor).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let refined_iso =
            LatticeIsometry::new(p.iso.perm().to_vec(), p.iso.signs().to_vec(), trans)?;
        for cell in cert.tile.cells() {
            let scaled: Vec<i64> = cell
                .coords()
                .iter()
                .map(|&c| c.checked_mul(span).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let corner = refined_iso.apply_span_corner(&scaled, span)?;
            // enumerate the span^dim refined cells of the placed cube
            let mut offsets = vec![0i64; dim];
            loop {
                let placed = Cell::new(
                    corner
                        .iter()
                        .zip(&offsets)
                        .map(|(&c, &d)| c + d)
                        .collect(),
                );
                if !target_cells.contains(&placed) {
                    any_outside = true;
                } else if !occupied.insert(placed.clone()) {
                    return Ok(TilingReport::fail(l, TilingFailure::DoublyCovered(placed)));
                }
                let mut axis = dim;
                loop {
                    if axis == 0 {
                        break;
                    }
                    axis -= 1;
                    offsets[axis] += 1;
                    if offsets[axis] < span {
                        break;
                    }
                    offsets[axis] = 0;
                }
                if offsets.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }

    if any_outside || occupied.len() != target_refined.len() {
        // volumes match, so some target cell must be uncovered
        let witness = target_refined
            .cells()
            .find(|c| !occupied.contains(c))
            .cloned()
            .expect("coverage deficit implies an uncovered target cell");
        return Ok(TilingReport::fail(l, TilingFailure::Uncovered(witness)));
    }
    Ok(TilingReport::pass(l))
}

/// A violated boundary-pattern property, identified the way the properties
/// are numbered: (1) face exclusivity, (2) and (3) the two rotated-patch
/// disjointness conditions, (4) the extra last-face condition in odd
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternViolation {
    pub property: u8,
    pub face_axis: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternReport {
    pub pass: bool,
    pub violation: Option<PatternViolation>,
}

fn face_patch(ball: &Polycube, face_axis: usize) -> Vec<Facet> {
    ball.cells()
        .filter(|c| c[face_axis] == 0)
        .map(|c| Facet::new(c.clone(), face_axis))
        .collect()
}

/// Validate the face pattern a cube decomposition must satisfy before the
/// rotated balls can be traded across the cube's faces.
///
/// `r` together with `balls[0..n]` must partition the cells of the unit cube
/// `[0,1]^n` at their common scale. The properties checked, face by face
/// (faces are taken at coordinate 0):
///
/// 1. the only ball meeting face `F_i` is `balls[i]`;
/// 2. the quarter-turn image of `balls[2k-1]`'s patch on `F_{2k}` lands in
///    `F_{2k-1}` away from `balls[2k-2]`'s patch;
/// 3. symmetrically with the inverse quarter turn;
/// 4. (odd `n` only) the last-face patch is disjoint from its own image
///    under the extra half-turn composite.
pub fn validate_boundary_pattern(r: &Polycube, balls: &[Polycube]) -> Result<PatternReport> {
    let n = r.dim();
    if balls.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: balls.len(),
        });
    }
    let m = r.scale_den();
    for b in balls {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
        if b.scale_den() != m {
            return Err(Error::ScaleMismatch(m, b.scale_den()));
        }
    }
    // partition precheck over [0, m]^n
    let side = i64::try_from(m).map_err(|_| Error::Overflow)?;
    let mut seen: BTreeSet<&Cell> = BTreeSet::new();
    let mut total = 0usize;
    for piece in std::iter::once(r).chain(balls.iter()) {
        for cell in piece.cells() {
            if (0..n).any(|a| cell[a] < 0 || cell[a] >= side) {
                return Err(Error::NotAPartition(format!(
                    "cell {cell} lies outside the unit cube"
                )));
            }
            if !seen.insert(cell) {
                return Err(Error::NotAPartition(format!("cell {cell} is covered twice")));
            }
            total += 1;
        }
    }
    let expected = (side as u128).pow(n as u32);
    if total as u128 != expected {
        return Err(Error::NotAPartition(format!(
            "{total} cells cover a cube of {expected}"
        )));
    }

    // (1) exclusivity of each face
    for face_axis in 0..n {
        for (j, ball) in balls.iter().enumerate() {
            if j == face_axis {
                continue;
            }
            if ball.cells().any(|c| c[face_axis] == 0) {
                return Ok(PatternReport {
                    pass: false,
                    violation: Some(PatternViolation {
                        property: 1,
                        face_axis,
                    }),
                });
            }
        }
    }

    // (2) and (3) per coordinate-plane pair
    for k in 1..=n / 2 {
        let axis_odd = 2 * k - 2; // face of balls[axis_odd]
        let axis_even = 2 * k - 1;
        let rk = pair_quarter_turn(n, k)?;
        let patch_odd: BTreeSet<Facet> = face_patch(&balls[axis_odd], axis_odd).into_iter().collect();
        let patch_even: BTreeSet<Facet> = face_patch(&balls[axis_even], axis_even).into_iter().collect();
        let mapped_even: BTreeSet<Facet> = patch_even
            .iter()
            .map(|f| rk.apply_facet(f))
            .collect::<Result<_>>()?;
        if mapped_even.intersection(&patch_odd).next().is_some() {
            return Ok(PatternReport {
                pass: false,
                violation: Some(PatternViolation {
                    property: 2,
                    face_axis: axis_odd,
                }),
            });
        }
        let rk_inv = rk.inverse()?;
        let mapped_odd: BTreeSet<Facet> = patch_odd
            .iter()
            .map(|f| rk_inv.apply_facet(f))
            .collect::<Result<_>>()?;
        if mapped_odd.intersection(&patch_even).next().is_some() {
            return Ok(PatternReport {
                pass: false,
                violation: Some(PatternViolation {
                    property: 3,
                    face_axis: axis_even,
                }),
            });
        }
    }

    // (4) extra condition on the last face in odd dimension
    if n % 2 == 1 {
        let last = n - 1;
        let g = odd_half_turn(n)?.compose(&pair_quarter_turn(n, (n - 1) / 2)?.inverse()?)?;
        let patch: BTreeSet<Facet> = face_patch(&balls[last], last).into_iter().collect();
        let mapped: BTreeSet<Facet> = patch
            .iter()
            .map(|f| g.apply_facet(f))
            .collect::<Result<_>>()?;
        if mapped.intersection(&patch).next().is_some() {
            return Ok(PatternReport {
                pass: false,
                violation: Some(PatternViolation {
                    property: 4,
                    face_axis: last,
                }),
            });
        }
    }

    Ok(PatternReport {
        pass: true,
        violation: None,
    })
}

/// A verified self-tiling: placements at a fixed contraction ratio mapping
/// the base polycube onto itself.
#[derive(Clone, Debug)]
pub struct RepDecomposition {
    pub base: Polycube,
    /// Denominator of the contraction ratio `1/scale_den`.
    pub scale_den: u64,
    pub placements: Vec<Placement>,
}

impl RepDecomposition {
    /// The decomposition expressed as a tiling certificate of the base by
    /// itself.
    pub fn as_certificate(&self) -> TilingCertificate {
        TilingCertificate {
            tile: self.base.clone(),
            target: self.base.clone(),
            placements: self.placements.clone(),
        }
    }
}

fn require_verified(cert: &TilingCertificate) -> Result<u64> {
    let report = verify_tiling(cert)?;
    if !report.pass {
        return Err(Error::CertificateFailed(format!("{:?}", report.failure)));
    }
    Ok(report.refined_scale)
}

/// Derive a self-tiling of `p` from a certificate that `p` tiles a cube:
/// carrying the cube onto each atomic cell of `p` carries the whole tiling
/// onto a tiling of that cell by contracted copies of `p`.
pub fn rep_decompose(p: &Polycube, cert: &TilingCertificate) -> Result<RepDecomposition> {
    require_verified(cert)?;
    if cert.tile != *p {
        return Err(Error::ContractViolated(
            "certificate tile differs from the polycube being decomposed".into(),
        ));
    }
    if !cert.placements.iter().all(Placement::is_isometric) {
        return Err(Error::ScaledPlacement);
    }
    let bb = cert.target.bounding_box()?;
    if !bb.is_cube() || cert.target.len() as u128 != bb.cell_count() {
        return Err(Error::TargetNotCube);
    }
    let s = bb.side(0) as u64;
    let lo = bb.lo().to_vec();
    let mt = p.scale_den();
    let mg = cert.target.scale_den();

    // contraction ratio mg / (s * mt), reduced
    let den_raw = s.checked_mul(mt).ok_or(Error::Overflow)?;
    let g = mg.gcd(&den_raw);
    let (num, den) = (mg / g, den_raw / g);
    if num != 1 {
        return Err(Error::TargetNotCube);
    }

    let mut placements = Vec::with_capacity(p.len() * cert.placements.len());
    for q in p.cells() {
        for pl in &cert.placements {
            // composed translation: ((t - lo) * den / s + q * den) in units
            // of 1/(mt * den)
            let trans: Vec<i64> = (0..p.dim())
                .map(|i| {
                    let shifted = (pl.iso.trans()[i] as i128 - lo[i] as i128) * den as i128;
                    if shifted % s as i128 != 0 {
                        return Err(Error::NonIntegralTranslation);
                    }
                    let first = shifted / s as i128;
                    let second = q[i] as i128 * den as i128;
                    i64::try_from(first + second).map_err(|_| Error::Overflow)
                })
                .collect::<Result<Vec<_>>>()?;
            let iso =
                LatticeIsometry::new(pl.iso.perm().to_vec(), pl.iso.signs().to_vec(), trans)?;
            placements.push(Placement::new(iso, 1, den)?);
        }
    }
    let dec = RepDecomposition {
        base: p.clone(),
        scale_den: den,
        placements,
    };
    require_verified(&dec.as_certificate())?;
    Ok(dec)
}

/// Derive a self-tiling directly from a certificate whose target is an
/// integer dilation of its tile (the tile tiles an enlarged copy of itself).
pub fn self_similar_decomposition(cert: &TilingCertificate) -> Result<RepDecomposition> {
    require_verified(cert)?;
    if !cert.placements.iter().all(Placement::is_isometric) {
        return Err(Error::ScaledPlacement);
    }
    if cert.target.scale_den() != cert.tile.scale_den() {
        return Err(Error::ScaleMismatch(
            cert.tile.scale_den(),
            cert.target.scale_den(),
        ));
    }
    let tile_bb = cert.tile.bounding_box()?;
    let target_bb = cert.target.bounding_box()?;
    let s_i64 = target_bb.side(0) / tile_bb.side(0);
    if s_i64 <= 0 {
        return Err(Error::TargetNotDilation);
    }
    let s = s_i64 as u64;
    if cert.tile.dilated(s)? != cert.target {
        return Err(Error::TargetNotDilation);
    }
    // shrinking the whole configuration by s keeps translations integral in
    // units of 1/(scale_den * s)
    let placements = cert
        .placements
        .iter()
        .map(|pl| Placement::new(pl.iso.clone(), 1, s))
        .collect::<Result<Vec<_>>>()?;
    let dec = RepDecomposition {
        base: cert.tile.clone(),
        scale_den: s,
        placements,
    };
    require_verified(&dec.as_certificate())?;
    Ok(dec)
}

/// Compose two placements of the same base: `outer` applied after `inner`.
fn compose_placements(outer: &Placement, inner: &Placement) -> Result<Placement> {
    let num = outer
        .scale_num
        .checked_mul(inner.scale_num)
        .ok_or(Error::Overflow)?;
    let den = outer
        .scale_den
        .checked_mul(inner.scale_den)
        .ok_or(Error::Overflow)?;
    let g = num.gcd(&den);
    let (rnum, rden) = (num / g, den / g);

    let lin_outer = LatticeIsometry::new(
        outer.iso.perm().to_vec(),
        outer.iso.signs().to_vec(),
        vec![0; outer.iso.dim()],
    )?;
    let lin_inner = LatticeIsometry::new(
        inner.iso.perm().to_vec(),
        inner.iso.signs().to_vec(),
        vec![0; inner.iso.dim()],
    )?;
    // t = R_outer(t_inner) * num_outer * rden / (den_outer * den_inner)
    //   + t_outer * rden / den_outer, in units of 1/(base_scale * rden)
    let rotated = lin_outer.apply_point(inner.iso.trans())?;
    let trans: Vec<i64> = (0..outer.iso.dim())
        .map(|i| {
            let a = rotated[i] as i128 * outer.scale_num as i128 * rden as i128;
            let b = outer.iso.trans()[i] as i128 * rden as i128;
            let d1 = outer.scale_den as i128 * inner.scale_den as i128;
            if a % d1 != 0 || b % outer.scale_den as i128 != 0 {
                return Err(Error::NonIntegralTranslation);
            }
            i64::try_from(a / d1 + b / outer.scale_den as i128).map_err(|_| Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    let lin = lin_outer.compose(&lin_inner)?;
    let iso = LatticeIsometry::new(lin.perm().to_vec(), lin.signs().to_vec(), trans)?;
    Placement::new(iso, rnum, rden)
}

/// Iterate a verified self-tiling `depth` times. Returns the
/// `placements^depth` composed placements, whose copies partition the base;
/// the final family is re-verified exactly before being returned.
pub fn expand_self_similar(dec: &RepDecomposition, depth: u32) -> Result<Vec<Placement>> {
    let dim = dec.base.dim();
    let mut current = vec![Placement::isometric(LatticeIsometry::identity(dim))];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(current.len() * dec.placements.len());
        for outer in &current {
            for inner in &dec.placements {
                next.push(compose_placements(outer, inner)?);
            }
        }
        current = next;
    }
    let cert = TilingCertificate {
        tile: dec.base.clone(),
        target: dec.base.clone(),
        placements: current.clone(),
    };
    require_verified(&cert)?;
    Ok(current)
}

const SEARCH_MAX_DIM: usize = 3;
const SEARCH_MAX_CELLS: usize = 64;

/// Exhaustive search for an isometric tiling of `target` by `tile`:
/// enumerates all signed permutations and translations, backtracking on the
/// first uncovered cell. Exponential; gated to dimension <= 3 and targets of
/// at most 64 cells. Returns `None` when no tiling exists.
pub fn search_tiling(tile: &Polycube, target: &Polycube) -> Result<Option<Vec<Placement>>> {
    let dim = tile.dim();
    if target.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: target.dim(),
        });
    }
    if tile.scale_den() != target.scale_den() {
        return Err(Error::ScaleMismatch(tile.scale_den(), target.scale_den()));
    }
    if dim > SEARCH_MAX_DIM || target.len() > SEARCH_MAX_CELLS {
        return Err(Error::SearchTooLarge {
            max_dim: SEARCH_MAX_DIM,
            max_cells: SEARCH_MAX_CELLS,
        });
    }
    if tile.is_empty() || target.len() % tile.len() != 0 {
        return Ok(None);
    }

    // enumerate signed permutations, deduplicating orientations that give
    // the same cell set
    let mut variants: Vec<(LatticeIsometry, Vec<Cell>)> = Vec::new();
    let mut seen: BTreeSet<Vec<Cell>> = BTreeSet::new();
    let mut perm: Vec<usize> = (0..dim).collect();
    let mut perms = Vec::new();
    heap_permutations(&mut perm, dim, &mut perms);
    for perm in &perms {
        for sign_mask in 0u32..(1 << dim) {
            let signs: Vec<i8> = (0..dim)
                .map(|a| if sign_mask & (1 << a) != 0 { -1 } else { 1 })
                .collect();
            let lin = LatticeIsometry::new(perm.clone(), signs, vec![0; dim])?;
            let mut cells: Vec<Cell> = tile
                .cells()
                .map(|c| lin.apply_cell(c))
                .collect::<Result<_>>()?;
            cells.sort();
            if seen.insert(cells.clone()) {
                variants.push((lin, cells));
            }
        }
    }

    let mut remaining: BTreeSet<Cell> = target.cells().cloned().collect();
    let mut used: Vec<Placement> = Vec::new();
    if cover(&variants, &mut remaining, &mut used)? {
        Ok(Some(used))
    } else {
        Ok(None)
    }
}

fn heap_permutations(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(arr, k - 1, out);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

fn cover(
    variants: &[(LatticeIsometry, Vec<Cell>)],
    remaining: &mut BTreeSet<Cell>,
    used: &mut Vec<Placement>,
) -> Result<bool> {
    let Some(pivot) = remaining.iter().next().cloned() else {
        return Ok(true);
    };
    for (lin, cells) in variants {
        for anchor in cells {
            let offset: Vec<i64> = pivot
                .coords()
                .iter()
                .zip(anchor.coords())
                .map(|(&p, &a)| p - a)
                .collect();
            let placed: Vec<Cell> = cells
                .iter()
                .map(|c| c.translated(&offset))
                .collect::<Result<_>>()?;
            if !placed.iter().all(|c| remaining.contains(c)) {
                continue;
            }
            for c in &placed {
                remaining.remove(c);
            }
            let iso = LatticeIsometry::translation(offset).compose(lin)?;
            used.push(Placement::isometric(iso));
            if cover(variants, remaining, used)? {
                return Ok(true);
            }
            used.pop();
            for c in placed {
                remaining.insert(c);
            }
        }
    }
    Ok(false)
}
