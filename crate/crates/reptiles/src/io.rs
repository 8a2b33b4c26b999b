//! Wire formats: JSON schemas for polycubes, footprints, certificates,
//! reports, and homology profiles, plus boundary-mesh export for visual
//! inspection of 3-dimensional tiles.
//!
//! Serialization is byte-stable: cells are emitted in lexicographic order.

use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::footprint::LabeledFootprint;
use crate::homology::HomologyProfile;
use crate::isometry::LatticeIsometry;
use crate::polycube::Polycube;
use crate::verify::{
    PatternReport, Placement, RepDecomposition, TilingCertificate, TilingFailure, TilingReport,
};

#[derive(Serialize, Deserialize)]
pub struct PolycubeJson {
    pub dim: usize,
    pub scale_den: u64,
    pub cells: Vec<Vec<i64>>,
}

impl From<&Polycube> for PolycubeJson {
    fn from(p: &Polycube) -> Self {
        PolycubeJson {
            dim: p.dim(),
            scale_den: p.scale_den(),
            cells: p.cells().map(|c| c.coords().to_vec()).collect(),
        }
    }
}

impl PolycubeJson {
    pub fn into_polycube(self) -> Result<Polycube> {
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.len() != self.dim {
                return Err(Error::Parse(format!(
                    "cell {:?} at index {i} has {} coordinates, expected {}",
                    cell,
                    cell.len(),
                    self.dim
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, cell) in self.cells.iter().enumerate() {
            if !seen.insert(cell.clone()) {
                return Err(Error::Parse(format!(
                    "duplicate cell {cell:?} at index {i}"
                )));
            }
        }
        Polycube::new(
            self.dim,
            self.scale_den,
            self.cells.into_iter().map(Cell::new),
        )
    }
}

pub fn polycube_to_json(p: &Polycube) -> String {
    serde_json::to_string_pretty(&PolycubeJson::from(p)).expect("serialization is infallible")
}

pub fn polycube_from_json(text: &str) -> Result<Polycube> {
    let raw: PolycubeJson = serde_json::from_str(text)?;
    raw.into_polycube()
}

#[derive(Serialize, Deserialize)]
pub struct HeightEntryJson {
    pub cell: Vec<i64>,
    pub h: u64,
}

#[derive(Serialize, Deserialize)]
pub struct FootprintJson {
    pub dim: usize,
    pub scale_den: u64,
    pub max_height: u64,
    pub heights: Vec<HeightEntryJson>,
}

impl From<&LabeledFootprint> for FootprintJson {
    fn from(f: &LabeledFootprint) -> Self {
        FootprintJson {
            dim: f.dim(),
            scale_den: f.scale_den(),
            max_height: f.max_height(),
            heights: f
                .heights()
                .map(|(c, h)| HeightEntryJson {
                    cell: c.coords().to_vec(),
                    h,
                })
                .collect(),
        }
    }
}

impl FootprintJson {
    pub fn into_footprint(self) -> Result<LabeledFootprint> {
        LabeledFootprint::new(
            self.dim,
            self.scale_den,
            self.max_height,
            self.heights
                .into_iter()
                .map(|e| (Cell::new(e.cell), e.h)),
        )
    }
}

pub fn footprint_to_json(f: &LabeledFootprint) -> String {
    serde_json::to_string_pretty(&FootprintJson::from(f)).expect("serialization is infallible")
}

pub fn footprint_from_json(text: &str) -> Result<LabeledFootprint> {
    let raw: FootprintJson = serde_json::from_str(text)?;
    raw.into_footprint()
}

#[derive(Serialize, Deserialize)]
pub struct PlacementJson {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    pub trans: Vec<i64>,
    pub scale: [u64; 2],
}

impl From<&Placement> for PlacementJson {
    fn from(p: &Placement) -> Self {
        PlacementJson {
            perm: p.iso.perm().to_vec(),
            signs: p.iso.signs().to_vec(),
            trans: p.iso.trans().to_vec(),
            scale: [p.scale_num(), p.scale_den()],
        }
    }
}

impl PlacementJson {
    pub fn into_placement(self) -> Result<Placement> {
        let iso = LatticeIsometry::new(self.perm, self.signs, self.trans)?;
        Placement::new(iso, self.scale[0], self.scale[1])
    }
}

#[derive(Serialize, Deserialize)]
pub struct CertificateJson {
    pub tile: PolycubeJson,
    pub target: PolycubeJson,
    pub placements: Vec<PlacementJson>,
}

impl From<&TilingCertificate> for CertificateJson {
    fn from(c: &TilingCertificate) -> Self {
        CertificateJson {
            tile: PolycubeJson::from(&c.tile),
            target: PolycubeJson::from(&c.target),
            placements: c.placements.iter().map(PlacementJson::from).collect(),
        }
    }
}

impl CertificateJson {
    pub fn into_certificate(self) -> Result<TilingCertificate> {
        Ok(TilingCertificate {
            tile: self.tile.into_polycube()?,
            target: self.target.into_polycube()?,
            placements: self
                .placements
                .into_iter()
                .map(PlacementJson::into_placement)
                .collect::<Result<_>>()?,
        })
    }
}

pub fn certificate_to_json(c: &TilingCertificate) -> String {
    serde_json::to_string_pretty(&CertificateJson::from(c)).expect("serialization is infallible")
}

pub fn certificate_from_json(text: &str) -> Result<TilingCertificate> {
    let raw: CertificateJson = serde_json::from_str(text)?;
    raw.into_certificate()
}

/// A decomposition travels as the certificate of the base by itself.
pub fn decomposition_to_json(d: &RepDecomposition) -> String {
    certificate_to_json(&d.as_certificate())
}

#[derive(Serialize)]
struct TilingFailureJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cell: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct TilingReportJson {
    pass: bool,
    refined_scale: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<TilingFailureJson>,
}

pub fn tiling_report_to_json(r: &TilingReport) -> String {
    let failure = r.failure.as_ref().map(|f| match f {
        TilingFailure::VolumeMismatch => TilingFailureJson {
            kind: "volume_mismatch",
            cell: None,
        },
        TilingFailure::DoublyCovered(c) => TilingFailureJson {
            kind: "doubly_covered",
            cell: Some(c.coords().to_vec()),
        },
        TilingFailure::Uncovered(c) => TilingFailureJson {
            kind: "uncovered",
            cell: Some(c.coords().to_vec()),
        },
    });
    serde_json::to_string_pretty(&TilingReportJson {
        pass: r.pass,
        refined_scale: r.refined_scale,
        failure,
    })
    .expect("serialization is infallible")
}

#[derive(Serialize)]
struct PatternViolationJson {
    property: u8,
    face_axis: usize,
}

#[derive(Serialize)]
struct PatternReportJson {
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<PatternViolationJson>,
}

pub fn pattern_report_to_json(r: &PatternReport) -> String {
    serde_json::to_string_pretty(&PatternReportJson {
        pass: r.pass,
        violation: r.violation.as_ref().map(|v| PatternViolationJson {
            property: v.property,
            face_axis: v.face_axis,
        }),
    })
    .expect("serialization is infallible")
}

pub fn profile_to_json(h: &HomologyProfile) -> String {
    serde_json::to_string_pretty(h).expect("serialization is infallible")
}

pub fn profile_from_json(text: &str) -> Result<HomologyProfile> {
    Ok(serde_json::from_str(text)?)
}

/// Closed oriented quad mesh of a 3-dimensional polycube's boundary.
/// Vertices are lattice points; every face is a boundary facet, wound so its
/// normal points out of the polycube.
#[derive(Clone, Debug)]
pub struct MeshSurface {
    pub vertices: Vec<[i64; 3]>,
    pub faces: Vec<[usize; 4]>,
}

impl MeshSurface {
    pub fn edge_count(&self) -> usize {
        let mut edges = std::collections::BTreeSet::new();
        for f in &self.faces {
            for i in 0..4 {
                let (a, b) = (f[i], f[(i + 1) % 4]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// Every edge of a closed oriented surface is traversed exactly once in
    /// each direction.
    pub fn is_closed_and_consistently_oriented(&self) -> bool {
        let mut directed = std::collections::BTreeSet::new();
        for f in &self.faces {
            for i in 0..4 {
                if !directed.insert((f[i], f[(i + 1) % 4])) {
                    return false;
                }
            }
        }
        directed
            .iter()
            .all(|&(a, b)| directed.contains(&(b, a)))
    }

    pub fn to_off_string(&self) -> String {
        let mut out = String::new();
        out.push_str("OFF\n");
        out.push_str(&format!(
            "{} {} {}\n",
            self.vertices.len(),
            self.faces.len(),
            self.edge_count()
        ));
        for v in &self.vertices {
            out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            out.push_str(&format!("4 {} {} {} {}\n", f[0], f[1], f[2], f[3]));
        }
        out
    }

    pub fn to_obj_string(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            out.push_str(&format!(
                "f {} {} {} {}\n",
                f[0] + 1,
                f[1] + 1,
                f[2] + 1,
                f[3] + 1
            ));
        }
        out
    }
}

/// Extract the boundary quad mesh of a 3-dimensional polycube. The boundary
/// must pass the pseudomanifold precheck.
pub fn export_mesh(p: &Polycube) -> Result<MeshSurface> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    p.boundary_component_count()?;

    let mut vertex_index = std::collections::BTreeMap::new();
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for facet in p.boundary_facets()? {
        let a = facet.axis;
        let (b, c) = match a {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        // outward normal: +e_a when the polycube cell lies below the plane
        let cell_above = facet.corner.clone();
        let outward_positive = !p.contains(&cell_above);
        // the base winding (corner, +e_b, +e_b+e_c, +e_c) has normal
        // e_b x e_c = sigma(a) * e_a
        let sigma_positive = a != 1;
        let keep_order = outward_positive == sigma_positive;

        let mut quad = [[0i64; 3]; 4];
        let base: [i64; 3] = [facet.corner[0], facet.corner[1], facet.corner[2]];
        let offsets = [[0, 0], [1, 0], [1, 1], [0, 1]];
        for (slot, off) in offsets.iter().enumerate() {
            let mut v = base;
            v[b] += off[0];
            v[c] += off[1];
            quad[slot] = v;
        }
        if !keep_order {
            quad.swap(1, 3);
        }
        let mut face = [0usize; 4];
        for (slot, v) in quad.iter().enumerate() {
            let next = vertices.len();
            let idx = *vertex_index.entry(*v).or_insert(next);
            if idx == vertices.len() {
                vertices.push(*v);
            }
            face[slot] = idx;
        }
        faces.push(face);
    }
    Ok(MeshSurface { vertices, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{sphere_certificate, sphere_reptile};

    #[test]
    fn polycube_round_trip_is_identity() {
        let p = sphere_reptile(0).unwrap();
        let text = polycube_to_json(&p);
        let back = polycube_from_json(&text).unwrap();
        assert_eq!(back, p);
        // byte stability
        assert_eq!(polycube_to_json(&back), text);
    }

    #[test]
    fn sphere_serialization_lists_cells_lexicographically() {
        let text = polycube_to_json(&sphere_reptile(0).unwrap());
        let raw: PolycubeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(raw.cells.len(), 8);
        let mut sorted = raw.cells.clone();
        sorted.sort();
        assert_eq!(raw.cells, sorted);
    }

    #[test]
    fn duplicate_cell_is_named_in_the_error() {
        let text = r#"{"dim":2,"scale_den":1,"cells":[[0,0],[1,3],[0,0]]}"#;
        let err = polycube_from_json(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[0, 0]"), "{msg}");
        assert!(msg.contains("index 2"), "{msg}");
    }

    #[test]
    fn wrong_arity_cell_is_named() {
        let text = r#"{"dim":2,"scale_den":1,"cells":[[0,0,0]]}"#;
        let err = polycube_from_json(text).unwrap_err();
        assert!(err.to_string().contains("expected 2"));
    }

    #[test]
    fn certificate_round_trip() {
        let cert = sphere_certificate(0).unwrap();
        let text = certificate_to_json(&cert);
        let back = certificate_from_json(&text).unwrap();
        assert_eq!(back.tile, cert.tile);
        assert_eq!(back.target, cert.target);
        assert_eq!(back.placements, cert.placements);
    }

    #[test]
    fn single_cell_mesh() {
        let p = Polycube::single_cell(Cell::from([0, 0, 0]), 1).unwrap();
        let mesh = export_mesh(&p).unwrap();
        assert_eq!(mesh.vertices.len(), 8);
        assert_eq!(mesh.faces.len(), 6);
        assert_eq!(mesh.edge_count(), 12);
        assert!(mesh.is_closed_and_consistently_oriented());
        let off = mesh.to_off_string();
        assert!(off.starts_with("OFF\n8 6 12\n"));
    }

    #[test]
    fn solid_torus_mesh_has_zero_euler_characteristic() {
        let p = sphere_reptile(1).unwrap();
        let mesh = export_mesh(&p).unwrap();
        assert!(mesh.is_closed_and_consistently_oriented());
        let chi =
            mesh.vertices.len() as i64 - mesh.edge_count() as i64 + mesh.faces.len() as i64;
        assert_eq!(chi, 0);
    }

    #[test]
    fn mesh_export_rejects_other_dimensions() {
        let p = Polycube::single_cell(Cell::from([0, 0]), 1).unwrap();
        assert!(matches!(
            export_mesh(&p),
            Err(Error::NotThreeDimensional(2))
        ));
    }
}
