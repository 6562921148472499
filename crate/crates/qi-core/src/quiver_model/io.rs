//! JSON wire formats for settings and representations.
//!
//! Setting file:
//! `{"vertices":[{"id":1,"dim":2,"group":"GL"},...],
//!   "arrows":[{"id":"alpha","head":1,"tail":2,"form":"M"},...],
//!   "involution":[[1,2],[3,3]]}`
//!
//! Representation file: `{"alpha": [["1","2"],["3","4"]], ...}` with one
//! entry grid per arrow id ("num/den" rationals, or decimal residues mod p).

use super::{Arrow, FormLabel, GroupLabel, MixedQuiverSetting, Quiver, Representation};
use crate::exact_linalg::{Field, Matrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: usize,
    pub dim: usize,
    pub group: GroupLabel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub head: usize,
    pub tail: usize,
    pub form: FormLabel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SettingFile {
    pub vertices: Vec<VertexSpec>,
    pub arrows: Vec<ArrowSpec>,
    pub involution: Vec<[usize; 2]>,
}

impl SettingFile {
    pub fn to_setting(&self) -> Result<MixedQuiverSetting> {
        let l = self.vertices.len();
        for (k, v) in self.vertices.iter().enumerate() {
            if v.id != k + 1 {
                return Err(Error::Schema(format!(
                    "vertex ids must be 1..={l} in order; found {} at position {}",
                    v.id,
                    k + 1
                )));
            }
        }
        let dims = self.vertices.iter().map(|v| v.dim).collect();
        let groups = self.vertices.iter().map(|v| v.group).collect();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                head: a.head,
                tail: a.tail,
            })
            .collect();
        let forms = self.arrows.iter().map(|a| a.form).collect();
        let mut involution = vec![0usize; l];
        for &[a, b] in &self.involution {
            if a == 0 || a > l || b == 0 || b > l {
                return Err(Error::Schema(format!("involution pair [{a},{b}] out of range")));
            }
            for (x, y) in [(a, b), (b, a)] {
                if involution[x - 1] != 0 && involution[x - 1] != y {
                    return Err(Error::Schema(format!(
                        "vertex {x} listed twice in the involution with different partners"
                    )));
                }
                involution[x - 1] = y;
            }
        }
        if let Some(v) = involution.iter().position(|&w| w == 0) {
            return Err(Error::Schema(format!(
                "vertex {} missing from the involution",
                v + 1
            )));
        }
        MixedQuiverSetting::new(Quiver::new(l, arrows)?, dims, groups, forms, involution)
    }

    pub fn from_setting(s: &MixedQuiverSetting) -> SettingFile {
        let vertices = (1..=s.vertex_count())
            .map(|v| VertexSpec {
                id: v,
                dim: s.dim(v),
                group: s.group(v),
            })
            .collect();
        let arrows = s
            .quiver
            .arrows
            .iter()
            .zip(&s.forms)
            .map(|(a, form)| ArrowSpec {
                id: a.id.clone(),
                head: a.head,
                tail: a.tail,
                form: *form,
            })
            .collect();
        let involution = (1..=s.vertex_count())
            .filter(|&v| v <= s.partner(v))
            .map(|v| [v, s.partner(v)])
            .collect();
        SettingFile {
            vertices,
            arrows,
            involution,
        }
    }
}

pub fn setting_from_json(json: &str) -> Result<MixedQuiverSetting> {
    let file: SettingFile =
        serde_json::from_str(json).map_err(|e| Error::Schema(format!("setting file: {e}")))?;
    file.to_setting()
}

pub fn setting_to_json(s: &MixedQuiverSetting) -> String {
    serde_json::to_string_pretty(&SettingFile::from_setting(s)).expect("serializable")
}

/// Reads `{"arrow-id": [[entries]], ...}`; every arrow must be present.
pub fn representation_from_json(
    s: &MixedQuiverSetting,
    field: Field,
    json: &str,
) -> Result<Representation> {
    let grids: BTreeMap<String, Vec<Vec<String>>> = serde_json::from_str(json)
        .map_err(|e| Error::Schema(format!("representation file: {e}")))?;
    for key in grids.keys() {
        if s.quiver.arrow_index(key).is_none() {
            return Err(Error::Schema(format!("unknown arrow `{key}`")));
        }
    }
    let mut matrices = Vec::with_capacity(s.quiver.arrows.len());
    for a in &s.quiver.arrows {
        let grid = grids
            .get(&a.id)
            .ok_or_else(|| Error::Schema(format!("missing matrix for arrow `{}`", a.id)))?;
        matrices.push(Matrix::from_string_grid(field, grid)?);
    }
    Representation::new(s, matrices)
}

pub fn representation_to_json(s: &MixedQuiverSetting, rep: &Representation) -> String {
    let mut grids: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for (a, m) in s.quiver.arrows.iter().zip(rep.matrices()) {
        grids.insert(a.id.clone(), m.to_string_grid());
    }
    serde_json::to_string_pretty(&grids).expect("serializable")
}
