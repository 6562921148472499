//! Quivers, dimension vectors, mixed quiver settings with their validity
//! conditions, the double quiver, and the substitution that turns formal
//! transpose arrows into matrices.

mod representation;
mod sampling;
pub mod io;

pub use representation::{act, GroupElement, Representation};
pub use sampling::{sample_group_element, sample_representation};

use crate::exact_linalg::{Field, Matrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// An arrow of a quiver. `head` and `tail` are 1-based vertex indices; a
/// path `a b` composes like the matrix product `X_a X_b`, so it requires
/// `tail(a) = head(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub head: usize,
    pub tail: usize,
}

/// A finite oriented multigraph; loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        for a in &arrows {
            if a.head == 0 || a.head > vertex_count || a.tail == 0 || a.tail > vertex_count {
                return Err(Error::Schema(format!(
                    "arrow `{}` endpoints out of range 1..={vertex_count}",
                    a.id
                )));
            }
            if a.id.is_empty() || a.id.ends_with("^T") {
                return Err(Error::Schema(format!(
                    "arrow id `{}` is empty or uses the reserved `^T` suffix",
                    a.id
                )));
            }
        }
        let mut ids: Vec<&str> = arrows.iter().map(|a| a.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != arrows.len() {
            return Err(Error::Schema("duplicate arrow ids".into()));
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }
}

/// Classical group label attached to a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupLabel {
    GL,
    O,
    Sp,
    SL,
    SO,
}

/// Subspace label attached to an arrow: arbitrary matrices, symmetric,
/// skew-symmetric, or the two `J`-twisted spaces (`h J` symmetric / skew).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormLabel {
    M,
    #[serde(rename = "S+")]
    SPlus,
    #[serde(rename = "S-")]
    SMinus,
    #[serde(rename = "L+")]
    LPlus,
    #[serde(rename = "L-")]
    LMinus,
}

/// The quintuple (quiver, dimensions, groups, forms, involution). The
/// constructor enforces structural coherence; [`validate_setting`] checks
/// the mathematical compatibility conditions a)-i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedQuiverSetting {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub groups: Vec<GroupLabel>,
    /// Per arrow, parallel to `quiver.arrows`.
    pub forms: Vec<FormLabel>,
    /// 1-based: `involution[v-1]` is the partner of vertex `v`.
    pub involution: Vec<usize>,
}

impl MixedQuiverSetting {
    pub fn new(
        quiver: Quiver,
        dims: Vec<usize>,
        groups: Vec<GroupLabel>,
        forms: Vec<FormLabel>,
        involution: Vec<usize>,
    ) -> Result<MixedQuiverSetting> {
        let l = quiver.vertex_count;
        if dims.len() != l || groups.len() != l || involution.len() != l {
            return Err(Error::Schema(format!(
                "per-vertex data lengths must equal vertex count {l}"
            )));
        }
        if forms.len() != quiver.arrows.len() {
            return Err(Error::Schema(
                "per-arrow form labels must match arrow count".into(),
            ));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::Schema("dimensions must be positive".into()));
        }
        if involution.iter().any(|&w| w == 0 || w > l) {
            return Err(Error::Schema("involution image out of range".into()));
        }
        Ok(MixedQuiverSetting {
            quiver,
            dims,
            groups,
            forms,
            involution,
        })
    }

    /// A plain quiver setting: all vertices GL with identity involution and
    /// all arrows unconstrained.
    pub fn plain(quiver: Quiver, dims: Vec<usize>) -> Result<MixedQuiverSetting> {
        let l = quiver.vertex_count;
        let m = quiver.arrows.len();
        MixedQuiverSetting::new(
            quiver,
            dims,
            vec![GroupLabel::GL; l],
            vec![FormLabel::M; m],
            (1..=l).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    /// 1-based involution partner.
    pub fn partner(&self, v: usize) -> usize {
        self.involution[v - 1]
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn group(&self, v: usize) -> GroupLabel {
        self.groups[v - 1]
    }

    /// Satisfies the condition that GL/SL vertices are never self-dual.
    pub fn is_normalized(&self) -> bool {
        (1..=self.vertex_count()).all(|v| {
            !matches!(self.group(v), GroupLabel::GL | GroupLabel::SL) || self.partner(v) != v
        })
    }
}

/// Outcome of checking the compatibility conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValidationOutcome {
    Ok,
    Violation { condition: String, detail: String },
}

impl ValidationOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationOutcome::Ok)
    }
}

/// Checks conditions a)-i) in order and reports the first violation:
///
/// * a) symplectic vertices have even dimension,
/// * b) orthogonal vertices require characteristic != 2,
/// * c) the involution squares to the identity,
/// * d) dual vertices share one dimension,
/// * e) O/Sp/SO vertices are self-dual,
/// * f) constrained arrows join vertices of equal dimension,
/// * g) symmetric/skew loops sit at O/SO vertices,
/// * h) J-twisted loops sit at Sp vertices,
/// * i) constrained non-loops join dual vertices and are S+/S-.
pub fn validate_setting(s: &MixedQuiverSetting, field: Field) -> ValidationOutcome {
    let violation = |c: &str, d: String| ValidationOutcome::Violation {
        condition: c.into(),
        detail: d,
    };
    for v in 1..=s.vertex_count() {
        if s.group(v) == GroupLabel::Sp && s.dim(v) % 2 != 0 {
            return violation(
                "a",
                format!("vertex {v} is Sp but has odd dimension {}", s.dim(v)),
            );
        }
    }
    for v in 1..=s.vertex_count() {
        if matches!(s.group(v), GroupLabel::O | GroupLabel::SO) && field.characteristic() == 2 {
            return violation("b", format!("vertex {v} is orthogonal over characteristic 2"));
        }
    }
    for v in 1..=s.vertex_count() {
        if s.partner(s.partner(v)) != v {
            return violation("c", format!("involution is not an involution at vertex {v}"));
        }
    }
    for v in 1..=s.vertex_count() {
        if s.dim(s.partner(v)) != s.dim(v) {
            return violation(
                "d",
                format!("dual vertices {v} and {} differ in dimension", s.partner(v)),
            );
        }
    }
    for v in 1..=s.vertex_count() {
        if matches!(s.group(v), GroupLabel::O | GroupLabel::Sp | GroupLabel::SO)
            && s.partner(v) != v
        {
            return violation("e", format!("vertex {v} is O/Sp/SO but not self-dual"));
        }
    }
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        if *form != FormLabel::M && s.dim(a.head) != s.dim(a.tail) {
            return violation(
                "f",
                format!(
                    "constrained arrow `{}` joins vertices of different dimension",
                    a.id
                ),
            );
        }
    }
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        if a.head == a.tail
            && matches!(form, FormLabel::SPlus | FormLabel::SMinus)
            && !matches!(s.group(a.head), GroupLabel::O | GroupLabel::SO)
        {
            return violation(
                "g",
                format!("symmetric/skew loop `{}` is not at an O/SO vertex", a.id),
            );
        }
    }
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        if a.head == a.tail
            && matches!(form, FormLabel::LPlus | FormLabel::LMinus)
            && s.group(a.head) != GroupLabel::Sp
        {
            return violation(
                "h",
                format!("J-twisted loop `{}` is not at an Sp vertex", a.id),
            );
        }
    }
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        if a.head != a.tail && *form != FormLabel::M {
            if s.partner(a.head) != a.tail {
                return violation(
                    "i",
                    format!("constrained non-loop `{}` does not join dual vertices", a.id),
                );
            }
            if !matches!(form, FormLabel::SPlus | FormLabel::SMinus) {
                return violation(
                    "i",
                    format!("constrained non-loop `{}` must be S+ or S-", a.id),
                );
            }
        }
    }
    ValidationOutcome::Ok
}

/// Adds a mirror vertex for every self-dual GL/SL vertex so that GL/SL
/// vertices are never fixed by the involution. Mirror vertices carry no
/// arrows, so neither the representation space nor the invariants change.
/// Idempotent.
pub fn normalize_setting(s: &MixedQuiverSetting) -> MixedQuiverSetting {
    let mut out = s.clone();
    for v in 1..=s.vertex_count() {
        if matches!(s.group(v), GroupLabel::GL | GroupLabel::SL) && s.partner(v) == v {
            out.quiver.vertex_count += 1;
            let mirror = out.quiver.vertex_count;
            out.dims.push(s.dim(v));
            out.groups.push(s.group(v));
            out.involution[v - 1] = mirror;
            out.involution.push(v);
        }
    }
    out
}

/// One letter of the double quiver: a base arrow, possibly formally
/// transposed. Ordering: file order of arrows, untransposed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub transposed: bool,
}

impl Letter {
    pub fn plain(arrow: usize) -> Letter {
        Letter {
            arrow,
            transposed: false,
        }
    }

    pub fn transposed(arrow: usize) -> Letter {
        Letter {
            arrow,
            transposed: true,
        }
    }
}

/// Head and tail of a letter in the double quiver: a transpose letter for
/// arrow `a` has head `i(tail(a))` and tail `i(head(a))`.
pub fn letter_endpoints(s: &MixedQuiverSetting, l: Letter) -> Result<(usize, usize)> {
    let a = s
        .quiver
        .arrows
        .get(l.arrow)
        .ok_or_else(|| Error::IndexOutOfRange(format!("arrow index {}", l.arrow)))?;
    if !l.transposed {
        return Ok((a.head, a.tail));
    }
    if s.forms[l.arrow] != FormLabel::M {
        return Err(Error::NoTranspose(a.id.clone()));
    }
    Ok((s.partner(a.tail), s.partner(a.head)))
}

/// All letters of the double quiver in canonical order: for each arrow its
/// plain letter, and a transpose letter when the form label is M.
pub fn double_letters(s: &MixedQuiverSetting) -> Vec<Letter> {
    let mut out = Vec::new();
    for (idx, form) in s.forms.iter().enumerate() {
        out.push(Letter::plain(idx));
        if *form == FormLabel::M {
            out.push(Letter::transposed(idx));
        }
    }
    out.sort();
    out
}

/// The letters of the base quiver only (no transposes).
pub fn base_letters(s: &MixedQuiverSetting) -> Vec<Letter> {
    (0..s.quiver.arrows.len()).map(Letter::plain).collect()
}

/// Materializes the double quiver setting: for every arrow with form M a
/// formal transpose arrow `id^T` from `i(head)` to `i(tail)` is appended,
/// itself of form M. Applying the construction to an already doubled
/// setting is rejected.
pub fn double_quiver(s: &MixedQuiverSetting) -> Result<MixedQuiverSetting> {
    if s.quiver.arrows.iter().any(|a| a.id.ends_with("^T")) {
        return Err(Error::Precondition(
            "setting already contains transpose arrows".into(),
        ));
    }
    let mut arrows = s.quiver.arrows.clone();
    let mut forms = s.forms.clone();
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        if *form == FormLabel::M {
            arrows.push(Arrow {
                id: format!("{}^T", a.id),
                head: s.partner(a.tail),
                tail: s.partner(a.head),
            });
            forms.push(FormLabel::M);
        }
    }
    // bypass Quiver::new, which rejects the reserved suffix
    let quiver = Quiver {
        vertex_count: s.quiver.vertex_count,
        arrows,
    };
    Ok(MixedQuiverSetting {
        quiver,
        dims: s.dims.clone(),
        groups: s.groups.clone(),
        forms,
        involution: s.involution.clone(),
    })
}

/// The matrix of a letter on a concrete representation. Plain letters give
/// the arrow matrix itself; a transpose letter gives the transposed matrix,
/// twisted by `J` on each side whose vertex group is symplectic:
/// `X^T`, `X^T J(n_head)`, `J(n_tail) X^T`, or `J(n_tail) X^T J(n_head)`.
pub fn letter_matrix(s: &MixedQuiverSetting, rep: &Representation, l: Letter) -> Result<Matrix> {
    let a = s
        .quiver
        .arrows
        .get(l.arrow)
        .ok_or_else(|| Error::IndexOutOfRange(format!("arrow index {}", l.arrow)))?;
    let h = rep.matrix(l.arrow)?;
    if !l.transposed {
        return Ok(h.clone());
    }
    if s.forms[l.arrow] != FormLabel::M {
        return Err(Error::NoTranspose(a.id.clone()));
    }
    let field = h.field();
    let head_sp = s.group(a.head) == GroupLabel::Sp;
    let tail_sp = s.group(a.tail) == GroupLabel::Sp;
    let mut m = h.transpose();
    if head_sp {
        m = m.mul(&Matrix::j_form(s.dim(a.head), field)?)?;
    }
    if tail_sp {
        m = Matrix::j_form(s.dim(a.tail), field)?.mul(&m)?;
    }
    Ok(m)
}

#[cfg(test)]
pub(crate) mod test_fixtures {
    use super::*;

    /// Two dual GL vertices joined by two parallel symmetric-form arrows:
    /// the action is g.(A,B) = (g A g^T, g B g^T).
    pub fn two_symmetric_forms(n: usize) -> MixedQuiverSetting {
        let quiver = Quiver::new(
            2,
            vec![
                Arrow {
                    id: "alpha".into(),
                    head: 1,
                    tail: 2,
                },
                Arrow {
                    id: "beta".into(),
                    head: 1,
                    tail: 2,
                },
            ],
        )
        .unwrap();
        MixedQuiverSetting::new(
            quiver,
            vec![n, n],
            vec![GroupLabel::GL, GroupLabel::GL],
            vec![FormLabel::SPlus, FormLabel::SPlus],
            vec![2, 1],
        )
        .unwrap()
    }

    /// Five vertices (GL, GL, SL, SL, O) with arrows alpha: 1->2,
    /// beta: 2->1 (S+), gamma: 3->1, delta: 5->3.
    pub fn five_vertex_mixed() -> MixedQuiverSetting {
        let quiver = Quiver::new(
            5,
            vec![
                Arrow {
                    id: "alpha".into(),
                    head: 2,
                    tail: 1,
                },
                Arrow {
                    id: "beta".into(),
                    head: 1,
                    tail: 2,
                },
                Arrow {
                    id: "gamma".into(),
                    head: 1,
                    tail: 3,
                },
                Arrow {
                    id: "delta".into(),
                    head: 3,
                    tail: 5,
                },
            ],
        )
        .unwrap();
        MixedQuiverSetting::new(
            quiver,
            vec![2, 2, 2, 2, 2],
            vec![
                GroupLabel::GL,
                GroupLabel::GL,
                GroupLabel::SL,
                GroupLabel::SL,
                GroupLabel::O,
            ],
            vec![FormLabel::M, FormLabel::SPlus, FormLabel::M, FormLabel::M],
            vec![2, 1, 4, 3, 5],
        )
        .unwrap()
    }

    /// Triangle setting: GL(n) dual pair (1, 2) and a self-dual O(m) vertex
    /// 3, with alpha: 3->1 (M), beta: 1->2 (S+), gamma: 2->3 (M). The action
    /// is (A, B, C) -> (g1 A g3^T, (g1^{-1})^T B g1^{-1}, g3 C g1^T).
    pub fn triangle_gl_gl_o(n: usize, m: usize) -> MixedQuiverSetting {
        let quiver = Quiver::new(
            3,
            vec![
                Arrow {
                    id: "alpha".into(),
                    head: 1,
                    tail: 3,
                },
                Arrow {
                    id: "beta".into(),
                    head: 2,
                    tail: 1,
                },
                Arrow {
                    id: "gamma".into(),
                    head: 3,
                    tail: 2,
                },
            ],
        )
        .unwrap();
        MixedQuiverSetting::new(
            quiver,
            vec![n, n, m],
            vec![GroupLabel::GL, GroupLabel::GL, GroupLabel::O],
            vec![FormLabel::M, FormLabel::SPlus, FormLabel::M],
            vec![2, 1, 3],
        )
        .unwrap()
    }

    /// One vertex with `d` unconstrained loops.
    pub fn loops(group: GroupLabel, n: usize, d: usize) -> MixedQuiverSetting {
        let arrows = (0..d)
            .map(|k| Arrow {
                id: format!("x{}", k + 1),
                head: 1,
                tail: 1,
            })
            .collect();
        let quiver = Quiver::new(1, arrows).unwrap();
        MixedQuiverSetting::new(
            quiver,
            vec![n],
            vec![group],
            vec![FormLabel::M; d],
            vec![1],
        )
        .unwrap()
    }
}
