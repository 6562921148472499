//! Representations of mixed quiver settings and the base-change action of
//! the attached product of classical groups.

use super::{FormLabel, GroupLabel, MixedQuiverSetting};
use crate::exact_linalg::{char_poly_coeffs, Field, Matrix, Scalar};
use crate::{Error, Result};

/// One matrix per arrow, each lying in the subspace named by the arrow's
/// form label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(s: &MixedQuiverSetting, matrices: Vec<Matrix>) -> Result<Representation> {
        if matrices.len() != s.quiver.arrows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                s.quiver.arrows.len()
            )));
        }
        let field = matrices.first().map(Matrix::field);
        for ((a, form), m) in s.quiver.arrows.iter().zip(&s.forms).zip(&matrices) {
            if Some(m.field()) != field {
                return Err(Error::BackendMismatch);
            }
            if m.rows() != s.dim(a.head) || m.cols() != s.dim(a.tail) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` expects {}x{}, got {}x{}",
                    a.id,
                    s.dim(a.head),
                    s.dim(a.tail),
                    m.rows(),
                    m.cols()
                )));
            }
            if !form_holds(*form, m)? {
                return Err(Error::Precondition(format!(
                    "matrix of arrow `{}` violates its {:?} form constraint",
                    a.id, form
                )));
            }
        }
        Ok(Representation { matrices })
    }

    pub fn zero(s: &MixedQuiverSetting, field: Field) -> Representation {
        let matrices = s
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zero(s.dim(a.head), s.dim(a.tail), field))
            .collect();
        Representation { matrices }
    }

    pub fn matrix(&self, arrow: usize) -> Result<&Matrix> {
        self.matrices
            .get(arrow)
            .ok_or_else(|| Error::IndexOutOfRange(format!("arrow index {arrow}")))
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn field(&self) -> Option<Field> {
        self.matrices.first().map(Matrix::field)
    }
}

/// Does `m` lie in the subspace named by `form`?
pub fn form_holds(form: FormLabel, m: &Matrix) -> Result<bool> {
    Ok(match form {
        FormLabel::M => true,
        FormLabel::SPlus => m.is_symmetric(),
        FormLabel::SMinus => m.is_skew_symmetric(),
        FormLabel::LPlus => {
            let j = Matrix::j_form(m.rows(), m.field())?;
            m.mul(&j)?.is_symmetric()
        }
        FormLabel::LMinus => {
            let j = Matrix::j_form(m.rows(), m.field())?;
            m.mul(&j)?.is_skew_symmetric()
        }
    })
}

/// A group element stores one invertible matrix per involution orbit,
/// keyed by the representative `v <= i(v)`; the component at the partner
/// vertex is always `(g_v^{-1})^T`, derived on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    stored: Vec<Option<Matrix>>,
}

impl GroupElement {
    /// Builds from per-orbit components (1-based vertex -> matrix for each
    /// representative `v <= i(v)`), checking exact group membership of both
    /// the stored component and its derived partner.
    pub fn new(
        s: &MixedQuiverSetting,
        components: Vec<(usize, Matrix)>,
    ) -> Result<GroupElement> {
        let l = s.vertex_count();
        let mut stored: Vec<Option<Matrix>> = vec![None; l];
        for (v, m) in components {
            if v == 0 || v > l {
                return Err(Error::IndexOutOfRange(format!("vertex {v}")));
            }
            if v > s.partner(v) {
                return Err(Error::Precondition(format!(
                    "component for vertex {v} must be stored at its orbit representative {}",
                    s.partner(v)
                )));
            }
            if m.rows() != s.dim(v) || m.cols() != s.dim(v) {
                return Err(Error::DimensionMismatch(format!(
                    "component at vertex {v} must be {0}x{0}",
                    s.dim(v)
                )));
            }
            if stored[v - 1].is_some() {
                return Err(Error::Precondition(format!(
                    "duplicate component for vertex {v}"
                )));
            }
            stored[v - 1] = Some(m);
        }
        for v in 1..=l {
            let w = s.partner(v);
            if v <= w && stored[v - 1].is_none() {
                return Err(Error::Precondition(format!(
                    "missing component for orbit representative {v}"
                )));
            }
        }
        let g = GroupElement { stored };
        for v in 1..=l {
            let m = g.component(s, v)?;
            if !in_group(s.group(v), &m)? {
                return Err(Error::Precondition(format!(
                    "component at vertex {v} is not in {:?}({})",
                    s.group(v),
                    s.dim(v)
                )));
            }
        }
        Ok(g)
    }

    pub fn identity(s: &MixedQuiverSetting, field: Field) -> GroupElement {
        let mut stored = vec![None; s.vertex_count()];
        for v in 1..=s.vertex_count() {
            if v <= s.partner(v) {
                stored[v - 1] = Some(Matrix::identity(s.dim(v), field));
            }
        }
        GroupElement { stored }
    }

    /// The component acting at vertex `v`; dual components are derived as
    /// `(g^{-1})^T` of the stored orbit representative.
    pub fn component(&self, s: &MixedQuiverSetting, v: usize) -> Result<Matrix> {
        let w = s.partner(v);
        if v <= w {
            self.stored[v - 1]
                .clone()
                .ok_or_else(|| Error::Precondition(format!("no component for vertex {v}")))
        } else {
            let base = self.stored[w - 1]
                .as_ref()
                .ok_or_else(|| Error::Precondition(format!("no component for vertex {w}")))?;
            Ok(base.inverse()?.transpose())
        }
    }

    /// Componentwise product (same setting); `(g*h)` acts as g after h.
    pub fn compose(&self, s: &MixedQuiverSetting, rhs: &GroupElement) -> Result<GroupElement> {
        let mut stored = vec![None; s.vertex_count()];
        for v in 1..=s.vertex_count() {
            if v <= s.partner(v) {
                let a = self.component(s, v)?;
                let b = rhs.component(s, v)?;
                stored[v - 1] = Some(a.mul(&b)?);
            }
        }
        Ok(GroupElement { stored })
    }
}

/// Exact membership test for the classical group named by `label`.
pub fn in_group(label: GroupLabel, g: &Matrix) -> Result<bool> {
    if !g.is_square() {
        return Ok(false);
    }
    let n = g.rows();
    let field = g.field();
    let e = Matrix::identity(n, field);
    Ok(match label {
        GroupLabel::GL => g.inverse().is_ok(),
        GroupLabel::O => g.mul(&g.transpose())? == e,
        GroupLabel::SO => g.mul(&g.transpose())? == e && det_is_one(g)?,
        GroupLabel::Sp => {
            if n % 2 != 0 {
                false
            } else {
                let j = Matrix::j_form(n, field)?;
                g.transpose().mul(&j)?.mul(g)? == j
            }
        }
        GroupLabel::SL => det_is_one(g)?,
    })
}

fn det_is_one(g: &Matrix) -> Result<bool> {
    let sigmas = char_poly_coeffs(g)?;
    Ok(sigmas
        .last()
        .map(|d| *d == Scalar::one(g.field()))
        .unwrap_or(true))
}

/// The base-change action: `(g . h)_a = g_{head(a)} h_a g_{tail(a)}^{-1}`,
/// with dual-vertex components expanded via the `(g^{-1})^T` constraint.
/// For valid settings the output satisfies the form constraints again.
pub fn act(
    s: &MixedQuiverSetting,
    g: &GroupElement,
    rep: &Representation,
) -> Result<Representation> {
    let mut out = Vec::with_capacity(s.quiver.arrows.len());
    for (idx, a) in s.quiver.arrows.iter().enumerate() {
        let gh = g.component(s, a.head)?;
        let gt_inv = g.component(s, a.tail)?.inverse()?;
        out.push(gh.mul(rep.matrix(idx)?)?.mul(&gt_inv)?);
    }
    Representation::new(s, out)
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::*;
    use crate::quiver_model::{sample_group_element, sample_representation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn congruence_action_on_symmetric_pairs() {
        // g . (A, B) = (g A g^T, g B g^T)
        let s = two_symmetric_forms(2);
        let f = Field::Rational;
        let a = Matrix::from_int_rows(f, &[vec![1, 2], vec![2, 5]]);
        let b = Matrix::from_int_rows(f, &[vec![0, 3], vec![3, 1]]);
        let rep = Representation::new(&s, vec![a.clone(), b.clone()]).unwrap();
        let g = Matrix::from_int_rows(f, &[vec![1, 1], vec![0, 1]]);
        let ge = GroupElement::new(&s, vec![(1, g.clone())]).unwrap();
        let moved = act(&s, &ge, &rep).unwrap();
        let expect = |m: &Matrix| g.mul(m).unwrap().mul(&g.transpose()).unwrap();
        assert_eq!(moved.matrix(0).unwrap(), &expect(&a));
        assert_eq!(moved.matrix(1).unwrap(), &expect(&b));
    }

    #[test]
    fn triangle_action_formula() {
        // (A, B, C) -> (g1 A g3^T, (g1^{-1})^T B g1^{-1}, g3 C g1^T)
        let s = triangle_gl_gl_o(2, 2);
        let f = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = sample_representation(&s, f, &mut rng).unwrap();
        let g = sample_group_element(&s, f, &mut rng).unwrap();
        let g1 = g.component(&s, 1).unwrap();
        let g3 = g.component(&s, 3).unwrap();
        let moved = act(&s, &g, &rep).unwrap();
        let a = rep.matrix(0).unwrap();
        let b = rep.matrix(1).unwrap();
        let c = rep.matrix(2).unwrap();
        assert_eq!(
            moved.matrix(0).unwrap(),
            &g1.mul(a).unwrap().mul(&g3.transpose()).unwrap()
        );
        let g1_inv_t = g1.inverse().unwrap().transpose();
        assert_eq!(
            moved.matrix(1).unwrap(),
            &g1_inv_t.mul(b).unwrap().mul(&g1.inverse().unwrap()).unwrap()
        );
        assert_eq!(
            moved.matrix(2).unwrap(),
            &g3.mul(c).unwrap().mul(&g1.transpose()).unwrap()
        );
    }

    #[test]
    fn act_is_a_group_action() {
        let s = five_vertex_mixed();
        let f = Field::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let rep = sample_representation(&s, f, &mut rng).unwrap();
            let g = sample_group_element(&s, f, &mut rng).unwrap();
            let h = sample_group_element(&s, f, &mut rng).unwrap();
            let id = GroupElement::identity(&s, f);
            assert_eq!(act(&s, &id, &rep).unwrap(), rep);
            let lhs = act(&s, &g, &act(&s, &h, &rep).unwrap()).unwrap();
            let rhs = act(&s, &g.compose(&s, &h).unwrap(), &rep).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn act_rejects_singular_components() {
        let s = two_symmetric_forms(2);
        let f = Field::Rational;
        let sing = Matrix::from_int_rows(f, &[vec![1, 1], vec![1, 1]]);
        assert!(GroupElement::new(&s, vec![(1, sing)]).is_err());
    }

    #[test]
    fn representation_form_constraints_enforced() {
        let s = two_symmetric_forms(2);
        let f = Field::Rational;
        let not_symmetric = Matrix::from_int_rows(f, &[vec![1, 2], vec![3, 4]]);
        let sym = Matrix::from_int_rows(f, &[vec![1, 2], vec![2, 4]]);
        assert!(Representation::new(&s, vec![not_symmetric, sym.clone()]).is_err());
        assert!(Representation::new(&s, vec![sym.clone(), sym]).is_ok());
    }

    #[test]
    fn group_membership_checks() {
        let f = Field::Rational;
        let rot = Matrix::from_int_rows(f, &[vec![0, -1], vec![1, 0]]);
        assert!(in_group(GroupLabel::SO, &rot).unwrap());
        assert!(in_group(GroupLabel::O, &rot).unwrap());
        assert!(in_group(GroupLabel::Sp, &rot).unwrap());
        let flip = Matrix::from_int_rows(f, &[vec![0, 1], vec![1, 0]]);
        assert!(in_group(GroupLabel::O, &flip).unwrap());
        assert!(!in_group(GroupLabel::SO, &flip).unwrap());
        assert!(!in_group(GroupLabel::SL, &flip).unwrap());
        let shear = Matrix::from_int_rows(f, &[vec![1, 5], vec![0, 1]]);
        assert!(in_group(GroupLabel::SL, &shear).unwrap());
        assert!(in_group(GroupLabel::Sp, &shear).unwrap()); // Sp(2) = SL(2)
        assert!(!in_group(GroupLabel::O, &shear).unwrap());
    }
}
