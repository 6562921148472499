//! Deterministic (seeded) random sampling of representations and exact
//! group elements. Group elements are produced by Cayley transforms so
//! membership holds exactly, without square roots.

use super::representation::{GroupElement, Representation};
use super::{FormLabel, GroupLabel, MixedQuiverSetting};
use crate::exact_linalg::{char_poly_coeffs, Field, Matrix, Scalar};
use crate::{Error, Result};
use rand::Rng;

const ENTRY_BOUND: i64 = 3;
const RETRY_BUDGET: usize = 64;

/// Uniform small-entry representation, then projected onto the form
/// subspace exactly (symmetric/skew sampled directly from a triangle).
pub fn sample_representation<R: Rng + ?Sized>(
    s: &MixedQuiverSetting,
    field: Field,
    rng: &mut R,
) -> Result<Representation> {
    let mut matrices = Vec::with_capacity(s.quiver.arrows.len());
    for (a, form) in s.quiver.arrows.iter().zip(&s.forms) {
        let rows = s.dim(a.head);
        let cols = s.dim(a.tail);
        let m = match form {
            FormLabel::M => Matrix::random_small(rows, cols, field, rng, ENTRY_BOUND),
            FormLabel::SPlus => random_symmetric(rows, field, rng),
            FormLabel::SMinus => random_skew(rows, field, rng),
            FormLabel::LPlus => {
                // A J symmetric  <=>  A = -S J with S symmetric
                let sym = random_symmetric(rows, field, rng);
                let j = Matrix::j_form(rows, field)?;
                sym.mul(&j)?.neg()
            }
            FormLabel::LMinus => {
                let skew = random_skew(rows, field, rng);
                let j = Matrix::j_form(rows, field)?;
                skew.mul(&j)?.neg()
            }
        };
        matrices.push(m);
    }
    Representation::new(s, matrices)
}

fn random_symmetric<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Matrix {
    let mut m = Matrix::zero(n, n, field);
    for r in 0..n {
        for c in r..n {
            let v = Scalar::random_small(field, rng, ENTRY_BOUND);
            m.set(r, c, v.clone());
            m.set(c, r, v);
        }
    }
    m
}

fn random_skew<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Matrix {
    let mut m = Matrix::zero(n, n, field);
    for r in 0..n {
        for c in (r + 1)..n {
            let v = Scalar::random_small(field, rng, ENTRY_BOUND);
            m.set(r, c, v.clone());
            m.set(c, r, v.neg());
        }
    }
    m
}

fn random_invertible<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Result<Matrix> {
    for _ in 0..RETRY_BUDGET {
        let m = Matrix::random_small(n, n, field, rng, ENTRY_BOUND);
        if m.inverse().is_ok() {
            return Ok(m);
        }
    }
    Err(Error::SamplingFailed(format!(
        "no invertible {n}x{n} matrix in {RETRY_BUDGET} draws"
    )))
}

fn random_special_linear<R: Rng + ?Sized>(
    n: usize,
    field: Field,
    rng: &mut R,
) -> Result<Matrix> {
    let mut g = random_invertible(n, field, rng)?;
    let d = char_poly_coeffs(&g)?.pop().expect("n >= 1");
    let dinv = d.inv()?;
    // scale the first row by 1/det to land in SL(n)
    for c in 0..n {
        let v = g.get(0, c).mul(&dinv);
        g.set(0, c, v);
    }
    Ok(g)
}

/// Cayley transform `(E - S)(E + S)^{-1}` of a random skew matrix: special
/// orthogonal, determinant one, exactly.
fn random_special_orthogonal<R: Rng + ?Sized>(
    n: usize,
    field: Field,
    rng: &mut R,
) -> Result<Matrix> {
    for _ in 0..RETRY_BUDGET {
        let skew = random_skew(n, field, rng);
        let e = Matrix::identity(n, field);
        if let Ok(inv) = e.add(&skew)?.inverse() {
            return e.sub(&skew)?.mul(&inv);
        }
    }
    Err(Error::SamplingFailed(
        "Cayley transform kept hitting singular E + S".into(),
    ))
}

/// Cayley transform of a Hamiltonian matrix (`J S` symmetric): symplectic,
/// exactly.
fn random_symplectic<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Result<Matrix> {
    let j = Matrix::j_form(n, field)?;
    for _ in 0..RETRY_BUDGET {
        let sym = random_symmetric(n, field, rng);
        // S = -J K has J S = K symmetric
        let s = j.mul(&sym)?.neg();
        let e = Matrix::identity(n, field);
        if let Ok(inv) = e.add(&s)?.inverse() {
            return e.sub(&s)?.mul(&inv);
        }
    }
    Err(Error::SamplingFailed(
        "Cayley transform kept hitting singular E + S".into(),
    ))
}

fn random_orthogonal<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Result<Matrix> {
    let g = random_special_orthogonal(n, field, rng)?;
    if rng.random_bool(0.5) {
        // flip the determinant with diag(-1, 1, ..., 1)
        let mut refl = Matrix::identity(n, field);
        refl.set(0, 0, Scalar::int(field, -1));
        refl.mul(&g)
    } else {
        Ok(g)
    }
}

/// Samples a group element with exact membership in every component. When
/// dual GL/SL vertices carry different labels the stricter one wins (the
/// derived partner `(g^{-1})^T` must belong to its own group).
pub fn sample_group_element<R: Rng + ?Sized>(
    s: &MixedQuiverSetting,
    field: Field,
    rng: &mut R,
) -> Result<GroupElement> {
    let mut components = Vec::new();
    for v in 1..=s.vertex_count() {
        let w = s.partner(v);
        if v > w {
            continue;
        }
        let n = s.dim(v);
        let need_det_one = s.group(v) == GroupLabel::SL || s.group(w) == GroupLabel::SL;
        let g = match s.group(v) {
            GroupLabel::GL | GroupLabel::SL => {
                if need_det_one {
                    random_special_linear(n, field, rng)?
                } else {
                    random_invertible(n, field, rng)?
                }
            }
            GroupLabel::O => random_orthogonal(n, field, rng)?,
            GroupLabel::SO => random_special_orthogonal(n, field, rng)?,
            GroupLabel::Sp => random_symplectic(n, field, rng)?,
        };
        components.push((v, g));
    }
    GroupElement::new(s, components)
}

#[cfg(test)]
mod tests {
    use super::super::test_fixtures::*;
    use super::*;
    use crate::exact_linalg::det;
    use crate::quiver_model::representation::in_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_orthogonal_is_exactly_so() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [1usize, 2, 3, 4] {
            let g = random_special_orthogonal(n, Field::Rational, &mut rng).unwrap();
            assert!(in_group(GroupLabel::SO, &g).unwrap());
            assert_eq!(det(&g).unwrap(), Scalar::one(Field::Rational));
        }
    }

    #[test]
    fn orthogonal_flip_changes_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut seen_minus = false;
        for _ in 0..20 {
            let g = random_orthogonal(3, Field::Rational, &mut rng).unwrap();
            assert!(in_group(GroupLabel::O, &g).unwrap());
            if det(&g).unwrap() == Scalar::int(Field::Rational, -1) {
                seen_minus = true;
            }
        }
        assert!(seen_minus);
    }

    #[test]
    fn cayley_symplectic_is_exactly_sp() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [2usize, 4] {
            let g = random_symplectic(n, Field::Rational, &mut rng).unwrap();
            assert!(in_group(GroupLabel::Sp, &g).unwrap());
        }
    }

    #[test]
    fn special_linear_has_det_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 3] {
            let g = random_special_linear(n, Field::Rational, &mut rng).unwrap();
            assert!(in_group(GroupLabel::SL, &g).unwrap());
        }
    }

    #[test]
    fn samples_work_over_prime_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Field::Prime(101);
        let g = random_special_orthogonal(3, f, &mut rng).unwrap();
        assert!(in_group(GroupLabel::SO, &g).unwrap());
        let sp = random_symplectic(2, f, &mut rng).unwrap();
        assert!(in_group(GroupLabel::Sp, &sp).unwrap());
    }

    #[test]
    fn representation_samples_satisfy_forms() {
        let s = five_vertex_mixed();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        // Representation::new re-checks every form constraint
        for _ in 0..10 {
            sample_representation(&s, Field::Rational, &mut rng).unwrap();
        }
    }

    #[test]
    fn skew_form_at_dimension_one_is_zero() {
        let quiver = super::super::Quiver::new(
            2,
            vec![super::super::Arrow {
                id: "a".into(),
                head: 1,
                tail: 2,
            }],
        )
        .unwrap();
        let s = MixedQuiverSetting::new(
            quiver,
            vec![1, 1],
            vec![GroupLabel::GL, GroupLabel::GL],
            vec![FormLabel::SMinus],
            vec![2, 1],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = sample_representation(&s, Field::Rational, &mut rng).unwrap();
        assert!(rep.matrix(0).unwrap().is_zero());
    }

    #[test]
    fn group_samples_pass_membership_for_every_label() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (label, n) in [
            (GroupLabel::GL, 2),
            (GroupLabel::O, 3),
            (GroupLabel::SO, 2),
            (GroupLabel::Sp, 2),
        ] {
            let s = loops(label, n, 1);
            let g = sample_group_element(&s, Field::Rational, &mut rng).unwrap();
            let c = g.component(&s, 1).unwrap();
            assert!(in_group(label, &c).unwrap());
        }
    }
}
