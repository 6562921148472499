//! Exact pfaffians by recursive first-row expansion with memoization on
//! index subsets. Division-free, hence valid over any backend.

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::{Error, Result};
use std::collections::HashMap;

/// Pfaffian of a skew-symmetric matrix, with the row-expansion convention
/// `pf([[0,1],[-1,0]]) = 1`. Errors on odd dimension or non-skew input.
pub fn pfaffian_skew(s: &Matrix) -> Result<Scalar> {
    if !s.is_square() {
        return Err(Error::NonSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if s.rows() % 2 != 0 {
        return Err(Error::OddDimension(s.rows()));
    }
    if !s.is_skew_symmetric() {
        return Err(Error::Precondition(
            "pfaffian requires a skew-symmetric matrix".into(),
        ));
    }
    let n = s.rows();
    if n == 0 {
        return Ok(Scalar::one(s.field()));
    }
    assert!(n <= 32, "pfaffian subset memoization uses a u32 mask");
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, Scalar> = HashMap::new();
    Ok(pf_rec(s, full, &mut memo))
}

fn pf_rec(s: &Matrix, mask: u32, memo: &mut HashMap<u32, Scalar>) -> Scalar {
    let field = s.field();
    if mask == 0 {
        return Scalar::one(field);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let without_first = mask & !(1 << first);
    let mut acc = Scalar::zero(field);
    let mut sign_pos = true; // (-1)^{k-1} for the k-th remaining index
    let mut rest = without_first;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let entry = s.get(first, j);
        if !entry.is_zero() {
            let sub = pf_rec(s, without_first & !(1 << j), memo);
            let term = entry.mul(&sub);
            acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// The generalized pfaffian `P(X) = pf(X - X^T)` of an arbitrary square
/// matrix of even dimension.
pub fn generalized_pfaffian(x: &Matrix) -> Result<Scalar> {
    if !x.is_square() {
        return Err(Error::NonSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.rows() % 2 != 0 {
        return Err(Error::OddDimension(x.rows()));
    }
    pfaffian_skew(&x.sub(&x.transpose())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::charpoly::det;
    use crate::exact_linalg::scalar::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Sum over all of S_n of sgn(pi) prod_i x_{pi(2i-1),pi(2i)} / (n/2)!,
    /// the symmetric-group formula for P(X) over the rationals.
    fn generalized_pfaffian_sn_oracle(x: &Matrix) -> Scalar {
        let n = x.rows();
        let field = x.field();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total = Scalar::zero(field);
        permute(&mut idx, 0, &mut |perm, sign| {
            let mut term = Scalar::one(field);
            for i in 0..n / 2 {
                term = term.mul(x.get(perm[2 * i], perm[2 * i + 1]));
            }
            if sign {
                total = total.add(&term);
            } else {
                total = total.sub(&term);
            }
        });
        let mut fact = 1u64;
        for i in 1..=(n / 2) as u64 {
            fact *= i;
        }
        total.div_exact_nat(fact).unwrap()
    }

    fn permute(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
        fn go(idx: &mut Vec<usize>, k: usize, parity: bool, f: &mut impl FnMut(&[usize], bool)) {
            if k == idx.len() {
                f(idx, parity);
                return;
            }
            for i in k..idx.len() {
                idx.swap(k, i);
                let p = if i == k { parity } else { !parity };
                go(idx, k + 1, p, f);
                idx.swap(k, i);
            }
        }
        go(idx, k, true, f);
    }

    #[test]
    fn two_by_two_is_b_minus_c() {
        let x = Matrix::from_int_rows(Field::Rational, &[vec![1, 7], vec![4, 9]]);
        assert_eq!(
            generalized_pfaffian(&x).unwrap(),
            Scalar::int(Field::Rational, 3)
        );
    }

    #[test]
    fn symmetric_gives_zero() {
        let x = Matrix::from_int_rows(Field::Rational, &[vec![1, 5], vec![5, 2]]);
        assert!(generalized_pfaffian(&x).unwrap().is_zero());
    }

    #[test]
    fn odd_dimension_rejected() {
        let x = Matrix::identity(3, Field::Rational);
        assert!(matches!(
            generalized_pfaffian(&x),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn square_equals_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 4, 6] {
            for _ in 0..5 {
                let x = Matrix::random_small(n, n, Field::Rational, &mut rng, 6);
                let s = x.sub(&x.transpose()).unwrap();
                let pf = pfaffian_skew(&s).unwrap();
                assert_eq!(pf.mul(&pf), det(&s).unwrap());
            }
        }
    }

    #[test]
    fn matches_symmetric_group_formula_at_2_and_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 4] {
            for _ in 0..4 {
                let x = Matrix::random_small(n, n, Field::Rational, &mut rng, 5);
                assert_eq!(
                    generalized_pfaffian(&x).unwrap(),
                    generalized_pfaffian_sn_oracle(&x)
                );
            }
        }
    }

    #[test]
    fn works_mod_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = Matrix::random_small(4, 4, Field::Rational, &mut rng, 9);
        let over_q = generalized_pfaffian(&x).unwrap();
        let over_p = generalized_pfaffian(&x.reduce_mod(13).unwrap()).unwrap();
        assert_eq!(over_q.reduce_mod(13).unwrap(), over_p);
    }
}
