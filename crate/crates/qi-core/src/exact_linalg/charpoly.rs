//! Division-free characteristic polynomial (Samuelson-Berkowitz), so the
//! same code path is valid over the rationals and over any Z/p.

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::{Error, Result};

/// Coefficients `[sigma_1, ..., sigma_n]` with the sign convention
/// `det(lambda*E - X) = lambda^n - sigma_1 lambda^{n-1} + ... + (-1)^n sigma_n`,
/// so `sigma_1 = tr` and `sigma_n = det`.
pub fn char_poly_coeffs(a: &Matrix) -> Result<Vec<Scalar>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let field = a.field();
    if n == 0 {
        return Ok(vec![]);
    }
    // c holds the coefficients of det(lambda*E - A_k) for the leading
    // principal submatrix A_k, highest degree first.
    let mut c = vec![Scalar::one(field), a.get(0, 0).neg()];
    for k in 2..=n {
        let m = k - 1;
        // First column of the (k+1) x k Toeplitz factor:
        // 1, -a_mm, -(R S), -(R A S), ..., -(R A^{m-1} S)
        // with R the row a[m][0..m], S the column a[0..m][m], A the leading
        // m x m block.
        let mut col = Vec::with_capacity(k + 1);
        col.push(Scalar::one(field));
        col.push(a.get(m, m).neg());
        let mut v: Vec<Scalar> = (0..m).map(|i| a.get(i, m).clone()).collect();
        for _ in 0..m {
            let mut dot = Scalar::zero(field);
            for (i, vi) in v.iter().enumerate() {
                dot = dot.add(&a.get(m, i).mul(vi));
            }
            col.push(dot.neg());
            // v <- A_leading * v
            let mut next = vec![Scalar::zero(field); m];
            for (r, slot) in next.iter_mut().enumerate() {
                for (i, vi) in v.iter().enumerate() {
                    *slot = slot.add(&a.get(r, i).mul(vi));
                }
            }
            v = next;
        }
        debug_assert_eq!(col.len(), k + 1);
        let mut next_c = vec![Scalar::zero(field); k + 1];
        for (i, slot) in next_c.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j <= k {
                    *slot = slot.add(&col[i - j].mul(cj));
                }
            }
        }
        c = next_c;
    }
    // det(lambda E - X) = sum_t (-1)^t sigma_t lambda^{n-t}  =>  sigma_t = (-1)^t c[t].
    Ok((1..=n)
        .map(|t| if t % 2 == 0 { c[t].clone() } else { c[t].neg() })
        .collect())
}

/// Exact determinant, computed division-free as `sigma_n`.
pub fn det(a: &Matrix) -> Result<Scalar> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Ok(Scalar::one(a.field()));
    }
    Ok(char_poly_coeffs(a)?.pop().expect("n >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::scalar::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute-force oracle: det(lambda*E - A) by cofactor expansion over
    /// dense univariate polynomials, returning [sigma_1..sigma_n].
    fn charpoly_oracle(a: &Matrix) -> Vec<Scalar> {
        let n = a.rows();
        let field = a.field();
        // Polynomial entries, constant-first coefficient vectors.
        type Poly = Vec<Scalar>;
        let padd = |x: &Poly, y: &Poly, field: Field| -> Poly {
            let len = x.len().max(y.len());
            (0..len)
                .map(|i| {
                    let xi = x.get(i).cloned().unwrap_or(Scalar::zero(field));
                    let yi = y.get(i).cloned().unwrap_or(Scalar::zero(field));
                    xi.add(&yi)
                })
                .collect()
        };
        let pmul = |x: &Poly, y: &Poly, field: Field| -> Poly {
            let mut out = vec![Scalar::zero(field); x.len() + y.len() - 1];
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    out[i + j] = out[i + j].add(&xi.mul(yj));
                }
            }
            out
        };
        fn pdet(
            m: &Vec<Vec<Vec<Scalar>>>,
            rows: &[usize],
            cols: &[usize],
            field: Field,
            padd: &dyn Fn(&Vec<Scalar>, &Vec<Scalar>, Field) -> Vec<Scalar>,
            pmul: &dyn Fn(&Vec<Scalar>, &Vec<Scalar>, Field) -> Vec<Scalar>,
        ) -> Vec<Scalar> {
            if rows.is_empty() {
                return vec![Scalar::one(field)];
            }
            let mut acc = vec![Scalar::zero(field)];
            for (k, &c) in cols.iter().enumerate() {
                let sub_rows: Vec<usize> = rows[1..].to_vec();
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = pdet(m, &sub_rows, &sub_cols, field, padd, pmul);
                let mut term = pmul(&m[rows[0]][c], &minor, field);
                if k % 2 == 1 {
                    term = term.iter().map(Scalar::neg).collect();
                }
                acc = padd(&acc, &term, field);
            }
            acc
        }
        // lambda*E - A as polynomial matrix.
        let pm: Vec<Vec<Poly>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let lin = if r == c {
                            Scalar::one(field)
                        } else {
                            Scalar::zero(field)
                        };
                        vec![a.get(r, c).neg(), lin]
                    })
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..n).collect();
        let p = pdet(&pm, &all, &all, field, &padd, &pmul);
        // p[n-t] = (-1)^t sigma_t
        (1..=n)
            .map(|t| {
                if t % 2 == 0 {
                    p[n - t].clone()
                } else {
                    p[n - t].neg()
                }
            })
            .collect()
    }

    #[test]
    fn identity_three() {
        let e = Matrix::identity(3, Field::Rational);
        let s = char_poly_coeffs(&e).unwrap();
        let expect: Vec<Scalar> = [3, 3, 1]
            .iter()
            .map(|&v| Scalar::int(Field::Rational, v))
            .collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn two_by_two() {
        let a = Matrix::from_int_rows(Field::Rational, &[vec![1, 2], vec![3, 4]]);
        let s = char_poly_coeffs(&a).unwrap();
        assert_eq!(s[0], Scalar::int(Field::Rational, 5));
        assert_eq!(s[1], Scalar::int(Field::Rational, -2));
    }

    #[test]
    fn matches_cofactor_oracle_on_random_4x4() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let a = Matrix::random_small(4, 4, Field::Rational, &mut rng, 5);
            assert_eq!(char_poly_coeffs(&a).unwrap(), charpoly_oracle(&a));
        }
    }

    #[test]
    fn rational_and_prime_agree_on_integer_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = 10007u64;
        for n in 1..=5 {
            let a = Matrix::random_small(n, n, Field::Rational, &mut rng, 9);
            let over_q = char_poly_coeffs(&a).unwrap();
            let over_p = char_poly_coeffs(&a.reduce_mod(p).unwrap()).unwrap();
            for (q, m) in over_q.iter().zip(&over_p) {
                assert_eq!(&q.reduce_mod(p).unwrap(), m);
            }
        }
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::Rational;
        for _ in 0..5 {
            let a = Matrix::random_small(4, 4, f, &mut rng, 4);
            let g = loop {
                let g = Matrix::random_small(4, 4, f, &mut rng, 4);
                if g.inverse().is_ok() {
                    break g;
                }
            };
            let conj = g.mul(&a).unwrap().mul(&g.inverse().unwrap()).unwrap();
            assert_eq!(
                char_poly_coeffs(&a).unwrap(),
                char_poly_coeffs(&conj).unwrap()
            );
        }
    }

    #[test]
    fn non_square_rejected() {
        let a = Matrix::zero(2, 3, Field::Rational);
        assert!(matches!(
            char_poly_coeffs(&a),
            Err(Error::NonSquare { .. })
        ));
    }
}
