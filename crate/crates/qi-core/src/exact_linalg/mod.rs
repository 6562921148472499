//! Exact scalar and matrix arithmetic plus determinant/pfaffian machinery:
//! division-free characteristic polynomials, generalized pfaffians, partial
//! linearizations of both, and block embeddings.

mod charpoly;
mod matrix;
mod pfaffian;
mod scalar;

pub use charpoly::{char_poly_coeffs, det};
pub use matrix::Matrix;
pub use pfaffian::{generalized_pfaffian, pfaffian_skew};
pub use scalar::{is_prime_u64, DualParts, Field, Scalar};

use crate::{Error, Result};

/// Embeds an `dims[p-1] x dims[q-1]` matrix into the block `(p, q)` of an
/// `n x n` matrix partitioned by `dims` (1-based block indices), zeros
/// elsewhere.
pub fn block_embed(x: &Matrix, p: usize, q: usize, dims: &[usize]) -> Result<Matrix> {
    let m = dims.len();
    if p == 0 || q == 0 || p > m || q > m {
        return Err(Error::IndexOutOfRange(format!(
            "block ({p},{q}) of a {m}-block partition"
        )));
    }
    if x.rows() != dims[p - 1] || x.cols() != dims[q - 1] {
        return Err(Error::DimensionMismatch(format!(
            "block ({p},{q}) expects {}x{}, got {}x{}",
            dims[p - 1],
            dims[q - 1],
            x.rows(),
            x.cols()
        )));
    }
    let n: usize = dims.iter().sum();
    let row_off: usize = dims[..p - 1].iter().sum();
    let col_off: usize = dims[..q - 1].iter().sum();
    let field = x.field();
    Ok(Matrix::from_fn(n, n, field, |r, c| {
        if r >= row_off && r < row_off + x.rows() && c >= col_off && c < col_off + x.cols() {
            x.get(r - row_off, c - col_off).clone()
        } else {
            Scalar::zero(field)
        }
    }))
}

/// Lagrange weights: `w[i]` is the coefficient of `x^r` in the i-th Lagrange
/// basis polynomial for the given nodes, so that `sum_i w[i] f(t_i)` is the
/// `x^r` coefficient of the degree-(nodes-1) interpolant of `f`.
fn lagrange_power_weights(field: Field, nodes: &[Scalar], r: usize) -> Result<Vec<Scalar>> {
    let mut weights = Vec::with_capacity(nodes.len());
    for (i, ti) in nodes.iter().enumerate() {
        // numerator polynomial prod_{j != i} (x - t_j), constant-first
        let mut num = vec![Scalar::one(field)];
        let mut denom = Scalar::one(field);
        for (j, tj) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![Scalar::zero(field); num.len() + 1];
            for (k, ck) in num.iter().enumerate() {
                next[k] = next[k].sub(&ck.mul(tj));
                next[k + 1] = next[k + 1].add(ck);
            }
            num = next;
            denom = denom.mul(&ti.sub(tj));
        }
        let coeff = num.get(r).cloned().unwrap_or(Scalar::zero(field));
        weights.push(coeff.div(&denom)?);
    }
    Ok(weights)
}

fn interpolation_nodes(field: Field, count: usize) -> Result<Vec<Scalar>> {
    if let Field::Prime(p) = field {
        if (count as u64) > p {
            return Err(Error::PrimeTooSmall {
                needed: count,
                p,
            });
        }
    }
    Ok((0..count).map(|v| Scalar::int(field, v as i64)).collect())
}

fn check_linearization_input(
    r: &[usize],
    xs: &[Matrix],
    degree_sum: usize,
) -> Result<(usize, Field)> {
    if r.len() != xs.len() || r.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} multiplicities for {} matrices",
            r.len(),
            xs.len()
        )));
    }
    if r.iter().any(|&ri| ri == 0) {
        return Err(Error::Precondition(
            "multiplicities must be positive".into(),
        ));
    }
    let n = xs[0].rows();
    let field = xs[0].field();
    for x in xs {
        if !x.is_square() || x.rows() != n {
            return Err(Error::DimensionMismatch(
                "all matrices must be square of one common size".into(),
            ));
        }
        if x.field() != field {
            return Err(Error::BackendMismatch);
        }
    }
    if r.iter().sum::<usize>() != degree_sum {
        return Err(Error::Precondition(format!(
            "multiplicities sum to {}, expected {degree_sum}",
            r.iter().sum::<usize>()
        )));
    }
    Ok((n, field))
}

/// Extracts the coefficient of `x_1^{r_1} ... x_s^{r_s}` in
/// `f(x_1 X_1 + ... + x_s X_s)` by exact tensor-grid interpolation.
fn linearize_by_interpolation(
    r: &[usize],
    xs: &[Matrix],
    n: usize,
    field: Field,
    degree: usize,
    f: impl Fn(&Matrix) -> Result<Scalar>,
) -> Result<Scalar> {
    let s = xs.len();
    let nodes = interpolation_nodes(field, degree + 1)?;
    let weights: Vec<Vec<Scalar>> = r
        .iter()
        .map(|&rj| lagrange_power_weights(field, &nodes, rj))
        .collect::<Result<_>>()?;
    let mut idx = vec![0usize; s];
    let mut acc = Scalar::zero(field);
    loop {
        let mut combo = Matrix::zero(n, n, field);
        let mut weight = Scalar::one(field);
        for j in 0..s {
            combo = combo.add(&xs[j].scale(&nodes[idx[j]]))?;
            weight = weight.mul(&weights[j][idx[j]]);
        }
        if !weight.is_zero() {
            acc = acc.add(&weight.mul(&f(&combo)?));
        }
        // odometer
        let mut k = 0;
        loop {
            if k == s {
                return Ok(acc);
            }
            idx[k] += 1;
            if idx[k] <= degree {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Partial linearization of the pfaffian: the coefficient of
/// `x_1^{r_1} ... x_s^{r_s}` in `P(x_1 X_1 + ... + x_s X_s)` where
/// `P(X) = pf(X - X^T)`, extracted exactly. Requires even `n` and
/// `sum r_i = n/2`.
pub fn partial_linearization_pf(r: &[usize], xs: &[Matrix]) -> Result<Scalar> {
    let n = xs.first().map_or(0, Matrix::rows);
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let (n, field) = check_linearization_input(r, xs, n / 2)?;
    linearize_by_interpolation(r, xs, n, field, n / 2, generalized_pfaffian)
}

/// Partial linearization of the determinant: the coefficient of
/// `x_1^{r_1} ... x_s^{r_s}` in `det(x_1 X_1 + ... + x_s X_s)`. Requires
/// `sum r_i = n`.
pub fn partial_linearization_det(r: &[usize], xs: &[Matrix]) -> Result<Scalar> {
    let n = xs.first().map_or(0, Matrix::rows);
    let (n, field) = check_linearization_input(r, xs, n)?;
    linearize_by_interpolation(r, xs, n, field, n, det)
}

/// Brute-force evaluation of the pfaffian partial linearization as the
/// normalized signed sum over the full symmetric group: for each permutation
/// `pi` of `[1, n]` the term is `sgn(pi) prod_j prod_i X_j[pi(2i-1), pi(2i)]`
/// where slot `j` owns `r_j` consecutive index pairs, the total divided by
/// `r_1! ... r_s!`. Reference oracle; capped at `n <= 8`.
pub fn partial_linearization_pf_direct(r: &[usize], xs: &[Matrix]) -> Result<Scalar> {
    let n = xs.first().map_or(0, Matrix::rows);
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    if n > 8 {
        return Err(Error::Precondition(
            "direct symmetric-group summation is capped at n <= 8".into(),
        ));
    }
    let (n, field) = check_linearization_input(r, xs, n / 2)?;
    if field == Field::Prime(2) {
        return Err(Error::Precondition(
            "direct route divides by factorials; p = 2 unsupported".into(),
        ));
    }
    // slot_of_pair[i] = which matrix owns the i-th index pair
    let mut slot_of_pair = Vec::with_capacity(n / 2);
    for (j, &rj) in r.iter().enumerate() {
        for _ in 0..rj {
            slot_of_pair.push(j);
        }
    }
    let mut total = Scalar::zero(field);
    let mut perm: Vec<usize> = (0..n).collect();
    permute_signed(&mut perm, 0, true, &mut |perm, positive| {
        let mut term = Scalar::one(field);
        for (i, &slot) in slot_of_pair.iter().enumerate() {
            term = term.mul(xs[slot].get(perm[2 * i], perm[2 * i + 1]));
            if term.is_zero() {
                break;
            }
        }
        total = if positive {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    });
    let mut c = 1u64;
    for &rj in r {
        for i in 1..=rj as u64 {
            c *= i;
        }
    }
    match field {
        Field::Prime(p) => {
            let cinv = Scalar::int(field, (c % p) as i64).inv()?;
            Ok(total.mul(&cinv))
        }
        _ => total.div_exact_nat(c),
    }
}

fn permute_signed(
    idx: &mut Vec<usize>,
    k: usize,
    parity: bool,
    f: &mut impl FnMut(&[usize], bool),
) {
    if k == idx.len() {
        f(idx, parity);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        let p = if i == k { parity } else { !parity };
        permute_signed(idx, k + 1, p, f);
        idx.swap(k, i);
    }
}
