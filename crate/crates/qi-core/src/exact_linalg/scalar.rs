//! Exact scalar backends: arbitrary-precision rationals, odd prime fields,
//! and rational dual numbers (for exact forward-mode derivatives).

use crate::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Which exact backend a scalar (or a whole matrix) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// Arbitrary-precision rational numbers.
    Rational,
    /// Integers modulo an odd prime.
    Prime(u64),
    /// Rational dual numbers a + b*eps with eps^2 = 0. Used internally for
    /// exact Jacobians; not a field (eps is a zero divisor) but supports all
    /// ring operations and division by units.
    Dual,
}

impl Field {
    /// Parses `rational` or `fp:P` with P an odd prime.
    pub fn parse(s: &str) -> Result<Field> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Schema(format!("bad prime field modulus `{p}`")))?;
            if p == 2 {
                return Err(Error::Schema(
                    "prime field modulus 2 is not supported".into(),
                ));
            }
            if !is_prime_u64(p) {
                return Err(Error::Schema(format!("{p} is not prime")));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::Schema(format!(
            "unknown field `{s}` (expected `rational` or `fp:P`)"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::Dual => write!(f, "dual"),
        }
    }
}

/// An exact scalar. All arithmetic is exact; mixing backends is a
/// programming error and panics (matrix-level operations check fields up
/// front and return [`Error::BackendMismatch`] instead).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, value: u64 },
    Dual(Box<DualParts>),
}

/// Real and infinitesimal parts of a dual number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualParts {
    pub real: BigRational,
    pub eps: BigRational,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
            Scalar::Dual(_) => Field::Dual,
        }
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar::int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::int(field, 1)
    }

    /// Embeds a small integer into the chosen backend.
    pub fn int(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from(BigInt::from(v))),
            Field::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Prime { p, value: r % p }
            }
            Field::Dual => Scalar::Dual(Box::new(DualParts {
                real: BigRational::from(BigInt::from(v)),
                eps: BigRational::zero(),
            })),
        }
    }

    pub fn from_bigint(field: Field, v: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from(v.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.sign() == Sign::Minus {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Prime {
                    p,
                    value: digits.first().copied().unwrap_or(0),
                }
            }
            Field::Dual => Scalar::Dual(Box::new(DualParts {
                real: BigRational::from(v.clone()),
                eps: BigRational::zero(),
            })),
        }
    }

    /// A dual number `real + eps * e` (rational backend parts).
    pub fn dual(real: BigRational, eps: BigRational) -> Scalar {
        Scalar::Dual(Box::new(DualParts { real, eps }))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Dual(d) => d.real.is_zero() && d.eps.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Dual(d) => d.real.is_one() && d.eps.is_zero(),
        }
    }

    fn expect_same(&self, rhs: &Scalar) {
        assert_eq!(
            self.field(),
            rhs.field(),
            "scalar backend mismatch: {} vs {}",
            self.field(),
            rhs.field()
        );
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: (a + b) % p,
            },
            (Scalar::Dual(a), Scalar::Dual(b)) => Scalar::dual(&a.real + &b.real, &a.eps + &b.eps),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: (a + p - b) % p,
            },
            (Scalar::Dual(a), Scalar::Dual(b)) => Scalar::dual(&a.real - &b.real, &a.eps - &b.eps),
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: mulmod(*a, *b, *p),
            },
            (Scalar::Dual(a), Scalar::Dual(b)) => Scalar::dual(
                &a.real * &b.real,
                &a.real * &b.eps + &a.eps * &b.real,
            ),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: (p - value) % p,
            },
            Scalar::Dual(d) => Scalar::dual(-&d.real, -&d.eps),
        }
    }

    /// Multiplicative inverse. Errors on zero and on dual numbers with zero
    /// real part (non-units).
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime { p, value } => {
                if *value == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Prime {
                        p: *p,
                        value: powmod(*value, p - 2, *p),
                    })
                }
            }
            Scalar::Dual(d) => {
                if d.real.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    let r = d.real.recip();
                    // (a + b e)^{-1} = 1/a - (b/a^2) e
                    let eps = -(&d.eps * &r * &r);
                    Ok(Scalar::dual(r, eps))
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Real part of a dual number, rational value otherwise.
    pub fn real_part(&self) -> Result<BigRational> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Dual(d) => Ok(d.real.clone()),
            Scalar::Prime { .. } => Err(Error::BackendMismatch),
        }
    }

    /// Infinitesimal part of a dual number; zero for plain rationals.
    pub fn eps_part(&self) -> Result<BigRational> {
        match self {
            Scalar::Rational(_) => Ok(BigRational::zero()),
            Scalar::Dual(d) => Ok(d.eps.clone()),
            Scalar::Prime { .. } => Err(Error::BackendMismatch),
        }
    }

    /// Lifts to the rational backend: prime-field values go to their
    /// canonical representative in [0, p).
    pub fn lift_to_rational(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.clone())),
            Scalar::Prime { value, .. } => {
                Ok(Scalar::Rational(BigRational::from(BigInt::from(*value))))
            }
            Scalar::Dual(_) => Err(Error::BackendMismatch),
        }
    }

    /// Reduces a rational with denominator coprime to p into Z/p.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                let num = Scalar::from_bigint(Field::Prime(p), r.numer());
                let den = Scalar::from_bigint(Field::Prime(p), r.denom());
                num.div(&den)
            }
            Scalar::Prime { p: q, value } if *q == p => Ok(Scalar::Prime { p, value: *value }),
            _ => Err(Error::BackendMismatch),
        }
    }

    /// Exact division by a positive integer; errors if the division is not
    /// exact for integer-valued rationals when `require_exact` is set.
    pub fn div_exact_nat(&self, n: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                let d = BigRational::from(BigInt::from(n));
                Ok(Scalar::Rational(r / d))
            }
            Scalar::Dual(d) => {
                let q = BigRational::from(BigInt::from(n));
                Ok(Scalar::dual(&d.real / &q, &d.eps / &q))
            }
            Scalar::Prime { .. } => Err(Error::BackendMismatch),
        }
    }

    /// Uniform sample: rational/dual backends draw an integer in
    /// [-bound, bound]; prime fields draw uniformly from [0, p).
    pub fn random_small<R: Rng + ?Sized>(field: Field, rng: &mut R, bound: i64) -> Scalar {
        match field {
            Field::Rational | Field::Dual => {
                Scalar::int(field, rng.random_range(-bound..=bound))
            }
            Field::Prime(p) => Scalar::Prime {
                p,
                value: rng.random_range(0..p),
            },
        }
    }

    /// Parses the serialized form: `a` or `a/b` for rationals, a decimal
    /// representative for prime fields.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let bad = |s: &str| Error::Schema(format!("bad scalar literal `{s}`"));
        match field {
            Field::Rational => {
                if let Some((n, d)) = s.split_once('/') {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad(s))?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad(s))?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    Ok(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(s.trim()).map_err(|_| bad(s))?;
                    Ok(Scalar::Rational(BigRational::from(n)))
                }
            }
            Field::Prime(_) => {
                let n = BigInt::from_str(s.trim()).map_err(|_| bad(s))?;
                Ok(Scalar::from_bigint(field, &n))
            }
            Field::Dual => Err(Error::Schema("dual scalars are not serializable".into())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Dual(d) => write!(f, "{} + {}*eps", d.real, d.eps),
        }
    }
}
