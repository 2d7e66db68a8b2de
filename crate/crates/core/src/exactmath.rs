//! Exact integer, rational and univariate polynomial arithmetic.
//!
//! Every formula in the crate is evaluated here without floating point:
//! binomial coefficients, the consecutive-integer elementary symmetric sums
//! `Π^n_{a,b}`, and dense polynomials in `t` with [`BigRational`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `C(n, k)` for `0 <= k <= n`, zero otherwise.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Parameters of `Π^n_{a,b}`; every integer triple is a legal query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiQuery {
    pub a: i64,
    pub b: i64,
    pub n: i64,
}

impl PiQuery {
    pub fn new(a: i64, b: i64, n: i64) -> Self {
        PiQuery { a, b, n }
    }
}

/// Sum of all products of `n` distinct integers from `a..=b`.
///
/// `Π^0 = 1` for every range (including the empty range `b = a - 1`), and
/// `Π^n = 0` whenever `n < 0` or `n` exceeds the range length.
pub fn pi_range(q: PiQuery) -> BigInt {
    let PiQuery { a, b, n } = q;
    if n < 0 {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    let len = if b < a { 0 } else { b - a + 1 };
    if n > len {
        return BigInt::zero();
    }
    let n = n as usize;
    // e[j] holds the degree-j elementary symmetric sum of the values seen so far.
    let mut e = vec![BigInt::zero(); n + 1];
    e[0] = BigInt::one();
    for (seen, x) in (a..=b).enumerate() {
        let top = n.min(seen + 1);
        for j in (1..=top).rev() {
            let term = &e[j - 1] * x;
            e[j] += term;
        }
    }
    e.swap_remove(n)
}

/// Shorthand for `pi_range(PiQuery::new(a, b, n))`.
pub fn pi(a: i64, b: i64, n: i64) -> BigInt {
    pi_range(PiQuery::new(a, b, n))
}

/// Dense univariate polynomial in `t` with exact rational coefficients.
///
/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Integer coefficients in ascending degree.
    pub fn from_ints<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^d`, zero beyond the degree.
    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&BigRational::from_integer(t.into()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Every coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Every coefficient up to the degree is `> 0`, and the polynomial is nonzero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(Signed::is_positive)
    }

    /// `["num/den", ...]` in ascending degree; integers are written without a denominator.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        serde_json::to_string(&strings).expect("string vector serializes")
    }

    /// Inverse of [`Polynomial::to_json`]; only the canonical form is accepted.
    pub fn from_json(s: &str) -> Result<Self> {
        let strings: Vec<String> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial json: {e}")))?;
        let coeffs = strings
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::Parse("polynomial json has a trailing zero".into()));
        }
        Ok(Polynomial { coeffs })
    }
}

/// `p ⪯ q`: every coefficient of `p` is at most the matching coefficient of `q`.
pub fn poly_leq(p: &Polynomial, q: &Polynomial) -> bool {
    let len = p.coeffs.len().max(q.coeffs.len());
    (0..len).all(|d| p.coeff(d) <= q.coeff(d))
}

pub fn poly_eval(p: &Polynomial, t: i64) -> BigRational {
    p.eval_int(t)
}

/// `C(αt + β, d)` expanded as a polynomial in `t`:
/// `(αt+β)(αt+β-1)⋯(αt+β-d+1) / d!`.
pub fn binom_poly(alpha: i64, beta: i64, d: i64) -> Result<Polynomial> {
    if d < 0 {
        return Err(Error::params(format!(
            "binom_poly degree must be >= 0, got {d}"
        )));
    }
    let mut acc = Polynomial::one();
    for j in 0..d {
        let factor = Polynomial::from_ints([BigInt::from(beta - j), BigInt::from(alpha)]);
        acc = &acc * &factor;
    }
    let inv = BigRational::new(BigInt::one(), factorial(d as u64));
    Ok(acc.scale(&inv))
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a canonical rational: {s:?}"));
    let parse_int = |x: &str| -> Result<BigInt> {
        if x.is_empty() || x.starts_with('+') {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    let r = match s.split_once('/') {
        None => BigRational::from_integer(parse_int(s)?),
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if !d.is_positive() || d.is_one() || !n.gcd(&d).is_one() {
                return Err(bad());
            }
            BigRational::new_raw(n, d)
        }
    };
    if format_rational(&r) != s {
        return Err(bad());
    }
    Ok(r)
}

impl fmt::Display for Polynomial {
    /// Descending degree, e.g. `1/2 t^2 + 3/2 t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && d > 0;
            if !unit {
                f.write_str(&format_rational(&mag))?;
                if d > 0 {
                    f.write_str(" ")?;
                }
            }
            match d {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}
