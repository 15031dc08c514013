//! Truncated formal power series over exact coefficient rings.
//!
//! A [`Series`] with truncation `T` stores the coefficients of `q^0..=q^T`;
//! everything from `q^{T+1}` on is unknown. Binary operations keep the
//! smaller truncation of their operands, so a result never claims more
//! precision than its inputs carry.
//!
//! The coefficient ring is generic ([`Coefficient`]): plain rationals give
//! [`QSeries`], and w-jets ([`Jet`]) give the bivariate [`JetSeries`] used by
//! the M operator. Series in `u = q^{1/2}` live in [`HalfSeries`].

pub mod half;
pub mod jet;

pub use half::{substitute_half, HalfSeries};
pub use jet::{Jet, JetSeries};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("non-unit divisor")]
    NonUnitDivisor,
    #[error("constant-term mismatch: {0}")]
    ConstantTermMismatch(&'static str),
    #[error("series is not odd-supported")]
    NotOddSupported,
    #[error("substitution must have the form Q + O(Q^2), got {0}")]
    BadSubstitution(String),
    #[error("w-jet is not divisible by w")]
    NotDivisibleByW,
}

/// An exact commutative ring usable as a series coefficient.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    /// Multiplicative inverse, if this element is a unit.
    fn inverse(&self) -> Option<Self>;

    /// Multiply by a rational scalar.
    fn scale(&self, r: &BigRational) -> Self;
}

impl Coefficient for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated power series `c_0 + c_1 q + ... + c_T q^T + O(q^{T+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

/// Series with rational coefficients.
pub type QSeries = Series<BigRational>;

impl<R: Coefficient> Series<R> {
    /// Builds a series whose truncation is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient list: a series always knows at least
    /// its constant term.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// Builds a series of truncation `trunc`, padding with zeros or dropping
    /// coefficients as needed.
    pub fn from_coeffs(mut coeffs: Vec<R>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, R::zero());
        Self { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Self::from_coeffs(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(R::one(), trunc)
    }

    pub fn constant(c: R, trunc: usize) -> Self {
        Self::from_coeffs(vec![c], trunc)
    }

    /// `c q^k` truncated at `trunc` (zero if `k > trunc`).
    pub fn monomial(c: R, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `q`.
    pub fn variable(trunc: usize) -> Self {
        Self::monomial(R::one(), 1, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `q^k`; `None` beyond the truncation.
    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `trunc` (no-op if already shorter).
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        Self {
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    pub fn map<S: Coefficient>(&self, f: impl FnMut(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// Multiply every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `q d/dq`: the coefficient of `q^k` is multiplied by `k`.
    pub fn q_log_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&rat(k as i64)))
            .collect();
        Self { coeffs }
    }

    /// Ordinary derivative `d/dq`. Loses one order; a truncation-0 input
    /// yields the zero series of truncation 0.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&rat(k as i64 + 1)))
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or(SeriesError::NonUnitDivisor)?;
        let t = self.trunc();
        let mut out: Vec<R> = Vec::with_capacity(t + 1);
        out.push(c0_inv.clone());
        for n in 1..=t {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * c0_inv.clone()));
        }
        Ok(Self { coeffs: out })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(self * &rhs.inverse()?)
    }

    /// `exp(s)` for `s` with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTermMismatch(
                "exp requires a zero constant term",
            ));
        }
        // n e_n = sum_{k=1}^n k s_k e_{n-k}
        let t = self.trunc();
        let mut out: Vec<R> = Vec::with_capacity(t + 1);
        out.push(R::one());
        for n in 1..=t {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].scale(&rat(k as i64)) * out[n - k].clone();
            }
            out.push(acc.scale(&rat_frac(1, n as i64)));
        }
        Ok(Self { coeffs: out })
    }

    /// `log(s)` for `s` with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermMismatch(
                "log requires constant term 1",
            ));
        }
        // n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}
        let t = self.trunc();
        let mut out: Vec<R> = Vec::with_capacity(t + 1);
        out.push(R::zero());
        for n in 1..=t {
            let mut acc = self.coeffs[n].scale(&rat(n as i64));
            for (k, lk) in out.iter().enumerate().skip(1) {
                acc = acc - lk.scale(&rat(k as i64)) * self.coeffs[n - k].clone();
            }
            out.push(acc.scale(&rat_frac(1, n as i64)));
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with constant term 1, for `s` with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermMismatch(
                "sqrt requires constant term 1",
            ));
        }
        let half = rat_frac(1, 2);
        let t = self.trunc();
        let mut out: Vec<R> = Vec::with_capacity(t + 1);
        out.push(R::one());
        for n in 1..=t {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc = acc - out[k].clone() * out[n - k].clone();
            }
            out.push(acc.scale(&half));
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(q))` for `inner` with zero constant term, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTermMismatch(
                "composition requires an inner series with zero constant term",
            ));
        }
        let t = self.trunc().min(inner.trunc());
        let inner = inner.truncate(t);
        let mut acc = Self::constant(self.coeffs[t].clone(), t);
        for k in (0..t).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }
}

impl<'a, R: Coefficient> Add<&'a Series<R>> for &'a Series<R> {
    type Output = Series<R>;

    fn add(self, rhs: &'a Series<R>) -> Series<R> {
        let t = self.trunc().min(rhs.trunc());
        let coeffs = (0..=t)
            .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
            .collect();
        Series { coeffs }
    }
}

impl<'a, R: Coefficient> Sub<&'a Series<R>> for &'a Series<R> {
    type Output = Series<R>;

    fn sub(self, rhs: &'a Series<R>) -> Series<R> {
        let t = self.trunc().min(rhs.trunc());
        let coeffs = (0..=t)
            .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
            .collect();
        Series { coeffs }
    }
}

impl<'a, R: Coefficient> Mul<&'a Series<R>> for &'a Series<R> {
    type Output = Series<R>;

    fn mul(self, rhs: &'a Series<R>) -> Series<R> {
        let t = self.trunc().min(rhs.trunc());
        let coeffs = (0..=t)
            .map(|n| {
                (0..=n).fold(R::zero(), |acc, k| {
                    acc + self.coeffs[k].clone() * rhs.coeffs[n - k].clone()
                })
            })
            .collect();
        Series { coeffs }
    }
}

impl<R: Coefficient> Neg for &Series<R> {
    type Output = Series<R>;

    fn neg(self) -> Series<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Coefficient + fmt::Display> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

/// Inverts the relation `Q = q * U(q)` for `U` with constant term 1,
/// returning `q` as a series in `Q`.
///
/// Newton iteration on `h(q) = q U(q)`; the number of correct orders goes
/// `1 -> 3 -> 7 -> ...` until the truncation of `U` is reached.
pub fn invert_unit_relation(unit: &QSeries) -> Result<QSeries, SeriesError> {
    if !unit.constant_term().is_one() {
        return Err(SeriesError::ConstantTermMismatch(
            "mirror-map unit must have constant term 1",
        ));
    }
    let t = unit.trunc();
    let mut h = vec![BigRational::zero()];
    h.extend(unit.coeffs()[..t].iter().cloned());
    let h = QSeries::new(h);
    // h'(q) = U(q) + q U'(q), known through q^t
    let h_prime = QSeries::new(
        unit.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as i64 + 1))
            .collect(),
    );

    let big_q = QSeries::variable(t);
    let mut phi = big_q.clone();
    let mut correct = 1usize;
    while correct < t {
        let residual = &h.compose(&phi)? - &big_q;
        let slope = h_prime.compose(&phi)?;
        phi = &phi - &residual.checked_div(&slope)?;
        correct = 2 * correct + 1;
    }
    Ok(phi)
}
