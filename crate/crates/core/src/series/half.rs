//! Series in `u = q^{1/2}`, indexed by the u-exponent.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat_frac, QSeries, SeriesError};

/// `c_0 + c_1 u + ... + c_T u^T + O(u^{T+1})` with `u = q^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSeries {
    coeffs: Vec<BigRational>,
}

impl HalfSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn zero(trunc_u: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); trunc_u + 1],
        }
    }

    /// Views a q-series as a u-series: `q^k` becomes `u^{2k}`.
    pub fn from_q_series(s: &QSeries) -> Self {
        let t = 2 * s.trunc() + 1;
        let mut out = Self::zero(t);
        for (k, c) in s.coeffs().iter().enumerate() {
            out.coeffs[2 * k] = c.clone();
        }
        out
    }

    pub fn trunc_u(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `u^d`; `None` beyond the truncation.
    pub fn coeff(&self, d: usize) -> Option<&BigRational> {
        self.coeffs.get(d)
    }

    pub(crate) fn add_at(&mut self, d: usize, c: &BigRational) {
        self.coeffs[d] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Every even u-exponent carries a zero coefficient.
    pub fn is_odd_supported(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    pub fn truncate(&self, trunc_u: usize) -> Self {
        let t = trunc_u.min(self.trunc_u());
        Self {
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.trunc_u().min(rhs.trunc_u());
        Self {
            coeffs: (0..=t).map(|d| &self.coeffs[d] + &rhs.coeffs[d]).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let t = self.trunc_u().min(rhs.trunc_u());
        Self {
            coeffs: (0..=t).map(|d| &self.coeffs[d] - &rhs.coeffs[d]).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Product with an integer-graded series. A q-series known through
    /// `q^t` limits the result to `u^{2t+1}`.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        let t = self.trunc_u().min(2 * s.trunc() + 1);
        let coeffs = (0..=t)
            .map(|d| {
                (0..=d / 2).fold(BigRational::zero(), |acc, k| {
                    acc + &self.coeffs[d - 2 * k] * &s.coeffs()[k]
                })
            })
            .collect();
        Self { coeffs }
    }

    /// `q d/dq`, i.e. `(u/2) d/du`: the coefficient of `u^d` gains `d/2`.
    pub fn q_log_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| c * rat_frac(d as i64, 2))
            .collect();
        Self { coeffs }
    }

    /// Lowest u-exponent at which `self` and `other` differ, within the
    /// shared truncation.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let t = self.trunc_u().min(other.trunc_u());
        (0..=t).find(|&d| self.coeffs[d] != other.coeffs[d])
    }

    /// Lowest u-exponent with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Display for HalfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})u^{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.trunc_u() + 1)
    }
}

/// Rewrites an odd-supported `sum c_d q^{d/2}` in `U = Q^{1/2}`, given
/// `q = q(Q) = Q + O(Q^2)`.
///
/// Uses `q^{1/2} = Q^{1/2} * sqrt(q(Q)/Q)`. With `q(Q)` known through `Q^t`
/// the result is known through `U^{2t}`.
pub fn substitute_half(
    series: &HalfSeries,
    q_of_big_q: &QSeries,
) -> Result<HalfSeries, SeriesError> {
    if !series.is_odd_supported() {
        return Err(SeriesError::NotOddSupported);
    }
    let t = q_of_big_q.trunc();
    let c0 = q_of_big_q.constant_term();
    let c1 = q_of_big_q.coeff(1);
    if !c0.is_zero() || !c1.is_some_and(One::is_one) {
        return Err(SeriesError::BadSubstitution(q_of_big_q.to_string()));
    }
    let ratio = QSeries::new(q_of_big_q.coeffs()[1..].to_vec());
    let root = ratio.sqrt()?;
    let root_sq = &root * &root;

    let trunc_out = series.trunc_u().min(2 * t);
    let mut out = HalfSeries::zero(trunc_out);
    // root^d for odd d, built incrementally
    let mut power = root.clone();
    for d in (1..=trunc_out).step_by(2) {
        let c = &series.coeffs[d];
        if !c.is_zero() {
            for (k, pk) in power.coeffs().iter().enumerate() {
                let e = d + 2 * k;
                if e > trunc_out {
                    break;
                }
                out.coeffs[e] += c * pk;
            }
        }
        power = &power * &root_sq;
    }
    Ok(out)
}
