//! Truncated polynomials in an auxiliary variable `w` ("jets") and series
//! in `q` with jet coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coefficient, QSeries, Series, SeriesError};

/// `c_0 + c_1 w + ... + c_J w^J + O(w^{J+1})`.
///
/// `order == None` marks an exact polynomial (no `O(w^..)` tail); such
/// values are what `Zero::zero()` and `One::one()` produce. Mixing an exact
/// jet with a truncated one keeps the truncated order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<BigRational>,
    order: Option<usize>,
}

impl Jet {
    fn normalized(mut coeffs: Vec<BigRational>, order: Option<usize>) -> Self {
        if let Some(j) = order {
            coeffs.truncate(j + 1);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, order }
    }

    /// Jet known modulo `w^{order+1}`.
    pub fn new(coeffs: Vec<BigRational>, order: usize) -> Self {
        Self::normalized(coeffs, Some(order))
    }

    /// Exact polynomial in `w`.
    pub fn exact(coeffs: Vec<BigRational>) -> Self {
        Self::normalized(coeffs, None)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c + d w`, exact.
    pub fn linear(c: BigRational, d: BigRational) -> Self {
        Self::exact(vec![c, d])
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Coefficient of `w^k` (zero when not stored).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Value at `w = 0`.
    pub fn at_zero(&self) -> BigRational {
        self.coeff(0)
    }

    /// Re-truncates to order at most `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let o = self.order.map_or(order, |j| j.min(order));
        Self::normalized(self.coeffs.clone(), Some(o))
    }

    /// Divides by `w`; fails unless the `w^0` coefficient vanishes.
    /// A truncated jet loses one order.
    pub fn div_w(&self) -> Result<Self, SeriesError> {
        if !self.at_zero().is_zero() {
            return Err(SeriesError::NotDivisibleByW);
        }
        let order = match self.order {
            None => None,
            Some(0) => return Err(SeriesError::NotDivisibleByW),
            Some(j) => Some(j - 1),
        };
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        Ok(Self::normalized(coeffs, order))
    }

    fn min_order(&self, rhs: &Self) -> Option<usize> {
        match (self.order, rhs.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        }
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, rhs: Jet) -> Jet {
        let order = self.min_order(&rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Jet::normalized(coeffs, order)
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;

    fn neg(self) -> Jet {
        Jet {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, rhs: Jet) -> Jet {
        let order = self.min_order(&rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Jet::normalized(Vec::new(), order);
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(j) = order {
            len = len.min(j + 1);
        }
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (k, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + k] += a * b;
            }
        }
        Jet::normalized(coeffs, order)
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::exact(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::exact(vec![BigRational::one()])
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Coefficient for Jet {
    fn inverse(&self) -> Option<Self> {
        let c0 = self.at_zero();
        if c0.is_zero() {
            return None;
        }
        let c0_inv = c0.recip();
        match self.order {
            None if self.coeffs.len() == 1 => Some(Jet::exact(vec![c0_inv])),
            // a non-constant polynomial has no polynomial inverse
            None => None,
            Some(j) => {
                let mut out = Vec::with_capacity(j + 1);
                out.push(c0_inv.clone());
                for n in 1..=j {
                    let acc = (1..=n).fold(BigRational::zero(), |acc, k| {
                        acc + self.coeff(k) * &out[n - k]
                    });
                    out.push(-(acc * &c0_inv));
                }
                Some(Jet::new(out, j))
            }
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        Jet::normalized(self.coeffs.iter().map(|c| c * r).collect(), self.order)
    }
}

/// A series in `q` whose coefficients are w-jets of a common order.
#[derive(Clone, Debug, PartialEq)]
pub struct JetSeries {
    jet_order: usize,
    inner: Series<Jet>,
}

impl JetSeries {
    /// Wraps a jet-coefficient series, capping every coefficient at
    /// `jet_order`. Exact coefficients are given that order too.
    pub fn new(inner: Series<Jet>, jet_order: usize) -> Self {
        let jet_order = inner
            .coeffs()
            .iter()
            .filter_map(Jet::order)
            .fold(jet_order, usize::min);
        let inner = inner.map(|c| c.with_order(jet_order));
        Self { jet_order, inner }
    }

    /// Embeds a rational series as w-independent jets.
    pub fn from_q_series(s: &QSeries, jet_order: usize) -> Self {
        Self::new(s.map(|c| Jet::constant(c.clone(), jet_order)), jet_order)
    }

    pub fn jet_order(&self) -> usize {
        self.jet_order
    }

    pub fn trunc(&self) -> usize {
        self.inner.trunc()
    }

    pub fn inner(&self) -> &Series<Jet> {
        &self.inner
    }

    pub fn coeff(&self, k: usize) -> Option<&Jet> {
        self.inner.coeff(k)
    }

    /// The `w = 0` slice, a plain rational series.
    pub fn at_w0(&self) -> QSeries {
        self.inner.map(Jet::at_zero)
    }

    /// The `w^k` slice.
    pub fn w_slice(&self, k: usize) -> QSeries {
        self.inner.map(|c| c.coeff(k))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.inner + &rhs.inner, self.jet_order.min(rhs.jet_order))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.inner - &rhs.inner, self.jet_order.min(rhs.jet_order))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.inner * &rhs.inner, self.jet_order.min(rhs.jet_order))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(Self::new(
            self.inner.checked_div(&rhs.inner)?,
            self.jet_order.min(rhs.jet_order),
        ))
    }

    pub fn q_log_derivative(&self) -> Self {
        Self::new(self.inner.q_log_derivative(), self.jet_order)
    }

    /// Divides every coefficient by `w`, dropping the jet order by one.
    pub fn div_w(&self) -> Result<Self, SeriesError> {
        if self.jet_order == 0 {
            return Err(SeriesError::NotDivisibleByW);
        }
        let coeffs = self
            .inner
            .coeffs()
            .iter()
            .map(Jet::div_w)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(Series::new(coeffs), self.jet_order - 1))
    }

    /// Drops the jet order to `order` (no-op if already lower).
    pub fn with_jet_order(&self, order: usize) -> Self {
        Self::new(self.inner.clone(), order)
    }
}
