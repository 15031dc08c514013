//! The complete-intersection data: a tuple of odd degrees.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degrees must be non-empty")]
    Empty,
    #[error("degrees must be odd")]
    EvenDegree(i64),
    #[error("degrees must be positive")]
    NonPositiveDegree(i64),
    #[error("n − l must be positive and even")]
    NoPositiveCodimension,
}

/// A Calabi-Yau complete intersection `X_a` in `P^{n-1}` cut out by
/// hypersurfaces of odd degrees `a_1..a_l`, with `n = sum a_k`.
///
/// Every degree is odd, so `n - l` is automatically even; it is positive as
/// soon as one degree exceeds 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geometry {
    degrees: Vec<u32>,
    n: u32,
}

impl Geometry {
    pub fn new(degrees: &[i64]) -> Result<Self, GeometryError> {
        if degrees.is_empty() {
            return Err(GeometryError::Empty);
        }
        if let Some(&a) = degrees.iter().find(|&&a| a <= 0) {
            return Err(GeometryError::NonPositiveDegree(a));
        }
        if let Some(&a) = degrees.iter().find(|&&a| a % 2 == 0) {
            return Err(GeometryError::EvenDegree(a));
        }
        let degrees: Vec<u32> = degrees
            .iter()
            .map(|&a| u32::try_from(a).map_err(|_| GeometryError::NonPositiveDegree(a)))
            .collect::<Result<_, _>>()?;
        let n: u32 = degrees.iter().sum();
        if n as usize <= degrees.len() {
            return Err(GeometryError::NoPositiveCodimension);
        }
        Ok(Self { degrees, n })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of homogeneous coordinates on the ambient `P^{n-1}`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of defining equations.
    pub fn l(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// Rank of the torus `T^m`, `m = floor(n/2)`.
    pub fn m(&self) -> u32 {
        self.n / 2
    }

    /// Nesting depth `(n - l - 2) / 2` of the disk formula.
    pub fn p_max(&self) -> u32 {
        (self.n - self.l() - 2) / 2
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "X({}) in P^{}", degs.join(","), self.n - 1)
    }
}
