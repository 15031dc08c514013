//! Exact cross-checks between the fixed-point sums, the residue oracle and
//! the closed nested formula.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::edge::{disk_edge_factor, EdgeFactorFn};
use super::sums::{residue_oracle, FixedPointEvaluator};
use super::weights::WeightAssignment;
use crate::disk::{nested_from_tower, q_trunc_for};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::mirror::{i_tower, tau_series};
use crate::series::HalfSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `I_0 * sum(p, 0) = residue_oracle(p)`.
    ResidueTheorem,
    /// `sum(p, s) = 0` for `p + s <= p_max - 1`.
    Vanishing,
    /// `2 * sum(p_max - s, s)` equals the `s`-fold nested formula.
    NestedFormula,
    /// Every `sum(p, s)` agrees across weight samples.
    WeightIndependence,
    /// `2 * sum(0, p_max)` equals the closed disk potential.
    Theorem,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::ResidueTheorem,
        Identity::Vanishing,
        Identity::NestedFormula,
        Identity::WeightIndependence,
        Identity::Theorem,
    ];

    pub fn number(self) -> u32 {
        self as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::ResidueTheorem => "residue-theorem",
            Identity::Vanishing => "vanishing",
            Identity::NestedFormula => "nested-formula",
            Identity::WeightIndependence => "weight-independence",
            Identity::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: Identity,
    pub p: u32,
    pub s: u32,
    /// Index into the report's weight samples.
    pub sample: usize,
    /// Lowest u-exponent where the two sides differ.
    pub first_differing_order: Option<usize>,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed: p={} s={} sample={}",
            self.identity, self.p, self.s, self.sample
        )?;
        if let Some(d) = self.first_differing_order {
            write!(f, " first difference at u^{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub checks: usize,
    pub failures: Vec<IdentityFailure>,
    pub elapsed: Duration,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub geometry: Geometry,
    pub trunc_u: usize,
    pub samples: Vec<WeightAssignment>,
    pub outcomes: Vec<IdentityOutcome>,
    /// Time spent evaluating the sums before any comparison.
    pub setup_elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(IdentityOutcome::passed)
    }

    pub fn outcome(&self, id: Identity) -> &IdentityOutcome {
        self.outcomes
            .iter()
            .find(|o| o.identity == id)
            .expect("every identity is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityFailure> {
        self.outcomes.iter().flat_map(|o| o.failures.iter())
    }
}

/// Everything computed for one weight sample.
struct SampleData {
    sums: BTreeMap<(u32, u32), HalfSeries>,
    residues: Vec<HalfSeries>,
}

pub fn verify_identities(
    g: &Geometry,
    samples: &[WeightAssignment],
    trunc_u: usize,
) -> Result<VerificationReport> {
    verify_identities_with_edge(g, samples, trunc_u, disk_edge_factor)
}

/// [`verify_identities`] with a substitute edge factor, for negative controls.
pub fn verify_identities_with_edge(
    g: &Geometry,
    samples: &[WeightAssignment],
    trunc_u: usize,
    edge: EdgeFactorFn,
) -> Result<VerificationReport> {
    if samples.len() < 2 {
        return Err(Error::InvalidWeights("need ≥ 2 weight samples".into()));
    }
    let p_max = g.p_max();
    let two = BigRational::from_integer(BigInt::from(2));

    let setup = Instant::now();
    let tower = i_tower(g, p_max as usize, q_trunc_for(trunc_u))?;
    let tau = tau_series(g, trunc_u);
    let nested: Vec<HalfSeries> = (0..=p_max)
        .map(|s| nested_from_tower(g, s, &tau, &tower))
        .collect::<Result<_>>()?;
    let mut data = Vec::with_capacity(samples.len());
    for w in samples {
        let ev = FixedPointEvaluator::with_edge_factor(g, w, trunc_u, edge)?;
        let mut sums = BTreeMap::new();
        for p in 0..=p_max {
            for s in 0..=p_max - p {
                sums.insert((p, s), ev.sum(p, s)?);
            }
        }
        let residues = (0..=p_max)
            .map(|p| residue_oracle(g, p, trunc_u, ev.alpha()))
            .collect::<Result<_>>()?;
        data.push(SampleData { sums, residues });
    }
    let setup_elapsed = setup.elapsed();

    let mut outcomes = Vec::new();
    for id in Identity::ALL {
        let start = Instant::now();
        let mut checks = 0;
        let mut failures = Vec::new();
        let mut check = |p: u32, s: u32, sample: usize, lhs: &HalfSeries, rhs: &HalfSeries| {
            checks += 1;
            if let Some(d) = lhs.first_difference(rhs) {
                failures.push(IdentityFailure {
                    identity: id,
                    p,
                    s,
                    sample,
                    first_differing_order: Some(d),
                });
            }
        };
        for (k, sample) in data.iter().enumerate() {
            match id {
                Identity::ResidueTheorem => {
                    for p in 0..=p_max {
                        let lhs = sample.sums[&(p, 0)].mul_q(&tower[0]);
                        check(p, 0, k, &lhs, &sample.residues[p as usize]);
                    }
                }
                Identity::Vanishing => {
                    for ((p, s), sum) in &sample.sums {
                        if p + s < p_max {
                            check(*p, *s, k, sum, &HalfSeries::zero(trunc_u));
                        }
                    }
                }
                Identity::NestedFormula => {
                    for s in 0..=p_max {
                        let lhs = sample.sums[&(p_max - s, s)].scale(&two);
                        check(p_max - s, s, k, &lhs, &nested[s as usize]);
                    }
                }
                Identity::WeightIndependence => {
                    if k > 0 {
                        for (key, sum) in &sample.sums {
                            check(key.0, key.1, k, sum, &data[0].sums[key]);
                        }
                    }
                }
                Identity::Theorem => {
                    let lhs = sample.sums[&(0, p_max)].scale(&two);
                    check(0, p_max, k, &lhs, &nested[p_max as usize]);
                }
            }
        }
        outcomes.push(IdentityOutcome {
            identity: id,
            checks,
            failures,
            elapsed: start.elapsed(),
        });
    }

    Ok(VerificationReport {
        geometry: g.clone(),
        trunc_u,
        samples: samples.to_vec(),
        outcomes,
        setup_elapsed,
    })
}
