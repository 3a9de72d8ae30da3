//! Campaigns: run one checkable claim over a sweep of `G(m,p,n)`, comparing
//! closed forms with the monomial oracle, and persist the outcome.

mod claims;
mod model;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::monomial::DEFAULT_CAP;
use crate::taxonomy::{group_order, GroupDescriptor};

pub use model::{ArithmeticModel, Formulas};
pub use report::{content_hash, persist_report, report_file_name};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    OrderFormula,
    CenterGcd,
    RegularCriterion,
    RegularHyperplanesFull,
    StabilizerLemmaA,
    StabilizerLemmaB,
    StabilizerLemmaC,
    FullGroupCase3,
    FullGroupCase4,
    ExtendedEqualityLemma,
    AllRegularCentralCriterion,
    BraidShadowConsistency,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::OrderFormula,
        ClaimId::CenterGcd,
        ClaimId::RegularCriterion,
        ClaimId::RegularHyperplanesFull,
        ClaimId::StabilizerLemmaA,
        ClaimId::StabilizerLemmaB,
        ClaimId::StabilizerLemmaC,
        ClaimId::FullGroupCase3,
        ClaimId::FullGroupCase4,
        ClaimId::ExtendedEqualityLemma,
        ClaimId::AllRegularCentralCriterion,
        ClaimId::BraidShadowConsistency,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::OrderFormula => "order_formula",
            ClaimId::CenterGcd => "center_gcd",
            ClaimId::RegularCriterion => "regular_criterion",
            ClaimId::RegularHyperplanesFull => "regular_hyperplanes_full",
            ClaimId::StabilizerLemmaA => "stabilizer_lemma_a",
            ClaimId::StabilizerLemmaB => "stabilizer_lemma_b",
            ClaimId::StabilizerLemmaC => "stabilizer_lemma_c",
            ClaimId::FullGroupCase3 => "full_group_case3",
            ClaimId::FullGroupCase4 => "full_group_case4",
            ClaimId::ExtendedEqualityLemma => "extended_equality_lemma",
            ClaimId::AllRegularCentralCriterion => "all_regular_central_criterion",
            ClaimId::BraidShadowConsistency => "braid_shadow_consistency",
        }
    }

    pub fn info(self) -> &'static ClaimInfo {
        REGISTRY.iter().find(|c| c.id == self).expect("every claim is registered")
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = VerifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifierError::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: ClaimId,
    pub description: &'static str,
    /// The statement the claim checks.
    pub anchor: &'static str,
}

static REGISTRY: [ClaimInfo; 12] = [
    ClaimInfo {
        id: ClaimId::OrderFormula,
        description: "enumerated |W| equals the product of the degrees, and |W|/|Z(W)| the central index m^(n-1) n!/gcd(p,n)",
        anchor: "degrees of G(m,p,n); order and central index of G(m,p,n)",
    },
    ClaimInfo {
        id: ClaimId::CenterGcd,
        description: "the center, computed by commutation with reflections, consists of |gcd of degrees| scalars",
        anchor: "D, the gcd of all the degrees, is the order of Z(W)",
    },
    ClaimInfo {
        id: ClaimId::RegularCriterion,
        description: "k is regular iff it divides as many degrees as codegrees; regular eigenspaces have dimension #{i : k | d_i}",
        anchor: "regularity criterion via degrees and codegrees",
    },
    ClaimInfo {
        id: ClaimId::RegularHyperplanesFull,
        description: "full groups admit no regular hyperplanes; regular hyperplane numbers match the oracle on every group",
        anchor: "full reflection groups admit no regular hyperplanes",
    },
    ClaimInfo {
        id: ClaimId::StabilizerLemmaA,
        description: "Stab(x) in the extended group is nontrivial iff x lies on a reflecting hyperplane or a proper regular eigenspace",
        anchor: "stabilizer lemma, part (a)",
    },
    ClaimInfo {
        id: ClaimId::StabilizerLemmaB,
        description: "the stabilizer of [x] in W/Z(W) is trivial iff Stab(x) in the extended group is trivial",
        anchor: "stabilizer lemma, part (b)",
    },
    ClaimInfo {
        id: ClaimId::StabilizerLemmaC,
        description: "the scalar action fixes no point W.x nontrivially iff Stab(x) in the extended group lies in W",
        anchor: "stabilizer lemma, part (c)",
    },
    ClaimInfo {
        id: ClaimId::FullGroupCase3,
        description: "rank 2: G(m,p,2) has full group G(2m/gcd(p,2),2,2), which contains every G(m',p',2) with the same extended group",
        anchor: "full group proposition, imprimitive rank-2 case",
    },
    ClaimInfo {
        id: ClaimId::FullGroupCase4,
        description: "rank > 2: G(m,p,n) has full group G(m,gcd(p,n),n); the transposition-type reflection forces m = m'",
        anchor: "full group proposition, imprimitive rank > 2 case",
    },
    ClaimInfo {
        id: ClaimId::ExtendedEqualityLemma,
        description: "for reflection subgroups W of W', the extended groups agree iff [W:Z(W)] = [W':Z(W')]",
        anchor: "equality of extended groups via central indices",
    },
    ClaimInfo {
        id: ClaimId::AllRegularCentralCriterion,
        description: "all regular elements are central iff every regular number divides |Z(W)|",
        anchor: "all regular elements of W are central",
    },
    ClaimInfo {
        id: ClaimId::BraidShadowConsistency,
        description: "integer shadows of the enlarged braid group agree with oracle centers, indices and regular data",
        anchor: "enlarged braid groups: index [W_f:W] and center generated by beta_S",
    },
];

/// Registry entries whose id contains `filter`.
pub fn list_claims(filter: Option<&str>) -> Vec<&'static ClaimInfo> {
    REGISTRY
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.as_str().contains(f)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RangeSpec {
    pub m_max: u32,
    pub n_max: u32,
}

/// All valid `G(m,p,n)` with `2 <= m <= m_max`, `2 <= n <= n_max` under the
/// cap, plus explicit additions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub range: Option<RangeSpec>,
    pub extra: Vec<GroupDescriptor>,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep::range(6, 4)
    }
}

impl Sweep {
    pub fn range(m_max: u32, n_max: u32) -> Self {
        Sweep {
            range: Some(RangeSpec { m_max, n_max }),
            extra: Vec::new(),
        }
    }

    pub fn list(extra: Vec<GroupDescriptor>) -> Self {
        Sweep { range: None, extra }
    }

    /// The swept `(m, p, n)`: range members over the cap are dropped, while
    /// explicit entries over the cap or without a monomial model are errors.
    pub fn resolve(&self, cap: u64) -> Result<Vec<(u32, u32, u32)>, VerifierError> {
        let mut out = Vec::new();
        if let Some(r) = self.range {
            for n in 2..=r.n_max {
                for m in 2..=r.m_max {
                    for p in (1..=m).filter(|p| m % p == 0) {
                        if let Ok(d) = GroupDescriptor::imprimitive(m, p, n) {
                            if group_order(&d) <= cap as u128 {
                                out.push((m, p, n));
                            }
                        }
                    }
                }
            }
        }
        let mut refused = Vec::new();
        for d in &self.extra {
            let GroupDescriptor::Imprimitive { m, p, n } = *d else {
                return Err(VerifierError::NoMatrixModel(*d));
            };
            if group_order(d) > cap as u128 {
                refused.push(format!("{d} (order {})", group_order(d)));
            } else if !out.contains(&(m, p, n)) {
                out.push((m, p, n));
            }
        }
        if !refused.is_empty() {
            return Err(VerifierError::CapExceeded { refused, cap });
        }
        if out.is_empty() {
            return Err(VerifierError::EmptySweep);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Campaign {
    pub claim_id: ClaimId,
    pub sweep: Sweep,
    /// Random vectors per group, for the stabilizer claims; random element
    /// pairs for the closure spot checks.
    pub samples: usize,
    pub seed: u64,
    pub cap: u64,
}

impl Campaign {
    pub fn new(claim_id: ClaimId) -> Self {
        Campaign {
            claim_id,
            sweep: Sweep::default(),
            samples: 100,
            seed: 1,
            cap: DEFAULT_CAP as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub descriptor: String,
    pub witness: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub campaign: Campaign,
    pub groups_checked: usize,
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    /// Seconds.
    pub wall_time: f64,
    pub toolkit_version: String,
    pub status: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("unknown claim {0:?}; the `claims` command lists the registry")]
    UnknownClaim(String),
    #[error("samples must be at least 1")]
    ZeroSamples,
    #[error("the sweep is empty")]
    EmptySweep,
    #[error("above the element cap {cap}: {}", refused.join(", "))]
    CapExceeded { refused: Vec<String>, cap: u64 },
    #[error("{0} has no monomial model; campaigns sweep G(m,p,n) only")]
    NoMatrixModel(GroupDescriptor),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn run_campaign(c: &Campaign) -> Result<VerificationReport, VerifierError> {
    run_campaign_with(c, &Formulas)
}

/// Runs `c` against an arbitrary closed-form model. Groups are checked in
/// parallel; results are collected in sweep order, so the report does not
/// depend on scheduling. Failures never abort the campaign.
pub fn run_campaign_with(c: &Campaign, model: &dyn ArithmeticModel) -> Result<VerificationReport, VerifierError> {
    if c.samples == 0 {
        return Err(VerifierError::ZeroSamples);
    }
    let groups = c.sweep.resolve(c.cap)?;
    let start = Instant::now();
    let outcomes: Vec<claims::Outcome> = groups
        .par_iter()
        .map(|&g| claims::check(c, model, g, &groups))
        .collect();
    let groups_checked = outcomes.iter().filter(|o| o.applicable).count();
    let checks_run = outcomes.iter().map(|o| o.checks).sum();
    let failures: Vec<Failure> = outcomes.into_iter().flat_map(|o| o.failures).collect();
    Ok(VerificationReport {
        campaign: c.clone(),
        groups_checked,
        checks_run,
        status: if failures.is_empty() { Status::Pass } else { Status::Fail },
        failures,
        wall_time: start.elapsed().as_secs_f64(),
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}
