//! Identity catalog and machine-readable check reports.
//!
//! Every identity the library implements appears exactly once in
//! [`IdentityId`]; the catalog is closed. A check evaluates both sides
//! of one identity at one [`EvalPoint`] and records the residual in a
//! [`CheckReport`]; a suite aggregates many checks into a
//! [`SuiteReport`].

use serde::{Deserialize, Serialize};

/// Relative-residual scale floor: prevents `0/0` at points where both
/// sides vanish.
pub const SCALE_FLOOR: f64 = 1e-30;

/// The closed catalog of numerically checkable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Product of two generalized gamma values as a 2D polar integral.
    #[serde(rename = "THM1_PRODUCT")]
    Thm1Product,
    /// `B_p(x, 1-y) = sum_n (y)_n / n! B_p(x+n, 1)`.
    #[serde(rename = "THM2_SUMMATION")]
    Thm2Summation,
    /// `B_p(x, y) = B_p(x, y+1) + B_p(x+1, y)`.
    #[serde(rename = "THM3_FUNCTIONAL")]
    Thm3Functional,
    /// `B_p(x, y) = sum_n B_p(x+n, y+1)`.
    #[serde(rename = "THM4_SUMMATION")]
    Thm4Summation,
    /// Pairwise agreement of the five beta representations.
    #[serde(rename = "THM5_REPRESENTATIONS")]
    Thm5Representations,
    /// Mellin transform of `B_p` in `p`.
    #[serde(rename = "THM6_MELLIN_BETA")]
    Thm6MellinBeta,
    /// Gauss family: series path against the Euler integral path.
    #[serde(rename = "GHF_SERIES_VS_INTEGRAL")]
    GhfSeriesVsIntegral,
    /// Confluent family: series path against the integral path.
    #[serde(rename = "CHF_SERIES_VS_INTEGRAL")]
    ChfSeriesVsIntegral,
    /// Gauss derivative formula against finite differences.
    #[serde(rename = "DIFF_GHF")]
    DiffGhf,
    /// Confluent derivative formula against finite differences.
    #[serde(rename = "DIFF_CHF")]
    DiffChf,
    /// Mellin transform of the Gauss family in `p`.
    #[serde(rename = "MELLIN_GHF")]
    MellinGhf,
    /// Mellin transform of the confluent family in `p`.
    #[serde(rename = "MELLIN_CHF")]
    MellinChf,
    /// Pfaff-type transformation.
    #[serde(rename = "PFAFF")]
    Pfaff,
    /// Argument map `z -> 1 - 1/z` variant.
    #[serde(rename = "REMARK_TRANSFORM_1")]
    RemarkTransform1,
    /// Argument map `z -> z/(1+z)` variant.
    #[serde(rename = "REMARK_TRANSFORM_2")]
    RemarkTransform2,
    /// Kummer-type transformation.
    #[serde(rename = "KUMMER")]
    Kummer,
    /// Contiguous recurrence in the first upper parameter.
    #[serde(rename = "RECURRENCE_DELTA_A")]
    RecurrenceDeltaA,
    /// Evaluation of the Gauss family at `z = 1`.
    #[serde(rename = "VALUE_AT_ONE")]
    ValueAtOne,
    /// Reduction to the exp-kernel extended functions at `(1,1,1)`.
    #[serde(rename = "REDUCTION_CHAUDHRY")]
    ReductionChaudhry,
    /// Reduction to the classical functions at `p = 0`, `(1,1,1)`.
    #[serde(rename = "REDUCTION_CLASSICAL")]
    ReductionClassical,
}

impl IdentityId {
    pub const ALL: [IdentityId; 20] = [
        IdentityId::Thm1Product,
        IdentityId::Thm2Summation,
        IdentityId::Thm3Functional,
        IdentityId::Thm4Summation,
        IdentityId::Thm5Representations,
        IdentityId::Thm6MellinBeta,
        IdentityId::GhfSeriesVsIntegral,
        IdentityId::ChfSeriesVsIntegral,
        IdentityId::DiffGhf,
        IdentityId::DiffChf,
        IdentityId::MellinGhf,
        IdentityId::MellinChf,
        IdentityId::Pfaff,
        IdentityId::RemarkTransform1,
        IdentityId::RemarkTransform2,
        IdentityId::Kummer,
        IdentityId::RecurrenceDeltaA,
        IdentityId::ValueAtOne,
        IdentityId::ReductionChaudhry,
        IdentityId::ReductionClassical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::Thm1Product => "THM1_PRODUCT",
            IdentityId::Thm2Summation => "THM2_SUMMATION",
            IdentityId::Thm3Functional => "THM3_FUNCTIONAL",
            IdentityId::Thm4Summation => "THM4_SUMMATION",
            IdentityId::Thm5Representations => "THM5_REPRESENTATIONS",
            IdentityId::Thm6MellinBeta => "THM6_MELLIN_BETA",
            IdentityId::GhfSeriesVsIntegral => "GHF_SERIES_VS_INTEGRAL",
            IdentityId::ChfSeriesVsIntegral => "CHF_SERIES_VS_INTEGRAL",
            IdentityId::DiffGhf => "DIFF_GHF",
            IdentityId::DiffChf => "DIFF_CHF",
            IdentityId::MellinGhf => "MELLIN_GHF",
            IdentityId::MellinChf => "MELLIN_CHF",
            IdentityId::Pfaff => "PFAFF",
            IdentityId::RemarkTransform1 => "REMARK_TRANSFORM_1",
            IdentityId::RemarkTransform2 => "REMARK_TRANSFORM_2",
            IdentityId::Kummer => "KUMMER",
            IdentityId::RecurrenceDeltaA => "RECURRENCE_DELTA_A",
            IdentityId::ValueAtOne => "VALUE_AT_ONE",
            IdentityId::ReductionChaudhry => "REDUCTION_CHAUDHRY",
            IdentityId::ReductionClassical => "REDUCTION_CLASSICAL",
        }
    }

    pub fn parse(s: &str) -> Option<IdentityId> {
        IdentityId::ALL.iter().copied().find(|id| id.name() == s)
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluation point. Each field is optional; an identity reads the
/// fields it requires and reports a domain error (-> skip) when one is
/// missing or out of range.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EvalPoint {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        })
    }
}

/// Outcome of one identity check at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: IdentityId,
    pub point: EvalPoint,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub abs_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rel_diff: Option<f64>,
    pub tolerance: f64,
    pub status: CheckStatus,
    /// Skip reason or auxiliary diagnostics.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    /// Total underlying function evaluations.
    pub cost: u64,
}

impl CheckReport {
    /// Build a pass/fail report from both sides.
    /// `pass <=> rel_diff <= tolerance or abs_diff <= tolerance * SCALE_FLOOR`
    /// with `rel_diff = |lhs-rhs| / max(|lhs|, |rhs|, SCALE_FLOOR)`.
    pub fn from_sides(
        identity: IdentityId,
        point: EvalPoint,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        cost: u64,
    ) -> CheckReport {
        let abs_diff = (lhs - rhs).abs();
        let rel_diff = abs_diff / lhs.abs().max(rhs.abs()).max(SCALE_FLOOR);
        let pass = rel_diff <= tolerance || abs_diff <= tolerance * SCALE_FLOOR;
        CheckReport {
            identity,
            point,
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs_diff: Some(abs_diff),
            rel_diff: Some(rel_diff),
            tolerance,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: None,
            cost,
        }
    }

    /// Mark an otherwise passing report as failed with a reason
    /// (used for side conditions such as monotonicity).
    pub fn fail_with(mut self, reason: String) -> CheckReport {
        self.status = CheckStatus::Fail;
        self.detail = Some(reason);
        self
    }

    pub fn skipped(
        identity: IdentityId,
        point: EvalPoint,
        tolerance: f64,
        reason: String,
    ) -> CheckReport {
        CheckReport {
            identity,
            point,
            lhs: None,
            rhs: None,
            abs_diff: None,
            rel_diff: None,
            tolerance,
            status: CheckStatus::Skip,
            detail: Some(reason),
            cost: 0,
        }
    }
}

/// Aggregate of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Worst relative residual observed per identity, in catalog order;
    /// identities with no residual-producing check are omitted.
    pub worst_residual: Vec<(IdentityId, f64)>,
    pub total_cost: u64,
}

impl SuiteReport {
    pub fn from_checks(checks: Vec<CheckReport>) -> SuiteReport {
        let passed = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
        let failed = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        let skipped = checks.iter().filter(|c| c.status == CheckStatus::Skip).count();
        let total_cost = checks.iter().map(|c| c.cost).sum();
        let mut worst_residual = Vec::new();
        for id in IdentityId::ALL {
            let worst = checks
                .iter()
                .filter(|c| c.identity == id)
                .filter_map(|c| c.rel_diff)
                .fold(None::<f64>, |acc, r| Some(acc.map_or(r, |a| a.max(r))));
            if let Some(w) = worst {
                worst_residual.push((id, w));
            }
        }
        SuiteReport {
            checks,
            passed,
            failed,
            skipped,
            worst_residual,
            total_cost,
        }
    }

    /// Human-readable markdown table, one row per check.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| identity | status | lhs | rhs | rel_diff | tolerance |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6e}"));
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {:.1e} |\n",
                c.identity,
                c.status,
                fmt(c.lhs),
                fmt(c.rhs),
                fmt(c.rel_diff),
                c.tolerance
            ));
        }
        out.push_str(&format!(
            "\n{} passed, {} failed, {} skipped; total evaluations {}\n",
            self.passed, self.failed, self.skipped, self.total_cost
        ));
        out
    }
}
