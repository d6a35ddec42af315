use serde::{Deserialize, Serialize};

/// Why a point that is not stable was classified that way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotStableReason {
    /// Semistable but some subobject has slope exactly zero.
    StrictlySemistable,
    /// The parent block of a DAG sample lacks full column rank. Polystable and
    /// unstable samples are not told apart.
    ParentRankDeficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    NotStable(NotStableReason),
    Unstable,
}

impl Verdict {
    pub fn is_stable(self) -> bool {
        matches!(self, Verdict::Stable)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::NotStable(NotStableReason::StrictlySemistable) => "not stable (strictly semistable)",
            Verdict::NotStable(NotStableReason::ParentRankDeficient) => "not stable (parent block rank-deficient)",
            Verdict::Unstable => "unstable",
        }
    }
}

/// Family-specific data backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Evidence {
    Quiver {
        /// Vertex subset (0-based) of the subrepresentation with the largest
        /// slope among those with non-negative slope, if any.
        destabilizing_support: Option<Vec<usize>>,
        slope: Option<i64>,
    },
    Control {
        /// Dimension of the smallest `A`-invariant subspace containing `Im B`.
        invariant_subspace_dim: usize,
    },
    Dag {
        parent_rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityStatus {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl StabilityStatus {
    pub fn is_stable(&self) -> bool {
        self.verdict.is_stable()
    }
}
