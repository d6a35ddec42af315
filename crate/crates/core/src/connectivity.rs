//! From stratum tables to `d_min`, connectivity of the stable locus, and
//! homotopy groups of the stable quotient.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{GroupSpec, OrbitConvention};
use crate::error::Result;
use crate::families::{enumerate_strata, DagSpec, FamilySpec, FamilyTag, StratumClass};

/// `min_j (2m_j − 2·dim G·λ_j)`, or `None` when there are no destabilizing classes.
pub fn d_min(strata: &[StratumClass]) -> Option<i64> {
    strata.iter().map(|s| s.value).min()
}

/// What the connectivity bound says about `V^st`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// `π_q(V^st) = 0` for `0 ≤ q ≤ c`.
    Connected(i64),
    /// `d_min ≤ 1`: the bound is vacuous.
    NoInformation,
    /// No destabilizing classes, so `V^st = V`.
    Contractible,
}

impl Connectivity {
    /// Whether `π_q(V^st)` is known to vanish.
    pub fn kills(self, q: i64) -> bool {
        match self {
            Connectivity::Connected(c) => q >= 0 && q <= c,
            Connectivity::NoInformation => false,
            Connectivity::Contractible => q >= 0,
        }
    }

    pub fn statement(self) -> String {
        match self {
            Connectivity::Connected(c) => format!("π_q(V^st)=0 for q ≤ {c}"),
            Connectivity::NoInformation => "no information (d_min ≤ 1)".into(),
            Connectivity::Contractible => "no destabilizing classes: V^st = V is contractible".into(),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Connected(c) => s.serialize_i64(*c),
            Connectivity::NoInformation => s.serialize_str("no_information"),
            Connectivity::Contractible => s.serialize_str("contractible"),
        }
    }
}

impl<'de> Deserialize<'de> for Connectivity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(c) => Ok(Connectivity::Connected(c)),
            Raw::Str(s) if s == "no_information" => Ok(Connectivity::NoInformation),
            Raw::Str(s) if s == "contractible" => Ok(Connectivity::Contractible),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("unknown connectivity {s:?}"))),
        }
    }
}

/// `d − 2` when `d ≥ 2`, otherwise no information.
pub fn connectivity_bound(d: i64) -> Connectivity {
    if d >= 2 {
        Connectivity::Connected(d - 2)
    } else {
        Connectivity::NoInformation
    }
}

/// `sphere_dim + 1 + 2·dim(G·λ) < 2m`: a generic family of maps from the
/// sphere avoids this stratum.
pub fn dimension_inequality(sphere_dim: usize, s: &StratumClass) -> bool {
    sphere_dim + 1 + 2 * s.orbit_dim < 2 * s.m
}

/// Finitely generated abelian group as far as the tables here can say.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianGroup {
    Zero,
    Free(u32),
    Unknown,
}

impl AbelianGroup {
    /// Direct sum; anything unknown poisons the result.
    pub fn direct_sum(self, other: AbelianGroup) -> AbelianGroup {
        use AbelianGroup::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Zero, g) | (g, Zero) => g,
            (Free(a), Free(b)) => Free(a + b),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::Zero => f.write_str("0"),
            AbelianGroup::Free(r) => write!(f, "Z^{r}"),
            AbelianGroup::Unknown => f.write_str("unknown"),
        }
    }
}

impl AbelianGroup {
    /// Unicode form for terminal output: `0`, `ℤ`, `ℤ²`, `unknown`.
    pub fn pretty(self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        match self {
            AbelianGroup::Zero => "0".into(),
            AbelianGroup::Free(1) => "ℤ".into(),
            AbelianGroup::Free(r) => {
                let exp: String = r
                    .to_string()
                    .chars()
                    .map(|c| SUP[c.to_digit(10).unwrap() as usize])
                    .collect();
                format!("ℤ{exp}")
            }
            AbelianGroup::Unknown => "unknown".into(),
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "0" => Ok(AbelianGroup::Zero),
            "unknown" => Ok(AbelianGroup::Unknown),
            _ => s
                .strip_prefix("Z^")
                .and_then(|r| r.parse().ok())
                .filter(|&r: &u32| r >= 1)
                .map(AbelianGroup::Free)
                .ok_or_else(|| serde::de::Error::custom(format!("bad group {s:?}"))),
        }
    }
}

/// `π_i(U(k))` in the stable range `i ≤ 2k − 1`; unknown above it.
pub fn unitary_pi(i: u32, k: usize) -> AbelianGroup {
    if i == 0 {
        AbelianGroup::Zero
    } else if (i as usize) < 2 * k {
        if i % 2 == 1 {
            AbelianGroup::Free(1)
        } else {
            AbelianGroup::Zero
        }
    } else {
        AbelianGroup::Unknown
    }
}

/// `π_i(S¹)`.
fn circle_pi(i: u32) -> AbelianGroup {
    if i == 1 {
        AbelianGroup::Free(1)
    } else {
        AbelianGroup::Zero
    }
}

/// `π_i(G)` for a product of GL factors and a torus, via `GL_n ≃ U(n)`.
pub fn group_pi(g: &GroupSpec, i: u32) -> AbelianGroup {
    let gl = g
        .gl_ranks()
        .iter()
        .fold(AbelianGroup::Zero, |acc, &n| acc.direct_sum(unitary_pi(i, n)));
    (0..g.torus_rank()).fold(gl, |acc, _| acc.direct_sum(circle_pi(i)))
}

/// `π_q(V^st / G) ≅ π_{q−1}(G)` for `1 ≤ q < d − 1`, path-connected at `q = 0`
/// when `d ≥ 2`, unknown elsewhere. Assumes the action on `V^st` is free.
pub fn quotient_pi(g: &GroupSpec, d: i64, q: u32) -> AbelianGroup {
    let q_wide = i64::from(q);
    if q == 0 {
        return if d >= 2 {
            AbelianGroup::Zero
        } else {
            AbelianGroup::Unknown
        };
    }
    if q_wide < d.saturating_sub(1) {
        group_pi(g, q - 1)
    } else {
        AbelianGroup::Unknown
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyEntry {
    pub q: u32,
    pub group: AbelianGroup,
}

pub fn homotopy_table(g: &GroupSpec, d: Option<i64>, max_q: u32) -> Vec<HomotopyEntry> {
    let d = d.unwrap_or(i64::MAX);
    (0..=max_q)
        .map(|q| HomotopyEntry {
            q,
            group: quotient_pi(g, d, q),
        })
        .collect()
}

/// Smallest sample counts at which the DAG stable locus is guaranteed
/// path-connected and simply connected, for fixed `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagThresholds {
    pub path_connected_min_samples: usize,
    pub simply_connected_min_samples: usize,
}

/// Scan `n = 1, 2, …` through the stratum enumeration. Each class value grows
/// with `n`, so the first hit is the threshold.
pub fn dag_thresholds(k: usize, conv: OrbitConvention) -> Result<DagThresholds> {
    let connectivity_at = |n: usize| -> Result<Connectivity> {
        let spec = FamilySpec::Dag(DagSpec::new(n, k)?);
        Ok(match d_min(&enumerate_strata(&spec, conv)?) {
            Some(d) => connectivity_bound(d),
            None => Connectivity::Contractible,
        })
    };
    let mut path = None;
    let mut n = 1;
    loop {
        let c = connectivity_at(n)?;
        if path.is_none() && c.kills(0) {
            path = Some(n);
        }
        if c.kills(1) {
            return Ok(DagThresholds {
                path_connected_min_samples: path.unwrap_or(n),
                simply_connected_min_samples: n,
            });
        }
        n += 1;
    }
}

/// Full analysis of one family under one orbit convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub family: FamilyTag,
    pub group: GroupSpec,
    pub convention: OrbitConvention,
    pub strata: Vec<StratumClass>,
    pub d_min: Option<i64>,
    pub connectivity: Connectivity,
    pub connectivity_statement: String,
    /// Empty unless a homotopy table was requested.
    pub homotopy: Vec<HomotopyEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<DagThresholds>,
    /// Fields whose values change with the orbit convention.
    pub convention_dependent: Vec<String>,
    pub notes: Vec<String>,
}

/// Families whose group can never act freely, because a subgroup acts trivially.
pub fn free_action_caveat(spec: &FamilySpec) -> Option<String> {
    match spec {
        FamilySpec::Quiver(_) => Some(
            "the diagonal scalars act trivially on quiver representations, so G never acts freely; \
             the table is the formal value for G, not for the quotient by the effective group"
                .to_string(),
        ),
        _ => None,
    }
}

pub fn analyze(spec: &FamilySpec, conv: OrbitConvention, max_q: Option<u32>) -> Result<ConnectivityReport> {
    let strata = enumerate_strata(spec, conv)?;
    let d = d_min(&strata);
    let connectivity = d.map_or(Connectivity::Contractible, connectivity_bound);
    let group = spec.group();
    let homotopy = max_q.map_or_else(Vec::new, |q| homotopy_table(&group, d, q));
    let thresholds = match spec {
        FamilySpec::Dag(dag) => Some(dag_thresholds(dag.k, conv)?),
        _ => None,
    };
    let mut notes = Vec::new();
    match spec {
        FamilySpec::Quiver(_) => notes.push(
            "strata include every sub-dimension vector with theta.d' >= 0, realized or not; d_min is a lower bound"
                .to_string(),
        ),
        FamilySpec::Control(_) | FamilySpec::Dag(_) => notes.push(
            "strata are the single-step {-1, 0} weight classes; completeness of this list is assumed".to_string(),
        ),
    }
    if !homotopy.is_empty() {
        notes.push(
            "homotopy of V^st/G assumes G acts freely on V^st; U(k) is tabulated only in the stable range".to_string(),
        );
        notes.extend(free_action_caveat(spec));
    }
    Ok(ConnectivityReport {
        family: spec.tag(),
        group,
        convention: conv,
        strata,
        d_min: d,
        connectivity,
        connectivity_statement: connectivity.statement(),
        homotopy,
        thresholds,
        convention_dependent: [
            "d_min",
            "connectivity",
            "connectivity_statement",
            "strata[].orbit_dim",
            "strata[].value",
            "strata[].convention",
            "homotopy",
            "thresholds",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        notes,
    })
}
