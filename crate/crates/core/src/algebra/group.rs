//! Products of general linear groups and a torus, their one-parameter
//! subgroups, characters, and the dimension counts attached to them.

use std::collections::BTreeMap;
use std::fmt;

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `GL_{n_1} × … × GL_{n_f} × (C^×)^{torus_rank}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    gl_ranks: Vec<usize>,
    torus_rank: usize,
}

impl GroupSpec {
    pub fn new(gl_ranks: Vec<usize>, torus_rank: usize) -> Result<Self> {
        if gl_ranks.contains(&0) {
            return Err(Error::Validation("GL factors must have positive rank".into()));
        }
        Ok(GroupSpec { gl_ranks, torus_rank })
    }

    pub fn gl(n: usize) -> Self {
        GroupSpec::new(vec![n], 0).expect("positive rank")
    }

    pub fn gl_ranks(&self) -> &[usize] {
        &self.gl_ranks
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn dim(&self) -> usize {
        group_dim(self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.gl_ranks.iter().map(|n| format!("GL_{n}")).collect();
        match self.torus_rank {
            0 => {}
            1 => parts.push("T^1".into()),
            t => parts.push(format!("T^{t}")),
        }
        if parts.is_empty() {
            write!(f, "trivial group")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Integer weight data shared by concrete 1-PS and conjugacy classes.
pub trait WeightData {
    /// One weight list per GL factor.
    fn gl_weights(&self) -> &[Vec<i64>];
    fn torus_weights(&self) -> &[i64];

    fn check_shape(&self, g: &GroupSpec) -> Result<()> {
        let gl = self.gl_weights();
        let ok = gl.len() == g.gl_ranks.len()
            && gl.iter().zip(&g.gl_ranks).all(|(w, &n)| w.len() == n)
            && self.torus_weights().len() == g.torus_rank;
        if ok {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "weights {:?} / {:?} do not fit {g}",
                gl,
                self.torus_weights()
            )))
        }
    }

    fn is_trivial(&self) -> bool {
        self.gl_weights().iter().flatten().all(|&w| w == 0) && self.torus_weights().iter().all(|&w| w == 0)
    }
}

/// A one-parameter subgroup diagonal in the standard coordinates:
/// `t ↦ (diag(t^{w_{1,1}}, …), …, t^{s_1}, …)`. Weight order is coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalOnePs {
    pub gl_weights: Vec<Vec<i64>>,
    pub torus_weights: Vec<i64>,
}

impl DiagonalOnePs {
    pub fn new(gl_weights: Vec<Vec<i64>>, torus_weights: Vec<i64>) -> Self {
        DiagonalOnePs {
            gl_weights,
            torus_weights,
        }
    }

    pub fn trivial(g: &GroupSpec) -> Self {
        DiagonalOnePs {
            gl_weights: g.gl_ranks.iter().map(|&n| vec![0; n]).collect(),
            torus_weights: vec![0; g.torus_rank],
        }
    }

    /// `t ↦ λ(t^p)`.
    pub fn power(&self, p: i64) -> Self {
        DiagonalOnePs {
            gl_weights: self
                .gl_weights
                .iter()
                .map(|ws| ws.iter().map(|w| w * p).collect())
                .collect(),
            torus_weights: self.torus_weights.iter().map(|w| w * p).collect(),
        }
    }

    pub fn class(&self) -> OnePSClass {
        OnePSClass::new(self.gl_weights.clone(), self.torus_weights.clone())
    }
}

impl WeightData for DiagonalOnePs {
    fn gl_weights(&self) -> &[Vec<i64>] {
        &self.gl_weights
    }
    fn torus_weights(&self) -> &[i64] {
        &self.torus_weights
    }
}

/// Conjugacy class of a 1-PS in normal form: each GL factor's weights sorted
/// non-increasing, and the gcd of all weights divided out.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OnePSClass {
    gl_weights: Vec<Vec<i64>>,
    torus_weights: Vec<i64>,
}

impl OnePSClass {
    pub fn new(mut gl_weights: Vec<Vec<i64>>, mut torus_weights: Vec<i64>) -> Self {
        for ws in &mut gl_weights {
            ws.sort_unstable_by(|a, b| b.cmp(a));
        }
        let content = gl_weights
            .iter()
            .flatten()
            .chain(&torus_weights)
            .fold(0i64, |g, &w| g.gcd(&w));
        if content > 1 {
            for w in gl_weights.iter_mut().flatten().chain(&mut torus_weights) {
                *w /= content;
            }
        }
        OnePSClass {
            gl_weights,
            torus_weights,
        }
    }

    /// The diagonal representative whose weights are already in normal order.
    pub fn representative(&self) -> DiagonalOnePs {
        DiagonalOnePs::new(self.gl_weights.clone(), self.torus_weights.clone())
    }
}

impl WeightData for OnePSClass {
    fn gl_weights(&self) -> &[Vec<i64>] {
        &self.gl_weights
    }
    fn torus_weights(&self) -> &[i64] {
        &self.torus_weights
    }
}

/// A character `g ↦ ∏ det(g_i)^{d_i} · ∏ t_j^{e_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub det_powers: Vec<i64>,
    pub torus_exponents: Vec<i64>,
}

impl Character {
    pub fn new(det_powers: Vec<i64>, torus_exponents: Vec<i64>) -> Self {
        Character {
            det_powers,
            torus_exponents,
        }
    }
}

/// How the dimension of the conjugation orbit `G·λ` is counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitConvention {
    /// `dim G − dim C_G(λ)`.
    Centralizer,
    /// `dim G − dim P(λ)`, the dimension of the flag variety of the weight filtration.
    Parabolic,
}

impl OrbitConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitConvention::Centralizer => "centralizer",
            OrbitConvention::Parabolic => "parabolic",
        }
    }
}

impl fmt::Display for OrbitConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for OrbitConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "centralizer" => Ok(OrbitConvention::Centralizer),
            "parabolic" => Ok(OrbitConvention::Parabolic),
            _ => Err(Error::schema(
                "orbit_convention",
                format!("expected `centralizer` or `parabolic`, got {s:?}"),
            )),
        }
    }
}

fn multiplicities(weights: &[i64]) -> Vec<usize> {
    let mut counts = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_insert(0usize) += 1;
    }
    counts.into_values().collect()
}

pub fn group_dim(g: &GroupSpec) -> usize {
    g.gl_ranks.iter().map(|n| n * n).sum::<usize>() + g.torus_rank
}

/// Sum over GL factors of the squared multiplicities of each distinct weight,
/// plus the torus rank.
pub fn centralizer_dim(g: &GroupSpec, lambda: &impl WeightData) -> Result<usize> {
    lambda.check_shape(g)?;
    let gl: usize = lambda
        .gl_weights()
        .iter()
        .map(|ws| multiplicities(ws).iter().map(|m| m * m).sum::<usize>())
        .sum();
    Ok(gl + g.torus_rank)
}

/// Dimension of the parabolic subgroup of block-triangular elements that
/// preserve the weight filtration: `Σ m_i² + Σ_{i<j} m_i m_j` per factor.
pub fn parabolic_dim(g: &GroupSpec, lambda: &impl WeightData) -> Result<usize> {
    lambda.check_shape(g)?;
    let gl: usize = lambda
        .gl_weights()
        .iter()
        .map(|ws| {
            let ms = multiplicities(ws);
            let total: usize = ms.iter().sum();
            let squares: usize = ms.iter().map(|m| m * m).sum();
            // Σ_{i<j} m_i m_j = (total² − Σ m_i²) / 2
            squares + (total * total - squares) / 2
        })
        .sum();
    Ok(gl + g.torus_rank)
}

pub fn orbit_dim(g: &GroupSpec, lambda: &impl WeightData, conv: OrbitConvention) -> Result<usize> {
    let stab = match conv {
        OrbitConvention::Centralizer => centralizer_dim(g, lambda)?,
        OrbitConvention::Parabolic => parabolic_dim(g, lambda)?,
    };
    Ok(group_dim(g) - stab)
}

/// `⟨χ, λ⟩ = Σ_i d_i·(Σ weights of factor i) + Σ_j e_j·s_j`.
pub fn character_pairing(chi: &Character, lambda: &impl WeightData) -> Result<i64> {
    let gl = lambda.gl_weights();
    let torus = lambda.torus_weights();
    if chi.det_powers.len() != gl.len() || chi.torus_exponents.len() != torus.len() {
        return Err(Error::Shape(format!(
            "character with {} det powers and {} torus exponents paired with a 1-PS of {} GL factors and torus rank {}",
            chi.det_powers.len(),
            chi.torus_exponents.len(),
            gl.len(),
            torus.len()
        )));
    }
    let gl_part: i64 = chi
        .det_powers
        .iter()
        .zip(gl)
        .map(|(d, ws)| d * ws.iter().sum::<i64>())
        .sum();
    let torus_part: i64 = chi.torus_exponents.iter().zip(torus).map(|(e, s)| e * s).sum();
    Ok(gl_part + torus_part)
}
