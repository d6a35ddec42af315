//! Quiver representations with a King-type stability parameter.

use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexRational, DiagonalOnePs, GroupSpec, Rational, WeightData};
use crate::error::{Error, Result};

use super::status::{Evidence, NotStableReason, StabilityStatus, Verdict};

/// Largest vertex count for which subrepresentations are enumerated exhaustively.
pub const MAX_THIN_VERTICES: usize = 20;

/// Quiver with dimension vector `v` and admissible stability parameter `θ`
/// (`Σ θ_i v_i = 0`). Vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuiverSpec")]
pub struct QuiverSpec {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    dim_vector: Vec<usize>,
    theta: Vec<i64>,
}

#[derive(Deserialize)]
struct RawQuiverSpec {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    dim_vector: Vec<usize>,
    theta: Vec<i64>,
}

impl TryFrom<RawQuiverSpec> for QuiverSpec {
    type Error = Error;

    fn try_from(raw: RawQuiverSpec) -> Result<Self> {
        QuiverSpec::new(raw.vertex_count, raw.arrows, raw.dim_vector, raw.theta)
    }
}

impl QuiverSpec {
    pub fn new(
        vertex_count: usize,
        arrows: Vec<(usize, usize)>,
        dim_vector: Vec<usize>,
        theta: Vec<i64>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Validation("quiver needs at least one vertex".into()));
        }
        if dim_vector.len() != vertex_count || theta.len() != vertex_count {
            return Err(Error::Validation(format!(
                "dimension vector has {} entries and theta has {}, expected {vertex_count}",
                dim_vector.len(),
                theta.len()
            )));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertex_count || t >= vertex_count) {
            return Err(Error::Validation(format!(
                "arrow {}->{} leaves the vertex range 1..={vertex_count}",
                s + 1,
                t + 1
            )));
        }
        let pairing: i64 = theta.iter().zip(&dim_vector).map(|(a, &v)| a * v as i64).sum();
        if pairing != 0 {
            return Err(Error::Validation(format!(
                "theta is not admissible: sum of theta_i * v_i must be 0, got {pairing}"
            )));
        }
        Ok(QuiverSpec {
            vertex_count,
            arrows,
            dim_vector,
            theta,
        })
    }

    /// The `arrows`-Kronecker quiver `1 ⇉ 2` with `v = (1, 1)` and `θ = (1, −1)`.
    pub fn kronecker(arrows: usize) -> Self {
        QuiverSpec::new(2, vec![(0, 1); arrows], vec![1, 1], vec![1, -1]).expect("admissible")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn dim_vector(&self) -> &[usize] {
        &self.dim_vector
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn is_thin(&self) -> bool {
        self.dim_vector.iter().all(|&v| v <= 1)
    }

    /// Vertices with nonzero dimension, in order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&i| self.dim_vector[i] > 0).collect()
    }

    /// `A_{ij}` = number of arrows `i → j`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0; self.vertex_count]; self.vertex_count];
        for &(s, t) in &self.arrows {
            a[s][t] += 1;
        }
        a
    }

    /// `∏_{v_i > 0} GL_{v_i}`, one factor per support vertex.
    pub fn group(&self) -> GroupSpec {
        GroupSpec::new(self.support().iter().map(|&i| self.dim_vector[i]).collect(), 0)
            .expect("support dimensions are positive")
    }

    /// Factor index of each vertex in [`QuiverSpec::group`].
    fn factor_of_vertex(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.dim_vector
            .iter()
            .map(|&v| {
                (v > 0).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    }

    fn vertex_weights<'a>(&self, lambda: &'a DiagonalOnePs) -> Result<Vec<&'a [i64]>> {
        lambda.check_shape(&self.group())?;
        Ok(self
            .factor_of_vertex()
            .iter()
            .map(|f| f.map_or(&[][..], |f| lambda.gl_weights[f].as_slice()))
            .collect())
    }

    /// Dimension of the negative weight space of `⊕_a Hom(C^{v_s}, C^{v_t})`.
    pub fn negative_weight_dim(&self, lambda: &DiagonalOnePs) -> Result<usize> {
        let w = self.vertex_weights(lambda)?;
        Ok(self
            .arrows
            .iter()
            .map(|&(s, t)| {
                w[t].iter()
                    .flat_map(|wt| w[s].iter().map(move |ws| wt - ws))
                    .filter(|&x| x < 0)
                    .count()
            })
            .sum())
    }

    /// Representative 1-PS of the class attached to a sub-dimension vector
    /// `d'`: weight 0 on a `d'_i`-dimensional subspace at each vertex and
    /// weight −1 on its complement.
    pub fn sub_dimension_one_ps(&self, sub: &[usize]) -> Result<DiagonalOnePs> {
        if sub.len() != self.vertex_count || sub.iter().zip(&self.dim_vector).any(|(d, v)| d > v) {
            return Err(Error::Shape(format!(
                "sub-dimension vector {sub:?} does not fit {:?}",
                self.dim_vector
            )));
        }
        let gl = self
            .support()
            .iter()
            .map(|&i| {
                let mut ws = vec![0; sub[i]];
                ws.resize(self.dim_vector[i], -1);
                ws
            })
            .collect();
        Ok(DiagonalOnePs::new(gl, vec![]))
    }

    /// Diagonal 1-PS with one weight per support vertex of a thin quiver.
    pub fn thin_one_ps(&self, vertex_weights: &[i64]) -> Result<DiagonalOnePs> {
        if !self.is_thin() || vertex_weights.len() != self.vertex_count {
            return Err(Error::Shape(
                "thin 1-PS needs a thin quiver and one weight per vertex".into(),
            ));
        }
        Ok(DiagonalOnePs::new(
            self.support().iter().map(|&i| vec![vertex_weights[i]]).collect(),
            vec![],
        ))
    }
}

/// `χ(d, e) = d (I − A) eᵀ`.
pub fn euler_form(spec: &QuiverSpec, d: &[i64], e: &[i64]) -> Result<i64> {
    let n = spec.vertex_count();
    if d.len() != n || e.len() != n {
        return Err(Error::Shape(format!(
            "euler form of vectors of length {} and {}, quiver has {n} vertices",
            d.len(),
            e.len()
        )));
    }
    let a = spec.adjacency();
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            let identity = i64::from(i == j);
            total += d[i] * (identity - a[i][j]) * e[j];
        }
    }
    Ok(total)
}

/// A representation with every `v_i ≤ 1`: one scalar per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawThinQuiverRep")]
pub struct ThinQuiverRep {
    spec: QuiverSpec,
    values: Vec<ComplexRational>,
}

#[derive(Deserialize)]
struct RawThinQuiverRep {
    spec: QuiverSpec,
    values: Vec<ComplexRational>,
}

impl TryFrom<RawThinQuiverRep> for ThinQuiverRep {
    type Error = Error;

    fn try_from(raw: RawThinQuiverRep) -> Result<Self> {
        ThinQuiverRep::new(raw.spec, raw.values)
    }
}

impl ThinQuiverRep {
    pub fn new(spec: QuiverSpec, values: Vec<ComplexRational>) -> Result<Self> {
        if !spec.is_thin() {
            return Err(Error::Validation(
                "only thin representations (all dimensions <= 1) are supported".into(),
            ));
        }
        if values.len() != spec.arrows.len() {
            return Err(Error::Shape(format!(
                "{} arrow values for {} arrows",
                values.len(),
                spec.arrows.len()
            )));
        }
        let dims = &spec.dim_vector;
        if let Some(a) = spec
            .arrows
            .iter()
            .zip(&values)
            .position(|(&(s, t), val)| (dims[s] == 0 || dims[t] == 0) && !val.is_zero())
        {
            return Err(Error::Validation(format!(
                "arrow {} touches a zero-dimensional vertex but carries a nonzero value",
                a + 1
            )));
        }
        Ok(ThinQuiverRep { spec, values })
    }

    pub fn spec(&self) -> &QuiverSpec {
        &self.spec
    }

    pub fn values(&self) -> &[ComplexRational] {
        &self.values
    }

    pub(crate) fn with_values(&self, values: Vec<ComplexRational>) -> Self {
        ThinQuiverRep {
            spec: self.spec.clone(),
            values,
        }
    }

    pub(crate) fn coordinate_weights(&self, lambda: &DiagonalOnePs) -> Result<Vec<i64>> {
        let w = self.spec.vertex_weights(lambda)?;
        Ok(self
            .spec
            .arrows
            .iter()
            .map(|&(s, t)| match (w[s].first(), w[t].first()) {
                (Some(ws), Some(wt)) => wt - ws,
                _ => 0,
            })
            .collect())
    }

    /// Vertex scaling `x_a ↦ g_t x_a g_s⁻¹`; `scalars` has one entry per vertex.
    pub fn act(&self, scalars: &[ComplexRational]) -> Result<Self> {
        if scalars.len() != self.spec.vertex_count || scalars.iter().any(ComplexRational::is_zero) {
            return Err(Error::Shape(
                "vertex scaling needs one nonzero scalar per vertex".into(),
            ));
        }
        let values = self
            .spec
            .arrows
            .iter()
            .zip(&self.values)
            .map(|(&(s, t), x)| &(&scalars[t] * x) / &scalars[s])
            .collect();
        Ok(self.with_values(values))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let c = ComplexRational::real(c.clone());
        self.with_values(self.values.iter().map(|x| x * &c).collect())
    }
}

/// Exact stability of a thin representation by exhaustive search over vertex
/// subsets closed under the nonzero arrows.
pub fn quiver_thin_status(rep: &ThinQuiverRep) -> Result<StabilityStatus> {
    let spec = &rep.spec;
    if spec.vertex_count > MAX_THIN_VERTICES {
        return Err(Error::Size {
            what: "vertex count",
            actual: spec.vertex_count,
            limit: MAX_THIN_VERTICES,
        });
    }
    let support = spec.support();
    if support.is_empty() {
        return Err(Error::Domain("dimension vector is zero".into()));
    }
    let bit: Vec<Option<usize>> = {
        let mut b = vec![None; spec.vertex_count];
        for (k, &i) in support.iter().enumerate() {
            b[i] = Some(k);
        }
        b
    };
    // Each nonzero arrow forces: source in S ⇒ target in S.
    let edges: Vec<(usize, usize)> = spec
        .arrows
        .iter()
        .zip(&rep.values)
        .filter(|(_, x)| !x.is_zero())
        .filter_map(|(&(s, t), _)| Some((bit[s]?, bit[t]?)))
        .collect();
    let full: u32 = (1u32 << support.len()) - 1;
    let mut best: Option<(i64, u32)> = None;
    for mask in 1..full {
        let closed = edges.iter().all(|&(s, t)| mask & (1 << s) == 0 || mask & (1 << t) != 0);
        if !closed {
            continue;
        }
        let slope: i64 = (0..support.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| spec.theta[support[k]])
            .sum();
        if slope >= 0 && best.is_none_or(|(b, _)| slope > b) {
            best = Some((slope, mask));
        }
    }
    let verdict = match best {
        None => Verdict::Stable,
        Some((s, _)) if s > 0 => Verdict::Unstable,
        Some(_) => Verdict::NotStable(NotStableReason::StrictlySemistable),
    };
    let evidence = Evidence::Quiver {
        destabilizing_support: best.map(|(_, mask)| {
            (0..support.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| support[k])
                .collect()
        }),
        slope: best.map(|(s, _)| s),
    };
    Ok(StabilityStatus { verdict, evidence })
}
