//! The three model families: construction, 1-PS weight bookkeeping, exact
//! stability checks, and enumeration of destabilizing classes.

pub mod control;
pub mod dag;
pub mod quiver;
pub mod status;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::modular::{self, ModMatrix};
use crate::algebra::{
    character_pairing, orbit_dim, Character, ComplexRational, DiagonalOnePs, GroupSpec, OnePSClass, OrbitConvention,
    Rational, RationalMatrix, WeightData,
};
use crate::error::{Error, Result};

pub use control::{control_status, controllability_matrix, ControlInstance, ControlSpec};
pub use dag::{dag_solve_mle, dag_stabilize, dag_status, DagInstance, DagSpec};
pub use quiver::{euler_form, quiver_thin_status, QuiverSpec, ThinQuiverRep};
pub use status::{Evidence, NotStableReason, StabilityStatus, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Quiver,
    Control,
    Dag,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Quiver => "quiver",
            FamilyTag::Control => "control",
            FamilyTag::Dag => "dag",
        }
    }
}

/// Parameters of one family, without a chosen point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Quiver(QuiverSpec),
    Control(ControlSpec),
    Dag(DagSpec),
}

impl FamilySpec {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilySpec::Quiver(_) => FamilyTag::Quiver,
            FamilySpec::Control(_) => FamilyTag::Control,
            FamilySpec::Dag(_) => FamilyTag::Dag,
        }
    }

    pub fn group(&self) -> GroupSpec {
        match self {
            FamilySpec::Quiver(q) => q.group(),
            FamilySpec::Control(c) => c.group(),
            FamilySpec::Dag(d) => d.group(),
        }
    }

    /// The linearizing character, signed so that destabilizing 1-PS pair negatively:
    /// `∏ det(g_i)^{−θ_i}` (quiver), `det` (control), `(A, t) ↦ t` (DAG).
    pub fn character(&self) -> Character {
        match self {
            FamilySpec::Quiver(q) => Character::new(q.support().iter().map(|&i| -q.theta()[i]).collect(), vec![]),
            FamilySpec::Control(_) => Character::new(vec![1], vec![]),
            FamilySpec::Dag(_) => Character::new(vec![0], vec![1]),
        }
    }

    /// Orbit convention used when the caller does not choose one.
    pub fn default_convention(&self) -> OrbitConvention {
        match self {
            FamilySpec::Quiver(_) | FamilySpec::Control(_) => OrbitConvention::Parabolic,
            FamilySpec::Dag(_) => OrbitConvention::Centralizer,
        }
    }

    /// Real dimension count `dim_C V`.
    pub fn ambient_dim(&self) -> usize {
        match self {
            FamilySpec::Quiver(q) => q
                .arrows()
                .iter()
                .map(|&(s, t)| q.dim_vector()[s] * q.dim_vector()[t])
                .sum(),
            FamilySpec::Control(c) => c.n * (c.n + c.m),
            FamilySpec::Dag(d) => d.n * (d.k + 1),
        }
    }
}

/// `dim_C V(λ)_−` for the family's ambient space. Point-independent.
pub fn negative_weight_dim(spec: &FamilySpec, lambda: &DiagonalOnePs) -> Result<usize> {
    match spec {
        FamilySpec::Quiver(q) => q.negative_weight_dim(lambda),
        FamilySpec::Control(c) => c.negative_weight_dim(lambda),
        FamilySpec::Dag(d) => d.negative_weight_dim(lambda),
    }
}

/// Which destabilizing class a stratum row describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StratumDescriptor {
    /// Sub-dimension vector `d'`.
    Quiver { sub_dimension: Vec<usize> },
    /// Dimension `r` of the invariant subspace containing `Im B`.
    Control { r: usize },
    /// Number `j` of redundant parent columns.
    Dag { redundant_columns: usize },
}

impl std::fmt::Display for StratumDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratumDescriptor::Quiver { sub_dimension } => {
                let parts: Vec<String> = sub_dimension.iter().map(ToString::to_string).collect();
                write!(f, "d'=({})", parts.join(","))
            }
            StratumDescriptor::Control { r } => write!(f, "r={r}"),
            StratumDescriptor::Dag { redundant_columns } => write!(f, "j={redundant_columns}"),
        }
    }
}

/// One destabilizing conjugacy class with its rank, orbit dimension and
/// contribution `2m − 2·orbit_dim` to `d_min`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumClass {
    pub family: FamilyTag,
    pub descriptor: StratumDescriptor,
    pub representative: OnePSClass,
    /// `dim_C V(λ)_−`.
    pub m: usize,
    pub orbit_dim: usize,
    pub value: i64,
    /// `⟨χ, λ⟩` with the family character; non-positive for every listed class.
    pub pairing: i64,
    pub convention: OrbitConvention,
}

impl StratumClass {
    fn build(
        spec: &FamilySpec,
        descriptor: StratumDescriptor,
        lambda: DiagonalOnePs,
        conv: OrbitConvention,
    ) -> Result<Self> {
        let group = spec.group();
        let m = negative_weight_dim(spec, &lambda)?;
        let orbit = orbit_dim(&group, &lambda, conv)?;
        let pairing = character_pairing(&spec.character(), &lambda)?;
        Ok(StratumClass {
            family: spec.tag(),
            descriptor,
            representative: lambda.class(),
            m,
            orbit_dim: orbit,
            value: 2 * m as i64 - 2 * orbit as i64,
            pairing,
            convention: conv,
        })
    }
}

/// Destabilizing classes of the family, one per descriptor, with orbit
/// dimensions counted under `conv`.
///
/// Quiver classes cover every `0 < d' < v` with `θ·d' ≥ 0`, realized by a
/// subrepresentation or not, so the resulting `d_min` is a lower bound.
pub fn enumerate_strata(spec: &FamilySpec, conv: OrbitConvention) -> Result<Vec<StratumClass>> {
    match spec {
        FamilySpec::Quiver(q) => {
            if q.dim_vector().iter().all(|&v| v == 0) {
                return Err(Error::Domain("dimension vector is zero".into()));
            }
            let mut out = Vec::new();
            for sub in sub_dimension_vectors(q.dim_vector()) {
                let slope: i64 = sub.iter().zip(q.theta()).map(|(&d, a)| d as i64 * a).sum();
                if slope < 0 {
                    continue;
                }
                let lambda = q.sub_dimension_one_ps(&sub)?;
                out.push(StratumClass::build(
                    spec,
                    StratumDescriptor::Quiver { sub_dimension: sub },
                    lambda,
                    conv,
                )?);
            }
            Ok(out)
        }
        FamilySpec::Control(c) => (1..c.n)
            .map(|r| StratumClass::build(spec, StratumDescriptor::Control { r }, c.flag_one_ps(r), conv))
            .collect(),
        FamilySpec::Dag(d) => (1..=d.k)
            .map(|j| {
                StratumClass::build(
                    spec,
                    StratumDescriptor::Dag { redundant_columns: j },
                    d.redundant_columns_one_ps(j),
                    conv,
                )
            })
            .collect(),
    }
}

/// All `d'` with `0 ≤ d' ≤ v` componentwise, `d' ≠ 0`, `d' ≠ v`, in lexicographic order.
pub fn sub_dimension_vectors(v: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; v.len()];
    loop {
        if cur.iter().any(|&x| x > 0) && cur.as_slice() != v {
            out.push(cur.clone());
        }
        // odometer, last coordinate fastest
        let mut i = v.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < v[i] {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// A point of one of the families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelInstance {
    Quiver(ThinQuiverRep),
    Control(ControlInstance),
    Dag(DagInstance),
}

/// Concrete group element for a family's action.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    /// One nonzero scalar per quiver vertex.
    Quiver(Vec<ComplexRational>),
    Control {
        g: RationalMatrix,
        g_inv: RationalMatrix,
    },
    Dag {
        a: RationalMatrix,
        t: Rational,
    },
}

impl GroupElement {
    /// `λ(t)` for a diagonal 1-PS on the family's group.
    pub fn from_one_ps(spec: &FamilySpec, lambda: &DiagonalOnePs, t: &Rational) -> Result<Self> {
        lambda.check_shape(&spec.group())?;
        let pow = |w: i64| {
            t.pow(w)
                .ok_or_else(|| Error::Precondition("1-PS evaluated at t = 0".into()))
        };
        match spec {
            FamilySpec::Quiver(q) => {
                if !q.is_thin() {
                    return Err(Error::Validation("vertex scalars need a thin quiver".into()));
                }
                let mut factor = 0;
                let mut scalars = Vec::with_capacity(q.vertex_count());
                for &v in q.dim_vector() {
                    if v == 0 {
                        scalars.push(ComplexRational::one());
                    } else {
                        scalars.push(ComplexRational::real(pow(lambda.gl_weights[factor][0])?));
                        factor += 1;
                    }
                }
                Ok(GroupElement::Quiver(scalars))
            }
            FamilySpec::Control(c) => {
                let diag: Vec<Rational> = lambda.gl_weights[0].iter().map(|&w| pow(w)).collect::<Result<_>>()?;
                let g =
                    RationalMatrix::from_fn(c.n, c.n, |i, j| if i == j { diag[i].clone() } else { Rational::zero() });
                let g_inv = g.inverse()?;
                Ok(GroupElement::Control { g, g_inv })
            }
            FamilySpec::Dag(d) => {
                let diag: Vec<Rational> = lambda.gl_weights[0].iter().map(|&w| pow(w)).collect::<Result<_>>()?;
                let a =
                    RationalMatrix::from_fn(d.k, d.k, |i, j| if i == j { diag[i].clone() } else { Rational::zero() });
                Ok(GroupElement::Dag {
                    a,
                    t: pow(lambda.torus_weights[0])?,
                })
            }
        }
    }
}

impl ModelInstance {
    pub fn spec(&self) -> FamilySpec {
        match self {
            ModelInstance::Quiver(q) => FamilySpec::Quiver(q.spec().clone()),
            ModelInstance::Control(c) => FamilySpec::Control(c.spec()),
            ModelInstance::Dag(d) => FamilySpec::Dag(d.spec()),
        }
    }

    pub fn tag(&self) -> FamilyTag {
        self.spec().tag()
    }

    /// Exact stability verdict with evidence.
    pub fn status(&self) -> Result<StabilityStatus> {
        match self {
            ModelInstance::Quiver(q) => quiver_thin_status(q),
            ModelInstance::Control(c) => Ok(control_status(c)),
            ModelInstance::Dag(d) => Ok(dag_status(d)),
        }
    }

    /// λ-weight of every coordinate, in the order of the instance's coordinates.
    pub fn coordinate_weights(&self, lambda: &DiagonalOnePs) -> Result<Vec<i64>> {
        match self {
            ModelInstance::Quiver(q) => q.coordinate_weights(lambda),
            ModelInstance::Control(c) => c.coordinate_weights(lambda),
            ModelInstance::Dag(d) => d.coordinate_weights(lambda),
        }
    }

    pub fn coordinate_is_zero(&self) -> Vec<bool> {
        match self {
            ModelInstance::Quiver(q) => q.values().iter().map(ComplexRational::is_zero).collect(),
            ModelInstance::Control(c) => c.flatten().iter().map(Rational::is_zero).collect(),
            ModelInstance::Dag(d) => d.samples().entries().iter().map(Rational::is_zero).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinate_is_zero().into_iter().all(|z| z)
    }

    /// Copy with every coordinate where `keep` is false set to zero.
    pub fn masked(&self, keep: &[bool]) -> Self {
        match self {
            ModelInstance::Quiver(q) => ModelInstance::Quiver(
                q.with_values(
                    q.values()
                        .iter()
                        .zip(keep)
                        .map(|(v, &k)| if k { v.clone() } else { ComplexRational::zero() })
                        .collect(),
                ),
            ),
            ModelInstance::Control(c) => ModelInstance::Control(c.with_flat(mask_rationals(&c.flatten(), keep))),
            ModelInstance::Dag(d) => ModelInstance::Dag(d.with_flat(mask_rationals(d.samples().entries(), keep))),
        }
    }

    pub fn zero_like(&self) -> Self {
        self.masked(&vec![false; self.coordinate_is_zero().len()])
    }

    /// Coordinatewise sum of two points of the same family and shape.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.spec() != other.spec() {
            return Err(Error::Shape("cannot add points of different families or shapes".into()));
        }
        Ok(match (self, other) {
            (ModelInstance::Quiver(a), ModelInstance::Quiver(b)) => {
                ModelInstance::Quiver(a.with_values(a.values().iter().zip(b.values()).map(|(x, y)| x + y).collect()))
            }
            (ModelInstance::Control(a), ModelInstance::Control(b)) => {
                ModelInstance::Control(a.with_flat(a.flatten().iter().zip(b.flatten()).map(|(x, y)| x + y).collect()))
            }
            (ModelInstance::Dag(a), ModelInstance::Dag(b)) => {
                ModelInstance::Dag(a.with_flat(a.samples().add(b.samples())?.entries().to_vec()))
            }
            _ => unreachable!("specs compared equal"),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            ModelInstance::Quiver(q) => ModelInstance::Quiver(q.scale(c)),
            ModelInstance::Control(x) => {
                ModelInstance::Control(x.with_flat(x.flatten().iter().map(|v| v * c).collect()))
            }
            ModelInstance::Dag(d) => ModelInstance::Dag(d.with_flat(d.samples().scale(c).entries().to_vec())),
        }
    }

    /// `g · x` for the family's action.
    pub fn act(&self, g: &GroupElement) -> Result<Self> {
        match (self, g) {
            (ModelInstance::Quiver(q), GroupElement::Quiver(s)) => Ok(ModelInstance::Quiver(q.act(s)?)),
            (ModelInstance::Control(c), GroupElement::Control { g, g_inv }) => {
                Ok(ModelInstance::Control(c.act(g, g_inv)?))
            }
            (ModelInstance::Dag(d), GroupElement::Dag { a, t }) => Ok(ModelInstance::Dag(d.act(a, t)?)),
            _ => Err(Error::Shape("group element belongs to a different family".into())),
        }
    }
}

impl ModelInstance {
    /// Coordinates reduced mod the certificate prime. `None` for quivers, whose
    /// check involves no rank, or when the prime divides a denominator.
    pub(crate) fn coordinates_mod_p(&self) -> Option<Vec<u64>> {
        match self {
            ModelInstance::Quiver(_) => None,
            ModelInstance::Control(c) => c.flatten().iter().map(modular::reduce).collect(),
            ModelInstance::Dag(d) => d.samples().entries().iter().map(modular::reduce).collect(),
        }
    }

    /// `true` only if the point of this shape with coordinates `coords` mod p
    /// is provably stable. `false` means "undecided", not "not stable".
    pub(crate) fn certify_stable_mod_p(&self, coords: &[u64]) -> bool {
        match self {
            ModelInstance::Quiver(_) => false,
            ModelInstance::Control(c) => {
                let n = c.spec().n;
                let a = ModMatrix::new(n, n, coords[..n * n].to_vec());
                let b = ModMatrix::new(n, c.spec().m, coords[n * n..].to_vec());
                control::certify_controllable(&a, &b)
            }
            ModelInstance::Dag(d) => {
                let DagSpec { n, k } = d.spec();
                let parents: Vec<u64> = coords.chunks(k + 1).flat_map(|row| row[..k].iter().copied()).collect();
                modular::certifies_rank(&ModMatrix::new(n, k, parents), k)
            }
        }
    }
}

fn mask_rationals(values: &[Rational], keep: &[bool]) -> Vec<Rational> {
    values
        .iter()
        .zip(keep)
        .map(|(v, &k)| if k { v.clone() } else { Rational::zero() })
        .collect()
}

/// `x = Σ_i x_i` with `λ(t)·x_i = t^i x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightDecomposition {
    /// One component per weight occurring among the coordinates.
    pub components: BTreeMap<i64, ModelInstance>,
    zero: ModelInstance,
}

impl WeightDecomposition {
    fn sum_where(&self, pred: impl Fn(i64) -> bool) -> ModelInstance {
        self.components
            .iter()
            .filter(|(&w, _)| pred(w))
            .fold(self.zero.clone(), |acc, (_, c)| acc.add(c).expect("same family"))
    }

    /// Component in `V(λ)_−`.
    pub fn negative_part(&self) -> ModelInstance {
        self.sum_where(|w| w < 0)
    }

    pub fn nonnegative_part(&self) -> ModelInstance {
        self.sum_where(|w| w >= 0)
    }

    pub fn reconstruct(&self) -> ModelInstance {
        self.sum_where(|_| true)
    }
}

pub fn weight_decompose(point: &ModelInstance, lambda: &DiagonalOnePs) -> Result<WeightDecomposition> {
    let weights = point.coordinate_weights(lambda)?;
    let mut distinct: Vec<i64> = weights.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let components = distinct
        .into_iter()
        .map(|w| {
            let keep: Vec<bool> = weights.iter().map(|&x| x == w).collect();
            (w, point.masked(&keep))
        })
        .collect();
    Ok(WeightDecomposition {
        components,
        zero: point.zero_like(),
    })
}

/// Whether `lim_{t→0} λ(t)·x` exists, i.e. every negative-weight coordinate vanishes.
pub fn limit_exists(point: &ModelInstance, lambda: &DiagonalOnePs) -> Result<bool> {
    let weights = point.coordinate_weights(lambda)?;
    Ok(weights
        .iter()
        .zip(point.coordinate_is_zero())
        .all(|(&w, zero)| w >= 0 || zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int_matrix;

    fn control_2x1() -> ModelInstance {
        ModelInstance::Control(
            ControlInstance::new(int_matrix(&[&[1, 2], &[3, 4]]), int_matrix(&[&[5], &[6]])).unwrap(),
        )
    }

    #[test]
    fn control_decomposition_negative_entries() {
        let x = control_2x1();
        let l = DiagonalOnePs::new(vec![vec![0, -1]], vec![]);
        let dec = weight_decompose(&x, &l).unwrap();
        let neg = dec.negative_part();
        let expected = ModelInstance::Control(
            ControlInstance::new(int_matrix(&[&[0, 0], &[3, 0]]), int_matrix(&[&[0], &[6]])).unwrap(),
        );
        assert_eq!(neg, expected);
        assert_eq!(dec.components.keys().copied().collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert_eq!(dec.reconstruct(), x);
        assert!(!limit_exists(&x, &l).unwrap());
    }

    #[test]
    fn zero_point_everything_zero() {
        let x = control_2x1().zero_like();
        let l = DiagonalOnePs::new(vec![vec![0, -1]], vec![]);
        let dec = weight_decompose(&x, &l).unwrap();
        assert!(dec.negative_part().is_zero());
        assert!(dec.components.values().all(ModelInstance::is_zero));
        assert!(limit_exists(&x, &l).unwrap());
    }

    #[test]
    fn dag_first_column_is_weight_minus_one() {
        let y = int_matrix(&[&[1, 0, 0, 0], &[2, 0, 0, 0], &[-3, 0, 0, 0]]);
        let x = ModelInstance::Dag(DagInstance::new(y, 3).unwrap());
        let l1 = DiagonalOnePs::new(vec![vec![-1, 0, 0]], vec![-1]);
        let dec = weight_decompose(&x, &l1).unwrap();
        assert_eq!(dec.components[&-1], x);
        assert!(dec
            .components
            .iter()
            .filter(|(&w, _)| w != -1)
            .all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn block_triangular_pair_has_limit() {
        let x = ModelInstance::Control(
            ControlInstance::new(
                int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[0, 0, 7]]),
                int_matrix(&[&[1, 1], &[2, 0], &[0, 0]]),
            )
            .unwrap(),
        );
        let l = DiagonalOnePs::new(vec![vec![0, 0, -1]], vec![]);
        assert!(limit_exists(&x, &l).unwrap());
    }

    #[test]
    fn shape_mismatch() {
        let l = DiagonalOnePs::new(vec![vec![0, 0, -1]], vec![]);
        assert!(weight_decompose(&control_2x1(), &l).is_err());
    }

    #[test]
    fn kronecker_strata() {
        let spec = FamilySpec::Quiver(QuiverSpec::kronecker(2));
        let strata = enumerate_strata(&spec, OrbitConvention::Parabolic).unwrap();
        assert_eq!(strata.len(), 1);
        let s = &strata[0];
        assert_eq!(
            s.descriptor,
            StratumDescriptor::Quiver {
                sub_dimension: vec![1, 0]
            }
        );
        assert_eq!((s.m, s.orbit_dim, s.value), (2, 0, 4));
        assert_eq!(s.pairing, -1);
    }

    #[test]
    fn control_strata_both_conventions() {
        let spec = FamilySpec::Control(ControlSpec::new(3, 2).unwrap());
        let par = enumerate_strata(&spec, OrbitConvention::Parabolic).unwrap();
        let rows: Vec<_> = par.iter().map(|s| (s.m, s.orbit_dim, s.value)).collect();
        assert_eq!(rows, vec![(6, 2, 8), (4, 2, 4)]);
        let cen = enumerate_strata(&spec, OrbitConvention::Centralizer).unwrap();
        let rows: Vec<_> = cen.iter().map(|s| (s.m, s.orbit_dim, s.value)).collect();
        assert_eq!(rows, vec![(6, 4, 4), (4, 4, 0)]);
        assert_eq!(par[1].pairing, -1);
    }

    #[test]
    fn dag_strata_first_class() {
        for n in 1..12 {
            let spec = FamilySpec::Dag(DagSpec::new(n, 3).unwrap());
            let s = &enumerate_strata(&spec, OrbitConvention::Centralizer).unwrap()[0];
            assert_eq!((s.m, s.orbit_dim), (n, 4));
            assert_eq!(s.value, 2 * n as i64 - 8);
        }
    }

    #[test]
    fn empty_quiver_family_rejected() {
        let q = QuiverSpec::new(2, vec![(0, 1)], vec![0, 0], vec![1, 1]).unwrap();
        assert!(matches!(
            enumerate_strata(&FamilySpec::Quiver(q), OrbitConvention::Parabolic),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sub_dimension_enumeration() {
        assert_eq!(sub_dimension_vectors(&[1, 1]), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(sub_dimension_vectors(&[2]), vec![vec![1]]);
        assert!(sub_dimension_vectors(&[1]).is_empty());
        assert_eq!(sub_dimension_vectors(&[2, 3]).len(), 3 * 4 - 2);
    }

    #[test]
    fn negative_dims_through_family_enum() {
        let dag = FamilySpec::Dag(DagSpec::new(7, 3).unwrap());
        let l1 = DiagonalOnePs::new(vec![vec![-1, 0, 0]], vec![-1]);
        assert_eq!(negative_weight_dim(&dag, &l1).unwrap(), 7);
        let q = FamilySpec::Quiver(QuiverSpec::kronecker(2));
        let l = DiagonalOnePs::new(vec![vec![0], vec![-1]], vec![]);
        assert_eq!(negative_weight_dim(&q, &l).unwrap(), 2);
    }
}
