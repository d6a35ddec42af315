//! Seeded randomized and exhaustive checks that the stability checkers, the
//! stratum tables and the connectivity claims agree.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, domain,
//! trial index)`, so trial `i` is reproducible on its own and trials run on the
//! rayon pool without changing results.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::modular;
use crate::algebra::{ComplexRational, OrbitConvention, Rational, RationalMatrix};
use crate::connectivity::d_min;
use crate::error::{Error, Result};
use crate::families::{
    dag_stabilize, enumerate_strata, quiver_thin_status, ControlInstance, ControlSpec, DagInstance, DagSpec,
    FamilySpec, GroupElement, ModelInstance, QuiverSpec, ThinQuiverRep, Verdict,
};

pub const DEFAULT_PATH_SAMPLES: u32 = 256;
pub const DEFAULT_KRONECKER_RADIUS: i64 = 2;
const ENDPOINT_ATTEMPTS: usize = 1000;

/// Knobs for one harness run. Identical configs give identical reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub family: FamilySpec,
    pub trials: u64,
    pub seed: u64,
    /// Integer entries are drawn uniformly from `[-entry_bound, entry_bound]`.
    pub entry_bound: u32,
    pub paths: u64,
    pub path_samples: u32,
    /// Overrides the family's default orbit convention for the path precondition.
    #[serde(default)]
    pub convention: Option<OrbitConvention>,
}

impl TrialConfig {
    pub fn new(family: FamilySpec, seed: u64) -> Self {
        TrialConfig {
            family,
            trials: 1000,
            seed,
            entry_bound: 9,
            paths: 0,
            path_samples: DEFAULT_PATH_SAMPLES,
            convention: None,
        }
    }

    pub fn convention(&self) -> OrbitConvention {
        self.convention.unwrap_or_else(|| self.family.default_convention())
    }
}

mod micros {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub trials_run: u64,
    pub unstable_hits: u64,
    pub paths_run: u64,
    /// Non-stable evaluations along sampled paths.
    pub path_failures: u64,
    pub oracle_mismatches: u64,
    /// Set when a check's precondition did not hold and it was not run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(rename = "elapsed_us", with = "micros")]
    pub elapsed: Duration,
}

impl HarnessReport {
    /// Equality of everything except wall-clock time.
    pub fn same_outcome(&self, other: &HarnessReport) -> bool {
        let strip = |r: &HarnessReport| HarnessReport {
            elapsed: Duration::ZERO,
            ..r.clone()
        };
        strip(self) == strip(other)
    }

    /// Counter-wise sum.
    pub fn merge(&self, other: &HarnessReport) -> HarnessReport {
        HarnessReport {
            trials_run: self.trials_run + other.trials_run,
            unstable_hits: self.unstable_hits + other.unstable_hits,
            paths_run: self.paths_run + other.paths_run,
            path_failures: self.path_failures + other.path_failures,
            oracle_mismatches: self.oracle_mismatches + other.oracle_mismatches,
            skipped: self.skipped.clone().or_else(|| other.skipped.clone()),
            elapsed: self.elapsed + other.elapsed,
        }
    }
}

/// Wall time truncated to the microsecond precision that reports persist.
fn elapsed_since(start: Instant) -> Duration {
    Duration::from_micros(start.elapsed().as_micros() as u64)
}

#[derive(Clone, Copy)]
#[repr(u64)]
enum Stream {
    Generic = 1,
    Path = 2,
    Degenerate = 3,
    Equivariance = 4,
    Krylov = 5,
}

/// RNG for trial `index` of one check; depends only on `(seed, stream, index)`.
fn trial_rng(seed: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 56) ^ index);
    rng
}

fn random_int(rng: &mut impl Rng, bound: u32) -> i64 {
    let b = i64::from(bound);
    rng.gen_range(-b..=b)
}

pub fn random_integer_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: u32) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| Rational::from(random_int(rng, bound)))
}

fn random_nonzero_gaussian(rng: &mut impl Rng, bound: u32) -> ComplexRational {
    let bound = bound.max(1);
    loop {
        let (re, im) = (random_int(rng, bound), random_int(rng, bound));
        if re != 0 || im != 0 {
            return ComplexRational::from_integers(re, im);
        }
    }
}

/// Random point with integer (Gaussian-integer for quivers) entries. Quiver
/// arrows between support vertices get nonzero values, so the origin is
/// excluded by construction.
pub fn random_instance(spec: &FamilySpec, bound: u32, rng: &mut impl Rng) -> Result<ModelInstance> {
    Ok(match spec {
        FamilySpec::Control(c) => ModelInstance::Control(ControlInstance::new(
            random_integer_matrix(rng, c.n, c.n, bound),
            random_integer_matrix(rng, c.n, c.m, bound),
        )?),
        FamilySpec::Dag(d) => {
            ModelInstance::Dag(DagInstance::new(random_integer_matrix(rng, d.n, d.k + 1, bound), d.k)?)
        }
        FamilySpec::Quiver(q) => {
            let dims = q.dim_vector();
            let values = q
                .arrows()
                .iter()
                .map(|&(s, t)| {
                    if dims[s] > 0 && dims[t] > 0 {
                        random_nonzero_gaussian(rng, bound)
                    } else {
                        ComplexRational::zero()
                    }
                })
                .collect();
            ModelInstance::Quiver(ThinQuiverRep::new(q.clone(), values)?)
        }
    })
}

/// Draw `trials` random points and count those that are not stable.
pub fn sample_generic_points(cfg: &TrialConfig) -> Result<HarnessReport> {
    let start = Instant::now();
    // fail fast on families the sampler cannot handle
    random_instance(
        &cfg.family,
        cfg.entry_bound,
        &mut trial_rng(cfg.seed, Stream::Generic, 0),
    )?
    .status()?;
    let hits = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = trial_rng(cfg.seed, Stream::Generic, i);
            let x = random_instance(&cfg.family, cfg.entry_bound, &mut rng)?;
            Ok(u64::from(!x.status()?.is_stable()))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(HarnessReport {
        trials_run: cfg.trials,
        unstable_hits: hits,
        elapsed: elapsed_since(start),
        ..Default::default()
    })
}

/// The non-stable draws of [`sample_generic_points`], with their trial indices.
pub fn generic_hits(cfg: &TrialConfig) -> Result<Vec<(u64, ModelInstance)>> {
    let found = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<Option<(u64, ModelInstance)>> {
            let mut rng = trial_rng(cfg.seed, Stream::Generic, i);
            let x = random_instance(&cfg.family, cfg.entry_bound, &mut rng)?;
            Ok((!x.status()?.is_stable()).then_some((i, x)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn stable_endpoint(spec: &FamilySpec, bound: u32, rng: &mut impl Rng) -> Result<ModelInstance> {
    for _ in 0..ENDPOINT_ATTEMPTS {
        let x = random_instance(spec, bound, rng)?;
        if x.status()?.is_stable() {
            return Ok(x);
        }
    }
    Err(Error::Sampling(format!(
        "no stable {} point found in {ENDPOINT_ATTEMPTS} draws; the family may have an empty stable locus",
        spec.tag().as_str()
    )))
}

/// Point at parameter `t` on the quadratic through `p0` (t = 0), `mid`
/// (t = 1/2) and `p1` (t = 1).
pub fn quadratic_point(
    p0: &ModelInstance,
    mid: &ModelInstance,
    p1: &ModelInstance,
    t: &Rational,
) -> Result<ModelInstance> {
    let one = Rational::one();
    let two = Rational::from(2);
    let l0 = (&two * t - &one) * (t - &one);
    let l1 = Rational::from(4) * t * (&one - t);
    let l2 = t * &(&two * t - &one);
    p0.scale(&l0).add(&mid.scale(&l1))?.add(&p1.scale(&l2))
}

/// `N² · p(i/N)`: the same point up to a positive scalar, which no stability
/// test can see, but with integer coefficients so no rational reduction is
/// needed along the path.
fn scaled_quadratic_point(
    p0: &ModelInstance,
    mid: &ModelInstance,
    p1: &ModelInstance,
    i: i64,
    n: i64,
) -> Result<ModelInstance> {
    let c0 = Rational::from((2 * i - n) * (i - n));
    let c1 = Rational::from(4 * i * (n - i));
    let c2 = Rational::from(i * (2 * i - n));
    p0.scale(&c0).add(&mid.scale(&c1))?.add(&p1.scale(&c2))
}

/// Count non-stable points among `p(i / samples)`, `i = 0..=samples`.
///
/// Each point is first checked mod a large prime, where a full-rank result
/// already proves stability; only undecided points are rebuilt exactly.
pub fn path_failures(p0: &ModelInstance, mid: &ModelInstance, p1: &ModelInstance, samples: u32) -> Result<u64> {
    let n = i64::from(samples.max(1));
    let reduced = p0
        .coordinates_mod_p()
        .zip(mid.coordinates_mod_p())
        .zip(p1.coordinates_mod_p());
    let mut failures = 0;
    for i in 0..=n {
        if let Some(((r0, rm), r1)) = &reduced {
            let coords = modular::combine(&[
                ((2 * i - n) * (i - n), r0),
                (4 * i * (n - i), rm),
                (i * (2 * i - n), r1),
            ]);
            if p0.certify_stable_mod_p(&coords) {
                continue;
            }
        }
        if !scaled_quadratic_point(p0, mid, p1, i, n)?.status()?.is_stable() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Random quadratic paths between stable endpoints, each checked exactly at
/// `t = i / path_samples` for `i = 0..=path_samples`. Skipped unless
/// `d_min ≥ 2` under the active convention.
pub fn sample_path_stability(cfg: &TrialConfig) -> Result<HarnessReport> {
    let start = Instant::now();
    let conv = cfg.convention();
    if let Some(d) = d_min(&enumerate_strata(&cfg.family, conv)?) {
        if d < 2 {
            return Ok(HarnessReport {
                skipped: Some(format!(
                    "path test needs d_min >= 2, got {d} under the {conv} convention"
                )),
                elapsed: elapsed_since(start),
                ..Default::default()
            });
        }
    }
    let failures = (0..cfg.paths)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = trial_rng(cfg.seed, Stream::Path, i);
            let p0 = stable_endpoint(&cfg.family, cfg.entry_bound, &mut rng)?;
            let p1 = stable_endpoint(&cfg.family, cfg.entry_bound, &mut rng)?;
            let mid = random_instance(&cfg.family, cfg.entry_bound, &mut rng)?;
            path_failures(&p0, &mid, &p1, cfg.path_samples)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(HarnessReport {
        paths_run: cfg.paths,
        path_failures: failures,
        elapsed: elapsed_since(start),
        ..Default::default()
    })
}

/// Exhaustive check of the Kronecker quiver over Gaussian integers with real
/// and imaginary parts in `[-radius, radius]`: unstable exactly at the origin.
pub fn kronecker_oracle_check(grid_radius: i64) -> Result<HarnessReport> {
    kronecker_oracle_check_with_theta(grid_radius, [1, -1])
}

/// As [`kronecker_oracle_check`], but the checker runs with the given `θ`
/// while the expected locus stays the one for `θ = (1, −1)`.
pub fn kronecker_oracle_check_with_theta(grid_radius: i64, theta: [i64; 2]) -> Result<HarnessReport> {
    let start = Instant::now();
    let spec = QuiverSpec::new(2, vec![(0, 1), (0, 1)], vec![1, 1], theta.to_vec())?;
    let r = grid_radius.max(0);
    let axis: Vec<ComplexRational> = (-r..=r)
        .flat_map(|re| (-r..=r).map(move |im| ComplexRational::from_integers(re, im)))
        .collect();
    let mut report = HarnessReport::default();
    for a in &axis {
        for b in &axis {
            let rep = ThinQuiverRep::new(spec.clone(), vec![a.clone(), b.clone()])?;
            let verdict = quiver_thin_status(&rep)?.verdict;
            let expected = if a.is_zero() && b.is_zero() {
                Verdict::Unstable
            } else {
                Verdict::Stable
            };
            report.trials_run += 1;
            if verdict == Verdict::Unstable {
                report.unstable_hits += 1;
            }
            if verdict != expected {
                report.oracle_mismatches += 1;
            }
        }
    }
    report.elapsed = elapsed_since(start);
    Ok(report)
}

/// Build `trials` DAG samples whose parent block is `U·V` with inner dimension
/// `k − 1`, check each is flagged not stable, then check that
/// `dag_stabilize(·, 1/1000)` makes each stable.
pub fn detect_constructed_degenerates(cfg: &TrialConfig) -> Result<HarnessReport> {
    let start = Instant::now();
    let FamilySpec::Dag(DagSpec { n, k }) = cfg.family else {
        return Err(Error::Precondition(
            "degenerate construction needs the DAG family".into(),
        ));
    };
    if k < 2 || n < k {
        return Err(Error::Precondition(format!(
            "degenerate construction needs n >= k >= 2, got n = {n}, k = {k}"
        )));
    }
    let epsilon = Rational::new(1, 1000);
    let (flagged, mismatches) = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<(u64, u64)> {
            let mut rng = trial_rng(cfg.seed, Stream::Degenerate, i);
            let d = rank_deficient_dag(n, k, cfg.entry_bound, &mut rng)?;
            let flagged = !d.status()?.is_stable();
            let ModelInstance::Dag(inner) = &d else { unreachable!() };
            let fixed = dag_stabilize(inner, &epsilon)?;
            let repaired = ModelInstance::Dag(fixed).status()?.is_stable();
            Ok((u64::from(flagged), u64::from(!flagged) + u64::from(!repaired)))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(HarnessReport {
        trials_run: cfg.trials,
        unstable_hits: flagged,
        oracle_mismatches: mismatches,
        elapsed: elapsed_since(start),
        ..Default::default()
    })
}

fn rank_deficient_dag(n: usize, k: usize, bound: u32, rng: &mut impl Rng) -> Result<ModelInstance> {
    let u = random_integer_matrix(rng, n, k - 1, bound);
    let v = random_integer_matrix(rng, k - 1, k, bound);
    let x = u.mul(&v)?;
    let child: Vec<Rational> = (0..n).map(|_| Rational::from(random_int(rng, bound))).collect();
    Ok(ModelInstance::Dag(DagInstance::from_parts(&x, &child)?))
}

/// Random integer matrix with determinant ±1, together with its inverse.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> (RationalMatrix, RationalMatrix) {
    let mut g = RationalMatrix::identity(n);
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = Rational::from(rng.gen_range(-3..=3i64));
            // row_i += c·row_j
            for col in 0..n {
                let v = g.get(i, col) + &(&c * g.get(j, col));
                g.set(i, col, v);
            }
            if rng.gen_bool(0.3) {
                g.swap_rows(i, j);
            }
        }
    }
    for i in 0..n {
        if rng.gen_bool(0.5) {
            for col in 0..n {
                let v = -g.get(i, col);
                g.set(i, col, v);
            }
        }
    }
    let inv = g.inverse().expect("unimodular");
    (g, inv)
}

fn random_nonzero_rational(rng: &mut impl Rng) -> Rational {
    let p = loop {
        let p = rng.gen_range(-9..=9i64);
        if p != 0 {
            break p;
        }
    };
    Rational::new(p, rng.gen_range(1..=9))
}

/// Random element of the family's group: a unimodular integer matrix for GL
/// factors, nonzero rationals for scalars.
pub fn random_group_element(spec: &FamilySpec, rng: &mut impl Rng) -> Result<GroupElement> {
    Ok(match spec {
        FamilySpec::Control(c) => {
            let (g, g_inv) = random_unimodular(c.n, rng);
            GroupElement::Control { g, g_inv }
        }
        FamilySpec::Dag(d) => GroupElement::Dag {
            a: random_unimodular(d.k, rng).0,
            t: random_nonzero_rational(rng),
        },
        FamilySpec::Quiver(q) => {
            if !q.is_thin() {
                return Err(Error::Validation("vertex scalars need a thin quiver".into()));
            }
            GroupElement::Quiver(
                (0..q.vertex_count())
                    .map(|_| {
                        ComplexRational::new(random_nonzero_rational(rng), Rational::from(rng.gen_range(-2..=2i64)))
                    })
                    .collect(),
            )
        }
    })
}

/// Either a generic point or one deliberately placed in a non-stable locus.
pub fn random_mixed_instance(spec: &FamilySpec, bound: u32, rng: &mut impl Rng) -> Result<ModelInstance> {
    if rng.gen_bool(0.5) {
        return random_instance(spec, bound, rng);
    }
    Ok(match spec {
        FamilySpec::Control(c) => {
            // block upper-triangular pair with Im B inside the first r coordinates
            let r = rng.gen_range(0..c.n);
            let mut a = random_integer_matrix(rng, c.n, c.n, bound);
            let mut b = random_integer_matrix(rng, c.n, c.m, bound);
            for i in r..c.n {
                for j in 0..r {
                    a.set(i, j, Rational::zero());
                }
                for j in 0..c.m {
                    b.set(i, j, Rational::zero());
                }
            }
            let (g, g_inv) = random_unimodular(c.n, rng);
            ModelInstance::Control(ControlInstance::new(a, b)?.act(&g, &g_inv)?)
        }
        FamilySpec::Dag(d) if d.k >= 2 => rank_deficient_dag(d.n, d.k, bound, rng)?,
        FamilySpec::Dag(d) => ModelInstance::Dag(DagInstance::from_parts(
            &RationalMatrix::zeros(d.n, 1),
            &random_integer_matrix(rng, d.n, 1, bound).column(0),
        )?),
        FamilySpec::Quiver(_) => {
            let ModelInstance::Quiver(rep) = random_instance(spec, bound, rng)? else {
                unreachable!()
            };
            let values = rep
                .values()
                .iter()
                .map(|v| {
                    if rng.gen_bool(0.5) {
                        ComplexRational::zero()
                    } else {
                        v.clone()
                    }
                })
                .collect();
            ModelInstance::Quiver(ThinQuiverRep::new(rep.spec().clone(), values)?)
        }
    })
}

/// Apply random group elements to random (generic and degenerate) points and
/// count status changes, evidence included.
pub fn equivariance_check(spec: &FamilySpec, trials: u64, seed: u64, bound: u32) -> Result<HarnessReport> {
    let start = Instant::now();
    let mismatches = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = trial_rng(seed, Stream::Equivariance, i);
            let x = random_mixed_instance(spec, bound, &mut rng)?;
            let g = random_group_element(spec, &mut rng)?;
            Ok(u64::from(x.status()? != x.act(&g)?.status()?))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(HarnessReport {
        trials_run: trials,
        oracle_mismatches: mismatches,
        elapsed: elapsed_since(start),
        ..Default::default()
    })
}

/// Dimension of the smallest `A`-invariant subspace containing `Im B`, by
/// saturating `span(B)` under `A` until the span stops growing. Uses
/// Gauss-Jordan pivots, not the controllability matrix.
pub fn krylov_saturation_dim(c: &ControlInstance) -> usize {
    let span_dim = |m: &RationalMatrix| m.rref().1.len();
    let mut basis = c.b().clone();
    let mut dim = span_dim(&basis);
    loop {
        let image = c.a().mul(&basis).expect("square A");
        let grown = basis.hstack(&image).expect("same rows");
        let (reduced, pivots) = grown.transpose().rref();
        let new_dim = pivots.len();
        if new_dim == dim {
            return dim;
        }
        dim = new_dim;
        // keep a basis: the nonzero rows of the row-reduced transpose
        basis = reduced.transpose().select_columns(&(0..new_dim).collect::<Vec<_>>());
    }
}

/// Compare controllability-matrix rank with [`krylov_saturation_dim`] on
/// random control pairs with `n ≤ max_n`, mixing generic and degenerate draws.
pub fn krylov_consistency_check(max_n: usize, trials: u64, seed: u64, bound: u32) -> Result<HarnessReport> {
    use crate::algebra::rational_rank;
    use crate::families::controllability_matrix;
    let start = Instant::now();
    let mismatches = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut rng = trial_rng(seed, Stream::Krylov, i);
            let n = rng.gen_range(1..=max_n.max(1));
            let m = rng.gen_range(1..=3);
            let spec = FamilySpec::Control(ControlSpec::new(n, m)?);
            let ModelInstance::Control(c) = random_mixed_instance(&spec, bound, &mut rng)? else {
                unreachable!()
            };
            Ok(u64::from(
                rational_rank(&controllability_matrix(&c)) != krylov_saturation_dim(&c),
            ))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(HarnessReport {
        trials_run: trials,
        oracle_mismatches: mismatches,
        elapsed: elapsed_since(start),
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int_matrix;

    fn control_cfg(seed: u64) -> TrialConfig {
        TrialConfig::new(FamilySpec::Control(ControlSpec::new(3, 2).unwrap()), seed)
    }

    #[test]
    fn streams_are_per_trial() {
        let a: u64 = trial_rng(7, Stream::Generic, 3).gen();
        let b: u64 = trial_rng(7, Stream::Generic, 3).gen();
        let c: u64 = trial_rng(7, Stream::Generic, 4).gen();
        let d: u64 = trial_rng(7, Stream::Path, 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn generic_control_is_stable_and_deterministic() {
        let mut cfg = control_cfg(1);
        cfg.trials = 300;
        let r1 = sample_generic_points(&cfg).unwrap();
        let r2 = sample_generic_points(&cfg).unwrap();
        assert!(r1.same_outcome(&r2));
        assert_eq!(generic_hits(&cfg).unwrap().len() as u64, r1.unstable_hits);
    }

    #[test]
    fn dag_too_few_samples_always_degenerate() {
        let mut cfg = TrialConfig::new(FamilySpec::Dag(DagSpec::new(2, 3).unwrap()), 5);
        cfg.trials = 10;
        let r = sample_generic_points(&cfg).unwrap();
        assert_eq!(r.unstable_hits, 10);
        cfg.paths = 3;
        let p = sample_path_stability(&cfg).unwrap();
        assert!(p.skipped.is_some());
    }

    #[test]
    fn endpoint_sampling_error() {
        // n < k has an empty stable locus
        let spec = FamilySpec::Dag(DagSpec::new(2, 3).unwrap());
        let mut rng = trial_rng(0, Stream::Path, 0);
        assert!(matches!(stable_endpoint(&spec, 9, &mut rng), Err(Error::Sampling(_))));
    }

    #[test]
    fn kronecker_straight_path() {
        let spec = QuiverSpec::kronecker(2);
        let pt = |a: i64, b: i64| {
            ModelInstance::Quiver(
                ThinQuiverRep::new(
                    spec.clone(),
                    vec![
                        ComplexRational::from_integers(a, 0),
                        ComplexRational::from_integers(b, 0),
                    ],
                )
                .unwrap(),
            )
        };
        assert_eq!(path_failures(&pt(1, 0), &pt(1, 1), &pt(0, 1), 64).unwrap(), 0);
        // through the origin at t = 1/2
        assert_eq!(path_failures(&pt(1, 0), &pt(0, 0), &pt(0, 1), 64).unwrap(), 1);
    }

    #[test]
    fn control_path_through_uncontrollable_midpoint() {
        let pair = |a: &[&[i64]], b: &[&[i64]]| {
            ModelInstance::Control(ControlInstance::new(int_matrix(a), int_matrix(b)).unwrap())
        };
        let p0 = pair(&[&[0, 1], &[0, 0]], &[&[0], &[1]]);
        let p1 = pair(&[&[0, 0], &[1, 0]], &[&[1], &[0]]);
        let mid = pair(&[&[1, 2], &[3, 4]], &[&[0], &[0]]);
        // only t = 1/2 lands on B = 0
        assert_eq!(path_failures(&p0, &mid, &p1, 16).unwrap(), 1);
        assert_eq!(path_failures(&p0, &p0, &p1, 16).unwrap(), 0);
    }

    #[test]
    fn quadratic_hits_nodes() {
        let p0 = ModelInstance::Dag(DagInstance::new(int_matrix(&[&[1, 2]]), 1).unwrap());
        let m = ModelInstance::Dag(DagInstance::new(int_matrix(&[&[5, -2]]), 1).unwrap());
        let p1 = ModelInstance::Dag(DagInstance::new(int_matrix(&[&[0, 7]]), 1).unwrap());
        assert_eq!(quadratic_point(&p0, &m, &p1, &Rational::zero()).unwrap(), p0);
        assert_eq!(quadratic_point(&p0, &m, &p1, &Rational::new(1, 2)).unwrap(), m);
        assert_eq!(quadratic_point(&p0, &m, &p1, &Rational::one()).unwrap(), p1);
        for i in 0..=8 {
            let exact = quadratic_point(&p0, &m, &p1, &Rational::new(i, 8)).unwrap();
            assert_eq!(
                scaled_quadratic_point(&p0, &m, &p1, i, 8).unwrap(),
                exact.scale(&Rational::from(64))
            );
        }
    }

    #[test]
    fn kronecker_grid_small() {
        let r0 = kronecker_oracle_check(0).unwrap();
        assert_eq!((r0.trials_run, r0.unstable_hits, r0.oracle_mismatches), (1, 1, 0));
        let r1 = kronecker_oracle_check(1).unwrap();
        assert_eq!((r1.trials_run, r1.oracle_mismatches), (81, 0));
    }

    #[test]
    fn degenerate_precondition() {
        let cfg = TrialConfig::new(FamilySpec::Dag(DagSpec::new(4, 1).unwrap()), 0);
        assert!(matches!(
            detect_constructed_degenerates(&cfg),
            Err(Error::Precondition(_))
        ));
        let cfg = TrialConfig::new(FamilySpec::Control(ControlSpec::new(3, 1).unwrap()), 0);
        assert!(detect_constructed_degenerates(&cfg).is_err());
    }

    #[test]
    fn zero_factor_gives_zero_block() {
        let mut rng = trial_rng(0, Stream::Degenerate, 0);
        let d = rank_deficient_dag(4, 3, 0, &mut rng).unwrap();
        assert_eq!(
            d.status().unwrap().evidence,
            crate::families::Evidence::Dag { parent_rank: 0 }
        );
    }

    #[test]
    fn unimodular_inverse() {
        let mut rng = trial_rng(3, Stream::Equivariance, 0);
        for n in 1..5 {
            let (g, inv) = random_unimodular(n, &mut rng);
            assert_eq!(g.mul(&inv).unwrap(), RationalMatrix::identity(n));
            assert!(inv.entries().iter().all(Rational::is_integer));
        }
    }

    #[test]
    fn krylov_small_cases() {
        let c = ControlInstance::new(int_matrix(&[&[1, 1], &[0, 2]]), int_matrix(&[&[1], &[0]])).unwrap();
        assert_eq!(krylov_saturation_dim(&c), 1);
        let c = ControlInstance::new(int_matrix(&[&[0, 1], &[0, 0]]), int_matrix(&[&[0], &[1]])).unwrap();
        assert_eq!(krylov_saturation_dim(&c), 2);
        let c = ControlInstance::new(int_matrix(&[&[3]]), int_matrix(&[&[0]])).unwrap();
        assert_eq!(krylov_saturation_dim(&c), 0);
    }
}
