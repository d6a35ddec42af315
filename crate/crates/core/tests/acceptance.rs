//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
//!
//! Runs without the libtest harness so the per-criterion lines appear in plain
//! `cargo test` output. All comparisons are exact integer or structural
//! equality; the only tolerances are the wall-clock limits below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use git_topo::algebra::{orbit_dim, ComplexRational, OrbitConvention};
use git_topo::connectivity::{analyze, AbelianGroup, Connectivity};
use git_topo::families::{
    negative_weight_dim, quiver_thin_status, sub_dimension_vectors, ControlSpec, DagSpec, FamilySpec, ModelInstance,
    QuiverSpec, StratumDescriptor, ThinQuiverRep, Verdict,
};
use git_topo::harness::{
    detect_constructed_degenerates, equivariance_check, generic_hits, kronecker_oracle_check,
    kronecker_oracle_check_with_theta, krylov_consistency_check, krylov_saturation_dim, sample_generic_points,
    sample_path_stability, TrialConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: std::ops::Range<u64> = 42..52;

enum Outcome {
    Pass(String),
    /// The literal target is unattainable; the detail says what was checked instead.
    Deviation(String),
}

type Check = fn() -> Result<Outcome, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn control_3_2() -> FamilySpec {
    FamilySpec::Control(ControlSpec::new(3, 2).unwrap())
}

fn dag_10_3() -> FamilySpec {
    FamilySpec::Dag(DagSpec::new(10, 3).unwrap())
}

fn kronecker_reproduction() -> Result<Outcome, String> {
    let start = Instant::now();
    let spec = FamilySpec::Quiver(QuiverSpec::kronecker(2));
    let r = analyze(&spec, OrbitConvention::Parabolic, None).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start, "analyze")?;
    ensure(r.strata.len() == 1, || {
        format!("expected one stratum, got {}", r.strata.len())
    })?;
    let s = &r.strata[0];
    let row = (&s.descriptor, s.m, s.orbit_dim, s.value);
    let want = StratumDescriptor::Quiver {
        sub_dimension: vec![1, 0],
    };
    ensure(row == (&want, 2, 0, 4), || format!("stratum row {row:?}"))?;
    ensure(r.d_min == Some(4), || format!("d_min {:?}", r.d_min))?;
    let stmt = "π_q(V^st)=0 for q ≤ 2";
    ensure(r.connectivity_statement == stmt, || {
        format!("statement {:?}", r.connectivity_statement)
    })?;
    Ok(Outcome::Pass(format!(
        "d'=(1,0) m=2 orbit=0 value=4, d_min=4, \"{stmt}\""
    )))
}

/// Brute-force King criterion for the Kronecker quiver, written out by hand:
/// `{2}` is always a subrepresentation, `{1}` only when both arrows vanish.
fn kronecker_expected(a: &ComplexRational, b: &ComplexRational, theta: [i64; 2]) -> Verdict {
    let mut subs = vec![theta[1]];
    if a.is_zero() && b.is_zero() {
        subs.push(theta[0]);
    }
    match subs.into_iter().max() {
        Some(x) if x > 0 => Verdict::Unstable,
        Some(0) => Verdict::NotStable(git_topo::families::NotStableReason::StrictlySemistable),
        _ => Verdict::Stable,
    }
}

fn kronecker_oracle() -> Result<Outcome, String> {
    let start = Instant::now();
    let r = kronecker_oracle_check(2).map_err(|e| e.to_string())?;
    within(Duration::from_secs(5), start, "grid check")?;
    ensure(
        r.trials_run == 625 && r.oracle_mismatches == 0 && r.unstable_hits == 1,
        || format!("{r:?}"),
    )?;

    // self-test of the mismatch counter with θ flipped, against the hand oracle
    let flipped = kronecker_oracle_check_with_theta(1, [-1, 1]).map_err(|e| e.to_string())?;
    let spec = QuiverSpec::new(2, vec![(0, 1), (0, 1)], vec![1, 1], vec![-1, 1]).unwrap();
    let axis: Vec<ComplexRational> = (-1..=1)
        .flat_map(|re| (-1..=1).map(move |im| ComplexRational::from_integers(re, im)))
        .collect();
    let mut expected_mismatches = 0;
    for a in &axis {
        for b in &axis {
            let rep = ThinQuiverRep::new(spec.clone(), vec![a.clone(), b.clone()]).unwrap();
            let got = quiver_thin_status(&rep).unwrap().verdict;
            ensure(got == kronecker_expected(a, b, [-1, 1]), || {
                format!("flipped verdict at ({a}, {b})")
            })?;
            if got != kronecker_expected(a, b, [1, -1]) {
                expected_mismatches += 1;
            }
        }
    }
    ensure(flipped.oracle_mismatches == expected_mismatches, || {
        format!(
            "self-test counted {}, oracle says {expected_mismatches}",
            flipped.oracle_mismatches
        )
    })?;
    Ok(Outcome::Pass(format!(
        "625 grid points, unstable only at origin, 0 mismatches; flipped-theta self-test counts {expected_mismatches}/81"
    )))
}

fn control_strata() -> Result<Outcome, String> {
    let r = analyze(&control_3_2(), OrbitConvention::Parabolic, None).map_err(|e| e.to_string())?;
    let rows: Vec<(usize, usize, usize, i64)> = r
        .strata
        .iter()
        .map(|s| match s.descriptor {
            StratumDescriptor::Control { r } => (r, s.m, s.orbit_dim, s.value),
            _ => (0, 0, 0, 0),
        })
        .collect();
    ensure(rows == vec![(1, 6, 2, 8), (2, 4, 2, 4)], || format!("rows {rows:?}"))?;
    // r = n−1 row: m = (n−1)+m, orbit = n−1
    ensure(rows[1].1 == (3 - 1) + 2 && rows[1].2 == 3 - 1, || "r = n-1 row".into())?;
    ensure(
        r.d_min == Some(4) && r.connectivity == Connectivity::Connected(2),
        || format!("d_min {:?}, connectivity {:?}", r.d_min, r.connectivity),
    )?;
    Ok(Outcome::Pass("r=1:(6,2,8) r=2:(4,2,4), d_min=4, connectivity 2".into()))
}

fn convention_sensitivity() -> Result<Outcome, String> {
    let r = analyze(&control_3_2(), OrbitConvention::Centralizer, None).map_err(|e| e.to_string())?;
    ensure(
        r.d_min == Some(0) && r.connectivity == Connectivity::NoInformation,
        || format!("d_min {:?}, connectivity {:?}", r.d_min, r.connectivity),
    )?;
    ensure(r.convention == OrbitConvention::Centralizer, || {
        "convention not recorded".into()
    })?;
    Ok(Outcome::Pass("centralizer: d_min=0, no information".into()))
}

fn dag_reproduction() -> Result<Outcome, String> {
    let r = analyze(&dag_10_3(), OrbitConvention::Centralizer, Some(5)).map_err(|e| e.to_string())?;
    ensure(
        r.d_min == Some(12) && r.connectivity == Connectivity::Connected(10),
        || format!("d_min {:?}, connectivity {:?}", r.d_min, r.connectivity),
    )?;
    let t = r.thresholds.ok_or("no thresholds")?;
    ensure(
        (t.path_connected_min_samples, t.simply_connected_min_samples) == (5, 6),
        || format!("{t:?}"),
    )?;
    use AbelianGroup::*;
    let table: Vec<AbelianGroup> = r.homotopy.iter().map(|e| e.group).collect();
    ensure(table == vec![Zero, Zero, Free(2), Zero, Free(1), Zero], || {
        format!("table {table:?}")
    })?;
    Ok(Outcome::Pass(
        "d_min=12, connectivity 10, thresholds n>=5 / n>=6, pi_0..5 = [0,0,Z^2,0,Z,0]".into(),
    ))
}

fn monte_carlo_genericity() -> Result<Outcome, String> {
    let mut literal = Vec::new();
    for seed in SEEDS {
        let mut cfg = TrialConfig::new(control_3_2(), seed);
        cfg.trials = 10_000;
        cfg.entry_bound = 9;
        let start = Instant::now();
        let r = sample_generic_points(&cfg).map_err(|e| e.to_string())?;
        within(Duration::from_secs(10), start, "10^4 draws")?;
        // every hit must be a genuine uncontrollable pair per the Krylov oracle
        for (i, x) in generic_hits(&cfg).map_err(|e| e.to_string())? {
            let ModelInstance::Control(c) = &x else { unreachable!() };
            ensure(krylov_saturation_dim(c) < 3, || {
                format!("seed {seed} trial {i}: checker flagged a controllable pair")
            })?;
        }
        literal.push(r.unstable_hits);
    }
    // uncontrollable pairs have density ≈ 5e-5 at bound 9; far more hits would point at the sampler
    let total: u64 = literal.iter().sum();
    ensure(total <= 25, || {
        format!("hit counts {literal:?} far above the measured density")
    })?;
    let mut wide = Vec::new();
    for seed in SEEDS {
        let mut cfg = TrialConfig::new(control_3_2(), seed);
        cfg.trials = 10_000;
        cfg.entry_bound = 99;
        wide.push(sample_generic_points(&cfg).map_err(|e| e.to_string())?.unstable_hits);
    }
    ensure(wide.iter().all(|&h| h == 0), || format!("bound 99 hits {wide:?}"))?;
    if total == 0 {
        return Ok(Outcome::Pass("bound 9: unstable_hits = 0 for all 10 seeds".into()));
    }
    Ok(Outcome::Deviation(format!(
        "bound 9 gives unstable_hits {literal:?} over seeds 42..51, every hit an uncontrollable pair \
         confirmed by the Krylov oracle (the locus is hit with probability ~5e-5 per draw at this bound); \
         bound 99 gives 0 for all 10 seeds"
    )))
}

fn path_suite() -> Result<Outcome, String> {
    let mut parts = Vec::new();
    for (name, spec) in [("control", control_3_2()), ("dag", dag_10_3())] {
        let start = Instant::now();
        for seed in SEEDS {
            let mut cfg = TrialConfig::new(spec.clone(), seed);
            cfg.paths = 100;
            cfg.path_samples = 256;
            let r = sample_path_stability(&cfg).map_err(|e| e.to_string())?;
            ensure(r.skipped.is_none(), || {
                format!("{name} seed {seed} skipped: {:?}", r.skipped)
            })?;
            ensure(r.paths_run == 100 && r.path_failures == 0, || {
                format!("{name} seed {seed}: {r:?}")
            })?;
        }
        within(Duration::from_secs(30), start, name)?;
        parts.push(format!("{name} {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(Outcome::Pass(format!(
        "100 paths x 257 points, 10 seeds, 0 failures ({})",
        parts.join(", ")
    )))
}

fn degenerate_detection() -> Result<Outcome, String> {
    let mut cfg = TrialConfig::new(dag_10_3(), 42);
    cfg.trials = 1000;
    let r = detect_constructed_degenerates(&cfg).map_err(|e| e.to_string())?;
    ensure(r.unstable_hits == 1000 && r.oracle_mismatches == 0, || format!("{r:?}"))?;
    Ok(Outcome::Pass(
        "1000/1000 flagged NotStable, 1000/1000 stabilized (eps = 1/1000)".into(),
    ))
}

fn quiver_identity() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for q in 0..50 {
        let n = rng.gen_range(1..=4);
        let mut arrows = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    arrows.extend(std::iter::repeat_n((s, t), rng.gen_range(0..=3)));
                }
            }
        }
        let mut dim: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        if dim.iter().all(|&v| v == 0) {
            dim[0] = 1;
        }
        let spec = QuiverSpec::new(n, arrows, dim.clone(), vec![0; n]).map_err(|e| e.to_string())?;
        let family = FamilySpec::Quiver(spec.clone());
        let g = spec.group();
        for sub in sub_dimension_vectors(&dim) {
            let d: Vec<i64> = sub.iter().map(|&x| x as i64).collect();
            let e: Vec<i64> = dim.iter().zip(&d).map(|(&v, &x)| v as i64 - x).collect();
            let chi = git_topo::families::euler_form(&spec, &d, &e).map_err(|e| e.to_string())?;
            let l = spec.sub_dimension_one_ps(&sub).map_err(|e| e.to_string())?;
            let m = negative_weight_dim(&family, &l).map_err(|e| e.to_string())? as i64;
            let orbit = orbit_dim(&g, &l, OrbitConvention::Parabolic).map_err(|e| e.to_string())? as i64;
            ensure(2 * m - 2 * orbit == -2 * chi, || format!("quiver {q}, d'={sub:?}"))?;
            checked += 1;
        }
    }
    Ok(Outcome::Pass(format!(
        "50 quivers, {checked} sub-dimension vectors, 0 violations"
    )))
}

fn equivariance() -> Result<Outcome, String> {
    let families = [
        ("control", control_3_2()),
        ("dag", dag_10_3()),
        ("kronecker", FamilySpec::Quiver(QuiverSpec::kronecker(2))),
        (
            "quiver",
            FamilySpec::Quiver(
                QuiverSpec::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 1)], vec![1, 1, 1], vec![2, -1, -1]).unwrap(),
            ),
        ),
    ];
    for (name, spec) in families {
        let r = equivariance_check(&spec, 1000, 42, 9).map_err(|e| e.to_string())?;
        ensure(r.trials_run == 1000 && r.oracle_mismatches == 0, || {
            format!("{name}: {r:?}")
        })?;
    }
    Ok(Outcome::Pass(
        "1000 group elements each for control, dag, two quivers; 0 violations".into(),
    ))
}

fn krylov() -> Result<Outcome, String> {
    let r = krylov_consistency_check(4, 1000, 42, 9).map_err(|e| e.to_string())?;
    ensure(r.trials_run == 1000 && r.oracle_mismatches == 0, || format!("{r:?}"))?;
    Ok(Outcome::Pass("1000 pairs with n <= 4, 0 violations".into()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("Kronecker reproduction", kronecker_reproduction),
        ("Kronecker oracle", kronecker_oracle),
        ("control strata", control_strata),
        ("convention sensitivity", convention_sensitivity),
        ("DAG reproduction", dag_reproduction),
        ("Monte Carlo genericity", monte_carlo_genericity),
        ("path suite", path_suite),
        ("degenerate detection", degenerate_detection),
        ("quiver Euler-form identity", quiver_identity),
        ("equivariance", equivariance),
        ("Krylov consistency", krylov),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(Outcome::Pass(d)) => ("PASS", d),
            Ok(Outcome::Deviation(d)) => ("DEVIATION", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag:<9} {name} [{secs:.2}s]: {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria failed", failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
