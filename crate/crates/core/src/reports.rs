//! Input files, report types, canonical JSON and text rendering behind the
//! `git-topo` command line.
//!
//! Instance files are JSON objects tagged by `"family"`:
//!
//! ```json
//! {"family": "control", "n": 2, "m": 1, "A": [["0", "1"], ["0", "0"]], "B": [["0"], ["1"]]}
//! {"family": "dag", "n": 3, "k": 2, "Y": [["1", "0", "5"], ["0", "1", "7"], ["0", "0", "9"]]}
//! {"family": "quiver", "vertices": 2, "arrows": [[1, 2], [1, 2]], "dim": [1, 1],
//!  "theta": [1, -1], "values": ["0", ["1", "-1/2"]]}
//! ```
//!
//! Rationals are lowest-terms strings `"p"` or `"p/q"` (plain JSON integers are
//! also accepted on input). Quiver vertices are 1-indexed and arrow values are
//! either a rational string or a `[re, im]` pair.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{ComplexRational, GroupSpec, OrbitConvention, Rational, RationalMatrix};
use crate::connectivity::{analyze, d_min, free_action_caveat, homotopy_table, ConnectivityReport, HomotopyEntry};
use crate::error::{Error, Result};
use crate::families::{
    dag_solve_mle, dag_stabilize, enumerate_strata, ControlInstance, ControlSpec, DagInstance, DagSpec, FamilySpec,
    FamilyTag, ModelInstance, QuiverSpec, StabilityStatus, ThinQuiverRep,
};
use crate::harness::{
    detect_constructed_degenerates, kronecker_oracle_check, sample_generic_points, sample_path_stability,
    HarnessReport, TrialConfig,
};

/// Serialize with object keys sorted (serde_json's map is ordered) and a
/// trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::schema("report", e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::schema("report", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parse `"1->2,1->3"` into 0-based arrow pairs.
pub fn parse_arrow_list(text: &str) -> Result<Vec<(usize, usize)>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let bad = || {
                Error::schema(
                    "arrows",
                    format!("expected `s->t` with 1-indexed vertices, got {item:?}"),
                )
            };
            let (s, t) = item.split_once("->").ok_or_else(bad)?;
            let s: usize = s.trim().parse().map_err(|_| bad())?;
            let t: usize = t.trim().parse().map_err(|_| bad())?;
            if s == 0 || t == 0 {
                return Err(bad());
            }
            Ok((s - 1, t - 1))
        })
        .collect()
}

/// Parse a comma-separated integer list such as `"1,-1"`.
pub fn parse_int_list<T: std::str::FromStr>(field: &str, text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::schema(field, format!("expected a comma-separated integer list, got {text:?}")))
        })
        .collect()
}

/// Quiver family from command-line strings. The vertex count is the length of `dim`.
pub fn quiver_family(arrows: &str, dim: &str, theta: &str) -> Result<FamilySpec> {
    let dim: Vec<usize> = parse_int_list("dim", dim)?;
    let theta: Vec<i64> = parse_int_list("theta", theta)?;
    Ok(FamilySpec::Quiver(QuiverSpec::new(
        dim.len(),
        parse_arrow_list(arrows)?,
        dim,
        theta,
    )?))
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| Error::schema(name, "missing field"))
}

fn parse_usize(v: &Value, name: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::schema(name, format!("expected a non-negative integer, got {v}")))
}

fn parse_i64(v: &Value, name: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::schema(name, format!("expected an integer, got {v}")))
}

fn parse_array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(name, format!("expected an array, got {v}")))
}

fn parse_rational(v: &Value, name: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|e: Error| match e {
            Error::Schema { message, .. } => Error::schema(name, message),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().expect("checked"))),
        _ => Err(Error::schema(
            name,
            format!("expected a rational string like \"-3/4\", got {v}"),
        )),
    }
}

fn parse_complex(v: &Value, name: &str) -> Result<ComplexRational> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(ComplexRational::new(
            parse_rational(&parts[0], &format!("{name}.re"))?,
            parse_rational(&parts[1], &format!("{name}.im"))?,
        )),
        Value::Array(_) => Err(Error::schema(name, "complex values are [re, im] pairs")),
        _ => Ok(ComplexRational::real(parse_rational(v, name)?)),
    }
}

fn parse_matrix(v: &Value, name: &str, rows: usize, cols: usize) -> Result<RationalMatrix> {
    let outer = parse_array(v, name)?;
    if outer.len() != rows {
        return Err(Error::schema(
            name,
            format!("expected {rows} rows, got {}", outer.len()),
        ));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in outer.iter().enumerate() {
        let row_name = format!("{name}[{i}]");
        let row = parse_array(row, &row_name)?;
        if row.len() != cols {
            return Err(Error::schema(
                row_name,
                format!("expected {cols} columns, got {}", row.len()),
            ));
        }
        for (j, x) in row.iter().enumerate() {
            entries.push(parse_rational(x, &format!("{name}[{i}][{j}]"))?);
        }
    }
    RationalMatrix::new(rows, cols, entries)
}

/// Parse an instance file (see the module docs for the schema).
pub fn parse_instance(text: &str) -> Result<ModelInstance> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("<file>", e.to_string()))?;
    instance_from_json(&v)
}

pub fn instance_from_json(v: &Value) -> Result<ModelInstance> {
    let family = field(v, "family")?
        .as_str()
        .ok_or_else(|| Error::schema("family", "expected a string"))?;
    match family {
        "control" => {
            let spec = ControlSpec::new(parse_usize(field(v, "n")?, "n")?, parse_usize(field(v, "m")?, "m")?)?;
            let a = parse_matrix(field(v, "A")?, "A", spec.n, spec.n)?;
            let b = parse_matrix(field(v, "B")?, "B", spec.n, spec.m)?;
            Ok(ModelInstance::Control(ControlInstance::new(a, b)?))
        }
        "dag" => {
            let spec = DagSpec::new(parse_usize(field(v, "n")?, "n")?, parse_usize(field(v, "k")?, "k")?)?;
            let y = parse_matrix(field(v, "Y")?, "Y", spec.n, spec.k + 1)?;
            Ok(ModelInstance::Dag(DagInstance::new(y, spec.k)?))
        }
        "quiver" => {
            let vertices = parse_usize(field(v, "vertices")?, "vertices")?;
            let arrows = parse_array(field(v, "arrows")?, "arrows")?
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let name = format!("arrows[{i}]");
                    let pair = parse_array(a, &name)?;
                    if pair.len() != 2 {
                        return Err(Error::schema(name, "expected [source, target]"));
                    }
                    let s = parse_usize(&pair[0], &name)?;
                    let t = parse_usize(&pair[1], &name)?;
                    if s == 0 || t == 0 {
                        return Err(Error::schema(name, "vertices are 1-indexed"));
                    }
                    Ok((s - 1, t - 1))
                })
                .collect::<Result<Vec<_>>>()?;
            let dim = parse_array(field(v, "dim")?, "dim")?
                .iter()
                .map(|x| parse_usize(x, "dim"))
                .collect::<Result<Vec<_>>>()?;
            let theta = parse_array(field(v, "theta")?, "theta")?
                .iter()
                .map(|x| parse_i64(x, "theta"))
                .collect::<Result<Vec<_>>>()?;
            let values = parse_array(field(v, "values")?, "values")?
                .iter()
                .enumerate()
                .map(|(i, x)| parse_complex(x, &format!("values[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let spec = QuiverSpec::new(vertices, arrows, dim, theta)?;
            Ok(ModelInstance::Quiver(ThinQuiverRep::new(spec, values)?))
        }
        other => Err(Error::schema(
            "family",
            format!("unknown family {other:?}; expected quiver, control or dag"),
        )),
    }
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn complex_json(z: &ComplexRational) -> Value {
    if z.im.is_zero() {
        Value::String(z.re.to_string())
    } else {
        json!([z.re.to_string(), z.im.to_string()])
    }
}

/// Inverse of [`instance_from_json`].
pub fn instance_to_json(x: &ModelInstance) -> Value {
    match x {
        ModelInstance::Control(c) => {
            let s = c.spec();
            json!({"family": "control", "n": s.n, "m": s.m, "A": matrix_json(c.a()), "B": matrix_json(c.b())})
        }
        ModelInstance::Dag(d) => {
            let s = d.spec();
            json!({"family": "dag", "n": s.n, "k": s.k, "Y": matrix_json(d.samples())})
        }
        ModelInstance::Quiver(q) => {
            let s = q.spec();
            json!({
                "family": "quiver",
                "vertices": s.vertex_count(),
                "arrows": s.arrows().iter().map(|&(a, b)| json!([a + 1, b + 1])).collect::<Vec<_>>(),
                "dim": s.dim_vector(),
                "theta": s.theta(),
                "values": q.values().iter().map(complex_json).collect::<Vec<_>>(),
            })
        }
    }
}

pub fn run_analyze(spec: &FamilySpec, conv: Option<OrbitConvention>, max_q: Option<u32>) -> Result<ConnectivityReport> {
    analyze(spec, conv.unwrap_or_else(|| spec.default_convention()), max_q)
}

pub fn render_analyze(r: &ConnectivityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "family: {}   group: {}   convention: {}",
        r.family.as_str(),
        r.group,
        r.convention
    );
    let _ = writeln!(out, "strata ({}):", r.strata.len());
    let _ = writeln!(
        out,
        "  {:<24} {:>6} {:>10} {:>7} {:>8}",
        "descriptor", "m", "orbit_dim", "value", "pairing"
    );
    for s in &r.strata {
        let _ = writeln!(
            out,
            "  {:<24} {:>6} {:>10} {:>7} {:>8}",
            s.descriptor.to_string(),
            s.m,
            s.orbit_dim,
            s.value,
            s.pairing
        );
    }
    let d = r
        .d_min
        .map_or_else(|| "none (no strata)".to_string(), |d| d.to_string());
    let _ = writeln!(out, "d_min: {d}");
    let _ = writeln!(out, "connectivity: {}", r.connectivity_statement);
    if let Some(t) = &r.thresholds {
        let _ = writeln!(
            out,
            "thresholds: path-connected for n >= {}, simply connected for n >= {}",
            t.path_connected_min_samples, t.simply_connected_min_samples
        );
    }
    if !r.homotopy.is_empty() {
        let _ = writeln!(out, "homotopy of V^st/G: {}", render_table(&r.homotopy));
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn render_table(t: &[HomotopyEntry]) -> String {
    let cells: Vec<String> = t.iter().map(|e| format!("{}:{}", e.q, e.group.pretty())).collect();
    format!("[{}]", cells.join(", "))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub mle: bool,
    /// Run `dag_stabilize` with this `ε`.
    pub stabilize: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub family: FamilyTag,
    pub status: StabilityStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mle: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    /// The stabilized sample, in instance-file form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized_status: Option<StabilityStatus>,
}

pub fn run_check(x: &ModelInstance, opts: &CheckOptions) -> Result<CheckReport> {
    let dag = match x {
        ModelInstance::Dag(d) => Some(d),
        _ => None,
    };
    if dag.is_none() && (opts.mle || opts.stabilize.is_some()) {
        return Err(Error::Validation(
            "--mle and --stabilize apply to the dag family only".into(),
        ));
    }
    let mut report = CheckReport {
        family: x.tag(),
        status: x.status()?,
        mle: None,
        epsilon: None,
        stabilized: None,
        stabilized_status: None,
    };
    if let Some(d) = dag {
        // with --stabilize the estimate is taken on the completed sample
        let mut target = d.clone();
        if let Some(eps) = &opts.stabilize {
            target = dag_stabilize(d, eps)?;
            let s = ModelInstance::Dag(target.clone());
            report.stabilized_status = Some(s.status()?);
            report.stabilized = Some(instance_to_json(&s));
            report.epsilon = Some(eps.clone());
        }
        if opts.mle {
            report.mle = Some(dag_solve_mle(&target)?);
        }
    }
    Ok(report)
}

fn render_status(s: &StabilityStatus) -> String {
    let evidence = serde_json::to_value(&s.evidence)
        .map(|v| v.to_string())
        .unwrap_or_default();
    format!("{} {evidence}", s.verdict.label())
}

pub fn render_check(r: &CheckReport) -> String {
    let mut out = format!("family: {}\nstatus: {}\n", r.family.as_str(), render_status(&r.status));
    if let Some(beta) = &r.mle {
        let cells: Vec<String> = beta.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "mle beta: [{}]", cells.join(", "));
    }
    if let (Some(eps), Some(st)) = (&r.epsilon, &r.stabilized_status) {
        let _ = writeln!(out, "stabilized with epsilon {eps}: {}", render_status(st));
    }
    if let Some(sample) = &r.stabilized {
        let _ = writeln!(out, "stabilized sample: {sample}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub family: FamilyTag,
    pub group: GroupSpec,
    pub convention: OrbitConvention,
    pub d_min: Option<i64>,
    pub table: Vec<HomotopyEntry>,
    pub assumption: String,
    pub notes: Vec<String>,
}

const FREE_ACTION: &str = "G acts freely on V^st (attested by the caller, not verified)";

pub fn run_homotopy(
    spec: &FamilySpec,
    conv: Option<OrbitConvention>,
    max_q: u32,
    assume_free_action: bool,
) -> Result<HomotopyReport> {
    if !assume_free_action {
        return Err(Error::Precondition(
            "the homotopy table of V^st/G is only valid when G acts freely on V^st, which this tool \
             cannot check; pass --assume-free-action to attest it"
                .into(),
        ));
    }
    let conv = conv.unwrap_or_else(|| spec.default_convention());
    let d = d_min(&enumerate_strata(spec, conv)?);
    let group = spec.group();
    let table = homotopy_table(&group, d, max_q);
    let mut notes =
        vec!["entries outside 1 <= q < d_min - 1 or outside the stable range of U(k) are unknown".to_string()];
    notes.extend(free_action_caveat(spec));
    if let FamilySpec::Dag(dag) = spec {
        if u64::from(max_q) >= 2 * dag.k as u64 {
            notes.push(format!(
                "q = 2k = {} lies at the edge of the stable range; the entry there follows pi_(2k-1)(U(k)) = Z",
                2 * dag.k
            ));
        }
    }
    Ok(HomotopyReport {
        family: spec.tag(),
        group,
        convention: conv,
        d_min: d,
        table,
        assumption: FREE_ACTION.into(),
        notes,
    })
}

pub fn render_homotopy(r: &HomotopyReport) -> String {
    let d = r.d_min.map_or_else(|| "none".to_string(), |d| d.to_string());
    let mut out = format!(
        "family: {}   group: {}   convention: {}   d_min: {d}\nassuming {}\n",
        r.family.as_str(),
        r.group,
        r.convention,
        r.assumption
    );
    for e in &r.table {
        let _ = writeln!(out, "  pi_{}(V^st/G) = {}", e.q, e.group.pretty());
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyRequest {
    Family {
        config: TrialConfig,
        expect_degenerate: bool,
    },
    Kronecker {
        grid_radius: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<TrialConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_radius: Option<i64>,
    pub expect_degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic: Option<HarnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<HarnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerates: Option<HarnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<HarnessReport>,
    pub passed: bool,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

/// Run the harness checks selected by `req`.
///
/// For a family: generic sampling, then paths when `paths > 0`, then (DAG with
/// `n ≥ k ≥ 2`) the constructed-degenerate check. `passed` is false iff a
/// generic draw was not stable, a path evaluation failed or an oracle
/// mismatched. With `expect_degenerate` the generic condition flips: every draw
/// must be non-stable.
pub fn run_verify(req: &VerifyRequest) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        config: None,
        grid_radius: None,
        expect_degenerate: false,
        generic: None,
        paths: None,
        degenerates: None,
        oracle: None,
        passed: true,
        failures: Vec::new(),
        notes: vec!["path sampling is finite evidence, not a proof of connectivity".into()],
    };
    match req {
        VerifyRequest::Kronecker { grid_radius } => {
            let o = kronecker_oracle_check(*grid_radius)?;
            if o.oracle_mismatches > 0 {
                report.failures.push(format!(
                    "{} Kronecker grid points disagree with the oracle",
                    o.oracle_mismatches
                ));
            }
            report.grid_radius = Some(*grid_radius);
            report.oracle = Some(o);
        }
        VerifyRequest::Family {
            config,
            expect_degenerate,
        } => {
            report.config = Some(config.clone());
            report.expect_degenerate = *expect_degenerate;
            if let FamilySpec::Dag(d) = &config.family {
                if d.n < d.k {
                    report.notes.push(format!(
                        "n = {} < k = {}: the parent block has rank at most n, so no sample is stable",
                        d.n, d.k
                    ));
                }
            }
            let g = sample_generic_points(config)?;
            if *expect_degenerate {
                if g.unstable_hits != g.trials_run {
                    report.failures.push(format!(
                        "expected every draw to be degenerate, but {} of {} were stable",
                        g.trials_run - g.unstable_hits,
                        g.trials_run
                    ));
                }
            } else if g.unstable_hits > 0 {
                report.failures.push(format!(
                    "{} of {} generic draws were not stable",
                    g.unstable_hits, g.trials_run
                ));
            }
            report.generic = Some(g);

            if config.paths > 0 {
                let p = sample_path_stability(config)?;
                if let Some(why) = &p.skipped {
                    report.notes.push(format!("path test skipped: {why}"));
                }
                if p.path_failures > 0 {
                    report
                        .failures
                        .push(format!("{} path evaluations were not stable", p.path_failures));
                }
                report.paths = Some(p);
            }

            if let FamilySpec::Dag(d) = &config.family {
                if d.n >= d.k && d.k >= 2 {
                    let r = detect_constructed_degenerates(config)?;
                    if r.oracle_mismatches > 0 {
                        report.failures.push(format!(
                            "{} constructed rank-deficient samples were misclassified or not repaired",
                            r.oracle_mismatches
                        ));
                    }
                    report.degenerates = Some(r);
                }
            }
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    if let Some(c) = &r.config {
        let _ = writeln!(
            out,
            "family: {}   trials: {}   paths: {} x {}   bound: {}   seed: {}",
            c.family.tag().as_str(),
            c.trials,
            c.paths,
            c.path_samples,
            c.entry_bound,
            c.seed
        );
    }
    if let Some(g) = r.grid_radius {
        let _ = writeln!(out, "kronecker grid radius: {g}");
    }
    let mut line = |name: &str, h: &Option<HarnessReport>| {
        if let Some(h) = h {
            let _ = writeln!(
                out,
                "  {name:<12} trials {:>6}  unstable {:>6}  paths {:>4}  path_failures {:>4}  mismatches {:>4}  ({} ms)",
                h.trials_run,
                h.unstable_hits,
                h.paths_run,
                h.path_failures,
                h.oracle_mismatches,
                h.elapsed.as_millis()
            );
        }
    };
    line("generic", &r.generic);
    line("paths", &r.paths);
    line("degenerates", &r.degenerates);
    line("oracle", &r.oracle);
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for f in &r.failures {
        let _ = writeln!(out, "FAIL: {f}");
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

/// JSON body for an error, as printed by the CLI.
pub fn error_json(e: &Error) -> Value {
    let mut body = json!({"kind": e.kind(), "message": e.to_string()});
    if let Error::Schema { field, .. } = e {
        body["field"] = Value::String(field.clone());
    }
    json!({ "error": body })
}
