//! Running a job and rendering the result.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use admissible::blowup::standard_chart;
use admissible::fiber::{ev_monomorphism_check, EvVerdict, FiberAlgebraModel};
use admissible::homological::{
    fitting, generic_rank, ideal_strings, is_invertible_ideal, lemma2_certificate, local_freeness_certificate,
    Lemma2Verdict, LocalFreenessVerdict,
};
use admissible::polarization::{fiber_hilbert_line, sheaf_hilbert_check, FiberLine, SheafHilbertReport};
use admissible::tower::{default_padding, plan, resolution_independence_check, ChartCertificate, FinalChart};
use admissible::{
    distinguished_polarization, hilbert, run_tower, CoordRing, Error, Ideal, ModulePresentation, PolarizationSpec,
    ResolutionTower,
};
use serde::Serialize;
use serde_json::Value;

use crate::job::{CertifyKind, Command, Diagnostic, JobSpec, Options};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Rejected,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Rejected => 2,
            Status::Error => 3,
        }
    }

    fn of_error(e: &Error) -> Status {
        match e {
            Error::CertificateFailed(_) => Status::Fail,
            Error::RingMismatch(_) => Status::Error,
            _ => Status::Rejected,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::RingMismatch(_) => "ring_mismatch",
        Error::Domain(_) => "domain",
        Error::Parse { .. } => "parse",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::Inhomogeneous(_) => "inhomogeneous",
        Error::DegenerateBlowup(_) => "degenerate_blowup",
        Error::DecomposeFirst(_) => "decompose_first",
        Error::Precondition(_) => "precondition",
        Error::Scope(_) => "scope",
        Error::CertificateFailed(_) => "certificate_failed",
    }
}

/// The deterministic part of a report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Option<Command>,
    pub options: Option<Options>,
    pub input: Option<String>,
    pub input_sha256: Option<String>,
    pub status: Status,
    pub exit_code: i32,
    pub diagnostics: Vec<Diagnostic>,
    pub error: Option<Failure>,
    pub result: Option<Value>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn rejected(diagnostics: Vec<Diagnostic>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: None,
            options: None,
            input: None,
            input_sha256: None,
            status: Status::Rejected,
            exit_code: Status::Rejected.exit_code(),
            diagnostics,
            error: None,
            result: None,
            text: String::new(),
            timings: Vec::new(),
        }
    }

    pub fn internal(message: String) -> Report {
        let mut r = Report::rejected(Vec::new());
        r.status = Status::Error;
        r.exit_code = Status::Error.exit_code();
        r.error = Some(Failure {
            kind: "internal".into(),
            message,
        });
        r
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if timings {
            let t: serde_json::Map<String, Value> = self
                .timings
                .iter()
                .map(|(k, d)| (k.clone(), Value::from(d.as_secs_f64() * 1e3)))
                .collect();
            v["volatile"] = serde_json::json!({ "timings_ms": t });
        }
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut s = String::new();
        if let Some(c) = &self.command {
            let _ = writeln!(s, "command: {}", c.name());
        }
        if let Some(h) = &self.input_sha256 {
            let _ = writeln!(s, "input sha256: {h}");
        }
        if let Some(i) = &self.input {
            for l in i.lines() {
                let _ = writeln!(s, "  | {l}");
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "error: {d}");
        }
        s.push_str(&self.text);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error[{}]: {}", e.kind, e.message);
        }
        let _ = writeln!(s, "status: {}", format!("{:?}", self.status).to_uppercase());
        if timings && !self.timings.is_empty() {
            s.push_str("-- volatile --\n");
            for (k, d) in &self.timings {
                let _ = writeln!(s, "time {k}: {:.3} ms", d.as_secs_f64() * 1e3);
            }
        }
        s
    }
}

struct Section {
    value: Value,
    text: String,
    pass: bool,
}

struct Ctx<'a> {
    job: &'a JobSpec,
    timings: Vec<(String, Duration)>,
}

impl Ctx<'_> {
    fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((phase.to_string(), start.elapsed()));
        out
    }

    fn shown(&self, label: &str) -> bool {
        let filters = &self.job.options.charts;
        filters.is_empty() || filters.iter().any(|f| label.starts_with(f.as_str()))
    }
}

pub fn execute(job: &JobSpec) -> Report {
    let mut ctx = Ctx {
        job,
        timings: Vec::new(),
    };
    let outcome = ctx
        .timed("build", || job.input.build())
        .and_then(|(ring, m)| run_command(&mut ctx, &ring, &m));
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: Some(job.command.clone()),
        options: Some(job.options.clone()),
        input: Some(job.input.canonical()),
        input_sha256: Some(job.input.sha256()),
        status: Status::Pass,
        exit_code: 0,
        diagnostics: Vec::new(),
        error: None,
        result: None,
        text: String::new(),
        timings: Vec::new(),
    };
    match outcome {
        Ok(sec) => {
            report.status = if sec.pass { Status::Pass } else { Status::Fail };
            report.result = Some(sec.value);
            report.text = sec.text;
        }
        Err(e) => {
            report.status = Status::of_error(&e);
            report.error = Some(Failure {
                kind: error_kind(&e).into(),
                message: e.to_string(),
            });
        }
    }
    report.exit_code = report.status.exit_code();
    report.timings = ctx.timings;
    report
}

fn run_command(ctx: &mut Ctx<'_>, ring: &std::sync::Arc<CoordRing>, m: &ModulePresentation) -> Result<Section, Error> {
    match ctx.job.command.clone() {
        Command::Resolve => {
            let tower = ctx.timed("tower", || run_tower(m))?;
            resolve_section(ctx, &tower)
        }
        Command::Certify { kind } => certify(ctx, ring, m, kind),
        Command::Hilbert { m: exp, nmax } => {
            let tower = ctx.timed("tower", || run_tower(m))?;
            hilbert_section(ctx, ring, &tower, exp, nmax)
        }
        Command::Fitting { index } => fitting_section(ctx, m, index),
        Command::Report { m: exp, nmax } => {
            let tower = ctx.timed("tower", || run_tower(m))?;
            let a = resolve_section(ctx, &tower)?;
            let b = hilbert_section(ctx, ring, &tower, exp, nmax)?;
            Ok(Section {
                value: serde_json::json!({ "resolve": a.value, "hilbert": b.value }),
                text: a.text + &b.text,
                pass: a.pass && b.pass,
            })
        }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct StepIdealOut {
    chart: String,
    identity: bool,
    generators: Vec<String>,
    atlas_ok: bool,
}

#[derive(Serialize)]
struct StepOut {
    index: usize,
    k: usize,
    ideals: Vec<StepIdealOut>,
    certificates: Vec<ChartCertificate>,
}

#[derive(Serialize)]
struct ResolveOut {
    rank: usize,
    resolution_twists: Vec<Vec<i64>>,
    segment_ranks: Vec<usize>,
    steps: Vec<StepOut>,
    global_first_ideal: Option<Vec<String>>,
    global_first_consistent: bool,
    final_charts: Vec<FinalChart>,
    polarization: PolarizationSpec,
    pass: bool,
}

fn resolve_section(ctx: &mut Ctx<'_>, tower: &ResolutionTower) -> Result<Section, Error> {
    let exps = ctx.job.options.exponents.clone();
    let pol = ctx.timed("polarization", || distinguished_polarization(tower, exps.as_deref()))?;
    let mut pass = tower.global_first_consistent;
    let steps: Vec<StepOut> = tower
        .steps
        .iter()
        .map(|s| {
            pass &= s.ideals.iter().all(|i| i.atlas_ok) && s.certificates.iter().all(|c| c.pass);
            StepOut {
                index: s.index,
                k: s.k,
                ideals: s
                    .ideals
                    .iter()
                    .filter(|i| ctx.shown(&i.label))
                    .map(|i| StepIdealOut {
                        chart: i.label.clone(),
                        identity: i.identity,
                        generators: i.ideal.gb().iter().map(|g| g.to_string()).collect(),
                        atlas_ok: i.atlas_ok,
                    })
                    .collect(),
                certificates: s.certificates.iter().filter(|c| ctx.shown(&c.label)).cloned().collect(),
            }
        })
        .collect();
    pass &= tower.final_charts.iter().all(|c| c.locally_free);
    let out = ResolveOut {
        rank: tower.rank(),
        resolution_twists: tower.plan.resolution.twists(),
        segment_ranks: tower.plan.ranks.clone(),
        steps,
        global_first_ideal: tower
            .global_first_ideal
            .as_ref()
            .map(|i| i.gb().iter().map(|g| g.to_string()).collect()),
        global_first_consistent: tower.global_first_consistent,
        final_charts: tower.final_charts.iter().filter(|c| ctx.shown(&c.label)).cloned().collect(),
        polarization: pol,
        pass,
    };
    let mut t = String::new();
    let _ = writeln!(t, "tower: {} step(s), rank {}", out.steps.len(), out.rank);
    let res: Vec<String> = out
        .resolution_twists
        .iter()
        .enumerate()
        .map(|(k, tw)| {
            let parts: Vec<String> = tw.iter().map(|d| format!("R({d})")).collect();
            format!("F{k} = {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
        })
        .collect();
    let _ = writeln!(t, "resolution: {}", res.join(" <- "));
    if let Some(g) = &out.global_first_ideal {
        let _ = writeln!(
            t,
            "first step ideal: ({}) consistent={}",
            g.join(", "),
            out.global_first_consistent
        );
    }
    for s in &out.steps {
        let _ = writeln!(t, "step {} (segment W_{}):", s.index, s.k);
        for i in &s.ideals {
            if i.identity {
                let _ = writeln!(t, "  chart {}: identity", i.chart);
            } else {
                let _ = writeln!(
                    t,
                    "  chart {}: blow up ({}) atlas {}",
                    i.chart,
                    i.generators.join(", "),
                    verdict(i.atlas_ok)
                );
            }
        }
        for c in s.certificates.iter().filter(|c| !c.identity) {
            let _ = writeln!(
                t,
                "  cert {}: {} hd={} fitt0=({}) invertible={} exceptional={} kernel_free={} strict_free={}",
                c.label,
                verdict(c.pass),
                c.homological_dimension.map_or("-".into(), |h| h.to_string()),
                c.fitting0.join(", "),
                c.fitting0_invertible,
                c.fitting0_is_exceptional,
                c.kernel_locally_free,
                c.strict_locally_free
            );
        }
    }
    let _ = writeln!(t, "final charts:");
    for c in &out.final_charts {
        let _ = writeln!(
            t,
            "  {:<8} {:<24} rank {} {}",
            c.label,
            c.ring,
            c.rank,
            if c.locally_free { "locally free" } else { "NOT locally free" }
        );
    }
    let p = &out.polarization;
    let _ = writeln!(
        t,
        "polarization: exponents {:?}{} base exponent {}",
        p.exponents,
        if p.defaulted { " (default)" } else { "" },
        p.base_exponent
    );
    let _ = writeln!(t, "tower verdict: {}", verdict(pass));
    Ok(Section {
        value: json(&out),
        text: t,
        pass,
    })
}

#[derive(Serialize)]
struct ChartFreeness {
    chart: String,
    verdict: LocalFreenessVerdict,
}

fn certify(
    ctx: &mut Ctx<'_>,
    ring: &std::sync::Arc<CoordRing>,
    m: &ModulePresentation,
    kind: CertifyKind,
) -> Result<Section, Error> {
    match kind {
        CertifyKind::Lemma2 => {
            let v: Lemma2Verdict = ctx.timed("lemma2", || lemma2_certificate(m))?;
            let text = format!(
                "lemma2: hd={} fitt0=({}) invertible={} -> {}\n",
                v.homological_dimension,
                v.fitting0.join(", "),
                v.fitting0_invertible,
                verdict(v.pass)
            );
            Ok(Section {
                value: json(&v),
                text,
                pass: v.pass,
            })
        }
        CertifyKind::Locfree => {
            let r = match ctx.job.options.rank {
                Some(r) => r,
                None => generic_rank(m)?,
            };
            let charts = ctx.timed("locfree", || {
                (0..ring.ring().nvars())
                    .map(|i| {
                        let (a, images) = standard_chart(ring, i)?;
                        let local = m.pullback(&images, &a);
                        Ok(ChartFreeness {
                            chart: ring.ring().vars()[i].clone(),
                            verdict: local_freeness_certificate(&local, r)?,
                        })
                    })
                    .collect::<Result<Vec<_>, Error>>()
            })?;
            let pass = charts.iter().all(|c| c.verdict.pass);
            let mut text = format!("local freeness of rank {r}:\n");
            for c in charts.iter().filter(|c| ctx.shown(&c.chart)) {
                let _ = writeln!(
                    text,
                    "  chart {}: Fitt_r=({}) Fitt_(r-1)=({}) {}",
                    c.chart,
                    c.verdict.fitting_r.join(", "),
                    c.verdict.fitting_r_minus_1.join(", "),
                    verdict(c.verdict.pass)
                );
            }
            let shown: Vec<&ChartFreeness> = charts.iter().filter(|c| ctx.shown(&c.chart)).collect();
            Ok(Section {
                value: serde_json::json!({ "rank": r, "charts": json(&shown), "pass": pass }),
                text,
                pass,
            })
        }
        CertifyKind::Independence => {
            let p = plan(m)?;
            let pads = default_padding(&p.resolution);
            let v = ctx.timed("independence", || resolution_independence_check(m, &pads))?;
            let mut text = format!("padding {:?}\n", v.padding);
            for (s, l, eq) in &v.comparisons {
                let _ = writeln!(text, "  step {s} chart {l}: {}", if *eq { "equal" } else { "DIFFERENT" });
            }
            let _ = writeln!(text, "independence: {}", verdict(v.pass));
            Ok(Section {
                value: json(&v),
                text,
                pass: v.pass,
            })
        }
        CertifyKind::Ev => {
            let tower = ctx.timed("tower", || run_tower(m))?;
            let v = match &tower.global_first_ideal {
                Some(i) => {
                    let model = FiberAlgebraModel::new(ring, i)?;
                    ctx.timed("ev", || ev_monomorphism_check(&model, m, 2, false))?
                }
                None => EvVerdict {
                    applicable: false,
                    pass: true,
                    slices: Vec::new(),
                    witness: None,
                },
            };
            let mut text = String::new();
            for (s, q, ok) in &v.slices {
                let _ = writeln!(text, "  slice s={s} q={q}: {}", verdict(*ok));
            }
            let _ = writeln!(
                text,
                "ev monomorphism: {}{}",
                verdict(v.pass),
                if v.applicable { "" } else { " (vacuous)" }
            );
            Ok(Section {
                value: json(&v),
                text,
                pass: v.pass,
            })
        }
    }
}

#[derive(Serialize)]
struct FittingOut {
    index: usize,
    generators: Vec<String>,
    unit: bool,
    zero: bool,
    invertible: bool,
}

fn fitting_section(ctx: &mut Ctx<'_>, m: &ModulePresentation, index: usize) -> Result<Section, Error> {
    let ring = m.ring();
    let f = ctx.timed("fitting", || fitting(m, index))?;
    let zero = ring.is_zero_ideal(&f);
    let out = FittingOut {
        index,
        generators: ideal_strings(ring, &f),
        unit: f.is_unit(),
        zero,
        invertible: !zero && is_invertible_ideal(ring, &f)?,
    };
    let text = format!(
        "Fitt_{index} = ({}) unit={} zero={} invertible={}\n",
        out.generators.join(", "),
        out.unit,
        out.zero,
        out.invertible
    );
    Ok(Section {
        value: json(&out),
        text,
        pass: true,
    })
}

#[derive(Serialize)]
struct HilbertOut {
    numerator: String,
    polynomial: String,
    falling_factorial: String,
    stabilization: i64,
    m: u32,
    nmax: u32,
    function: Vec<(i64, u64)>,
    line: FiberLine,
    sheaf: SheafHilbertReport,
    ampleness: &'static str,
    pass: bool,
}

fn hilbert_section(
    ctx: &mut Ctx<'_>,
    ring: &std::sync::Arc<CoordRing>,
    tower: &ResolutionTower,
    m: Option<u32>,
    nmax: u32,
) -> Result<Section, Error> {
    let module = &tower.plan.module;
    let opts = &ctx.job.options;
    let m = match m {
        Some(m) => m,
        None => distinguished_polarization(tower, opts.exponents.as_deref())?.base_exponent as u32,
    };
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let nmax = match opts.degree_bound {
        Some(d) if d < 0 => return Err(Error::Domain("degree bound must be non-negative".into())),
        Some(d) => nmax.min((d / m as i64) as u32),
        None => nmax,
    };
    let attested = opts.attested;
    let hd = ctx.timed("hilbert", || hilbert(module))?;
    let top = (m * nmax) as i64;
    let function = (0..=top)
        .map(|d| Ok((d, admissible::hilbert::module_piece_dim(module, d)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let ideal = match &tower.global_first_ideal {
        Some(i) => i.clone(),
        None => Ideal::unit(ring.ring()),
    };
    let line = ctx.timed("line", || fiber_hilbert_line(ring, &ideal, m, nmax))?;
    let sheaf = ctx.timed("sheaf", || sheaf_hilbert_check(tower, m as u64, nmax, attested))?;
    let pass = line.pass && (sheaf.pass || !attested);
    let out = HilbertOut {
        numerator: hd.numerator_string(),
        polynomial: hd.polynomial.to_string(),
        falling_factorial: hd.polynomial.falling_factorial_string("n"),
        stabilization: hd.stabilization,
        m,
        nmax,
        function,
        line,
        sheaf,
        ampleness: "assumed, not verified",
        pass,
    };
    let mut t = String::new();
    let _ = writeln!(t, "hilbert series numerator: {}", out.numerator);
    let _ = writeln!(
        t,
        "hilbert polynomial: {} = {} (agrees from degree {})",
        out.polynomial, out.falling_factorial, out.stabilization
    );
    let _ = writeln!(t, "line bundle, m = {m}:");
    let _ = writeln!(t, "  {:>4} {:>6} {:>10} {:>12} {:>10}", "n", "mn", "fiber", "telescoping", "ambient");
    for r in &out.line.rows {
        let _ = writeln!(
            t,
            "  {:>4} {:>6} {:>10} {:>12} {:>10}",
            r.n,
            m * r.n,
            r.fiber,
            r.telescoping,
            r.ambient
        );
    }
    match &out.line.fiber_polynomial {
        Some(p) => {
            let _ = writeln!(t, "  interpolated: {} reproduces={}", p.polynomial, p.reproduces);
        }
        None => {
            let _ = writeln!(t, "  interpolated: too few points");
        }
    }
    let _ = writeln!(t, "  expected: {} -> {}", out.line.expected, verdict(out.line.pass));
    let _ = writeln!(t, "twisted module ({}):", out.sheaf.label);
    let _ = writeln!(t, "  {:>4} {:>6} {:>10} {:>10} {:>10}", "n", "mn", "surrogate", "function", "expected");
    for r in &out.sheaf.rows {
        let _ = writeln!(
            t,
            "  {:>4} {:>6} {:>10} {:>10} {:>10}",
            r.n,
            m as u64 * r.n as u64,
            r.surrogate,
            r.function,
            r.expected
        );
    }
    let _ = writeln!(t, "  expected: {} -> {}", out.sheaf.expected, verdict(out.sheaf.pass));
    let _ = writeln!(t, "ampleness: {}", out.ampleness);
    Ok(Section {
        value: json(&out),
        text: t,
        pass,
    })
}
