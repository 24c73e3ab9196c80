//! One line per acceptance criterion; the test fails if any line is FAIL.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use admissible::corpus::{
    self, fitting_chain_holds, fitting_is_presentation_invariant, graded_ring, groebner_is_canonical,
    padded_presentation, polys, torsion_is_idempotent, Lemma2Class,
};
use admissible::fiber::{ev_monomorphism_check, FiberAlgebraModel};
use admissible::homological::{lemma2_certificate, local_freeness_certificate};
use admissible::polarization::{fiber_hilbert_line, sheaf_hilbert_check};
use admissible::tower::{default_padding, plan, resolution_independence_check};
use admissible::{run_tower, Ideal, ModulePresentation, Polynomial, ResolutionTower};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn plane_point() -> ModulePresentation {
    let r = graded_ring(&["x", "y", "z"]);
    ModulePresentation::ideal(&r, &polys(&r, &["x", "y"])).unwrap()
}

fn space_point() -> ModulePresentation {
    let r = graded_ring(&["x", "y", "z", "w"]);
    ModulePresentation::ideal(&r, &polys(&r, &["x", "y", "z"])).unwrap()
}

fn tower(m: &ModulePresentation) -> Result<ResolutionTower, String> {
    run_tower(m).map_err(|e| e.to_string())
}

fn blown_up_charts_locally_free(t: &ResolutionTower, rank: usize) -> Result<usize, String> {
    let mut checked = 0;
    for (m, c) in t.final_modules.iter().zip(&t.final_charts) {
        if !c.label.contains('.') {
            continue;
        }
        let v = local_freeness_certificate(m, rank).map_err(|e| e.to_string())?;
        ensure(v.pass, format!("chart {} not locally free", c.label))?;
        checked += 1;
    }
    Ok(checked)
}

fn plane_point_end_to_end() -> Outcome {
    let start = Instant::now();
    let t = tower(&plane_point())?;
    ensure(t.steps.len() == 1, format!("{} steps", t.steps.len()))?;
    let blown: Vec<_> = t.steps[0].ideals.iter().filter(|i| !i.identity).collect();
    ensure(blown.len() == 1, "expected one blown-up chart")?;
    let local = blown[0].ideal.to_string();
    ensure(local == "(x, y)", format!("chart ideal {local}"))?;
    ensure(t.global_first_ideal.as_ref().map(|i| i.to_string()).as_deref() == Some("(x, y)"), "global ideal")?;
    let n = blown_up_charts_locally_free(&t, 1)?;
    ensure(n == 2, format!("{n} blowup charts"))?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(10), format!("took {el:?}"))?;
    Ok(format!("1 step, I1 = {local} on chart {}, rank 1 on 2 charts, {el:.2?}", blown[0].label))
}

fn space_point_end_to_end() -> Outcome {
    let start = Instant::now();
    let t = tower(&space_point())?;
    ensure(t.steps.len() == 2, format!("{} steps", t.steps.len()))?;
    let mut certs = 0;
    for s in &t.steps {
        for c in s.certificates.iter().filter(|c| !c.identity) {
            ensure(c.fitting0_invertible, format!("step {} chart {}: Fitt0 not invertible", s.index, c.label))?;
            ensure(c.homological_dimension == Some(1), format!("step {} chart {}: hd", s.index, c.label))?;
            ensure(c.lemma2 && c.pass, format!("step {} chart {}", s.index, c.label))?;
            certs += 1;
        }
    }
    let n = blown_up_charts_locally_free(&t, 1)?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(120), format!("took {el:?}"))?;
    Ok(format!("2 steps, {certs} chart certificates with hd 1, rank 1 on {n} charts, {el:.2?}"))
}

fn lemma2_suite() -> Outcome {
    let start = Instant::now();
    let (mut divisors, mut higher) = (0, 0);
    for e in corpus::modules() {
        let Some(class) = e.lemma2 else { continue };
        let v = lemma2_certificate(&e.module).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(v.pass, format!("{}: verdict FAIL", e.name))?;
        match class {
            Lemma2Class::Divisor => {
                ensure(v.homological_dimension == 1 && v.fitting0_invertible, e.name)?;
                divisors += 1;
            }
            Lemma2Class::HigherCodimension => {
                ensure(v.homological_dimension >= 2 && !v.fitting0_invertible, e.name)?;
                higher += 1;
            }
        }
    }
    ensure(divisors >= 5 && higher >= 5, format!("{divisors} + {higher} modules"))?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(60), format!("took {el:?}"))?;
    Ok(format!("{divisors} with hd 1, {higher} with hd >= 2, all PASS, {el:.2?}"))
}

fn independence() -> Outcome {
    let mut compared = 0;
    for (name, m) in [("plane", plane_point()), ("space", space_point())] {
        let p = plan(&m).map_err(|e| e.to_string())?;
        let v = resolution_independence_check(&m, &default_padding(&p.resolution)).map_err(|e| e.to_string())?;
        ensure(v.pass, format!("{name}: {:?}", v.comparisons))?;
        compared += v.comparisons.len();
    }
    Ok(format!("{compared} chart ideals equal between minimal and padded resolutions"))
}

fn flatness() -> Outcome {
    let mut rows = 0;
    for (vars, gens) in [(&["x", "y", "z"][..], &["x", "y"][..]), (&["x", "y", "z", "w"][..], &["x", "y", "z"][..])] {
        let r = graded_ring(vars);
        let i = Ideal::new(r.ring(), polys(&r, gens)).unwrap();
        let model = FiberAlgebraModel::new(&r, &i).map_err(|e| e.to_string())?;
        for row in model.table(5, 6).map_err(|e| e.to_string())? {
            ensure(row.flat, format!("s={} d={}: {} vs {}", row.s, row.d, row.graded_piece, row.summands))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (s, d) pairs with s <= 5, d <= 6"))
}

fn line_bundle_identity() -> Outcome {
    let r = graded_ring(&["x", "y", "z"]);
    let i = Ideal::new(r.ring(), polys(&r, &["x", "y"])).unwrap();
    let line = fiber_hilbert_line(&r, &i, 2, 6).map_err(|e| e.to_string())?;
    ensure(line.rows.len() == 7, "rows")?;
    ensure(line.pass, format!("{:?}", line.rows))?;
    let p = line.fiber_polynomial.as_ref().ok_or("too few points")?;
    Ok(format!("7 degrees agree both ways, interpolated {} = {}", p.polynomial, line.expected))
}

fn sheaf_surrogate() -> Outcome {
    let t = tower(&plane_point())?;
    let rep = sheaf_hilbert_check(&t, 2, 6, false).map_err(|e| e.to_string())?;
    ensure(rep.pass, format!("{:?}", rep.rows))?;
    for row in &rep.rows {
        let n = row.n as u64;
        ensure(row.surrogate == (2 * n + 1) * (2 * n + 2) / 2 - 1, format!("n = {n}"))?;
    }
    Ok(format!("{} table for n <= 6, polynomial {}", rep.label, rep.expected))
}

fn ev_monomorphism() -> Outcome {
    let m = plane_point();
    let r = m.ring().clone();
    let i = Ideal::new(r.ring(), polys(&r, &["x", "y"])).unwrap();
    let model = FiberAlgebraModel::new(&r, &i).map_err(|e| e.to_string())?;
    let good = ev_monomorphism_check(&model, &m, 2, false).map_err(|e| e.to_string())?;
    ensure(good.applicable && good.pass, "control case fails")?;
    let bad = ev_monomorphism_check(&model, &m, 2, true).map_err(|e| e.to_string())?;
    ensure(!bad.pass && bad.witness.is_some(), "corrupted case passes")?;
    Ok(format!(
        "PASS on {} slices, corrupted control FAIL with witness {:?}",
        good.slices.len(),
        bad.witness.unwrap()
    ))
}

fn kernel_properties() -> Outcome {
    let mut checks = 0;
    for (name, _, gens) in corpus::ideals() {
        let n = gens.len();
        for order in [(0..n).rev().collect::<Vec<_>>(), (0..n).map(|i| (i + 1) % n).collect()] {
            ensure(groebner_is_canonical(&gens, &order, &[2, -1, 3]).unwrap(), name)?;
            checks += 1;
        }
    }
    for e in corpus::modules() {
        let m = &e.module;
        ensure(torsion_is_idempotent(m).unwrap(), format!("torsion: {}", e.name))?;
        ensure(fitting_chain_holds(m).unwrap(), format!("chain: {}", e.name))?;
        let pr = m.ring().ring();
        let f = Polynomial::var(pr, 0);
        let c = Polynomial::var(pr, 1);
        for i in 0..m.target().rank() {
            let padded = padded_presentation(m, i, &f, 0, &c).unwrap();
            ensure(fitting_is_presentation_invariant(m, &padded).unwrap(), format!("padding: {}", e.name))?;
            checks += 1;
        }
        checks += 2;
    }
    Ok(format!("{checks} checks over {} modules and {} ideals", corpus::modules().len(), corpus::ideals().len()))
}

fn golden_reports() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    for job in ["plane_point", "space_point"] {
        let expected = std::fs::read_to_string(dir.join("golden").join(format!("{job}.resolve.json")))
            .map_err(|e| e.to_string())?;
        for threads in ["1", "3", "8"] {
            for _ in 0..2 {
                let out = Command::new(env!("CARGO_BIN_EXE_admissible"))
                    .args(["--format", "json", "--threads", threads, "resolve"])
                    .arg(dir.join("data").join(format!("{job}.job")))
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure(out.stdout == expected.as_bytes(), format!("{job} with {threads} threads"))?;
            }
        }
    }
    Ok("2 reports byte-identical over 6 runs each".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("plane point end to end", plane_point_end_to_end),
        ("space point end to end", space_point_end_to_end),
        ("hd one iff invertible Fitt_0", lemma2_suite),
        ("resolution independence", independence),
        ("flatness of the fiber model", flatness),
        ("line bundle Hilbert identity", line_bundle_identity),
        ("twisted module surrogate", sheaf_surrogate),
        ("ev monomorphism", ev_monomorphism),
        ("kernel properties", kernel_properties),
        ("golden reports", golden_reports),
    ];
    // Written to the real stdout so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let el = start.elapsed();
        match &res {
            Ok(detail) => {
                let _ = writeln!(out, "criterion {:>2} PASS  {name}: {detail} [{el:.2?}]", k + 1);
            }
            Err(why) => {
                let _ = writeln!(out, "criterion {:>2} FAIL  {name}: {why} [{el:.2?}]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
