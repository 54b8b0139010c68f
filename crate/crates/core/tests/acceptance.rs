//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use gmfkit_core::char_class::injectivity_failures;
use gmfkit_core::family::{check_family_axioms, AxiomVerdict, BoxDomain, ParamWindow, PolyFamily, SearchSettings};
use gmfkit_core::jet::{birth_death_linear_normal_form, classify, DegenerateReason, GmfClass};
use gmfkit_core::moduli::{
    cofiber_series, gysin_check, mt_series, mtgmf_series, sigma_gmf, wedge_target_series, Structure, Verdict,
};
use gmfkit_core::series::{describe_mismatch, series_bo, series_grassmannian, PoincareSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gysin_identity() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for d in 1..=8 {
        for s in [Structure::O, Structure::SO] {
            let c = gysin_check(d, 32, s);
            if c.verdict != Verdict::Pass {
                failures.push(format!(
                    "(d={d}, {}) first mismatch at degree {}",
                    s.as_str(),
                    c.first_mismatch_degree.map_or(String::from("none"), |k| k.to_string())
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), || failures.join("; "))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("16 cases exact at N=32 in {elapsed:?}"))
}

fn wedge_cofiber() -> Outcome {
    let mut timing = Duration::ZERO;
    for d in 1..=5 {
        let start = Instant::now();
        let h = sigma_gmf(d, 20).map_err(|e| e.to_string())?;
        let cof = cofiber_series(&h);
        let elapsed = start.elapsed();
        let target = wedge_target_series(d, 20);
        ensure(cof == target, || {
            format!("d={d}: {}", describe_mismatch(&cof, &target).unwrap_or_default())
        })?;
        if d == 5 {
            timing = elapsed;
        }
    }
    ensure(timing < Duration::from_secs(60), || format!("d=5 took {timing:?}"))?;
    Ok(format!("d=1..5 exact at N=20, d=5 in {timing:?}"))
}

fn d1_oracle() -> Outcome {
    let h = sigma_gmf(1, 32).map_err(|e| e.to_string())?;
    let ones = PoincareSeries::from_u64(0, 32, &[1; 33]);
    ensure(h.series == ones, || format!("hocolim {}", h.series))?;
    let mut c = vec![1u64; 33];
    c[0] = 0;
    let expect = PoincareSeries::from_u64(0, 32, &c);
    let cof = cofiber_series(&h);
    ensure(cof == expect, || format!("cofiber {cof}"))?;
    Ok(String::from("hocolim [1,1,...], cofiber [0,1,1,...] to N=32"))
}

fn surjectivity() -> Outcome {
    for d in 1..=6 {
        let f = injectivity_failures(d, 24).map_err(|e| e.to_string())?;
        ensure(f.is_empty(), || format!("d={d}: {:?}", f[0]))?;
    }
    Ok(String::from("map_f, map_g full column rank for d<=6, degrees<=24"))
}

fn connectivity() -> Outcome {
    for d in 1..=5u32 {
        let h = sigma_gmf(d, 16).map_err(|e| e.to_string())?;
        ensure(h.series.valuation() == Some(0), || format!("d={d}: valuation {:?}", h.series.valuation()))?;
        ensure(h.series.coeff_u64(0) == 1, || format!("d={d}: degree-0 coefficient {}", h.series.coeff(0)))?;
        let mt = mt_series(d, 16, Structure::O).series;
        let split = mtgmf_series(&h).split.series;
        for k in -(d as i64)..0 {
            ensure(mt.coeff(k) == split.coeff(k), || {
                format!("d={d}: degree {k}: MT {} vs split {}", mt.coeff(k), split.coeff(k))
            })?;
        }
    }
    Ok(String::from("d=1..5 connected, negative degrees agree"))
}

fn classifier_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let targets = [Target::Regular, Target::Morse, Target::BirthDeath, Target::CubicVanishes, Target::KernelTwo];
    let mut compared = 0;
    let mut skipped = 0;
    let mut seen = std::collections::BTreeSet::new();
    for d in [2usize, 3, 5] {
        for k in 0..10_000 {
            let jet = stratified_jet(&mut rng, d, targets[k % targets.len()]);
            let oracle = oracle_classify(&jet, TOL);
            if oracle.kappa.is_finite() && oracle.kappa > 1e8 {
                skipped += 1;
                continue;
            }
            let got = classify(&jet, TOL).map_err(|e| e.to_string())?;
            ensure(got == oracle.class, || format!("d={d}: {got:?} vs oracle {:?} for {jet:?}", oracle.class))?;
            seen.insert(got.name());
            compared += 1;
        }
    }
    ensure(seen.len() == 4, || format!("strata seen: {seen:?}"))?;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=5);
        let t = targets[rng.gen_range(0..targets.len())];
        let jet = stratified_jet(&mut rng, d, t);
        let u = random_orthogonal(&mut rng, d);
        let moved = jet.linear_change(&u).map_err(|e| e.to_string())?;
        let (a, b) = (classify(&jet, TOL).unwrap(), classify(&moved, TOL).unwrap());
        ensure(a == b, || format!("{a:?} vs rotated {b:?}"))?;
    }
    Ok(format!("{compared} jets agree ({skipped} filtered by condition number), 1000 rotations invariant"))
}

fn tracing() -> Outcome {
    let s = SearchSettings::default();
    let window = |d: usize| (BoxDomain::cube(d, -2.0, 2.0), ParamWindow { t0: -1.0, t1: 1.0, steps: 101 });
    let mut notes = Vec::new();

    let run = |f: &PolyFamily| -> Result<(gmfkit_core::family::AxiomReport, Duration), String> {
        let (b, w) = window(f.fiber_dim());
        let start = Instant::now();
        let r = check_family_axioms(f, Some(w), &b, &s).map_err(|e| e.to_string())?;
        Ok((r, start.elapsed()))
    };

    let (r, el) = run(&PolyFamily::cusp())?;
    let tr = r.trace.as_ref().unwrap();
    ensure(tr.events.len() == 1, || format!("cusp: {} events", tr.events.len()))?;
    let e = &tr.events[0];
    ensure(e.t_star.abs() <= 1e-8 && e.x_star[0].abs() <= 1e-6 && e.index == 0, || format!("cusp event {e:?}"))?;
    ensure(el < Duration::from_secs(5), || format!("cusp took {el:?}"))?;
    notes.push(format!("cusp t*={:.1e} in {el:.2?}", e.t_star));

    for i in 0..=2usize {
        for d in [i + 1, i + 2] {
            let f = PolyFamily::suspended_cusp(i, d).map_err(|e| e.to_string())?;
            let (r, el) = run(&f)?;
            let tr = r.trace.as_ref().unwrap();
            ensure(tr.events.len() == 1 && tr.events[0].index == i, || {
                format!("suspended-cusp-{i}-{d}: {:?}", tr.events)
            })?;
            ensure(el < Duration::from_secs(5), || format!("suspended-cusp-{i}-{d} took {el:?}"))?;
            notes.push(format!("suspended-cusp-{i}-{d} index {i} in {el:.2?}"));
        }
    }

    let (r, el) = run(&PolyFamily::swallowtail())?;
    ensure(r.gmf.verdict == AxiomVerdict::Fail, || String::from("swallowtail passed axiom (iv)"))?;
    ensure(
        r.degenerate
            .iter()
            .any(|p| p.reason == DegenerateReason::KernelCubicVanishes && p.t.abs() <= 1e-6),
        || format!("swallowtail flags {:?}", r.degenerate),
    )?;
    ensure(el < Duration::from_secs(5), || format!("swallowtail took {el:?}"))?;
    notes.push(format!("swallowtail degenerate in {el:.2?}"));
    Ok(notes.join(", "))
}

fn normal_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut max_residual = 0.0f64;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=5);
        let jet = stratified_jet(&mut rng, d, Target::BirthDeath);
        let index = match classify(&jet, TOL).map_err(|e| e.to_string())? {
            GmfClass::BirthDeath(i) => i,
            other => return Err(format!("generator produced {other:?}")),
        };
        let nf = birth_death_linear_normal_form(&jet, TOL).map_err(|e| e.to_string())?;
        let q = nf.reduced.quadratic();
        for i in 0..d {
            for j in 0..d {
                let v = q[i * d + j];
                let ok = if i != j || i == 0 {
                    v == 0.0
                } else {
                    v == 1.0 || v == -1.0
                };
                ensure(ok, || format!("quadratic entry ({i},{j}) = {v}"))?;
            }
        }
        let c = nf.reduced.cubic_coeff([1, 1, 1]);
        ensure((c - 1.0).abs() <= 1e-9, || format!("x1 cubic coefficient {c}"))?;
        let back = classify(&nf.reduced, TOL).map_err(|e| e.to_string())?;
        ensure(back == GmfClass::BirthDeath(index), || format!("{back:?} vs BirthDeath({index})"))?;
        max_residual = max_residual.max(nf.residual);
    }
    Ok(format!("1000 jets reduced, max cross-term residual {max_residual:.3}"))
}

fn partitions(n: usize, max_part: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n)).map(|p| partitions(n - p, p)).sum()
}

fn series_infrastructure() -> Outcome {
    for m in 0..=6u32 {
        let s = series_bo(m, 30);
        for n in 0..=30 {
            ensure(s.coeff_u64(n) == partitions(n as usize, m as usize), || format!("BO({m}) degree {n}"))?;
        }
    }
    for d in 0..=6 {
        for n in 0..=6 {
            ensure(series_grassmannian(d, n, 36) == series_grassmannian(n, d, 36), || format!("G({d},{n})"))?;
        }
    }
    Ok(String::from("BO(m) partition counts m<=6, n<=30; Grassmann symmetry d,n<=6"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("gysin identity", gysin_identity),
        ("wedge/cofiber identity", wedge_cofiber),
        ("d=1 oracle", d1_oracle),
        ("surjectivity input", surjectivity),
        ("connectivity shadows", connectivity),
        ("jet classifier vs oracle", classifier_oracle),
        ("birth-death tracing", tracing),
        ("normal form", normal_form),
        ("series infrastructure", series_infrastructure),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
