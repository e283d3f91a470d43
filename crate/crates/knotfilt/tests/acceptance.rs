//! Acceptance criteria 1 to 8. Prints one line per criterion and exits
//! nonzero if any fails.

mod support;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use knotfilt::report::to_json;
use knotfilt::suites::{run, InstanceReport, Suite, SuiteConfig, SuiteReport};
use knotfilt_core::diagram::fixtures::{figure_eight, left_trefoil, positive_kink, right_trefoil};
use knotfilt_core::generate::{random_braid_knot, rng};
use knotfilt_core::invariants::{jones, v2, v3};
use knotfilt_core::{LaurentPoly, PlanarDiagram};
use serde_json::Value;
use support::oracle;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn as_map(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms()
        .map(|(e, c)| (e, c.to_string().parse().expect("small coefficient")))
        .collect()
}

fn suite(s: Suite, config: &SuiteConfig) -> Result<SuiteReport, String> {
    let r = run(s, config).map_err(|e| format!("{s:?}: {e}"))?;
    for i in r.instances.iter().filter(|i| !i.pass) {
        return Err(format!("{s:?} instance {} failed: {}", i.label, i.detail));
    }
    ensure(r.pass, format!("{s:?} did not pass"))?;
    Ok(r)
}

fn labelled<'a>(r: &'a SuiteReport, prefix: &str) -> impl Iterator<Item = &'a InstanceReport> + 'a {
    let prefix = prefix.to_string();
    r.instances
        .iter()
        .filter(move |i| i.label.starts_with(&prefix))
}

fn oracles() -> Check {
    let cases: [(&str, PlanarDiagram, i64, i64); 4] = [
        ("unknot", positive_kink(), 0, 0),
        ("right trefoil", right_trefoil(), 1, 1),
        ("left trefoil", left_trefoil(), 1, -1),
        ("figure-8", figure_eight(), -1, 0),
    ];
    for (name, d, e2, e3) in &cases {
        let (a2, a3) = (
            v2(d).map_err(|e| e.to_string())?,
            v3(d).map_err(|e| e.to_string())?,
        );
        let oj = oracle::jones(d);
        ensure(
            a2 == *e2 && a2 == oracle::conway_c2(d),
            format!(
                "{name}: v2 {a2}, expected {e2}, oracle {}",
                oracle::conway_c2(d)
            ),
        )?;
        ensure(
            a3 == *e3 && a3 == oracle::v3_from_jones(&oj),
            format!(
                "{name}: v3 {a3}, expected {e3}, oracle {}",
                oracle::v3_from_jones(&oj)
            ),
        )?;
        let j = as_map(&jones(d, 24).map_err(|e| e.to_string())?);
        ensure(j == oj, format!("{name}: jones {j:?}, state sum {oj:?}"))?;
    }
    let mut r = rng(11);
    let mut extra = 0;
    while extra < 20 {
        let d = random_braid_knot(&mut r, 4, 9);
        if d.crossings.len() > 9 {
            continue;
        }
        extra += 1;
        let oj = oracle::jones(&d);
        ensure(
            v2(&d).ok() == Some(oracle::conway_c2(&d)),
            format!("random knot {d:?}: v2 disagrees with the Conway oracle"),
        )?;
        ensure(
            v3(&d).ok() == Some(oracle::v3_from_jones(&oj)),
            format!("random knot {d:?}: v3 disagrees with the Jones oracle"),
        )?;
        ensure(
            jones(&d, 24).ok().map(|j| as_map(&j)) == Some(oj),
            format!("random knot {d:?}: jones disagrees with the state sum"),
        )?;
    }
    Ok(format!(
        "{} fixtures and {extra} random knots agree with the oracles",
        cases.len()
    ))
}

fn vassiliev() -> Check {
    let r = suite(Suite::VassilievAxiom, &SuiteConfig::default())?;
    let (a, b) = (
        labelled(&r, "V2 over 3").count(),
        labelled(&r, "V3 over 4").count(),
    );
    ensure(
        a >= 100 && b >= 100,
        format!("only {a} v2 and {b} v3 instances"),
    )?;
    Ok(format!(
        "{a} (v2, 3 groups) and {b} (v3, 4 groups) brackets vanish"
    ))
}

fn theorem1() -> Check {
    let r = suite(Suite::Theorem1, &SuiteConfig::default())?;
    let mut counts = Vec::new();
    for k in 0..=2 {
        let inst: Vec<_> = labelled(&r, &format!("k={k} ")).collect();
        ensure(inst.len() >= 20, format!("k={k}: {} instances", inst.len()))?;
        for i in &inst {
            let d = &i.detail;
            ensure(
                d["jones_compared"] == Value::Bool(true),
                format!("k={k} {}: Jones not compared", i.label),
            )?;
            ensure(
                d["relation_failures"]
                    .as_array()
                    .is_some_and(|a| a.is_empty()),
                format!("k={k} {}: relation failure", i.label),
            )?;
            let sign = d["sign"].as_i64().unwrap_or(0);
            for v in ["v2", "v3"] {
                let (c, f) = (d["circles"][v].as_i64(), d["fingers"][v].as_i64());
                ensure(
                    c.is_some() && c == f.map(|f| sign * f),
                    format!("k={k} {}: {v} sides differ", i.label),
                )?;
            }
            let neg = |j: &Value| -> Vec<String> {
                j.as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_str)
                    .map(|t| t.strip_prefix('-').map_or(format!("-{t}"), str::to_string))
                    .collect()
            };
            let f = &d["fingers"]["jones"];
            ensure(
                d["circles"]["jones"]
                    == if sign == 1 {
                        f.clone()
                    } else {
                        Value::from(neg(f))
                    },
                format!("k={k} {}: Jones sides differ", i.label),
            )?;
        }
        let sign = inst[0].detail["sign"].clone();
        counts.push(format!("k={k}: {} (sign {sign})", inst.len()));
    }
    Ok(format!(
        "identity exact under v2, v3, Jones; {}",
        counts.join(", ")
    ))
}

fn lemma() -> Check {
    let config = SuiteConfig {
        exhaustive_upto: 5,
        random_graphs: 10_000,
        ..SuiteConfig::default()
    };
    let r = suite(Suite::Theorem2Lemma, &config)?;
    let mut parts = Vec::new();
    for (n, exhaustive, min) in [
        (3, true, 1),
        (5, true, 1),
        (7, false, 10_000),
        (9, false, 10_000),
    ] {
        let i = labelled(&r, &format!("{n} vertices"))
            .next()
            .ok_or(format!("no {n}-vertex instance"))?;
        let graphs = i.detail["graphs"].as_u64().unwrap_or(0);
        ensure(
            i.detail["exhaustive"] == Value::Bool(exhaustive) && graphs >= min,
            format!("{n} vertices: {}", i.detail),
        )?;
        parts.push(format!("{n}: {graphs}"));
    }
    Ok(format!(
        "witness found on every graph ({})",
        parts.join(", ")
    ))
}

fn consequence() -> Check {
    let r = suite(Suite::Theorem2Consequence, &SuiteConfig::default())?;
    let (a, b) = (
        labelled(&r, "5 circles").count() + labelled(&r, "fixture").count(),
        labelled(&r, "7 circles").count(),
    );
    ensure(
        a >= 50 && b >= 10,
        format!("only {a} five-move and {b} seven-move instances"),
    )?;
    Ok(format!(
        "{a} five-move brackets kill v2, {b} seven-move brackets kill v3"
    ))
}

fn reduction() -> Check {
    let r = suite(Suite::ReductionStep, &SuiteConfig::default())?;
    ensure(
        r.instances.len() >= 10,
        format!("only {} instances", r.instances.len()),
    )?;
    for i in &r.instances {
        let parent = i.detail["edges_plus_stars"].as_u64().unwrap_or(0);
        let branches = i.detail["branches"].as_array().cloned().unwrap_or_default();
        ensure(!branches.is_empty(), format!("{}: no branches", i.label))?;
        for b in branches {
            ensure(
                b["edges_plus_stars"].as_u64().is_some_and(|c| c < parent),
                format!("{}: branch does not lower the count", i.label),
            )?;
        }
    }
    Ok(format!(
        "{} steps verified, every branch strictly fewer edges plus stars",
        r.instances.len()
    ))
}

fn clasper() -> Check {
    let r = suite(Suite::Clasper, &SuiteConfig::default())?;
    ensure(
        labelled(&r, "y_trefoil").count() == 1,
        "Y-clasper check missing",
    )?;
    let five: Vec<_> = r.instances.iter().filter(|i| i.detail["n"] == 5).collect();
    ensure(!five.is_empty(), "no n = 5 instances")?;
    let mut separated = 0;
    for i in &five {
        let d = &i.detail;
        ensure(
            d["k1"]["v2"] == d["k2"]["v2"],
            format!("{}: v2 differs", i.label),
        )?;
        ensure(
            d["collapse"].as_array().map(Vec::len) == Some(31) && d["collapse_passed"] == 31,
            format!("{}: collapse checks", i.label),
        )?;
        if d["separated_by"].as_array().is_some_and(|a| !a.is_empty()) {
            separated += 1;
        }
    }
    ensure(separated > 0, "no instance separated")?;
    Ok(format!("Y-clasper gives a trefoil; {} n=5 instances keep v2 with 31 collapses each, {separated} separated", five.len()))
}

fn determinism() -> Check {
    let exe = env!("CARGO_BIN_EXE_knotfilt");
    let args = [
        "verify",
        "theorem1",
        "--seed",
        "3",
        "--k",
        "0..2",
        "--instances",
        "4",
    ];
    let a = Command::new(exe)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let b = Command::new(exe)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(a.status.success() && !a.stdout.is_empty(), "CLI run failed")?;
    ensure(a.stdout == b.stdout, "CLI output differs between runs")?;
    let config = SuiteConfig {
        seed: 9,
        instances: Some(3),
        ..SuiteConfig::default()
    };
    for s in [
        Suite::VassilievAxiom,
        Suite::Theorem2Consequence,
        Suite::ReductionStep,
    ] {
        let x = to_json(&run(s, &config).map_err(|e| e.to_string())?);
        let y = to_json(&run(s, &config).map_err(|e| e.to_string())?);
        ensure(x == y, format!("{s:?} report differs between runs"))?;
    }
    Ok(format!(
        "CLI JSON identical across runs ({} bytes); 3 suites re-run identically",
        a.stdout.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("invariant oracles", oracles, Duration::from_secs(1)),
        ("vassiliev axiom", vassiliev, Duration::from_secs(60)),
        ("theorem 1 identity", theorem1, Duration::from_secs(300)),
        ("interdependence lemma", lemma, Duration::from_secs(60)),
        (
            "alternating brackets vanish",
            consequence,
            Duration::from_secs(600),
        ),
        ("reduction step", reduction, Duration::from_secs(300)),
        ("clasper surgery", clasper, Duration::from_secs(600)),
        ("determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (n, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = res.and_then(|m| {
            if took <= *limit {
                Ok(m)
            } else {
                Err(format!("{m}, but took {took:.2?} > {limit:?}"))
            }
        });
        match res {
            Ok(m) => println!("criterion {}: PASS {name} [{took:.2?}]: {m}", n + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{took:.2?}]: {m}", n + 1)
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
