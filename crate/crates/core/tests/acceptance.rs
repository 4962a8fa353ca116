//! Acceptance suite: one line per criterion, then a single assertion that all
//! of them passed.

use std::collections::BTreeSet;
use std::process::Command;

use qlorentz::cli::suite::{run_suite, Check, Report, Scope};
use qlorentz::double::{QLorentz, DEFAULT_DEGREE_CAP};
use qlorentz::ncpoly::Presentation;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn report(ql: &QLorentz, scope: Scope) -> Report {
    run_suite(ql, scope, DEFAULT_DEGREE_CAP)
}

/// All checks of `r` pass, and every name in `required` is present.
fn require(r: &Report, required: &[String]) -> Outcome {
    if let Some(c) = r.checks.iter().find(|c| !c.passed()) {
        return Err(format!("{} failed: {} vs {}", c.name, c.lhs, c.rhs));
    }
    let names: BTreeSet<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    if let Some(missing) = required.iter().find(|n| !names.contains(n.as_str())) {
        return Err(format!("missing check {missing}"));
    }
    Ok(format!("{} checks", r.checks.len()))
}

fn count_prefix(r: &Report, prefix: &str) -> usize {
    r.checks.iter().filter(|c| c.name.starts_with(prefix)).count()
}

fn names(parts: &[&[&str]]) -> Vec<String> {
    parts.iter().fold(vec![String::new()], |acc, level| {
        acc.iter()
            .flat_map(|p| level.iter().map(move |x| if p.is_empty() { x.to_string() } else { format!("{p}.{x}") }))
            .collect()
    })
}

fn relations(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Relations);
    let mut req = names(&[&["relations"], &["funq", "uq"], &["local-confluence", "random-order"]]);
    for (alg, p) in [("funq", Presentation::fun_q().unwrap()), ("uq", Presentation::u_q().unwrap())] {
        req.extend((0..p.base_relations().len()).map(|i| format!("relations.{alg}.base.{i}")));
        req.extend((0..p.derived_relations().len()).map(|i| format!("relations.{alg}.derived.{i}")));
    }
    require(&r, &req)
}

fn hopf(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Hopf);
    let req = names(&[
        &["hopf"],
        &["coassoc", "counit", "antipode", "star-coproduct", "star-antipode"],
        &["funq", "uq"],
        &["len1", "len2", "len3"],
    ]);
    require(&r, &req)
}

fn pairing(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Pairing);
    let u = ["k", "kinv", "e", "es"];
    let f = ["a", "as", "b", "bs"];
    let mut req = names(&[&["pairing"], &["table", "star"], &u, &f]);
    req.extend(["pairing.kinv-row", "pairing.product.u-side", "pairing.product.fun-side"].map(String::from));
    require(&r, &req)
}

fn actions(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Actions);
    let targets = ["A", "B", "Bs"];
    let mut req = names(&[&["act.u"], &["k", "e", "es"], &targets]);
    req.extend(names(&[&["act.fun"], &["a", "as", "b", "bs"], &targets]));
    if r.checks.len() != 24 {
        return Err(format!("expected 24 action checks, found {}", r.checks.len()));
    }
    require(&r, &req)
}

fn structure(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Structure);
    let gens = ["k", "kinv", "e", "es", "a", "as", "b", "bs"];
    let mut req = names(&[&["structure.podles"], &["AB", "ABs", "BBs", "BsB"]]);
    req.extend(names(&[&["structure"], &["stability", "module-algebra"], &gens]));
    req.extend(names(&[&["structure.star"], &["k", "e", "a", "b"]]));
    req.extend(names(&[&["structure.cross"], &gens[..4], &gens[4..]]));
    req.extend(["structure.convention", "structure.sphere-round-trip"].map(String::from));
    require(&r, &req)
}

fn limits(ql: &QLorentz) -> Outcome {
    let exact = report(ql, Scope::Limits);
    let numeric = report(ql, Scope::Numeric);
    if exact.checks.len() != 18 || count_prefix(&exact, "limit.su2.") != 9 || count_prefix(&exact, "limit.an.") != 9 {
        return Err(format!("expected 9 + 9 exact limits, found {}", exact.checks.len()));
    }
    if numeric.checks.len() != 18 {
        return Err(format!("expected 18 numeric checks, found {}", numeric.checks.len()));
    }
    require(&exact, &[])?;
    require(&numeric, &[])?;
    Ok("18 exact + 18 numeric".into())
}

fn brackets(ql: &QLorentz) -> Outcome {
    let r = report(ql, Scope::Brackets);
    let req = ["[R1,R2]=R3", "[R2,R3]=R1", "[R3,R1]=R2", "[T0,T1]=-T1", "[T0,T2]=-T2", "[T1,T2]=0"]
        .map(|n| format!("bracket.{n}"));
    require(&r, &req)
}

fn run_cli(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qlorentz")).args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

/// Shape of the JSON report: top-level counts and one object per check.
fn validate_report(v: &serde_json::Value) -> Result<Vec<Check>, String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    for key in ["scope", "passed", "failed", "checks"] {
        if !obj.contains_key(key) {
            return Err(format!("report lacks '{key}'"));
        }
    }
    let checks: Vec<Check> = v["checks"]
        .as_array()
        .ok_or("checks is not an array")?
        .iter()
        .map(|c| {
            let s = |k: &str| c[k].as_str().map(String::from).ok_or(format!("check lacks string '{k}'"));
            let status = match s("status")?.as_str() {
                "pass" => qlorentz::cli::suite::Status::Pass,
                "fail" => qlorentz::cli::suite::Status::Fail,
                other => return Err(format!("bad status {other}")),
            };
            Ok(Check { name: s("name")?, status, lhs: s("lhs")?, rhs: s("rhs")?, presentation: s("presentation")? })
        })
        .collect::<Result<_, String>>()?;
    let passed = checks.iter().filter(|c| c.passed()).count() as u64;
    if v["passed"].as_u64() != Some(passed) || v["failed"].as_u64() != Some(checks.len() as u64 - passed) {
        return Err("pass/fail counts disagree with the checks".into());
    }
    Ok(checks)
}

fn cli() -> Outcome {
    let (code, v) = run_cli(&["verify", "all", "--format", "json"]);
    let checks = validate_report(&v)?;
    if code != 0 {
        return Err(format!("verify all exited with {code}"));
    }
    let distinct: BTreeSet<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    if distinct.len() != checks.len() || checks.len() < 70 || !checks.iter().all(Check::passed) {
        return Err(format!("{} checks, {} distinct names", checks.len(), distinct.len()));
    }
    let mut corrupted = 0;
    for (alg, p) in [("funq", Presentation::fun_q().unwrap()), ("uq", Presentation::u_q().unwrap())] {
        for i in 0..p.rules().len() {
            let idx = i.to_string();
            let (code, v) = run_cli(&["--alg", alg, "--corrupt-rule", &idx, "verify", "all", "--format", "json"]);
            let checks = validate_report(&v)?;
            let witness = checks.iter().find(|c| !c.passed() && !c.lhs.is_empty());
            if code != 1 || witness.is_none() {
                return Err(format!("corrupting {alg} rule {i}: exit {code}, no counterexample"));
            }
            corrupted += 1;
        }
    }
    Ok(format!("{} passing checks; {corrupted} corrupted rules detected", checks.len()))
}

#[test]
fn acceptance() {
    let ql = QLorentz::standard().expect("standard engine");
    let criteria: [Criterion; 8] = [
        ("1 relations", Box::new(|| relations(&ql))),
        ("2 hopf axioms", Box::new(|| hopf(&ql))),
        ("3 pairing", Box::new(|| pairing(&ql))),
        ("4 actions on the sphere", Box::new(|| actions(&ql))),
        ("5 double structure", Box::new(|| structure(&ql))),
        ("6 classical limits", Box::new(|| limits(&ql))),
        ("7 lie brackets", Box::new(|| brackets(&ql))),
        ("8 command line", Box::new(cli)),
    ];
    let mut failures = Vec::new();
    for (name, f) in &criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(e) => {
                println!("criterion {name}: FAIL ({e})");
                failures.push(*name);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
