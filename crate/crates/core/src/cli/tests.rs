use proptest::prelude::*;

use super::*;
use crate::coeff::Scalar;
use crate::ncpoly::{Presentation, Word};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("qlorentz").chain(args.iter().copied()))
}

#[test]
fn basic_commands() {
    assert_eq!(cli(&["nf", "b*a"]).stdout, "q*a*b\n");
    assert_eq!(cli(&["nf", "q^(1/2)*q^(1/2)"]).stdout, "q\n");
    assert_eq!(cli(&["coproduct", "k"]).stdout, "(k ⊗ k)\n");
    assert_eq!(cli(&["coproduct", "--ascii", "e"]).stdout, "(e (x) k) + (kinv (x) e)\n");
    assert_eq!(cli(&["antipode", "a*b"]).stdout, "-as*b\n");
    assert_eq!(cli(&["antipode", "--inverse", "e"]).stdout, "-q*e\n");
    assert_eq!(cli(&["star", "a*b"]).stdout, cli(&["nf", "bs*as"]).stdout);
    assert_eq!(cli(&["pair", "k", "a"]).stdout, "q^(1/2)\n");
    assert_eq!(cli(&["act", "e", "A"]).stdout, "q^(1/2)*B\n");
    assert_eq!(cli(&["act", "k", "b", "--fun", "B"]).code, 0);
    assert_eq!(cli(&["podles-check", "a*b"]).stdout, "true\n");
    assert_eq!(cli(&["podles-check", "a"]).stdout, "false\n");
    assert_eq!(cli(&["expand-sphere", "b*bs"]).stdout, "A\n");
    assert_eq!(cli(&["limit-su2", "R3", "B"]).stdout, "R3: i*B\n");
    assert_eq!(cli(&["limit-an", "iT1+T2", "Bs"]).stdout, "iT1+T2: -2*A^2\n");
    assert_eq!(cli(&["rules", "--alg", "uq"]).stdout.lines().count(), 7);
}

#[test]
fn json_output() {
    let o = cli(&["--format", "json", "pair", "es", "b"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["result"], "1");
    assert_eq!(v["command"], "pair");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["bogus"]).code, 2);
    assert_eq!(cli(&["nf", "x"]).code, 2);
    assert!(cli(&["nf", "bb"]).stderr.contains("did you mean"));
    assert_eq!(cli(&["nf", "a*k"]).code, 2);
    assert_eq!(cli(&["nf", "(a"]).code, 2);
    assert_eq!(cli(&["expand-sphere", "a"]).code, 1);
    assert_eq!(cli(&["expand-sphere", "--degree-cap", "1", "A^2"]).code, 1);
    assert_eq!(cli(&["limit-su2", "T0", "A"]).code, 2);
    assert_eq!(cli(&["verify", "everything"]).code, 2);
    assert_eq!(cli(&["--corrupt-rule", "99", "nf", "a"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn scope_sizes() {
    let ql = QLorentz::standard().unwrap();
    let r = run_suite(&ql, Scope::UActions, DEFAULT_DEGREE_CAP);
    assert_eq!((r.passed, r.failed), (12, 0));
    let r = run_suite(&ql, Scope::FunActions, DEFAULT_DEGREE_CAP);
    assert_eq!((r.passed, r.failed), (12, 0));
    let r = run_suite(&ql, Scope::Limits, DEFAULT_DEGREE_CAP);
    assert_eq!((r.passed, r.failed), (18, 0));
    assert!(r.checks.windows(2).all(|w| w[0].name < w[1].name));
    assert!(r.checks.iter().any(|c| c.name == "limit.an.T0.B"));
    let r = run_suite(&ql, Scope::Brackets, DEFAULT_DEGREE_CAP);
    assert_eq!((r.passed, r.failed), (6, 0));
}

#[test]
fn verify_output_is_deterministic() {
    let a = cli(&["verify", "u-actions", "--format", "json"]);
    let b = cli(&["verify", "u-actions", "--format", "json"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    let t = cli(&["verify", "brackets"]);
    assert!(t.stdout.ends_with("brackets: 6 passed, 0 failed\n"));
}

#[test]
fn corrupted_rule_fails_relations() {
    let o = cli(&["--corrupt-rule", "0", "verify", "relations"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL relations.funq"));
    let o = cli(&["--alg", "uq", "--corrupt-rule", "3", "verify", "relations", "--format", "json"]);
    assert_eq!(o.code, 1);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["failed"].as_u64().unwrap() > 0);
}

fn fun() -> &'static Presentation {
    static P: std::sync::OnceLock<Presentation> = std::sync::OnceLock::new();
    P.get_or_init(|| Presentation::fun_q().unwrap())
}

fn uq() -> &'static Presentation {
    static P: std::sync::OnceLock<Presentation> = std::sync::OnceLock::new();
    P.get_or_init(|| Presentation::u_q().unwrap())
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -3i64..=3, -4i32..=4, -2i32..=2).prop_map(|(re, den, im, k, j)| {
        let c = Scalar::from_gaussian(crate::coeff::GaussianRational::from_ratio(re, den))
            .add(&Scalar::i().mul(&Scalar::from_int(im)));
        let d = Scalar::s_pow(j).add(&Scalar::from_int(2));
        c.mul(&Scalar::s_pow(k)).div(&d).unwrap()
    })
}

fn element_strategy(p: &'static Presentation) -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::collection::vec(0u8..4, 0..4), scalar_strategy()), 0..4).prop_map(move |terms| {
        let mut x = Element::zero();
        for (w, c) in terms {
            x.add_term(Word::from_gens(&w), c);
        }
        p.normal_form(&x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_round_trip(c in scalar_strategy()) {
        let back: Scalar = c.to_string().parse().unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn fun_elements_round_trip(x in element_strategy(fun())) {
        let s = fun().render(&x);
        let back = parse(&s).unwrap().eval_element(fun()).unwrap();
        prop_assert_eq!(fun().normal_form(&back), x, "{}", s);
    }

    #[test]
    fn u_elements_round_trip(x in element_strategy(uq())) {
        let s = uq().render(&x);
        let back = parse(&s).unwrap().eval(uq()).unwrap().into_element();
        prop_assert_eq!(uq().normal_form(&back), x, "{}", s);
    }
}
