use std::sync::OnceLock;

use super::formulas::{FUN_ACTIONS, U_ACTIONS};
use super::*;
use crate::cli::parse::parse;

fn ql() -> &'static QLorentz {
    static QL: OnceLock<QLorentz> = OnceLock::new();
    QL.get_or_init(|| QLorentz::standard().unwrap())
}

fn fun(s: &str) -> Element {
    parse(s).unwrap().eval_element(ql().fun()).unwrap()
}

fn uel(s: &str) -> Element {
    parse(s).unwrap().eval_element(ql().u()).unwrap()
}

const CONV: SweedlerConvention = SweedlerConvention::Coopposite;

#[test]
fn u_actions_on_sphere_generators() {
    let q = ql();
    for (actor, target, expected) in U_ACTIONS {
        let got = q.act_u(&uel(actor), &fun(target));
        assert_eq!(got, fun(expected), "{actor} ▷ {target}: got {}", q.fun().render(&got));
    }
}

#[test]
fn fun_actions_on_sphere_generators() {
    let q = ql();
    for (actor, target, expected) in FUN_ACTIONS {
        let got = q.act_fun(&fun(actor), &fun(target));
        assert_eq!(got, fun(expected), "{actor} ▷ {target}: got {}", q.fun().render(&got));
    }
}

#[test]
fn double_action_examples() {
    let q = ql();
    let x = DoubleElement::pure(&uel("k"), &fun("b"));
    assert_eq!(q.act_double(&x, &fun("B")), fun("(q^2 - 1)*q^-2*B^2"));
    let one = DoubleElement::one();
    assert_eq!(q.act_double(&one, &fun("a*bs + 3")), fun("a*bs + 3"));
    assert!(q.act_double(&x, &Element::zero()).is_zero());
}

#[test]
fn right_action_and_sphere_membership() {
    let q = ql();
    let k = uel("k");
    assert_eq!(q.right_act(&fun("a"), &k).unwrap(), fun("q^(1/2)*a"));
    assert_eq!(q.right_act(&fun("b*bs"), &k).unwrap(), fun("b*bs"));
    assert_eq!(q.right_act(&Element::one(), &k).unwrap(), Element::one());
    assert!(matches!(q.right_act(&fun("a"), &uel("e")), Err(DoubleError::NotGroupLike(_))));
    assert!(matches!(q.right_act(&fun("a"), &uel("k + kinv")), Err(DoubleError::NotGroupLike(_))));
    assert!(q.is_podles(&fun("B")));
    assert!(q.is_podles(&Element::one()));
    assert!(!q.is_podles(&fun("a")));
}

#[test]
fn sphere_expansion() {
    let q = ql();
    let cap = DEFAULT_DEGREE_CAP;
    let p = q.express_in_sphere_generators(&fun("b*bs"), cap).unwrap();
    assert_eq!(p.to_string(), "A");
    let p = q.express_in_sphere_generators(&fun("B*Bs"), cap).unwrap();
    assert_eq!(q.sphere_to_fun(&p), fun("q^-2*A*(1 - A)"));
    assert_eq!(p.to_string(), "-q^-2*A^2 + q^-2*A");
    let p = q.express_in_sphere_generators(&fun("Bs*B"), cap).unwrap();
    assert_eq!(p.to_string(), "-q^2*A^2 + A");
    assert_eq!(p.render_math(), "-q^2·A^2 + A");
    let p = q.express_in_sphere_generators(&fun("B*A - q^2*Bs^3 + 5"), cap).unwrap();
    assert_eq!(p.to_string(), "-q^2*Bs^3 + q^-2*A*B + 5");
    assert!(matches!(q.express_in_sphere_generators(&fun("a"), cap), Err(DoubleError::NotInSphere(_))));
    assert!(matches!(
        q.express_in_sphere_generators(&fun("A^3"), 2),
        Err(DoubleError::DegreeCapExceeded { degree: 3, cap: 2 })
    ));
}

#[test]
fn sphere_expansion_round_trips() {
    let q = ql();
    let monos: Vec<SphereMonomial> =
        (0..3).flat_map(|a| (-2..=2).map(move |b| SphereMonomial { a, b })).collect();
    for (i, m) in monos.iter().enumerate() {
        for n in &monos[i..] {
            let x = q.fun().mul(&q.sphere_monomial(*m), &q.sphere_monomial(*n));
            let p = q.express_in_sphere_generators(&x, DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(q.sphere_to_fun(&p), x);
        }
    }
}

#[test]
fn double_antipode_and_star_examples() {
    let q = ql();
    let k = DoubleElement::from_u(&uel("k"));
    let b = DoubleElement::from_fun(&fun("b"));
    assert_eq!(q.double_antipode(&DoubleElement::one(), CONV), DoubleElement::one());
    assert_eq!(q.double_antipode(&k, CONV), DoubleElement::from_u(&uel("kinv")));
    assert_eq!(q.double_antipode(&b, CONV), DoubleElement::from_fun(&fun("-q*b")));
    assert_eq!(q.double_star(&DoubleElement::one(), CONV), DoubleElement::one());
    assert_eq!(q.double_star(&k, CONV), k);
    for (_, x) in q.double_generators() {
        for (_, y) in q.double_generators() {
            let xy = DoubleElement::pure(
                &Element::word(x.terms().next().unwrap().0.clone()),
                &Element::word(y.terms().next().unwrap().1.clone()),
            );
            assert_eq!(q.double_star(&q.double_star(&xy, CONV), CONV), xy);
        }
    }
}

#[test]
fn exactly_one_convention_passes() {
    let q = ql();
    assert!(q.convention_passes(SweedlerConvention::Coopposite));
    assert!(!q.convention_passes(SweedlerConvention::Ordinary));
    assert_eq!(q.detect_convention(), Some(SweedlerConvention::Coopposite));
}

#[test]
fn cross_relation_examples() {
    let q = ql();
    assert!(q.cross_relation_law(&uel("e"), &fun("b"), &fun("B"), CONV).holds());
    assert!(q.cross_relation_law(&uel("k"), &fun("a"), &fun("A"), CONV).holds());
    assert!(q.cross_relation_law(&Element::one(), &Element::one(), &fun("Bs"), CONV).holds());
}

#[test]
fn double_product_is_an_action_and_antipode_antimultiplicative() {
    let q = ql();
    let gens = q.double_generators();
    let hs: Vec<Element> = SphereGen::ALL.iter().map(|&g| q.sphere_generator(g)).collect();
    for (_, x) in &gens {
        for (_, y) in &gens {
            let xy = q.double_mul(x, y, CONV);
            let lhs = q.double_antipode(&xy, CONV);
            let rhs = q.double_mul(&q.double_antipode(y, CONV), &q.double_antipode(x, CONV), CONV);
            for h in &hs {
                assert!(q.action_law(x, y, h, CONV).holds());
                assert_eq!(q.act_double(&lhs, h), q.act_double(&rhs, h));
            }
        }
    }
}

#[test]
fn stability_of_the_sphere() {
    let q = ql();
    let monos: Vec<SphereMonomial> = (0..=2u32)
        .flat_map(|a| (-2..=2i32).map(move |b| SphereMonomial { a, b }))
        .filter(|m| m.degree() <= 2)
        .collect();
    for (name, x) in q.double_generators() {
        for m in &monos {
            let h = q.sphere_monomial(*m);
            assert!(q.is_podles(&q.act_double(&x, &h)), "{name} ▷ {m:?} leaves the sphere");
        }
    }
}

#[test]
fn actions_compose() {
    let q = ql();
    let hs: Vec<Element> = SphereGen::ALL.iter().map(|&g| q.sphere_generator(g)).collect();
    for x in ["k", "e", "es"] {
        for y in ["k", "e", "es"] {
            let xy = q.u().mul(&uel(x), &uel(y));
            for h in &hs {
                assert_eq!(q.act_u(&xy, h), q.act_u(&uel(x), &q.act_u(&uel(y), h)));
            }
        }
    }
    for f in ["a", "b"] {
        for g in ["a", "b"] {
            let fg = q.fun().mul(&fun(f), &fun(g));
            for h in &hs {
                assert_eq!(q.act_fun(&fg, h), q.act_fun(&fun(f), &q.act_fun(&fun(g), h)));
            }
        }
    }
}
