use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::coeff::Scalar;

fn fun() -> Presentation {
    Presentation::fun_q().expect("Fun_q(SU(2)) presentation")
}

fn uqp() -> Presentation {
    Presentation::u_q().expect("U_q(su(2)) presentation")
}

fn w(g: &[Gen]) -> Element {
    Element::word(Word::from_gens(g))
}

fn c(x: Scalar, g: &[Gen]) -> Element {
    Element::term(x, Word::from_gens(g))
}

#[test]
fn fun_rules_have_expected_shape() {
    let p = fun();
    let lhs: Vec<String> = p.rules().iter().map(|r| p.render_gen_word(&r.lhs)).collect();
    assert_eq!(lhs.len(), 7, "{lhs:?}");
    for expect in ["b*a", "bs*a", "bs*b", "b*as", "bs*as", "a*as", "as*a"] {
        assert!(lhs.contains(&expect.to_string()), "missing {expect} in {lhs:?}");
    }
}

#[test]
fn u_rules_have_expected_shape() {
    let p = uqp();
    let lhs: Vec<String> = p.rules().iter().map(|r| p.render_gen_word(&r.lhs)).collect();
    for expect in ["k*kinv", "kinv*k", "e*k", "e*kinv", "es*k", "es*kinv", "es*e"] {
        assert!(lhs.contains(&expect.to_string()), "missing {expect} in {lhs:?}");
    }
    assert_eq!(lhs.len(), 7, "{lhs:?}");
}

#[test]
fn fun_basic_rewrites() {
    use funq::*;
    let p = fun();
    assert_eq!(p.monomial(&[B, A]), c(Scalar::q(), &[A, B]));
    // a*a = 1 − q² b*b = 1 − q² bb*
    let expected = &Element::one() - &c(Scalar::q_pow(2), &[B, BS]);
    assert_eq!(p.monomial(&[AS, A]), expected);
    assert_eq!(p.monomial(&[]), Element::one());
    assert_eq!(p.monomial(&[B, BS]), w(&[B, BS]));
}

#[test]
fn u_basic_rewrites() {
    use uq::*;
    let p = uqp();
    let qq = Scalar::q().sub(&Scalar::q_pow(-1));
    let k2 = &w(&[K, K]) - &w(&[KINV, KINV]);
    let expected = &w(&[E, ES]) + &k2.scale(&qq.inv().unwrap());
    assert_eq!(p.monomial(&[ES, E]), expected);
    assert_eq!(p.monomial(&[K, KINV]), Element::one());
    assert_eq!(p.monomial(&[KINV, K]), Element::one());
    assert_eq!(p.monomial(&[E, K]), c(Scalar::q(), &[K, E]));
}

#[test]
fn starred_relations_are_derived() {
    use funq::*;
    let p = fun();
    // from ba = qab: a*b* = q b*a*
    let r1 = &w(&[AS, BS]) - &p.monomial(&[BS, AS]).scale(&Scalar::q());
    assert!(p.normal_form(&r1).is_zero());
    // from b*a = qab*: a*b = q ba*
    let r2 = &p.monomial(&[AS, B]) - &p.monomial(&[B, AS]).scale(&Scalar::q());
    assert!(r2.is_zero());
}

#[test]
fn multiplication_matches_random_order_reduction() {
    use funq::*;
    let p = fun();
    let ab = p.monomial(&[A, B]);
    let prod = p.mul(&ab, &Element::gen(A));
    assert_eq!(prod, c(Scalar::q(), &[A, A, B]));
    let mut rng = StdRng::seed_from_u64(7);
    assert_eq!(p.normal_form_random(&w(&[A, B, A]), &mut rng), prod);
    assert_eq!(p.mul(&ab, &Element::one()), ab);
}

#[test]
fn star_is_antilinear_antihomomorphism() {
    use funq::*;
    let p = fun();
    assert_eq!(p.star(&p.monomial(&[A, B])), p.monomial(&[BS, AS]));
    let ib = c(Scalar::i(), &[B]);
    assert_eq!(p.star(&ib), c(Scalar::i().neg(), &[BS]));
    let x = &c(Scalar::s_pow(3), &[A, B, BS]) + &c(Scalar::i(), &[AS]);
    assert_eq!(p.star(&p.star(&x)), x);
}

#[test]
fn base_and_derived_relations_vanish() {
    for p in [fun(), uqp()] {
        for r in p.base_relations().iter().chain(p.derived_relations()) {
            assert!(p.normal_form(r).is_zero(), "{} does not vanish", p.render(r));
        }
        assert!(p.local_confluence_failures().is_empty());
        assert!(p.overlap_count() > 0);
    }
}

#[test]
fn normal_words_are_pbw() {
    use funq::*;
    let p = fun();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let len = rng.gen_range(0..7);
        let word: Vec<Gen> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        for (m, _) in p.monomial(&word).terms() {
            let g = m.gens();
            let has_a = g.contains(&A);
            let has_as = g.contains(&AS);
            assert!(!(has_a && has_as));
            let mut sorted = g.to_vec();
            sorted.sort();
            assert_eq!(sorted, g, "not sorted: {}", p.render_gen_word(m));
        }
    }
    let u = uqp();
    for _ in 0..200 {
        let len = rng.gen_range(0..7);
        let word: Vec<Gen> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        for (m, _) in u.monomial(&word).terms() {
            let g = m.gens();
            assert!(!(g.contains(&uq::K) && g.contains(&uq::KINV)));
            let mut sorted = g.to_vec();
            sorted.sort();
            assert_eq!(sorted, g);
        }
    }
}

#[test]
fn randomized_order_confluence() {
    let mut rng = StdRng::seed_from_u64(2024);
    for p in [fun(), uqp()] {
        for _ in 0..500 {
            let len = rng.gen_range(0..=6);
            let word: Vec<Gen> = (0..len).map(|_| rng.gen_range(0..4)).collect();
            let x = w(&word);
            assert_eq!(p.normal_form_random(&x, &mut rng), p.normal_form(&x));
        }
    }
}

#[test]
fn podles_relations_emerge() {
    use funq::*;
    let p = fun();
    let a_ = p.monomial(&[B, BS]);
    let b_ = p.monomial(&[A, B]);
    let bs_ = p.monomial(&[BS, AS]);
    let one = Element::one();
    let q2 = Scalar::q_pow(2);
    assert_eq!(p.mul(&a_, &b_), p.mul(&b_, &a_).scale(&q2));
    assert_eq!(p.mul(&a_, &bs_), p.mul(&bs_, &a_).scale(&Scalar::q_pow(-2)));
    let one_minus_a = &one - &a_;
    assert_eq!(p.mul(&b_, &bs_), p.mul(&a_, &one_minus_a).scale(&Scalar::q_pow(-2)));
    let one_minus_q2a = &one - &a_.scale(&q2);
    assert_eq!(p.mul(&bs_, &b_), p.mul(&a_, &one_minus_q2a));
}

#[test]
fn corrupted_rule_breaks_a_relation() {
    let p = fun();
    for i in 0..p.rules().len() {
        let bad = p.with_corrupted_rule(i);
        let broken = bad
            .base_relations()
            .iter()
            .chain(bad.derived_relations())
            .any(|r| !bad.normal_form(r).is_zero());
        assert!(broken, "corrupting rule {i} went unnoticed");
    }
}

#[test]
fn rendering() {
    use funq::*;
    let p = fun();
    let x = &c(Scalar::s_pow(1), &[A, A, B]) - &p.monomial(&[AS, A]);
    assert_eq!(p.render(&x), "q^(1/2)*a^2*b + q^2*b*bs - 1");
    assert_eq!(p.render_math(&x), "q^(1/2)·a^2·b + q^2·b·b* - 1");
    let u = uqp();
    assert!(u.render(&u.monomial(&[uq::ES, uq::E])).contains("kinv^2"));
    assert_eq!(p.render(&Element::zero()), "0");
}
