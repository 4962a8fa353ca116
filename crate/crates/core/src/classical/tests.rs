use std::sync::OnceLock;

use super::*;

fn ql() -> &'static QLorentz {
    static QL: OnceLock<QLorentz> = OnceLock::new();
    QL.get_or_init(|| QLorentz::standard().unwrap())
}

fn fun(s: &str) -> Element {
    parse(s).unwrap().eval_element(ql().fun()).unwrap()
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn mono(m: SphereMonomial) -> ClassicalPoly {
    let mut p = ClassicalPoly::zero();
    p.add_term(m, GaussianRational::one());
    p
}

fn low_degree_monomials() -> Vec<SphereMonomial> {
    (0..=2u32)
        .flat_map(|a| (-2..=2i32).map(move |b| SphereMonomial { a, b }))
        .filter(|m| m.degree() <= 2)
        .collect()
}

#[test]
fn relation_of_the_classical_sphere() {
    let a = ClassicalPoly::gen(SphereGen::A);
    let b = ClassicalPoly::gen(SphereGen::B);
    let bs = ClassicalPoly::gen(SphereGen::Bs);
    assert_eq!(b.mul(&bs), a.sub(&a.pow(2)));
    assert_eq!(bs.pow(2).mul(&b.pow(3)), b.mul(&a.sub(&a.pow(2)).pow(2)));
    assert_eq!(b.mul(&bs).to_string(), "-A^2 + A");
    assert_eq!(a.mul(&b).sub(&ClassicalPoly::one()).render_math(), "𝓐·𝓑 - 1");
}

#[test]
fn classical_product_is_associative() {
    let ms = low_degree_monomials();
    for x in &ms {
        for y in &ms {
            for z in &ms {
                let (x, y, z) = (mono(*x), mono(*y), mono(*z));
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            }
        }
    }
}

/// Coordinates `𝓐 = 1/(1 + zw)`, `𝓑 = z𝓐`, `𝓑* = w𝓐` with `z, w` treated as
/// independent, and the fields written as `f ∂_z + g ∂_w`.
#[test]
fn tables_follow_from_the_fields_in_affine_coordinates() {
    let i = GaussianRational::i();
    let points = [(g(2), g(3)), (GaussianRational::from_ratio(1, 3), g(-5)), (&g(1) + &i, GaussianRational::from_ratio(-2, 7))];
    for (z, w) in points {
        let d = &g(1) + &(&z * &w);
        let d2 = &d * &d;
        let over = |x: GaussianRational| &x / &d2;
        let a = &g(1) / &d;
        let b = &z / &d;
        let bs = &w / &d;
        // (∂_z, ∂_w) of 𝓐, 𝓑, 𝓑*
        let dz = [over(-&w), over(g(1)), over(-(&w * &w))];
        let dw = [over(-&z), over(-(&z * &z)), over(g(1))];
        for v in [VectorField::SU2, VectorField::AN].concat() {
            let (f, gg) = match v {
                VectorField::R3 => (&i * &z, -(&i * &w)),
                VectorField::RPlus => (i.clone(), &i * &(&w * &w)),
                VectorField::RMinus => (&i * &(&z * &z), i.clone()),
                VectorField::T0 => (z.clone(), w.clone()),
                VectorField::TPlus => (g(0), g(-2)),
                VectorField::TMinus => (g(2), g(0)),
            };
            let der = v.derivation();
            for (k, gen) in SphereGen::ALL.iter().enumerate() {
                let expected = &(&f * &dz[k]) + &(&gg * &dw[k]);
                assert_eq!(der.on(*gen).eval(&a, &b, &bs), expected, "{} on {}", v.token(), gen.token());
            }
        }
    }
}

#[test]
fn limits_on_sphere_generators() {
    let q = ql();
    for v in [VectorField::SU2, VectorField::AN].concat() {
        for gen in SphereGen::ALL {
            let got = quantum_limit(q, v, &q.sphere_generator(gen)).unwrap();
            assert_eq!(&got, v.derivation().on(gen), "{} on {}", v.token(), gen.token());
        }
    }
}

#[test]
fn limits_are_the_vector_fields_on_low_degree_monomials() {
    let q = ql();
    for v in [VectorField::SU2, VectorField::AN].concat() {
        let der = v.derivation();
        for m in low_degree_monomials() {
            let got = quantum_limit(q, v, &q.sphere_monomial(m)).unwrap();
            assert_eq!(got, der.apply(&mono(m)), "{} on {m:?}", v.token());
        }
    }
}

#[test]
fn limits_are_derivations() {
    let q = ql();
    for v in [VectorField::SU2, VectorField::AN].concat() {
        for x in SphereGen::ALL {
            for y in SphereGen::ALL {
                let (hx, hy) = (q.sphere_generator(x), q.sphere_generator(y));
                let lhs = quantum_limit(q, v, &q.fun().mul(&hx, &hy)).unwrap();
                let (cx, cy) = (ClassicalPoly::gen(x), ClassicalPoly::gen(y));
                let lx = quantum_limit(q, v, &hx).unwrap();
                let ly = quantum_limit(q, v, &hy).unwrap();
                assert_eq!(lhs, lx.mul(&cy).add(&cx.mul(&ly)));
            }
        }
    }
}

#[test]
fn lie_brackets() {
    for (name, lhs, rhs) in bracket_relations() {
        assert_eq!(lhs, rhs, "{name}");
    }
    let basis = real_basis();
    let half_i = &GaussianRational::from_ratio(1, 2) * &GaussianRational::i();
    let b_minus_bs = ClassicalPoly::gen(SphereGen::B).sub(&ClassicalPoly::gen(SphereGen::Bs));
    assert_eq!(basis[0].1.on_a, b_minus_bs.scale(&half_i));
}

#[test]
fn kinv_gives_minus_r3() {
    let q = ql();
    for gen in SphereGen::ALL {
        let got = kinv_limit(q, &q.sphere_generator(gen)).unwrap();
        assert_eq!(got, VectorField::R3.derivation().on(gen).scale(&g(-1)));
    }
}

#[test]
fn fun_action_degenerates_at_one() {
    let q = ql();
    for x in ["a", "as", "b", "bs"] {
        let xe = fun(x);
        let eps = q.fun().counit(&xe);
        for gen in SphereGen::ALL {
            let h = q.sphere_generator(gen);
            let d = &q.act_fun(&xe, &h) - &h.scale(&eps);
            let p = q.express_in_sphere_generators(&d, DEFAULT_DEGREE_CAP).unwrap();
            for (_, c) in p.terms() {
                assert!(c.eval_at_one().unwrap().is_zero(), "{x} on {}", gen.token());
            }
        }
    }
}

#[test]
fn numeric_cross_check_near_one() {
    let q = ql();
    for v in [VectorField::SU2, VectorField::AN].concat() {
        for gen in SphereGen::ALL {
            let h = q.sphere_generator(gen);
            let exact = quantum_limit(q, v, &h).unwrap();
            for qv in [1.0 + 1e-6, 1.0 - 1e-6] {
                let num = numeric_limit(q, v, &h, qv).unwrap();
                let dev = numeric_deviation(&exact, &num);
                assert!(dev <= 1e-4, "{} on {} at q = {qv}: deviation {dev}", v.token(), gen.token());
            }
        }
    }
}

#[test]
fn errors() {
    let q = ql();
    assert!(matches!(quantum_limit(q, VectorField::R3, &fun("a")), Err(ClassicalError::Sphere(_))));
    assert_eq!(VectorField::from_token("T2 + iT1"), Some(VectorField::TPlus));
    assert_eq!(VectorField::from_token("-R1+iR2"), Some(VectorField::RMinus));
    assert_eq!(VectorField::from_token("R4"), None);
}
