//! The verification suite: every structural identity of the engine as a
//! named check with both sides rendered.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::classical::{
    bracket_relations, kinv_limit, numeric_deviation, numeric_limit, quantum_limit, ClassicalPoly, VectorField,
};
use crate::cli::parse::parse;
use crate::double::formulas::{FUN_ACTIONS, U_ACTIONS};
use crate::double::{DoubleElement, QLorentz, SphereGen, SphereMonomial, SweedlerConvention};
use crate::hopf::HopfAlgebra;
use crate::ncpoly::{Element, Gen, Presentation, Word};

/// Relative tolerance of the numeric cross-check.
pub const NUMERIC_TOLERANCE: f64 = 1e-4;
/// Distance from `q = 1` used in the numeric cross-check.
pub const NUMERIC_STEP: f64 = 1e-6;
/// Samples in the randomized rewriting-order test.
pub const RANDOM_ORDER_SAMPLES: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub presentation: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scope: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One line per check; failures also print both sides.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match c.status {
                Status::Pass => out.push_str(&format!("PASS {}\n", c.name)),
                Status::Fail => {
                    out.push_str(&format!("FAIL {} [{}]\n", c.name, c.presentation));
                    out.push_str(&format!("  lhs: {}\n  rhs: {}\n", c.lhs, c.rhs));
                }
            }
        }
        out.push_str(&format!("{}: {} passed, {} failed\n", self.scope, self.passed, self.failed));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    All,
    Relations,
    Hopf,
    Pairing,
    UActions,
    FunActions,
    Actions,
    Structure,
    Limits,
    Numeric,
    Brackets,
    Classical,
}

impl Scope {
    pub const ALL: [Scope; 12] = [
        Scope::All,
        Scope::Relations,
        Scope::Hopf,
        Scope::Pairing,
        Scope::UActions,
        Scope::FunActions,
        Scope::Actions,
        Scope::Structure,
        Scope::Limits,
        Scope::Numeric,
        Scope::Brackets,
        Scope::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Relations => "relations",
            Scope::Hopf => "hopf",
            Scope::Pairing => "pairing",
            Scope::UActions => "u-actions",
            Scope::FunActions => "fun-actions",
            Scope::Actions => "actions",
            Scope::Structure => "structure",
            Scope::Limits => "limits",
            Scope::Numeric => "numeric",
            Scope::Brackets => "brackets",
            Scope::Classical => "classical",
        }
    }

    /// The leaf groups a scope runs.
    fn groups(self) -> Vec<Group> {
        use Group::*;
        match self {
            Scope::All => vec![Relations, Hopf, Pairing, UActions, FunActions, Structure, Limits, Numeric, Brackets, Classical],
            Scope::Relations => vec![Relations],
            Scope::Hopf => vec![Hopf],
            Scope::Pairing => vec![Pairing],
            Scope::UActions => vec![UActions],
            Scope::FunActions => vec![FunActions],
            Scope::Actions => vec![UActions, FunActions],
            Scope::Structure => vec![Structure],
            Scope::Limits => vec![Limits],
            Scope::Numeric => vec![Numeric],
            Scope::Brackets => vec![Brackets],
            Scope::Classical => vec![Classical],
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let alias = match s {
            "laws" => Some(Scope::Structure),
            "relation" => Some(Scope::Relations),
            _ => None,
        };
        alias.or_else(|| Scope::ALL.into_iter().find(|sc| sc.name() == s)).ok_or_else(|| {
            let names: Vec<&str> = Scope::ALL.iter().map(|s| s.name()).collect();
            format!("unknown scope '{s}' (expected one of: {}, laws)", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Group {
    Relations,
    Hopf,
    Pairing,
    UActions,
    FunActions,
    Structure,
    Limits,
    Numeric,
    Brackets,
    Classical,
}

/// Runs `scope` against `ql`. Groups run on separate threads; the report is
/// sorted by check name.
pub fn run_suite(ql: &QLorentz, scope: Scope, degree_cap: u32) -> Report {
    let mut checks: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> =
            scope.groups().into_iter().map(|g| s.spawn(move || run_group(ql, g, degree_cap))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("check panics are caught")).collect()
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().filter(|c| c.passed()).count();
    Report { scope: scope.name().to_string(), passed, failed: checks.len() - passed, checks }
}

fn run_group(ql: &QLorentz, g: Group, cap: u32) -> Vec<Check> {
    let mut out = Checks::default();
    match g {
        Group::Relations => relations(ql, &mut out),
        Group::Hopf => hopf(ql, &mut out),
        Group::Pairing => pairing(ql, &mut out),
        Group::UActions => u_actions(ql, cap, &mut out),
        Group::FunActions => fun_actions(ql, cap, &mut out),
        Group::Structure => structure(ql, cap, &mut out),
        Group::Limits => limits(ql, &mut out),
        Group::Numeric => numeric(ql, &mut out),
        Group::Brackets => brackets(&mut out),
        Group::Classical => classical(ql, &mut out),
    }
    out.0
}

/// Result of one check: whether it holds and both sides.
struct Outcome {
    ok: bool,
    lhs: String,
    rhs: String,
}

impl Outcome {
    /// Compares rendered canonical forms; an error on either side fails.
    fn sides(lhs: String, rhs: String) -> Outcome {
        let ok = lhs == rhs && !lhs.starts_with("error:") && !rhs.starts_with("error:");
        Outcome { ok, lhs, rhs }
    }

    /// Runs `case` over `inputs`; the first failure becomes the counterexample.
    fn forall<T>(
        inputs: impl IntoIterator<Item = T>,
        lhs: &str,
        rhs: &str,
        mut case: impl FnMut(&T) -> Option<(String, String)>,
    ) -> Outcome {
        let mut n = 0;
        for x in inputs {
            n += 1;
            if let Some((l, r)) = case(&x) {
                return Outcome { ok: false, lhs: l, rhs: r };
            }
        }
        Outcome { ok: true, lhs: format!("{lhs} ({n} cases)"), rhs: format!("{rhs} ({n} cases)") }
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, presentation: &str, f: impl FnOnce() -> Outcome) {
        let name = name.into();
        let check = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(o) => Check {
                name,
                status: if o.ok { Status::Pass } else { Status::Fail },
                lhs: o.lhs,
                rhs: o.rhs,
                presentation: presentation.to_string(),
            },
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".to_string());
                Check {
                    name,
                    status: Status::Fail,
                    lhs: format!("error: {msg}"),
                    rhs: String::new(),
                    presentation: presentation.to_string(),
                }
            }
        };
        self.0.push(check);
    }
}

fn algebras(ql: &QLorentz) -> [(&'static str, &HopfAlgebra); 2] {
    [("funq", ql.fun()), ("uq", ql.u())]
}

/// All words of length exactly `n` in the generators of `p`.
fn words_of_len(p: &Presentation, n: usize) -> Vec<Word> {
    let g = p.generators().len() as Gen;
    let mut out = vec![Word::unit()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..g).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn words_up_to(p: &Presentation, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|k| words_of_len(p, k)).collect()
}

fn el(p: &Presentation, s: &str) -> Element {
    parse(s).and_then(|x| x.eval_element(p)).unwrap_or_else(|e| panic!("{s}: {e}"))
}

// ----- relations -----

fn relations(ql: &QLorentz, out: &mut Checks) {
    for (alg, h) in algebras(ql) {
        let p = h.presentation();
        let groups = [("base", p.base_relations()), ("derived", p.derived_relations())];
        for (kind, rels) in groups {
            for (i, r) in rels.iter().enumerate() {
                out.add(format!("relations.{alg}.{kind}.{i}"), alg, || {
                    let nf = p.normal_form(r);
                    Outcome { ok: nf.is_zero(), lhs: format!("nf({}) = {}", p.render(r), p.render(&nf)), rhs: "0".into() }
                });
            }
        }
        out.add(format!("relations.{alg}.local-confluence"), alg, || {
            let failures = p.local_confluence_failures();
            match failures.first() {
                None => Outcome::sides(format!("{} overlaps resolve", p.overlap_count()), format!("{} overlaps resolve", p.overlap_count())),
                Some(f) => Outcome {
                    ok: false,
                    lhs: format!("{} -> {}", p.render_gen_word(&f.overlap), p.render(&f.left)),
                    rhs: format!("{} -> {}", p.render_gen_word(&f.overlap), p.render(&f.right)),
                },
            }
        });
        out.add(format!("relations.{alg}.random-order"), alg, || {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            let n = p.generators().len() as Gen;
            let samples: Vec<Word> = (0..RANDOM_ORDER_SAMPLES)
                .map(|_| {
                    let len = rng.gen_range(2..=6);
                    Word::from_gens(&(0..len).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>())
                })
                .collect();
            Outcome::forall(samples, "random-order normal form", "leftmost normal form", |w| {
                let x = Element::word(w.clone());
                let r = p.normal_form_random(&x, &mut rng);
                let l = p.normal_form(&x);
                (r != l).then(|| (format!("{} -> {}", p.render_gen_word(w), p.render(&r)), p.render(&l)))
            })
        });
    }
}

// ----- Hopf axioms -----

fn hopf(ql: &QLorentz, out: &mut Checks) {
    for (alg, h) in algebras(ql) {
        let p = h.presentation();
        for len in 1..=3 {
            let words = words_of_len(p, len);
            let w_el = |w: &Word| Element::word(w.clone());
            let wn = |w: &Word| p.render_gen_word(w);
            out.add(format!("hopf.coassoc.{alg}.len{len}"), alg, || {
                Outcome::forall(&words, "(Δ⊗id)Δ(w)", "(id⊗Δ)Δ(w)", |w| {
                    let d = h.coassociativity_defect(&w_el(w));
                    (!d.is_zero()).then(|| (format!("(Δ⊗id)Δ - (id⊗Δ)Δ at {} = {}", wn(w), h.render_tensor(&d, false)), "0".into()))
                })
            });
            out.add(format!("hopf.counit.{alg}.len{len}"), alg, || {
                Outcome::forall(&words, "(ε⊗id)Δ(w), (id⊗ε)Δ(w)", "w", |w| {
                    let (l, r) = h.counit_defect(&w_el(w));
                    (!l.is_zero() || !r.is_zero())
                        .then(|| (format!("counit defects at {}: {}, {}", wn(w), p.render(&l), p.render(&r)), "0, 0".into()))
                })
            });
            out.add(format!("hopf.antipode.{alg}.len{len}"), alg, || {
                Outcome::forall(&words, "S(w')w'', w'S(w'')", "ε(w)1", |w| {
                    let (l, r) = h.antipode_defect(&w_el(w));
                    (!l.is_zero() || !r.is_zero())
                        .then(|| (format!("antipode defects at {}: {}, {}", wn(w), p.render(&l), p.render(&r)), "0, 0".into()))
                })
            });
            out.add(format!("hopf.star-coproduct.{alg}.len{len}"), alg, || {
                Outcome::forall(&words, "Δ(w*)", "(Δw)^(*⊗*)", |w| {
                    let d = h.star_coproduct_defect(&w_el(w));
                    (!d.is_zero()).then(|| (format!("Δ(w*) - (Δw)* at {} = {}", wn(w), h.render_tensor(&d, false)), "0".into()))
                })
            });
            out.add(format!("hopf.star-antipode.{alg}.len{len}"), alg, || {
                Outcome::forall(&words, "S(S(w*)*)", "w", |w| {
                    let d = h.star_antipode_defect(&w_el(w));
                    (!d.is_zero()).then(|| (format!("S(S(w*)*) - w at {} = {}", wn(w), p.render(&d)), "0".into()))
                })
            });
        }
        out.add(format!("hopf.respects-relations.{alg}"), alg, || {
            let rels: Vec<&Element> = p.base_relations().iter().chain(p.derived_relations()).collect();
            Outcome::forall(rels, "Δ(r), ε(r), S(r), S⁻¹(r)", "0", |r| {
                let ok = h.coproduct(r).is_zero()
                    && h.counit(r).is_zero()
                    && h.antipode(r).is_zero()
                    && h.antipode_inv(r).is_zero();
                (!ok).then(|| (format!("Δ, ε, S or S⁻¹ nonzero on {}", p.render(r)), "0".into()))
            })
        });
    }
}

// ----- pairing -----

fn pairing(ql: &QLorentz, out: &mut Checks) {
    let pr = ql.pairing();
    let (u, f) = (ql.u().presentation(), ql.fun().presentation());
    let table: [(&str, &str, &str); 16] = [
        ("k", "a", "q^(1/2)"),
        ("k", "as", "q^(-1/2)"),
        ("k", "b", "0"),
        ("k", "bs", "0"),
        ("kinv", "a", "q^(-1/2)"),
        ("kinv", "as", "q^(1/2)"),
        ("kinv", "b", "0"),
        ("kinv", "bs", "0"),
        ("e", "a", "0"),
        ("e", "as", "0"),
        ("e", "b", "0"),
        ("e", "bs", "-q^-1"),
        ("es", "a", "0"),
        ("es", "as", "0"),
        ("es", "b", "1"),
        ("es", "bs", "0"),
    ];
    for (x, g, expected) in table {
        out.add(format!("pairing.table.{x}.{g}"), "pairing", || {
            let v = pr.pair(&el(u, x), &el(f, g));
            Outcome::sides(v.to_string(), el_scalar(expected))
        });
    }
    out.add("pairing.kinv-row", "pairing", || {
        let t = crate::hopf::TensorElement::tensor(&el(u, "k"), &el(u, "kinv"));
        let t2 = crate::hopf::TensorElement::tensor(&el(u, "kinv"), &el(u, "k"));
        Outcome::forall(words_up_to(f, 2), "⟨k⊗k⁻¹, Δf⟩, ⟨k⁻¹⊗k, Δf⟩", "ε(f)", |w| {
            let fw = Element::word(w.clone());
            let df = ql.fun().coproduct(&fw);
            let eps = ql.fun().counit(&fw);
            let (l1, l2) = (pr.pair_tensors(&t, &df), pr.pair_tensors(&t2, &df));
            (l1 != eps || l2 != eps).then(|| (format!("at f = {}: {l1}, {l2}", f.render_gen_word(w)), eps.to_string()))
        })
    });
    let u_gens = ["k", "kinv", "e", "es"];
    let f_gens = ["a", "as", "b", "bs"];
    for x in u_gens {
        for g in f_gens {
            out.add(format!("pairing.star.{x}.{g}"), "pairing", || {
                let (xe, ge) = (el(u, x), el(f, g));
                let lhs = pr.pair(&ql.u().star(&xe), &ge);
                let rhs = pr.pair(&xe, &ql.fun().star(&ql.fun().antipode(&ge))).conjugate();
                Outcome::sides(lhs.to_string(), rhs.to_string())
            });
        }
    }
    out.add("pairing.product.u-side", "pairing", || {
        let cases: Vec<(&str, &str, Word)> = u_gens
            .iter()
            .flat_map(|x| u_gens.iter().map(move |y| (*x, *y)))
            .flat_map(|(x, y)| words_up_to(f, 2).into_iter().map(move |w| (x, y, w)))
            .collect();
        Outcome::forall(cases, "⟨xy, f⟩", "⟨x⊗y, Δf⟩", |(x, y, w)| {
            let d = pr.product_defect_u(&el(u, x), &el(u, y))(&Element::word(w.clone()));
            (!d.is_zero()).then(|| (format!("⟨{x}*{y}, {}⟩ - ⟨{x}⊗{y}, Δ⟩ = {d}", f.render_gen_word(w)), "0".into()))
        })
    });
    out.add("pairing.product.fun-side", "pairing", || {
        let mut cases: Vec<(Word, &str, &str)> = Vec::new();
        for w in words_up_to(u, 2) {
            for a in f_gens {
                for b in f_gens {
                    cases.push((w.clone(), a, b));
                }
            }
        }
        Outcome::forall(cases, "⟨x, fg⟩", "⟨Δx, f⊗g⟩", |(w, a, b)| {
            let d = pr.product_defect_fun(&Element::word(w.clone()), &el(f, a), &el(f, b));
            (!d.is_zero()).then(|| (format!("⟨{}, {a}*{b}⟩ - ⟨Δ, {a}⊗{b}⟩ = {d}", u.render_gen_word(w)), "0".into()))
        })
    });
    out.add("pairing.antipode", "pairing", || {
        let cases: Vec<(Word, Word)> = words_up_to(u, 2)
            .into_iter()
            .flat_map(|x| words_up_to(f, 2).into_iter().map(move |y| (x.clone(), y)))
            .collect();
        Outcome::forall(cases, "⟨Sx, f⟩", "⟨x, Sf⟩", |(x, y)| {
            let d = pr.antipode_defect(&Element::word(x.clone()), &Element::word(y.clone()));
            (!d.is_zero()).then(|| (format!("⟨S{0}, {1}⟩ - ⟨{0}, S{1}⟩ = {d}", u.render_gen_word(x), f.render_gen_word(y)), "0".into()))
        })
    });
    out.add("pairing.units", "pairing", || {
        let cases: Vec<(Word, Word)> = words_up_to(u, 2)
            .into_iter()
            .flat_map(|x| words_up_to(f, 2).into_iter().map(move |y| (x.clone(), y)))
            .collect();
        Outcome::forall(cases, "⟨1, f⟩, ⟨x, 1⟩", "ε(f), ε(x)", |(x, y)| {
            let (a, b) = pr.unit_defects(&Element::word(x.clone()), &Element::word(y.clone()));
            (!a.is_zero() || !b.is_zero())
                .then(|| (format!("unit defects at ({}, {}): {a}, {b}", u.render_gen_word(x), f.render_gen_word(y)), "0, 0".into()))
        })
    });
    out.add("pairing.respects-relations", "pairing", || {
        let fun_rels: Vec<Element> = f.base_relations().iter().chain(f.derived_relations()).cloned().collect();
        let u_rels: Vec<Element> = u.base_relations().iter().chain(u.derived_relations()).cloned().collect();
        let mut cases = Vec::new();
        for x in words_up_to(u, 2) {
            for r in &fun_rels {
                cases.push((Element::word(x.clone()), r.clone()));
            }
        }
        for r in &u_rels {
            for y in words_up_to(f, 2) {
                cases.push((r.clone(), Element::word(y)));
            }
        }
        Outcome::forall(cases, "⟨x, r⟩, ⟨r, f⟩", "0", |(x, y)| {
            let v = pr.pair(x, y);
            (!v.is_zero()).then(|| (format!("⟨{}, {}⟩ = {v}", u.render(x), f.render(y)), "0".into()))
        })
    });
}

fn el_scalar(s: &str) -> String {
    parse(s).and_then(|x| x.eval_scalar()).map(|c| c.to_string()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

// ----- actions on the sphere -----

fn sphere_string(ql: &QLorentz, x: &Element, cap: u32) -> String {
    match ql.express_in_sphere_generators(x, cap) {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn u_actions(ql: &QLorentz, cap: u32, out: &mut Checks) {
    for (x, h, expected) in U_ACTIONS {
        out.add(format!("act.u.{x}.{h}"), "double", || {
            let got = ql.act_u(&el(ql.u(), x), &el(ql.fun(), h));
            Outcome::sides(sphere_string(ql, &got, cap), sphere_string(ql, &el(ql.fun(), expected), cap))
        });
    }
}

fn fun_actions(ql: &QLorentz, cap: u32, out: &mut Checks) {
    for (x, h, expected) in FUN_ACTIONS {
        out.add(format!("act.fun.{x}.{h}"), "double", || {
            let got = ql.act_fun(&el(ql.fun(), x), &el(ql.fun(), h));
            Outcome::sides(sphere_string(ql, &got, cap), sphere_string(ql, &el(ql.fun(), expected), cap))
        });
    }
}

// ----- double structure -----

fn structure(ql: &QLorentz, cap: u32, out: &mut Checks) {
    let conv = SweedlerConvention::default();
    let fun = ql.fun();
    let f = fun.presentation();
    let podles = [("AB", "A*B", "q^2*B*A"), ("ABs", "A*Bs", "q^-2*Bs*A"), ("BBs", "B*Bs", "q^-2*A*(1 - A)"), ("BsB", "Bs*B", "A*(1 - q^2*A)")];
    for (name, lhs, rhs) in podles {
        out.add(format!("structure.podles.{name}"), "sphere", || {
            let (l, r) = (fun.normal_form(&el(f, lhs)), fun.normal_form(&el(f, rhs)));
            Outcome { ok: l == r, lhs: sphere_string(ql, &l, cap), rhs: sphere_string(ql, &r, cap) }
        });
    }
    out.add("structure.sphere-round-trip", "sphere", || {
        let monos: Vec<SphereMonomial> = (0..=2u32)
            .flat_map(|a| (-2..=2i32).map(move |b| SphereMonomial { a, b }))
            .filter(|m| m.degree() <= 2)
            .collect();
        let pairs: Vec<(SphereMonomial, SphereMonomial)> =
            monos.iter().flat_map(|m| monos.iter().map(move |n| (*m, *n))).collect();
        Outcome::forall(pairs, "sphere_to_fun(expand(x))", "x", |(m, n)| {
            let x = fun.mul(&ql.sphere_monomial(*m), &ql.sphere_monomial(*n));
            match ql.express_in_sphere_generators(&x, cap) {
                Ok(p) if ql.sphere_to_fun(&p) == x => None,
                Ok(p) => Some((fun.render(&ql.sphere_to_fun(&p)), fun.render(&x))),
                Err(e) => Some((format!("error: {e}"), fun.render(&x))),
            }
        })
    });
    let hs: Vec<(SphereGen, Element)> = SphereGen::ALL.iter().map(|&g| (g, ql.sphere_generator(g))).collect();
    let gens = ql.double_generators();
    let render_d = |x: &DoubleElement| ql.render_double(x, false);
    for (name, x) in &gens {
        out.add(format!("structure.stability.{name}"), "double", || {
            let monos: Vec<SphereMonomial> = (0..=2u32)
                .flat_map(|a| (-2..=2i32).map(move |b| SphereMonomial { a, b }))
                .filter(|m| m.degree() <= 2)
                .collect();
            Outcome::forall(monos, "x ▷ m", "sphere element", |m| {
                let y = ql.act_double(x, &ql.sphere_monomial(*m));
                (!ql.is_podles(&y)).then(|| (format!("{} ▷ {m:?} = {}", render_d(x), fun.render(&y)), "right-invariant".into()))
            })
        });
        out.add(format!("structure.module-algebra.{name}"), "double", || {
            let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
            Outcome::forall(pairs, "x ▷ (fh)", "(x' ▷ f)(x'' ▷ h)", |&(i, j)| {
                let law = ql.module_algebra_law(x, &hs[i].1, &hs[j].1, conv);
                (!law.holds()).then(|| {
                    let at = format!("{} on {}*{}: ", name, hs[i].0.token(), hs[j].0.token());
                    (at + &fun.render(&law.lhs), fun.render(&law.rhs))
                })
            })
        });
        out.add(format!("structure.antipode.{name}"), "double", || {
            Outcome::forall(&hs, "S_D(x') ▷ (x'' ▷ h)", "ε(x) h", |(g, h)| {
                let law = ql.antipode_law(x, h, conv);
                (!law.holds()).then(|| (format!("{name} on {}: {}", g.token(), fun.render(&law.lhs)), fun.render(&law.rhs)))
            })
        });
    }
    for name in ["k", "e", "a", "b"] {
        let x = gens.iter().find(|(n, _)| *n == name).map(|(_, x)| x.clone()).expect("double generator");
        out.add(format!("structure.star.{name}"), "double", || {
            Outcome::forall(&hs, "(x ▷ f)*", "(S_D x)* ▷ f*", |(g, h)| {
                let law = ql.star_compatibility_law(&x, h, conv);
                (!law.holds()).then(|| (format!("{name} on {}: {}", g.token(), fun.render(&law.lhs)), fun.render(&law.rhs)))
            })
        });
    }
    for un in ["k", "kinv", "e", "es"] {
        for fname in ["a", "as", "b", "bs"] {
            out.add(format!("structure.cross.{un}.{fname}"), "double", || {
                let (ue, fe) = (el(ql.u(), un), el(f, fname));
                Outcome::forall(&hs, "⟨U',f'⟩ U'' ▷ (f'' ▷ h)", "⟨U'',f''⟩ f' ▷ (U' ▷ h)", |(g, h)| {
                    let law = ql.cross_relation_law(&ue, &fe, h, conv);
                    (!law.holds()).then(|| (format!("on {}: {}", g.token(), fun.render(&law.lhs)), fun.render(&law.rhs)))
                })
            });
        }
    }
    out.add("structure.convention", "double", || {
        let c = ql.convention_passes(SweedlerConvention::Coopposite);
        let o = ql.convention_passes(SweedlerConvention::Ordinary);
        let got = format!("coopposite: {}, ordinary: {}", pass_word(c), pass_word(o));
        Outcome::sides(got, "coopposite: pass, ordinary: fail".into())
    });
    out.add("structure.composition", "double", || {
        let mut cases: Vec<(bool, &str, &str, SphereGen)> = Vec::new();
        for x in ["k", "e", "es"] {
            for y in ["k", "e", "es"] {
                for g in SphereGen::ALL {
                    cases.push((true, x, y, g));
                }
            }
        }
        for x in ["a", "b"] {
            for y in ["a", "b"] {
                for g in SphereGen::ALL {
                    cases.push((false, x, y, g));
                }
            }
        }
        Outcome::forall(cases, "(xy) ▷ h", "x ▷ (y ▷ h)", |&(is_u, x, y, g)| {
            let h = ql.sphere_generator(g);
            let (l, r) = if is_u {
                let (xe, ye) = (el(ql.u(), x), el(ql.u(), y));
                (ql.act_u(&ql.u().mul(&xe, &ye), &h), ql.act_u(&xe, &ql.act_u(&ye, &h)))
            } else {
                let (xe, ye) = (el(f, x), el(f, y));
                (ql.act_fun(&fun.mul(&xe, &ye), &h), ql.act_fun(&xe, &ql.act_fun(&ye, &h)))
            };
            (l != r).then(|| (format!("({x}*{y}) ▷ {} = {}", g.token(), fun.render(&l)), fun.render(&r)))
        })
    });
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

// ----- classical limits -----

fn family(v: VectorField) -> &'static str {
    if VectorField::SU2.contains(&v) {
        "su2"
    } else {
        "an"
    }
}

fn all_fields() -> Vec<VectorField> {
    [VectorField::SU2, VectorField::AN].concat()
}

fn limits(ql: &QLorentz, out: &mut Checks) {
    for v in all_fields() {
        for g in SphereGen::ALL {
            out.add(format!("limit.{}.{}.{}", family(v), v.token(), g.token()), "classical", || {
                let lhs = match quantum_limit(ql, v, &ql.sphere_generator(g)) {
                    Ok(p) => p.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                Outcome::sides(lhs, v.derivation().on(g).to_string())
            });
        }
    }
}

fn numeric(ql: &QLorentz, out: &mut Checks) {
    for v in all_fields() {
        for g in SphereGen::ALL {
            out.add(format!("numeric.{}.{}.{}", family(v), v.token(), g.token()), "classical", || {
                let h = ql.sphere_generator(g);
                let exact = match quantum_limit(ql, v, &h) {
                    Ok(p) => p,
                    Err(e) => return Outcome { ok: false, lhs: format!("error: {e}"), rhs: String::new() },
                };
                let mut worst: f64 = 0.0;
                for q in [1.0 + NUMERIC_STEP, 1.0 - NUMERIC_STEP] {
                    match numeric_limit(ql, v, &h, q) {
                        Ok(n) => worst = worst.max(numeric_deviation(&exact, &n)),
                        Err(e) => return Outcome { ok: false, lhs: format!("error: {e}"), rhs: String::new() },
                    }
                }
                Outcome {
                    ok: worst < NUMERIC_TOLERANCE,
                    lhs: format!("relative deviation at q = 1 ± {NUMERIC_STEP:e}: {worst:.3e}"),
                    rhs: format!("< {NUMERIC_TOLERANCE:e}"),
                }
            });
        }
    }
}

fn brackets(out: &mut Checks) {
    for (name, lhs, rhs) in bracket_relations() {
        out.add(format!("bracket.{name}"), "classical", || Outcome::sides(lhs.to_string(), rhs.to_string()));
    }
}

fn classical(ql: &QLorentz, out: &mut Checks) {
    for g in SphereGen::ALL {
        out.add(format!("classical.kinv.{}", g.token()), "classical", || {
            let lhs = match kinv_limit(ql, &ql.sphere_generator(g)) {
                Ok(p) => p.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let rhs = VectorField::R3.derivation().on(g).scale(&crate::coeff::GaussianRational::from_int(-1));
            Outcome::sides(lhs, rhs.to_string())
        });
    }
    let fun = ql.fun();
    for x in ["a", "as", "b", "bs"] {
        for g in SphereGen::ALL {
            out.add(format!("classical.degenerate.{x}.{}", g.token()), "classical", || {
                let xe = el(fun.presentation(), x);
                let h = ql.sphere_generator(g);
                let d = &ql.act_fun(&xe, &h) - &h.scale(&fun.counit(&xe));
                let at_one = ql
                    .express_in_sphere_generators(&d, crate::double::DEFAULT_DEGREE_CAP)
                    .map_err(|e| e.to_string())
                    .and_then(|p| {
                        let mut c = ClassicalPoly::zero();
                        for (m, s) in p.terms() {
                            c.add_term(*m, s.eval_at_one().map_err(|e| e.to_string())?);
                        }
                        Ok(c)
                    });
                let lhs = match at_one {
                    Ok(c) => c.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                Outcome::sides(lhs, "0".into())
            });
        }
    }
    for v in all_fields() {
        out.add(format!("classical.derivation.{}", v.token()), "classical", || {
            let pairs: Vec<(SphereGen, SphereGen)> =
                SphereGen::ALL.iter().flat_map(|&x| SphereGen::ALL.iter().map(move |&y| (x, y))).collect();
            Outcome::forall(pairs, "lim x ▷ (fh)", "(lim x ▷ f)h + f(lim x ▷ h)", |&(x, y)| {
                let (hx, hy) = (ql.sphere_generator(x), ql.sphere_generator(y));
                let res = (|| {
                    let lhs = quantum_limit(ql, v, &fun.mul(&hx, &hy))?;
                    let lx = quantum_limit(ql, v, &hx)?;
                    let ly = quantum_limit(ql, v, &hy)?;
                    let rhs = lx.mul(&ClassicalPoly::gen(y)).add(&ClassicalPoly::gen(x).mul(&ly));
                    Ok::<_, crate::classical::ClassicalError>((lhs, rhs))
                })();
                match res {
                    Ok((l, r)) if l == r => None,
                    Ok((l, r)) => Some((format!("on {}*{}: {l}", x.token(), y.token()), r.to_string())),
                    Err(e) => Some((format!("error: {e}"), String::new())),
                }
            })
        });
    }
}
