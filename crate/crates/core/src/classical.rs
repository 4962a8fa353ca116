//! The `q → 1` limit: the commutative sphere algebra generated by `𝓐, 𝓑, 𝓑*`,
//! the vector fields of the projective `SL(2, ℂ)` action on it, and the
//! symbolic limits of the quantum actions.
//!
//! The `U_q(su(2))` limits use `−ie ↔ −R₁ + iR₂`, `ie* ↔ R₁ + iR₂` and
//! `k = q^{iR₃}`. The `Fun_q(SU(2))` limits use `T₀ = (a − a*)/(2 ln q)`,
//! `iT₁ + T₂ = b/ln q` and `iT₁ − T₂ = b*/ln q`.
//!
//! The adjoint action of `Fun_q(SU(2))` itself degenerates at `q = 1`: every
//! `x ▷ h` tends to `ε(x)h`. Only the combinations divided by `ln q` have a
//! nontrivial limit, which is why those limits go through
//! [`Scalar::limit_div_lnq`].

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cli::parse::parse;
use crate::coeff::{CoeffError, GaussianRational, Scalar};
use crate::double::{DoubleError, QLorentz, SphereGen, SphereMonomial, SpherePoly, DEFAULT_DEGREE_CAP};
use crate::ncpoly::{Element, PresentationKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error(transparent)]
    Sphere(#[from] DoubleError),
    #[error("coefficient {coeff} of {monomial}: {source}")]
    Limit { monomial: String, coeff: String, source: CoeffError },
}

/// A polynomial in the commuting generators `𝓐, 𝓑, 𝓑*` modulo
/// `𝓑𝓑* = 𝓐 − 𝓐²`, in the basis `𝓐^k 𝓑^m`, `𝓐^k 𝓑*^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalPoly {
    terms: BTreeMap<SphereMonomial, GaussianRational>,
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        ClassicalPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = ClassicalPoly::zero();
        p.add_term(SphereMonomial::ONE, c);
        p
    }

    pub fn one() -> Self {
        ClassicalPoly::constant(GaussianRational::one())
    }

    pub fn gen(g: SphereGen) -> Self {
        let m = match g {
            SphereGen::A => SphereMonomial { a: 1, b: 0 },
            SphereGen::B => SphereMonomial { a: 0, b: 1 },
            SphereGen::Bs => SphereMonomial { a: 0, b: -1 },
        };
        let mut p = ClassicalPoly::zero();
        p.add_term(m, GaussianRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SphereMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: SphereMonomial, c: GaussianRational) {
        let sum = self.terms.get(&m).cloned().unwrap_or_else(GaussianRational::zero) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &ClassicalPoly) -> ClassicalPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ClassicalPoly) -> ClassicalPoly {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (m, d) in &self.terms {
            out.add_term(*m, d * c);
        }
        out
    }

    fn mul_monomials(x: SphereMonomial, y: SphereMonomial) -> ClassicalPoly {
        // 𝓑^m 𝓑*^n = (𝓐 − 𝓐²)^{min(m,n)} · (leftover power)
        let (m, n) = (x.b.max(0) + y.b.max(0), (-x.b).max(0) + (-y.b).max(0));
        let pairs = m.min(n) as u32;
        let rest = SphereMonomial { a: x.a + y.a, b: m - n };
        let mut out = ClassicalPoly::zero();
        out.add_term(rest, GaussianRational::one());
        let a_minus_a2 = {
            let mut p = ClassicalPoly::gen(SphereGen::A);
            p.add_term(SphereMonomial { a: 2, b: 0 }, -GaussianRational::one());
            p
        };
        for _ in 0..pairs {
            out = out.mul(&a_minus_a2);
        }
        out
    }

    pub fn mul(&self, other: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let cd = c * d;
                if m.b.signum() * n.b.signum() >= 0 {
                    out.add_term(SphereMonomial { a: m.a + n.a, b: m.b + n.b }, cd);
                } else {
                    for (k, e) in ClassicalPoly::mul_monomials(*m, *n).terms {
                        out.add_term(k, &e * &cd);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> ClassicalPoly {
        (0..n).fold(ClassicalPoly::one(), |acc, _| acc.mul(self))
    }

    /// The value at a point `(𝓐, 𝓑, 𝓑*)`.
    pub fn eval(&self, a: &GaussianRational, b: &GaussianRational, bs: &GaussianRational) -> GaussianRational {
        let pw = |x: &GaussianRational, n: u32| (0..n).fold(GaussianRational::one(), |acc, _| &acc * x);
        self.terms.iter().fold(GaussianRational::zero(), |acc, (m, c)| {
            let bpart = if m.b >= 0 { pw(b, m.b as u32) } else { pw(bs, m.b.unsigned_abs()) };
            acc + &(c * &pw(a, m.a)) * &bpart
        })
    }

    fn render_with(&self, math: bool) -> String {
        let mut sp = SpherePoly::zero();
        for (m, c) in &self.terms {
            sp.add_term(*m, Scalar::from_gaussian(c.clone()));
        }
        let s = if math { sp.render_math() } else { sp.to_string() };
        if !math {
            return s;
        }
        s.replace("B*", "𝓑*").replace('A', "𝓐").replace('B', "𝓑")
    }

    /// Renders with `𝓐, 𝓑, 𝓑*`.
    pub fn render_math(&self) -> String {
        self.render_with(true)
    }
}

/// Renders in the expression grammar (`A`, `B`, `Bs`).
impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(false))
    }
}

/// Maps `A ↦ 𝓐`, `B ↦ 𝓑`, `B* ↦ 𝓑*` after applying `f` to each coefficient.
fn classical_from_sphere(
    p: &SpherePoly,
    f: impl Fn(&Scalar) -> Result<GaussianRational, CoeffError>,
) -> Result<ClassicalPoly, ClassicalError> {
    let mut out = ClassicalPoly::zero();
    for (m, c) in p.terms() {
        let v = f(c).map_err(|source| ClassicalError::Limit {
            monomial: {
                let mut one = SpherePoly::zero();
                one.add_term(*m, Scalar::one());
                one.to_string()
            },
            coeff: c.to_string(),
            source,
        })?;
        out.add_term(*m, v);
    }
    Ok(out)
}

/// A derivation of the classical algebra, given by its values on `𝓐, 𝓑, 𝓑*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDerivation {
    pub on_a: ClassicalPoly,
    pub on_b: ClassicalPoly,
    pub on_bs: ClassicalPoly,
}

impl ClassicalDerivation {
    pub fn zero() -> Self {
        ClassicalDerivation { on_a: ClassicalPoly::zero(), on_b: ClassicalPoly::zero(), on_bs: ClassicalPoly::zero() }
    }

    pub fn on(&self, g: SphereGen) -> &ClassicalPoly {
        match g {
            SphereGen::A => &self.on_a,
            SphereGen::B => &self.on_b,
            SphereGen::Bs => &self.on_bs,
        }
    }

    /// Leibniz extension to polynomials.
    pub fn apply(&self, p: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (m, c) in p.terms() {
            let (bgen, bpow) = if m.b >= 0 { (SphereGen::B, m.b as u32) } else { (SphereGen::Bs, m.b.unsigned_abs()) };
            let a_part = ClassicalPoly::gen(SphereGen::A).pow(m.a);
            let b_part = ClassicalPoly::gen(bgen).pow(bpow);
            if m.a > 0 {
                let d = ClassicalPoly::gen(SphereGen::A)
                    .pow(m.a - 1)
                    .mul(&self.on_a)
                    .mul(&b_part)
                    .scale(&GaussianRational::from_int(m.a as i64));
                out = out.add(&d.scale(c));
            }
            if bpow > 0 {
                let d = ClassicalPoly::gen(bgen)
                    .pow(bpow - 1)
                    .mul(self.on(bgen))
                    .mul(&a_part)
                    .scale(&GaussianRational::from_int(bpow as i64));
                out = out.add(&d.scale(c));
            }
        }
        out
    }

    fn map(&self, f: impl Fn(&ClassicalPoly) -> ClassicalPoly) -> ClassicalDerivation {
        ClassicalDerivation { on_a: f(&self.on_a), on_b: f(&self.on_b), on_bs: f(&self.on_bs) }
    }

    pub fn add(&self, other: &ClassicalDerivation) -> ClassicalDerivation {
        ClassicalDerivation {
            on_a: self.on_a.add(&other.on_a),
            on_b: self.on_b.add(&other.on_b),
            on_bs: self.on_bs.add(&other.on_bs),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> ClassicalDerivation {
        self.map(|p| p.scale(c))
    }

    pub fn sub(&self, other: &ClassicalDerivation) -> ClassicalDerivation {
        self.add(&other.scale(&-GaussianRational::one()))
    }
}

/// `[D₁, D₂] = D₁D₂ − D₂D₁`, again a derivation.
pub fn derivation_bracket(d1: &ClassicalDerivation, d2: &ClassicalDerivation) -> ClassicalDerivation {
    let at = |g: SphereGen| d1.apply(d2.on(g)).sub(&d2.apply(d1.on(g)));
    ClassicalDerivation { on_a: at(SphereGen::A), on_b: at(SphereGen::B), on_bs: at(SphereGen::Bs) }
}

/// The six vector fields of the projective action whose quantum versions
/// are single elements of `U_q(su(2))` or `Fun_q(SU(2))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VectorField {
    /// `R₃`
    R3,
    /// `R₁ + iR₂`
    RPlus,
    /// `−R₁ + iR₂`
    RMinus,
    /// `T₀`
    T0,
    /// `iT₁ + T₂`
    TPlus,
    /// `iT₁ − T₂`
    TMinus,
}

impl VectorField {
    pub const SU2: [VectorField; 3] = [VectorField::R3, VectorField::RPlus, VectorField::RMinus];
    pub const AN: [VectorField; 3] = [VectorField::T0, VectorField::TPlus, VectorField::TMinus];

    /// Short name used in check names and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            VectorField::R3 => "R3",
            VectorField::RPlus => "R1+iR2",
            VectorField::RMinus => "-R1+iR2",
            VectorField::T0 => "T0",
            VectorField::TPlus => "iT1+T2",
            VectorField::TMinus => "iT1-T2",
        }
    }

    pub fn from_token(s: &str) -> Option<VectorField> {
        let norm: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let all = [Self::SU2, Self::AN].concat();
        all.into_iter().find(|v| v.token() == norm).or(match norm.as_str() {
            "T2+iT1" => Some(VectorField::TPlus),
            "-T2+iT1" => Some(VectorField::TMinus),
            "iR2+R1" => Some(VectorField::RPlus),
            "iR2-R1" => Some(VectorField::RMinus),
            _ => None,
        })
    }

    /// Values on `(𝓐, 𝓑, 𝓑*)` of the vector field acting on the sphere.
    pub fn derivation(self) -> ClassicalDerivation {
        let a = ClassicalPoly::gen(SphereGen::A);
        let b = ClassicalPoly::gen(SphereGen::B);
        let bs = ClassicalPoly::gen(SphereGen::Bs);
        let c = |n: i64| GaussianRational::from_int(n);
        let i = GaussianRational::i();
        let two_a_minus_1 = a.scale(&c(2)).sub(&ClassicalPoly::one());
        let (on_a, on_b, on_bs) = match self {
            VectorField::R3 => (ClassicalPoly::zero(), b.scale(&i), bs.scale(&-&i)),
            VectorField::RPlus => (bs.scale(&-&i), two_a_minus_1.scale(&i), ClassicalPoly::zero()),
            VectorField::RMinus => (b.scale(&-&i), ClassicalPoly::zero(), two_a_minus_1.scale(&i)),
            VectorField::T0 => (
                a.mul(&a.sub(&ClassicalPoly::one())).scale(&c(2)),
                b.mul(&two_a_minus_1),
                bs.mul(&two_a_minus_1),
            ),
            VectorField::TPlus => (a.mul(&b).scale(&c(2)), b.pow(2).scale(&c(2)), a.pow(2).scale(&c(-2))),
            VectorField::TMinus => (a.mul(&bs).scale(&c(-2)), a.pow(2).scale(&c(2)), bs.pow(2).scale(&c(-2))),
        };
        ClassicalDerivation { on_a, on_b, on_bs }
    }
}

/// How a quantum action turns into a classical vector field.
enum Recipe {
    /// `factor · (x ▷ h)` at `q = 1`.
    AtOne,
    /// `factor · (x ▷ h − h)/ln q` at `q = 1`.
    DivLnQMinusId,
    /// `factor · (x ▷ h)/ln q` at `q = 1`.
    DivLnQ,
}

struct Limit {
    actor: &'static str,
    factor: GaussianRational,
    recipe: Recipe,
}

fn limit_for(v: VectorField) -> Limit {
    let i = GaussianRational::i();
    let half = GaussianRational::from_ratio(1, 2);
    match v {
        VectorField::R3 => Limit { actor: "k", factor: -i, recipe: Recipe::DivLnQMinusId },
        VectorField::RPlus => Limit { actor: "es", factor: i, recipe: Recipe::AtOne },
        VectorField::RMinus => Limit { actor: "e", factor: -i, recipe: Recipe::AtOne },
        VectorField::T0 => Limit { actor: "a - as", factor: half, recipe: Recipe::DivLnQ },
        VectorField::TPlus => Limit { actor: "b", factor: GaussianRational::one(), recipe: Recipe::DivLnQ },
        VectorField::TMinus => Limit { actor: "bs", factor: GaussianRational::one(), recipe: Recipe::DivLnQ },
    }
}

fn act_by(ql: &QLorentz, actor: &str, h: &Element) -> Element {
    let parsed = parse(actor).expect("actor parses");
    match parsed.kind() {
        Some(PresentationKind::UQ) => ql.act_u(&parsed.eval_element(ql.u()).unwrap(), h),
        _ => ql.act_fun(&parsed.eval_element(ql.fun()).unwrap(), h),
    }
}

/// The finite-`q` expression whose limit defines the vector field, expanded
/// in the sphere basis, before dividing by `ln q`.
fn numerator(ql: &QLorentz, lim: &Limit, h: &Element) -> Result<SpherePoly, ClassicalError> {
    let mut x = act_by(ql, lim.actor, h);
    if matches!(lim.recipe, Recipe::DivLnQMinusId) {
        x = &x - &ql.fun().normal_form(h);
    }
    Ok(ql.express_in_sphere_generators(&x, DEFAULT_DEGREE_CAP)?)
}

/// The exact `q → 1` limit of the quantum action matching `v`, applied to a
/// sphere element `h`.
pub fn quantum_limit(ql: &QLorentz, v: VectorField, h: &Element) -> Result<ClassicalPoly, ClassicalError> {
    let lim = limit_for(v);
    let num = numerator(ql, &lim, h)?;
    let p = match lim.recipe {
        Recipe::AtOne => classical_from_sphere(&num, |c| c.eval_at_one())?,
        Recipe::DivLnQ | Recipe::DivLnQMinusId => classical_from_sphere(&num, |c| c.limit_div_lnq())?,
    };
    Ok(p.scale(&lim.factor))
}

/// [`quantum_limit`] restricted to `R₃`, `R₁ + iR₂`, `−R₁ + iR₂`.
pub fn quantum_limit_su2(ql: &QLorentz, v: VectorField, h: &Element) -> Result<ClassicalPoly, ClassicalError> {
    assert!(VectorField::SU2.contains(&v), "{} is not a Lie(SU(2)) field", v.token());
    quantum_limit(ql, v, h)
}

/// [`quantum_limit`] restricted to `T₀`, `iT₁ + T₂`, `iT₁ − T₂`.
pub fn quantum_limit_an(ql: &QLorentz, v: VectorField, h: &Element) -> Result<ClassicalPoly, ClassicalError> {
    assert!(VectorField::AN.contains(&v), "{} is not a Lie(AN) field", v.token());
    quantum_limit(ql, v, h)
}

/// `lim (k⁻¹ ▷ h − h)/(i ln q)`, which equals `−R₃ h`.
pub fn kinv_limit(ql: &QLorentz, h: &Element) -> Result<ClassicalPoly, ClassicalError> {
    let x = &act_by(ql, "kinv", h) - &ql.fun().normal_form(h);
    let num = ql.express_in_sphere_generators(&x, DEFAULT_DEGREE_CAP)?;
    Ok(classical_from_sphere(&num, |c| c.limit_div_lnq())?.scale(&-GaussianRational::i()))
}

/// Evaluates the finite-`q` expression of [`quantum_limit`] numerically at
/// `q` (without taking the limit), coefficient by coefficient.
pub fn numeric_limit(ql: &QLorentz, v: VectorField, h: &Element, q: f64) -> Result<Vec<(SphereMonomial, Complex64)>, ClassicalError> {
    let lim = limit_for(v);
    let num = numerator(ql, &lim, h)?;
    let s = q.sqrt();
    let factor = lim.factor.to_complex64();
    Ok(num
        .terms()
        .map(|(m, c)| {
            let x = c.eval_f64(s);
            let x = match lim.recipe {
                Recipe::AtOne => x,
                Recipe::DivLnQ | Recipe::DivLnQMinusId => x / q.ln(),
            };
            (*m, x * factor)
        })
        .collect())
}

/// Largest deviation between a numeric evaluation and the exact limit,
/// measured as `|N − L| / max(|L|, 1)` over all basis coefficients.
pub fn numeric_deviation(exact: &ClassicalPoly, numeric: &[(SphereMonomial, Complex64)]) -> f64 {
    let mut worst: f64 = 0.0;
    let mut seen = Vec::new();
    for (m, n) in numeric {
        let l = exact.terms.get(m).map(|c| c.to_complex64()).unwrap_or_default();
        worst = worst.max((n - l).norm() / l.norm().max(1.0));
        seen.push(*m);
    }
    for (m, c) in exact.terms() {
        if !seen.contains(m) {
            worst = worst.max(c.to_complex64().norm() / c.to_complex64().norm().max(1.0));
        }
    }
    worst
}

/// `R₁` and `R₂` recovered from `R₁ ± iR₂`, and `T₁`, `T₂` from `iT₁ ± T₂`.
pub fn real_basis() -> [(&'static str, ClassicalDerivation); 6] {
    let p = VectorField::RPlus.derivation();
    let m = VectorField::RMinus.derivation();
    let x = VectorField::TPlus.derivation();
    let y = VectorField::TMinus.derivation();
    let half = GaussianRational::from_ratio(1, 2);
    let inv_2i = GaussianRational::i().inv().unwrap() * half.clone();
    [
        ("R1", p.sub(&m).scale(&half)),
        ("R2", p.add(&m).scale(&inv_2i)),
        ("R3", VectorField::R3.derivation()),
        ("T0", VectorField::T0.derivation()),
        ("T1", x.add(&y).scale(&inv_2i)),
        ("T2", x.sub(&y).scale(&half)),
    ]
}

/// The Lie relations `[R₁,R₂] = R₃` (cyclic), `[T₀,T₁] = −T₁`, `[T₀,T₂] = −T₂`,
/// `[T₁,T₂] = 0` as `(name, bracket, expected)`.
pub fn bracket_relations() -> Vec<(String, ClassicalDerivation, ClassicalDerivation)> {
    let [r1, r2, r3, t0, t1, t2] = real_basis().map(|(_, d)| d);
    let neg = |d: &ClassicalDerivation| d.scale(&-GaussianRational::one());
    vec![
        ("[R1,R2]=R3".to_string(), derivation_bracket(&r1, &r2), r3.clone()),
        ("[R2,R3]=R1".to_string(), derivation_bracket(&r2, &r3), r1.clone()),
        ("[R3,R1]=R2".to_string(), derivation_bracket(&r3, &r1), r2.clone()),
        ("[T0,T1]=-T1".to_string(), derivation_bracket(&t0, &t1), neg(&t1)),
        ("[T0,T2]=-T2".to_string(), derivation_bracket(&t0, &t2), neg(&t2)),
        ("[T1,T2]=0".to_string(), derivation_bracket(&t1, &t2), ClassicalDerivation::zero()),
    ]
}

impl fmt::Display for ClassicalDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A -> {}, B -> {}, Bs -> {}", self.on_a, self.on_b, self.on_bs)
    }
}

#[cfg(test)]
mod tests;
