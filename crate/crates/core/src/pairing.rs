//! The dual pairing `⟨·,·⟩ : U_q(su(2)) × Fun_q(SU(2)) → ℚ(i)(q^{1/2})`.
//!
//! On generators of `Fun_q(SU(2))` the pairing is read off from the
//! two-dimensional representation `ρ` of `U_q(su(2))` through the matrix of
//! generators `t = [[a, b], [−q b*, a*]]`, so `⟨x, t_ij⟩ = ρ(x)_ij`. Products of
//! Fun generators are paired through the iterated coproduct of the `U` side:
//! `⟨x, f₁⋯fₙ⟩ = Σ ⟨x₍₁₎, f₁⟩⋯⟨x₍ₙ₎, fₙ⟩`, and `⟨x, 1⟩ = ε(x)`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::coeff::Scalar;
use crate::hopf::{HopfAlgebra, HopfError, TensorElement};
use crate::ncpoly::{funq, uq, Element, Word};

/// A 2×2 matrix over the coefficient field.
pub type Mat2 = [[Scalar; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_identity() -> Mat2 {
    [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]]
}

fn mat_inverse(x: &Mat2) -> Option<Mat2> {
    let det = x[0][0].mul(&x[1][1]).sub(&x[0][1].mul(&x[1][0]));
    let d = det.inv().ok()?;
    Some([
        [x[1][1].mul(&d), x[0][1].neg().mul(&d)],
        [x[1][0].neg().mul(&d), x[0][0].mul(&d)],
    ])
}

/// `U_q(su(2))` and `Fun_q(SU(2))` together with the pairing between them.
pub struct Pairing {
    u: HopfAlgebra,
    fun: HopfAlgebra,
    rho: Vec<Mat2>,
    cache: RwLock<HashMap<(Word, Word), Scalar>>,
}

impl std::fmt::Debug for Pairing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pairing").field("u", &self.u).field("fun", &self.fun).finish()
    }
}

impl Pairing {
    /// The standard pairing: `ρ(k) = diag(q^{1/2}, q^{-1/2})`, `ρ(e) = E₂₁`,
    /// `ρ(e*) = E₁₂`, and `ρ(k⁻¹) = ρ(k)⁻¹`.
    pub fn standard() -> Result<Self, HopfError> {
        Ok(Pairing::new(HopfAlgebra::u_q()?, HopfAlgebra::fun_q()?))
    }

    pub fn new(u: HopfAlgebra, fun: HopfAlgebra) -> Self {
        let (z, o) = (Scalar::zero(), Scalar::one());
        let rho_k = [[Scalar::s_pow(1), z.clone()], [z.clone(), Scalar::s_pow(-1)]];
        let rho_kinv = mat_inverse(&rho_k).expect("ρ(k) is invertible");
        let mut rho = vec![mat_identity(); 4];
        rho[uq::K as usize] = rho_k;
        rho[uq::KINV as usize] = rho_kinv;
        rho[uq::E as usize] = [[z.clone(), z.clone()], [o.clone(), z.clone()]];
        rho[uq::ES as usize] = [[z.clone(), o], [z.clone(), z]];
        Pairing { u, fun, rho, cache: RwLock::new(HashMap::new()) }
    }

    pub fn u(&self) -> &HopfAlgebra {
        &self.u
    }

    pub fn fun(&self) -> &HopfAlgebra {
        &self.fun
    }

    /// `ρ` of a word in `U_q(su(2))`.
    pub fn rho_word(&self, w: &Word) -> Mat2 {
        w.gens().iter().fold(mat_identity(), |acc, &g| mat_mul(&acc, &self.rho[g as usize]))
    }

    /// `⟨x, f⟩` for `x` a `U` word and `f` a single Fun generator.
    pub fn pair_with_generator(&self, w: &Word, f: u8) -> Scalar {
        let m = self.rho_word(w);
        match f {
            funq::A => m[0][0].clone(),
            funq::B => m[0][1].clone(),
            funq::BS => m[1][0].mul(&Scalar::q_pow(-1)).neg(),
            funq::AS => m[1][1].clone(),
            _ => unreachable!("Fun_q(SU(2)) has four generators"),
        }
    }

    /// `⟨u, f⟩` on words. `f` may be any (not necessarily normal) Fun word.
    pub fn pair_words(&self, u: &Word, f: &Word) -> Scalar {
        let key = (u.clone(), f.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = if f.is_unit() {
            self.u.counit_word(u)
        } else {
            let delta = self.u.iterated_coproduct_word(u, f.len());
            let mut acc = Scalar::zero();
            'terms: for (factors, c) in delta.terms() {
                let mut prod = c.clone();
                for (x, &g) in factors.iter().zip(f.gens()) {
                    let p = self.pair_with_generator(x, g);
                    if p.is_zero() {
                        continue 'terms;
                    }
                    prod = prod.mul(&p);
                }
                acc = acc.add(&prod);
            }
            acc
        };
        self.cache.write().unwrap().insert(key, v.clone());
        v
    }

    /// Bilinear extension of [`Pairing::pair_words`].
    pub fn pair(&self, x: &Element, f: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (u, c) in x.terms() {
            for (w, d) in f.terms() {
                let p = self.pair_words(u, w);
                if !p.is_zero() {
                    acc = acc.add(&c.mul(d).mul(&p));
                }
            }
        }
        acc
    }

    /// `⟨x₁⊗x₂, f₁⊗f₂⟩ = ⟨x₁,f₁⟩⟨x₂,f₂⟩` extended bilinearly to tensors of equal arity.
    pub fn pair_tensors(&self, x: &TensorElement, f: &TensorElement) -> Scalar {
        assert_eq!(x.arity(), f.arity());
        let mut acc = Scalar::zero();
        for (us, c) in x.terms() {
            for (ws, d) in f.terms() {
                let mut prod = c.mul(d);
                for (u, w) in us.iter().zip(ws) {
                    if prod.is_zero() {
                        break;
                    }
                    prod = prod.mul(&self.pair_words(u, w));
                }
                acc = acc.add(&prod);
            }
        }
        acc
    }

    /// `⟨xy, f⟩ − ⟨x⊗y, Δf⟩`.
    pub fn product_defect_u(&self, x: &Element, y: &Element) -> impl Fn(&Element) -> Scalar + '_ {
        let xy = self.u.mul(x, y);
        let xt = TensorElement::tensor(x, y);
        move |f| self.pair(&xy, f).sub(&self.pair_tensors(&xt, &self.fun.coproduct(f)))
    }

    /// `⟨x, fg⟩ − ⟨Δx, f⊗g⟩`.
    pub fn product_defect_fun(&self, x: &Element, f: &Element, g: &Element) -> Scalar {
        let fg = self.fun.mul(f, g);
        self.pair(x, &fg).sub(&self.pair_tensors(&self.u.coproduct(x), &TensorElement::tensor(f, g)))
    }

    /// `⟨S x, f⟩ − ⟨x, S f⟩`.
    pub fn antipode_defect(&self, x: &Element, f: &Element) -> Scalar {
        self.pair(&self.u.antipode(x), f).sub(&self.pair(x, &self.fun.antipode(f)))
    }

    /// `⟨x*, f⟩ − conj⟨x, (S f)*⟩`.
    pub fn star_defect(&self, x: &Element, f: &Element) -> Scalar {
        let lhs = self.pair(&self.u.star(x), f);
        let rhs = self.pair(x, &self.fun.star(&self.fun.antipode(f))).conjugate();
        lhs.sub(&rhs)
    }

    /// `⟨1, f⟩ − ε(f)` and `⟨x, 1⟩ − ε(x)`.
    pub fn unit_defects(&self, x: &Element, f: &Element) -> (Scalar, Scalar) {
        (
            self.pair(&Element::one(), f).sub(&self.fun.counit(f)),
            self.pair(x, &Element::one()).sub(&self.u.counit(x)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Gen;

    fn words(max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|w| (0..4).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                }))
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Pairing of a single `U` generator with a Fun word, computed from the
    /// Fun side: characters for `k^{±1}` and the twisted Leibniz rule for
    /// `e, e*` (`Δe = e⊗k + k⁻¹⊗e`).
    fn oracle_gen(p: &Pairing, g: Gen, f: &Word) -> Scalar {
        let gen = |x: Gen, y: Gen| p.pair_with_generator(&Word::gen(x), y);
        let fs = f.gens();
        match g {
            uq::K | uq::KINV => fs.iter().fold(Scalar::one(), |acc, &y| acc.mul(&gen(g, y))),
            _ => {
                let mut acc = Scalar::zero();
                for j in 0..fs.len() {
                    let mut t = gen(g, fs[j]);
                    for &y in &fs[..j] {
                        t = t.mul(&gen(uq::KINV, y));
                    }
                    for &y in &fs[j + 1..] {
                        t = t.mul(&gen(uq::K, y));
                    }
                    acc = acc.add(&t);
                }
                acc
            }
        }
    }

    /// `⟨g₁⋯g_m, f⟩ = Σ ⟨g₁, f₍₁₎⟩⋯⟨g_m, f₍m₎⟩` through the Fun coproduct.
    fn oracle(p: &Pairing, u: &Word, f: &Element) -> Scalar {
        if u.is_unit() {
            return p.fun().counit(f);
        }
        let d = p.fun().iterated_coproduct(f, u.len());
        let mut acc = Scalar::zero();
        for (factors, c) in d.terms() {
            let mut prod = c.clone();
            for (&g, w) in u.gens().iter().zip(factors) {
                prod = prod.mul(&oracle_gen(p, g, w));
            }
            acc = acc.add(&prod);
        }
        acc
    }

    #[test]
    fn matches_fun_side_oracle() {
        let p = Pairing::standard().unwrap();
        for u in words(3) {
            for f in words(3) {
                let fe = p.fun().normal_form(&Element::word(f.clone()));
                assert_eq!(
                    p.pair(&Element::word(u.clone()), &fe),
                    oracle(&p, &u, &fe),
                    "⟨{}, {}⟩",
                    p.u().render_gen_word(&u),
                    p.fun().render_gen_word(&f)
                );
            }
        }
    }

    #[test]
    fn known_values() {
        let p = Pairing::standard().unwrap();
        let e = Element::gen(uq::E);
        let ab_s = p.fun().monomial(&[funq::A, funq::BS]);
        assert_eq!(p.pair(&e, &ab_s), Scalar::s_pow(-3).neg());
        let kkinv = p.u().monomial(&[uq::K, uq::KINV]);
        for f in words(2) {
            let fe = Element::word(f);
            assert_eq!(p.pair(&kkinv, &fe), p.fun().counit(&fe));
            assert_eq!(
                p.pair(&Element::word(Word::from_gens(&[uq::K, uq::KINV])), &fe),
                p.fun().counit(&fe)
            );
        }
    }

    #[test]
    fn vanishes_on_relations() {
        let p = Pairing::standard().unwrap();
        for r in p.fun().base_relations().iter().chain(p.fun().derived_relations()) {
            for u in words(3) {
                assert!(p.pair(&Element::word(u), r).is_zero());
            }
        }
        for r in p.u().base_relations().iter().chain(p.u().derived_relations()) {
            for f in words(3) {
                assert!(p.pair(r, &Element::word(f)).is_zero());
            }
        }
    }

    #[test]
    fn hopf_compatibility() {
        let p = Pairing::standard().unwrap();
        let short = words(2);
        for x in &short {
            let xe = Element::word(x.clone());
            for f in &short {
                let fe = Element::word(f.clone());
                assert!(p.antipode_defect(&xe, &fe).is_zero());
                assert!(p.star_defect(&xe, &fe).is_zero(), "star on {:?} {:?}", x, f);
                let (a, b) = p.unit_defects(&xe, &fe);
                assert!(a.is_zero() && b.is_zero());
                for y in &short {
                    let ye = Element::word(y.clone());
                    assert!(p.product_defect_u(&xe, &ye)(&fe).is_zero());
                    assert!(p.product_defect_fun(&xe, &fe, &ye).is_zero());
                }
            }
        }
    }

    #[test]
    fn inverse_matrix() {
        let m = [[Scalar::from_int(2), Scalar::one()], [Scalar::one(), Scalar::one()]];
        assert_eq!(mat_mul(&m, &mat_inverse(&m).unwrap()), mat_identity());
    }
}
