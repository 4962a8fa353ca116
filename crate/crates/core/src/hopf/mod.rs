//! Hopf `*`-algebra structure: coproduct, counit and antipode on top of a
//! [`Presentation`].
//!
//! The maps are fixed on generators and extended to words (Δ and ε as
//! homomorphisms, S and S⁻¹ as antihomomorphisms). Because the extension works
//! on arbitrary words, applying it to a defining relation tests that the
//! tables are well defined on the quotient. Word-level results are memoized.

mod tensor;

use std::collections::HashMap;
use std::ops::Deref;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::coeff::Scalar;
use crate::ncpoly::{funq, render_term, uq, Element, Gen, Notation, Presentation, PresentationError, Word};

pub use tensor::TensorElement;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("antipode of generator {0} is not a single monomial, cannot invert it")]
    AntipodeNotMonomial(&'static str),
}

/// Values of Δ, ε and S on the generators, indexed by generator.
#[derive(Clone, Debug)]
pub struct HopfTables {
    pub coproduct: Vec<TensorElement>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Element>,
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(cache: &Cache<K, V>, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
    if let Some(v) = cache.read().unwrap().get(key) {
        return v.clone();
    }
    let v = Arc::new(f());
    cache.write().unwrap().insert(key.clone(), v.clone());
    v
}

/// A presentation together with its Hopf `*`-algebra maps.
pub struct HopfAlgebra {
    pres: Presentation,
    tables: HopfTables,
    antipode_inv: Vec<Element>,
    delta_cache: Cache<(Word, usize), TensorElement>,
    s_cache: Cache<Word, Element>,
    s_inv_cache: Cache<Word, Element>,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfAlgebra").field("presentation", &self.pres).finish()
    }
}

impl Deref for HopfAlgebra {
    type Target = Presentation;
    fn deref(&self) -> &Presentation {
        &self.pres
    }
}

fn t2(p: &Presentation, terms: &[(Scalar, &[Gen], &[Gen])]) -> TensorElement {
    let mut t = TensorElement::zero(2);
    for (c, x, y) in terms {
        t = &t + &TensorElement::tensor(&p.monomial(x), &p.monomial(y)).scale(c);
    }
    t
}

impl HopfAlgebra {
    /// `Fun_q(SU(2))` with `Δa = a⊗a − q b⊗b*`, `Δb = b⊗a* + a⊗b`,
    /// `ε(a) = 1`, `ε(b) = 0`, `S(a) = a*`, `S(b) = −qb`, `S(b*) = −q⁻¹b*`.
    /// The starred coproducts and counits follow from compatibility with `*`.
    pub fn fun_q() -> Result<Self, HopfError> {
        use funq::*;
        let p = Presentation::fun_q()?;
        let one = Scalar::one();
        let q = Scalar::q();
        let delta_a = t2(&p, &[(one.clone(), &[A], &[A]), (q.neg(), &[B], &[BS])]);
        let delta_b = t2(&p, &[(one.clone(), &[B], &[AS]), (one.clone(), &[A], &[B])]);
        let delta_as = star_tensor(&p, &delta_a);
        let delta_bs = star_tensor(&p, &delta_b);
        let counit = vec![one.clone(), one.clone(), Scalar::zero(), Scalar::zero()];
        let antipode = vec![
            Element::gen(AS),
            Element::gen(A),
            Element::gen(B).scale(&q.neg()),
            Element::gen(BS).scale(&Scalar::q_pow(-1).neg()),
        ];
        let tables = HopfTables { coproduct: vec![delta_a, delta_as, delta_b, delta_bs], counit, antipode };
        HopfAlgebra::new(p, tables)
    }

    /// `U_q(su(2))` with `Δk = k⊗k`, `Δe = e⊗k + k⁻¹⊗e`, `ε(k) = 1`, `ε(e) = 0`,
    /// `S(k) = k⁻¹`, `S(e) = −q⁻¹e`, `S(e*) = −qe*`. `Δe*` follows from `*`
    /// and `Δk⁻¹ = k⁻¹⊗k⁻¹` from `k` being group-like.
    pub fn u_q() -> Result<Self, HopfError> {
        use uq::*;
        let p = Presentation::u_q()?;
        let one = Scalar::one();
        let delta_k = t2(&p, &[(one.clone(), &[K], &[K])]);
        let delta_kinv = t2(&p, &[(one.clone(), &[KINV], &[KINV])]);
        let delta_e = t2(&p, &[(one.clone(), &[E], &[K]), (one.clone(), &[KINV], &[E])]);
        let delta_es = star_tensor(&p, &delta_e);
        let counit = vec![one.clone(), one, Scalar::zero(), Scalar::zero()];
        let antipode = vec![
            Element::gen(K),
            Element::gen(KINV),
            Element::gen(E).scale(&Scalar::q_pow(-1).neg()),
            Element::gen(ES).scale(&Scalar::q().neg()),
        ];
        let tables = HopfTables { coproduct: vec![delta_kinv, delta_k, delta_e, delta_es], counit, antipode };
        HopfAlgebra::new(p, tables)
    }

    /// Wraps a presentation with generator tables. The antipode must send each
    /// generator to a multiple of a single word so that S⁻¹ can be tabulated.
    pub fn new(pres: Presentation, tables: HopfTables) -> Result<Self, HopfError> {
        let n = pres.generators().len();
        assert_eq!(tables.coproduct.len(), n);
        assert_eq!(tables.counit.len(), n);
        assert_eq!(tables.antipode.len(), n);
        let mut antipode_inv = vec![Element::zero(); n];
        for (g, s) in tables.antipode.iter().enumerate() {
            let token = pres.generators()[g].token;
            let mut terms = s.terms();
            let (w, c) = match (terms.next(), terms.next()) {
                (Some(t), None) => t,
                _ => return Err(HopfError::AntipodeNotMonomial(token)),
            };
            if w.len() != 1 {
                return Err(HopfError::AntipodeNotMonomial(token));
            }
            let c_inv = c.inv().map_err(|_| HopfError::AntipodeNotMonomial(token))?;
            antipode_inv[w.gens()[0] as usize] = Element::gen(g as Gen).scale(&c_inv);
        }
        Ok(HopfAlgebra {
            pres,
            tables,
            antipode_inv,
            delta_cache: RwLock::new(HashMap::new()),
            s_cache: RwLock::new(HashMap::new()),
            s_inv_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Same maps over a presentation whose rule `index` is corrupted.
    pub fn with_corrupted_rule(&self, index: usize) -> HopfAlgebra {
        HopfAlgebra::new(self.pres.with_corrupted_rule(index), self.tables.clone())
            .expect("tables were valid before corruption")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn tables(&self) -> &HopfTables {
        &self.tables
    }

    /// `Δ^{(n)}` of a word: the `(n−1)`-fold iterated coproduct as an `n`-fold tensor.
    pub fn iterated_coproduct_word(&self, w: &Word, n: usize) -> Arc<TensorElement> {
        assert!(n >= 1);
        cached(&self.delta_cache, &(w.clone(), n), || {
            if n == 1 {
                return TensorElement::from_element(&self.pres.normal_form_word(w));
            }
            match w.len() {
                0 => TensorElement::one(n),
                1 => {
                    let g = w.gens()[0] as usize;
                    if n == 2 {
                        self.tables.coproduct[g].clone()
                    } else {
                        self.iterated_coproduct_word(w, n - 1)
                            .expand_factor(0, |u| (*self.iterated_coproduct_word(u, 2)).clone())
                    }
                }
                len => {
                    let head = Word::from_gens(&w.gens()[..len - 1]);
                    let last = Word::gen(w.gens()[len - 1]);
                    self.iterated_coproduct_word(&head, n)
                        .mul(&self.iterated_coproduct_word(&last, n), &self.pres)
                }
            }
        })
    }

    /// `Δ^{(n)}x` as an `n`-fold tensor; `n = 2` is the coproduct. Raw
    /// (non-normal) words are allowed.
    pub fn iterated_coproduct(&self, x: &Element, n: usize) -> TensorElement {
        let mut out = TensorElement::zero(n);
        for (w, c) in x.terms() {
            out.add_scaled(&self.iterated_coproduct_word(w, n), c);
        }
        out
    }

    pub fn coproduct(&self, x: &Element) -> TensorElement {
        self.iterated_coproduct(x, 2)
    }

    /// `Δ^{cop} = τ∘Δ`.
    pub fn coproduct_cop(&self, x: &Element) -> TensorElement {
        self.coproduct(x).flip()
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        w.gens().iter().fold(Scalar::one(), |acc, &g| acc.mul(&self.tables.counit[g as usize]))
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        x.terms().fold(Scalar::zero(), |acc, (w, c)| acc.add(&c.mul(&self.counit_word(w))))
    }

    fn anti_extend(&self, w: &Word, table: &[Element], cache: &Cache<Word, Element>) -> Arc<Element> {
        cached(cache, w, || match w.len() {
            0 => Element::one(),
            1 => self.pres.normal_form(&table[w.gens()[0] as usize]),
            len => {
                let head = Word::from_gens(&w.gens()[..len - 1]);
                let last = Word::gen(w.gens()[len - 1]);
                self.pres.mul(&self.anti_extend(&last, table, cache), &self.anti_extend(&head, table, cache))
            }
        })
    }

    pub fn antipode_word(&self, w: &Word) -> Arc<Element> {
        self.anti_extend(w, &self.tables.antipode, &self.s_cache)
    }

    pub fn antipode_inv_word(&self, w: &Word) -> Arc<Element> {
        self.anti_extend(w, &self.antipode_inv, &self.s_inv_cache)
    }

    pub fn antipode(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.antipode_word(w), c);
        }
        out
    }

    pub fn antipode_inv(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.antipode_inv_word(w), c);
        }
        out
    }

    /// `(* ⊗ ⋯ ⊗ *)` with conjugated coefficients.
    pub fn star_tensor(&self, t: &TensorElement) -> TensorElement {
        star_tensor(&self.pres, t)
    }

    /// `(Δ ⊗ id)Δx − (id ⊗ Δ)Δx`.
    pub fn coassociativity_defect(&self, x: &Element) -> TensorElement {
        let d = self.coproduct(x);
        let left = d.expand_factor(0, |w| (*self.iterated_coproduct_word(w, 2)).clone());
        let right = d.expand_factor(1, |w| (*self.iterated_coproduct_word(w, 2)).clone());
        &left - &right
    }

    /// `((ε ⊗ id)Δx − x, (id ⊗ ε)Δx − x)`.
    pub fn counit_defect(&self, x: &Element) -> (Element, Element) {
        let d = self.coproduct(x);
        let nx = self.pres.normal_form(x);
        let left = d.contract_factor(0, |w| self.counit_word(w)).into_element();
        let right = d.contract_factor(1, |w| self.counit_word(w)).into_element();
        (&left - &nx, &right - &nx)
    }

    /// `(m(S ⊗ id)Δx − ε(x)1, m(id ⊗ S)Δx − ε(x)1)`.
    pub fn antipode_defect(&self, x: &Element) -> (Element, Element) {
        let d = self.coproduct(x);
        let eps = Element::scalar(self.counit(x));
        let left = d.map_factor(0, |w| (*self.antipode_word(w)).clone()).multiply_out(&self.pres);
        let right = d.map_factor(1, |w| (*self.antipode_word(w)).clone()).multiply_out(&self.pres);
        (&left - &eps, &right - &eps)
    }

    /// `Δ(x*) − (*⊗*)Δx`.
    pub fn star_coproduct_defect(&self, x: &Element) -> TensorElement {
        &self.coproduct(&self.pres.star(x)) - &self.star_tensor(&self.coproduct(x))
    }

    /// `S(S(x*)*) − x`, zero in a Hopf `*`-algebra.
    pub fn star_antipode_defect(&self, x: &Element) -> Element {
        let inner = self.pres.star(&self.antipode(&self.pres.star(x)));
        &self.antipode(&inner) - &self.pres.normal_form(x)
    }

    /// Renders a tensor as `c*(x ⊗ y) + ⋯` in grammar tokens, or in
    /// mathematical notation when `math` is set.
    pub fn render_tensor(&self, t: &TensorElement, math: bool) -> String {
        let mut terms: Vec<(&Vec<Word>, &Scalar)> = t.terms().collect();
        terms.sort_by(|x, y| {
            for (u, v) in x.0.iter().zip(y.0) {
                let o = self.pres.cmp_words(v, u);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        });
        let notation = if math { Notation::Math } else { Notation::Grammar };
        let strings: Vec<String> = terms
            .into_iter()
            .map(|(f, c)| {
                let parts: Vec<String> = f
                    .iter()
                    .map(|w| if math { self.pres.render_gen_word_math(w) } else { self.pres.render_gen_word(w) })
                    .collect();
                let body = if parts.len() == 1 { parts[0].clone() } else { format!("({})", parts.join(" ⊗ ")) };
                render_term(c, &body, false, notation)
            })
            .collect();
        crate::ncpoly::join_signed(&strings)
    }
}

fn star_tensor(p: &Presentation, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.arity());
    for (factors, c) in t.terms() {
        let mut acc = TensorElement::pure(vec![Word::unit(); t.arity()], c.conjugate());
        for (i, w) in factors.iter().enumerate() {
            let starred = p.star(&Element::word(w.clone()));
            acc = acc.map_factor(i, |_| starred.clone());
        }
        out.add_scaled(&acc, &Scalar::one());
    }
    out
}
