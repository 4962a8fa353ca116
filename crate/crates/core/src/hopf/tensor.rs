use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::coeff::Scalar;
use crate::ncpoly::{Element, Presentation, Word};

/// A finite sum of `n`-fold pure tensors of normal-form words (a Sweedler sum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        TensorElement { arity, terms: BTreeMap::new() }
    }

    /// `1 ⊗ ⋯ ⊗ 1`.
    pub fn one(arity: usize) -> Self {
        TensorElement::pure(vec![Word::unit(); arity], Scalar::one())
    }

    pub fn pure(factors: Vec<Word>, c: Scalar) -> Self {
        let mut t = TensorElement::zero(factors.len());
        t.add_term(factors, c);
        t
    }

    /// An element viewed as a 1-fold tensor.
    pub fn from_element(x: &Element) -> Self {
        let mut t = TensorElement::zero(1);
        for (w, c) in x.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// `x ⊗ y` for elements.
    pub fn tensor(x: &Element, y: &Element) -> Self {
        let mut t = TensorElement::zero(2);
        for (u, c) in x.terms() {
            for (v, d) in y.terms() {
                t.add_term(vec![u.clone(), v.clone()], c.mul(d));
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, factors: Vec<Word>, c: Scalar) {
        assert_eq!(factors.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for (f, d) in &other.terms {
            self.add_term(f.clone(), d.mul(c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Reverses the order of the tensor factors; on `Δx` this gives `Δ^{cop}x`.
    pub fn flip(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (f, c) in &self.terms {
            out.add_term(f.iter().rev().cloned().collect(), c.clone());
        }
        out
    }

    /// Applies a linear map `word ↦ Element` to factor `i`.
    pub fn map_factor(&self, i: usize, mut f: impl FnMut(&Word) -> Element) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (factors, c) in &self.terms {
            for (w, d) in f(&factors[i]).into_terms() {
                let mut nf = factors.clone();
                nf[i] = w;
                out.add_term(nf, c.mul(&d));
            }
        }
        out
    }

    /// Replaces factor `i` by a tensor of arity `m`, raising the arity by `m − 1`.
    pub fn expand_factor(&self, i: usize, mut f: impl FnMut(&Word) -> TensorElement) -> TensorElement {
        let mut out: Option<TensorElement> = None;
        for (factors, c) in &self.terms {
            let sub = f(&factors[i]);
            let acc = out.get_or_insert_with(|| TensorElement::zero(self.arity + sub.arity - 1));
            for (sf, d) in sub.terms() {
                let mut nf = Vec::with_capacity(acc.arity);
                nf.extend_from_slice(&factors[..i]);
                nf.extend(sf.iter().cloned());
                nf.extend_from_slice(&factors[i + 1..]);
                acc.add_term(nf, c.mul(d));
            }
        }
        out.unwrap_or_else(|| TensorElement::zero(self.arity + 1))
    }

    /// Contracts factor `i` with a scalar-valued map, lowering the arity by one.
    pub fn contract_factor(&self, i: usize, mut f: impl FnMut(&Word) -> Scalar) -> TensorElement {
        assert!(self.arity >= 2, "cannot contract a 1-fold tensor");
        let mut out = TensorElement::zero(self.arity - 1);
        for (factors, c) in &self.terms {
            let v = f(&factors[i]);
            if v.is_zero() {
                continue;
            }
            let mut nf = factors.clone();
            nf.remove(i);
            out.add_term(nf, c.mul(&v));
        }
        out
    }

    /// Multiplies all factors together in `p`.
    pub fn multiply_out(&self, p: &Presentation) -> Element {
        let mut acc = Element::zero();
        for (factors, c) in &self.terms {
            let mut prod = Element::one();
            for w in factors {
                prod = p.mul(&prod, &Element::word(w.clone()));
            }
            acc.add_scaled(&prod, c);
        }
        acc
    }

    /// Collapses a 1-fold tensor back to an element.
    pub fn into_element(&self) -> Element {
        assert_eq!(self.arity, 1, "only 1-fold tensors are elements");
        self.terms.iter().map(|(f, c)| (f[0].clone(), c.clone())).collect()
    }

    /// Factorwise product in the tensor-power algebra.
    pub fn mul(&self, other: &TensorElement, p: &Presentation) -> TensorElement {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        let mut out = TensorElement::zero(self.arity);
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::with_capacity(self.arity), c.mul(d))];
                for (u, v) in f.iter().zip(g) {
                    let prod = p.mul_words(u, v);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (ws, k) in &partial {
                        for (w, e) in prod.terms() {
                            let mut nw = ws.clone();
                            nw.push(w.clone());
                            next.push((nw, k.mul(e)));
                        }
                    }
                    partial = next;
                }
                for (ws, k) in partial {
                    out.add_term(ws, k);
                }
            }
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}
