use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::coeff::Scalar;
use crate::ncpoly::{Element, Word};

/// A finite sum of pure tensors `U ⊗ f` with `U` a normal word of
/// `U_q(su(2))` and `f` a normal word of `Fun_q(SU(2))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl DoubleElement {
    pub fn zero() -> Self {
        DoubleElement::default()
    }

    pub fn one() -> Self {
        DoubleElement::pure_words(Word::unit(), Word::unit(), Scalar::one())
    }

    pub fn pure_words(u: Word, f: Word, c: Scalar) -> Self {
        let mut x = DoubleElement::zero();
        x.add_term(u, f, c);
        x
    }

    /// `U ⊗ f` for normal-form elements.
    pub fn pure(u: &Element, f: &Element) -> Self {
        let mut x = DoubleElement::zero();
        for (w, c) in u.terms() {
            for (v, d) in f.terms() {
                x.add_term(w.clone(), v.clone(), c.mul(d));
            }
        }
        x
    }

    /// `U ⊗ 1`.
    pub fn from_u(u: &Element) -> Self {
        DoubleElement::pure(u, &Element::one())
    }

    /// `1 ⊗ f`.
    pub fn from_fun(f: &Element) -> Self {
        DoubleElement::pure(&Element::one(), f)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((u, f), c)| (u, f, c))
    }

    pub fn add_term(&mut self, u: Word, f: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, f)) {
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

    pub fn add_scaled(&mut self, other: &DoubleElement, c: &Scalar) {
        for ((u, f), d) in &other.terms {
            self.add_term(u.clone(), f.clone(), d.mul(c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> DoubleElement {
        let mut out = DoubleElement::zero();
        out.add_scaled(self, c);
        out
    }
}

impl Add for &DoubleElement {
    type Output = DoubleElement;
    fn add(self, rhs: &DoubleElement) -> DoubleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &DoubleElement {
    type Output = DoubleElement;
    fn sub(self, rhs: &DoubleElement) -> DoubleElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}
