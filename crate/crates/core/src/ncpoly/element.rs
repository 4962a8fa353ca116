use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::coeff::Scalar;

/// Index of a generator inside its presentation.
pub type Gen = u8;

/// A word in the generators. The empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(SmallVec<[Gen; 8]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_gens(gens: &[Gen]) -> Self {
        Word(SmallVec::from_slice(gens))
    }

    pub fn gen(g: Gen) -> Self {
        Word::from_gens(&[g])
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// `prefix · middle · suffix` where prefix is `self[..start]` and suffix `self[end..]`.
    pub fn splice(&self, start: usize, end: usize, middle: &Word) -> Word {
        let mut w: SmallVec<[Gen; 8]> = SmallVec::with_capacity(self.len() - (end - start) + middle.len());
        w.extend_from_slice(&self.0[..start]);
        w.extend_from_slice(&middle.0);
        w.extend_from_slice(&self.0[end..]);
        Word(w)
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }
}

impl FromIterator<Gen> for Word {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A finite linear combination of words with nonzero [`Scalar`] coefficients.
///
/// Elements produced by a presentation only contain normal-form words; the
/// same type also carries raw (free-algebra) expressions before reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::term(c, Word::unit())
    }

    pub fn word(w: Word) -> Self {
        Element::term(Scalar::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Element::word(Word::gen(g))
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar `c` if this element is `c·1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), if c.is_one() { d.clone() } else { d.mul(c) });
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Largest number of generators in any word.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

impl FromIterator<(Word, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}
