use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::element::{Element, Gen, Word};
use crate::coeff::Scalar;

/// The two algebras used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PresentationKind {
    /// `Fun_q(SU(2))`, generators `a, a*, b, b*`.
    FunQ,
    /// `U_q(su(2))`, generators `k^-1, k, e, e*`.
    UQ,
}

impl PresentationKind {
    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::FunQ => "funq",
            PresentationKind::UQ => "uq",
        }
    }
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generator indices for `Fun_q(SU(2))`, in the fixed order `a < a* < b < b*`.
pub mod funq {
    use super::Gen;
    pub const A: Gen = 0;
    pub const AS: Gen = 1;
    pub const B: Gen = 2;
    pub const BS: Gen = 3;
}

/// Generator indices for `U_q(su(2))`, in the fixed order `k^-1 < k < e < e*`.
pub mod uq {
    use super::Gen;
    pub const KINV: Gen = 0;
    pub const K: Gen = 1;
    pub const E: Gen = 2;
    pub const ES: Gen = 3;
}

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    /// Name in the expression grammar (`as`, `kinv`, ...).
    pub token: &'static str,
    /// Name in mathematical notation (`a*`, `k^-1`, ...).
    pub math: &'static str,
    pub star: Gen,
    pub inverse: Option<Gen>,
    /// Weight in the weighted degree-lexicographic word order.
    pub weight: u32,
}

/// An oriented relation `lhs → rhs` with `rhs` strictly below `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Element,
}

/// A critical pair that does not resolve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFailure {
    pub overlap: Word,
    pub left: Element,
    pub right: Element,
}

#[derive(Debug, Clone, Error)]
pub enum PresentationError {
    #[error("rule {0} does not decrease the word order")]
    NotDecreasing(String),
    #[error("rule left-hand side {0} is not a word of length 2")]
    LongRule(String),
    #[error("relations are inconsistent: {0} reduces to a nonzero scalar")]
    Inconsistent(String),
    #[error("unresolvable overlap {overlap}: {left} vs {right}")]
    Overlap { overlap: String, left: String, right: String },
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Notation {
    Grammar,
    Math,
}

/// Leftmost-redex rewriting with a fixed rule list. Rules of length-2
/// left-hand sides are found through a lookup table.
#[derive(Clone, Debug)]
struct RewriteSystem {
    n: usize,
    rules: Vec<Rule>,
    pair_table: Vec<Option<usize>>,
    long_rules: Vec<usize>,
}

impl RewriteSystem {
    fn new(n: usize, rules: Vec<Rule>) -> Self {
        let mut pair_table = vec![None; n * n];
        let mut long_rules = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            let g = r.lhs.gens();
            if g.len() == 2 {
                pair_table[g[0] as usize * n + g[1] as usize] = Some(i);
            } else {
                long_rules.push(i);
            }
        }
        RewriteSystem { n, rules, pair_table, long_rules }
    }

    fn redex_at(&self, w: &[Gen], pos: usize) -> Option<usize> {
        if pos + 1 < w.len() {
            if let Some(i) = self.pair_table[w[pos] as usize * self.n + w[pos + 1] as usize] {
                return Some(i);
            }
        }
        self.long_rules
            .iter()
            .copied()
            .find(|&i| w[pos..].starts_with(self.rules[i].lhs.gens()))
    }

    fn leftmost_redex(&self, w: &Word) -> Option<(usize, usize)> {
        (0..w.len()).find_map(|pos| self.redex_at(w.gens(), pos).map(|r| (pos, r)))
    }

    fn all_redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        (0..w.len()).filter_map(|pos| self.redex_at(w.gens(), pos).map(|r| (pos, r))).collect()
    }

    fn rewrite_at(&self, w: &Word, pos: usize, rule: usize) -> Element {
        let r = &self.rules[rule];
        let end = pos + r.lhs.len();
        r.rhs.terms().map(|(m, c)| (w.splice(pos, end, m), c.clone())).collect()
    }

    fn reduce_word(&self, w: &Word, memo: &mut HashMap<Word, Element>) -> Element {
        if let Some(e) = memo.get(w) {
            return e.clone();
        }
        let out = match self.leftmost_redex(w) {
            None => Element::word(w.clone()),
            Some((pos, rule)) => {
                let mut acc = Element::zero();
                for (m, c) in self.rewrite_at(w, pos, rule).into_terms() {
                    let red = self.reduce_word(&m, memo);
                    acc.add_scaled(&red, &c);
                }
                acc
            }
        };
        memo.insert(w.clone(), out.clone());
        out
    }

    fn reduce(&self, x: &Element) -> Element {
        let mut memo = HashMap::new();
        let mut acc = Element::zero();
        for (w, c) in x.terms() {
            let red = self.reduce_word(w, &mut memo);
            acc.add_scaled(&red, c);
        }
        acc
    }
}

/// A finitely presented `*`-algebra with a confluent, terminating rewrite
/// system whose irreducible words form a PBW-style basis.
pub struct Presentation {
    kind: PresentationKind,
    gens: Vec<GeneratorSpec>,
    system: RewriteSystem,
    base_relations: Vec<Element>,
    derived_relations: Vec<Element>,
    nf_cache: RwLock<HashMap<Word, Arc<Element>>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("kind", &self.kind)
            .field("rules", &self.system.rules.len())
            .finish()
    }
}

fn raw(terms: &[(Scalar, &[Gen])]) -> Element {
    terms.iter().map(|(c, w)| (Word::from_gens(w), c.clone())).collect()
}

impl Presentation {
    /// `Fun_q(SU(2))` with the relations
    /// `ba = qab, b*a = qab*, bb* = b*b, a*a + q²b*b = 1, aa* + bb* = 1`.
    pub fn fun_q() -> Result<Self, PresentationError> {
        use funq::*;
        let q = Scalar::q();
        let gens = vec![
            GeneratorSpec { token: "a", math: "a", star: AS, inverse: None, weight: 2 },
            GeneratorSpec { token: "as", math: "a*", star: A, inverse: None, weight: 2 },
            GeneratorSpec { token: "b", math: "b", star: BS, inverse: None, weight: 1 },
            GeneratorSpec { token: "bs", math: "b*", star: B, inverse: None, weight: 1 },
        ];
        let one = Scalar::one();
        let m1 = Scalar::from_int(-1);
        let base = vec![
            raw(&[(one.clone(), &[B, A]), (q.neg(), &[A, B])]),
            raw(&[(one.clone(), &[BS, A]), (q.neg(), &[A, BS])]),
            raw(&[(one.clone(), &[B, BS]), (m1.clone(), &[BS, B])]),
            raw(&[(one.clone(), &[AS, A]), (Scalar::q_pow(2), &[BS, B]), (m1.clone(), &[])]),
            raw(&[(one.clone(), &[A, AS]), (one, &[B, BS]), (m1, &[])]),
        ];
        Presentation::from_relations(PresentationKind::FunQ, gens, base)
    }

    /// `U_q(su(2))` with `ek = qke`, `k² − k⁻² = (q − q⁻¹)(e*e − ee*)` and
    /// `kk⁻¹ = k⁻¹k = 1`.
    pub fn u_q() -> Result<Self, PresentationError> {
        use uq::*;
        let q = Scalar::q();
        let gens = vec![
            GeneratorSpec { token: "kinv", math: "k^-1", star: KINV, inverse: Some(K), weight: 1 },
            GeneratorSpec { token: "k", math: "k", star: K, inverse: Some(KINV), weight: 1 },
            GeneratorSpec { token: "e", math: "e", star: ES, inverse: None, weight: 1 },
            GeneratorSpec { token: "es", math: "e*", star: E, inverse: None, weight: 1 },
        ];
        let one = Scalar::one();
        let m1 = Scalar::from_int(-1);
        let c = q.sub(&Scalar::q_pow(-1));
        let base = vec![
            raw(&[(one.clone(), &[E, K]), (q.neg(), &[K, E])]),
            raw(&[
                (one.clone(), &[K, K]),
                (m1.clone(), &[KINV, KINV]),
                (c.neg(), &[ES, E]),
                (c, &[E, ES]),
            ]),
            raw(&[(one.clone(), &[K, KINV]), (m1.clone(), &[])]),
            raw(&[(one, &[KINV, K]), (m1, &[])]),
        ];
        Presentation::from_relations(PresentationKind::UQ, gens, base)
    }

    /// Derives the full rule set from `base` and runs the termination and
    /// local-confluence gate.
    pub fn from_relations(
        kind: PresentationKind,
        gens: Vec<GeneratorSpec>,
        base: Vec<Element>,
    ) -> Result<Self, PresentationError> {
        let mut p = Presentation::from_rules_unchecked(kind, gens, Vec::new(), base, Vec::new());
        let (rules, derived) = p.derive_rewrite_rules()?;
        p.system = RewriteSystem::new(p.gens.len(), rules);
        p.derived_relations = derived;
        p.check()?;
        Ok(p)
    }

    /// Builds a presentation from explicit rules without any checks. Used for
    /// fault-injection fixtures.
    pub fn from_rules_unchecked(
        kind: PresentationKind,
        gens: Vec<GeneratorSpec>,
        rules: Vec<Rule>,
        base_relations: Vec<Element>,
        derived_relations: Vec<Element>,
    ) -> Self {
        let n = gens.len();
        Presentation {
            kind,
            gens,
            system: RewriteSystem::new(n, rules),
            base_relations,
            derived_relations,
            nf_cache: RwLock::new(HashMap::new()),
        }
    }

    /// A copy whose rule `index` has its right-hand side doubled. No checks run.
    pub fn with_corrupted_rule(&self, index: usize) -> Presentation {
        let mut rules = self.system.rules.clone();
        rules[index].rhs = rules[index].rhs.scale(&Scalar::from_int(2));
        Presentation::from_rules_unchecked(
            self.kind,
            self.gens.clone(),
            rules,
            self.base_relations.clone(),
            self.derived_relations.clone(),
        )
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.system.rules
    }

    /// The defining relations as given, moved to one side.
    pub fn base_relations(&self) -> &[Element] {
        &self.base_relations
    }

    /// Starred and inverse-conjugated consequences of the base relations.
    pub fn derived_relations(&self) -> &[Element] {
        &self.derived_relations
    }

    pub fn generator_by_token(&self, token: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.token == token).map(|i| i as Gen)
    }

    fn weight(&self, w: &Word) -> u32 {
        w.gens().iter().map(|&g| self.gens[g as usize].weight).sum()
    }

    /// Weighted degree first, then lexicographic by generator index.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.gens().cmp(b.gens()))
    }

    /// Largest word of `x` in the word order.
    pub fn leading_word<'a>(&self, x: &'a Element) -> Option<&'a Word> {
        x.terms().map(|(w, _)| w).max_by(|a, b| self.cmp_words(a, b))
    }

    fn star_raw(&self, x: &Element) -> Element {
        x.terms()
            .map(|(w, c)| {
                let sw: Word = w.gens().iter().rev().map(|&g| self.gens[g as usize].star).collect();
                (sw, c.conjugate())
            })
            .collect()
    }

    fn free_cancel(&self, w: &Word) -> Word {
        let mut out: Vec<Gen> = Vec::with_capacity(w.len());
        for &g in w.gens() {
            match out.last() {
                Some(&h) if self.gens[h as usize].inverse == Some(g) => {
                    out.pop();
                }
                _ => out.push(g),
            }
        }
        Word::from_gens(&out)
    }

    fn orient(&self, relation: &Element) -> Rule {
        let lhs = self.leading_word(relation).expect("nonzero relation").clone();
        let c = relation.coeff(&lhs);
        let factor = c.inv().expect("nonzero leading coefficient").neg();
        let mut rhs = Element::zero();
        for (w, d) in relation.terms() {
            if *w != lhs {
                rhs.add_term(w.clone(), d.mul(&factor));
            }
        }
        Rule { lhs, rhs }
    }

    /// Closes the base relations under `*` and under two-sided multiplication by
    /// inverses of invertible generators, then orients and inter-reduces them.
    ///
    /// Returns the rules and the derived (non-base) relations.
    pub fn derive_rewrite_rules(&self) -> Result<(Vec<Rule>, Vec<Element>), PresentationError> {
        let n = self.gens.len();
        let mut derived: Vec<Element> = self.base_relations.iter().map(|r| self.star_raw(r)).collect();
        let mut conjugated = Vec::new();
        for r in self.base_relations.iter().chain(derived.iter()) {
            for (g, spec) in self.gens.iter().enumerate() {
                let Some(inv) = spec.inverse else { continue };
                let mentions = r.terms().any(|(w, _)| w.gens().contains(&(g as Gen)));
                if !mentions {
                    continue;
                }
                let c: Element = r
                    .terms()
                    .map(|(w, s)| {
                        let sandwiched = Word::gen(inv).concat(w).concat(&Word::gen(inv));
                        (self.free_cancel(&sandwiched), s.clone())
                    })
                    .collect();
                if !c.is_zero() {
                    conjugated.push(c);
                }
            }
        }
        derived.extend(conjugated.iter().map(|r| self.star_raw(r)));
        derived.extend(conjugated);

        let mut candidates: Vec<Element> =
            self.base_relations.iter().chain(derived.iter()).cloned().collect();
        candidates.sort_by(|x, y| self.cmp_words(self.leading_word(x).unwrap(), self.leading_word(y).unwrap()));

        let mut rules: Vec<Rule> = Vec::new();
        for cand in &candidates {
            let red = RewriteSystem::new(n, rules.clone()).reduce(cand);
            if red.is_zero() {
                continue;
            }
            if red.as_scalar().is_some() {
                return Err(PresentationError::Inconsistent(self.render(cand)));
            }
            rules.push(self.orient(&red));
        }

        // inter-reduce right-hand sides
        for i in 0..rules.len() {
            let others: Vec<Rule> =
                rules.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            let sys = RewriteSystem::new(n, others);
            if sys.leftmost_redex(&rules[i].lhs).is_some() {
                return Err(PresentationError::Inconsistent(self.render(&Element::word(rules[i].lhs.clone()))));
            }
            rules[i].rhs = sys.reduce(&rules[i].rhs);
        }
        rules.sort_by(|x, y| self.cmp_words(&x.lhs, &y.lhs));

        let derived = derived
            .into_iter()
            .filter(|r| !self.base_relations.contains(r))
            .collect();
        Ok((rules, derived))
    }

    /// Termination (every rule decreases the word order) and local confluence
    /// on every overlap of two left-hand sides.
    pub fn check(&self) -> Result<(), PresentationError> {
        for r in self.rules() {
            if r.lhs.len() != 2 {
                return Err(PresentationError::LongRule(self.render_word(&r.lhs, Notation::Grammar)));
            }
            if r.rhs.terms().any(|(w, _)| self.cmp_words(w, &r.lhs) != Ordering::Less) {
                return Err(PresentationError::NotDecreasing(self.render_rule(r)));
            }
        }
        if let Some(f) = self.local_confluence_failures().into_iter().next() {
            return Err(PresentationError::Overlap {
                overlap: self.render_word(&f.overlap, Notation::Grammar),
                left: self.render(&f.left),
                right: self.render(&f.right),
            });
        }
        Ok(())
    }

    /// Every overlap `xyz` of two length-2 left-hand sides `xy`, `yz`, reduced
    /// both ways; returns the pairs that disagree.
    pub fn local_confluence_failures(&self) -> Vec<OverlapFailure> {
        let n = self.gens.len() as Gen;
        let mut failures = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let Some(r1) = self.system.redex_at(&[x, y], 0) else { continue };
                for z in 0..n {
                    let Some(r2) = self.system.redex_at(&[y, z], 0) else { continue };
                    let overlap = Word::from_gens(&[x, y, z]);
                    let left = self.normal_form(&self.system.rewrite_at(&overlap, 0, r1));
                    let right = self.normal_form(&self.system.rewrite_at(&overlap, 1, r2));
                    if left != right {
                        failures.push(OverlapFailure { overlap, left, right });
                    }
                }
            }
        }
        failures
    }

    pub fn overlap_count(&self) -> usize {
        let n = self.gens.len() as Gen;
        let mut count = 0;
        for x in 0..n {
            for y in 0..n {
                if self.system.redex_at(&[x, y], 0).is_none() {
                    continue;
                }
                count += (0..n).filter(|&z| self.system.redex_at(&[y, z], 0).is_some()).count();
            }
        }
        count
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.system.leftmost_redex(w).is_none()
    }

    /// Normal form of a single word, memoized.
    pub fn normal_form_word(&self, w: &Word) -> Arc<Element> {
        if let Some(e) = self.nf_cache.read().unwrap().get(w) {
            return e.clone();
        }
        let out = match self.system.leftmost_redex(w) {
            None => Element::word(w.clone()),
            Some((pos, rule)) => {
                let mut acc = Element::zero();
                for (m, c) in self.system.rewrite_at(w, pos, rule).into_terms() {
                    acc.add_scaled(&self.normal_form_word(&m), &c);
                }
                acc
            }
        };
        let out = Arc::new(out);
        self.nf_cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    /// Fixed point of exhaustive rewriting.
    pub fn normal_form(&self, x: &Element) -> Element {
        let mut acc = Element::zero();
        for (w, c) in x.terms() {
            if self.is_normal(w) {
                acc.add_term(w.clone(), c.clone());
            } else {
                acc.add_scaled(&self.normal_form_word(w), c);
            }
        }
        acc
    }

    /// Normal form computed by rewriting a randomly chosen redex at each step,
    /// bypassing the cache. Confluence makes the result strategy-independent.
    pub fn normal_form_random<R: Rng>(&self, x: &Element, rng: &mut R) -> Element {
        let mut acc = Element::zero();
        let mut stack: Vec<(Word, Scalar)> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = stack.pop() {
            let redexes = self.system.all_redexes(&w);
            if redexes.is_empty() {
                acc.add_term(w, c);
                continue;
            }
            let (pos, rule) = redexes[rng.gen_range(0..redexes.len())];
            for (m, d) in self.system.rewrite_at(&w, pos, rule).into_terms() {
                stack.push((m, d.mul(&c)));
            }
        }
        acc
    }

    /// Normal form of `u·v` for normal words `u`, `v`.
    pub fn mul_words(&self, u: &Word, v: &Word) -> Arc<Element> {
        let w = u.concat(v);
        let junction_clean = match (u.gens().last(), v.gens().first()) {
            (Some(&x), Some(&y)) => self.system.redex_at(&[x, y], 0).is_none(),
            _ => true,
        };
        if junction_clean && self.is_normal(u) && self.is_normal(v) {
            return Arc::new(Element::word(w));
        }
        self.normal_form_word(&w)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut acc = Element::zero();
        for (u, c) in x.terms() {
            for (v, d) in y.terms() {
                acc.add_scaled(&self.mul_words(u, v), &c.mul(d));
            }
        }
        acc
    }

    pub fn product(&self, xs: &[&Element]) -> Element {
        xs.iter().fold(Element::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Element, n: u32) -> Element {
        (0..n).fold(Element::one(), |acc, _| self.mul(&acc, x))
    }

    /// Normal form of the product of the given generators.
    pub fn monomial(&self, gens: &[Gen]) -> Element {
        self.normal_form(&Element::word(Word::from_gens(gens)))
    }

    /// The involution: reverse words, star generators, conjugate coefficients.
    pub fn star(&self, x: &Element) -> Element {
        self.normal_form(&self.star_raw(x))
    }

    /// `xy − yx`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        &self.mul(x, y) - &self.mul(y, x)
    }

    fn render_word(&self, w: &Word, notation: Notation) -> String {
        if w.is_unit() {
            return "1".to_string();
        }
        let (sep, name): (&str, fn(&GeneratorSpec) -> &'static str) = match notation {
            Notation::Grammar => ("*", |g| g.token),
            Notation::Math => ("·", |g| g.math),
        };
        let mut parts: Vec<String> = Vec::new();
        let gens = w.gens();
        let mut i = 0;
        while i < gens.len() {
            let mut j = i;
            while j < gens.len() && gens[j] == gens[i] {
                j += 1;
            }
            let nm = name(&self.gens[gens[i] as usize]);
            match (j - i, notation) {
                (1, _) => parts.push(nm.to_string()),
                (p, Notation::Math) if nm.contains('^') => parts.push(format!("({nm})^{p}")),
                (p, _) => parts.push(format!("{nm}^{p}")),
            }
            i = j;
        }
        parts.join(sep)
    }

    fn render_with(&self, x: &Element, notation: Notation) -> String {
        let mut terms: Vec<(&Word, &Scalar)> = x.terms().collect();
        terms.sort_by(|a, b| self.cmp_words(b.0, a.0));
        let strings: Vec<String> = terms
            .into_iter()
            .map(|(w, c)| render_term(c, &self.render_word(w, notation), w.is_unit(), notation))
            .collect();
        join_signed(&strings)
    }

    /// Renders in the expression grammar (`as`, `bs`, `kinv`, `es`); the output
    /// parses back to the same element.
    pub fn render(&self, x: &Element) -> String {
        self.render_with(x, Notation::Grammar)
    }

    /// Renders with `a*`, `b*`, `k^-1`, `e*` and `·` products.
    pub fn render_math(&self, x: &Element) -> String {
        self.render_with(x, Notation::Math)
    }

    pub fn render_rule(&self, r: &Rule) -> String {
        format!("{} -> {}", self.render_word(&r.lhs, Notation::Grammar), self.render(&r.rhs))
    }

    pub fn render_gen_word(&self, w: &Word) -> String {
        self.render_word(w, Notation::Grammar)
    }

    pub fn render_gen_word_math(&self, w: &Word) -> String {
        self.render_word(w, Notation::Math)
    }
}

/// True if `s` has a `+` or binary `-` outside parentheses.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn render_term(c: &Scalar, word: &str, unit: bool, notation: Notation) -> String {
    let mul = if notation == Notation::Math { "·" } else { "*" };
    if unit {
        return c.to_string();
    }
    if c.is_one() {
        return word.to_string();
    }
    if c.neg().is_one() {
        return format!("-{word}");
    }
    let cs = c.to_string();
    if has_top_level_sum(&cs) {
        format!("({cs}){mul}{word}")
    } else {
        format!("{cs}{mul}{word}")
    }
}

pub(crate) fn join_signed(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}
