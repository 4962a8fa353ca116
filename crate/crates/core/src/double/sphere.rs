use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Scalar;
use crate::ncpoly::{funq, join_signed, render_term, Notation, Word};

/// `A^a B^b` for `b ≥ 0`, `A^a B*^{−b}` for `b < 0`: the PBW basis of the
/// Podleś sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SphereMonomial {
    pub a: u32,
    pub b: i32,
}

impl SphereMonomial {
    pub const ONE: SphereMonomial = SphereMonomial { a: 0, b: 0 };

    pub fn degree(self) -> u32 {
        self.a + self.b.unsigned_abs()
    }

    /// The monomial whose image in `Fun_q(SU(2))` is a multiple of the
    /// normal word `w`, if `w` lies in the sphere: `A^k B^m ∝ a^m b^{k+m} b*^k`
    /// and `A^k B*^n ∝ a*^n b^k b*^{k+n}`.
    pub fn from_fun_word(w: &Word) -> Option<SphereMonomial> {
        let count = |g| w.gens().iter().filter(|&&x| x == g).count() as i64;
        let (m, n, j, k) = (count(funq::A), count(funq::AS), count(funq::B), count(funq::BS));
        if n == 0 && j == k + m {
            Some(SphereMonomial { a: k as u32, b: m as i32 })
        } else if m == 0 && k == j + n {
            Some(SphereMonomial { a: j as u32, b: -(n as i32) })
        } else {
            None
        }
    }

    fn render(self, math: bool) -> String {
        let mut parts = Vec::new();
        let pw = |name: &str, e: u32| if e == 1 { name.to_string() } else { format!("{name}^{e}") };
        if self.a > 0 {
            parts.push(pw("A", self.a));
        }
        if self.b > 0 {
            parts.push(pw("B", self.b as u32));
        } else if self.b < 0 {
            let name = if math { "B*" } else { "Bs" };
            parts.push(pw(name, self.b.unsigned_abs()));
        }
        parts.join(if math { "·" } else { "*" })
    }
}

/// A polynomial in the sphere generators `A = bb*`, `B = ab`, `B* = b*a*`,
/// written in the basis `{A^k B^m} ∪ {A^k B*^n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpherePoly {
    terms: BTreeMap<SphereMonomial, Scalar>,
}

impl SpherePoly {
    pub fn zero() -> Self {
        SpherePoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SphereMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: SphereMonomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: SphereMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(m).add(&c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<SpherePoly, E> {
        let mut out = SpherePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    fn render_with(&self, math: bool) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (std::cmp::Reverse(m.degree()), std::cmp::Reverse(m.a), std::cmp::Reverse(m.b)));
        let notation = if math { Notation::Math } else { Notation::Grammar };
        let strings: Vec<String> = terms
            .into_iter()
            .map(|(m, c)| render_term(c, &m.render(math), *m == SphereMonomial::ONE, notation))
            .collect();
        join_signed(&strings)
    }

    /// Renders with `A`, `B`, `B*` and `·`.
    pub fn render_math(&self) -> String {
        self.render_with(true)
    }
}

/// Renders in the expression grammar (`A`, `B`, `Bs`).
impl fmt::Display for SpherePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(false))
    }
}
