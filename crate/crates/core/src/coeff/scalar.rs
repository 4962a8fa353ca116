use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{CoeffError, GaussianRational, Poly};

/// An element of ℚ(i)(s), where `s` stands for `q^{1/2}`.
///
/// Stored as `s^shift · num / den` with `num(0) ≠ 0`, `den` monic with
/// `den(0) ≠ 0` and `gcd(num, den) = 1`. Zero is `num = 0, den = 1, shift = 0`.
/// With these conditions the representation is canonical, so derived equality
/// is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i32,
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_gaussian(GaussianRational::one())
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { shift: 0, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(p: i64, r: i64) -> Self {
        Scalar::from_gaussian(GaussianRational::from_ratio(p, r))
    }

    pub fn i() -> Self {
        Scalar::from_gaussian(GaussianRational::i())
    }

    /// `s^n = q^{n/2}`.
    pub fn s_pow(n: i32) -> Self {
        Scalar { shift: n, num: Poly::one(), den: Poly::one() }
    }

    /// `q^n = s^{2n}`.
    pub fn q_pow(n: i32) -> Self {
        Scalar::s_pow(2 * n)
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `c·s^n`.
    pub fn monomial(c: GaussianRational, n: i32) -> Self {
        Scalar::from_gaussian(c).mul(&Scalar::s_pow(n))
    }

    /// `s^shift · num / den`, reduced into canonical form.
    pub fn from_parts(shift: i32, num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let v = num.valuation();
        let w = den.valuation();
        let mut num = num.shift_down(v);
        let mut den = den.shift_down(w);
        let shift = shift + v as i32 - w as i32;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
            let lc = den.leading().unwrap().clone();
            if !lc.is_one() {
                let inv = lc.inv().unwrap();
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        Ok(Scalar { shift, num, den })
    }

    fn reduced(shift: i32, num: Poly, den: Poly) -> Self {
        Scalar::from_parts(shift, num, den).expect("nonzero denominator")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial in `s`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator polynomial, without the `s^shift` factor.
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// The constant `c` if this scalar lies in ℚ(i).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        (self.shift == 0 && self.den.is_one() && self.num.degree() == Some(0))
            .then(|| self.num.coeffs()[0].clone())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(other.shift);
        let n1 = self.num.shift_up((self.shift - m) as usize);
        let n2 = other.num.shift_up((other.shift - m) as usize);
        if self.den == other.den {
            Scalar::reduced(m, n1.add(&n2), self.den.clone())
        } else {
            Scalar::reduced(
                m,
                n1.mul(&other.den).add(&n2.mul(&self.den)),
                self.den.mul(&other.den),
            )
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            // Product of polynomials with nonzero constant terms keeps a nonzero constant term.
            return Scalar {
                shift: self.shift + other.shift,
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        Scalar::reduced(
            self.shift + other.shift,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Scalar::from_parts(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Scalar, CoeffError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Complex conjugation of the coefficients; `s` is real and stays fixed.
    pub fn conjugate(&self) -> Scalar {
        Scalar { shift: self.shift, num: self.num.conj(), den: self.den.conj() }
    }

    /// Exact value at `s = 1` (equivalently `q = 1`).
    pub fn eval_at_one(&self) -> Result<GaussianRational, CoeffError> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        Ok(&self.num.eval_one() / &d)
    }

    /// Derivative with respect to `s`.
    pub fn derivative(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        // d/ds [s^k n/d] = s^{k-1} (k·n·d + s·(n'·d - n·d')) / d²
        let k = GaussianRational::from_int(self.shift as i64);
        let term1 = self.num.mul(&self.den).scale(&k);
        let term2 = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()))
            .shift_up(1);
        Scalar::reduced(self.shift - 1, term1.add(&term2), self.den.mul(&self.den))
    }

    /// `lim_{q→1} x(q) / ln q`.
    ///
    /// Requires `x(1) = 0`. Since `ln q = 2 ln s`, L'Hôpital gives `x'(1)/2`
    /// with the derivative taken in `s`.
    pub fn limit_div_lnq(&self) -> Result<GaussianRational, CoeffError> {
        let value = self.eval_at_one()?;
        if !value.is_zero() {
            return Err(CoeffError::Divergent);
        }
        let d = self.derivative().eval_at_one()?;
        Ok(&d * &GaussianRational::from_ratio(1, 2))
    }

    /// Floating-point evaluation at a real `s`; only used for numeric cross-checks.
    pub fn eval_f64(&self, s: f64) -> Complex64 {
        let x = Complex64::new(s, 0.0);
        self.num.eval_complex(x) / self.den.eval_complex(x) * s.powi(self.shift)
    }

    /// Laurent terms `(power of s, coefficient)` in descending power, or `None`
    /// if the denominator is nontrivial.
    pub fn laurent_terms(&self) -> Option<Vec<(i32, GaussianRational)>> {
        if !self.den.is_one() {
            return None;
        }
        Some(laurent_terms(self.shift, &self.num))
    }
}

fn laurent_terms(shift: i32, p: &Poly) -> Vec<(i32, GaussianRational)> {
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (shift + j as i32, c.clone()))
        .collect()
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::from_gaussian(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// `q`-power of `s^n`: `q`, `q^3`, `q^-1`, `q^(1/2)`, `q^(-3/2)`.
pub(crate) fn fmt_q_power(n: i32) -> String {
    if n % 2 == 0 {
        match n / 2 {
            1 => "q".to_string(),
            m => format!("q^{m}"),
        }
    } else {
        format!("q^({n}/2)")
    }
}

fn fmt_term(power: i32, c: &GaussianRational) -> String {
    if power == 0 {
        return c.to_string();
    }
    let mono = fmt_q_power(power);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

fn fmt_sum(terms: &[(i32, GaussianRational)]) -> String {
    let mut out = String::new();
    for (idx, (p, c)) in terms.iter().enumerate() {
        let t = fmt_term(*p, c);
        if idx == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders `q`-centrically with descending powers of `s`. The output is valid
/// input for the expression parser.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_sum(&laurent_terms(self.shift, &self.num));
        if self.den.is_one() {
            write!(f, "{num}")
        } else {
            let den = fmt_sum(&laurent_terms(0, &self.den));
            write!(f, "({num})/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Scalar {
        Scalar::s_pow(1)
    }

    fn sinv() -> Scalar {
        Scalar::s_pow(-1)
    }

    #[test]
    fn additive_inverse() {
        assert!((&s() + &(-&s())).is_zero());
        assert_eq!(&Scalar::from_ratio(1, 2) + &Scalar::from_ratio(1, 3), Scalar::from_ratio(5, 6));
    }

    #[test]
    fn gcd_reduction() {
        // (s² − 1)/(s − 1) reduces to s + 1
        let num = &(&s() * &s()) - &Scalar::one();
        let den = &s() - &Scalar::one();
        let x = num.div(&den).unwrap();
        assert_eq!(&x + &Scalar::zero(), &s() + &Scalar::one());
        assert!(x.is_laurent());
    }

    #[test]
    fn mul_and_div() {
        let a = &s() - &sinv();
        let b = &s() + &sinv();
        assert_eq!(&a * &b, Scalar::s_pow(2).sub(&Scalar::s_pow(-2)));
        let q = Scalar::s_pow(2).sub(&Scalar::s_pow(-2)).div(&a).unwrap();
        assert_eq!(q, b);
        assert_eq!(&q * &a, Scalar::s_pow(2).sub(&Scalar::s_pow(-2)));
        assert_eq!(&a * &Scalar::one(), a);
        assert_eq!(Scalar::one().div(&Scalar::zero()), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let x = &Scalar::i() * &s();
        assert_eq!(x.conjugate(), (&Scalar::i() * &s()).neg());
        let y = Scalar::s_pow(2).add(&Scalar::one());
        assert_eq!(y.conjugate(), y);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn evaluation_at_one() {
        let x = Scalar::s_pow(2).sub(&Scalar::s_pow(-2)).div(&(&s() - &sinv())).unwrap();
        assert_eq!(x.eval_at_one().unwrap(), GaussianRational::from_int(2));
        assert_eq!(Scalar::s_pow(3).eval_at_one().unwrap(), GaussianRational::one());
        let pole = Scalar::one().div(&(&s() - &Scalar::one())).unwrap();
        assert_eq!(pole.eval_at_one(), Err(CoeffError::Pole));
    }

    #[test]
    fn limits_over_ln_q() {
        let x = Scalar::s_pow(-2).sub(&Scalar::one());
        assert_eq!(x.limit_div_lnq().unwrap(), GaussianRational::from_int(-1));
        assert_eq!(Scalar::zero().limit_div_lnq().unwrap(), GaussianRational::zero());
        let y = Scalar::s_pow(2).sub(&Scalar::one());
        assert_eq!(y.limit_div_lnq().unwrap(), GaussianRational::one());
        assert_eq!(Scalar::one().limit_div_lnq(), Err(CoeffError::Divergent));
        // numeric cross-check for the first example
        for q in [1.0f64 + 1e-6, 1.0 - 1e-6] {
            let v = x.eval_f64(q.sqrt()).re / q.ln();
            assert!((v - (-1.0)).abs() < 1e-4);
        }
    }

    #[test]
    fn derivative_of_rational_function() {
        // d/ds [1/(s-1)] = -1/(s-1)^2
        let d = &s() - &Scalar::one();
        let x = Scalar::one().div(&d).unwrap();
        let expected = Scalar::from_int(-1).div(&(&d * &d)).unwrap();
        assert_eq!(x.derivative(), expected);
        // d/ds s^{-2} = -2 s^{-3}
        assert_eq!(Scalar::s_pow(-2).derivative(), &Scalar::from_int(-2) * &Scalar::s_pow(-3));
    }

    #[test]
    fn display_is_q_centric() {
        assert_eq!(Scalar::q().to_string(), "q");
        assert_eq!(s().to_string(), "q^(1/2)");
        assert_eq!(Scalar::q().sub(&Scalar::q_pow(-1)).to_string(), "q - q^-1");
        assert_eq!(Scalar::s_pow(-3).neg().to_string(), "-q^(-3/2)");
        let x = Scalar::one().div(&Scalar::q().sub(&Scalar::q_pow(-1))).unwrap();
        assert_eq!(x.to_string(), "(q)/(q^2 - 1)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
