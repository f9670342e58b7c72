//! Integer Laurent polynomials in `v`, with `q = v^2`.
//!
//! Storage is dense: a lowest exponent and a coefficient vector. The
//! canonical form has nonzero first and last coefficients, and the zero
//! polynomial has an empty vector, so structural equality is equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HeckeError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i32, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn q() -> Self {
        Self::monomial(2, 1)
    }

    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(2 * exp, 1)
    }

    /// Builds a polynomial from `(exponent in v, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let terms: Vec<(i32, i64)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|&(e, _)| e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|&(e, _)| e).max().unwrap();
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalized(low, coeffs)
    }

    /// Polynomial in `q` from coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (2 * i as i32, c)))
    }

    fn normalized(mut low: i32, mut coeffs: Vec<i64>) -> Self {
        let Some(first) = coeffs.iter().position(|&c| c != 0) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        low += first as i32;
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent in `v`, `None` for zero.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent in `v`, `None` for zero.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let idx = exp - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// `Some((exp, c))` when the polynomial is a single term `c * v^exp`.
    pub fn as_monomial(&self) -> Option<(i32, i64)> {
        (self.coeffs.len() == 1).then(|| (self.low, self.coeffs[0]))
    }

    /// A unit of `Z[v, v^-1]`, i.e. `±v^k`.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((_, c)) if c == 1 || c == -1)
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Only even powers of `v`, i.e. the polynomial lies in `Z[q, q^-1]`.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// All exponents share one parity. Zero counts as true.
    pub fn has_constant_parity(&self) -> bool {
        let mut it = self.terms().map(|(e, _)| e.rem_euclid(2));
        match it.next() {
            None => true,
            Some(p) => it.all(|x| x == p),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(high) => Self {
                low: -high,
                coeffs: self.coeffs.iter().rev().copied().collect(),
            },
        }
    }

    /// Exact quotient `self / d` in `Z[v, v^-1]`.
    ///
    /// Fails with the remainder when `d` does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(HeckeError::Parse("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Both sides are v^low times a polynomial with nonzero constant term,
        // so division reduces to ordinary long division in Z[v].
        let dlead = *d.coeffs.last().unwrap();
        let dlen = d.coeffs.len();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; rem.len().saturating_sub(dlen) + 1];
        if rem.len() < dlen {
            return Err(HeckeError::InexactDivision {
                remainder: self.clone(),
            });
        }
        for top in (dlen - 1..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            if c % dlead != 0 {
                return Err(HeckeError::InexactDivision {
                    remainder: Self::normalized(self.low, rem),
                });
            }
            let f = c / dlead;
            let base = top + 1 - dlen;
            quot[base] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[base + j] -= f * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(HeckeError::InexactDivision {
                remainder: Self::normalized(self.low, rem),
            });
        }
        Ok(Self::normalized(self.low - d.low, quot))
    }

    /// Evaluates at `q = c`. Requires even exponents in `v`.
    pub fn specialize_q(&self, c: i64) -> Result<Ratio<i64>> {
        if !self.is_even() {
            return Err(HeckeError::OddExponent(self.clone()));
        }
        if c == 0 && self.min_exp().is_some_and(|e| e < 0) {
            return Err(HeckeError::PoleAtZero(self.clone()));
        }
        let base = Ratio::from_integer(c);
        let mut acc = Ratio::from_integer(0);
        for (e, coeff) in self.terms() {
            acc += Ratio::from_integer(coeff) * base.pow(e / 2);
        }
        Ok(acc)
    }

    /// Evaluates at `q = 1` as an integer.
    pub fn at_q_one(&self) -> Result<i64> {
        if !self.is_even() {
            return Err(HeckeError::OddExponent(self.clone()));
        }
        Ok(self.coeffs.iter().sum())
    }

    /// Coefficients of `q^0, q^1, ...` for a polynomial in `Z[q]`.
    pub fn q_coeffs(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if !self.is_even() || self.low < 0 {
            return None;
        }
        let high = self.max_exp().unwrap();
        Some((0..=high / 2).map(|k| self.coeff(2 * k)).collect())
    }

    /// Degree in `q` of an even polynomial, `None` for zero.
    pub fn q_degree(&self) -> Option<i32> {
        self.max_exp().map(|e| e.div_euclid(2))
    }

    fn add_impl(&self, rhs: &LaurentPoly, sign: i64) -> LaurentPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.scale(sign);
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += sign * c;
        }
        Self::normalized(low, coeffs)
    }

    fn mul_impl(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::normalized(self.low + rhs.low, coeffs)
    }

    /// Serialization form: `[exponent, coefficient]` pairs in `v`.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.terms().map(|(e, c)| [e as i64, c]).collect()
    }

    pub fn from_pairs(pairs: &[[i64; 2]]) -> Result<Self> {
        let mut terms = Vec::with_capacity(pairs.len());
        for &[e, c] in pairs {
            let e = i32::try_from(e).map_err(|_| HeckeError::Parse(format!("exponent {e}")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_pairs().cmp(&other.to_pairs())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a
    .add_impl(b, 1));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a
    .add_impl(b, -1));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_impl(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, -1);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers; uses `q` when every exponent is even.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let in_q = self.is_even();
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (var, exp) = if in_q { ("q", e / 2) } else { ("v", e) };
            let mono = match exp {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{exp}"),
            };
            let abs = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { "-" } else { "+" })?;
            }
            match (abs, mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => f.write_str(&mono)?,
                (_, false) => write!(f, "{abs}*{mono}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = HeckeError;

    /// Grammar: sums and products of integers, `v`, `q` and parenthesized
    /// subexpressions, with `^` taking a signed integer exponent.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = PolyParser::new(s);
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> HeckeError {
        HeckeError::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.signed_int()?;
        let exp = i32::try_from(exp).map_err(|_| self.error("exponent out of range"))?;
        if exp >= 0 {
            let mut out = LaurentPoly::one();
            for _ in 0..exp {
                out = out * &base;
            }
            return Ok(out);
        }
        match base.as_monomial() {
            Some((e, 1)) => Ok(LaurentPoly::v_pow(e * exp)),
            _ => Err(self.error("negative power of a non-monomial")),
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                Ok(LaurentPoly::v())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(LaurentPoly::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(self.unsigned_int()?)),
            _ => Err(self.error("expected integer, `v`, `q` or `(`")),
        }
    }

    fn unsigned_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected integer"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.unsigned_int()?;
        Ok(if neg { -n } else { n })
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        LaurentPoly::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn square_of_v_plus_inverse() {
        let x = p("v + v^-1");
        assert_eq!(&x * &x, p("v^2 + 2 + v^-2"));
        assert_eq!(&x * &LaurentPoly::one(), x);
    }

    #[test]
    fn q_is_v_squared() {
        assert_eq!(p("(q - 1) + 1"), p("q"));
        assert_eq!(p("q"), LaurentPoly::v_pow(2));
        assert_eq!(
            p("3*v^-2 + 1 + q^2"),
            LaurentPoly::from_terms([(-2, 3), (0, 1), (4, 1)])
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("q^2 - 1").exact_div(&p("q - 1")).unwrap(), p("q + 1"));
        let m = p("3*v^-3 + v + 7");
        let d = p("1 + q");
        assert_eq!((&m * &d).exact_div(&d).unwrap(), m);
        match p("q").exact_div(&p("q - 1")) {
            Err(HeckeError::InexactDivision { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected inexact division, got {other:?}"),
        }
        assert!(p("2*q").exact_div(&p("3")).is_err());
        assert_eq!(p("v^-5").exact_div(&p("v^2")).unwrap(), p("v^-7"));
    }

    #[test]
    fn bar_and_specialization() {
        assert_eq!(p("v^2 + 3").bar(), p("v^-2 + 3"));
        assert_eq!(p("q + 1").specialize_q(1).unwrap(), Ratio::from_integer(2));
        assert_eq!(p("q").specialize_q(7).unwrap(), Ratio::from_integer(7));
        assert_eq!(p("q^-1").specialize_q(2).unwrap(), Ratio::new(1, 2));
        assert!(matches!(
            p("v").specialize_q(1),
            Err(HeckeError::OddExponent(_))
        ));
        assert!(matches!(
            p("q^-1").specialize_q(0),
            Err(HeckeError::PoleAtZero(_))
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("q - 1").to_string(), "q-1");
        assert_eq!(p("v^2 + 2 + v^-2").to_string(), "q+2+q^-1");
        assert_eq!(p("-v^3 + 2*v^-1").to_string(), "-v^3+2*v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-1 - q").to_string(), "-q-1");
    }

    #[test]
    fn parse_errors() {
        assert!("q +".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("(1+q)^-1".parse::<LaurentPoly>().is_err());
        assert!("1 2".parse::<LaurentPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), a.bar() * b.bar());
        }

        #[test]
        fn division_undoes_multiplication(a in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!((&a * &d).exact_div(&d).unwrap(), a);
        }

        #[test]
        fn display_parses_back(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
