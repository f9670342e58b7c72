//! The Iwahori-Hecke algebra of `W_ext` over `Z[v, v^-1]` in the `T`-basis.
//!
//! Convention: `T_s^2 = (q - 1) T_s + q`, `T_x T_y = T_{xy}` whenever
//! lengths add, and length-zero elements are units with `T_w^-1 = T_{w^-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Map, Value};

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup, Simple};
use crate::error::{HeckeError, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone)]
pub struct HeckeElement {
    group: AffineWeylGroup,
    terms: BTreeMap<AffineWeylElement, LaurentPoly>,
}

fn accumulate(
    terms: &mut BTreeMap<AffineWeylElement, LaurentPoly>,
    x: AffineWeylElement,
    c: LaurentPoly,
) {
    if c.is_zero() {
        return;
    }
    match terms.entry(x) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl HeckeElement {
    pub fn zero(group: &AffineWeylGroup) -> Self {
        Self {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &AffineWeylGroup) -> Self {
        Self::basis(group, group.identity())
    }

    pub fn basis(group: &AffineWeylGroup, x: AffineWeylElement) -> Self {
        Self::monomial(group, x, LaurentPoly::one())
    }

    pub fn monomial(group: &AffineWeylGroup, x: AffineWeylElement, c: LaurentPoly) -> Self {
        Self::from_terms(group, [(x, c)])
    }

    pub fn from_terms<I>(group: &AffineWeylGroup, terms: I) -> Self
    where
        I: IntoIterator<Item = (AffineWeylElement, LaurentPoly)>,
    {
        let mut map = BTreeMap::new();
        for (x, c) in terms {
            assert_eq!(x.label(), group.label(), "element from another datum");
            accumulate(&mut map, x, c);
        }
        Self {
            group: group.clone(),
            terms: map,
        }
    }

    /// `T_s` for a simple affine reflection.
    pub fn simple(group: &AffineWeylGroup, s: Simple) -> Self {
        Self::basis(group, group.simple(s))
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<AffineWeylElement, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, x: &AffineWeylElement) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &AffineWeylElement> {
        self.terms.keys()
    }

    fn same_datum(&self, other: &HeckeElement) -> Result<()> {
        if self.group.label() != other.group.label() {
            return Err(HeckeError::DatumMismatch {
                left: self.group.label().to_string(),
                right: other.group.label().to_string(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(&self.group);
        }
        Self {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(x, p)| (*x, p * c)).collect(),
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(x, p)| (*x, p.shift(k))).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_terms(&self.group, self.terms.iter().map(|(x, p)| (*x, f(p))))
    }

    /// `self * T_s`.
    pub fn mul_simple_right(&self, s: Simple) -> Self {
        let g = &self.group;
        let qm1 = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        let mut out = BTreeMap::new();
        for (x, c) in &self.terms {
            let xs = g.mul_simple(x, s);
            if g.is_descent(x, s) {
                accumulate(&mut out, *x, c * &qm1);
                accumulate(&mut out, xs, c.shift(2));
            } else {
                accumulate(&mut out, xs, c.clone());
            }
        }
        Self {
            group: g.clone(),
            terms: out,
        }
    }

    /// `T_s * self`.
    pub fn mul_simple_left(&self, s: Simple) -> Self {
        let g = &self.group;
        let qm1 = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        let mut out = BTreeMap::new();
        for (x, c) in &self.terms {
            let sx = g.simple_mul(s, x);
            if g.is_left_descent(x, s) {
                accumulate(&mut out, *x, c * &qm1);
                accumulate(&mut out, sx, c.shift(2));
            } else {
                accumulate(&mut out, sx, c.clone());
            }
        }
        Self {
            group: g.clone(),
            terms: out,
        }
    }

    /// `self * T_s^-1`, using `T_s^-1 = q^-1 T_s + (q^-1 - 1)`.
    pub fn mul_simple_inverse_right(&self, s: Simple) -> Self {
        let g = &self.group;
        let mut out = BTreeMap::new();
        let c0 = LaurentPoly::from_terms([(-2, 1), (0, -1)]);
        for (x, c) in &self.terms {
            let xs = g.mul_simple(x, s);
            if g.is_descent(x, s) {
                // T_x = T_{xs} T_s
                accumulate(&mut out, xs, c.clone());
            } else {
                accumulate(&mut out, xs, c.shift(-2));
                accumulate(&mut out, *x, c * &c0);
            }
        }
        Self {
            group: g.clone(),
            terms: out,
        }
    }

    /// `self * T_w` for `w` of length zero.
    pub fn mul_length_zero_right(&self, w: &AffineWeylElement) -> Self {
        debug_assert_eq!(self.group.length(w), 0);
        Self {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (self.group.mul(x, w), c.clone()))
                .collect(),
        }
    }

    /// `T_w * self` for `w` of length zero.
    pub fn mul_length_zero_left(&self, w: &AffineWeylElement) -> Self {
        debug_assert_eq!(self.group.length(w), 0);
        Self {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (self.group.mul(w, x), c.clone()))
                .collect(),
        }
    }

    /// `self * T_y`, walking a reduced word of `y`.
    pub fn mul_basis_right(&self, y: &AffineWeylElement) -> Self {
        let g = &self.group;
        let word = g.reduced_word(y);
        let mut acc = self.clone();
        for &s in &word.letters {
            acc = acc.mul_simple_right(s);
        }
        if word.omega != 0 {
            acc = acc.mul_length_zero_right(&g.omega_power(word.omega).unwrap());
        }
        acc
    }

    /// `self * T_y^-1`.
    pub fn mul_basis_inverse_right(&self, y: &AffineWeylElement) -> Self {
        let g = &self.group;
        let word = g.reduced_word(y);
        let mut acc = self.clone();
        if word.omega != 0 {
            acc = acc.mul_length_zero_right(&g.omega_power(-word.omega).unwrap());
        }
        for &s in word.letters.iter().rev() {
            acc = acc.mul_simple_inverse_right(s);
        }
        acc
    }

    /// Convolution product.
    pub fn mul(&self, rhs: &HeckeElement) -> Result<HeckeElement> {
        self.same_datum(rhs)?;
        let mut out = BTreeMap::new();
        for (y, c) in &rhs.terms {
            for (x, p) in self.mul_basis_right(y).terms {
                accumulate(&mut out, x, p * c);
            }
        }
        Ok(Self {
            group: self.group.clone(),
            terms: out,
        })
    }

    /// `T_x^-1`.
    pub fn invert_basis(group: &AffineWeylGroup, x: &AffineWeylElement) -> HeckeElement {
        // x = s_1 ... s_m omega^k, so T_x^-1 = T_{omega^-k} T_{s_m}^-1 ... T_{s_1}^-1
        Self::one(group).mul_basis_inverse_right(x)
    }

    /// The bar involution: `v -> v^-1` on coefficients and
    /// `T_w -> T_{w^-1}^-1`.
    pub fn bar(&self) -> HeckeElement {
        let g = &self.group;
        let mut out = BTreeMap::new();
        for (x, c) in &self.terms {
            let inv = Self::invert_basis(g, &g.inverse(x));
            let cb = c.bar();
            for (y, p) in inv.terms {
                accumulate(&mut out, y, p * &cb);
            }
        }
        Self {
            group: g.clone(),
            terms: out,
        }
    }

    pub fn commutator(&self, other: &HeckeElement) -> Result<HeckeElement> {
        Ok(&self.mul(other)? - &other.mul(self)?)
    }

    pub fn commutes_with(&self, other: &HeckeElement) -> Result<bool> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// Image in the group ring of `W_ext` at `q = 1`.
    pub fn at_q_one(&self) -> Result<BTreeMap<AffineWeylElement, i64>> {
        let mut out = BTreeMap::new();
        for (x, c) in &self.terms {
            let n = c.at_q_one()?;
            if n != 0 {
                out.insert(*x, n);
            }
        }
        Ok(out)
    }

    /// Terms sorted for display: decreasing length, then label.
    pub fn sorted_terms(&self) -> Vec<(String, usize, &LaurentPoly)> {
        let mut out: Vec<(String, usize, &LaurentPoly)> = self
            .terms
            .iter()
            .map(|(x, c)| (self.group.basis_label(x), self.group.length(x), c))
            .collect();
        out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn to_json(&self) -> Value {
        let mut terms = Map::new();
        for (label, _, c) in self.sorted_terms() {
            terms.insert(label, json!(c.to_pairs()));
        }
        json!({ "datum": self.group.label().as_str(), "terms": terms })
    }

    pub fn from_json(group: &AffineWeylGroup, value: &Value) -> Result<HeckeElement> {
        if let Some(d) = value.get("datum").and_then(Value::as_str) {
            if d.parse::<crate::root_datum::DatumLabel>()? != group.label() {
                return Err(HeckeError::DatumMismatch {
                    left: group.label().to_string(),
                    right: d.to_string(),
                });
            }
        }
        let terms = value
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| HeckeError::Parse("expected an object with `terms`".into()))?;
        let mut out = Vec::new();
        for (label, pairs) in terms {
            let x = group.parse_element(label)?;
            let pairs: Vec<[i64; 2]> = serde_json::from_value(pairs.clone())?;
            out.push((x, LaurentPoly::from_pairs(&pairs)?));
        }
        Ok(Self::from_terms(group, out))
    }

    /// Parses `(q-1)*T[s0] + q*T[e] - T[s1*omega^1]`. A term without `T[...]`
    /// is a multiple of `T[e]`.
    pub fn parse(group: &AffineWeylGroup, text: &str) -> Result<HeckeElement> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let v: Value = serde_json::from_str(trimmed)?;
            return Self::from_json(group, &v);
        }
        let mut out = Vec::new();
        for (negative, term) in split_top_level_terms(trimmed)? {
            let (coeff, x) = match term.find("T[") {
                None => (term.parse::<LaurentPoly>()?, group.identity()),
                Some(i) => {
                    let close = term[i..]
                        .find(']')
                        .map(|j| i + j)
                        .ok_or_else(|| HeckeError::Parse(format!("missing `]` in `{term}`")))?;
                    if !term[close + 1..].trim().is_empty() {
                        return Err(HeckeError::Parse(format!("trailing input in `{term}`")));
                    }
                    let x = group.parse_element(&term[i + 2..close])?;
                    let head = term[..i].trim();
                    let coeff = if head.is_empty() {
                        LaurentPoly::one()
                    } else if head == "-" {
                        LaurentPoly::constant(-1)
                    } else {
                        let c = head.strip_suffix('*').ok_or_else(|| {
                            HeckeError::Parse(format!("expected `*` before `T[` in `{term}`"))
                        })?;
                        c.parse::<LaurentPoly>()?
                    };
                    (coeff, x)
                }
            };
            out.push((x, if negative { -coeff } else { coeff }));
        }
        Ok(Self::from_terms(group, out))
    }
}

/// Splits at `+`/`-` outside brackets that are binary operators.
pub(crate) fn split_top_level_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut last_sig: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let binary = matches!(ch, '+' | '-')
            && depth == 0
            && !matches!(
                last_sig,
                None | Some('^') | Some('*') | Some('+') | Some('-')
            );
        if binary {
            out.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if matches!(ch, '+' | '-') && depth == 0 && cur.trim().is_empty() {
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            last_sig = Some(ch);
        }
    }
    if depth != 0 {
        return Err(HeckeError::Parse(format!(
            "unbalanced brackets in `{text}`"
        )));
    }
    out.push((negative, cur));
    if out.iter().any(|(_, t)| t.trim().is_empty()) {
        if out.len() == 1 && text.trim() == "0" {
            return Ok(Vec::new());
        }
        return Err(HeckeError::Parse(format!("empty term in `{text}`")));
    }
    Ok(out
        .into_iter()
        .filter(|(_, t)| t.trim() != "0")
        .map(|(n, t)| (n, t.trim().to_string()))
        .collect())
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.label() == other.group.label() && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(label, _, c)| {
                if c.is_one() {
                    format!("T[{label}]")
                } else if c.num_terms() == 1 {
                    format!("{c}*T[{label}]")
                } else {
                    format!("({c})*T[{label}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement[{}]({self})", self.group.label())
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;

    /// Panics when the operands belong to different data.
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        self.same_datum(rhs)
            .expect("adding elements of different data");
        let mut terms = self.terms.clone();
        for (x, c) in &rhs.terms {
            accumulate(&mut terms, *x, c.clone());
        }
        HeckeElement {
            group: self.group.clone(),
            terms,
        }
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;

    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &(-rhs)
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;

    fn neg(self) -> HeckeElement {
        HeckeElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(x, c)| (*x, -c)).collect(),
        }
    }
}

impl Add for HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: HeckeElement) -> HeckeElement {
        &self + &rhs
    }
}

impl Sub for HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: HeckeElement) -> HeckeElement {
        &self - &rhs
    }
}

impl Neg for HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        -&self
    }
}
