//! The spherical Hecke algebra inside the Iwahori-Hecke algebra.
//!
//! `m_lambda` is the sum of `T_x` over the double coset `W_f t_lambda W_f`.
//! Measures are normalized by `vol(Iw) = 1`: the averaging map is
//! `h -> 1_K h` with `1_K = m_0`, and the spherical product divides the
//! Iwahori product once by the Poincare polynomial `P_W(q)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Map, Value};

use crate::affine_weyl::AffineWeylGroup;
use crate::bernstein::BernsteinCenter;
use crate::error::{HeckeError, Result};
use crate::hecke::{split_top_level_terms, HeckeElement};
use crate::laurent::LaurentPoly;
use crate::root_datum::Coweight;

/// A finite combination of the `m_lambda`, `lambda` dominant.
#[derive(Clone)]
pub struct SphericalElement {
    group: AffineWeylGroup,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl SphericalElement {
    pub fn zero(group: &AffineWeylGroup) -> Self {
        Self {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `m_0`, the unit for the spherical product.
    pub fn one(group: &AffineWeylGroup) -> Self {
        Self::basis(group, &Coweight::zero(group.datum().dim)).unwrap()
    }

    pub fn basis(group: &AffineWeylGroup, lambda: &Coweight) -> Result<Self> {
        Self::from_terms(group, [(*lambda, LaurentPoly::one())])
    }

    pub fn from_terms<I>(group: &AffineWeylGroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coweight, LaurentPoly)>,
    {
        let d = group.datum();
        let mut map: BTreeMap<Coweight, LaurentPoly> = BTreeMap::new();
        for (lambda, c) in terms {
            d.check_dim(&lambda)?;
            if !d.is_dominant(&lambda) {
                return Err(HeckeError::NotDominant(lambda.to_string()));
            }
            let e = map.entry(lambda).or_default();
            *e += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self {
            group: group.clone(),
            terms: map,
        })
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Coweight, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Coweight) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(l, p)| (*l, p * c))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        out
    }

    /// Largest `translation_length` in the support.
    pub fn max_length(&self) -> usize {
        let d = self.group.datum();
        self.terms
            .keys()
            .map(|l| d.translation_length(l))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients at `q = 1`.
    pub fn at_q_one(&self) -> Result<BTreeMap<Coweight, i64>> {
        let mut out = BTreeMap::new();
        for (l, c) in &self.terms {
            let n = c.at_q_one()?;
            if n != 0 {
                out.insert(*l, n);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut terms = Map::new();
        for (l, c) in &self.terms {
            let key: Vec<String> = l.coords().iter().map(|x| x.to_string()).collect();
            terms.insert(key.join(","), json!(c.to_pairs()));
        }
        json!({ "datum": self.group.label().as_str(), "terms": terms })
    }

    pub fn from_json(group: &AffineWeylGroup, value: &Value) -> Result<Self> {
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
        for (key, pairs) in terms {
            let lambda: Coweight = key.parse()?;
            let pairs: Vec<[i64; 2]> = serde_json::from_value(pairs.clone())?;
            out.push((lambda, LaurentPoly::from_pairs(&pairs)?));
        }
        Self::from_terms(group, out)
    }

    /// Parses `m[1,0] + (q-1)*m[0,0]` or the JSON form.
    pub fn parse(group: &AffineWeylGroup, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let v: Value = serde_json::from_str(trimmed)?;
            return Self::from_json(group, &v);
        }
        let mut out = Vec::new();
        for (negative, term) in split_top_level_terms(trimmed)? {
            let i = term
                .find("m[")
                .ok_or_else(|| HeckeError::Parse(format!("expected `m[...]` in `{term}`")))?;
            let close = term[i..]
                .find(']')
                .map(|j| i + j)
                .ok_or_else(|| HeckeError::Parse(format!("missing `]` in `{term}`")))?;
            if !term[close + 1..].trim().is_empty() {
                return Err(HeckeError::Parse(format!("trailing input in `{term}`")));
            }
            let lambda: Coweight = term[i + 2..close].parse()?;
            let head = term[..i].trim();
            let coeff = match head {
                "" => LaurentPoly::one(),
                "-" => LaurentPoly::constant(-1),
                _ => head
                    .strip_suffix('*')
                    .ok_or_else(|| {
                        HeckeError::Parse(format!("expected `*` before `m[` in `{term}`"))
                    })?
                    .parse::<LaurentPoly>()?,
            };
            out.push((lambda, if negative { -coeff } else { coeff }));
        }
        Self::from_terms(group, out)
    }
}

impl PartialEq for SphericalElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.label() == other.group.label() && self.terms == other.terms
    }
}

impl Eq for SphericalElement {}

impl fmt::Display for SphericalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d = self.group.datum();
        let mut keys: Vec<&Coweight> = self.terms.keys().collect();
        keys.sort_by_key(|l| (std::cmp::Reverse(d.translation_length(l)), **l));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|l| {
                let c = &self.terms[l];
                let coords: Vec<String> = l.coords().iter().map(|x| x.to_string()).collect();
                let b = format!("m[{}]", coords.join(","));
                if c.is_one() {
                    b
                } else if c.num_terms() == 1 {
                    format!("{c}*{b}")
                } else {
                    format!("({c})*{b}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SphericalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SphericalElement[{}]({self})", self.group.label())
    }
}

impl Add for &SphericalElement {
    type Output = SphericalElement;

    /// Panics when the operands belong to different data.
    fn add(self, rhs: &SphericalElement) -> SphericalElement {
        assert_eq!(
            self.group.label(),
            rhs.group.label(),
            "adding elements of different data"
        );
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            *out.terms.entry(*l).or_default() += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl Neg for &SphericalElement {
    type Output = SphericalElement;
    fn neg(self) -> SphericalElement {
        self.scale(&LaurentPoly::constant(-1))
    }
}

impl Sub for &SphericalElement {
    type Output = SphericalElement;
    fn sub(self, rhs: &SphericalElement) -> SphericalElement {
        self + &(-rhs)
    }
}

/// `P_W(q) = sum_{w in W_f} q^{l(w)}`.
pub fn poincare_polynomial(group: &AffineWeylGroup) -> LaurentPoly {
    LaurentPoly::from_q_coeffs(&group.datum().poincare_coefficients())
}

/// `1_K = sum_{w in W_f} T_w`.
pub fn unit_k(group: &AffineWeylGroup) -> HeckeElement {
    let n = group.datum().weyl.order() as u8;
    HeckeElement::from_terms(group, (0..n).map(|w| (group.finite(w), LaurentPoly::one())))
}

/// Realizes a spherical element inside the Iwahori-Hecke algebra.
pub fn embed(c: &SphericalElement, cutoff: usize) -> Result<HeckeElement> {
    let g = &c.group;
    let length = c.max_length();
    if length > cutoff {
        return Err(HeckeError::CutoffExceeded { length, cutoff });
    }
    let mut terms = Vec::new();
    for (lambda, coeff) in &c.terms {
        for x in g.coset_elements(lambda)? {
            terms.push((x, coeff.clone()));
        }
    }
    Ok(HeckeElement::from_terms(g, terms))
}

/// Reads off the `m`-expansion of a bi-`W_f`-invariant element, failing if
/// some double coset carries non-constant coefficients.
pub fn recognize(h: &HeckeElement) -> Result<SphericalElement> {
    let g = h.group();
    let cosets: BTreeSet<Coweight> = h.support().map(|x| g.double_coset(x)).collect();
    let mut out = Vec::new();
    for lambda in cosets {
        let elems = g.coset_elements(&lambda)?;
        let c = h.coeff(&elems[0]);
        if let Some(bad) = elems.iter().find(|x| h.coeff(x) != c) {
            return Err(HeckeError::NotBiInvariant(format!(
                "coefficients {} at {} and {} at {} in the double coset of {lambda}",
                c,
                g.basis_label(&elems[0]),
                h.coeff(bad),
                g.basis_label(bad)
            )));
        }
        out.push((lambda, c));
    }
    SphericalElement::from_terms(g, out)
}

/// The averaging map `h -> 1_K h`, expressed in the `m`-basis.
pub fn pi_map(h: &HeckeElement) -> Result<SphericalElement> {
    recognize(&average(h))
}

/// `1_K h` in the `T`-basis.
pub fn average(h: &HeckeElement) -> HeckeElement {
    let g = h.group();
    let weyl = &g.datum().weyl;
    let mut acc = HeckeElement::zero(g);
    for e in &weyl.elements {
        let mut t = h.clone();
        for &s in e.word.iter().rev() {
            t = t.mul_simple_left(s);
        }
        acc = &acc + &t;
    }
    acc
}

/// Spherical convolution: `embed(c) embed(c') / P_W(q)`.
pub fn sph_conv(
    c: &SphericalElement,
    c2: &SphericalElement,
    cutoff: usize,
) -> Result<SphericalElement> {
    if c.group.label() != c2.group.label() {
        return Err(HeckeError::DatumMismatch {
            left: c.group.label().to_string(),
            right: c2.group.label().to_string(),
        });
    }
    let prod = embed(c, cutoff)?.mul(&embed(c2, cutoff)?)?;
    let pw = poincare_polynomial(&c.group);
    let mut terms = Vec::with_capacity(prod.len());
    for (x, p) in prod.terms() {
        let q = p
            .exact_div(&pw)
            .map_err(|e| HeckeError::Convention(format!("division by P_W(q) failed: {e}")))?;
        terms.push((*x, q));
    }
    recognize(&HeckeElement::from_terms(&c.group, terms))
        .map_err(|e| HeckeError::Internal(format!("spherical product left the m-span: {e}")))
}

/// Rows `pi(z_lambda)` of the Satake matrix against the `m`-basis.
#[derive(Clone, Debug)]
pub struct SatakeMatrix {
    pub rows: Vec<(Coweight, SphericalElement)>,
}

impl SatakeMatrix {
    pub fn diagonal(&self) -> Vec<(Coweight, LaurentPoly)> {
        self.rows.iter().map(|(l, r)| (*l, r.coeff(l))).collect()
    }
}

impl fmt::Display for SatakeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, row) in &self.rows {
            writeln!(f, "pi(z{l}) = {row}")?;
        }
        Ok(())
    }
}

/// Computes the Satake matrix up to the center's cutoff and certifies that
/// it is dominance-triangular with unit diagonal.
pub fn satake_matrix(center: &BernsteinCenter) -> Result<SatakeMatrix> {
    let g = center.group();
    let d = g.datum();
    let mut rows = Vec::new();
    for lambda in d.dominant_coweights(center.cutoff()) {
        let row = center.pi_of_z(&lambda)?;
        for mu in row.terms().keys() {
            if !d.dominance_leq(mu, &lambda)? {
                return Err(HeckeError::Convention(format!(
                    "pi(z{lambda}) has m{mu} outside the dominance ideal"
                )));
            }
        }
        let diag = row.coeff(&lambda);
        if !diag.is_unit() {
            return Err(HeckeError::Convention(format!(
                "diagonal entry {diag} of pi(z{lambda}) is not a unit"
            )));
        }
        rows.push((lambda, (*row).clone()));
    }
    Ok(SatakeMatrix { rows })
}
