//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hecke_core::{
    AffineWeylElement, AffineWeylGroup, Coweight, HeckeElement, LaurentPoly, RootDatum,
};

/// Weyl orbit by closure under `lambda -> lambda - <lambda, a_i> a_i^vee`.
pub fn orbit(d: &RootDatum, lambda: &Coweight) -> BTreeSet<Coweight> {
    let mut seen = BTreeSet::from([*lambda]);
    let mut stack = vec![*lambda];
    while let Some(x) = stack.pop() {
        for (a, c) in d.simple_roots.iter().zip(&d.simple_coroots) {
            let y = x - c.scale(x.pair(a));
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

fn dominant(d: &RootDatum, x: &Coweight) -> bool {
    d.simple_roots.iter().all(|a| x.pair(a) >= 0)
}

/// `o_a o_b` in the group ring of `X_*`, written in orbit sums.
pub fn orbit_product(d: &RootDatum, a: &Coweight, b: &Coweight) -> BTreeMap<Coweight, i64> {
    let mut prod: BTreeMap<Coweight, i64> = BTreeMap::new();
    for x in orbit(d, a) {
        for y in orbit(d, b) {
            *prod.entry(x + y).or_default() += 1;
        }
    }
    prod.into_iter()
        .filter(|(k, n)| *n != 0 && dominant(d, k))
        .collect()
}

/// Negative-exponent part of a Laurent polynomial.
fn negative_part(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().filter(|(e, _)| *e < 0))
}

/// KL polynomials `P_{y,w}` of the identity component with `l(w) <= cutoff`,
/// from the bar-invariant unitriangular ansatz
/// `C'_w = sum_x p_x v^-l(x) T_x`, `p_w = 1`, `p_x in v^-1 Z[v^-1]`, solved
/// from the longest `x` down using only the bar involution on `T`-basis
/// elements.
pub fn kl_by_bar_solve(
    g: &AffineWeylGroup,
    cutoff: usize,
) -> BTreeMap<(AffineWeylElement, AffineWeylElement), LaurentPoly> {
    let elems = g.elements_up_to(cutoff, 0).unwrap();
    let len: BTreeMap<AffineWeylElement, i32> =
        elems.iter().map(|x| (*x, g.length(x) as i32)).collect();
    // r[y][x]: coefficient of v^-l(x) T_x in bar(v^-l(y) T_y)
    let mut r: BTreeMap<AffineWeylElement, BTreeMap<AffineWeylElement, LaurentPoly>> =
        BTreeMap::new();
    for y in &elems {
        let b = HeckeElement::basis(g, *y).bar();
        let row = b
            .terms()
            .iter()
            .map(|(x, c)| (*x, c.shift(len[x] + len[y])))
            .collect();
        r.insert(*y, row);
    }
    let mut out = BTreeMap::new();
    for w in &elems {
        let mut p: BTreeMap<AffineWeylElement, LaurentPoly> =
            BTreeMap::from([(*w, LaurentPoly::one())]);
        let mut lower: Vec<&AffineWeylElement> =
            elems.iter().filter(|x| len[*x] < len[w]).collect();
        lower.sort_by_key(|x| std::cmp::Reverse(len[*x]));
        for x in lower {
            let mut rhs = LaurentPoly::zero();
            for (y, py) in &p {
                if len[y] > len[x] {
                    if let Some(c) = r[y].get(x) {
                        rhs += &(&py.bar() * c);
                    }
                }
            }
            let px = negative_part(&rhs);
            assert_eq!(&px - &px.bar(), rhs, "bar-solve is inconsistent");
            if !px.is_zero() {
                p.insert(*x, px);
            }
        }
        for (x, px) in p {
            out.insert((x, *w), px.shift(len[w] - len[&x]));
        }
    }
    out
}

/// `z_(1,0)` for GL2 expanded straight from `theta_(1,0) + theta_(0,1)` with
/// `theta_(0,1) = T_{t(1,1)} theta_(1,0)^-1`.
pub fn gl2_z10_by_theta(g: &AffineWeylGroup) -> HeckeElement {
    let t10 = g.translation(&Coweight::new(&[1, 0]));
    let t11 = g.translation(&Coweight::new(&[1, 1]));
    assert_eq!(g.length(&t10), 1);
    assert_eq!(g.length(&t11), 0);
    let theta10 = HeckeElement::monomial(g, t10, LaurentPoly::v_pow(-1));
    let theta10_inv = HeckeElement::invert_basis(g, &t10).shift(1);
    assert_eq!(theta10.mul(&theta10_inv).unwrap(), HeckeElement::one(g));
    let theta01 = HeckeElement::basis(g, t11).mul(&theta10_inv).unwrap();
    &theta10 + &theta01
}

/// `(sum_{w in W_f} T_w) h` by full multiplication.
pub fn average_by_product(g: &AffineWeylGroup, h: &HeckeElement) -> HeckeElement {
    let n = g.datum().weyl.order() as u8;
    let one_k = HeckeElement::from_terms(g, (0..n).map(|w| (g.finite(w), LaurentPoly::one())));
    one_k.mul(h).unwrap()
}
