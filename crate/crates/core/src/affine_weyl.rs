//! The extended affine Weyl group `W_ext = X_* x| W_f`.
//!
//! Elements are kept in the normal form `t_lambda * w`. Words are derived on
//! demand: an element factors as `s_{i_1} ... s_{i_m} * omega^k` with `m` its
//! length, and that factorization is what gets printed and parsed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{HeckeError, Result};
use crate::root_datum::{Coweight, DatumLabel, OmegaGroup, RootDatum, MAX_DIM};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    label: DatumLabel,
    translation: Coweight,
    finite: u8,
}

impl AffineWeylElement {
    pub fn label(&self) -> DatumLabel {
        self.label
    }

    pub fn translation(&self) -> Coweight {
        self.translation
    }

    /// Index of the finite part in the datum's Weyl group table.
    pub fn finite_part(&self) -> u8 {
        self.finite
    }
}

impl fmt::Debug for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}*w#{}", self.translation, self.finite)
    }
}

/// Index of a simple affine reflection: `0` is `s_0`, `1..=rank` the finite
/// simple reflections.
pub type Simple = u8;

/// `x = s_{letters[0]} ... s_{letters[m-1]} * omega^omega`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    pub omega: i32,
    pub letters: Vec<Simple>,
}

impl ReducedWord {
    /// The text form used inside `T[...]` and `w[...]`.
    pub fn label(&self) -> String {
        let word: Vec<String> = self.letters.iter().map(|s| format!("s{s}")).collect();
        match (word.is_empty(), self.omega) {
            (true, 0) => "e".to_string(),
            (true, k) => format!("omega^{k}"),
            (false, 0) => word.join("."),
            (false, k) => format!("{}*omega^{k}", word.join(".")),
        }
    }
}

struct GroupInner {
    datum: RootDatum,
    theta: [i32; MAX_DIM],
    simples: Vec<AffineWeylElement>,
    omega: Option<(AffineWeylElement, AffineWeylElement)>,
    words: RwLock<HashMap<AffineWeylElement, Arc<ReducedWord>>>,
}

/// Shared handle to a datum and its affine Weyl group. Cloning is cheap.
#[derive(Clone)]
pub struct AffineWeylGroup {
    inner: Arc<GroupInner>,
}

impl fmt::Debug for AffineWeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineWeylGroup({})", self.label())
    }
}

impl PartialEq for AffineWeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.label() == other.label()
    }
}

impl Eq for AffineWeylGroup {}

impl AffineWeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        let label = datum.label;
        let zero = Coweight::zero(datum.dim);
        let theta = datum.highest().clone();
        let s_theta = {
            let mut m = [[0; MAX_DIM]; MAX_DIM];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
                if i < datum.dim {
                    for (j, e) in row.iter_mut().enumerate().take(datum.dim) {
                        *e -= theta.coroot.coords()[i] * theta.vector[j];
                    }
                }
            }
            datum
                .weyl
                .index_of(&m)
                .expect("reflection in the highest root")
        };
        let mut simples = vec![AffineWeylElement {
            label,
            translation: theta.coroot,
            finite: s_theta,
        }];
        for &s in &datum.weyl.simple {
            simples.push(AffineWeylElement {
                label,
                translation: zero,
                finite: s,
            });
        }
        let mut group = GroupInner {
            datum,
            theta: theta.vector,
            simples,
            omega: None,
            words: RwLock::new(HashMap::new()),
        };
        if let OmegaGroup::Cyclic {
            translation,
            finite,
        } = group.datum.omega
        {
            let w = AffineWeylElement {
                label,
                translation,
                finite,
            };
            let weyl = &group.datum.weyl;
            let finv = weyl.inverse(finite);
            let winv = AffineWeylElement {
                label,
                translation: -translation.apply(weyl.matrix(finv)),
                finite: finv,
            };
            group.omega = Some((w, winv));
        }
        Self {
            inner: Arc::new(group),
        }
    }

    pub fn from_label(label: DatumLabel) -> Self {
        Self::new(RootDatum::from_label(label))
    }

    pub fn build(label: &str) -> Result<Self> {
        Ok(Self::new(RootDatum::build(label)?))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.inner.datum
    }

    pub fn label(&self) -> DatumLabel {
        self.inner.datum.label
    }

    pub fn rank(&self) -> usize {
        self.inner.datum.rank
    }

    /// All simple affine reflections `s_0, ..., s_rank`.
    pub fn simple_indices(&self) -> impl Iterator<Item = Simple> {
        0..=self.rank() as Simple
    }

    pub fn has_omega(&self) -> bool {
        self.inner.omega.is_some()
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement {
            label: self.label(),
            translation: Coweight::zero(self.datum().dim),
            finite: 0,
        }
    }

    pub fn simple(&self, s: Simple) -> AffineWeylElement {
        self.inner.simples[s as usize]
    }

    pub fn translation(&self, lambda: &Coweight) -> AffineWeylElement {
        AffineWeylElement {
            label: self.label(),
            translation: *lambda,
            finite: 0,
        }
    }

    pub fn finite(&self, w: u8) -> AffineWeylElement {
        AffineWeylElement {
            label: self.label(),
            translation: Coweight::zero(self.datum().dim),
            finite: w,
        }
    }

    pub fn from_parts(&self, lambda: &Coweight, w: u8) -> AffineWeylElement {
        AffineWeylElement {
            label: self.label(),
            translation: *lambda,
            finite: w,
        }
    }

    /// `omega^k`; the identity when `Omega` is trivial and `k == 0`.
    pub fn omega_power(&self, k: i32) -> Result<AffineWeylElement> {
        let mut x = self.identity();
        if k == 0 {
            return Ok(x);
        }
        let Some((w, winv)) = self.inner.omega else {
            return Err(HeckeError::Parse(format!(
                "{} has trivial Omega; omega^{k} is undefined",
                self.label()
            )));
        };
        let g = if k > 0 { w } else { winv };
        for _ in 0..k.unsigned_abs() {
            x = self.mul(&x, &g);
        }
        Ok(x)
    }

    fn check(&self, x: &AffineWeylElement) -> Result<()> {
        if x.label != self.label() {
            return Err(HeckeError::DatumMismatch {
                left: self.label().to_string(),
                right: x.label.to_string(),
            });
        }
        Ok(())
    }

    /// `(t_lambda u)(t_mu v) = t_{lambda + u mu} uv`.
    pub fn multiply(
        &self,
        x: &AffineWeylElement,
        y: &AffineWeylElement,
    ) -> Result<AffineWeylElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        debug_assert!(x.label == y.label);
        let weyl = &self.datum().weyl;
        AffineWeylElement {
            label: x.label,
            translation: x.translation + y.translation.apply(weyl.matrix(x.finite)),
            finite: weyl.mul(x.finite, y.finite),
        }
    }

    pub fn inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        let weyl = &self.datum().weyl;
        let winv = weyl.inverse(x.finite);
        AffineWeylElement {
            label: x.label,
            translation: -x.translation.apply(weyl.matrix(winv)),
            finite: winv,
        }
    }

    pub fn length(&self, x: &AffineWeylElement) -> usize {
        self.datum()
            .iwahori_matsumoto_length(&x.translation, x.finite)
    }

    /// The `Omega`-component of `x` (the class of its translation in
    /// `X_* / Q^vee`).
    pub fn component(&self, x: &AffineWeylElement) -> i32 {
        self.datum().lattice_class(&x.translation)
    }

    /// Image of the affine root `(beta, k)`, the function `<beta, .> + k`,
    /// under `x`: `(w beta, k - <lambda, w beta>)`.
    pub fn act_on_affine_root(
        &self,
        x: &AffineWeylElement,
        beta: &[i32; MAX_DIM],
        k: i32,
    ) -> ([i32; MAX_DIM], i32) {
        let wb = self.datum().act_on_root(x.finite, beta);
        (wb, k - x.translation.pair(&wb))
    }

    fn affine_root_is_positive(&self, beta: &[i32; MAX_DIM], k: i32) -> bool {
        k > 0 || (k == 0 && self.datum().is_positive_root(beta))
    }

    fn simple_affine_root(&self, s: Simple) -> ([i32; MAX_DIM], i32) {
        if s == 0 {
            let mut neg = self.inner.theta;
            neg.iter_mut().for_each(|c| *c = -*c);
            (neg, 1)
        } else {
            (self.datum().simple_roots[s as usize - 1], 0)
        }
    }

    /// Right descent: `length(x s) < length(x)`, decided by the sign of
    /// `x(alpha_s)`.
    pub fn is_descent(&self, x: &AffineWeylElement, s: Simple) -> bool {
        let (beta, k) = self.simple_affine_root(s);
        let (b, k2) = self.act_on_affine_root(x, &beta, k);
        !self.affine_root_is_positive(&b, k2)
    }

    /// Left descent: `length(s x) < length(x)`.
    pub fn is_left_descent(&self, x: &AffineWeylElement, s: Simple) -> bool {
        self.is_descent(&self.inverse(x), s)
    }

    pub fn mul_simple(&self, x: &AffineWeylElement, s: Simple) -> AffineWeylElement {
        self.mul(x, &self.simple(s))
    }

    pub fn simple_mul(&self, s: Simple, x: &AffineWeylElement) -> AffineWeylElement {
        self.mul(&self.simple(s), x)
    }

    /// `x = s_{i_1} ... s_{i_m} * omega^k`, stripping the smallest left
    /// descent at each step. Cached.
    pub fn reduced_word(&self, x: &AffineWeylElement) -> Arc<ReducedWord> {
        if let Some(w) = self.inner.words.read().unwrap().get(x) {
            return w.clone();
        }
        let mut letters = Vec::new();
        let mut cur = *x;
        'strip: loop {
            for s in self.simple_indices() {
                if self.is_left_descent(&cur, s) {
                    letters.push(s);
                    cur = self.simple_mul(s, &cur);
                    continue 'strip;
                }
            }
            break;
        }
        let word = Arc::new(ReducedWord {
            omega: self.component(&cur),
            letters,
        });
        self.inner
            .words
            .write()
            .unwrap()
            .entry(*x)
            .or_insert_with(|| word.clone())
            .clone()
    }

    pub fn from_word(&self, letters: &[Simple], omega: i32) -> Result<AffineWeylElement> {
        let mut x = self.identity();
        for &s in letters {
            if s as usize > self.rank() {
                return Err(HeckeError::Parse(format!(
                    "s{s} is not a simple reflection of {}",
                    self.label()
                )));
            }
            x = self.mul_simple(&x, s);
        }
        Ok(self.mul(&x, &self.omega_power(omega)?))
    }

    /// `x * omega^-k`, the part of `x` in the non-extended affine Weyl group.
    pub fn strip_omega(&self, x: &AffineWeylElement) -> (AffineWeylElement, i32) {
        let k = self.component(x);
        if k == 0 {
            return (*x, 0);
        }
        let w = self
            .omega_power(-k)
            .expect("nonzero component implies Omega");
        (self.mul(x, &w), k)
    }

    /// Bruhat order. Elements of different `Omega`-components are
    /// incomparable; within a component the subword property is checked
    /// along the canonical reduced word of `x`.
    pub fn bruhat_leq(&self, y: &AffineWeylElement, x: &AffineWeylElement) -> bool {
        if y.label != x.label || self.component(y) != self.component(x) {
            return false;
        }
        let (y0, _) = self.strip_omega(y);
        let word = self.reduced_word(x);
        let mut cur = y0;
        let mut cur_len = self.length(&cur);
        for (used, &s) in word.letters.iter().enumerate().rev() {
            if cur_len > used + 1 {
                return false;
            }
            if self.is_descent(&cur, s) {
                cur = self.mul_simple(&cur, s);
                cur_len -= 1;
            }
        }
        cur_len == 0
    }

    /// The dominant coweight indexing `W_f x W_f`.
    pub fn double_coset(&self, x: &AffineWeylElement) -> Coweight {
        self.datum().dominant_representative(&x.translation)
    }

    /// All of `W_f t_lambda W_f`, sorted by length.
    pub fn coset_elements(&self, lambda: &Coweight) -> Result<Vec<AffineWeylElement>> {
        let d = self.datum();
        d.check_dim(lambda)?;
        if !d.is_dominant(lambda) {
            return Err(HeckeError::NotDominant(lambda.to_string()));
        }
        let mut out: Vec<AffineWeylElement> = d
            .weyl_orbit(lambda)
            .into_iter()
            .flat_map(|nu| (0..d.weyl.order() as u8).map(move |w| (nu, w)))
            .map(|(nu, w)| self.from_parts(&nu, w))
            .collect();
        out.sort_by_key(|x| (self.length(x), *x));
        Ok(out)
    }

    /// The unique element of maximal length in `W_f t_lambda W_f`.
    pub fn coset_max(&self, lambda: &Coweight) -> Result<AffineWeylElement> {
        Ok(*self.coset_elements(lambda)?.last().unwrap())
    }

    /// The unique element of minimal length in `W_f t_lambda W_f`.
    pub fn coset_min(&self, lambda: &Coweight) -> Result<AffineWeylElement> {
        Ok(self.coset_elements(lambda)?[0])
    }

    /// Elements of `W_aff * omega^component` with length `<= max_len`, sorted
    /// by length then canonical word.
    pub fn elements_up_to(&self, max_len: usize, component: i32) -> Result<Vec<AffineWeylElement>> {
        let shift = self.omega_power(component)?;
        let mut layer = BTreeSet::from([self.identity()]);
        let mut all: Vec<AffineWeylElement> = vec![self.identity()];
        for n in 1..=max_len {
            let mut next = BTreeSet::new();
            for x in &layer {
                for s in self.simple_indices() {
                    let y = self.mul_simple(x, s);
                    if self.length(&y) == n {
                        next.insert(y);
                    }
                }
            }
            all.extend(next.iter().copied());
            layer = next;
        }
        let mut out: Vec<AffineWeylElement> = all.iter().map(|x| self.mul(x, &shift)).collect();
        out.sort_by_cached_key(|x| (self.length(x), self.reduced_word(x).letters.clone()));
        Ok(out)
    }

    /// Text label of `x` as used inside `T[...]`.
    pub fn basis_label(&self, x: &AffineWeylElement) -> String {
        self.reduced_word(x).label()
    }

    /// `w[ s0.s1 ] * omega^k` style display.
    pub fn format_element(&self, x: &AffineWeylElement) -> String {
        let w = self.reduced_word(x);
        let word: Vec<String> = w.letters.iter().map(|s| format!("s{s}")).collect();
        let word = if word.is_empty() {
            "e".to_string()
        } else {
            word.join(".")
        };
        if w.omega == 0 {
            format!("w[{word}]")
        } else {
            format!("w[{word}]*omega^{}", w.omega)
        }
    }

    /// Parses a basis label (`e`, `s0.s1`, `omega^-1`, `s1*omega^2`) or the
    /// `w[...]` display form. Words need not be reduced.
    pub fn parse_element(&self, text: &str) -> Result<AffineWeylElement> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (word_part, omega_part) = if let Some(rest) = t.strip_prefix("w[") {
            let close = rest
                .find(']')
                .ok_or_else(|| HeckeError::Parse(format!("missing `]` in `{text}`")))?;
            let after = &rest[close + 1..];
            let omega = match after.strip_prefix('*') {
                Some(o) => Some(o.to_string()),
                None if after.is_empty() => None,
                None => return Err(HeckeError::Parse(format!("unexpected `{after}`"))),
            };
            (rest[..close].to_string(), omega)
        } else {
            let mut factors: Vec<&str> = t.split('*').collect();
            let omega = match factors.last() {
                Some(f) if f.starts_with("omega") => Some(factors.pop().unwrap().to_string()),
                _ => None,
            };
            if factors.len() > 1 {
                return Err(HeckeError::Parse(format!("bad element `{text}`")));
            }
            (
                factors.first().map(|s| s.to_string()).unwrap_or_default(),
                omega,
            )
        };
        let mut letters = Vec::new();
        if !(word_part.is_empty() || word_part == "e") {
            for tok in word_part.split('.') {
                let idx = tok
                    .strip_prefix('s')
                    .and_then(|n| n.parse::<u8>().ok())
                    .ok_or_else(|| HeckeError::Parse(format!("bad letter `{tok}` in `{text}`")))?;
                letters.push(idx);
            }
        }
        let omega = match omega_part.as_deref() {
            None => 0,
            Some("omega") => 1,
            Some(o) => o
                .strip_prefix("omega^")
                .and_then(|k| k.trim_matches(['(', ')']).parse::<i32>().ok())
                .ok_or_else(|| HeckeError::Parse(format!("bad omega power `{o}`")))?,
        };
        self.from_word(&letters, omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a1() -> AffineWeylGroup {
        AffineWeylGroup::build("A1-sc").unwrap()
    }

    fn gl2() -> AffineWeylGroup {
        AffineWeylGroup::build("GL2").unwrap()
    }

    fn all_groups() -> Vec<AffineWeylGroup> {
        DatumLabel::ALL
            .iter()
            .map(|&l| AffineWeylGroup::from_label(l))
            .collect()
    }

    #[test]
    fn identity_is_neutral() {
        for g in all_groups() {
            for x in g.elements_up_to(3, 0).unwrap() {
                assert_eq!(g.mul(&x, &g.identity()), x);
                assert_eq!(g.mul(&g.identity(), &x), x);
                assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
            }
        }
    }

    #[test]
    fn infinite_dihedral() {
        let g = a1();
        let s0s1 = g.mul(&g.simple(0), &g.simple(1));
        let s1s0 = g.mul(&g.simple(1), &g.simple(0));
        assert_ne!(s0s1, s1s0);
        assert_eq!(g.length(&s0s1), 2);
        assert_eq!(g.length(&s1s0), 2);
        assert_eq!(g.length(&g.simple(0)), 1);
        for n in 0..=8 {
            let count = g
                .elements_up_to(8, 0)
                .unwrap()
                .iter()
                .filter(|x| g.length(x) == n)
                .count();
            assert_eq!(count, if n == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn gl2_omega() {
        let g = gl2();
        let w = g.omega_power(1).unwrap();
        assert_eq!(w.translation().coords(), &[1, 0]);
        assert_eq!(g.length(&w), 0);
        let w2 = g.mul(&w, &w);
        assert_eq!(w2, g.translation(&Coweight::new(&[1, 1])));
        // omega swaps the two walls of the alcove
        let conj = g.mul(&g.mul(&w, &g.simple(1)), &g.inverse(&w));
        assert_eq!(conj, g.simple(0));
        assert!(gl2().omega_power(0).is_ok());
        assert!(a1().omega_power(1).is_err());
    }

    #[test]
    fn lengths() {
        let g = a1();
        assert_eq!(g.length(&g.translation(&Coweight::new(&[1]))), 2);
        for grp in all_groups() {
            let d = grp.datum();
            for lambda in d.dominant_coweights(6) {
                assert_eq!(
                    grp.length(&grp.translation(&lambda)),
                    d.translation_length(&lambda)
                );
            }
        }
    }

    #[test]
    fn length_zero_iff_omega_power() {
        let g = gl2();
        let omegas: BTreeSet<AffineWeylElement> =
            (-3..=3).map(|k| g.omega_power(k).unwrap()).collect();
        for k in -3..=3 {
            for x in g.elements_up_to(3, k).unwrap() {
                assert_eq!(g.length(&x) == 0, omegas.contains(&x));
            }
        }
    }

    #[test]
    fn descents_match_lengths() {
        for g in all_groups() {
            for k in if g.has_omega() {
                vec![-1, 0, 1]
            } else {
                vec![0]
            } {
                for x in g.elements_up_to(5, k).unwrap() {
                    for s in g.simple_indices() {
                        let xs = g.mul_simple(&x, s);
                        assert_eq!(g.is_descent(&x, s), g.length(&xs) < g.length(&x));
                        assert_eq!(g.length(&xs).abs_diff(g.length(&x)), 1);
                        if g.is_descent(&x, s) {
                            assert!(g.bruhat_leq(&xs, &x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_words_round_trip() {
        let g = a1();
        assert_eq!(g.reduced_word(&g.identity()).letters, Vec::<u8>::new());
        assert_eq!(g.reduced_word(&g.simple(0)).letters, vec![0]);
        let t = g.translation(&Coweight::new(&[1]));
        let w = g.reduced_word(&t);
        assert_eq!(w.letters.len(), 2);
        assert_eq!(g.from_word(&w.letters, w.omega).unwrap(), t);
        for grp in all_groups() {
            for k in if grp.has_omega() {
                vec![-2, 0, 1]
            } else {
                vec![0]
            } {
                for x in grp.elements_up_to(5, k).unwrap() {
                    let w = grp.reduced_word(&x);
                    assert_eq!(w.letters.len(), grp.length(&x));
                    assert_eq!(w.omega, k);
                    assert_eq!(grp.from_word(&w.letters, w.omega).unwrap(), x);
                    assert_eq!(grp.parse_element(&grp.format_element(&x)).unwrap(), x);
                    assert_eq!(grp.parse_element(&grp.basis_label(&x)).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn parse_forms() {
        let g = gl2();
        let w = g.omega_power(1).unwrap();
        assert_eq!(g.parse_element("omega").unwrap(), w);
        assert_eq!(g.parse_element("w[ e ] * omega^1").unwrap(), w);
        assert_eq!(
            g.parse_element("s1*omega^1").unwrap(),
            g.mul(&g.simple(1), &w)
        );
        assert_eq!(g.parse_element("s0.s0").unwrap(), g.identity());
        assert!(g.parse_element("s5").is_err());
        assert!(g.parse_element("x1").is_err());
        assert_eq!(g.format_element(&w), "w[e]*omega^1");
    }

    #[test]
    fn bruhat_chain_in_a1() {
        let g = a1();
        let e = g.identity();
        let s0 = g.simple(0);
        let s0s1 = g.from_word(&[0, 1], 0).unwrap();
        let s0s1s0 = g.from_word(&[0, 1, 0], 0).unwrap();
        let chain = [e, s0, s0s1, s0s1s0];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.bruhat_leq(&chain[i], &chain[j]), i <= j);
            }
        }
        let s1s0 = g.from_word(&[1, 0], 0).unwrap();
        assert!(!g.bruhat_leq(&s1s0, &s0s1));
        assert!(g.bruhat_leq(&s1s0, &s0s1s0));
    }

    /// Subword enumeration over every subset of the letters.
    fn bruhat_by_subwords(
        g: &AffineWeylGroup,
        y: &AffineWeylElement,
        x: &AffineWeylElement,
    ) -> bool {
        if g.component(x) != g.component(y) {
            return false;
        }
        let w = g.reduced_word(x);
        let y0 = g.strip_omega(y).0;
        let m = w.letters.len();
        (0..1u32 << m).any(|mask| {
            let sub: Vec<u8> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| w.letters[i])
                .collect();
            g.from_word(&sub, 0).unwrap() == y0
        })
    }

    #[test]
    fn bruhat_agrees_with_subword_enumeration() {
        for label in [DatumLabel::A2, DatumLabel::C2, DatumLabel::Gl2] {
            let g = AffineWeylGroup::from_label(label);
            let elems = g.elements_up_to(5, 0).unwrap();
            for x in &elems {
                for y in &elems {
                    assert_eq!(
                        g.bruhat_leq(y, x),
                        bruhat_by_subwords(&g, y, x),
                        "{label} {y:?} {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_is_partial_order_refining_length() {
        let g = AffineWeylGroup::from_label(DatumLabel::A2);
        let elems = g.elements_up_to(4, 0).unwrap();
        for x in &elems {
            assert!(g.bruhat_leq(&g.identity(), x));
            for y in &elems {
                if g.bruhat_leq(y, x) {
                    assert!(g.length(y) <= g.length(x));
                    if g.bruhat_leq(x, y) {
                        assert_eq!(x, y);
                    }
                    for z in &elems {
                        if g.bruhat_leq(z, y) {
                            assert!(g.bruhat_leq(z, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_across_components() {
        let g = gl2();
        let w = g.omega_power(1).unwrap();
        assert!(!g.bruhat_leq(&g.identity(), &w));
        assert!(g.bruhat_leq(&w, &g.mul(&g.simple(0), &w)));
    }

    #[test]
    fn double_cosets() {
        let g = a1();
        assert!(g.double_coset(&g.identity()).is_zero());
        let zero = g.coset_elements(&Coweight::new(&[0])).unwrap();
        assert_eq!(zero.len(), 2);
        let c = g.coset_elements(&Coweight::new(&[1])).unwrap();
        let lens: Vec<usize> = c.iter().map(|x| g.length(x)).collect();
        assert_eq!(lens, vec![1, 2, 2, 3]);

        let g = gl2();
        let c = g.coset_elements(&Coweight::new(&[1, 0])).unwrap();
        let lens: Vec<usize> = c.iter().map(|x| g.length(x)).collect();
        assert_eq!(lens, vec![0, 1, 1, 2]);
        assert_eq!(c[0], g.omega_power(1).unwrap());
        assert_eq!(g.coset_min(&Coweight::new(&[1, 0])).unwrap(), c[0]);
        assert!(g.coset_elements(&Coweight::new(&[0, 1])).is_err());
    }

    #[test]
    fn double_cosets_partition() {
        for g in all_groups() {
            let d = g.datum();
            let doms = d.dominant_coweights(4);
            for lambda in &doms {
                let c = g.coset_elements(lambda).unwrap();
                assert!(c.iter().all(|x| g.double_coset(x) == *lambda));
                let max_len = g.length(c.last().unwrap());
                assert_eq!(c.iter().filter(|x| g.length(x) == max_len).count(), 1);
                let min_len = g.length(&c[0]);
                assert_eq!(c.iter().filter(|x| g.length(x) == min_len).count(), 1);
                assert_eq!(
                    max_len,
                    d.translation_length(lambda) + d.num_positive_roots()
                );
            }
        }
    }

    #[test]
    fn omega_conjugation_preserves_length() {
        let g = AffineWeylGroup::from_label(DatumLabel::Gl3);
        let w = g.omega_power(1).unwrap();
        let winv = g.inverse(&w);
        for x in g.elements_up_to(4, 0).unwrap() {
            let c = g.mul(&g.mul(&w, &x), &winv);
            assert_eq!(g.length(&c), g.length(&x));
        }
    }

    #[test]
    fn datum_mismatch_is_error() {
        let a = a1();
        let b = gl2();
        assert!(matches!(
            a.multiply(&a.identity(), &b.identity()),
            Err(HeckeError::DatumMismatch { .. })
        ));
    }

    #[test]
    fn send_sync() {
        fn check<T: Send + Sync>() {}
        check::<AffineWeylGroup>();
        check::<AffineWeylElement>();
    }

    proptest! {
        #[test]
        fn group_law_and_length_subadditivity(
            label in prop::sample::select(DatumLabel::ALL.to_vec()),
            words in prop::collection::vec((prop::collection::vec(0u8..4, 0..7), -2i32..=2), 3),
        ) {
            let g = AffineWeylGroup::from_label(label);
            let elems: Vec<AffineWeylElement> = words
                .iter()
                .map(|(w, k)| {
                    let letters: Vec<u8> = w.iter().map(|s| s % (g.rank() as u8 + 1)).collect();
                    g.from_word(&letters, if g.has_omega() { *k } else { 0 }).unwrap()
                })
                .collect();
            let (x, y, z) = (elems[0], elems[1], elems[2]);
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            let xy = g.mul(&x, &y);
            prop_assert!(g.length(&xy) <= g.length(&x) + g.length(&y));
            prop_assert_eq!(g.length(&g.inverse(&x)), g.length(&x));
        }
    }
}
