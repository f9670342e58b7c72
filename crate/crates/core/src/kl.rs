//! Kazhdan-Lusztig polynomials and basis, Bott-Samelson products, and the
//! parity checks on maximal double coset representatives.
//!
//! `C'_w = v^-l(w) sum_{y <= w} P_{y,w}(q) T_y`. The table is computed on the
//! identity component of `Omega` and transported by `C'_{w omega} = C'_w T_omega`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup, Simple};
use crate::error::{HeckeError, Result};
use crate::hecke::HeckeElement;
use crate::laurent::LaurentPoly;
use crate::root_datum::Coweight;

/// Bumped whenever the on-disk layout changes.
pub const KL_CACHE_VERSION: u32 = 1;

const CACHE_MAGIC: &str = "hecke-kl-cache";

/// `C'_s = v^-1 (T_s + 1)`.
pub fn kl_simple(group: &AffineWeylGroup, s: Simple) -> HeckeElement {
    HeckeElement::from_terms(
        group,
        [
            (group.simple(s), LaurentPoly::v_pow(-1)),
            (group.identity(), LaurentPoly::v_pow(-1)),
        ],
    )
}

/// `prod_i (T_{s_i} + 1)`.
pub fn bott_samelson(group: &AffineWeylGroup, word: &[Simple]) -> HeckeElement {
    let mut acc = HeckeElement::one(group);
    for &s in word {
        acc = &acc.mul_simple_right(s) + &acc;
    }
    acc
}

/// Parity data for a pair of dominant coweights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub lambda: Coweight,
    pub mu: Coweight,
    /// `l(w_lambda) - l(w_mu)` for maximal double coset representatives.
    pub length_difference: i64,
    /// `deg_q P_{w_mu, w_lambda}`, `None` when the polynomial vanishes.
    pub degree: Option<i32>,
    pub passed: bool,
}

/// Kazhdan-Lusztig basis elements of the identity component up to a length.
pub struct KlTable {
    group: AffineWeylGroup,
    cutoff: usize,
    order: Vec<AffineWeylElement>,
    basis: HashMap<AffineWeylElement, HeckeElement>,
}

impl KlTable {
    /// Runs the recursion
    /// `C'_w = C'_{ws} C'_s - sum_{z s < z} mu(z, ws) C'_z`.
    pub fn compute(group: &AffineWeylGroup, cutoff: usize) -> Result<Self> {
        let order = group.elements_up_to(cutoff, 0)?;
        let mut basis: HashMap<AffineWeylElement, HeckeElement> =
            HashMap::with_capacity(order.len());
        for w in &order {
            let word = group.reduced_word(w);
            let Some(&s) = word.letters.last() else {
                basis.insert(*w, HeckeElement::one(group));
                continue;
            };
            let ws = group.mul_simple(w, s);
            let prev = &basis[&ws];
            let mut c = prev.mul_simple_right(s).shift(-1);
            c = &c + &prev.shift(-1);
            let lws = group.length(&ws);
            for (z, p) in prev.terms() {
                if *z == ws || !group.is_descent(z, s) {
                    continue;
                }
                let mu = mu_from_coeff(p, lws, group.length(z));
                if mu != 0 {
                    c = &c - &basis[z].scale(&LaurentPoly::constant(mu));
                }
            }
            basis.insert(*w, c);
        }
        Ok(Self {
            group: group.clone(),
            cutoff,
            order,
            basis,
        })
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Identity-component elements covered, by length then word.
    pub fn elements(&self) -> &[AffineWeylElement] {
        &self.order
    }

    fn check(&self, w: &AffineWeylElement) -> Result<()> {
        if w.label() != self.group.label() {
            return Err(HeckeError::DatumMismatch {
                left: self.group.label().to_string(),
                right: w.label().to_string(),
            });
        }
        let length = self.group.length(w);
        if length > self.cutoff {
            return Err(HeckeError::CutoffExceeded {
                length,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }

    /// `C'_w`.
    pub fn basis(&self, w: &AffineWeylElement) -> Result<HeckeElement> {
        self.check(w)?;
        let (w0, k) = self.group.strip_omega(w);
        let c = &self.basis[&w0];
        if k == 0 {
            Ok(c.clone())
        } else {
            Ok(c.mul_length_zero_right(&self.group.omega_power(k)?))
        }
    }

    /// `P_{y,w}` as a Laurent polynomial in even powers of `v`.
    pub fn polynomial(&self, y: &AffineWeylElement, w: &AffineWeylElement) -> Result<LaurentPoly> {
        self.check(w)?;
        let g = &self.group;
        let (cy, cw) = (g.component(y), g.component(w));
        if cy != cw {
            return Err(HeckeError::ComponentMismatch(cy, cw));
        }
        let (y0, _) = g.strip_omega(y);
        let (w0, _) = g.strip_omega(w);
        Ok(self.basis[&w0].coeff(&y0).shift(g.length(w) as i32))
    }

    /// Coefficient of `q^{(l(w) - l(y) - 1) / 2}` in `P_{y,w}`.
    pub fn mu(&self, y: &AffineWeylElement, w: &AffineWeylElement) -> Result<i64> {
        let g = &self.group;
        if g.component(y) != g.component(w) {
            return Ok(0);
        }
        self.check(w)?;
        let (y0, _) = g.strip_omega(y);
        let (w0, _) = g.strip_omega(w);
        Ok(mu_from_coeff(
            &self.basis[&w0].coeff(&y0),
            g.length(w),
            g.length(y),
        ))
    }

    /// Coefficients of `h` in the `C'`-basis, peeling off the longest terms.
    pub fn decompose(&self, h: &HeckeElement) -> Result<BTreeMap<AffineWeylElement, LaurentPoly>> {
        let g = &self.group;
        let mut rest = h.clone();
        let mut out = BTreeMap::new();
        while let Some((x, c)) = rest
            .terms()
            .iter()
            .max_by_key(|(x, _)| (g.length(x), **x))
            .map(|(x, c)| (*x, c.clone()))
        {
            let b = self.basis(&x)?;
            let a = c.shift(g.length(&x) as i32);
            rest = &rest - &b.scale(&a);
            out.insert(x, a);
        }
        Ok(out)
    }

    /// `prod_i C'_{s_i}` in the `C'`-basis.
    pub fn bs_decompose(
        &self,
        word: &[Simple],
    ) -> Result<BTreeMap<AffineWeylElement, LaurentPoly>> {
        let h = bott_samelson(&self.group, word).shift(-(word.len() as i32));
        self.decompose(&h)
    }

    /// Checks that `l(w_lambda) - l(w_mu)` is even and, for `lambda != mu`,
    /// that `deg_q P_{w_mu, w_lambda} <= (l(w_lambda) - l(w_mu) - 2) / 2`.
    pub fn spherical_parity_check(&self, lambda: &Coweight, mu: &Coweight) -> Result<ParityReport> {
        let g = &self.group;
        let d = g.datum();
        let (a, b) = (d.lattice_class(lambda), d.lattice_class(mu));
        if a != b {
            return Err(HeckeError::ComponentMismatch(a, b));
        }
        let wl = g.coset_max(lambda)?;
        let wm = g.coset_max(mu)?;
        let diff = g.length(&wl) as i64 - g.length(&wm) as i64;
        let p = self.polynomial(&wm, &wl)?;
        let degree = p.max_exp().map(|e| e / 2);
        let mut passed = diff % 2 == 0;
        if lambda != mu {
            if let Some(deg) = degree {
                passed &= 2 * deg as i64 <= diff - 2;
            }
        } else {
            passed &= p.is_one();
        }
        Ok(ParityReport {
            lambda: *lambda,
            mu: *mu,
            length_difference: diff,
            degree,
            passed,
        })
    }

    /// `path/kl-<label>-<fingerprint>-c<cutoff>.tsv`.
    pub fn cache_path(group: &AffineWeylGroup, cutoff: usize, dir: &Path) -> PathBuf {
        dir.join(format!(
            "kl-{}-{}-c{cutoff}.tsv",
            group.label().as_str(),
            group.datum().fingerprint()
        ))
    }

    fn header(group: &AffineWeylGroup, cutoff: usize) -> String {
        format!(
            "{CACHE_MAGIC}\tv{KL_CACHE_VERSION}\t{}\t{}\tcutoff={cutoff}",
            group.label().as_str(),
            group.datum().fingerprint()
        )
    }

    /// The cache file contents: a header line, then one
    /// `y-word <TAB> w-word <TAB> P_{y,w}` record per nonzero polynomial.
    pub fn serialize(&self) -> String {
        let g = &self.group;
        let mut out = Self::header(g, self.cutoff);
        out.push('\n');
        for w in &self.order {
            let c = &self.basis[w];
            let lw = g.length(w) as i32;
            let mut ys: Vec<&AffineWeylElement> = c.support().collect();
            ys.sort_by_cached_key(|y| (g.length(y), g.reduced_word(y).letters.clone()));
            for y in ys {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    g.basis_label(y),
                    g.basis_label(w),
                    c.coeff(y).shift(lw)
                ));
            }
        }
        out
    }

    /// Parses cache contents, rejecting any mismatch in header or records.
    pub fn deserialize(group: &AffineWeylGroup, cutoff: usize, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        if header != Self::header(group, cutoff) {
            return Err(HeckeError::Parse(format!(
                "cache header mismatch: `{header}`"
            )));
        }
        let order = group.elements_up_to(cutoff, 0)?;
        let mut basis: HashMap<AffineWeylElement, HeckeElement> = HashMap::new();
        let mut pending: HashMap<AffineWeylElement, Vec<(AffineWeylElement, LaurentPoly)>> =
            HashMap::new();
        for (n, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(HeckeError::Parse(format!(
                    "cache record {} malformed",
                    n + 2
                )));
            }
            let y = group.parse_element(fields[0])?;
            let w = group.parse_element(fields[1])?;
            let p: LaurentPoly = fields[2].parse()?;
            if group.length(&w) > cutoff || group.component(&w) != 0 || group.component(&y) != 0 {
                return Err(HeckeError::Parse(format!(
                    "cache record {} out of range",
                    n + 2
                )));
            }
            let lw = group.length(&w) as i32;
            pending.entry(w).or_default().push((y, p.shift(-lw)));
        }
        for w in &order {
            let terms = pending.remove(w).unwrap_or_default();
            let c = HeckeElement::from_terms(group, terms);
            if c.coeff(w) != LaurentPoly::v_pow(-(group.length(w) as i32)) {
                return Err(HeckeError::Parse(format!(
                    "cache lacks the leading term of {}",
                    group.basis_label(w)
                )));
            }
            basis.insert(*w, c);
        }
        if !pending.is_empty() {
            return Err(HeckeError::Parse(
                "cache has records for unknown elements".into(),
            ));
        }
        Ok(Self {
            group: group.clone(),
            cutoff,
            order,
            basis,
        })
    }

    /// Writes the table atomically through a temporary file.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = Self::cache_path(&self.group, self.cutoff, dir);
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.serialize().as_bytes())?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| HeckeError::Io(e.error))?;
        Ok(path)
    }

    /// Reads a cached table; any problem is logged and reported as a miss.
    pub fn load(group: &AffineWeylGroup, cutoff: usize, dir: &Path) -> Option<Self> {
        let path = Self::cache_path(group, cutoff, dir);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring unreadable KL cache {}: {e}", path.display());
                return None;
            }
        };
        match Self::deserialize(group, cutoff, &text) {
            Ok(t) => Some(t),
            Err(e) => {
                log::warn!("ignoring invalid KL cache {}: {e}", path.display());
                None
            }
        }
    }

    /// Uses the cache when present, recomputing and comparing when `verify`
    /// is set; writes the cache after a fresh computation. An unwritable
    /// cache directory only produces a warning.
    pub fn load_or_compute(
        group: &AffineWeylGroup,
        cutoff: usize,
        dir: Option<&Path>,
        verify: bool,
    ) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::compute(group, cutoff);
        };
        if let Some(cached) = Self::load(group, cutoff, dir) {
            if !verify {
                return Ok(cached);
            }
            let fresh = Self::compute(group, cutoff)?;
            if fresh.serialize() == cached.serialize() {
                return Ok(fresh);
            }
            log::warn!("KL cache disagrees with recomputation; rewriting it");
            if let Err(e) = fresh.save(dir) {
                log::warn!("could not write KL cache: {e}");
            }
            return Ok(fresh);
        }
        let fresh = Self::compute(group, cutoff)?;
        if let Err(e) = fresh.save(dir) {
            log::warn!("could not write KL cache to {}: {e}", dir.display());
        }
        Ok(fresh)
    }
}

/// `mu(z, w)` read off the `T_z`-coefficient `v^-l(w) P_{z,w}` of `C'_w`.
fn mu_from_coeff(coeff: &LaurentPoly, lw: usize, lz: usize) -> i64 {
    if lw <= lz || (lw - lz).is_multiple_of(2) {
        return 0;
    }
    // coeff = v^-lw P(q); the top allowed power q^{(lw-lz-1)/2} sits at v^{-lz-1}
    coeff.coeff(-(lz as i32) - 1)
}
