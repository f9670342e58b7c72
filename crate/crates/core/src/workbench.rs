//! The `hecke` command line driver, the verification suites, and the GL(2)
//! regression report.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
//! error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup, Simple};
use crate::bernstein::{is_central, BernsteinCenter, CentralElement};
use crate::error::{HeckeError, Result};
use crate::hecke::HeckeElement;
use crate::kl::{bott_samelson, KlTable};
use crate::laurent::LaurentPoly;
use crate::root_datum::{Coweight, DatumLabel, RootDatum};
use crate::spherical::{self, SphericalElement};

/// Environment variable naming the KL cache directory.
pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

pub const DEFAULT_CUTOFF: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct WorkbenchConfig {
    pub datum: DatumLabel,
    pub cutoff: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub strict: bool,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        Self {
            datum: DatumLabel::A1,
            cutoff: DEFAULT_CUTOFF,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            format: OutputFormat::Text,
            strict: false,
        }
    }
}

impl WorkbenchConfig {
    pub fn group(&self) -> AffineWeylGroup {
        AffineWeylGroup::from_label(self.datum)
    }

    pub fn center(&self) -> BernsteinCenter {
        BernsteinCenter::new(&self.group(), self.cutoff, self.strict)
    }

    pub fn kl_table(&self, cutoff: usize) -> Result<KlTable> {
        KlTable::load_or_compute(
            &self.group(),
            cutoff,
            self.cache_dir.as_deref(),
            self.strict,
        )
    }
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub name: String,
    pub datum: DatumLabel,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    fn new(name: &str, datum: DatumLabel) -> Self {
        Self {
            name: name.to_string(),
            datum,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "datum": self.datum.as_str(),
            "checked": self.checked,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} [{}]: {} cases",
            self.name, self.datum, self.checked
        )?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

fn dominant(group: &AffineWeylGroup, cutoff: usize) -> Vec<Coweight> {
    group.datum().dominant_coweights(cutoff)
}

/// Dominant pairs with `l(t_lambda) + l(t_mu) <= cutoff`.
fn dominant_pairs(group: &AffineWeylGroup, cutoff: usize) -> Vec<(Coweight, Coweight)> {
    let d = group.datum();
    let ws = dominant(group, cutoff);
    let mut out = Vec::new();
    for a in &ws {
        for b in &ws {
            if d.translation_length(a) + d.translation_length(b) <= cutoff {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Every `z_lambda` with `l(t_lambda) <= cutoff` commutes with all
/// generators.
pub fn verify_centrality(center: &BernsteinCenter) -> Result<VerifyReport> {
    let g = center.group();
    let mut r = VerifyReport::new("centrality", g.label());
    for lambda in dominant(g, center.cutoff()) {
        let z = center.z(&lambda)?;
        r.record(is_central(&z), || format!("z{lambda} is not central"));
    }
    Ok(r)
}

/// `pi(central_lift(m_lambda)) = m_lambda`.
pub fn verify_section(center: &BernsteinCenter) -> Result<VerifyReport> {
    let g = center.group();
    let mut r = VerifyReport::new("section", g.label());
    for lambda in dominant(g, center.cutoff()) {
        let m = SphericalElement::basis(g, &lambda)?;
        let back = spherical::pi_map(&center.central_lift(&m)?.element)?;
        r.record(back == m, || format!("pi(lift(m{lambda})) = {back}"));
    }
    Ok(r)
}

pub fn verify_multiplicativity(center: &BernsteinCenter) -> Result<VerifyReport> {
    let g = center.group();
    let mut r = VerifyReport::new("multiplicativity", g.label());
    for (a, b) in dominant_pairs(g, center.cutoff()) {
        let (ok, diff) = center.lift_is_multiplicative(&a, &b)?;
        r.record(ok, || {
            format!("lift(m{a} * m{b}) - lift(m{a}) lift(m{b}) = {diff}")
        });
    }
    Ok(r)
}

/// `m_lambda * m_mu = m_mu * m_lambda` and `z_lambda z_mu = z_mu z_lambda`.
pub fn verify_commutativity(center: &BernsteinCenter) -> Result<VerifyReport> {
    let g = center.group();
    let cutoff = center.cutoff();
    let mut r = VerifyReport::new("commutativity", g.label());
    for (a, b) in dominant_pairs(g, cutoff) {
        if a > b {
            continue;
        }
        let ma = SphericalElement::basis(g, &a)?;
        let mb = SphericalElement::basis(g, &b)?;
        let ab = spherical::sph_conv(&ma, &mb, cutoff)?;
        let ba = spherical::sph_conv(&mb, &ma, cutoff)?;
        r.record(ab == ba, || format!("m{a} * m{b} != m{b} * m{a}"));
        let za = center.z(&a)?;
        let zb = center.z(&b)?;
        r.record(za.commutes_with(&zb)?, || format!("z{a} z{b} != z{b} z{a}"));
    }
    Ok(r)
}

/// The Satake matrix is dominance-triangular with unit diagonal.
pub fn verify_satake(center: &BernsteinCenter) -> Result<VerifyReport> {
    let g = center.group();
    let mut r = VerifyReport::new("satake", g.label());
    match spherical::satake_matrix(center) {
        Ok(m) => {
            for (lambda, d) in m.diagonal() {
                let expected = LaurentPoly::v_pow(-(g.datum().translation_length(&lambda) as i32));
                r.record(d.is_unit(), || format!("diagonal at {lambda} is {d}"));
                if d != expected {
                    log::info!("diagonal at {lambda} is {d}, expected {expected}");
                }
            }
        }
        Err(HeckeError::Convention(e)) => r.record(false, || e),
        Err(e) => return Err(e),
    }
    Ok(r)
}

/// All words over the affine simple reflections of length `<= max_len`.
pub fn all_words(group: &AffineWeylGroup, max_len: usize) -> Vec<Vec<Simple>> {
    let letters: Vec<Simple> = group.simple_indices().collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &s in &letters {
                let mut x: Vec<Simple> = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_label(word: &[Simple]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|s| format!("s{s}"))
        .collect::<Vec<_>>()
        .join(".")
}

/// Bott-Samelson coefficients lie in `Z>=0[q]`; their `C'`-coefficients are
/// nonnegative with constant parity, and 1 on top for reduced words.
pub fn verify_bott_samelson(table: &KlTable, max_len: usize) -> Result<VerifyReport> {
    let g = table.group();
    let mut r = VerifyReport::new("bott-samelson", g.label());
    for word in all_words(g, max_len) {
        let bs = bott_samelson(g, &word);
        let label = word_label(&word);
        for (x, c) in bs.terms() {
            let ok = c.is_even() && c.min_exp().unwrap_or(0) >= 0 && c.all_coeffs_nonnegative();
            r.record(ok, || {
                format!("{label}: coefficient {c} at T[{}]", g.basis_label(x))
            });
        }
        let dec = table.bs_decompose(&word)?;
        for (x, c) in &dec {
            let ok = c.all_coeffs_nonnegative() && c.has_constant_parity();
            r.record(ok, || {
                format!("{label}: C'-coefficient {c} at {}", g.basis_label(x))
            });
        }
        let top = g.from_word(&word, 0)?;
        if g.length(&top) == word.len() {
            let c = dec.get(&top).cloned().unwrap_or_default();
            r.record(c.is_one(), || format!("{label}: top coefficient {c}"));
        }
    }
    Ok(r)
}

/// Certifies the KL table: each `C'_w` is bar-invariant, has leading term
/// `v^-l(w) T_w`, and lower coefficients in `v^-1 Z[v^-1]`.
pub fn verify_kl(table: &KlTable) -> Result<VerifyReport> {
    let g = table.group();
    let mut r = VerifyReport::new("kl", g.label());
    for w in table.elements() {
        let c = table.basis(w)?;
        let label = g.basis_label(w);
        r.record(c.bar() == c, || format!("C'[{label}] is not bar-invariant"));
        let lw = g.length(w) as i32;
        r.record(c.coeff(w) == LaurentPoly::v_pow(-lw), || {
            format!("C'[{label}] leading term")
        });
        for (y, p) in c.terms() {
            if y == w {
                continue;
            }
            let ok = g.bruhat_leq(y, w)
                && p.max_exp().is_some_and(|e| e < 0)
                && p.shift(lw).min_exp().is_some_and(|e| e >= 0)
                && p.all_coeffs_nonnegative();
            r.record(ok, || {
                format!("P[{}, {label}] = {}", g.basis_label(y), p.shift(lw))
            });
        }
    }
    Ok(r)
}

/// `o_lambda o_mu` decomposed into orbit sums, in the group ring of `X_*`.
pub fn orbit_sum_product(datum: &RootDatum, a: &Coweight, b: &Coweight) -> BTreeMap<Coweight, i64> {
    let mut prod: BTreeMap<Coweight, i64> = BTreeMap::new();
    for x in datum.weyl_orbit(a) {
        for y in datum.weyl_orbit(b) {
            *prod.entry(x + y).or_default() += 1;
        }
    }
    prod.into_iter()
        .filter(|(k, n)| *n != 0 && datum.is_dominant(k))
        .collect()
}

/// `m_lambda * m_mu` at `q = 1` matches the orbit-sum product.
pub fn verify_q_one(group: &AffineWeylGroup, cutoff: usize) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("q1", group.label());
    for (a, b) in dominant_pairs(group, cutoff) {
        let ma = SphericalElement::basis(group, &a)?;
        let mb = SphericalElement::basis(group, &b)?;
        let got = spherical::sph_conv(&ma, &mb, cutoff)?.at_q_one()?;
        let expected = orbit_sum_product(group.datum(), &a, &b);
        r.record(got == expected, || {
            format!("m{a} * m{b} at q=1: {got:?} vs {expected:?}")
        });
    }
    Ok(r)
}

/// KL cutoff needed for parity checks up to `cutoff`.
pub fn parity_kl_cutoff(group: &AffineWeylGroup, cutoff: usize) -> usize {
    cutoff + group.datum().num_positive_roots()
}

pub fn verify_parity(table: &KlTable, cutoff: usize) -> Result<VerifyReport> {
    let g = table.group();
    let d = g.datum();
    let mut r = VerifyReport::new("parity", g.label());
    let ws = dominant(g, cutoff);
    for a in &ws {
        for b in &ws {
            if d.lattice_class(a) != d.lattice_class(b) {
                continue;
            }
            let rep = table.spherical_parity_check(a, b)?;
            r.record(rep.passed, || {
                format!(
                    "({a}, {b}): difference {}, degree {:?}",
                    rep.length_difference, rep.degree
                )
            });
        }
    }
    Ok(r)
}

/// One of the four GL(2) assertions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Assertion {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The GL(2) filtration regression for `central_lift(m_(1,0))`.
#[derive(Clone, Debug)]
pub struct Gl2Report {
    pub lift: CentralElement,
    pub decomposition: BTreeMap<AffineWeylElement, LaurentPoly>,
    pub omega: AffineWeylElement,
    pub y1: AffineWeylElement,
    pub y2: AffineWeylElement,
    pub assertions: Vec<Gl2Assertion>,
    pub summary: String,
}

impl Gl2Report {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn to_json(&self) -> Value {
        let g = self.lift.element.group();
        let dec: serde_json::Map<String, Value> = self
            .decomposition
            .iter()
            .map(|(x, c)| (g.basis_label(x), json!(c.to_pairs())))
            .collect();
        json!({
            "lift": self.lift.element.to_json(),
            "decomposition": dec,
            "omega": g.basis_label(&self.omega),
            "y1": g.basis_label(&self.y1),
            "y2": g.basis_label(&self.y2),
            "assertions": self.assertions.iter().map(|a| json!({
                "name": a.name, "passed": a.passed, "detail": a.detail,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for Gl2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary)
    }
}

fn coeff_times(c: &LaurentPoly, basis: &str) -> String {
    if c.is_one() {
        basis.to_string()
    } else if c.num_terms() == 1 {
        format!("{c}*{basis}")
    } else {
        format!("({c})*{basis}")
    }
}

fn decomposition_text(
    group: &AffineWeylGroup,
    dec: &BTreeMap<AffineWeylElement, LaurentPoly>,
) -> String {
    if dec.is_empty() {
        return "0".into();
    }
    let mut keys: Vec<&AffineWeylElement> = dec.keys().collect();
    keys.sort_by_cached_key(|x| (std::cmp::Reverse(group.length(x)), group.basis_label(x)));
    keys.into_iter()
        .map(|x| coeff_times(&dec[x], &format!("C'[{}]", group.basis_label(x))))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Lifts `m_(1,0)` for GL(2), decomposes the lift in the `C'`-basis and
/// checks the filtration shape: support `{y1, y2, omega}`, `(1 + q)` times a
/// unit on `C'_omega`, equal monomials on `C'_{y1}` and `C'_{y2}`, and the
/// section property.
pub fn verify_gl2() -> Result<Gl2Report> {
    let g = AffineWeylGroup::build("GL2")?;
    let lambda = Coweight::new(&[1, 0]);
    let center = BernsteinCenter::new(&g, DEFAULT_CUTOFF, true);
    let m = SphericalElement::basis(&g, &lambda)?;
    let lift = center.central_lift(&m)?;
    let coset = g.coset_elements(&lambda)?;
    let omega = coset[0];
    let mut middle: Vec<AffineWeylElement> =
        coset.iter().filter(|x| g.length(x) == 1).copied().collect();
    middle.sort_by_cached_key(|x| g.basis_label(x));
    if g.length(&omega) != 0 || middle.len() != 2 {
        return Err(HeckeError::Internal(
            "unexpected shape of the coset of (1,0)".into(),
        ));
    }
    let (y1, y2) = (middle[0], middle[1]);
    let table = KlTable::compute(&g, 2)?;
    let decomposition = table.decompose(&lift.element)?;

    let mut assertions = Vec::new();
    let support: BTreeSet<AffineWeylElement> = decomposition.keys().copied().collect();
    let expected: BTreeSet<AffineWeylElement> = [y1, y2, omega].into_iter().collect();
    assertions.push(Gl2Assertion {
        name: "support",
        passed: support == expected,
        detail: format!("C'-support {{{}}}", {
            let mut labels: Vec<String> = support.iter().map(|x| g.basis_label(x)).collect();
            labels.sort();
            labels.join(", ")
        }),
    });

    let co = decomposition.get(&omega).cloned().unwrap_or_default();
    let one_plus_q = LaurentPoly::from_terms([(0, 1), (2, 1)]);
    let unit = co.exact_div(&one_plus_q).ok().filter(|u| u.is_unit());
    let delta_detail = match &unit {
        Some(u) => {
            let lower = u.clone();
            let upper = u * &LaurentPoly::q();
            format!("C'[omega] coefficient {co} = ({u})*(1+q); delta layers {lower} and {upper}, ratio q")
        }
        None => format!("C'[omega] coefficient {co} is not a unit times (1+q)"),
    };
    assertions.push(Gl2Assertion {
        name: "delta layers",
        passed: unit.is_some(),
        detail: delta_detail,
    });

    let c1 = decomposition.get(&y1).cloned().unwrap_or_default();
    let c2 = decomposition.get(&y2).cloned().unwrap_or_default();
    assertions.push(Gl2Assertion {
        name: "middle layers",
        passed: c1 == c2 && c1.as_monomial().is_some(),
        detail: format!(
            "C'[{}] coefficient {c1}, C'[{}] coefficient {c2}",
            g.basis_label(&y1),
            g.basis_label(&y2)
        ),
    });

    let back = spherical::pi_map(&lift.element)?;
    assertions.push(Gl2Assertion {
        name: "section",
        passed: back == m,
        detail: format!("pi(z) = {back}"),
    });

    let mut summary = String::new();
    summary.push_str("GL2 central lift of m[1,0]\n");
    summary.push_str(&format!("omega = {}\n", g.format_element(&omega)));
    summary.push_str(&format!("y1 = {}\n", g.format_element(&y1)));
    summary.push_str(&format!("y2 = {}\n", g.format_element(&y2)));
    let expansion: Vec<String> = lift
        .expansion
        .iter()
        .map(|(l, a)| coeff_times(a, &format!("z{l}")))
        .collect();
    summary.push_str(&format!("z = {}\n", expansion.join(" + ")));
    summary.push_str(&format!("z = {}\n", lift.element));
    summary.push_str(&format!("z = {}\n", decomposition_text(&g, &decomposition)));
    for (i, a) in assertions.iter().enumerate() {
        let verdict = if a.passed { "PASS" } else { "FAIL" };
        summary.push_str(&format!(
            "({}) {verdict} {}: {}\n",
            roman(i + 1),
            a.name,
            a.detail
        ));
    }
    let all = assertions.iter().all(|a| a.passed);
    summary.push_str(if all {
        "GL2 regression: PASS"
    } else {
        "GL2 regression: FAIL"
    });
    Ok(Gl2Report {
        lift,
        decomposition,
        omega,
        y1,
        y2,
        assertions,
        summary,
    })
}

fn roman(n: usize) -> &'static str {
    ["0", "i", "ii", "iii", "iv"][n]
}

#[derive(Parser, Debug)]
#[command(
    name = "hecke",
    about = "Exact computations in extended affine Hecke algebras",
    version
)]
struct Cli {
    /// Root datum: A1-sc, A2-sc, C2-sc, G2-sc, GL2, GL3.
    #[arg(long, global = true, default_value = "A1-sc")]
    datum: String,
    /// Length cutoff for translations and KL tables.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// KL cache directory (overrides HECKE_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Re-verify intermediate results (centrality of z, lifts, cached tables).
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ElementInput {
    /// Element in text or JSON form.
    element: Option<String>,
    /// Read the element from a file.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl ElementInput {
    fn text(&self) -> Result<String> {
        match (&self.element, &self.input) {
            (Some(e), None) => Ok(e.clone()),
            (None, Some(p)) => Ok(std::fs::read_to_string(p)?),
            _ => Err(HeckeError::Parse(
                "give exactly one of ELEMENT or --input".into(),
            )),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply Hecke algebra elements.
    Mul {
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    /// Inverse of a basis element, e.g. `T[s0.s1]`.
    Inv { element: String },
    /// Bar involution.
    Bar(ElementInput),
    /// Kazhdan-Lusztig polynomials.
    Kl {
        #[command(subcommand)]
        command: KlCommand,
    },
    /// Bott-Samelson product `prod (T_s + 1)`.
    Bs {
        /// Word such as `s0.s1.s0`.
        #[arg(long)]
        word: String,
        /// Decompose `prod C'_s` in the KL basis.
        #[arg(long)]
        decompose: bool,
    },
    /// Central elements and the central lift.
    Center {
        #[command(subcommand)]
        command: CenterCommand,
    },
    /// Average onto the spherical algebra.
    Pi(ElementInput),
    /// Spherical algebra operations.
    Sph {
        #[command(subcommand)]
        command: SphCommand,
    },
    /// Rows pi(z_lambda) of the Satake matrix.
    Satake,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Root datum information.
    Datum {
        #[command(subcommand)]
        command: DatumCommand,
    },
}

#[derive(Subcommand, Debug)]
enum KlCommand {
    /// `P_{y,w}`.
    Poly { y: String, w: String },
    /// All nonzero `P_{y,w}` with `l(w) <= cutoff`, identity component.
    Table,
}

#[derive(Subcommand, Debug)]
enum CenterCommand {
    /// `z_lambda`.
    Zlambda {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Central lift of a spherical element.
    Lift(ElementInput),
    /// Check an element for centrality, or all `z_lambda` when none given.
    Check {
        element: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SphCommand {
    /// `m_l * m_m`.
    Conv {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
}

#[derive(Subcommand, Debug)]
enum DatumCommand {
    Describe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Centrality,
    Section,
    Multiplicativity,
    Commutativity,
    Satake,
    Gl2,
    Bs,
    Kl,
    Q1,
    Parity,
    All,
}

struct Outcome {
    ok: bool,
    text: String,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { ok: true, text }
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn element_out(cfg: &WorkbenchConfig, h: &HeckeElement) -> String {
    match cfg.format {
        OutputFormat::Text => h.to_string(),
        OutputFormat::Json => render_json(&h.to_json()),
    }
}

fn spherical_out(cfg: &WorkbenchConfig, c: &SphericalElement) -> String {
    match cfg.format {
        OutputFormat::Text => c.to_string(),
        OutputFormat::Json => render_json(&c.to_json()),
    }
}

/// Parses `s0.s1.s0` (or `e`) into simple reflection indices.
pub fn parse_word(g: &AffineWeylGroup, text: &str) -> Result<Vec<Simple>> {
    let t = text.trim();
    if t == "e" || t.is_empty() {
        return Ok(Vec::new());
    }
    t.split('.')
        .map(|s| {
            let n = s
                .trim()
                .strip_prefix('s')
                .and_then(|n| n.parse::<Simple>().ok())
                .filter(|&n| (n as usize) <= g.rank())
                .ok_or_else(|| HeckeError::Parse(format!("bad letter `{s}` in word `{text}`")))?;
            Ok(n)
        })
        .collect()
}

fn run_suite(cfg: &WorkbenchConfig, suite: Suite) -> Result<Vec<VerifyReport>> {
    let g = cfg.group();
    let center = cfg.center();
    Ok(match suite {
        Suite::Centrality => vec![verify_centrality(&center)?],
        Suite::Section => vec![verify_section(&center)?],
        Suite::Multiplicativity => vec![verify_multiplicativity(&center)?],
        Suite::Commutativity => vec![verify_commutativity(&center)?],
        Suite::Satake => vec![verify_satake(&center)?],
        Suite::Bs => vec![verify_bott_samelson(
            &cfg.kl_table(cfg.cutoff)?,
            cfg.cutoff,
        )?],
        Suite::Kl => vec![verify_kl(&cfg.kl_table(cfg.cutoff)?)?],
        Suite::Q1 => vec![verify_q_one(&g, cfg.cutoff)?],
        Suite::Parity => {
            let table = cfg.kl_table(parity_kl_cutoff(&g, cfg.cutoff))?;
            vec![verify_parity(&table, cfg.cutoff)?]
        }
        Suite::Gl2 => {
            let rep = verify_gl2()?;
            let mut r = VerifyReport::new("gl2", DatumLabel::Gl2);
            for a in &rep.assertions {
                r.record(a.passed, || format!("{}: {}", a.name, a.detail));
            }
            vec![r]
        }
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Centrality,
                Suite::Section,
                Suite::Multiplicativity,
                Suite::Commutativity,
                Suite::Satake,
                Suite::Bs,
                Suite::Kl,
                Suite::Q1,
                Suite::Parity,
            ] {
                out.extend(run_suite(cfg, s)?);
            }
            out
        }
    })
}

fn execute(cfg: &WorkbenchConfig, command: &Command) -> Result<Outcome> {
    let g = cfg.group();
    match command {
        Command::Mul { elements } => {
            let mut acc = HeckeElement::one(&g);
            for e in elements {
                acc = acc.mul(&HeckeElement::parse(&g, e)?)?;
            }
            Ok(Outcome::ok(element_out(cfg, &acc)))
        }
        Command::Inv { element } => {
            let h = HeckeElement::parse(&g, element)?;
            let (x, c) = match h.terms().iter().next() {
                Some((x, c)) if h.len() == 1 && c.is_unit() => (*x, c.clone()),
                _ => {
                    return Err(HeckeError::Parse(
                        "inv expects a single basis element with unit coefficient".into(),
                    ))
                }
            };
            let (k, sign) = c.as_monomial().expect("unit is a monomial");
            let inv = HeckeElement::invert_basis(&g, &x)
                .shift(-k)
                .scale(&LaurentPoly::constant(sign));
            Ok(Outcome::ok(element_out(cfg, &inv)))
        }
        Command::Bar(input) => {
            let h = HeckeElement::parse(&g, &input.text()?)?;
            Ok(Outcome::ok(element_out(cfg, &h.bar())))
        }
        Command::Kl { command } => match command {
            KlCommand::Poly { y, w } => {
                let y = g.parse_element(y)?;
                let w = g.parse_element(w)?;
                let table = cfg.kl_table(cfg.cutoff.max(g.length(&w)))?;
                let p = table.polynomial(&y, &w)?;
                Ok(Outcome::ok(match cfg.format {
                    OutputFormat::Text => p.to_string(),
                    OutputFormat::Json => render_json(&json!({
                        "y": g.basis_label(&y),
                        "w": g.basis_label(&w),
                        "poly": p.to_pairs(),
                    })),
                }))
            }
            KlCommand::Table => {
                let table = cfg.kl_table(cfg.cutoff)?;
                Ok(Outcome::ok(match cfg.format {
                    OutputFormat::Text => table.serialize().trim_end().to_string(),
                    OutputFormat::Json => {
                        let mut rows = Vec::new();
                        for w in table.elements() {
                            let c = table.basis(w)?;
                            let mut ys: Vec<&AffineWeylElement> = c.support().collect();
                            ys.sort_by_cached_key(|y| (g.length(y), g.basis_label(y)));
                            for y in ys {
                                rows.push(json!({
                                    "y": g.basis_label(y),
                                    "w": g.basis_label(w),
                                    "poly": table.polynomial(y, w)?.to_pairs(),
                                }));
                            }
                        }
                        render_json(
                            &json!({ "datum": g.label().as_str(), "cutoff": cfg.cutoff, "entries": rows }),
                        )
                    }
                }))
            }
        },
        Command::Bs { word, decompose } => {
            let word = parse_word(&g, word)?;
            if word.len() > cfg.cutoff {
                return Err(HeckeError::CutoffExceeded {
                    length: word.len(),
                    cutoff: cfg.cutoff,
                });
            }
            if *decompose {
                let table = cfg.kl_table(word.len())?;
                let dec = table.bs_decompose(&word)?;
                Ok(Outcome::ok(match cfg.format {
                    OutputFormat::Text => decomposition_text(&g, &dec),
                    OutputFormat::Json => {
                        let m: serde_json::Map<String, Value> = dec
                            .iter()
                            .map(|(x, c)| (g.basis_label(x), json!(c.to_pairs())))
                            .collect();
                        render_json(&json!({ "datum": g.label().as_str(), "kl_terms": m }))
                    }
                }))
            } else {
                Ok(Outcome::ok(element_out(cfg, &bott_samelson(&g, &word))))
            }
        }
        Command::Center { command } => {
            let center = cfg.center();
            match command {
                CenterCommand::Zlambda { lambda } => {
                    let lambda = g.datum().coweight(lambda.parse::<Coweight>()?.coords())?;
                    Ok(Outcome::ok(element_out(
                        cfg,
                        &center.central_element(&lambda)?.element,
                    )))
                }
                CenterCommand::Lift(input) => {
                    let c = SphericalElement::parse(&g, &input.text()?)?;
                    let lift = center.central_lift(&c)?;
                    Ok(Outcome::ok(match cfg.format {
                        OutputFormat::Text => {
                            let exp: Vec<String> = lift
                                .expansion
                                .iter()
                                .map(|(l, a)| coeff_times(a, &format!("z{l}")))
                                .collect();
                            let exp = if exp.is_empty() {
                                "0".to_string()
                            } else {
                                exp.join(" + ")
                            };
                            format!("{exp}\n{}", lift.element)
                        }
                        OutputFormat::Json => {
                            let exp: serde_json::Map<String, Value> = lift
                                .expansion
                                .iter()
                                .map(|(l, a)| (l.to_string(), json!(a.to_pairs())))
                                .collect();
                            render_json(
                                &json!({ "expansion": exp, "element": lift.element.to_json() }),
                            )
                        }
                    }))
                }
                CenterCommand::Check { element, input } => {
                    if element.is_none() && input.is_none() {
                        let r = verify_centrality(&center)?;
                        return Ok(report_outcome(cfg, &[r]));
                    }
                    let text = ElementInput {
                        element: element.clone(),
                        input: input.clone(),
                    }
                    .text()?;
                    let h = HeckeElement::parse(&g, &text)?;
                    let ok = is_central(&h);
                    Ok(Outcome {
                        ok,
                        text: match cfg.format {
                            OutputFormat::Text => {
                                (if ok { "central" } else { "not central" }).to_string()
                            }
                            OutputFormat::Json => render_json(&json!({ "central": ok })),
                        },
                    })
                }
            }
        }
        Command::Pi(input) => {
            let h = HeckeElement::parse(&g, &input.text()?)?;
            Ok(Outcome::ok(spherical_out(cfg, &spherical::pi_map(&h)?)))
        }
        Command::Sph { command } => match command {
            SphCommand::Conv { l, m } => {
                let l = g.datum().coweight(l.parse::<Coweight>()?.coords())?;
                let m = g.datum().coweight(m.parse::<Coweight>()?.coords())?;
                let c = spherical::sph_conv(
                    &SphericalElement::basis(&g, &l)?,
                    &SphericalElement::basis(&g, &m)?,
                    cfg.cutoff,
                )?;
                Ok(Outcome::ok(spherical_out(cfg, &c)))
            }
        },
        Command::Satake => {
            let center = cfg.center();
            match spherical::satake_matrix(&center) {
                Ok(m) => Ok(Outcome::ok(match cfg.format {
                    OutputFormat::Text => m.to_string().trim_end().to_string(),
                    OutputFormat::Json => {
                        let rows: serde_json::Map<String, Value> = m
                            .rows
                            .iter()
                            .map(|(l, r)| (l.to_string(), r.to_json()))
                            .collect();
                        render_json(&json!({ "datum": g.label().as_str(), "rows": rows }))
                    }
                })),
                Err(HeckeError::Convention(e)) => Ok(Outcome {
                    ok: false,
                    text: format!("satake matrix check failed: {e}"),
                }),
                Err(e) => Err(e),
            }
        }
        Command::Verify { suite } => {
            if *suite == Suite::Gl2 {
                let rep = verify_gl2()?;
                return Ok(Outcome {
                    ok: rep.passed(),
                    text: match cfg.format {
                        OutputFormat::Text => rep.to_string(),
                        OutputFormat::Json => render_json(&rep.to_json()),
                    },
                });
            }
            Ok(report_outcome(cfg, &run_suite(cfg, *suite)?))
        }
        Command::Datum { command } => match command {
            DatumCommand::Describe => {
                let d = g.datum();
                Ok(Outcome::ok(match cfg.format {
                    OutputFormat::Text => {
                        format!("{}fingerprint: {}", d.describe(), d.fingerprint())
                    }
                    OutputFormat::Json => render_json(&json!({
                        "datum": d.label.as_str(),
                        "rank": d.rank,
                        "lattice_rank": d.dim,
                        "positive_roots": d.num_positive_roots(),
                        "weyl_order": d.weyl.order(),
                        "omega": if g.has_omega() { "Z" } else { "trivial" },
                        "fingerprint": d.fingerprint(),
                    })),
                }))
            }
        },
    }
}

fn report_outcome(cfg: &WorkbenchConfig, reports: &[VerifyReport]) -> Outcome {
    let ok = reports.iter().all(VerifyReport::passed);
    let text = match cfg.format {
        OutputFormat::Text => reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Json => render_json(&Value::Array(
            reports.iter().map(VerifyReport::to_json).collect(),
        )),
    };
    Outcome { ok, text }
}

fn is_usage_error(e: &HeckeError) -> bool {
    matches!(
        e,
        HeckeError::UnsupportedDatum(_)
            | HeckeError::DatumMismatch { .. }
            | HeckeError::NotDominant(_)
            | HeckeError::Dimension { .. }
            | HeckeError::CutoffExceeded { .. }
            | HeckeError::ComponentMismatch(..)
            | HeckeError::Parse(_)
            | HeckeError::Io(_)
            | HeckeError::Json(_)
    )
}

/// Parses `argv` (including the program name) and runs the command,
/// returning the exit code and the text to print.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    let datum = match cli.datum.parse::<DatumLabel>() {
        Ok(d) => d,
        Err(e) => return (2, format!("error: {e}")),
    };
    if cli.cutoff == 0 {
        return (2, "error: --cutoff must be at least 1".into());
    }
    let cfg = WorkbenchConfig {
        datum,
        cutoff: cli.cutoff,
        cache_dir: cli
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)),
        format: cli.format,
        strict: cli.strict,
    };
    match execute(&cfg, &cli.command) {
        Ok(o) => (if o.ok { 0 } else { 1 }, o.text),
        Err(e) if is_usage_error(&e) => (2, format!("error: {e}")),
        Err(e) => (1, format!("error: {e}")),
    }
}
