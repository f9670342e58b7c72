//! Split root data of small rank, their finite Weyl groups and coweight
//! combinatorics.
//!
//! Coweights live in `X_* = Z^n`; roots live in the dual lattice `X^*` and the
//! pairing is the dot product. For the simply connected series the basis of
//! `X_*` is the simple coroots, so roots are written in fundamental-weight
//! coordinates (rows of the transposed Cartan matrix).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HeckeError, Result};

/// Largest lattice dimension among the supported data.
pub const MAX_DIM: usize = 3;

pub type Mat = [[i32; MAX_DIM]; MAX_DIM];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DatumLabel {
    A1,
    A2,
    C2,
    G2,
    Gl2,
    Gl3,
}

impl DatumLabel {
    pub const ALL: [DatumLabel; 6] = [
        DatumLabel::A1,
        DatumLabel::A2,
        DatumLabel::C2,
        DatumLabel::G2,
        DatumLabel::Gl2,
        DatumLabel::Gl3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DatumLabel::A1 => "A1-sc",
            DatumLabel::A2 => "A2-sc",
            DatumLabel::C2 => "C2-sc",
            DatumLabel::G2 => "G2-sc",
            DatumLabel::Gl2 => "GL2",
            DatumLabel::Gl3 => "GL3",
        }
    }

    pub fn is_general_linear(self) -> bool {
        matches!(self, DatumLabel::Gl2 | DatumLabel::Gl3)
    }
}

impl fmt::Display for DatumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DatumLabel {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase();
        Ok(match norm.as_str() {
            "A1-SC" | "A1" => DatumLabel::A1,
            "A2-SC" | "A2" => DatumLabel::A2,
            "C2-SC" | "C2" => DatumLabel::C2,
            "G2-SC" | "G2" => DatumLabel::G2,
            "GL2" => DatumLabel::Gl2,
            "GL3" => DatumLabel::Gl3,
            _ => return Err(HeckeError::UnsupportedDatum(s.to_string())),
        })
    }
}

/// An element of the cocharacter lattice. Unused trailing coordinates are 0.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coweight {
    dim: u8,
    coords: [i32; MAX_DIM],
}

impl Coweight {
    pub fn new(coords: &[i32]) -> Self {
        assert!(
            coords.len() <= MAX_DIM,
            "coweight dimension {}",
            coords.len()
        );
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Self {
            dim: coords.len() as u8,
            coords: c,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(&vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.dim()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn pair(&self, root: &[i32; MAX_DIM]) -> i32 {
        self.coords.iter().zip(root).map(|(a, b)| a * b).sum()
    }

    pub fn apply(&self, m: &Mat) -> Coweight {
        let mut out = [0; MAX_DIM];
        for (i, row) in m.iter().enumerate().take(self.dim()) {
            out[i] = row.iter().zip(&self.coords).map(|(a, b)| a * b).sum();
        }
        Coweight {
            dim: self.dim,
            coords: out,
        }
    }

    pub fn scale(&self, k: i32) -> Coweight {
        let mut c = self.coords;
        c.iter_mut().for_each(|x| *x *= k);
        Coweight {
            dim: self.dim,
            coords: c,
        }
    }
}

impl std::ops::Add for Coweight {
    type Output = Coweight;
    fn add(self, rhs: Coweight) -> Coweight {
        debug_assert_eq!(self.dim, rhs.dim);
        let mut c = self.coords;
        c.iter_mut().zip(rhs.coords).for_each(|(a, b)| *a += b);
        Coweight {
            dim: self.dim,
            coords: c,
        }
    }
}

impl std::ops::Sub for Coweight {
    type Output = Coweight;
    fn sub(self, rhs: Coweight) -> Coweight {
        self + (-rhs)
    }
}

impl std::ops::Neg for Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        self.scale(-1)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coweight{self}")
    }
}

impl FromStr for Coweight {
    type Err = HeckeError;

    /// Accepts `1,0`, `(1,0)` or `[1, 0]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let coords = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| HeckeError::Parse(format!("bad coweight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(HeckeError::Parse(format!("bad coweight `{s}`")));
        }
        Ok(Coweight::new(&coords))
    }
}

/// A positive root with its coroot.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub simple_coords: Vec<i32>,
    /// The root as an element of `X^*`.
    pub vector: [i32; MAX_DIM],
    pub coroot: Coweight,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteWeylElement {
    /// Action on `X_*`.
    pub matrix: Mat,
    pub length: usize,
    /// Reduced word in the finite simple reflections, numbered `1..=rank`.
    pub word: Vec<u8>,
}

/// The finite Weyl group as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteWeylGroup {
    pub elements: Vec<FiniteWeylElement>,
    mult: Vec<Vec<u8>>,
    inverse: Vec<u8>,
    /// `simple[i]` is the index of the simple reflection `s_{i+1}`.
    pub simple: Vec<u8>,
    pub longest: u8,
    /// `inv_positive[w][j]`: whether `w^-1` maps positive root `j` to a
    /// positive root.
    inv_positive: Vec<Vec<bool>>,
}

impl FiniteWeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mult[a as usize][b as usize]
    }

    pub fn inverse(&self, a: u8) -> u8 {
        self.inverse[a as usize]
    }

    pub fn length(&self, a: u8) -> usize {
        self.elements[a as usize].length
    }

    pub fn matrix(&self, a: u8) -> &Mat {
        &self.elements[a as usize].matrix
    }

    pub fn inverse_keeps_positive(&self, w: u8, root: usize) -> bool {
        self.inv_positive[w as usize][root]
    }

    pub fn index_of(&self, m: &Mat) -> Option<u8> {
        self.elements
            .iter()
            .position(|e| &e.matrix == m)
            .map(|i| i as u8)
    }
}

/// The group `Omega = X_* / Q^vee` of length-zero elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaGroup {
    Trivial,
    /// Infinite cyclic, generated by `t_translation * finite`.
    Cyclic {
        translation: Coweight,
        finite: u8,
    },
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: DatumLabel,
    pub cartan: Vec<Vec<i32>>,
    /// Dimension of `X_*`.
    pub dim: usize,
    /// Semisimple rank, i.e. number of finite simple reflections.
    pub rank: usize,
    pub simple_roots: Vec<[i32; MAX_DIM]>,
    pub simple_coroots: Vec<Coweight>,
    pub positive_roots: Vec<Root>,
    /// Index of the highest root in `positive_roots`.
    pub highest_root: usize,
    pub weyl: FiniteWeylGroup,
    pub omega: OmegaGroup,
}

fn identity_mat() -> Mat {
    let mut m = [[0; MAX_DIM]; MAX_DIM];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0; MAX_DIM]; MAX_DIM];
    for i in 0..MAX_DIM {
        for j in 0..MAX_DIM {
            out[i][j] = (0..MAX_DIM).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Reflection in `root` on `X_*`: `x -> x - <x, root> coroot`.
fn reflection_mat(dim: usize, root: &[i32; MAX_DIM], coroot: &Coweight) -> Mat {
    let mut m = identity_mat();
    for (i, row) in m.iter_mut().enumerate() {
        if i >= dim {
            continue;
        }
        for (j, entry) in row.iter_mut().enumerate().take(dim) {
            *entry -= coroot.coords[i] * root[j];
        }
    }
    // Padding coordinates stay fixed.
    m
}

impl RootDatum {
    /// Builds the datum for a label such as `A2-sc` or `GL2`.
    pub fn build(label: &str) -> Result<RootDatum> {
        Ok(Self::from_label(label.parse()?))
    }

    pub fn from_label(label: DatumLabel) -> RootDatum {
        type Rows = Vec<Vec<i32>>;
        let (cartan, dim, simple_roots, simple_coroots): (Rows, usize, Rows, Rows) = match label {
            DatumLabel::Gl2 => (vec![vec![2]], 2, vec![vec![1, -1]], vec![vec![1, -1]]),
            DatumLabel::Gl3 => (
                vec![vec![2, -1], vec![-1, 2]],
                3,
                vec![vec![1, -1, 0], vec![0, 1, -1]],
                vec![vec![1, -1, 0], vec![0, 1, -1]],
            ),
            _ => {
                // cartan[i][j] = <alpha_i^vee, alpha_j>
                let cartan = match label {
                    DatumLabel::A1 => vec![vec![2]],
                    DatumLabel::A2 => vec![vec![2, -1], vec![-1, 2]],
                    DatumLabel::C2 => vec![vec![2, -2], vec![-1, 2]],
                    DatumLabel::G2 => vec![vec![2, -3], vec![-1, 2]],
                    _ => unreachable!(),
                };
                let r = cartan.len();
                let roots = (0..r)
                    .map(|j| (0..r).map(|i| cartan[i][j]).collect())
                    .collect();
                let coroots = (0..r)
                    .map(|i| (0..r).map(|k| i32::from(i == k)).collect())
                    .collect();
                (cartan, r, roots, coroots)
            }
        };
        let rank = cartan.len();
        let to_vec = |v: &Vec<i32>| {
            let mut a = [0; MAX_DIM];
            a[..v.len()].copy_from_slice(v);
            a
        };
        let simple_roots: Vec<[i32; MAX_DIM]> = simple_roots.iter().map(to_vec).collect();
        let simple_coroots: Vec<Coweight> =
            simple_coroots.iter().map(|c| Coweight::new(c)).collect();

        let positive_roots =
            Self::generate_positive_roots(&cartan, dim, &simple_roots, &simple_coroots);
        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height())
            .map(|(i, _)| i)
            .unwrap();

        let weyl = Self::generate_weyl(dim, &simple_roots, &simple_coroots, &positive_roots);

        let mut datum = RootDatum {
            label,
            cartan,
            dim,
            rank,
            simple_roots,
            simple_coroots,
            positive_roots,
            highest_root,
            weyl,
            omega: OmegaGroup::Trivial,
        };
        if label.is_general_linear() {
            let mut e1 = vec![0; dim];
            e1[0] = 1;
            let t = Coweight::new(&e1);
            let finite = (0..datum.weyl.order() as u8)
                .find(|&w| datum.iwahori_matsumoto_length(&t, w) == 0)
                .expect("a length-zero lift of e_1 exists");
            datum.omega = OmegaGroup::Cyclic {
                translation: t,
                finite,
            };
        }
        datum
    }

    fn generate_positive_roots(
        cartan: &[Vec<i32>],
        dim: usize,
        simple_roots: &[[i32; MAX_DIM]],
        simple_coroots: &[Coweight],
    ) -> Vec<Root> {
        let r = cartan.len();
        // (root coords in simple roots, coroot coords in simple coroots)
        let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut found: Vec<(Vec<i32>, Vec<i32>)> = Vec::new();
        let mut queue: VecDeque<(Vec<i32>, Vec<i32>)> = VecDeque::new();
        for i in 0..r {
            let e: Vec<i32> = (0..r).map(|k| i32::from(i == k)).collect();
            queue.push_back((e.clone(), e));
        }
        while let Some((rc, cc)) = queue.pop_front() {
            if rc.iter().any(|&c| c < 0) || !seen.insert(rc.clone()) {
                continue;
            }
            for j in 0..r {
                // <alpha_j^vee, beta> and <beta^vee, alpha_j>
                let a: i32 = (0..r).map(|i| rc[i] * cartan[j][i]).sum();
                let b: i32 = (0..r).map(|i| cc[i] * cartan[i][j]).sum();
                let mut nrc = rc.clone();
                nrc[j] -= a;
                let mut ncc = cc.clone();
                ncc[j] -= b;
                queue.push_back((nrc, ncc));
            }
            found.push((rc, cc));
        }
        found.sort_by(|a, b| {
            let ha: i32 = a.0.iter().sum();
            let hb: i32 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        found
            .into_iter()
            .map(|(rc, cc)| {
                let mut vector = [0; MAX_DIM];
                for (i, &c) in rc.iter().enumerate() {
                    for k in 0..MAX_DIM {
                        vector[k] += c * simple_roots[i][k];
                    }
                }
                let mut co = vec![0; dim];
                for (i, &c) in cc.iter().enumerate() {
                    for (k, x) in co.iter_mut().enumerate() {
                        *x += c * simple_coroots[i].coords()[k];
                    }
                }
                Root {
                    simple_coords: rc,
                    vector,
                    coroot: Coweight::new(&co),
                }
            })
            .collect()
    }

    fn generate_weyl(
        dim: usize,
        simple_roots: &[[i32; MAX_DIM]],
        simple_coroots: &[Coweight],
        positive_roots: &[Root],
    ) -> FiniteWeylGroup {
        let gens: Vec<Mat> = simple_roots
            .iter()
            .zip(simple_coroots)
            .map(|(a, c)| reflection_mat(dim, a, c))
            .collect();
        let mut elements = vec![FiniteWeylElement {
            matrix: identity_mat(),
            length: 0,
            word: Vec::new(),
        }];
        let mut index: HashMap<Mat, u8> = HashMap::from([(identity_mat(), 0u8)]);
        let mut head = 0;
        while head < elements.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&elements[head].matrix, g);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(m) {
                    e.insert(elements.len() as u8);
                    let mut word = elements[head].word.clone();
                    word.push(i as u8 + 1);
                    elements.push(FiniteWeylElement {
                        matrix: m,
                        length: elements[head].length + 1,
                        word,
                    });
                }
            }
            head += 1;
        }
        let n = elements.len();
        let mult: Vec<Vec<u8>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| index[&mat_mul(&elements[a].matrix, &elements[b].matrix)])
                    .collect()
            })
            .collect();
        let inverse: Vec<u8> = (0..n)
            .map(|a| (0..n).find(|&b| mult[a][b] == 0).unwrap() as u8)
            .collect();
        let simple = gens.iter().map(|g| index[g]).collect();
        let longest = (0..n).max_by_key(|&w| elements[w].length).unwrap() as u8;
        let positive: BTreeSet<[i32; MAX_DIM]> = positive_roots.iter().map(|r| r.vector).collect();
        // w^-1 acts on X^* by the transpose of w's matrix on X_*.
        let inv_positive = elements
            .iter()
            .map(|e| {
                positive_roots
                    .iter()
                    .map(|r| {
                        let mut img = [0; MAX_DIM];
                        for (j, x) in img.iter_mut().enumerate() {
                            *x = (0..MAX_DIM).map(|i| e.matrix[i][j] * r.vector[i]).sum();
                        }
                        positive.contains(&img)
                    })
                    .collect()
            })
            .collect();
        FiniteWeylGroup {
            elements,
            mult,
            inverse,
            simple,
            longest,
            inv_positive,
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn highest(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    /// Image of a root (in `X^*`) under the finite Weyl element `w`.
    pub fn act_on_root(&self, w: u8, root: &[i32; MAX_DIM]) -> [i32; MAX_DIM] {
        // w acts on X^* by the inverse transpose, i.e. the transpose of w^-1.
        let m = self.weyl.matrix(self.weyl.inverse(w));
        let mut img = [0; MAX_DIM];
        for (j, x) in img.iter_mut().enumerate() {
            *x = (0..MAX_DIM).map(|i| m[i][j] * root[i]).sum();
        }
        img
    }

    pub fn is_positive_root(&self, v: &[i32; MAX_DIM]) -> bool {
        self.positive_roots.iter().any(|r| &r.vector == v)
    }

    /// Length of `t_lambda * w` by the Iwahori-Matsumoto formula.
    pub fn iwahori_matsumoto_length(&self, lambda: &Coweight, w: u8) -> usize {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let p = lambda.pair(&r.vector);
                if self.weyl.inverse_keeps_positive(w, j) {
                    p.unsigned_abs()
                } else {
                    (p - 1).unsigned_abs()
                }
            })
            .sum::<u32>() as usize
    }

    pub fn check_dim(&self, lambda: &Coweight) -> Result<()> {
        if lambda.dim() != self.dim {
            return Err(HeckeError::Dimension {
                expected: self.dim,
                got: lambda.dim(),
            });
        }
        Ok(())
    }

    pub fn coweight(&self, coords: &[i32]) -> Result<Coweight> {
        if coords.len() != self.dim {
            return Err(HeckeError::Dimension {
                expected: self.dim,
                got: coords.len(),
            });
        }
        Ok(Coweight::new(coords))
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| lambda.pair(a) >= 0)
    }

    pub fn reflect(&self, i: usize, lambda: &Coweight) -> Coweight {
        let p = lambda.pair(&self.simple_roots[i]);
        *lambda - self.simple_coroots[i].scale(p)
    }

    /// The dominant element of the Weyl orbit of `lambda`.
    pub fn dominant_representative(&self, lambda: &Coweight) -> Coweight {
        let mut x = *lambda;
        'outer: loop {
            for i in 0..self.rank {
                if x.pair(&self.simple_roots[i]) < 0 {
                    x = self.reflect(i, &x);
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// The finite Weyl orbit of `lambda`, sorted.
    pub fn weyl_orbit(&self, lambda: &Coweight) -> BTreeSet<Coweight> {
        let mut orbit = BTreeSet::from([*lambda]);
        let mut queue = vec![*lambda];
        while let Some(x) = queue.pop() {
            for i in 0..self.rank {
                let y = self.reflect(i, &x);
                if orbit.insert(y) {
                    queue.push(y);
                }
            }
        }
        orbit
    }

    /// `sum_{alpha > 0} |<lambda, alpha>|`, the length of `t_lambda`.
    pub fn translation_length(&self, lambda: &Coweight) -> usize {
        self.positive_roots
            .iter()
            .map(|r| lambda.pair(&r.vector).unsigned_abs() as usize)
            .sum()
    }

    /// Coordinates of `d` in the simple coroots, if `d` lies in the coroot
    /// lattice.
    pub fn coroot_coordinates(&self, d: &Coweight) -> Option<Vec<i32>> {
        if self.label.is_general_linear() {
            let c = d.coords();
            if c.iter().sum::<i32>() != 0 {
                return None;
            }
            let mut partial = 0;
            Some(
                c[..c.len() - 1]
                    .iter()
                    .map(|x| {
                        partial += x;
                        partial
                    })
                    .collect(),
            )
        } else {
            Some(d.coords().to_vec())
        }
    }

    /// Class of `lambda` in `X_* / Q^vee`, as an integer (0 when trivial).
    pub fn lattice_class(&self, lambda: &Coweight) -> i32 {
        if self.label.is_general_linear() {
            lambda.coords().iter().sum()
        } else {
            0
        }
    }

    /// `lambda <= mu`: `mu - lambda` is a nonnegative combination of
    /// positive coroots.
    pub fn dominance_leq(&self, lambda: &Coweight, mu: &Coweight) -> Result<bool> {
        for x in [lambda, mu] {
            self.check_dim(x)?;
            if !self.is_dominant(x) {
                return Err(HeckeError::NotDominant(x.to_string()));
            }
        }
        Ok(self
            .coroot_coordinates(&(*mu - *lambda))
            .is_some_and(|c| c.iter().all(|&x| x >= 0)))
    }

    /// Dominant coweights with `translation_length <= max_len`, ordered by
    /// length then coordinates.
    ///
    /// For `GL_n` the central direction makes this infinite; the enumeration
    /// is restricted to last coordinate in `{-1, 0, 1}`.
    pub fn dominant_coweights(&self, max_len: usize) -> Vec<Coweight> {
        let b = max_len as i32;
        let mut out = Vec::new();
        if self.label.is_general_linear() {
            for last in -1..=1 {
                let mut cur = vec![0; self.dim];
                self.gl_fill(&mut cur, 0, last, b, &mut out);
            }
        } else {
            let mut cur = vec![0; self.dim];
            self.box_fill(&mut cur, 0, b, &mut out);
        }
        out.retain(|x| self.is_dominant(x) && self.translation_length(x) <= max_len);
        out.sort_by_key(|x| (self.translation_length(x), *x));
        out.dedup();
        out
    }

    fn box_fill(&self, cur: &mut Vec<i32>, i: usize, b: i32, out: &mut Vec<Coweight>) {
        if i == cur.len() {
            out.push(Coweight::new(cur));
            return;
        }
        for c in 0..=b {
            cur[i] = c;
            self.box_fill(cur, i + 1, b, out);
        }
    }

    fn gl_fill(&self, cur: &mut Vec<i32>, i: usize, last: i32, b: i32, out: &mut Vec<Coweight>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = last;
            out.push(Coweight::new(cur));
            return;
        }
        for c in last..=last + b {
            cur[i] = c;
            self.gl_fill(cur, i + 1, last, b, out);
        }
    }

    /// Poincare polynomial of the finite Weyl group, as coefficients of
    /// `q^0, q^1, ...`.
    pub fn poincare_coefficients(&self) -> Vec<i64> {
        let top = self.weyl.length(self.weyl.longest);
        let mut c = vec![0i64; top + 1];
        for e in &self.weyl.elements {
            c[e.length] += 1;
        }
        c
    }

    /// Stable, human-readable description; also the input of the fingerprint.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("datum {}\n", self.label));
        s.push_str(&format!(
            "lattice rank {}, semisimple rank {}\n",
            self.dim, self.rank
        ));
        s.push_str("cartan matrix\n");
        for row in &self.cartan {
            let r: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            s.push_str(&format!("  [{}]\n", r.join("")));
        }
        s.push_str(&format!("positive roots: {}\n", self.positive_roots.len()));
        for (i, r) in self.positive_roots.iter().enumerate() {
            let v = Coweight::new(&r.vector[..self.dim]);
            s.push_str(&format!(
                "  root {i}: {v}  coroot {}  height {}\n",
                r.coroot,
                r.height()
            ));
        }
        s.push_str(&format!(
            "highest root: {}\n",
            Coweight::new(&self.highest().vector[..self.dim])
        ));
        s.push_str(&format!("finite Weyl group order: {}\n", self.weyl.order()));
        match &self.omega {
            OmegaGroup::Trivial => s.push_str("omega: trivial\n"),
            OmegaGroup::Cyclic {
                translation,
                finite,
            } => {
                let word: Vec<String> = self.weyl.elements[*finite as usize]
                    .word
                    .iter()
                    .map(|i| format!("s{i}"))
                    .collect();
                let word = if word.is_empty() {
                    "e".to_string()
                } else {
                    word.join(".")
                };
                s.push_str(&format!(
                    "omega: Z, generator t{translation} * {word} (length 0)\n"
                ));
            }
        }
        s
    }

    /// Hex digest identifying the datum in cache files.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.describe().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    #[test]
    fn invariants_for_all_labels() {
        let expected = [
            (DatumLabel::A1, 1, 2),
            (DatumLabel::A2, 3, 6),
            (DatumLabel::C2, 4, 8),
            (DatumLabel::G2, 6, 12),
            (DatumLabel::Gl2, 1, 2),
            (DatumLabel::Gl3, 3, 6),
        ];
        for (label, roots, order) in expected {
            let d = RootDatum::from_label(label);
            assert_eq!(d.num_positive_roots(), roots, "{label}");
            assert_eq!(d.weyl.order(), order, "{label}");
            for (i, row) in d.cartan.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(c, 2);
                    } else {
                        assert!(c <= 0);
                    }
                    assert_eq!(d.simple_coroots[i].pair(&d.simple_roots[j]), c);
                }
            }
            for r in &d.positive_roots {
                assert_eq!(r.coroot.pair(&r.vector), 2);
            }
            assert_eq!(d.weyl.length(d.weyl.longest), roots);
        }
    }

    #[test]
    fn gl2_shape() {
        let d = RootDatum::build("GL2").unwrap();
        assert_eq!(d.dim, 2);
        assert_eq!(d.weyl.order(), 2);
        assert_eq!(&d.positive_roots[0].vector[..2], &[1, -1]);
        assert!(matches!(d.omega, OmegaGroup::Cyclic { .. }));
        assert!(d.describe().contains("omega: Z"));
    }

    #[test]
    fn unsupported_label_lists_supported() {
        let err = RootDatum::build("E8").unwrap_err().to_string();
        assert!(err.contains("GL2") && err.contains("A1-sc"));
    }

    #[test]
    fn orbits() {
        let a1 = RootDatum::build("A1-sc").unwrap();
        assert_eq!(
            a1.weyl_orbit(&cw(&[1])),
            BTreeSet::from([cw(&[1]), cw(&[-1])])
        );
        let gl2 = RootDatum::build("GL2").unwrap();
        assert_eq!(
            gl2.weyl_orbit(&cw(&[1, 0])),
            BTreeSet::from([cw(&[1, 0]), cw(&[0, 1])])
        );
        for label in DatumLabel::ALL {
            let d = RootDatum::from_label(label);
            let z = Coweight::zero(d.dim);
            assert_eq!(d.weyl_orbit(&z).len(), 1);
        }
    }

    #[test]
    fn orbit_has_one_dominant_and_is_closed() {
        for label in DatumLabel::ALL {
            let d = RootDatum::from_label(label);
            for lambda in d.dominant_coweights(8) {
                let orbit = d.weyl_orbit(&lambda);
                assert_eq!(orbit.iter().filter(|x| d.is_dominant(x)).count(), 1);
                for x in &orbit {
                    for i in 0..d.rank {
                        assert!(orbit.contains(&d.reflect(i, x)));
                    }
                    assert_eq!(d.translation_length(x), d.translation_length(&lambda));
                    assert_eq!(d.dominant_representative(x), lambda);
                }
            }
        }
    }

    #[test]
    fn translation_lengths() {
        let a1 = RootDatum::build("A1-sc").unwrap();
        assert_eq!(a1.translation_length(&cw(&[1])), 2);
        let gl2 = RootDatum::build("GL2").unwrap();
        assert_eq!(gl2.translation_length(&cw(&[1, 0])), 1);
        // rho^vee = alpha_1^vee + alpha_2^vee pairs to 1, 1, 2 with the
        // three positive roots.
        let a2 = RootDatum::build("A2-sc").unwrap();
        let rho = cw(&[1, 1]);
        let pairings: Vec<i32> = a2
            .positive_roots
            .iter()
            .map(|r| rho.pair(&r.vector))
            .collect();
        assert_eq!(pairings.iter().map(|p| p.abs()).sum::<i32>(), 4);
        assert_eq!(a2.translation_length(&rho), 4);
    }

    #[test]
    fn dominance() {
        let a1 = RootDatum::build("A1-sc").unwrap();
        assert!(a1.dominance_leq(&cw(&[0]), &cw(&[1])).unwrap());
        assert!(a1.dominance_leq(&cw(&[1]), &cw(&[1])).unwrap());
        assert!(a1.dominance_leq(&cw(&[-1]), &cw(&[1])).is_err());
        let gl2 = RootDatum::build("GL2").unwrap();
        assert!(!gl2.dominance_leq(&cw(&[1, 0]), &cw(&[2, 0])).unwrap());
        assert!(gl2.dominance_leq(&cw(&[1, 1]), &cw(&[2, 0])).unwrap());
    }

    #[test]
    fn dominance_is_partial_order() {
        for label in DatumLabel::ALL {
            let d = RootDatum::from_label(label);
            let doms = d.dominant_coweights(6);
            for a in &doms {
                for b in &doms {
                    let ab = d.dominance_leq(a, b).unwrap();
                    let ba = d.dominance_leq(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &doms {
                        if d.dominance_leq(b, c).unwrap() {
                            assert!(d.dominance_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fingerprint_distinguishes_data() {
        let fps: BTreeSet<String> = DatumLabel::ALL
            .iter()
            .map(|&l| RootDatum::from_label(l).fingerprint())
            .collect();
        assert_eq!(fps.len(), DatumLabel::ALL.len());
        assert_eq!(
            RootDatum::from_label(DatumLabel::A2).fingerprint(),
            RootDatum::from_label(DatumLabel::A2).fingerprint()
        );
    }
}
