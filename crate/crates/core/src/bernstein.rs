//! Bernstein elements, the central elements `z_lambda`, and the central lift
//! inverting the averaging map on the center.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::affine_weyl::AffineWeylGroup;
use crate::error::{HeckeError, Result};
use crate::hecke::HeckeElement;
use crate::laurent::LaurentPoly;
use crate::root_datum::Coweight;
use crate::spherical::{self, SphericalElement};

/// The pair `(lambda_plus, lambda_minus)` of dominant coweights with
/// `lambda = lambda_plus - lambda_minus` used to define `theta_lambda`.
///
/// `lambda_minus` is the shortest dominant coweight making the sum dominant,
/// ties broken by coordinates; for `GL_n` its last coordinate is zero.
pub fn dominant_split(group: &AffineWeylGroup, lambda: &Coweight) -> Result<(Coweight, Coweight)> {
    let d = group.datum();
    d.check_dim(lambda)?;
    if d.is_dominant(lambda) {
        return Ok((*lambda, Coweight::zero(d.dim)));
    }
    let mut bound = 2;
    loop {
        let found = d
            .dominant_coweights(bound)
            .into_iter()
            .filter(|mu| !d.label.is_general_linear() || mu.coords()[d.dim - 1] == 0)
            .find(|mu| d.is_dominant(&(*lambda + *mu)));
        if let Some(mu) = found {
            return Ok((*lambda + mu, mu));
        }
        bound *= 2;
        if bound > 1 << 12 {
            return Err(HeckeError::Internal(format!(
                "no dominant split for {lambda}"
            )));
        }
    }
}

/// `theta_lambda = v^-l(t_lambda) T_{t_lambda}` for dominant `lambda`,
/// extended by `theta_lambda = theta_{lambda+} theta_{lambda-}^-1`.
pub fn theta(group: &AffineWeylGroup, lambda: &Coweight) -> Result<HeckeElement> {
    let (plus, minus) = dominant_split(group, lambda)?;
    theta_from_split(group, &plus, &minus)
}

/// `theta_plus theta_minus^-1` for an explicit pair of dominant coweights.
pub fn theta_from_split(
    group: &AffineWeylGroup,
    plus: &Coweight,
    minus: &Coweight,
) -> Result<HeckeElement> {
    let d = group.datum();
    for c in [plus, minus] {
        d.check_dim(c)?;
        if !d.is_dominant(c) {
            return Err(HeckeError::NotDominant(c.to_string()));
        }
    }
    let tp = group.translation(plus);
    let tm = group.translation(minus);
    let shift = group.length(&tm) as i32 - group.length(&tp) as i32;
    Ok(HeckeElement::basis(group, tp)
        .mul_basis_inverse_right(&tm)
        .shift(shift))
}

/// True iff `h` commutes with every `T_s` and with `T_omega` for a generator
/// of `Omega`.
pub fn is_central(h: &HeckeElement) -> bool {
    let g = h.group();
    for s in g.simple_indices() {
        if h.mul_simple_left(s) != h.mul_simple_right(s) {
            return false;
        }
    }
    if g.has_omega() {
        let w = g.omega_power(1).expect("omega generator");
        if h.mul_length_zero_left(&w) != h.mul_length_zero_right(&w) {
            return false;
        }
    }
    true
}

/// A central element together with its expansion `sum a_lambda z_lambda`.
#[derive(Clone, Debug)]
pub struct CentralElement {
    pub element: HeckeElement,
    pub expansion: BTreeMap<Coweight, LaurentPoly>,
}

impl CentralElement {
    pub fn is_central(&self) -> bool {
        is_central(&self.element)
    }
}

/// Central elements, averages and lifts for one datum, with caches.
pub struct BernsteinCenter {
    group: AffineWeylGroup,
    cutoff: usize,
    verify: bool,
    z_cache: RwLock<HashMap<Coweight, Arc<HeckeElement>>>,
    pi_cache: RwLock<HashMap<Coweight, Arc<SphericalElement>>>,
}

impl BernsteinCenter {
    pub fn new(group: &AffineWeylGroup, cutoff: usize, verify: bool) -> Self {
        Self {
            group: group.clone(),
            cutoff,
            verify,
            z_cache: RwLock::new(HashMap::new()),
            pi_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn check_range(&self, lambda: &Coweight) -> Result<()> {
        let d = self.group.datum();
        d.check_dim(lambda)?;
        if !d.is_dominant(lambda) {
            return Err(HeckeError::NotDominant(lambda.to_string()));
        }
        let length = d.translation_length(lambda);
        if length > self.cutoff {
            return Err(HeckeError::CutoffExceeded {
                length,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }

    /// `z_lambda = sum_{mu in W lambda} theta_mu`.
    pub fn z(&self, lambda: &Coweight) -> Result<Arc<HeckeElement>> {
        if let Some(z) = self.z_cache.read().unwrap().get(lambda) {
            return Ok(z.clone());
        }
        self.check_range(lambda)?;
        let mut acc = HeckeElement::zero(&self.group);
        for mu in self.group.datum().weyl_orbit(lambda) {
            acc = &acc + &theta(&self.group, &mu)?;
        }
        if self.verify && !is_central(&acc) {
            return Err(HeckeError::Internal(format!("z{lambda} is not central")));
        }
        let z = Arc::new(acc);
        self.z_cache.write().unwrap().insert(*lambda, z.clone());
        Ok(z)
    }

    pub fn central_element(&self, lambda: &Coweight) -> Result<CentralElement> {
        Ok(CentralElement {
            element: (*self.z(lambda)?).clone(),
            expansion: BTreeMap::from([(*lambda, LaurentPoly::one())]),
        })
    }

    /// `pi(z_lambda)` in the `m`-basis.
    pub fn pi_of_z(&self, lambda: &Coweight) -> Result<Arc<SphericalElement>> {
        if let Some(p) = self.pi_cache.read().unwrap().get(lambda) {
            return Ok(p.clone());
        }
        let z = self.z(lambda)?;
        let p = Arc::new(spherical::pi_map(&z)?);
        self.pi_cache.write().unwrap().insert(*lambda, p.clone());
        Ok(p)
    }

    /// The unique `sum a_lambda z_lambda` with `pi` equal to `c`, by
    /// back-substitution from the longest coweight down.
    pub fn central_lift(&self, c: &SphericalElement) -> Result<CentralElement> {
        if c.group().label() != self.group.label() {
            return Err(HeckeError::DatumMismatch {
                left: self.group.label().to_string(),
                right: c.group().label().to_string(),
            });
        }
        let d = self.group.datum();
        let mut residual = c.clone();
        let mut expansion: BTreeMap<Coweight, LaurentPoly> = BTreeMap::new();
        while let Some(lambda) = residual
            .terms()
            .keys()
            .max_by_key(|l| (d.translation_length(l), **l))
            .copied()
        {
            self.check_range(&lambda)?;
            let row = self.pi_of_z(&lambda)?;
            let diag = row.coeff(&lambda);
            let (k, sign) = diag
                .as_monomial()
                .filter(|(_, s)| s.abs() == 1)
                .ok_or_else(|| {
                    HeckeError::Convention(format!(
                        "diagonal entry {diag} of pi(z{lambda}) is not a unit"
                    ))
                })?;
            let a = residual.coeff(&lambda).shift(-k).scale(sign);
            residual = &residual - &row.scale(&a);
            if !residual.coeff(&lambda).is_zero() {
                return Err(HeckeError::Internal(format!(
                    "back-substitution stalled at {lambda}"
                )));
            }
            *expansion.entry(lambda).or_default() += &a;
        }
        expansion.retain(|_, a| !a.is_zero());
        let mut element = HeckeElement::zero(&self.group);
        for (lambda, a) in &expansion {
            element = &element + &self.z(lambda)?.scale(a);
        }
        if self.verify && spherical::pi_map(&element)? != *c {
            return Err(HeckeError::Internal(
                "central lift fails the section property".into(),
            ));
        }
        Ok(CentralElement { element, expansion })
    }

    /// Compares `lift(m_lambda * m_mu)` with `lift(m_lambda) lift(m_mu)`,
    /// returning the verdict and the difference.
    pub fn lift_is_multiplicative(
        &self,
        lambda: &Coweight,
        mu: &Coweight,
    ) -> Result<(bool, HeckeElement)> {
        let ml = SphericalElement::basis(&self.group, lambda)?;
        let mm = SphericalElement::basis(&self.group, mu)?;
        let lhs = self.central_lift(&spherical::sph_conv(&ml, &mm, self.cutoff)?)?;
        let rhs = self
            .central_lift(&ml)?
            .element
            .mul(&self.central_lift(&mm)?.element)?;
        let diff = &lhs.element - &rhs;
        Ok((diff.is_zero(), diff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::DatumLabel;

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c)
    }

    fn small_coweights(dim: usize, r: i32) -> Vec<Coweight> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i32>| {
                    (-r..=r).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.iter().map(|v| Coweight::new(v)).collect()
    }

    #[test]
    fn theta_zero_and_dominant() {
        let g = AffineWeylGroup::build("A1-sc").unwrap();
        assert_eq!(theta(&g, &cw(&[0])).unwrap(), HeckeElement::one(&g));
        let t = theta(&g, &cw(&[1])).unwrap();
        assert_eq!(
            t,
            HeckeElement::monomial(&g, g.translation(&cw(&[1])), LaurentPoly::v_pow(-2))
        );
    }

    #[test]
    fn theta_negative_a1() {
        let g = AffineWeylGroup::build("A1-sc").unwrap();
        let t = theta(&g, &cw(&[-1])).unwrap();
        let top = g.translation(&cw(&[-1]));
        assert_eq!(t.coeff(&top), LaurentPoly::v_pow(-2));
        assert!(t.support().all(|x| g.length(x) <= 2));
        let prod = t.mul(&theta(&g, &cw(&[1])).unwrap()).unwrap();
        assert_eq!(prod, HeckeElement::one(&g));
    }

    #[test]
    fn theta_is_multiplicative() {
        for label in [DatumLabel::A1, DatumLabel::Gl2, DatumLabel::A2] {
            let g = AffineWeylGroup::from_label(label);
            let r = if g.datum().dim == 1 { 3 } else { 1 };
            let ws = small_coweights(g.datum().dim, r);
            for a in &ws {
                let ta = theta(&g, a).unwrap();
                for b in &ws {
                    let tb = theta(&g, b).unwrap();
                    let tab = theta(&g, &(*a + *b)).unwrap();
                    assert_eq!(ta.mul(&tb).unwrap(), tab, "{label} {a} {b}");
                    assert_eq!(tb.mul(&ta).unwrap(), tab, "{label} {b} {a}");
                }
            }
        }
    }

    #[test]
    fn theta_independent_of_split() {
        let g = AffineWeylGroup::build("A2-sc").unwrap();
        let d = g.datum();
        let lambda = cw(&[1, -1]);
        let reference = theta(&g, &lambda).unwrap();
        for mu in d.dominant_coweights(8) {
            let plus = lambda + mu;
            if d.is_dominant(&plus) {
                assert_eq!(theta_from_split(&g, &plus, &mu).unwrap(), reference, "{mu}");
            }
        }
    }

    #[test]
    fn centrality_examples() {
        let g = AffineWeylGroup::build("A1-sc").unwrap();
        assert!(is_central(&HeckeElement::one(&g)));
        assert!(!is_central(&HeckeElement::simple(&g, 0)));
        let center = BernsteinCenter::new(&g, 6, true);
        assert!(is_central(&center.z(&cw(&[1])).unwrap()));
        assert_eq!(*center.z(&cw(&[0])).unwrap(), HeckeElement::one(&g));
    }

    #[test]
    fn gl2_z() {
        let g = AffineWeylGroup::build("GL2").unwrap();
        let center = BernsteinCenter::new(&g, 6, true);
        let z = center.z(&cw(&[1, 0])).unwrap();
        let expected = HeckeElement::parse(
            &g,
            "v^-1*T[s0*omega^1] + v^-1*T[s1*omega^1] + (v^-1-v)*T[omega^1]",
        )
        .unwrap();
        assert_eq!(*z, expected);
        let p = center.pi_of_z(&cw(&[1, 0])).unwrap();
        assert_eq!(
            *p,
            SphericalElement::basis(&g, &cw(&[1, 0]))
                .unwrap()
                .scale(&LaurentPoly::v_pow(-1))
        );
    }

    #[test]
    fn lift_and_section() {
        for label in [DatumLabel::A1, DatumLabel::Gl2] {
            let g = AffineWeylGroup::from_label(label);
            let center = BernsteinCenter::new(&g, 6, true);
            assert_eq!(
                center
                    .central_lift(&SphericalElement::one(&g))
                    .unwrap()
                    .element,
                HeckeElement::one(&g)
            );
            for lambda in g.datum().dominant_coweights(4) {
                let m = SphericalElement::basis(&g, &lambda).unwrap();
                let lift = center.central_lift(&m).unwrap();
                assert!(lift.is_central());
                assert_eq!(spherical::pi_map(&lift.element).unwrap(), m);
            }
        }
    }

    #[test]
    fn lift_cutoff() {
        let g = AffineWeylGroup::build("A1-sc").unwrap();
        let center = BernsteinCenter::new(&g, 2, false);
        let m = SphericalElement::basis(&g, &cw(&[2])).unwrap();
        assert!(matches!(
            center.central_lift(&m),
            Err(HeckeError::CutoffExceeded { .. })
        ));
    }

    #[test]
    fn multiplicative_small() {
        let g = AffineWeylGroup::build("A1-sc").unwrap();
        let center = BernsteinCenter::new(&g, 6, false);
        for (a, b) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
            let (ok, diff) = center.lift_is_multiplicative(&cw(&[a]), &cw(&[b])).unwrap();
            assert!(ok, "{a} {b}: {diff}");
        }
    }

    #[test]
    fn z_commute() {
        let g = AffineWeylGroup::build("A2-sc").unwrap();
        let center = BernsteinCenter::new(&g, 4, false);
        let ls = g.datum().dominant_coweights(4);
        for a in &ls {
            for b in &ls {
                let za = center.z(a).unwrap();
                let zb = center.z(b).unwrap();
                assert_eq!(za.mul(&zb).unwrap(), zb.mul(&za).unwrap());
            }
        }
    }
}
