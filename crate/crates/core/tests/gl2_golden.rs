//! GL(2) golden values: derived from the theta-expansion oracle and frozen.

mod common;

use hecke_core::kl::KlTable;
use hecke_core::spherical::{self, SphericalElement};
use hecke_core::{
    verify_gl2, AffineWeylGroup, BernsteinCenter, Coweight, HeckeElement, LaurentPoly,
};

const Z10: &str = "v^-1*T[s0*omega^1] + v^-1*T[s1*omega^1] + (v^-1-v)*T[omega^1]";
const LIFT10: &str = "T[s0*omega^1] + T[s1*omega^1] + (1-q)*T[omega^1]";

fn gl2() -> AffineWeylGroup {
    AffineWeylGroup::build("GL2").unwrap()
}

#[test]
fn oracle_reproduces_frozen_z() {
    let g = gl2();
    let z = common::gl2_z10_by_theta(&g);
    assert_eq!(z, HeckeElement::parse(&g, Z10).unwrap());
    let center = BernsteinCenter::new(&g, 6, true);
    assert_eq!(*center.z(&Coweight::new(&[1, 0])).unwrap(), z);
}

#[test]
fn oracle_average_fixes_twist() {
    let g = gl2();
    let z = common::gl2_z10_by_theta(&g);
    let avg = common::average_by_product(&g, &z);
    let m = HeckeElement::from_terms(
        &g,
        g.coset_elements(&Coweight::new(&[1, 0]))
            .unwrap()
            .into_iter()
            .map(|x| (x, LaurentPoly::v_pow(-1))),
    );
    assert_eq!(avg, m);
}

#[test]
fn frozen_lift_and_decomposition() {
    let g = gl2();
    let center = BernsteinCenter::new(&g, 6, true);
    let m = SphericalElement::basis(&g, &Coweight::new(&[1, 0])).unwrap();
    let lift = center.central_lift(&m).unwrap();
    assert_eq!(lift.element, HeckeElement::parse(&g, LIFT10).unwrap());
    assert_eq!(lift.element, common::gl2_z10_by_theta(&g).shift(1));
    assert_eq!(spherical::pi_map(&lift.element).unwrap(), m);

    let table = KlTable::compute(&g, 2).unwrap();
    let dec = table.decompose(&lift.element).unwrap();
    let el = |s: &str| g.parse_element(s).unwrap();
    let expected = [
        (el("s0*omega^1"), LaurentPoly::v()),
        (el("s1*omega^1"), LaurentPoly::v()),
        (el("omega^1"), LaurentPoly::from_terms([(0, -1), (2, -1)])),
    ]
    .into_iter()
    .collect();
    assert_eq!(dec, expected);
}

#[test]
fn report_matches_golden_values() {
    let rep = verify_gl2().unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(
        rep.lift.element,
        HeckeElement::parse(&gl2(), LIFT10).unwrap()
    );
    assert!(rep.summary.contains("y1 = w[s0]*omega^1"));
    assert!(rep.summary.contains("y2 = w[s1]*omega^1"));
}
