//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hecke_core::kl::KlTable;
use hecke_core::spherical::{self, SphericalElement};
use hecke_core::workbench::{
    parity_kl_cutoff, verify_bott_samelson, verify_centrality, verify_commutativity,
    verify_multiplicativity, verify_parity, verify_satake, verify_section, VerifyReport,
};
use hecke_core::{verify_gl2, AffineWeylGroup, BernsteinCenter, DatumLabel, HeckeElement};

const CUTOFF: usize = 6;
const CENTER_DATA: [DatumLabel; 4] = [
    DatumLabel::A1,
    DatumLabel::Gl2,
    DatumLabel::A2,
    DatumLabel::C2,
];

struct Verdict {
    passed: bool,
    detail: String,
}

fn from_reports(reports: Vec<VerifyReport>) -> Verdict {
    let cases: usize = reports.iter().map(|r| r.checked).sum();
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    Verdict {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{cases} cases")
        } else {
            failures.join("; ")
        },
    }
}

fn center(label: DatumLabel) -> BernsteinCenter {
    BernsteinCenter::new(&AffineWeylGroup::from_label(label), CUTOFF, false)
}

fn over_center_data(f: fn(&BernsteinCenter) -> hecke_core::Result<VerifyReport>) -> Verdict {
    from_reports(
        CENTER_DATA
            .iter()
            .map(|&l| f(&center(l)).unwrap())
            .collect(),
    )
}

fn criterion_gl2() -> Verdict {
    let rep = verify_gl2().unwrap();
    let g = rep.lift.element.group().clone();
    let oracle = common::gl2_z10_by_theta(&g).shift(1);
    let oracle_ok = rep.lift.element == oracle;
    let ratio_ok = {
        let co = &rep.decomposition[&rep.omega];
        let low = hecke_core::LaurentPoly::from_terms(co.terms().filter(|(e, _)| *e == 0));
        let high = hecke_core::LaurentPoly::from_terms(co.terms().filter(|(e, _)| *e == 2));
        co.num_terms() == 2 && high == low.shift(2)
    };
    Verdict {
        passed: rep.passed() && oracle_ok && ratio_ok,
        detail: format!(
            "assertions {}/4, theta oracle {}, delta ratio q {}",
            rep.assertions.iter().filter(|a| a.passed).count(),
            oracle_ok,
            ratio_ok
        ),
    }
}

fn criterion_bs() -> Verdict {
    let mut reports = Vec::new();
    for (label, len) in [
        (DatumLabel::A1, 8),
        (DatumLabel::A2, 6),
        (DatumLabel::C2, 6),
    ] {
        let g = AffineWeylGroup::from_label(label);
        let table = KlTable::compute(&g, len).unwrap();
        reports.push(verify_bott_samelson(&table, len).unwrap());
    }
    from_reports(reports)
}

fn criterion_kl_oracle() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (label, len) in [(DatumLabel::A2, 5), (DatumLabel::A1, 8)] {
        let g = AffineWeylGroup::from_label(label);
        let table = KlTable::compute(&g, len).unwrap();
        let oracle = common::kl_by_bar_solve(&g, len);
        for w in table.elements() {
            for y in table.elements() {
                let got = table.polynomial(y, w).unwrap();
                let want = oracle.get(&(*y, *w)).cloned().unwrap_or_default();
                checked += 1;
                if got != want {
                    bad.push(format!(
                        "{label} P[{}, {}]: {got} vs {want}",
                        g.basis_label(y),
                        g.basis_label(w)
                    ));
                }
            }
        }
    }
    Verdict {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} pairs")
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_q_one() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for label in DatumLabel::ALL {
        let g = AffineWeylGroup::from_label(label);
        let d = g.datum();
        let ws = d.dominant_coweights(CUTOFF);
        for a in &ws {
            for b in &ws {
                if d.translation_length(a) + d.translation_length(b) > CUTOFF {
                    continue;
                }
                let ma = SphericalElement::basis(&g, a).unwrap();
                let mb = SphericalElement::basis(&g, b).unwrap();
                let got = spherical::sph_conv(&ma, &mb, CUTOFF)
                    .unwrap()
                    .at_q_one()
                    .unwrap();
                let want = common::orbit_product(d, a, b);
                checked += 1;
                if got != want {
                    bad.push(format!("{label} m{a} * m{b}"));
                }
            }
        }
    }
    Verdict {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} products")
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_parity() -> Verdict {
    let mut reports = Vec::new();
    for label in DatumLabel::ALL {
        let g = AffineWeylGroup::from_label(label);
        let table = KlTable::compute(&g, parity_kl_cutoff(&g, CUTOFF)).unwrap();
        reports.push(verify_parity(&table, CUTOFF).unwrap());
    }
    from_reports(reports)
}

fn criterion_commutativity() -> Verdict {
    let v = over_center_data(verify_commutativity);
    let mut bad = Vec::new();
    for label in CENTER_DATA {
        let c = center(label);
        let ws = c.group().datum().dominant_coweights(CUTOFF);
        for a in &ws {
            for b in &ws {
                let (za, zb): (HeckeElement, HeckeElement) =
                    ((*c.z(a).unwrap()).clone(), (*c.z(b).unwrap()).clone());
                if za.mul(&zb).unwrap() != zb.mul(&za).unwrap() {
                    bad.push(format!("{label} z{a} z{b}"));
                }
            }
        }
    }
    Verdict {
        passed: v.passed && bad.is_empty(),
        detail: if bad.is_empty() {
            v.detail
        } else {
            format!("{}; {}", v.detail, bad.join("; "))
        },
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Option<Duration>, fn() -> Verdict);
    let criteria: [Criterion; 10] = [
        (
            "centrality of z_lambda",
            Some(Duration::from_secs(60)),
            || over_center_data(verify_centrality),
        ),
        ("section pi(lift(m)) = m", None, || {
            over_center_data(verify_section)
        }),
        ("lift is multiplicative", None, || {
            over_center_data(verify_multiplicativity)
        }),
        (
            "spherical and central commutativity",
            None,
            criterion_commutativity,
        ),
        ("Satake matrix triangular, unit diagonal", None, || {
            over_center_data(verify_satake)
        }),
        (
            "GL2 filtration regression",
            Some(Duration::from_secs(1)),
            criterion_gl2,
        ),
        (
            "Bott-Samelson positivity and parity",
            Some(Duration::from_secs(120)),
            criterion_bs,
        ),
        (
            "KL recursion equals bar-solve oracle",
            None,
            criterion_kl_oracle,
        ),
        ("q = 1 orbit-sum oracle", None, criterion_q_one),
        ("spherical parity", None, criterion_parity),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let ok = v.passed && in_time;
        if !ok {
            failed += 1;
        }
        let timing = match budget {
            Some(b) => format!("{:.3}s of {}s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.3}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} criterion {:>2}: {name} ({}; {timing})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
