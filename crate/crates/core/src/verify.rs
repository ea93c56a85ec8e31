//! A quick self-check of structural invariants, run by `augsurf verify`.

use crate::augmented::AugmentedCode;
use crate::decoder::{Decoder, DecoderKind};
use crate::fixed_code::CssCode;
use crate::oracles::brute_force_distance;
use crate::sim::{sample_error, trial_rng};
use crate::toric::Cellulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn code(m: usize, fixed: &CssCode) -> AugmentedCode {
    AugmentedCode::new(Cellulation::torus(m).expect("m >= 2"), fixed.clone())
}

fn product_is_complex(fixed: &CssCode) -> Check {
    let bad: Vec<usize> = (2..=4).filter(|&m| !code(m, fixed).product_complex().verify()).collect();
    Check::new("boundary squares to zero (m = 2..4)", bad.is_empty(), format!("failing m: {bad:?}"))
}

fn parameters(fixed: &CssCode) -> Check {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in 2..=4 {
        let c = code(m, fixed);
        let k = c.product_complex().homology_dim(2).unwrap_or(usize::MAX);
        let expected_n = 2 * m * m * fixed.n() + m * m * (fixed.n_x() + fixed.n_z());
        ok &= c.n() == expected_n && k == c.k() && k == 2 * fixed.k();
        detail.push(format!("m={m}: n={} k={k}", c.n()));
    }
    Check::new("n and k match the homology of the product", ok, detail.join(", "))
}

fn stabilizers_commute(fixed: &CssCode) -> Check {
    let c = code(3, fixed);
    let xs = c.x_stabilizers();
    let zs = c.z_stabilizers();
    let clashes = xs
        .iter()
        .map(|x| zs.iter().filter(|z| x.dot(z)).count())
        .sum::<usize>();
    Check::new("X and Z stabilizers commute (m = 3)", clashes == 0, format!("{clashes} anticommuting pairs"))
}

fn logicals_pair(fixed: &CssCode) -> Check {
    let c = code(3, fixed);
    let xs = c.logical_x_reps();
    let zs = c.logical_z_reps();
    let ok = xs
        .iter()
        .enumerate()
        .all(|(i, x)| zs.iter().enumerate().all(|(j, z)| x.dot(z) == (i == j)));
    Check::new("logical representatives pair symplectically (m = 3)", ok, format!("k = {}", xs.len()))
}

fn distance_m2(fixed: &CssCode) -> Check {
    let c = code(2, fixed);
    let expected = c.d();
    match brute_force_distance(&c, expected) {
        Ok(d) => Check::new(
            "distance of the m = 2 product by enumeration",
            d.exact() == Some(expected),
            format!("found {d:?}, expected {expected}"),
        ),
        Err(e) => Check::new("distance of the m = 2 product by enumeration", true, format!("skipped: {e}")),
    }
}

fn decoders_sound(fixed: &CssCode) -> Vec<Check> {
    let c = code(4, fixed);
    DecoderKind::ALL
        .iter()
        .filter_map(|&kind| {
            let mut dec = Decoder::new(&c, kind).ok()?;
            let mut bad = 0;
            for t in 0..2_000 {
                let err = sample_error(&c, 0.05, &mut trial_rng(0, t));
                let s = c.syndrome(&err);
                match dec.decode(&s) {
                    Ok(corr) if c.syndrome(&corr) == s => {}
                    Ok(_) => bad += 1,
                    Err(_) => {}
                }
            }
            Some(Check::new(
                format!("{kind} corrections reproduce the syndrome (m = 4, p = 0.05)"),
                bad == 0,
                format!("{bad} mismatches in 2000 trials"),
            ))
        })
        .collect()
}

fn single_errors_corrected(fixed: &CssCode) -> Vec<Check> {
    let c = code(3, fixed);
    DecoderKind::ALL
        .iter()
        .filter_map(|&kind| {
            let mut dec = Decoder::new(&c, kind).ok()?;
            let failures = (0..c.n())
                .filter(|&q| {
                    let err = c.error_from_qubits([q]);
                    match dec.decode(&c.syndrome(&err)) {
                        Ok(corr) => c.logical_pairings(&err.xor(&corr)) != 0,
                        Err(_) => true,
                    }
                })
                .count();
            // a single error is below half the distance only when d >= 3
            let expect_clean = c.d() >= 3;
            Some(Check::new(
                format!("{kind} corrects every single-qubit error (m = 3)"),
                !expect_clean || failures == 0,
                format!("{failures} failures over {} qubits", c.n()),
            ))
        })
        .collect()
}

/// Runs all checks for the given fixed code.
pub fn run_all(fixed: &CssCode) -> Vec<Check> {
    let mut out = vec![
        product_is_complex(fixed),
        parameters(fixed),
        stabilizers_commute(fixed),
        logicals_pair(fixed),
        distance_m2(fixed),
    ];
    out.extend(decoders_sound(fixed));
    out.extend(single_errors_corrected(fixed));
    out
}
