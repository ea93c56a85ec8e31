use augsurf::decoder::{decode_subedge, decode_v1, decode_v2};
use augsurf::oracles::exact_decode;
use augsurf::sim::{sample_error, trial_rng};
use augsurf::{AugmentedCode, Cellulation, CssCode, Decoder, DecoderKind, ErrorStdForm};

fn code(m: usize, fixed: CssCode) -> AugmentedCode {
    AugmentedCode::new(Cellulation::torus(m).unwrap(), fixed)
}

/// Decodes and reports whether the residual is a nontrivial logical.
fn fails(dec: &mut Decoder<'_>, err: &ErrorStdForm) -> bool {
    let code = dec.code();
    let s = code.syndrome(err);
    let corr = dec.decode(&s).expect("true syndromes decode");
    assert_eq!(code.syndrome(&corr), s);
    code.logical_pairings(&err.xor(&corr)) != 0
}

fn failures_up_to_weight_two(c: &AugmentedCode, kind: DecoderKind) -> Vec<(usize, usize)> {
    let mut dec = Decoder::new(c, kind).unwrap();
    let mut bad = Vec::new();
    for a in 0..c.n() {
        if fails(&mut dec, &c.error_from_qubits([a])) {
            bad.push((a, a));
        }
        for b in a + 1..c.n() {
            if fails(&mut dec, &c.error_from_qubits([a, b])) {
                bad.push((a, b));
            }
        }
    }
    bad
}

#[test]
fn weight_one_on_m2() {
    let c = code(2, CssCode::four_two_two());
    for kind in DecoderKind::ALL {
        let mut dec = Decoder::new(&c, kind).unwrap();
        let bad: Vec<usize> = (0..c.n())
            .filter(|&q| fails(&mut dec, &c.error_from_qubits([q])))
            .collect();
        assert!(bad.is_empty(), "{kind}: {bad:?}");
    }
}

#[test]
fn weight_two_on_m3() {
    let c = code(3, CssCode::four_two_two());
    for kind in DecoderKind::ALL {
        let bad = failures_up_to_weight_two(&c, kind);
        assert!(bad.is_empty(), "{kind}: {} failures, first {:?}", bad.len(), &bad[..bad.len().min(5)]);
    }
}

#[test]
fn steane_subedge_corrects_below_half_distance() {
    // d = 3 * 2 = 6 on a 2x2 torus; weight <= 2 must be corrected
    let c = code(2, CssCode::steane());
    assert_eq!(c.d(), 6);
    let bad = failures_up_to_weight_two(&c, DecoderKind::Subedge);
    assert!(bad.is_empty(), "{} failures, first {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

#[test]
fn subedge_with_two_units_matches_v1() {
    let c = code(3, CssCode::four_two_two());
    for t in 0..3_000 {
        let err = sample_error(&c, 0.06, &mut trial_rng(11, t));
        let s = c.syndrome(&err);
        assert_eq!(decode_v1(&c, &s), decode_subedge(&c, &s), "trial {t}");
    }
}

#[test]
fn all_decoders_are_sound() {
    for fixed in [CssCode::four_two_two(), CssCode::trivial(), CssCode::steane()] {
        let c = code(4, fixed);
        for kind in DecoderKind::ALL {
            let Ok(mut dec) = Decoder::new(&c, kind) else {
                continue;
            };
            for t in 0..2_000 {
                let err = sample_error(&c, 0.08, &mut trial_rng(5, t));
                let s = c.syndrome(&err);
                match dec.decode(&s) {
                    Ok(corr) => assert_eq!(c.syndrome(&corr), s, "{kind} trial {t}"),
                    Err(e) => panic!("{kind} trial {t}: {e}"),
                }
            }
        }
    }
}

#[test]
fn free_functions_match_reused_decoder() {
    let c = code(3, CssCode::four_two_two());
    let mut v2 = Decoder::new(&c, DecoderKind::V2).unwrap();
    for t in 0..500 {
        let s = c.syndrome(&sample_error(&c, 0.1, &mut trial_rng(3, t)));
        assert_eq!(decode_v2(&c, &s), v2.decode(&s));
    }
}

#[test]
fn exact_decoder_is_no_worse_than_v1_on_tiny_toric_code() {
    let c = code(2, CssCode::trivial());
    let mut dec = Decoder::new(&c, DecoderKind::V1).unwrap();
    for p in [0.05, 0.1, 0.2] {
        let (mut exact_fail, mut uf_fail) = (0, 0);
        for t in 0..4_000 {
            let err = sample_error(&c, p, &mut trial_rng(21, t));
            let s = c.syndrome(&err);
            let ex = exact_decode(&c, &s).unwrap();
            assert_eq!(c.syndrome(&ex), s);
            exact_fail += u32::from(c.logical_pairings(&err.xor(&ex)) != 0);
            uf_fail += u32::from(fails(&mut dec, &err));
        }
        // same samples; allow a little slack for ties resolved differently
        assert!(
            f64::from(exact_fail) <= f64::from(uf_fail) * 1.05 + 10.0,
            "p = {p}: exact {exact_fail}, uf {uf_fail}"
        );
    }
}
