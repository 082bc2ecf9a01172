//! Deep-table runs: the published columns to m = 16 and the conjectural
//! numerators. Ignored by default; run with
//! `cargo test --release --test nightly -- --ignored --nocapture`.

use pt_toric_core::analysis::{reconstruct_rational, tables};
use pt_toric_core::engine::{class_shift, evir_series};
use pt_toric_core::exact::{pow_one_minus_q, rat_int, truncated_series_mul, Rat};
use pt_toric_core::ToricSurface;

/// The d=3 column: the printed table is correct for m <= 12; at
/// m = 13..16 the printed values disagree with both the engine and the
/// expansion of the published conjectural numerator (the m=14 entry even
/// drops a digit), so those four entries are checked against the
/// conjectural series instead.
#[test]
#[ignore = "deep table run (~1 min)"]
fn nightly_d3_full_table() {
    let series = evir_series(&ToricSurface::p2(), &[3], 16).unwrap();
    for c in &series[..=12] {
        assert_eq!(c.value, rat_int(tables::D3[c.m as usize]), "m={}", c.m);
    }
    let num: Vec<Rat> = tables::D3_NUMERATOR.iter().map(|&v| rat_int(v)).collect();
    let inv = expansion_of_one_minus_q_power(-18, 16);
    let conjecture = truncated_series_mul(&num, &inv, 16);
    for c in &series[13..] {
        assert_eq!(c.value, conjecture[c.m as usize], "m={}", c.m);
        assert_ne!(
            c.value,
            rat_int(tables::D3[c.m as usize]),
            "printed table typo at m={} should persist",
            c.m
        );
    }
    println!("nightly d=3: PASS — table matches for m<=12; m=13..16 match the conjectural series");
}

#[test]
#[ignore = "deep table run (~2 min)"]
fn nightly_d4_full_table() {
    let series = evir_series(&ToricSurface::p2(), &[4], 16).unwrap();
    for c in &series {
        assert_eq!(c.value, rat_int(tables::D4[c.m as usize]), "m={}", c.m);
    }
    println!("nightly d=4: PASS — full published column matches for m<=16");
}

/// Reconstructs the d=3 numerator from computed coefficients alone and
/// compares with the published conjectural polynomial.
#[test]
#[ignore = "deep reconstruction run (several minutes)"]
fn nightly_d3_numerator_reconstruction() {
    let m_max = 38u32; // window = numerator degree + denominator exponent + 2
    let series = evir_series(&ToricSurface::p2(), &[3], m_max).unwrap();
    let coeffs: Vec<Rat> = series.iter().map(|c| c.value.clone()).collect();
    let rec = reconstruct_rational(&coeffs, 18, 18);
    assert!(rec.consistent);
    assert!(rec.palindromic);
    let expected: Vec<Rat> = tables::D3_NUMERATOR.iter().map(|&v| rat_int(v)).collect();
    assert_eq!(rec.numerator.coeffs(), &expected[..]);
    // the conjectured q <-> 1/q symmetry in the Euler-characteristic
    // indexing: raw exponent plus twice the index shift
    let shift = class_shift(&ToricSurface::p2(), &[3]).unwrap();
    assert_eq!(rec.functional_exponent.map(|s| s + 2 * shift), Some(0));
    println!("nightly d=3 numerator: PASS — reconstructed polynomial matches the published one");
}

/// Reconstructs the d=4 numerator from computed coefficients. The paper
/// prints the coefficients of q^0..q^16 and the palindromic tail ends; the
/// middle is implied by the palindrome.
#[test]
#[ignore = "deep reconstruction run (tens of minutes)"]
fn nightly_d4_numerator_reconstruction() {
    let m_max = 54u32;
    let series = evir_series(&ToricSurface::p2(), &[4], m_max).unwrap();
    let coeffs: Vec<Rat> = series.iter().map(|c| c.value.clone()).collect();
    let rec = reconstruct_rational(&coeffs, 24, 28);
    assert!(rec.consistent);
    assert!(rec.palindromic);
    assert_eq!(rec.num_degree, 28);
    let printed_prefix: [i64; 17] = [
        15,
        -318,
        3249,
        -21312,
        100899,
        -367596,
        1097652,
        13378998,
        1457762922,
        40677292032,
        488193023214,
        2979244822788,
        10213475593308,
        20895483276906,
        26422064163513,
        20895483276906,
        10213475593308,
    ];
    for (i, &v) in printed_prefix.iter().enumerate() {
        assert_eq!(rec.numerator.coeff(i), rat_int(v), "q^{i}");
    }
    let shift = class_shift(&ToricSurface::p2(), &[4]).unwrap();
    assert_eq!(rec.functional_exponent.map(|s| s + 2 * shift), Some(0));
    println!("nightly d=4 numerator: PASS — reconstruction is consistent, palindromic, degree 28");
}

fn expansion_of_one_minus_q_power(p: i64, order: usize) -> Vec<Rat> {
    if p >= 0 {
        return pow_one_minus_q(p as u32, order);
    }
    // (1-q)^p with negative p: coefficients C(-p-1+j, j)
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Rat::from_integer(1.into());
    for j in 0..=order as i64 {
        out.push(c.clone());
        c = c * Rat::new((-p + j).into(), (j + 1).into());
    }
    out
}
