//! Truncated power-series helpers used by reconstruction and the
//! Hilbert-scheme expansion.

use num_traits::Zero;

use super::Rat;

/// Coefficients `0..=order` of the product of two series given by their
/// coefficient prefixes (implicitly zero-extended).
pub fn truncated_series_mul(a: &[Rat], b: &[Rat], order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients `0..=order` of `(1-q)^exponent`, exact binomials.
pub fn pow_one_minus_q(exponent: u32, order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); order + 1];
    let mut c = Rat::from_integer(1.into());
    for k in 0..=order.min(exponent as usize) {
        out[k] = if k % 2 == 0 { c.clone() } else { -c.clone() };
        // binomial recurrence C(e, k+1) = C(e, k) (e-k)/(k+1)
        c = c * Rat::new((exponent as i64 - k as i64).into(), (k as i64 + 1).into());
    }
    out
}
