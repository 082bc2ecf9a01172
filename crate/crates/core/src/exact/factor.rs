//! Signed multisets of integer weight pairs, representing products
//! `∏ f(a·s₁ + b·s₂)^mult` with `f(x) = (1+x)/x`, kept unexpanded until a
//! slope is chosen.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{ExactError, Rat, UPoly, URatFunc};

/// A factored Chern/Euler class: weight pair `(a, b)` with signed
/// multiplicity. Merging keeps the map free of zero multiplicities, and the
/// trivial weight `(0, 0)` is rejected at insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorProduct {
    factors: BTreeMap<(i64, i64), i64>,
}

impl FactorProduct {
    /// The empty product (the class 1).
    pub fn empty() -> Self {
        FactorProduct::default()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn insert(&mut self, weight: (i64, i64), mult: i64) {
        assert!(weight != (0, 0), "trivial weight in a factor product");
        if mult == 0 {
            return;
        }
        let slot = self.factors.entry(weight).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.factors.remove(&weight);
        }
    }

    /// Product of two factored classes (multiset union with merged
    /// multiplicities).
    pub fn mul_assign(&mut self, other: &FactorProduct) {
        for (&w, &m) in &other.factors {
            self.insert(w, m);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.factors.iter().map(|(&w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// True when `a·slope + b` is nonzero for every stored weight.
    pub fn admits_slope(&self, slope: &Rat) -> bool {
        self.factors
            .keys()
            .all(|&(a, b)| !linear_value(a, b, slope).is_zero())
    }

    /// Substitutes `s₁ = slope·x`, `s₂ = x` and expands to a canonical
    /// rational function of `x`.
    ///
    /// Every factor turns into `((1 + w·x)/(w·x))^mult` with `w = a·slope + b`;
    /// factors with equal `w` merge, so numerator and denominator come out
    /// coprime without a gcd pass.
    pub fn specialize(&self, slope: &Rat) -> Result<URatFunc, ExactError> {
        let mut merged: BTreeMap<Rat, i64> = BTreeMap::new();
        let mut xpow: i64 = 0;
        let mut scalar = Rat::one();
        for (&(a, b), &mult) in &self.factors {
            let w = linear_value(a, b, slope);
            if w.is_zero() {
                return Err(ExactError::SlopeOnPole {
                    a,
                    b,
                    slope: slope.clone(),
                });
            }
            xpow += mult;
            scalar *= rat_pow(&w, mult);
            *merged.entry(w).or_insert(0) += mult;
        }
        let mut num = UPoly::one();
        let mut den = UPoly::one();
        for (w, mult) in &merged {
            if *mult > 0 {
                for _ in 0..*mult {
                    num = num.mul_linear(w);
                }
            } else {
                for _ in 0..mult.unsigned_abs() {
                    den = den.mul_linear(w);
                }
            }
        }
        // 1/scalar times x^(-xpow); the sign of xpow decides which side the
        // power of x lands on.
        if xpow >= 0 {
            den = den.shift_up(xpow as usize);
            num = num.scale(&scalar.recip());
        } else {
            num = num.shift_up((-xpow) as usize).scale(&scalar.recip());
        }
        Ok(URatFunc::from_coprime(num, den))
    }
}

impl FromIterator<((i64, i64), i64)> for FactorProduct {
    fn from_iter<I: IntoIterator<Item = ((i64, i64), i64)>>(iter: I) -> Self {
        let mut fp = FactorProduct::empty();
        for (w, m) in iter {
            fp.insert(w, m);
        }
        fp
    }
}

fn linear_value(a: i64, b: i64, slope: &Rat) -> Rat {
    Rat::from_integer(a.into()) * slope + Rat::from_integer(b.into())
}

fn rat_pow(w: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    let base = if e < 0 { w.recip() } else { w.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&(a, b), &m) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            write!(f, "f({a}s1{}{}s2)", if b < 0 { "" } else { "+" }, b)?;
            if m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, ExactError, UPoly, URatFunc};
    use super::*;

    #[test]
    fn single_inverse_weight() {
        // f(-s1) at slope 5: (1 - 5x)/(-5x)
        let fp: FactorProduct = [((-1, 0), 1)].into_iter().collect();
        let got = fp.specialize(&rat_int(5)).unwrap();
        let expected = URatFunc::new(
            UPoly::from_coeffs(vec![rat_int(1), rat_int(-5)]),
            UPoly::from_coeffs(vec![rat_int(0), rat_int(-5)]),
        )
        .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(
            FactorProduct::empty().specialize(&rat_int(42)).unwrap(),
            URatFunc::one()
        );
    }

    #[test]
    fn two_unit_weights_square() {
        // f(s1) f(s2) at slope 1 = ((1+x)/x)^2
        let fp: FactorProduct = [((1, 0), 1), ((0, 1), 1)].into_iter().collect();
        let got = fp.specialize(&rat_int(1)).unwrap();
        let f = URatFunc::new(
            UPoly::from_coeffs(vec![rat_int(1), rat_int(1)]),
            UPoly::monomial(1),
        )
        .unwrap();
        assert_eq!(got, f.pow(2).unwrap());
    }

    #[test]
    fn pole_detection() {
        let fp: FactorProduct = [((1, -5), 1)].into_iter().collect();
        assert!(!fp.admits_slope(&rat_int(5)));
        assert!(matches!(
            fp.specialize(&rat_int(5)),
            Err(ExactError::SlopeOnPole { a: 1, b: -5, .. })
        ));
        assert!(fp.admits_slope(&rat_int(6)));
    }

    #[test]
    fn opposite_multiplicities_cancel() {
        let mut fp = FactorProduct::empty();
        fp.insert((1, 2), 3);
        fp.insert((1, 2), -3);
        assert!(fp.is_empty());
    }
}
