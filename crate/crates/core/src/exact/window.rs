//! Exact truncated Laurent expansions at the origin.
//!
//! A window holds the coefficients of `x^val .. x^(upto-1)` of a Laurent
//! series; every coefficient inside the covered range is exact, everything
//! below `val` is exactly zero. Sums and products track how far the result
//! stays exact, so reading the constant term (the limit at the origin) and
//! checking that no genuinely negative powers survive are both exact
//! operations — only data beyond the window is discarded.

use num_traits::{One, Zero};

use super::{ExactError, FactorProduct, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    val: i64,
    /// Coefficients of `x^val .. x^(val + coeffs.len() - 1)`.
    coeffs: Vec<Rat>,
}

impl LaurentWindow {
    /// The zero series, exact at every exponent that will ever be asked for.
    pub fn zero() -> Self {
        LaurentWindow {
            val: i64::MAX / 4,
            coeffs: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    /// First exponent beyond the exactly known range.
    pub fn upto(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// The coefficient of `x^k`; `None` when `k` is beyond the window.
    pub fn coeff(&self, k: i64) -> Option<Rat> {
        if k >= self.upto() {
            return None;
        }
        if k < self.val {
            return Some(Rat::zero());
        }
        Some(self.coeffs[(k - self.val) as usize].clone())
    }

    /// Expands `∏ ((1 + w·x)/(w·x))^mult` with `w = a·slope + b` to a window
    /// of `len` exact coefficients starting at the total pole order.
    pub fn from_factor_product(
        fp: &FactorProduct,
        slope: &Rat,
        len: usize,
    ) -> Result<Self, ExactError> {
        let mut total_mult: i64 = 0;
        let mut scalar = Rat::one();
        let mut linear: Vec<(Rat, i64)> = Vec::with_capacity(fp.len());
        for ((a, b), mult) in fp.factors() {
            let w = Rat::from_integer(a.into()) * slope + Rat::from_integer(b.into());
            if w.is_zero() {
                return Err(ExactError::SlopeOnPole {
                    a,
                    b,
                    slope: slope.clone(),
                });
            }
            total_mult += mult;
            let mut p = Rat::one();
            for _ in 0..mult.unsigned_abs() {
                p *= &w;
            }
            if mult > 0 {
                scalar *= p;
            } else {
                scalar /= p;
            }
            linear.push((w, mult));
        }
        let mut out = LaurentWindow {
            val: -total_mult,
            coeffs: vec![Rat::zero(); len],
        };
        out.coeffs[0] = scalar.recip();
        for (w, mult) in linear {
            for _ in 0..mult.unsigned_abs() {
                if mult > 0 {
                    out.mul_linear_in_place(&w);
                } else {
                    out.div_linear_in_place(&w);
                }
            }
        }
        Ok(out)
    }

    /// In-place multiplication by `1 + w·x`; the covered range is preserved.
    fn mul_linear_in_place(&mut self, w: &Rat) {
        for j in (1..self.coeffs.len()).rev() {
            let t = &self.coeffs[j - 1] * w;
            self.coeffs[j] += t;
        }
    }

    /// In-place division by `1 + w·x` (forward recurrence).
    fn div_linear_in_place(&mut self, w: &Rat) {
        for j in 1..self.coeffs.len() {
            let t = &self.coeffs[j - 1] * w;
            self.coeffs[j] -= t;
        }
    }

    pub fn add(&self, rhs: &LaurentWindow) -> LaurentWindow {
        if self.is_empty() {
            return rhs.clone();
        }
        if rhs.is_empty() {
            return self.clone();
        }
        let val = self.val.min(rhs.val);
        let upto = self.upto().min(rhs.upto());
        let mut coeffs = vec![Rat::zero(); (upto - val).max(0) as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = val + k as i64;
            if e >= self.val {
                *c += &self.coeffs[(e - self.val) as usize];
            }
            if e >= rhs.val {
                *c += &rhs.coeffs[(e - rhs.val) as usize];
            }
        }
        LaurentWindow { val, coeffs }
    }

    pub fn mul(&self, rhs: &LaurentWindow) -> LaurentWindow {
        if self.is_empty() || rhs.is_empty() {
            return LaurentWindow::zero();
        }
        let val = self.val + rhs.val;
        let upto = (self.upto() + rhs.val).min(rhs.upto() + self.val);
        let mut coeffs = vec![Rat::zero(); (upto - val).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= coeffs.len() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= coeffs.len() {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentWindow { val, coeffs }
    }

    /// Constant times the series.
    pub fn scale(&self, c: &Rat) -> LaurentWindow {
        LaurentWindow {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The limit at the origin: requires every exactly-known coefficient of
    /// a negative power to vanish and the constant term to be covered.
    pub fn limit_at_zero(&self) -> Result<Rat, ExactError> {
        assert!(
            self.upto() > 0,
            "window too short to read the constant term"
        );
        for k in self.val..0 {
            if let Some(c) = self.coeff(k) {
                if !c.is_zero() {
                    return Err(ExactError::PoleAtZero {
                        num_ord: (k - self.val) as usize,
                        den_ord: (-self.val) as usize,
                    });
                }
            }
        }
        Ok(self.coeff(0).unwrap_or_else(Rat::zero))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    #[test]
    fn factor_product_expansion_matches_ratfunc() {
        // f(s1)^2 f(-s2)^{-1} at slope 3 against the closed rational form
        let fp: FactorProduct = [((1, 0), 2), ((0, -1), -1)].into_iter().collect();
        let slope = rat_int(3);
        let win = LaurentWindow::from_factor_product(&fp, &slope, 8).unwrap();
        let rf = fp.specialize(&slope).unwrap();
        // compare via series coefficients of the rational function
        // rf = num/den; expand den^{-1} by long division around 0
        let den_ord = rf.den().ord().unwrap();
        assert_eq!(win.val(), -1);
        for k in win.val()..win.upto() {
            // rf coefficient at x^k equals [x^{k+den_ord}] num / (den/x^{den_ord})
            let shifted = k + den_ord as i64;
            let mut acc = Rat::zero();
            // series inversion of den/x^{den_ord} evaluated lazily
            let d: Vec<Rat> = rf.den().coeffs()[den_ord..].to_vec();
            let n = rf.num();
            let mut inv: Vec<Rat> = Vec::new();
            for i in 0..=(shifted.max(0) as usize) {
                let mut v = if i == 0 { Rat::one() } else { Rat::zero() };
                for j in 1..=i.min(d.len() - 1) {
                    v -= &d[j] * &inv[i - j];
                }
                inv.push(v / &d[0]);
            }
            if shifted >= 0 {
                for i in 0..=(shifted as usize) {
                    acc += n.coeff(i) * &inv[shifted as usize - i];
                }
            }
            assert_eq!(win.coeff(k).unwrap(), acc, "coefficient x^{k}");
        }
    }

    #[test]
    fn add_tracks_coverage() {
        let fp1: FactorProduct = [((1, 0), 1)].into_iter().collect();
        let fp2: FactorProduct = [((1, 0), -1)].into_iter().collect();
        let s = rat_int(2);
        let a = LaurentWindow::from_factor_product(&fp1, &s, 5).unwrap();
        let b = LaurentWindow::from_factor_product(&fp2, &s, 5).unwrap();
        assert_eq!(a.val(), -1);
        assert_eq!(b.val(), 1);
        let sum = a.add(&b);
        assert_eq!(sum.val(), -1);
        assert_eq!(sum.upto(), 4);
        // f(2x) + 1/f(2x) = (1+2x)/(2x) + 2x/(1+2x)
        assert_eq!(sum.coeff(-1).unwrap(), rat(1, 2));
        assert_eq!(sum.coeff(0).unwrap(), rat_int(1));
        // x-coefficient: 0 from the first, 2(1 - 2x + ...) -> 2
        assert_eq!(sum.coeff(1).unwrap(), rat_int(2));
    }

    #[test]
    fn mul_and_limit() {
        // f(x) * 1/f(x) = 1 exactly
        let fp1: FactorProduct = [((0, 1), 1)].into_iter().collect();
        let fp2: FactorProduct = [((0, 1), -1)].into_iter().collect();
        let s = rat_int(1);
        let a = LaurentWindow::from_factor_product(&fp1, &s, 6).unwrap();
        let b = LaurentWindow::from_factor_product(&fp2, &s, 6).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.limit_at_zero().unwrap(), rat_int(1));
        // a alone has a pole
        assert!(matches!(
            a.limit_at_zero(),
            Err(ExactError::PoleAtZero { .. })
        ));
    }
}
