//! Univariate rational functions in canonical form: numerator and
//! denominator coprime, denominator monic and nonzero.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, Rat, UPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct URatFunc {
    num: UPoly,
    den: UPoly,
}

impl URatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return URatFunc {
                num,
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            URatFunc { num, den }
        } else {
            let inv = lead.recip();
            URatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Builds `num/den` without running a gcd; the caller guarantees the two
    /// polynomials are already coprime. Only the monic normalization is
    /// applied. Checked in debug builds.
    pub(crate) fn from_coprime(num: UPoly, den: UPoly) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert!(
            num.is_zero() || num.gcd(&den).degree() == Some(0),
            "from_coprime called with a common factor"
        );
        if num.is_zero() {
            return URatFunc::zero();
        }
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            URatFunc { num, den }
        } else {
            let inv = lead.recip();
            URatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        URatFunc {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        URatFunc {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        URatFunc {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        URatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value if this is a degree-0 rational function.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.degree() == Some(0) && self.num.degree().map_or(true, |d| d == 0) {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(URatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = URatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// The finite limit at the origin, obtained by cancelling the
    /// denominator's order of vanishing.
    ///
    /// Errors with [`ExactError::PoleAtZero`] when the numerator vanishes to
    /// strictly lower order than the denominator.
    pub fn limit_at_zero(&self) -> Result<Rat, ExactError> {
        let den_ord = self.den.ord().expect("nonzero denominator");
        let num_ord = match self.num.ord() {
            None => return Ok(Rat::zero()),
            Some(o) => o,
        };
        if num_ord < den_ord {
            return Err(ExactError::PoleAtZero { num_ord, den_ord });
        }
        Ok(self.num.coeff(den_ord) / self.den.coeff(den_ord))
    }
}

impl Add for &URatFunc {
    type Output = URatFunc;
    fn add(self, rhs: &URatFunc) -> URatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        URatFunc::reduce(num, den)
    }
}

impl Sub for &URatFunc {
    type Output = URatFunc;
    fn sub(self, rhs: &URatFunc) -> URatFunc {
        self + &(-rhs)
    }
}

impl Neg for &URatFunc {
    type Output = URatFunc;
    fn neg(self) -> URatFunc {
        URatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &URatFunc {
    type Output = URatFunc;
    fn mul(self, rhs: &URatFunc) -> URatFunc {
        if self.is_zero() || rhs.is_zero() {
            return URatFunc::zero();
        }
        // Cross-reduce first so the big products stay small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.degree() == Some(0) {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (n2, d1) = if g2.degree() == Some(0) {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        URatFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &URatFunc {
    type Output = Result<URatFunc, ExactError>;
    fn div(self, rhs: &URatFunc) -> Result<URatFunc, ExactError> {
        Ok(self * &rhs.recip()?)
    }
}

impl fmt::Display for URatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for URatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
