//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are indexed by degree and the highest-degree coefficient is
//! always nonzero (the zero polynomial has an empty coefficient vector).
//! Multiplication is schoolbook; gcds go through a primitive subresultant
//! remainder sequence over the integers to keep intermediate coefficients
//! under control.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        UPoly { coeffs }
    }

    /// Builds a polynomial from coefficients indexed by degree, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at the origin (index of the lowest nonzero
    /// coefficient), or `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Fast in-place multiplication by the linear factor `1 + w x`.
    pub fn mul_linear(&self, w: &Rat) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
            if !w.is_zero() {
                out[i + 1] += a * w;
            }
        }
        UPoly::from_coeffs(out)
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    ///
    /// Panics if `div` is zero.
    pub fn divrem(&self, div: &UPoly) -> (UPoly, UPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (UPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let lead = div.leading().unwrap();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / lead;
            for (j, c) in div.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &UPoly) -> UPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return UPoly::one();
        }
        let a = int_primitive(self);
        let b = int_primitive(other);
        let g = subresultant_gcd(a, b);
        UPoly::from_coeffs(g.into_iter().map(Rat::from_integer).collect()).monic()
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Clears denominators and the integer content; the result has the same
/// roots as the input.
fn int_primitive(p: &UPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

fn int_degree(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn int_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
/// The power of `lc(b)` is padded to exactly that exponent even when the
/// degree drops by more than one per step, so the subresultant divisions
/// downstream stay exact.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = int_degree(a);
    let db = int_degree(b);
    let lb = b.last().unwrap().clone();
    let mut rem = a.to_vec();
    let mut mults = 0usize;
    while rem.len() > db {
        let i = rem.len() - 1;
        let lead = rem[i].clone();
        for c in rem.iter_mut() {
            *c *= &lb;
        }
        mults += 1;
        for j in 0..db {
            let t = &lead * &b[j];
            rem[i - db + j] -= t;
        }
        rem.truncate(i);
        rem = int_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    for _ in mults..(da - db + 1) {
        for c in rem.iter_mut() {
            *c *= &lb;
        }
    }
    rem
}

/// Primitive gcd of two nonzero primitive integer polynomials by the
/// subresultant polynomial remainder sequence.
fn subresultant_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if int_degree(&a) >= int_degree(&b) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = int_degree(&a) - int_degree(&b);
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            let c = int_content(&b);
            for x in b.iter_mut() {
                *x /= &c;
            }
            if b.last().unwrap().is_negative() {
                for x in b.iter_mut() {
                    *x = -x.clone();
                }
            }
            return b;
        }
        if int_degree(&r) == 0 {
            return vec![BigInt::one()];
        }
        let divisor = &g * h.pow(delta as u32);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        UPoly::from_coeffs(out)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lead_sign = first;
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if lead_sign || !c.is_negative() {
                c.clone()
            } else {
                -c.clone()
            };
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
