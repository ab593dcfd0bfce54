use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::QuandleError;

type Result<T> = core::result::Result<T, QuandleError>;

fn overflow<T>(v: Option<T>) -> Result<T> {
    v.ok_or(QuandleError::PolynomialOverflow)
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Finitely supported integer Laurent polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`.
    low: i64,
    /// No zero at either end; empty for the zero polynomial.
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exponent: i64) -> Self {
        LaurentPoly {
            low: exponent,
            coeffs: vec![coeff],
        }
        .trimmed()
    }

    /// `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(terms: &[(i64, i64)]) -> Result<Self> {
        terms
            .iter()
            .try_fold(Self::zero(), |acc, &(e, c)| acc.add(&Self::monomial(c, e)))
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exponent(&self) -> i64 {
        self.low
    }

    pub fn high_exponent(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        let i = exponent - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    fn lead(&self) -> i64 {
        *self.coeffs.last().expect("non-zero polynomial")
    }

    /// `(exponent, coefficient)` for every non-zero term, ascending.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i64, c))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.high_exponent().max(other.high_exponent());
        let coeffs = (low..=high)
            .map(|e| overflow(self.coefficient(e).checked_add(other.coefficient(e))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly { low, coeffs }.trimmed())
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| overflow(c.checked_neg()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly {
            low: self.low,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = overflow(a.checked_mul(b))?;
                coeffs[i + j] = overflow(coeffs[i + j].checked_add(p))?;
            }
        }
        Ok(LaurentPoly {
            low: self.low + other.low,
            coeffs,
        }
        .trimmed())
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        self.mul(&Self::monomial(k, 0))
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        let dl = divisor.lead();
        while !rem.is_zero() {
            if rem.coeffs.len() < divisor.coeffs.len() || rem.lead() % dl != 0 {
                return Ok(None);
            }
            let term = Self::monomial(
                rem.lead() / dl,
                rem.high_exponent() - divisor.high_exponent(),
            );
            rem = rem.sub(&term.mul(divisor)?)?;
            quotient = quotient.add(&term)?;
        }
        Ok(Some(quotient))
    }

    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0, |g, &c| gcd_i64(g, c))
    }

    pub fn eval(&self, t: i64) -> Result<i64> {
        // only integral values; negative exponents need t = +-1
        assert!(
            self.low >= 0 || t.abs() == 1,
            "negative exponent at |t| != 1"
        );
        let mut acc: i64 = 0;
        for (e, c) in self.terms() {
            let p = if t.abs() == 1 {
                if t == -1 && e.rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                }
            } else {
                overflow(t.checked_pow(e as u32))?
            };
            acc = overflow(acc.checked_add(overflow(c.checked_mul(p))?))?;
        }
        Ok(acc)
    }

    /// Representative up to units `+-t^k` and integer content: lowest
    /// exponent 0, positive constant term, coprime coefficients.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let content = self.content();
        let sign = if self.coeffs[0] < 0 { -1 } else { 1 };
        LaurentPoly {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| sign * (c / content)).collect(),
        }
    }

    /// Greatest common divisor over the rationals, returned in
    /// [`Self::normalized`] form. `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive remainder sequence on arbitrary-precision
    /// coefficients; only the result has to fit in `i64`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.normalized());
        }
        if other.is_zero() {
            return Ok(self.normalized());
        }
        let big = |p: &Self| -> Vec<BigInt> { p.coeffs.iter().map(|&c| BigInt::from(c)).collect() };
        let (mut a, mut b) = (big(self), big(other));
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_rem(a, &b));
            a = b;
            b = r;
        }
        let coeffs = primitive(a)
            .into_iter()
            .map(|c| overflow(c.to_i64()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly { low: 0, coeffs }.trimmed().normalized())
    }
}

/// Dense polynomials, constant term first, no trailing zeros.
fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let lead = p.iter().take_while(|c| c.is_zero()).count();
    p.drain(..lead);
    p
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let p = trim(p);
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() || content.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &content).collect()
}

/// Remainder of `lc(b)^k a` by `b`, made primitive after every step.
/// Powers of `t` are units, so factors of `t` are stripped as well.
fn pseudo_rem(a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(a);
    let bl = b.last().expect("non-zero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let rl = r.last().expect("non-empty").clone();
        let g = rl.gcd(&bl);
        let (fr, fb) = (&bl / &g, &rl / &g);
        for c in r.iter_mut() {
            *c *= &fr;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &fb * c;
        }
        r = primitive(r);
    }
    r
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().rev().enumerate() {
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            let var = match e {
                0 => None,
                1 => Some(alloc::string::String::from("t")),
                _ => Some(alloc::format!("t^{e}")),
            };
            match var {
                None => write!(f, "{abs}")?,
                Some(v) if abs == 1 => write!(f, "{v}")?,
                Some(v) => write!(f, "{abs}{v}")?,
            }
        }
        Ok(())
    }
}
