//! Exact rationals scaled by a power of the alphabet size.
//!
//! Feasibility checks on H(n,q) work with quantities like q^n (the vertex
//! count) and class sizes proportional to it. For scan parameters such as
//! n = (3^50+1)/2 these numbers cannot be written out, but every value the
//! pipeline manipulates has the shape (num/den)·q^e with small num/den and a
//! huge exponent. [`ScaledRational`] keeps that shape exactly: sign tests,
//! integrality tests and arithmetic never materialize q^e, while values with
//! small exponents print as ordinary fractions.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Largest exponent gap two addends may have before the sum is refused.
/// Real pipelines stay within a few hundred; anything past this bound means a
/// computation is materializing numbers it should not.
const MAX_ALIGN: u64 = 1 << 20;

/// Exponent magnitude up to which values are printed in plain decimal.
const DISPLAY_POW_LIMIT: i64 = 256;

/// An exact value (num/den) · base^exp.
///
/// Normal form: gcd(num, den) = 1, den > 0, and neither num nor den is
/// divisible by base (full base factors are folded into the exponent).
/// Zero is stored as 0/1 · base^0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    base: u64,
    exp: BigInt,
    num: BigInt,
    den: BigInt,
}

impl ScaledRational {
    pub fn zero(base: u64) -> Self {
        assert!(base >= 2);
        ScaledRational { base, exp: BigInt::zero(), num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_int(base: u64, value: BigInt) -> Self {
        Self::new(base, BigInt::zero(), value, BigInt::one())
    }

    pub fn from_rational(base: u64, value: &BigRational) -> Self {
        Self::new(base, BigInt::zero(), value.numer().clone(), value.denom().clone())
    }

    /// base^exp as a scaled rational.
    pub fn power_of_base(base: u64, exp: BigInt) -> Self {
        Self::new(base, exp, BigInt::one(), BigInt::one())
    }

    fn new(base: u64, exp: BigInt, num: BigInt, den: BigInt) -> Self {
        assert!(base >= 2, "base must be at least 2");
        assert!(!den.is_zero(), "zero denominator");
        let mut v = ScaledRational { base, exp, num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = BigInt::zero();
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
        let b = BigInt::from(self.base);
        loop {
            let (q, r) = self.num.div_rem(&b);
            if r.is_zero() {
                self.num = q;
                self.exp += 1;
            } else {
                break;
            }
        }
        loop {
            let (q, r) = self.den.div_rem(&b);
            if r.is_zero() {
                self.den = q;
                self.exp -= 1;
            } else {
                break;
            }
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    /// True iff the value is an integer (exactly).
    ///
    /// With num ⊥ den and both free of base factors, the value is integral
    /// iff den divides base^exp, which needs exp ≥ the number of times base
    /// must be peeled to absorb den.
    pub fn is_integer(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        if self.exp.is_negative() {
            // num carries no base factors, so base^|exp| cannot cancel.
            return false;
        }
        match den_absorption_steps(&self.den, self.base) {
            Some(steps) => BigInt::from(steps) <= self.exp,
            None => false,
        }
    }

    pub fn checked_add(&self, other: &Self) -> crate::Result<Self> {
        assert_eq!(self.base, other.base, "mixed bases");
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let delta = (&hi.exp - &lo.exp)
            .to_u64()
            .filter(|d| *d <= MAX_ALIGN)
            .ok_or_else(|| {
                crate::Error::internal("exponent gap too large for exact addition")
            })?;
        let shift = BigInt::from(self.base).pow(delta as u32);
        let num = &hi.num * shift * &lo.den + &lo.num * &hi.den;
        let den = &lo.den * &hi.den;
        Ok(Self::new(self.base, lo.exp.clone(), num, den))
    }

    pub fn checked_sub(&self, other: &Self) -> crate::Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ScaledRational {
            base: self.base,
            exp: self.exp.clone(),
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.base, other.base, "mixed bases");
        Self::new(
            self.base,
            &self.exp + &other.exp,
            &self.num * &other.num,
            &self.den * &other.den,
        )
    }

    pub fn div(&self, other: &Self) -> crate::Result<Self> {
        assert_eq!(self.base, other.base, "mixed bases");
        if other.is_zero() {
            return Err(crate::Error::internal("division by zero"));
        }
        Ok(Self::new(
            self.base,
            &self.exp - &other.exp,
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(self.base, self.exp.clone(), &self.num * k, self.den.clone())
    }

    /// Multiply by base^e without touching num/den.
    pub fn shift_exp(&self, e: &BigInt) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ScaledRational {
            base: self.base,
            exp: &self.exp + e,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Expand to a plain rational when the exponent is small enough.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        let e = self.exp.to_i64()?;
        if e.unsigned_abs() > 16_384 {
            return None;
        }
        let pow = BigInt::from(self.base).pow(e.unsigned_abs() as u32);
        Some(if e >= 0 {
            BigRational::new(&self.num * pow, self.den.clone())
        } else {
            BigRational::new(self.num.clone(), &self.den * pow)
        })
    }

    /// Expand to a non-negative integer when possible.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return None;
        }
        let (sign, mag) = r.to_integer().into_parts();
        match sign {
            Sign::Minus => None,
            _ => Some(mag),
        }
    }

    /// Exact comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(d) => {
                if d.is_zero() {
                    Ordering::Equal
                } else if d.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            // Exponent gap too large to subtract: the larger exponent wins.
            Err(_) => match (self.is_negative(), other.is_negative()) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (neg, _) => {
                    let by_exp = self.exp.cmp(&other.exp);
                    if neg {
                        by_exp.reverse()
                    } else {
                        by_exp
                    }
                }
            },
        }
    }

    /// Exact string form: plain fraction when small, factored otherwise.
    pub fn fraction_string(&self) -> String {
        self.to_string()
    }
}

/// Minimal e with den | base^e, or None when no power of base absorbs den.
fn den_absorption_steps(den: &BigInt, base: u64) -> Option<u64> {
    let mut d = den.clone();
    let b = BigInt::from(base);
    let mut steps = 0u64;
    while !d.is_one() {
        let g = d.gcd(&b);
        if g.is_one() {
            return None;
        }
        d /= g;
        steps += 1;
    }
    Some(steps)
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        let small = self
            .exp
            .to_i64()
            .map(|e| e.abs() <= DISPLAY_POW_LIMIT)
            .unwrap_or(false);
        if small {
            let r = self.to_rational().expect("small exponent expands");
            if r.is_integer() {
                return write!(f, "{}", r.to_integer());
            }
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        // Factored exact form, e.g. "2/547*3^6551".
        if self.den.is_one() {
            if self.num.is_one() {
                write!(f, "{}^{}", self.base, self.exp)
            } else {
                write!(f, "{}*{}^{}", self.num, self.base, self.exp)
            }
        } else {
            write!(f, "{}/{}*{}^{}", self.num, self.den, self.base, self.exp)
        }
    }
}

impl serde::Serialize for ScaledRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
