//! Closed intervals with exact rational endpoints.
//!
//! All certified facts in this crate are stated through values of this type:
//! an interval is a proof that the represented real lies between two known
//! rationals. Arithmetic is exact; only explicit rounding helpers
//! ([`RationalInterval::round_outward`], [`sqrt_interval`]) trade endpoint
//! size for width.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;

pub type Rat = BigRational;

/// Rounding direction for operations that cannot stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// `2^bits` as an exact rational; `bits` may be negative.
pub fn pow2(bits: i64) -> Rat {
    let one = BigInt::one();
    if bits >= 0 {
        Rat::from_integer(one << bits as usize)
    } else {
        Rat::new(one.clone(), one << (-bits) as usize)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rat,
    hi: Rat,
}

impl RationalInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: Rat) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi <= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        if lo <= hi {
            Some(Self {
                lo: lo.clone(),
                hi: hi.clone(),
            })
        } else {
            None
        }
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified `self < other`: every point of `self` is below every point
    /// of `other`.
    pub fn strictly_left_of(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Self { lo, hi }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_negative() {
            Self {
                lo: &self.hi * k,
                hi: &self.lo * k,
            }
        } else {
            Self {
                lo: &self.lo * k,
                hi: &self.hi * k,
            }
        }
    }

    pub fn shift(&self, k: &Rat) -> Self {
        Self {
            lo: &self.lo + k,
            hi: &self.hi + k,
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Ok(Self {
                lo: self.hi.recip(),
                hi: self.lo.recip(),
            })
        } else {
            Err(Error::InvalidInterval)
        }
    }

    /// Enclosure of `|x|` over the interval.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if -self.lo.clone() > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            Self {
                lo: Rat::zero(),
                hi,
            }
        }
    }

    /// Snaps endpoints outward onto the grid of multiples of `2^-bits`.
    /// Keeps numerators and denominators from growing across long products.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = pow2(bits as i64);
        let lo = (&self.lo * &scale).floor() / scale.clone();
        let hi = (&self.hi * &scale).ceil() / scale;
        Self { lo, hi }
    }

    /// Decimal rendering of the lower endpoint, rounded down.
    pub fn decimal_lo(&self, digits: usize) -> String {
        decimal_string(&self.lo, digits, Rounding::Down)
    }

    /// Decimal rendering of the upper endpoint, rounded up.
    pub fn decimal_hi(&self, digits: usize) -> String {
        decimal_string(&self.hi, digits, Rounding::Up)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.decimal_lo(12), self.decimal_hi(12))
    }
}

/// Fixed-point decimal rendering of a rational with directed rounding.
/// Always prints `digits` fractional digits so identical inputs render
/// byte-identically.
pub fn decimal_string(r: &Rat, digits: usize, dir: Rounding) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r * Rat::from_integer(scale.clone());
    let v = match dir {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    let negative = v.is_negative();
    let mag = v.magnitude().clone();
    let (int_part, frac_part) = mag.div_rem(&scale.magnitude().clone());
    let frac_str = frac_part.to_string();
    let pad = digits.saturating_sub(frac_str.len());
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{}{frac_str}", "0".repeat(pad))
    }
}

/// Directed square root of a nonnegative rational to `bits` fractional bits.
pub fn sqrt_rat(x: &Rat, bits: u32, dir: Rounding) -> Rat {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    let denom = BigInt::one() << bits as usize;
    // sqrt(p/q) = sqrt(p*q)/q; scale so the integer sqrt carries `bits`
    // fractional bits.
    let p = x.numer();
    let q = x.denom();
    let scaled: BigInt = p * q * (BigInt::one() << (2 * bits as usize));
    let root = scaled.sqrt(); // floor
    match dir {
        Rounding::Down => Rat::new(root, q * &denom),
        Rounding::Up => {
            let exact = &root * &root == scaled;
            let up = if exact { root } else { root + 1 };
            Rat::new(up, q * &denom)
        }
    }
}

/// Interval square root with outward rounding.
pub fn sqrt_interval(v: &RationalInterval, bits: u32) -> RationalInterval {
    RationalInterval {
        lo: sqrt_rat(v.lo(), bits, Rounding::Down),
        hi: sqrt_rat(v.hi(), bits, Rounding::Up),
    }
}

/// Directed `n`-th root of a nonnegative rational to `bits` fractional bits.
pub fn nth_root_rat(x: &Rat, n: u32, bits: u32, dir: Rounding) -> Rat {
    assert!(n >= 1);
    assert!(!x.is_negative(), "nth root of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    if n == 1 {
        return x.clone();
    }
    let shift = BigInt::one() << (n as usize * bits as usize);
    let scaled_num: BigInt = x.numer() * &shift;
    let floor_scaled = scaled_num.div_floor(x.denom());
    let denom = BigInt::one() << bits as usize;
    match dir {
        Rounding::Down => Rat::new(floor_scaled.nth_root(n), denom),
        Rounding::Up => {
            let ceil_scaled = (x.numer() * &shift + x.denom() - BigInt::one()).div_floor(x.denom());
            let root = ceil_scaled.nth_root(n);
            let up = if root.clone().pow(n) == ceil_scaled
                && &ceil_scaled * x.denom() == x.numer() * &shift
            {
                root
            } else {
                root + 1
            };
            Rat::new(up, denom)
        }
    }
}
