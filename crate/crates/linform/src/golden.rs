//! Exact arithmetic in the golden-ratio field and certified power functions.
//!
//! The exponents appearing in the witness bounds all live in `Q(tau)` where
//! `tau = (1+sqrt 5)/2` satisfies `tau^2 = tau + 1`. Working with
//! `a + b*tau` pairs keeps every field operation exact, so identities such
//! as `tau/(tau-1) = tau^2` or `tau - tau^2 = -1` hold by construction and
//! branch decisions never depend on floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use crate::error::Error;
use crate::interval::{pow2, Rat, RationalInterval, Rounding};
use crate::real::CertifiedReal;

/// The golden ratio as a certified algebraic number (root of `x^2 - x - 1`
/// in `(1, 2)`).
pub static TAU: LazyLock<CertifiedReal> = LazyLock::new(|| {
    CertifiedReal::algebraic(
        vec![BigInt::from(-1), BigInt::from(-1), BigInt::one()],
        Rat::one(),
        Rat::from_integer(BigInt::from(2)),
    )
    .expect("golden ratio descriptor is valid")
});

pub fn tau_enclosure(bits: u32) -> RationalInterval {
    TAU.enclosure(bits)
        .expect("algebraic descriptors refine without limit")
}

/// Exact element `a + b*tau` of the golden-ratio field.
#[derive(Clone, PartialEq, Eq)]
pub struct GoldenExact {
    pub a: Rat,
    pub b: Rat,
}

impl fmt::Debug for GoldenExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*tau", self.a, self.b)
    }
}

impl GoldenExact {
    pub fn new(a: Rat, b: Rat) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        Self::new(Rat::one(), Rat::zero())
    }

    pub fn tau() -> Self {
        Self::new(Rat::zero(), Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::new(r, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone())
    }

    /// `(a + b t)(c + d t) = ac + bd + (ad + bc + bd) t` using `t^2 = t + 1`.
    pub fn mul(&self, o: &Self) -> Self {
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let ad_bc = &self.a * &o.b + &self.b * &o.a;
        Self::new(ac + &bd, ad_bc + bd)
    }

    /// Field inverse; the conjugate of `a + b t` under `t -> 1 - t` is
    /// `a + b - b t`, and the norm `(a + bt)(a + b - bt) = a^2 + ab - b^2`
    /// is rational and nonzero for nonzero elements.
    pub fn recip(&self) -> Result<Self, Error> {
        let norm = &self.a * &self.a + &self.a * &self.b - &self.b * &self.b;
        if norm.is_zero() {
            return Err(Error::InvalidParameter(
                "division by zero in golden-ratio field".into(),
            ));
        }
        let conj = Self::new(&self.a + &self.b, -self.b.clone());
        Ok(Self::new(&conj.a / &norm, &conj.b / &norm))
    }

    pub fn div(&self, o: &Self) -> Result<Self, Error> {
        Ok(self.mul(&o.recip()?))
    }

    /// Exact sign. `a + b*tau = 0` forces `a = b = 0` because `tau` is
    /// irrational, so the sign is always decidable in integer arithmetic.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return if self.a.is_zero() {
                Ordering::Equal
            } else if self.a.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        // sign(a + b*tau): compare tau against -a/b.
        let q = -&self.a / &self.b;
        let tau_above = tau_greater_than(&q);
        if self.b.is_positive() {
            if tau_above {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if tau_above {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        self.sub(&Self::from_rat(q.clone())).sign()
    }

    pub fn cmp_golden(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }

    /// Certified interval enclosure of `a + b*tau`.
    pub fn enclosure(&self, bits: u32) -> RationalInterval {
        if self.b.is_zero() {
            return RationalInterval::point(self.a.clone());
        }
        let b_bits = self.b.numer().magnitude().bits() as u32 + 2;
        let t = tau_enclosure(bits + b_bits);
        t.scale(&self.b).shift(&self.a)
    }
}

/// Exact test `tau > q` for rational `q`: equivalent to `2q - 1 < sqrt 5`,
/// with equality impossible.
fn tau_greater_than(q: &Rat) -> bool {
    let two_q_minus_one = q * Rat::from_integer(BigInt::from(2)) - Rat::one();
    if !two_q_minus_one.is_positive() {
        return true;
    }
    let sq = &two_q_minus_one * &two_q_minus_one;
    sq < Rat::from_integer(BigInt::from(5))
}

/// Directed evaluation of `base^(num / 2^log2_den)` for a positive rational
/// base. The fractional part of the exponent is resolved by a ladder of
/// certified square roots, so the result carries roughly `bits` correct
/// fractional bits in the stated direction.
pub fn pow_rat_dyadic(base: &Rat, num: &BigInt, log2_den: u32, dir: Rounding, bits: u32) -> Rat {
    assert!(base.is_positive(), "power base must be positive");
    if num.is_zero() || base.is_one() {
        return Rat::one();
    }
    if base < &Rat::one() {
        // (1/base)^(-e) = base^e, exactly.
        return pow_rat_dyadic(&base.recip(), &-num, log2_den, dir, bits);
    }
    if num.is_negative() {
        // base > 1, negative exponent: invert a result rounded the other way.
        let inner = pow_rat_dyadic(base, &-num, log2_den, dir.flip(), bits + 2);
        return inner.recip();
    }
    // base > 1, num > 0. Split into integer and fractional exponent parts.
    let int_part: BigInt = num >> log2_den as usize;
    let frac_mask = (BigInt::one() << log2_den as usize) - BigInt::one();
    let frac: BigInt = num & &frac_mask;
    let int_exp = int_part
        .to_string()
        .parse::<u64>()
        .expect("integer exponent part must be small");
    let mut acc = RationalInterval::point(base.clone());
    let mut result = RationalInterval::point(Rat::one());
    {
        // Integer part by repeated squaring, exact.
        let mut e = int_exp;
        let mut sq = RationalInterval::point(base.clone());
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
    }
    // Fractional part: bit i of `frac` (0-based from the least significant)
    // contributes base^(2^(i - log2_den)), i.e. the (log2_den - i)-fold
    // square root of base.
    let work_bits = bits + 2 * (log2_den.max(1).ilog2() + 2) + 16;
    if !frac.is_zero() {
        let top = frac.bits() as u32; // highest set bit index + 1
        for level in 1..=log2_den {
            // Snap the ladder to the 2^-work_bits grid each level; unreduced
            // denominators would otherwise compound across iterations.
            acc = crate::interval::sqrt_interval(&acc, work_bits).round_outward(work_bits);
            let bit_index = log2_den - level;
            if bit_index < top && frac.bit(bit_index as u64) {
                result = result.mul(&acc);
                result = result.round_outward(work_bits);
            }
        }
    }
    match dir {
        Rounding::Down => result.lo().clone(),
        Rounding::Up => result.hi().clone(),
    }
}

/// Certified enclosure of `base^exponent` for a positive base interval and an
/// exact golden-field exponent. Accuracy is relative: the returned width is
/// about `2^-bits` times the value.
pub fn pow_golden(
    base: &RationalInterval,
    exponent: &GoldenExact,
    bits: u32,
) -> Result<RationalInterval, Error> {
    if !base.strictly_positive() {
        return Err(Error::InvalidParameter(
            "power base enclosure must be strictly positive".into(),
        ));
    }
    // Dyadic outer bounds for the exponent.
    let exp_bits = bits + 16;
    let e = exponent.enclosure(exp_bits + 8);
    let scale = pow2(exp_bits as i64);
    let e_lo_num = (e.lo() * &scale).floor().to_integer();
    let e_hi_num = (e.hi() * &scale).ceil().to_integer();
    // x^e is monotone in x for fixed e and monotone in e for fixed x, so the
    // extrema over the rectangle sit at its corners.
    let corners = [
        pow_rat_dyadic(base.lo(), &e_lo_num, exp_bits, Rounding::Down, bits + 8),
        pow_rat_dyadic(base.lo(), &e_hi_num, exp_bits, Rounding::Down, bits + 8),
        pow_rat_dyadic(base.hi(), &e_lo_num, exp_bits, Rounding::Down, bits + 8),
        pow_rat_dyadic(base.hi(), &e_hi_num, exp_bits, Rounding::Down, bits + 8),
    ];
    let corners_up = [
        pow_rat_dyadic(base.lo(), &e_lo_num, exp_bits, Rounding::Up, bits + 8),
        pow_rat_dyadic(base.lo(), &e_hi_num, exp_bits, Rounding::Up, bits + 8),
        pow_rat_dyadic(base.hi(), &e_lo_num, exp_bits, Rounding::Up, bits + 8),
        pow_rat_dyadic(base.hi(), &e_hi_num, exp_bits, Rounding::Up, bits + 8),
    ];
    let lo = corners.iter().min().expect("nonempty").clone();
    let hi = corners_up.iter().max().expect("nonempty").clone();
    Ok(RationalInterval::new(lo, hi)?.round_outward(bits + 24))
}

/// Enclosure of `n^exponent` for a positive integer `n`.
pub fn pow_golden_int(
    n: &BigInt,
    exponent: &GoldenExact,
    bits: u32,
) -> Result<RationalInterval, Error> {
    if !n.is_positive() {
        return Err(Error::InvalidParameter(
            "power base must be a positive integer".into(),
        ));
    }
    pow_golden(
        &RationalInterval::point(Rat::from_integer(n.clone())),
        exponent,
        bits,
    )
}

/// Directed evaluation of `base^(p/q)` for a positive rational base and an
/// arbitrary rational exponent, via integer `q`-th roots.
pub fn pow_rat_exponent(base: &Rat, exponent: &Rat, dir: Rounding, bits: u32) -> Rat {
    assert!(base.is_positive(), "power base must be positive");
    if exponent.is_zero() || base.is_one() {
        return Rat::one();
    }
    if base < &Rat::one() {
        return pow_rat_exponent(&base.recip(), &-exponent.clone(), dir, bits);
    }
    if exponent.is_negative() {
        let inner = pow_rat_exponent(base, &-exponent.clone(), dir.flip(), bits + 2);
        return inner.recip();
    }
    let p = exponent
        .numer()
        .to_string()
        .parse::<i32>()
        .expect("rational exponent numerator must be small");
    let q = exponent
        .denom()
        .to_string()
        .parse::<u32>()
        .expect("rational exponent denominator must be small");
    let powered = base.pow(p);
    if q == 1 {
        return powered;
    }
    crate::interval::nth_root_rat(&powered, q, bits, dir)
}
