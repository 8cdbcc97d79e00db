//! Exact input reals and certified evaluation.
//!
//! A [`CertifiedReal`] is one of three descriptors:
//!
//! * `rat:p/q` — an exact rational;
//! * `alg:c0,c1,...,cn@[lo,hi]` — the unique real root of
//!   `c0 + c1 x + ... + cn x^n` inside the isolating interval `(lo, hi)`
//!   (the polynomial must change sign at the endpoints, and a Sturm chain
//!   must count exactly one distinct root inside);
//! * `dec:<digits>e<err_exp>` — a decimal literal whose exact value is only
//!   known up to the declared error bound `10^err_exp`.
//!
//! Every value is queryable for a rational interval enclosure of any
//! requested width. Enclosures of an algebraic descriptor come from a
//! canonical bisection of the isolating interval, so the interval returned
//! for a given precision is a pure function of the descriptor — the internal
//! cache only resumes the bisection, it never changes answers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use crate::error::Error;
use crate::interval::{pow2, Rat, RationalInterval};
use crate::poly;

pub const DEFAULT_PRECISION_START: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 65536;

/// Refinement schedule for certified comparisons: start at `start` bits and
/// double until `cap`, then give up with `PrecisionExhausted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            start: DEFAULT_PRECISION_START,
            cap: DEFAULT_PRECISION_CAP,
        }
    }
}

impl Precision {
    pub fn with_cap(cap: u32) -> Self {
        Self {
            start: DEFAULT_PRECISION_START.min(cap),
            cap,
        }
    }

    /// Doubling schedule from `start` to `cap` inclusive.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap.max(1);
        let start = self.start.clamp(1, cap);
        let mut next = Some(start);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current >= cap {
                None
            } else {
                Some(current.saturating_mul(2).min(cap))
            };
            Some(current)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Descriptor {
    Rational(Rat),
    Algebraic {
        coeffs: Vec<BigInt>,
        lo: Rat,
        hi: Rat,
    },
    Decimal {
        value: Rat,
        error: Rat,
        digits: String,
        err_exp: i32,
    },
}

/// Bisection state for an algebraic descriptor. The bracket after `steps`
/// halvings is `[lo0 + index*w0/2^steps, lo0 + (index+1)*w0/2^steps]`, so any
/// coarser canonical bracket is recovered by shifting `index`.
#[derive(Clone, Debug)]
enum BisectState {
    Bracket {
        steps: u64,
        index: BigUint,
        sign_lo_positive: bool,
    },
    /// A bisection midpoint hit the root exactly at step `at_step`;
    /// `last_index` is the bracket index at `at_step - 1`.
    Exact {
        value: Rat,
        at_step: u64,
        last_index: BigUint,
    },
}

pub struct CertifiedReal {
    descriptor: Descriptor,
    cache: Mutex<Option<BisectState>>,
}

impl Clone for CertifiedReal {
    fn clone(&self) -> Self {
        let state = self.cache.lock().expect("bisection cache poisoned").clone();
        Self {
            descriptor: self.descriptor.clone(),
            cache: Mutex::new(state),
        }
    }
}

impl PartialEq for CertifiedReal {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for CertifiedReal {}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CertifiedReal({})", self.render())
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().ok()?;
        let denom: BigInt = d.trim().parse().ok()?;
        if denom.is_zero() {
            return None;
        }
        Some(Rat::new(numer, denom))
    } else {
        let v: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(v))
    }
}

/// Parses a plain decimal literal (optional sign and point) into an exact
/// rational.
pub fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = BigInt::from(10).pow(frac_part.len() as u32);
    Some(Rat::new(numer * BigInt::from(sign), denom))
}

/// Parses a rational given either as `p/q` or as a decimal literal.
pub fn parse_rational_or_decimal(s: &str) -> Option<Rat> {
    parse_rat(s).or_else(|| parse_decimal(s))
}

impl CertifiedReal {
    pub fn rational(value: Rat) -> Self {
        Self {
            descriptor: Descriptor::Rational(value),
            cache: Mutex::new(None),
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::rational(Rat::from_integer(BigInt::from(v)))
    }

    /// The unique real root of the integer polynomial inside `(lo, hi)`.
    pub fn algebraic(coeffs: Vec<BigInt>, lo: Rat, hi: Rat) -> Result<Self, Error> {
        let text = || format!("alg:{}@[{},{}]", poly::coeffs_to_string(&coeffs), lo, hi);
        match poly::degree(&coeffs) {
            Some(d) if d >= 1 => {}
            _ => {
                return Err(Error::Descriptor(
                    text(),
                    "polynomial must have degree >= 1".into(),
                ))
            }
        }
        if lo >= hi {
            return Err(Error::Descriptor(
                text(),
                "isolating interval must satisfy lo < hi".into(),
            ));
        }
        let sign_lo = poly::eval_sign(&coeffs, &lo);
        let sign_hi = poly::eval_sign(&coeffs, &hi);
        if sign_lo == Ordering::Equal || sign_hi == Ordering::Equal {
            return Err(Error::Descriptor(
                text(),
                "root must lie strictly inside the isolating interval".into(),
            ));
        }
        if sign_lo == sign_hi {
            return Err(Error::Descriptor(
                text(),
                "polynomial must change sign over the isolating interval".into(),
            ));
        }
        let roots = poly::count_roots_in(&coeffs, &lo, &hi);
        if roots != 1 {
            return Err(Error::Descriptor(
                text(),
                format!("isolating interval contains {roots} roots, expected exactly 1"),
            ));
        }
        Ok(Self {
            descriptor: Descriptor::Algebraic { coeffs, lo, hi },
            cache: Mutex::new(None),
        })
    }

    /// Decimal literal with declared absolute error bound `10^err_exp`.
    pub fn decimal(digits: &str, err_exp: i32) -> Result<Self, Error> {
        let text = || format!("dec:{digits}e{err_exp}");
        let value = parse_decimal(digits)
            .ok_or_else(|| Error::Descriptor(text(), "malformed decimal digits".into()))?;
        let error = Rat::from_integer(BigInt::from(10)).pow(err_exp);
        Ok(Self {
            descriptor: Descriptor::Decimal {
                value,
                error,
                digits: digits.to_string(),
                err_exp,
            },
            cache: Mutex::new(None),
        })
    }

    /// Parses the descriptor grammar `rat:p/q`, `alg:c0,...,cn@[lo,hi]`,
    /// `dec:<digits>e<err_exp>`.
    pub fn parse(descriptor: &str) -> Result<Self, Error> {
        let fail = |msg: &str| Error::Descriptor(descriptor.to_string(), msg.to_string());
        if let Some(body) = descriptor.strip_prefix("rat:") {
            let value = parse_rat(body).ok_or_else(|| fail("expected p/q"))?;
            Ok(Self::rational(value))
        } else if let Some(body) = descriptor.strip_prefix("alg:") {
            let (coeff_str, interval_str) = body
                .split_once('@')
                .ok_or_else(|| fail("expected coefficients@[lo,hi]"))?;
            let coeffs: Vec<BigInt> = coeff_str
                .split(',')
                .map(|c| c.trim().parse::<BigInt>())
                .collect::<Result<_, _>>()
                .map_err(|_| fail("malformed coefficient list"))?;
            let inner = interval_str
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| fail("expected [lo,hi]"))?;
            let (lo_str, hi_str) = inner
                .split_once(',')
                .ok_or_else(|| fail("expected two interval endpoints"))?;
            let lo = parse_rat(lo_str).ok_or_else(|| fail("malformed interval endpoint"))?;
            let hi = parse_rat(hi_str).ok_or_else(|| fail("malformed interval endpoint"))?;
            Self::algebraic(coeffs, lo, hi)
        } else if let Some(body) = descriptor.strip_prefix("dec:") {
            let (digits, exp_str) = body
                .rsplit_once('e')
                .ok_or_else(|| fail("expected <digits>e<err_exp>"))?;
            let err_exp: i32 = exp_str
                .parse()
                .map_err(|_| fail("malformed error exponent"))?;
            Self::decimal(digits, err_exp)
        } else {
            Err(fail(
                "unknown descriptor prefix (expected rat:, alg: or dec:)",
            ))
        }
    }

    /// Canonical descriptor string; `parse(render(x)) == x`.
    pub fn render(&self) -> String {
        match &self.descriptor {
            Descriptor::Rational(r) => format!("rat:{}/{}", r.numer(), r.denom()),
            Descriptor::Algebraic { coeffs, lo, hi } => format!(
                "alg:{}@[{},{}]",
                poly::coeffs_to_string(coeffs),
                rat_str(lo),
                rat_str(hi)
            ),
            Descriptor::Decimal {
                digits, err_exp, ..
            } => format!("dec:{digits}e{err_exp}"),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.descriptor, Descriptor::Rational(_))
    }

    /// Certified enclosure of width at most `2^-precision_bits`.
    ///
    /// Decimal descriptors fail with `PrecisionExhausted` once the request is
    /// finer than the declared error bound; the other descriptors refine
    /// without limit.
    pub fn enclosure(&self, precision_bits: u32) -> Result<RationalInterval, Error> {
        match &self.descriptor {
            Descriptor::Rational(r) => Ok(RationalInterval::point(r.clone())),
            Descriptor::Decimal { value, error, .. } => {
                let width = error * Rat::from_integer(BigInt::from(2));
                if width > pow2(-(precision_bits as i64)) {
                    return Err(Error::precision(
                        precision_bits,
                        format!(
                            "refining decimal literal {} beyond its declared error bound",
                            self.render()
                        ),
                    ));
                }
                Ok(RationalInterval::new(value - error, value + error)
                    .expect("error bound is nonnegative"))
            }
            Descriptor::Algebraic { coeffs, lo, hi } => {
                Ok(self.algebraic_enclosure(coeffs, lo, hi, precision_bits))
            }
        }
    }

    /// Best-effort enclosure: like [`enclosure`](Self::enclosure) but a
    /// decimal literal answers with its declared bound instead of failing.
    pub fn best_enclosure(&self, precision_bits: u32) -> RationalInterval {
        match &self.descriptor {
            Descriptor::Decimal { value, error, .. } => {
                RationalInterval::new(value - error, value + error)
                    .expect("error bound is nonnegative")
            }
            _ => self
                .enclosure(precision_bits)
                .expect("only decimal descriptors can exhaust precision"),
        }
    }

    /// Integer approximation `(a, e)` with `|x * 2^scale_bits - a| <= e`.
    /// Used by the fast enumeration filters; correctness never depends on the
    /// tightness of `e`.
    pub fn approx_scaled(&self, scale_bits: u32) -> (BigInt, BigInt) {
        let iv = self.best_enclosure(scale_bits + 16);
        let scale = pow2(scale_bits as i64);
        let mid = iv.midpoint() * &scale;
        let a = (mid + Rat::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer();
        let half_width = iv.width() * scale / Rat::from_integer(BigInt::from(2));
        let e = half_width.ceil().to_integer() + BigInt::one();
        (a, e)
    }

    fn algebraic_enclosure(
        &self,
        coeffs: &[BigInt],
        lo0: &Rat,
        hi0: &Rat,
        precision_bits: u32,
    ) -> RationalInterval {
        let width0 = hi0 - lo0;
        let target_steps = steps_for_width(&width0, precision_bits);
        let mut cache = self.cache.lock().expect("bisection cache poisoned");
        let mut state = cache.take().unwrap_or_else(|| BisectState::Bracket {
            steps: 0,
            index: BigUint::zero(),
            sign_lo_positive: poly::eval_sign(coeffs, lo0) == Ordering::Greater,
        });

        // Extend the bisection if the cached bracket is still too coarse.
        loop {
            match &state {
                BisectState::Exact { .. } => break,
                BisectState::Bracket { steps, .. } if *steps >= target_steps => break,
                BisectState::Bracket {
                    steps,
                    index,
                    sign_lo_positive,
                } => {
                    let steps = *steps;
                    let sign_lo_positive = *sign_lo_positive;
                    let denom = BigUint::one() << (steps + 1) as usize;
                    let mid_index = index * 2u32 + 1u32;
                    let mid = lo0 + &width0 * Rat::new(mid_index.clone().into(), denom.into());
                    match poly::eval_sign(coeffs, &mid) {
                        Ordering::Equal => {
                            state = BisectState::Exact {
                                value: mid,
                                at_step: steps + 1,
                                last_index: index.clone(),
                            };
                        }
                        s => {
                            let mid_positive = s == Ordering::Greater;
                            // Root is in the half whose endpoint signs differ.
                            let (new_index, new_sign) = if mid_positive != sign_lo_positive {
                                (index * 2u32, sign_lo_positive)
                            } else {
                                (index * 2u32 + 1u32, mid_positive)
                            };
                            state = BisectState::Bracket {
                                steps: steps + 1,
                                index: new_index,
                                sign_lo_positive: new_sign,
                            };
                        }
                    }
                }
            }
        }

        let result = match &state {
            BisectState::Exact {
                value,
                at_step,
                last_index,
            } => {
                if target_steps >= *at_step {
                    RationalInterval::point(value.clone())
                } else {
                    bracket_at(lo0, &width0, last_index, at_step - 1, target_steps)
                }
            }
            BisectState::Bracket { steps, index, .. } => {
                bracket_at(lo0, &width0, index, *steps, target_steps)
            }
        };
        *cache = Some(state);
        result
    }
}

/// Canonical bracket at `target` steps, reconstructed from the bracket index
/// at `steps >= target`.
fn bracket_at(
    lo0: &Rat,
    width0: &Rat,
    index: &BigUint,
    steps: u64,
    target: u64,
) -> RationalInterval {
    debug_assert!(target <= steps);
    let idx = index >> (steps - target) as usize;
    let denom: BigInt = (BigUint::one() << target as usize).into();
    let lo = lo0 + width0 * Rat::new(BigInt::from(idx.clone()), denom.clone());
    let hi = lo0 + width0 * Rat::new(BigInt::from(idx + 1u32), denom);
    RationalInterval::new(lo, hi).expect("bracket endpoints ordered")
}

/// Smallest number of halvings taking `width0` to at most `2^-bits`.
fn steps_for_width(width0: &Rat, bits: u32) -> u64 {
    // need width0 / 2^k <= 2^-bits, i.e. 2^k >= width0 * 2^bits
    let scaled = width0 * pow2(bits as i64);
    let q = scaled.ceil().to_integer();
    if q <= BigInt::one() {
        return 0;
    }
    (q - BigInt::one()).bits()
}

/// Certified enclosure of the distance from every point of `v` to its
/// nearest integer. Requires `v` narrower than `1/4`.
pub fn dist_nearest_int(v: &RationalInterval) -> Result<RationalInterval, Error> {
    let quarter = Rat::new(BigInt::one(), BigInt::from(4));
    if v.width() >= quarter {
        return Err(Error::IntervalTooWide);
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let k = (v.midpoint() + &half).floor();
    let shifted = v.shift(&-k); // within (-3/4, 3/4)
    let a = shifted.lo().clone();
    let b = shifted.hi().clone();
    let (lo, hi) = if !a.is_positive() && !b.is_negative() {
        // Contains 0; width < 1/4 keeps the bracket inside (-1/4, 1/4).
        let hi = if -a.clone() > b { -a } else { b };
        (Rat::zero(), hi)
    } else {
        // One-signed; fold to positive and walk the tent function.
        let (a, b) = if b.is_negative() { (-b, -a) } else { (a, b) };
        if b <= half {
            (a, b)
        } else if a >= half {
            (Rat::one() - b, Rat::one() - a)
        } else {
            let one_minus_b = Rat::one() - &b;
            let lo = if a < one_minus_b { a } else { one_minus_b };
            (lo, half)
        }
    };
    RationalInterval::new(lo, hi)
}

/// Certified enclosure of `m0 + m1*a1 + m2*a2` of width at most `2^-bits`.
pub fn eval_linear_form(
    m0: &BigInt,
    m1: &BigInt,
    m2: &BigInt,
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    bits: u32,
) -> Result<RationalInterval, Error> {
    let magnitude = m1.magnitude() + m2.magnitude() + BigUint::one();
    let extra = magnitude.bits() as u32 + 1;
    let e1 = a1.enclosure(bits + extra)?;
    let e2 = a2.enclosure(bits + extra)?;
    let t1 = e1.scale(&Rat::from_integer(m1.clone()));
    let t2 = e2.scale(&Rat::from_integer(m2.clone()));
    Ok(t1.add(&t2).shift(&Rat::from_integer(m0.clone())))
}

/// Certified enclosure of `|| m1*a1 + m2*a2 ||` (distance to the nearest
/// integer) of width at most `2^-bits`.
pub fn linear_form_distance(
    m1: &BigInt,
    m2: &BigInt,
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    bits: u32,
) -> Result<RationalInterval, Error> {
    let bits = bits.max(3);
    let iv = eval_linear_form(&BigInt::zero(), m1, m2, a1, a2, bits)?;
    dist_nearest_int(&iv)
}

/// Best-effort signed evaluation of `m1*a1 + m2*a2`: decimal literals
/// answer with their declared accuracy instead of failing.
pub fn eval_linear_form_best(
    m1: &BigInt,
    m2: &BigInt,
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    bits: u32,
) -> Result<RationalInterval, Error> {
    let magnitude = m1.magnitude() + m2.magnitude() + BigUint::one();
    let extra = magnitude.bits() as u32 + 1;
    let e1 = a1.best_enclosure(bits + extra);
    let e2 = a2.best_enclosure(bits + extra);
    Ok(e1
        .scale(&Rat::from_integer(m1.clone()))
        .add(&e2.scale(&Rat::from_integer(m2.clone()))))
}

/// Best-effort distance enclosure: like [`linear_form_distance`] but a
/// decimal literal answers with its declared accuracy instead of failing, so
/// the width may plateau above `2^-bits`. The enclosure is always sound;
/// comparisons that need more precision than the input carries still end in
/// `PrecisionExhausted` at the cap.
pub fn linear_form_distance_best(
    m1: &BigInt,
    m2: &BigInt,
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    bits: u32,
) -> Result<RationalInterval, Error> {
    let bits = bits.max(3);
    let iv = eval_linear_form_best(m1, m2, a1, a2, bits)?;
    dist_nearest_int(&iv).map_err(|_| {
        Error::precision(
            bits,
            format!("input precision too coarse for the distance at ({m1},{m2})"),
        )
    })
}

/// Outcome of a certified strict comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
}

/// Decides `value < threshold` or `value > threshold` by refining the
/// enclosure source. Exact equality can never be separated and surfaces as
/// `PrecisionExhausted` at the cap.
pub fn certified_compare<F>(
    mut value: F,
    threshold: &Rat,
    prec: &Precision,
    context: &str,
) -> Result<Comparison, Error>
where
    F: FnMut(u32) -> Result<RationalInterval, Error>,
{
    for bits in prec.schedule() {
        let iv = value(bits)?;
        if iv.hi() < threshold {
            return Ok(Comparison::Less);
        }
        if iv.lo() > threshold {
            return Ok(Comparison::Greater);
        }
    }
    Err(Error::precision(prec.cap, format!("comparing {context}")))
}

/// Decides which of two refinable values is smaller.
pub fn certified_compare_values<F, G>(
    mut left: F,
    mut right: G,
    prec: &Precision,
    context: &str,
) -> Result<Comparison, Error>
where
    F: FnMut(u32) -> Result<RationalInterval, Error>,
    G: FnMut(u32) -> Result<RationalInterval, Error>,
{
    for bits in prec.schedule() {
        let a = left(bits)?;
        let b = right(bits)?;
        if a.strictly_left_of(&b) {
            return Ok(Comparison::Less);
        }
        if b.strictly_left_of(&a) {
            return Ok(Comparison::Greater);
        }
    }
    Err(Error::precision(prec.cap, format!("comparing {context}")))
}

/// Certified nearest integer of a refinable value. Fails at the cap when the
/// value sits exactly on a half-integer.
pub fn nearest_int_certified<F>(
    mut value: F,
    prec: &Precision,
    context: &str,
) -> Result<BigInt, Error>
where
    F: FnMut(u32) -> Result<RationalInterval, Error>,
{
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for bits in prec.schedule() {
        let iv = value(bits)?;
        let k = (iv.midpoint() + &half).floor();
        let lo_gap = iv.lo() - (&k - &half);
        let hi_gap = (&k + &half) - iv.hi();
        if lo_gap.is_positive() && hi_gap.is_positive() {
            return Ok(k.to_integer());
        }
    }
    Err(Error::precision(
        prec.cap,
        format!("rounding {context} to the nearest integer"),
    ))
}

/// Convenience: `x mod 2^128` as the wrap-around residue used by the scan
/// filters.
pub fn wrap_u128(x: &BigInt) -> u128 {
    let modulus = BigInt::one() << 128;
    let m = x.mod_floor(&modulus);
    m.to_u128().expect("residue fits in 128 bits")
}
