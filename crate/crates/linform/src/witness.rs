//! Construction of positive witness points.
//!
//! Given consecutive best approximations, two search procedures produce
//! integer points `(x1, x2)` with both coordinates strictly positive and a
//! certified bound on `||a1*x1 + a2*x2||`:
//!
//! * [`slab_search`] enumerates the parallelepiped
//!   `|a1*x1 + a2*x2 + y| <= zeta_nu`, `|x1 - x2| <= M_{nu+1}`,
//!   `|x1 + x2| <= R_nu` with `R_nu = 2 / (M_{nu+1} * zeta_nu)`. The region
//!   has volume 8, so it carries a nonzero integer point. The search runs
//!   per diagonal `v = x1 - x2`: each slice is a one-dimensional
//!   inhomogeneous approximation problem, solved exactly by enumerating a
//!   Gauss-reduced planar lattice over a box with Cramer coefficient bounds.
//! * [`circle_search`] enumerates the rank-2 lattice spanned by the
//!   projections of two consecutive best approximations inside the circle of
//!   radius `4*D_nu/M_nu` centered at `(5*D_nu/M_nu, 5*D_nu/M_nu)`; the
//!   covering argument guarantees a point, and every in-circle point has
//!   positive coordinates.
//!
//! The wrappers [`quadratic_witness`], [`golden_witness`] and
//! [`golden_circle_witness`] certify their regime preconditions, run the
//! search, and attach a [`BoundCertificate`] with the exact constants
//! (`16 * max^-2` in the quadratic case, `24^tau * M_nu^(tau-2) * max^-tau`
//! in the golden case). [`construct_witness`] is the case dispatcher that
//! picks the applicable regime for each index.
//!
//! All candidate filtering is exact integer arithmetic; every returned bound
//! is re-checked through certified interval comparisons, never trusted from
//! the search geometry.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::best_approx::{d_nu, det_condition, BestApproxSequence, BestApproximation};
use crate::error::Error;
use crate::golden::{pow_golden_int, GoldenExact};
use crate::interval::{pow2, Rat, RationalInterval};
use crate::real::{
    certified_compare, certified_compare_values, linear_form_distance_best, wrap_u128, Comparison,
    Precision,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessCase {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchKind {
    /// Direct parallelepiped search.
    #[serde(rename = "slab")]
    Slab,
    /// Parallelepiped search in the quadratic regime.
    #[serde(rename = "slab-quadratic")]
    SlabQuadratic,
    /// Parallelepiped search in the golden-exponent regime.
    #[serde(rename = "slab-golden")]
    SlabGolden,
    /// Lattice circle search.
    #[serde(rename = "circle")]
    Circle,
    /// Lattice circle search in the golden-exponent regime.
    #[serde(rename = "circle-golden")]
    CircleGolden,
}

/// Certified statement `||a1*x1 + a2*x2|| <= rhs` with the exact constants
/// of the regime; `holds` is always true in returned witnesses.
#[derive(Clone, Debug)]
pub struct BoundCertificate {
    pub case: WitnessCase,
    pub rhs: RationalInterval,
    pub holds: bool,
}

/// Positive integer point with a certified bound certificate.
#[derive(Clone, Debug)]
pub struct WitnessPoint {
    pub x1: BigUint,
    pub x2: BigUint,
    /// Certified enclosure of `||a1*x1 + a2*x2||`, strictly positive.
    pub value: RationalInterval,
    pub source: SearchKind,
    /// 1-based index of the best approximation the point was built from.
    pub nu: usize,
    pub certificate: BoundCertificate,
}

impl WitnessPoint {
    pub fn max_coordinate(&self) -> BigUint {
        self.x1.clone().max(self.x2.clone())
    }
}

/// Raw search output before a regime certificate is attached.
#[derive(Clone, Debug)]
pub struct FoundPoint {
    pub x1: BigUint,
    pub x2: BigUint,
    pub value: RationalInterval,
}

impl FoundPoint {
    pub fn max_coordinate(&self) -> BigUint {
        self.x1.clone().max(self.x2.clone())
    }
}

/// View of a best-approximation sequence centered at index `nu` (1-based),
/// carrying the neighbours the searches need. `m_{nu}` and `m_{nu+1}` must
/// exist; `m_{nu-1}` and `m_{nu+2}` are optional.
#[derive(Clone, Copy)]
pub struct NuContext<'a> {
    seq: &'a BestApproxSequence,
    nu: usize,
}

impl<'a> NuContext<'a> {
    pub fn new(seq: &'a BestApproxSequence, nu: usize) -> Result<Self, Error> {
        if nu < 1 || seq.item(nu).is_none() || seq.item(nu + 1).is_none() {
            return Err(Error::InvalidParameter(format!(
                "context at nu={nu} needs items nu and nu+1 (sequence has {})",
                seq.len()
            )));
        }
        Ok(Self { seq, nu })
    }

    pub fn seq(&self) -> &'a BestApproxSequence {
        self.seq
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn prev(&self) -> Option<&'a BestApproximation> {
        if self.nu >= 2 {
            self.seq.item(self.nu - 1)
        } else {
            None
        }
    }

    pub fn cur(&self) -> &'a BestApproximation {
        self.seq.item(self.nu).expect("checked at construction")
    }

    pub fn next(&self) -> &'a BestApproximation {
        self.seq.item(self.nu + 1).expect("checked at construction")
    }

    pub fn next2(&self) -> Option<&'a BestApproximation> {
        self.seq.item(self.nu + 2)
    }

    fn require_prev(&self) -> Result<&'a BestApproximation, Error> {
        self.prev().ok_or_else(|| {
            Error::InvalidParameter(format!("context at nu={} needs item nu-1", self.nu))
        })
    }

    /// Certified enclosure of `R_nu = 2 / (M_{nu+1} * zeta_nu)`, refined
    /// until `R_nu > M_{nu+1}` is certified.
    pub fn r_nu(&self, prec: &Precision) -> Result<RationalInterval, Error> {
        let m_next = Rat::from_integer(self.next().height_big());
        for bits in prec.schedule() {
            let z = self.seq.zeta_at(self.nu, bits)?;
            if !z.strictly_positive() {
                continue;
            }
            let r = r_from_zeta(&z, &m_next);
            if r.lo() > &m_next {
                return Ok(r);
            }
        }
        Err(Error::precision(
            prec.cap,
            format!("certifying R > M at nu={}", self.nu),
        ))
    }

    /// Refinable enclosure of the golden regime threshold
    /// `A_nu * M_{nu+1}^(-tau^2) = M_nu^(tau-1) * M_{nu+1}^(-tau-1) / 120`.
    pub fn golden_threshold(&self, bits: u32) -> Result<RationalInterval, Error> {
        let tau = GoldenExact::tau();
        let m_cur = self.cur().height_big();
        let m_next = self.next().height_big();
        let a = pow_golden_int(&m_cur, &tau.sub(&GoldenExact::one()), bits)?;
        let b = pow_golden_int(&m_next, &tau.add(&GoldenExact::one()).neg(), bits)?;
        Ok(a.mul(&b).scale(&Rat::new(BigInt::one(), BigInt::from(120))))
    }

    fn dist_closure(
        &self,
        x1: &BigInt,
        x2: &BigInt,
    ) -> impl FnMut(u32) -> Result<RationalInterval, Error> + 'a {
        let (x1, x2) = (x1.clone(), x2.clone());
        let seq = self.seq;
        move |bits| linear_form_distance_best(&x1, &x2, seq.alpha1(), seq.alpha2(), bits)
    }
}

pub(crate) fn r_from_zeta(zeta: &RationalInterval, m_next: &Rat) -> RationalInterval {
    let two = Rat::from_integer(BigInt::from(2));
    RationalInterval::new(&two / (m_next * zeta.hi()), &two / (m_next * zeta.lo()))
        .expect("zeta is positive")
}

// ---------------------------------------------------------------------------
// Parallelepiped (slab) search
// ---------------------------------------------------------------------------

type V2 = (BigInt, BigInt);

fn dot(a: &V2, b: &V2) -> BigInt {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// Two-dimensional Gauss (Lagrange) reduction; returns a basis of the same
/// lattice with `|b1| <= |b2|` and nearly orthogonal vectors.
fn gauss_reduce(mut b1: V2, mut b2: V2) -> (V2, V2) {
    loop {
        if dot(&b1, &b1) > dot(&b2, &b2) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let n1 = dot(&b1, &b1);
        if n1.is_zero() {
            return (b1, b2);
        }
        let d = dot(&b1, &b2);
        // nearest integer to d / n1
        let two_d: BigInt = &d * 2;
        let two_n1: BigInt = &n1 * 2;
        let q = (two_d + &n1).div_floor(&two_n1);
        if q.is_zero() {
            return (b1, b2);
        }
        b2 = (&b2.0 - &q * &b1.0, &b2.1 - &q * &b1.1);
    }
}

/// Integer solutions `b` of `lo <= base + b*c <= hi`.
enum CoeffRange {
    Empty,
    All,
    Range(BigInt, BigInt),
}

fn solve_coeff_range(base: &BigInt, c: &BigInt, lo: &BigInt, hi: &BigInt) -> CoeffRange {
    if c.is_zero() {
        return if base >= lo && base <= hi {
            CoeffRange::All
        } else {
            CoeffRange::Empty
        };
    }
    let (a, b) = if c.is_positive() {
        ((lo - base).div_ceil(c), (hi - base).div_floor(c))
    } else {
        ((hi - base).div_ceil(c), (lo - base).div_floor(c))
    };
    if a > b {
        CoeffRange::Empty
    } else {
        CoeffRange::Range(a, b)
    }
}

fn intersect(a: CoeffRange, b: CoeffRange) -> CoeffRange {
    match (a, b) {
        (CoeffRange::Empty, _) | (_, CoeffRange::Empty) => CoeffRange::Empty,
        (CoeffRange::All, r) | (r, CoeffRange::All) => r,
        (CoeffRange::Range(a1, b1), CoeffRange::Range(a2, b2)) => {
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo > hi {
                CoeffRange::Empty
            } else {
                CoeffRange::Range(lo, hi)
            }
        }
    }
}

const ENUM_GUARD: u64 = 4_000_000;

/// Searches the parallelepiped for qualifying positive points and returns
/// the tie-break minimum: smallest `max(x1, x2)`, then smallest certified
/// value, then lexicographic `(x1, x2)`.
///
/// Qualifying means both coordinates strictly positive,
/// `||a1*x1 + a2*x2|| < zeta_nu` strictly, `x1 + x2 <= R_nu`, and
/// `|x1 - x2| <= M_{nu+1}`. The projection of the best approximation itself
/// attains equality in the first constraint and is excluded up front.
pub fn slab_search(ctx: &NuContext, prec: &Precision) -> Result<FoundPoint, Error> {
    let seq = ctx.seq();
    let cur = ctx.cur();
    let m_next = ctx.next().height_big();
    let m_next_i64 = ctx
        .next()
        .height
        .to_i64()
        .filter(|h| *h <= (1 << 31))
        .ok_or_else(|| Error::InvalidParameter("height too large for slab search".into()))?;

    // Certified R with R > M, plus a zeta enclosure for the scaled window.
    let r_iv = ctx.r_nu(prec)?;
    let r_out = r_iv.hi().floor().to_integer();
    let mut zeta_hi = None;
    for bits in prec.schedule() {
        let z = seq.zeta_at(ctx.nu(), bits)?;
        if z.strictly_positive() && z.width() <= z.lo() * pow2(-32) {
            zeta_hi = Some(z.hi().clone());
            break;
        }
    }
    let zeta_hi = zeta_hi
        .ok_or_else(|| Error::precision(prec.cap, format!("refining zeta at nu={}", ctx.nu())))?;

    // 128-bit fixed-point approximations for the window geometry.
    let (sa1, se1) = seq.alpha1().approx_scaled(128);
    let (sa2, se2) = seq.alpha2().approx_scaled(128);
    let a1f = wrap_u128(&sa1);
    let a2f = wrap_u128(&sa2);
    let th = a1f.wrapping_add(a2f); // scaled a1 + a2
    let modulus = BigInt::one() << 128;

    let w_cap: BigInt = (&r_out + BigInt::one()) / 2 + BigInt::one();
    let err_unit = &se1 + &se2;
    let slack: BigInt = (&w_cap + BigInt::from(m_next_i64) + 2) * &err_unit + 2;
    let z_scaled: BigInt = (&zeta_hi * pow2(128)).ceil().to_integer() + &slack;

    // Transformed lattice basis: point (w, y) maps to (w * z_scaled, y * w_cap)
    // so the per-slice search box is roughly square.
    let b1: V2 = (z_scaled.clone(), BigInt::from(th) * &w_cap);
    let b2: V2 = (BigInt::zero(), &modulus * &w_cap);
    let (r1, r2) = gauss_reduce(b1, b2);
    let det = &r1.0 * &r2.1 - &r1.1 * &r2.0;
    if det.is_zero() {
        return Err(Error::SearchFailed("degenerate slab lattice".into()));
    }

    let xi_nu_pos = (cur.m1.clone(), cur.m2.clone());
    let xi_nu_neg = (-cur.m1.clone(), -cur.m2.clone());

    let mut candidates: Vec<(BigInt, BigInt, BigInt)> = Vec::new(); // (x1, x2, u)
    for v in -m_next_i64..=m_next_i64 {
        let par = v.rem_euclid(2);
        let c1 = (par + v) / 2;
        let c2 = (par - v) / 2;
        let phi = wrap_mul_i64(a1f, c1).wrapping_add(wrap_mul_i64(a2f, c2));
        let phi_big = BigInt::from(phi);

        let w_lo = BigInt::from(if par == 0 { 1 } else { 0 });
        let w_hi: BigInt = (&r_out - par).div_floor(&BigInt::from(2));
        if w_hi < w_lo {
            continue;
        }
        let y_lo = -&phi_big - &z_scaled;
        let y_hi = -&phi_big + &z_scaled;

        // Box corners in transformed coordinates.
        let x_lo_t = &w_lo * &z_scaled;
        let x_hi_t = &w_hi * &z_scaled;
        let y_lo_t = &y_lo * &w_cap;
        let y_hi_t = &y_hi * &w_cap;

        // Cramer bound: coefficient of r1 is (x*r2.y - y*r2.x) / det, linear
        // in the point, so its extrema split over the two terms.
        let (t1a, t1b) = ordered(&x_lo_t * &r2.1, &x_hi_t * &r2.1);
        let (t2a, t2b) = ordered(-(&y_lo_t * &r2.0), -(&y_hi_t * &r2.0));
        let num_min = t1a + t2a;
        let num_max = t1b + t2b;
        let (a_min, a_max) = if det.is_positive() {
            (num_min.div_ceil(&det), num_max.div_floor(&det))
        } else {
            (num_max.div_ceil(&det), num_min.div_floor(&det))
        };
        if a_max < a_min {
            continue;
        }
        if (&a_max - &a_min).to_u64().is_none_or(|n| n > ENUM_GUARD) {
            return Err(Error::SearchFailed(
                "slab coefficient range exceeded the enumeration guard".into(),
            ));
        }

        let mut a = a_min.clone();
        while a <= a_max {
            let px = &a * &r1.0;
            let py = &a * &r1.1;
            let range_x = solve_coeff_range(&px, &r2.0, &x_lo_t, &x_hi_t);
            let range_y = solve_coeff_range(&py, &r2.1, &y_lo_t, &y_hi_t);
            match intersect(range_x, range_y) {
                CoeffRange::Empty => {}
                CoeffRange::All => {
                    return Err(Error::SearchFailed(
                        "unbounded coefficient range in slab enumeration".into(),
                    ))
                }
                CoeffRange::Range(b_lo, b_hi) => {
                    if (&b_hi - &b_lo).to_u64().is_none_or(|n| n > ENUM_GUARD) {
                        return Err(Error::SearchFailed(
                            "slab coefficient range exceeded the enumeration guard".into(),
                        ));
                    }
                    let mut b = b_lo.clone();
                    while b <= b_hi {
                        let pxx = &px + &b * &r2.0;
                        let w = &pxx / &z_scaled;
                        debug_assert!((&pxx % &z_scaled).is_zero());
                        let u: BigInt = &w * 2 + par;
                        if u >= BigInt::one() && u <= r_out {
                            let x1: BigInt = (&u + v) / 2;
                            let x2: BigInt = (&u - v) / 2;
                            if x1.is_positive() && x2.is_positive() {
                                let pt = (x1, x2);
                                if pt != xi_nu_pos && pt != xi_nu_neg {
                                    candidates.push((pt.0, pt.1, u));
                                }
                            }
                        }
                        b += 1;
                    }
                }
            }
            a += 1;
        }
    }

    select_slab_winner(ctx, candidates, &r_iv, &m_next, prec)
}

fn wrap_mul_i64(a: u128, n: i64) -> u128 {
    (n as i128 as u128).wrapping_mul(a)
}

fn ordered(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn select_slab_winner(
    ctx: &NuContext,
    mut candidates: Vec<(BigInt, BigInt, BigInt)>,
    r_iv: &RationalInterval,
    m_next: &BigInt,
    prec: &Precision,
) -> Result<FoundPoint, Error> {
    let seq = ctx.seq();
    // Deterministic scan order: smallest max coordinate first, then lex.
    candidates.sort_by(|a, b| {
        let ma = (&a.0).max(&a.1);
        let mb = (&b.0).max(&b.1);
        ma.cmp(mb).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1))
    });

    let mut qualifying: Vec<(BigInt, BigInt)> = Vec::new();
    for (x1, x2, u) in candidates {
        // Strict value bound first; it prunes the inflated-window artifacts.
        let cmp = certified_compare_values(
            ctx.dist_closure(&x1, &x2),
            seq.zeta_closure(ctx.nu()),
            prec,
            &format!("slab candidate ({x1},{x2}) vs zeta at nu={}", ctx.nu()),
        )?;
        if cmp != Comparison::Less {
            continue;
        }
        // Certified u <= R; the enumeration window used floor(hi(R)).
        if Rat::from_integer(u.clone()) > *r_iv.lo() {
            let u_rat = Rat::from_integer(u.clone());
            let m_next_rat = Rat::from_integer(m_next.clone());
            let cmp_r = certified_compare(
                |bits| {
                    let z = seq.zeta_at(ctx.nu(), bits)?;
                    if !z.strictly_positive() {
                        return RationalInterval::new(
                            Rat::zero(),
                            Rat::from_integer(BigInt::one() << 62),
                        );
                    }
                    Ok(r_from_zeta(&z, &m_next_rat))
                },
                &u_rat,
                prec,
                &format!("R vs u={u} at nu={}", ctx.nu()),
            )?;
            if cmp_r == Comparison::Less {
                continue; // R < u: outside the true window
            }
        }
        // Points strictly below the next height with value below zeta would
        // contradict the sequence; surface loudly instead of skipping.
        let max = (&x1).max(&x2).clone();
        if &max < m_next {
            return Err(Error::SearchFailed(format!(
                "slab point ({x1},{x2}) below the next height contradicts the sequence"
            )));
        }
        qualifying.push((x1, x2));
    }

    if qualifying.is_empty() {
        return Err(Error::SearchFailed(format!(
            "no qualifying point in the slab region at nu={}",
            ctx.nu()
        )));
    }

    // Tie-break: group by minimal max coordinate (already sorted), then pick
    // the smallest certified value inside the group.
    let min_max = {
        let (x1, x2) = &qualifying[0];
        x1.max(x2).clone()
    };
    let group: Vec<&(BigInt, BigInt)> = qualifying
        .iter()
        .take_while(|(x1, x2)| x1.max(x2) == &min_max)
        .collect();
    let mut winner = group[0];
    for cand in &group[1..] {
        let cmp = certified_compare_values(
            ctx.dist_closure(&cand.0, &cand.1),
            ctx.dist_closure(&winner.0, &winner.1),
            prec,
            "slab tie-break",
        )?;
        if cmp == Comparison::Less {
            winner = cand;
        }
    }

    finish_point(ctx, &winner.0, &winner.1, prec)
}

fn finish_point(
    ctx: &NuContext,
    x1: &BigInt,
    x2: &BigInt,
    prec: &Precision,
) -> Result<FoundPoint, Error> {
    let mut value = None;
    for bits in prec.schedule() {
        let iv = linear_form_distance_best(x1, x2, ctx.seq().alpha1(), ctx.seq().alpha2(), bits)?;
        if iv.strictly_positive() {
            let tight = iv.width() <= iv.lo() * pow2(-32);
            value = Some(iv);
            if tight {
                break;
            }
        }
    }
    let value = value.ok_or_else(|| {
        Error::precision(prec.cap, format!("refining witness value at ({x1},{x2})"))
    })?;
    Ok(FoundPoint {
        x1: x1.magnitude().clone(),
        x2: x2.magnitude().clone(),
        value,
    })
}

// ---------------------------------------------------------------------------
// Circle (lattice) search
// ---------------------------------------------------------------------------

/// Exact enumeration of the points of the lattice spanned by `xi` and
/// `xi_next` inside the circle of radius `4d/m` centered at `(5d/m, 5d/m)`.
/// Coefficients range over `|l1| <= l1_bound`, `|l2| <= 20`, which covers
/// every in-circle point. Returns `(x1, x2, l1, l2)` tuples.
pub(crate) fn circle_lattice_points(
    xi: (&BigInt, &BigInt),
    xi_next: (&BigInt, &BigInt),
    d: &BigInt,
    m: &BigInt,
    l1_bound: i64,
) -> Vec<(BigInt, BigInt, i64, i64)> {
    let five_d = d * 5;
    let radius_sq = d * d * 16u32;
    let mut out = Vec::new();
    for l1 in -l1_bound..=l1_bound {
        for l2 in -20i64..=20 {
            let p1 = xi.0 * l1 + xi_next.0 * l2;
            let p2 = xi.1 * l1 + xi_next.1 * l2;
            let dx = &p1 * m - &five_d;
            let dy = &p2 * m - &five_d;
            if &dx * &dx + &dy * &dy <= radius_sq {
                out.push((p1, p2, l1, l2));
            }
        }
    }
    out
}

/// Searches the projected-lattice circle for a qualifying point. Requires
/// `m_{nu-1}` in context, a nonzero determinant minor, and both smallness
/// windows `zeta_nu <= 1/(8 M_{nu-1} M_{nu+1})`,
/// `zeta_{nu+1} <= 1/(8 M_{nu-1} M_nu)` certified.
pub fn circle_search(ctx: &NuContext, prec: &Precision) -> Result<FoundPoint, Error> {
    let prev = ctx.require_prev()?;
    let cur = ctx.cur();
    let next = ctx.next();
    if !det_condition(prev, cur, next) {
        return Err(Error::PreconditionNotCertified(format!(
            "determinant minor vanishes at nu={}",
            ctx.nu()
        )));
    }
    certify_window_first(ctx, prec)?;
    certify_window_second(ctx, prec)?;

    let d = BigInt::from(d_nu(cur, next));
    let m = cur.height_big();
    // Fundamental area bound 2*D >= M^2, exact.
    if &d * 2 < &m * &m {
        return Err(Error::SearchFailed(format!(
            "fundamental area below the guaranteed bound at nu={}",
            ctx.nu()
        )));
    }

    let l1_numer: BigInt = next.height_big() * 20 + &m - 1;
    let l1_bound_big: BigInt = l1_numer.div_floor(&m);
    let l1_bound = l1_bound_big
        .to_i64()
        .filter(|b| *b <= 100_000_000)
        .ok_or_else(|| Error::SearchFailed("coefficient range too large".into()))?;

    let mut points =
        circle_lattice_points((&cur.m1, &cur.m2), (&next.m1, &next.m2), &d, &m, l1_bound);
    if points.is_empty() {
        return Err(Error::SearchFailed(format!(
            "no lattice point in the circle at nu={} (covering argument violated)",
            ctx.nu()
        )));
    }
    points.sort_by(|a, b| {
        let ma = (&a.0).max(&a.1);
        let mb = (&b.0).max(&b.1);
        ma.cmp(mb).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1))
    });

    // Certified value bound: || a1 x1 + a2 x2 || < 40 * M_{nu+1}/M_nu * zeta_nu.
    let factor = Rat::new(next.height_big() * 40, m.clone());
    let mut qualifying: Vec<&(BigInt, BigInt, i64, i64)> = Vec::new();
    for p in &points {
        if !p.0.is_positive() || !p.1.is_positive() {
            continue;
        }
        let cmp = certified_compare_values(
            ctx.dist_closure(&p.0, &p.1),
            |bits| Ok(ctx.seq().zeta_at(ctx.nu(), bits)?.scale(&factor)),
            prec,
            &format!("circle candidate ({},{})", p.0, p.1),
        )?;
        if cmp == Comparison::Less {
            qualifying.push(p);
        }
    }
    if qualifying.is_empty() {
        return Err(Error::SearchFailed(format!(
            "no circle point satisfies the certified value bound at nu={}",
            ctx.nu()
        )));
    }
    let min_max = qualifying[0].0.clone().max(qualifying[0].1.clone());
    let group: Vec<_> = qualifying
        .iter()
        .take_while(|p| p.0.clone().max(p.1.clone()) == min_max)
        .collect();
    let mut winner = group[0];
    for cand in &group[1..] {
        let cmp = certified_compare_values(
            ctx.dist_closure(&cand.0, &cand.1),
            ctx.dist_closure(&winner.0, &winner.1),
            prec,
            "circle tie-break",
        )?;
        if cmp == Comparison::Less {
            winner = cand;
        }
    }
    finish_point(ctx, &winner.0, &winner.1, prec)
}

fn certify_window_first(ctx: &NuContext, prec: &Precision) -> Result<(), Error> {
    let prev = ctx.require_prev()?;
    let threshold = Rat::new(
        BigInt::one(),
        prev.height_big() * ctx.next().height_big() * 8,
    );
    match certified_compare(
        ctx.seq().zeta_closure(ctx.nu()),
        &threshold,
        prec,
        &format!("first circle window at nu={}", ctx.nu()),
    ) {
        Ok(Comparison::Less) => Ok(()),
        Ok(Comparison::Greater) => Err(Error::PreconditionNotCertified(format!(
            "zeta_nu exceeds 1/(8 M_(nu-1) M_(nu+1)) at nu={}",
            ctx.nu()
        ))),
        Err(e) => Err(e),
    }
}

fn certify_window_second(ctx: &NuContext, prec: &Precision) -> Result<(), Error> {
    let prev = ctx.require_prev()?;
    let threshold = Rat::new(
        BigInt::one(),
        prev.height_big() * ctx.cur().height_big() * 8,
    );
    match certified_compare(
        ctx.seq().zeta_closure(ctx.nu() + 1),
        &threshold,
        prec,
        &format!("second circle window at nu={}", ctx.nu()),
    ) {
        Ok(Comparison::Less) => Ok(()),
        Ok(Comparison::Greater) => Err(Error::PreconditionNotCertified(format!(
            "zeta_(nu+1) exceeds 1/(8 M_(nu-1) M_nu) at nu={}",
            ctx.nu()
        ))),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Regime wrappers and the dispatcher
// ---------------------------------------------------------------------------

/// Quadratic regime: requires `zeta_nu >= 1/(8 M_{nu+1}^2)` certified; the
/// witness then satisfies `M_{nu+1} <= max <= 4 M_{nu+1}` and
/// `||a1 x1 + a2 x2|| <= 16 * max^-2` with exact constants.
pub fn quadratic_witness(ctx: &NuContext, prec: &Precision) -> Result<WitnessPoint, Error> {
    let m_next = ctx.next().height_big();
    let threshold = Rat::new(BigInt::one(), &m_next * &m_next * 8);
    match certified_compare(
        ctx.seq().zeta_closure(ctx.nu()),
        &threshold,
        prec,
        &format!("quadratic window at nu={}", ctx.nu()),
    ) {
        Ok(Comparison::Greater) => {}
        Ok(Comparison::Less) => {
            return Err(Error::PreconditionNotCertified(format!(
                "zeta_nu below 1/(8 M_(nu+1)^2) at nu={}",
                ctx.nu()
            )))
        }
        Err(Error::PrecisionExhausted { .. }) => {
            return Err(Error::PreconditionNotCertified(format!(
                "quadratic window at nu={} cannot be certified either way",
                ctx.nu()
            )))
        }
        Err(e) => return Err(e),
    }

    let found = slab_search(ctx, prec)?;
    let max = BigInt::from(found.max_coordinate());
    if max < m_next {
        return Err(Error::SearchFailed(
            "witness below the height window".into(),
        ));
    }
    if max > &m_next * 4 {
        return Err(Error::SearchFailed(format!(
            "witness max {max} exceeds 4*M_(nu+1)={} at nu={}",
            &m_next * 4,
            ctx.nu()
        )));
    }
    let rhs = Rat::new(BigInt::from(16), &max * &max);
    match certified_compare(
        ctx.dist_closure(
            &BigInt::from(found.x1.clone()),
            &BigInt::from(found.x2.clone()),
        ),
        &rhs,
        prec,
        "quadratic value bound",
    )? {
        Comparison::Less => {}
        Comparison::Greater => {
            return Err(Error::SearchFailed(
                "quadratic value bound failed certification".into(),
            ))
        }
    }
    Ok(WitnessPoint {
        x1: found.x1,
        x2: found.x2,
        value: found.value,
        source: SearchKind::SlabQuadratic,
        nu: ctx.nu(),
        certificate: BoundCertificate {
            case: WitnessCase::I,
            rhs: RationalInterval::point(rhs),
            holds: true,
        },
    })
}

/// Golden-exponent regime via the slab: requires
/// `zeta_nu >= A_nu * M_{nu+1}^(-tau^2)` certified. The witness satisfies
/// `max <= 240 * M_{nu+1}^tau * M_nu^(-1/tau)` and
/// `||a1 x1 + a2 x2|| <= 24^tau * M_nu^((1-tau)/tau) * max^-tau`.
pub fn golden_witness(ctx: &NuContext, prec: &Precision) -> Result<WitnessPoint, Error> {
    match certified_compare_values(
        ctx.seq().zeta_closure(ctx.nu()),
        |bits| ctx.golden_threshold(bits),
        prec,
        &format!("golden window at nu={}", ctx.nu()),
    ) {
        Ok(Comparison::Greater) => {}
        Ok(Comparison::Less) => {
            return Err(Error::PreconditionNotCertified(format!(
                "zeta_nu below the golden threshold at nu={}",
                ctx.nu()
            )))
        }
        Err(Error::PrecisionExhausted { .. }) => {
            return Err(Error::PreconditionNotCertified(format!(
                "golden window at nu={} cannot be certified either way",
                ctx.nu()
            )))
        }
        Err(e) => return Err(e),
    }

    let found = slab_search(ctx, prec)?;
    certify_case_ii(ctx, found, SearchKind::SlabGolden, prec)
}

/// Golden-exponent regime via the circle: requires the determinant minor,
/// `zeta_nu < A_nu * M_{nu+1}^(-tau^2)`, and both circle windows.
pub fn golden_circle_witness(ctx: &NuContext, prec: &Precision) -> Result<WitnessPoint, Error> {
    match certified_compare_values(
        ctx.seq().zeta_closure(ctx.nu()),
        |bits| ctx.golden_threshold(bits),
        prec,
        &format!("golden circle window at nu={}", ctx.nu()),
    ) {
        Ok(Comparison::Less) => {}
        Ok(Comparison::Greater) => {
            return Err(Error::PreconditionNotCertified(format!(
                "zeta_nu above the golden threshold at nu={}",
                ctx.nu()
            )))
        }
        Err(Error::PrecisionExhausted { .. }) => {
            return Err(Error::PreconditionNotCertified(format!(
                "golden circle window at nu={} cannot be certified either way",
                ctx.nu()
            )))
        }
        Err(e) => return Err(e),
    }

    let found = circle_search(ctx, prec)?;
    // Exact height bound from the circle geometry.
    let max = BigInt::from(found.max_coordinate());
    if max > ctx.next().height_big() * 20 {
        return Err(Error::SearchFailed(format!(
            "circle witness max {max} exceeds 20*M_(nu+1) at nu={}",
            ctx.nu()
        )));
    }
    certify_case_ii(ctx, found, SearchKind::CircleGolden, prec)
}

/// Shared golden-case certificate: certifies the height bound
/// `max <= 240 * M_{nu+1}^tau * M_nu^(1-tau)` and the value bound
/// `value <= 24^tau * M_nu^(tau-2) * max^-tau`, both through enclosures.
fn certify_case_ii(
    ctx: &NuContext,
    found: FoundPoint,
    source: SearchKind,
    prec: &Precision,
) -> Result<WitnessPoint, Error> {
    let tau = GoldenExact::tau();
    let m_cur = ctx.cur().height_big();
    let m_next = ctx.next().height_big();
    let max = BigInt::from(found.max_coordinate());

    // Height bound.
    let height_rhs = |bits: u32| -> Result<RationalInterval, Error> {
        let a = pow_golden_int(&m_next, &tau, bits)?;
        let b = pow_golden_int(&m_cur, &GoldenExact::one().sub(&tau), bits)?;
        Ok(a.mul(&b).scale(&Rat::from_integer(BigInt::from(240))))
    };
    match certified_compare(
        height_rhs,
        &Rat::from_integer(max.clone()),
        prec,
        "golden height bound",
    )? {
        Comparison::Greater => {}
        Comparison::Less => {
            return Err(Error::SearchFailed(format!(
                "golden height bound failed at nu={}: max={max}",
                ctx.nu()
            )))
        }
    }

    // Value bound, as a refinable enclosure on both sides.
    let value_rhs = |bits: u32| -> Result<RationalInterval, Error> {
        let c = pow_golden_int(&BigInt::from(24), &tau, bits)?;
        let d = pow_golden_int(&m_cur, &tau.sub(&GoldenExact::from_int(2)), bits)?;
        let e = pow_golden_int(&max, &tau.neg(), bits)?;
        Ok(c.mul(&d).mul(&e))
    };
    match certified_compare_values(
        ctx.dist_closure(
            &BigInt::from(found.x1.clone()),
            &BigInt::from(found.x2.clone()),
        ),
        value_rhs,
        prec,
        "golden value bound",
    )? {
        Comparison::Less => {}
        Comparison::Greater => {
            return Err(Error::SearchFailed(format!(
                "golden value bound failed at nu={}",
                ctx.nu()
            )))
        }
    }

    let rhs_display = value_rhs(prec.start.max(96))?;
    Ok(WitnessPoint {
        x1: found.x1,
        x2: found.x2,
        value: found.value,
        source,
        nu: ctx.nu(),
        certificate: BoundCertificate {
            case: WitnessCase::II,
            rhs: rhs_display,
            holds: true,
        },
    })
}

/// Case dispatcher for a context with a nonzero determinant minor and
/// `m_{nu+2}` in range.
///
/// Branches on `zeta_{nu+1}` against `1/(8 M_{nu+2}^2)`: at or above the
/// threshold the quadratic witness is built at index `nu+1`; below it the
/// second circle-window inequality is certified directly (returning `Inapplicable`
/// when it genuinely fails, which can happen at small indices), and the
/// golden regime runs through the slab or the circle depending on
/// `zeta_nu` against `A_nu * M_{nu+1}^(-tau^2)`.
pub fn construct_witness(ctx: &NuContext, prec: &Precision) -> Result<WitnessPoint, Error> {
    let seq = ctx.seq();
    let nu = ctx.nu();
    let prev = ctx.require_prev()?;
    let next2 = ctx.next2().ok_or(Error::Inapplicable {
        nu,
        reason: "m_(nu+2) beyond the height bound".into(),
    })?;
    if !det_condition(prev, ctx.cur(), ctx.next()) {
        return Err(Error::DetConditionFailed { nu });
    }

    let m_next2 = next2.height_big();
    let case_threshold = Rat::new(BigInt::one(), &m_next2 * &m_next2 * 8);
    let first = certified_compare(
        seq.zeta_closure(nu + 1),
        &case_threshold,
        prec,
        &format!("case split at nu={nu}"),
    )?;
    if first == Comparison::Greater {
        let shifted = NuContext::new(seq, nu + 1)?;
        return quadratic_witness(&shifted, prec);
    }

    // Second circle-window inequality, certified directly rather than
    // through the growth chain (which can fail for small indices).
    let second_threshold = Rat::new(
        BigInt::one(),
        prev.height_big() * ctx.cur().height_big() * 8,
    );
    match certified_compare(
        seq.zeta_closure(nu + 1),
        &second_threshold,
        prec,
        &format!("second circle window at nu={nu}"),
    )? {
        Comparison::Less => {}
        Comparison::Greater => {
            return Err(Error::Inapplicable {
                nu,
                reason: "second circle-window inequality fails at this index".into(),
            })
        }
    }

    let golden_split = certified_compare_values(
        seq.zeta_closure(nu),
        |bits| ctx.golden_threshold(bits),
        prec,
        &format!("golden split at nu={nu}"),
    )?;
    if golden_split == Comparison::Greater {
        return golden_witness(ctx, prec);
    }

    // First circle-window inequality, also certified directly.
    match certify_window_first(ctx, prec) {
        Ok(()) => {}
        Err(Error::PreconditionNotCertified(_)) => {
            return Err(Error::Inapplicable {
                nu,
                reason: "first circle-window inequality fails at this index".into(),
            })
        }
        Err(e) => return Err(e),
    }
    golden_circle_witness(ctx, prec)
}

/// Re-derives the witness certificate from scratch at the given precision
/// schedule; used to confirm that `holds` never flips under refinement.
pub fn reverify(
    w: &WitnessPoint,
    seq: &BestApproxSequence,
    prec: &Precision,
) -> Result<bool, Error> {
    let ctx = NuContext::new(seq, w.nu)?;
    let x1 = BigInt::from(w.x1.clone());
    let x2 = BigInt::from(w.x2.clone());
    let max = BigInt::from(w.max_coordinate());
    match w.certificate.case {
        WitnessCase::I => {
            let m_next = ctx.next().height_big();
            if max < m_next || max > &m_next * 4 {
                return Ok(false);
            }
            let rhs = Rat::new(BigInt::from(16), &max * &max);
            let cmp = certified_compare(
                move |bits| linear_form_distance_best(&x1, &x2, seq.alpha1(), seq.alpha2(), bits),
                &rhs,
                prec,
                "re-verify quadratic bound",
            )?;
            Ok(cmp == Comparison::Less)
        }
        WitnessCase::II => {
            let tau = GoldenExact::tau();
            let m_cur = ctx.cur().height_big();
            let m_next = ctx.next().height_big();
            let height_ok = certified_compare(
                |bits| {
                    let a = pow_golden_int(&m_next, &tau, bits)?;
                    let b = pow_golden_int(&m_cur, &GoldenExact::one().sub(&tau), bits)?;
                    Ok(a.mul(&b).scale(&Rat::from_integer(BigInt::from(240))))
                },
                &Rat::from_integer(max.clone()),
                prec,
                "re-verify golden height bound",
            )? == Comparison::Greater;
            let value_ok = certified_compare_values(
                move |bits| linear_form_distance_best(&x1, &x2, seq.alpha1(), seq.alpha2(), bits),
                |bits| {
                    let c = pow_golden_int(&BigInt::from(24), &tau, bits)?;
                    let d = pow_golden_int(&m_cur, &tau.sub(&GoldenExact::from_int(2)), bits)?;
                    let e = pow_golden_int(&max, &tau.neg(), bits)?;
                    Ok(c.mul(&d).mul(&e))
                },
                prec,
                "re-verify golden value bound",
            )? == Comparison::Less;
            Ok(height_ok && value_ok)
        }
    }
}

/// Wire record for witness export.
#[derive(Serialize)]
pub(crate) struct WitnessRecord {
    pub nu: usize,
    pub case: WitnessCase,
    pub source: SearchKind,
    pub x: [u64; 2],
    pub value_hi: String,
    pub bound_rhs: String,
    pub holds: bool,
}

pub(crate) fn witness_record(w: &WitnessPoint, dispatch_nu: usize) -> Result<WitnessRecord, Error> {
    let cast = |v: &BigUint| -> Result<u64, Error> {
        v.to_u64()
            .ok_or_else(|| Error::InvalidParameter("witness coordinate exceeds u64".into()))
    };
    let digits = crate::best_approx::decimal_digits_for_width(&w.value.width());
    Ok(WitnessRecord {
        nu: dispatch_nu,
        case: w.certificate.case,
        source: w.source,
        x: [cast(&w.x1)?, cast(&w.x2)?],
        value_hi: w.value.decimal_hi(digits),
        bound_rhs: w.certificate.rhs.decimal_hi(digits.min(24)),
        holds: w.certificate.holds,
    })
}
