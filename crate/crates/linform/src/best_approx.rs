//! Enumeration of best approximations of the linear form
//! `zeta(m) = m0 + m1*a1 + m2*a2`.
//!
//! A triple `m` with height `M = max(|m1|, |m2|)` is a best approximation
//! when `|zeta(m)|` is strictly smaller than `||zeta(n)||` for every integer
//! vector `n` of smaller height and minimal among vectors of its own height.
//! The enumerator scans height shells `max(|n1|, |n2|) = h` exhaustively.
//! A wrap-around 128-bit fixed-point filter discards candidates that are
//! certifiably worse than the current record; the few survivors are resolved
//! with certified interval comparisons, so the output never depends on the
//! filter's accuracy.
//!
//! Both `(m1, m2)` and `(-m1, -m2)` attain the same distance; vectors are
//! canonicalized so the first nonzero of `(m1, m2)` is positive. `zeta`
//! stores the magnitude `|zeta(m)|`; the sign is recoverable from `m0`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::io::Write;

use crate::error::Error;
use crate::interval::{pow2, Rat, RationalInterval};
use crate::real::{
    certified_compare_values, eval_linear_form_best, linear_form_distance_best,
    nearest_int_certified, wrap_u128, CertifiedReal, Comparison, Precision,
};

#[derive(Clone, Debug)]
pub struct BestApproximation {
    /// 1-based ordinal in the sequence.
    pub nu: usize,
    pub m0: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
    /// Height `max(|m1|, |m2|)`.
    pub height: u64,
    pub(crate) zeta: RationalInterval,
}

impl BestApproximation {
    /// Certified enclosure of `|zeta(m)| = ||m1*a1 + m2*a2||`, strictly
    /// inside `(0, 1/2]`.
    pub fn zeta(&self) -> &RationalInterval {
        &self.zeta
    }

    pub fn height_big(&self) -> BigInt {
        BigInt::from(self.height)
    }
}

#[derive(Clone, Debug)]
pub struct BestApproxSequence {
    alpha1: CertifiedReal,
    alpha2: CertifiedReal,
    height_bound: u64,
    precision: Precision,
    items: Vec<BestApproximation>,
}

impl BestApproxSequence {
    pub fn alpha1(&self) -> &CertifiedReal {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &CertifiedReal {
        &self.alpha2
    }

    pub fn height_bound(&self) -> u64 {
        self.height_bound
    }

    pub fn precision(&self) -> &Precision {
        &self.precision
    }

    pub fn items(&self) -> &[BestApproximation] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Item by 1-based ordinal.
    pub fn item(&self, nu: usize) -> Option<&BestApproximation> {
        if nu == 0 {
            return None;
        }
        self.items.get(nu - 1)
    }

    /// Fresh certified enclosure of `|zeta|` for the given item at the
    /// requested precision, independent of the stored one.
    pub fn zeta_at(&self, nu: usize, bits: u32) -> Result<RationalInterval, Error> {
        let item = self
            .item(nu)
            .ok_or_else(|| Error::InvalidParameter(format!("no item with nu={nu}")))?;
        linear_form_distance_best(&item.m1, &item.m2, &self.alpha1, &self.alpha2, bits)
    }

    /// Refinable enclosure source for `|zeta_nu|`.
    pub fn zeta_closure(
        &self,
        nu: usize,
    ) -> impl FnMut(u32) -> Result<RationalInterval, Error> + '_ {
        move |bits| self.zeta_at(nu, bits)
    }

    /// JSON-lines export, one record per item. Endpoints are decimal strings
    /// rounded outward, so each line still encloses the true value.
    pub fn export_jsonl<W: Write>(&self, out: &mut W) -> Result<(), Error> {
        for item in &self.items {
            let line = sequence_record(item)?;
            writeln!(
                out,
                "{}",
                serde_json::to_string(&line).expect("serializable")
            )?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub(crate) struct SequenceRecord {
    pub nu: usize,
    pub m: [i128; 3],
    #[serde(rename = "M")]
    pub height: u64,
    pub zeta_lo: String,
    pub zeta_hi: String,
}

pub(crate) fn sequence_record(item: &BestApproximation) -> Result<SequenceRecord, Error> {
    let cast = |v: &BigInt| -> Result<i128, Error> {
        v.to_i128()
            .ok_or_else(|| Error::InvalidParameter("coefficient exceeds i128 range".into()))
    };
    let digits = decimal_digits_for_width(&item.zeta.width());
    Ok(SequenceRecord {
        nu: item.nu,
        m: [cast(&item.m0)?, cast(&item.m1)?, cast(&item.m2)?],
        height: item.height,
        zeta_lo: item.zeta.decimal_lo(digits),
        zeta_hi: item.zeta.decimal_hi(digits),
    })
}

/// Number of fractional decimal digits that resolves the given interval
/// width, clamped to a sane range. Deterministic in the width alone.
pub(crate) fn decimal_digits_for_width(width: &Rat) -> usize {
    if width.is_zero() {
        return 40;
    }
    let num_bits = width.numer().magnitude().bits() as i64;
    let den_bits = width.denom().magnitude().bits() as i64;
    let approx_digits = (den_bits - num_bits).max(0) * 30103 / 100000;
    (approx_digits as usize + 2).clamp(8, 120)
}

struct RecordState {
    m1: i64,
    m2: i64,
    /// Saturating upper bound of `zeta * 2^128`, used only to prune.
    threshold_scaled: u128,
}

/// Enumerates every best approximation with height at most `height_bound`,
/// in increasing height order.
pub fn enumerate_best_approximations(
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    height_bound: u64,
    prec: &Precision,
) -> Result<BestApproxSequence, Error> {
    if height_bound < 1 {
        return Err(Error::InvalidParameter("height bound must be >= 1".into()));
    }
    if height_bound > (1 << 30) {
        return Err(Error::InvalidParameter(
            "height bound too large for the shell scan".into(),
        ));
    }
    let (sa1, se1) = a1.approx_scaled(128);
    let (sa2, se2) = a2.approx_scaled(128);
    let a1f = wrap_u128(&sa1);
    let a2f = wrap_u128(&sa2);
    let e_sum: u128 = (se1 + se2).to_u128().unwrap_or(u128::MAX);
    // If the per-candidate filter slack swamps the 128-bit scale, the input
    // (a coarse decimal literal) cannot support enumeration to this height.
    let max_slack = e_sum.saturating_mul(height_bound as u128).saturating_add(1);
    if max_slack >= (1u128 << 120) {
        return Err(Error::precision(
            128,
            "enumerating best approximations: input precision below the requested height",
        ));
    }

    let mut record: Option<RecordState> = None;
    let mut items: Vec<BestApproximation> = Vec::new();
    let mut finalists: Vec<(i64, i64)> = Vec::new();

    for h in 1..=height_bound as i64 {
        finalists.clear();
        let slack = (h as u128).saturating_mul(e_sum).saturating_add(1);
        let cutoff = record
            .as_ref()
            .map(|r| r.threshold_scaled.saturating_add(slack))
            .unwrap_or(u128::MAX);

        let consider = |n1: i64, n2: i64, r: u128, finalists: &mut Vec<(i64, i64)>| {
            let d = r.min(r.wrapping_neg());
            if d <= cutoff {
                finalists.push((n1, n2));
            }
        };

        // n1 = h, n2 in [-h, h]
        let mut r = wrap_mul(a1f, h).wrapping_add(wrap_mul(a2f, -h));
        for n2 in -h..=h {
            consider(h, n2, r, &mut finalists);
            r = r.wrapping_add(a2f);
        }
        // n1 in [1, h-1], n2 = +-h
        let hh = wrap_mul(a2f, h);
        let mut base = a1f;
        for n1 in 1..h {
            consider(n1, h, base.wrapping_add(hh), &mut finalists);
            consider(n1, -h, base.wrapping_sub(hh), &mut finalists);
            base = base.wrapping_add(a1f);
        }
        // n1 = 0, n2 = h
        consider(0, h, hh, &mut finalists);

        if !finalists.is_empty() {
            resolve_shell(a1, a2, h as u64, &finalists, &mut record, &mut items, prec)?;
        }
    }

    Ok(BestApproxSequence {
        alpha1: a1.clone(),
        alpha2: a2.clone(),
        height_bound,
        precision: *prec,
        items,
    })
}

fn wrap_mul(a: u128, n: i64) -> u128 {
    (n as i128 as u128).wrapping_mul(a)
}

/// Resolves a shell's surviving candidates with certified comparisons and
/// appends a new best approximation when the shell minimum beats the record.
fn resolve_shell(
    a1: &CertifiedReal,
    a2: &CertifiedReal,
    h: u64,
    finalists: &[(i64, i64)],
    record: &mut Option<RecordState>,
    items: &mut Vec<BestApproximation>,
    prec: &Precision,
) -> Result<(), Error> {
    let dist = |n1: i64, n2: i64| {
        move |bits: u32| {
            linear_form_distance_best(&BigInt::from(n1), &BigInt::from(n2), a1, a2, bits)
        }
    };

    // Strict minimum among the survivors. Ties are impossible when
    // 1, a1, a2 are independent; a tie surfaces as PrecisionExhausted.
    let mut winner = finalists[0];
    for &cand in &finalists[1..] {
        let cmp = certified_compare_values(
            dist(cand.0, cand.1),
            dist(winner.0, winner.1),
            prec,
            &format!(
                "shell {h} minima ({},{}) vs ({},{})",
                cand.0, cand.1, winner.0, winner.1
            ),
        )?;
        if cmp == Comparison::Less {
            winner = cand;
        }
    }

    if let Some(rec) = record.as_ref() {
        let cmp = certified_compare_values(
            dist(winner.0, winner.1),
            dist(rec.m1, rec.m2),
            prec,
            &format!("shell {h} winner vs record"),
        )?;
        if cmp == Comparison::Greater {
            return Ok(());
        }
    }

    // New best approximation at height h.
    let (m1, m2) = winner;
    let nu = items.len() + 1;
    let m1_big = BigInt::from(m1);
    let m2_big = BigInt::from(m2);

    // Certified nearest integer for m0 = -round(m1*a1 + m2*a2).
    let rounded = nearest_int_certified(
        |bits| eval_linear_form_best(&m1_big, &m2_big, a1, a2, bits),
        prec,
        &format!("linear form at ({m1},{m2})"),
    )?;
    let m0 = -rounded;

    // Refine zeta until it is strictly positive and certifiably below the
    // previous item's stored enclosure; keep tightening toward a relative
    // width of 2^-32 as far as the input precision allows.
    let mut zeta = None;
    for bits in prec.schedule() {
        let iv = linear_form_distance_best(&m1_big, &m2_big, a1, a2, bits)?;
        if !iv.strictly_positive() {
            continue;
        }
        if let Some(prev) = items.last_mut() {
            if iv.hi() >= prev.zeta.lo() {
                // Sharpen the predecessor too; the true values are strictly
                // ordered, so some precision separates the enclosures.
                let sharpened = linear_form_distance_best(&prev.m1, &prev.m2, a1, a2, bits)?;
                prev.zeta = sharpened;
                if iv.hi() >= prev.zeta.lo() {
                    continue;
                }
            }
        }
        let tight = iv.width() <= iv.lo() * pow2(-32);
        zeta = Some(iv);
        if tight {
            break;
        }
    }
    let zeta = zeta.ok_or_else(|| {
        Error::precision(
            prec.cap,
            format!("separating consecutive best approximations at height {h}"),
        )
    })?;

    let threshold_scaled = (zeta.hi() * pow2(128))
        .ceil()
        .to_integer()
        .to_u128()
        .unwrap_or(u128::MAX)
        .saturating_add(1);
    *record = Some(RecordState {
        m1,
        m2,
        threshold_scaled,
    });
    items.push(BestApproximation {
        nu,
        m0,
        m1: m1_big,
        m2: m2_big,
        height: h,
        zeta,
    });
    Ok(())
}

/// Certifies `zeta_nu * M_{nu+1}^2 <= 1` for every consecutive pair.
/// The product bound holds for every valid sequence; a certified `false`
/// signals an upstream bug rather than a mathematical possibility.
pub fn minkowski_check(seq: &BestApproxSequence) -> Vec<(usize, bool)> {
    let mut results = Vec::new();
    for window in seq.items().windows(2) {
        let (cur, next) = (&window[0], &window[1]);
        let m_sq = Rat::from_integer(BigInt::from(next.height)) * BigInt::from(next.height);
        let one = Rat::one();
        let ok = if cur.zeta.hi() * &m_sq <= one {
            true
        } else {
            // Stored enclosure too coarse; refine before giving a verdict.
            let mut verdict = false;
            for bits in seq.precision.schedule() {
                match seq.zeta_at(cur.nu, bits) {
                    Ok(iv) => {
                        if iv.hi() * &m_sq <= one {
                            verdict = true;
                            break;
                        }
                        if iv.lo() * &m_sq > one {
                            verdict = false;
                            break;
                        }
                    }
                    Err(_) => break,
                }
            }
            verdict
        };
        results.push((cur.nu, ok));
    }
    results
}

/// Exact nonvanishing test for the 3x3 determinant of three consecutive
/// best approximations (rows `(m0, m1, m2)`).
pub fn det_condition(
    bm1: &BestApproximation,
    bm2: &BestApproximation,
    bm3: &BestApproximation,
) -> bool {
    !det3(bm1, bm2, bm3).is_zero()
}

pub(crate) fn det3(
    r1: &BestApproximation,
    r2: &BestApproximation,
    r3: &BestApproximation,
) -> BigInt {
    let minor = |a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt| a * d - b * c;
    &r1.m0 * minor(&r2.m1, &r2.m2, &r3.m1, &r3.m2) - &r1.m1 * minor(&r2.m0, &r2.m2, &r3.m0, &r3.m2)
        + &r1.m2 * minor(&r2.m0, &r2.m1, &r3.m0, &r3.m1)
}

/// Fundamental area `D_nu = |m1_nu * m2_{nu+1} - m2_nu * m1_{nu+1}|` of the
/// projected lattice spanned by two consecutive best approximations.
pub fn d_nu(bm2: &BestApproximation, bm3: &BestApproximation) -> BigUint {
    (&bm2.m1 * &bm3.m2 - &bm2.m2 * &bm3.m1).magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Signed;

    fn sqrt2() -> CertifiedReal {
        CertifiedReal::parse("alg:-2,0,1@[1,2]").unwrap()
    }

    fn sqrt3() -> CertifiedReal {
        CertifiedReal::parse("alg:-3,0,1@[1,2]").unwrap()
    }

    fn cbrt2() -> CertifiedReal {
        CertifiedReal::parse("alg:-2,0,0,1@[1,2]").unwrap()
    }

    fn cbrt4() -> CertifiedReal {
        CertifiedReal::parse("alg:-4,0,0,1@[1,2]").unwrap()
    }

    /// Literal brute-force oracle following the record-scan definition:
    /// for each height shell, scan every canonical vector, evaluate the
    /// distance through fixed high-precision interval arithmetic, and keep
    /// the strict running minima.
    fn oracle_sequence(
        a1: &CertifiedReal,
        a2: &CertifiedReal,
        height_bound: i64,
    ) -> Vec<(i64, i64, u64)> {
        let bits = 192;
        let e1 = a1.enclosure(bits).unwrap();
        let e2 = a2.enclosure(bits).unwrap();
        let dist = |n1: i64, n2: i64| {
            let v = e1
                .scale(&Rat::from_integer(BigInt::from(n1)))
                .add(&e2.scale(&Rat::from_integer(BigInt::from(n2))));
            crate::real::dist_nearest_int(&v).unwrap()
        };
        let mut out = Vec::new();
        let mut record: Option<RationalInterval> = None;
        for h in 1..=height_bound {
            let mut shell: Vec<(i64, i64)> = Vec::new();
            for n2 in -h..=h {
                shell.push((h, n2));
            }
            for n1 in 1..h {
                shell.push((n1, h));
                shell.push((n1, -h));
            }
            shell.push((0, h));
            let mut best: Option<(i64, i64, RationalInterval)> = None;
            for (n1, n2) in shell {
                let d = dist(n1, n2);
                match &best {
                    None => best = Some((n1, n2, d)),
                    Some((_, _, b)) => {
                        if d.strictly_left_of(b) {
                            best = Some((n1, n2, d));
                        } else {
                            assert!(
                                b.strictly_left_of(&d),
                                "oracle precision insufficient at shell {h}"
                            );
                        }
                    }
                }
            }
            let (n1, n2, d) = best.unwrap();
            let beats = match &record {
                None => true,
                Some(r) => d.strictly_left_of(r),
            };
            if beats {
                out.push((n1, n2, h as u64));
                record = Some(d);
            }
        }
        out
    }

    #[test]
    fn first_item_for_sqrt_pair_is_one_one() {
        let seq =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 1, &Precision::default()).unwrap();
        assert_eq!(seq.len(), 1);
        let item = &seq.items()[0];
        assert_eq!(item.height, 1);
        assert_eq!(item.m1, BigInt::one());
        assert_eq!(item.m2, BigInt::one());
        assert_eq!(item.m0, BigInt::from(-3));
        // ||sqrt2 + sqrt3 - 3|| = 0.14626...
        let mid = item.zeta().midpoint();
        let lo = Rat::new(BigInt::from(14), BigInt::from(100));
        let hi = Rat::new(BigInt::from(15), BigInt::from(100));
        assert!(
            mid > lo && mid < hi,
            "zeta midpoint {mid} outside [0.14, 0.15]"
        );
    }

    #[test]
    fn matches_brute_force_oracle_small_heights() {
        for (a1, a2) in [(sqrt2(), sqrt3()), (cbrt2(), cbrt4())] {
            let expected = oracle_sequence(&a1, &a2, 40);
            let seq = enumerate_best_approximations(&a1, &a2, 40, &Precision::default()).unwrap();
            let got: Vec<(i64, i64, u64)> = seq
                .items()
                .iter()
                .map(|it| {
                    (
                        it.m1.to_i128().unwrap() as i64,
                        it.m2.to_i128().unwrap() as i64,
                        it.height,
                    )
                })
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn monotone_heights_and_certified_zeta_decrease() {
        let seq =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 300, &Precision::default()).unwrap();
        assert!(seq.len() >= 4);
        for w in seq.items().windows(2) {
            assert!(w[0].height < w[1].height);
            assert!(
                w[1].zeta().hi() < w[0].zeta().lo(),
                "stored enclosures must certify strict decrease"
            );
        }
        for item in seq.items() {
            assert!(item.zeta().strictly_positive());
            assert!(item.zeta().hi() <= &Rat::new(BigInt::one(), BigInt::from(2)));
            assert_eq!(
                item.height,
                item.m1
                    .magnitude()
                    .max(item.m2.magnitude())
                    .to_u64()
                    .unwrap()
            );
            // canonical orientation: first nonzero coordinate positive
            if item.m1.is_zero() {
                assert!(item.m2.is_positive());
            } else {
                assert!(item.m1.is_positive());
            }
        }
    }

    #[test]
    fn rational_input_exhausts_precision() {
        let a1 = CertifiedReal::parse("rat:1/3").unwrap();
        let prec = Precision {
            start: 64,
            cap: 4096,
        };
        let r = enumerate_best_approximations(&a1, &sqrt3(), 10, &prec);
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn decimal_inputs_enumerate_within_their_precision() {
        // Tight enough for small heights...
        let a1 = CertifiedReal::parse("dec:1.41421356237e-11").unwrap();
        let a2 = CertifiedReal::parse("dec:1.73205080757e-11").unwrap();
        let seq = enumerate_best_approximations(&a1, &a2, 5, &Precision::default()).unwrap();
        let exact =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 5, &Precision::default()).unwrap();
        let project = |s: &BestApproxSequence| -> Vec<(BigInt, BigInt)> {
            s.items()
                .iter()
                .map(|i| (i.m1.clone(), i.m2.clone()))
                .collect()
        };
        assert_eq!(project(&seq), project(&exact));
        // ...but a coarse literal cannot support a large height at all.
        let coarse = CertifiedReal::parse("dec:1.41e-3").unwrap();
        let r = enumerate_best_approximations(&coarse, &a2, 2000, &Precision::default());
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn swapping_inputs_permutes_coordinates() {
        let fwd =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 60, &Precision::default()).unwrap();
        let rev =
            enumerate_best_approximations(&sqrt3(), &sqrt2(), 60, &Precision::default()).unwrap();
        assert_eq!(fwd.len(), rev.len());
        for (f, r) in fwd.items().iter().zip(rev.items()) {
            // swap then renormalize the sign
            let (mut sm0, mut sm1, mut sm2) = (f.m0.clone(), f.m2.clone(), f.m1.clone());
            let flip = if sm1.is_zero() {
                sm2.is_negative()
            } else {
                sm1.is_negative()
            };
            if flip {
                sm0 = -sm0;
                sm1 = -sm1;
                sm2 = -sm2;
            }
            assert_eq!((sm0, sm1, sm2), (r.m0.clone(), r.m1.clone(), r.m2.clone()));
            assert_eq!(f.height, r.height);
        }
    }

    #[test]
    fn minkowski_bound_certified_on_real_sequence() {
        let seq =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 200, &Precision::default()).unwrap();
        let results = minkowski_check(&seq);
        assert_eq!(results.len(), seq.len() - 1);
        assert!(results.iter().all(|(_, ok)| *ok));
        // single item: nothing to check
        let single =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 1, &Precision::default()).unwrap();
        assert!(minkowski_check(&single).is_empty());
    }

    #[test]
    fn determinant_and_area_helpers() {
        let mk = |m0: i64, m1: i64, m2: i64| BestApproximation {
            nu: 1,
            m0: BigInt::from(m0),
            m1: BigInt::from(m1),
            m2: BigInt::from(m2),
            height: m1.unsigned_abs().max(m2.unsigned_abs()),
            zeta: RationalInterval::point(Rat::new(BigInt::one(), BigInt::from(8))),
        };
        assert!(det_condition(&mk(1, 0, 0), &mk(0, 1, 0), &mk(0, 0, 1)));
        assert!(!det_condition(&mk(1, 2, 3), &mk(2, 4, 6), &mk(0, 0, 1)));
        assert_eq!(d_nu(&mk(0, 1, 0), &mk(0, 0, 1)), BigUint::one());
        assert_eq!(d_nu(&mk(0, 1, 1), &mk(0, 2, 2)), BigUint::zero());
        assert_eq!(d_nu(&mk(0, 2, 3), &mk(0, 5, 7)), BigUint::one());
    }

    #[test]
    fn jsonl_export_shape() {
        let seq =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 20, &Precision::default()).unwrap();
        let mut buf = Vec::new();
        seq.export_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), seq.len());
        for (line, item) in lines.iter().zip(seq.items()) {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["nu"].as_u64().unwrap() as usize, item.nu);
            assert_eq!(v["M"].as_u64().unwrap(), item.height);
            let lo: f64 = v["zeta_lo"].as_str().unwrap().parse().unwrap();
            let hi: f64 = v["zeta_hi"].as_str().unwrap().parse().unwrap();
            assert!(lo <= hi);
            assert!(hi > 0.0 && lo < 0.5);
        }
    }

    #[test]
    fn zeta_closures_refine() {
        let seq =
            enumerate_best_approximations(&sqrt2(), &sqrt3(), 50, &Precision::default()).unwrap();
        let coarse = seq.zeta_at(1, 32).unwrap();
        let fine = seq.zeta_at(1, 256).unwrap();
        assert!(fine.width() < coarse.width() || coarse.is_point());
        assert!(coarse.intersect(&fine).is_some());
    }

    #[test]
    fn wrap_filter_arithmetic() {
        let x = wrap_u128(&BigInt::from(-5));
        assert_eq!(x, 5u128.wrapping_neg());
        assert_eq!(
            BigInt::from(7).mod_floor(&(BigInt::one() << 128)),
            BigInt::from(7)
        );
        assert_eq!(wrap_mul(3, -2), 6u128.wrapping_neg());
    }
}
