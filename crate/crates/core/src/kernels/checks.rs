//! Exhaustive exact checks of kernel identities and pointwise bounds.
//!
//! `n K_n`, `D_{2^k}` and `2^k K_{2^k}` are measurable at level `|n| + 1`, so
//! every check evaluates them there; a region of higher level is scanned at
//! its own level through [`IntGrid::value_at`]. Refining the grid further
//! repeats values without changing any minimum or maximum.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::region::TestRegion;
use super::report::{Direction, Ratio, VerificationReport, Witness};
use super::{dirichlet_values, fejer, fejer_scaled};
use crate::field::{complement_cover, CoverPiece, GridFunction, IntGrid, Interval};
use crate::index::{decompose, tail, top_bit};
use crate::rational::{pow2, ratio};
use crate::{Error, Rational, Result};

fn report(check: &str, n: u64, resolution: u32, worst: Ratio, witness: Witness, pass: bool, direction: Direction) -> VerificationReport {
    VerificationReport {
        check: check.into(),
        range: (n, n),
        resolution,
        worst_ratio: worst,
        witness: Some(witness),
        constant: None,
        pass,
        direction,
    }
}

/// Runs `check` over `ns` and merges the reports.
pub fn sweep<I, F>(ns: I, mut check: F) -> Result<VerificationReport>
where
    I: IntoIterator<Item = u64>,
    F: FnMut(u64) -> Result<VerificationReport>,
{
    let mut merged: Option<VerificationReport> = None;
    for n in ns {
        let r = check(n)?;
        merged = Some(match merged {
            Some(m) => m.merge(r),
            None => r,
        });
    }
    merged.ok_or_else(|| Error::Domain("empty sweep".into()))
}

/// Checks `n K_n = sum_A w_{n_1 + ... + n_{A-1}} (2^{n_A} K_{2^{n_A}} + n^{(A)} D_{2^{n_A}})`
/// at resolution `|n| + 2`, where `n_1 > n_2 > ...` are the set bits of `n`.
///
/// The worst ratio is the largest deviation `|lhs - rhs| / n`.
pub fn verify_9a(n: u64) -> Result<VerificationReport> {
    let m = top_bit(decompose(n)?.value()) + 2;
    let lhs = fejer_scaled(n, m)?;
    let mut rhs = vec![0i64; 1 << m];
    let mut prefix = 0u64;
    for (a, bit) in decompose(n)?.set_bits().into_iter().enumerate() {
        let p = 1u64 << bit;
        let k = fejer_scaled(p, m)?;
        let d = dirichlet_values(p, m)?;
        let t = tail(n, a + 1)? as i64;
        for (i, r) in rhs.iter_mut().enumerate() {
            let sign = if (prefix & i as u64).count_ones().is_multiple_of(2) { 1 } else { -1 };
            *r += sign * (k.value(i as u64) + t * d.value(i as u64));
        }
        prefix |= p;
    }
    let (coset, dev) = lhs
        .values()
        .iter()
        .zip(&rhs)
        .map(|(l, r)| (l - r).abs())
        .enumerate()
        .fold((0, 0), |best, (i, d)| if d > best.1 { (i, d) } else { best });
    Ok(report(
        "9a",
        n,
        m,
        Ratio::Exact(ratio(dev, n as i64)),
        Witness { n, coset: coset as u64 },
        dev == 0,
        Direction::AtMost,
    ))
}

/// `K_{2^n}` from its three-case closed form: `2^{t-1}` on
/// `I_n(e_t)` for `t < n`, `(2^n + 1) / 2` on `I_n`, zero elsewhere.
pub fn lemma2_closed_form(n: u32, resolution: u32) -> Result<GridFunction> {
    if n > resolution {
        return Err(Error::Resolution { index: 1 << n, resolution });
    }
    let interval = Interval::zero(n);
    GridFunction::from_fn(resolution, |i| {
        let low = i & ((1u64 << n) - 1);
        if low == 0 {
            ratio((1 << n) + 1, 2)
        } else if low.is_power_of_two() {
            pow2(low.trailing_zeros() as i64 - 1)
        } else {
            debug_assert!(!interval.contains(i));
            Rational::zero()
        }
    })
}

/// Compares `K_{2^n}` with [`lemma2_closed_form`] at resolution `M > n`.
/// The range of the report is the exponent `n`; the worst ratio is the
/// largest pointwise deviation.
pub fn verify_lemma2(n: u32, resolution: u32) -> Result<VerificationReport> {
    if n >= resolution {
        return Err(Error::Precondition(format!("need n < M, got n = {n}, M = {resolution}")));
    }
    let kernel = fejer(1 << n, resolution)?;
    let closed = lemma2_closed_form(n, resolution)?;
    let (coset, dev) = kernel
        .values()
        .iter()
        .zip(closed.values())
        .map(|(a, b)| (a - b).abs())
        .enumerate()
        .fold((0, Rational::zero()), |best, (i, d)| if d > best.1 { (i, d) } else { best });
    let pass = dev.is_zero();
    let mut r = report("lemma2", n as u64, resolution, Ratio::Exact(dev), Witness { n: 1 << n, coset: coset as u64 }, pass, Direction::AtMost);
    r.range = (n as u64, n as u64);
    Ok(r)
}

/// Smallest `|v|` on `interval` and a coset attaining it, scanning at
/// `max(level, grid resolution)`.
fn region_min_abs(grid: &IntGrid, interval: Interval) -> (i64, u64, u32) {
    let r = interval.level.max(grid.resolution());
    interval
        .cosets(r)
        .map(|i| (grid.value_at(i).abs(), i))
        .min_by_key(|&(v, _)| v)
        .map(|(v, i)| (v, i, r))
        .expect("intervals are nonempty")
}

/// Lower-bound reports for one index.
#[derive(Debug, Clone)]
pub struct LowerBoundReports {
    /// `n |K_n| >= 2^{2t-2}` on `E_t`.
    pub prop1: VerificationReport,
    /// `n |K_n| >= 2^{2l-4}` on `E_l`.
    pub lemma5a: VerificationReport,
    /// `n |K_n| >= 2^{2t-5}` on `E_t`.
    pub cor1_t: VerificationReport,
    /// `n |K_n| >= 2^{2l-5}` on `E_l`.
    pub cor1_l: VerificationReport,
    /// Whether the sharper `n |K_n| >= 2^{2t-1}` held on every `E_t`.
    pub sharper_t: bool,
}

impl LowerBoundReports {
    pub fn merge(self, other: LowerBoundReports) -> LowerBoundReports {
        LowerBoundReports {
            prop1: self.prop1.merge(other.prop1),
            lemma5a: self.lemma5a.merge(other.lemma5a),
            cor1_t: self.cor1_t.merge(other.cor1_t),
            cor1_l: self.cor1_l.merge(other.cor1_l),
            sharper_t: self.sharper_t && other.sharper_t,
        }
    }

    pub fn all(&self) -> [&VerificationReport; 4] {
        [&self.prop1, &self.lemma5a, &self.cor1_t, &self.cor1_l]
    }
}

/// Checks the block-wise lower bounds for `n |K_n|` on `E_t` and `E_l`.
/// The worst ratio of each report is the smallest `min_E n |K_n| / bound`
/// over the blocks of `n`.
pub fn check_lower_bounds(n: u64) -> Result<LowerBoundReports> {
    let index = decompose(n)?;
    let kernel = fejer_scaled(n, index.top() + 1)?;
    let mut acc: [Option<(Rational, Witness, u32)>; 4] = Default::default();
    let mut sharper_t = true;
    for block in index.blocks() {
        let (t, l) = (block.high as i64, block.low as i64);
        let (vt, ct, rt) = region_min_abs(&kernel, TestRegion::e_t(block.high).interval);
        let (vl, cl, rl) = region_min_abs(&kernel, TestRegion::e_l(block.low).interval);
        sharper_t &= Rational::from_integer(vt.into()) >= pow2(2 * t - 1);
        let candidates = [(vt, ct, rt, 2 * t - 2), (vl, cl, rl, 2 * l - 4), (vt, ct, rt, 2 * t - 5), (vl, cl, rl, 2 * l - 5)];
        for (slot, (v, coset, r, e)) in acc.iter_mut().zip(candidates) {
            let q = Rational::from_integer(BigInt::from(v)) * pow2(-e);
            if slot.as_ref().is_none_or(|(best, _, _)| q < *best) {
                *slot = Some((q, Witness { n, coset }, r));
            }
        }
    }
    let ids = ["prop1", "lemma5a", "cor1_t", "cor1_l"];
    let mut reports = acc.into_iter().zip(ids).map(|(slot, id)| {
        let (q, w, r) = slot.expect("every index has a block");
        let pass = q >= Rational::from_integer(1.into());
        report(id, n, r, Ratio::Exact(q), w, pass, Direction::AtLeast)
    });
    Ok(LowerBoundReports {
        prop1: reports.next().unwrap(),
        lemma5a: reports.next().unwrap(),
        cor1_t: reports.next().unwrap(),
        cor1_l: reports.next().unwrap(),
        sharper_t,
    })
}

/// Right side of the upper bound without its constant:
/// `sum_A (2^{l_A} K_{2^{l_A}} + 2^{t_A} K_{2^{t_A}} + 2^{l_A} sum_{k=l_A}^{t_A} D_{2^k})`.
pub(crate) fn prop2_majorant(n: u64, resolution: u32) -> Result<Vec<i64>> {
    let mut rhs = vec![0i64; 1 << resolution];
    for block in decompose(n)?.blocks() {
        let (l, t) = (block.low, block.high);
        let kl = fejer_scaled(1 << l, resolution)?;
        let kt = fejer_scaled(1 << t, resolution)?;
        for (i, r) in rhs.iter_mut().enumerate() {
            let i = i as u64;
            // D_{2^k}(x) = 2^k exactly when x_0 = ... = x_{k-1} = 0
            let low_zero = i.trailing_zeros().min(64);
            let dsum: i64 = (l..=t).filter(|&k| low_zero >= k).map(|k| 1i64 << k).sum();
            *r += kl.value(i) + kt.value(i) + (1i64 << l) * dsum;
        }
    }
    Ok(rhs)
}

/// Checks `|n K_n| <= c * majorant` pointwise at resolution `|n| + 1`.
/// The worst ratio is the smallest admissible constant for this `n`.
pub fn check_upper_bound_prop2(n: u64, c: &Rational) -> Result<VerificationReport> {
    let m = top_bit(decompose(n)?.value()) + 1;
    let lhs = fejer_scaled(n, m)?;
    let rhs = prop2_majorant(n, m)?;
    let mut worst: Option<(Ratio, u64)> = None;
    for (i, (&a, &b)) in lhs.values().iter().zip(&rhs).enumerate() {
        debug_assert!(b >= 0);
        let q = match (a, b) {
            (0, _) => Ratio::Exact(Rational::zero()),
            (_, 0) => Ratio::Unbounded,
            _ => Ratio::Exact(ratio(a.abs(), b)),
        };
        if worst.as_ref().is_none_or(|(w, _)| q.compare(w).is_gt()) {
            worst = Some((q, i as u64));
        }
    }
    let (worst, coset) = worst.expect("grid is nonempty");
    let pass = worst.compare(&Ratio::Exact(c.clone())).is_le();
    let mut r = report("prop2", n, m, worst, Witness { n, coset }, pass, Direction::AtMost);
    r.constant = Some(Ratio::Exact(c.clone()));
    Ok(r)
}

/// `int_{I_M} |K_n(x + t)| dmu(t) / (n 2^{k+l-M})` at every level-`M` coset
/// `x` of every cover piece of the complement of `I_M`.
pub fn lemma4_piece_ratios(n: u64, resolution: u32) -> Result<Vec<(CoverPiece, Vec<(u64, Rational)>)>> {
    if n < 1 << resolution {
        return Err(Error::Precondition(format!("need n >= 2^M, got n = {n}, M = {resolution}")));
    }
    let r = resolution.max(top_bit(n) + 1);
    let kernel = fejer_scaled(n, r)?;
    // sums[a] = sum of |n K_n| over the fine cosets above the coarse coset a
    let mask = (1u64 << resolution) - 1;
    let mut sums = vec![0i64; 1 << resolution];
    for (j, v) in kernel.values().iter().enumerate() {
        sums[(j as u64 & mask) as usize] += v.abs();
    }
    let nn = BigInt::from(n);
    Ok(complement_cover(resolution)
        .into_iter()
        .map(|piece| {
            let (k, l) = piece.exponents(resolution);
            // integral = sums / (n 2^r); divide by n 2^{k+l-M}
            let scale = pow2(resolution as i64 - (r + k + l) as i64) / Rational::from_integer(&nn * &nn);
            let values = piece
                .interval
                .cosets(resolution)
                .map(|x| (x, Rational::from_integer(sums[x as usize].into()) * &scale))
                .collect();
            (piece, values)
        })
        .collect())
}

/// Largest ratio of [`lemma4_piece_ratios`], checked against `c`.
pub fn lemma4_ratio(n: u64, resolution: u32, c: &Rational) -> Result<VerificationReport> {
    let mut worst = (Rational::zero(), 0u64);
    for (_, values) in lemma4_piece_ratios(n, resolution)? {
        for (x, q) in values {
            if q > worst.0 {
                worst = (q, x);
            }
        }
    }
    let pass = worst.0 <= *c;
    let mut r = report("lemma4", n, resolution, Ratio::Exact(worst.0), Witness { n, coset: worst.1 }, pass, Direction::AtMost);
    r.constant = Some(Ratio::Exact(c.clone()));
    Ok(r)
}
