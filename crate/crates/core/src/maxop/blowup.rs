//! The unbounded case: decomposition of `sigma_n F` for the counterexample
//! martingale, and the growth of `int (sup_k |sigma_{n_k} F|)^{1/2}`.

use std::io::Write;

use num_bigint::BigInt;

use super::{restricted_maximal, IndexFamily};
use crate::field::{walsh, GridFunction};
use crate::hardy::{assemble_martingale, CounterexampleSpec, Martingale};
use crate::kernels::{dirichlet, fejer_mean, fejer_scaled, partial_sum, Direction, Ratio, TestRegion, VerificationReport};
use crate::rational::pow2;
use crate::{Error, Rational, Result};

/// `sigma_{alpha} F = III_1 + III_2 + III_3` for `2^m <= alpha <= 2^{m+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaDecomposition {
    /// `2^m sigma_{2^m} F / alpha`.
    pub iii1: GridFunction,
    /// `(alpha - 2^m) S_{2^m} F / alpha`.
    pub iii2: GridFunction,
    /// `(2^m lambda / alpha) sum_{j=2^m+1}^{alpha} (D_j - D_{2^m})`.
    pub iii3: GridFunction,
    /// `(2^m lambda / alpha) w_{2^m} q K_q` with `q = alpha - 2^m`.
    pub iii3_closed: GridFunction,
}

impl SigmaDecomposition {
    pub fn sum(&self) -> Result<GridFunction> {
        self.iii1.add(&self.iii2)?.add(&self.iii3)
    }
}

/// Splits `sigma_alpha F` at the `k`-th atom scale `m` of `spec`.
pub fn sigma_decomposition(martingale: &Martingale, spec: &CounterexampleSpec, alpha: u64, k: usize) -> Result<SigmaDecomposition> {
    let m = *spec.scales.get(k).ok_or_else(|| Error::Domain(format!("atom {k} not in the spec")))?;
    let p = 1u64 << m;
    if !(p..=2 * p).contains(&alpha) {
        return Err(Error::Precondition(format!("alpha = {alpha} outside [2^{m}, 2^{}]", m + 1)));
    }
    let f = martingale.top();
    let r = f.resolution();
    if r <= m {
        return Err(Error::Precondition(format!("top level {r} does not resolve scale {m}")));
    }
    let inv = Rational::new(1.into(), BigInt::from(alpha));
    let iii1 = fejer_mean(f, p)?.scale(&(Rational::from_integer(p.into()) * &inv));
    let iii2 = partial_sum(f, p)?.scale(&(Rational::from_integer((alpha - p).into()) * &inv));
    let weight = pow2(m as i64) * &spec.lambdas[k] * &inv;
    let d_p = dirichlet(p, r)?;
    let mut acc = GridFunction::zero(r)?;
    for j in p + 1..=alpha {
        acc = acc.add(&dirichlet(j, r)?.sub(&d_p)?)?;
    }
    let iii3 = acc.scale(&weight);
    let q = alpha - p;
    let iii3_closed = if q == 0 {
        GridFunction::zero(r)?
    } else {
        walsh(p, r)?.mul(&fejer_scaled(q, r)?.to_grid(1))?.scale(&weight)
    };
    Ok(SigmaDecomposition { iii1, iii2, iii3, iii3_closed })
}

/// One scale of the blow-up experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupRow {
    pub s: u32,
    pub family: String,
    /// `|A_s|`.
    pub block_size: usize,
    /// `int_G (sup_k |sigma_{n_k} F|)^{1/2} dmu`.
    pub t_s: f64,
    /// `|A_s|^{1/2} / 2^8`.
    pub predicted_lower: f64,
    /// Smallest `int_E (...)^{1/2} - bound` over the tested regions.
    pub min_region_margin: f64,
    pub regions_tested: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport {
    pub rows: Vec<BlowupRow>,
}

impl BlowupReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Whether `T(s)` increases strictly along the rows.
    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].t_s > w[0].t_s)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "family", "block_size", "t_s", "predicted_lower", "min_region_margin", "pass"])?;
        for r in &self.rows {
            w.write_record([
                r.s.to_string(),
                r.family.clone(),
                r.block_size.to_string(),
                format!("{:.16e}", r.t_s),
                format!("{:.16e}", r.predicted_lower),
                format!("{:.16e}", r.min_region_margin),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Summary in the shape of a verification report: the worst ratio is the
    /// smallest region margin.
    pub fn summary(&self) -> VerificationReport {
        let lo = self.rows.first().map_or(0, |r| r.s as u64);
        let hi = self.rows.last().map_or(0, |r| r.s as u64);
        let margin = self.rows.iter().map(|r| r.min_region_margin).fold(f64::INFINITY, f64::min);
        VerificationReport {
            check: "blowup".into(),
            range: (lo, hi),
            resolution: hi as u32 + 3,
            worst_ratio: Ratio::Float(margin),
            witness: None,
            constant: None,
            pass: self.pass(),
            direction: Direction::AtLeast,
        }
    }
}

/// Runs the experiment for every `s` in `scales`: the martingale carries the
/// atoms of all selected scales up to `s`, the supremum runs over all family
/// members up to scale `s`, and the grid has resolution `s + 3` so that every
/// `E_t` with `t <= s` is resolved.
pub fn blowup_experiment(family: &IndexFamily, scales: std::ops::RangeInclusive<u32>, tolerance: f64) -> Result<BlowupReport> {
    if !family.has_unbounded_block_sets() {
        return Err(Error::Precondition(format!("no blow-up predicted for family {family}: |A_s| stays bounded")));
    }
    let mut rows = Vec::new();
    for s in scales {
        if s == 0 {
            return Err(Error::Domain("scales start at 1".into()));
        }
        let spec = CounterexampleSpec::select_up_to(s as usize, s, |q| family.block_set(q))?;
        let martingale = assemble_martingale(&spec, s + 1)?;
        let r = s + 3;
        let f = martingale.top().lift(r)?;
        let members: Vec<u64> = (1..=s).flat_map(|q| family.family_members(q)).collect();
        let sup = restricted_maximal(&f, &members)?;
        let roots: Vec<f64> = sup.values().iter().map(|v| crate::rational::to_f64(v).sqrt()).collect();
        let cell = 1.0 / roots.len() as f64;
        let t_s = roots.iter().sum::<f64>() * cell;

        let mut margin = f64::INFINITY;
        let mut regions = 0;
        for (k, &m) in spec.scales.iter().enumerate() {
            let size = (Rational::from_integer(1.into()) / &spec.lambdas[k]).to_integer();
            let root_size = crate::rational::to_f64(&Rational::from_integer(size)).sqrt();
            let set = family.block_set(m)?;
            let tests = set
                .l_set
                .iter()
                .map(|&l| (TestRegion::e_l(l), 2f64.powi(-5)))
                .chain(set.t_set.iter().map(|&t| (TestRegion::e_t(t), 2f64.powi(-7))));
            for (region, c) in tests {
                let integral: f64 = region.interval.cosets(r).map(|i| roots[i as usize]).sum::<f64>() * cell;
                margin = margin.min(integral - c / root_size);
                regions += 1;
            }
        }
        let block_size = family.block_set(s)?.cardinality();
        rows.push(BlowupRow {
            s,
            family: family.name().to_string(),
            block_size,
            t_s,
            predicted_lower: (block_size as f64).sqrt() / 256.0,
            min_region_margin: margin,
            regions_tested: regions,
            pass: margin >= -tolerance,
        });
    }
    debug_assert!(rows.iter().all(|r| !r.t_s.is_nan()));
    Ok(BlowupReport { rows })
}
