//! `L_p` and weak-`L_p` quasi-norms for `p > 0`.
//!
//! Exact rational results are returned whenever every power involved is a
//! perfect power; otherwise the value is only available in floating point.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::GridFunction;
use crate::rational::{pow_exact, pow_f64, to_f64};
use crate::{Error, Rational, Result};

/// A quasi-norm value, exact when it is rational and exactly computable.
#[derive(Debug, Clone, PartialEq)]
pub struct Quasinorm {
    pub exact: Option<Rational>,
    pub approx: f64,
}

impl Quasinorm {
    fn exact(v: Rational) -> Self {
        Self { approx: to_f64(&v), exact: Some(v) }
    }

    fn approx(v: f64) -> Self {
        Self { exact: None, approx: v }
    }
}

fn check_exponent(p: &Rational) -> Result<()> {
    if !p.is_positive() {
        return Err(Error::Domain(format!("exponent must be positive, got {p}")));
    }
    Ok(())
}

/// Distinct absolute values with their coset counts, ascending.
fn histogram(f: &GridFunction) -> BTreeMap<Rational, u64> {
    let mut counts = BTreeMap::new();
    for v in f.values() {
        *counts.entry(v.abs()).or_insert(0) += 1;
    }
    counts
}

/// `(int |f|^p)^{1/p}`.
pub fn lp_quasinorm(f: &GridFunction, p: &Rational) -> Result<Quasinorm> {
    check_exponent(p)?;
    let counts = histogram(f);
    let weight = f.coset_measure();
    let exact = counts
        .iter()
        .map(|(v, &c)| pow_exact(v, p).map(|w| w * Rational::from_integer(c.into())))
        .sum::<Option<Rational>>()
        .and_then(|s| pow_exact(&(s * &weight), &p.recip()));
    if let Some(v) = exact {
        return Ok(Quasinorm::exact(v));
    }
    let pf = to_f64(p);
    let sum: f64 = counts.iter().map(|(v, &c)| pow_f64(v, p) * c as f64).sum();
    Ok(Quasinorm::approx((sum * to_f64(&weight)).powf(pf.recip())))
}

/// `(sup_{lambda > 0} lambda^p mu(|f| > lambda))^{1/p}`.
///
/// The supremum is approached as `lambda` rises to one of the finitely many
/// values of `|f|`, so it equals `max_v v mu(|f| >= v)^{1/p}`.
pub fn weak_lp(f: &GridFunction, p: &Rational) -> Result<Quasinorm> {
    check_exponent(p)?;
    let counts = histogram(f);
    let weight = f.coset_measure();
    let inverse = p.recip();
    let mut above = f.len() as u64;
    let mut exact = Some(Rational::zero());
    let mut approx = 0f64;
    for (v, &c) in &counts {
        if !v.is_zero() {
            let mu = Rational::from_integer(above.into()) * &weight;
            approx = approx.max(to_f64(v) * pow_f64(&mu, &inverse));
            exact = match (exact, pow_exact(&mu, &inverse)) {
                (Some(best), Some(m)) => Some(best.max(v * m)),
                _ => None,
            };
        }
        above -= c;
    }
    Ok(match exact {
        Some(v) => Quasinorm::exact(v),
        None => Quasinorm::approx(approx),
    })
}
