//! Dirichlet and Fejer kernels, partial sums and Fejer means.
//!
//! Kernels are integer valued after scaling: `D_n` itself and `n K_n`, whose
//! Walsh coefficients are `1` and `n - j` for `j < n`. Both only involve
//! `w_j` with `j < 2^{|n|+1}`, so they are computed at resolution
//! `min(M, |n| + 1)` and lifted.

mod checks;
mod region;
mod report;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{check_resolution, transform, walsh_signs, GridFunction, IntGrid};
use crate::index::top_bit;
use crate::{Error, Rational, Result};

pub use checks::{
    check_lower_bounds, check_upper_bound_prop2, lemma2_closed_form, lemma4_piece_ratios,
    lemma4_ratio, sweep, verify_9a, verify_lemma2, LowerBoundReports,
};
pub use region::{RegionKind, TestRegion};
pub use report::{Direction, Ratio, VerificationReport, Witness};

fn check_index(n: u64, resolution: u32) -> Result<()> {
    check_resolution(resolution)?;
    if n > 1u64 << resolution {
        return Err(Error::Resolution { index: n, resolution });
    }
    Ok(())
}

/// Resolution at which `D_n` and `K_n` are already measurable.
pub fn natural_resolution(n: u64, resolution: u32) -> u32 {
    if n == 0 {
        0
    } else {
        resolution.min(top_bit(n) + 1)
    }
}

/// `sum_k c_k w_k` for integer multipliers `c_k = coeff(k)`, `k < n`.
fn synthesize(n: u64, resolution: u32, coeff: impl Fn(u64) -> i64) -> Result<IntGrid> {
    check_index(n, resolution)?;
    let r = natural_resolution(n, resolution);
    let mut values: Vec<i64> = (0..1u64 << r).map(|k| if k < n { coeff(k) } else { 0 }).collect();
    transform::hadamard(&mut values);
    IntGrid::new(r, values)?.lift(resolution)
}

/// `D_n` at resolution `M`, `n <= 2^M`.
pub fn dirichlet_values(n: u64, resolution: u32) -> Result<IntGrid> {
    synthesize(n, resolution, |_| 1)
}

/// `n K_n = sum_{j<n} (n - j) w_j` at resolution `M`, `n <= 2^M`.
pub fn fejer_scaled(n: u64, resolution: u32) -> Result<IntGrid> {
    if n == 0 {
        return Err(Error::Domain("Fejer kernel needs n >= 1".into()));
    }
    synthesize(n, resolution, |j| (n - j) as i64)
}

/// `n K_n` from its definition `D_1 + ... + D_n`, accumulated term by term.
pub fn fejer_scaled_by_summation(n: u64, resolution: u32) -> Result<IntGrid> {
    if n == 0 {
        return Err(Error::Domain("Fejer kernel needs n >= 1".into()));
    }
    check_index(n, resolution)?;
    let len = 1usize << resolution;
    let mut d = vec![0i64; len];
    let mut total = vec![0i64; len];
    for k in 0..n {
        for (acc, w) in d.iter_mut().zip(walsh_signs(k, resolution)) {
            *acc += w;
        }
        for (t, v) in total.iter_mut().zip(&d) {
            *t += v;
        }
    }
    IntGrid::new(resolution, total)
}

pub fn dirichlet(n: u64, resolution: u32) -> Result<GridFunction> {
    Ok(dirichlet_values(n, resolution)?.to_grid(1))
}

pub fn fejer(n: u64, resolution: u32) -> Result<GridFunction> {
    Ok(fejer_scaled(n, resolution)?.to_grid(n as i64))
}

/// `S_n f = sum_{k<n} f^(k) w_k`.
pub fn partial_sum(f: &GridFunction, n: u64) -> Result<GridFunction> {
    check_index(n, f.resolution())?;
    let mut coeffs = f.fwht().into_coeffs();
    for c in coeffs.iter_mut().skip(n as usize) {
        *c = Rational::zero();
    }
    Ok(crate::field::CoeffVector::new(f.resolution(), coeffs)?.inverse_fwht())
}

/// `sigma_n f = sum_{j<n} ((n - j) / n) f^(j) w_j`.
pub fn fejer_mean(f: &GridFunction, n: u64) -> Result<GridFunction> {
    if n == 0 {
        return Err(Error::Domain("Fejer mean needs n >= 1".into()));
    }
    check_index(n, f.resolution())?;
    let nn = BigInt::from(n);
    let coeffs = f
        .fwht()
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let j = j as u64;
            if j < n {
                c * Rational::new(BigInt::from(n - j), nn.clone())
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok(crate::field::CoeffVector::new(f.resolution(), coeffs)?.inverse_fwht())
}

/// `sigma_n f = f * K_n`.
pub fn fejer_mean_by_convolution(f: &GridFunction, n: u64) -> Result<GridFunction> {
    f.convolve(&fejer(n, f.resolution())?)
}
