//! Functions on the dyadic group at finite resolution.
//!
//! A function measurable with respect to the level-`M` intervals is stored as
//! `2^M` values. Entry `i = sum_{j<M} x_j 2^j` is the constant value on the
//! coset `I_M(x)`; in particular `e_n` is coset `2^n` and `I_M` is coset 0.

mod cover;
mod io;
mod norms;
pub mod transform;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::pow2;
use crate::{Error, Rational, Result};

pub use cover::{complement_cover, CoverPiece, PieceKind};
pub use io::{read_coeffs_csv, read_grid_csv, write_coeffs_csv, write_grid_csv};
pub use norms::{lp_quasinorm, weak_lp, Quasinorm};

/// Memory guard on the number of cosets.
pub const MAX_RESOLUTION: u32 = 20;

pub(crate) fn check_resolution(resolution: u32) -> Result<()> {
    if resolution > MAX_RESOLUTION {
        return Err(Error::ResolutionCeiling { requested: resolution, ceiling: MAX_RESOLUTION });
    }
    Ok(())
}

/// The dyadic interval `I_level(anchor)`: all `x` whose first `level`
/// coordinates agree with those of `anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Interval {
    pub level: u32,
    pub anchor: u64,
}

impl Interval {
    pub fn new(level: u32, anchor: u64) -> Result<Self> {
        if level >= 64 || anchor >> level != 0 {
            return Err(Error::Domain(format!("anchor {anchor} does not fit level {level}")));
        }
        Ok(Self { level, anchor })
    }

    /// `I_level = I_level(0)`.
    pub fn zero(level: u32) -> Self {
        Self { level, anchor: 0 }
    }

    fn mask(&self) -> u64 {
        (1u64 << self.level) - 1
    }

    pub fn contains(&self, coset: u64) -> bool {
        coset & self.mask() == self.anchor
    }

    pub fn measure(&self) -> Rational {
        pow2(-(self.level as i64))
    }

    /// Level-`resolution` cosets inside the interval, ascending.
    pub fn cosets(&self, resolution: u32) -> impl Iterator<Item = u64> + '_ {
        assert!(resolution >= self.level, "interval finer than the grid");
        (0..1u64 << (resolution - self.level)).map(move |u| self.anchor | (u << self.level))
    }
}

/// Exact function constant on the level-`M` cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFunction {
    resolution: u32,
    values: Vec<Rational>,
}

impl GridFunction {
    pub fn new(resolution: u32, values: Vec<Rational>) -> Result<Self> {
        check_resolution(resolution)?;
        if values.len() != 1usize << resolution {
            return Err(Error::Domain(format!(
                "{} values given for resolution {resolution}",
                values.len()
            )));
        }
        Ok(Self { resolution, values })
    }

    pub fn from_fn(resolution: u32, f: impl FnMut(u64) -> Rational) -> Result<Self> {
        check_resolution(resolution)?;
        Ok(Self { resolution, values: (0..1u64 << resolution).map(f).collect() })
    }

    pub fn from_integers(resolution: u32, values: &[i64]) -> Result<Self> {
        Self::new(resolution, values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn zero(resolution: u32) -> Result<Self> {
        Self::constant(resolution, Rational::zero())
    }

    pub fn constant(resolution: u32, c: Rational) -> Result<Self> {
        check_resolution(resolution)?;
        Ok(Self { resolution, values: vec![c; 1 << resolution] })
    }

    /// Indicator of `interval`, which must be resolved by the grid.
    pub fn indicator(resolution: u32, interval: Interval) -> Result<Self> {
        if interval.level > resolution {
            return Err(Error::Domain(format!(
                "interval of level {} is not resolved at resolution {resolution}",
                interval.level
            )));
        }
        Self::from_fn(resolution, |i| {
            if interval.contains(i) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn value(&self, coset: u64) -> &Rational {
        &self.values[coset as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn coset_measure(&self) -> Rational {
        pow2(-(self.resolution as i64))
    }

    pub fn integral(&self) -> Rational {
        self.values.iter().sum::<Rational>() * self.coset_measure()
    }

    /// Integral over `interval`.
    pub fn integral_over(&self, interval: Interval) -> Result<Rational> {
        let fine = self.at_least(interval.level)?;
        let sum: Rational = interval.cosets(fine.resolution).map(|i| fine.value(i).clone()).sum();
        Ok(sum * fine.coset_measure())
    }

    /// Same function on a finer grid.
    pub fn lift(&self, resolution: u32) -> Result<Self> {
        if resolution < self.resolution {
            return Err(Error::Domain(format!(
                "cannot lift resolution {} down to {resolution}",
                self.resolution
            )));
        }
        let mask = (1u64 << self.resolution) - 1;
        Self::from_fn(resolution, |i| self.values[(i & mask) as usize].clone())
    }

    /// `self` lifted to at least `resolution`.
    pub fn at_least(&self, resolution: u32) -> Result<Self> {
        self.lift(resolution.max(self.resolution))
    }

    /// Conditional expectation onto the level-`level` cosets.
    pub fn coarse_average(&self, level: u32) -> Result<Self> {
        if level > self.resolution {
            return Err(Error::Domain(format!(
                "level {level} is finer than resolution {}",
                self.resolution
            )));
        }
        let stride = 1usize << level;
        let weight = pow2(-((self.resolution - level) as i64));
        Self::from_fn(level, |j| {
            let sum: Rational = self.values[j as usize..].iter().step_by(stride).sum();
            sum * &weight
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.resolution != other.resolution {
            return Err(Error::Domain(format!(
                "resolution mismatch: {} vs {}",
                self.resolution, other.resolution
            )));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(Self { resolution: self.resolution, values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { resolution: self.resolution, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn abs(&self) -> Self {
        Self { resolution: self.resolution, values: self.values.iter().map(Rational::abs).collect() }
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    pub fn max_abs(&self) -> Rational {
        self.values.iter().map(Rational::abs).max().unwrap_or_else(Rational::zero)
    }

    /// `result(x) = f(x + t)` where `t` is the coset index of the shift.
    pub fn translate(&self, t: u64) -> Result<Self> {
        if t >> self.resolution != 0 {
            return Err(Error::Domain(format!(
                "translation {t} out of range at resolution {}",
                self.resolution
            )));
        }
        let t = t as usize;
        Ok(Self {
            resolution: self.resolution,
            values: (0..self.values.len()).map(|i| self.values[i ^ t].clone()).collect(),
        })
    }

    /// Walsh-Fourier coefficients `f^(k) = int f w_k`.
    pub fn fwht(&self) -> CoeffVector {
        let weight = self.coset_measure();
        let coeffs = transform::hadamard_exact(&self.values)
            .into_iter()
            .map(|v| v * &weight)
            .collect();
        CoeffVector { resolution: self.resolution, coeffs }
    }

    /// `(f * g)(x) = int f(x + t) g(t) dt`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.resolution != other.resolution {
            return Err(Error::Domain(format!(
                "resolution mismatch: {} vs {}",
                self.resolution, other.resolution
            )));
        }
        let a = self.fwht();
        let b = other.fwht();
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * y).collect();
        Ok(CoeffVector { resolution: self.resolution, coeffs }.inverse_fwht())
    }
}

/// Walsh-Fourier coefficients `f^(0), ..., f^(2^M - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    resolution: u32,
    coeffs: Vec<Rational>,
}

impl CoeffVector {
    pub fn new(resolution: u32, coeffs: Vec<Rational>) -> Result<Self> {
        check_resolution(resolution)?;
        if coeffs.len() != 1usize << resolution {
            return Err(Error::Domain(format!(
                "{} coefficients given for resolution {resolution}",
                coeffs.len()
            )));
        }
        Ok(Self { resolution, coeffs })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `sum_k c_k w_k`.
    pub fn inverse_fwht(&self) -> GridFunction {
        GridFunction {
            resolution: self.resolution,
            values: transform::hadamard_exact(&self.coeffs),
        }
    }

    /// `sum_k c_k^2`.
    pub fn energy(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

/// `w_n` sampled on the level-`M` cosets.
pub fn walsh(n: u64, resolution: u32) -> Result<GridFunction> {
    check_resolution(resolution)?;
    if n >> resolution != 0 {
        return Err(Error::Resolution { index: n, resolution });
    }
    GridFunction::from_integers(resolution, &walsh_signs(n, resolution))
}

/// `(-1)^{popcount(n & i)}` for every coset `i`.
pub fn walsh_signs(n: u64, resolution: u32) -> Vec<i64> {
    (0..1u64 << resolution)
        .map(|i| if (n & i).count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect()
}

/// Integer-valued function on the level-`M` cosets, for kernels and other
/// quantities known to be integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGrid {
    resolution: u32,
    values: Vec<i64>,
}

impl IntGrid {
    pub fn new(resolution: u32, values: Vec<i64>) -> Result<Self> {
        check_resolution(resolution)?;
        if values.len() != 1usize << resolution {
            return Err(Error::Domain(format!(
                "{} values given for resolution {resolution}",
                values.len()
            )));
        }
        Ok(Self { resolution, values })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, coset: u64) -> i64 {
        self.values[coset as usize]
    }

    /// Value at a coset of a possibly finer grid.
    pub fn value_at(&self, coset: u64) -> i64 {
        self.values[(coset & ((1u64 << self.resolution) - 1)) as usize]
    }

    pub fn lift(&self, resolution: u32) -> Result<Self> {
        check_resolution(resolution)?;
        if resolution < self.resolution {
            return Err(Error::Domain(format!(
                "cannot lift resolution {} down to {resolution}",
                self.resolution
            )));
        }
        let values = (0..1u64 << resolution).map(|i| self.value_at(i)).collect();
        Ok(Self { resolution, values })
    }

    /// Exact values divided by `divisor`.
    pub fn to_grid(&self, divisor: i64) -> GridFunction {
        let d = BigInt::from(divisor);
        GridFunction {
            resolution: self.resolution,
            values: self.values.iter().map(|&v| Rational::new(BigInt::from(v), d.clone())).collect(),
        }
    }

    /// Sum of all values; the integral is this times `2^{-M}`.
    pub fn sum(&self) -> i128 {
        self.values.iter().map(|&v| v as i128).sum()
    }
}
