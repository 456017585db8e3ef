//! Index families, restricted maximal operators of Fejer means, and the
//! boundedness and blow-up experiments built on them.

mod blowup;
mod statistic;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::field::{check_resolution, transform, GridFunction};
use crate::index::{build_block_set, top_bit, BlockSet, MAX_INDEX};
use crate::kernels::fejer_mean;
use crate::{Error, Rational, Result};

pub use blowup::{blowup_experiment, sigma_decomposition, BlowupReport, BlowupRow, SigmaDecomposition};
pub use statistic::{atom_statistic, boundedness_sweep, statistic_indices, BoundednessReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexFamily {
    /// `2^k`.
    Powers,
    /// `2^k + 1`.
    PowersPlusOne,
    /// `2^k + 2^{floor(k/2)}`.
    PowersPlusHalfPower,
    /// `2^s + 2^{k+1} - 1` for `0 <= k <= s - 1`.
    Alpha,
    /// `2^s + 2^{s-1} + ... + 2^k` for `0 <= k <= s - 1`.
    Beta,
    /// An explicit list.
    Custom(Vec<u64>),
}

impl IndexFamily {
    pub fn name(&self) -> &'static str {
        match self {
            IndexFamily::Powers => "powers",
            IndexFamily::PowersPlusOne => "powers_plus_one",
            IndexFamily::PowersPlusHalfPower => "powers_plus_halfpower",
            IndexFamily::Alpha => "alpha",
            IndexFamily::Beta => "beta",
            IndexFamily::Custom(_) => "custom",
        }
    }

    /// Whether `|A_s|` grows without bound along the family.
    pub fn has_unbounded_block_sets(&self) -> bool {
        matches!(self, IndexFamily::Alpha | IndexFamily::Beta)
    }

    /// Members in `[2^s, 2^{s+1})`, ascending.
    pub fn family_members(&self, s: u32) -> Vec<u64> {
        if s >= 40 {
            return Vec::new();
        }
        let mut members: Vec<u64> = match self {
            IndexFamily::Powers => vec![1 << s],
            // 2^k + 1 and 2^k + 2^{k/2} can land one scale up for tiny k
            IndexFamily::PowersPlusOne => (0..=s).map(|k| (1u64 << k) + 1).collect(),
            IndexFamily::PowersPlusHalfPower => (0..=s).map(|k| (1u64 << k) + (1u64 << (k / 2))).collect(),
            IndexFamily::Alpha => (0..s).map(|k| (1u64 << s) + (1u64 << (k + 1)) - 1).collect(),
            IndexFamily::Beta => (0..s).map(|k| (1u64 << (s + 1)) - (1u64 << k)).collect(),
            IndexFamily::Custom(list) => list.clone(),
        };
        members.retain(|&n| n != 0 && top_bit(n) == s);
        members.sort_unstable();
        members.dedup();
        members
    }

    /// `A_s` for the members at scale `s`.
    pub fn block_set(&self, s: u32) -> Result<BlockSet> {
        build_block_set(s, &self.family_members(s))
    }

    /// Members `n` with `lo <= n <= hi`, ascending.
    pub fn members_between(&self, lo: u64, hi: u64) -> Vec<u64> {
        if lo > hi || lo == 0 {
            return Vec::new();
        }
        (top_bit(lo)..=top_bit(hi.min(MAX_INDEX - 1)))
            .flat_map(|s| self.family_members(s))
            .filter(|n| (lo..=hi).contains(n))
            .collect()
    }

    /// Smallest member strictly above `bound`, searching up to scale 39.
    pub fn first_member_above(&self, bound: u64) -> Option<u64> {
        let start = if bound == 0 { 0 } else { top_bit(bound) };
        (start..40).flat_map(|s| self.family_members(s)).find(|&n| n > bound)
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "powers" => IndexFamily::Powers,
            "powers_plus_one" => IndexFamily::PowersPlusOne,
            "powers_plus_halfpower" => IndexFamily::PowersPlusHalfPower,
            "alpha" => IndexFamily::Alpha,
            "beta" => IndexFamily::Beta,
            other => {
                let list = other
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::Parse(format!("unknown family {other:?}")))?
                    .split(',')
                    .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                IndexFamily::Custom(list)
            }
        })
    }
}

/// `n 2^M d sigma_n f` for every index, from the integer numerators of `f`
/// over the common denominator `d`, or `None` on overflow.
fn scaled_means(f: &GridFunction, indices: &[u64]) -> Option<(Vec<(u64, Vec<i128>)>, BigInt)> {
    let (numer, denom) = transform::common_denominator(f.values());
    let mut spectrum = numer.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>()?;
    // spectrum[j] = 2^M d f^(j)
    if !transform::hadamard_checked(&mut spectrum) {
        return None;
    }
    let mut out = Vec::with_capacity(indices.len());
    for &n in indices {
        let mut c: Vec<i128> = Vec::with_capacity(spectrum.len());
        for (j, &a) in spectrum.iter().enumerate() {
            c.push(if (j as u64) < n { a.checked_mul((n - j as u64) as i128)? } else { 0 });
        }
        if !transform::hadamard_checked(&mut c) {
            return None;
        }
        out.push((n, c));
    }
    Some((out, denom))
}

/// `max_k |sigma_{n_k} f|` pointwise over a finite index list.
pub fn restricted_maximal(f: &GridFunction, indices: &[u64]) -> Result<GridFunction> {
    if indices.is_empty() {
        return Err(Error::Domain("restricted maximal operator needs at least one index".into()));
    }
    let m = f.resolution();
    check_resolution(m)?;
    for &n in indices {
        if n == 0 {
            return Err(Error::Domain("Fejer mean needs n >= 1".into()));
        }
        if n > 1u64 << m {
            return Err(Error::Resolution { index: n, resolution: m });
        }
    }
    if let Some((means, denom)) = scaled_means(f, indices) {
        // compare |v_a| / a against |v_b| / b by cross multiplication
        let len = f.len();
        let mut best: Vec<(i128, u64)> = vec![(0, 1); len];
        let mut overflow = false;
        for (n, values) in &means {
            for (slot, v) in best.iter_mut().zip(values) {
                let v = v.abs();
                match (v.checked_mul(slot.1 as i128), slot.0.checked_mul(*n as i128)) {
                    (Some(lhs), Some(rhs)) => {
                        if lhs > rhs {
                            *slot = (v, *n);
                        }
                    }
                    _ => overflow = true,
                }
            }
        }
        if !overflow {
            let scale = denom << m;
            let values = best
                .into_iter()
                .map(|(v, n)| Rational::new(BigInt::from(v), &scale * BigInt::from(n)))
                .collect();
            return GridFunction::new(m, values);
        }
    }
    restricted_maximal_exact(f, indices)
}

/// Rational route through [`fejer_mean`]; used when machine integers overflow.
pub fn restricted_maximal_exact(f: &GridFunction, indices: &[u64]) -> Result<GridFunction> {
    let mut best: Option<GridFunction> = None;
    for &n in indices {
        let abs = fejer_mean(f, n)?.abs();
        best = Some(match best {
            Some(b) => b.max(&abs)?,
            None => abs,
        });
    }
    best.ok_or_else(|| Error::Domain("restricted maximal operator needs at least one index".into()))
}
