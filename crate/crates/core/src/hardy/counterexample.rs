//! The martingale built from a family whose endpoint sets grow without bound.
//!
//! Scale `s_k` carries the atom `a_k = 2^{s_k} (D_{2^{s_k+1}} - D_{2^{s_k}})`
//! with weight `lambda_k = 1 / |A_{s_k}|`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::GridFunction;
use crate::index::{top_bit, BlockSet};
use crate::rational::{pow2, to_f64, RationalRepr};
use crate::{Error, Rational, Result};

/// Exceeds `pi^2 / 6`, which bounds `sum 1/(k+1)^2` under the scale selection.
pub const LAMBDA_SQUARE_BOUND: (i64, i64) = (1645, 1000);

/// Largest scale the selection will search.
const SCALE_SEARCH_LIMIT: u32 = 39;

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleSpec {
    /// `alpha_k`, strictly increasing.
    pub alphas: Vec<u64>,
    /// `s_k = |alpha_k|`, strictly increasing.
    pub scales: Vec<u32>,
    pub lambdas: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    alphas: Vec<u64>,
    scales: Vec<u32>,
    lambdas: Vec<RationalRepr>,
}

impl CounterexampleSpec {
    fn validated(self) -> Result<Self> {
        let n = self.alphas.len();
        if self.scales.len() != n || self.lambdas.len() != n {
            return Err(Error::Domain("alphas, scales and lambdas differ in length".into()));
        }
        for (k, (&a, &s)) in self.alphas.iter().zip(&self.scales).enumerate() {
            if a == 0 || top_bit(a) != s {
                return Err(Error::Domain(format!("scale {s} does not match alpha {a} at position {k}")));
            }
            if !self.lambdas[k].is_positive() {
                return Err(Error::Domain(format!("lambda at position {k} is not positive")));
            }
        }
        if self.scales.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("scales must increase strictly".into()));
        }
        Ok(self)
    }

    /// `lambda_k = 1 / sizes[k]`.
    pub fn from_parts(alphas: Vec<u64>, sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::Domain("block set sizes must be positive".into()));
        }
        let scales = alphas.iter().map(|&a| if a == 0 { 0 } else { top_bit(a) }).collect();
        let lambdas = sizes.iter().map(|&c| Rational::new(BigInt::one(), BigInt::from(c))).collect();
        Self { alphas, scales, lambdas }.validated()
    }

    /// Picks `s_k` as the smallest scale above `s_{k-1}` with
    /// `|A_s| >= k + 1`, and `alpha_k` as the smallest family member there.
    pub fn select(count: usize, block_set: impl FnMut(u32) -> Result<BlockSet>) -> Result<Self> {
        let spec = Self::select_up_to(count, SCALE_SEARCH_LIMIT, block_set)?;
        if spec.len() < count {
            return Err(Error::Precondition(format!(
                "no scale up to {SCALE_SEARCH_LIMIT} has |A_s| >= {}; the family has bounded endpoint sets",
                spec.len() + 1
            )));
        }
        Ok(spec)
    }

    /// As [`select`](Self::select), stopping early once the next selected
    /// scale would exceed `max_scale`.
    pub fn select_up_to(count: usize, max_scale: u32, mut block_set: impl FnMut(u32) -> Result<BlockSet>) -> Result<Self> {
        let mut alphas = Vec::with_capacity(count);
        let mut sizes = Vec::with_capacity(count);
        let mut s = 0u32;
        'outer: for k in 0..count {
            loop {
                s += 1;
                if s > max_scale {
                    break 'outer;
                }
                let set = block_set(s)?;
                if set.cardinality() > k {
                    alphas.push(set.family[0]);
                    sizes.push(set.cardinality());
                    break;
                }
            }
        }
        Self::from_parts(alphas, sizes)
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// `sum_k lambda_k^2`.
    pub fn lambda_square_sum(&self) -> Rational {
        self.lambdas.iter().map(|l| l * l).sum()
    }

    pub fn lambda_square_sum_bounded(&self) -> bool {
        self.lambda_square_sum() <= Rational::new(LAMBDA_SQUARE_BOUND.0.into(), LAMBDA_SQUARE_BOUND.1.into())
    }

    /// `sum_k lambda_k^{1/2}`, the atomic certificate for `H_{1/2}`.
    pub fn lambda_root_sum(&self) -> f64 {
        self.lambdas.iter().map(|l| to_f64(l).sqrt()).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = Wire {
            alphas: self.alphas.clone(),
            scales: self.scales.clone(),
            lambdas: self.lambdas.iter().map(RationalRepr::from_rational).collect::<Result<_>>()?,
        };
        Ok(serde_json::to_string_pretty(&wire)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text)?;
        let lambdas = wire.lambdas.iter().map(RationalRepr::to_rational).collect::<Result<_>>()?;
        Self { alphas: wire.alphas, scales: wire.scales, lambdas }.validated()
    }
}

/// `a_k`: `2^{2m}` on `I_{m+1}`, `-2^{2m}` on `I_m \ I_{m+1}`, zero elsewhere,
/// where `m = s_k`, sampled at `resolution >= m + 1`.
pub fn counterexample_atom(spec: &CounterexampleSpec, k: usize, resolution: u32) -> Result<GridFunction> {
    let m = *spec.scales.get(k).ok_or_else(|| Error::Domain(format!("atom {k} not in the spec")))?;
    if resolution < m + 1 {
        return Err(Error::Resolution { index: 1 << (m + 1), resolution });
    }
    let height = pow2(2 * m as i64);
    GridFunction::from_fn(resolution, |i| {
        if i & ((1u64 << m) - 1) != 0 {
            Rational::zero()
        } else if (i >> m) & 1 == 0 {
            height.clone()
        } else {
            -height.clone()
        }
    })
}
