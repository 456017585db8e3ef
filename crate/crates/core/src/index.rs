//! Binary-expansion arithmetic for indices `n = sum_j n_j 2^j`.
//!
//! Bit `j` of the machine integer is the digit `n_j`; no reversal happens
//! anywhere in the crate. Maximal runs of one-bits are called blocks and are
//! stored highest first, so `blocks[0].high == |n|` and the last block's
//! `low == [n]`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::{Error, Result};

/// Largest supported index (exclusive).
pub const MAX_INDEX: u64 = 1 << 40;

/// A maximal run of one-bits covering positions `low..=high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub low: u32,
    pub high: u32,
}

impl Block {
    /// `sum_{k=low}^{high} 2^k`.
    pub fn value(&self) -> u64 {
        ((1u64 << (self.high + 1)) - 1) & !((1u64 << self.low) - 1)
    }

    pub fn len(&self) -> u32 {
        self.high - self.low + 1
    }
}

/// A positive index with its binary characteristics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicIndex {
    value: u64,
    blocks: Vec<Block>,
}

impl DyadicIndex {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Digits `n_0, n_1, ..., n_{|n|}`.
    pub fn bits(&self) -> Vec<u8> {
        (0..=self.top()).map(|j| ((self.value >> j) & 1) as u8).collect()
    }

    /// Maximal one-runs, highest first.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `|n|`, the position of the highest set bit.
    pub fn top(&self) -> u32 {
        self.blocks[0].high
    }

    /// `[n]`, the position of the lowest set bit.
    pub fn bottom(&self) -> u32 {
        self.blocks[self.blocks.len() - 1].low
    }

    pub fn rho(&self) -> u32 {
        self.top() - self.bottom()
    }

    pub fn variation(&self) -> u32 {
        2 * self.blocks.len() as u32
    }

    /// Positions of the set bits, highest first.
    pub fn set_bits(&self) -> Vec<u32> {
        set_bits(self.value)
    }
}

/// Decomposes `n >= 1` into its block runs.
pub fn decompose(n: u64) -> Result<DyadicIndex> {
    if n == 0 {
        return Err(Error::Domain("characteristics undefined for zero".into()));
    }
    if n >= MAX_INDEX {
        return Err(Error::Domain(format!("index {n} exceeds the supported range 2^40")));
    }
    let mut blocks = Vec::new();
    let mut rest = n;
    while rest != 0 {
        let low = rest.trailing_zeros();
        let high = low + (rest >> low).trailing_ones() - 1;
        blocks.push(Block { low, high });
        rest &= !(((1u64 << (high + 1)) - 1) & !((1u64 << low) - 1));
    }
    blocks.reverse();
    Ok(DyadicIndex { value: n, blocks })
}

/// `rho(n) = |n| - [n]`.
pub fn rho(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("rho undefined for zero".into()));
    }
    Ok(top_bit(n) - n.trailing_zeros())
}

/// `V(n) = n_0 + sum_{k>=1} |n_k - n_{k-1}|`.
pub fn variation(n: u64) -> u32 {
    // bit j of n ^ (n >> 1) is |n_{j+1} - n_j|
    (n & 1) as u32 + (n ^ (n >> 1)).count_ones()
}

/// Sum of the set bits strictly below the `i`-th largest set bit (1-based).
pub fn tail(n: u64, i: usize) -> Result<u64> {
    let bits = set_bits(n);
    if i == 0 || i > bits.len() {
        return Err(Error::Domain(format!(
            "block position {i} out of range 1..={} for n = {n}",
            bits.len()
        )));
    }
    Ok(n & ((1u64 << bits[i - 1]) - 1))
}

/// `|n|` for `n >= 1`.
pub fn top_bit(n: u64) -> u32 {
    63 - n.leading_zeros()
}

fn set_bits(n: u64) -> Vec<u32> {
    (0..64).rev().filter(|j| (n >> j) & 1 == 1).collect()
}

/// Endpoint set `A_s` generated by a family of indices in `[2^s, 2^{s+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSet {
    pub scale: u32,
    /// `u_1 < u_2 < ...`, the union of `l_set` and `t_set`.
    pub members: Vec<u32>,
    pub l_set: BTreeSet<u32>,
    pub t_set: BTreeSet<u32>,
    pub family: Vec<u64>,
}

impl BlockSet {
    pub fn cardinality(&self) -> usize {
        self.members.len()
    }
}

/// Collects the run endpoints of every family member at scale `s`.
pub fn build_block_set(s: u32, family: &[u64]) -> Result<BlockSet> {
    if family.is_empty() {
        return Err(Error::Domain(format!("empty family at scale {s}")));
    }
    if s >= 40 {
        return Err(Error::Domain(format!("scale {s} exceeds the supported range")));
    }
    let mut l_set = BTreeSet::new();
    let mut t_set = BTreeSet::new();
    for &n in family {
        if !(1u64 << s..1u64 << (s + 1)).contains(&n) {
            return Err(Error::Domain(format!(
                "index {n} is outside the scale range [2^{s}, 2^{})",
                s + 1
            )));
        }
        for block in decompose(n)?.blocks() {
            l_set.insert(block.low);
            t_set.insert(block.high);
        }
    }
    let mut family = family.to_vec();
    family.sort_unstable();
    family.dedup();
    Ok(BlockSet {
        scale: s,
        members: l_set.union(&t_set).copied().collect(),
        l_set,
        t_set,
        family,
    })
}
