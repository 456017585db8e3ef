//! The atom statistic `int_{complement of I_M} (sup_k |sigma_{n_k} a|)^{1/2}`.
//!
//! For an atom `a` on `I_M` every coefficient below `2^M` vanishes, so
//! `sigma_n a = 0` for `n < 2^M`. If `a` is measurable at level `R` and
//! `n >= 2^R`, then `sigma_n a = a - (1/n) sum_j j a^(j) w_j`, and off the
//! support this is `(2^R / n) sigma_{2^R} a`. Hence indices in `[2^M, 2^R]`
//! together with the smallest index above `2^R` determine the supremum.

use num_bigint::BigInt;

use super::{restricted_maximal, IndexFamily};
use crate::field::{GridFunction, Interval};
use crate::hardy::{random_atom, Atom};
use crate::kernels::fejer_mean;
use crate::rational::{ratio, to_f64};
use crate::{Error, Rational, Result};

/// The indices of `family` that matter for an atom on `I_M` resolved at `R`.
pub fn statistic_indices(family: &IndexFamily, level: u32, resolution: u32) -> Vec<u64> {
    let hi = 1u64 << resolution;
    let mut indices = family.members_between(1 << level, hi);
    indices.extend(family.first_member_above(hi));
    indices
}

/// `int_{complement of I_M} (max_k |sigma_{n_k} a|)^{1/2} dmu` for an atom
/// on `I_M`, `M = a.level`.
pub fn atom_statistic(atom: &Atom, indices: &[u64]) -> Result<f64> {
    let m = atom.level;
    let r = atom.f.resolution();
    if m > r {
        return Err(Error::Domain(format!("atom level {m} exceeds resolution {r}")));
    }
    let support = Interval::zero(m);
    let top = 1u64 << r;
    let mid: Vec<u64> = indices.iter().copied().filter(|&n| n >= 1 << m && n <= top).collect();
    let beyond = indices.iter().copied().filter(|&n| n > top).min();
    let mut sup: Option<GridFunction> = if mid.is_empty() { None } else { Some(restricted_maximal(&atom.f, &mid)?) };
    if let Some(n) = beyond {
        let tail = fejer_mean(&atom.f, top)?.abs().scale(&Rational::new(BigInt::from(top), BigInt::from(n)));
        sup = Some(match sup {
            Some(s) => s.max(&tail)?,
            None => tail,
        });
    }
    let Some(sup) = sup else { return Ok(0.0) };
    let total: f64 = sup
        .values()
        .iter()
        .enumerate()
        .filter(|&(i, _)| !support.contains(i as u64))
        .map(|(_, v)| to_f64(v).sqrt())
        .sum();
    Ok(total / sup.len() as f64)
}

/// Largest atom statistic over seeds and atom levels, with the endpoint-set
/// sizes that certify the hypothesis of the bounded case.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport {
    pub family: String,
    /// `(M, max over seeds)`.
    pub per_level: Vec<(u32, f64)>,
    /// `(s, |A_s|)` for `1 <= s <= 16`.
    pub block_sizes: Vec<(u32, usize)>,
    pub max_statistic: f64,
    pub constant: f64,
    pub pass: bool,
}

/// Sweeps seeded random `1/2`-atoms over `levels` and compares the largest
/// statistic with `constant` (relative tolerance `tolerance`).
pub fn boundedness_sweep(
    family: &IndexFamily,
    levels: std::ops::RangeInclusive<u32>,
    seeds: std::ops::Range<u64>,
    constant: f64,
    tolerance: f64,
) -> Result<BoundednessReport> {
    if family.has_unbounded_block_sets() {
        return Err(Error::Precondition(format!("family {family} has unbounded |A_s|; no boundedness predicted")));
    }
    let half = ratio(1, 2);
    let mut per_level = Vec::new();
    for m in levels {
        let mut best = 0f64;
        let mut indices: Option<Vec<u64>> = None;
        for seed in seeds.clone() {
            let atom = random_atom(seed, m, &half)?;
            let idx = indices.get_or_insert_with(|| statistic_indices(family, m, atom.f.resolution()));
            best = best.max(atom_statistic(&atom, idx)?);
        }
        per_level.push((m, best));
    }
    let block_sizes = (1..=16)
        .map(|s| family.block_set(s).map(|b| (s, b.cardinality())))
        .collect::<Result<Vec<_>>>()?;
    let max_statistic = per_level.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    Ok(BoundednessReport {
        family: family.name().to_string(),
        per_level,
        block_sizes,
        max_statistic,
        constant,
        pass: max_statistic <= constant * (1.0 + tolerance),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::RANDOM_ATOM_DEPTH;
    use crate::rational::{int, pow2};

    fn half() -> Rational {
        ratio(1, 2)
    }

    #[test]
    fn small_indices_contribute_nothing() {
        let atom = random_atom(3, 4, &half()).unwrap();
        assert_eq!(atom_statistic(&atom, &[1, 2, 5, 15]).unwrap(), 0.0);
        for n in 1..16 {
            assert!(fejer_mean(&atom.f, n).unwrap().values().iter().all(|v| *v == int(0)));
        }
        let zero = Atom { p: half(), level: 3, f: GridFunction::zero(6).unwrap() };
        assert_eq!(atom_statistic(&zero, &[8, 16, 64, 100]).unwrap(), 0.0);
    }

    #[test]
    fn tail_indices_follow_the_scaling_law() {
        // an atom resolved at R = 4 embedded at resolution 8 lets sigma_n be
        // evaluated directly for n up to 2^8
        let atom = random_atom(11, 2, &half()).unwrap();
        let r = 2 + RANDOM_ATOM_DEPTH;
        let fine = atom.f.lift(8).unwrap();
        let top = 1u64 << r;
        let base = fejer_mean(&atom.f, top).unwrap().lift(8).unwrap();
        for n in [top + 1, top + 7, 3 * top, 256] {
            let direct = fejer_mean(&fine, n).unwrap();
            let predicted = base.scale(&Rational::new(BigInt::from(top), BigInt::from(n)));
            for i in 0..256u64 {
                if i & 3 != 0 {
                    assert_eq!(direct.value(i), predicted.value(i), "n = {n}, coset {i}");
                }
            }
        }
        let embedded = Atom { p: half(), level: 2, f: fine };
        let indices = [4u64, 9, 16, 33, 47];
        let with_tail = atom_statistic(&atom, &indices).unwrap();
        let direct = atom_statistic(&embedded, &indices).unwrap();
        assert!((with_tail - direct).abs() <= 1e-12 * direct.max(1.0));
    }

    #[test]
    fn homogeneous_of_degree_one_half() {
        let atom = random_atom(5, 3, &half()).unwrap();
        let indices = statistic_indices(&IndexFamily::PowersPlusOne, 3, atom.f.resolution());
        let base = atom_statistic(&atom, &indices).unwrap();
        for c in [ratio(1, 4), ratio(-1, 9), pow2(-6)] {
            let scaled = Atom { f: atom.f.scale(&c), ..atom.clone() };
            let expected = to_f64(&c).abs().sqrt() * base;
            assert!((atom_statistic(&scaled, &indices).unwrap() - expected).abs() <= 1e-12 * base);
        }
    }

    #[test]
    fn refuses_unbounded_families() {
        let r = boundedness_sweep(&IndexFamily::Beta, 4..=4, 0..2, 1.0, 1e-9);
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = boundedness_sweep(&IndexFamily::Powers, 4..=5, 0..4, 100.0, 1e-9).unwrap();
        assert!(r.pass);
        assert!(r.block_sizes.iter().all(|&(_, c)| c == 1));
    }
}
