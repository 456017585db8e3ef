//! p-atoms, finite dyadic martingales and the counterexample martingale.

mod counterexample;
mod martingale;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{GridFunction, Interval};
use crate::rational::pow2;
use crate::{Error, Rational, Result};

pub use counterexample::{counterexample_atom, CounterexampleSpec, LAMBDA_SQUARE_BOUND};
pub use martingale::{assemble_martingale, hardy_quasinorm, maximal_function, partial_sum_formula_check, Martingale};

/// Levels of refinement below the support interval used by [`random_atom`].
pub const RANDOM_ATOM_DEPTH: u32 = 3;

/// A candidate p-atom supported on `I_M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub p: Rational,
    pub level: u32,
    pub f: GridFunction,
}

/// First violated clause of the atom definition.
#[derive(Debug, Clone, PartialEq)]
pub enum AtomViolation {
    Exponent(Rational),
    /// The grid is coarser than the support interval.
    Resolution { level: u32, resolution: u32 },
    Support { coset: u64 },
    Mean(Rational),
    Sup { coset: u64, value: Rational },
}

impl std::fmt::Display for AtomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AtomViolation::Exponent(p) => write!(f, "exponent {p} outside (0, 1]"),
            AtomViolation::Resolution { level, resolution } => {
                write!(f, "support level {level} exceeds resolution {resolution}")
            }
            AtomViolation::Support { coset } => write!(f, "nonzero value outside I_M at coset {coset}"),
            AtomViolation::Mean(m) => write!(f, "integral {m} is not zero"),
            AtomViolation::Sup { coset, value } => write!(f, "value {value} at coset {coset} exceeds the sup bound"),
        }
    }
}

/// `p = a / b` with `0 < p <= 1`, as machine integers.
fn exponent_parts(p: &Rational) -> Option<(u32, u32)> {
    use num_traits::ToPrimitive;
    if !p.is_positive() || *p > Rational::one() {
        return None;
    }
    Some((p.numer().to_u32()?, p.denom().to_u32()?))
}

/// `|v| <= 2^{M/p}`, decided exactly as `|num|^a <= 2^{M b} den^a`.
fn within_sup_bound(v: &Rational, level: u32, a: u32, b: u32) -> bool {
    let lhs = num_traits::pow(v.numer().abs(), a as usize);
    let rhs = num_traits::pow(v.denom().clone(), a as usize) << (level as usize * b as usize);
    lhs <= rhs
}

/// Checks support, mean and sup bound exactly.
pub fn validate_atom(atom: &Atom) -> std::result::Result<(), AtomViolation> {
    let (a, b) = exponent_parts(&atom.p).ok_or_else(|| AtomViolation::Exponent(atom.p.clone()))?;
    let resolution = atom.f.resolution();
    if atom.level > resolution {
        return Err(AtomViolation::Resolution { level: atom.level, resolution });
    }
    let support = Interval::zero(atom.level);
    for (i, v) in atom.f.values().iter().enumerate() {
        if !v.is_zero() && !support.contains(i as u64) {
            return Err(AtomViolation::Support { coset: i as u64 });
        }
    }
    let mean = atom.f.integral();
    if !mean.is_zero() {
        return Err(AtomViolation::Mean(mean));
    }
    for (i, v) in atom.f.values().iter().enumerate() {
        if !within_sup_bound(v, atom.level, a, b) {
            return Err(AtomViolation::Sup { coset: i as u64, value: v.clone() });
        }
    }
    Ok(())
}

/// Seeded random p-atom on `I_M`, resolved [`RANDOM_ATOM_DEPTH`] levels
/// below `M`.
///
/// Integer values on the cosets of `I_M` are drawn uniformly, the mean is
/// removed, and the result is rescaled so that its sup norm equals
/// `2^{floor(M/p)}`, the largest power of two within the bound.
pub fn random_atom(seed: u64, level: u32, p: &Rational) -> Result<Atom> {
    let (a, b) = exponent_parts(p).ok_or_else(|| Error::Domain(format!("atom exponent {p} outside (0, 1]")))?;
    let resolution = level + RANDOM_ATOM_DEPTH;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inside = 1usize << RANDOM_ATOM_DEPTH;
    let raw: Vec<i64> = (0..inside).map(|_| rng.gen_range(-1000..=1000)).collect();
    let total: i64 = raw.iter().sum();
    // centred values times the number of cosets in I_M
    let centred: Vec<i64> = raw.iter().map(|v| v * inside as i64 - total).collect();
    let peak = centred.iter().map(|v| v.abs()).max().unwrap_or(0);
    let bound = pow2(((level * b) / a) as i64);
    let scale = if peak == 0 { Rational::zero() } else { bound / Rational::from_integer(BigInt::from(peak)) };
    let f = GridFunction::from_fn(resolution, |i| {
        if i & ((1u64 << level) - 1) == 0 {
            let j = (i >> level) as usize;
            Rational::from_integer(centred[j].into()) * &scale
        } else {
            Rational::zero()
        }
    })?;
    Ok(Atom { p: p.clone(), level, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn half() -> Rational {
        ratio(1, 2)
    }

    #[test]
    fn validation_examples() {
        for m in 0..6u32 {
            // 2^{2M} (1_{I_{M+1}} - 1_{I_{M+1}(e_M)})
            let f = GridFunction::from_fn(m + 1, |i| {
                let c = pow2(2 * m as i64);
                if i == 0 {
                    c
                } else if i == 1 << m {
                    -c
                } else {
                    Rational::zero()
                }
            })
            .unwrap();
            assert_eq!(validate_atom(&Atom { p: half(), level: m, f }), Ok(()));
        }
        let one = GridFunction::constant(2, int(1)).unwrap();
        assert!(matches!(validate_atom(&Atom { p: half(), level: 0, f: one }), Err(AtomViolation::Mean(_))));

        let m = 2u32;
        let c = (1i64 << (2 * m)) + 1;
        let f = GridFunction::from_fn(m + 1, |i| match i {
            0 => int(c),
            4 => int(-c),
            _ => int(0),
        })
        .unwrap();
        assert!(matches!(validate_atom(&Atom { p: half(), level: m, f }), Err(AtomViolation::Sup { .. })));

        let f = GridFunction::from_integers(2, &[1, -1, 0, 0]).unwrap();
        assert_eq!(validate_atom(&Atom { p: half(), level: 1, f }), Err(AtomViolation::Support { coset: 1 }));
        let f = GridFunction::zero(1).unwrap();
        assert!(matches!(validate_atom(&Atom { p: int(2), level: 0, f }), Err(AtomViolation::Exponent(_))));
    }

    #[test]
    fn sup_bound_with_fractional_exponent() {
        // p = 2/3, M = 1: bound 2^{3/2}, and 2^{floor(3/2)} = 2 is admissible
        assert!(within_sup_bound(&int(2), 1, 2, 3));
        assert!(within_sup_bound(&ratio(282, 100), 1, 2, 3));
        assert!(!within_sup_bound(&ratio(283, 100), 1, 2, 3));
    }

    #[test]
    fn random_atoms_are_atoms() {
        for m in 0..=8u32 {
            for seed in 0..1000u64 {
                let atom = random_atom(seed, m, &half()).unwrap();
                assert_eq!(validate_atom(&atom), Ok(()), "seed {seed}, M = {m}");
                assert_eq!(atom.f.max_abs(), pow2(2 * m as i64));
            }
        }
        for p in [int(1), ratio(2, 3), ratio(1, 3)] {
            assert_eq!(validate_atom(&random_atom(7, 4, &p).unwrap()), Ok(()));
        }
        assert!(random_atom(0, 3, &int(0)).is_err());
    }

    #[test]
    fn random_atoms_are_deterministic_and_distinct() {
        assert_eq!(random_atom(42, 5, &half()).unwrap(), random_atom(42, 5, &half()).unwrap());
        let atoms: Vec<_> = (0..100).map(|s| random_atom(s, 4, &half()).unwrap().f).collect();
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                assert_ne!(atoms[i], atoms[j], "seeds {i} and {j}");
            }
        }
    }
}
