//! Finite martingales with respect to the dyadic filtration.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};



use super::counterexample::{counterexample_atom, CounterexampleSpec};
use crate::field::{lp_quasinorm, write_grid_csv, GridFunction, Quasinorm};
use crate::kernels::{dirichlet, partial_sum};
use crate::rational::pow2;
use crate::{Error, Rational, Result};

/// `F_0, ..., F_N` with `F_n` stored at resolution `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Martingale {
    levels: Vec<GridFunction>,
}

impl Martingale {
    /// Validates resolutions and `F_n = E(F_{n+1} | level n)`.
    pub fn new(levels: Vec<GridFunction>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Domain("a martingale needs at least one level".into()));
        }
        for (n, f) in levels.iter().enumerate() {
            if f.resolution() != n as u32 {
                return Err(Error::Domain(format!("level {n} stored at resolution {}", f.resolution())));
            }
        }
        let m = Self { levels };
        if let Some(n) = m.inconsistent_level() {
            return Err(Error::Domain(format!("level {n} is not the conditional expectation of level {}", n + 1)));
        }
        Ok(m)
    }

    /// The martingale `E(f | level n)` for `n <= resolution of f`.
    pub fn from_top(f: &GridFunction) -> Result<Self> {
        let levels = (0..=f.resolution()).map(|n| f.coarse_average(n)).collect::<Result<_>>()?;
        Ok(Self { levels })
    }

    pub fn top_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, n: u32) -> &GridFunction {
        &self.levels[n as usize]
    }

    pub fn levels(&self) -> &[GridFunction] {
        &self.levels
    }

    pub fn top(&self) -> &GridFunction {
        self.levels.last().expect("nonempty")
    }

    /// First level that differs from the average of the next one.
    pub fn inconsistent_level(&self) -> Option<u32> {
        self.levels
            .windows(2)
            .position(|w| w[1].coarse_average(w[0].resolution()).ok().as_ref() != Some(&w[0]))
            .map(|n| n as u32)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { levels: self.levels.iter().map(|f| f.scale(c)).collect() }
    }

    /// Writes `level_<n>.csv` for every level into `dir`.
    pub fn write_csv_dir(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.levels
            .iter()
            .enumerate()
            .map(|(n, f)| {
                let path = dir.join(format!("level_{n}.csv"));
                write_grid_csv(f, BufWriter::new(File::create(&path)?))?;
                Ok(path)
            })
            .collect()
    }
}

/// `F_A = sum_{k : s_k < A} lambda_k a_k` for `A = 0, ..., N`.
pub fn assemble_martingale(spec: &CounterexampleSpec, top: u32) -> Result<Martingale> {
    if let Some(&first) = spec.scales.first() {
        if top < first + 1 {
            return Err(Error::Precondition(format!("top level {top} is below the first atom level {}", first + 1)));
        }
    }
    let mut levels = Vec::with_capacity(top as usize + 1);
    for a in 0..=top {
        let mut f = GridFunction::zero(a)?;
        for (k, &s) in spec.scales.iter().enumerate() {
            if s < a {
                f = f.add(&counterexample_atom(spec, k, a)?.scale(&spec.lambdas[k]))?;
            }
        }
        levels.push(f);
    }
    Ok(Martingale { levels })
}

/// `F* = max_n |F_n|` at the top resolution.
pub fn maximal_function(martingale: &Martingale) -> Result<GridFunction> {
    let top = martingale.top_level();
    let mut best = martingale.top().abs();
    for f in &martingale.levels[..top as usize] {
        best = best.max(&f.abs().lift(top)?)?;
    }
    Ok(best)
}

/// `||F||_{H_p} = ||F*||_p`.
pub fn hardy_quasinorm(martingale: &Martingale, p: &Rational) -> Result<Quasinorm> {
    lp_quasinorm(&maximal_function(martingale)?, p)
}

/// Checks `S_j F = S_{2^m} F + 2^m lambda_k (D_j - D_{2^m})` for the `k`-th
/// atom of scale `m`, at the top resolution.
///
/// The coefficients of `F` are constant on `[2^m, 2^{m+1})`, so the formula
/// is checked on all of `2^m <= j <= 2^{m+1}`.
pub fn partial_sum_formula_check(martingale: &Martingale, spec: &CounterexampleSpec, j: u64, k: usize) -> Result<bool> {
    let m = *spec
        .scales
        .get(k)
        .ok_or_else(|| Error::Domain(format!("atom {k} not in the spec")))?;
    if !(1u64 << m..=1u64 << (m + 1)).contains(&j) {
        return Err(Error::Precondition(format!("j = {j} outside [2^{m}, 2^{}]", m + 1)));
    }
    let top = martingale.top();
    let r = top.resolution();
    if r <= m {
        return Err(Error::Precondition(format!("top level {r} does not resolve scale {m}")));
    }
    let base = partial_sum(top, 1 << m)?;
    let lhs = partial_sum(top, j)?;
    let coefficient = pow2(m as i64) * &spec.lambdas[k];
    let rhs = base.add(&dirichlet(j, r)?.sub(&dirichlet(1 << m, r)?)?.scale(&coefficient))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio, to_f64};
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn spec(scales: &[u32], sizes: &[usize]) -> CounterexampleSpec {
        CounterexampleSpec::from_parts(scales.iter().map(|&s| 1u64 << s).collect(), sizes.to_vec()).unwrap()
    }

    #[test]
    fn single_atom_martingale() {
        let sp = spec(&[2], &[3]);
        let f = assemble_martingale(&sp, 5).unwrap();
        for a in 0..=2 {
            assert!(f.level(a).values().iter().all(Zero::is_zero));
        }
        let distinct: std::collections::BTreeSet<_> = f.top().values().iter().cloned().collect();
        assert_eq!(distinct.len(), 3); // 16/3, -16/3 and 0
        assert_eq!(f.inconsistent_level(), None);
        assert!(assemble_martingale(&sp, 2).is_err());
    }

    #[test]
    fn coefficient_law() {
        let sp = spec(&[1, 2, 4], &[2, 3, 4]);
        let f = assemble_martingale(&sp, 6).unwrap();
        let coeffs = f.top().fwht();
        for (j, c) in coeffs.coeffs().iter().enumerate() {
            let expected = sp
                .scales
                .iter()
                .zip(&sp.lambdas)
                .find(|(&s, _)| (1usize << s..1usize << (s + 1)).contains(&j))
                .map(|(&s, l)| pow2(s as i64) * l)
                .unwrap_or_else(Rational::zero);
            assert_eq!(*c, expected, "j = {j}");
        }
    }

    #[test]
    fn maximal_function_examples() {
        let c = GridFunction::constant(4, ratio(-9, 4)).unwrap();
        let m = Martingale::from_top(&c).unwrap();
        assert_eq!(maximal_function(&m).unwrap(), c.abs());
        assert_eq!(hardy_quasinorm(&m, &ratio(1, 2)).unwrap().exact, Some(ratio(9, 4)));

        let sp = spec(&[1, 3], &[2, 2]);
        let f = assemble_martingale(&sp, 6).unwrap();
        let star = maximal_function(&f).unwrap();
        for i in 0..64u64 {
            let brute = (0..=6u32)
                .map(|n| f.level(n).value(i & ((1 << n) - 1)).abs())
                .max()
                .unwrap();
            assert_eq!(star.value(i), &brute);
            assert!(star.value(i) >= &f.top().value(i).abs());
        }
    }

    #[test]
    fn lemma0_certificate() {
        let sp = spec(&[1, 2, 3, 4, 5], &[2, 2, 3, 4, 5]);
        let f = assemble_martingale(&sp, 7).unwrap();
        let norm = hardy_quasinorm(&f, &ratio(1, 2)).unwrap().approx;
        assert!(norm.sqrt() <= sp.lambda_root_sum());
        // one atom: ||lambda a||_{H_1/2} <= lambda
        let single = spec(&[3], &[4]);
        let f = assemble_martingale(&single, 5).unwrap();
        let norm = hardy_quasinorm(&f, &ratio(1, 2)).unwrap().approx;
        assert!(norm <= to_f64(&ratio(1, 4)) * (1.0 + 1e-12));
    }

    #[test]
    fn partial_sum_formula() {
        let sp = spec(&[1, 2, 3], &[2, 3, 3]);
        let f = assemble_martingale(&sp, 5).unwrap();
        for (k, &m) in sp.scales.iter().enumerate() {
            for j in 1u64 << m..=1 << (m + 1) {
                assert!(partial_sum_formula_check(&f, &sp, j, k).unwrap(), "k = {k}, j = {j}");
            }
        }
        assert!(matches!(partial_sum_formula_check(&f, &sp, 3, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn csv_dump() {
        let dir = tempfile::tempdir().unwrap();
        let f = assemble_martingale(&spec(&[1], &[2]), 3).unwrap();
        let paths = f.write_csv_dir(dir.path()).unwrap();
        assert_eq!(paths.len(), 4);
        let back = crate::field::read_grid_csv(File::open(&paths[3]).unwrap()).unwrap();
        assert_eq!(&back, f.top());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn consistency_and_scaling(picks in proptest::collection::btree_set(0u32..6, 1..4), c in -5i64..5) {
            let scales: Vec<u32> = picks.into_iter().collect();
            let sizes: Vec<usize> = scales.iter().map(|&s| s as usize + 1).collect();
            let f = assemble_martingale(&spec(&scales, &sizes), 7).unwrap();
            prop_assert_eq!(f.inconsistent_level(), None);
            for n in 0..=7 {
                prop_assert_eq!(&f.top().coarse_average(n).unwrap(), f.level(n));
            }
            let scaled = f.scale(&int(c));
            prop_assert_eq!(maximal_function(&scaled).unwrap(), maximal_function(&f).unwrap().scale(&int(c.abs())));
            let half = ratio(1, 2);
            prop_assert!(hardy_quasinorm(&f, &half).unwrap().approx >= lp_quasinorm(f.top(), &half).unwrap().approx * (1.0 - 1e-12));
        }
    }
}
