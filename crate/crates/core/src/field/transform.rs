//! In-place Walsh-Hadamard butterflies in natural (Paley) order.
//!
//! With coset index `i = sum x_j 2^j` the natural-order Hadamard matrix has
//! entries `(-1)^{popcount(k & i)} = w_k(x)`, so the unnormalised transform
//! `H v` evaluates `sum_i v_i w_k(i)` and `H c` synthesises `sum_k c_k w_k`.
//! `H` is symmetric with `H H = 2^M I`.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::Rational;

/// Unnormalised transform; the caller guarantees the values cannot overflow.
pub fn hadamard<T>(data: &mut [T])
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    assert!(data.len().is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < data.len() {
        for chunk in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let sum = &*a + &*b;
                let dif = &*a - &*b;
                *a = sum;
                *b = dif;
            }
        }
        half *= 2;
    }
}

/// Unnormalised transform with overflow detection. Returns `false` (leaving
/// `data` in an unspecified state) when an intermediate overflows.
pub fn hadamard_checked(data: &mut [i128]) -> bool {
    assert!(data.len().is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < data.len() {
        for chunk in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                match (a.checked_add(*b), a.checked_sub(*b)) {
                    (Some(sum), Some(dif)) => {
                        *a = sum;
                        *b = dif;
                    }
                    _ => return false,
                }
            }
        }
        half *= 2;
    }
    true
}

/// Values written over one positive common denominator.
pub(crate) fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numer = values
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    (numer, denom)
}

/// Exact `H v` for rational `v`.
pub(crate) fn hadamard_exact(values: &[Rational]) -> Vec<Rational> {
    let (numer, denom) = common_denominator(values);
    if let Some(mut small) = numer.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>() {
        if hadamard_checked(&mut small) {
            return small
                .into_iter()
                .map(|v| Rational::new(BigInt::from(v), denom.clone()))
                .collect();
        }
    }
    let mut big = numer;
    hadamard(&mut big);
    big.into_iter().map(|v| Rational::new(v, denom.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn naive(values: &[i64]) -> Vec<i64> {
        (0..values.len())
            .map(|k| {
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| if (k & i).count_ones() % 2 == 0 { *v } else { -*v })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_definition() {
        let values: Vec<i64> = (0..64).map(|i| (i * 37 % 11) - 5).collect();
        let mut fast = values.clone();
        hadamard(&mut fast);
        assert_eq!(fast, naive(&values));
    }

    #[test]
    fn checked_detects_overflow() {
        let mut data = vec![i128::MAX, i128::MAX];
        assert!(!hadamard_checked(&mut data));
        let mut data = vec![3i128, 1, 1, -1];
        assert!(hadamard_checked(&mut data));
        assert_eq!(data, vec![4, 4, 4, 0]);
    }

    #[test]
    fn exact_path_falls_back_to_big_integers() {
        let huge = Rational::from_integer(BigInt::one() << 200);
        let out = hadamard_exact(&[huge.clone(), int(1)]);
        assert_eq!(out[0], &huge + int(1));
        assert_eq!(out[1], &huge - int(1));
        let out = hadamard_exact(&[ratio(1, 3), ratio(1, 2)]);
        assert_eq!(out, vec![ratio(5, 6), ratio(-1, 6)]);
    }
}
