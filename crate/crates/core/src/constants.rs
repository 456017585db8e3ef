//! Frozen empirical constants.
//!
//! Bounds stated with an unspecified absolute constant are checked against a
//! value fixed once: the smallest admissible constant over a calibration
//! range, doubled. Calibration values are kept next to the frozen ones so the
//! protocol stays auditable.

use crate::maxop::IndexFamily;
use crate::rational::ratio;
use crate::Rational;

/// Calibration range for the upper bound on `|n K_n|`: `1 <= n <= 1024`.
pub const PROP2_CALIBRATION_MAX_N: u64 = 1024;
/// Smallest admissible constant on the calibration range, attained at
/// `n = 1023`, coset 0.
pub const PROP2_CALIBRATION: (i64, i64) = (186, 47);

pub fn prop2_constant() -> Rational {
    ratio(2 * PROP2_CALIBRATION.0, PROP2_CALIBRATION.1)
}

/// Calibration levels for the kernel integral estimate: `M = 3, 4, 5` with
/// `2^M <= n <= 2^{M+2}`.
pub const LEMMA4_CALIBRATION_LEVELS: [u32; 3] = [3, 4, 5];
/// Largest ratio on the calibration range, attained at `n = 8`, `M = 3`.
pub const LEMMA4_CALIBRATION: (i64, i64) = (1, 128);

pub fn lemma4_constant() -> Rational {
    ratio(2 * LEMMA4_CALIBRATION.0, LEMMA4_CALIBRATION.1)
}

/// Atom levels and seeds used to calibrate the atom statistic.
pub const ATOM_CALIBRATION_LEVELS: [u32; 2] = [4, 5];
pub const ATOM_CALIBRATION_SEEDS: u64 = 100;

/// Largest atom statistic over the calibration levels and seeds.
pub fn atom_statistic_calibration(family: &IndexFamily) -> Option<f64> {
    match family {
        IndexFamily::Powers => Some(0.812_535_276_278_214_2),
        IndexFamily::PowersPlusOne => Some(1.460_474_980_979_652),
        IndexFamily::PowersPlusHalfPower => Some(1.646_512_291_553_674_7),
        _ => None,
    }
}

pub fn atom_statistic_constant(family: &IndexFamily) -> Option<f64> {
    atom_statistic_calibration(family).map(|c| 2.0 * c)
}

/// `||lambda a||_{H_{1/2}} <= ATOM_HARDY_BOUND * lambda` for a `1/2`-atom `a`.
/// Since `(lambda |a|)^{1/2}` integrates to at most `lambda^{1/2}`, the bound
/// 1 holds exactly.
pub const ATOM_HARDY_BOUND: f64 = 1.0;

/// `||F||_{H_{1/2}}^{1/2} <= LEMMA0_MULTIPLE * sum_k lambda_k^{1/2}` for the
/// counterexample martingale, by the same subadditivity argument.
pub const LEMMA0_MULTIPLE: f64 = 1.0;

/// Tolerance for float comparisons against frozen constants and bounds.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Relative tolerance when comparing a recomputed growth table with the
/// locked one.
pub const REGRESSION_TOLERANCE: f64 = 1e-12;

/// `T(s)` for `s = 4..=10`, recorded on the first run of the blow-up
/// experiment.
pub const BLOWUP_BETA: [(u32, f64); 7] = [
    (4, 1.385_051_112_507_135_4),
    (5, 1.652_178_753_305_271),
    (6, 1.904_362_991_890_239_6),
    (7, 2.149_493_513_055_300_6),
    (8, 2.389_240_439_231_044),
    (9, 2.623_472_633_885_862),
    (10, 2.852_217_431_161_067_7),
];

pub const BLOWUP_ALPHA: [(u32, f64); 7] = [
    (4, 1.594_487_962_960_736_5),
    (5, 1.880_396_813_915_511_8),
    (6, 2.155_009_955_660_743),
    (7, 2.422_339_134_746_161),
    (8, 2.685_512_374_455_558_2),
    (9, 2.944_240_137_327_071_2),
    (10, 3.198_502_399_929_222_6),
];

pub fn blowup_table(family: &IndexFamily) -> Option<&'static [(u32, f64)]> {
    match family {
        IndexFamily::Beta => Some(&BLOWUP_BETA),
        IndexFamily::Alpha => Some(&BLOWUP_ALPHA),
        _ => None,
    }
}
