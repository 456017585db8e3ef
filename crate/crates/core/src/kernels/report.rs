//! Outcome of an identity or bound sweep.

use std::cmp::Ordering;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::rational::{to_f64, RationalRepr};
use crate::Rational;

/// A worst-case ratio: exact when rational, a float otherwise, or unbounded
/// when a bound's right side vanishes where the left side does not.
#[derive(Debug, Clone, PartialEq)]
pub enum Ratio {
    Exact(Rational),
    Float(f64),
    Unbounded,
}

impl Ratio {
    pub fn to_f64(&self) -> f64 {
        match self {
            Ratio::Exact(v) => to_f64(v),
            Ratio::Float(v) => *v,
            Ratio::Unbounded => f64::INFINITY,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Ratio::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn compare(&self, other: &Ratio) -> Ordering {
        match (self, other) {
            (Ratio::Exact(a), Ratio::Exact(b)) => a.cmp(b),
            (Ratio::Unbounded, Ratio::Unbounded) => Ordering::Equal,
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ratio::Exact(v) => match RationalRepr::from_rational(v) {
                Ok(repr) => repr.serialize(s),
                Err(_) => s.serialize_f64(to_f64(v)),
            },
            Ratio::Float(v) => s.serialize_f64(*v),
            Ratio::Unbounded => s.serialize_str("inf"),
        }
    }
}

/// Which side of the worst ratio is bad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Upper bounds and identity deviations: larger is worse.
    AtMost,
    /// Lower bounds: smaller is worse.
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub n: u64,
    pub coset: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub range: (u64, u64),
    pub resolution: u32,
    pub worst_ratio: Ratio,
    pub witness: Option<Witness>,
    pub constant: Option<Ratio>,
    pub pass: bool,
    pub direction: Direction,
}

impl VerificationReport {
    /// Combines two reports of the same check, keeping the worse witness
    /// (the earlier one on ties).
    pub fn merge(self, other: VerificationReport) -> VerificationReport {
        debug_assert_eq!(self.check, other.check);
        let order = other.worst_ratio.compare(&self.worst_ratio);
        let other_worse = match self.direction {
            Direction::AtMost => order == Ordering::Greater,
            Direction::AtLeast => order == Ordering::Less,
        };
        let (worst_ratio, witness) = if other_worse {
            (other.worst_ratio, other.witness)
        } else {
            (self.worst_ratio, self.witness)
        };
        VerificationReport {
            check: self.check,
            range: (self.range.0.min(other.range.0), self.range.1.max(other.range.1)),
            resolution: self.resolution.max(other.resolution),
            worst_ratio,
            witness,
            constant: self.constant.or(other.constant),
            pass: self.pass && other.pass,
            direction: self.direction,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 7)?;
        st.serialize_field("check", &self.check)?;
        st.serialize_field("range", &[self.range.0, self.range.1])?;
        st.serialize_field("resolution", &self.resolution)?;
        st.serialize_field("worst_ratio", &self.worst_ratio)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("constant", &self.constant)?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}
