//! Regions on which the pointwise lower bounds for `n |K_n|` are stated.

use serde::Serialize;

use crate::field::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Attached to the low endpoint `l` of a block.
    L,
    /// Attached to the high endpoint `t` of a block.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TestRegion {
    pub kind: RegionKind,
    /// The block endpoint the region is attached to.
    pub endpoint: u32,
    pub interval: Interval,
}

impl TestRegion {
    /// `E_l = I_{l+1}(e_{l-1} + e_l)`; for `l = 0` this reads `I_2(e_0 + e_1)`.
    pub fn e_l(l: u32) -> Self {
        let interval = if l == 0 {
            Interval { level: 2, anchor: 3 }
        } else {
            Interval { level: l + 1, anchor: (1 << (l - 1)) | (1 << l) }
        };
        Self { kind: RegionKind::L, endpoint: l, interval }
    }

    /// Coordinates `0..=t` vanish and `x_{t+1} = x_{t+2} = 1`, that is
    /// `I_{t+3}(e_{t+1} + e_{t+2})`.
    pub fn e_t(t: u32) -> Self {
        Self {
            kind: RegionKind::T,
            endpoint: t,
            interval: Interval { level: t + 3, anchor: (1 << (t + 1)) | (1 << (t + 2)) },
        }
    }
}
