//! Disjoint cover of the complement of `I_M`.
//!
//! A point outside `I_M` has a first nonzero coordinate `k < M`. Either the
//! remaining coordinates below `M` vanish, placing it in `I_M(e_k)`, or there
//! is a next nonzero coordinate `l`, placing it in `I_{l+1}(e_k + e_l)`.

use serde::Serialize;

use super::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceKind {
    /// `I_{l+1}(e_k + e_l)` with `k < l < M`.
    Pair { k: u32, l: u32 },
    /// `I_M(e_k)`.
    Single { k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverPiece {
    pub kind: PieceKind,
    pub interval: Interval,
}

impl CoverPiece {
    /// The pair `(k, l)` with `l = M` for single pieces.
    pub fn exponents(&self, resolution: u32) -> (u32, u32) {
        match self.kind {
            PieceKind::Pair { k, l } => (k, l),
            PieceKind::Single { k } => (k, resolution),
        }
    }
}

/// Pairs first (by `k`, then `l`), then singles; empty for `M = 0`.
pub fn complement_cover(resolution: u32) -> Vec<CoverPiece> {
    let mut pieces = Vec::new();
    for k in 0..resolution {
        for l in k + 1..resolution {
            pieces.push(CoverPiece {
                kind: PieceKind::Pair { k, l },
                interval: Interval { level: l + 1, anchor: (1 << k) | (1 << l) },
            });
        }
    }
    for k in 0..resolution {
        pieces.push(CoverPiece {
            kind: PieceKind::Single { k },
            interval: Interval { level: resolution, anchor: 1 << k },
        });
    }
    pieces
}
