//! Connected sums of filling permutations: gluing a `Z_k` piece into a host,
//! and detecting, cutting out and re-gluing such pieces.

mod assembly;
mod decomposition;
mod disassembly;
mod separating;

pub use assembly::{
    arrange_piece_cycles, assemble, assembly_map, attachment_site, piece_handedness, site_handedness, Assembly,
    AttachmentSite, Handedness, Label,
};
pub use decomposition::{check_decomposition, find_decompositions, type_compositions, Decomposition};
pub use disassembly::{
    decorated_disassembly_map, disassemble, disassembly_map, extract, round_trip_check, DecoratedSymbol, Disassembly,
    Extraction, RoundTrip,
};
pub use separating::verify_separating;

use thiserror::Error;

use crate::filling::FillingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("expected a minimal filling permutation (one region), found {regions} regions")]
    NotMinimal { regions: usize },
    #[error("genus {genus} admits no decomposition")]
    GenusTooSmall { genus: usize },
    #[error("{i} does not anchor a usable vertex: {reason}")]
    NotAVertexAnchor { i: usize, reason: String },
    #[error("not a Z_{k} piece: {reason}")]
    NotAZPiece { k: usize, reason: String },
    #[error("piece cycles cannot be arranged: {reason}")]
    ArrangementImpossible { reason: String },
    #[error("{map} has no case for {symbol}")]
    CaseGap { map: &'static str, symbol: String },
    #[error("splice mismatch at {symbol}")]
    SpliceMismatch { symbol: usize },
    #[error("piece genus {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("invalid type {quad:?} for k={k}: entries must be even, at least 4, and sum to {}", 8 * k + 8)]
    InvalidType { quad: [usize; 4], k: usize },
    #[error("anchor {symbol} is outside 1..={size}")]
    AnchorOutOfRange { symbol: usize, size: usize },
    #[error("anchors do not satisfy the decomposition equations")]
    InvalidDecomposition,
    #[error("separating chords cross")]
    ChordsCross,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("no power of kappa and delta relates the reassembled permutation to the original")]
    NoConjugacyFound,
    #[error(transparent)]
    Filling(#[from] FillingError),
}

pub(crate) fn require_minimal(fp: &crate::FillingPermutation) -> Result<(), SurgeryError> {
    if fp.is_minimal() {
        Ok(())
    } else {
        Err(SurgeryError::NotMinimal {
            regions: fp.region_count(),
        })
    }
}

/// Positions along the single cycle of a minimal permutation.
pub(crate) struct CycleIndex {
    cycle: Vec<usize>,
    pos: Vec<usize>,
}

impl CycleIndex {
    pub(crate) fn new(fp: &crate::FillingPermutation) -> Self {
        let cycle = fp.sigma().cycle_of(1);
        let mut pos = vec![0; cycle.len() + 1];
        for (i, &e) in cycle.iter().enumerate() {
            pos[e] = i;
        }
        CycleIndex { cycle, pos }
    }

    pub(crate) fn len(&self) -> usize {
        self.cycle.len()
    }

    pub(crate) fn pos(&self, e: usize) -> usize {
        self.pos[e]
    }

    /// `σ^m(e)`.
    pub(crate) fn step(&self, e: usize, m: usize) -> usize {
        self.cycle[(self.pos[e] + m) % self.cycle.len()]
    }

    pub(crate) fn cycle(&self) -> &[usize] {
        &self.cycle
    }
}
