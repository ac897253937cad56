//! Bipartite shifting calculus, spectral-radius machinery, and exact
//! rainbow Hamilton path/cycle search, with verification harnesses that
//! check the underlying Hamiltonicity statements exhaustively at small
//! sizes and by seeded sampling beyond.
//!
//! The pieces:
//!
//! * [`bigraph`] — the labeled bipartite graph value type, the named
//!   extremal constructions, isomorphism, enumeration, and the BGF
//!   text codec.
//! * [`shifting`] — the (x, y)-shift operator, the bi-shift fixpoint,
//!   and the staircase characterization.
//! * [`spectral`] — spectral radii via Gram-matrix power iteration,
//!   thresholds, quotient matrices, and the strict-inequality suite.
//! * [`rainbow`] — graph families, rainbow witnesses, exhaustive
//!   backtracking searches, and the BFAM codec.
//! * [`verify`] — the theorem/lemma harnesses with deterministic,
//!   worker-count-independent reports.

pub mod bigraph;
pub mod rainbow;
pub mod shifting;
pub mod spectral;
pub mod verify;

pub use bigraph::{
    construct, decode_graph, encode_graph, enumerate_graphs, is_isomorphic, BipartiteGraph,
    FamilyName, FamilyTag, GraphError, ParseError,
};
pub use rainbow::{
    bi_shift_family, decode_family, encode_family, find_rainbow_hamilton_cycle,
    find_rainbow_hamilton_path, format_witness, longest_rainbow_path, verify_rainbow, GraphFamily,
    RainbowError, RainbowSubgraph,
};
pub use shifting::{bi_shift, is_bi_shifted, shift_xy, ShiftError, ShiftPair};
pub use spectral::{
    compare_to_threshold, nosal_check, spectral_radius, threshold, SpectralError, SpectralEstimate,
    ThresholdSide, ThresholdTag,
};
pub use verify::{
    labeled_copies, run_target, sample_families, Opts, ReportMode, SamplePool, Target, Verdict,
    VerificationReport, VerifyError,
};
