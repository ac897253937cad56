//! Harnesses that mechanically check the Hamiltonicity statements at
//! desk scale: exhaustive enumeration where the family space fits,
//! exhaustive-over-extremal-copies and seeded sampling where it does
//! not, with deterministic, worker-count-independent reports.

mod harnesses;
mod report;

pub use report::{ReportMode, Verdict, VerificationReport};

use crate::bigraph::{
    construct, enumerate_graphs, is_isomorphic, BipartiteGraph, FamilyName, GraphError,
};
use crate::rainbow::{GraphFamily, RainbowError};
use crate::spectral::{SpectralError, DEFAULT_EPS, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{cases} cases exceed the exhaustive cap of 2^24")]
    EnumerationTooLarge { cases: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
}

/// Exhaustive harnesses refuse family spaces beyond this many cases.
pub const MAX_EXHAUSTIVE_CASES: u128 = 1 << 24;

/// Shared float and parallelism knobs. `jobs == 0` means all available
/// cores; results are independent of the worker count.
#[derive(Debug, Clone, Copy)]
pub struct Opts {
    pub eps: f64,
    pub tol: f64,
    pub jobs: usize,
}

impl Default for Opts {
    fn default() -> Self {
        Opts { eps: DEFAULT_EPS, tol: DEFAULT_TOL, jobs: 0 }
    }
}

/// Default sampling seed when neither a flag nor RBH_SEED is given.
pub const DEFAULT_SEED: u64 = 1;

/// Everything the battery can verify. The two Lem42 variants place the
/// isolated vertex of the nearly balanced extremal graph in the larger
/// or the smaller part respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Thm14,
    Thm15,
    Thm16,
    Lem21,
    Lem22,
    Lem23,
    Lem24,
    Lem25,
    Lem28,
    Lem29,
    Lem31,
    Lem32,
    Lem41,
    Lem42A,
    Lem42B,
    Lem51,
    Lem52,
    Obs1,
    Cor31,
    Cor41,
    Cor51,
}

impl Target {
    pub fn id(self) -> &'static str {
        match self {
            Target::Thm14 => "thm1.4",
            Target::Thm15 => "thm1.5",
            Target::Thm16 => "thm1.6",
            Target::Lem21 => "lem2.1",
            Target::Lem22 => "lem2.2",
            Target::Lem23 => "lem2.3",
            Target::Lem24 => "lem2.4",
            Target::Lem25 => "lem2.5",
            Target::Lem28 => "lem2.8",
            Target::Lem29 => "lem2.9",
            Target::Lem31 => "lem3.1",
            Target::Lem32 => "lem3.2",
            Target::Lem41 => "lem4.1",
            Target::Lem42A => "lem4.2a",
            Target::Lem42B => "lem4.2b",
            Target::Lem51 => "lem5.1",
            Target::Lem52 => "lem5.2",
            Target::Obs1 => "obs1",
            Target::Cor31 => "cor3.1",
            Target::Cor41 => "cor4.1",
            Target::Cor51 => "cor5.1",
        }
    }

    /// Resolve a target id; `lem4.2` expands to both orientations.
    pub fn parse(s: &str) -> Result<Vec<Target>, VerifyError> {
        if s == "lem4.2" {
            return Ok(vec![Target::Lem42A, Target::Lem42B]);
        }
        Target::battery()
            .into_iter()
            .find(|t| t.id() == s)
            .map(|t| vec![t])
            .ok_or_else(|| VerifyError::InvalidParameter(format!("unknown target {s:?}")))
    }

    /// All targets in battery order.
    pub fn battery() -> Vec<Target> {
        use Target::*;
        vec![
            Thm14, Thm15, Thm16, Lem21, Lem22, Lem23, Lem24, Lem25, Lem28, Lem29, Lem31, Lem32,
            Lem41, Lem42A, Lem42B, Lem51, Lem52, Obs1, Cor31, Cor41, Cor51,
        ]
    }

    /// Size parameter used when the caller does not pick one.
    pub fn default_n(self) -> usize {
        match self {
            Target::Thm14 | Target::Thm15 | Target::Thm16 | Target::Lem52 => 2,
            Target::Lem23 | Target::Lem24 => 2,
            Target::Lem31 | Target::Lem32 | Target::Cor31 => 3,
            Target::Lem41 | Target::Lem42A | Target::Lem42B | Target::Cor41 => 3,
            Target::Lem51 | Target::Cor51 => 4,
            Target::Lem28 => 50,
            Target::Obs1 => 3,
            Target::Lem21 | Target::Lem22 => 6,
            Target::Lem25 => 7,
            Target::Lem29 => 3,
        }
    }

    /// Default coverage mode at the given size.
    pub fn default_mode(self, n: usize, seed: u64) -> ReportMode {
        match self {
            Target::Lem21 | Target::Lem22 | Target::Lem25 => {
                ReportMode::Sample { seed, count: 10_000 }
            }
            Target::Lem29 => ReportMode::Sample { seed, count: 1_000 },
            Target::Lem52 if n >= 3 => ReportMode::Sample { seed, count: 100_000 },
            _ => ReportMode::Exhaustive,
        }
    }
}

/// Run one harness. `n` is the statement's size parameter (`n_max` for
/// the lem2.8 suite, the maximum part size for the random suites).
pub fn run_target(
    target: Target,
    n: usize,
    mode: ReportMode,
    opts: &Opts,
) -> Result<VerificationReport, VerifyError> {
    harnesses::run(target, n, mode, opts)
}

/// All labeled graphs on a fixed bipartition isomorphic to a reference.
#[derive(Debug, Clone)]
pub struct ExtremalCopySet {
    pub name: FamilyName,
    pub copies: Vec<BipartiteGraph>,
}

pub fn labeled_copies(name: FamilyName) -> Result<ExtremalCopySet, VerifyError> {
    let target = construct(name)?;
    Ok(ExtremalCopySet { name, copies: copies_of(&target)? })
}

pub(crate) fn copies_of(target: &BipartiteGraph) -> Result<Vec<BipartiteGraph>, VerifyError> {
    let m = target.edge_count();
    let copies = enumerate_graphs(target.n_x(), target.n_y())?
        .filter(|g| g.edge_count() == m && is_isomorphic(g, target))
        .collect();
    Ok(copies)
}

/// ChaCha substream for sample index `i`: any partition of the sample
/// range across workers reproduces the same draws.
pub(crate) fn stream_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Member pool for [`sample_families`].
#[derive(Debug, Clone)]
pub enum SamplePool {
    /// Uniform over all labeled graphs on the parts.
    All,
    /// Uniform over the labeled copies of a named extremal graph.
    CopiesOf(FamilyName),
}

/// Deterministic stream of pseudo-random families.
pub struct FamilySampler {
    n_x: usize,
    n_y: usize,
    k: usize,
    seed: u64,
    next: u64,
    end: u64,
    pool: PoolData,
}

enum PoolData {
    All { bits: usize },
    Copies(Vec<BipartiteGraph>),
}

pub fn sample_families(
    n_x: usize,
    n_y: usize,
    k: usize,
    seed: u64,
    count: u64,
    pool: SamplePool,
) -> Result<FamilySampler, VerifyError> {
    if count == 0 {
        return Err(VerifyError::InvalidParameter("count must be at least 1".into()));
    }
    if k == 0 {
        return Err(VerifyError::InvalidParameter("family size must be at least 1".into()));
    }
    let pool = match pool {
        SamplePool::All => {
            let bits = n_x * n_y;
            if bits > 63 {
                return Err(VerifyError::InvalidParameter(format!(
                    "cannot draw uniform graphs over {bits} potential edges"
                )));
            }
            PoolData::All { bits }
        }
        SamplePool::CopiesOf(name) => {
            let set = labeled_copies(name)?;
            let g = &set.copies[0];
            if g.n_x() != n_x || g.n_y() != n_y {
                return Err(VerifyError::InvalidParameter(format!(
                    "{name} lives on parts ({}, {}), not ({n_x}, {n_y})",
                    g.n_x(),
                    g.n_y()
                )));
            }
            PoolData::Copies(set.copies)
        }
    };
    Ok(FamilySampler { n_x, n_y, k, seed, next: 0, end: count, pool })
}

impl Iterator for FamilySampler {
    type Item = GraphFamily;

    fn next(&mut self) -> Option<GraphFamily> {
        if self.next >= self.end {
            return None;
        }
        let mut rng = stream_rng(self.seed, self.next);
        self.next += 1;
        let graphs: Vec<BipartiteGraph> = (0..self.k)
            .map(|_| match &self.pool {
                PoolData::All { bits } => {
                    let mask = rng.random_range(0..1u64 << bits);
                    BipartiteGraph::from_bitmask(self.n_x, self.n_y, mask)
                }
                PoolData::Copies(copies) => copies[rng.random_range(0..copies.len())].clone(),
            })
            .collect();
        Some(GraphFamily::new(graphs).expect("sampled members share the bipartition"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::FamilyTag;

    #[test]
    fn labeled_copy_counts() {
        let q02 = labeled_copies(FamilyName::new(FamilyTag::Q, 0, 2)).unwrap();
        assert_eq!(q02.copies.len(), 4);
        let b12 = labeled_copies(FamilyName::new(FamilyTag::B, 1, 2)).unwrap();
        assert_eq!(b12.copies.len(), 4);
        let q03 = labeled_copies(FamilyName::new(FamilyTag::Q, 0, 3)).unwrap();
        assert_eq!(q03.copies.len(), 6);
        let t03 = labeled_copies(FamilyName::new(FamilyTag::T, 0, 3)).unwrap();
        assert_eq!(t03.copies.len(), 3);
        let b13 = labeled_copies(FamilyName::new(FamilyTag::B, 1, 3)).unwrap();
        assert_eq!(b13.copies.len(), 18);
        // Pairwise distinct edge sets, every member isomorphic.
        let reference = construct(FamilyName::new(FamilyTag::B, 1, 3)).unwrap();
        for (i, a) in b13.copies.iter().enumerate() {
            assert!(is_isomorphic(a, &reference));
            for b in &b13.copies[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn sampler_is_reproducible() {
        let draw = || -> Vec<GraphFamily> {
            sample_families(2, 2, 3, 1, 5, SamplePool::All).unwrap().collect()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn copies_pool_yields_isomorphic_members() {
        let name = FamilyName::new(FamilyTag::B, 1, 3);
        let reference = construct(name).unwrap();
        let fams: Vec<GraphFamily> =
            sample_families(3, 3, 6, 7, 10, SamplePool::CopiesOf(name)).unwrap().collect();
        assert_eq!(fams.len(), 10);
        for fam in &fams {
            for g in fam.graphs() {
                assert!(is_isomorphic(g, &reference));
            }
        }
    }

    #[test]
    fn target_parsing() {
        assert_eq!(Target::parse("thm1.4").unwrap(), vec![Target::Thm14]);
        assert_eq!(Target::parse("lem4.2").unwrap(), vec![Target::Lem42A, Target::Lem42B]);
        assert!(Target::parse("thm9.9").is_err());
        for t in Target::battery() {
            assert_eq!(Target::parse(t.id()).unwrap(), vec![t]);
        }
    }
}
