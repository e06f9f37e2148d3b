//! Decomposition of `(k,u)`-intersecting uniform set families.
//!
//! An `s`-uniform family is `(k,u)`-intersecting when among any `k` of its
//! members some two share at least `u` elements. Every such family splits into
//! at most `⌈(k-1)/(ℓ-1) · C(s,u)⌉` subfamilies that are `(ℓ,u)`-intersecting;
//! [`decompose`] builds such a split and [`min_cover_exact`] computes the true
//! minimum for small families.
//!
//! Exact counts are generic over [`CountScalar`]; [`Count`] and [`WideCount`]
//! are the machine-word instantiations used by the rest of the crate.

pub mod check;
pub mod count;
pub mod decompose;
pub mod error;
pub mod family;
pub mod generate;
pub mod oracle;
pub mod params;
pub mod search;
pub mod set;

pub use check::{
    disjointness_graph, find_witness, is_intersecting, verify_decomposition, DisjointnessGraph,
    VerificationReport, Witness,
};
pub use count::{binomial, div_ceil, CountScalar};
pub use decompose::{
    compact, decompose, decompose_run, format_decomposition, pigeonhole_merge, scattered_kernel,
    theorem_bound, theorem_bound_in, trace_cover, Decomposition, DecompositionDocument,
    DecompositionRun, Kernel, TraceCover,
};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use generate::{
    gen_complete, gen_random, gen_scattered_stars, gen_star, gen_sunflower, intersecting_instance,
    Construction, GenKind, GenSpec,
};
pub use oracle::{
    chromatic_number, chromatic_number_capped, min_cover_exact, min_cover_exact_capped,
    min_partition_graph, OracleResult, DEFAULT_ORACLE_CAP,
};
pub use params::BoundParams;
pub use search::{extremal_search, SearchConfig, SearchReport};
pub use set::{intersection_size, u_subsets, ElementId, MemberSet};

/// Machine count type for bounds and binomials.
pub type Count = u64;

/// Wide count type for parameters whose bound overflows [`Count`].
pub type WideCount = u128;
