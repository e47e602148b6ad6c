//! Induced-subgraph search, exhaustive edge 2-colouring checks, the
//! union construction with its component split, and closed-form bounds.

mod bounds;
mod host;
mod occurrences;
mod split;

pub use bounds::{bounds_report, max_ramsey_level, BoundValue, BoundsReport};
pub use host::{
    color_counts, find_mono_coloring, has_mono_induced, induced_ramsey_oracle, is_host, is_host_with_jobs,
    HostCertificate, OracleReport, MAX_HOST_EDGES,
};
pub use occurrences::{contains_induced, find_induced_occurrences, MAX_PATTERN};
pub use split::{construct_union, split_union, SplitMode, SplitResult, UnionConstruction};

pub(crate) use host::with_jobs;
