//! Exact truncated q-series arithmetic and a verification engine for
//! Rogers-Ramanujan-Slater type identities, together with a partition
//! laboratory that checks their combinatorial interpretations by brute force.

pub mod biseries;
pub mod coeff;
pub mod error;
pub mod identity;
pub mod idl;
pub mod partitions;
pub mod products;
pub mod series;

pub use biseries::BiSeries;
pub use coeff::Coeff;
pub use error::{SeriesError, SeriesResult};
pub use identity::{
    builtin_registry, find_builtin, verify_identity, EngineError, IdentitySpec, Status, VerificationReport,
};
pub use idl::{parse_idl, print_idl, ParseError};
pub use partitions::{LabError, Partition, SignedPartition};
pub use products::QMonomial;
pub use series::{Series, Sign};
