//! Identity specifications, their evaluation, the built-in registry and
//! verification.

pub mod bivariate;
pub mod eval;
pub mod registry;
pub mod spec;
pub mod verify;

pub use bivariate::{
    verify_bivariate_relation, verify_relation_family, verify_specialization, BIVARIATE_RELATIONS, SPECIALIZATIONS,
};
pub use eval::{
    eval_product_side, eval_sum_series, eval_sum_side, validate_product_side, validate_sum_side, EngineError,
    EngineResult, SideValue,
};
pub use registry::{builtin_identities, builtin_registry, find_builtin, BuiltinIdentity};
pub use spec::{
    IdentitySpec, LinExpr, PochFactorSpec, Position, ProductAtom, ProductFactor, ProductSideSpec, QuadExpr, SumSideSpec,
};
pub use verify::{
    compare_series, verify_combination, verify_identity, verify_quintuple_combination, verify_quintuple_instance,
    CombinationReport, Mismatch, Status, VerificationReport,
};
