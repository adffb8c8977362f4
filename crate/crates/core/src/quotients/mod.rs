//! Approximating sequences of finite-index normal subgroups and their finite
//! quotients, realized as permutation groups.

mod checks;
mod family;
mod finite;
mod kernels;

pub use checks::{
    check_nesting, check_separation, check_separation_of, separating_level, separation_radius,
    NestingReport, NestingStep, SeparationReport,
};
pub use family::{ApproximatedGroup, Caps, Family, DEFAULT_FIBER_ORDER_CAP};
pub use finite::FiniteQuotient;
pub use kernels::{enumerate_kernel_reps, kernel_refines, DEFAULT_HOM_LEVEL_CAP};
