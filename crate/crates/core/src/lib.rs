//! Computational core for HLS groupoids built from approximated free groups.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation: reduced words and group-algebra arithmetic over free groups,
//! finite quotients realized as permutation groups, a Lanczos eigensolver,
//! and the groupoid-level operations (fibered convolution, fiber norms,
//! amenability certificates, spectral gaps). File formats, caching and the
//! command line live in the `hlslab` crate.
#![no_std]

extern crate alloc;

pub mod error;
pub mod freegroup;
pub mod groups;
pub mod hls;
pub mod linalg;
pub mod quotients;
pub mod scalar;

pub use error::{Error, Result};
pub use freegroup::{ball, ball_size, GroupAlgebraElement, Letter, SphereComponent, Word};
pub use hls::{
    AmenabilityCertificate, FiberLevel, FiberedFunction, GroupoidElement, HlsGroupoid, NormBracket,
    NormOptions,
    Provenance,
};
pub use quotients::{ApproximatedGroup, Caps, Family, FiniteQuotient};
pub use scalar::{Coefficient, ExactComplex, Rational, RealCoefficient};
