//! Branching verdicts for Flensted-Jensen representations of `SO0(p,q)`
//! restricted to `SO0(p-1,q)` and `SO0(p,q-1)`.
//!
//! The crate evaluates period integrals over the suborbits `X(p-1,q)` and
//! `X(p,q-1)` of the hyperboloid `X(p,q)`, checks them against closed-form
//! non-vanishing predicates and interlacing patterns of infinitesimal
//! characters, and enumerates the Weyl-group combinatorics behind the
//! two-member Arthur packets.

pub mod error;
pub mod fjrep;
pub mod geometry;
pub mod harmonics;
pub mod numerics;
pub mod packets;
pub mod periods;

pub use error::{Error, Result};
pub use fjrep::{FJParam, FJReport, InfChar, SpaceTag};
pub use geometry::Subgroup;
pub use numerics::{HalfInt, QuadratureSpec};
pub use packets::{
    ArthurPacket, CodimDirection, InterlaceClass, MemberTag, RealForm, SignedPermutation, WeylFamily,
    WeylGroup,
};
pub use periods::{BranchingVerdict, PeriodVerdict, ScanRow};
