//! Exact Schur-ring machinery over cyclic-type groups.
//!
//! The ambient algebra is the group ring `Q[G]` where `G` is a finite cyclic
//! group `Z/n`, the infinite cyclic group `Z`, or a subgroup of the additive
//! rationals. Group elements are written through their exponents, so the
//! identity is the exponent `0` and inversion is negation.
//!
//! - [`ringcore`]: group-ring arithmetic (product, Hadamard product, star,
//!   freshman exponents, supports, coefficient complexes).
//! - [`schurmod`]: finite-support partitions, S-sets, span membership and the
//!   decomposition of a Hadamard-closed span into its primitive classes.
//! - [`schurring`]: Schur-ring axioms, structure constants, the standard
//!   constructions and S-subgroups.
//! - [`classify`]: class-shape and classification procedures for `Z` and
//!   torsion-free locally cyclic groups, plus exhaustive enumeration over `Z/n`.
//! - [`cli`]: the deterministic command-line front end.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod classify;
pub mod cli;
pub mod error;
pub mod partitions;
pub mod ringcore;
pub mod schurmod;
pub mod schurring;
pub mod verdict;

pub use error::{Error, Result};
pub use ringcore::{Coefficient, Exponent, GroupContext, RingElement};
pub use schurmod::{Partition, Universe};
pub use schurring::{SchurRing, StructureTable, SubgroupDescriptor};
pub use verdict::{Rule, Verdict, Violation};
