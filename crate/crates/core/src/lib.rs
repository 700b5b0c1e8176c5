//! Exact computations for branched covers of the projective line whose
//! monodromy group lies in a wreath product `S_l wr S_t` in product action.
//!
//! The crate realizes and checks the ramification types of genus 0 and 1
//! covers with product-type monodromy, re-derives the small-degree tables by
//! exhaustive search, and computes reduced forms, reduced product-1 multisets
//! and non-existence witnesses exactly.
//!
//! Conventions: permutations act on the right and multiply left to right, so
//! `(p * q).apply(i) == q.apply(p.apply(i))`, and `x^y = y^-1 x y`. Points are
//! 0-based internally and 1-based in every text and JSON form.

pub mod error;
pub mod monodromy;
pub mod orbitcount;
pub mod permcore;
pub mod ramify;
pub mod reducer;
pub mod report;
pub mod search;
pub mod tables;
pub mod wreath;

pub mod cli;

pub use error::{Error, Result};
pub use permcore::{CycleType, GroupHandle, Perm};
pub use wreath::{ClassDescriptor, WreathElement};

/// Version of this library, embedded in every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
