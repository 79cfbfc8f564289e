//! Exact-arithmetic ternary Kloosterman sums, the weight distributions of the
//! linear codes attached to double cosets in odd orthogonal groups, and the
//! recursive identities that generate incomplete power moments of those sums
//! — all verified against brute-force group and code enumeration at small
//! parameters, with zero floating point anywhere.
//!
//! Module map:
//! - [`field`]: table-driven F_{3^r}, trace, squareness, canonical character.
//! - [`eisenstein`]: the ring Z[ω] housing every character sum.
//! - [`combinat`]: Stirling numbers, q-binomials, guarded multinomials, and
//!   the size constants of the double-coset families.
//! - [`char_sums`]: Kloosterman sums, δ-tables, power moments, and the
//!   closed-form coset exponential sums.
//! - [`weight_dist`]: closed-form cell profiles and the constrained
//!   composition DP for weight distributions; exact dual weights.
//! - [`recursion`]: the two recursion families, the square-moment identities,
//!   and the generic power moment identity, in exact rationals.
//! - [`oracle`]: brute-force matrix-group and code enumeration.
//! - [`acceptance`]: the exact-identity acceptance suite.

pub mod acceptance;
pub mod char_sums;
pub mod combinat;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod oracle;
pub mod recursion;
pub mod weight_dist;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, FieldTable};
