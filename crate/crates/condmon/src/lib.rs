//! Exact combinatorics of conductor submonoids of factorial monoids.
//!
//! A submonoid `H` of a factorial monoid `F` is a *conductor submonoid* when
//! every non-unit of `H` absorbs all of `F` by multiplication, i.e.
//! `H \ H^x` is an s-ideal of `F`. Two concrete families are implemented
//! exactly, over machine integers with checked arithmetic:
//!
//! * **Ideal-extension monoids** in `N_0^s`: `H = a ∪ {0}` where `a` is the
//!   up-closure of a finite antichain of generators ([`conductor`]).
//! * **Zero-sum monoids** over a finite abelian group: the monoid `F_iota` of
//!   sequences that are not zero-sum free, and its Krull-realized counterpart
//!   `F_phi` over labeled primes ([`zerosum`]).
//!
//! A generic factorization engine ([`factor`]) enumerates factorizations into
//! atoms, length sets, distances, and the catenary degrees `c`, `c_eq`,
//! `c_adj`, `c_mon`. The [`construct`] module builds the distinguished
//! witness families (deep-hole monoids, power-primary monoids, cycle
//! monoids, interval-length sequences, equal-catenary instances), and
//! [`suites`] packages the machine-checked verification suites exposed by the
//! `condmon` CLI.
//!
//! All enumerations are deterministic: canonical element orders are fixed,
//! random sampling in suites is seeded, and every cap is an explicit
//! [`Budget`] whose exhaustion is an error, never a silent truncation.

pub mod budget;
pub mod conductor;
pub mod construct;
pub mod error;
pub mod factor;
pub mod freemon;
pub mod group;
pub mod parse;
pub mod report;
pub mod spec;
pub mod suites;
pub mod zerosum;

pub use budget::Budget;
pub use error::{Error, Result};
