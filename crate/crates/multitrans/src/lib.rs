//! `multitrans` — transitivity properties of desk-scale dynamical systems.
//!
//! The crate represents finite maps, shifts of finite type (SFTs), and
//! horizon-truncated spacing shifts; computes hitting-time sets
//! N(U,V) = {n >= 1 : f^n(U) meets V} exactly or to a horizon; decides
//! membership in vector-generated index-set families; and cross-checks
//! the structural characterizations against independent brute-force
//! oracles.  Every semi-decidable answer is a three-valued [`Verdict`]
//! (`Holds` / `Fails` with witness / `Unknown` with bounds).
//!
//! ## Start with the examples
//!
//! The primary interface is the `examples/` directory — one runnable
//! program per capability:
//!
//! - **`classify_systems`** — build systems from JSON specs and print
//!   their property records (transitive, mixing, period, ...)
//! - **`hitting_sets`** — exact ultimately-periodic hitting sets for
//!   maps and SFTs, horizon-bounded ones for spacing shifts
//! - **`family_membership`** — membership of sets in the vector
//!   families, with witnesses and bounded/unbounded lanes side by side
//! - **`scrambled_pair`** — construct Li-Yorke pair evidence on the
//!   full shift and hunt for sensitivity witnesses
//! - **`theorem_checks`** — run the equivalence cross-checks over
//!   enumerated corpora and write a JSON/CSV report
//! - **`spacing_search`** — seeded search over spacing-shift gap sets
//!   for separating property profiles
//!
//! ```bash
//! cargo run --release --example classify_systems
//! cargo run --release --example hitting_sets
//! cargo run --release --example family_membership
//! cargo run --release --example scrambled_pair
//! cargo run --release --example theorem_checks
//! cargo run --release --example spacing_search
//! ```
//!
//! A thin CLI (`multitrans`) wraps the same entry points for scripting;
//! see the README for the flag reference.
//!
//! ## Library layout
//!
//! - [`systems`] — system representations, periods/cyclic classes,
//!   power/product/tower constructions
//! - [`index_set`] — canonical ultimately periodic subsets of the
//!   positive integers, plus explicit-to-horizon sets
//! - [`hitting`] — hitting-time sets and multi-transitivity checks
//! - [`families`] — the vector-generated family hierarchy
//! - [`chaos`] — scrambled-pair evidence and sensitivity witnesses
//! - [`verify`] — cross-check harness, corpora, reports, search
//!
//! Determinism: every function is a pure function of its inputs; the
//! one seeded component (the spacing search) uses an explicit seed and
//! reproduces its output byte for byte.

pub mod chaos;
pub mod classify;
pub mod cylinder;
pub mod error;
pub mod families;
pub mod hitting;
pub mod index_set;
pub mod systems;
pub mod verdict;
pub mod verify;

pub use cylinder::Cylinder;
pub use error::{Error, Result};
pub use index_set::{ExactSet, ExplicitSet, IndexSet};
pub use systems::{DynSystem, FiniteMap, Sft, SpacingShift, SystemSpec};
pub use verdict::{Verdict, Witness};
