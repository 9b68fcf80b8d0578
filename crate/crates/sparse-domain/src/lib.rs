//! Sparse-set representation of finite integer domains, as used by
//! constraint solvers: O(1) membership and removal, one-swap singleton
//! binding, and O(1) backtracking through a size-only trail — plus a
//! lockstep oracle that re-checks every structural invariant, the
//! concrete/abstract correspondence, and restore soundness after every
//! single operation.
//!
//! The fastest way in is the `examples/` directory; each file runs on its
//! own and prints what it is doing:
//!
//! ```text
//! cargo run --example domain_basics     # the two mutually inverse arrays, step by step
//! cargo run --example trailing          # frames, first-touch marks, O(1) restore
//! cargo run --example lockstep_oracle   # a script replayed against the abstract model
//! cargo run --example exhaustive_check  # every short script over small universes
//! cargo run --example fuzzing           # seeded random scripts over large universes
//! cargo run --example seeded_bugs       # four classic mistakes, each caught
//! cargo run --example nqueens           # the forward-checking solver demo
//! cargo run --example benchmarks        # sparse vs bitset vs hash set vs snapshot
//! ```
//!
//! The same functionality is scriptable through the thin `sparse-domain`
//! binary: `check`, `fuzz`, `solve`, and `bench` subcommands with stable
//! exit codes for CI.
//!
//! # Layout
//!
//! - [`sparse_set`] — the representation itself and its checkable
//!   structural invariants.
//! - [`trail`] — choice-point frames and O(1) restoration.
//! - [`oracle`] — the abstract model, scripts, lockstep replay, seeded
//!   bugs.
//! - [`solver`] — a small forward-checking backtracking solver (n-queens
//!   demo).
//! - [`bench`] — the measurement harness behind the performance claims.
//! - [`cli`] — the command-line front end.

pub mod bench;
pub mod cli;
pub mod oracle;
pub mod solver;
pub mod sparse_set;
pub mod trail;

pub use sparse_set::{Diagnostics, DomainError, InvariantLabel, InvariantViolation, SparseSet};
pub use trail::{FrameToken, Trail, TrailError};
