//! Verification and exact search for admissible sets in {0,1,2}^m.
//!
//! An admissible set is a family of ternary vectors whose supports form an
//! antichain and which contains no triple clash; an I(m,w) set carries
//! exactly one vector on each size-w support. These objects drive cap-set
//! lower bounds: `f` weight-w vectors in {0,1,2}^m give a cap set in
//! F₃^{36m} of size f·(72·112⁵)^(m−w)·(112⁶)^w.
//!
//! Module map:
//!
//! - [`vector`], [`clash`], [`family`]: vectors, supports, the two clash
//!   predicates, admissibility and I(m,w) checking, star, projection.
//! - [`typed`]: vector types, the 8-class prefix code, typed clashes with a
//!   brute-force oracle, monotype existence search.
//! - [`colouring`]: the 8-colouring induced by I(m,m−2) families and
//!   monochromatic reconstruction.
//! - [`construct`]: the closed-form I(m,1), I(m,2), I(m,3), I(m,m−1) and
//!   I(m,m) families.
//! - [`search`]: backtracking existence search and branch-and-bound f(m,w).
//! - [`cnf`]: DIMACS export of the existence problem and model decoding.
//! - [`bounds`]: exact cap-set counts and certified growth rates.
//! - [`io`]: the admissible-set text format.
//!
//! All operations are pure functions on immutable values and safe to call
//! concurrently; only the searches spawn threads, and only when asked to.

pub mod bounds;
pub mod clash;
pub mod cnf;
pub mod colouring;
pub mod construct;
pub mod family;
pub mod io;
pub mod search;
pub mod supports;
pub mod typed;
pub mod vector;

pub use clash::{find_clash, is_admissible, is_pair_clash, is_triple_clash, ClashWitness};
pub use family::{Branch, VectorFamily};
pub use search::{exists_i, f_max, SearchConfig, SearchOutcome, SearchStatus, SymmetryFlags};
pub use supports::SeedOrder;
pub use vector::{Support, TernaryVector, MAX_LEN};
