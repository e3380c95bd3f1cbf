//! Solvers for goal-unknown polyomino assembly puzzles.
//!
//! Two puzzle families are covered: the *shape logic* puzzle (every piece of
//! each set is used exactly once to build one common, unknown shape) and the
//! *common multiple shape* puzzle (unlimited copies of the pieces in each
//! set; the smallest common shape is sought). The main pipeline encodes a
//! bounding-box-restricted instance into CNF, solves it with the built-in
//! CDCL solver (or an external DIMACS solver), and repairs disconnected
//! goals with blocking clauses. A dancing-links exact-cover packer doubles
//! as an independent brute-force oracle, and the `jigsaw` / `reductions`
//! modules provide executable versions of the hardness constructions
//! (3-partition, Post correspondence, zigzag edge encodings).

pub mod cnf;
pub mod dlx;
pub mod encoders;
pub mod geometry;
pub mod instance;
pub mod jigsaw;
pub mod placement;
pub mod reductions;
pub mod search;

pub use geometry::{Cell, Polyomino, Transform};
pub use instance::{PieceSet, PuzzleInstance, PuzzleMode, Solution};
pub use placement::{GridBox, Placement};
