//! Component connection model for the 3n+1 problem.
//!
//! * [`arith`]: Syracuse/Collatz steps, 2-adic valuation, the affine maps
//!   `V`, `U`, `Q` and their powers.
//! * [`matrices`]: incoming-term matrices `I_a(p, q)`, the inverse lookup
//!   [`matrices::locate`] and the connection matrices `J_ab`.
//! * [`tree`]: the component connection tree, its construction and export.
//! * [`sequences`]: Syracuse generation through the matrices, the naive
//!   oracle, Collatz expansion and per-seed statistics.
//! * [`verify`]: bounded checks of the model's identities, table
//!   reproduction and convergence sweeps.

pub mod arith;
pub mod error;
pub mod matrices;
pub mod sequences;
pub mod tree;
pub mod verify;

pub use arith::{PosInt, PosOdd};
pub use error::{ArithError, SequenceError};
pub use matrices::{Branch, Connection, Coord, Residue6};
pub use sequences::{ColSequence, SeqStats, SyrSequence};
pub use tree::{ComponentId, Tree, TreeEdge};
