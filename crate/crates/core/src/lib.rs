//! Combinatorial calculus for ribbon presentations of n-knots (n >= 2).
//!
//! A presentation is stored as [`RibbonData`]: a number of bases and a list of
//! handles, each carrying the signed sequence of bases it crosses. On top of
//! that this crate provides
//!
//! * the elementary moves of stable equivalence, simple-equivalence word moves
//!   and trivial-handle stabilization ([`moves`]),
//! * the presented knot quandle, exact coloring counts into finite quandles,
//!   the knot group and its Alexander polynomial ([`quandle`]),
//! * a bounded bidirectional search for move scripts relating two
//!   presentations, with replayable certificates ([`search`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
#[cfg(any(test, feature = "rand"))]
pub mod generate;
pub mod moves;
pub mod quandle;
pub mod ribbon;
pub mod search;

pub use error::{Error, MoveError, QuandleError, RibbonError, ScriptError};
pub use moves::{Direction, End, Move, MoveScript};
pub use quandle::{ColoringProfile, FiniteQuandle, LaurentPoly};
pub use ribbon::{Handle, Labeling, RibbonData, Sign, SignedLetter};
pub use search::{Certificate, Refutation, SearchConfig, SearchOutcome};
