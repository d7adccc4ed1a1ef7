//! Exhaustive enumeration of Youden rectangles, near Youden rectangles and
//! 3-lambda Latin rectangles up to isotopism, together with the column
//! removal / role swap construction that derives triple, double and sesqui
//! arrays from them.
//!
//! The crate is organized around a small set of modules:
//!
//! - [`design`]: the rectangle model and the intersection/covering
//!   predicates (Latin condition, design condition, covering identity).
//! - [`isotopy`]: isotopisms, normalization, canonical forms, autotopism
//!   groups and conjugation.
//! - [`enumerate`]: isomorph-free exhaustive generation by column extension
//!   with normalized-representative pruning, plus difference-set
//!   development.
//! - [`arrays`]: remove-and-swap, TA1-TA5 classification, RL-forms and
//!   catalog-wide compatibility scans.
//! - [`oracle`]: independent brute-force reference implementations used to
//!   validate the fast paths on tiny parameters.
//! - [`samples`]: published reference designs used in tests and docs.

pub mod arrays;
pub mod design;
pub mod enumerate;
pub mod error;
pub mod isotopy;
pub mod oracle;
pub mod samples;

pub use design::{Params, Rectangle, RectangleKind};
pub use error::{Error, Result};
