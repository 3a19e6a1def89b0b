//! Bicategories of fractions over finite categories.
//!
//! The base is the strict 2-category of finite categories, functors and
//! natural transformations. The class `W` being inverted is the class of
//! equivalences of categories. On top of that base the crate builds the
//! localized bicategory: fractions `(A', w, f)` as 1-cells, equivalence
//! classes of cell diagrams as 2-cells, and all compositions, associators and
//! inverses, together with a decision procedure for equality of 2-cells.

pub mod bf_oracle;
pub mod canonical;
pub mod cli;
pub mod coherence;
pub mod error;
pub mod fincat;
pub mod fractions;

pub use error::{Error, Result};
