//! Complete valuations on finite distributive lattices.
//!
//! A finite distributive lattice is the lattice of downsets of a finite
//! poset. A valuation assigns natural numbers to its elements, additively over
//! join and meet; it is *bijective* when it numbers the `n` elements
//! `0..n`, and *complete* when, in addition, joins of any initial run of
//! values and meets of any final run stay initial and final runs.
//!
//! Complete valuations are in bijection with posets of order dimension at
//! most two equipped with a realizer `(Λ1, Λ2)`:
//!
//! * [`realizer::complete_valuation`] builds the valuation whose weight at `x`
//!   counts the chains of the complementary poset ending at `x`;
//! * [`realizer::extract_realizer`] recovers `(Λ1, Λ2)` from a complete
//!   valuation by sorting cone values.
//!
//! ```
//! use latval::{Poset, Realizer, realizer};
//!
//! let p = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")])?;
//! let r = Realizer::from_names(&p, &["b", "d", "a", "c"], &["a", "b", "c", "d"])?;
//! let (lattice, v) = realizer::complete_valuation(&p, &r)?;
//! assert_eq!(v.value(lattice.top()), 7);
//! assert_eq!(realizer::extract_realizer(&lattice, &v)?, r);
//! # Ok::<(), latval::Error>(())
//! ```
//!
//! The [`oracle`] module holds brute-force counterparts used to test the
//! fast paths, and the exhaustive weight searches.

pub mod birkhoff;
pub mod dot;
mod error;
pub mod io;
pub mod oracle;
pub mod poset;
pub mod realizer;
mod set;
pub mod valuation;

#[cfg(test)]
mod fixtures;

pub use birkhoff::{Antichain, DownsetLattice};
pub use error::{Error, Result};
pub use poset::{complementary_poset, Complement, LinearExtension, Poset, Realizer};
pub use set::ElementSet;
pub use valuation::{DualValuation, Valuation, WeightFunction};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/posets.md")]
    mod posets {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/valuations.md")]
    mod valuations {}
    #[doc = include_str!("../../../book/src/realizers.md")]
    mod realizers {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
