//! Generalized lamplighter groups `Γ_n(R) = A_n(R) ⋊ Z^n` and the
//! horocyclic products of trees `H_n(R)` whose 1-skeletons are their
//! Cayley graphs.
//!
//! The crate provides exact arithmetic in `A_n(R)` for `R = Z` or `Z/m`,
//! the group law, word evaluation and normal forms, the vertex bijection
//! [`trees::phi`] with its inverse, the rank-2 board model, and ball
//! enumeration with checks that compare the two graphs edge by edge.

pub mod an_ring;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod group;
pub mod json;
pub mod lamp2;
pub mod report;
pub mod ring;
pub mod trees;

pub use an_ring::{AnContext, AnElement, Basis, Coordinate, HeightVector, Sign};
pub use error::{Error, Result};
pub use group::{Alphabet, GammaGroup, GroupElement, Letter, PresentationId, Syllable, Word};
pub use ring::{RingElem, RingSpec};
pub use trees::{HnVertex, TreeAddress};
