//! Deciding whether a product of Grassmannian Schubert classes vanishes.
//!
//! Three independent routes are provided:
//!
//! * [`horn`]: the recursive Horn-inequality criterion, plus a brute-force
//!   Littlewood–Richardson expansion ([`lr`]);
//! * [`tangent`]: randomized exact transversality of generic tangent spaces
//!   over a large prime field ([`exactla`]);
//! * [`witness`]: for a vanishing product, a kernel-descent search that
//!   returns a certified violated Horn inequality.

pub mod diagram;
pub mod error;
pub mod exactla;
pub mod horn;
pub mod lr;
pub mod parse;
pub mod strings;
pub mod tangent;
pub mod witness;

pub use error::{Error, Result};
