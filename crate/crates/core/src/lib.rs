//! Exact computations with the mod-2 Steenrod algebra and unstable modules.
//!
//! The crate is organized in layers:
//!
//! * [`f2`] — bit-packed linear algebra over GF(2);
//! * [`steenrod`] — admissible normal forms, the Adem rewriter and its
//!   polynomial-action oracle, Wall blocks and finite subalgebras;
//! * [`umod`] — explicit unstable modules on a bounded degree window
//!   (Brown-Gitler modules, free modules, suspensions, the doubling functor)
//!   together with structural operations and duality into `J(n)`;
//! * [`resolve`] — minimal injective and projective resolutions, Ext groups,
//!   and the maps induced by module maps and by the doubling functor;
//! * [`lab`] — recorded resolution tables and dimension formulas plus the
//!   verification procedures that compare engine output against them;
//! * [`modspec`] — the small grammar for naming modules on the command line.

pub mod error;
pub mod f2;
pub mod lab;
pub mod modspec;
pub mod resolve;
pub mod steenrod;
pub mod umod;

pub use error::{Error, Result};
