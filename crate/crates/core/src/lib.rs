//! Unit-free multiplicative linear logic proof nets, used as a concrete
//! model of a semi star-autonomous category.
//!
//! * [`formula`]: syntax with explicit negation, leaf addresses, polarity.
//! * [`net`]: proof nets, Danos-Regnier checking, hom-set enumeration.
//! * [`compose`]: identities, composition by path tracing, tensor.
//! * [`canonical`]: associator, symmetry, currying, `psi`, `e`, duality and
//!   friends, each as a concrete net.
//! * [`coherence`]: the diagram-checking harness.
//! * [`dot`]: Graphviz rendering.
//!
//! ```
//! use mll_nets::{compose::compose, formula::parse, net::enumerate_hom};
//!
//! let a = parse("(p * p)")?;
//! let homs = enumerate_hom(&a, &a, 12)?;
//! assert_eq!(homs.len(), 2);
//! // the two nets are the identity and the swap, and the swap squares to the identity
//! assert_eq!(compose(&homs[1], &homs[1])?, homs[0]);
//! # Ok::<(), mll_nets::Error>(())
//! ```

pub mod canonical;
pub mod coherence;
pub mod compose;
pub mod dot;
mod error;
pub mod formula;
pub mod net;

pub use error::{Error, MatchingProblem, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/nets.md")]
    mod nets {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/canonical.md")]
    mod canonical {}
    #[doc = include_str!("../../../book/src/elements.md")]
    mod elements {}
    #[doc = include_str!("../../../book/src/coherence.md")]
    mod coherence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
