//! Model checking, frame analysis and proof checking for the bimodal
//! neighborhood logic of Fitchean ignorance (`•`, "unknown truth") and
//! first-order ignorance (`∇`, "ignorant whether").
//!
//! ```
//! use nbhd::formula::parse;
//! use nbhd::model::Model;
//! use nbhd::semantics::satisfies;
//!
//! let m = Model::from_json(r#"{
//!     "states": ["s", "t"],
//!     "neighborhoods": {"s": [["t"], ["s", "t"]], "t": []},
//!     "valuation": {"p": ["s"]}
//! }"#).unwrap();
//! assert!(satisfies(&m, "s", &parse("bullet p").unwrap()).unwrap());
//! ```

pub mod cli;
pub mod formula;
pub mod model;
pub mod proofs;
pub mod replication;
pub mod search;
pub mod semantics;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/semantics.md")]
    mod semantics {}
    #[doc = include_str!("../../../book/src/distinguishability.md")]
    mod distinguishability {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    mod proofs {}
    #[doc = include_str!("../../../book/src/replication.md")]
    mod replication {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
