//! Euler families in hypergraphs.
//!
//! A hypergraph is quasi-eulerian when its edges split into anchor-disjoint
//! closed trails. This crate decides that through a perfect matching in a
//! gadget graph built on the incidence graph, extracts and verifies the
//! trails, builds tours directly for small covering hypergraphs, reduces
//! `l`-covering hypergraphs to 2-covering ones, and audits the Lovász
//! parity-factor condition numerically.
//!
//! ```
//! use eulerfam::{solve_l_covering, verify_family, Hypergraph, Strategy};
//!
//! let h = Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
//! let family = solve_l_covering(&h, 2, Strategy::Direct).unwrap().family.unwrap();
//! assert!(verify_family(&h, &family).is_ok());
//! ```

pub mod analysis;
pub mod covering;
pub mod factor;
pub mod hypercore;
pub mod tooling;
pub mod trails;

pub use covering::{solve_l_covering, CoveringError, CoveringSolution, Strategy};
pub use factor::{brute_force_selection, solve_even_two_factor, FactorSelection};
pub use hypercore::{parse, EdgeId, Hypergraph, HypergraphError, IncidenceGraph, VertexId};
pub use trails::{euler_tour_exact, extract_family, verify_family, ClosedTrail, EulerFamily, TourOutcome};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/hypergraphs.md")]
    mod hypergraphs {}
    #[doc = include_str!("../../../book/src/factors.md")]
    mod factors {}
    #[doc = include_str!("../../../book/src/trails.md")]
    mod trails {}
    #[doc = include_str!("../../../book/src/covering.md")]
    mod covering {}
    #[doc = include_str!("../../../book/src/lovasz.md")]
    mod lovasz {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
