//! Graph curves of 3-regular three-connected planar graphs: canonical
//! embeddings, their tropicalizations, and certificates for faithfulness.

pub mod census;
pub mod faithful;
pub mod graph;
pub mod lifting;
pub mod poly;
pub mod schoen;
pub mod transform;
pub mod tropical;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/schoen.md")]
    mod schoen {}
    #[doc = include_str!("../../../book/src/tropical.md")]
    mod tropical {}
    #[doc = include_str!("../../../book/src/faithfulness.md")]
    mod faithfulness {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
