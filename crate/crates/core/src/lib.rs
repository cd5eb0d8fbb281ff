//! Lambda terms, SK and X combinator trees: generation, typing, reduction and
//! bijective encodings.

pub mod codec;
pub mod generate;
pub mod lab;
pub mod reduce;
pub mod term;
pub mod treenat;
pub mod typeinf;

pub use term::{BinTree, CompTerm, DbTerm, SkTerm, StdTerm};
