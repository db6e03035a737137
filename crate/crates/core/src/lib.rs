//! Verbal valency lexicon extraction from dependency treebanks, lexicon
//! queries, and a formulaic-versus-baseline object similarity study over a
//! word-vector space.

pub mod casestudy;
pub mod frames;
pub mod lexicon;
pub mod semantics;
pub mod stats;
pub mod treebank;
