//! Model-description language, built-in corpus, and report emission for the
//! `sullivan` command-line driver.

pub mod corpus;
pub mod parser;
pub mod report;
