//! Command-line front end: permissibility survey of graph6 corpora,
//! one-off decision queries, and reports over survey output.

pub mod check;
pub mod input;
pub mod report;
pub mod survey;
