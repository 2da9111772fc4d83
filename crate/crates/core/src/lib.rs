//! Minimum cycle bases of weighted partial 2-trees via lex short cycles.
//!
//! A lex shortest path orders candidate paths by weight, then edge count,
//! then the smaller minimum vertex in the symmetric difference; a cycle is
//! lex short when it contains the lex shortest path between every pair of
//! its vertices. On connected weighted partial 2-trees (treewidth at most
//! two) the lex short cycles number exactly `m - n + 1` and form a minimum
//! cycle basis; this crate computes them, checks the structural facts they
//! rest on against brute-force oracles, and exposes everything through the
//! `lexcycle` CLI.

pub mod cli;
pub mod cycle;
pub mod generate;
pub mod graph;
pub mod lexpath;
pub mod lsc;
pub mod mcb;
pub mod structure;
