//! Core library for forecasting quantum economic advantage: when, if ever,
//! running an algorithm on a quantum computer becomes cheaper than running
//! its classical counterpart.
//!
//! The pipeline: hardware-trend observations ([`trenddata`]) are fitted to
//! log-linear trends ([`regress`]) and fed through a surface-code overhead
//! model ([`qec`]) into dollar-normalized operation rates ([`hardware`]).
//! Algorithm cost pairs ([`catalog`], written in the [`costlang`] expression
//! language) are then solved for crossover sizes and feasibility bounds
//! ([`advantage`]) and stress-tested with one-at-a-time parameter sweeps
//! ([`sensitivity`]).

pub mod advantage;
pub mod catalog;
pub mod costlang;
pub mod fitting;
pub mod hardware;
pub mod qec;
pub mod regress;
pub mod sensitivity;
pub mod trenddata;
