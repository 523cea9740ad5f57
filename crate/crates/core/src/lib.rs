//! Exact-arithmetic workbench for ribbon graph complexes and ribbon
//! quivers: enumeration of generators up to isomorphism with signs,
//! combinatorial differentials, exact cohomology ranks, a graded Lie
//! bracket on one-boundary complexes, and a dg properad of haired
//! ribbon quivers.

pub mod cache;
pub mod canon;
pub mod chain;
pub mod decorated;
pub mod enumerate;
pub mod diff;
pub mod family;
pub mod graph;
pub mod liealg;
pub mod matrix;
pub mod orient;
pub mod pcy;
pub mod perm;
pub mod report;
