//! Finite approximants of Fraïssé limits of ultrahomogeneous 2-colored graphs
//! whose color classes are disjoint unions of cliques, together with the
//! amalgamation engines that build them and a classifier that names them.

pub mod amalgam;
pub mod bitset;
pub mod builder;
pub mod classify;
pub mod design;
pub mod embed;
pub mod error;
pub mod graph;
pub mod homogeneity;
pub mod io;
pub mod iso;
pub mod omitted;
pub mod pattern;
pub mod profile;
pub mod scan;
pub mod spec;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{CliqueBound, Color, ColoredGraph, PartialMap};
