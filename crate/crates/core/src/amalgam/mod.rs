//! Amalgamation problems, their validation, and the engines that solve them.
//!
//! Every engine keeps `a1` as a prefix of the amalgam: `kappa1` is the
//! identity and new vertices are appended. Multi-point problems are solved
//! one vertex of `a2` at a time, reds before blues, then by id.

mod check;
mod f21;
mod f22;
mod generic;

pub use check::{check_amalgamation_property, AmalgamCheck, CheckOptions, Verdict};
pub use f21::amalgam_f21;
pub use f22::amalgam_f22;
pub use generic::generic_amalgam;

use serde::Serialize;

use crate::embed::all_embeddings;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, PartialMap};
use crate::omitted::{enumerate_class, one_vertex_extensions, Palette};
use crate::spec::ClassSpec;

/// Two extensions `iota1: j -> a1`, `iota2: j -> a2` of a common graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamProblem {
    pub j: ColoredGraph,
    pub a1: ColoredGraph,
    pub a2: ColoredGraph,
    pub iota1: PartialMap,
    pub iota2: PartialMap,
}

/// A graph `a` with embeddings of `a1` and `a2` agreeing on `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamResult {
    pub a: ColoredGraph,
    pub kappa1: PartialMap,
    pub kappa2: PartialMap,
}

impl AmalgamProblem {
    pub fn new(j: ColoredGraph, a1: ColoredGraph, a2: ColoredGraph, iota1: PartialMap, iota2: PartialMap) -> Self {
        AmalgamProblem { j, a1, a2, iota1, iota2 }
    }

    /// Checks both embeddings and, given a spec, membership of all three
    /// graphs.
    pub fn validate(&self, spec: Option<&ClassSpec>) -> Result<()> {
        if !self.iota1.is_embedding(&self.j, &self.a1) {
            return Err(Error::InvalidProblem("iota1 is not an induced embedding".into()));
        }
        if !self.iota2.is_embedding(&self.j, &self.a2) {
            return Err(Error::InvalidProblem("iota2 is not an induced embedding".into()));
        }
        if let Some(spec) = spec {
            for (name, g) in [("j", &self.j), ("a1", &self.a1), ("a2", &self.a2)] {
                if !spec.member(g) {
                    return Err(Error::InvalidProblem(format!("{name} is not a member of the class")));
                }
            }
        }
        Ok(())
    }

    /// Vertices of `a2` outside the image of `iota2`, reds first, then by id.
    pub fn new_vertices(&self) -> Vec<usize> {
        let image: Vec<usize> = self.iota2.image().collect();
        let mut out: Vec<usize> = self.a2.vertices().filter(|v| !image.contains(v)).collect();
        out.sort_by_key(|&v| (self.a2.color(v) == Color::Blue, v));
        out
    }

    /// The partial map `a2 -> a1` through `j`.
    pub fn a2_to_a1(&self) -> PartialMap {
        self.iota2.inverse().then(&self.iota1)
    }

    pub fn swap_colors(&self) -> AmalgamProblem {
        use crate::transform::swap_colors;
        AmalgamProblem {
            j: swap_colors(&self.j),
            a1: swap_colors(&self.a1),
            a2: swap_colors(&self.a2),
            iota1: self.iota1.clone(),
            iota2: self.iota2.clone(),
        }
    }
}

impl AmalgamResult {
    /// Commuting square, both embeddings induced, and membership.
    pub fn validate(&self, p: &AmalgamProblem, spec: Option<&ClassSpec>) -> Result<()> {
        if !self.kappa1.is_embedding(&p.a1, &self.a) {
            return Err(Error::Internal("kappa1 is not an induced embedding".into()));
        }
        if !self.kappa2.is_embedding(&p.a2, &self.a) {
            return Err(Error::Internal("kappa2 is not an induced embedding".into()));
        }
        if p.iota1.then(&self.kappa1) != p.iota2.then(&self.kappa2) {
            return Err(Error::Internal("amalgam square does not commute".into()));
        }
        if let Some(spec) = spec {
            if !spec.member(&self.a) {
                return Err(Error::Internal("amalgam leaves the class".into()));
            }
        }
        Ok(())
    }

    pub fn swap_colors(&self) -> AmalgamResult {
        AmalgamResult {
            a: crate::transform::swap_colors(&self.a),
            kappa1: self.kappa1.clone(),
            kappa2: self.kappa2.clone(),
        }
    }
}

/// One step of an induction: the current amalgam of `a1` with the part of
/// `a2` placed so far, `phi` mapping that part into it.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    pub a: ColoredGraph,
    pub phi: PartialMap,
}

/// How a one-point engine places the new vertex `v` of `a2`.
pub(crate) enum Placement {
    /// `v` goes to an existing vertex of the current amalgam.
    Identify(usize),
    /// `v` becomes a new vertex with exactly these neighbors.
    New { color: Color, neighbors: Vec<usize> },
}

impl Partial {
    pub fn start(p: &AmalgamProblem) -> Partial {
        Partial { a: p.a1.clone(), phi: p.a2_to_a1() }
    }

    pub fn apply(&mut self, v: usize, placement: Placement) {
        match placement {
            Placement::Identify(w) => self.phi.insert(v, w),
            Placement::New { color, neighbors } => {
                let w = self.a.push_vertex(color);
                for u in neighbors {
                    self.a.add_edge(u, w);
                }
                self.phi.insert(v, w);
            }
        }
    }

    pub fn finish(self, p: &AmalgamProblem) -> AmalgamResult {
        AmalgamResult { kappa1: PartialMap::identity(p.a1.n()), kappa2: self.phi, a: self.a }
    }
}

/// Runs a one-point engine for every new vertex in order.
pub(crate) fn by_induction(
    p: &AmalgamProblem,
    mut step: impl FnMut(&AmalgamProblem, &Partial, usize) -> Result<Placement>,
) -> Result<AmalgamResult> {
    let mut cur = Partial::start(p);
    for v in p.new_vertices() {
        let placement = step(p, &cur, v)?;
        cur.apply(v, placement);
    }
    Ok(cur.finish(p))
}

/// Every one-point problem of `spec` with `|a1| <= max_a1`: `a2` is `j`
/// plus one vertex, and `j` ranges over all embeddings into each `a1`.
pub fn one_point_problems(spec: &ClassSpec, max_a1: usize) -> Vec<AmalgamProblem> {
    let levels = enumerate_class(spec, max_a1);
    let mut out = Vec::new();
    for a1s in &levels {
        for a1 in a1s {
            for jl in &levels[..=a1.n()] {
                for j in jl {
                    let embeds = all_embeddings(a1, j);
                    if embeds.is_empty() {
                        continue;
                    }
                    for a2 in one_vertex_extensions(j, Palette::Both) {
                        if !spec.member(&a2) {
                            continue;
                        }
                        for e in &embeds {
                            out.push(AmalgamProblem::new(
                                j.clone(),
                                a1.clone(),
                                a2.clone(),
                                PartialMap::from_targets(e),
                                PartialMap::identity(j.n()),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}
