//! Isomorph-free enumeration, realized and minimally omitted graphs.
//!
//! Graphs are generated one vertex at a time: every graph on `m + 1`
//! vertices all of whose one-vertex deletions lie in a hereditary family is a
//! one-vertex extension of a member on `m` vertices, so extending the
//! previous level and deduplicating by canonical code enumerates each level
//! exactly once up to isomorphism.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{for_each_embedding, is_realized};
use crate::graph::{Color, ColoredGraph};
use crate::iso::{canonical_form, CanonCode};
use crate::pattern::identify;
use crate::spec::ClassSpec;
use crate::transform::{cross_complement, induced_unchecked};

/// Which vertex colors enumeration may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Palette {
    #[default]
    Both,
    Only(Color),
}

impl Palette {
    fn colors(self) -> Vec<Color> {
        match self {
            Palette::Both => Color::ALL.to_vec(),
            Palette::Only(c) => vec![c],
        }
    }
}

/// Every one-vertex extension of `g` by a vertex of a palette color, the new
/// vertex last.
pub fn one_vertex_extensions(g: &ColoredGraph, palette: Palette) -> Vec<ColoredGraph> {
    let n = g.n();
    let mut out = Vec::new();
    for c in palette.colors() {
        for mask in 0u64..(1u64 << n) {
            let mut h = g.clone();
            let v = h.push_vertex(c);
            for u in 0..n {
                if mask >> u & 1 == 1 {
                    h.add_edge(u, v);
                }
            }
            out.push(h);
        }
    }
    out
}

/// Canonical representatives, keyed and ordered by code.
pub type Level = BTreeMap<CanonCode, ColoredGraph>;

fn canonical_level(graphs: impl IntoIterator<Item = ColoredGraph>) -> Level {
    let mut level = Level::new();
    for g in graphs {
        let c = canonical_form(&g);
        level.entry(c.code.clone()).or_insert_with(|| g.permuted(&c.positions()));
    }
    level
}

fn deletions(g: &ColoredGraph) -> impl Iterator<Item = ColoredGraph> + '_ {
    (0..g.n()).map(move |i| {
        let keep: Vec<usize> = (0..g.n()).filter(|&v| v != i).collect();
        induced_unchecked(g, &keep)
    })
}

/// The members of `spec` with at most `n` vertices, up to isomorphism,
/// grouped by vertex count.
pub fn enumerate_class(spec: &ClassSpec, n: usize) -> Vec<Vec<ColoredGraph>> {
    let mut levels: Vec<Level> = vec![canonical_level([ColoredGraph::empty()])];
    for m in 1..=n {
        let prev = &levels[m - 1];
        let cands: Vec<ColoredGraph> = prev.values().flat_map(|g| one_vertex_extensions(g, Palette::Both)).collect();
        let mut next = canonical_level(cands);
        next.retain(|_, g| spec.member(g));
        levels.push(next);
    }
    levels.into_iter().map(|l| l.into_values().collect()).collect()
}

/// Canonical codes of the graphs on at most `k` vertices that are not members
/// of `spec` while every one-vertex deletion is. For a host with the
/// `k`-extension property in `spec` these are exactly its minimally omitted
/// graphs up to `k` vertices.
pub fn minimal_non_members(spec: &ClassSpec, k: usize) -> Vec<(CanonCode, ColoredGraph)> {
    let mut members: Level = canonical_level([ColoredGraph::empty()]);
    let mut out = Vec::new();
    for _ in 1..=k {
        let cands = canonical_level(members.values().flat_map(|g| one_vertex_extensions(g, Palette::Both)));
        let mut next = Level::new();
        for (code, h) in cands {
            if spec.member(&h) {
                next.insert(code, h);
            } else if deletions(&h).all(|d| members.contains_key(&canonical_form(&d).code)) {
                out.push((code, h));
            }
        }
        members = next;
    }
    out.sort_by(|a, b| (a.1.n(), &a.0).cmp(&(b.1.n(), &b.0)));
    out
}

/// A minimally omitted graph with, for each vertex `i`, an embedding of the
/// graph minus `i` into the host.
#[derive(Clone, Debug, Serialize)]
pub struct OmittedMember {
    #[serde(serialize_with = "ser_graph_text")]
    pub graph: ColoredGraph,
    pub name: Option<String>,
    /// `witnesses[i]` maps the vertices of the graph minus vertex `i`, in
    /// order, to host vertices.
    pub witnesses: Vec<Vec<usize>>,
    #[serde(skip)]
    pub code: CanonCode,
}

fn ser_graph_text<S: serde::Serializer>(g: &ColoredGraph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::io::write_graph_text(g))
}

/// The minimally omitted graphs of a host up to a vertex bound.
#[derive(Clone, Debug, Serialize)]
pub struct OmittedSet {
    pub bound: usize,
    pub palette: Palette,
    /// Extension level certified for the host, when it is an approximant.
    pub host_level: Option<usize>,
    pub members: Vec<OmittedMember>,
}

impl OmittedSet {
    pub fn codes(&self) -> Vec<CanonCode> {
        self.members.iter().map(|m| m.code.clone()).collect()
    }

    pub fn contains(&self, h: &ColoredGraph) -> bool {
        let code = canonical_form(h).code;
        self.members.iter().any(|m| m.code == code)
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|m| m.name.clone().unwrap_or_else(|| crate::io::write_graph_text(&m.graph))).collect()
    }
}

fn witness(host: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_embedding(host, h, &[], |t| {
        found = Some(t.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// The graphs on at most `k` vertices (colors from `palette`) that are
/// omitted in `g` while every proper induced subgraph is realized.
pub fn minimally_omitted(g: &ColoredGraph, k: usize, palette: Palette) -> OmittedSet {
    let mut realized: Level = canonical_level([ColoredGraph::empty()]);
    let mut members = Vec::new();
    for _ in 1..=k {
        let cands = canonical_level(realized.values().flat_map(|h| one_vertex_extensions(h, palette)));
        let cands: Vec<(CanonCode, ColoredGraph)> = cands.into_iter().collect();
        let verdicts: Vec<bool> = cands.par_iter().map(|(_, h)| is_realized(g, h)).collect();
        let mut next = Level::new();
        for ((code, h), hit) in cands.into_iter().zip(verdicts) {
            if hit {
                next.insert(code, h);
                continue;
            }
            let all_deletions_realized = deletions(&h).all(|d| realized.contains_key(&canonical_form(&d).code));
            if all_deletions_realized {
                let witnesses = deletions(&h).map(|d| witness(g, &d).expect("deletion is realized")).collect();
                members.push(OmittedMember { name: identify(&h).map(|n| n.to_string()), graph: h, witnesses, code });
            }
        }
        realized = next;
    }
    members.sort_by(|a, b| (a.graph.n(), &a.code).cmp(&(b.graph.n(), &b.code)));
    OmittedSet { bound: k, palette, host_level: None, members }
}

/// A member whose color class breaks the twin structure required of omitted graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureViolation {
    pub member: usize,
    pub color: Color,
}

/// For every member with both colors and each color `c`, the class `H_c`
/// must be a clique of mutual twins of size at least three, a `K_2`, or an
/// independent set.
pub fn check_omitted_structure(o: &OmittedSet) -> Vec<StructureViolation> {
    let mut out = Vec::new();
    for (i, m) in o.members.iter().enumerate() {
        let h = &m.graph;
        if h.is_monochromatic() {
            continue;
        }
        for c in Color::ALL {
            let class: Vec<usize> = h.class(c).iter().collect();
            let s = class.len();
            let edges = class
                .iter()
                .enumerate()
                .map(|(j, &u)| class[j + 1..].iter().filter(|&&v| h.adjacent(u, v)).count())
                .sum::<usize>();
            let independent = edges == 0;
            let clique = edges == s * (s.saturating_sub(1)) / 2;
            let twin_clique = clique && s >= 3 && class.iter().all(|&u| class.iter().all(|&v| u == v || h.twins(u, v)));
            if !(independent || (clique && s == 2) || twin_clique) {
                out.push(StructureViolation { member: i, color: c });
            }
        }
    }
    out
}

/// Whether `o_gt` is exactly the cross complement of `o_g`.
pub fn tilde_consistency(o_g: &OmittedSet, o_gt: &OmittedSet) -> bool {
    let mut mapped: Vec<CanonCode> =
        o_g.members.iter().map(|m| canonical_form(&cross_complement(&m.graph)).code).collect();
    mapped.sort();
    let mut other = o_gt.codes();
    other.sort();
    mapped == other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{Pattern, PatternName};

    #[test]
    fn class_counts_small() {
        // all colored graphs on <= 3 vertices with clique-union classes
        let levels = enumerate_class(&ClassSpec::cuh(), 3);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        // n=1: r, b. n=2: rr(2) bb(2) rb(2). n=3: rrr(3) bbb(3),
        // rrb: red edge or not (2) x blue adj to 0/1/2 reds up to symmetry
        // (3 with red edge, 3 without) = 6, and rbb likewise 6.
        assert_eq!(counts, vec![1, 2, 6, 18]);
    }

    #[test]
    fn single_red_omits_blue() {
        let g = ColoredGraph::from_spec("r", &[]);
        let o = minimally_omitted(&g, 1, Palette::Both);
        assert_eq!(o.names(), vec!["K:blue:1"]);
    }

    #[test]
    fn d_omitted_structure() {
        let o = OmittedSet {
            bound: 4,
            palette: Palette::Both,
            host_level: None,
            members: [PatternName::D, PatternName::DTilde, PatternName::Qr]
                .into_iter()
                .map(|n| {
                    let graph = Pattern::named(n).graph;
                    OmittedMember { code: canonical_form(&graph).code, graph, name: None, witnesses: vec![] }
                })
                .collect(),
        };
        assert!(check_omitted_structure(&o).is_empty());
        let empty = OmittedSet { members: vec![], ..o };
        assert!(check_omitted_structure(&empty).is_empty());
    }
}
