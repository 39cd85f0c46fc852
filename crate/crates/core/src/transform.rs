//! Structural operations on colored graphs: induced subgraphs, the two kinds
//! of complementation, blow-ups and their detection, joins and unions.

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::profile::is_clique_union;

/// The subgraph induced on `s`; vertex `i` of the result is `s[i]`.
pub fn induced_subgraph(g: &ColoredGraph, s: &[usize]) -> Result<ColoredGraph> {
    let mut seen = VertexSet::new();
    for &v in s {
        if v >= g.n() || seen.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        seen.insert(v);
    }
    Ok(induced_unchecked(g, s))
}

pub(crate) fn induced_unchecked(g: &ColoredGraph, s: &[usize]) -> ColoredGraph {
    let mut h = ColoredGraph::edgeless(s.iter().map(|&v| g.color(v)).collect());
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if g.adjacent(s[i], s[j]) {
                h.add_edge(i, j);
            }
        }
    }
    h
}

/// The graph with every red-blue pair's adjacency flipped.
pub fn cross_complement(g: &ColoredGraph) -> ColoredGraph {
    let mut h = g.clone();
    for u in g.class(Color::Red).iter() {
        for v in g.class(Color::Blue).iter() {
            h.set_edge(u, v, !g.adjacent(u, v));
        }
    }
    h
}

/// The graph with adjacency inside color class `c` flipped.
pub fn class_complement(g: &ColoredGraph, c: Color) -> ColoredGraph {
    let mut h = g.clone();
    let class: Vec<usize> = g.class(c).iter().collect();
    for (i, &u) in class.iter().enumerate() {
        for &v in &class[i + 1..] {
            h.set_edge(u, v, !g.adjacent(u, v));
        }
    }
    h
}

/// Exchanges red and blue.
pub fn swap_colors(g: &ColoredGraph) -> ColoredGraph {
    let mut h = ColoredGraph::edgeless(g.colors().iter().map(|c| c.other()).collect());
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    h
}

/// Replaces every vertex of color `c` by `i` mutually adjacent twins that
/// inherit the original's neighborhood: `g[c] = h[c] · K_i`.
///
/// The copies of vertex `u` are numbered consecutively in vertex order. Class
/// `c` must be a disjoint union of cliques; for an independent class this is
/// exactly the classical blow-up.
pub fn blow_up(h: &ColoredGraph, c: Color, i: usize) -> Result<ColoredGraph> {
    if i < 2 {
        return Err(Error::BlowUpFactor(i));
    }
    if !is_clique_union(h, c) {
        return Err(Error::NotCliqueUnion { color: c });
    }
    let mut colors = Vec::new();
    // copies[u] = range of new ids for old vertex u
    let mut copies = Vec::with_capacity(h.n());
    for u in h.vertices() {
        let k = if h.color(u) == c { i } else { 1 };
        copies.push(colors.len()..colors.len() + k);
        colors.extend(std::iter::repeat_n(h.color(u), k));
    }
    let mut g = ColoredGraph::edgeless(colors);
    for u in h.vertices() {
        let cu = copies[u].clone();
        for x in cu.clone() {
            for y in cu.clone().filter(|&y| y > x) {
                g.add_edge(x, y);
            }
        }
    }
    for (u, v) in h.edges() {
        for x in copies[u].clone() {
            for y in copies[v].clone() {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// A blow-up decomposition: `g ≅ blow_up(base, color, factor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    pub base: ColoredGraph,
    pub color: Color,
    pub factor: usize,
    /// For each base vertex, the vertices of `g` it stands for.
    pub groups: Vec<Vec<usize>>,
}

/// Adjacent-twin classes of color `c`: vertices with equal closed
/// neighborhoods. Groups are listed by smallest member.
pub fn twin_classes(g: &ColoredGraph, c: Color) -> Vec<Vec<usize>> {
    let mut by_closed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in g.class(c).iter() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        by_closed.entry(closed.iter().collect()).or_default().push(v);
    }
    let mut groups: Vec<Vec<usize>> = by_closed.into_values().collect();
    groups.sort_by_key(|grp| grp[0]);
    groups
}

/// Finds a color whose vertices split into adjacent-twin classes of one common
/// size `i >= 2` and collapses each class to a single vertex. Red is tried
/// first. The factor returned is the full twin-class size, so it is maximal.
pub fn detect_blow_up(g: &ColoredGraph) -> Result<Option<BlowUp>> {
    for c in Color::ALL {
        if !is_clique_union(g, c) {
            return Err(Error::NotCliqueUnion { color: c });
        }
    }
    for c in Color::ALL {
        let groups = twin_classes(g, c);
        let Some(first) = groups.first() else { continue };
        let size = first.len();
        if size < 2 || groups.iter().any(|grp| grp.len() != size) {
            continue;
        }
        // base keeps the first copy of every group and every vertex of the
        // other color, in original order
        let mut keep: Vec<usize> = g.class(c.other()).iter().collect();
        keep.extend(groups.iter().map(|grp| grp[0]));
        keep.sort_unstable();
        let base = induced_unchecked(g, &keep);
        let mut rep_groups: BTreeMap<usize, Vec<usize>> = groups.iter().map(|grp| (grp[0], grp.clone())).collect();
        let groups = keep.iter().map(|&v| rep_groups.remove(&v).unwrap_or_else(|| vec![v])).collect();
        return Ok(Some(BlowUp { base, color: c, factor: size, groups }));
    }
    Ok(None)
}

/// Vertices of `g` come first, then those of `h` shifted by `g.n()`.
pub fn disjoint_union(g: &ColoredGraph, h: &ColoredGraph) -> ColoredGraph {
    let off = g.n();
    let mut colors = g.colors().to_vec();
    colors.extend_from_slice(h.colors());
    let mut out = ColoredGraph::edgeless(colors);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + off, v + off);
    }
    out
}

/// Disjoint union plus every edge between `g` and `h`.
pub fn join(g: &ColoredGraph, h: &ColoredGraph) -> ColoredGraph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, g.n() + v);
        }
    }
    out
}
