//! Isomorphism testing and canonical forms.
//!
//! Canonical forms come from an individualization-refinement search: the
//! ordered partition starts as (reds, blues), is refined to the coarsest
//! equitable partition, and non-discrete partitions branch on each vertex of
//! the first smallest non-singleton cell. Twins in that cell lead to identical
//! subtrees, so only one per twin class is tried. Every discrete leaf yields a
//! vertex order and a code; the least code is canonical.

use std::collections::BTreeMap;

use crate::graph::{Color, ColoredGraph, PartialMap};

/// A canonical code: equal codes iff isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode(Vec<u64>);

impl CanonCode {
    pub fn words(&self) -> &[u64] {
        &self.0
    }
}

/// Canonical labeling of a graph.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub code: CanonCode,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

impl Canonical {
    /// The map vertex -> canonical position.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IsoStrategy {
    /// Canonical-form comparison via refinement and backtracking.
    #[default]
    Refine,
    /// Tries every color-preserving bijection. Only for small graphs.
    Exhaustive,
}

fn leaf_code(g: &ColoredGraph, order: &[usize]) -> CanonCode {
    let n = order.len();
    let bits = n + n * n.saturating_sub(1) / 2;
    let mut words = vec![0u64; 1 + bits.div_ceil(64)];
    words[0] = n as u64;
    let mut k = 0;
    let mut put = |words: &mut Vec<u64>, on: bool| {
        if on {
            words[1 + k / 64] |= 1 << (63 - k % 64);
        }
        k += 1;
    };
    for &v in order {
        put(&mut words, g.color(v) == Color::Blue);
    }
    for i in 0..n {
        for j in i + 1..n {
            put(&mut words, g.adjacent(order[i], order[j]));
        }
    }
    CanonCode(words)
}

/// Refines an ordered partition to the coarsest equitable one. Cells split by
/// the number of neighbors in every current cell; the order of the new cells
/// depends only on those counts, so refinement commutes with relabeling.
fn refine(g: &ColoredGraph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(k);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut sig = vec![0u32; k];
                for w in g.neighbors(v).iter() {
                    sig[cell_of[w]] += 1;
                }
                groups.entry(sig).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        let done = next.len() == k;
        *cells = next;
        if done {
            return;
        }
    }
}

fn initial_cells(g: &ColoredGraph) -> Vec<Vec<usize>> {
    Color::ALL.iter().map(|&c| g.class(c).iter().collect::<Vec<_>>()).filter(|c| !c.is_empty()).collect()
}

struct Search<'a> {
    g: &'a ColoredGraph,
    best: Option<(CanonCode, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>) {
        refine(self.g, &mut cells);
        let target =
            cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(ti) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = leaf_code(self.g, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[ti].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.g.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[ti + 1..]);
            self.run(child);
        }
    }
}

pub fn canonical_form(g: &ColoredGraph) -> Canonical {
    if g.is_empty() {
        return Canonical { code: leaf_code(g, &[]), order: Vec::new() };
    }
    let mut s = Search { g, best: None };
    s.run(initial_cells(g));
    let (code, order) = s.best.expect("search reaches a leaf");
    Canonical { code, order }
}

pub fn canonical_code(g: &ColoredGraph) -> CanonCode {
    canonical_form(g).code
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &ColoredGraph) -> ColoredGraph {
    let c = canonical_form(g);
    g.permuted(&c.positions())
}

/// A color- and adjacency-preserving bijection `g -> h`, if one exists.
pub fn is_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> Option<PartialMap> {
    is_isomorphic_with(g, h, IsoStrategy::Refine)
}

pub fn is_isomorphic_with(g: &ColoredGraph, h: &ColoredGraph, strategy: IsoStrategy) -> Option<PartialMap> {
    if g.n() != h.n() || g.class_size(Color::Red) != h.class_size(Color::Red) || g.edge_count() != h.edge_count() {
        return None;
    }
    match strategy {
        IsoStrategy::Refine => {
            let cg = canonical_form(g);
            let ch = canonical_form(h);
            if cg.code != ch.code {
                return None;
            }
            let pairs = cg.order.iter().zip(&ch.order).map(|(&a, &b)| (a, b)).collect();
            Some(PartialMap::from_pairs(pairs))
        }
        IsoStrategy::Exhaustive => exhaustive(g, h),
    }
}

/// Brute-force oracle: every bijection that maps reds to reds and blues to
/// blues is tried and checked in full.
fn exhaustive(g: &ColoredGraph, h: &ColoredGraph) -> Option<PartialMap> {
    let n = g.n();
    let mut targets = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(v: usize, g: &ColoredGraph, h: &ColoredGraph, targets: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if v == g.n() {
            let m = PartialMap::from_targets(targets);
            return m.is_isomorphism(g, h);
        }
        for w in 0..h.n() {
            if used[w] || h.color(w) != g.color(v) {
                continue;
            }
            used[w] = true;
            targets[v] = w;
            if go(v + 1, g, h, targets, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(0, g, h, &mut targets, &mut used).then(|| PartialMap::from_targets(&targets))
}

/// Calls `f` with the target vector of every isomorphism `g -> h` that
/// extends the pinned pairs, until `f` returns `false`. Returns `false` iff
/// stopped early.
pub fn for_each_isomorphism(
    g: &ColoredGraph,
    h: &ColoredGraph,
    pins: &[(usize, usize)],
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    let n = g.n();
    if n != h.n() {
        return true;
    }
    let mut targets = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in pins {
        if g.color(a) != h.color(b) || used[b] || targets[a] != usize::MAX {
            return true;
        }
        targets[a] = b;
        used[b] = true;
    }
    for (i, &(a, b)) in pins.iter().enumerate() {
        for &(c, d) in &pins[..i] {
            if g.adjacent(a, c) != h.adjacent(b, d) {
                return true;
            }
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| targets[v] == usize::MAX).collect();
    iso_extend(g, h, &free, 0, &mut targets, &mut used, &mut f)
}

fn iso_extend(
    g: &ColoredGraph,
    h: &ColoredGraph,
    free: &[usize],
    i: usize,
    targets: &mut Vec<usize>,
    used: &mut Vec<bool>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let Some(&v) = free.get(i) else {
        return f(targets);
    };
    for w in 0..h.n() {
        if used[w] || h.color(w) != g.color(v) || h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent =
            (0..g.n()).filter(|&u| targets[u] != usize::MAX).all(|u| g.adjacent(u, v) == h.adjacent(targets[u], w));
        if !consistent {
            continue;
        }
        used[w] = true;
        targets[v] = w;
        let go_on = iso_extend(g, h, free, i + 1, targets, used, f);
        used[w] = false;
        targets[v] = usize::MAX;
        if !go_on {
            return false;
        }
    }
    true
}

/// All automorphisms as target vectors. Exponential; small graphs only.
pub fn automorphisms(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, g, &[], |t| {
        out.push(t.to_vec());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{Pattern, PatternName};

    #[test]
    fn tr_symmetry_and_tr_vs_tb() {
        let tr = Pattern::named(PatternName::Tr).graph;
        // reds at 0,1 in the catalog; swap their ids
        let swapped = tr.permuted(&[1, 0, 2]);
        let m = is_isomorphic(&tr, &swapped).unwrap();
        assert!(m.is_isomorphism(&tr, &swapped));
        let tb = Pattern::named(PatternName::Tb).graph;
        assert!(is_isomorphic(&tr, &tb).is_none());
        assert!(is_isomorphic_with(&tr, &tb, IsoStrategy::Exhaustive).is_none());
    }

    #[test]
    fn canonical_graph_is_invariant() {
        let d = Pattern::named(PatternName::D).graph;
        let p = d.permuted(&[3, 1, 0, 2]);
        assert_eq!(canonical_graph(&d), canonical_graph(&p));
        assert_eq!(canonical_code(&d), canonical_code(&p));
    }

    #[test]
    fn automorphism_counts() {
        let e = ColoredGraph::from_spec("rrrb", &[]);
        assert_eq!(automorphisms(&e).len(), 6);
        let d = Pattern::named(PatternName::D).graph;
        assert_eq!(automorphisms(&d).len(), 1);
        assert_eq!(automorphisms(&ColoredGraph::empty()).len(), 1);
    }

    #[test]
    fn empty_graphs_are_isomorphic() {
        assert!(is_isomorphic(&ColoredGraph::empty(), &ColoredGraph::empty()).is_some());
    }
}
