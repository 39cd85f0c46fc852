//! Induced-subgraph search.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::graph::{ColoredGraph, PartialMap};

/// An induced embedding of `h` into `g`, if `h` is realized in `g`.
pub fn contains_induced(g: &ColoredGraph, h: &ColoredGraph) -> Option<PartialMap> {
    let mut found = None;
    let _ = for_each_embedding(g, h, &[], |t| {
        found = Some(PartialMap::from_targets(t));
        ControlFlow::Break(())
    });
    found
}

pub fn is_realized(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    let mut hit = false;
    let _ = for_each_embedding(g, h, &[], |_| {
        hit = true;
        ControlFlow::Break(())
    });
    hit
}

/// Whether some induced copy of `h` in `g` uses vertex `v`.
pub fn realized_through(g: &ColoredGraph, h: &ColoredGraph, v: usize) -> bool {
    realized_through_avoiding(g, h, v, None)
}

/// Like [`realized_through`], ignoring copies that meet `avoid`.
pub fn realized_through_avoiding(g: &ColoredGraph, h: &ColoredGraph, v: usize, avoid: Option<&VertexSet>) -> bool {
    h.vertices()
        .filter(|&p| h.color(p) == g.color(v))
        .any(|p| embed_avoiding(g, h, &[(p, v)], avoid, |_| ControlFlow::Break(())).is_break())
}

/// Whether some induced copy of `h` in `g` uses both `u` and `v`.
pub fn realized_through_pair(g: &ColoredGraph, h: &ColoredGraph, u: usize, v: usize) -> bool {
    realized_through_pair_avoiding(g, h, u, v, None)
}

/// Like [`realized_through_pair`], ignoring copies that meet `avoid`.
pub fn realized_through_pair_avoiding(
    g: &ColoredGraph,
    h: &ColoredGraph,
    u: usize,
    v: usize,
    avoid: Option<&VertexSet>,
) -> bool {
    let adj = g.adjacent(u, v);
    for p in h.vertices().filter(|&p| h.color(p) == g.color(u)) {
        for q in h.vertices().filter(|&q| q != p && h.color(q) == g.color(v)) {
            if h.adjacent(p, q) != adj {
                continue;
            }
            if embed_avoiding(g, h, &[(p, u), (q, v)], avoid, |_| ControlFlow::Break(())).is_break() {
                return true;
            }
        }
    }
    false
}

/// Visits every induced embedding of `h` into `g` that extends `pins`
/// (pairs pattern vertex -> host vertex), passing the target vector.
pub fn for_each_embedding<B>(
    g: &ColoredGraph,
    h: &ColoredGraph,
    pins: &[(usize, usize)],
    f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    embed_avoiding(g, h, pins, None, f)
}

/// [`for_each_embedding`] restricted to host vertices outside `avoid`.
pub fn embed_avoiding<B>(
    g: &ColoredGraph,
    h: &ColoredGraph,
    pins: &[(usize, usize)],
    avoid: Option<&VertexSet>,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let k = h.n();
    if k > g.n() {
        return ControlFlow::Continue(());
    }
    let mut targets = vec![usize::MAX; k];
    let mut used = avoid.cloned().unwrap_or_else(|| VertexSet::with_capacity(g.n()));
    for &(p, v) in pins {
        if p >= k || v >= g.n() || h.color(p) != g.color(v) || used.contains(v) {
            return ControlFlow::Continue(());
        }
        if targets[p] != usize::MAX {
            return ControlFlow::Continue(());
        }
        targets[p] = v;
        used.insert(v);
    }
    for &(p, v) in pins {
        for &(q, w) in pins {
            if p < q && h.adjacent(p, q) != g.adjacent(v, w) {
                return ControlFlow::Continue(());
            }
        }
    }
    // Free pattern vertices, most-connected-to-already-ordered first.
    let mut order = Vec::with_capacity(k);
    let mut placed: Vec<bool> = targets.iter().map(|&t| t != usize::MAX).collect();
    while order.len() + pins.len() < k {
        let next = (0..k)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = (0..k).filter(|&q| placed[q] && h.adjacent(p, q)).count();
                (links, h.degree(p), usize::MAX - p)
            })
            .expect("a free vertex remains");
        placed[next] = true;
        order.push(next);
    }
    extend(g, h, &order, 0, &mut targets, &mut used, &mut f)
}

fn extend<B>(
    g: &ColoredGraph,
    h: &ColoredGraph,
    order: &[usize],
    i: usize,
    targets: &mut Vec<usize>,
    used: &mut VertexSet,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let Some(&p) = order.get(i) else {
        return f(targets);
    };
    let mut cand = g.class(h.color(p)).difference(used);
    for (q, &t) in targets.iter().enumerate().take(h.n()) {
        if t == usize::MAX {
            continue;
        }
        if h.adjacent(p, q) {
            cand.intersect_with(g.neighbors(t));
        } else {
            cand.difference_with(g.neighbors(t));
        }
        if cand.is_empty() {
            return ControlFlow::Continue(());
        }
    }
    for v in cand.iter() {
        targets[p] = v;
        used.insert(v);
        let r = extend(g, h, order, i + 1, targets, used, f);
        used.remove(v);
        targets[p] = usize::MAX;
        r?;
    }
    ControlFlow::Continue(())
}

/// All induced embeddings as target vectors.
pub fn all_embeddings(g: &ColoredGraph, h: &ColoredGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_embedding::<()>(g, h, &[], |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{Pattern, PatternName};

    fn brute_force(g: &ColoredGraph, h: &ColoredGraph) -> bool {
        // every injective map from V(h) to V(g), checked in full
        fn go(g: &ColoredGraph, h: &ColoredGraph, t: &mut Vec<usize>) -> bool {
            if t.len() == h.n() {
                return PartialMap::from_targets(t).is_embedding(h, g);
            }
            for v in 0..g.n() {
                if !t.contains(&v) {
                    t.push(v);
                    if go(g, h, t) {
                        return true;
                    }
                    t.pop();
                }
            }
            false
        }
        go(g, h, &mut Vec::new())
    }

    #[test]
    fn triangle_in_d_not_in_dtilde() {
        let d = Pattern::named(PatternName::D).graph;
        let dt = Pattern::named(PatternName::DTilde).graph;
        let tr = Pattern::named(PatternName::Tr).graph;
        let m = contains_induced(&d, &tr).unwrap();
        assert!(m.is_embedding(&tr, &d));
        assert!(contains_induced(&dt, &tr).is_none());
        assert!(!brute_force(&dt, &tr));
        assert!(brute_force(&d, &tr));
    }

    #[test]
    fn empty_pattern_embeds() {
        let d = Pattern::named(PatternName::D).graph;
        let m = contains_induced(&d, &ColoredGraph::empty()).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn through_vertex() {
        // red edge 0-1 plus isolated red 2
        let g = ColoredGraph::from_spec("rrr", &[(0, 1)]);
        let k2 = ColoredGraph::from_spec("rr", &[(0, 1)]);
        assert!(realized_through(&g, &k2, 0));
        assert!(!realized_through(&g, &k2, 2));
        assert!(realized_through_pair(&g, &k2, 0, 1));
        assert!(!realized_through_pair(&g, &k2, 0, 2));
        assert_eq!(all_embeddings(&g, &k2).len(), 2);
    }
}
