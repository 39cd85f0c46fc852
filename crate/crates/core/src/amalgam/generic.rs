//! Search-based amalgamation for any class specification.
//!
//! New vertices of `a2` are placed one at a time. Each is either identified
//! with an unused vertex of the current amalgam that has the right adjacency
//! to the placed part, or added as a new vertex: it joins an existing maximal
//! clique of its color or opens a new one, its adjacency to the placed part
//! is forced, and every remaining cross pair is decided by backtracking.
//! Forbidden patterns are checked incrementally on the decided part, and a
//! dead end in a later vertex backtracks into earlier ones, so the search is
//! exhaustive.

use super::{AmalgamProblem, AmalgamResult, Partial};
use crate::error::Result;
use crate::graph::ColoredGraph;
use crate::profile::clique_partition;
use crate::spec::ClassSpec;
use crate::transform::induced_unchecked;

pub fn generic_amalgam(spec: &ClassSpec, p: &AmalgamProblem) -> Result<Option<AmalgamResult>> {
    p.validate(Some(spec))?;
    let order = p.new_vertices();
    let mut cur = Partial::start(p);
    if place(spec, p, &order, 0, &mut cur) {
        Ok(Some(cur.finish(p)))
    } else {
        Ok(None)
    }
}

fn place(spec: &ClassSpec, p: &AmalgamProblem, order: &[usize], i: usize, cur: &mut Partial) -> bool {
    let Some(&v) = order.get(i) else { return true };
    let a2 = &p.a2;
    let color = a2.color(v);
    let n = cur.a.n();
    // forced[w] = required adjacency of v's image to w, for w in the image
    let mut forced: Vec<Option<bool>> = vec![None; n];
    for (x, w) in cur.phi.pairs().to_vec() {
        forced[w] = Some(a2.adjacent(x, v));
    }
    let used: Vec<bool> = forced.iter().map(Option::is_some).collect();

    // identification
    let candidates: Vec<usize> = cur.a.class(color).iter().collect();
    for w in candidates {
        if used[w] {
            continue;
        }
        let fits = (0..n).all(|u| forced[u].is_none_or(|f| cur.a.adjacent(u, w) == f));
        if fits {
            cur.phi.insert(v, w);
            if place(spec, p, order, i + 1, cur) {
                return true;
            }
            cur.phi = remove_pair(&cur.phi, v);
        }
    }

    // new vertex: clique placements
    let cliques = clique_partition(&cur.a, color).expect("current amalgam is in the class");
    let must: Vec<usize> = cur.a.class(color).iter().filter(|&w| forced[w] == Some(true)).collect();
    let mut options: Vec<Vec<usize>> = Vec::new();
    for c in &cliques {
        let ok_forced = c.iter().all(|&w| forced[w] != Some(false)) && must.iter().all(|w| c.contains(w));
        if ok_forced && spec.max_clique_size(color).allows(c.len() + 1) {
            options.push(c.clone());
        }
    }
    if must.is_empty() && spec.max_clique_count(color).allows(cliques.len() + 1) {
        options.push(Vec::new());
    }
    // cross pairs: forced ones are fixed, free ones are searched
    let other = color.other();
    let fixed_cross: Vec<usize> = cur.a.class(other).iter().filter(|&w| forced[w] == Some(true)).collect();
    let free: Vec<usize> = cur.a.class(other).iter().filter(|&w| forced[w].is_none()).collect();

    for same in options {
        let saved = cur.clone();
        let w = cur.a.push_vertex(color);
        for &u in same.iter().chain(&fixed_cross) {
            cur.a.add_edge(u, w);
        }
        cur.phi.insert(v, w);
        if decide_cross(spec, p, order, i, cur, w, &free, 0) {
            return true;
        }
        *cur = saved;
    }
    false
}

/// Vertices of the current amalgam whose adjacency to `w` is settled.
fn settled(a: &ColoredGraph, w: usize, undecided: &[usize]) -> Vec<usize> {
    (0..a.n()).filter(|u| *u == w || !undecided.contains(u)).collect()
}

#[allow(clippy::too_many_arguments)]
fn decide_cross(
    spec: &ClassSpec,
    p: &AmalgamProblem,
    order: &[usize],
    i: usize,
    cur: &mut Partial,
    w: usize,
    free: &[usize],
    k: usize,
) -> bool {
    let keep = settled(&cur.a, w, &free[k..]);
    let sub = induced_unchecked(&cur.a, &keep);
    let wi = keep.iter().position(|&x| x == w).expect("w is kept");
    let ok = if k == 0 {
        spec.member_through(&sub, wi)
    } else {
        let ui = keep.iter().position(|&x| x == free[k - 1]).expect("decided vertex is kept");
        spec.member_through_pair(&sub, ui, wi)
    };
    if !ok {
        return false;
    }
    let Some(&u) = free.get(k) else {
        return place(spec, p, order, i + 1, cur);
    };
    for edge in [false, true] {
        cur.a.set_edge(u, w, edge);
        if decide_cross(spec, p, order, i, cur, w, free, k + 1) {
            return true;
        }
    }
    cur.a.remove_edge(u, w);
    false
}

fn remove_pair(m: &crate::graph::PartialMap, x: usize) -> crate::graph::PartialMap {
    crate::graph::PartialMap::from_pairs(m.pairs().iter().copied().filter(|&(a, _)| a != x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::one_point_problems;
    use crate::amalgam::{amalgam_f21, amalgam_f22};
    use crate::graph::{CliqueBound, Color, PartialMap};
    use crate::pattern::PatternName;
    use crate::spec::Family;

    /// Every graph on the disjoint union of `a1` and the new vertices of
    /// `a2`, with every way of identifying new vertices with unused `a1`
    /// vertices, checked in full.
    fn brute_force_exists(spec: &ClassSpec, p: &AmalgamProblem) -> bool {
        let news = p.new_vertices();
        let to_a1 = p.a2_to_a1();
        let unused: Vec<usize> = (0..p.a1.n()).filter(|w| !to_a1.image().any(|x| x == *w)).collect();
        fn assign(
            spec: &ClassSpec,
            p: &AmalgamProblem,
            news: &[usize],
            unused: &[usize],
            i: usize,
            map: &mut PartialMap,
            fresh: &mut Vec<usize>,
        ) -> bool {
            if i == news.len() {
                return complete(spec, p, map, fresh);
            }
            let v = news[i];
            for &w in unused {
                if p.a2.color(v) == p.a1.color(w) && !map.image().any(|x| x == w) {
                    map.insert(v, w);
                    if assign(spec, p, news, unused, i + 1, map, fresh) {
                        return true;
                    }
                    *map = remove_pair(map, v);
                }
            }
            fresh.push(v);
            let ok = assign(spec, p, news, unused, i + 1, map, fresh);
            fresh.pop();
            ok
        }
        fn complete(spec: &ClassSpec, p: &AmalgamProblem, map: &PartialMap, fresh: &[usize]) -> bool {
            let n1 = p.a1.n();
            let mut base = p.a1.clone();
            let mut kappa2 = map.clone();
            for (k, &v) in fresh.iter().enumerate() {
                base.push_vertex(p.a2.color(v));
                kappa2.insert(v, n1 + k);
            }
            // pairs involving a fresh vertex, minus those fixed by a2
            let mut pairs = Vec::new();
            for x in n1..base.n() {
                for y in 0..x {
                    let fixed = kappa2.inverse().get(x).zip(kappa2.inverse().get(y));
                    match fixed {
                        Some((a, b)) => base.set_edge(x, y, p.a2.adjacent(a, b)),
                        None => pairs.push((x, y)),
                    }
                }
            }
            (0u64..1 << pairs.len()).any(|mask| {
                let mut a = base.clone();
                for (k, &(x, y)) in pairs.iter().enumerate() {
                    a.set_edge(x, y, mask >> k & 1 == 1);
                }
                let r = AmalgamResult { a, kappa1: PartialMap::identity(n1), kappa2: kappa2.clone() };
                r.validate(p, Some(spec)).is_ok()
            })
        }
        let mut map = to_a1;
        assign(spec, p, &news, &unused, 0, &mut map, &mut Vec::new())
    }

    #[test]
    fn agrees_with_specialized_engines() {
        for (family, engine) in
            [(Family::F21, amalgam_f21 as fn(&AmalgamProblem) -> Result<AmalgamResult>), (Family::F22, amalgam_f22)]
        {
            let spec = family.spec();
            for p in &one_point_problems(&spec, 4) {
                engine(p).unwrap().validate(p, Some(&spec)).unwrap();
                let r = generic_amalgam(&spec, p).unwrap().expect("generic engine finds an amalgam");
                r.validate(p, Some(&spec)).unwrap();
            }
        }
    }

    #[test]
    fn identification_rescues_conflicting_caps() {
        // no red edge and no two non-adjacent reds: at most one red vertex
        let spec = ClassSpec::cuh()
            .with_max_clique_size(Color::Red, CliqueBound::Finite(1))
            .forbid(PatternName::Kbar(Color::Red, 2));
        let r1 = ColoredGraph::from_spec("r", &[]);
        let p = AmalgamProblem::new(ColoredGraph::empty(), r1.clone(), r1, PartialMap::new(), PartialMap::new());
        let r = generic_amalgam(&spec, &p).unwrap().unwrap();
        assert_eq!(r.a.n(), 1);
    }

    #[test]
    fn absent_results_confirmed_by_brute_force() {
        // Forbidding red K2 and red K2-bar with two distinct reds over a blue
        // vertex that sees exactly one of them has no amalgam.
        let spec = ClassSpec::cuh()
            .with_max_clique_size(Color::Red, CliqueBound::Finite(1))
            .forbid(PatternName::Kbar(Color::Red, 2));
        let j = ColoredGraph::from_spec("b", &[]);
        let a1 = ColoredGraph::from_spec("br", &[(0, 1)]);
        let a2 = ColoredGraph::from_spec("br", &[]);
        let p = AmalgamProblem::new(j, a1, a2, PartialMap::identity(1), PartialMap::identity(1));
        assert!(generic_amalgam(&spec, &p).unwrap().is_none());
        assert!(!brute_force_exists(&spec, &p));
    }

    #[test]
    fn completeness_against_brute_force_on_capped_class() {
        // a class without amalgamation: red cliques of size exactly <= 3 with
        // D forbidden; every verdict must match brute force
        let spec = ClassSpec::cuh().with_max_clique_size(Color::Red, CliqueBound::Finite(3)).forbid(PatternName::D);
        for p in &one_point_problems(&spec, 4) {
            let got = generic_amalgam(&spec, p).unwrap();
            assert_eq!(got.is_some(), brute_force_exists(&spec, p), "{p:?}");
        }
    }
}
