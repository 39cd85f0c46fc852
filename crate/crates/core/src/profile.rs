//! Per-color clique structure of a colored graph.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::{Color, ColoredGraph};

/// Clique sizes, clique counts and clique partitions of both color classes.
///
/// An empty class has `omega = alpha = 0`. A class that is not a disjoint
/// union of cliques has `p3_free = false`, no partition and `alpha = 0`; its
/// `omega` is still the clique number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorClassProfile {
    pub omega_red: usize,
    pub omega_blue: usize,
    pub alpha_red: usize,
    pub alpha_blue: usize,
    pub red_cliques: Vec<Vec<usize>>,
    pub blue_cliques: Vec<Vec<usize>>,
    pub homogeneously_connected: bool,
    pub p3_free_red: bool,
    pub p3_free_blue: bool,
}

impl ColorClassProfile {
    pub fn omega(&self, c: Color) -> usize {
        match c {
            Color::Red => self.omega_red,
            Color::Blue => self.omega_blue,
        }
    }

    pub fn alpha(&self, c: Color) -> usize {
        match c {
            Color::Red => self.alpha_red,
            Color::Blue => self.alpha_blue,
        }
    }

    pub fn cliques(&self, c: Color) -> &[Vec<usize>] {
        match c {
            Color::Red => &self.red_cliques,
            Color::Blue => &self.blue_cliques,
        }
    }

    pub fn p3_free(&self, c: Color) -> bool {
        match c {
            Color::Red => self.p3_free_red,
            Color::Blue => self.p3_free_blue,
        }
    }
}

pub fn class_profile(g: &ColoredGraph) -> ColorClassProfile {
    let mut omega = [0; 2];
    let mut alpha = [0; 2];
    let mut cliques: [Vec<Vec<usize>>; 2] = Default::default();
    let mut p3 = [false; 2];
    for c in Color::ALL {
        let i = c.index();
        match clique_partition(g, c) {
            Some(parts) => {
                p3[i] = true;
                omega[i] = parts.iter().map(Vec::len).max().unwrap_or(0);
                alpha[i] = parts.len();
                cliques[i] = parts;
            }
            None => omega[i] = clique_number(g, g.class(c)),
        }
    }
    let [red_cliques, blue_cliques] = cliques;
    ColorClassProfile {
        omega_red: omega[0],
        omega_blue: omega[1],
        alpha_red: alpha[0],
        alpha_blue: alpha[1],
        red_cliques,
        blue_cliques,
        homogeneously_connected: is_homogeneously_connected(g),
        p3_free_red: p3[0],
        p3_free_blue: p3[1],
    }
}

/// Whether the class of color `c` induces a disjoint union of cliques, that
/// is, omits the monochromatic `P3`.
pub fn is_clique_union(g: &ColoredGraph, c: Color) -> bool {
    let class = g.class(c);
    class.iter().all(|v| {
        let mut closed = g.neighbors_in(v, c);
        closed.insert(v);
        closed.iter().all(|w| {
            let mut other = g.neighbors_in(w, c);
            other.insert(w);
            other == closed
        })
    })
}

/// The maximal cliques of class `c`, each sorted and listed by smallest
/// vertex, or `None` when the class is not a union of cliques.
pub fn clique_partition(g: &ColoredGraph, c: Color) -> Option<Vec<Vec<usize>>> {
    if !is_clique_union(g, c) {
        return None;
    }
    let mut seen = VertexSet::new();
    let mut parts = Vec::new();
    for v in g.class(c).iter() {
        if seen.contains(v) {
            continue;
        }
        let mut closed = g.neighbors_in(v, c);
        closed.insert(v);
        seen.union_with(&closed);
        parts.push(closed.iter().collect());
    }
    Some(parts)
}

/// Index of the maximal clique containing each vertex of color `c`
/// (`usize::MAX` for the other color). Requires a clique-union class.
pub fn clique_index(g: &ColoredGraph, parts: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            idx[v] = i;
        }
    }
    idx
}

/// All cross edges present, or none. Vacuously true when a class is empty.
pub fn is_homogeneously_connected(g: &ColoredGraph) -> bool {
    let reds = g.class(Color::Red);
    let blues = g.class(Color::Blue);
    let total = reds.len() * blues.len();
    let cross: usize = reds.iter().map(|r| g.neighbors(r).intersection_len(blues)).sum();
    cross == 0 || cross == total
}

/// Number of color classes in a greedy coloring of `cand`, an upper bound on
/// the size of any clique inside it.
fn color_bound(g: &ColoredGraph, cand: &VertexSet) -> usize {
    let mut uncolored = cand.clone();
    let mut colors = 0;
    while !uncolored.is_empty() {
        colors += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncolored.remove(v);
        }
    }
    colors
}

fn clique_number(g: &ColoredGraph, cand: &VertexSet) -> usize {
    fn grow(g: &ColoredGraph, cand: VertexSet, size: usize, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let mut rest = cand;
        while let Some(v) = rest.first() {
            if size + rest.len() <= *best || size + color_bound(g, &rest) <= *best {
                return;
            }
            rest.remove(v);
            grow(g, rest.intersection(g.neighbors(v)), size + 1, best);
        }
    }
    let mut best = 0;
    grow(g, cand.clone(), 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{Pattern, PatternName};
    use crate::transform::blow_up;

    #[test]
    fn profile_of_d() {
        let p = class_profile(&Pattern::named(PatternName::D).graph);
        assert_eq!((p.omega_red, p.omega_blue, p.alpha_red, p.alpha_blue), (2, 2, 1, 1));
        assert!(!p.homogeneously_connected);
        assert!(p.p3_free_red && p.p3_free_blue);
    }

    #[test]
    fn red_p3_is_not_clique_union() {
        let g = ColoredGraph::from_spec("rrr", &[(0, 1), (1, 2)]);
        let p = class_profile(&g);
        assert!(!p.p3_free_red);
        assert!(p.red_cliques.is_empty());
        assert_eq!(p.omega_red, 2);
        assert!(p.p3_free_blue);
        assert_eq!((p.omega_blue, p.alpha_blue), (0, 0));
    }

    #[test]
    fn blown_up_independent_pair() {
        let h = ColoredGraph::from_spec("rr", &[]);
        let g = blow_up(&h, Color::Red, 3).unwrap();
        let p = class_profile(&g);
        assert_eq!((p.omega_red, p.alpha_red), (3, 2));
        assert_eq!(p.red_cliques, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn homogeneous_connection() {
        assert!(is_homogeneously_connected(&ColoredGraph::from_spec("rb", &[(0, 1)])));
        assert!(is_homogeneously_connected(&ColoredGraph::from_spec("rrb", &[(0, 1)])));
        assert!(!is_homogeneously_connected(&ColoredGraph::from_spec("rrb", &[(0, 2)])));
        assert!(is_homogeneously_connected(&ColoredGraph::empty()));
    }
}
