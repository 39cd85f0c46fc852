//! Witness scans over finite graphs: bipartite genericity, genericity inside
//! cliques, joint neighbors, the partition property and the piece taxonomy
//! of bipartite cross graphs.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::profile::clique_partition;

/// An adjacency demand: a witness must be adjacent to every vertex of
/// `adjacent` and to none of `nonadjacent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Demand {
    pub adjacent: Vec<usize>,
    pub nonadjacent: Vec<usize>,
}

/// The first demand over disjoint subsets of `pool` with at most `max`
/// vertices in total that no vertex of `witnesses` meets. Demands are
/// visited in lexicographic order of their vertices. With `only_adjacent`,
/// demands with a nonempty `nonadjacent` part are skipped.
pub fn unwitnessed(
    g: &ColoredGraph,
    pool: &[usize],
    witnesses: &VertexSet,
    max: usize,
    only_adjacent: bool,
) -> Option<Demand> {
    let mut cur = Demand { adjacent: Vec::new(), nonadjacent: Vec::new() };
    search(g, pool, 0, witnesses, max, only_adjacent, &mut cur)
}

fn search(
    g: &ColoredGraph,
    pool: &[usize],
    from: usize,
    cand: &VertexSet,
    left: usize,
    only_adjacent: bool,
    cur: &mut Demand,
) -> Option<Demand> {
    if left == 0 {
        return None;
    }
    for i in from..pool.len() {
        let v = pool[i];
        for adj in [true, false] {
            if !adj && only_adjacent {
                continue;
            }
            let mut next = cand.clone();
            next.remove(v);
            if adj {
                next.intersect_with(g.neighbors(v));
                cur.adjacent.push(v);
            } else {
                next.difference_with(g.neighbors(v));
                cur.nonadjacent.push(v);
            }
            let hit = if next.is_empty() {
                Some(cur.clone())
            } else {
                search(g, pool, i + 1, &next, left - 1, only_adjacent, cur)
            };
            if adj {
                cur.adjacent.pop();
            } else {
                cur.nonadjacent.pop();
            }
            if hit.is_some() {
                return hit;
            }
        }
    }
    None
}

/// A failed demand with the class it was posed over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDemand {
    /// Color of the demand's vertices; witnesses have the other color.
    pub color: Color,
    pub demand: Demand,
}

/// Bipartite genericity: every demand over at most `max` vertices of one
/// class has a witness in the other class.
pub fn bipartite_witness_scan(g: &ColoredGraph, max: usize) -> Option<ClassDemand> {
    Color::ALL.into_iter().find_map(|c| {
        let pool: Vec<usize> = g.class(c).iter().collect();
        unwitnessed(g, &pool, g.class(c.other()), max, false).map(|demand| ClassDemand { color: c, demand })
    })
}

/// A failed demand together with the clique that lacks a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueDemand {
    /// Color of the clique; the demand is over the other color.
    pub color: Color,
    pub clique: Vec<usize>,
    pub demand: Demand,
}

fn partition(g: &ColoredGraph, c: Color) -> Result<Vec<Vec<usize>>> {
    clique_partition(g, c).ok_or(Error::NotCliqueUnion { color: c })
}

/// Genericity inside cliques: for every maximal clique `C` and every demand
/// over at most `max` vertices of the other color, some vertex of `C` is a
/// witness.
pub fn clique_genericity_scan(g: &ColoredGraph, max: usize) -> Result<Option<CliqueDemand>> {
    for c in Color::ALL {
        let pool: Vec<usize> = g.class(c.other()).iter().collect();
        for clique in partition(g, c)? {
            let w = VertexSet::from_iter_bounded(clique.iter().copied());
            if let Some(demand) = unwitnessed(g, &pool, &w, max, false) {
                return Ok(Some(CliqueDemand { color: c, clique, demand }));
            }
        }
    }
    Ok(None)
}

/// Joint neighbors: every set of at most `max` vertices of color `c` has a
/// common neighbor in every maximal clique of the other color.
pub fn joint_neighbor_scan(g: &ColoredGraph, c: Color, max: usize) -> Result<Option<CliqueDemand>> {
    let pool: Vec<usize> = g.class(c).iter().collect();
    for clique in partition(g, c.other())? {
        let w = VertexSet::from_iter_bounded(clique.iter().copied());
        if let Some(demand) = unwitnessed(g, &pool, &w, max, true) {
            return Ok(Some(CliqueDemand { color: c.other(), clique, demand }));
        }
    }
    Ok(None)
}

/// For every clique `C'` of color `c` with at most `max` vertices and every
/// `S ⊆ C'`, each maximal clique of the other color holds a vertex whose
/// neighborhood in `C'` is exactly `S`. The reported clique is the one
/// lacking a witness.
pub fn neighbors_every_clique_scan(g: &ColoredGraph, c: Color, max: usize) -> Result<Option<CliqueDemand>> {
    let others = partition(g, c.other())?;
    for clique in partition(g, c)? {
        for m in &others {
            let w = VertexSet::from_iter_bounded(m.iter().copied());
            if let Some(demand) = unwitnessed(g, &clique, &w, max, false) {
                return Ok(Some(CliqueDemand { color: c.other(), clique: m.clone(), demand }));
            }
        }
    }
    Ok(None)
}

/// A vertex whose neighborhood in a maximal 2-clique of the other color does
/// not have exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionViolation {
    pub vertex: usize,
    pub clique: Vec<usize>,
    pub neighbors: usize,
}

/// Every vertex of color `c.other()` must have exactly one neighbor in every
/// maximal clique of color `c` that has two vertices.
pub fn partition_violations(g: &ColoredGraph, c: Color) -> Result<Vec<PartitionViolation>> {
    let mut out = Vec::new();
    for clique in partition(g, c)?.into_iter().filter(|k| k.len() == 2) {
        for v in g.class(c.other()).iter() {
            let neighbors = clique.iter().filter(|&&u| g.adjacent(u, v)).count();
            if neighbors != 1 {
                out.push(PartitionViolation { vertex: v, clique: clique.clone(), neighbors });
            }
        }
    }
    Ok(out)
}

/// Shapes of the cross edges between a red vertex set and a blue vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// All cross edges present, or none.
    HomogeneouslyConnected,
    /// A perfect matching.
    Matching,
    /// The cross complement of a perfect matching.
    CoMatching,
    /// Every demand over a bounded number of vertices of one side has a
    /// witness on the other side.
    GenericLike,
    Irregular,
}

impl PieceKind {
    pub fn is_regular(self) -> bool {
        self != PieceKind::Irregular
    }
}

/// Classifies the cross edges between `red` and `blue`. A perfect matching
/// needs both sides of equal size. The generic test uses demands of at most
/// `bound` vertices on each side.
pub fn piece_kind(g: &ColoredGraph, red: &[usize], blue: &[usize], bound: usize) -> PieceKind {
    let rs = VertexSet::from_iter_bounded(red.iter().copied());
    let bs = VertexSet::from_iter_bounded(blue.iter().copied());
    let degrees: Vec<usize> = red
        .iter()
        .map(|&r| g.neighbors(r).intersection_len(&bs))
        .chain(blue.iter().map(|&b| g.neighbors(b).intersection_len(&rs)))
        .collect();
    let total: usize = degrees[..red.len()].iter().sum();
    if total == 0 || total == red.len() * blue.len() {
        return PieceKind::HomogeneouslyConnected;
    }
    if red.len() == blue.len() {
        if degrees.iter().all(|&d| d == 1) {
            return PieceKind::Matching;
        }
        if degrees.iter().all(|&d| d + 1 == red.len()) {
            return PieceKind::CoMatching;
        }
    }
    let generic = unwitnessed(g, blue, &rs, bound, false).is_none() && unwitnessed(g, red, &bs, bound, false).is_none();
    if generic {
        PieceKind::GenericLike
    } else {
        PieceKind::Irregular
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::cross_complement;

    fn bipartite(nr: usize, nb: usize, adj: impl Fn(usize, usize) -> bool) -> ColoredGraph {
        let colors = "r".repeat(nr) + &"b".repeat(nb);
        let mut edges = Vec::new();
        for i in 0..nr {
            for j in 0..nb {
                if adj(i, j) {
                    edges.push((i, nr + j));
                }
            }
        }
        ColoredGraph::from_spec(&colors, &edges)
    }

    #[test]
    fn witnesses_for_single_vertices() {
        let g = bipartite(2, 2, |i, j| i == j);
        assert_eq!(bipartite_witness_scan(&g, 1), None);
        let hit = bipartite_witness_scan(&g, 2).unwrap();
        assert_eq!(hit.color, Color::Red);
        assert_eq!(hit.demand, Demand { adjacent: vec![0, 1], nonadjacent: vec![] });
    }

    #[test]
    fn piece_kinds() {
        let m = bipartite(3, 3, |i, j| i == j);
        let r = [0, 1, 2];
        let b = [3, 4, 5];
        assert_eq!(piece_kind(&m, &r, &b, 2), PieceKind::Matching);
        assert_eq!(piece_kind(&cross_complement(&m), &r, &b, 2), PieceKind::CoMatching);
        let full = bipartite(2, 3, |_, _| true);
        assert_eq!(piece_kind(&full, &[0, 1], &[2, 3, 4], 2), PieceKind::HomogeneouslyConnected);
        let half = bipartite(2, 1, |i, _| i == 0);
        assert_eq!(piece_kind(&half, &[0, 1], &[2], 2), PieceKind::Irregular);
    }

    #[test]
    fn generic_piece_from_subsets() {
        // reds are the subsets of a 3-set of blues, so every blue demand has
        // a witness; reds need witnesses too, which 3 blues cannot give for
        // pairs, so the bound is 1 on that side
        let g = bipartite(8, 3, |i, j| i >> j & 1 == 1);
        let reds: Vec<usize> = (0..8).collect();
        let blues = [8, 9, 10];
        let rs = VertexSet::from_iter_bounded(reds.iter().copied());
        assert_eq!(unwitnessed(&g, &blues, &rs, 3, false), None);
        assert_eq!(piece_kind(&g, &reds, &blues, 2), PieceKind::Irregular);
    }

    #[test]
    fn partition_scan() {
        // red 2-clique {0,1}, blue 2 sees exactly 0, blue 3 sees both
        let g = ColoredGraph::from_spec("rrbb", &[(0, 1), (0, 2), (0, 3), (1, 3)]);
        let v = partition_violations(&g, Color::Red).unwrap();
        assert_eq!(v, vec![PartitionViolation { vertex: 3, clique: vec![0, 1], neighbors: 2 }]);
        assert!(partition_violations(&g, Color::Blue).unwrap().is_empty());
    }

    #[test]
    fn joint_neighbors_and_clique_genericity() {
        // one red clique {0,1}; blue 2 adjacent to 0 only, blue 3 to 1 only
        let g = ColoredGraph::from_spec("rrbb", &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(joint_neighbor_scan(&g, Color::Blue, 1).unwrap(), None);
        let hit = joint_neighbor_scan(&g, Color::Blue, 2).unwrap().unwrap();
        assert_eq!(hit.demand.adjacent, vec![2, 3]);
        assert!(clique_genericity_scan(&g, 1).unwrap().is_some());
        let red_p3 = ColoredGraph::from_spec("rrr", &[(0, 1), (1, 2)]);
        assert!(clique_genericity_scan(&red_p3, 1).is_err());
    }
}
