//! One-point amalgamation for the class omitting monochromatic triangles and
//! the four triangles with vertices of both colors. A blue new vertex is
//! handled by exchanging the colors.

use super::{by_induction, AmalgamProblem, AmalgamResult, Partial, Placement};
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::profile::clique_partition;
use crate::spec::Family;

pub fn amalgam_f22(p: &AmalgamProblem) -> Result<AmalgamResult> {
    p.validate(Some(&Family::F22.spec()))?;
    let swapped = p.swap_colors();
    by_induction(p, |p, cur, v| {
        if p.a2.color(v) == Color::Red {
            red_step(p, cur, v)
        } else {
            let cur = Partial { a: crate::transform::swap_colors(&cur.a), phi: cur.phi.clone() };
            let placement = red_step(&swapped, &cur, v)?;
            Ok(match placement {
                Placement::New { neighbors, .. } => Placement::New { color: Color::Blue, neighbors },
                other => other,
            })
        }
    })
}

fn red_step(p: &AmalgamProblem, cur: &Partial, v: usize) -> Result<Placement> {
    let a2 = &p.a2;
    let a = &cur.a;
    let placed: Vec<usize> = cur.phi.domain().collect();
    let mapped = |c: Color, adjacent: bool| -> Vec<usize> {
        placed
            .iter()
            .filter(|&&x| a2.color(x) == c && a2.adjacent(x, v) == adjacent)
            .map(|&x| cur.phi.get(x).expect("placed"))
            .collect()
    };
    if let Some(&r) = mapped(Color::Red, true).first() {
        if let Some(r2) = a.neighbors_in(r, Color::Red).first() {
            if cur.phi.image().any(|w| w == r2) {
                return Err(Error::Internal("red partner of r already lies in the common part".into()));
            }
            return Ok(Placement::Identify(r2));
        }
        let mut neighbors = vec![r];
        neighbors.extend(a.class(Color::Blue).difference(a.neighbors(r)).iter());
        return Ok(Placement::New { color: Color::Red, neighbors });
    }
    let mut joined = mapped(Color::Blue, true);
    let marked = mapped(Color::Blue, false);
    let cliques = clique_partition(a, Color::Blue).expect("a1 side is in the class");
    for clique in cliques.iter().filter(|c| c.len() == 2) {
        if clique.iter().any(|w| joined.contains(w)) {
            continue;
        }
        let pick = clique
            .iter()
            .copied()
            .find(|w| !marked.contains(w))
            .ok_or_else(|| Error::Internal("blue 2-clique with two marked vertices".into()))?;
        joined.push(pick);
    }
    joined.sort_unstable();
    Ok(Placement::New { color: Color::Red, neighbors: joined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::one_point_problems;
    use crate::graph::{ColoredGraph, PartialMap};

    #[test]
    fn red_vertex_over_empty_common_part() {
        let p = AmalgamProblem::new(
            ColoredGraph::empty(),
            ColoredGraph::from_spec("rr", &[(0, 1)]),
            ColoredGraph::from_spec("r", &[]),
            PartialMap::new(),
            PartialMap::new(),
        );
        let r = amalgam_f22(&p).unwrap();
        r.validate(&p, Some(&Family::F22.spec())).unwrap();
    }

    #[test]
    fn blue_vertex_by_symmetry() {
        // j = red r; a1 = r + blue edge b-b' with r~b; a2 = r + blue v, v~r.
        let j = ColoredGraph::from_spec("r", &[]);
        let a1 = ColoredGraph::from_spec("rbb", &[(0, 1), (1, 2)]);
        let a2 = ColoredGraph::from_spec("rb", &[(0, 1)]);
        let p = AmalgamProblem::new(j, a1, a2, PartialMap::identity(1), PartialMap::identity(1));
        let r = amalgam_f22(&p).unwrap();
        r.validate(&p, Some(&Family::F22.spec())).unwrap();
    }

    #[test]
    fn exhaustive_small_suite() {
        let spec = Family::F22.spec();
        for p in &one_point_problems(&spec, 4) {
            let r = amalgam_f22(p).unwrap();
            r.validate(p, Some(&spec)).unwrap();
            assert!(r.a.n() <= p.a1.n() + 1);
        }
    }
}
