//! One-point amalgamation for the class omitting the blue `K_2`, the red
//! `K_3`, `T_r` and its cross complement.

use super::{by_induction, AmalgamProblem, AmalgamResult, Partial, Placement};
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::profile::clique_partition;
use crate::spec::Family;

pub fn amalgam_f21(p: &AmalgamProblem) -> Result<AmalgamResult> {
    p.validate(Some(&Family::F21.spec()))?;
    by_induction(p, step)
}

fn step(p: &AmalgamProblem, cur: &Partial, v: usize) -> Result<Placement> {
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
    match a2.color(v) {
        Color::Red => {
            if let Some(&r) = mapped(Color::Red, true).first() {
                if let Some(r2) = a.neighbors_in(r, Color::Red).first() {
                    if cur.phi.image().any(|w| w == r2) {
                        return Err(Error::Internal("red partner of r already lies in the common part".into()));
                    }
                    return Ok(Placement::Identify(r2));
                }
                let mut neighbors = vec![r];
                neighbors.extend(a.class(Color::Blue).difference(a.neighbors(r)).iter());
                Ok(Placement::New { color: Color::Red, neighbors })
            } else {
                Ok(Placement::New { color: Color::Red, neighbors: mapped(Color::Blue, true) })
            }
        }
        Color::Blue => {
            let mut joined = mapped(Color::Red, true);
            let marked = mapped(Color::Red, false);
            let cliques = clique_partition(a, Color::Red).expect("a1 side is in the class");
            for clique in cliques {
                let free = clique.iter().filter(|w| !joined.contains(w)).count();
                if free < 2 {
                    continue;
                }
                let pick = clique
                    .iter()
                    .copied()
                    .find(|w| !marked.contains(w))
                    .ok_or_else(|| Error::Internal("red clique with two marked non-neighbors".into()))?;
                joined.push(pick);
            }
            joined.sort_unstable();
            Ok(Placement::New { color: Color::Blue, neighbors: joined })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::one_point_problems;
    use crate::graph::{ColoredGraph, PartialMap};

    #[test]
    fn reuses_red_partner() {
        // j = blue b; a1 = b + red edge r-r' with b~r; a2 = b + red v, v !~ b.
        let j = ColoredGraph::from_spec("b", &[]);
        let a1 = ColoredGraph::from_spec("brr", &[(0, 1), (1, 2)]);
        let a2 = ColoredGraph::from_spec("br", &[]);
        let p = AmalgamProblem::new(j, a1, a2, PartialMap::identity(1), PartialMap::identity(1));
        let r = amalgam_f21(&p).unwrap();
        r.validate(&p, Some(&Family::F21.spec())).unwrap();
        assert_eq!(r.a.n(), 4);
    }

    #[test]
    fn degenerate_problem_is_identity() {
        let a1 = ColoredGraph::from_spec("rrb", &[(0, 1), (0, 2)]);
        let p =
            AmalgamProblem::new(a1.clone(), a1.clone(), a1.clone(), PartialMap::identity(3), PartialMap::identity(3));
        let r = amalgam_f21(&p).unwrap();
        assert_eq!(r.a, a1);
        assert_eq!(r.kappa2, PartialMap::identity(3));
    }

    #[test]
    fn exhaustive_small_suite() {
        let spec = Family::F21.spec();
        let problems = one_point_problems(&spec, 4);
        assert!(problems.len() > 100);
        for p in &problems {
            let r = amalgam_f21(p).unwrap();
            r.validate(p, Some(&spec)).unwrap();
            assert!(r.a.n() <= p.a1.n() + 1);
        }
    }
}
