//! Exhaustive amalgamation-property checking on small graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{amalgam_f21, amalgam_f22, generic_amalgam, AmalgamProblem};
use crate::embed::all_embeddings;
use crate::error::Result;
use crate::graph::{ColoredGraph, PartialMap};
use crate::iso::automorphisms;
use crate::omitted::enumerate_class;
use crate::spec::{ClassSpec, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOptions {
    /// Largest `|a1|` and `|a2|`.
    pub max_size: usize,
    /// Only problems where each side adds one vertex to `j`.
    pub one_point_only: bool,
}

impl CheckOptions {
    pub fn new(max_size: usize) -> Self {
        CheckOptions { max_size, one_point_only: false }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every problem up to the size bound has an amalgam. Says nothing about
    /// larger problems.
    HoldsUpTo(usize),
    Counterexample(Box<AmalgamProblem>),
}

#[derive(Clone, Debug, Serialize)]
pub struct AmalgamCheck {
    pub options: CheckOptions,
    pub verdict: Verdict,
    pub problems_checked: usize,
    pub amalgams_validated: usize,
    /// `"inconclusive beyond n"` when the property held up to `n`.
    pub note: String,
}

struct Graph {
    g: ColoredGraph,
    auts: Vec<Vec<usize>>,
}

fn normalize(e: &[usize], auts: &[Vec<usize>]) -> Vec<usize> {
    auts.iter().map(|s| e.iter().map(|&x| s[x]).collect::<Vec<_>>()).min().unwrap_or_else(|| e.to_vec())
}

fn compose(e: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&x| e[x]).collect()
}

/// Embedding pairs `j -> a1`, `j -> a2` up to automorphisms of all three.
fn embedding_pairs(j: &Graph, a1: &Graph, a2: &Graph, same: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let e1: BTreeSet<Vec<usize>> = all_embeddings(&a1.g, &j.g).iter().map(|e| normalize(e, &a1.auts)).collect();
    if e1.is_empty() {
        return Vec::new();
    }
    let e2: BTreeSet<Vec<usize>> = all_embeddings(&a2.g, &j.g).iter().map(|e| normalize(e, &a2.auts)).collect();
    let mut keys = BTreeSet::new();
    for x in &e1 {
        for y in &e2 {
            let key = |x: &[usize], y: &[usize]| {
                j.auts
                    .iter()
                    .map(|t| (normalize(&compose(x, t), &a1.auts), normalize(&compose(y, t), &a2.auts)))
                    .min()
                    .expect("identity automorphism")
            };
            let mut k = key(x, y);
            if same {
                k = k.min(key(y, x));
            }
            keys.insert(k);
        }
    }
    keys.into_iter().collect()
}

/// Solves one problem; `Ok(false)` when no amalgam exists.
fn solve(spec: &ClassSpec, p: &AmalgamProblem) -> Result<bool> {
    let fast = if spec.same_class(&Family::F21.spec()) {
        Some(amalgam_f21(p)?)
    } else if spec.same_class(&Family::F22.spec()) {
        Some(amalgam_f22(p)?)
    } else {
        None
    };
    let result = match fast {
        Some(r) => Some(r),
        None => generic_amalgam(spec, p)?,
    };
    match result {
        Some(r) => {
            r.validate(p, Some(spec))?;
            Ok(true)
        }
        None => Ok(false),
    }
}

/// Checks every amalgamation problem of `spec` with `|a1|, |a2| <=
/// max_size`, up to isomorphism. Problems adding one vertex on each side come
/// first, then the rest by `|j|`, `|a1|`, `|a2|`. The first unsolvable
/// problem in this order is reported regardless of thread scheduling.
pub fn check_amalgamation_property(spec: &ClassSpec, opts: CheckOptions) -> Result<AmalgamCheck> {
    let n = opts.max_size;
    let levels: Vec<Vec<Graph>> = enumerate_class(spec, n)
        .into_iter()
        .map(|l| l.into_iter().map(|g| Graph { auts: automorphisms(&g), g }).collect())
        .collect();

    let mut shapes: Vec<(usize, usize, usize)> = Vec::new();
    for k in 0..n {
        shapes.push((k, k + 1, k + 1));
    }
    if !opts.one_point_only {
        for k in 0..n {
            for m1 in k + 1..=n {
                for m2 in m1..=n {
                    if (m1, m2) != (k + 1, k + 1) {
                        shapes.push((k, m1, m2));
                    }
                }
            }
        }
    }

    let mut checked = 0;
    let mut validated = 0;
    for (k, m1, m2) in shapes {
        let mut problems = Vec::new();
        for j in &levels[k] {
            for (i1, a1) in levels[m1].iter().enumerate() {
                for (i2, a2) in levels[m2].iter().enumerate() {
                    if m1 == m2 && i2 < i1 {
                        continue;
                    }
                    for (x, y) in embedding_pairs(j, a1, a2, m1 == m2 && i1 == i2) {
                        problems.push(AmalgamProblem::new(
                            j.g.clone(),
                            a1.g.clone(),
                            a2.g.clone(),
                            PartialMap::from_targets(&x),
                            PartialMap::from_targets(&y),
                        ));
                    }
                }
            }
        }
        let outcomes: Vec<Result<bool>> = problems.par_iter().map(|p| solve(spec, p)).collect();
        for (p, outcome) in problems.into_iter().zip(outcomes) {
            checked += 1;
            match outcome {
                Ok(true) => validated += 1,
                Ok(false) => {
                    return Ok(AmalgamCheck {
                        options: opts,
                        verdict: Verdict::Counterexample(Box::new(p)),
                        problems_checked: checked,
                        amalgams_validated: validated,
                        note: String::new(),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(AmalgamCheck {
        options: opts,
        verdict: Verdict::HoldsUpTo(n),
        problems_checked: checked,
        amalgams_validated: validated,
        note: format!("inconclusive beyond {n}"),
    })
}
