//! Finite approximants of Fraïssé limits by extension closure.
//!
//! An extension type over a vertex list `s` is a color together with an
//! adjacency mask over `s`. It is in the class when `s` plus one new vertex
//! of that type is a member, and realized when some vertex outside `s` has
//! that color and adjacency. A graph has the `t`-extension property when
//! every in-class type over every subset of fewer than `t` vertices is
//! realized.
//!
//! The builder keeps a first-in first-out queue of missing types, seeded by
//! subset size and then lexicographic subset order. Adding vertices never
//! unrealizes a type, so after each new vertex it drops the types that
//! vertex realizes and queues the missing types over subsets containing it;
//! an empty queue certifies the property. The front type is realized by a
//! one-point amalgam of the current graph with the subset plus one vertex.
//! Choices the amalgam leaves free (which clique to join, the remaining
//! cross edges) are made greedily to realize as many other queued types as
//! possible, weighting each by the chance that the undecided pairs still
//! complete it, with ties broken by a seeded generator.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bitset::VertexSet;
use crate::design::structured_seed;
use crate::error::{Error, Result};
use crate::graph::{CliqueBound, Color, ColoredGraph};
use crate::profile::clique_partition;
use crate::spec::{ClassSpec, Family};
use crate::transform::induced_unchecked;

pub const DEFAULT_LEVEL: usize = 4;
pub const DEFAULT_BUDGET: usize = 200;
/// Largest supported level; types are encoded in 64-bit keys.
pub const MAX_LEVEL: usize = 8;
/// Search nodes spent on one new vertex before the type is given up.
const NODE_LIMIT: usize = 1 << 20;
/// Weight of look-ahead groups against queued types in cross-edge choices.
const LOOKAHEAD_WEIGHT: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum LogEvent {
    /// A vertex was added for a missing type over `over`.
    Added { vertex: usize, color: Color, over: Vec<usize>, adjacent: Vec<usize>, realized: usize },
    /// No one-point amalgam was found for this type.
    Unrealizable { over: Vec<usize>, color: Color, adjacent: Vec<usize> },
}

/// A finite graph in its class with a certified extension level.
#[derive(Clone, Debug)]
pub struct Approximant {
    pub graph: ColoredGraph,
    pub spec: ClassSpec,
    /// Largest `t' <= requested_level` at which the extension property was
    /// verified by an independent scan.
    pub level: usize,
    pub requested_level: usize,
    pub budget: usize,
    pub seed: Option<u64>,
    /// The vertex budget ran out before the requested level was reached.
    pub exhausted: bool,
    pub log: Vec<LogEvent>,
}

impl Approximant {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "graph": self.graph,
            "spec": self.spec.to_json(),
            "level": self.level,
            "requested_level": self.requested_level,
            "budget": self.budget,
            "seed": self.seed,
            "exhausted": self.exhausted,
            "log": self.log,
        })
    }

    /// Reads the output of [`Approximant::to_json`]. The stored level is
    /// re-verified rather than trusted.
    pub fn from_json(src: &str) -> Result<Approximant> {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))?;
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Format(format!("missing field {k:?}")));
        let graph: ColoredGraph =
            serde_json::from_value(field("graph")?.clone()).map_err(|e| Error::Format(format!("graph: {e}")))?;
        let spec = ClassSpec::from_json(&field("spec")?.to_string())?;
        let num = |k: &str| -> Result<usize> {
            field(k)?.as_u64().map(|x| x as usize).ok_or_else(|| Error::Format(format!("field {k:?} is not a count")))
        };
        let requested_level = num("requested_level")?;
        if requested_level > MAX_LEVEL {
            return Err(Error::Format(format!("requested_level {requested_level} exceeds {MAX_LEVEL}")));
        }
        let budget = num("budget")?;
        let seed = v.get("seed").and_then(Value::as_u64);
        let log = match v.get("log") {
            Some(l) => serde_json::from_value(l.clone()).map_err(|e| Error::Format(format!("log: {e}")))?,
            None => Vec::new(),
        };
        if !spec.member(&graph) {
            return Err(Error::NotMember);
        }
        let level = extension_level(&spec, &graph, requested_level);
        Ok(Approximant { exhausted: level < requested_level, graph, spec, level, requested_level, budget, seed, log })
    }
}

/// A missing type: a vertex of `color` whose neighbors in `over` are the
/// positions set in `mask`.
#[derive(Clone, Debug)]
struct Pending {
    over: Vec<usize>,
    color: Color,
    mask: u32,
}

impl Pending {
    /// The required adjacency to `u`, if `u` is in the subset.
    fn wants(&self, u: usize) -> Option<bool> {
        self.over.binary_search(&u).ok().map(|i| self.mask >> i & 1 == 1)
    }

    fn adjacent(&self) -> Vec<usize> {
        self.over.iter().enumerate().filter(|(i, _)| self.mask >> i & 1 == 1).map(|(_, &y)| y).collect()
    }
}

fn realizes(g: &ColoredGraph, w: usize, p: &Pending) -> bool {
    g.color(w) == p.color && p.over.iter().enumerate().all(|(i, &y)| g.adjacent(w, y) == (p.mask >> i & 1 == 1))
}

/// Calls `f` on every mask over `s` that no vertex of color `c` outside `s`
/// realizes, splitting the candidates by one neighborhood at a time. `buf`
/// holds one candidate set per depth.
fn unrealized_masks(g: &ColoredGraph, s: &[usize], c: Color, buf: &mut Vec<u64>, f: &mut impl FnMut(u32)) {
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &ColoredGraph,
        s: &[usize],
        i: usize,
        mask: u32,
        live: bool,
        buf: &mut [u64],
        w: usize,
        f: &mut impl FnMut(u32),
    ) {
        if !live {
            for rest in 0..1u32 << (s.len() - i) {
                f(mask | rest << i);
            }
            return;
        }
        if i == s.len() {
            return;
        }
        let n = g.neighbors(s[i]).words();
        for adjacent in [true, false] {
            let (cur, next) = buf.split_at_mut((i + 1) * w);
            let mut any = 0;
            for (k, (x, &y)) in next[..w].iter_mut().zip(&cur[i * w..]).enumerate() {
                let nk = n.get(k).copied().unwrap_or(0);
                *x = if adjacent { y & nk } else { y & !nk };
                any |= *x;
            }
            go(g, s, i + 1, mask | (adjacent as u32) << i, any != 0, buf, w, f);
        }
    }
    let w = g.n().div_ceil(64);
    buf.clear();
    buf.resize((s.len() + 1) * w, 0);
    let class = g.class(c).words();
    for (x, &y) in buf.iter_mut().zip(class) {
        *x = y;
    }
    for &y in s {
        buf[y / 64] &= !(1 << (y % 64));
    }
    let live = buf[..w].iter().any(|&x| x != 0);
    go(g, s, 0, 0, live, buf, w, f);
}

/// `s` plus a vertex of the given type, the new vertex last.
fn extended(g: &ColoredGraph, s: &[usize], c: Color, mask: u32) -> ColoredGraph {
    let mut h = induced_unchecked(g, s);
    let w = h.push_vertex(c);
    for i in 0..s.len() {
        if mask >> i & 1 == 1 {
            h.add_edge(i, w);
        }
    }
    h
}

/// Memoized membership of one-point extensions, keyed by the labeled small
/// graph.
struct TypeTable<'a> {
    spec: &'a ClassSpec,
    memo: FxHashMap<u64, bool>,
}

impl<'a> TypeTable<'a> {
    fn new(spec: &'a ClassSpec) -> Self {
        TypeTable { spec, memo: FxHashMap::default() }
    }

    fn in_class(&mut self, g: &ColoredGraph, s: &[usize], c: Color, mask: u32) -> bool {
        let k = s.len();
        let mut key = k as u64;
        let mut shift = 4;
        for &y in s {
            key |= (g.color(y).index() as u64) << shift;
            shift += 1;
        }
        for i in 0..k {
            for j in i + 1..k {
                key |= (g.adjacent(s[i], s[j]) as u64) << shift;
                shift += 1;
            }
        }
        key |= (c.index() as u64) << shift;
        key |= (mask as u64) << (shift + 1);
        let spec = self.spec;
        *self.memo.entry(key).or_insert_with(|| spec.member(&extended(g, s, c, mask)))
    }
}

/// Calls `f` on every `k`-subset of `pool` in lexicographic order.
fn for_each_combination(pool: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(pool, k, 0, &mut Vec::with_capacity(k), f);
}

struct Builder<'a> {
    spec: &'a ClassSpec,
    t: usize,
    g: ColoredGraph,
    table: TypeTable<'a>,
    rng: ChaCha8Rng,
    /// Maximal cliques of each color, kept in step with `g`.
    cliques: [Vec<Vec<usize>>; 2],
    log: Vec<LogEvent>,
    scratch: Vec<u64>,
    masks: Vec<u32>,
}

/// Bookkeeping for the cross-edge search of one new vertex: the missing
/// types it may still realize and how many of their vertices are undecided.
struct Density {
    alive: Vec<bool>,
    undecided: Vec<u32>,
    /// For each host vertex, the tracked types over it and the adjacency
    /// they require.
    by_vertex: Vec<Vec<(usize, bool)>>,
}

impl Density {
    /// Preference for `u`: the expected number of tracked types realized
    /// if the remaining free pairs were fair coin flips, per value.
    fn weights(&self, u: usize) -> (f64, f64) {
        let (mut yes, mut no) = (0.0, 0.0);
        for &(j, want) in &self.by_vertex[u] {
            if self.alive[j] {
                let w = 0.5f64.powi(self.undecided[j] as i32 - 1);
                if want {
                    yes += w;
                } else {
                    no += w;
                }
            }
        }
        (yes, no)
    }

    /// Fixes the pair to `u` at `val`; returns the undo record.
    fn fix(&mut self, u: usize, val: bool) -> Vec<(usize, bool)> {
        let mut undo = Vec::new();
        for &(j, want) in &self.by_vertex[u] {
            if self.alive[j] {
                if want == val {
                    self.undecided[j] -= 1;
                    undo.push((j, false));
                } else {
                    self.alive[j] = false;
                    undo.push((j, true));
                }
            }
        }
        undo
    }

    fn unfix(&mut self, undo: Vec<(usize, bool)>) {
        for (j, killed) in undo {
            if killed {
                self.alive[j] = true;
            } else {
                self.undecided[j] += 1;
            }
        }
    }
}

/// Look-ahead for types over subsets that will contain the new vertex `w`.
/// A vertex `z` of the other color realizes the type `(s', p, bit)` over
/// `s' + w` when its adjacency to `s'` is `p` and to `w` is `bit`, so each
/// group of free vertices sharing a pattern over `s'` should receive both
/// values.
struct Lookahead {
    subsets: Vec<Vec<usize>>,
    /// Per subset and pattern: bit 0 once some member got `false`, bit 1
    /// once some member got `true`.
    seen: Vec<Vec<u8>>,
}

impl Lookahead {
    fn new(g: &ColoredGraph, t: usize) -> Self {
        let all: Vec<usize> = g.vertices().collect();
        let mut subsets = Vec::new();
        for k in 0..t.saturating_sub(1) {
            for_each_combination(&all, k, &mut |s| subsets.push(s.to_vec()));
        }
        let seen = subsets.iter().map(|s| vec![0u8; 1 << s.len()]).collect();
        Lookahead { subsets, seen }
    }

    fn pattern(g: &ColoredGraph, u: usize, s: &[usize]) -> Option<usize> {
        let mut p = 0;
        for (i, &y) in s.iter().enumerate() {
            if y == u {
                return None;
            }
            if g.adjacent(u, y) {
                p |= 1 << i;
            }
        }
        Some(p)
    }

    /// Number of groups of `u` still missing each value.
    fn weights(&self, g: &ColoredGraph, u: usize) -> (f64, f64) {
        let (mut yes, mut no) = (0.0, 0.0);
        for (k, s) in self.subsets.iter().enumerate() {
            if let Some(p) = Self::pattern(g, u, s) {
                let f = self.seen[k][p];
                if f & 2 == 0 {
                    yes += 1.0;
                }
                if f & 1 == 0 {
                    no += 1.0;
                }
            }
        }
        (yes, no)
    }

    fn fix(&mut self, g: &ColoredGraph, u: usize, val: bool) -> Vec<(usize, usize, u8)> {
        let bit = if val { 2 } else { 1 };
        let mut undo = Vec::new();
        for (k, s) in self.subsets.iter().enumerate() {
            if let Some(p) = Self::pattern(g, u, s) {
                let f = self.seen[k][p];
                if f & bit == 0 {
                    undo.push((k, p, f));
                    self.seen[k][p] = f | bit;
                }
            }
        }
        undo
    }

    fn unfix(&mut self, undo: Vec<(usize, usize, u8)>) {
        for (k, p, f) in undo {
            self.seen[k][p] = f;
        }
    }
}

impl<'a> Builder<'a> {
    /// Missing in-class types over `s`.
    fn missing_over(&mut self, s: &[usize], out: &mut Vec<Pending>) {
        for c in Color::ALL {
            let mut masks = std::mem::take(&mut self.masks);
            masks.clear();
            unrealized_masks(&self.g, s, c, &mut self.scratch, &mut |m| masks.push(m));
            masks.sort_unstable();
            for &mask in &masks {
                if self.table.in_class(&self.g, s, c, mask) {
                    out.push(Pending { over: s.to_vec(), color: c, mask });
                }
            }
            self.masks = masks;
        }
    }

    /// Every missing type over subsets of fewer than `t` vertices, by size
    /// and then lexicographically.
    fn all_missing(&mut self) -> Vec<Pending> {
        let all: Vec<usize> = self.g.vertices().collect();
        let mut out = Vec::new();
        for k in 0..self.t {
            let mut subsets = Vec::new();
            for_each_combination(&all, k, &mut |s| subsets.push(s.to_vec()));
            for s in subsets {
                self.missing_over(&s, &mut out);
            }
        }
        out
    }

    /// Missing types over subsets that contain the newest vertex `w`.
    fn missing_through(&mut self, w: usize) -> Vec<Pending> {
        let below: Vec<usize> = (0..w).collect();
        let mut out = Vec::new();
        let mut s = Vec::with_capacity(self.t);
        for k in 0..self.t - 1 {
            for_each_combination(&below, k, &mut |tail| {
                s.clear();
                s.extend_from_slice(tail);
                s.push(w);
                self.missing_over(&s, &mut out);
            });
        }
        out
    }

    /// Adds a vertex realizing `target`, or returns `None` when the search
    /// finds no in-class one-point amalgam.
    fn realize(&mut self, target: &Pending, missing: &[Pending]) -> Option<usize> {
        let c = target.color;
        let n = self.g.n();
        let mut forced: Vec<Option<bool>> = vec![None; n];
        for (i, &y) in target.over.iter().enumerate() {
            forced[y] = Some(target.mask >> i & 1 == 1);
        }
        let compat: Vec<&Pending> = missing
            .iter()
            .filter(|p| p.color == c && p.over.iter().all(|&y| forced[y].is_none_or(|f| p.wants(y) == Some(f))))
            .collect();

        // clique placements, scored by how many compatible types they keep;
        // opening a clique comes last
        let ci = c.index();
        let must: Vec<usize> = self.g.class(c).iter().filter(|&w| forced[w] == Some(true)).collect();
        let cap = self.spec.max_clique_size(c);
        let keeps = |p: &Pending, members: &[usize], g: &ColoredGraph| {
            p.over.iter().filter(|&&y| g.color(y) == c).all(|&y| p.wants(y) == Some(members.contains(&y)))
        };
        let mut options: Vec<(usize, usize, u32, Option<usize>)> = Vec::new();
        for (k, clique) in self.cliques[ci].iter().enumerate() {
            let ok = clique.iter().all(|&w| forced[w] != Some(false)) && must.iter().all(|w| clique.contains(w));
            if ok && cap.allows(clique.len() + 1) {
                let score = compat.iter().filter(|p| keeps(p, clique, &self.g)).count();
                options.push((score, clique.len(), self.rng.gen(), Some(k)));
            }
        }
        if must.is_empty() && self.spec.max_clique_count(c).allows(self.cliques[ci].len() + 1) {
            let score = compat.iter().filter(|p| keeps(p, &[], &self.g)).count();
            options.push((score, 0, self.rng.gen(), None));
        }
        options.sort_by(|a, b| {
            (a.3.is_none(), std::cmp::Reverse(a.0), a.1, a.2).cmp(&(b.3.is_none(), std::cmp::Reverse(b.0), b.1, b.2))
        });

        let other = c.other();
        let fixed_cross: Vec<usize> = self.g.class(other).iter().filter(|&w| forced[w] == Some(true)).collect();
        let free: Vec<usize> = self.g.class(other).iter().filter(|&w| forced[w].is_none()).collect();

        for (_, _, _, option) in options {
            let saved = self.g.clone();
            let members: Vec<usize> = option.map(|k| self.cliques[ci][k].clone()).unwrap_or_default();
            let w = self.g.push_vertex(c);
            for &u in members.iter().chain(&fixed_cross) {
                self.g.add_edge(u, w);
            }
            let mut avoid: VertexSet = free.iter().copied().collect();
            if self.spec.patterns_ok_through(&self.g, w, Some(&avoid)) {
                let kept: Vec<&Pending> = compat.iter().copied().filter(|p| keeps(p, &members, &saved)).collect();
                let mut density = Density {
                    alive: vec![true; kept.len()],
                    undecided: kept
                        .iter()
                        .map(|p| p.over.iter().filter(|&&y| avoid.contains(y)).count() as u32)
                        .collect(),
                    by_vertex: vec![Vec::new(); n],
                };
                for (j, p) in kept.iter().enumerate() {
                    for (i, &y) in p.over.iter().enumerate() {
                        if avoid.contains(y) {
                            density.by_vertex[y].push((j, p.mask >> i & 1 == 1));
                        }
                    }
                }
                let mut ahead = Lookahead::new(&saved, self.t);
                let mut nodes = 0;
                if self.decide(w, &free, 0, &mut avoid, &mut density, &mut ahead, &mut nodes) {
                    match option {
                        Some(k) => self.cliques[ci][k].push(w),
                        None => self.cliques[ci].push(vec![w]),
                    }
                    return Some(w);
                }
            }
            self.g = saved;
        }
        None
    }

    /// Decides the cross pairs `free[k..]` to `w` by backtracking, checking
    /// forbidden patterns among settled vertices after every decision.
    #[allow(clippy::too_many_arguments)]
    fn decide(
        &mut self,
        w: usize,
        free: &[usize],
        k: usize,
        avoid: &mut VertexSet,
        density: &mut Density,
        ahead: &mut Lookahead,
        nodes: &mut usize,
    ) -> bool {
        let Some(&u) = free.get(k) else { return true };
        *nodes += 1;
        if *nodes > NODE_LIMIT {
            return false;
        }
        let (dy, dn) = density.weights(u);
        let (ay, an) = ahead.weights(&self.g, u);
        let (yes, no) = (dy + LOOKAHEAD_WEIGHT * ay, dn + LOOKAHEAD_WEIGHT * an);
        let first = if yes != no { yes > no } else { self.rng.gen() };
        avoid.remove(u);
        for val in [first, !first] {
            self.g.set_edge(u, w, val);
            if self.spec.patterns_ok_through_pair(&self.g, u, w, Some(avoid)) {
                let undo = density.fix(u, val);
                let undo_ahead = ahead.fix(&self.g, u, val);
                if self.decide(w, free, k + 1, avoid, density, ahead, nodes) {
                    return true;
                }
                ahead.unfix(undo_ahead);
                density.unfix(undo);
            }
            if *nodes > NODE_LIMIT {
                break;
            }
        }
        self.g.set_edge(u, w, false);
        avoid.insert(u);
        false
    }
}

/// Extends `g` inside `spec` until it has the `t`-extension property or
/// holds `budget` vertices. `seed` drives tie-breaking; `None` uses seed 0.
pub fn extension_closure(
    spec: &ClassSpec,
    g: &ColoredGraph,
    t: usize,
    budget: usize,
    seed: Option<u64>,
) -> Result<Approximant> {
    if t > MAX_LEVEL {
        return Err(Error::Precondition(format!("level {t} exceeds the supported maximum {MAX_LEVEL}")));
    }
    if !spec.member(g) {
        return Err(Error::NotMember);
    }
    let cliques = Color::ALL.map(|c| clique_partition(g, c).expect("members have clique-union classes"));
    let mut b = Builder {
        spec,
        t,
        g: g.clone(),
        table: TypeTable::new(spec),
        rng: ChaCha8Rng::seed_from_u64(seed.unwrap_or(0)),
        cliques,
        log: Vec::new(),
        scratch: Vec::new(),
        masks: Vec::new(),
    };

    let mut exhausted = false;
    let mut missing: VecDeque<Pending> = b.all_missing().into();
    while let Some(target) = missing.front().cloned() {
        if b.g.n() >= budget {
            exhausted = true;
            break;
        }
        missing.make_contiguous();
        match b.realize(&target, missing.as_slices().0) {
            Some(w) => {
                let before = missing.len();
                missing.retain(|p| !realizes(&b.g, w, p));
                b.log.push(LogEvent::Added {
                    vertex: w,
                    color: target.color,
                    over: target.over.clone(),
                    adjacent: target.adjacent(),
                    realized: before - missing.len(),
                });
                missing.extend(b.missing_through(w));
            }
            None => {
                b.log.push(LogEvent::Unrealizable {
                    over: target.over.clone(),
                    color: target.color,
                    adjacent: target.adjacent(),
                });
                missing.pop_front();
            }
        }
    }

    let graph = b.g;
    if !spec.member(&graph) {
        return Err(Error::Internal("extension closure left the class".into()));
    }
    let level = extension_level(spec, &graph, t);
    Ok(Approximant {
        graph,
        spec: spec.clone(),
        level,
        requested_level: t,
        budget,
        seed,
        exhausted: exhausted || level < t,
        log: b.log,
    })
}

/// Approximant of the limit of `spec`, grown from a structured seed graph
/// when one is known and fits the budget, from the empty graph otherwise.
pub fn build_spec(spec: &ClassSpec, t: usize, budget: usize, seed: Option<u64>) -> Result<Approximant> {
    let start = structured_seed(spec, t).filter(|g| g.n() <= budget).unwrap_or_else(ColoredGraph::empty);
    extension_closure(spec, &start, t, budget, seed)
}

/// Approximant of the limit of a named family.
pub fn build_family(family: Family, t: usize, budget: usize, seed: Option<u64>) -> Result<Approximant> {
    build_spec(&family.spec(), t, budget, seed)
}

/// Approximant of the generic bipartite graph: both classes independent,
/// cross edges unconstrained.
pub fn build_generic_bipartite(t: usize, budget: usize) -> Result<Approximant> {
    build_family(Family::GenericBipartite, t, budget, None)
}

/// Approximant of the limit of the class with at most `r` red and `b` blue
/// cliques and no other constraint.
pub fn build_g_rb(r: CliqueBound, b: CliqueBound, t: usize, budget: usize) -> Result<Approximant> {
    for (x, name) in [(r, "r"), (b, "b")] {
        if x.finite().is_some_and(|k| k < 2) {
            return Err(Error::Precondition(format!("{name} must be at least 2 or unbounded")));
        }
    }
    build_family(Family::G(r, b), t, budget, None)
}

/// A subset with an in-class type no vertex realizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingType {
    pub over: Vec<usize>,
    pub color: Color,
    pub adjacent: Vec<usize>,
}

/// Reusable state for scanning subsets: the membership memo and buffers.
struct Scan<'a> {
    table: TypeTable<'a>,
    buf: Vec<u64>,
    masks: Vec<u32>,
}

impl<'a> Scan<'a> {
    fn new(spec: &'a ClassSpec) -> Self {
        Scan { table: TypeTable::new(spec), buf: Vec::new(), masks: Vec::new() }
    }

    fn missing_over(&mut self, g: &ColoredGraph, s: &[usize]) -> Option<MissingType> {
        for c in Color::ALL {
            self.masks.clear();
            let masks = &mut self.masks;
            unrealized_masks(g, s, c, &mut self.buf, &mut |m| masks.push(m));
            self.masks.sort_unstable();
            for i in 0..self.masks.len() {
                let mask = self.masks[i];
                if self.table.in_class(g, s, c, mask) {
                    let adjacent = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &y)| y).collect();
                    return Some(MissingType { over: s.to_vec(), color: c, adjacent });
                }
            }
        }
        None
    }
}

/// Some unrealized in-class type over a subset of exactly `k` vertices.
pub fn missing_type_of_size(spec: &ClassSpec, g: &ColoredGraph, k: usize) -> Option<MissingType> {
    if k == 0 {
        return Scan::new(spec).missing_over(g, &[]);
    }
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map_init(
            || Scan::new(spec),
            |scan, a| {
                let rest: Vec<usize> = (a + 1..n).collect();
                let mut found = None;
                for_each_combination(&rest, k - 1, &mut |tail| {
                    if found.is_some() {
                        return;
                    }
                    let mut s = Vec::with_capacity(k);
                    s.push(a);
                    s.extend_from_slice(tail);
                    found = scan.missing_over(g, &s);
                });
                found
            },
        )
        .find_first(Option::is_some)
        .flatten()
}

/// Largest `t' <= t` such that `g` has the `t'`-extension property in
/// `spec`, by exhaustive scan.
pub fn extension_level(spec: &ClassSpec, g: &ColoredGraph, t: usize) -> usize {
    (0..t).find(|&k| missing_type_of_size(spec, g, k).is_some()).unwrap_or(t)
}

/// Re-verifies the `t`-extension property of an approximant from scratch.
pub fn verify_extension_property(a: &Approximant, t: usize) -> bool {
    extension_level(&a.spec, &a.graph, t) >= t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CliqueBound::{Finite, Unbounded};

    /// Whether a vertex outside `s` has color `c` and neighbors `mask` in `s`.
    fn type_realized(g: &ColoredGraph, s: &[usize], c: Color, mask: u32) -> bool {
        let mut cand = g.class(c).clone();
        for &y in s {
            cand.remove(y);
        }
        for (i, &y) in s.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cand.intersect_with(g.neighbors(y));
            } else {
                cand.difference_with(g.neighbors(y));
            }
            if cand.is_empty() {
                return false;
            }
        }
        !cand.is_empty()
    }

    proptest::proptest! {
        #[test]
        fn unrealized_masks_match_direct_check(
            n in 1usize..=12,
            edges in proptest::collection::vec((0usize..12, 0usize..12), 0..40),
            colors in proptest::prelude::any::<u16>(),
            picks in proptest::collection::btree_set(0usize..12, 0..=4),
        ) {
            let cs: Vec<Color> = (0..n).map(|i| if colors >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
            let mut g = ColoredGraph::from_edges(cs, Vec::new()).unwrap();
            for (a, b) in edges {
                if a < n && b < n && a != b {
                    g.add_edge(a, b);
                }
            }
            let s: Vec<usize> = picks.into_iter().filter(|&v| v < n).collect();
            for c in Color::ALL {
                let mut got = Vec::new();
                unrealized_masks(&g, &s, c, &mut Vec::new(), &mut |m| got.push(m));
                got.sort_unstable();
                let want: Vec<u32> = (0..1u32 << s.len()).filter(|&m| !type_realized(&g, &s, c, m)).collect();
                proptest::prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn level_zero_is_identity() {
        let g = ColoredGraph::from_spec("rb", &[(0, 1)]);
        let a = extension_closure(&ClassSpec::cuh(), &g, 0, 10, None).unwrap();
        assert_eq!(a.graph, g);
        assert_eq!(a.level, 0);
        assert!(verify_extension_property(&a, 0));
    }

    #[test]
    fn empty_graph_levels() {
        let spec = ClassSpec::cuh();
        assert_eq!(extension_level(&spec, &ColoredGraph::empty(), 0), 0);
        assert_eq!(extension_level(&spec, &ColoredGraph::empty(), 3), 0);
    }

    #[test]
    fn generic_bipartite_small_level() {
        let a = build_generic_bipartite(2, 50).unwrap();
        assert_eq!(a.level, 2);
        assert!(!a.exhausted);
        // every red vertex has a blue neighbor and a blue non-neighbor
        let g = &a.graph;
        for r in g.class(Color::Red).iter() {
            assert!(!g.neighbors_in(r, Color::Blue).is_empty());
            assert!(g.neighbors_in(r, Color::Blue).len() < g.class_size(Color::Blue));
        }
    }

    #[test]
    fn monochromatic_closure_is_small() {
        let spec = crate::spec::monochromatic_spec(Finite(2), Finite(2));
        let a = extension_closure(&spec, &ColoredGraph::empty(), 4, 40, None).unwrap();
        assert_eq!(a.level, 4);
        assert_eq!(a.graph.class_size(Color::Red), 4);
        assert_eq!(a.graph.class_size(Color::Blue), 0);
        let unbounded = crate::spec::monochromatic_spec(Unbounded, Unbounded);
        let a = extension_closure(&unbounded, &ColoredGraph::empty(), 4, 40, None).unwrap();
        assert_eq!(a.level, 4);
    }

    #[test]
    fn deleting_a_vertex_breaks_the_level() {
        let a = build_family(Family::F21, 3, 200, None).unwrap();
        assert_eq!(a.level, 3);
        let breaks = (0..a.graph.n()).any(|v| {
            let keep: Vec<usize> = (0..a.graph.n()).filter(|&u| u != v).collect();
            let smaller = Approximant { graph: induced_unchecked(&a.graph, &keep), ..a.clone() };
            !verify_extension_property(&smaller, 3)
        });
        assert!(breaks);
    }

    #[test]
    fn json_round_trip() {
        let a = build_family(Family::F22, 3, 100, Some(5)).unwrap();
        let b = Approximant::from_json(&a.to_json().to_string()).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.level, b.level);
        assert_eq!(a.log, b.log);
        assert!(b.spec.same_class(&a.spec));
    }

    #[test]
    fn combinations_in_order() {
        let mut got = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, &mut |s| got.push(s.to_vec()));
        assert_eq!(got.len(), 6);
        assert_eq!(got[0], vec![1, 2]);
        assert_eq!(got[5], vec![3, 4]);
    }
}
