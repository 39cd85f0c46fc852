//! The colored graph carrier and its small companions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const ALL: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        if i == 0 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite simple graph whose vertices `0..n` are colored red or blue.
#[derive(Clone, Default)]
pub struct ColoredGraph {
    colors: Vec<Color>,
    classes: [VertexSet; 2],
    adj: Vec<VertexSet>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.colors == other.colors && self.adj == other.adj
    }
}

impl Eq for ColoredGraph {}

impl std::hash::Hash for ColoredGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.colors.hash(state);
        self.adj.hash(state);
    }
}

impl ColoredGraph {
    /// Edgeless graph with the given coloring.
    pub fn edgeless(colors: Vec<Color>) -> Self {
        let n = colors.len();
        let mut classes = [VertexSet::with_capacity(n), VertexSet::with_capacity(n)];
        for (v, c) in colors.iter().enumerate() {
            classes[c.index()].insert(v);
        }
        Self { colors, classes, adj: vec![VertexSet::with_capacity(n); n] }
    }

    pub fn empty() -> Self {
        Self::edgeless(Vec::new())
    }

    pub fn from_edges<I>(colors: Vec<Color>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::edgeless(colors);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a color string such as `"rrb"` and an edge list.
    /// Intended for fixtures; panics on malformed input.
    pub fn from_spec(colors: &str, edges: &[(usize, usize)]) -> Self {
        let colors = colors
            .chars()
            .map(|c| match c {
                'r' => Color::Red,
                'b' => Color::Blue,
                _ => panic!("bad color letter {c:?}"),
            })
            .collect();
        Self::from_edges(colors, edges.iter().copied()).expect("valid fixture graph")
    }

    /// Graph on `n` vertices of one color with edges chosen by `f`.
    pub fn monochromatic(c: Color, n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = Self::edgeless(vec![c; n]);
        for u in 0..n {
            for v in u + 1..n {
                if f(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    /// Appends an isolated vertex and returns its id.
    pub(crate) fn push_vertex(&mut self, c: Color) -> usize {
        let v = self.colors.len();
        self.colors.push(c);
        self.classes[c.index()].insert(v);
        self.adj.push(VertexSet::with_capacity(v + 1));
        v
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// All vertices of color `c`.
    #[inline]
    pub fn class(&self, c: Color) -> &VertexSet {
        &self.classes[c.index()]
    }

    pub fn class_size(&self, c: Color) -> usize {
        self.classes[c.index()].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` of color `c`: `N^c(v)`.
    pub fn neighbors_in(&self, v: usize, c: Color) -> VertexSet {
        self.adj[v].intersection(self.class(c))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn is_cross(&self, u: usize, v: usize) -> bool {
        self.colors[u] != self.colors[v]
    }

    pub fn is_monochromatic(&self) -> bool {
        self.class(Color::Red).is_empty() || self.class(Color::Blue).is_empty()
    }

    pub fn color_string(&self) -> String {
        self.colors.iter().map(|c| c.letter()).collect()
    }

    /// `u` and `v` have the same color and `N(u) - v = N(v) - u`.
    pub fn twins(&self, u: usize, v: usize) -> bool {
        if self.colors[u] != self.colors[v] {
            return false;
        }
        let mut nu = self.adj[u].clone();
        nu.remove(v);
        let mut nv = self.adj[v].clone();
        nv.remove(u);
        nu == nv
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.n());
        let mut colors = vec![Color::Red; self.n()];
        for (v, &p) in perm.iter().enumerate() {
            colors[p] = self.colors[v];
        }
        let mut g = ColoredGraph::edgeless(colors);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph({} ", self.color_string())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A clique size or clique count cap: a natural number or no cap at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CliqueBound {
    Finite(usize),
    Unbounded,
}

impl CliqueBound {
    pub fn allows(self, n: usize) -> bool {
        match self {
            CliqueBound::Finite(k) => n <= k,
            CliqueBound::Unbounded => true,
        }
    }

    pub fn successor(self) -> CliqueBound {
        match self {
            CliqueBound::Finite(k) => CliqueBound::Finite(k + 1),
            CliqueBound::Unbounded => CliqueBound::Unbounded,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            CliqueBound::Finite(k) => Some(k),
            CliqueBound::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, CliqueBound::Unbounded)
    }
}

impl fmt::Display for CliqueBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliqueBound::Finite(k) => write!(f, "{k}"),
            CliqueBound::Unbounded => f.write_str("inf"),
        }
    }
}

impl Serialize for CliqueBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CliqueBound::Finite(k) => s.serialize_u64(*k as u64),
            CliqueBound::Unbounded => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for CliqueBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(CliqueBound::Finite(k as usize)),
            Raw::Str(s) if s == "inf" || s == "unbounded" => Ok(CliqueBound::Unbounded),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected a natural number or \"inf\", got {s:?}"))),
        }
    }
}

/// An injective partial map between the vertex sets of two graphs, stored as
/// `(source, target)` pairs sorted by source.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialMap {
    pairs: Vec<(usize, usize)>,
}

impl PartialMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self { pairs: (0..n).map(|v| (v, v)).collect() }
    }

    /// Map `i -> targets[i]`.
    pub fn from_targets(targets: &[usize]) -> Self {
        Self { pairs: targets.iter().copied().enumerate().collect() }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        match self.pairs.binary_search_by_key(&x, |p| p.0) {
            Ok(i) => self.pairs[i].1 = y,
            Err(i) => self.pairs.insert(i, (x, y)),
        }
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    pub fn inverse(&self) -> PartialMap {
        PartialMap::from_pairs(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// `other ∘ self`: first `self`, then `other`. Pairs whose image leaves
    /// `other`'s domain are dropped.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap::from_pairs(self.pairs.iter().filter_map(|&(a, b)| other.get(b).map(|c| (a, c))).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut img: Vec<usize> = self.image().collect();
        img.sort_unstable();
        img.windows(2).all(|w| w[0] != w[1])
    }

    /// Injective, color preserving, and preserves adjacency and
    /// non-adjacency on its domain.
    pub fn is_partial_isomorphism(&self, g: &ColoredGraph, h: &ColoredGraph) -> bool {
        if !self.is_injective() {
            return false;
        }
        if self.pairs.iter().any(|&(a, b)| a >= g.n() || b >= h.n() || g.color(a) != h.color(b)) {
            return false;
        }
        self.pairs
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| self.pairs[i + 1..].iter().all(|&(c, d)| g.adjacent(a, c) == h.adjacent(b, d)))
    }

    /// A partial isomorphism defined on every vertex of `g`.
    pub fn is_embedding(&self, g: &ColoredGraph, h: &ColoredGraph) -> bool {
        self.len() == g.n() && self.domain().eq(0..g.n()) && self.is_partial_isomorphism(g, h)
    }

    pub fn is_isomorphism(&self, g: &ColoredGraph, h: &ColoredGraph) -> bool {
        g.n() == h.n() && self.is_embedding(g, h)
    }

    /// Targets indexed by source, for maps defined on `0..len`.
    pub fn to_targets(&self) -> Option<Vec<usize>> {
        self.domain().eq(0..self.len()).then(|| self.image().collect())
    }
}
