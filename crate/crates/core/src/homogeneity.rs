//! Ultrahomogeneity of finite graphs, its one-step relativization for
//! approximants, piecewise ultrahomogeneity and the D / D-tilde criterion.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::embed::is_realized;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};
use crate::iso::{canonical_form, for_each_isomorphism, CanonCode};
use crate::pattern::{Pattern, PatternName};
use crate::profile::{class_profile, clique_partition};
use crate::scan::{piece_kind, PieceKind};
use crate::transform::{detect_blow_up, induced_unchecked};

/// Largest graph `is_ultrahomogeneous_finite` accepts.
pub const UH_SEARCH_BOUND: usize = 12;
/// Largest `k` accepted by `k_homogeneity`.
pub const MAX_K: usize = 6;
/// Demand size used by the generic piece scan when no level is known.
pub const DEFAULT_PIECE_BOUND: usize = 2;

/// Generators and order of the automorphisms of `g` fixing `fixed`
/// pointwise. One automorphism is kept per orbit point along a base, so the
/// generators form a transversal chain and the order is the product of the
/// orbit sizes.
pub fn stabilizer_chain(g: &ColoredGraph, fixed: &[usize]) -> (Vec<Vec<usize>>, u128) {
    let mut pins: Vec<(usize, usize)> = fixed.iter().map(|&v| (v, v)).collect();
    let mut pinned = vec![false; g.n()];
    for &v in fixed {
        pinned[v] = true;
    }
    let mut gens = Vec::new();
    let mut order: u128 = 1;
    for b in g.vertices() {
        if pinned[b] {
            continue;
        }
        let mut orbit = 1u128;
        for w in g.vertices() {
            if w == b || pinned[w] || g.color(w) != g.color(b) || g.degree(w) != g.degree(b) {
                continue;
            }
            pins.push((b, w));
            let mut found = None;
            for_each_isomorphism(g, g, &pins, |t| {
                found = Some(t.to_vec());
                false
            });
            pins.pop();
            if let Some(t) = found {
                orbit += 1;
                gens.push(t);
            }
        }
        order *= orbit;
        pins.push((b, b));
        pinned[b] = true;
    }
    (gens, order)
}

/// Number of automorphisms, without listing them.
pub fn automorphism_count(g: &ColoredGraph) -> u128 {
    stabilizer_chain(g, &[]).1
}

/// One-point extension types over the listed vertices, in their order:
/// `color << positions | adjacency mask` for every vertex outside them.
fn types_over(g: &ColoredGraph, tuple: &[usize]) -> Vec<u32> {
    let m = tuple.len();
    let mut out: Vec<u32> = g
        .vertices()
        .filter(|v| !tuple.contains(v))
        .map(|v| {
            let mask =
                tuple.iter().enumerate().filter(|&(_, &a)| g.adjacent(a, v)).fold(0u32, |acc, (i, _)| acc | 1 << i);
            (g.color(v).index() as u32) << m | mask
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Relabels the positions of extension types: position `i` moves to `perm[i]`.
fn permute_types(types: &[u32], m: usize, perm: &[usize]) -> Vec<u32> {
    let mut out: Vec<u32> = types
        .iter()
        .map(|&t| {
            let mask = t & ((1 << m) - 1);
            let moved = (0..m).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << perm[i]);
            (t >> m) << m | moved
        })
        .collect();
    out.sort_unstable();
    out
}

/// Whether every isomorphism between induced subgraphs of `g` extends to an
/// automorphism of `g`.
///
/// A finite graph has this property iff isomorphic induced subgraphs carry
/// the same one-point extension types. For every subset the types are
/// written in the canonical labeling of the induced subgraph. Subsets with
/// the same canonical form must then agree, and the common type set must be
/// invariant under the automorphisms of the canonical graph, which is
/// checked on generators.
pub fn is_ultrahomogeneous_finite(g: &ColoredGraph) -> Result<bool> {
    let n = g.n();
    if n > UH_SEARCH_BOUND {
        return Err(Error::TooLarge { n, bound: UH_SEARCH_BOUND });
    }
    let mut seen: HashMap<CanonCode, (ColoredGraph, Vec<u32>)> = HashMap::new();
    for bits in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
        let sub = induced_unchecked(g, &subset);
        let canon = canonical_form(&sub);
        let pos = canon.positions();
        let types = permute_types(&types_over(g, &subset), subset.len(), &pos);
        match seen.entry(canon.code) {
            Entry::Occupied(e) => {
                if e.get().1 != types {
                    return Ok(false);
                }
            }
            Entry::Vacant(e) => {
                e.insert((sub.permuted(&pos), types));
            }
        }
    }
    for (k, types) in seen.values() {
        let (gens, _) = stabilizer_chain(k, &[]);
        if gens.iter().any(|p| permute_types(types, k.n(), p) != *types) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quantifier-free type of a vertex tuple: length, colors and adjacencies.
fn tuple_code(g: &ColoredGraph, tuple: &[usize]) -> u64 {
    let mut code = tuple.len() as u64;
    let mut shift = 3;
    for &v in tuple {
        code |= (g.color(v).index() as u64) << shift;
        shift += 1;
    }
    for (i, &u) in tuple.iter().enumerate() {
        for &v in &tuple[..i] {
            code |= (g.adjacent(u, v) as u64) << shift;
            shift += 1;
        }
    }
    code
}

fn for_each_permutation(m: usize, f: &mut impl FnMut(&[usize])) {
    fn go(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            go(p, i + 1, f);
            p.swap(i, j);
        }
    }
    go(&mut (0..m).collect(), 0, f)
}

type TypeTable = HashMap<u64, Vec<u32>>;

/// Adds the types of `tuple` under its tuple code. Returns `false` on a
/// disagreement with an earlier tuple of the same code.
fn record(table: &mut TypeTable, code: u64, types: Vec<u32>) -> bool {
    match table.entry(code) {
        Entry::Occupied(e) => *e.get() == types,
        Entry::Vacant(e) => {
            e.insert(types);
            true
        }
    }
}

fn merge(a: Option<TypeTable>, b: Option<TypeTable>) -> Option<TypeTable> {
    let (mut a, b) = (a?, b?);
    for (code, types) in b {
        if !record(&mut a, code, types) {
            return None;
        }
    }
    Some(a)
}

/// Whether every isomorphism between induced subgraphs on at most `k`
/// vertices extends by one vertex in every direction: for every such map
/// `f` and every vertex `v` some `w` makes `f ∪ {v -> w}` an isomorphism.
///
/// Equivalently, tuples with the same quantifier-free type carry the same
/// set of one-point extension types, which is what is scanned. `k` is
/// capped at `n - 1` and must not exceed [`MAX_K`].
pub fn k_homogeneity(g: &ColoredGraph, k: usize) -> Result<bool> {
    let n = g.n();
    let k = k.min(n.saturating_sub(1));
    if k > MAX_K {
        return Err(Error::TooLarge { n: k, bound: MAX_K });
    }
    let mut base = TypeTable::new();
    if !record(&mut base, tuple_code(g, &[]), types_over(g, &[])) {
        return Ok(false);
    }
    if k == 0 {
        return Ok(true);
    }
    let table = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut table = TypeTable::new();
            let mut ok = true;
            let mut subset = vec![first];
            subsets_from(g, &mut subset, k, &mut |s| {
                let types = types_over(g, s);
                let m = s.len();
                for_each_permutation(m, &mut |p| {
                    if !ok {
                        return;
                    }
                    // tuple position i holds s[p[i]], so old position p[i]
                    // becomes new position i
                    let mut inv = vec![0; m];
                    for (i, &pi) in p.iter().enumerate() {
                        inv[pi] = i;
                    }
                    let tuple: Vec<usize> = p.iter().map(|&i| s[i]).collect();
                    ok = record(&mut table, tuple_code(g, &tuple), permute_types(&types, m, &inv));
                });
                ok
            });
            ok.then_some(table)
        })
        .reduce(|| Some(TypeTable::new()), merge);
    Ok(merge(Some(base), table).is_some())
}

/// Visits every sorted subset extending `prefix` with larger vertices, up to
/// `k` elements, stopping when `f` returns `false`.
fn subsets_from(g: &ColoredGraph, prefix: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if !f(prefix) {
        return false;
    }
    if prefix.len() == k {
        return true;
    }
    let last = *prefix.last().expect("nonempty prefix");
    for v in last + 1..g.n() {
        prefix.push(v);
        let go_on = subsets_from(g, prefix, k, f);
        prefix.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// The verdict on one pair of maximal cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
    pub kind: PieceKind,
    pub ultrahomogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseReport {
    pub verdict: bool,
    pub pieces: usize,
    /// Demand size used by the generic scan of large pieces.
    pub bound: usize,
    /// The first failing piece in (red clique, blue clique) order.
    pub failing: Option<PieceReport>,
}

fn judge_piece(
    g: &ColoredGraph,
    red: &[usize],
    blue: &[usize],
    bound: usize,
    memo: &mut HashMap<CanonCode, bool>,
) -> Result<PieceReport> {
    let kind = piece_kind(g, red, blue, bound);
    let ultrahomogeneous = match kind {
        PieceKind::HomogeneouslyConnected | PieceKind::Matching | PieceKind::CoMatching => true,
        _ if red.len() + blue.len() <= UH_SEARCH_BOUND => {
            let mut vs: Vec<usize> = red.iter().chain(blue).copied().collect();
            vs.sort_unstable();
            let piece = induced_unchecked(g, &vs);
            let code = canonical_form(&piece).code;
            match memo.get(&code) {
                Some(&v) => v,
                None => {
                    let v = is_ultrahomogeneous_finite(&piece)?;
                    memo.insert(code, v);
                    v
                }
            }
        }
        PieceKind::GenericLike => true,
        PieceKind::Irregular => false,
    };
    Ok(PieceReport { red: red.to_vec(), blue: blue.to_vec(), kind, ultrahomogeneous })
}

/// Tests every union of a maximal red and a maximal blue clique. Pieces whose
/// cross edges are homogeneous, a perfect matching or its complement pass.
/// Other pieces with at most [`UH_SEARCH_BOUND`] vertices are decided
/// exactly; larger ones pass iff they scan generic with demands of at most
/// `bound` vertices per side.
pub fn piecewise_report(g: &ColoredGraph, bound: usize) -> Result<PiecewiseReport> {
    let red = clique_partition(g, Color::Red).ok_or(Error::NotCliqueUnion { color: Color::Red })?;
    let blue = clique_partition(g, Color::Blue).ok_or(Error::NotCliqueUnion { color: Color::Blue })?;
    let pairs: Vec<(usize, usize)> = (0..red.len()).flat_map(|i| (0..blue.len()).map(move |j| (i, j))).collect();
    let reports: Vec<PieceReport> = pairs
        .par_iter()
        .map_init(HashMap::new, |memo, &(i, j)| judge_piece(g, &red[i], &blue[j], bound, memo))
        .collect::<Result<_>>()?;
    let failing = reports.into_iter().find(|r| !r.ultrahomogeneous);
    Ok(PiecewiseReport { verdict: failing.is_none(), pieces: pairs.len(), bound, failing })
}

/// [`piecewise_report`] at [`DEFAULT_PIECE_BOUND`], verdict only.
pub fn piecewise_check(g: &ColoredGraph) -> Result<bool> {
    piecewise_report(g, DEFAULT_PIECE_BOUND).map(|r| r.verdict)
}

/// Whether `g` has both color classes of size two with `T_r`, `T_b` and their
/// cross complements omitted, the one shape excluded from the D criterion.
pub fn is_f22_shaped(g: &ColoredGraph) -> bool {
    let p = class_profile(g);
    p.omega_red == 2
        && p.omega_blue == 2
        && [PatternName::Tr, PatternName::TrTilde, PatternName::Tb, PatternName::TbTilde]
            .into_iter()
            .all(|name| !is_realized(g, &Pattern::named(name).graph))
}

/// Checks that `g` is basic (clique unions, no blow-up, at least two
/// maximal cliques per color), has a color with cliques of size two or more,
/// and is not shaped like F22.
pub fn d_criterion_gate(g: &ColoredGraph) -> Result<()> {
    if detect_blow_up(g)?.is_some() {
        return Err(Error::Precondition("graph is a blow-up".into()));
    }
    let p = class_profile(g);
    if p.alpha_red < 2 || p.alpha_blue < 2 {
        return Err(Error::Precondition("a color class has fewer than two maximal cliques".into()));
    }
    if p.omega_red == 1 && p.omega_blue == 1 {
        return Err(Error::Precondition("both color classes are independent".into()));
    }
    if is_f22_shaped(g) {
        return Err(Error::Precondition("graph is shaped like F22".into()));
    }
    Ok(())
}

/// Whether both `D` and its cross complement are realized, after
/// [`d_criterion_gate`].
pub fn d_criterion(g: &ColoredGraph) -> Result<bool> {
    d_criterion_gate(g)?;
    Ok(is_realized(g, &Pattern::named(PatternName::D).graph)
        && is_realized(g, &Pattern::named(PatternName::DTilde).graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PartialMap;
    use crate::iso::automorphisms;

    /// Every isomorphism between induced subgraphs, by brute force.
    fn partial_isos(g: &ColoredGraph, max: usize) -> Vec<PartialMap> {
        let n = g.n();
        let mut out = Vec::new();
        fn go(g: &ColoredGraph, max: usize, from: usize, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<PartialMap>) {
            out.push(PartialMap::from_pairs(pairs.clone()));
            if pairs.len() == max {
                return;
            }
            for x in from..g.n() {
                for y in g.vertices() {
                    if pairs.iter().any(|&(_, b)| b == y) || g.color(x) != g.color(y) {
                        continue;
                    }
                    if pairs.iter().any(|&(a, b)| g.adjacent(a, x) != g.adjacent(b, y)) {
                        continue;
                    }
                    pairs.push((x, y));
                    go(g, max, x + 1, pairs, out);
                    pairs.pop();
                }
            }
        }
        go(g, max.min(n), 0, &mut Vec::new(), &mut out);
        out
    }

    fn brute_uh(g: &ColoredGraph) -> bool {
        let auts = automorphisms(g);
        partial_isos(g, g.n()).iter().all(|f| auts.iter().any(|a| f.pairs().iter().all(|&(x, y)| a[x] == y)))
    }

    fn brute_k_homogeneous(g: &ColoredGraph, k: usize) -> bool {
        partial_isos(g, k).iter().all(|f| {
            g.vertices().filter(|&v| f.get(v).is_none()).all(|v| {
                g.vertices().any(|w| {
                    let mut pairs = f.pairs().to_vec();
                    pairs.push((v, w));
                    PartialMap::from_pairs(pairs).is_partial_isomorphism(g, g)
                })
            })
        })
    }

    #[test]
    fn small_examples() {
        let k3 = ColoredGraph::from_spec("rrr", &[(0, 1), (0, 2), (1, 2)]);
        assert!(is_ultrahomogeneous_finite(&k3).unwrap());
        let p4 = ColoredGraph::from_spec("rrrr", &[(0, 1), (1, 2), (2, 3)]);
        assert!(!is_ultrahomogeneous_finite(&p4).unwrap());
        assert!(!brute_uh(&p4));
        let c5 = ColoredGraph::from_spec("rrrrr", &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(is_ultrahomogeneous_finite(&c5).unwrap());
        let d = Pattern::named(PatternName::D).graph;
        assert_eq!(is_ultrahomogeneous_finite(&d).unwrap(), brute_uh(&d));
        let big = ColoredGraph::edgeless(vec![Color::Red; 13]);
        assert!(matches!(is_ultrahomogeneous_finite(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn large_symmetric_graphs_are_fast() {
        let k12 = ColoredGraph::monochromatic(Color::Red, 12, |_, _| true);
        assert_eq!(automorphism_count(&k12), 479_001_600);
        assert!(is_ultrahomogeneous_finite(&k12).unwrap());
        // a union of equal cliques is homogeneous, a union of unequal ones is not
        let two = ColoredGraph::monochromatic(Color::Red, 12, |i, j| i / 6 == j / 6);
        assert!(is_ultrahomogeneous_finite(&two).unwrap());
        let uneven = ColoredGraph::monochromatic(Color::Red, 5, |i, j| i < 2 && j < 2 || i >= 2 && j >= 2);
        assert!(!is_ultrahomogeneous_finite(&uneven).unwrap());
    }

    #[test]
    fn matching_pieces_are_homogeneous() {
        for n in 1..=5 {
            let colors: String = "r".repeat(n) + &"b".repeat(n);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    edges.push((j, i));
                    edges.push((n + j, n + i));
                }
                edges.push((i, n + i));
            }
            let m = ColoredGraph::from_spec(&colors, &edges);
            assert!(is_ultrahomogeneous_finite(&m).unwrap());
            assert!(is_ultrahomogeneous_finite(&crate::transform::cross_complement(&m)).unwrap());
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for g in [
            Pattern::named(PatternName::D).graph,
            ColoredGraph::from_spec("rrbb", &[(0, 1), (2, 3), (0, 2), (1, 3)]),
            ColoredGraph::monochromatic(Color::Blue, 5, |i, j| (i + 1) % 5 == j || (j + 1) % 5 == i),
        ] {
            assert_eq!(automorphism_count(&g), automorphisms(&g).len() as u128);
        }
    }

    #[test]
    fn k_homogeneity_examples() {
        let p4 = ColoredGraph::from_spec("rrrr", &[(0, 1), (1, 2), (2, 3)]);
        assert!(k_homogeneity(&p4, 0).unwrap());
        assert_eq!(k_homogeneity(&p4, 1).unwrap(), brute_k_homogeneous(&p4, 1));
        assert_eq!(k_homogeneity(&p4, 3).unwrap(), brute_uh(&p4));
        let c5 = ColoredGraph::from_spec("rrrrr", &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(k_homogeneity(&c5, 4).unwrap());
    }

    #[test]
    fn piecewise_examples() {
        // red clique and blue clique, fully joined
        let full = ColoredGraph::from_spec("rrbb", &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(piecewise_check(&full).unwrap());
        // red 2-clique with one blue vertex seeing one end
        let half = ColoredGraph::from_spec("rrb", &[(0, 1), (0, 2)]);
        let r = piecewise_report(&half, 2).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failing.unwrap().red, vec![0, 1]);
        let p3 = ColoredGraph::from_spec("rrr", &[(0, 1), (1, 2)]);
        assert!(piecewise_check(&p3).is_err());
    }

    #[test]
    fn gate_rejects() {
        let d = Pattern::named(PatternName::D).graph;
        assert!(matches!(d_criterion(&d), Err(Error::Precondition(_))));
        let bip = ColoredGraph::from_spec("rrbb", &[(0, 2)]);
        assert!(d_criterion_gate(&bip).is_err());
    }

    proptest::proptest! {
        #[test]
        fn uh_matches_brute_force(n in 1usize..=6, bits in proptest::prelude::any::<u32>(), colors in proptest::prelude::any::<u8>()) {
            let cs: Vec<Color> = (0..n).map(|i| if colors >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
            let mut edges = Vec::new();
            let mut b = 0;
            for i in 0..n {
                for j in 0..i {
                    if bits >> b & 1 == 1 {
                        edges.push((j, i));
                    }
                    b += 1;
                }
            }
            let g = ColoredGraph::from_edges(cs, edges).unwrap();
            let uh = brute_uh(&g);
            proptest::prop_assert_eq!(is_ultrahomogeneous_finite(&g).unwrap(), uh);
            proptest::prop_assert_eq!(k_homogeneity(&g, n).unwrap(), uh);
            for k in 0..3 {
                proptest::prop_assert_eq!(k_homogeneity(&g, k).unwrap(), brute_k_homogeneous(&g, k));
            }
        }
    }
}
