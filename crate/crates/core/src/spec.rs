//! Class specifications: subclasses of the colored graphs whose color classes
//! are disjoint unions of cliques, cut out by forbidden induced patterns and
//! per-color caps on clique size and clique count.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bitset::VertexSet;
use crate::embed::{is_realized, realized_through_avoiding, realized_through_pair_avoiding};
use crate::error::{Error, Result};
use crate::graph::{CliqueBound, Color, ColoredGraph};
use crate::io::GraphJson;
use crate::iso::{canonical_code, is_isomorphic};
use crate::pattern::{Pattern, PatternName};
use crate::profile::{clique_partition, is_clique_union};
use crate::transform::swap_colors;

/// A forbidden induced pattern, named when it comes from the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forbidden {
    pub name: Option<PatternName>,
    pub graph: ColoredGraph,
}

impl Forbidden {
    pub fn label(&self) -> String {
        match self.name {
            Some(n) => n.to_string(),
            None => format!("custom:{}:{}", self.graph.color_string(), self.graph.edge_count()),
        }
    }
}

/// Monochromatic `P3`s of both colors are always forbidden. Caps on clique
/// size `n` are the same as forbidding `K(c, n+1)`; caps on clique count `n`
/// the same as forbidding `Kbar(c, n+1)`. Such patterns are folded into the
/// caps on insertion, and [`ClassSpec::forbidden_graphs`] lists them back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub name: Option<String>,
    forbidden: Vec<Forbidden>,
    max_clique_size: [CliqueBound; 2],
    max_clique_count: [CliqueBound; 2],
}

impl Default for ClassSpec {
    fn default() -> Self {
        Self::cuh()
    }
}

impl ClassSpec {
    /// All finite colored graphs whose color classes are unions of cliques.
    pub fn cuh() -> Self {
        ClassSpec {
            name: None,
            forbidden: Vec::new(),
            max_clique_size: [CliqueBound::Unbounded; 2],
            max_clique_count: [CliqueBound::Unbounded; 2],
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn forbid(mut self, name: PatternName) -> Self {
        self.add_forbidden(Some(name), Pattern::named(name).graph);
        self
    }

    pub fn forbid_graph(mut self, g: ColoredGraph) -> Self {
        self.add_forbidden(None, g);
        self
    }

    pub fn with_max_clique_size(mut self, c: Color, b: CliqueBound) -> Self {
        let slot = &mut self.max_clique_size[c.index()];
        *slot = (*slot).min(b);
        self
    }

    pub fn with_max_clique_count(mut self, c: Color, b: CliqueBound) -> Self {
        let slot = &mut self.max_clique_count[c.index()];
        *slot = (*slot).min(b);
        self
    }

    fn add_forbidden(&mut self, name: Option<PatternName>, g: ColoredGraph) {
        if !g.is_empty() && g.is_monochromatic() {
            let c = g.color(0);
            let n = g.n();
            if g.edge_count() == n * (n - 1) / 2 {
                self.max_clique_size[c.index()] = self.max_clique_size[c.index()].min(CliqueBound::Finite(n - 1));
                return;
            }
            if g.edge_count() == 0 {
                self.max_clique_count[c.index()] = self.max_clique_count[c.index()].min(CliqueBound::Finite(n - 1));
                return;
            }
        }
        // Graphs containing a monochromatic P3 are omitted by every member.
        if !Color::ALL.iter().all(|&c| is_clique_union(&g, c)) {
            return;
        }
        let name = name.or_else(|| {
            crate::pattern::catalog()
                .into_iter()
                .chain([PatternName::Qr, PatternName::Qb].map(Pattern::named))
                .find(|p| is_isomorphic(&p.graph, &g).is_some())
                .map(|p| p.name)
        });
        let code = canonical_code(&g);
        if self.forbidden.iter().any(|f| canonical_code(&f.graph) == code) {
            return;
        }
        self.forbidden.push(Forbidden { name, graph: g });
    }

    /// Equal constraints up to isomorphism of the forbidden graphs, ignoring
    /// names and order.
    pub fn same_class(&self, other: &ClassSpec) -> bool {
        let codes = |s: &ClassSpec| {
            let mut v: Vec<_> = s.forbidden.iter().map(|f| canonical_code(&f.graph)).collect();
            v.sort();
            v
        };
        codes(self) == codes(other)
            && self.max_clique_size == other.max_clique_size
            && self.max_clique_count == other.max_clique_count
    }

    pub fn max_clique_size(&self, c: Color) -> CliqueBound {
        self.max_clique_size[c.index()]
    }

    pub fn max_clique_count(&self, c: Color) -> CliqueBound {
        self.max_clique_count[c.index()]
    }

    /// Forbidden patterns other than the baseline and the caps.
    pub fn forbidden(&self) -> &[Forbidden] {
        &self.forbidden
    }

    /// Every forbidden graph, including the baseline `P3`s and the patterns
    /// equivalent to finite caps.
    pub fn forbidden_graphs(&self) -> Vec<Forbidden> {
        let mut out: Vec<Forbidden> = Color::ALL
            .iter()
            .map(|&c| Forbidden { name: Some(PatternName::P3(c)), graph: Pattern::named(PatternName::P3(c)).graph })
            .collect();
        for c in Color::ALL {
            if let Some(k) = self.max_clique_size(c).finite() {
                let name = PatternName::K(c, k + 1);
                out.push(Forbidden { name: Some(name), graph: Pattern::named(name).graph });
            }
            if let Some(k) = self.max_clique_count(c).finite() {
                let name = PatternName::Kbar(c, k + 1);
                out.push(Forbidden { name: Some(name), graph: Pattern::named(name).graph });
            }
        }
        out.extend(self.forbidden.iter().cloned());
        out
    }

    /// Largest forbidden pattern, ignoring caps.
    pub fn max_pattern_size(&self) -> usize {
        self.forbidden.iter().map(|f| f.graph.n()).max().unwrap_or(0)
    }

    /// Whether `g` omits every forbidden pattern and respects every cap.
    pub fn member(&self, g: &ColoredGraph) -> bool {
        for c in Color::ALL {
            let Some(parts) = clique_partition(g, c) else { return false };
            if !self.max_clique_count(c).allows(parts.len()) {
                return false;
            }
            if parts.iter().any(|p| !self.max_clique_size(c).allows(p.len())) {
                return false;
            }
        }
        self.forbidden.iter().all(|f| !is_realized(g, &f.graph))
    }

    /// Membership of `g` given that `g - v` is a member: only structure
    /// through `v` is examined.
    pub fn member_through(&self, g: &ColoredGraph, v: usize) -> bool {
        self.clique_ok_at(g, v) && self.patterns_ok_through(g, v, None)
    }

    /// Membership of `g` given that flipping the cross pair `u, v` yields a
    /// member: only copies through both endpoints are examined.
    pub fn member_through_pair(&self, g: &ColoredGraph, u: usize, v: usize) -> bool {
        self.patterns_ok_through_pair(g, u, v, None)
    }

    /// No forbidden pattern has a copy through `v` that avoids `avoid`.
    /// Caps and the baseline are not consulted.
    pub fn patterns_ok_through(&self, g: &ColoredGraph, v: usize, avoid: Option<&VertexSet>) -> bool {
        self.forbidden.iter().all(|f| !realized_through_avoiding(g, &f.graph, v, avoid))
    }

    /// No forbidden pattern has a copy through `u` and `v` that avoids
    /// `avoid`.
    pub fn patterns_ok_through_pair(&self, g: &ColoredGraph, u: usize, v: usize, avoid: Option<&VertexSet>) -> bool {
        self.forbidden.iter().all(|f| !realized_through_pair_avoiding(g, &f.graph, u, v, avoid))
    }

    /// Checks the clique of `v` and the clique count of its color, assuming
    /// the rest of the class was already a valid union of cliques.
    pub fn clique_ok_at(&self, g: &ColoredGraph, v: usize) -> bool {
        let c = g.color(v);
        let mut closed = g.neighbors_in(v, c);
        closed.insert(v);
        for w in closed.iter() {
            let mut other = g.neighbors_in(w, c);
            other.insert(w);
            if other != closed {
                return false;
            }
        }
        if !self.max_clique_size(c).allows(closed.len()) {
            return false;
        }
        if closed.len() == 1 {
            if let CliqueBound::Finite(k) = self.max_clique_count(c) {
                // v opened a new clique: count cliques of color c
                let count = clique_partition(g, c).map_or(usize::MAX, |p| p.len());
                return count <= k;
            }
        }
        true
    }

    pub fn swap_colors(&self) -> ClassSpec {
        ClassSpec {
            name: self.name.clone(),
            forbidden: self
                .forbidden
                .iter()
                .map(|f| Forbidden { name: f.name.map(PatternName::swap_colors), graph: swap_colors(&f.graph) })
                .collect(),
            max_clique_size: [self.max_clique_size[1], self.max_clique_size[0]],
            max_clique_count: [self.max_clique_count[1], self.max_clique_count[0]],
        }
    }

    pub fn to_json(&self) -> Value {
        let forbidden: Vec<Value> = self
            .forbidden
            .iter()
            .map(|f| match f.name {
                Some(n) => Value::String(n.to_string()),
                None => serde_json::json!({ "custom": GraphJson::from_graph(&f.graph) }),
            })
            .collect();
        let caps = |b: &[CliqueBound; 2]| serde_json::json!({ "red": b[0], "blue": b[1] });
        let mut obj = serde_json::json!({
            "forbidden": forbidden,
            "max_clique_size": caps(&self.max_clique_size),
            "max_clique_count": caps(&self.max_clique_count),
        });
        if let Some(name) = &self.name {
            obj["name"] = Value::String(name.clone());
        }
        obj
    }

    pub fn from_json(src: &str) -> Result<ClassSpec> {
        let doc: SpecJson = serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))?;
        let mut spec = ClassSpec::cuh();
        spec.name = doc.name;
        for item in doc.forbidden {
            spec = match item {
                ForbiddenJson::Name(s) => spec.forbid(s.parse()?),
                ForbiddenJson::Custom { custom } => spec.forbid_graph(custom.to_graph()?),
            };
        }
        for (c, b) in [(Color::Red, doc.max_clique_size.red), (Color::Blue, doc.max_clique_size.blue)] {
            spec = spec.with_max_clique_size(c, b);
        }
        for (c, b) in [(Color::Red, doc.max_clique_count.red), (Color::Blue, doc.max_clique_count.blue)] {
            spec = spec.with_max_clique_count(c, b);
        }
        Ok(spec)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name} ")?;
        }
        write!(
            f,
            "[omega r<={} b<={}, alpha r<={} b<={}",
            self.max_clique_size[0], self.max_clique_size[1], self.max_clique_count[0], self.max_clique_count[1]
        )?;
        for x in &self.forbidden {
            write!(f, ", -{}", x.label())?;
        }
        write!(f, "]")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    forbidden: Vec<ForbiddenJson>,
    #[serde(default)]
    max_clique_size: CapsJson,
    #[serde(default)]
    max_clique_count: CapsJson,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ForbiddenJson {
    Name(String),
    Custom { custom: GraphJson },
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CapsJson {
    #[serde(default = "unbounded")]
    red: CliqueBound,
    #[serde(default = "unbounded")]
    blue: CliqueBound,
}

fn unbounded() -> CliqueBound {
    CliqueBound::Unbounded
}

impl Default for CapsJson {
    fn default() -> Self {
        CapsJson { red: CliqueBound::Unbounded, blue: CliqueBound::Unbounded }
    }
}

/// The named classes whose limits the library builds and recognizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F21,
    F22,
    FInf1,
    FInf2,
    FInfInf,
    /// Red clique count capped at `k`, blue cliques of size one.
    FInf1K(usize),
    /// Red clique count capped at `k`, blue cliques of size at most two,
    /// `T_b` and its cross complement omitted.
    FInf2K(usize),
    /// Red cliques at most `r`, blue cliques at most `b` in number.
    G(CliqueBound, CliqueBound),
    GenericBipartite,
}

impl Family {
    pub fn spec(self) -> ClassSpec {
        use CliqueBound::Finite;
        use Color::{Blue, Red};
        use PatternName::*;
        let base = ClassSpec::cuh();
        let spec = match self {
            Family::F21 => base
                .with_max_clique_size(Red, Finite(2))
                .with_max_clique_size(Blue, Finite(1))
                .forbid(Tr)
                .forbid(TrTilde),
            Family::F22 => base
                .with_max_clique_size(Red, Finite(2))
                .with_max_clique_size(Blue, Finite(2))
                .forbid(Tr)
                .forbid(TrTilde)
                .forbid(Tb)
                .forbid(TbTilde),
            Family::FInf1 => base.with_max_clique_size(Blue, Finite(1)),
            Family::FInf2 => base.with_max_clique_size(Blue, Finite(2)).forbid(Tb).forbid(TbTilde),
            Family::FInfInf => base.forbid(D).forbid(DTilde),
            Family::FInf1K(k) => base.with_max_clique_count(Red, Finite(k)).with_max_clique_size(Blue, Finite(1)),
            Family::FInf2K(k) => base
                .with_max_clique_count(Red, Finite(k))
                .with_max_clique_size(Blue, Finite(2))
                .forbid(Tb)
                .forbid(TbTilde),
            Family::G(r, b) => base.with_max_clique_count(Red, r).with_max_clique_count(Blue, b),
            Family::GenericBipartite => base.with_max_clique_size(Red, Finite(1)).with_max_clique_size(Blue, Finite(1)),
        };
        spec.named(self.to_string())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F21 => write!(f, "F21"),
            Family::F22 => write!(f, "F22"),
            Family::FInf1 => write!(f, "F(inf,1)"),
            Family::FInf2 => write!(f, "F(inf,2)"),
            Family::FInfInf => write!(f, "F(inf,inf)"),
            Family::FInf1K(k) => write!(f, "F(inf,1,{k})"),
            Family::FInf2K(k) => write!(f, "F(inf,2,{k})"),
            Family::G(r, b) => write!(f, "G({r},{b})"),
            Family::GenericBipartite => write!(f, "GenericBipartite"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("unknown family {s:?}"));
        let bound = |x: &str| -> Result<CliqueBound> {
            match x {
                "inf" => Ok(CliqueBound::Unbounded),
                _ => x.parse().map(CliqueBound::Finite).map_err(|_| bad()),
            }
        };
        Ok(match s {
            "F21" => Family::F21,
            "F22" => Family::F22,
            "F(inf,1)" => Family::FInf1,
            "F(inf,2)" => Family::FInf2,
            "F(inf,inf)" => Family::FInfInf,
            "GenericBipartite" => Family::GenericBipartite,
            _ => {
                let inner = s
                    .strip_suffix(')')
                    .and_then(|t| t.strip_prefix("F(inf,").or_else(|| t.strip_prefix("G(")))
                    .ok_or_else(bad)?;
                let parts: Vec<&str> = inner.split(',').collect();
                if s.starts_with('G') {
                    let [r, b] = parts[..] else { return Err(bad()) };
                    Family::G(bound(r)?, bound(b)?)
                } else {
                    let [w, k] = parts[..] else { return Err(bad()) };
                    let k: usize = k.parse().map_err(|_| bad())?;
                    match w {
                        "1" => Family::FInf1K(k),
                        "2" => Family::FInf2K(k),
                        _ => return Err(bad()),
                    }
                }
            }
        })
    }
}

/// Monochromatic red class of at most `s` cliques of size at most `t`; no
/// blue vertices.
pub fn monochromatic_spec(s: CliqueBound, t: CliqueBound) -> ClassSpec {
    ClassSpec::cuh()
        .with_max_clique_count(Color::Red, s)
        .with_max_clique_size(Color::Red, t)
        .with_max_clique_size(Color::Blue, CliqueBound::Finite(0))
        .named(format!("mono({s},{t})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_families_are_their_own_swap() {
        for f in [Family::F22, Family::FInfInf, Family::GenericBipartite] {
            assert!(f.spec().swap_colors().same_class(&f.spec()), "{f}");
        }
        assert!(!Family::F21.spec().swap_colors().same_class(&Family::F21.spec()));
    }

    #[test]
    fn membership_examples() {
        assert!(!Family::F22.spec().member(&Pattern::named(PatternName::Tr).graph));
        assert!(Family::G(CliqueBound::Finite(2), CliqueBound::Finite(2)).spec().member(&ColoredGraph::empty()));
        assert!(!Family::F21.spec().member(&Pattern::named(PatternName::K(Color::Blue, 2)).graph));
        assert!(Family::F21.spec().member(&Pattern::named(PatternName::K(Color::Red, 2)).graph));
        assert!(!ClassSpec::cuh().member(&Pattern::named(PatternName::P3(Color::Red)).graph));
    }

    #[test]
    fn caps_fold_patterns() {
        let s = ClassSpec::cuh().forbid(PatternName::K(Color::Red, 4)).forbid(PatternName::Kbar(Color::Blue, 3));
        assert_eq!(s.max_clique_size(Color::Red), CliqueBound::Finite(3));
        assert_eq!(s.max_clique_count(Color::Blue), CliqueBound::Finite(2));
        assert!(s.forbidden().is_empty());
        let names: Vec<String> = s.forbidden_graphs().iter().map(Forbidden::label).collect();
        assert!(names.contains(&"K:red:4".to_string()));
        assert!(names.contains(&"Kbar:blue:3".to_string()));
        // a custom copy of D is recognized by name
        let s = ClassSpec::cuh().forbid_graph(Pattern::named(PatternName::D).graph.permuted(&[1, 0, 3, 2]));
        assert_eq!(s.forbidden()[0].name, Some(PatternName::D));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"forbidden":["Tr","Tr~","K:red:3","Kbar:blue:2",{"custom":{"vertices":[{"id":0,"color":"red"},{"id":1,"color":"blue"},{"id":2,"color":"blue"}],"edges":[[0,1]]}}],"max_clique_size":{"red":"inf","blue":2},"max_clique_count":{"red":3,"blue":"inf"}}"#;
        let s = ClassSpec::from_json(src).unwrap();
        assert_eq!(s.max_clique_size(Color::Red), CliqueBound::Finite(2));
        assert_eq!(s.max_clique_size(Color::Blue), CliqueBound::Finite(2));
        assert_eq!(s.max_clique_count(Color::Red), CliqueBound::Finite(3));
        assert_eq!(s.max_clique_count(Color::Blue), CliqueBound::Finite(1));
        assert_eq!(s.forbidden().len(), 3);
        let again = ClassSpec::from_json(&s.to_json().to_string()).unwrap();
        assert_eq!(again, s);
        assert!(ClassSpec::from_json(r#"{"forbidden":["Nope"]}"#).is_err());
        assert!(ClassSpec::from_json(r#"{"extra":1}"#).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        use CliqueBound::*;
        for f in [
            Family::F21,
            Family::F22,
            Family::FInf1,
            Family::FInf2,
            Family::FInfInf,
            Family::FInf1K(3),
            Family::FInf2K(2),
            Family::G(Finite(2), Unbounded),
            Family::GenericBipartite,
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn incremental_checks_match_full_membership() {
        let spec = Family::F21.spec();
        // red edge 0-1, blue 2 adjacent to 0 only: member
        let mut g = ColoredGraph::from_spec("rrb", &[(0, 1), (0, 2)]);
        assert!(spec.member(&g));
        // adding edge 1-2 creates T_r
        g.add_edge(1, 2);
        assert!(!spec.member_through_pair(&g, 1, 2));
        assert!(!spec.member(&g));
        // a third red joined to the red edge breaks the clique cap
        let mut h = ColoredGraph::from_spec("rr", &[(0, 1)]);
        let v = h.push_vertex(Color::Red);
        h.add_edge(v, 0);
        h.add_edge(v, 1);
        assert!(!spec.member_through(&h, v));
    }
}
