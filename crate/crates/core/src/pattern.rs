//! The named small patterns: the triangles and their cross complements,
//! `Q_r`, `Q_b`, the diamond `D` and its cross complement, monochromatic
//! paths, cliques and independent sets.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::{Color, ColoredGraph};
use crate::transform::cross_complement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternName {
    /// Triangle on two reds and one blue.
    Tr,
    TrTilde,
    /// Triangle on one red and two blues.
    Tb,
    TbTilde,
    /// `T_r` minus one cross edge.
    Qr,
    /// `T_b` minus one cross edge.
    Qb,
    /// Complete graph on two reds and two blues minus one cross edge.
    D,
    DTilde,
    P3(Color),
    K(Color, usize),
    Kbar(Color, usize),
}

impl PatternName {
    /// The tilde partner, when the catalog names one. `Q_r`, `Q_b` and the
    /// monochromatic patterns are fixed by cross complementation up to
    /// isomorphism and map to themselves.
    pub fn tilde(self) -> PatternName {
        use PatternName::*;
        match self {
            Tr => TrTilde,
            TrTilde => Tr,
            Tb => TbTilde,
            TbTilde => Tb,
            D => DTilde,
            DTilde => D,
            other => other,
        }
    }

    pub fn swap_colors(self) -> PatternName {
        use PatternName::*;
        match self {
            Tr => Tb,
            Tb => Tr,
            TrTilde => TbTilde,
            TbTilde => TrTilde,
            Qr => Qb,
            Qb => Qr,
            D => D,
            DTilde => DTilde,
            P3(c) => P3(c.other()),
            K(c, n) => K(c.other(), n),
            Kbar(c, n) => Kbar(c.other(), n),
        }
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternName::*;
        match self {
            Tr => write!(f, "Tr"),
            TrTilde => write!(f, "Tr~"),
            Tb => write!(f, "Tb"),
            TbTilde => write!(f, "Tb~"),
            Qr => write!(f, "Qr"),
            Qb => write!(f, "Qb"),
            D => write!(f, "D"),
            DTilde => write!(f, "D~"),
            P3(c) => write!(f, "P3_{c}"),
            K(c, n) => write!(f, "K:{c}:{n}"),
            Kbar(c, n) => write!(f, "Kbar:{c}:{n}"),
        }
    }
}

fn parse_color(s: &str) -> Option<Color> {
    match s {
        "red" | "r" => Some(Color::Red),
        "blue" | "b" => Some(Color::Blue),
        _ => None,
    }
}

impl FromStr for PatternName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        use PatternName::*;
        let bad = || Error::Format(format!("unknown pattern name {s:?}"));
        Ok(match s {
            "Tr" => Tr,
            "Tr~" => TrTilde,
            "Tb" => Tb,
            "Tb~" => TbTilde,
            "Qr" => Qr,
            "Qb" => Qb,
            "D" => D,
            "D~" => DTilde,
            "P3_red" => P3(Color::Red),
            "P3_blue" => P3(Color::Blue),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                let [kind, color, n] = parts[..] else { return Err(bad()) };
                let c = parse_color(color).ok_or_else(bad)?;
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(Error::Format(format!("pattern {s:?} needs at least one vertex")));
                }
                match kind {
                    "K" => K(c, n),
                    "Kbar" => Kbar(c, n),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

/// A named pattern with its graph. Vertex order: reds first, then blues,
/// numbered as in the usual drawings (`r1, r2, b1, b2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: PatternName,
    pub graph: ColoredGraph,
}

impl Pattern {
    pub fn named(name: PatternName) -> Pattern {
        use PatternName::*;
        let graph = match name {
            Tr => ColoredGraph::from_spec("rrb", &[(0, 1), (0, 2), (1, 2)]),
            Tb => ColoredGraph::from_spec("rbb", &[(0, 1), (0, 2), (1, 2)]),
            Qr => ColoredGraph::from_spec("rrb", &[(0, 1), (0, 2)]),
            Qb => ColoredGraph::from_spec("rbb", &[(1, 2), (0, 1)]),
            D => ColoredGraph::from_spec("rrbb", &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
            TrTilde | TbTilde | DTilde => cross_complement(&Pattern::named(name.tilde()).graph),
            P3(c) => ColoredGraph::monochromatic(c, 3, |u, v| u + 1 == v),
            K(c, n) => ColoredGraph::monochromatic(c, n, |_, _| true),
            Kbar(c, n) => ColoredGraph::monochromatic(c, n, |_, _| false),
        };
        Pattern { name, graph }
    }

    pub fn parse(s: &str) -> Result<Pattern, Error> {
        Ok(Pattern::named(s.parse()?))
    }
}

/// `T_r, T̃_r, T_b, T̃_b`.
pub fn triangles() -> [PatternName; 4] {
    use PatternName::*;
    [Tr, TrTilde, Tb, TbTilde]
}

/// One instance of each of the twelve pattern families. The clique and
/// independent-set families are shown at `n = 3` in red.
pub fn catalog() -> Vec<Pattern> {
    use PatternName::*;
    [
        Tr,
        TrTilde,
        Tb,
        TbTilde,
        Qr,
        Qb,
        D,
        DTilde,
        P3(Color::Red),
        P3(Color::Blue),
        K(Color::Red, 3),
        Kbar(Color::Red, 3),
    ]
    .into_iter()
    .map(Pattern::named)
    .collect()
}

/// The catalog name of `g`, if it is isomorphic to a named pattern. Cliques
/// and independent sets are recognized at every size.
pub fn identify(g: &ColoredGraph) -> Option<PatternName> {
    use PatternName::*;
    if g.is_empty() {
        return None;
    }
    if g.is_monochromatic() {
        let c = g.color(0);
        let n = g.n();
        if g.edge_count() == n * (n - 1) / 2 {
            return Some(K(c, n));
        }
        if g.edge_count() == 0 {
            return Some(Kbar(c, n));
        }
    }
    [Tr, TrTilde, Tb, TbTilde, Qr, Qb, D, DTilde, P3(Color::Red), P3(Color::Blue)]
        .into_iter()
        .find(|&name| crate::iso::is_isomorphic(&Pattern::named(name).graph, g).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::transform::swap_colors;

    #[test]
    fn catalog_shapes() {
        let cat = catalog();
        assert_eq!(cat.len(), 12);
        let d = Pattern::named(PatternName::D).graph;
        assert_eq!((d.n(), d.edge_count()), (4, 5));
        let tr = Pattern::named(PatternName::Tr).graph;
        assert_eq!(tr.class_size(Color::Blue), 1);
        assert_eq!(tr.edge_count(), 3);
        let trt = Pattern::named(PatternName::TrTilde).graph;
        assert_eq!(trt.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn tilde_pairs_and_color_swaps() {
        for p in catalog() {
            let t = Pattern::named(p.name.tilde());
            assert!(is_isomorphic(&cross_complement(&p.graph), &t.graph).is_some(), "{}", p.name);
            assert_eq!(p.name.tilde().tilde(), p.name);
            let s = Pattern::named(p.name.swap_colors());
            assert!(is_isomorphic(&swap_colors(&p.graph), &s.graph).is_some(), "{}", p.name);
        }
    }

    #[test]
    fn names_round_trip() {
        for p in catalog() {
            assert_eq!(p.name.to_string().parse::<PatternName>().unwrap(), p.name);
        }
        assert_eq!("Kbar:blue:2".parse::<PatternName>().unwrap(), PatternName::Kbar(Color::Blue, 2));
        assert!("K:green:2".parse::<PatternName>().is_err());
        assert!("K:red:0".parse::<PatternName>().is_err());
        assert!("X".parse::<PatternName>().is_err());
    }
}
