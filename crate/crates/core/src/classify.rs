//! The family classifier. A graph is first normalized: color classes that
//! are not unions of cliques, or are a single clique of size two or more, are
//! complemented, and blow-ups of independent classes are collapsed. The
//! reduced graph is then labeled by the bipartite taxonomy when both classes
//! are independent, by `G(r,b)` when `D` and its cross complement are
//! realized, and otherwise by matching its minimally omitted graphs against
//! the signatures of the named families in both color orientations.

use std::fmt;

use serde::Serialize;

use crate::builder::{build_spec, Approximant};
use crate::embed::is_realized;
use crate::error::{Error, Result};
use crate::graph::{CliqueBound, Color, ColoredGraph};
use crate::homogeneity::{piecewise_report, DEFAULT_PIECE_BOUND};
use crate::iso::CanonCode;
use crate::omitted::{minimal_non_members, minimally_omitted, OmittedSet, Palette};
use crate::pattern::{Pattern, PatternName};
use crate::profile::{class_profile, clique_partition, is_clique_union, ColorClassProfile};
use crate::scan::{piece_kind, PieceKind};
use crate::spec::{ClassSpec, Family};
use crate::transform::{class_complement, detect_blow_up};

/// Vertex bound of the omitted-set signatures.
pub const SIGNATURE_BOUND: usize = 4;

/// A classifier label: a base family, possibly wrapped by reductions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    HomogeneouslyConnected,
    Matching,
    CoMatching,
    Family(Family),
    BlowUpOf { inner: Box<FamilyLabel>, color: Color, factor: usize },
    ClassComplementOf { inner: Box<FamilyLabel>, colors: Vec<Color> },
    ColorsSwapped(Box<FamilyLabel>),
}

impl FamilyLabel {
    /// The label with every wrapper removed.
    pub fn base(&self) -> &FamilyLabel {
        match self {
            FamilyLabel::BlowUpOf { inner, .. }
            | FamilyLabel::ClassComplementOf { inner, .. }
            | FamilyLabel::ColorsSwapped(inner) => inner.base(),
            other => other,
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::HomogeneouslyConnected => write!(f, "HomogeneouslyConnected"),
            FamilyLabel::Matching => write!(f, "Matching"),
            FamilyLabel::CoMatching => write!(f, "CoMatching"),
            FamilyLabel::Family(fam) => write!(f, "{fam}"),
            FamilyLabel::BlowUpOf { inner, color, factor } => {
                write!(f, "BlowUpOf({inner},{},{factor})", color.name())
            }
            FamilyLabel::ClassComplementOf { inner, colors } => {
                let names: Vec<&str> = colors.iter().map(|c| c.name()).collect();
                write!(f, "ClassComplementOf({inner},{})", names.join("+"))
            }
            FamilyLabel::ColorsSwapped(inner) => write!(f, "ColorsSwapped({inner})"),
        }
    }
}

impl Serialize for FamilyLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A reduction applied to the input before labeling, in application order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Reduction {
    ClassComplement { color: Color },
    BlowUp { color: Color, factor: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationEvidence {
    /// Profile of the reduced graph.
    pub profile: ColorClassProfile,
    pub d_realized: bool,
    pub dtilde_realized: bool,
    /// Minimally omitted graphs of the reduced graph at [`SIGNATURE_BOUND`].
    pub omitted: OmittedSet,
    pub reductions: Vec<Reduction>,
    /// Piecewise verdict of the reduced graph, or `None` when a color class
    /// is empty.
    pub piecewise: Option<bool>,
    /// Vertex count up to which the omitted set was compared.
    pub trusted_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Classified {
        label: FamilyLabel,
    },
    /// The data does not single out one label; `consistent` lists the
    /// labels whose signatures agree with it.
    UnclassifiableAtLevel {
        level: Option<usize>,
        consistent: Vec<FamilyLabel>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Clique-count bounds in the label were read from the observed graph
    /// rather than from a class specification.
    pub observed_bounds: bool,
    pub evidence: ClassificationEvidence,
}

impl Classification {
    pub fn label(&self) -> Option<&FamilyLabel> {
        match &self.verdict {
            Verdict::Classified { label } => Some(label),
            Verdict::UnclassifiableAtLevel { .. } => None,
        }
    }
}

/// What the classifier knows about its input graph.
#[derive(Clone, Debug, Default)]
pub struct ClassifyInput<'a> {
    /// Class of the reduced graph. Only its clique-count caps are read, and
    /// only when the reduced graph is a member.
    pub spec: Option<&'a ClassSpec>,
    /// Certified extension level; omitted sets are trusted up to it.
    pub level: Option<usize>,
}

fn normalize(g: &ColoredGraph, reductions: &mut Vec<Reduction>) -> Result<ColoredGraph> {
    let mut g = g.clone();
    for c in Color::ALL {
        let flip = match clique_partition(&g, c) {
            Some(parts) => parts.len() == 1 && parts[0].len() >= 2,
            None => true,
        };
        if flip {
            g = class_complement(&g, c);
            if !is_clique_union(&g, c) {
                return Err(Error::Precondition(format!(
                    "neither the {} class nor its complement is a union of cliques",
                    c.name()
                )));
            }
            reductions.push(Reduction::ClassComplement { color: c });
        }
    }
    while let Some(b) = detect_blow_up(&g)? {
        if b.base.class(b.color).iter().any(|v| !b.base.neighbors_in(v, b.color).is_empty()) {
            break;
        }
        reductions.push(Reduction::BlowUp { color: b.color, factor: b.factor });
        g = b.base;
    }
    Ok(g)
}

fn wrap(base: FamilyLabel, reductions: &[Reduction]) -> FamilyLabel {
    let mut label = base;
    for r in reductions.iter().rev() {
        if let Reduction::BlowUp { color, factor } = *r {
            label = FamilyLabel::BlowUpOf { inner: Box::new(label), color, factor };
        }
    }
    let colors: Vec<Color> = reductions
        .iter()
        .filter_map(|r| match *r {
            Reduction::ClassComplement { color } => Some(color),
            Reduction::BlowUp { .. } => None,
        })
        .collect();
    if colors.is_empty() {
        label
    } else {
        FamilyLabel::ClassComplementOf { inner: Box::new(label), colors }
    }
}

struct Candidate {
    label: FamilyLabel,
    spec: ClassSpec,
    observed: bool,
}

/// Candidate families in one color orientation. `cap` is the clique-count
/// bound of the color playing red, with `observed` set when it was read off
/// the graph.
fn candidates(swap: bool, cap: CliqueBound, observed: bool) -> Vec<Candidate> {
    let mut fams = vec![(Family::F21, false), (Family::F22, false), (Family::FInfInf, false)];
    match cap {
        CliqueBound::Unbounded => fams.extend([(Family::FInf1, false), (Family::FInf2, false)]),
        CliqueBound::Finite(k) if k >= 2 => fams.extend([(Family::FInf1K(k), observed), (Family::FInf2K(k), observed)]),
        CliqueBound::Finite(_) => {}
    }
    fams.into_iter()
        .filter_map(|(f, observed)| {
            let spec = f.spec();
            if !swap {
                return Some(Candidate { label: FamilyLabel::Family(f), spec, observed });
            }
            let swapped = spec.swap_colors();
            (!swapped.same_class(&spec)).then(|| Candidate {
                label: FamilyLabel::ColorsSwapped(Box::new(FamilyLabel::Family(f))),
                spec: swapped,
                observed,
            })
        })
        .collect()
}

fn codes_up_to(items: impl Iterator<Item = (CanonCode, usize)>, bound: usize) -> Vec<CanonCode> {
    let mut v: Vec<CanonCode> = items.filter(|&(_, n)| n <= bound).map(|(c, _)| c).collect();
    v.sort();
    v
}

/// Classifies `g`. See the module documentation for the decision order.
pub fn classify(g: &ColoredGraph, input: ClassifyInput<'_>) -> Result<Classification> {
    let mut reductions = Vec::new();
    let g = normalize(g, &mut reductions)?;
    let profile = class_profile(&g);
    let spec = input.spec.filter(|s| s.member(&g));
    let cap = |c: Color| match spec {
        Some(s) => (s.max_clique_count(c), false),
        None => (CliqueBound::Finite(profile.alpha(c)), true),
    };

    let d_realized = is_realized(&g, &Pattern::named(PatternName::D).graph);
    let dtilde_realized = is_realized(&g, &Pattern::named(PatternName::DTilde).graph);
    let mut omitted = minimally_omitted(&g, SIGNATURE_BOUND, Palette::Both);
    omitted.host_level = input.level;
    let trusted_bound = input.level.map_or(SIGNATURE_BOUND, |t| t.min(SIGNATURE_BOUND));
    let piece_bound = input.level.map_or(DEFAULT_PIECE_BOUND, |t| t.saturating_sub(2).max(1));
    let piecewise = if profile.alpha_red == 0 || profile.alpha_blue == 0 {
        None
    } else {
        Some(piecewise_report(&g, piece_bound)?.verdict)
    };

    let mut observed_bounds = false;
    let verdict = if profile.omega_red <= 1 && profile.omega_blue <= 1 {
        let red: Vec<usize> = g.class(Color::Red).iter().collect();
        let blue: Vec<usize> = g.class(Color::Blue).iter().collect();
        let bound = input.level.map_or(DEFAULT_PIECE_BOUND, |t| t.saturating_sub(1).max(1));
        let base = match piece_kind(&g, &red, &blue, bound) {
            PieceKind::HomogeneouslyConnected => Some(FamilyLabel::HomogeneouslyConnected),
            PieceKind::Matching => Some(FamilyLabel::Matching),
            PieceKind::CoMatching => Some(FamilyLabel::CoMatching),
            PieceKind::GenericLike => Some(FamilyLabel::Family(Family::GenericBipartite)),
            PieceKind::Irregular => None,
        };
        match base {
            Some(b) => Verdict::Classified { label: wrap(b, &reductions) },
            None => Verdict::UnclassifiableAtLevel { level: input.level, consistent: Vec::new() },
        }
    } else if d_realized && dtilde_realized {
        let (r, or) = cap(Color::Red);
        let (b, ob) = cap(Color::Blue);
        observed_bounds = or || ob;
        Verdict::Classified { label: wrap(FamilyLabel::Family(Family::G(r, b)), &reductions) }
    } else {
        let seen = codes_up_to(omitted.members.iter().map(|m| (m.code.clone(), m.graph.n())), trusted_bound);
        let mut matches: Vec<Candidate> = Vec::new();
        for swap in [false, true] {
            let (k, observed) = cap(if swap { Color::Blue } else { Color::Red });
            for cand in candidates(swap, k, observed) {
                let sig = minimal_non_members(&cand.spec, trusted_bound);
                if codes_up_to(sig.into_iter().map(|(c, h)| (c, h.n())), trusted_bound) == seen {
                    matches.push(cand);
                }
            }
        }
        if let [only] = &matches[..] {
            observed_bounds = only.observed;
            Verdict::Classified { label: wrap(only.label.clone(), &reductions) }
        } else {
            let consistent = matches.into_iter().map(|c| wrap(c.label, &reductions)).collect();
            Verdict::UnclassifiableAtLevel { level: input.level, consistent }
        }
    };

    Ok(Classification {
        verdict,
        observed_bounds,
        evidence: ClassificationEvidence {
            profile,
            d_realized,
            dtilde_realized,
            omitted,
            reductions,
            piecewise,
            trusted_bound,
        },
    })
}

/// Classifies an approximant using its specification and certified level.
pub fn classify_approximant(a: &Approximant) -> Result<Classification> {
    classify(&a.graph, ClassifyInput { spec: Some(&a.spec), level: Some(a.level) })
}

/// Builds an approximant of `spec` and classifies it.
pub fn classify_spec(
    spec: &ClassSpec,
    t: usize,
    budget: usize,
    seed: Option<u64>,
) -> Result<(Approximant, Classification)> {
    let a = build_spec(spec, t, budget, seed)?;
    let c = classify_approximant(&a)?;
    Ok((a, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_family;
    use crate::transform::{blow_up, cross_complement, swap_colors};
    use CliqueBound::{Finite, Unbounded};

    fn label_of(g: &ColoredGraph, spec: Option<&ClassSpec>) -> String {
        let c = classify(g, ClassifyInput { spec, level: None }).unwrap();
        match c.verdict {
            Verdict::Classified { label } => label.to_string(),
            v => format!("{v:?}"),
        }
    }

    fn bipartite(n: usize, adj: impl Fn(usize, usize) -> bool) -> ColoredGraph {
        let colors = "r".repeat(n) + &"b".repeat(n);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if adj(i, j) {
                    edges.push((i, n + j));
                }
            }
        }
        ColoredGraph::from_spec(&colors, &edges)
    }

    #[test]
    fn bipartite_taxonomy() {
        let m = bipartite(4, |i, j| i == j);
        assert_eq!(label_of(&m, None), "Matching");
        assert_eq!(label_of(&cross_complement(&m), None), "CoMatching");
        assert_eq!(label_of(&bipartite(3, |_, _| false), None), "HomogeneouslyConnected");
        let odd = bipartite(3, |i, j| i == 0 && j == 0);
        assert!(label_of(&odd, None).starts_with("UnclassifiableAtLevel"));
    }

    #[test]
    fn single_cliques_are_complemented() {
        // a red K_3 and a blue K_3 joined by a perfect matching
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
        edges.extend([(0, 3), (1, 4), (2, 5)]);
        let g = ColoredGraph::from_spec("rrrbbb", &edges);
        assert_eq!(label_of(&g, None), "ClassComplementOf(Matching,red+blue)");
    }

    #[test]
    fn blow_ups_are_collapsed() {
        let m = bipartite(3, |i, j| i == j);
        let g = blow_up(&m, Color::Red, 2).unwrap();
        assert_eq!(label_of(&g, None), "BlowUpOf(Matching,red,2)");
        let gg = blow_up(&swap_colors(&g), Color::Red, 3).unwrap();
        let c = classify(&gg, ClassifyInput::default()).unwrap();
        assert_eq!(c.evidence.reductions.len(), 2);
        assert_eq!(c.label().unwrap().base(), &FamilyLabel::Matching);
    }

    #[test]
    fn approximants_round_trip() {
        for f in [Family::G(Finite(2), Finite(2)), Family::F21, Family::FInf1K(2)] {
            let a = build_family(f, 4, 200, None).unwrap();
            let c = classify_approximant(&a).unwrap();
            assert_eq!(c.label(), Some(&FamilyLabel::Family(f)), "{f}");
            assert!(!c.observed_bounds);
        }
    }

    #[test]
    fn bare_graphs_report_observed_bounds() {
        let a = build_family(Family::G(Unbounded, Unbounded), 4, 200, None).unwrap();
        let c = classify(&a.graph, ClassifyInput::default()).unwrap();
        let p = &c.evidence.profile;
        let want = Family::G(Finite(p.alpha_red), Finite(p.alpha_blue));
        assert_eq!(c.label(), Some(&FamilyLabel::Family(want)));
        assert!(c.observed_bounds);
    }

    #[test]
    fn low_levels_are_ambiguous() {
        // up to two vertices F21 and F(inf,1) both omit exactly the blue K_2
        let a = build_family(Family::F21, 4, 200, None).unwrap();
        let c = classify(&a.graph, ClassifyInput { spec: Some(&a.spec), level: Some(2) }).unwrap();
        match c.verdict {
            Verdict::UnclassifiableAtLevel { consistent, .. } => {
                assert!(consistent.contains(&FamilyLabel::Family(Family::F21)));
                assert!(consistent.contains(&FamilyLabel::Family(Family::FInf1)));
                assert!(consistent.len() > 1);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn non_clique_unions_need_a_complement_that_is_one() {
        let p4 = ColoredGraph::from_spec("rrrr", &[(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(classify(&p4, ClassifyInput::default()), Err(Error::Precondition(_))));
    }
}
