//! Explicit seed graphs for the classes whose greedy closure outgrows the
//! default budget. Both have four or seven cliques per color of equal size,
//! with cross edges given by a function of the two vertex labels.

use crate::graph::{Color, ColoredGraph};
use crate::spec::{ClassSpec, Family};

/// Generator rows of the binary simplex code of length 7.
const SIMPLEX: [u8; 3] = [0b1011001, 0b1101010, 0b1110100];

/// Coset translates of the simplex code for the red cliques (coordinates
/// index blue cliques) and for the blue cliques (coordinates index red
/// cliques), one per clique.
const RED_SHIFT: [u8; 7] = [0b1110100, 0b1101001, 0b0100110, 0b0101000, 0b0010110, 0b1001011, 0b1110110];
const BLUE_SHIFT: [u8; 7] = [0b0110101, 0b1001011, 0b1101011, 0b1000000, 0b0101111, 0b1011010, 0b1101111];

fn simplex_code() -> Vec<u8> {
    (0..8u8).map(|a| (0..3).filter(|&r| a >> r & 1 == 1).fold(0, |acc, r| acc ^ SIMPLEX[r])).collect()
}

fn cliques_then_cross(red: &[usize], blue: &[usize], cross: impl Fn(usize, usize) -> bool) -> ColoredGraph {
    let nr = red.len();
    let mut colors = vec![Color::Red; nr];
    colors.resize(nr + blue.len(), Color::Blue);
    let mut edges = Vec::new();
    for (labels, base) in [(red, 0), (blue, nr)] {
        for a in 0..labels.len() {
            for b in 0..a {
                if labels[a] == labels[b] {
                    edges.push((base + b, base + a));
                }
            }
        }
    }
    for r in 0..nr {
        for b in 0..blue.len() {
            if cross(r, b) {
                edges.push((r, nr + b));
            }
        }
    }
    ColoredGraph::from_edges(colors, edges).expect("labels give valid edges")
}

/// Seven red and seven blue cliques of eight vertices. A red vertex carries
/// a word `x` of a coset of the simplex code indexed by blue cliques, a blue
/// vertex a word `y` indexed by red cliques, and red `(i, x)` is adjacent to
/// blue `(j, y)` iff `x_j != y_i`. Every red clique and blue clique then meet
/// in a cross graph of the form `x xor y`, which omits `D` and its cross
/// complement; the code and the translates make every one-point type over at
/// most three vertices realized.
pub fn simplex_design() -> ColoredGraph {
    let code = simplex_code();
    let words = |shift: &[u8; 7]| -> Vec<(usize, u8)> {
        (0..7).flat_map(|i| code.iter().map(move |&c| (i, c ^ shift[i]))).collect()
    };
    let red = words(&RED_SHIFT);
    let blue = words(&BLUE_SHIFT);
    let red_labels: Vec<usize> = red.iter().map(|&(i, _)| i).collect();
    let blue_labels: Vec<usize> = blue.iter().map(|&(j, _)| j).collect();
    cliques_then_cross(&red_labels, &blue_labels, |r, b| {
        let ((i, x), (j, y)) = (red[r], blue[b]);
        (x >> j & 1) != (y >> i & 1)
    })
}

/// Cross-edge functions on the 4-bit labels.
const TRANSLATE_FUNCTIONS: [u16; 4] = [0x0357, 0x036d, 0x037a, 0x07d9];

/// Four red and four blue cliques of sixteen vertices labeled by 4-bit
/// words. Red `(i, x)` is adjacent to blue `(j, y)` iff bit `x xor y` of the
/// function `(i + j) mod 4` is set. Within one clique, any two vertices of
/// the other color show each of the four adjacency patterns at least twice,
/// and any three vertices of one color show all eight patterns somewhere.
pub fn translate_design() -> ColoredGraph {
    let labels: Vec<usize> = (0..64).map(|v| v / 16).collect();
    cliques_then_cross(&labels, &labels, |r, b| {
        let (i, x, j, y) = (r / 16, r % 16, b / 16, b % 16);
        TRANSLATE_FUNCTIONS[(i + j) % 4] >> (x ^ y) & 1 == 1
    })
}

/// Prime for the Paley pairing; the smallest one for which any four columns
/// of the residue matrix show every pattern up to complement.
const PALEY_PRIME: usize = 29;

/// Red and blue cliques of two vertices, one per residue mod 29. Red `(i, x)`
/// is adjacent to blue `(j, y)` iff `x xor y` differs from the quadratic
/// residue character of `i - j`, so every vertex sees exactly one vertex of
/// each clique of the other color.
pub fn paley_pairs() -> ColoredGraph {
    let q = PALEY_PRIME;
    let residue: Vec<bool> = (0..q).map(|d| d != 0 && (1..q).any(|x| x * x % q == d)).collect();
    let labels: Vec<usize> = (0..2 * q).map(|v| v / 2).collect();
    cliques_then_cross(&labels, &labels, |r, b| {
        let (i, x, j, y) = (r / 2, r % 2, b / 2, b % 2);
        ((x ^ y) == 1) != residue[(i + q - j) % q]
    })
}

/// A seed for the closure of `spec` at level `t`, when one is known: the
/// simplex design for the class omitting `D` and its cross complement, the
/// Paley pairing for `F22`, the translate design for classes capping only
/// clique counts at four or more. Only levels of at least four use a seed.
pub fn structured_seed(spec: &ClassSpec, t: usize) -> Option<ColoredGraph> {
    if t < 4 {
        return None;
    }
    if spec.same_class(&Family::FInfInf.spec()) {
        return Some(simplex_design());
    }
    if spec.same_class(&Family::F22.spec()) {
        return Some(paley_pairs());
    }
    let [r, b] = Color::ALL.map(|c| spec.max_clique_count(c));
    let wide = r.allows(4) && b.allows(4);
    (wide && spec.same_class(&Family::G(r, b).spec())).then(translate_design)
}
