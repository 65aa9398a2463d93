use serde::Serialize;

use super::automorphism::GraphAutomorphism;
use super::graph::Multigraph;
use crate::error::{Error, Result};

/// Reduced word in the free group; letter `±(i+1)` stands for `w_{i+1}^{±1}`.
pub type Word = Vec<i32>;

/// An edge traversed along (`forward`) or against its reference orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn tail(&self, g: &Multigraph) -> usize {
        let (a, b) = g.edge(self.edge);
        if self.forward { a } else { b }
    }

    pub fn head(&self, g: &Multigraph) -> usize {
        let (a, b) = g.edge(self.edge);
        if self.forward { b } else { a }
    }

    pub fn reversed(&self) -> Dart {
        Dart { edge: self.edge, forward: !self.forward }
    }
}

/// Free reduction.
pub fn reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(word: &[i32]) -> Word {
    word.iter().rev().map(|l| -l).collect()
}

pub fn format_word(word: &[i32]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&l| if l > 0 { format!("w{l}") } else { format!("w{}^-1", -l) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `w = u·c·u⁻¹` with `c` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateForm {
    pub conjugator: Word,
    pub core: Word,
}

pub fn conjugate_form(word: &[i32]) -> ConjugateForm {
    let w = reduce(word);
    let mut k = 0;
    while 2 * k + 1 < w.len() && w[k] == -w[w.len() - 1 - k] {
        k += 1;
    }
    ConjugateForm { conjugator: w[..k].to_vec(), core: w[k..w.len() - k].to_vec() }
}

/// Spanning tree `T`, base vertex `P`, and the lasso loops: for each edge
/// `e ∉ T` the tree path `P → e⁻`, then `e`, then the tree path `e⁺ → P`.
#[derive(Debug, Clone, Serialize)]
pub struct GeometricBasis {
    pub base: usize,
    pub tree: Vec<usize>,
    pub non_tree: Vec<usize>,
    /// Half-edges of the `*`-tree as `(edge, endpoint)`.
    pub half_edges: Vec<(usize, usize)>,
    pub lassos: Vec<Vec<Dart>>,
}

/// Darts of the unique path from `from` to `to` inside the tree.
pub fn tree_path(g: &Multigraph, tree: &[usize], from: usize, to: usize) -> Vec<Dart> {
    let n = g.num_vertices();
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &e in tree {
            let (a, b) = g.edge(e);
            for (x, y, forward) in [(a, b, true), (b, a, false)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(Dart { edge: e, forward });
                    stack.push(y);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let d = parent[v].expect("tree spans the graph");
        path.push(d);
        v = d.tail(g);
    }
    path.reverse();
    path
}

impl GeometricBasis {
    pub fn new(g: &Multigraph, tree: &[usize], base: usize) -> Result<Self> {
        if !g.is_spanning_tree(tree) {
            return Err(Error::InvalidGraph(format!("{tree:?} is not a spanning tree")));
        }
        if base >= g.num_vertices() {
            return Err(Error::InvalidGraph(format!("base vertex {base} out of range")));
        }
        let mut tree = tree.to_vec();
        tree.sort_unstable();
        let non_tree: Vec<usize> = (0..g.num_edges()).filter(|e| !tree.contains(e)).collect();
        let half_edges = non_tree.iter().flat_map(|&e| [(e, g.edge(e).0), (e, g.edge(e).1)]).collect();
        let lassos = non_tree
            .iter()
            .map(|&e| {
                let (a, b) = g.edge(e);
                let mut path = tree_path(g, &tree, base, a);
                path.push(Dart { edge: e, forward: true });
                path.extend(tree_path(g, &tree, b, base));
                path
            })
            .collect();
        Ok(GeometricBasis { base, tree, non_tree, half_edges, lassos })
    }

    pub fn rank(&self) -> usize {
        self.non_tree.len()
    }

    /// Reduced word of a closed path at any vertex, reading off non-tree edges.
    pub fn word_of_path(&self, path: &[Dart]) -> Word {
        let letters: Vec<i32> = path
            .iter()
            .filter_map(|d| {
                self.non_tree.iter().position(|&e| e == d.edge).map(|i| {
                    let l = i as i32 + 1;
                    if d.forward { l } else { -l }
                })
            })
            .collect();
        reduce(&letters)
    }

    /// Image of lasso `i` under `sigma`, rebased at `P` along tree paths.
    pub fn image(&self, g: &Multigraph, sigma: &GraphAutomorphism, i: usize) -> Word {
        let moved = sigma.vertex_perm[self.base];
        let mut path = tree_path(g, &self.tree, self.base, moved);
        path.extend(self.lassos[i].iter().map(|d| {
            let (edge, forward) = sigma.map_dart(d.edge, d.forward);
            Dart { edge, forward }
        }));
        path.extend(tree_path(g, &self.tree, moved, self.base));
        self.word_of_path(&path)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitWitness {
    pub automorphism: GraphAutomorphism,
    pub lasso: usize,
    pub image: Word,
    pub image_text: String,
    pub form: ConjugateForm,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OrbitReport {
    Closed { automorphisms: usize },
    NotClosed(OrbitWitness),
}

impl OrbitReport {
    pub fn is_closed(&self) -> bool {
        matches!(self, OrbitReport::Closed { .. })
    }
}

/// Whether every automorphism maps every lasso into `W^±`.
pub fn basis_orbit_closed(g: &Multigraph, basis: &GeometricBasis, auts: &[GraphAutomorphism]) -> OrbitReport {
    for sigma in auts {
        for i in 0..basis.rank() {
            let image = basis.image(g, sigma, i);
            if image.len() != 1 {
                return OrbitReport::NotClosed(OrbitWitness {
                    automorphism: sigma.clone(),
                    lasso: i,
                    image_text: format_word(&image),
                    form: conjugate_form(&image),
                    image,
                });
            }
        }
    }
    OrbitReport::Closed { automorphisms: auts.len() }
}
