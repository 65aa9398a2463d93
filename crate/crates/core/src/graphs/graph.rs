use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier in graph JSON: an integer or a string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(i64),
    Str(String),
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Str(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning_tree: Option<Vec<usize>>,
}

/// Finite multigraph with loops. Edge `i` joins `edges[i].0` and
/// `edges[i].1`; that order fixes its reference orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    ids: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) uses a vertex outside 0..{n}")));
        }
        Ok(Multigraph { ids: (0..n as i64).map(VertexId::Int).collect(), edges })
    }

    pub fn from_json_struct(raw: &GraphJson) -> Result<Self> {
        let mut ids = Vec::with_capacity(raw.vertices.len());
        for v in &raw.vertices {
            if ids.contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
            ids.push(v.clone());
        }
        let pos = |v: &VertexId| {
            ids.iter().position(|w| w == v).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {v}")))
        };
        let mut edges = Vec::with_capacity(raw.edges.len());
        for [a, b] in &raw.edges {
            edges.push((pos(a)?, pos(b)?));
        }
        Ok(Multigraph { ids, edges })
    }

    pub fn from_json(s: &str) -> Result<(Self, Option<Vec<usize>>)> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::InvalidGraph(format!("graph JSON: {e}")))?;
        Ok((Self::from_json_struct(&raw)?, raw.spanning_tree))
    }

    pub fn to_json_struct(&self) -> GraphJson {
        GraphJson {
            vertices: self.ids.clone(),
            edges: self.edges.iter().map(|&(a, b)| [self.ids[a].clone(), self.ids[b].clone()]).collect(),
            spanning_tree: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("plain data serializes")
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn id(&self, v: usize) -> &VertexId {
        &self.ids[v]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn num_loops(&self) -> usize {
        (0..self.edges.len()).filter(|&e| self.is_loop(e)).count()
    }

    /// Degree with every loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.degree_in(v, 0..self.edges.len())
    }

    /// Degree of `v` in the subgraph with the given edges, loops counted twice.
    pub fn degree_in(&self, v: usize, edges: impl IntoIterator<Item = usize>) -> usize {
        edges
            .into_iter()
            .map(|e| {
                let (a, b) = self.edges[e];
                (a == v) as usize + (b == v) as usize
            })
            .sum()
    }

    /// Number of edges joining `a` and `b` (loops when `a == b`).
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| (x == a && y == b) || (x == b && y == a)).count()
    }

    /// Edges at `v` as `(edge, other endpoint)`; loops appear once.
    pub fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(e, &(a, b))| {
                if a == v {
                    Some((e, b))
                } else if b == v {
                    Some((e, a))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (_, w) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number `|E| − |V| + 1` of a connected graph.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(self.num_edges() + 1 - self.num_vertices())
    }

    /// Connected with every vertex of degree at least three.
    pub fn is_stable(&self) -> bool {
        self.is_connected() && (0..self.num_vertices()).all(|v| self.degree(v) >= 3)
    }

    /// Errors unless the graph is stable of genus at least two.
    pub fn check_stable(&self) -> Result<usize> {
        let g = self.genus()?;
        if let Some(v) = (0..self.num_vertices()).find(|&v| self.degree(v) < 3) {
            return Err(Error::InvalidGraph(format!("vertex {} has degree {}", self.ids[v], self.degree(v))));
        }
        if g < 2 {
            return Err(Error::InvalidGraph(format!("genus {g} is below 2")));
        }
        Ok(g)
    }

    /// Whether `tree` is the edge set of a spanning tree.
    pub fn is_spanning_tree(&self, tree: &[usize]) -> bool {
        let n = self.num_vertices();
        if tree.len() + 1 != n || tree.iter().any(|&e| e >= self.num_edges()) {
            return false;
        }
        let mut uf = UnionFind::new(n);
        tree.iter().all(|&e| uf.union(self.edges[e].0, self.edges[e].1))
    }

    /// Every spanning tree as a sorted edge list, in lexicographic order.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.trees_from(0, &mut chosen, &mut out);
        out
    }

    fn trees_from(&self, e: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = self.num_vertices();
        if chosen.len() + 1 == n {
            out.push(chosen.clone());
            return;
        }
        if e == self.num_edges() || self.num_edges() - e < n - 1 - chosen.len() {
            return;
        }
        chosen.push(e);
        if self.is_forest(chosen) {
            self.trees_from(e + 1, chosen, out);
        }
        chosen.pop();
        self.trees_from(e + 1, chosen, out);
    }

    fn is_forest(&self, edges: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.num_vertices());
        edges.iter().all(|&e| uf.union(self.edges[e].0, self.edges[e].1))
    }

    /// Breadth-first spanning tree from vertex 0 using the lowest edge indices.
    pub fn default_spanning_tree(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        let mut seen = vec![false; self.num_vertices()];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (e, w) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(e);
                    queue.push_back(w);
                }
            }
        }
        tree.sort_unstable();
        Ok(tree)
    }

    /// Graph with vertices renamed by `perm` (old `v` becomes `perm[v]`).
    pub fn relabeled(&self, perm: &[usize]) -> Multigraph {
        let mut ids = self.ids.clone();
        for (v, &w) in perm.iter().enumerate() {
            ids[w] = self.ids[v].clone();
        }
        Multigraph { ids, edges: self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect() }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `a` and `b`; false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// The three stable graphs of genus two.
pub mod genus2 {
    use super::Multigraph;

    /// Two vertices joined by a bridge, with a loop at each.
    pub fn dumbbell() -> Multigraph {
        Multigraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).expect("valid")
    }

    /// One vertex with two loops.
    pub fn rose() -> Multigraph {
        Multigraph::new(1, vec![(0, 0), (0, 0)]).expect("valid")
    }

    /// Two vertices joined by three edges.
    pub fn theta() -> Multigraph {
        Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).expect("valid")
    }
}

/// Three parallel edges with a loop at each endpoint (genus four).
pub fn example_graph() -> Multigraph {
    Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1), (0, 0), (1, 1)]).expect("valid")
}
