use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

/// Undirected multigraph keyed by strings. Iteration order is fixed by the
/// keys, so exports are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub vertices: BTreeSet<String>,
    /// `(a, b, label)`.
    pub edges: Vec<(String, String, String)>,
}

impl Graph {
    pub fn add_vertex(&mut self, v: &str) {
        self.vertices.insert(v.to_string());
    }

    pub fn add_edge(&mut self, a: &str, b: &str, label: &str) {
        self.add_vertex(a);
        self.add_vertex(b);
        self.edges.push((a.to_string(), b.to_string(), label.to_string()));
    }

    pub fn neighbours(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut n: BTreeMap<&str, Vec<&str>> = self.vertices.iter().map(|v| (v.as_str(), Vec::new())).collect();
        for (a, b, _) in &self.edges {
            n.get_mut(a.as_str()).expect("vertex").push(b);
            n.get_mut(b.as_str()).expect("vertex").push(a);
        }
        n
    }
}

pub fn degrees(g: &Graph) -> BTreeMap<&str, usize> {
    g.neighbours().into_iter().map(|(v, n)| (v, n.len())).collect()
}

/// No cycles, counting loops and parallel edges as cycles.
pub fn is_forest(g: &Graph) -> bool {
    let idx: BTreeMap<&str, usize> = g.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..idx.len()).collect();
    fn root(p: &[usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for (a, b, _) in &g.edges {
        let (ra, rb) = (root(&parent, idx[a.as_str()]), root(&parent, idx[b.as_str()]));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

pub fn bfs_distances<'a>(g: &'a Graph, from: &str) -> BTreeMap<&'a str, u32> {
    let n = g.neighbours();
    let mut dist = BTreeMap::new();
    let Some(start) = g.vertices.get(from) else { return dist };
    dist.insert(start.as_str(), 0);
    let mut q = VecDeque::from([start.as_str()]);
    while let Some(v) = q.pop_front() {
        let dv = dist[v];
        for &w in &n[v] {
            if !dist.contains_key(w) {
                dist.insert(w, dv + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// GraphViz edge list.
pub fn to_dot(g: &Graph, name: &str, colour: &str) -> String {
    let mut s = format!("graph {name} {{\n  edge [color={colour}];\n");
    for v in &g.vertices {
        s.push_str(&format!("  \"{v}\";\n"));
    }
    for (a, b, l) in &g.edges {
        s.push_str(&format!("  \"{a}\" -- \"{b}\" [label=\"{l}\"];\n"));
    }
    s.push_str("}\n");
    s
}
