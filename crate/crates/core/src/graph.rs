//! Ranked directed acyclic graphs viewed as posets, and Bruhat intervals.
//!
//! Edges point downward (`level(source) > level(target)`), and `u <= v` means
//! there is a directed path from `v` to `u`. Every vertex carries a bitset of
//! the vertices below it, so order queries are O(1).

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type VertexSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    /// Transposition `(i, j)` relating the endpoints, for Bruhat graphs.
    pub label: Option<(u8, u8)>,
}

#[derive(Clone, Debug)]
pub struct RankedDigraph {
    levels: Vec<i32>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    below: Vec<FixedBitSet>,
}

/// `{levels: [...], edges: [[s, t], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphFixture {
    pub levels: Vec<i32>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Diamond {
    pub top: VertexId,
    pub left: VertexId,
    pub right: VertexId,
    pub bottom: VertexId,
}

impl RankedDigraph {
    pub fn new(levels: Vec<i32>, edges: Vec<Edge>) -> Result<Self> {
        let n = levels.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for (id, e) in edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return Err(Error::MalformedGraph(format!("edge {id} has an endpoint out of range")));
            }
            if levels[e.source] <= levels[e.target] {
                return Err(Error::MalformedGraph(format!(
                    "edge {} -> {} does not decrease the level",
                    e.source, e.target
                )));
            }
            if !seen.insert((e.source, e.target)) {
                return Err(Error::MalformedGraph(format!("duplicate edge {} -> {}", e.source, e.target)));
            }
            out_edges[e.source].push(id);
            in_edges[e.target].push(id);
        }
        let mut order: Vec<VertexId> = (0..n).collect();
        order.sort_by_key(|&v| levels[v]);
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &v in &order {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &e in &out_edges[v] {
                set.union_with(&below[edges[e].target]);
            }
            below[v] = set;
        }
        Ok(RankedDigraph { levels, edges, out_edges, in_edges, below })
    }

    pub fn from_pairs(levels: Vec<i32>, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(source, target)| Edge { source, target, label: None }).collect();
        Self::new(levels, edges)
    }

    pub fn from_fixture(f: &GraphFixture) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_pairs(f.levels.clone(), &pairs)
    }

    pub fn to_fixture(&self) -> GraphFixture {
        GraphFixture {
            levels: self.levels.clone(),
            edges: self.edges.iter().map(|e| [e.source, e.target]).collect(),
        }
    }

    /// The `k`-crown: a top, two middle rows of `k` vertices joined in a
    /// zigzag `2k`-cycle, and a bottom.
    pub fn crown(k: usize) -> Self {
        assert!(k >= 2);
        let top = 0;
        let upper = |i: usize| 1 + i;
        let lower = |i: usize| 1 + k + i;
        let bottom = 1 + 2 * k;
        let mut levels = vec![3];
        levels.extend(std::iter::repeat_n(2, k));
        levels.extend(std::iter::repeat_n(1, k));
        levels.push(0);
        let mut pairs = Vec::new();
        for i in 0..k {
            pairs.push((top, upper(i)));
            pairs.push((upper(i), lower(i)));
            pairs.push((upper(i), lower((i + 1) % k)));
            pairs.push((lower(i), bottom));
        }
        Self::from_pairs(levels, &pairs).expect("crown is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn level(&self, v: VertexId) -> i32 {
        self.levels[v]
    }

    pub fn levels(&self) -> &[i32] {
        &self.levels
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges leaving `v` (pointing down from it).
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    /// Edges arriving at `v` from above.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges[v].iter().map(move |&e| self.edges[e].target)
    }

    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_edges[v].iter().map(move |&e| self.edges[e].source)
    }

    pub fn has_edge(&self, source: VertexId, target: VertexId) -> bool {
        self.out_edges[source].iter().any(|&e| self.edges[e].target == target)
    }

    #[inline]
    pub fn leq(&self, u: VertexId, v: VertexId) -> bool {
        self.below[v].contains(u)
    }

    #[inline]
    pub fn comparable(&self, u: VertexId, v: VertexId) -> bool {
        self.leq(u, v) || self.leq(v, u)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.vertex_count()
    }

    /// The unique maximal vertex, if the graph has one.
    pub fn top(&self) -> Option<VertexId> {
        (0..self.vertex_count()).find(|&v| self.below[v].count_ones(..) == self.vertex_count())
    }

    /// `{v : v <= z}`, including `z`.
    pub fn down_set(&self, z: VertexId) -> Result<VertexSet> {
        if !self.contains(z) {
            return Err(Error::NoSuchVertex(z));
        }
        Ok(self.below[z].clone())
    }

    pub fn undirected_degree(&self, v: VertexId) -> usize {
        self.out_edges[v].len() + self.in_edges[v].len()
    }

    pub fn is_regular_undirected(&self) -> bool {
        let mut degs = (0..self.vertex_count()).map(|v| self.undirected_degree(v));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// All diamonds `top -> {left, right} -> bottom`, with `left < right` as
    /// vertex ids so each unordered pair appears once.
    pub fn diamonds(&self) -> Vec<Diamond> {
        let mut out = Vec::new();
        let succ: Vec<Vec<VertexId>> = (0..self.vertex_count())
            .map(|v| {
                let mut s: Vec<_> = self.successors(v).collect();
                s.sort_unstable();
                s
            })
            .collect();
        for top in 0..self.vertex_count() {
            let below = &succ[top];
            for (a, &left) in below.iter().enumerate() {
                for &right in &below[a + 1..] {
                    for bottom in sorted_intersection(&succ[left], &succ[right]) {
                        out.push(Diamond { top, left, right, bottom });
                    }
                }
            }
        }
        out
    }

    /// First diamond that `members` meets in one of the three two-edge
    /// configurations without containing all four vertices.
    pub fn diamond_violation(&self, diamonds: &[Diamond], members: &VertexSet) -> Option<Diamond> {
        diamonds.iter().copied().find(|d| {
            let (t, l, r, b) =
                (members[d.top], members[d.left], members[d.right], members[d.bottom]);
            let top_pair = t && l && r;
            let side_pair = t && b && (l || r);
            let bottom_pair = l && r && b;
            (top_pair || side_pair || bottom_pair) && !(t && l && r && b)
        })
    }

    pub fn is_diamond_complete(&self, members: &VertexSet) -> bool {
        self.diamond_violation(&self.diamonds(), members).is_none()
    }

    /// Byte string identifying the graph up to level-preserving isomorphism.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.canonical_key_colored(&vec![0; self.vertex_count()])
    }

    /// As [`canonical_key`](Self::canonical_key), for graphs whose vertices
    /// carry an extra color that isomorphisms must preserve.
    pub fn canonical_key_colored(&self, colors: &[u32]) -> Vec<u8> {
        assert_eq!(colors.len(), self.vertex_count());
        let initial: Vec<(i64, i64)> = (0..self.vertex_count())
            .map(|v| (self.levels[v] as i64, colors[v] as i64))
            .collect();
        let start = self.refine(normalize(&initial));
        let mut best = None;
        self.canon_search(start, colors, &mut best);
        best.unwrap_or_default()
    }

    fn refine(&self, mut cells: Vec<u32>) -> Vec<u32> {
        let n = self.vertex_count();
        let mut classes = count_classes(&cells);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut down: Vec<u32> = self.successors(v).map(|u| cells[u]).collect();
                    let mut up: Vec<u32> = self.predecessors(v).map(|u| cells[u]).collect();
                    down.sort_unstable();
                    up.sort_unstable();
                    (cells[v], down, up)
                })
                .collect();
            let next = normalize(&sigs);
            let next_classes = count_classes(&next);
            cells = next;
            if next_classes == classes {
                return cells;
            }
            classes = next_classes;
        }
    }

    fn canon_search(&self, cells: Vec<u32>, colors: &[u32], best: &mut Option<Vec<u8>>) {
        let n = self.vertex_count();
        if count_classes(&cells) == n {
            let enc = self.encode(&cells, colors);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let mut sizes = vec![0usize; n];
        for &c in &cells {
            sizes[c as usize] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1).unwrap() as u32;
        for v in (0..n).filter(|&v| cells[v] == target) {
            let split: Vec<(u32, u32)> = (0..n)
                .map(|u| (cells[u], (cells[u] == target && u != v) as u32))
                .collect();
            let next = self.refine(normalize(&split));
            self.canon_search(next, colors, best);
        }
    }

    fn encode(&self, order: &[u32], colors: &[u32]) -> Vec<u8> {
        let n = self.vertex_count();
        let mut inv = vec![0usize; n];
        for (v, &c) in order.iter().enumerate() {
            inv[c as usize] = v;
        }
        let mut out = Vec::with_capacity(8 + n * 8 + self.edges.len() * 8);
        out.extend_from_slice(&(n as u32).to_le_bytes());
        out.extend_from_slice(&(self.edges.len() as u32).to_le_bytes());
        for &v in &inv {
            out.extend_from_slice(&self.levels[v].to_le_bytes());
            out.extend_from_slice(&colors[v].to_le_bytes());
        }
        let mut es: Vec<(u32, u32)> =
            self.edges.iter().map(|e| (order[e.source], order[e.target])).collect();
        es.sort_unstable();
        for (s, t) in es {
            out.extend_from_slice(&s.to_le_bytes());
            out.extend_from_slice(&t.to_le_bytes());
        }
        out
    }
}

fn sorted_intersection<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(a[i - 1]);
                }
            }
        }
        None
    })
}

/// Replaces each signature by its rank among the distinct signatures.
fn normalize<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter().map(|s| distinct.binary_search(s).unwrap() as u32).collect()
}

fn count_classes(cells: &[u32]) -> usize {
    cells.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// The full subgraph of the Bruhat graph on `{u : x <= u <= y}`.
#[derive(Clone, Debug)]
pub struct BruhatInterval {
    x: Permutation,
    y: Permutation,
    vertices: Vec<Permutation>,
    index: HashMap<Permutation, VertexId>,
    graph: RankedDigraph,
}

impl BruhatInterval {
    /// Vertices are ordered by length, then by string notation; vertex 0 is
    /// `x` and the last vertex is `y`.
    pub fn build(x: Permutation, y: Permutation) -> Result<Self> {
        if !x.bruhat_leq(&y)? {
            return Err(Error::NotBelow { x, y });
        }
        let n = x.size();
        let mut found = std::collections::HashSet::new();
        found.insert(y);
        let mut stack = vec![y];
        while let Some(v) = stack.pop() {
            let inv = v.inverse();
            for i in 0..n {
                for j in i + 1..n {
                    if inv.get(i) > inv.get(j) {
                        let u = v.swap_values(i, j);
                        if !found.contains(&u) && x.bruhat_leq_unchecked(&u) {
                            found.insert(u);
                            stack.push(u);
                        }
                    }
                }
            }
        }
        let mut keyed: Vec<(usize, Permutation)> = found.into_iter().map(|p| (p.length(), p)).collect();
        keyed.sort();
        let lx = x.length() as i32;
        let levels: Vec<i32> = keyed.iter().map(|(l, _)| *l as i32 - lx).collect();
        let vertices: Vec<Permutation> = keyed.into_iter().map(|(_, p)| p).collect();
        let index: HashMap<Permutation, VertexId> =
            vertices.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut edges = Vec::new();
        for (s, v) in vertices.iter().enumerate() {
            let inv = v.inverse();
            for i in 0..n {
                for j in i + 1..n {
                    if inv.get(i) > inv.get(j) {
                        if let Some(&t) = index.get(&v.swap_values(i, j)) {
                            edges.push(Edge { source: s, target: t, label: Some((i as u8, j as u8)) });
                        }
                    }
                }
            }
        }
        let graph = RankedDigraph::new(levels, edges)?;
        Ok(BruhatInterval { x, y, vertices, index, graph })
    }

    pub fn x(&self) -> Permutation {
        self.x
    }

    pub fn y(&self) -> Permutation {
        self.y
    }

    pub fn graph(&self) -> &RankedDigraph {
        &self.graph
    }

    pub fn bottom(&self) -> VertexId {
        0
    }

    pub fn top(&self) -> VertexId {
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn perm(&self, v: VertexId) -> Permutation {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex_of(&self, p: &Permutation) -> Option<VertexId> {
        self.index.get(p).copied()
    }

    /// Counts of vertices per level, bottom first.
    pub fn level_profile(&self) -> Vec<usize> {
        let top = self.graph.level(self.top()) as usize;
        let mut prof = vec![0; top + 1];
        for v in 0..self.len() {
            prof[self.graph.level(v) as usize] += 1;
        }
        prof
    }

    /// `{x, y, vertices: [...], edges: [[s, t, "(i,j)"], ...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .graph
            .edges()
            .iter()
            .map(|e| {
                let (i, j) = e.label.unwrap_or((0, 0));
                serde_json::json!([e.source, e.target, format!("({i},{j})")])
            })
            .collect();
        serde_json::json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "vertices": self.vertices.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "edges": edges,
        })
    }

    /// Graphviz rendering. Vertices in `members` are filled; edges in
    /// `highlight_edges` are drawn in a distinct color.
    pub fn to_dot(&self, members: Option<&VertexSet>, highlight_edges: &[EdgeId]) -> String {
        let mut s = String::new();
        writeln!(s, "digraph interval {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=box, style=filled, fillcolor=white];").unwrap();
        for (v, p) in self.vertices.iter().enumerate() {
            let fill = match members {
                Some(m) if m.contains(v) => "\"#f4a6a6\"",
                _ => "white",
            };
            writeln!(s, "  v{v} [label=\"{p}\\nlevel {}\", fillcolor={fill}];", self.graph.level(v)).unwrap();
        }
        for (id, e) in self.graph.edges().iter().enumerate() {
            let (i, j) = e.label.unwrap_or((0, 0));
            let color = if highlight_edges.contains(&id) { "blue" } else { "black" };
            writeln!(s, "  v{} -> v{} [label=\"({i},{j})\", color={color}];", e.source, e.target).unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}
