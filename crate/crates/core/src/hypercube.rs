//! Hypercube embeddings, hypercube clusters and the hypercube map θ.
//!
//! Two routes compute θ at the bottom of a Bruhat interval from the
//! permutation alone: [`theta_explicit`] (greedy decreasing subsequence and a
//! cycle) and [`theta_corner_rank`] (perturbing the corner rank matrix). The
//! graph-theoretic [`theta`] only looks at the unlabelled graph.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, RankedDigraph, VertexId};
use crate::perm::Permutation;

/// The directed graph `H_E` on subsets of a `k`-element set (as bitmasks),
/// with an edge `I -> I \ {e}` for every `e ∈ I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EHypercube {
    dim: usize,
}

impl EHypercube {
    pub fn new(dim: usize) -> Self {
        assert!(dim < 32);
        EHypercube { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.dim
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.dim) - 1) as u32
    }

    /// Targets of the edges leaving `mask`.
    pub fn out_neighbors(&self, mask: u32) -> impl Iterator<Item = u32> {
        (0..self.dim).filter(move |b| mask & (1 << b) != 0).map(move |b| mask & !(1 << b))
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.vertex_count() as u32)
            .flat_map(|m| self.out_neighbors(m).map(move |t| (m, t)))
            .collect()
    }
}

/// An injective embedding of `H_E` sending `∅` to the base and `{α}` to the
/// source of `α`. `images[mask]` is the image of the subset `mask`, where bit
/// `i` refers to `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeEmbedding {
    pub base: VertexId,
    pub edges: Vec<EdgeId>,
    pub images: Vec<VertexId>,
}

impl HypercubeEmbedding {
    pub fn crown(&self) -> VertexId {
        *self.images.last().expect("embedding has at least the base")
    }

    pub fn cube(&self) -> EHypercube {
        EHypercube::new(self.edges.len())
    }
}

fn check_edge_set(g: &RankedDigraph, base: VertexId, edges: &[EdgeId]) -> Result<()> {
    if !g.contains(base) {
        return Err(Error::NoSuchVertex(base));
    }
    let mut sources = Vec::with_capacity(edges.len());
    for &e in edges {
        if e >= g.edge_count() {
            return Err(Error::MalformedEdgeSet(format!("edge {e} out of range")));
        }
        if g.edge(e).target != base {
            return Err(Error::MalformedEdgeSet(format!("edge {e} does not end at {base}")));
        }
        sources.push(g.edge(e).source);
    }
    sources.sort_unstable();
    if sources.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedEdgeSet("repeated source".into()));
    }
    Ok(())
}

/// The embedding of `H_E` if exactly one exists.
pub fn spans_hypercube(
    g: &RankedDigraph,
    base: VertexId,
    edges: &[EdgeId],
) -> Result<Option<HypercubeEmbedding>> {
    check_edge_set(g, base, edges)?;
    Ok(unique_embedding(g, base, edges))
}

fn unique_embedding(g: &RankedDigraph, base: VertexId, edges: &[EdgeId]) -> Option<HypercubeEmbedding> {
    let k = edges.len();
    let count = 1usize << k;
    let mut images = vec![usize::MAX; count];
    images[0] = base;
    for (i, &e) in edges.iter().enumerate() {
        images[1 << i] = g.edge(e).source;
    }
    // remaining subsets in order of size
    let mut order: Vec<u32> = (0..count as u32).filter(|m| m.count_ones() >= 2).collect();
    order.sort_by_key(|m| (m.count_ones(), *m));
    let mut used: Vec<VertexId> = images.iter().copied().filter(|&v| v != usize::MAX).collect();
    let mut found = 0usize;
    let mut first = None;
    place(g, &order, 0, &mut images, &mut used, &mut found, &mut first);
    if found == 1 {
        Some(HypercubeEmbedding { base, edges: edges.to_vec(), images: first.unwrap() })
    } else {
        None
    }
}

fn place(
    g: &RankedDigraph,
    order: &[u32],
    at: usize,
    images: &mut Vec<VertexId>,
    used: &mut Vec<VertexId>,
    found: &mut usize,
    first: &mut Option<Vec<VertexId>>,
) {
    if *found >= 2 {
        return;
    }
    if at == order.len() {
        *found += 1;
        if first.is_none() {
            *first = Some(images.clone());
        }
        return;
    }
    let mask = order[at];
    let facets: Vec<VertexId> =
        (0..32).filter(|b| mask & (1 << b) != 0).map(|b| images[(mask & !(1 << b)) as usize]).collect();
    let candidates: Vec<VertexId> = g
        .predecessors(facets[0])
        .filter(|&w| facets[1..].iter().all(|&f| g.has_edge(w, f)) && !used.contains(&w))
        .collect();
    for w in candidates {
        images[mask as usize] = w;
        used.push(w);
        place(g, order, at + 1, images, used, found, first);
        used.pop();
        if *found >= 2 {
            break;
        }
    }
    images[mask as usize] = usize::MAX;
}

/// Subsets (as bitmasks over `edges`) of size at least two whose sources are
/// pairwise incomparable.
fn antichains(g: &RankedDigraph, edges: &[EdgeId]) -> Vec<u32> {
    let k = edges.len();
    let src: Vec<VertexId> = edges.iter().map(|&e| g.edge(e).source).collect();
    let mut out = Vec::new();
    fn grow(g: &RankedDigraph, src: &[VertexId], start: usize, mask: u32, out: &mut Vec<u32>) {
        for i in start..src.len() {
            let ok = (0..src.len()).filter(|b| mask & (1 << b) != 0).all(|b| !g.comparable(src[b], src[i]));
            if ok {
                let m = mask | (1 << i);
                if m.count_ones() >= 2 {
                    out.push(m);
                }
                grow(g, src, i + 1, m, out);
            }
        }
    }
    grow(g, &src, 0, 0, &mut out);
    debug_assert!(out.iter().all(|m| (*m as u64) < (1u64 << k)));
    out
}

/// First subset of pairwise incomparable sources that fails to span a
/// hypercube, if any.
pub fn cluster_failure(g: &RankedDigraph, base: VertexId, edges: &[EdgeId]) -> Result<Option<Vec<EdgeId>>> {
    check_edge_set(g, base, edges)?;
    for mask in antichains(g, edges) {
        let sub = subset(edges, mask);
        if unique_embedding(g, base, &sub).is_none() {
            return Ok(Some(sub));
        }
    }
    Ok(None)
}

/// Whether every subset of `edges` with pairwise incomparable sources spans a
/// hypercube.
pub fn spans_cluster(g: &RankedDigraph, base: VertexId, edges: &[EdgeId]) -> Result<bool> {
    Ok(cluster_failure(g, base, edges)?.is_none())
}

fn subset(edges: &[EdgeId], mask: u32) -> Vec<EdgeId> {
    edges.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect()
}

/// Edges of `f` whose sources are maximal among the sources of `f`.
pub fn maximal_edges(g: &RankedDigraph, f: &[EdgeId]) -> Vec<EdgeId> {
    f.iter()
        .copied()
        .filter(|&a| {
            let sa = g.edge(a).source;
            !f.iter().any(|&b| {
                let sb = g.edge(b).source;
                sb != sa && g.leq(sa, sb)
            })
        })
        .collect()
}

/// θ(F): the crown of the hypercube spanned by `F_max`. `θ(∅)` is the base.
pub fn theta(g: &RankedDigraph, base: VertexId, cluster: &[EdgeId], f: &[EdgeId]) -> Result<VertexId> {
    check_edge_set(g, base, cluster)?;
    if let Some(&e) = f.iter().find(|e| !cluster.contains(e)) {
        return Err(Error::MalformedEdgeSet(format!("edge {e} is not in the cluster")));
    }
    if !spans_cluster(g, base, cluster)? {
        return Err(Error::HypercubeMap("edge set does not span a hypercube cluster".into()));
    }
    let fmax = maximal_edges(g, f);
    match unique_embedding(g, base, &fmax) {
        Some(emb) => Ok(emb.crown()),
        None => Err(Error::HypercubeMap(format!("maximal edges {fmax:?} do not span a hypercube"))),
    }
}

/// θ over all subsets of a fixed cluster, caching one embedding per
/// antichain `F_max`.
pub struct HypercubeMap<'g> {
    graph: &'g RankedDigraph,
    base: VertexId,
    edges: Vec<EdgeId>,
    crowns: HashMap<u32, VertexId>,
}

impl<'g> HypercubeMap<'g> {
    pub fn new(graph: &'g RankedDigraph, base: VertexId, edges: &[EdgeId]) -> Result<Self> {
        if let Some(bad) = cluster_failure(graph, base, edges)? {
            return Err(Error::HypercubeMap(format!("edges {bad:?} do not span a hypercube")));
        }
        Ok(HypercubeMap { graph, base, edges: edges.to_vec(), crowns: HashMap::new() })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// θ of the subset `mask`, bit `i` standing for `edges()[i]`.
    pub fn theta_mask(&mut self, mask: u32) -> Result<VertexId> {
        let g = self.graph;
        let src: Vec<VertexId> = self.edges.iter().map(|&e| g.edge(e).source).collect();
        let mut max_mask = 0u32;
        for i in (0..self.edges.len()).filter(|i| mask & (1 << i) != 0) {
            let dominated = (0..self.edges.len())
                .filter(|j| mask & (1 << j) != 0 && *j != i)
                .any(|j| g.leq(src[i], src[j]));
            if !dominated {
                max_mask |= 1 << i;
            }
        }
        if let Some(&v) = self.crowns.get(&max_mask) {
            return Ok(v);
        }
        let sub = subset(&self.edges, max_mask);
        let v = unique_embedding(g, self.base, &sub)
            .ok_or_else(|| Error::HypercubeMap(format!("maximal edges {sub:?} do not span a hypercube")))?
            .crown();
        self.crowns.insert(max_mask, v);
        Ok(v)
    }
}

fn check_value_set(x: &Permutation, values: &[usize]) -> Result<usize> {
    let m = x.position_of(0);
    let mut seen = vec![false; x.size()];
    for &v in values {
        if v >= x.size() || v == 0 || x.position_of(v) <= m || seen[v] {
            return Err(Error::InvalidPositions(format!(
                "{values:?} is not a subset of the entries right of 0 in {x}"
            )));
        }
        seen[v] = true;
    }
    Ok(m)
}

/// Greedy decreasing subsequence: the maximum of `values`, then the maximum
/// of those to its right in `x`, and so on.
pub fn greedy_decreasing(x: &Permutation, values: &[usize]) -> Result<Vec<usize>> {
    check_value_set(x, values)?;
    let mut by_pos: Vec<usize> = values.to_vec();
    by_pos.sort_by_key(|&v| x.position_of(v));
    let mut out = Vec::new();
    let mut rest = &by_pos[..];
    while let Some((idx, &top)) = rest.iter().enumerate().max_by_key(|(_, v)| **v) {
        out.push(top);
        rest = &rest[idx + 1..];
    }
    Ok(out)
}

/// `σ_I x`: with `I_decr = (i_1, ..., i_l)`, the entry 0 is replaced by
/// `i_1`, each `i_k` by `i_{k+1}`, and `i_l` by 0.
pub fn theta_explicit(x: &Permutation, values: &[usize]) -> Result<Permutation> {
    let decr = greedy_decreasing(x, values)?;
    if decr.is_empty() {
        return Ok(*x);
    }
    let mut images: Vec<usize> = x.images().iter().map(|&v| v as usize).collect();
    let mut chain = vec![0usize];
    chain.extend_from_slice(&decr);
    for w in chain.windows(2) {
        images[x.position_of(w[0])] = w[1];
    }
    images[x.position_of(*decr.last().unwrap())] = 0;
    Permutation::from_images(&images)
}

/// θ through the corner rank matrix: the rank of each lower-left corner of
/// `x` grows by one exactly when `q >= m`, `p >= 1` and some element of `I`
/// that is `>= p` lies right of column `q`. Row 0 never changes, since every
/// corner there already has full rank.
pub fn theta_corner_rank(x: &Permutation, values: &[usize]) -> Result<Permutation> {
    let m = check_value_set(x, values)?;
    let n = x.size();
    let base = x.corner_rank_matrix();
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let r = base.get(p, q);
                    let escapes = q >= m && p > 0 && values.iter().any(|&v| v >= p && x.position_of(v) > q);
                    r + escapes as u8
                })
                .collect()
        })
        .collect();
    crate::perm::CornerRankMatrix::from_rows(&rows).to_permutation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BruhatInterval;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    // S_3 Bruhat graph with named vertices: s = 102, t = 021, st = 120, ts = 201.
    struct S3 {
        iv: BruhatInterval,
    }

    impl S3 {
        fn new() -> Self {
            S3 { iv: BruhatInterval::build(Permutation::identity(3), Permutation::longest(3)).unwrap() }
        }
        fn v(&self, s: &str) -> VertexId {
            self.iv.vertex_of(&p(s)).unwrap()
        }
        fn e(&self, from: &str, to: &str) -> EdgeId {
            let (a, b) = (self.v(from), self.v(to));
            let g = self.iv.graph();
            *g.out_edges(a).iter().find(|&&e| g.edge(e).target == b).unwrap()
        }
    }

    #[test]
    fn hypercube_shape() {
        let h = EHypercube::new(3);
        assert_eq!(h.vertex_count(), 8);
        assert_eq!(h.edges().len(), 12);
        for m in 0..8u32 {
            assert_eq!(h.out_neighbors(m).count(), m.count_ones() as usize);
        }
    }

    #[test]
    fn spans_hypercube_examples() {
        let s3 = S3::new();
        let g = s3.iv.graph();
        let id = s3.v("012");
        let single = spans_hypercube(g, id, &[s3.e("102", "012")]).unwrap().unwrap();
        assert_eq!(single.images, vec![id, s3.v("102")]);
        // w0 -> id and s -> id: nothing covers both
        assert!(spans_hypercube(g, id, &[s3.e("210", "012"), s3.e("102", "012")]).unwrap().is_none());
        // s -> id and t -> id: two candidate crowns
        assert!(spans_hypercube(g, id, &[s3.e("102", "012"), s3.e("021", "012")]).unwrap().is_none());
        // st -> s and ts -> s: crown w0
        let s = s3.v("102");
        let emb = spans_hypercube(g, s, &[s3.e("120", "102"), s3.e("201", "102")]).unwrap().unwrap();
        assert_eq!(emb.crown(), s3.v("210"));
        assert!(spans_hypercube(g, s, &[s3.e("102", "012")]).is_err());
    }

    #[test]
    fn cluster_examples() {
        let s3 = S3::new();
        let g = s3.iv.graph();
        let id = s3.v("012");
        // comparable sources: only singletons are tested
        assert!(spans_cluster(g, id, &[s3.e("210", "012"), s3.e("102", "012")]).unwrap());
        assert!(!spans_cluster(g, id, &[s3.e("102", "012"), s3.e("021", "012")]).unwrap());
        assert!(spans_cluster(g, id, &[]).unwrap());
        let s = s3.v("102");
        assert!(spans_cluster(g, s, &[s3.e("120", "102"), s3.e("201", "102")]).unwrap());
    }

    #[test]
    fn maximal_edge_examples() {
        let s3 = S3::new();
        let g = s3.iv.graph();
        let chain = [s3.e("102", "012"), s3.e("210", "012")];
        assert_eq!(maximal_edges(g, &chain), vec![s3.e("210", "012")]);
        let anti = [s3.e("102", "012"), s3.e("021", "012")];
        assert_eq!(maximal_edges(g, &anti), anti.to_vec());
    }

    #[test]
    fn theta_examples() {
        let s3 = S3::new();
        let g = s3.iv.graph();
        let id = s3.v("012");
        let cl = [s3.e("102", "012"), s3.e("210", "012")];
        assert_eq!(theta(g, id, &cl, &[]).unwrap(), id);
        assert_eq!(theta(g, id, &cl, &[cl[0]]).unwrap(), s3.v("102"));
        assert_eq!(theta(g, id, &cl, &cl).unwrap(), s3.v("210"));
        let bad = [s3.e("102", "012"), s3.e("021", "012")];
        assert!(theta(g, id, &bad, &bad).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_decreasing(&p("0123"), &[1, 2, 3]).unwrap(), vec![3]);
        assert_eq!(greedy_decreasing(&p("0321"), &[1, 2, 3]).unwrap(), vec![3, 2, 1]);
        assert_eq!(greedy_decreasing(&p("0321"), &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(greedy_decreasing(&p("031524"), &[3, 1, 5, 2, 4]).unwrap(), vec![5, 4]);
        assert!(greedy_decreasing(&p("1023"), &[1]).is_err());
        assert!(greedy_decreasing(&p("0123"), &[0]).is_err());
    }

    #[test]
    fn theta_explicit_examples() {
        assert_eq!(theta_explicit(&p("0123"), &[3]).unwrap(), p("3120"));
        assert_eq!(theta_explicit(&p("0321"), &[3]).unwrap(), p("3021"));
        assert_eq!(theta_explicit(&p("0321"), &[1, 2, 3]).unwrap(), p("3210"));
        assert_eq!(theta_explicit(&p("0321"), &[]).unwrap(), p("0321"));
    }

    #[test]
    fn theta_corner_rank_examples() {
        assert_eq!(theta_corner_rank(&p("0321"), &[]).unwrap(), p("0321"));
        assert_eq!(
            theta_corner_rank(&p("0123"), &[1, 2, 3]).unwrap(),
            Permutation::transposition(4, 0, 3).unwrap().compose(&p("0123")).unwrap()
        );
        let w0 = theta_corner_rank(&p("0321"), &[1, 2, 3]).unwrap();
        assert_eq!(w0, p("3210"));
        assert_eq!(
            w0.corner_rank_matrix().rows(),
            vec![vec![1, 2, 3, 4], vec![1, 2, 3, 3], vec![1, 2, 2, 2], vec![1, 1, 1, 1]]
        );
    }
}
