//! Hypercube decompositions of ranked graphs and Bruhat intervals.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{BruhatInterval, Diamond, EdgeId, RankedDigraph, VertexId, VertexSet};
use crate::hypercube::cluster_failure;

/// A validated decomposition `J = down_set(z)` together with the hypercube
/// edge sets `E_v` (edges into `v ∈ J` from outside `J`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubeDecomposition {
    crown: VertexId,
    members: VertexSet,
    hypercube_edges: Vec<(VertexId, Vec<EdgeId>)>,
}

/// Why a candidate crown does not give a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    DiamondIncomplete { diamond: Diamond },
    ClusterFailure { vertex: VertexId, edges: Vec<EdgeId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid(HypercubeDecomposition),
    Invalid(Failure),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }

    pub fn valid(self) -> Option<HypercubeDecomposition> {
        match self {
            Validation::Valid(d) => Some(d),
            Validation::Invalid(_) => None,
        }
    }
}

impl HypercubeDecomposition {
    pub fn crown(&self) -> VertexId {
        self.crown
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `E_v` for `v ∈ J`, empty for vertices outside `J`.
    pub fn edges_at(&self, v: VertexId) -> &[EdgeId] {
        match self.hypercube_edges.binary_search_by_key(&v, |(u, _)| *u) {
            Ok(i) => &self.hypercube_edges[i].1,
            Err(_) => &[],
        }
    }

    pub fn hypercube_edges(&self) -> &[(VertexId, Vec<EdgeId>)] {
        &self.hypercube_edges
    }

    /// Colors for [`RankedDigraph::canonical_key_colored`]: 1 on `J`.
    pub fn coloring(&self, g: &RankedDigraph) -> Vec<u32> {
        (0..g.vertex_count()).map(|v| self.members.contains(v) as u32).collect()
    }

    /// `{z, members, hypercube_edges}`; `z` is the permutation when an
    /// interval is given and the vertex index otherwise.
    pub fn to_json(&self, g: &RankedDigraph, interval: Option<&BruhatInterval>) -> Value {
        let z = match interval {
            Some(iv) => json!(iv.perm(self.crown).to_string()),
            None => json!(self.crown),
        };
        let mut edges = Map::new();
        for (v, es) in &self.hypercube_edges {
            let pairs: Vec<[usize; 2]> = es.iter().map(|&e| [g.edge(e).source, g.edge(e).target]).collect();
            edges.insert(v.to_string(), json!(pairs));
        }
        json!({
            "z": z,
            "members": self.members.ones().collect::<Vec<_>>(),
            "hypercube_edges": edges,
        })
    }
}

fn check_crown(g: &RankedDigraph, z: VertexId) -> Result<VertexId> {
    if !g.contains(z) {
        return Err(Error::NoSuchVertex(z));
    }
    let top = g.top().ok_or(Error::NoUniqueTop)?;
    if z == top {
        return Err(Error::CrownIsTop);
    }
    Ok(top)
}

/// Checks whether `down_set(z)` is a hypercube decomposition of `g`.
pub fn validate(g: &RankedDigraph, z: VertexId) -> Result<Validation> {
    check_crown(g, z)?;
    Ok(validate_with(g, &g.diamonds(), z))
}

fn validate_with(g: &RankedDigraph, diamonds: &[Diamond], z: VertexId) -> Validation {
    let members = g.down_set(z).expect("crown checked");
    if let Some(diamond) = g.diamond_violation(diamonds, &members) {
        return Validation::Invalid(Failure::DiamondIncomplete { diamond });
    }
    let mut hypercube_edges = Vec::new();
    for v in members.ones() {
        let es: Vec<EdgeId> =
            g.in_edges(v).iter().copied().filter(|&e| !members.contains(g.edge(e).source)).collect();
        if let Some(edges) = cluster_failure(g, v, &es).expect("edges end at v") {
            return Validation::Invalid(Failure::ClusterFailure { vertex: v, edges });
        }
        hypercube_edges.push((v, es));
    }
    Validation::Valid(HypercubeDecomposition { crown: z, members, hypercube_edges })
}

/// All decompositions, by increasing crown id.
pub fn enumerate(g: &RankedDigraph) -> Result<Vec<HypercubeDecomposition>> {
    Ok(enumerate_with_failures(g)?.into_iter().filter_map(|(_, v)| v.valid()).collect())
}

/// The validation outcome for every candidate crown, by increasing id.
pub fn enumerate_with_failures(g: &RankedDigraph) -> Result<Vec<(VertexId, Validation)>> {
    let top = g.top().ok_or(Error::NoUniqueTop)?;
    let diamonds = g.diamonds();
    Ok((0..g.vertex_count())
        .into_par_iter()
        .filter(|&z| z != top)
        .map(|z| (z, validate_with(g, &diamonds, z)))
        .collect())
}

/// Decomposition by the coset `L = {v : v⁻¹(0) = x⁻¹(0)}`.
///
/// Fails with [`Error::CosetContainsTop`] when `x` and `y` put 0 in the
/// same position, since then `L` is the whole interval.
pub fn canonical_l(interval: &BruhatInterval) -> Result<HypercubeDecomposition> {
    let (x, y) = (interval.x(), interval.y());
    if x == y {
        return Err(Error::CanonicalInvalid("interval has a single element".into()));
    }
    let m = x.position_of(0);
    if y.position_of(0) == m {
        return Err(Error::CosetContainsTop(y));
    }
    let g = interval.graph();
    let mut members = VertexSet::with_capacity(interval.len());
    for (v, p) in interval.vertices().iter().enumerate() {
        if p.position_of(0) == m {
            members.insert(v);
        }
    }
    let maxima: Vec<VertexId> =
        members.ones().filter(|&c| members.ones().all(|v| g.leq(v, c))).collect();
    let &[c] = maxima.as_slice() else {
        return Err(Error::CanonicalInvalid("coset has no unique maximum".into()));
    };
    if g.down_set(c)? != members {
        return Err(Error::CanonicalInvalid("coset is not a lower interval".into()));
    }
    match validate(g, c)? {
        Validation::Valid(d) => Ok(d),
        Validation::Invalid(f) => Err(Error::CanonicalInvalid(format!("{f:?}"))),
    }
}
