//! Hypercube embeddings, clusters and the three ways to compute the
//! hypercube map of the coset decomposition.

use klcube::hypercube::HypercubeMap;
use klcube::{canonical_l, spans_cluster, spans_hypercube, theta_corner_rank, theta_explicit, BruhatInterval};

fn main() -> klcube::Result<()> {
    let iv = BruhatInterval::build("02143".parse()?, "43120".parse()?)?;
    let g = iv.graph();
    let x = iv.x();
    let l = canonical_l(&iv)?;
    let base = iv.bottom();
    let edges = l.edges_at(base).to_vec();
    let values: Vec<usize> = edges.iter().map(|&e| g.edge(e).label.unwrap().1 as usize).collect();
    println!("[{x},{}]: |L| = {}, {} hypercube edges at x with values {values:?}", iv.y(), l.len(), edges.len());
    println!("edges form a cluster: {}", spans_cluster(g, base, &edges)?);
    match spans_hypercube(g, base, &edges)? {
        Some(emb) => println!("they span a hypercube with crown {}", iv.perm(emb.crown())),
        None => println!("they do not span a hypercube on their own"),
    }

    let mut map = HypercubeMap::new(g, base, &edges)?;
    for mask in 0u32..(1 << edges.len()) {
        let subset: Vec<usize> = (0..edges.len()).filter(|b| mask & (1 << b) != 0).map(|b| values[b]).collect();
        let a = iv.perm(map.theta_mask(mask)?);
        let b = theta_explicit(&x, &subset)?;
        let c = theta_corner_rank(&x, &subset)?;
        println!("  I = {subset:?}: {a} {b} {c}");
        assert!(a == b && b == c);
    }
    Ok(())
}
