//! Builds a Bruhat interval and exports it as JSON and Graphviz DOT with the
//! coset decomposition highlighted.
//!
//! ```text
//! cargo run --example interval_export -- 10243 41230 > interval.dot
//! ```

use klcube::{canonical_l, BruhatInterval, Permutation};

fn main() -> klcube::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (x, y) = match &args[..] {
        [x, y] => (x.as_str(), y.as_str()),
        _ => ("10243", "41230"),
    };
    let iv = BruhatInterval::build(x.parse::<Permutation>()?, y.parse()?)?;
    let g = iv.graph();
    eprintln!(
        "[{x},{y}]: {} vertices, {} edges, level profile {:?}, regular: {}",
        iv.len(),
        g.edge_count(),
        iv.level_profile(),
        g.is_regular_undirected()
    );
    eprintln!("{}", serde_json::to_string(&iv.to_json()).unwrap());
    match canonical_l(&iv) {
        Ok(l) => {
            let edges: Vec<usize> = l.hypercube_edges().iter().flat_map(|(_, es)| es.iter().copied()).collect();
            println!("{}", iv.to_dot(Some(l.members()), &edges));
        }
        Err(e) => {
            eprintln!("no coset decomposition: {e}");
            println!("{}", iv.to_dot(None, &[]));
        }
    }
    Ok(())
}
