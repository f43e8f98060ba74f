//! Enumerates the hypercube decompositions of an interval, groups them up to
//! isomorphism and shows why the other candidates fail.
//!
//! ```text
//! cargo run --example decompositions -- 0213 2301
//! ```

use std::collections::BTreeMap;

use klcube::decomp::enumerate_with_failures;
use klcube::{BruhatInterval, Failure, GraphFixture, RankedDigraph, Validation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (x, y) = match &args[..] {
        [x, y] => (x.as_str(), y.as_str()),
        _ => ("0213", "2301"),
    };
    let iv = BruhatInterval::build(x.parse()?, y.parse()?)?;
    let g = iv.graph();
    let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for (z, v) in enumerate_with_failures(g)? {
        let z_perm = iv.perm(z);
        match v {
            Validation::Valid(d) => {
                *classes.entry(g.canonical_key_colored(&d.coloring(g))).or_default() += 1;
                println!("J = down({z_perm}): {} vertices", d.len());
            }
            Validation::Invalid(Failure::DiamondIncomplete { diamond }) => {
                println!("down({z_perm}) breaks diamond {:?}", [diamond.top, diamond.left, diamond.right, diamond.bottom].map(|v| iv.perm(v).to_string()));
            }
            Validation::Invalid(Failure::ClusterFailure { vertex, edges }) => {
                println!("down({z_perm}): {} edges into {} are not a cluster", edges.len(), iv.perm(vertex));
            }
        }
    }
    println!("{} decompositions in {} isomorphism classes", classes.values().sum::<usize>(), classes.len());

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/five_crown.json"))?;
    let crown = RankedDigraph::from_fixture(&serde_json::from_str::<GraphFixture>(&text)?)?;
    println!("the 5-crown has {} decompositions", klcube::enumerate(&crown)?.len());
    Ok(())
}
