//! Evaluates every piece of the formula `dP = I + Q` on two intervals.

use klcube::decomp::enumerate;
use klcube::{check_formula, gamma_expansion, q_piece, q_tilde, BruhatInterval, KlTable, Permutation};

fn explain(x: &str, y: &str, contains: &[&str]) -> klcube::Result<()> {
    let iv = BruhatInterval::build(x.parse()?, y.parse()?)?;
    let klt = KlTable::new(iv.x().size())?;
    let wanted: Vec<usize> = contains
        .iter()
        .map(|s| iv.vertex_of(&s.parse::<Permutation>().unwrap()).unwrap())
        .collect();
    let d = enumerate(iv.graph())?
        .into_iter()
        .find(|d| wanted.iter().all(|&v| d.contains(v)))
        .expect("a decomposition");
    println!("[{x},{y}] with J = down({}), |J| = {}", iv.perm(d.crown()), d.len());
    println!("  P     = {}", klt.kl(&iv.x(), &iv.y())?);
    println!("  Q~    = {}", q_tilde(&iv, &d, &klt)?);
    println!("  Q     = {}", q_piece(&iv, &d, &klt)?);
    for (v, g) in gamma_expansion(&iv, &d, &klt)?.terms() {
        println!("  gamma_{v} = {g}");
    }
    let r = check_formula(&iv, &d, &klt)?;
    println!("  I     = {}", r.i);
    println!("  dP    = {}  (I + Q matches: {})", r.d_p, r.pass);
    Ok(())
}

fn main() -> klcube::Result<()> {
    explain("0213", "2301", &[])?;
    explain("10243", "41230", &["14230", "10432"])
}
