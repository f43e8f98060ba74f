//! Permutations, corner rank matrices and Bruhat comparisons.

use klcube::Permutation;

fn show(u: &Permutation) {
    println!("{u}: length {}, inverse {}", u.length(), u.inverse());
    for row in u.corner_rank_matrix().rows() {
        let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> klcube::Result<()> {
    let a: Permutation = "1230".parse()?;
    let b: Permutation = "2301".parse()?;
    show(&a);
    show(&b);
    println!("1230 <= 2301: {}", a.bruhat_leq(&b)?);
    println!("2301 <= 1230: {}", b.bruhat_leq(&a)?);

    let u: Permutation = "2031".parse()?;
    println!("pattern of {u} on positions 0,2: {}", u.pattern_restriction(&[0, 2])?);
    println!("upper transpositions of {u}: {:?}", u.upper_transpositions());
    println!("covers of {u} by one transposition:");
    for (i, j) in u.upper_transpositions() {
        let v = u.swap_values(u.get(i), u.get(j));
        println!("  ({i} {j}) -> {v}, length {}", v.length());
    }

    let n = 5;
    let w0 = Permutation::longest(n);
    let below = Permutation::all(n).filter(|v| v.bruhat_leq(&w0).unwrap()).count();
    println!("every one of the {below} permutations of S_{n} lies below {w0}");
    Ok(())
}
