//! Saves a computed table to disk and loads it back.

use klcube::{KlTable, Permutation};

fn main() -> klcube::Result<()> {
    let path = std::env::temp_dir().join("klcube-s5.kl");
    let klt = KlTable::new(5)?;
    klt.prefill()?;
    klt.save(&path)?;
    let loaded = KlTable::load(&path, 5)?;
    println!("saved {} columns to {}", klt.computed_columns(), path.display());
    println!("loaded table has {} columns", loaded.computed_columns());
    let (x, y): (Permutation, Permutation) = ("03214".parse()?, "34201".parse()?);
    assert_eq!(loaded.kl(&x, &y)?, klt.kl(&x, &y)?);
    println!("P_{{{x},{y}}} = {}", loaded.kl(&x, &y)?);
    std::fs::remove_file(&path)?;
    Ok(())
}
