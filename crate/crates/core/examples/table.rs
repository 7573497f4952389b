//! The verdict of every relator pattern over two letters.
use onerel::classifier::full_table;

fn main() -> onerel::Result<()> {
    let rows = full_table(2)?;
    for r in &rows {
        println!("{}", r.render());
    }
    println!("{} patterns, {} not automatic", rows.len(), rows.iter().filter(|r| !r.automatic).count());
    Ok(())
}
