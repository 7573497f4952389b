//! Build the witness structure of a relation, verify it against rewriting
//! and write it to a directory.
use onerel::classifier::{build_witness, classify, RelatorPresentation};
use onerel::io::{load_structure, save_structure, Format};
use onerel::structures::verify_structure;

fn main() -> onerel::Result<()> {
    let p = RelatorPresentation::parse("aab=ba", None)?;
    let verdict = classify(&p)?;
    println!("{}", verdict.render());
    let p = RelatorPresentation::parse("aba=ab", None)?;
    let s = build_witness(&p, &classify(&p)?)?;
    let report = verify_structure(&s, 6)?;
    print!("{}", report.render(&s.alphabet));
    let dir = std::env::temp_dir().join("onerel-example-structure");
    save_structure(&s, &dir, Format::Text)?;
    let back = load_structure(&dir)?;
    println!("reloaded from {}: same report {}", dir.display(), verify_structure(&back, 6)? == report);
    Ok(())
}
