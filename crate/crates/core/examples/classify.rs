//! Verdicts for a few one-relator presentations.
use onerel::classifier::{classify, RelatorPresentation};

fn main() -> onerel::Result<()> {
    for text in ["ab=ba", "aba=ba", "aab=ab", "xy=x", "abc=1", "b=aba"] {
        let p = RelatorPresentation::parse(text, None)?;
        println!("{:<8} {}", p.render(), classify(&p)?.render());
    }
    Ok(())
}
