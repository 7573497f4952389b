//! Normal forms, the language of irreducible words, and a check against a
//! direct congruence search.
use onerel::rewriting::{congruence_equal, shirshov_complete};
use onerel::words::Alphabet;

fn main() -> onerel::Result<()> {
    let alpha = Alphabet::new(&['a', 'c'])?;
    let rel = (alpha.w("aa"), alpha.w("c"));
    let rs = shirshov_complete(std::slice::from_ref(&rel), &alpha, 64, 16)?;
    let w = alpha.w("acaaca");
    let nf = rs.reduce(&w);
    println!("nf({}) = {}", alpha.render(&w), alpha.render(&nf));
    println!("congruence search agrees: {:?}", congruence_equal(&w, &nf, &[rel], 12));
    let words: Vec<String> = rs.irr_language().enumerate(3).into_iter().map(|w| alpha.render(&w.into())).collect();
    println!("normal forms up to length 3: {}", words.join(" "));
    Ok(())
}
