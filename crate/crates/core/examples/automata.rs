//! Finite automata: the words avoiding a factor, minimized.
use onerel::fsa::Fsa;
use onerel::pairs::letter_domain;
use onerel::words::Alphabet;

fn main() -> onerel::Result<()> {
    let alpha = Alphabet::new(&['a', 'b'])?;
    let dom = letter_domain(&alpha);
    let all = Fsa::universe(dom.clone());
    let factor = all.concat(&Fsa::word(dom.clone(), &alpha.w("aba")))?.concat(&all)?;
    let avoid = Fsa::universe_plus(dom).difference(&factor)?;
    let min = avoid.minimize();
    println!("states after minimizing: {}", min.num_states());
    println!("accepts abba: {}, accepts abab: {}", min.contains(&alpha.w("abba")), min.contains(&alpha.w("abab")));
    println!("words of length 4: {}", min.enumerate(4).iter().filter(|w| w.len() == 4).count());
    Ok(())
}
