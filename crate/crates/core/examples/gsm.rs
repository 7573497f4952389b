//! A generalized sequential machine that writes e after every b, and its
//! image of a regular language.
use onerel::fsa::Fsa;
use onerel::gsm::{gsm_image, Gsm};
use onerel::pairs::letter_domain;
use onerel::words::{Alphabet, Word};

fn main() -> onerel::Result<()> {
    let input = Alphabet::new(&['a', 'b'])?;
    let output = input.with_identity()?;
    let (a, b, e) = (input.letter('a').unwrap(), input.letter('b').unwrap(), output.identity().unwrap());
    let mut g = Gsm::new(1, letter_domain(&input), letter_domain(&output), 0)?;
    g.set_terminal(0, true);
    g.add_transition(0, a, 0, Word(vec![a]))?;
    g.add_transition(0, b, 0, Word(vec![b, e]))?;
    let l = Fsa::universe_plus(letter_domain(&input));
    let image = gsm_image(&g, &l)?;
    for w in image.enumerate(4) {
        println!("{}", output.render(&w.into()));
    }
    Ok(())
}
