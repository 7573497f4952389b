//! Convolutions of word pairs and the regular combinators on them.
use onerel::fsa::Fsa;
use onerel::pairs::{
    convolve, diagonal, enumerate_pairs, letter_domain, odot_right, pair_const, render_pairs, swap_side, Side,
};
use onerel::words::Alphabet;

fn main() -> onerel::Result<()> {
    let alpha = Alphabet::new(&['a', 'b'])?;
    let (u, v) = (alpha.w("aab"), alpha.w("b"));
    println!("right: {}", render_pairs(&convolve(&u, &v, Side::Right)?, &alpha));
    println!("left:  {}", render_pairs(&convolve(&u, &v, Side::Left)?, &alpha));

    // Δ_{a*b} followed by the pair (ε, a): right multiplication by a
    let dom = letter_domain(&alpha);
    let l = Fsa::word(dom.clone(), &alpha.w("a")).star().concat(&Fsa::word(dom, &alpha.w("b")))?;
    let mult =
        odot_right(&diagonal(&l, &alpha), &pair_const(&alpha.w(""), &alpha.w("a"), Side::Right, &alpha), 0, &alpha)?;
    let left = swap_side(&mult, 1, Side::Right, &alpha)?;
    for p in enumerate_pairs(&left, Side::Left, 3, 4).into_iter().flatten() {
        println!("({}, {})", alpha.render(&p.0), alpha.render(&p.1));
    }
    Ok(())
}
