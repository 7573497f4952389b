//! Lower bounds on multiplier automaton sizes: they keep growing for a
//! non-automatic relation and stay flat for a regular one.
use onerel::rewriting::shirshov_complete;
use onerel::structures::{multiplier_oracle, nerode_lower_bound, Flavor, Model};
use onerel::words::Alphabet;

fn main() -> onerel::Result<()> {
    let alpha = Alphabet::new(&['a', 'b'])?;
    for (u, v) in [("aba", "ba"), ("ab", "ba")] {
        let rs = shirshov_complete(&[(alpha.w(u), alpha.w(v))], &alpha, 64, 16)?;
        let sample =
            multiplier_oracle(&rs.irr_language(), &Model::plain(rs.clone()), alpha.letter('a'), Flavor::Rr, 10)?;
        let bounds: Vec<String> = nerode_lower_bound(&sample, 5).iter().map(|(d, b)| format!("{d}:{b}")).collect();
        println!("{u}={v} multiply by a: {}", bounds.join(" "));
    }
    Ok(())
}
