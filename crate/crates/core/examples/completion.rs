//! Completion of single relations, including infinite bases found as
//! pumped rule families.
use onerel::rewriting::shirshov_complete;
use onerel::words::Alphabet;

fn main() -> onerel::Result<()> {
    // letters are listed smallest first
    for (rel, order) in [("aa=cc", "c,a"), ("aba=bb", "b,a"), ("aba=ba", "a,b"), ("aaa=xa", "x,a")] {
        let alpha = Alphabet::parse_list(order)?;
        let (u, v) = rel.split_once('=').unwrap();
        let rs = shirshov_complete(&[(alpha.parse_word(u)?, alpha.parse_word(v)?)], &alpha, 64, 16)?;
        println!("{rel} under {order}: [{}] {}", rs.render().join(", "), rs.status());
    }
    Ok(())
}
