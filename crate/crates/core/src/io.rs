//! Text and DOT renderings of automata and machines, and the on-disk
//! layout of a structure: `acceptor.fsa`, `mult_<letter>_<flavor>.fsa`,
//! `prefix_eq.fsa`, `meta` and, for padded normal forms, `repr.gsm`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fsa::{Fsa, Symbol};
use crate::gsm::Gsm;
use crate::pairs::{PairFsa, PairSymbol};
use crate::rewriting::{parse_rule_line, Completeness, RewriteSystem, RuleLine, WordOrder};
use crate::structures::{AutomaticStructure, Flavor, Model, Provenance};
use crate::words::{Alphabet, Letter, Word};

/// Output format for automata.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Dot,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format> {
        match text {
            "text" => Ok(Format::Text),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::InvalidInput(format!("unknown format {text:?}"))),
        }
    }
}

const EPSILON_TOKEN: &str = "~";

/// Line format: `domain …`, `states n`, `initial …`, `accepting …`, then
/// one `src symbol dst` line per transition (`~` is an ε-move).
pub fn fsa_to_text<S: Symbol>(m: &Fsa<S>, name: impl Fn(&S) -> String) -> String {
    let mut out = String::new();
    let join = |v: Vec<String>| v.join(" ");
    let _ = writeln!(out, "domain {}", join(m.domain().iter().map(&name).collect()));
    let _ = writeln!(out, "states {}", m.num_states());
    let _ = writeln!(out, "initial {}", join(m.initial_states().iter().map(|q| q.to_string()).collect()));
    let acc: Vec<String> = (0..m.num_states()).filter(|&q| m.is_accepting(q)).map(|q| q.to_string()).collect();
    let _ = writeln!(out, "accepting {}", join(acc));
    for q in 0..m.num_states() {
        for (sym, d) in m.transitions(q) {
            let s = sym.as_ref().map(&name).unwrap_or_else(|| EPSILON_TOKEN.to_string());
            let _ = writeln!(out, "{q} {s} {d}");
        }
    }
    out
}

fn numbers(rest: &str, line: usize) -> Result<Vec<usize>> {
    rest.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("bad state {t:?}") }))
        .collect()
}

/// Inverse of [`fsa_to_text`].
pub fn fsa_from_text<S: Symbol>(text: &str, parse: impl Fn(&str) -> Result<S>) -> Result<Fsa<S>> {
    let mut m: Option<Fsa<S>> = None;
    let mut domain = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let n = n + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let perr = |e: Error| Error::Parse { line: n, msg: e.to_string() };
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "domain" => {
                domain = rest.split_whitespace().map(&parse).collect::<Result<Vec<_>>>().map_err(perr)?;
            }
            "states" => {
                let k = numbers(rest, n)?.first().copied().unwrap_or(0);
                let mut f = Fsa::new(domain.clone());
                for _ in 0..k {
                    f.add_state(false);
                }
                m = Some(f);
            }
            "initial" | "accepting" => {
                let f = m.as_mut().ok_or(Error::Parse { line: n, msg: "states line missing".into() })?;
                for q in numbers(rest, n)? {
                    if q >= f.num_states() {
                        return Err(Error::Parse { line: n, msg: format!("state {q} out of range") });
                    }
                    if head == "initial" {
                        f.set_initial(q);
                    } else {
                        f.set_accepting(q, true);
                    }
                }
            }
            _ => {
                let f = m.as_mut().ok_or(Error::Parse { line: n, msg: "states line missing".into() })?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [src, sym, dst] = parts[..] else {
                    return Err(Error::Parse { line: n, msg: format!("bad transition {line:?}") });
                };
                let src = numbers(src, n)?[0];
                let dst = numbers(dst, n)?[0];
                if src >= f.num_states() || dst >= f.num_states() {
                    return Err(Error::Parse { line: n, msg: "transition state out of range".into() });
                }
                let sym = if sym == EPSILON_TOKEN { None } else { Some(parse(sym).map_err(perr)?) };
                f.add_transition(src, sym, dst);
            }
        }
    }
    m.ok_or(Error::Parse { line: 0, msg: "empty automaton file".into() })
}

/// Graphviz rendering; accepting states are double circles.
pub fn fsa_to_dot<S: Symbol>(m: &Fsa<S>, title: &str, name: impl Fn(&S) -> String) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{title}\" {{\n  rankdir=LR;");
    for q in 0..m.num_states() {
        let shape = if m.is_accepting(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    for (i, q) in m.initial_states().iter().enumerate() {
        let _ = writeln!(out, "  start{i} [shape=point];\n  start{i} -> {q};");
    }
    for q in 0..m.num_states() {
        let mut labels: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (sym, d) in m.transitions(q) {
            labels.entry(*d).or_default().push(sym.as_ref().map(&name).unwrap_or_else(|| "ε".into()));
        }
        for (d, l) in labels {
            let _ = writeln!(out, "  {q} -> {d} [label=\"{}\"];", l.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

pub fn letter_name(alpha: &Alphabet) -> impl Fn(&Letter) -> String + '_ {
    move |l| alpha.name(*l).to_string()
}

pub fn pair_name(alpha: &Alphabet) -> impl Fn(&PairSymbol) -> String + '_ {
    move |p| p.render(alpha)
}

fn letter_of(alpha: &Alphabet, t: &str) -> Result<Letter> {
    let mut cs = t.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => alpha.letter(c).ok_or_else(|| Error::InvalidInput(format!("unknown letter {c:?}"))),
        _ => Err(Error::InvalidInput(format!("bad letter token {t:?}"))),
    }
}

fn parse_pair(alpha: &Alphabet, t: &str) -> Result<PairSymbol> {
    let (l, r) = t.split_once('|').ok_or_else(|| Error::InvalidInput(format!("bad pair symbol {t:?}")))?;
    let side = |x: &str| if x == "$" { Ok(None) } else { letter_of(alpha, x).map(Some) };
    PairSymbol::new(side(l)?, side(r)?)
}

pub fn letter_fsa_from_text(text: &str, alpha: &Alphabet) -> Result<Fsa<Letter>> {
    fsa_from_text(text, |t| letter_of(alpha, t))
}

pub fn pair_fsa_from_text(text: &str, alpha: &Alphabet) -> Result<PairFsa> {
    fsa_from_text(text, |t| parse_pair(alpha, t))
}

/// Line format: `states n`, `initial q`, `terminal …`, `input …`,
/// `output …`, then `src letter dst output` lines (`1` is the empty output).
pub fn gsm_to_text(g: &Gsm, alpha: &Alphabet) -> String {
    let mut out = String::new();
    let names = |v: &[Letter]| v.iter().map(|&l| alpha.name(l).to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "states {}", g.num_states());
    let _ = writeln!(out, "initial {}", g.initial());
    let term: Vec<String> = (0..g.num_states()).filter(|&q| g.is_terminal(q)).map(|q| q.to_string()).collect();
    let _ = writeln!(out, "terminal {}", term.join(" "));
    let _ = writeln!(out, "input {}", names(g.input()));
    let _ = writeln!(out, "output {}", names(g.output()));
    for (q, a, d, w) in g.transitions() {
        let _ = writeln!(out, "{q} {} {d} {}", alpha.name(a), alpha.render(w));
    }
    out
}

pub fn gsm_from_text(text: &str, alpha: &Alphabet) -> Result<Gsm> {
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    let mut moves = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        if ["states", "initial", "terminal", "input", "output"].contains(&head) {
            fields.insert(head, rest);
        } else {
            moves.push((n + 1, line));
        }
    }
    let get = |k: &str| fields.get(k).copied().ok_or(Error::Parse { line: 0, msg: format!("gsm file lacks {k}") });
    let letters = |s: &str| s.split_whitespace().map(|t| letter_of(alpha, t)).collect::<Result<Vec<_>>>();
    let states = numbers(get("states")?, 0)?.first().copied().unwrap_or(0);
    let initial = numbers(get("initial")?, 0)?.first().copied().unwrap_or(0);
    let mut g = Gsm::new(states, letters(get("input")?)?, letters(get("output")?)?, initial)?;
    for q in numbers(get("terminal")?, 0)? {
        if q >= states {
            return Err(Error::Parse { line: 0, msg: format!("terminal state {q} out of range") });
        }
        g.set_terminal(q, true);
    }
    for (n, line) in moves {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [src, a, dst, w] = parts[..] else {
            return Err(Error::Parse { line: n, msg: format!("bad gsm move {line:?}") });
        };
        let perr = |e: Error| Error::Parse { line: n, msg: e.to_string() };
        g.add_transition(
            numbers(src, n)?[0],
            letter_of(alpha, a).map_err(perr)?,
            numbers(dst, n)?[0],
            alpha.parse_word(w).map_err(perr)?,
        )
        .map_err(perr)?;
    }
    Ok(g)
}

fn letter_file_tag(alpha: &Alphabet, c: Option<Letter>) -> String {
    c.map(|l| alpha.name(l).to_string()).unwrap_or_else(|| "1".into())
}

fn generators_of(alpha: &Alphabet) -> (String, String) {
    let e = alpha.identity();
    let idx: String = alpha.letters().filter(|l| Some(*l) != e).map(|l| alpha.name(l)).collect();
    let ord: String = alpha.ordered().into_iter().filter(|l| Some(*l) != e).map(|l| alpha.name(l)).collect();
    (idx, ord)
}

fn meta_text(s: &AutomaticStructure) -> String {
    let (gens, order) = generators_of(&s.alphabet);
    let rs = &s.model.rewriting;
    let mut out = String::new();
    let _ = writeln!(out, "case_id={}", s.provenance.case_id);
    let _ = writeln!(out, "construction={}", s.provenance.construction);
    let _ = writeln!(out, "generators={gens}");
    let _ = writeln!(out, "order={order}");
    let _ = writeln!(
        out,
        "identity={}",
        s.alphabet.identity().map(|e| s.alphabet.name(e).to_string()).unwrap_or("none".into())
    );
    let _ = writeln!(out, "rewriting_identity={}", rs.alphabet().identity().is_some());
    let _ = writeln!(out, "word_order={}", if rs.order() == WordOrder::DegLex { "deglex" } else { "reverse-deglex" });
    let _ = writeln!(out, "status={}", rs.status());
    let _ = writeln!(out, "reversed={}", s.model.reversed);
    let _ = writeln!(out, "uniqueness={}", s.uniqueness);
    let flavors: Vec<String> = s.flavors().iter().map(|f| f.to_string()).collect();
    let _ = writeln!(out, "flavors={}", flavors.join(","));
    for line in rs.render() {
        let _ = writeln!(out, "rule={line}");
    }
    out
}

/// Writes the structure directory; with [`Format::Dot`] a `.dot` file is
/// written next to every automaton as well.
pub fn save_structure(s: &AutomaticStructure, dir: &Path, format: Format) -> Result<()> {
    fs::create_dir_all(dir)?;
    let a = &s.alphabet;
    let mut files: Vec<(String, String, String)> = Vec::new();
    files.push((
        "acceptor".into(),
        fsa_to_text(&s.language, letter_name(a)),
        fsa_to_dot(&s.language, "acceptor", letter_name(a)),
    ));
    for (&(c, f), m) in &s.multipliers {
        let name = format!("mult_{}_{f}", letter_file_tag(a, c));
        files.push((name.clone(), fsa_to_text(m, pair_name(a)), fsa_to_dot(m, &name, pair_name(a))));
    }
    if let Some(p) = &s.prefix_equality {
        files.push(("prefix_eq".into(), fsa_to_text(p, pair_name(a)), fsa_to_dot(p, "prefix_eq", pair_name(a))));
    }
    for (name, text, dot) in files {
        fs::write(dir.join(format!("{name}.fsa")), text)?;
        if format == Format::Dot {
            fs::write(dir.join(format!("{name}.dot")), dot)?;
        }
    }
    fs::write(dir.join("meta"), meta_text(s))?;
    if let Some(g) = &s.model.gsm {
        fs::write(dir.join("repr.gsm"), gsm_to_text(g, a))?;
    }
    Ok(())
}

/// Reads a directory written by [`save_structure`].
pub fn load_structure(dir: &Path) -> Result<AutomaticStructure> {
    let meta = fs::read_to_string(dir.join("meta"))?;
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    let mut rules = Vec::new();
    for (n, line) in meta.lines().enumerate() {
        let Some((k, v)) = line.split_once('=') else {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse { line: n + 1, msg: format!("bad meta line {line:?}") });
        };
        if k == "rule" {
            rules.push((n + 1, v.to_string()));
        } else {
            kv.insert(k.to_string(), v.to_string());
        }
    }
    let get = |k: &str| kv.get(k).cloned().ok_or(Error::Parse { line: 0, msg: format!("meta lacks {k}") });
    let gens: Vec<char> = get("generators")?.chars().collect();
    let base = Alphabet::new(&gens)?;
    let order: Vec<Letter> = get("order")?
        .chars()
        .map(|c| base.letter(c).ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown letter {c:?}") }))
        .collect::<Result<_>>()?;
    let base = base.with_order(&order)?;
    let alphabet = if get("identity")? == "none" { base.clone() } else { base.with_identity()? };
    let rs_alpha = if get("rewriting_identity")? == "true" { alphabet.clone() } else { base.clone() };
    let mut plain = Vec::new();
    let mut schemas = Vec::new();
    for (n, text) in rules {
        match parse_rule_line(&text, &rs_alpha).map_err(|e| Error::Parse { line: n, msg: e.to_string() })? {
            RuleLine::Rule(r) => plain.push(r),
            RuleLine::Schema(s) => schemas.push(s),
        }
    }
    let word_order = if get("word_order")? == "deglex" { WordOrder::DegLex } else { WordOrder::ReverseDegLex };
    let status = match get("status")?.as_str() {
        "complete" => Completeness::Complete,
        "bounded_incomplete" => Completeness::BoundedIncomplete,
        _ => Completeness::Unknown,
    };
    let rewriting = RewriteSystem::with_order(rs_alpha, word_order, plain, schemas, status)?;
    let gsm_path = dir.join("repr.gsm");
    let gsm = if gsm_path.exists() { Some(gsm_from_text(&fs::read_to_string(gsm_path)?, &alphabet)?) } else { None };
    let adjoined = match (alphabet.identity(), rewriting.alphabet().identity()) {
        (Some(e), None) => Some(e),
        _ => None,
    };
    let model = Model { rewriting, adjoined, gsm, reversed: get("reversed")? == "true" };
    let language = letter_fsa_from_text(&fs::read_to_string(dir.join("acceptor.fsa"))?, &alphabet)?;
    let mut multipliers = BTreeMap::new();
    let flavors_text = get("flavors")?;
    let flavors: Vec<Flavor> =
        flavors_text.split(',').filter(|t| !t.is_empty()).map(Flavor::parse).collect::<Result<_>>()?;
    let mut tags: Vec<Option<Letter>> = vec![None];
    tags.extend(alphabet.letters().map(Some));
    for f in flavors {
        for &c in &tags {
            let path = dir.join(format!("mult_{}_{f}.fsa", letter_file_tag(&alphabet, c)));
            if path.exists() {
                multipliers.insert((c, f), pair_fsa_from_text(&fs::read_to_string(path)?, &alphabet)?);
            }
        }
    }
    let prefix_path = dir.join("prefix_eq.fsa");
    let prefix_equality = if prefix_path.exists() {
        Some(pair_fsa_from_text(&fs::read_to_string(prefix_path)?, &alphabet)?)
    } else {
        None
    };
    Ok(AutomaticStructure {
        alphabet,
        language,
        multipliers,
        prefix_equality,
        uniqueness: get("uniqueness")? == "true",
        provenance: Provenance { case_id: get("case_id")?, construction: get("construction")? },
        model,
    })
}

/// Normal forms rendered one per line, `1` for the identity.
pub fn render_words(words: &[Word], alpha: &Alphabet) -> String {
    words.iter().map(|w| alpha.render(w) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_case, find_case};
    use crate::structures::verify_structure;

    fn ab() -> (Alphabet, Vec<(char, Letter)>) {
        let a = Alphabet::new(&['a', 'b']).unwrap();
        let assign = vec![('x', a.letter('a').unwrap()), ('y', a.letter('b').unwrap())];
        (a, assign)
    }

    #[test]
    fn fsa_text_round_trip() {
        let (a, _) = ab();
        let m = Fsa::from_words(crate::pairs::letter_domain(&a), &[a.w("ab").0, a.w("b").0]);
        let back = letter_fsa_from_text(&fsa_to_text(&m, letter_name(&a)), &a).unwrap();
        assert!(back.is_equivalent(&m));
    }

    #[test]
    fn bad_transition_is_a_parse_error() {
        let (a, _) = ab();
        let text = "domain a b\nstates 1\ninitial 0\naccepting 0\n0 a\n";
        assert!(matches!(letter_fsa_from_text(text, &a), Err(Error::Parse { line: 5, .. })));
    }

    fn round_trip(pattern: &str, flavors: &[Flavor]) {
        let (a, assign) = ab();
        let s = build_case(find_case(pattern).unwrap(), &a, &assign, flavors).unwrap();
        let dir = std::env::temp_dir().join(format!("onerel-io-{}-{}", std::process::id(), pattern.replace('=', "_")));
        save_structure(&s, &dir, Format::Dot).unwrap();
        let t = load_structure(&dir).unwrap();
        let _ = fs::remove_dir_all(&dir);
        assert_eq!(t.flavors(), s.flavors());
        let r1 = verify_structure(&s, 6).unwrap().render(&s.alphabet);
        let r2 = verify_structure(&t, 6).unwrap().render(&t.alphabet);
        assert_eq!(r1, r2);
    }

    #[test]
    fn structure_round_trip() {
        round_trip("xx=yy", &Flavor::ALL);
        round_trip("xyx=xy", &[Flavor::Rr]);
        round_trip("xyy=yx", &[Flavor::Rr]);
        round_trip("xyx=1", &Flavor::ALL);
    }
}
