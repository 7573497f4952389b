//! Classification of one-relator semigroups sgp⟨A | u = v⟩ with |u| ≤ 3 by
//! automaticity, up to renaming of letters, and dispatch to witnesses.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalog::{build_case, case_system, construct_generic_nonoverlap, find_case};
use crate::error::{Error, Result};
use crate::rewriting::{orient, shirshov_complete, RewriteSystem};
use crate::structures::{AutomaticStructure, Flavor};
use crate::words::{Alphabet, Letter, Word};

/// Names given to the letters of a pattern, by first occurrence.
pub const PATTERN_LETTERS: [char; 6] = ['x', 'y', 'z', 'w', 'v', 'u'];

/// Pattern string of a relation whose two sides are the same word.
pub const TRIVIAL_PATTERN: &str = "TRIVIAL_RELATION";

/// The three patterns whose semigroups are not automatic.
pub const NON_AUTOMATIC: [&str; 3] = ["xyx=yx", "xxy=yx", "xyy=yy"];

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Semigroup,
    Monoid,
}

/// A single relation u = v over an alphabet, with |v| ≤ |u|.
#[derive(Clone, Debug)]
pub struct RelatorPresentation {
    pub alphabet: Alphabet,
    pub u: Word,
    pub v: Word,
    pub mode: Mode,
}

impl RelatorPresentation {
    /// Orders the sides so the longer one (the deg-lex greater one at equal
    /// length) comes first.
    pub fn new(alphabet: Alphabet, u: Word, v: Word) -> Result<Self> {
        alphabet.check_word(&u)?;
        alphabet.check_word(&v)?;
        if u.is_empty() && v.is_empty() {
            return Err(Error::InvalidInput("both sides are ε".into()));
        }
        let (u, v) = if alphabet.deglex(&u, &v) == std::cmp::Ordering::Less { (v, u) } else { (u, v) };
        let mode = if v.is_empty() { Mode::Monoid } else { Mode::Semigroup };
        Ok(RelatorPresentation { alphabet, u, v, mode })
    }

    /// Parses `u=v` (`1` is ε). Letters come from `alphabet` when given,
    /// otherwise from their first occurrence.
    pub fn parse(text: &str, alphabet: Option<&Alphabet>) -> Result<Self> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("relation {text:?} needs '='") })?;
        let perr = |e: Error| Error::Parse { line: 1, msg: e.to_string() };
        let alpha = match alphabet {
            Some(a) => a.clone(),
            None => {
                let mut names = Vec::new();
                for c in text.chars().filter(|c| !matches!(c, '=' | '1') && !c.is_whitespace()) {
                    if !names.contains(&c) {
                        names.push(c);
                    }
                }
                Alphabet::new(&names).map_err(perr)?
            }
        };
        let u = alpha.parse_word(l).map_err(perr)?;
        let v = alpha.parse_word(r).map_err(perr)?;
        RelatorPresentation::new(alpha, u, v).map_err(perr)
    }

    pub fn render(&self) -> String {
        let side = |w: &Word| if w.is_empty() { "1".to_string() } else { self.alphabet.render(w) };
        format!("{}={}", side(&self.u), side(&self.v))
    }
}

/// Canonical pattern and the letter each pattern letter stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub pattern: String,
    pub assign: Vec<(char, Letter)>,
}

fn rename(l: &Word, r: &Word) -> Canonical {
    let mut assign: Vec<(char, Letter)> = Vec::new();
    let name = |x: Letter, assign: &mut Vec<(char, Letter)>| -> char {
        if let Some((c, _)) = assign.iter().find(|(_, y)| *y == x) {
            return *c;
        }
        let c = PATTERN_LETTERS.get(assign.len()).copied().unwrap_or('?');
        assign.push((c, x));
        c
    };
    let side = |w: &Word, assign: &mut Vec<(char, Letter)>| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&x| name(x, assign)).collect()
        }
    };
    let ls = side(l, &mut assign);
    let rs = side(r, &mut assign);
    Canonical { pattern: format!("{ls}={rs}"), assign }
}

/// Renames letters by first occurrence to x, y, z, …; of the orientations
/// with the longer side first, the lexicographically least rendering wins,
/// so the pattern is invariant under renaming.
pub fn canonicalize(p: &RelatorPresentation) -> Canonical {
    if p.u == p.v {
        return Canonical { pattern: TRIVIAL_PATTERN.to_string(), assign: Vec::new() };
    }
    let mut options = vec![rename(&p.u, &p.v)];
    if p.u.len() == p.v.len() {
        options.push(rename(&p.v, &p.u));
    }
    // on a tie x names the first declared letter
    let key = |c: &Canonical| (c.pattern.clone(), c.assign.iter().map(|(_, l)| *l).collect::<Vec<_>>());
    options.into_iter().min_by_key(key).unwrap()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub pattern: String,
    pub prefix_automatic: bool,
    pub automatic: bool,
    pub biautomatic: Tri,
    /// Named facts the verdict rests on.
    pub basis: Vec<String>,
    pub witness_case: Option<String>,
    /// Set when the verdict goes beyond the classification theorem's scope.
    pub extension: bool,
}

impl ClassificationResult {
    pub fn render(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        format!(
            "pattern={} prefix={} automatic={} biautomatic={} basis=[{}] witness={} extension={}",
            self.pattern,
            yn(self.prefix_automatic),
            yn(self.automatic),
            self.biautomatic,
            self.basis.join(","),
            self.witness_case.as_deref().unwrap_or("none"),
            self.extension
        )
    }

    /// Flavors a witness has to provide.
    pub fn declared_flavors(&self) -> Vec<Flavor> {
        if self.biautomatic == Tri::Yes {
            Flavor::ALL.to_vec()
        } else {
            vec![Flavor::Rr]
        }
    }
}

fn yes(pattern: &str, basis: &[&str], extension: bool) -> ClassificationResult {
    ClassificationResult {
        pattern: pattern.to_string(),
        prefix_automatic: true,
        automatic: true,
        biautomatic: Tri::Yes,
        basis: basis.iter().map(|s| s.to_string()).collect(),
        witness_case: None,
        extension,
    }
}

/// Verdict for a canonical pattern over an alphabet of `letters` letters.
pub fn classify_pattern(pattern: &str, letters: usize) -> Result<ClassificationResult> {
    if pattern == TRIVIAL_PATTERN {
        return Ok(yes(pattern, &["free-semigroup"], true));
    }
    let (u, v) =
        pattern.split_once('=').ok_or_else(|| Error::InvalidInput(format!("pattern {pattern:?} needs '='")))?;
    let v_len = if v == "1" { 0 } else { v.len() };
    if u.is_empty() {
        return Err(Error::InvalidInput("the longer side is empty".into()));
    }
    if u.len() > 3 {
        return Err(Error::OutOfScope(format!("relator {pattern} has |u| = {} > 3", u.len())));
    }
    let mut r = if letters <= 1 {
        yes(pattern, &["single-generator-extension"], true)
    } else if u.len() == 1 {
        yes(pattern, &["degenerate-relator-extension"], true)
    } else if NON_AUTOMATIC.contains(&pattern) {
        let pump = match pattern {
            "xyx=yx" => "aba=ba-pumping",
            "xxy=yx" => "aab=ba-pumping",
            _ => "abb=bb-pumping",
        };
        ClassificationResult {
            pattern: pattern.to_string(),
            prefix_automatic: false,
            automatic: false,
            biautomatic: Tri::No,
            basis: vec!["one-relator-classification".into(), pump.into()],
            witness_case: None,
            extension: false,
        }
    } else {
        let mut r = yes(pattern, &["one-relator-classification"], false);
        match (u.len(), v_len, pattern) {
            (3, 0, _) => r.basis.push("monoid-relator-biautomatic".into()),
            (3, 3, _) => r.basis.push("homogeneous-cubic-biautomatic".into()),
            (2, _, "xy=x" | "xy=y") => {
                r.biautomatic = Tri::No;
                r.basis.push("ab=a-ab=b-not-biautomatic".into());
            }
            (2, _, _) => r.basis.push("quadratic-biautomatic".into()),
            (3, _, "xxy=y") => {
                r.biautomatic = Tri::No;
                r.extension = true;
                r.basis.push("absorbing-power-not-biautomatic".into());
            }
            (3, _, "xyy=x") => {
                r.biautomatic = Tri::No;
                r.extension = true;
                r.basis.push("absorbing-power-not-biautomatic".into());
                r.basis.push("reversal-symmetry".into());
            }
            _ => r.biautomatic = Tri::Unknown,
        }
        r
    };
    if r.automatic {
        r.witness_case = find_case(pattern).map(|c| format!("{}:{}", c.family, c.pattern));
    }
    Ok(r)
}

pub fn classify(p: &RelatorPresentation) -> Result<ClassificationResult> {
    if p.u.len() > 3 {
        return Err(Error::OutOfScope(format!("relator {} has |u| = {} > 3", p.render(), p.u.len())));
    }
    let c = canonicalize(p);
    let mut r = classify_pattern(&c.pattern, p.alphabet.len())?;
    if r.automatic && r.witness_case.is_none() && generic_applicable(p) {
        r.witness_case = Some("W-GEN".into());
    }
    Ok(r)
}

fn generic_rule(p: &RelatorPresentation) -> Result<RewriteSystem> {
    let rule = orient(&p.u, &p.v, &p.alphabet)?;
    shirshov_complete(&[(rule.lhs, rule.rhs)], &p.alphabet, 64, 16)
}

fn generic_applicable(p: &RelatorPresentation) -> bool {
    p.mode == Mode::Semigroup
        && generic_rule(p).is_ok_and(|rs| crate::catalog::nonoverlap_tails(&rs, crate::pairs::Side::Right).is_ok())
}

/// A witness declaring the flavors the verdict promises.
pub fn build_witness(p: &RelatorPresentation, r: &ClassificationResult) -> Result<AutomaticStructure> {
    if !r.automatic {
        return Err(Error::NoWitness(format!("pattern {} is not automatic", r.pattern)));
    }
    let flavors = r.declared_flavors();
    if r.pattern == TRIVIAL_PATTERN {
        return construct_generic_nonoverlap(&RewriteSystem::free(p.alphabet.clone()));
    }
    let c = canonicalize(p);
    if let Some(case) = find_case(&c.pattern) {
        return build_case(case, &p.alphabet, &c.assign, &flavors);
    }
    let mut s = construct_generic_nonoverlap(&generic_rule(p)?)?;
    if !flavors.iter().all(|f| s.flavors().contains(f)) {
        return Err(Error::NotApplicable(format!("no construction yields every declared flavor for {}", r.pattern)));
    }
    s.restrict_flavors(&flavors);
    Ok(s)
}

/// Completed rewriting system for a presentation. The letter order is the
/// declared one when `declared_order` is set; otherwise a catalogued
/// pattern uses the order of its construction.
pub fn rewriting_system(
    p: &RelatorPresentation,
    declared_order: bool,
    max_rules: usize,
    max_len: usize,
) -> Result<RewriteSystem> {
    let c = canonicalize(p);
    if c.pattern == TRIVIAL_PATTERN {
        return Ok(RewriteSystem::free(p.alphabet.clone()));
    }
    if !declared_order {
        if let Some(case) = find_case(&c.pattern) {
            return case_system(case, &p.alphabet, &c.assign);
        }
    }
    shirshov_complete(&[(p.u.clone(), p.v.clone())], &p.alphabet, max_rules, max_len)
}

/// Every canonical pattern with 1 ≤ |u| ≤ 3 and |v| ≤ |u| over at most
/// `letters` letters, sorted by side lengths and then text.
pub fn all_patterns(letters: usize) -> Vec<Canonical> {
    let alpha = Alphabet::new(&PATTERN_LETTERS[..letters.min(PATTERN_LETTERS.len())]).expect("pattern letters");
    let gens = alpha.generators();
    let words = |n: usize| Alphabet::words_of_length(&gens, n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lu in 1..=3 {
        for lv in 0..=lu {
            for u in words(lu) {
                for v in words(lv) {
                    let Ok(p) = RelatorPresentation::new(alpha.clone(), u.clone(), v) else { continue };
                    let c = canonicalize(&p);
                    if c.pattern != TRIVIAL_PATTERN && seen.insert(c.pattern.clone()) {
                        out.push(c);
                    }
                }
            }
        }
    }
    let key = |c: &Canonical| {
        let (u, v) = c.pattern.split_once('=').unwrap();
        (u.len(), if v == "1" { 0 } else { v.len() }, c.pattern.clone())
    };
    out.sort_by_key(key);
    out
}

/// Verdicts for every pattern of [`all_patterns`] over an alphabet of
/// `letters` letters.
pub fn full_table(letters: usize) -> Result<Vec<ClassificationResult>> {
    if letters == 0 || letters > 2 {
        return Err(Error::OutOfScope("the table covers one or two letters".into()));
    }
    all_patterns(letters).iter().map(|c| classify_pattern(&c.pattern, letters)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> RelatorPresentation {
        RelatorPresentation::parse(text, None).unwrap()
    }

    #[test]
    fn canonical_patterns() {
        assert_eq!(canonicalize(&p("bab=ab")).pattern, "xyx=yx");
        assert_eq!(canonicalize(&p("ba=bb")).pattern, "xx=xy");
        assert_eq!(canonicalize(&p("ab=ab")).pattern, TRIVIAL_PATTERN);
        assert_eq!(canonicalize(&p("b=aba")).pattern, "xyx=y");
    }

    #[test]
    fn parse_orders_sides() {
        let r = p("b=aba");
        assert_eq!(r.render(), "aba=b");
        assert_eq!(p("abc=1").mode, Mode::Monoid);
        assert!(matches!(RelatorPresentation::parse("ab", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn verdicts() {
        let c = |t: &str| classify(&p(t)).unwrap();
        let r = c("aba=ba");
        assert!(!r.automatic && !r.prefix_automatic && r.biautomatic == Tri::No);
        let r = c("ab=b");
        assert!(r.prefix_automatic && r.biautomatic == Tri::No);
        assert_eq!(c("abc=1").biautomatic, Tri::Yes);
        let r = c("aab=b");
        assert!(r.biautomatic == Tri::No && r.extension);
        assert_eq!(c("abc=xy").biautomatic, Tri::Unknown);
        assert_eq!(c("aa=cc").biautomatic, Tri::Yes);
        assert!(matches!(classify(&p("abca=b")), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn table_has_fifty_six_rows() {
        let t = full_table(2).unwrap();
        assert_eq!(t.len(), 56);
        let bad: Vec<&str> = t.iter().filter(|r| !r.automatic).map(|r| r.pattern.as_str()).collect();
        assert_eq!(bad, vec!["xxy=yx", "xyx=yx", "xyy=yy"]);
    }

    #[test]
    fn no_witness_for_bad_pattern() {
        let pr = p("aba=ba");
        let r = classify(&pr).unwrap();
        assert!(matches!(build_witness(&pr, &r), Err(Error::NoWitness(_))));
    }

    #[test]
    fn every_automatic_row_has_a_catalog_case() {
        for r in full_table(2).unwrap() {
            assert_eq!(r.automatic, r.witness_case.is_some(), "{}", r.pattern);
        }
    }
}
