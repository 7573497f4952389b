//! Alphabets, words and the positional word operators.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Name reserved for an adjoined identity letter.
pub const IDENTITY_NAME: char = 'e';

/// A letter, interned as its index in the owning [`Alphabet`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u8);

/// An ordered finite alphabet of single-character letter names.
///
/// Letters keep their declaration index for the lifetime of the alphabet;
/// the deg-lex tie-break order is a separate rank table so the same words can
/// be compared under several orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    names: Vec<char>,
    rank: Vec<u8>,
    identity: Option<Letter>,
}

impl Alphabet {
    /// Alphabet with letters ordered as declared. `e` is reserved.
    pub fn new(names: &[char]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &c in names {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidInput(format!("letter {c:?} is not a lowercase ascii character")));
            }
            if c == IDENTITY_NAME {
                return Err(Error::InvalidInput("the letter name 'e' is reserved for the identity".into()));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidInput(format!("letter {c:?} declared twice")));
            }
        }
        if names.len() > 64 {
            return Err(Error::InvalidInput("too many letters".into()));
        }
        Ok(Alphabet { names: names.to_vec(), rank: (0..names.len() as u8).collect(), identity: None })
    }

    /// Parses a comma separated list such as `a,b,c`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let mut chars = part.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => names.push(c),
                _ => return Err(Error::InvalidInput(format!("bad letter {part:?} in alphabet list"))),
            }
        }
        Alphabet::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All letters in declaration (index) order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u8).map(Letter)
    }

    /// All letters sorted by the deg-lex tie-break order.
    pub fn ordered(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.letters().collect();
        v.sort_by_key(|l| self.rank[l.0 as usize]);
        v
    }

    /// Letters other than the identity marker, in deg-lex order.
    pub fn generators(&self) -> Vec<Letter> {
        self.ordered().into_iter().filter(|l| Some(*l) != self.identity).collect()
    }

    pub fn name(&self, l: Letter) -> char {
        self.names[l.0 as usize]
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.names.iter().position(|&n| n == c).map(|i| Letter(i as u8))
    }

    pub fn contains(&self, l: Letter) -> bool {
        (l.0 as usize) < self.names.len()
    }

    pub fn rank(&self, l: Letter) -> u8 {
        self.rank[l.0 as usize]
    }

    pub fn identity(&self) -> Option<Letter> {
        self.identity
    }

    /// Copy of the alphabet with the identity `e` adjoined as the smallest letter.
    pub fn with_identity(&self) -> Result<Self> {
        if self.identity.is_some() {
            return Err(Error::InvalidInput("alphabet already carries an identity".into()));
        }
        let mut names = self.names.clone();
        names.push(IDENTITY_NAME);
        let mut rank: Vec<u8> = self.rank.iter().map(|r| r + 1).collect();
        rank.push(0);
        Ok(Alphabet { names, rank, identity: Some(Letter(self.names.len() as u8)) })
    }

    /// Copy of the alphabet whose deg-lex order is `order` (smallest first).
    pub fn with_order(&self, order: &[Letter]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.len() || order.len() != self.len() || sorted.iter().any(|l| !self.contains(*l)) {
            return Err(Error::InvalidInput("order must list every letter exactly once".into()));
        }
        let mut rank = vec![0u8; self.len()];
        for (r, l) in order.iter().enumerate() {
            rank[l.0 as usize] = r as u8;
        }
        Ok(Alphabet { names: self.names.clone(), rank, identity: self.identity })
    }

    /// Word literal: juxtaposed letters, `1` or the empty string for ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        text.chars()
            .map(|c| self.letter(c).ok_or_else(|| Error::InvalidInput(format!("letter {c:?} not in alphabet"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Like [`Alphabet::parse_word`] but panics on bad input; for literals in code.
    pub fn w(&self, text: &str) -> Word {
        self.parse_word(text).unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&l| self.name(l)).collect()
        }
    }

    pub fn compare_letters(&self, x: Letter, y: Letter) -> Ordering {
        self.rank(x).cmp(&self.rank(y))
    }

    /// Deg-lex comparison; letters are assumed to belong to the alphabet.
    pub fn deglex(&self, x: &[Letter], y: &[Letter]) -> Ordering {
        x.len().cmp(&y.len()).then_with(|| {
            for (a, b) in x.iter().zip(y) {
                match self.compare_letters(*a, *b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(Error::InvalidInput(format!("letter index {} not in alphabet", l.0))),
            None => Ok(()),
        }
    }

    /// All words of length exactly `n` over the given letters, lexicographic in their order.
    pub fn words_of_length(letters: &[Letter], n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * letters.len());
            for w in &out {
                for &l in letters {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// All nonempty words of length at most `n` over the generators, deg-lex ordered.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        let gens = self.generators();
        (1..=n).flat_map(|k| Alphabet::words_of_length(&gens, k)).collect()
    }
}

/// A finite word; ε is the empty word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `n` times.
    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// α(t): the first min(t, |α|) letters.
    pub fn prefix_t(&self, t: usize) -> Word {
        Word(self.0[..t.min(self.len())].to_vec())
    }

    /// α[t]: the last min(t, |α|) letters.
    pub fn suffix_t(&self, t: usize) -> Word {
        let n = self.len();
        Word(self.0[n - t.min(n)..].to_vec())
    }

    pub fn occ(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&l| l == a).count()
    }

    pub fn con(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn starts_with(&self, p: &[Letter]) -> bool {
        self.0.starts_with(p)
    }

    pub fn ends_with(&self, s: &[Letter]) -> bool {
        self.0.ends_with(s)
    }

    /// Position of the first occurrence of `f` as a factor.
    pub fn find(&self, f: &[Letter]) -> Option<usize> {
        if f.is_empty() {
            return Some(0);
        }
        self.0.windows(f.len()).position(|w| w == f)
    }

    pub fn contains_factor(&self, f: &[Letter]) -> bool {
        self.find(f).is_some()
    }

    /// Removes every occurrence of `l`.
    pub fn without(&self, l: Letter) -> Word {
        Word(self.0.iter().copied().filter(|&x| x != l).collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Displays a word with letter indices; use [`Alphabet::render`] for names.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", (b'a' + l.0) as char)?;
        }
        Ok(())
    }
}

/// Deg-lex comparison that validates both words against `ord`.
pub fn deglex_compare(x: &Word, y: &Word, ord: &Alphabet) -> Result<Ordering> {
    ord.check_word(x)?;
    ord.check_word(y)?;
    Ok(ord.deglex(x, y))
}

pub fn prefix_t(alpha: &Word, t: usize) -> Word {
    alpha.prefix_t(t)
}

pub fn suffix_t(alpha: &Word, t: usize) -> Word {
    alpha.suffix_t(t)
}

pub fn occ(a: Letter, alpha: &Word) -> usize {
    alpha.occ(a)
}

pub fn con(alpha: &Word) -> BTreeSet<Letter> {
    alpha.con()
}

pub fn reverse(alpha: &Word) -> Word {
    alpha.reverse()
}
