//! Two-term string rewriting: orientation, compositions, completion with
//! schema detection, normal forms and the bounded congruence oracle.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::pairs::letter_domain;
use crate::words::{Alphabet, Letter, Word};

/// Word order used to orient rules.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum WordOrder {
    DegLex,
    /// Deg-lex applied to reversed words; the order of a reversed system.
    ReverseDegLex,
}

impl WordOrder {
    pub fn compare(self, alpha: &Alphabet, x: &Word, y: &Word) -> Ordering {
        match self {
            WordOrder::DegLex => alpha.deglex(x, y),
            WordOrder::ReverseDegLex => alpha.deglex(&x.reverse(), &y.reverse()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn reversed(&self) -> Rule {
        Rule { lhs: self.lhs.reverse(), rhs: self.rhs.reverse() }
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        format!("{}->{}", alpha.render(&self.lhs), alpha.render(&self.rhs))
    }
}

/// Orients a relation so the deg-lex greater side is the left-hand side.
pub fn orient(u: &Word, v: &Word, ord: &Alphabet) -> Result<Rule> {
    ord.check_word(u)?;
    ord.check_word(v)?;
    if u.is_empty() && v.is_empty() {
        return Err(Error::InvalidInput("both sides are ε".into()));
    }
    match ord.deglex(u, v) {
        Ordering::Equal => Err(Error::TrivialRelation),
        Ordering::Greater => Ok(Rule { lhs: u.clone(), rhs: v.clone() }),
        Ordering::Less => Ok(Rule { lhs: v.clone(), rhs: u.clone() }),
    }
}

/// The pumped family pre·pumpⁱ·suf → pre′·pump′ⁱ·suf′ for i ≥ min_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RuleSchema {
    pub lhs_pre: Word,
    pub lhs_pump: Word,
    pub lhs_suf: Word,
    pub rhs_pre: Word,
    pub rhs_pump: Word,
    pub rhs_suf: Word,
    pub min_i: usize,
}

impl RuleSchema {
    pub fn new(lhs: (&Word, &Word, &Word), rhs: (&Word, &Word, &Word), min_i: usize) -> Result<Self> {
        if lhs.1.is_empty() {
            return Err(Error::InvalidInput("schema pump must be nonempty".into()));
        }
        Ok(RuleSchema {
            lhs_pre: lhs.0.clone(),
            lhs_pump: lhs.1.clone(),
            lhs_suf: lhs.2.clone(),
            rhs_pre: rhs.0.clone(),
            rhs_pump: rhs.1.clone(),
            rhs_suf: rhs.2.clone(),
            min_i,
        })
    }

    pub fn instance(&self, i: usize) -> Rule {
        Rule {
            lhs: self.lhs_pre.concat(&self.lhs_pump.pow(i)).concat(&self.lhs_suf),
            rhs: self.rhs_pre.concat(&self.rhs_pump.pow(i)).concat(&self.rhs_suf),
        }
    }

    /// Largest pump count i ≥ min_i with an instance lhs occurring at `pos`.
    fn match_at(&self, w: &[Letter], pos: usize) -> Option<usize> {
        let rest = &w[pos..];
        if !rest.starts_with(&self.lhs_pre) {
            return None;
        }
        let mut k = 0;
        let mut at = self.lhs_pre.len();
        let p = self.lhs_pump.len();
        while rest.len() >= at + p && rest[at..at + p] == self.lhs_pump[..] {
            k += 1;
            at += p;
        }
        (self.min_i..=k).rev().find(|&i| rest[self.lhs_pre.len() + i * p..].starts_with(&self.lhs_suf))
    }

    pub fn reversed(&self) -> RuleSchema {
        RuleSchema {
            lhs_pre: self.lhs_suf.reverse(),
            lhs_pump: self.lhs_pump.reverse(),
            lhs_suf: self.lhs_pre.reverse(),
            rhs_pre: self.rhs_suf.reverse(),
            rhs_pump: self.rhs_pump.reverse(),
            rhs_suf: self.rhs_pre.reverse(),
            min_i: self.min_i,
        }
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        let r = |w: &Word| if w.is_empty() { String::new() } else { alpha.render(w) };
        format!(
            "{}({})^i{} -> {}({})^i{}  (i>={})",
            r(&self.lhs_pre),
            r(&self.lhs_pump),
            r(&self.lhs_suf),
            r(&self.rhs_pre),
            r(&self.rhs_pump),
            r(&self.rhs_suf),
            self.min_i
        )
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Completeness {
    Complete,
    BoundedIncomplete,
    Unknown,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "complete",
            Completeness::BoundedIncomplete => "bounded_incomplete",
            Completeness::Unknown => "unknown",
        })
    }
}

/// An overlap or inclusion ambiguity between two rules.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition {
    pub ambiguity: Word,
    pub left: Word,
    pub right: Word,
}

/// All intersection and inclusion compositions of `r1` with `r2`.
pub fn compositions(r1: &Rule, r2: &Rule) -> Vec<Composition> {
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    let mut out = Vec::new();
    // overlap: a suffix of l1 equals a proper prefix of l2
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let b = Word::from_letters(&l2[k..]);
            let a = Word::from_letters(&l1[..l1.len() - k]);
            out.push(Composition { ambiguity: l1.concat(&b), left: r1.rhs.concat(&b), right: a.concat(&r2.rhs) });
        }
    }
    // inclusion: l2 occurs inside l1
    if l2.len() <= l1.len() && !(r1 == r2) {
        for pos in 0..=l1.len() - l2.len() {
            if l1[pos..pos + l2.len()] == l2[..] {
                let a = Word::from_letters(&l1[..pos]);
                let b = Word::from_letters(&l1[pos + l2.len()..]);
                out.push(Composition {
                    ambiguity: l1.clone(),
                    left: r1.rhs.clone(),
                    right: a.concat(&r2.rhs).concat(&b),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    order: WordOrder,
    rules: Vec<Rule>,
    schemas: Vec<RuleSchema>,
    status: Completeness,
}

/// Instances of a schema checked when validating or auditing it.
pub const SCHEMA_AUDIT: usize = 6;

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>, schemas: Vec<RuleSchema>, status: Completeness) -> Result<Self> {
        RewriteSystem::with_order(alphabet, WordOrder::DegLex, rules, schemas, status)
    }

    pub fn with_order(
        alphabet: Alphabet,
        order: WordOrder,
        rules: Vec<Rule>,
        schemas: Vec<RuleSchema>,
        status: Completeness,
    ) -> Result<Self> {
        let rs = RewriteSystem { alphabet, order, rules, schemas, status };
        for r in &rs.rules {
            rs.check_rule(r)?;
        }
        for s in &rs.schemas {
            for i in s.min_i..=s.min_i + 5 {
                rs.check_rule(&s.instance(i))?;
            }
        }
        Ok(rs)
    }

    fn check_rule(&self, r: &Rule) -> Result<()> {
        self.alphabet.check_word(&r.lhs)?;
        self.alphabet.check_word(&r.rhs)?;
        if r.lhs.is_empty() || self.order.compare(&self.alphabet, &r.lhs, &r.rhs) != Ordering::Greater {
            return Err(Error::InvalidInput(format!("rule {} is not oriented", r.render(&self.alphabet))));
        }
        Ok(())
    }

    /// The empty system (free semigroup).
    pub fn free(alphabet: Alphabet) -> Self {
        RewriteSystem {
            alphabet,
            order: WordOrder::DegLex,
            rules: vec![],
            schemas: vec![],
            status: Completeness::Complete,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> WordOrder {
        self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn schemas(&self) -> &[RuleSchema] {
        &self.schemas
    }

    pub fn status(&self) -> Completeness {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Completeness::Complete
    }

    pub fn set_status(&mut self, status: Completeness) {
        self.status = status;
    }

    /// Finite rules plus schema instances for i up to min_i + `extra`.
    pub fn instantiated_rules(&self, extra: usize) -> Vec<Rule> {
        let mut out = self.rules.clone();
        for s in &self.schemas {
            for i in s.min_i..=s.min_i + extra {
                out.push(s.instance(i));
            }
        }
        out
    }

    /// Leftmost match at or after `from`: (position, lhs length, rhs).
    fn find_match(&self, w: &[Letter], from: usize) -> Option<(usize, usize, Word)> {
        for pos in from..w.len() {
            let mut best: Option<(usize, Word)> = None;
            for r in &self.rules {
                if w[pos..].starts_with(&r.lhs) && best.as_ref().is_none_or(|(l, _)| r.lhs.len() > *l) {
                    best = Some((r.lhs.len(), r.rhs.clone()));
                }
            }
            for s in &self.schemas {
                if let Some(i) = s.match_at(w, pos) {
                    let inst = s.instance(i);
                    if best.as_ref().is_none_or(|(l, _)| inst.lhs.len() > *l) {
                        best = Some((inst.lhs.len(), inst.rhs));
                    }
                }
            }
            if let Some((len, rhs)) = best {
                return Some((pos, len, rhs));
            }
        }
        None
    }

    /// Normal form: rewrite the leftmost occurrence of a left-hand side
    /// (longest first, then declaration order) until none is left.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut cur = w.0.clone();
        let max_fixed = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1);
        let mut from = 0;
        while let Some((pos, len, rhs)) = self.find_match(&cur, from) {
            cur.splice(pos..pos + len, rhs.0.iter().copied());
            from = if self.schemas.is_empty() { pos.saturating_sub(max_fixed) } else { 0 };
        }
        Word(cur)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_match(w, 0).is_none()
    }

    /// Rewrites at a random redex each step; equals [`reduce`] on complete systems.
    pub fn reduce_random<R: Rng>(&self, w: &Word, rng: &mut R) -> Word {
        let mut cur = w.0.clone();
        loop {
            let mut redexes: Vec<(usize, usize, Word)> = Vec::new();
            for pos in 0..cur.len() {
                for r in &self.rules {
                    if cur[pos..].starts_with(&r.lhs) {
                        redexes.push((pos, r.lhs.len(), r.rhs.clone()));
                    }
                }
                for s in &self.schemas {
                    for i in s.min_i..=cur.len() {
                        let inst = s.instance(i);
                        if inst.lhs.len() > cur.len() - pos {
                            break;
                        }
                        if cur[pos..].starts_with(&inst.lhs) {
                            redexes.push((pos, inst.lhs.len(), inst.rhs));
                        }
                    }
                }
            }
            match redexes.choose(rng) {
                None => return Word(cur),
                Some((pos, len, rhs)) => {
                    cur.splice(*pos..*pos + *len, rhs.0.iter().copied());
                }
            }
        }
    }

    /// Checks every composition among rules and schema instances
    /// (i ≤ min_i + `extra`); returns the first nontrivial one.
    pub fn first_nontrivial(&self, extra: usize) -> Option<Composition> {
        let rules = self.instantiated_rules(extra);
        for r1 in &rules {
            for r2 in &rules {
                for c in compositions(r1, r2) {
                    if self.reduce(&c.left) != self.reduce(&c.right) {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// Regular language of all left-hand sides.
    pub fn leading_language(&self) -> Fsa<Letter> {
        let dom = letter_domain(&self.alphabet);
        let mut m = Fsa::empty(dom.clone());
        for r in &self.rules {
            m = m.union(&Fsa::word(dom.clone(), &r.lhs)).expect("same domain");
        }
        for s in &self.schemas {
            let pump = Fsa::word(dom.clone(), &s.lhs_pump);
            let p = Fsa::word(dom.clone(), &s.lhs_pre.concat(&s.lhs_pump.pow(s.min_i)))
                .concat(&pump.star())
                .and_then(|x| x.concat(&Fsa::word(dom.clone(), &s.lhs_suf)))
                .expect("same domain");
            m = m.union(&p).expect("same domain");
        }
        m.minimize().trim()
    }

    /// A⁺ − A*·leading·A*, the irreducible words.
    pub fn irr_language(&self) -> Fsa<Letter> {
        let dom = letter_domain(&self.alphabet);
        let all = Fsa::universe(dom.clone());
        let bad = all.concat(&self.leading_language()).and_then(|x| x.concat(&all)).expect("same domain");
        Fsa::universe_plus(dom).difference(&bad).expect("same domain").minimize().trim()
    }

    /// The system over A ∪ {e} with the e-absorption rules added.
    pub fn with_identity(&self) -> Result<RewriteSystem> {
        let (alphabet, e) = match self.alphabet.identity() {
            Some(e) => (self.alphabet.clone(), e),
            None => {
                let b = self.alphabet.with_identity()?;
                let e = b.identity().unwrap();
                (b, e)
            }
        };
        let mut rules = self.rules.clone();
        for r in identity_rules(&alphabet, e) {
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
        Ok(RewriteSystem { alphabet, order: self.order, rules, schemas: self.schemas.clone(), status: self.status })
    }

    /// The system of the reversed semigroup: every rule read backwards.
    pub fn reversed(&self) -> RewriteSystem {
        RewriteSystem {
            alphabet: self.alphabet.clone(),
            order: match self.order {
                WordOrder::DegLex => WordOrder::ReverseDegLex,
                WordOrder::ReverseDegLex => WordOrder::DegLex,
            },
            rules: self.rules.iter().map(Rule::reversed).collect(),
            schemas: self.schemas.iter().map(RuleSchema::reversed).collect(),
            status: self.status,
        }
    }

    pub fn render(&self) -> Vec<String> {
        let mut out: Vec<String> = self.rules.iter().map(|r| r.render(&self.alphabet)).collect();
        out.extend(self.schemas.iter().map(|s| s.render(&self.alphabet)));
        out
    }
}

/// A parsed line of a rendered rewriting system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleLine {
    Rule(Rule),
    Schema(RuleSchema),
}

fn parse_schema_side(text: &str, alpha: &Alphabet) -> Result<(Word, Word, Word)> {
    let open = text.find('(').ok_or_else(|| Error::InvalidInput(format!("schema side {text:?} needs '('")))?;
    let close = text.find(")^i").ok_or_else(|| Error::InvalidInput(format!("schema side {text:?} needs ')^i'")))?;
    if close < open {
        return Err(Error::InvalidInput(format!("malformed schema side {text:?}")));
    }
    Ok((
        alpha.parse_word(&text[..open])?,
        alpha.parse_word(&text[open + 1..close])?,
        alpha.parse_word(&text[close + 3..])?,
    ))
}

/// Parses `lhs->rhs` or a schema in the form produced by [`RuleSchema::render`].
pub fn parse_rule_line(text: &str, alpha: &Alphabet) -> Result<RuleLine> {
    let text = text.trim();
    let (body, min_i) = match text.rsplit_once("(i>=") {
        Some((body, tail)) => {
            let n = tail
                .strip_suffix(')')
                .and_then(|n| n.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad schema bound in {text:?}")))?;
            (body.trim(), Some(n))
        }
        None => (text, None),
    };
    let (l, r) = body.split_once("->").ok_or_else(|| Error::InvalidInput(format!("rule {text:?} needs '->'")))?;
    match min_i {
        None => Ok(RuleLine::Rule(Rule { lhs: alpha.parse_word(l)?, rhs: alpha.parse_word(r)? })),
        Some(k) => {
            let a = parse_schema_side(l.trim(), alpha)?;
            let b = parse_schema_side(r.trim(), alpha)?;
            Ok(RuleLine::Schema(RuleSchema::new((&a.0, &a.1, &a.2), (&b.0, &b.1, &b.2), k)?))
        }
    }
}

/// ee → e, xe → x, ex → x for every generator x.
pub fn identity_rules(alpha: &Alphabet, e: Letter) -> Vec<Rule> {
    let mut out = vec![Rule { lhs: Word(vec![e, e]), rhs: Word(vec![e]) }];
    for x in alpha.generators() {
        out.push(Rule { lhs: Word(vec![x, e]), rhs: Word(vec![x]) });
        out.push(Rule { lhs: Word(vec![e, x]), rhs: Word(vec![x]) });
    }
    out
}

/// Free-function form of [`RewriteSystem::reduce`].
pub fn reduce(w: &Word, rs: &RewriteSystem) -> Word {
    rs.reduce(w)
}

pub fn leading_language(rs: &RewriteSystem) -> Fsa<Letter> {
    rs.leading_language()
}

/// Irreducible words; with an identity letter the e-absorption rules are
/// included, so the result is {e} ∪ (A⁺ − A*·leading·A*).
pub fn irr_language(rs: &RewriteSystem, with_identity: Option<Letter>) -> Result<Fsa<Letter>> {
    match with_identity {
        None => Ok(rs.irr_language()),
        Some(e) => {
            let s = rs.with_identity()?;
            if s.alphabet.identity() != Some(e) {
                return Err(Error::InvalidInput("identity letter does not match the alphabet".into()));
            }
            Ok(s.irr_language())
        }
    }
}

/// Completion of a set of two-term relations under deg-lex.
///
/// Relations whose right side is ε are read in the monoid sense: the
/// alphabet gains the identity `e`, u = ε becomes u → e, and the
/// e-absorption rules are added.
pub fn shirshov_complete(
    relations: &[(Word, Word)],
    ord: &Alphabet,
    max_rules: usize,
    max_len: usize,
) -> Result<RewriteSystem> {
    let monoid = relations.iter().any(|(u, v)| u.is_empty() || v.is_empty());
    let (alpha, mut pending) = if monoid && ord.identity().is_none() {
        let b = ord.with_identity()?;
        let e = b.identity().unwrap();
        let fix = |w: &Word| if w.is_empty() { Word(vec![e]) } else { w.clone() };
        let mut p: Vec<(Word, Word)> = relations.iter().map(|(u, v)| (fix(u), fix(v))).collect();
        p.extend(identity_rules(&b, e).into_iter().map(|r| (r.lhs, r.rhs)));
        (b, p)
    } else {
        (ord.clone(), relations.to_vec())
    };
    for (u, v) in &pending {
        alpha.check_word(u)?;
        alpha.check_word(v)?;
    }
    pending.retain(|(u, v)| u != v);
    let mut rs = RewriteSystem {
        alphabet: alpha,
        order: WordOrder::DegLex,
        rules: vec![],
        schemas: vec![],
        status: Completeness::Unknown,
    };
    for _round in 0..8 {
        let dropped = complete_rules(&mut rs, pending.clone(), max_rules, max_len);
        if !dropped && rs.first_nontrivial(SCHEMA_AUDIT).is_none() {
            rs.status = Completeness::Complete;
            return Ok(rs);
        }
        match detect_schema(&rs) {
            Some(s) => {
                let covered: HashSet<Word> = (s.min_i..=max_len + 1).map(|i| s.instance(i).lhs).collect();
                rs.rules.retain(|r| !covered.contains(&r.lhs));
                rs.schemas.push(s);
                pending = rs.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
                rs.rules.clear();
            }
            None => {
                rs.status = Completeness::BoundedIncomplete;
                return Ok(rs);
            }
        }
    }
    rs.status = Completeness::BoundedIncomplete;
    Ok(rs)
}

/// Knuth–Bendix loop on the finite rules of `rs` (schemas stay fixed).
/// Returns true when some derived rule was dropped because of the bounds.
fn complete_rules(rs: &mut RewriteSystem, mut pending: Vec<(Word, Word)>, max_rules: usize, max_len: usize) -> bool {
    let mut dropped = false;
    let mut done_pairs: HashSet<(Rule, Rule)> = HashSet::new();
    loop {
        // add pending relations, interreducing as we go
        while let Some((u, v)) = pending.pop() {
            let (u, v) = (rs.reduce(&u), rs.reduce(&v));
            if u == v {
                continue;
            }
            let r = match rs.order.compare(&rs.alphabet, &u, &v) {
                Ordering::Greater => Rule { lhs: u, rhs: v },
                Ordering::Less => Rule { lhs: v, rhs: u },
                Ordering::Equal => continue,
            };
            if r.lhs.len() > max_len || rs.rules.len() >= max_rules {
                dropped = true;
                continue;
            }
            // rules made reducible by the new one go back to pending
            let mut keep = Vec::new();
            for old in rs.rules.drain(..) {
                if old.lhs.contains_factor(&r.lhs) {
                    pending.push((old.lhs, old.rhs));
                } else {
                    keep.push(old);
                }
            }
            rs.rules = keep;
            rs.rules.push(r);
            let snapshot = rs.clone();
            for old in rs.rules.iter_mut() {
                old.rhs = snapshot.reduce(&old.rhs);
            }
        }
        // critical pairs
        let mut found = false;
        let all: Vec<Rule> = rs.instantiated_rules(SCHEMA_AUDIT);
        'outer: for r1 in &all {
            for r2 in &all {
                if done_pairs.contains(&(r1.clone(), r2.clone())) {
                    continue;
                }
                for c in compositions(r1, r2) {
                    let (l, r) = (rs.reduce(&c.left), rs.reduce(&c.right));
                    if l != r {
                        pending.push((l, r));
                        found = true;
                    }
                }
                done_pairs.insert((r1.clone(), r2.clone()));
                if found && pending.len() > 16 {
                    break 'outer;
                }
            }
        }
        if !found {
            return dropped;
        }
        if rs.rules.len() >= max_rules {
            return true;
        }
    }
}

/// Finds a pumped family with at least three consecutive instances among
/// the finite rules.
fn detect_schema(rs: &RewriteSystem) -> Option<RuleSchema> {
    let table: HashMap<&Word, &Word> = rs.rules.iter().map(|r| (&r.lhs, &r.rhs)).collect();
    let mut best: Option<(usize, usize, RuleSchema)> = None;
    for r in &rs.rules {
        for (lp, lx, ls, k) in pumped_splits(&r.lhs) {
            for (rp, rx, rsuf) in rhs_splits(&r.rhs, k) {
                let cand = RuleSchema {
                    lhs_pre: lp.clone(),
                    lhs_pump: lx.clone(),
                    lhs_suf: ls.clone(),
                    rhs_pre: rp,
                    rhs_pump: rx,
                    rhs_suf: rsuf,
                    min_i: 0,
                };
                let hit = |i: usize| {
                    let inst = cand.instance(i);
                    table.get(&inst.lhs).is_some_and(|rhs| **rhs == inst.rhs)
                };
                if !hit(k) {
                    continue;
                }
                let mut lo = k;
                while lo > 0 && hit(lo - 1) {
                    lo -= 1;
                }
                let mut hi = k;
                while hit(hi + 1) {
                    hi += 1;
                }
                let count = hi - lo + 1;
                if count < 3 {
                    continue;
                }
                let fixed = cand.lhs_pre.len() + cand.lhs_suf.len() + cand.rhs_pre.len() + cand.rhs_suf.len();
                let better = match &best {
                    None => true,
                    Some((c, f, _)) => count > *c || (count == *c && fixed < *f),
                };
                if better {
                    let mut c = cand.clone();
                    c.min_i = lo;
                    if validate_schema(rs, &c) {
                        best = Some((count, fixed, c));
                    }
                }
            }
        }
    }
    best.map(|(_, _, s)| s)
}

fn validate_schema(rs: &RewriteSystem, s: &RuleSchema) -> bool {
    (s.min_i..=s.min_i + 5).all(|i| {
        let r = s.instance(i);
        !r.lhs.is_empty() && rs.order.compare(&rs.alphabet, &r.lhs, &r.rhs) == Ordering::Greater
    })
}

/// Decompositions w = pre·xᵏ·suf with 1 ≤ |x| ≤ 3 and k ≥ 1.
fn pumped_splits(w: &Word) -> Vec<(Word, Word, Word, usize)> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        for p in 0..w.len() {
            if p + d > w.len() {
                break;
            }
            let x = &w[p..p + d];
            let mut k = 1;
            while p + (k + 1) * d <= w.len() && &w[p + k * d..p + (k + 1) * d] == x {
                k += 1;
            }
            for kk in 1..=k {
                out.push((
                    Word::from_letters(&w[..p]),
                    Word::from_letters(x),
                    Word::from_letters(&w[p + kk * d..]),
                    kk,
                ));
            }
        }
    }
    out
}

/// Decompositions w = pre·yᵏ·suf with 1 ≤ |y| ≤ 3 for a fixed k.
fn rhs_splits(w: &Word, k: usize) -> Vec<(Word, Word, Word)> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        for p in 0..=w.len() {
            if p + k * d > w.len() {
                break;
            }
            let y = &w[p..p + d];
            if (0..k).all(|j| &w[p + j * d..p + (j + 1) * d] == y) {
                out.push((Word::from_letters(&w[..p]), Word::from_letters(y), Word::from_letters(&w[p + k * d..])));
            }
        }
    }
    out
}

/// Result of the bounded congruence search.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Congruence {
    Equal,
    DistinctUpToCap,
}

/// One-step neighbours of `w` under the relations read in both directions,
/// keeping words of length ≤ cap.
fn neighbours(w: &Word, relations: &[(Word, Word)], cap: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for (u, v) in relations {
        for (x, y) in [(u, v), (v, u)] {
            if x.len() > w.len() || w.len() + y.len() - x.len() > cap {
                continue;
            }
            if x.is_empty() {
                for pos in 0..=w.len() {
                    let mut n = w.0[..pos].to_vec();
                    n.extend_from_slice(y);
                    n.extend_from_slice(&w[pos..]);
                    out.push(Word(n));
                }
                continue;
            }
            if x.len() > w.len() {
                continue;
            }
            for pos in 0..=w.len() - x.len() {
                if w[pos..pos + x.len()] == x[..] {
                    let mut n = w.0[..pos].to_vec();
                    n.extend_from_slice(y);
                    n.extend_from_slice(&w[pos + x.len()..]);
                    out.push(Word(n));
                }
            }
        }
    }
    out
}

/// Bidirectional breadth-first search for a derivation between `w1` and
/// `w2` through words of length at most `cap`.
pub fn congruence_equal(w1: &Word, w2: &Word, relations: &[(Word, Word)], cap: usize) -> Congruence {
    if w1 == w2 {
        return Congruence::Equal;
    }
    let mut seen: [HashSet<Word>; 2] = [HashSet::from([w1.clone()]), HashSet::from([w2.clone()])];
    let mut frontier: [VecDeque<Word>; 2] = [VecDeque::from([w1.clone()]), VecDeque::from([w2.clone()])];
    loop {
        if frontier[0].is_empty() && frontier[1].is_empty() {
            return Congruence::DistinctUpToCap;
        }
        let side = if frontier[1].is_empty() || (!frontier[0].is_empty() && frontier[0].len() <= frontier[1].len()) {
            0
        } else {
            1
        };
        let layer: Vec<Word> = frontier[side].drain(..).collect();
        for w in layer {
            for n in neighbours(&w, relations, cap) {
                if seen[1 - side].contains(&n) {
                    return Congruence::Equal;
                }
                if seen[side].insert(n.clone()) {
                    frontier[side].push_back(n);
                }
            }
        }
    }
}

/// Congruence classes of all words up to a length cap, by union–find over
/// single relation applications. Answers the same question as
/// [`congruence_equal`] for many word pairs at once.
pub struct BoundedCongruence {
    index: HashMap<Word, usize>,
    parent: Vec<usize>,
}

impl BoundedCongruence {
    pub fn new(letters: &[Letter], relations: &[(Word, Word)], cap: usize) -> Self {
        let mut index = HashMap::new();
        let mut words = Vec::new();
        for n in 0..=cap {
            for w in Alphabet::words_of_length(letters, n) {
                index.insert(w.clone(), words.len());
                words.push(w);
            }
        }
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, w) in words.iter().enumerate() {
            for n in neighbours(w, relations, cap) {
                if let Some(&j) = index.get(&n) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        for i in 0..parent.len() {
            let r = find(&mut parent, i);
            parent[i] = r;
        }
        BoundedCongruence { index, parent }
    }

    pub fn class(&self, w: &Word) -> Option<usize> {
        self.index.get(w).map(|&i| self.parent[i])
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Congruence {
        match (self.class(w1), self.class(w2)) {
            (Some(a), Some(b)) if a == b => Congruence::Equal,
            _ => Congruence::DistinctUpToCap,
        }
    }
}

/// Parses `gens: a,b,c` followed by `rel: u = v` lines (`1` is ε).
pub fn parse_presentation(text: &str) -> Result<(Alphabet, Vec<(Word, Word)>)> {
    let mut alpha: Option<Alphabet> = None;
    let mut rels = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: n + 1, msg };
        if let Some(rest) = line.strip_prefix("gens:") {
            alpha = Some(Alphabet::parse_list(rest).map_err(|e| perr(e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let a = alpha.as_ref().ok_or_else(|| perr("rel before gens".into()))?;
            let (u, v) = rest.split_once('=').ok_or_else(|| perr("relation needs '='".into()))?;
            let u = a.parse_word(u).map_err(|e| perr(e.to_string()))?;
            let v = a.parse_word(v).map_err(|e| perr(e.to_string()))?;
            rels.push((u, v));
        } else {
            return Err(perr(format!("unrecognized line {line:?}")));
        }
    }
    let alpha = alpha.ok_or(Error::Parse { line: 0, msg: "missing gens line".into() })?;
    Ok((alpha, rels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_lines_round_trip() {
        let a = Alphabet::new(&['a', 'b']).unwrap();
        let s = RuleSchema::new((&a.w("a"), &a.w("b"), &a.w("a")), (&Word::empty(), &a.w("b"), &a.w("a")), 1).unwrap();
        assert_eq!(parse_rule_line(&s.render(&a), &a).unwrap(), RuleLine::Schema(s));
        let r = Rule { lhs: a.w("ab"), rhs: a.w("b") };
        assert_eq!(parse_rule_line(&r.render(&a), &a).unwrap(), RuleLine::Rule(r));
    }

    fn ac_rev() -> Alphabet {
        // c < a
        Alphabet::new(&['c', 'a']).unwrap()
    }

    fn rules_of(rs: &RewriteSystem) -> Vec<String> {
        let mut v = rs.render();
        v.sort();
        v
    }

    #[test]
    fn orient_examples() {
        let ab = Alphabet::new(&['a', 'b']).unwrap();
        assert_eq!(orient(&ab.w("ba"), &ab.w("ab"), &ab).unwrap().render(&ab), "ba->ab");
        let al = ac_rev();
        assert_eq!(orient(&al.w("cc"), &al.w("aa"), &al).unwrap().render(&al), "aa->cc");
        assert_eq!(orient(&ab.w("b"), &ab.w("aab"), &ab).unwrap().render(&ab), "aab->b");
        assert_eq!(orient(&ab.w("ab"), &ab.w("ab"), &ab), Err(Error::TrivialRelation));
        assert!(orient(&Word::empty(), &Word::empty(), &ab).is_err());
    }

    #[test]
    fn composition_examples() {
        let al = ac_rev();
        let r = Rule { lhs: al.w("aa"), rhs: al.w("cc") };
        let c = compositions(&r, &r);
        assert_eq!(c.len(), 1);
        assert_eq!(al.render(&c[0].ambiguity), "aaa");
        assert_eq!((al.render(&c[0].left), al.render(&c[0].right)), ("cca".into(), "acc".into()));
        let abcd = Alphabet::new(&['a', 'b', 'c', 'd']).unwrap();
        let r = Rule { lhs: abcd.w("ab"), rhs: abcd.w("cd") };
        assert!(compositions(&r, &r).is_empty());
        let ab = Alphabet::new(&['a', 'b']).unwrap();
        let r = Rule { lhs: ab.w("aba"), rhs: ab.w("ba") };
        let c = compositions(&r, &r);
        assert_eq!(c.len(), 1);
        assert_eq!(ab.render(&c[0].ambiguity), "ababa");
        assert_eq!((ab.render(&c[0].left), ab.render(&c[0].right)), ("baba".into(), "abba".into()));
        let inc: Vec<_> = compositions(&Rule { lhs: ab.w("abab"), rhs: ab.w("a") }, &r)
            .into_iter()
            .filter(|c| c.ambiguity == ab.w("abab"))
            .collect();
        assert_eq!(inc.len(), 1);
        assert_eq!(ab.render(&inc[0].right), "bab");
    }

    #[test]
    fn completion_of_squares() {
        let al = ac_rev();
        let rs = shirshov_complete(&[(al.w("aa"), al.w("cc"))], &al, 50, 10).unwrap();
        assert!(rs.is_complete());
        assert_eq!(rules_of(&rs), vec!["aa->cc", "acc->cca"]);
        assert_eq!(al.render(&rs.reduce(&al.w("aac"))), "ccc");
    }

    #[test]
    fn completion_detects_schema() {
        let ab = Alphabet::new(&['a', 'b']).unwrap();
        let rs = shirshov_complete(&[(ab.w("aba"), ab.w("ba"))], &ab, 60, 12).unwrap();
        assert!(rs.is_complete(), "{:?}", rs.render());
        assert!(rs.rules().is_empty());
        assert_eq!(rs.schemas().len(), 1);
        let s = &rs.schemas()[0];
        assert_eq!(
            (ab.render(&s.lhs_pre), ab.render(&s.lhs_pump), ab.render(&s.lhs_suf)),
            ("a".into(), "b".into(), "a".into())
        );
        assert_eq!((ab.render(&s.rhs_pre), ab.render(&s.rhs_suf), s.min_i), ("1".into(), "a".into(), 1));
        assert_eq!(ab.render(&rs.reduce(&ab.w("abab"))), "bab");
        let irr = rs.irr_language();
        assert!(irr.contains(&ab.w("bab")));
        assert!(!irr.contains(&ab.w("abba")));
    }

    #[test]
    fn monoid_completion() {
        let ab = Alphabet::new(&['a', 'b']).unwrap();
        let rs = shirshov_complete(&[(ab.w("ab"), Word::empty())], &ab, 50, 10).unwrap();
        assert!(rs.is_complete());
        let b = rs.alphabet();
        assert_eq!(b.render(&rs.reduce(&b.w("aabb"))), "e");
        assert_eq!(b.render(&rs.reduce(&b.w("ba"))), "ba");
    }

    #[test]
    fn congruence_examples() {
        let al = ac_rev();
        let rels = [(al.w("aa"), al.w("cc"))];
        assert_eq!(congruence_equal(&al.w("aac"), &al.w("ccc"), &rels, 8), Congruence::Equal);
        let ab = Alphabet::new(&['a', 'b']).unwrap();
        let rels = [(ab.w("aba"), ab.w("ba"))];
        assert_eq!(congruence_equal(&ab.w("a"), &ab.w("b"), &rels, 10), Congruence::DistinctUpToCap);
        assert_eq!(congruence_equal(&ab.w("ab"), &ab.w("ab"), &rels, 2), Congruence::Equal);
        let bc = BoundedCongruence::new(&ab.generators(), &rels, 8);
        assert_eq!(bc.equal(&ab.w("abab"), &ab.w("bab")), Congruence::Equal);
    }

    #[test]
    fn presentation_text() {
        let (al, rels) = parse_presentation("gens: a,b\nrel: aba = 1\n").unwrap();
        assert_eq!(al.len(), 2);
        assert!(rels[0].1.is_empty());
        assert!(parse_presentation("rel: a = b").is_err());
    }
}
