//! Witness catalog: one entry per automatic two-letter pattern, giving the
//! letter order used for completion and the tail relations from which the
//! multipliers are assembled, plus generic tail constructors that apply to
//! whole classes of rewriting systems.
//!
//! Tails are written over the pattern letters `x`, `y` and the identity `e`
//! in the syntax of [`Relation::parse`]; a right tail (p, q) for c means
//! p·c = q, a left tail means c·p = q. Letters without an entry get the
//! default tail (1,c), or (1,c)|(e,c) when the structure carries `e`, and
//! `e` itself gets (1,1).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::gsm::{gsm_image, Gsm};
use crate::pairs::{letter_domain, Relation, Side};
use crate::rewriting::{shirshov_complete, RewriteSystem};
use crate::structures::{assemble, AutomaticStructure, Flavor, Model, Provenance, TailTable};
use crate::words::{Alphabet, Letter, Word};

/// Rule budget for completing catalog presentations.
pub const CATALOG_MAX_RULES: usize = 64;
/// Longest left-hand side kept while completing catalog presentations.
pub const CATALOG_MAX_LEN: usize = 16;

/// How the tails of a case are obtained.
#[derive(Clone, Copy, Debug)]
pub enum TailSource {
    /// Hand-derived tails, per letter and side.
    Explicit { right: &'static [(char, &'static str)], left: &'static [(char, &'static str)] },
    /// Rules whose right sides never overlap their left sides.
    Nonoverlap,
    /// Rules w·v → v that absorb a repeated prefix.
    Absorb,
    /// A single monoid relation u = 1.
    Identity,
}

/// Padding machines for normal forms whose multipliers change length
/// without bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    /// Every occurrence of the letter is followed by `e`.
    AfterEach(char),
    /// Inside a run of the letter, every occurrence but the first is followed by `e`.
    RunTail(char),
}

#[derive(Clone, Copy, Debug)]
pub struct Case {
    pub pattern: &'static str,
    pub family: &'static str,
    pub construction: &'static str,
    /// Pattern letters from smallest to largest.
    pub order: &'static str,
    pub tails: TailSource,
    /// Whether left tails are provided.
    pub two_sided: bool,
    pub padding: Option<Padding>,
    /// Extra prefix-equality tails, needed when the language is not prefix-closed.
    pub prefix: Option<&'static str>,
}

const fn explicit(
    pattern: &'static str,
    family: &'static str,
    construction: &'static str,
    order: &'static str,
    right: &'static [(char, &'static str)],
    left: &'static [(char, &'static str)],
) -> Case {
    Case {
        pattern,
        family,
        construction,
        order,
        tails: TailSource::Explicit { right, left },
        two_sided: !left.is_empty(),
        padding: None,
        prefix: None,
    }
}

const fn generic(
    pattern: &'static str,
    family: &'static str,
    construction: &'static str,
    tails: TailSource,
    two_sided: bool,
) -> Case {
    Case { pattern, family, construction, order: "xy", tails, two_sided, padding: None, prefix: None }
}

const NONE: &[(char, &str)] = &[];

/// Every automatic pattern over at most two letters with |u| ≤ 3.
pub const CASES: &[Case] = &[
    // |u| = 1
    explicit("x=1", "W-DEG", "deleted generator", "xy", &[('x', "(1,1)")], &[('x', "(1,1)")]),
    explicit("x=y", "W-DEG", "identified generators", "xy", &[('y', "(1,x)")], &[('y', "(1,x)")]),
    // |u| = 2, monoid
    generic("xx=1", "W-E2", "idempotent-free monoid relation", TailSource::Identity, true),
    generic("xy=1", "W-E2", "one-sided inverse", TailSource::Identity, true),
    // |u| = 2, |v| = 1
    explicit("xx=x", "W-21", "idempotent", "xy", &[('x', "(1,x)|(x,x)(x,1)*")], &[('x', "(1,x)|(x,1)*(x,x)")]),
    explicit(
        "xx=y",
        "W-21",
        "square as a new generator",
        "yx",
        &[('x', "(1,x)|(x,y)"), ('y', "(1,y)(x,x)*")],
        &[('x', "(y,y)*(1,x)|(y,y)*(x,y)")],
    ),
    generic("xy=x", "W-21", "right zero of y over x", TailSource::Nonoverlap, false),
    generic("xy=y", "W-21", "left absorption", TailSource::Absorb, false),
    // |u| = |v| = 2
    explicit("xx=xy", "W-HOM2", "single homogeneous rule", "xy", &[('y', "(1,y)|(x,xx)")], &[('x', "(y,x)*(1,x)")]),
    explicit("xx=yx", "W-HOM2", "single homogeneous rule", "xy", &[('x', "(y,x)*(1,x)")], &[('y', "(1,y)|(x,xx)")]),
    explicit(
        "xx=yy",
        "W-HOM2",
        "equal squares",
        "yx",
        &[('y', "(1,y)|(xy,yyx)(xy,yx)*"), ('x', "(1,x)|(x,yy)|(xy,yyx)(xy,yx)*(x,y)")],
        &[('x', "(1,x)|(yy,yy)*(x,yy)|(yy,yy)*(yy,yyx)")],
    ),
    explicit("xy=yx", "W-HOM2", "commuting generators", "xy", &[('x', "(1,x)(y,y)*")], &[('y', "(x,x)*(1,y)")]),
    // |u| = 3, monoid
    generic("xxx=1", "W-E3", "cube is trivial", TailSource::Identity, true),
    generic("xxy=1", "W-E3", "single monoid relation", TailSource::Identity, true),
    generic("xyy=1", "W-E3", "single monoid relation", TailSource::Identity, true),
    generic("xyz=1", "W-E3", "single monoid relation", TailSource::Identity, true),
    explicit(
        "xyx=1",
        "W-E3",
        "group-like monoid relation",
        "xy",
        &[('x', "(1,x)(y,y)*|(e,x)|(xy,1)(y,y)*|(xy,e)"), ('y', "(1,y)|(e,y)|(xx,1)|(xx,e)")],
        &[('x', "(1,x)|(e,x)|(xy,1)|(xy,e)"), ('y', "(1,y)|(e,y)|(x,xy)|(xx,1)|(xx,e)")],
    ),
    // |u| = 3, |v| = 1
    explicit(
        "xxx=x",
        "W-31",
        "cube absorption",
        "xy",
        &[('x', "(1,x)|(xx,x)(xx,1)*")],
        &[('x', "(1,x)|(xx,1)*(xx,x)")],
    ),
    explicit("xxx=y", "W-31", "cube as a new generator", "yx", &[('x', "(1,x)|(xx,y)"), ('y', "(1,y)(x,x)*")], NONE),
    generic("xxy=x", "W-31", "non-overlapping rule", TailSource::Nonoverlap, false),
    generic("xxy=y", "W-31", "left absorption", TailSource::Absorb, false),
    generic("xyx=x", "W-31", "left absorption", TailSource::Absorb, false),
    explicit(
        "xyx=y",
        "W-31",
        "central new generator",
        "yx",
        &[('x', "(1,x)|(xy,y)"), ('y', "(1,y)|(1,yy)(x,x)+(y,1)")],
        NONE,
    ),
    generic("xyy=x", "W-31", "non-overlapping rule", TailSource::Nonoverlap, false),
    generic("xyy=y", "W-31", "left absorption", TailSource::Absorb, false),
    // |u| = 3, |v| = 2
    explicit("xxx=xx", "W-32", "cube to square", "xy", &[('x', "(1,x)|(xx,xx)")], &[('x', "(1,x)|(xx,xx)")]),
    explicit("xxx=xy", "W-32", "pumped rule family", "xy", &[('x', "(1,x)|(x,xx)(y,y)+|(xx,xy)(y,y)*")], NONE),
    explicit(
        "xxx=yx",
        "W-32",
        "pumped rule family",
        "yx",
        &[('x', "(1,x)|(x,1)(y,y)*(1,xx)|(xx,1)(y,y)*(1,yx)")],
        NONE,
    ),
    explicit(
        "xxx=yy",
        "W-32",
        "cube equals square",
        "yx",
        &[('x', "(1,x)|(1,yy)[(x,x)|(xy,xy)]*(xx,1)"), ('y', "(1,y)|(1,yy)[(x,x)|(xy,xy)]*(xy,x)")],
        NONE,
    ),
    generic("xxy=xx", "W-32", "non-overlapping rule", TailSource::Nonoverlap, false),
    generic("xxy=xy", "W-32", "left absorption", TailSource::Absorb, false),
    Case {
        pattern: "xxy=yy",
        family: "W-32",
        construction: "padded normal forms, every y followed by e",
        order: "xy",
        tails: TailSource::Explicit { right: &[('y', "(xx,ye)*(1,ye)|(e,ye)")], left: NONE },
        two_sided: false,
        padding: Some(Padding::AfterEach('y')),
        prefix: Some("(ye,y)"),
    },
    explicit("xyx=xx", "W-32", "non-overlapping rule", "xy", &[('x', "(1,x)|(xy,xx)")], NONE),
    explicit("xyx=xy", "W-32", "pumped rule family", "xy", &[('x', "(1,x)|(xy,xy)(y,y)*")], NONE),
    explicit(
        "xyx=yy",
        "W-32",
        "travelling cube",
        "yx",
        &[('x', "(1,x)|(xy,yy)|(1,yyy)[(x,x)|(xyy,xyy)]*(yyxy,y)"), ('y', "(1,y)|(1,yyy)[(x,x)|(xyy,xyy)]*(xyy,x)")],
        NONE,
    ),
    generic("xyy=xx", "W-32", "non-overlapping rule", TailSource::Nonoverlap, false),
    generic("xyy=xy", "W-32", "non-overlapping rule", TailSource::Nonoverlap, false),
    Case {
        pattern: "xyy=yx",
        family: "W-32",
        construction: "padded normal forms, x runs counted",
        order: "xy",
        tails: TailSource::Explicit {
            right: &[('y', "(1,y)|(e,y)|(xy,yx)(xy,xe)*|(xey,yx)(xy,xe)*"), ('x', "(1,x)|(1,xe)|(e,x)")],
            left: NONE,
        },
        two_sided: false,
        padding: Some(Padding::RunTail('x')),
        prefix: Some("(xe,x)"),
    },
    // |u| = |v| = 3
    explicit(
        "xxx=xxy",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('y', "(1,y)|(xx,xxx)")],
        &[('x', "(1,x)|(x,xx)[(y,x)|(xy,xx)]+")],
    ),
    explicit(
        "xxx=xyx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(1,x)|(xy,xxx)")],
        &[('x', "(1,x)|(yx,xxx)")],
    ),
    explicit(
        "xxx=xyy",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('y', "(1,y)|(xy,xxx)")],
        &[('x', "(yy,xx)*(1,x)")],
    ),
    explicit(
        "xxx=yxx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(1,x)|[(y,x)|(yx,xx)]+(x,xx)")],
        &[('y', "(1,y)|(xx,xxx)")],
    ),
    explicit(
        "xxx=yxy",
        "W-HOM3",
        "cube equals conjugated square",
        "xy",
        &[
            ('x', "(1,x)|(1,xxxx)[(y,y)|(yxx,yxx)|(yxxx,yxxx)]*(yxxx,y)"),
            ('y', "(1,y)|(yx,xxx)|(1,xxxx)[(y,y)|(yxx,yxx)|(yxxx,yxxx)]*[(yxx,yx)|(yxxx,yxx)](yx,1)"),
        ],
        &[('y', "(1,y)|(xxxx,xxxx)*(xy,xxx)|(xxxx,xxxx)+(1,y)")],
    ),
    explicit(
        "xxx=yyx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(yy,xx)*(1,x)")],
        &[('y', "(1,y)|(yx,xxx)")],
    ),
    explicit(
        "xxx=yyy",
        "W-HOM3",
        "equal cubes",
        "yx",
        &[
            ('y', "(1,y)|(1,yyy)[(x,x)|(xy,xy)|(xyy,xyy)]*(xyy,x)"),
            ('x', "(1,x)|(xx,yyy)|(1,yyy)[(x,x)|(xy,xy)|(xyy,xyy)]*[(xy,xy)|(xyy,xyy)](xx,1)"),
        ],
        &[('x', "(1,x)|(yyy,yyy)*(xx,yyy)|(yyy,yyy)+(1,x)")],
    ),
    explicit(
        "xxy=xyx",
        "W-HOM3",
        "single homogeneous rule",
        "yx",
        &[('y', "(1,y)|(x,xy)(x,x)+")],
        &[('x', "(1,x)|(xy,xy)+(1,x)")],
    ),
    explicit(
        "xxy=xyy",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('y', "(1,y)|(xy,xxy)")],
        &[('x', "(1,x)|(y,x)+(1,y)")],
    ),
    explicit(
        "xxy=yxx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(1,x)|(1,xx)[(y,y)|(yx,yx)]*(yx,y)")],
        &[('y', "(xx,xx)*(1,y)")],
    ),
    explicit(
        "xxy=yxy",
        "W-HOM3",
        "single homogeneous rule",
        "yx",
        &[('y', "(xx,yx)*(1,y)")],
        &[('x', "(1,x)|(xy,yxy)")],
    ),
    explicit(
        "xxy=yyx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(1,x)|(yy,xxy)(yy,xy)*")],
        &[('y', "(yx,xx)*(1,y)")],
    ),
    explicit(
        "xyx=xyy",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('y', "(1,y)|(xy,xyx)")],
        &[('x', "(yy,xy)*(1,x)")],
    ),
    explicit(
        "xyx=yxx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(yx,xy)*(1,x)")],
        &[('y', "(1,y)|(x,x)*(xx,xyx)")],
    ),
    explicit(
        "xyx=yxy",
        "W-HOM3",
        "braid relation",
        "yx",
        &[
            ('x', "(1,x)|(1,yx)[(x,y)|(xy,yy)(y,x)+(x,x)]*(xy,y)"),
            ('y', "(1,y)|(1,yx)[(x,y)|(xy,yy)(y,x)+(x,x)]*(xy,yy)(y,x)*(x,1)"),
        ],
        &[(
            'x',
            "(1,x)|(y,1)(x,y)+(1,xy)|(y,yxyy)(y,x)+(xy,1)|(yyx,1)(y,y)(y,y)+(1,xyyx)\
             |(y,yyxyyxx)(y,y)*(yxyyx,1)(x,x)*|(yyyxyy,y)(x,y)(x,y)(x,y)+(1,xyyxxy)\
             |(yyyxyyxx,yyyxyyxxy)|(yyxyyxx,yyxyyxxx)\
             |(yy,yyyxyyxxyy)(y,x)(y,x)(y,x)*(yxyyxxy,1)|(yyyyxyyxx,yy)(y,y)+(1,xyyxxyyx)",
        )],
    ),
    explicit(
        "xyy=yxx",
        "W-HOM3",
        "single homogeneous rule",
        "xy",
        &[('x', "(1,x)|(yx,xyy)(yx,yy)*")],
        &[('y', "(1,y)|(xx,xy)*(xx,xyy)")],
    ),
];

pub fn find_case(pattern: &str) -> Option<&'static Case> {
    CASES.iter().find(|c| c.pattern == pattern)
}

/// Splits `u=v` over pattern letters into two words of letter names.
fn pattern_sides(pattern: &str) -> Result<(&str, &str)> {
    let (u, v) =
        pattern.split_once('=').ok_or_else(|| Error::InvalidInput(format!("pattern {pattern:?} needs '='")))?;
    Ok((u, if v == "1" { "" } else { v }))
}

/// Instantiates pattern text with a letter assignment; `e` maps to the
/// identity letter of `alpha` when there is one.
fn instantiate(text: &str, assign: &[(char, Letter)], alpha: &Alphabet) -> Result<String> {
    text.chars()
        .map(|ch| {
            if let Some((_, l)) = assign.iter().find(|(p, _)| *p == ch) {
                Ok(alpha.name(*l))
            } else if ch == 'e' {
                alpha
                    .identity()
                    .map(|e| alpha.name(e))
                    .ok_or_else(|| Error::Contract("tail mentions e but the structure has no identity".into()))
            } else if ch.is_ascii_lowercase() {
                Err(Error::Contract(format!("pattern letter {ch:?} is unassigned")))
            } else {
                Ok(ch)
            }
        })
        .collect()
}

fn word_of(text: &str, assign: &[(char, Letter)]) -> Result<Word> {
    text.chars()
        .map(|ch| {
            assign
                .iter()
                .find(|(p, _)| *p == ch)
                .map(|(_, l)| *l)
                .ok_or_else(|| Error::Contract(format!("pattern letter {ch:?} is unassigned")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// The alphabet reordered so the pattern letters follow `order`, smallest
/// first, with all other letters after them in declaration order.
pub fn case_order(alpha: &Alphabet, order: &str, assign: &[(char, Letter)]) -> Result<Alphabet> {
    let mut seq: Vec<Letter> = Vec::new();
    for ch in order.chars() {
        if let Some((_, l)) = assign.iter().find(|(p, _)| *p == ch) {
            seq.push(*l);
        }
    }
    for l in alpha.letters() {
        if !seq.contains(&l) {
            seq.push(l);
        }
    }
    alpha.with_order(&seq)
}

/// Completed rewriting system of a case under its letter order.
pub fn case_system(case: &Case, alpha: &Alphabet, assign: &[(char, Letter)]) -> Result<RewriteSystem> {
    let ord = case_order(alpha, case.order, assign)?;
    let (u, v) = pattern_sides(case.pattern)?;
    let rel = (word_of(u, assign)?, word_of(v, assign)?);
    let rs = shirshov_complete(&[rel], &ord, CATALOG_MAX_RULES, CATALOG_MAX_LEN)?;
    if !rs.is_complete() {
        return Err(Error::Contract(format!("completion of {} did not finish", case.pattern)));
    }
    Ok(rs)
}

/// Counter machine realising a [`Padding`] over `input`, writing into `out`.
pub fn padding_gsm(p: Padding, input: &Alphabet, out: &Alphabet, assign: &[(char, Letter)]) -> Result<Gsm> {
    let e = out.identity().ok_or_else(|| Error::Contract("padding needs an identity letter".into()))?;
    let marked = |ch: char| {
        assign
            .iter()
            .find(|(p, _)| *p == ch)
            .map(|(_, l)| *l)
            .ok_or_else(|| Error::Contract(format!("pattern letter {ch:?} is unassigned")))
    };
    let letters: Vec<Letter> = input.letters().collect();
    let mut g = Gsm::new(2, letters.clone(), letter_domain(out), 0)?;
    g.set_terminal(0, true);
    g.set_terminal(1, true);
    match p {
        Padding::AfterEach(ch) => {
            let m = marked(ch)?;
            for &c in &letters {
                let w = if c == m { Word(vec![c, e]) } else { Word(vec![c]) };
                g.add_transition(0, c, 0, w.clone())?;
                g.add_transition(1, c, 0, w)?;
            }
        }
        Padding::RunTail(ch) => {
            let m = marked(ch)?;
            for &c in &letters {
                if c == m {
                    g.add_transition(0, c, 1, Word(vec![c]))?;
                    g.add_transition(1, c, 1, Word(vec![c, e]))?;
                } else {
                    g.add_transition(0, c, 0, Word(vec![c]))?;
                    g.add_transition(1, c, 0, Word(vec![c]))?;
                }
            }
        }
    }
    Ok(g)
}

/// (1,c), plus (e,c) when the alphabet has an identity; (1,1) for `e`.
pub fn default_tail(alpha: &Alphabet, c: Letter) -> Relation {
    let one = Word::empty();
    match alpha.identity() {
        Some(e) if e == c => Relation::pair(&one, &one),
        Some(e) => Relation::pair(&one, &Word::letter(c)).or(Relation::pair(&Word::letter(e), &Word::letter(c))),
        None => Relation::pair(&one, &Word::letter(c)),
    }
}

fn default_table(alpha: &Alphabet) -> BTreeMap<Letter, Relation> {
    alpha.letters().map(|c| (c, default_tail(alpha, c))).collect()
}

fn finite_rules(rs: &RewriteSystem) -> Result<Vec<(Word, Word)>> {
    if !rs.schemas().is_empty() {
        return Err(Error::NotApplicable("the system has rule schemas".into()));
    }
    let e = rs.alphabet().identity();
    Ok(rs
        .rules()
        .iter()
        .filter(|r| !(e.is_some() && r.lhs.contains(&e.unwrap()) && r.lhs.len() == 2))
        .map(|r| (r.lhs.clone(), r.rhs.clone()))
        .collect())
}

fn mirror(rules: &[(Word, Word)]) -> Vec<(Word, Word)> {
    rules.iter().map(|(u, v)| (u.reverse(), v.reverse())).collect()
}

fn mirror_table(t: BTreeMap<Letter, Relation>) -> BTreeMap<Letter, Relation> {
    t.into_iter().map(|(c, r)| (c, r.reversed())).collect()
}

/// No nonempty prefix of a right side is a suffix of a left side, so a
/// single rewrite at the end of α·c yields a normal form.
fn nonoverlap_right(rules: &[(Word, Word)], alpha: &Alphabet) -> Result<BTreeMap<Letter, Relation>> {
    for (i, (_, v)) in rules.iter().enumerate() {
        for (j, (u, _)) in rules.iter().enumerate() {
            for t in 1..=v.len().min(u.len()) {
                if v.prefix_t(t) == u.suffix_t(t) {
                    return Err(Error::NotApplicable(format!(
                        "right side of rule {i} overlaps left side of rule {j} at length {t}"
                    )));
                }
            }
        }
    }
    let mut table = default_table(alpha);
    for (u, v) in rules {
        let c = u.last().expect("rules have nonempty left sides");
        let t = Relation::pair(&u.prefix_t(u.len() - 1), v);
        let cur = table.remove(&c).unwrap();
        table.insert(c, cur.or(t));
    }
    Ok(table)
}

/// Tails for systems whose rules do not overlap their own right sides;
/// the right table needs the prefix condition, the left one its mirror.
pub fn nonoverlap_tails(rs: &RewriteSystem, side: Side) -> Result<BTreeMap<Letter, Relation>> {
    let rules = finite_rules(rs)?;
    match side {
        Side::Right => nonoverlap_right(&rules, rs.alphabet()),
        Side::Left => nonoverlap_right(&mirror(&rules), rs.alphabet()).map(mirror_table),
    }
}

fn absorb_right(rules: &[(Word, Word)], alpha: &Alphabet) -> Result<BTreeMap<Letter, Relation>> {
    let mut table = default_table(alpha);
    for (u, v) in rules {
        if v.is_empty() || !u.ends_with(v) || u.len() == v.len() {
            return Err(Error::NotApplicable("a rule's right side is not a proper suffix of its left side".into()));
        }
        let w = u.prefix_t(u.len() - v.len());
        let head = u.prefix_t(u.len() - 1);
        if w.concat(&head) != head.concat(&w) {
            return Err(Error::NotApplicable("absorbed prefix does not commute with the rule head".into()));
        }
        let c = u.last().unwrap();
        let t = Relation::pair(&head, v).then(Relation::pair(&w, &Word::empty()).star());
        let cur = table.remove(&c).unwrap();
        table.insert(c, cur.or(t));
    }
    Ok(table)
}

/// Tails for rules w·v → v: a product ending in wᵏ·v collapses to v.
pub fn absorb_tails(rs: &RewriteSystem, side: Side) -> Result<BTreeMap<Letter, Relation>> {
    let rules = finite_rules(rs)?;
    match side {
        Side::Right => absorb_right(&rules, rs.alphabet()),
        Side::Left => absorb_right(&mirror(&rules), rs.alphabet()).map(mirror_table),
    }
}

fn identity_right(rules: &[(Word, Word)], alpha: &Alphabet) -> Result<BTreeMap<Letter, Relation>> {
    let e = alpha.identity().ok_or_else(|| Error::NotApplicable("no identity letter".into()))?;
    let [(u, v)] = rules else {
        return Err(Error::NotApplicable("expected exactly one relation besides the identity rules".into()));
    };
    if v.as_slice() != [e] {
        return Err(Error::NotApplicable("the relation is not of the form u = 1".into()));
    }
    let mut table = default_table(alpha);
    let c = u.last().unwrap();
    let head = u.prefix_t(u.len() - 1);
    let t = Relation::pair(&head, &Word::empty()).or(Relation::pair(&head, &Word::letter(e)));
    let cur = table.remove(&c).unwrap();
    table.insert(c, cur.or(t));
    Ok(table)
}

/// Tails for a monoid relation u = 1: completing u at the end yields e.
pub fn identity_tails(rs: &RewriteSystem, side: Side) -> Result<BTreeMap<Letter, Relation>> {
    let rules = finite_rules(rs)?;
    match side {
        Side::Right => identity_right(&rules, rs.alphabet()),
        Side::Left => identity_right(&mirror(&rules), rs.alphabet()).map(mirror_table),
    }
}

/// Structure for a rewriting system with no self-overlap of right sides
/// with left sides: rr (and rl) when the prefix condition holds, all four
/// flavors when the suffix condition holds as well.
pub fn construct_generic_nonoverlap(rs: &RewriteSystem) -> Result<AutomaticStructure> {
    if !rs.is_complete() {
        return Err(Error::Contract("generic construction needs a complete system".into()));
    }
    let right = nonoverlap_tails(rs, Side::Right)?;
    let (left, flavors) = match nonoverlap_tails(rs, Side::Left) {
        Ok(l) => (l, Flavor::ALL.to_vec()),
        Err(_) => (BTreeMap::new(), vec![Flavor::Rr, Flavor::Lr]),
    };
    let tails = TailTable { right, left, prefix: None };
    let language = rs.irr_language();
    let provenance = Provenance { case_id: "W-GEN".into(), construction: "non-overlapping rules".into() };
    let mut s = assemble(rs.alphabet(), language, Model::plain(rs.clone()), &tails, &flavors, provenance)?;
    s.restrict_flavors(&flavors);
    Ok(s)
}

fn explicit_table(
    entries: &[(char, &str)],
    alpha: &Alphabet,
    assign: &[(char, Letter)],
) -> Result<BTreeMap<Letter, Relation>> {
    let mut table = default_table(alpha);
    for (ch, text) in entries {
        let c = word_of(&ch.to_string(), assign)?[0];
        table.insert(c, Relation::parse(&instantiate(text, assign, alpha)?, alpha)?);
    }
    Ok(table)
}

/// Builds the witness of `case` for the letter assignment, declaring
/// `flavors` (each must be supported by the case).
pub fn build_case(
    case: &Case,
    alpha: &Alphabet,
    assign: &[(char, Letter)],
    flavors: &[Flavor],
) -> Result<AutomaticStructure> {
    if !case.two_sided && flavors.iter().any(|f| f.mult() == Side::Left) {
        return Err(Error::Contract(format!("case {} has no left-multiplication tails", case.pattern)));
    }
    let rs = case_system(case, alpha, assign)?;
    let (struct_alpha, language, model) = match case.padding {
        None => {
            let a = rs.alphabet().clone();
            let l = rs.irr_language();
            (a, l, Model::plain(rs.clone()))
        }
        Some(p) => {
            let b = rs.alphabet().with_identity()?;
            let e = b.identity().unwrap();
            let g = padding_gsm(p, rs.alphabet(), &b, assign)?;
            let k = gsm_image(&g, &rs.irr_language())?.union(&Fsa::word(letter_domain(&b), &[e]))?.minimize().trim();
            let model = Model { rewriting: rs.clone(), adjoined: Some(e), gsm: Some(g), reversed: false };
            (b, k, model)
        }
    };
    let (right, left) = match case.tails {
        TailSource::Explicit { right, left } => {
            (explicit_table(right, &struct_alpha, assign)?, explicit_table(left, &struct_alpha, assign)?)
        }
        TailSource::Nonoverlap => {
            (nonoverlap_tails(&rs, Side::Right)?, nonoverlap_tails(&rs, Side::Left).unwrap_or_default())
        }
        TailSource::Absorb => (absorb_tails(&rs, Side::Right)?, absorb_tails(&rs, Side::Left).unwrap_or_default()),
        TailSource::Identity => (identity_tails(&rs, Side::Right)?, identity_tails(&rs, Side::Left)?),
    };
    let prefix = match case.prefix {
        Some(t) => Some(Relation::parse(&instantiate(t, assign, &struct_alpha)?, &struct_alpha)?),
        None => None,
    };
    let tails = TailTable { right, left, prefix };
    let provenance = Provenance {
        case_id: format!("{}:{}", case.family, case.pattern),
        construction: case.construction.to_string(),
    };
    assemble(&struct_alpha, language, model, &tails, flavors, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::verify_structure;

    fn ab() -> (Alphabet, Vec<(char, Letter)>) {
        let a = Alphabet::new(&['a', 'b']).unwrap();
        let assign = vec![('x', a.letter('a').unwrap()), ('y', a.letter('b').unwrap())];
        (a, assign)
    }

    #[test]
    fn every_case_pattern_is_unique() {
        let mut seen = std::collections::HashSet::new();
        for c in CASES {
            assert!(seen.insert(c.pattern), "duplicate {}", c.pattern);
        }
    }

    #[test]
    fn tails_instantiate_with_swapped_names() {
        let a = Alphabet::new(&['x', 'y']).unwrap();
        let assign = vec![('x', a.letter('y').unwrap()), ('y', a.letter('x').unwrap())];
        assert_eq!(instantiate("(xy,yx)", &assign, &a).unwrap(), "(yx,xy)");
    }

    #[test]
    fn nonoverlap_rejects_absorbing_rule() {
        let (a, _) = ab();
        let rs = shirshov_complete(&[(a.w("ab"), a.w("b"))], &a, 8, 8).unwrap();
        assert!(matches!(nonoverlap_tails(&rs, Side::Right), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn generic_nonoverlap_for_distinct_letters() {
        let a = Alphabet::new(&['a', 'b', 'c']).unwrap();
        let rs = shirshov_complete(&[(a.w("ab"), a.w("c"))], &a, 8, 8).unwrap();
        let s = construct_generic_nonoverlap(&rs).unwrap();
        assert!(s.is_biautomatic());
        assert!(verify_structure(&s, 6).unwrap().passed());
    }

    #[test]
    fn commuting_case_verifies() {
        let (a, assign) = ab();
        let s = build_case(find_case("xy=yx").unwrap(), &a, &assign, &Flavor::ALL).unwrap();
        assert!(verify_structure(&s, 6).unwrap().passed());
    }

    #[test]
    fn padded_case_verifies() {
        let (a, assign) = ab();
        let s = build_case(find_case("xxy=yy").unwrap(), &a, &assign, &[Flavor::Rr]).unwrap();
        let report = verify_structure(&s, 6).unwrap();
        assert!(report.passed(), "{}", report.render(&s.alphabet));
    }
}
