//! Padded pair symbols, the two convolutions, and the regular combinators
//! used to write multiplier languages.
//!
//! Pair relations are handled internally as two-tape automata whose edges
//! read at most one letter per tape. A synchronizer turns such an automaton
//! back into a convolution language by buffering the letters of the tape
//! that runs ahead; the buffer length is the length-difference bound.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::words::{Alphabet, Letter, Word};

/// A symbol of A(2,$); `None` is the padding symbol `$`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PairSymbol {
    pub left: Option<Letter>,
    pub right: Option<Letter>,
}

impl PairSymbol {
    pub fn new(left: Option<Letter>, right: Option<Letter>) -> Result<Self> {
        if left.is_none() && right.is_none() {
            return Err(Error::InvalidInput("($,$) is not a pair symbol".into()));
        }
        Ok(PairSymbol { left, right })
    }

    pub fn is_padded(&self) -> bool {
        self.left.is_none() || self.right.is_none()
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        let f = |x: Option<Letter>| x.map(|l| alpha.name(l)).unwrap_or('$');
        format!("{}|{}", f(self.left), f(self.right))
    }
}

/// Which end of the shorter word receives the padding.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    /// δ^R: left-aligned, trailing padding.
    Right,
    /// δ^L: right-aligned, leading padding.
    Left,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "R",
            Side::Left => "L",
        })
    }
}

pub type PairFsa = Fsa<PairSymbol>;

/// Letters of the alphabet in deg-lex order, the domain of letter automata.
pub fn letter_domain(alpha: &Alphabet) -> Vec<Letter> {
    alpha.ordered()
}

/// All symbols of A(2,$), letter pairs first.
pub fn pair_domain(alpha: &Alphabet) -> Vec<PairSymbol> {
    let letters = alpha.ordered();
    let mut out = Vec::new();
    for &x in &letters {
        for &y in &letters {
            out.push(PairSymbol { left: Some(x), right: Some(y) });
        }
    }
    for &x in &letters {
        out.push(PairSymbol { left: Some(x), right: None });
    }
    for &y in &letters {
        out.push(PairSymbol { left: None, right: Some(y) });
    }
    out
}

pub fn convolve(u: &[Letter], v: &[Letter], side: Side) -> Result<Vec<PairSymbol>> {
    if u.is_empty() && v.is_empty() {
        return Err(Error::InvalidInput("(ε, ε) has no convolution".into()));
    }
    let n = u.len().max(v.len());
    let pad = |w: &[Letter], i: usize| -> Option<Letter> {
        match side {
            Side::Right => w.get(i).copied(),
            Side::Left => {
                let off = n - w.len();
                if i < off {
                    None
                } else {
                    Some(w[i - off])
                }
            }
        }
    };
    Ok((0..n).map(|i| PairSymbol { left: pad(u, i), right: pad(v, i) }).collect())
}

/// δ^R(u, v).
pub fn convolve_right(u: &[Letter], v: &[Letter]) -> Result<Vec<PairSymbol>> {
    convolve(u, v, Side::Right)
}

/// δ^L(u, v).
pub fn convolve_left(u: &[Letter], v: &[Letter]) -> Result<Vec<PairSymbol>> {
    convolve(u, v, Side::Left)
}

/// Inverse of [`convolve`]; rejects misplaced padding.
pub fn unconvolve(p: &[PairSymbol], side: Side) -> Result<(Word, Word)> {
    if p.is_empty() {
        return Err(Error::InvalidInput("empty convolution would denote (ε, ε)".into()));
    }
    let mut u = Vec::new();
    let mut v = Vec::new();
    let check = |col: &mut dyn Iterator<Item = Option<Letter>>| -> Result<Vec<Letter>> {
        let col: Vec<Option<Letter>> = col.collect();
        let ok = match side {
            Side::Right => col.iter().skip_while(|x| x.is_some()).all(|x| x.is_none()),
            Side::Left => col.iter().skip_while(|x| x.is_none()).all(|x| x.is_some()),
        };
        if !ok {
            return Err(Error::InvalidInput("padding in the wrong position".into()));
        }
        Ok(col.into_iter().flatten().collect())
    };
    if p.iter().any(|s| s.left.is_none() && s.right.is_none()) {
        return Err(Error::InvalidInput("($,$) in convolution".into()));
    }
    u.extend(check(&mut p.iter().map(|s| s.left))?);
    v.extend(check(&mut p.iter().map(|s| s.right))?);
    if p.iter().any(|s| s.left.is_none()) && p.iter().any(|s| s.right.is_none()) {
        return Err(Error::InvalidInput("padding on both sides".into()));
    }
    Ok((Word(u), Word(v)))
}

/// Renders a pair word as `x|y x|y ...`.
pub fn render_pairs(p: &[PairSymbol], alpha: &Alphabet) -> String {
    p.iter().map(|s| s.render(alpha)).collect::<Vec<_>>().join(" ")
}

/// Δ_L = {(α, α)δ | α ∈ L}; the same language for both sides.
pub fn diagonal(l: &Fsa<Letter>, alpha: &Alphabet) -> PairFsa {
    l.map_symbols(pair_domain(alpha), |x| PairSymbol { left: Some(x), right: Some(x) })
}

/// The singleton {(u, v)δ}; (ε, ε) denotes the neutral language {ε}.
pub fn pair_const(u: &Word, v: &Word, side: Side, alpha: &Alphabet) -> PairFsa {
    if u.is_empty() && v.is_empty() {
        return Fsa::epsilon(pair_domain(alpha));
    }
    Fsa::word(pair_domain(alpha), &convolve(u, v, side).expect("nonempty pair"))
}

/// All valid nonempty convolutions for `side`.
pub fn valid_convolutions(alpha: &Alphabet, side: Side) -> PairFsa {
    let dom = pair_domain(alpha);
    let mut m = Fsa::new(dom.clone());
    let start = m.add_state(false);
    let both = m.add_state(true);
    let left_only = m.add_state(true);
    let right_only = m.add_state(true);
    m.set_initial(start);
    for s in dom {
        match (s.left, s.right) {
            (Some(_), Some(_)) => {
                m.add_transition(start, Some(s), both);
                m.add_transition(both, Some(s), both);
            }
            (Some(_), None) => {
                for q in [start, both, left_only] {
                    m.add_transition(q, Some(s), left_only);
                }
            }
            (None, Some(_)) => {
                for q in [start, both, right_only] {
                    m.add_transition(q, Some(s), right_only);
                }
            }
            (None, None) => {}
        }
    }
    match side {
        Side::Right => m,
        Side::Left => m.reverse(),
    }
}

/// Restricts `m` to valid convolutions for `side`, keeping ε as the neutral pair.
pub fn restrict_valid(m: &PairFsa, side: Side, alpha: &Alphabet) -> Result<PairFsa> {
    let valid = valid_convolutions(alpha, side).union(&Fsa::epsilon(pair_domain(alpha)))?;
    Ok(m.intersect(&valid)?.trim())
}

/// Minimal deterministic automaton without the sink state.
pub fn compact(m: &PairFsa) -> PairFsa {
    m.minimize().trim()
}

/// Longest padding run among the valid convolutions accepted by `m`
/// (`None` when unbounded). This is the largest length difference |α|−|β|
/// in absolute value over the accepted pairs.
pub fn max_padding(m: &PairFsa, side: Side, alpha: &Alphabet) -> Result<Option<usize>> {
    let r = restrict_valid(m, side, alpha)?.remove_epsilon().trim();
    let n = r.num_states();
    if r.is_empty() {
        return Ok(Some(0));
    }
    // a padded edge on a cycle means unbounded padding
    for q in 0..n {
        for &(s, d) in r.transitions(q) {
            if s.map(|s| s.is_padded()).unwrap_or(false) && reaches(&r, d, q) {
                return Ok(None);
            }
        }
    }
    let mut best = vec![i64::MIN; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &i in r.initial_states() {
        best[i] = 0;
        queue.push_back(i);
    }
    while let Some(q) = queue.pop_front() {
        for &(s, d) in r.transitions(q) {
            let w = best[q] + s.map(|s| s.is_padded() as i64).unwrap_or(0);
            if w > best[d] {
                best[d] = w;
                queue.push_back(d);
            }
        }
    }
    Ok(Some((0..n).filter(|&q| r.is_accepting(q)).map(|q| best[q].max(0) as usize).max().unwrap_or(0)))
}

fn reaches(m: &PairFsa, from: usize, to: usize) -> bool {
    let mut seen = vec![false; m.num_states()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(q) = stack.pop() {
        if q == to {
            return true;
        }
        for &(_, d) in m.transitions(q) {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    false
}

/// Search state (automaton state, padding run) -> predecessor and symbol.
type Trail = HashMap<(usize, usize), Option<((usize, usize), PairSymbol)>>;

/// A shortest accepted pair whose length difference exceeds `bound`.
pub fn padding_violation(m: &PairFsa, side: Side, bound: usize, alpha: &Alphabet) -> Result<Option<(Word, Word)>> {
    let r = restrict_valid(m, side, alpha)?.remove_epsilon();
    let cap = bound + 1;
    let mut parent: Trail = HashMap::new();
    let mut queue = VecDeque::new();
    for &i in r.initial_states() {
        parent.insert((i, 0), None);
        queue.push_back((i, 0));
    }
    while let Some((q, k)) = queue.pop_front() {
        if k > bound && r.is_accepting(q) {
            let mut w = Vec::new();
            let mut cur = (q, k);
            while let Some(Some((prev, s))) = parent.get(&cur) {
                w.push(*s);
                cur = *prev;
            }
            w.reverse();
            return unconvolve(&w, side).map(Some);
        }
        for &(s, d) in r.transitions(q) {
            let s = s.expect("ε removed");
            let k2 = (k + s.is_padded() as usize).min(cap);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry((d, k2)) {
                e.insert(Some(((q, k), s)));
                queue.push_back((d, k2));
            }
        }
    }
    Ok(None)
}

fn audit_bound(m: &PairFsa, side: Side, bound: usize, alpha: &Alphabet, what: &str) -> Result<()> {
    if let Some((u, v)) = padding_violation(m, side, bound, alpha)? {
        return Err(Error::Contract(format!(
            "{what}: pair ({}, {}) has length difference {} above the declared bound {bound}",
            alpha.render(&u),
            alpha.render(&v),
            u.len().abs_diff(v.len())
        )));
    }
    Ok(())
}

/// Letters read from the two tapes (either may be absent) and the target.
type TapeEdge = (Option<Letter>, Option<Letter>, usize);

/// Automaton reading two tapes, at most one letter from each per edge.
#[derive(Clone, Debug)]
struct TwoTape {
    initial: Vec<usize>,
    accepting: Vec<bool>,
    edges: Vec<Vec<TapeEdge>>,
}

impl TwoTape {
    fn from_pairs(m: &PairFsa) -> TwoTape {
        let n = m.num_states();
        let mut edges = vec![Vec::new(); n];
        for (q, e) in edges.iter_mut().enumerate() {
            for &(s, d) in m.transitions(q) {
                match s {
                    Some(s) => e.push((s.left, s.right, d)),
                    None => e.push((None, None, d)),
                }
            }
        }
        TwoTape { initial: m.initial_states().to_vec(), accepting: (0..n).map(|q| m.is_accepting(q)).collect(), edges }
    }

    fn concat(&self, other: &TwoTape) -> TwoTape {
        let off = self.accepting.len();
        let mut t = self.clone();
        for q in 0..off {
            if t.accepting[q] {
                t.accepting[q] = false;
                for &i in &other.initial {
                    t.edges[q].push((None, None, i + off));
                }
            }
        }
        t.accepting.extend_from_slice(&other.accepting);
        for e in &other.edges {
            t.edges.push(e.iter().map(|&(l, r, d)| (l, r, d + off)).collect());
        }
        t
    }

    fn reverse(&self) -> TwoTape {
        let n = self.accepting.len();
        let mut edges = vec![Vec::new(); n];
        for q in 0..n {
            for &(l, r, d) in &self.edges[q] {
                edges[d].push((l, r, q));
            }
        }
        TwoTape {
            initial: (0..n).filter(|&q| self.accepting[q]).collect(),
            accepting: (0..n).map(|q| self.initial.contains(&q)).collect(),
            edges,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Buffer {
    Empty,
    Left(Vec<Letter>),
    Right(Vec<Letter>),
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
enum Mode {
    Open,
    /// The left tape is exhausted; only right letters remain.
    LeftDone,
    /// The right tape is exhausted; only left letters remain.
    RightDone,
}

/// Right-convolution language of the relation of `t`, keeping at most
/// `bound` letters buffered while both tapes are still open.
fn sync_right(t: &TwoTape, bound: usize, alpha: &Alphabet) -> PairFsa {
    let mut m = Fsa::new(pair_domain(alpha));
    let mut index: HashMap<(usize, Buffer, Mode), usize> = HashMap::new();
    let mut queue: VecDeque<(usize, Buffer, Mode)> = VecDeque::new();
    fn get(
        m: &mut PairFsa,
        index: &mut HashMap<(usize, Buffer, Mode), usize>,
        queue: &mut VecDeque<(usize, Buffer, Mode)>,
        t: &TwoTape,
        key: (usize, Buffer, Mode),
    ) -> usize {
        if let Some(&id) = index.get(&key) {
            return id;
        }
        let id = m.add_state(t.accepting[key.0] && key.1 == Buffer::Empty);
        index.insert(key.clone(), id);
        queue.push_back(key);
        id
    }
    fn chain(m: &mut PairFsa, src: usize, syms: &[PairSymbol], dst: usize) {
        if syms.is_empty() {
            m.add_transition(src, None, dst);
            return;
        }
        let mut cur = src;
        for (i, &s) in syms.iter().enumerate() {
            let next = if i + 1 == syms.len() { dst } else { m.add_state(false) };
            m.add_transition(cur, Some(s), next);
            cur = next;
        }
    }
    for &i in &t.initial {
        let id = get(&mut m, &mut index, &mut queue, t, (i, Buffer::Empty, Mode::Open));
        m.set_initial(id);
    }
    while let Some(key) = queue.pop_front() {
        let src = index[&key];
        let (q, buf, mode) = key;
        match mode {
            Mode::Open => {
                let (lq, rq) = match &buf {
                    Buffer::Empty => (vec![], vec![]),
                    Buffer::Left(v) => (v.clone(), vec![]),
                    Buffer::Right(v) => (vec![], v.clone()),
                };
                for &(l, r, d) in &t.edges[q] {
                    let mut lq = lq.clone();
                    let mut rq = rq.clone();
                    lq.extend(l);
                    rq.extend(r);
                    let k = lq.len().min(rq.len());
                    let emitted: Vec<PairSymbol> =
                        (0..k).map(|i| PairSymbol { left: Some(lq[i]), right: Some(rq[i]) }).collect();
                    lq.drain(..k);
                    rq.drain(..k);
                    if lq.len() > bound || rq.len() > bound {
                        continue;
                    }
                    let nb = if !lq.is_empty() {
                        Buffer::Left(lq)
                    } else if !rq.is_empty() {
                        Buffer::Right(rq)
                    } else {
                        Buffer::Empty
                    };
                    let dst = get(&mut m, &mut index, &mut queue, t, (d, nb, Mode::Open));
                    chain(&mut m, src, &emitted, dst);
                }
                if !matches!(buf, Buffer::Right(_)) {
                    let flush: Vec<PairSymbol> =
                        lq.iter().map(|&x| PairSymbol { left: Some(x), right: None }).collect();
                    let dst = get(&mut m, &mut index, &mut queue, t, (q, Buffer::Empty, Mode::RightDone));
                    chain(&mut m, src, &flush, dst);
                }
                if !matches!(buf, Buffer::Left(_)) {
                    let flush: Vec<PairSymbol> =
                        rq.iter().map(|&y| PairSymbol { left: None, right: Some(y) }).collect();
                    let dst = get(&mut m, &mut index, &mut queue, t, (q, Buffer::Empty, Mode::LeftDone));
                    chain(&mut m, src, &flush, dst);
                }
            }
            Mode::RightDone | Mode::LeftDone => {
                for &(l, r, d) in &t.edges[q] {
                    let sym = match (mode, l, r) {
                        (_, None, None) => None,
                        (Mode::RightDone, Some(x), None) => Some(PairSymbol { left: Some(x), right: None }),
                        (Mode::LeftDone, None, Some(y)) => Some(PairSymbol { left: None, right: Some(y) }),
                        _ => continue,
                    };
                    let dst = get(&mut m, &mut index, &mut queue, t, (d, Buffer::Empty, mode));
                    m.add_transition(src, sym, dst);
                }
            }
        }
    }
    m.trim()
}

fn sync_left(t: &TwoTape, bound: usize, alpha: &Alphabet) -> PairFsa {
    sync_right(&t.reverse(), bound, alpha).reverse()
}

fn sync(t: &TwoTape, bound: usize, side: Side, alpha: &Alphabet) -> PairFsa {
    match side {
        Side::Right => sync_right(t, bound, alpha),
        Side::Left => sync_left(t, bound, alpha),
    }
}

/// M⊙N for right convolutions: {(w1w1′, w2w2′)δ^R | (w1,w2)δ^R ∈ M, (w1′,w2′)δ^R ∈ N}.
/// Every pair of `m` must have length difference at most `bound`.
pub fn odot_right(m: &PairFsa, n: &PairFsa, bound: usize, alpha: &Alphabet) -> Result<PairFsa> {
    relation_concat(m, n, bound, Side::Right, alpha)
}

fn relation_concat(m: &PairFsa, n: &PairFsa, bound: usize, side: Side, alpha: &Alphabet) -> Result<PairFsa> {
    let mv = restrict_valid(m, side, alpha)?;
    let nv = restrict_valid(n, side, alpha)?;
    audit_bound(&mv, side, bound, alpha, "left operand of ⊙")?;
    let t = TwoTape::from_pairs(&mv).concat(&TwoTape::from_pairs(&nv));
    Ok(compact(&sync(&t, bound, side, alpha)))
}

/// M⊙′N for left convolutions, computed by swapping both operands to the
/// right convolution, taking ⊙ there, and swapping the result back.
pub fn odot_left(m: &PairFsa, n: &PairFsa, bound: usize, bound_right: usize, alpha: &Alphabet) -> Result<PairFsa> {
    let mr = swap_side(m, bound, Side::Left, alpha)?;
    let nr = swap_side(n, bound_right, Side::Left, alpha)?;
    let r = odot_right(&mr, &nr, bound, alpha)?;
    swap_side(&r, bound + bound_right, Side::Right, alpha)
}

/// The same pair relation written with the opposite convolution.
pub fn swap_side(m: &PairFsa, k: usize, from: Side, alpha: &Alphabet) -> Result<PairFsa> {
    let mv = restrict_valid(m, from, alpha)?;
    audit_bound(&mv, from, k, alpha, "swap_side operand")?;
    let t = TwoTape::from_pairs(&mv);
    Ok(compact(&sync(&t, k, from.opposite(), alpha)))
}

/// (L1 × L2)δ: all convolutions of pairs with α ∈ L1 and β ∈ L2.
pub fn pair_product(l1: &Fsa<Letter>, l2: &Fsa<Letter>, side: Side, alpha: &Alphabet) -> Result<PairFsa> {
    if side == Side::Left {
        return Ok(pair_product(&l1.reverse(), &l2.reverse(), Side::Right, alpha)?.reverse());
    }
    let a = l1.remove_epsilon();
    let b = l2.remove_epsilon();
    // mode 0: both tapes open, 1: only left continues, 2: only right continues
    let mut m = Fsa::new(pair_domain(alpha));
    let mut index: HashMap<(usize, usize, u8), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut get = |m: &mut PairFsa, queue: &mut VecDeque<(usize, usize, u8)>, key: (usize, usize, u8)| -> usize {
        *index.entry(key).or_insert_with(|| {
            queue.push_back(key);
            m.add_state(a.is_accepting(key.0) && b.is_accepting(key.1))
        })
    };
    for &i in a.initial_states() {
        for &j in b.initial_states() {
            let id = get(&mut m, &mut queue, (i, j, 0));
            m.set_initial(id);
        }
    }
    while let Some((p, q, mode)) = queue.pop_front() {
        let src = get(&mut m, &mut queue, (p, q, mode));
        if mode == 0 {
            for &(x, p2) in a.transitions(p) {
                for &(y, q2) in b.transitions(q) {
                    let dst = get(&mut m, &mut queue, (p2, q2, 0));
                    m.add_transition(src, Some(PairSymbol { left: x, right: y }), dst);
                }
            }
        }
        if mode != 2 && b.is_accepting(q) {
            for &(x, p2) in a.transitions(p) {
                let dst = get(&mut m, &mut queue, (p2, q, 1));
                m.add_transition(src, Some(PairSymbol { left: x, right: None }), dst);
            }
        }
        if mode != 1 && a.is_accepting(p) {
            for &(y, q2) in b.transitions(q) {
                let dst = get(&mut m, &mut queue, (p, q2, 2));
                m.add_transition(src, Some(PairSymbol { left: None, right: y }), dst);
            }
        }
    }
    let m = m.intersect(&Fsa::universe_plus(pair_domain(alpha)))?;
    Ok(m.trim())
}

/// Accepted convolutions of `m` as pairs, with |α| ≤ `max_left` and
/// |β| ≤ `max_right`. Invalid convolutions are returned as errors in place.
pub fn enumerate_pairs(
    m: &PairFsa,
    side: Side,
    max_left: usize,
    max_right: usize,
) -> Vec<std::result::Result<(Word, Word), Vec<PairSymbol>>> {
    let mut out = Vec::new();
    let count = |w: &[PairSymbol]| -> (usize, usize) {
        (w.iter().filter(|s| s.left.is_some()).count(), w.iter().filter(|s| s.right.is_some()).count())
    };
    m.walk(
        max_left.max(max_right),
        |w| {
            let (l, r) = count(w);
            l <= max_left && r <= max_right
        },
        |w| match unconvolve(w, side) {
            Ok(p) => out.push(Ok(p)),
            Err(_) => out.push(Err(w.to_vec())),
        },
    );
    out
}

/// Rational two-tape expressions: pair relations written without regard to
/// convolution. [`synchronize`] turns one into a convolution language.
#[derive(Clone, Debug)]
pub enum Relation {
    Pair(Word, Word),
    /// {(α, α) | α ∈ L}.
    Diag(Fsa<Letter>),
    Concat(Vec<Relation>),
    Union(Vec<Relation>),
    Star(Box<Relation>),
    Plus(Box<Relation>),
}

impl Relation {
    pub fn pair(u: &Word, v: &Word) -> Self {
        Relation::Pair(u.clone(), v.clone())
    }

    pub fn then(self, other: Relation) -> Self {
        match self {
            Relation::Concat(mut v) => {
                v.push(other);
                Relation::Concat(v)
            }
            e => Relation::Concat(vec![e, other]),
        }
    }

    pub fn or(self, other: Relation) -> Self {
        match self {
            Relation::Union(mut v) => {
                v.push(other);
                Relation::Union(v)
            }
            e => Relation::Union(vec![e, other]),
        }
    }

    pub fn star(self) -> Self {
        Relation::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        Relation::Plus(Box::new(self))
    }

    /// Parses `(u,v)` pairs (`1` is ε) combined by juxtaposition, `|`,
    /// postfix `*` and `+`, and `[ … ]` grouping, e.g. `(1,b) | (aa,b)(aa,1)*`.
    pub fn parse(text: &str, alpha: &Alphabet) -> Result<Relation> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let r = parse_union(&chars, &mut pos, alpha)?;
        if pos != chars.len() {
            return Err(Error::InvalidInput(format!("unexpected {:?} in relation {text:?}", chars[pos])));
        }
        Ok(r)
    }

    /// All pairs whose words have length at most `max_len`.
    pub fn pairs_up_to(&self, max_len: usize) -> Vec<(Word, Word)> {
        let t = self.tape();
        let mut out = std::collections::BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<(usize, Vec<Letter>, Vec<Letter>)> =
            t.initial.iter().map(|&q| (q, Vec::new(), Vec::new())).collect();
        while let Some((q, l, r)) = stack.pop() {
            if !seen.insert((q, l.clone(), r.clone())) {
                continue;
            }
            if t.accepting[q] {
                out.insert((Word(l.clone()), Word(r.clone())));
            }
            for &(x, y, d) in &t.edges[q] {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                l2.extend(x);
                r2.extend(y);
                if l2.len() <= max_len && r2.len() <= max_len {
                    stack.push((d, l2, r2));
                }
            }
        }
        out.into_iter().collect()
    }

    /// The relation {(u^rev, v^rev)}.
    pub fn reversed(&self) -> Relation {
        match self {
            Relation::Pair(u, v) => Relation::Pair(u.reverse(), v.reverse()),
            Relation::Diag(l) => Relation::Diag(l.reverse()),
            Relation::Concat(parts) => Relation::Concat(parts.iter().rev().map(Relation::reversed).collect()),
            Relation::Union(parts) => Relation::Union(parts.iter().map(Relation::reversed).collect()),
            Relation::Star(x) => Relation::Star(Box::new(x.reversed())),
            Relation::Plus(x) => Relation::Plus(Box::new(x.reversed())),
        }
    }

    /// Applies a letter map to both tapes.
    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter, domain: &[Letter]) -> Relation {
        let w = |x: &Word| Word(x.iter().map(|&l| f(l)).collect());
        match self {
            Relation::Pair(u, v) => Relation::Pair(w(u), w(v)),
            Relation::Diag(l) => Relation::Diag(l.map_symbols(domain.to_vec(), f)),
            Relation::Concat(parts) => Relation::Concat(parts.iter().map(|p| p.map_letters(f, domain)).collect()),
            Relation::Union(parts) => Relation::Union(parts.iter().map(|p| p.map_letters(f, domain)).collect()),
            Relation::Star(x) => Relation::Star(Box::new(x.map_letters(f, domain))),
            Relation::Plus(x) => Relation::Plus(Box::new(x.map_letters(f, domain))),
        }
    }

    fn tape(&self) -> TwoTape {
        match self {
            Relation::Pair(u, v) => {
                let n = u.len().max(v.len());
                let mut edges = vec![Vec::new(); n + 1];
                for (i, e) in edges.iter_mut().enumerate().take(n) {
                    e.push((u.get(i).copied(), v.get(i).copied(), i + 1));
                }
                let mut accepting = vec![false; n + 1];
                accepting[n] = true;
                TwoTape { initial: vec![0], accepting, edges }
            }
            Relation::Diag(l) => {
                let l = l.remove_epsilon();
                let n = l.num_states();
                let edges = (0..n).map(|q| l.transitions(q).iter().map(|&(s, d)| (s, s, d)).collect()).collect();
                TwoTape {
                    initial: l.initial_states().to_vec(),
                    accepting: (0..n).map(|q| l.is_accepting(q)).collect(),
                    edges,
                }
            }
            Relation::Concat(parts) => {
                let mut t = TwoTape { initial: vec![0], accepting: vec![true], edges: vec![Vec::new()] };
                for p in parts {
                    t = t.concat(&p.tape());
                }
                t
            }
            Relation::Union(parts) => {
                let mut t = TwoTape { initial: vec![], accepting: vec![], edges: vec![] };
                for p in parts {
                    let x = p.tape();
                    let off = t.accepting.len();
                    t.initial.extend(x.initial.iter().map(|q| q + off));
                    t.accepting.extend_from_slice(&x.accepting);
                    for e in &x.edges {
                        t.edges.push(e.iter().map(|&(l, r, d)| (l, r, d + off)).collect());
                    }
                }
                t
            }
            Relation::Star(x) => {
                let x = x.tape();
                let mut t = TwoTape { initial: vec![0], accepting: vec![true], edges: vec![Vec::new()] };
                for &i in &x.initial {
                    t.edges[0].push((None, None, i + 1));
                }
                for (q, e) in x.edges.iter().enumerate() {
                    let mut e: Vec<_> = e.iter().map(|&(l, r, d)| (l, r, d + 1)).collect();
                    if x.accepting[q] {
                        e.push((None, None, 0));
                    }
                    t.edges.push(e);
                    t.accepting.push(false);
                }
                t
            }
            Relation::Plus(x) => {
                let x = (**x).clone();
                Relation::Concat(vec![x.clone(), x.star()]).tape()
            }
        }
    }
}

fn parse_union(c: &[char], pos: &mut usize, alpha: &Alphabet) -> Result<Relation> {
    let mut alts = vec![parse_concat(c, pos, alpha)?];
    while *pos < c.len() && c[*pos] == '|' {
        *pos += 1;
        alts.push(parse_concat(c, pos, alpha)?);
    }
    Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Relation::Union(alts) })
}

fn parse_concat(c: &[char], pos: &mut usize, alpha: &Alphabet) -> Result<Relation> {
    let mut parts = Vec::new();
    while *pos < c.len() && (c[*pos] == '(' || c[*pos] == '[') {
        let mut atom = if c[*pos] == '(' {
            let close =
                c[*pos..].iter().position(|&x| x == ')').ok_or_else(|| Error::InvalidInput("unclosed pair".into()))?;
            let body: String = c[*pos + 1..*pos + close].iter().collect();
            *pos += close + 1;
            let (u, v) = body.split_once(',').ok_or_else(|| Error::InvalidInput(format!("pair {body:?} needs ','")))?;
            Relation::Pair(alpha.parse_word(u)?, alpha.parse_word(v)?)
        } else {
            *pos += 1;
            let inner = parse_union(c, pos, alpha)?;
            if *pos >= c.len() || c[*pos] != ']' {
                return Err(Error::InvalidInput("unclosed '['".into()));
            }
            *pos += 1;
            inner
        };
        while *pos < c.len() && (c[*pos] == '*' || c[*pos] == '+') {
            atom = if c[*pos] == '*' { atom.star() } else { atom.plus() };
            *pos += 1;
        }
        parts.push(atom);
    }
    match parts.len() {
        0 => Err(Error::InvalidInput("empty relation term".into())),
        1 => Ok(parts.pop().unwrap()),
        _ => Ok(Relation::Concat(parts)),
    }
}

/// Convolution language of a rational relation. While both tapes are
/// open at most `bound` letters are buffered, in reading order (left to
/// right for δ^R, right to left for δ^L); pairs needing more are lost, so
/// `bound` must cover the relation's delay in that direction.
pub fn synchronize(r: &Relation, bound: usize, side: Side, alpha: &Alphabet) -> PairFsa {
    compact(&sync(&r.tape(), bound, side, alpha))
}

/// Combinator trees denoting pair languages.
#[derive(Clone, Debug)]
pub enum PaddedExpr {
    /// Δ_L.
    Diag(Fsa<Letter>),
    /// The singleton {(u, v)δ}.
    PairConst(Word, Word, Side),
    Concat(Vec<PaddedExpr>),
    Union(Vec<PaddedExpr>),
    Star(Box<PaddedExpr>),
    Plus(Box<PaddedExpr>),
    /// M⊙N with the length-difference bound of M.
    OdotR(Box<PaddedExpr>, Box<PaddedExpr>, usize),
    /// M⊙′N with the bounds of M and N.
    OdotL(Box<PaddedExpr>, Box<PaddedExpr>, usize, usize),
    /// e ∩ (L1 × L2)δ.
    IntersectPairs(Box<PaddedExpr>, Fsa<Letter>, Fsa<Letter>, Side),
    /// A synchronized rational relation with its buffer bound.
    Sync(Relation, usize, Side),
    Raw(PairFsa),
}

impl PaddedExpr {
    pub fn diag(l: &Fsa<Letter>) -> Self {
        PaddedExpr::Diag(l.clone())
    }

    pub fn pair(u: &Word, v: &Word, side: Side) -> Self {
        PaddedExpr::PairConst(u.clone(), v.clone(), side)
    }

    pub fn then(self, other: PaddedExpr) -> Self {
        match self {
            PaddedExpr::Concat(mut v) => {
                v.push(other);
                PaddedExpr::Concat(v)
            }
            e => PaddedExpr::Concat(vec![e, other]),
        }
    }

    pub fn star(self) -> Self {
        PaddedExpr::Star(Box::new(self))
    }

    pub fn plus(self) -> Self {
        PaddedExpr::Plus(Box::new(self))
    }

    pub fn odot(self, other: PaddedExpr, bound: usize) -> Self {
        PaddedExpr::OdotR(Box::new(self), Box::new(other), bound)
    }

    pub fn odot_left(self, other: PaddedExpr, bound: usize, bound_right: usize) -> Self {
        PaddedExpr::OdotL(Box::new(self), Box::new(other), bound, bound_right)
    }

    pub fn within(self, l1: &Fsa<Letter>, l2: &Fsa<Letter>, side: Side) -> Self {
        PaddedExpr::IntersectPairs(Box::new(self), l1.clone(), l2.clone(), side)
    }
}

/// Compiles a combinator tree to an automaton over A(2,$).
pub fn eval_expr(e: &PaddedExpr, alpha: &Alphabet) -> Result<PairFsa> {
    let dom = pair_domain(alpha);
    Ok(match e {
        PaddedExpr::Diag(l) => diagonal(l, alpha),
        PaddedExpr::PairConst(u, v, side) => pair_const(u, v, *side, alpha),
        PaddedExpr::Concat(parts) => {
            let mut m = Fsa::epsilon(dom);
            for p in parts {
                m = m.concat(&eval_expr(p, alpha)?)?;
            }
            compact(&m)
        }
        PaddedExpr::Union(parts) => {
            let mut m = Fsa::empty(dom);
            for p in parts {
                m = m.union(&eval_expr(p, alpha)?)?;
            }
            compact(&m)
        }
        PaddedExpr::Star(x) => compact(&eval_expr(x, alpha)?.star()),
        PaddedExpr::Plus(x) => compact(&eval_expr(x, alpha)?.plus()),
        PaddedExpr::OdotR(a, b, c) => odot_right(&eval_expr(a, alpha)?, &eval_expr(b, alpha)?, *c, alpha)?,
        PaddedExpr::OdotL(a, b, c, c2) => odot_left(&eval_expr(a, alpha)?, &eval_expr(b, alpha)?, *c, *c2, alpha)?,
        PaddedExpr::IntersectPairs(x, l1, l2, side) => {
            compact(&eval_expr(x, alpha)?.intersect(&pair_product(l1, l2, *side, alpha)?)?)
        }
        PaddedExpr::Sync(r, bound, side) => synchronize(r, *bound, *side, alpha),
        PaddedExpr::Raw(m) => m.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(&['a', 'b', 'c']).unwrap()
    }

    fn conv(al: &Alphabet, u: &str, v: &str, side: Side) -> Vec<PairSymbol> {
        convolve(&al.w(u), &al.w(v), side).unwrap()
    }

    fn shown(al: &Alphabet, p: &[PairSymbol]) -> String {
        render_pairs(p, al)
    }

    #[test]
    fn convolution_examples() {
        let al = abc();
        assert_eq!(shown(&al, &conv(&al, "abb", "ba", Side::Right)), "a|b b|a b|$");
        assert_eq!(shown(&al, &conv(&al, "ab", "abc", Side::Right)), "a|a b|b $|c");
        assert_eq!(shown(&al, &conv(&al, "ab", "ab", Side::Right)), "a|a b|b");
        assert_eq!(shown(&al, &conv(&al, "abb", "ba", Side::Left)), "a|$ b|b b|a");
        assert_eq!(shown(&al, &conv(&al, "ab", "abc", Side::Left)), "$|a a|b b|c");
        assert!(convolve(&Word::empty(), &Word::empty(), Side::Right).is_err());
    }

    #[test]
    fn unconvolve_examples() {
        let al = abc();
        let (u, v) = unconvolve(&conv(&al, "abb", "ba", Side::Right), Side::Right).unwrap();
        assert_eq!((al.render(&u), al.render(&v)), ("abb".into(), "ba".into()));
        assert!(unconvolve(&[], Side::Right).is_err());
        let (u, v) = unconvolve(&conv(&al, "abb", "ba", Side::Left), Side::Left).unwrap();
        assert_eq!((al.render(&u), al.render(&v)), ("abb".into(), "ba".into()));
        assert!(unconvolve(&conv(&al, "abb", "ba", Side::Left), Side::Right).is_err());
    }

    #[test]
    fn rational_relations_synchronize() {
        let al = abc();
        let r = Relation::parse("(1,b) | (ab,b)(ab,1)*", &al).unwrap();
        let pairs: Vec<(String, String)> = r.pairs_up_to(4).iter().map(|(u, v)| (al.render(u), al.render(v))).collect();
        assert_eq!(pairs, vec![("1".into(), "b".into()), ("ab".into(), "b".into()), ("abab".into(), "b".into())]);
        // the same relation, written so the output letter is read last
        let r_left = Relation::parse("(1,b) | (ab,1)*(ab,b)", &al).unwrap();
        for (side, r) in [(Side::Right, &r), (Side::Left, &r_left)] {
            let m = synchronize(r, 2, side, &al);
            assert!(m.contains(&conv(&al, "abab", "b", side)));
            assert!(m.contains(&conv(&al, "ababab", "b", side)));
            assert!(!m.contains(&conv(&al, "aba", "b", side)));
        }
        // (b^j, a b^j) needs a one-letter buffer
        let shift = Relation::parse("(1,a)[(b,b)]*", &al).unwrap();
        let m = synchronize(&shift, 1, Side::Right, &al);
        assert!(m.contains(&conv(&al, "bbb", "abbb", Side::Right)));
        assert!(synchronize(&shift, 0, Side::Right, &al).enumerate(3).len() == 1);
        assert!(Relation::parse("(a,b", &al).is_err());
        assert!(Relation::parse("", &al).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let al = abc();
        let dom = letter_domain(&al);
        let l = Fsa::from_words(dom.clone(), &[al.w("a").0, al.w("ab").0]);
        let d = diagonal(&l, &al);
        assert!(d.contains(&conv(&al, "a", "a", Side::Right)));
        assert!(d.contains(&conv(&al, "ab", "ab", Side::Right)));
        assert!(!d.contains(&conv(&al, "a", "b", Side::Right)));
        assert!(diagonal(&Fsa::empty(dom), &al).is_empty());
    }

    #[test]
    fn odot_examples() {
        let al = abc();
        let m = pair_const(&al.w("ab"), &al.w("a"), Side::Right, &al);
        let n = pair_const(&al.w("c"), &al.w("c"), Side::Right, &al);
        let r = odot_right(&m, &n, 1, &al).unwrap();
        assert!(r.is_equivalent(&pair_const(&al.w("abc"), &al.w("ac"), Side::Right, &al)));
        assert_eq!(shown(&al, &r.enumerate(4)[0]), "a|a b|c c|$");

        let ab = Fsa::word(letter_domain(&al), &al.w("ab"));
        let m = diagonal(&ab, &al).concat(&pair_const(&Word::empty(), &al.w("c"), Side::Right, &al)).unwrap();
        let n = pair_const(&al.w("b"), &al.w("b"), Side::Right, &al);
        let r = odot_right(&m, &n, 1, &al).unwrap();
        assert!(r.is_equivalent(&pair_const(&al.w("abb"), &al.w("abcb"), Side::Right, &al)));
        assert!(odot_right(&Fsa::empty(pair_domain(&al)), &n, 1, &al).unwrap().is_empty());
        // declared bound too small
        assert!(matches!(odot_right(&m, &n, 0, &al), Err(Error::Contract(_))));

        let m = pair_const(&al.w("ab"), &al.w("b"), Side::Left, &al);
        let n = pair_const(&al.w("a"), &al.w("a"), Side::Left, &al);
        let r = odot_left(&m, &n, 1, 0, &al).unwrap();
        assert!(r.is_equivalent(&pair_const(&al.w("aba"), &al.w("ba"), Side::Left, &al)));
    }

    #[test]
    fn swap_examples() {
        let al = abc();
        let m = pair_const(&al.w("ab"), &al.w("b"), Side::Right, &al);
        let s = swap_side(&m, 1, Side::Right, &al).unwrap();
        assert!(s.is_equivalent(&pair_const(&al.w("ab"), &al.w("b"), Side::Left, &al)));
        let d = diagonal(&Fsa::universe_plus(letter_domain(&al)), &al);
        assert!(swap_side(&d, 0, Side::Right, &al).unwrap().is_equivalent(&d));
    }

    #[test]
    fn product_and_padding_bounds() {
        let al = Alphabet::new(&['a', 'b']).unwrap();
        let dom = letter_domain(&al);
        let a_plus = Fsa::word(dom.clone(), &al.w("a")).plus();
        let b_word = Fsa::word(dom.clone(), &al.w("b"));
        let p = pair_product(&a_plus, &b_word, Side::Right, &al).unwrap();
        assert!(p.contains(&conv(&al, "aaa", "b", Side::Right)));
        assert!(!p.contains(&conv(&al, "aaa", "b", Side::Left)));
        assert_eq!(max_padding(&p, Side::Right, &al).unwrap(), None);
        let pl = pair_product(&a_plus, &b_word, Side::Left, &al).unwrap();
        assert!(pl.contains(&conv(&al, "aaa", "b", Side::Left)));
        let q = pair_const(&al.w("aaab"), &al.w("a"), Side::Right, &al);
        assert_eq!(max_padding(&q, Side::Right, &al).unwrap(), Some(3));
        let (u, v) = padding_violation(&q, Side::Right, 2, &al).unwrap().unwrap();
        assert_eq!((al.render(&u), al.render(&v)), ("aaab".into(), "a".into()));
    }

    #[test]
    fn expression_examples() {
        let al = Alphabet::new(&['a', 'c']).unwrap();
        let dom = letter_domain(&al);
        let l = Fsa::universe_plus(dom.clone());
        let e = PaddedExpr::diag(&l).then(PaddedExpr::pair(&Word::empty(), &al.w("a"), Side::Right));
        let m = eval_expr(&e, &al).unwrap();
        let words = l.enumerate(6);
        for w in &words {
            let w = Word(w.clone());
            let good = w.concat(&al.w("a"));
            assert!(m.contains(&convolve(&w, &good, Side::Right).unwrap()));
            assert!(!m.contains(&convolve(&w, &w, Side::Right).unwrap()));
        }
        let s = eval_expr(&PaddedExpr::pair(&al.w("ac"), &al.w("ac"), Side::Right).star(), &al).unwrap();
        assert!(s.contains(&conv(&al, "acacac", "acacac", Side::Right)));
        let empty = Fsa::empty(dom.clone());
        let x = PaddedExpr::diag(&l).within(&empty, &l, Side::Right);
        assert!(eval_expr(&x, &al).unwrap().is_empty());
    }
}
