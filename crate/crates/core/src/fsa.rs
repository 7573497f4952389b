//! Finite automata over a generic symbol domain.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Anything usable as an automaton symbol.
pub trait Symbol: Copy + Eq + Ord + Hash + Debug {}
impl<T: Copy + Eq + Ord + Hash + Debug> Symbol for T {}

/// Nondeterministic automaton with ε-moves and a set of initial states.
///
/// The symbol domain is kept in caller order; enumeration and shortest
/// counterexamples are lexicographic with respect to that order.
#[derive(Clone, Debug)]
pub struct Fsa<S> {
    domain: Vec<S>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    trans: Vec<Vec<(Option<S>, usize)>>,
    deterministic: bool,
}

impl<S: Symbol> Fsa<S> {
    /// Automaton with no states over `domain`.
    pub fn new(domain: Vec<S>) -> Self {
        let mut d = Vec::with_capacity(domain.len());
        for s in domain {
            if !d.contains(&s) {
                d.push(s);
            }
        }
        Fsa { domain: d, initial: Vec::new(), accepting: Vec::new(), trans: Vec::new(), deterministic: false }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.trans.push(Vec::new());
        self.deterministic = false;
        self.accepting.len() - 1
    }

    pub fn set_initial(&mut self, s: usize) {
        if !self.initial.contains(&s) {
            self.initial.push(s);
        }
        self.deterministic = false;
    }

    pub fn set_accepting(&mut self, s: usize, acc: bool) {
        self.accepting[s] = acc;
    }

    pub fn add_transition(&mut self, src: usize, sym: Option<S>, dst: usize) {
        self.trans[src].push((sym, dst));
        self.deterministic = false;
    }

    pub fn domain(&self) -> &[S] {
        &self.domain
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(|t| t.len()).sum()
    }

    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn transitions(&self, s: usize) -> &[(Option<S>, usize)] {
        &self.trans[s]
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn has_epsilon(&self) -> bool {
        self.trans.iter().flatten().any(|(s, _)| s.is_none())
    }

    fn in_domain(&self, s: &S) -> bool {
        self.domain.contains(s)
    }

    fn same_domain(&self, other: &Fsa<S>) -> Result<()> {
        let ok = self.domain.len() == other.domain.len() && self.domain.iter().all(|s| other.in_domain(s));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("automata have different symbol domains".into()))
        }
    }

    /// The empty language.
    pub fn empty(domain: Vec<S>) -> Self {
        let mut m = Fsa::new(domain);
        let q = m.add_state(false);
        m.set_initial(q);
        m
    }

    /// The language {ε}.
    pub fn epsilon(domain: Vec<S>) -> Self {
        let mut m = Fsa::new(domain);
        let q = m.add_state(true);
        m.set_initial(q);
        m
    }

    /// The singleton language {w}.
    pub fn word(domain: Vec<S>, w: &[S]) -> Self {
        let mut m = Fsa::new(domain);
        let mut q = m.add_state(w.is_empty());
        m.set_initial(q);
        for (i, &s) in w.iter().enumerate() {
            let r = m.add_state(i + 1 == w.len());
            m.add_transition(q, Some(s), r);
            q = r;
        }
        m
    }

    /// A finite language.
    pub fn from_words(domain: Vec<S>, words: &[Vec<S>]) -> Self {
        let mut m = Fsa::empty(domain.clone());
        for w in words {
            m = m.union(&Fsa::word(domain.clone(), w)).expect("same domain");
        }
        m
    }

    /// Σ*, the set of all words over the domain.
    pub fn universe(domain: Vec<S>) -> Self {
        let mut m = Fsa::new(domain);
        let q = m.add_state(true);
        m.set_initial(q);
        for s in m.domain.clone() {
            m.add_transition(q, Some(s), q);
        }
        m
    }

    /// Σ⁺, all nonempty words.
    pub fn universe_plus(domain: Vec<S>) -> Self {
        let mut m = Fsa::new(domain);
        let q = m.add_state(false);
        let r = m.add_state(true);
        m.set_initial(q);
        for s in m.domain.clone() {
            m.add_transition(q, Some(s), r);
            m.add_transition(r, Some(s), r);
        }
        m
    }

    /// Words over the listed symbols only (a sub-alphabet star).
    pub fn star_of(domain: Vec<S>, symbols: &[S]) -> Self {
        let mut m = Fsa::new(domain);
        let q = m.add_state(true);
        m.set_initial(q);
        for &s in symbols {
            m.add_transition(q, Some(s), q);
        }
        m
    }

    /// Copy with a larger symbol domain; transitions are unchanged.
    pub fn with_domain(&self, domain: Vec<S>) -> Result<Self> {
        if !self.domain.iter().all(|s| domain.contains(s)) {
            return Err(Error::InvalidInput("new domain must contain the old one".into()));
        }
        let mut m = self.clone();
        m.domain = Fsa::<S>::new(domain).domain;
        Ok(m)
    }

    /// Relabels every transition.
    pub fn map_symbols<T: Symbol>(&self, domain: Vec<T>, f: impl Fn(S) -> T) -> Fsa<T> {
        Fsa {
            domain: Fsa::<T>::new(domain).domain,
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            trans: self.trans.iter().map(|ts| ts.iter().map(|&(s, d)| (s.map(&f), d)).collect()).collect(),
            deterministic: self.deterministic,
        }
    }

    fn closure_of(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            out.push(s);
            for &(sym, d) in &self.trans[s] {
                if sym.is_none() && !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Membership test; unknown symbols are an error.
    pub fn accepts(&self, w: &[S]) -> Result<bool> {
        if let Some(s) = w.iter().find(|s| !self.in_domain(s)) {
            return Err(Error::InvalidInput(format!("symbol {s:?} not in automaton domain")));
        }
        Ok(self.contains(w))
    }

    /// Membership test; words with unknown symbols are rejected.
    pub fn contains(&self, w: &[S]) -> bool {
        if self.deterministic {
            let Some(&start) = self.initial.first() else { return false };
            let mut q = start;
            for s in w {
                match self.step(q, *s) {
                    Some(r) => q = r,
                    None => return false,
                }
            }
            return self.accepting[q];
        }
        let mut cur = self.closure_of(self.initial.iter().copied());
        for s in w {
            let next: Vec<usize> = cur
                .iter()
                .flat_map(|&q| self.trans[q].iter().filter(|(x, _)| *x == Some(*s)).map(|&(_, d)| d))
                .collect();
            if next.is_empty() {
                return false;
            }
            cur = self.closure_of(next);
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Successor in a deterministic automaton.
    pub fn step(&self, q: usize, s: S) -> Option<usize> {
        self.trans[q].iter().find(|(x, _)| *x == Some(s)).map(|&(_, d)| d)
    }

    /// Equivalent automaton without ε-moves (same states).
    pub fn remove_epsilon(&self) -> Self {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut m = Fsa::new(self.domain.clone());
        for _ in 0..self.num_states() {
            m.add_state(false);
        }
        for q in 0..self.num_states() {
            let cl = self.closure_of([q]);
            m.accepting[q] = cl.iter().any(|&r| self.accepting[r]);
            let mut seen = std::collections::HashSet::new();
            for r in cl {
                for &(sym, d) in &self.trans[r] {
                    if sym.is_some() && seen.insert((sym, d)) {
                        m.trans[q].push((sym, d));
                    }
                }
            }
        }
        m.initial = self.initial.clone();
        m
    }

    /// Reversed language.
    pub fn reverse(&self) -> Self {
        let mut m = Fsa::new(self.domain.clone());
        for q in 0..self.num_states() {
            m.add_state(self.initial.contains(&q));
        }
        for q in 0..self.num_states() {
            for &(sym, d) in &self.trans[q] {
                m.trans[d].push((sym, q));
            }
            if self.accepting[q] {
                m.initial.push(q);
            }
        }
        m.deterministic = false;
        m
    }

    fn append_disjoint(&mut self, other: &Fsa<S>) -> usize {
        let off = self.num_states();
        for q in 0..other.num_states() {
            self.accepting.push(other.accepting[q]);
            self.trans.push(other.trans[q].iter().map(|&(s, d)| (s, d + off)).collect());
        }
        self.deterministic = false;
        off
    }

    pub fn union(&self, other: &Fsa<S>) -> Result<Self> {
        self.same_domain(other)?;
        let mut m = self.clone();
        let off = m.append_disjoint(other);
        for &i in &other.initial {
            m.initial.push(i + off);
        }
        Ok(m)
    }

    pub fn concat(&self, other: &Fsa<S>) -> Result<Self> {
        self.same_domain(other)?;
        let mut m = self.clone();
        let off = m.append_disjoint(other);
        for q in 0..self.num_states() {
            if self.accepting[q] {
                m.accepting[q] = false;
                for &i in &other.initial {
                    m.trans[q].push((None, i + off));
                }
            }
        }
        Ok(m)
    }

    fn star_like(&self, accept_empty: bool) -> Self {
        let mut m = self.clone();
        let q = m.add_state(accept_empty);
        for &i in &self.initial {
            m.trans[q].push((None, i));
        }
        for r in 0..self.num_states() {
            if self.accepting[r] {
                m.trans[r].push((None, q));
            }
        }
        m.initial = vec![q];
        m
    }

    pub fn star(&self) -> Self {
        self.star_like(true)
    }

    pub fn plus(&self) -> Self {
        self.star_like(false)
    }

    pub fn intersect(&self, other: &Fsa<S>) -> Result<Self> {
        self.same_domain(other)?;
        let a = self.remove_epsilon();
        let b = other.remove_epsilon();
        let mut m = Fsa::new(self.domain.clone());
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &i in &a.initial {
            for &j in &b.initial {
                let id = *index.entry((i, j)).or_insert_with(|| {
                    queue.push_back((i, j));
                    m.add_state(a.accepting[i] && b.accepting[j])
                });
                m.initial.push(id);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let src = index[&(p, q)];
            for &(s1, d1) in &a.trans[p] {
                for &(s2, d2) in &b.trans[q] {
                    if s1 == s2 {
                        let dst = match index.get(&(d1, d2)) {
                            Some(&d) => d,
                            None => {
                                let d = m.add_state(a.accepting[d1] && b.accepting[d2]);
                                index.insert((d1, d2), d);
                                queue.push_back((d1, d2));
                                d
                            }
                        };
                        m.trans[src].push((s1, dst));
                    }
                }
            }
        }
        if m.num_states() == 0 {
            return Ok(Fsa::empty(self.domain.clone()));
        }
        m.initial.sort_unstable();
        m.initial.dedup();
        Ok(m)
    }

    /// Subset construction; the result is deterministic but possibly partial.
    pub fn determinize(&self) -> Self {
        if self.deterministic {
            return self.clone();
        }
        let n = self.remove_epsilon();
        let mut m = Fsa::new(self.domain.clone());
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut start = n.initial.clone();
        start.sort_unstable();
        start.dedup();
        let acc0 = start.iter().any(|&q| n.accepting[q]);
        index.insert(start.clone(), m.add_state(acc0));
        sets.push(start);
        m.initial = vec![0];
        let mut i = 0;
        while i < sets.len() {
            let cur = sets[i].clone();
            let mut by_sym: HashMap<S, Vec<usize>> = HashMap::new();
            for &q in &cur {
                for &(sym, d) in &n.trans[q] {
                    by_sym.entry(sym.expect("ε removed")).or_default().push(d);
                }
            }
            for s in self.domain.clone() {
                if let Some(mut t) = by_sym.remove(&s) {
                    t.sort_unstable();
                    t.dedup();
                    let dst = match index.get(&t) {
                        Some(&d) => d,
                        None => {
                            let d = m.add_state(t.iter().any(|&q| n.accepting[q]));
                            index.insert(t.clone(), d);
                            sets.push(t);
                            d
                        }
                    };
                    m.trans[i].push((Some(s), dst));
                }
            }
            i += 1;
        }
        m.deterministic = true;
        m
    }

    /// Deterministic automaton with a transition for every (state, symbol).
    pub fn complete(&self) -> Self {
        let mut m = self.determinize();
        let mut sink = None;
        for q in 0..m.num_states() {
            for s in m.domain.clone() {
                if m.step(q, s).is_none() {
                    let k = *sink.get_or_insert_with(|| {
                        let k = m.accepting.len();
                        m.accepting.push(false);
                        m.trans.push(Vec::new());
                        k
                    });
                    m.trans[q].push((Some(s), k));
                }
            }
        }
        if let Some(k) = sink {
            for s in m.domain.clone() {
                m.trans[k].push((Some(s), k));
            }
        }
        m.deterministic = true;
        m
    }

    pub fn complement(&self) -> Self {
        let mut m = self.complete();
        for a in m.accepting.iter_mut() {
            *a = !*a;
        }
        m
    }

    pub fn difference(&self, other: &Fsa<S>) -> Result<Self> {
        self.same_domain(other)?;
        let c = other.complement().with_domain(self.domain.clone())?;
        self.intersect(&c)
    }

    /// The minimal complete deterministic automaton, states numbered in
    /// breadth-first order from the initial state (a canonical form).
    pub fn minimize(&self) -> Self {
        let d = self.complete();
        let reach = d.reachable_states();
        let states: Vec<usize> = (0..d.num_states()).filter(|&q| reach[q]).collect();
        let mut class: Vec<usize> = vec![0; d.num_states()];
        for &q in &states {
            class[q] = d.accepting[q] as usize;
        }
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; d.num_states()];
            for &q in &states {
                let sig: Vec<usize> = d.domain.iter().map(|&s| class[d.step(q, s).unwrap()]).collect();
                let k = sig_index.len();
                next[q] = *sig_index.entry((class[q], sig)).or_insert(k);
            }
            let old_count = states.iter().map(|&q| class[q]).collect::<std::collections::HashSet<_>>().len();
            let stable = sig_index.len() == old_count;
            class = next;
            if stable {
                break;
            }
        }
        // canonical renumbering by BFS in domain order
        let start = class[d.initial[0]];
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for &q in &states {
            rep.entry(class[q]).or_insert(q);
        }
        let mut queue = VecDeque::from([start]);
        order.insert(start, 0);
        let mut m = Fsa::new(self.domain.clone());
        m.add_state(d.accepting[rep[&start]]);
        m.initial = vec![0];
        while let Some(c) = queue.pop_front() {
            let q = rep[&c];
            let src = order[&c];
            for &s in &d.domain {
                let tc = class[d.step(q, s).unwrap()];
                let dst = match order.get(&tc) {
                    Some(&x) => x,
                    None => {
                        let x = m.add_state(d.accepting[rep[&tc]]);
                        order.insert(tc, x);
                        queue.push_back(tc);
                        x
                    }
                };
                m.trans[src].push((Some(s), dst));
            }
        }
        m.deterministic = true;
        m
    }

    fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &(_, d) in &self.trans[q] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }

    fn coreachable_states(&self) -> Vec<bool> {
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); self.num_states()];
        for q in 0..self.num_states() {
            for &(_, d) in &self.trans[q] {
                back[d].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..self.num_states()).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &back[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Removes states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Self {
        let r = self.reachable_states();
        let c = self.coreachable_states();
        let keep: Vec<bool> = (0..self.num_states()).map(|q| r[q] && c[q]).collect();
        if !keep.iter().any(|&k| k) {
            let mut e = Fsa::empty(self.domain.clone());
            e.deterministic = true;
            return e;
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut m = Fsa::new(self.domain.clone());
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = m.add_state(self.accepting[q]);
            }
        }
        for q in 0..self.num_states() {
            if keep[q] {
                for &(s, d) in &self.trans[q] {
                    if keep[d] {
                        m.trans[map[q]].push((s, map[d]));
                    }
                }
            }
        }
        m.initial = self.initial.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        m.deterministic = self.deterministic;
        m
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable_states();
        !(0..self.num_states()).any(|q| r[q] && self.accepting[q])
    }

    /// `None` when the languages agree, otherwise a shortest word in the
    /// symmetric difference (lexicographically first among shortest).
    pub fn equivalent(&self, other: &Fsa<S>) -> Result<Option<Vec<S>>> {
        self.same_domain(other)?;
        let a = self.complete();
        let b = other.complete();
        let start = (a.initial[0], b.initial[0]);
        // product state -> (predecessor, symbol read)
        type Trail<S> = HashMap<(usize, usize), Option<((usize, usize), S)>>;
        let mut parent: Trail<S> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if a.accepting[p] != b.accepting[q] {
                let mut w = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    w.push(*s);
                    cur = *prev;
                }
                w.reverse();
                return Ok(Some(w));
            }
            for &s in &self.domain {
                let n = (a.step(p, s).unwrap(), b.step(q, s).unwrap());
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(n) {
                    e.insert(Some(((p, q), s)));
                    queue.push_back(n);
                }
            }
        }
        Ok(None)
    }

    pub fn is_equivalent(&self, other: &Fsa<S>) -> bool {
        matches!(self.equivalent(other), Ok(None))
    }

    /// Structural equality of the minimal automata.
    pub fn isomorphic_minimal(&self, other: &Fsa<S>) -> bool {
        let a = self.minimize();
        let b = other.minimize();
        a.domain == b.domain && a.accepting == b.accepting && a.trans == b.trans
    }

    /// Accepted words of length ≤ `max_len`, shortest first, then
    /// lexicographic in domain order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        self.walk(max_len, |_| true, |w| out.push(w.to_vec()));
        out
    }

    /// Visits accepted words of length ≤ `max_len` in enumeration order.
    /// `keep` is consulted for every prefix; returning false prunes it.
    pub fn walk(&self, max_len: usize, mut keep: impl FnMut(&[S]) -> bool, mut visit: impl FnMut(&[S])) {
        let d = self.determinize().trim();
        if d.is_empty() {
            return;
        }
        // distance to acceptance, for pruning
        let n = d.num_states();
        let mut dist = vec![usize::MAX; n];
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, t) in &d.trans[q] {
                back[t].push(q);
            }
        }
        let mut queue = VecDeque::new();
        for (q, dq) in dist.iter_mut().enumerate() {
            if d.accepting[q] {
                *dq = 0;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &back[q] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[q] + 1;
                    queue.push_back(p);
                }
            }
        }
        let order: HashMap<S, usize> = self.domain.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut sorted: Vec<Vec<(S, usize)>> =
            d.trans.iter().map(|ts| ts.iter().map(|&(s, t)| (s.unwrap(), t)).collect()).collect();
        for ts in sorted.iter_mut() {
            ts.sort_by_key(|(s, _)| order[s]);
        }
        let start = d.initial[0];
        for len in 0..=max_len {
            let mut word = Vec::with_capacity(len);
            walk_exact(&sorted, &d.accepting, &dist, start, len, &mut word, &mut keep, &mut visit);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn walk_exact<S: Symbol>(
    trans: &[Vec<(S, usize)>],
    accepting: &[bool],
    dist: &[usize],
    q: usize,
    remaining: usize,
    word: &mut Vec<S>,
    keep: &mut impl FnMut(&[S]) -> bool,
    visit: &mut impl FnMut(&[S]),
) {
    if dist[q] > remaining {
        return;
    }
    if remaining == 0 {
        if accepting[q] {
            visit(word);
        }
        return;
    }
    for &(s, t) in &trans[q] {
        word.push(s);
        if keep(word) {
            walk_exact(trans, accepting, dist, t, remaining - 1, word, keep, visit);
        }
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Fsa<char>;

    fn dom() -> Vec<char> {
        vec!['a', 'b']
    }

    fn lit(s: &str) -> M {
        M::word(dom(), &s.chars().collect::<Vec<_>>())
    }

    fn a_star_b() -> M {
        lit("a").star().concat(&lit("b")).unwrap()
    }

    fn all_words(n: usize) -> Vec<Vec<char>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for c in dom() {
                    let mut x: Vec<char> = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn contains_aba() -> M {
        M::universe(dom()).concat(&lit("aba")).unwrap().concat(&M::universe(dom())).unwrap()
    }

    #[test]
    fn accepts_examples() {
        let m = a_star_b();
        assert!(m.accepts(&['a', 'a', 'b']).unwrap());
        assert!(!m.accepts(&['b', 'a']).unwrap());
        assert!(!m.accepts(&[]).unwrap());
        assert!(m.accepts(&['z']).is_err());
    }

    #[test]
    fn boolean_examples() {
        let no_aba = M::universe_plus(dom()).difference(&contains_aba()).unwrap();
        assert!(no_aba.contains(&['a', 'b', 'b', 'a']));
        assert!(!no_aba.contains(&['a', 'b', 'a', 'b']));
        let ab = M::word(vec!['a', 'b'], &['a']).intersect(&M::word(vec!['a', 'b'], &['b'])).unwrap();
        assert!(ab.is_empty());
        let star_empty = M::empty(dom()).star();
        assert_eq!(star_empty.enumerate(4), vec![Vec::<char>::new()]);
        assert!(lit("a").plus().intersect(&lit("b").plus()).unwrap().is_empty());
        assert!(lit("a").union(&Fsa::word(vec!['c'], &['c'])).is_err());
    }

    #[test]
    fn determinize_agrees_on_small_words() {
        let m = contains_aba();
        let d = m.determinize();
        assert!(d.is_deterministic());
        for w in all_words(8) {
            assert_eq!(m.contains(&w), d.contains(&w));
        }
    }

    #[test]
    fn minimize_counts_nerode_classes() {
        let m = M::universe_plus(dom()).difference(&contains_aba()).unwrap();
        let min = m.minimize();
        assert_eq!(min.num_states(), 5);
        assert_eq!(min.minimize().num_states(), 5);
        // brute-force Myhill–Nerode class count with words ≤ 4 as prefixes, ≤ 4 as tests
        let tests = all_words(4);
        let mut sigs = std::collections::HashSet::new();
        for p in all_words(4) {
            let sig: Vec<bool> = tests.iter().map(|t| m.contains(&[p.clone(), t.clone()].concat())).collect();
            sigs.insert(sig);
        }
        assert_eq!(sigs.len(), 5);
    }

    #[test]
    fn equivalence_and_counterexamples() {
        let ab_star = M::star_of(dom(), &['a', 'b']);
        assert_eq!(ab_star.equivalent(&M::empty(dom()).complement()).unwrap(), None);
        let cx = lit("a").star().equivalent(&a_star_b()).unwrap().unwrap();
        assert!(cx.is_empty());
        let cx = lit("a").plus().equivalent(&lit("a").star()).unwrap().unwrap();
        assert!(cx.is_empty());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(a_star_b().enumerate(2), vec![vec!['b'], vec!['a', 'b']]);
        assert!(M::empty(dom()).enumerate(5).is_empty());
        let aa = M::universe(dom()).concat(&lit("aa")).unwrap().concat(&M::universe(dom())).unwrap();
        let no_aa = M::universe_plus(dom()).difference(&aa).unwrap();
        assert_eq!(no_aa.enumerate(3).len(), 10);
    }

    #[test]
    fn reverse_and_trim() {
        let m = a_star_b().reverse();
        assert!(m.contains(&['b', 'a', 'a']));
        assert!(!m.contains(&['a', 'b']));
        let t = m.union(&M::empty(dom())).unwrap().trim();
        assert!(t.is_equivalent(&m));
    }
}
