//! Generalized sequential machines and their images of regular languages.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::words::{Letter, Word};

/// A six-tuple (Q, A, B, μ, q0, T): on reading an input letter in a state the
/// machine moves to a new state and writes a (possibly empty) output word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gsm {
    num_states: usize,
    input: Vec<Letter>,
    output: Vec<Letter>,
    trans: BTreeMap<(usize, Letter), Vec<(usize, Word)>>,
    initial: usize,
    terminals: Vec<bool>,
}

impl Gsm {
    pub fn new(num_states: usize, input: Vec<Letter>, output: Vec<Letter>, initial: usize) -> Result<Self> {
        if initial >= num_states {
            return Err(Error::InvalidInput("initial state out of range".into()));
        }
        Ok(Gsm { num_states, input, output, trans: BTreeMap::new(), initial, terminals: vec![false; num_states] })
    }

    pub fn set_terminal(&mut self, q: usize, t: bool) {
        self.terminals[q] = t;
    }

    pub fn add_transition(&mut self, q: usize, a: Letter, dst: usize, out: Word) -> Result<()> {
        if q >= self.num_states || dst >= self.num_states {
            return Err(Error::InvalidInput("gsm transition endpoint out of range".into()));
        }
        if !self.input.contains(&a) {
            return Err(Error::InvalidInput("gsm input letter not in input alphabet".into()));
        }
        if out.iter().any(|l| !self.output.contains(l)) {
            return Err(Error::InvalidInput("gsm output word not over output alphabet".into()));
        }
        self.trans.entry((q, a)).or_default().push((dst, out));
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn input(&self) -> &[Letter] {
        &self.input
    }

    pub fn output(&self) -> &[Letter] {
        &self.output
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_terminal(&self, q: usize) -> bool {
        self.terminals[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Letter, usize, &Word)> {
        self.trans.iter().flat_map(|(&(q, a), v)| v.iter().map(move |(d, w)| (q, a, *d, w)))
    }

    pub fn moves(&self, q: usize, a: Letter) -> &[(usize, Word)] {
        self.trans.get(&(q, a)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// All outputs of successful paths reading `u` (sorted, deduplicated).
    pub fn apply(&self, u: &[Letter]) -> Vec<Word> {
        let mut cur: Vec<(usize, Word)> = vec![(self.initial, Word::empty())];
        for &a in u {
            let mut next = Vec::new();
            for (q, out) in &cur {
                for (d, w) in self.moves(*q, a) {
                    next.push((*d, out.concat(w)));
                }
            }
            cur = next;
            if cur.is_empty() {
                return Vec::new();
            }
        }
        let mut outs: Vec<Word> = cur.into_iter().filter(|(q, _)| self.terminals[*q]).map(|(_, w)| w).collect();
        outs.sort();
        outs.dedup();
        outs
    }

    /// Output of a deterministic machine, if the path succeeds.
    pub fn apply_one(&self, u: &[Letter]) -> Option<Word> {
        self.apply(u).into_iter().next()
    }
}

/// η(X) = {v ∈ B⁺ | some u ∈ X has a successful path with input u and output v}.
///
/// Product of `x` with the machine; output words of length > 1 are spelled
/// out through fresh intermediate states.
pub fn gsm_image(g: &Gsm, x: &Fsa<Letter>) -> Result<Fsa<Letter>> {
    if x.domain().len() != g.input.len() || !x.domain().iter().all(|l| g.input.contains(l)) {
        return Err(Error::InvalidInput("automaton domain differs from the gsm input alphabet".into()));
    }
    let x = x.remove_epsilon();
    let mut m: Fsa<Letter> = Fsa::new(g.output.clone());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut get = |m: &mut Fsa<Letter>, queue: &mut VecDeque<(usize, usize)>, p: usize, q: usize| -> usize {
        *index.entry((p, q)).or_insert_with(|| {
            queue.push_back((p, q));
            m.add_state(x.is_accepting(p) && g.terminals[q])
        })
    };
    for &i in x.initial_states() {
        let s = get(&mut m, &mut queue, i, g.initial);
        m.set_initial(s);
    }
    while let Some((p, q)) = queue.pop_front() {
        let src = get(&mut m, &mut queue, p, q);
        for &(sym, p2) in x.transitions(p) {
            let a = sym.expect("ε removed");
            for (q2, out) in g.moves(q, a) {
                let dst = get(&mut m, &mut queue, p2, *q2);
                if out.is_empty() {
                    m.add_transition(src, None, dst);
                    continue;
                }
                let mut cur = src;
                for (i, &b) in out.iter().enumerate() {
                    let next = if i + 1 == out.len() { dst } else { m.add_state(false) };
                    m.add_transition(cur, Some(b), next);
                    cur = next;
                }
            }
        }
    }
    let plus = Fsa::universe_plus(g.output.clone());
    m.intersect(&plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn setup() -> (Alphabet, Letter, Letter, Letter) {
        let al = Alphabet::new(&['a', 'b']).unwrap().with_identity().unwrap();
        (al.clone(), al.letter('a').unwrap(), al.letter('b').unwrap(), al.identity().unwrap())
    }

    #[test]
    fn identity_machine_preserves_language() {
        let (al, a, b, _) = setup();
        let mut g = Gsm::new(1, vec![a, b], vec![a, b], 0).unwrap();
        g.set_terminal(0, true);
        g.add_transition(0, a, 0, al.w("a")).unwrap();
        g.add_transition(0, b, 0, al.w("b")).unwrap();
        let l = Fsa::universe_plus(vec![a, b]).difference(&Fsa::word(vec![a, b], &[a, a])).unwrap();
        let img = gsm_image(&g, &l).unwrap();
        assert!(img.is_equivalent(&l));
    }

    #[test]
    fn padding_machine() {
        let (al, a, b, e) = setup();
        let mut g = Gsm::new(1, vec![a, b], vec![e, a, b], 0).unwrap();
        g.set_terminal(0, true);
        g.add_transition(0, a, 0, al.w("a")).unwrap();
        g.add_transition(0, b, 0, al.w("be")).unwrap();
        let x = Fsa::from_words(vec![a, b], &[vec![a, b], vec![b]]);
        let img = gsm_image(&g, &x).unwrap();
        let words: Vec<String> = img.enumerate(4).iter().map(|w| al.render(&Word::from_letters(w))).collect();
        let mut words = words;
        words.sort();
        assert_eq!(words, vec!["abe", "be"]);
    }

    #[test]
    fn two_state_machine() {
        let (al, a, b, e) = setup();
        let mut g = Gsm::new(2, vec![a, b], vec![e, a, b], 0).unwrap();
        g.set_terminal(0, true);
        g.set_terminal(1, true);
        g.add_transition(0, a, 1, al.w("a")).unwrap();
        g.add_transition(1, a, 1, al.w("ae")).unwrap();
        let x = Fsa::word(vec![a, b], &[a, a]);
        let img = gsm_image(&g, &x).unwrap();
        let words: Vec<String> = img.enumerate(5).iter().map(|w| al.render(&Word::from_letters(w))).collect();
        assert_eq!(words, vec!["aae"]);
        assert_eq!(g.apply_one(&[a, a, a]).map(|w| al.render(&w)), Some("aaeae".to_string()));
    }
}
