//! Automatic structures as data: acceptor, multipliers per flavor and the
//! prefix-equality relation, with the bounded verifier and the Nerode
//! lower-bound estimator.
//!
//! Multipliers are assembled from tail relations. A right tail for a letter
//! c is a rational relation T of pairs (p, q) with p·c = q in the semigroup;
//! the multiplier is then (Δ·T) ∩ (K×K) in the convolution of the flavor.
//! Every pair in it is correct by construction, so only completeness depends
//! on choosing the tails well, and that is what the verifier checks.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::gsm::Gsm;
use crate::pairs::{
    convolve, diagonal, enumerate_pairs, letter_domain, max_padding, pair_product, render_pairs, swap_side,
    synchronize, unconvolve, PairFsa, PairSymbol, Relation, Side,
};
use crate::rewriting::RewriteSystem;
use crate::words::{Alphabet, Letter, Word};

/// Convolution side followed by the side multiplied on.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Flavor {
    Rr,
    Rl,
    Lr,
    Ll,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Rr, Flavor::Rl, Flavor::Lr, Flavor::Ll];

    pub fn conv(self) -> Side {
        match self {
            Flavor::Rr | Flavor::Rl => Side::Right,
            Flavor::Lr | Flavor::Ll => Side::Left,
        }
    }

    pub fn mult(self) -> Side {
        match self {
            Flavor::Rr | Flavor::Lr => Side::Right,
            Flavor::Rl | Flavor::Ll => Side::Left,
        }
    }

    pub fn from_sides(conv: Side, mult: Side) -> Flavor {
        match (conv, mult) {
            (Side::Right, Side::Right) => Flavor::Rr,
            (Side::Right, Side::Left) => Flavor::Rl,
            (Side::Left, Side::Right) => Flavor::Lr,
            (Side::Left, Side::Left) => Flavor::Ll,
        }
    }

    /// The flavor of the same multiplier read on reversed words.
    pub fn reversed(self) -> Flavor {
        Flavor::from_sides(self.conv().opposite(), self.mult().opposite())
    }

    pub fn parse(text: &str) -> Result<Flavor> {
        match text {
            "rr" => Ok(Flavor::Rr),
            "rl" => Ok(Flavor::Rl),
            "lr" => Ok(Flavor::Lr),
            "ll" => Ok(Flavor::Ll),
            _ => Err(Error::InvalidInput(format!("unknown flavor {text:?}"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Rr => "rr",
            Flavor::Rl => "rl",
            Flavor::Lr => "lr",
            Flavor::Ll => "ll",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Provenance {
    pub case_id: String,
    pub construction: String,
}

/// How words of the structure alphabet denote elements.
///
/// An element is the normal form of `rewriting` (for a reversed structure,
/// of the reversed system); the empty word stands for an adjoined identity.
/// The representative of an element is its normal form, passed through the
/// gsm when there is one.
#[derive(Clone, Debug)]
pub struct Model {
    pub rewriting: RewriteSystem,
    /// Identity letter of the structure alphabet that is not a letter of
    /// the rewriting system's semigroup.
    pub adjoined: Option<Letter>,
    pub gsm: Option<Gsm>,
    pub reversed: bool,
}

impl Model {
    pub fn plain(rewriting: RewriteSystem) -> Model {
        Model { rewriting, adjoined: None, gsm: None, reversed: false }
    }

    /// The element named by a word of the structure alphabet.
    pub fn element(&self, w: &Word) -> Word {
        let core = match self.adjoined {
            Some(e) => w.without(e),
            None => w.clone(),
        };
        if core.is_empty() {
            return core;
        }
        self.rewriting.reduce(&core)
    }

    /// x·c (right) or c·x (left); `None` multiplies by ε.
    pub fn multiply(&self, x: &Word, c: Option<Letter>, side: Side) -> Word {
        let c = match c {
            None => return x.clone(),
            Some(c) if Some(c) == self.adjoined => return x.clone(),
            Some(c) => c,
        };
        let w = match side {
            Side::Right => x.concat(&Word::letter(c)),
            Side::Left => Word::letter(c).concat(x),
        };
        self.element(&w)
    }

    /// The representative word of an element.
    pub fn word_of(&self, x: &Word) -> Word {
        if x.is_empty() {
            return Word::letter(self.adjoined.expect("empty element needs an adjoined identity"));
        }
        match &self.gsm {
            None => x.clone(),
            Some(g) if self.reversed => g.apply_one(&x.reverse()).expect("gsm accepts normal forms").reverse(),
            Some(g) => g.apply_one(x).expect("gsm accepts normal forms"),
        }
    }

    pub fn equal(&self, x: &Word, y: &Word) -> bool {
        self.element(x) == self.element(y)
    }

    pub fn reversed_model(&self) -> Model {
        Model {
            rewriting: self.rewriting.reversed(),
            adjoined: self.adjoined,
            gsm: self.gsm.clone(),
            reversed: !self.reversed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutomaticStructure {
    pub alphabet: Alphabet,
    pub language: Fsa<Letter>,
    pub multipliers: BTreeMap<(Option<Letter>, Flavor), PairFsa>,
    pub prefix_equality: Option<PairFsa>,
    pub uniqueness: bool,
    pub provenance: Provenance,
    pub model: Model,
}

impl AutomaticStructure {
    pub fn flavors(&self) -> BTreeSet<Flavor> {
        self.multipliers.keys().map(|(_, f)| *f).collect()
    }

    pub fn multiplier(&self, c: Option<Letter>, f: Flavor) -> Option<&PairFsa> {
        self.multipliers.get(&(c, f))
    }

    /// Drops every flavor not listed.
    pub fn restrict_flavors(&mut self, keep: &[Flavor]) {
        self.multipliers.retain(|(_, f), _| keep.contains(f));
    }

    pub fn is_biautomatic(&self) -> bool {
        Flavor::ALL.iter().all(|f| self.flavors().contains(f))
    }
}

/// Tail relations for each letter and multiplication side, plus optional
/// extra prefix-equality tails (pairs (p, q) with p = q, q a prefix word).
#[derive(Clone, Debug, Default)]
pub struct TailTable {
    pub right: BTreeMap<Letter, Relation>,
    pub left: BTreeMap<Letter, Relation>,
    pub prefix: Option<Relation>,
}

/// Longest buffer used when synchronizing tails.
pub const TAIL_BOUND: usize = 8;

/// Assembles the multipliers of `flavors` from tail relations.
pub fn assemble(
    alphabet: &Alphabet,
    language: Fsa<Letter>,
    model: Model,
    tails: &TailTable,
    flavors: &[Flavor],
    provenance: Provenance,
) -> Result<AutomaticStructure> {
    let dom = letter_domain(alphabet);
    let language = language.minimize().trim();
    let everything = Relation::Diag(Fsa::universe(dom.clone()));
    let mut multipliers = BTreeMap::new();
    let products: HashMap<Side, PairFsa> = [Side::Right, Side::Left]
        .into_iter()
        .map(|s| Ok((s, pair_product(&language, &language, s, alphabet)?)))
        .collect::<Result<_>>()?;
    for &f in flavors {
        multipliers.insert((None, f), compact(&diagonal(&language, alphabet)));
    }
    for mult in [Side::Right, Side::Left] {
        let wanted: Vec<Flavor> = flavors.iter().copied().filter(|f| f.mult() == mult).collect();
        if wanted.is_empty() {
            continue;
        }
        let table = match mult {
            Side::Right => &tails.right,
            Side::Left => &tails.left,
        };
        for c in alphabet.letters() {
            let t = table
                .get(&c)
                .ok_or_else(|| Error::Contract(format!("no {mult} tails for letter {}", alphabet.name(c))))?;
            let rel = match mult {
                Side::Right => everything.clone().then(t.clone()),
                Side::Left => t.clone().then(everything.clone()),
            };
            let own = compact(&synchronize(&rel, TAIL_BOUND, mult, alphabet).intersect(&products[&mult])?);
            let own_flavor = Flavor::from_sides(mult, mult);
            if wanted.iter().any(|f| f.conv() != mult) {
                let k = max_padding(&own, mult, alphabet)?.ok_or_else(|| {
                    Error::Contract(format!(
                        "{own_flavor} multiplier for {} has unbounded length difference",
                        alphabet.name(c)
                    ))
                })?;
                let other = swap_side(&own, k, mult, alphabet)?;
                multipliers.insert((Some(c), Flavor::from_sides(mult.opposite(), mult)), other);
            }
            multipliers.insert((Some(c), own_flavor), own);
        }
    }
    multipliers.retain(|(_, f), _| flavors.contains(f));
    let prefix_equality = Some(prefix_relation(alphabet, &language, tails.prefix.as_ref())?);
    Ok(AutomaticStructure {
        alphabet: alphabet.clone(),
        language,
        multipliers,
        prefix_equality,
        uniqueness: true,
        provenance,
        model,
    })
}

fn compact(m: &PairFsa) -> PairFsa {
    m.minimize().trim()
}

/// Nonempty prefixes of words of `l`.
pub fn prefix_language(l: &Fsa<Letter>) -> Fsa<Letter> {
    let mut p = l.minimize().trim();
    for q in 0..p.num_states() {
        p.set_accepting(q, true);
    }
    p.intersect(&Fsa::universe_plus(l.domain().to_vec())).expect("same domain").minimize().trim()
}

fn prefix_relation(alphabet: &Alphabet, language: &Fsa<Letter>, extra: Option<&Relation>) -> Result<PairFsa> {
    let diag = diagonal(language, alphabet);
    let pref = prefix_language(language);
    match extra {
        None if pref.is_equivalent(language) => Ok(compact(&diag)),
        None => Err(Error::Contract("language is not prefix-closed and no prefix tails were given".into())),
        Some(t) => {
            let dom = letter_domain(alphabet);
            let rel = Relation::Diag(Fsa::universe(dom)).then(t.clone());
            let m = synchronize(&rel, TAIL_BOUND, Side::Right, alphabet).union(&diag)?;
            Ok(compact(&m.intersect(&pair_product(language, &pref, Side::Right, alphabet)?)?))
        }
    }
}

/// The structure (B, K ∪ {e}) for S¹ built from a structure for S.
pub fn extend_with_identity(s: &AutomaticStructure) -> Result<AutomaticStructure> {
    if s.alphabet.identity().is_some() || s.model.adjoined.is_some() {
        return Err(Error::InvalidInput("structure already has an identity letter".into()));
    }
    let b = s.alphabet.with_identity()?;
    let e = b.identity().unwrap();
    let dom = letter_domain(&b);
    let widen = |m: &PairFsa| m.with_domain(crate::pairs::pair_domain(&b));
    let k = s.language.with_domain(dom.clone())?.union(&Fsa::word(dom.clone(), &[e]))?.minimize().trim();
    let ee = crate::pairs::pair_const(&Word::letter(e), &Word::letter(e), Side::Right, &b);
    let mut multipliers = BTreeMap::new();
    for (&(c, f), m) in &s.multipliers {
        let m = widen(m)?;
        let extra = match c {
            None => ee.clone(),
            Some(c) => crate::pairs::pair_const(&Word::letter(e), &Word::letter(c), f.conv(), &b),
        };
        multipliers.insert((c, f), compact(&m.union(&extra)?));
    }
    for f in s.flavors() {
        multipliers.insert((Some(e), f), compact(&diagonal(&k, &b)));
    }
    let prefix_equality = match &s.prefix_equality {
        Some(p) => Some(compact(&widen(p)?.union(&ee)?)),
        None => None,
    };
    let mut model = s.model.clone();
    model.adjoined = Some(e);
    Ok(AutomaticStructure {
        alphabet: b,
        language: k,
        multipliers,
        prefix_equality,
        uniqueness: s.uniqueness,
        provenance: Provenance {
            case_id: s.provenance.case_id.clone(),
            construction: format!("{}; identity adjoined", s.provenance.construction),
        },
        model,
    })
}

/// Structure for the reversed semigroup: every language reversed, rr ↔ ll
/// and lr ↔ rl.
pub fn reverse_structure(s: &AutomaticStructure) -> AutomaticStructure {
    let multipliers = s.multipliers.iter().map(|(&(c, f), m)| ((c, f.reversed()), compact(&m.reverse()))).collect();
    AutomaticStructure {
        alphabet: s.alphabet.clone(),
        language: s.language.reverse().minimize().trim(),
        multipliers,
        // prefix equality does not survive reversal
        prefix_equality: None,
        uniqueness: s.uniqueness,
        provenance: Provenance {
            case_id: s.provenance.case_id.clone(),
            construction: format!("{}; reversed", s.provenance.construction),
        },
        model: s.model.reversed_model(),
    }
}

/// Bounded sample of a multiplier relation.
#[derive(Clone, Debug)]
pub struct PairRelationSample {
    pub depth: usize,
    pub side: Side,
    /// (α, α·c) for every α of the language with |α| ≤ depth.
    pub positives: Vec<(Word, Word)>,
    image: HashMap<Word, Word>,
    language: Fsa<Letter>,
    /// Negatives range over β with |β| ≤ depth + slack.
    pub slack: usize,
}

impl PairRelationSample {
    /// True when α, β are in the language, α is sampled and β is not α·c.
    pub fn is_negative(&self, a: &Word, b: &Word) -> bool {
        if b.len() > self.depth + self.slack || !self.language.contains(b) {
            return false;
        }
        matches!(self.image.get(a), Some(x) if x != b)
    }

    pub fn is_positive(&self, a: &Word, b: &Word) -> bool {
        self.image.get(a) == Some(b)
    }

    pub fn alphabet_domain(&self) -> &[Letter] {
        self.language.domain()
    }
}

/// Positive pairs of the multiplier by `c` for words of `language` up to
/// `depth`, computed by rewriting.
pub fn multiplier_oracle(
    language: &Fsa<Letter>,
    model: &Model,
    c: Option<Letter>,
    flavor: Flavor,
    depth: usize,
) -> Result<PairRelationSample> {
    if !model.rewriting.is_complete() {
        return Err(Error::Contract("multiplier oracle needs a complete rewriting system".into()));
    }
    let mut positives = Vec::new();
    let mut image = HashMap::new();
    for w in language.enumerate(depth) {
        let a = Word(w);
        let b = model.word_of(&model.multiply(&model.element(&a), c, flavor.mult()));
        image.insert(a.clone(), b.clone());
        positives.push((a, b));
    }
    Ok(PairRelationSample { depth, side: flavor.conv(), positives, image, language: language.clone(), slack: 2 })
}

/// Outcome of one bounded check; counterexamples are capped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub missing: Vec<(Word, Word)>,
    pub spurious: Vec<(Word, Word)>,
    pub missing_count: usize,
    pub spurious_count: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.missing_count == 0 && self.spurious_count == 0
    }

    fn miss(&mut self, p: (Word, Word)) {
        self.missing_count += 1;
        if self.missing.len() < MAX_EXAMPLES {
            self.missing.push(p);
        }
    }

    fn spurious(&mut self, p: (Word, Word)) {
        self.spurious_count += 1;
        if self.spurious.len() < MAX_EXAMPLES {
            self.spurious.push(p);
        }
    }
}

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierReport {
    pub letter: Option<Letter>,
    pub flavor: Flavor,
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixStatus {
    Pass,
    Fail(CheckOutcome),
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub depth: usize,
    /// Problems with the acceptor: missing or duplicated representatives.
    pub language_errors: Vec<String>,
    pub multipliers: Vec<MultiplierReport>,
    pub prefix: PrefixStatus,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.language_errors.is_empty()
            && self.multipliers.iter().all(|m| m.outcome.passed())
            && !matches!(self.prefix, PrefixStatus::Fail(_))
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        let pair = |(a, b): &(Word, Word)| format!("({},{})", alpha.render(a), alpha.render(b));
        let list = |v: &[(Word, Word)]| v.iter().map(pair).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        for e in &self.language_errors {
            out.push_str(&format!("language status=fail detail={e}\n"));
        }
        for m in &self.multipliers {
            let name = m.letter.map(|l| alpha.name(l).to_string()).unwrap_or_else(|| "1".into());
            if m.outcome.passed() {
                out.push_str(&format!("mult={name} flavor={} depth={} status=pass\n", m.flavor, self.depth));
            } else {
                out.push_str(&format!(
                    "mult={name} flavor={} depth={} status=fail missing={} spurious={} missing_pairs=[{}] spurious_pairs=[{}]\n",
                    m.flavor,
                    self.depth,
                    m.outcome.missing_count,
                    m.outcome.spurious_count,
                    list(&m.outcome.missing),
                    list(&m.outcome.spurious)
                ));
            }
        }
        match &self.prefix {
            PrefixStatus::Pass => out.push_str(&format!("prefix_eq depth={} status=pass\n", self.depth)),
            PrefixStatus::Absent => out.push_str("prefix_eq status=absent\n"),
            PrefixStatus::Fail(o) => out.push_str(&format!(
                "prefix_eq depth={} status=fail missing={} spurious={} missing_pairs=[{}] spurious_pairs=[{}]\n",
                self.depth,
                o.missing_count,
                o.spurious_count,
                list(&o.missing),
                list(&o.spurious)
            )),
        }
        out.push_str(&format!("overall={}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

/// Checks every declared multiplier and the prefix-equality relation
/// against rewriting, for words of the acceptor up to `depth`.
pub fn verify_structure(s: &AutomaticStructure, depth: usize) -> Result<VerificationReport> {
    let model = &s.model;
    let mut language_errors = Vec::new();
    let sample = s.language.enumerate(depth);
    let mut seen: HashMap<Word, Word> = HashMap::new();
    for w in &sample {
        let w = Word(w.clone());
        let x = model.element(&w);
        if let Some(prev) = seen.insert(x.clone(), w.clone()) {
            language_errors.push(format!(
                "{} and {} name the same element",
                s.alphabet.render(&prev),
                s.alphabet.render(&w)
            ));
        }
        if model.word_of(&x) != w {
            language_errors.push(format!("{} is not the representative of its element", s.alphabet.render(&w)));
        }
    }
    // every normal form whose representative is short enough is accepted
    for nf in model.rewriting.irr_language().enumerate(depth) {
        let nf = if model.reversed { Word(nf).reverse() } else { Word(nf) };
        let nf = if model.reversed { model.rewriting.reduce(&nf) } else { nf };
        let w = model.word_of(&nf);
        if w.len() <= depth && !s.language.contains(&w) {
            language_errors.push(format!("representative {} is not accepted", s.alphabet.render(&w)));
        }
    }
    language_errors.truncate(MAX_EXAMPLES);

    let mut multipliers = Vec::new();
    for (&(c, f), m) in &s.multipliers {
        let oracle = multiplier_oracle(&s.language, model, c, f, depth)?;
        let mut outcome = CheckOutcome::default();
        for (a, b) in &oracle.positives {
            if !m.contains(&convolve(a, b, f.conv())?) {
                outcome.miss((a.clone(), b.clone()));
            }
        }
        let max_right = 2 * depth + 4;
        for p in enumerate_pairs(m, f.conv(), depth, max_right) {
            match p {
                Ok((a, b)) => {
                    if !oracle.is_positive(&a, &b) {
                        outcome.spurious((a, b));
                    }
                }
                Err(w) => {
                    outcome.spurious_count += 1;
                    language_errors.push(format!("invalid convolution {}", render_pairs(&w, &s.alphabet)));
                }
            }
        }
        multipliers.push(MultiplierReport { letter: c, flavor: f, outcome });
    }
    let prefix = match &s.prefix_equality {
        None => PrefixStatus::Absent,
        Some(p) => {
            let o = check_prefix_equality(s, p, depth)?;
            if o.passed() {
                PrefixStatus::Pass
            } else {
                PrefixStatus::Fail(o)
            }
        }
    };
    Ok(VerificationReport { depth, language_errors, multipliers, prefix })
}

fn check_prefix_equality(s: &AutomaticStructure, p: &PairFsa, depth: usize) -> Result<CheckOutcome> {
    let model = &s.model;
    let pref = prefix_language(&s.language);
    let mut outcome = CheckOutcome::default();
    let mut expected = HashSet::new();
    for b in pref.enumerate(depth + 3) {
        let b = Word(b);
        let a = model.word_of(&model.element(&b));
        if a.len() <= depth {
            if !p.contains(&convolve(&a, &b, Side::Right)?) {
                outcome.miss((a.clone(), b.clone()));
            }
            expected.insert((a, b));
        }
    }
    for q in enumerate_pairs(p, Side::Right, depth, depth + 3) {
        match q {
            Ok(pair) => {
                if !expected.contains(&pair) {
                    outcome.spurious(pair);
                }
            }
            Err(_) => outcome.spurious_count += 1,
        }
    }
    Ok(outcome)
}

/// Branch-and-bound steps allowed per clique search; the best clique found
/// so far is still a valid lower bound when the budget runs out.
const CLIQUE_BUDGET: usize = 2_000_000;

/// Fixed-size bitset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// Maximum clique size by branch and bound with a greedy colouring bound.
fn max_clique(adj: &[Bits], budget: usize) -> usize {
    fn expand(adj: &[Bits], cand: Vec<usize>, size: usize, best: &mut usize, steps: &mut usize) {
        if *steps == 0 {
            return;
        }
        *steps -= 1;
        // colour classes give an upper bound for every suffix of the order
        let mut colour_of = Vec::with_capacity(cand.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &cand {
            let k = classes.iter().position(|c| c.iter().all(|&u| !adj[v].get(u))).unwrap_or(classes.len());
            if k == classes.len() {
                classes.push(Vec::new());
            }
            classes[k].push(v);
        }
        let mut order = Vec::with_capacity(cand.len());
        for (k, c) in classes.iter().enumerate() {
            for &v in c {
                order.push(v);
                colour_of.push(k + 1);
            }
        }
        for i in (0..order.len()).rev() {
            if size + colour_of[i] <= *best {
                return;
            }
            let v = order[i];
            let next: Vec<usize> = order[..i].iter().copied().filter(|&u| adj[v].get(u)).collect();
            if next.is_empty() {
                *best = (*best).max(size + 1);
            } else {
                expand(adj, next, size + 1, best, steps);
            }
        }
    }
    let mut best = 0;
    let mut steps = budget;
    // high-degree vertices first tends to find large cliques early
    let mut cand: Vec<usize> = (0..adj.len()).collect();
    cand.sort_by_key(|&v| std::cmp::Reverse(adj[v].ones().count()));
    expand(adj, cand, 0, &mut best, &mut steps);
    best
}

/// Lower bounds on the state count of any automaton accepting the
/// multiplier relation, one per depth up to the sample depth.
///
/// Prefixes of positive convolutions are distinguishable when some suffix
/// of length at most `extension` completes one to a positive and the other
/// to a negative. A largest clique of pairwise distinguishable prefixes is
/// reported; this is a lower bound, never a proof of non-regularity.
pub fn nerode_lower_bound(sample: &PairRelationSample, extension: usize) -> Vec<(usize, usize)> {
    let side = sample.side;
    let mut out = Vec::new();
    for d in 0..=sample.depth {
        let convs: Vec<Vec<PairSymbol>> = sample
            .positives
            .iter()
            .filter(|(a, _)| a.len() <= d)
            .filter_map(|(a, b)| convolve(a, b, side).ok())
            .collect();
        if convs.is_empty() {
            out.push((d, 1));
            continue;
        }
        // prefix -> suffixes (length ≤ extension) completing it to a positive
        let mut completions: BTreeMap<Vec<PairSymbol>, BTreeSet<Vec<PairSymbol>>> = BTreeMap::new();
        for w in &convs {
            for cut in 0..=w.len() {
                if w.len() - cut <= extension {
                    completions.entry(w[..cut].to_vec()).or_default().insert(w[cut..].to_vec());
                }
            }
        }
        let negative = |p: &[PairSymbol], s: &[PairSymbol]| -> bool {
            let mut w = p.to_vec();
            w.extend_from_slice(s);
            match unconvolve(&w, side) {
                Ok((a, b)) => a.len() <= d && sample.is_negative(&a, &b),
                Err(_) => false,
            }
        };
        // each prefix gets a signature: suffixes that accept it, suffixes that reject it
        let suffixes: Vec<&Vec<PairSymbol>> =
            completions.values().flatten().collect::<BTreeSet<_>>().into_iter().collect();
        let index: HashMap<&Vec<PairSymbol>, usize> = suffixes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut signatures: BTreeSet<(Bits, Bits)> = BTreeSet::new();
        for (p, ss) in &completions {
            let mut pos = Bits::new(suffixes.len());
            for s in ss {
                pos.set(index[s]);
            }
            let mut neg = Bits::new(suffixes.len());
            for (i, s) in suffixes.iter().enumerate() {
                if negative(p, s) {
                    neg.set(i);
                }
            }
            signatures.insert((pos, neg));
        }
        // prefixes with equal signatures are interchangeable, so one node each
        let nodes: Vec<(Bits, Bits)> = signatures.into_iter().collect();
        let n = nodes.len();
        let mut adj: Vec<Bits> = vec![Bits::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if nodes[i].0.meets(&nodes[j].1) || nodes[j].0.meets(&nodes[i].1) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
        let best = max_clique(&adj, CLIQUE_BUDGET).max(1);
        out.push((d, best));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::{shirshov_complete, Completeness};

    fn free(al: &Alphabet) -> RewriteSystem {
        RewriteSystem::new(al.clone(), vec![], vec![], Completeness::Complete).unwrap()
    }

    fn free_structure(al: &Alphabet, flavors: &[Flavor]) -> AutomaticStructure {
        let mut t = TailTable::default();
        for c in al.letters() {
            t.right.insert(c, Relation::pair(&Word::empty(), &Word::letter(c)));
            t.left.insert(c, Relation::pair(&Word::empty(), &Word::letter(c)));
        }
        let l = Fsa::universe_plus(letter_domain(al));
        assemble(al, l, Model::plain(free(al)), &t, flavors, Provenance::default()).unwrap()
    }

    #[test]
    fn free_semigroup_verifies() {
        let al = Alphabet::new(&['a', 'b']).unwrap();
        let s = free_structure(&al, &Flavor::ALL);
        let r = verify_structure(&s, 6).unwrap();
        assert!(r.passed(), "{}", r.render(&al));
        assert_eq!(r.multipliers.len(), 12);
    }

    #[test]
    fn wrong_multiplier_is_caught() {
        let al = Alphabet::new(&['a', 'b']).unwrap();
        let mut s = free_structure(&al, &[Flavor::Rr]);
        let a = al.letter('a').unwrap();
        s.multipliers.insert((Some(a), Flavor::Rr), diagonal(&s.language, &al));
        let r = verify_structure(&s, 4).unwrap();
        assert!(!r.passed());
        let m = r.multipliers.iter().find(|m| m.letter == Some(a)).unwrap();
        assert!(m.outcome.missing.contains(&(al.w("a"), al.w("aa"))));
        assert!(m.outcome.spurious.contains(&(al.w("a"), al.w("a"))));
    }

    #[test]
    fn oracle_examples() {
        // ab → ba under b < a
        let al = Alphabet::new(&['b', 'a']).unwrap();
        let rs = shirshov_complete(&[(al.w("ba"), al.w("ab"))], &al, 20, 8).unwrap();
        let model = Model::plain(rs.clone());
        let l = rs.irr_language();
        let a = al.letter('a').unwrap();
        let s = multiplier_oracle(&l, &model, Some(a), Flavor::Rr, 3).unwrap();
        assert!(s.is_positive(&al.w("ba"), &al.w("baa")));
        assert!(s.is_negative(&al.w("ba"), &al.w("bba")));
        let eps = multiplier_oracle(&l, &model, None, Flavor::Rr, 3).unwrap();
        assert!(eps.positives.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn identity_and_reversal() {
        let al = Alphabet::new(&['a']).unwrap();
        let s = free_structure(&al, &Flavor::ALL);
        let s1 = extend_with_identity(&s).unwrap();
        let e = s1.alphabet.identity().unwrap();
        assert!(s1.language.contains(&[e]));
        assert!(verify_structure(&s1, 5).unwrap().passed());
        let r = reverse_structure(&reverse_structure(&s));
        for (k, m) in &s.multipliers {
            assert!(m.is_equivalent(&r.multipliers[k]));
        }
        assert!(extend_with_identity(&s1).is_err());
    }

    #[test]
    fn nerode_bound_of_free_multiplier_stabilizes() {
        let al = Alphabet::new(&['a', 'b']).unwrap();
        let s = free_structure(&al, &[Flavor::Rr]);
        let a = al.letter('a').unwrap();
        let sample = multiplier_oracle(&s.language, &s.model, Some(a), Flavor::Rr, 6).unwrap();
        let b = nerode_lower_bound(&sample, 3);
        assert_eq!(b[0], (0, 1));
        assert_eq!(b[4].1, b[6].1);
        let states = s.multipliers[&(Some(a), Flavor::Rr)].complete().num_states();
        assert!(b.iter().all(|&(_, v)| v <= states));
    }
}
