//! Potential-positivity logic: the flanking criterion, the switch step, the
//! rank-2 decision procedure with automorphism witnesses, rank-r
//! positivization schedules, tree operators, and the two language encodings.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::machines::{self, Automaton};
use crate::words::{
    generators_used, max_negative_run, sign_usage, Automorphism, CyclicWord, ElementaryMove,
    Letter, SignUsage, Word, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotposError {
    #[error("operation requires rank 2, got {0}")]
    RankMismatch(u16),
    #[error("word does not satisfy the criterion for the given pair")]
    CriterionNotSatisfied,
    #[error("word is not in the operation's domain: {0}")]
    NotInDomain(String),
    #[error("no signal marker present")]
    NoSignal,
    #[error("word is not produced by the rank machine")]
    NotMachineWord,
    #[error("positivization schedule failed to produce a positive word")]
    ScheduleFailed,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A criterion pair (x, y): every occurrence of x must be flanked by y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CriterionPair {
    pub x: Letter,
    pub y: Letter,
}

impl fmt::Display for CriterionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={})", self.x, self.y)
    }
}

impl Serialize for CriterionPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}{}", self.x, self.y))
    }
}

fn lp(c: char) -> Letter {
    Letter::from_char(c).unwrap()
}

/// The 8 meaningful pairs in rank 2, in the fixed tie-breaking order.
pub fn canonical_pairs() -> [CriterionPair; 8] {
    [
        CriterionPair { x: lp('B'), y: lp('a') },
        CriterionPair { x: lp('A'), y: lp('b') },
        CriterionPair { x: lp('B'), y: lp('A') },
        CriterionPair { x: lp('A'), y: lp('B') },
        CriterionPair { x: lp('b'), y: lp('a') },
        CriterionPair { x: lp('a'), y: lp('b') },
        CriterionPair { x: lp('b'), y: lp('A') },
        CriterionPair { x: lp('a'), y: lp('B') },
    ]
}

/// Does every occurrence of `x` in the cyclic word have `y` immediately
/// before and after (reading cyclically)? Vacuously true when x is absent.
pub fn satisfies_pair(w: &CyclicWord, pair: CriterionPair) -> bool {
    let n = w.len();
    for (i, &l) in w.letters().iter().enumerate() {
        if l == pair.x {
            let prev = w.letter_at((i + n - 1) % n);
            let next = w.letter_at((i + 1) % n);
            if prev != pair.y || next != pair.y {
                return false;
            }
        }
    }
    true
}

/// All canonical pairs satisfied by the word.
pub fn goldstein_check(w: &CyclicWord) -> Result<Vec<CriterionPair>, PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    if w.is_empty() {
        return Err(PotposError::NotInDomain("empty word".into()));
    }
    Ok(canonical_pairs()
        .into_iter()
        .filter(|&p| satisfies_pair(w, p))
        .collect())
}

/// Relabeling moves (from the order-8 signed-permutation group on the two
/// generators) sending the given pair to (B, a).
pub fn normalizing_moves(pair: CriterionPair) -> Result<Vec<ElementaryMove>, PotposError> {
    // enumerate the 8 relabelings as move lists and pick the one that works
    let candidates: Vec<Vec<ElementaryMove>> = vec![
        vec![],
        vec![ElementaryMove::Invert(1)],
        vec![ElementaryMove::Invert(2)],
        vec![ElementaryMove::Invert(1), ElementaryMove::Invert(2)],
        vec![ElementaryMove::Swap(1, 2)],
        vec![ElementaryMove::Invert(1), ElementaryMove::Swap(1, 2)],
        vec![ElementaryMove::Invert(2), ElementaryMove::Swap(1, 2)],
        vec![
            ElementaryMove::Invert(1),
            ElementaryMove::Invert(2),
            ElementaryMove::Swap(1, 2),
        ],
    ];
    for moves in candidates {
        let sigma = Automorphism::new(2, moves.clone())?;
        let img_x = apply_to_letter(&sigma, pair.x)?;
        let img_y = apply_to_letter(&sigma, pair.y)?;
        if img_x == lp('B') && img_y == lp('a') {
            return Ok(moves);
        }
    }
    Err(PotposError::NotInDomain(format!(
        "no relabeling sends {pair} to (B, a)"
    )))
}

fn apply_to_letter(sigma: &Automorphism, l: Letter) -> Result<Letter, PotposError> {
    let w = Word::reduce(2, [l])?;
    let img = sigma.apply(&w)?;
    debug_assert_eq!(img.len(), 1, "relabelings map letters to letters");
    Ok(img.letters()[0])
}

/// Result classification of one switch step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SwitchOutcome {
    /// Image satisfies the criterion with (x, y) = (B, a).
    SatisfiesBbarA,
    /// Image satisfies the criterion with (x, y) = (A, b).
    SatisfiesAbarB,
    /// Image is positive.
    Positive,
    /// All generators but one occur only positively (witness available).
    AllButOne,
    /// None of the above: the input was not potentially positive.
    Fail,
}

/// Normalize the satisfied pair to (B, a), apply b -> ba, cyclically reduce,
/// and classify the image. Returns the image (in normalized coordinates),
/// the outcome, and the moves applied.
pub fn switch_step(
    w: &CyclicWord,
    pair: CriterionPair,
) -> Result<(CyclicWord, SwitchOutcome, Vec<ElementaryMove>), PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    if !satisfies_pair(w, pair) {
        return Err(PotposError::CriterionNotSatisfied);
    }
    let mut moves = normalizing_moves(pair)?;
    moves.push(ElementaryMove::Substitute {
        gen: 2,
        replacement: Word::parse(2, "ba")?,
    });
    let sigma = Automorphism::new(2, moves.clone())?;
    let img = sigma.apply_cyclic(w)?;
    let outcome = if img.is_positive_word() {
        SwitchOutcome::Positive
    } else if all_but_one(&img.to_word(), 2)?.is_some() {
        SwitchOutcome::AllButOne
    } else if satisfies_pair(&img, CriterionPair { x: lp('B'), y: lp('a') }) {
        SwitchOutcome::SatisfiesBbarA
    } else if satisfies_pair(&img, CriterionPair { x: lp('A'), y: lp('b') }) {
        SwitchOutcome::SatisfiesAbarB
    } else {
        SwitchOutcome::Fail
    };
    Ok((img, outcome, moves))
}

/// If all generators except one occur only with positive exponents (absent
/// counts as positive) and the exceptional generator has a negative
/// occurrence, return the witness sending every positive-only generator g to
/// g·x^K, where x is the exceptional generator and K its deepest negative
/// run. The witness is verified to positivize the cyclic reduction.
pub fn all_but_one(w: &Word, rank: u16) -> Result<Option<Automorphism>, PotposError> {
    let (cyc, _) = w.cyclic_reduce();
    let mut exceptional: Option<u16> = None;
    for g in 1..=rank {
        match sign_usage(cyc.letters(), g) {
            SignUsage::PositiveOnly | SignUsage::Absent => {}
            SignUsage::NegativeOnly | SignUsage::Mixed => {
                if exceptional.is_some() {
                    return Ok(None);
                }
                exceptional = Some(g);
            }
        }
    }
    let Some(xr) = exceptional else {
        return Ok(None); // already positive
    };
    let k = max_negative_run(&cyc, xr);
    debug_assert!(k >= 1);
    let mut moves = Vec::new();
    for g in 1..=rank {
        if g == xr {
            continue;
        }
        let mut letters = vec![Letter::positive(g)];
        letters.extend(std::iter::repeat_n(Letter::positive(xr), k));
        moves.push(ElementaryMove::Substitute {
            gen: g,
            replacement: Word::reduce(rank, letters)?,
        });
    }
    let sigma = Automorphism::new(rank, moves)?;
    let img = sigma.apply_cyclic(&cyc)?;
    if img.is_positive_word() {
        Ok(Some(sigma))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PP")]
    PotentiallyPositive,
    #[serde(rename = "NotPP")]
    NotPotentiallyPositive,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub step: usize,
    #[serde(serialize_with = "serialize_cyclic")]
    pub word: CyclicWord,
}

fn serialize_cyclic<S: serde::Serializer>(w: &CyclicWord, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    /// Present iff the verdict is PP; applying it to the input and cyclically
    /// reducing yields a positive word.
    pub witness: Option<Vec<ElementaryMove>>,
    /// Present iff the verdict is NotPP: the reached word that fails every
    /// criterion pair, with the step count at which it appeared.
    pub certificate: Option<Certificate>,
    pub steps_used: usize,
}

impl Decision {
    pub fn witness_automorphism(&self) -> Option<Automorphism> {
        self.witness
            .as_ref()
            .map(|m| Automorphism::new(2, m.clone()).expect("witness moves were validated"))
    }
}

pub const DEFAULT_STEP_SLACK: usize = 100;

/// Decide potential positivity in rank 2 by iterated switch steps.
///
/// Loop: invert any generator occurring only negatively; stop with PP when
/// the word is positive or the all-but-one witness applies; stop with NotPP
/// when no criterion pair is satisfied; otherwise follow the first satisfied
/// pair (canonical order). `max_steps` defaults to 10·|w| + 100.
pub fn decide_pp2(input: &Word, max_steps: Option<usize>) -> Result<Decision, PotposError> {
    if input.rank() != 2 {
        return Err(PotposError::RankMismatch(input.rank()));
    }
    let (mut w, _) = input.cyclic_reduce();
    let cap = max_steps.unwrap_or(10 * w.len() + DEFAULT_STEP_SLACK);
    let mut moves: Vec<ElementaryMove> = Vec::new();
    // rank-1 content: x^n is positive or positivized by one inversion
    let gens = generators_used(w.letters());
    if gens.len() <= 1 {
        if let Some(&g) = gens.iter().next() {
            if w.letters()[0] == Letter::negative(g) {
                moves.push(ElementaryMove::Invert(g));
            }
        }
        return Ok(Decision {
            verdict: Verdict::PotentiallyPositive,
            witness: Some(moves),
            certificate: None,
            steps_used: 0,
        });
    }
    let mut steps = 0usize;
    loop {
        if w.is_positive_word() {
            return Ok(Decision {
                verdict: Verdict::PotentiallyPositive,
                witness: Some(moves),
                certificate: None,
                steps_used: steps,
            });
        }
        if let Some(abo) = all_but_one(&w.to_word(), 2)? {
            moves.extend(abo.moves().iter().cloned());
            return Ok(Decision {
                verdict: Verdict::PotentiallyPositive,
                witness: Some(moves),
                certificate: None,
                steps_used: steps,
            });
        }
        // a generator occurring only negatively is inverted (covers the
        // mirror cases the all-but-one witness misses)
        let mut inverted = false;
        for g in [1u16, 2] {
            if sign_usage(w.letters(), g) == SignUsage::NegativeOnly {
                let mv = ElementaryMove::Invert(g);
                let sigma = Automorphism::new(2, vec![mv.clone()])?;
                w = sigma.apply_cyclic(&w)?;
                moves.push(mv);
                inverted = true;
            }
        }
        if inverted {
            continue;
        }
        let satisfied = goldstein_check(&w)?;
        let Some(&pair) = satisfied.first() else {
            return Ok(Decision {
                verdict: Verdict::NotPotentiallyPositive,
                witness: None,
                certificate: Some(Certificate { step: steps, word: w }),
                steps_used: steps,
            });
        };
        if steps >= cap {
            return Ok(Decision {
                verdict: Verdict::Undecided,
                witness: None,
                certificate: None,
                steps_used: steps,
            });
        }
        let (img, _outcome, step_moves) = switch_step(&w, pair)?;
        moves.extend(step_moves);
        w = img;
        steps += 1;
        if w.is_empty() {
            return Ok(Decision {
                verdict: Verdict::PotentiallyPositive,
                witness: Some(moves),
                certificate: None,
                steps_used: steps,
            });
        }
    }
}

/// Verify a PP witness against the original input word.
pub fn verify_witness(input: &Word, witness: &[ElementaryMove]) -> Result<CyclicWord, PotposError> {
    let sigma = Automorphism::new(input.rank(), witness.to_vec())?;
    let (cyc, _) = input.cyclic_reduce();
    let img = sigma.apply_cyclic(&cyc)?;
    if img.is_positive_word() {
        Ok(img)
    } else {
        Err(PotposError::ScheduleFailed)
    }
}

/// The proof schedule positivizing any word produced by the rank machine:
/// ascending moves x_{j-1} -> x_j^{n_j} x_{j-1} x_j^{n_j} for j = 2..r-1
/// (n_j one more than the deepest x_j^-1 run at that stage), then descending
/// x_j -> x_j x_{j-1} for j = r-1..2, then the all-but-one witness for x_r.
/// Words on a single generator are positivized by one inversion.
pub fn positivize_rank_word(r: u16, w: &CyclicWord) -> Result<Automorphism, PotposError> {
    let machine = machines::build_rank_machine(r).map_err(|_| PotposError::NotMachineWord)?;
    if !machine.accepts_cyclic(w) {
        return Err(PotposError::NotMachineWord);
    }
    let mut cur = w.clone();
    let mut acc = Automorphism::identity(r);
    let finish = |acc: Automorphism, cur: &CyclicWord| -> Result<Automorphism, PotposError> {
        if cur.is_positive_word() {
            Ok(acc)
        } else {
            Err(PotposError::ScheduleFailed)
        }
    };
    if cur.is_positive_word() {
        return Ok(acc);
    }
    let gens = generators_used(cur.letters());
    if gens.len() == 1 {
        let g = *gens.iter().next().unwrap();
        let mv = ElementaryMove::Invert(g);
        let sigma = Automorphism::new(r, vec![mv.clone()])?;
        cur = sigma.apply_cyclic(&cur)?;
        acc.push(mv)?;
        return finish(acc, &cur);
    }
    // ascending phase
    for j in 2..r {
        let nj = 1 + max_negative_run(&cur, j);
        let mut letters: Vec<Letter> = std::iter::repeat_n(Letter::positive(j), nj).collect();
        letters.push(Letter::positive(j - 1));
        letters.extend(std::iter::repeat_n(Letter::positive(j), nj));
        let mv = ElementaryMove::Substitute {
            gen: j - 1,
            replacement: Word::reduce(r, letters)?,
        };
        let sigma = Automorphism::new(r, vec![mv.clone()])?;
        cur = sigma.apply_cyclic(&cur)?;
        acc.push(mv)?;
        if cur.is_positive_word() {
            return Ok(acc);
        }
    }
    // descending phase
    for j in (2..r).rev() {
        let mv = ElementaryMove::Substitute {
            gen: j,
            replacement: Word::reduce(r, [Letter::positive(j), Letter::positive(j - 1)])?,
        };
        let sigma = Automorphism::new(r, vec![mv.clone()])?;
        cur = sigma.apply_cyclic(&cur)?;
        acc.push(mv)?;
        if cur.is_positive_word() {
            return Ok(acc);
        }
    }
    // final all-but-one on x_r
    if let Some(abo) = all_but_one_general(&cur, r)? {
        cur = abo.apply_cyclic(&cur)?;
        acc.extend(&abo)?;
    }
    finish(acc, &cur)
}

/// all_but_one over arbitrary rank (the rank-2 entry point restricts to the
/// spec'd signature).
fn all_but_one_general(w: &CyclicWord, rank: u16) -> Result<Option<Automorphism>, PotposError> {
    let mut exceptional: Option<u16> = None;
    for g in 1..=rank {
        match sign_usage(w.letters(), g) {
            SignUsage::PositiveOnly | SignUsage::Absent => {}
            _ => {
                if exceptional.is_some() {
                    return Ok(None);
                }
                exceptional = Some(g);
            }
        }
    }
    let Some(xr) = exceptional else { return Ok(None) };
    let k = max_negative_run(w, xr);
    if k == 0 {
        return Ok(None);
    }
    let mut moves = Vec::new();
    for g in 1..=rank {
        if g == xr {
            continue;
        }
        let mut letters = vec![Letter::positive(g)];
        letters.extend(std::iter::repeat_n(Letter::positive(xr), k));
        moves.push(ElementaryMove::Substitute {
            gen: g,
            replacement: Word::reduce(rank, letters)?,
        });
    }
    Ok(Some(Automorphism::new(rank, moves)?))
}

// ---- tree operators ----

/// A path in the binary tree of criterion-surviving sets: R(S) keeps words
/// of G whose image under b -> ba is in S; L(S) additionally swaps a and b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    /// Steps applied outermost first; the empty path is G itself.
    pub path: Vec<TreeStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeStep {
    R,
    L,
}

impl TreeSpec {
    pub fn parse(s: &str) -> Result<TreeSpec, PotposError> {
        let mut path = Vec::new();
        for c in s.chars() {
            match c {
                'R' | 'r' => path.push(TreeStep::R),
                'L' | 'l' => path.push(TreeStep::L),
                _ => {
                    return Err(PotposError::NotInDomain(format!(
                        "bad tree path character {c:?}"
                    )))
                }
            }
        }
        Ok(TreeSpec { path })
    }
}

/// Membership in G: every B flanked by a (vacuous for the empty word).
pub fn in_goldstein_set(w: &CyclicWord) -> bool {
    w.is_empty() || satisfies_pair(w, CriterionPair { x: lp('B'), y: lp('a') })
}

fn phi() -> Automorphism {
    Automorphism::new(
        2,
        vec![ElementaryMove::Substitute {
            gen: 2,
            replacement: Word::parse(2, "ba").unwrap(),
        }],
    )
    .unwrap()
}

fn gamma() -> Automorphism {
    Automorphism::new(2, vec![ElementaryMove::Swap(1, 2)]).unwrap()
}

/// Recursive evaluation of the R/L path against base G.
pub fn tree_member(spec: &TreeSpec, w: &CyclicWord) -> Result<bool, PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    let mut cur = w.clone();
    for step in &spec.path {
        if !in_goldstein_set(&cur) {
            return Ok(false);
        }
        cur = phi().apply_cyclic(&cur)?;
        if matches!(step, TreeStep::L) {
            cur = gamma().apply_cyclic(&cur)?;
        }
    }
    Ok(in_goldstein_set(&cur))
}

/// True iff the word survives to some layer-n set of the tree:
/// survive(w, 0) = w in G; survive(w, n) = w in G and (survive(phi w, n-1)
/// or survive(gamma phi w, n-1)).
pub fn tree_survives(w: &CyclicWord, n: usize) -> Result<bool, PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    if !in_goldstein_set(w) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let img = phi().apply_cyclic(w)?;
    if tree_survives(&img, n - 1)? {
        return Ok(true);
    }
    let img2 = gamma().apply_cyclic(&img)?;
    tree_survives(&img2, n - 1)
}

// ---- language specs ----

/// A decidable membership predicate over cyclic words.
#[derive(Debug, Clone)]
pub enum LanguageSpec {
    /// Closed-path language of an automaton.
    Machine(Automaton),
    /// Words avoiding every listed rule (read cyclically).
    Forbidden(ForbiddenSpec),
    /// A tree-operator set (R/L path over base G).
    Tree(TreeSpec),
    /// Rank-2 words the decision procedure accepts.
    DecidedPp,
    /// Words with zero exponent-sum vector.
    CommutatorKernel(u16),
}

#[derive(Debug, Clone)]
pub struct ForbiddenSpec {
    pub rank: u16,
    pub rules: Vec<ForbiddenRule>,
}

#[derive(Debug, Clone)]
pub enum ForbiddenRule {
    /// A fixed cyclic factor.
    Factor(Word),
    /// The family left · filler^k · right for min_run <= k (<= max_run).
    RunFamily {
        left: Letter,
        filler: Letter,
        right: Letter,
        min_run: usize,
        max_run: Option<usize>,
    },
}

impl ForbiddenSpec {
    pub fn admits(&self, w: &CyclicWord) -> bool {
        for rule in &self.rules {
            match rule {
                ForbiddenRule::Factor(f) => {
                    if w.contains_cyclic_subword(f) {
                        return false;
                    }
                }
                ForbiddenRule::RunFamily {
                    left,
                    filler,
                    right,
                    min_run,
                    max_run,
                } => {
                    let hi = match max_run {
                        Some(m) => *m,
                        // a factor of the periodic word uses at most len
                        // distinct filler positions plus wraparound slack
                        None => w.len(),
                    };
                    for k in *min_run..=hi {
                        let mut letters = vec![*left];
                        letters.extend(std::iter::repeat_n(*filler, k));
                        letters.push(*right);
                        let f = match Word::reduce(self.rank, letters) {
                            Ok(f) => f,
                            Err(_) => return false,
                        };
                        if w.contains_cyclic_subword(&f) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl LanguageSpec {
    pub fn rank(&self) -> u16 {
        match self {
            LanguageSpec::Machine(m) => m.rank(),
            LanguageSpec::Forbidden(f) => f.rank,
            LanguageSpec::Tree(_) | LanguageSpec::DecidedPp => 2,
            LanguageSpec::CommutatorKernel(r) => *r,
        }
    }

    pub fn contains(&self, w: &CyclicWord) -> Result<bool, PotposError> {
        match self {
            LanguageSpec::Machine(m) => Ok(m.accepts_cyclic(w)),
            LanguageSpec::Forbidden(f) => Ok(f.admits(w)),
            LanguageSpec::Tree(t) => tree_member(t, w),
            LanguageSpec::DecidedPp => {
                Ok(decide_pp2(&w.to_word(), None)?.verdict == Verdict::PotentiallyPositive)
            }
            LanguageSpec::CommutatorKernel(_) => Ok(w.abelianize().iter().all(|&e| e == 0)),
        }
    }
}

/// Forbidden-subword description of the limit language (the f2 machine's
/// language): no BA, no AB, no B a^k B for any k.
pub fn rinf_forbidden_spec() -> ForbiddenSpec {
    ForbiddenSpec {
        rank: 2,
        rules: vec![
            ForbiddenRule::Factor(Word::parse(2, "BA").unwrap()),
            ForbiddenRule::Factor(Word::parse(2, "AB").unwrap()),
            ForbiddenRule::RunFamily {
                left: lp('B'),
                filler: lp('a'),
                right: lp('B'),
                min_run: 0,
                max_run: None,
            },
        ],
    }
}

/// Forbidden-subword description of the level-n language.
pub fn rn_forbidden_spec(n: usize) -> ForbiddenSpec {
    ForbiddenSpec {
        rank: 2,
        rules: vec![
            ForbiddenRule::Factor(Word::parse(2, "BA").unwrap()),
            ForbiddenRule::Factor(Word::parse(2, "AB").unwrap()),
            ForbiddenRule::RunFamily {
                left: lp('B'),
                filler: lp('a'),
                right: lp('B'),
                min_run: 0,
                max_run: Some(n),
            },
        ],
    }
}

// ---- syllable-level cyclic structure for the encodings ----

/// Cyclic runs (letter, length, start index) of a nonempty cyclic word,
/// with the seam merged so the first run may start near the end.
fn cyclic_runs(w: &CyclicWord) -> Vec<(Letter, usize, usize)> {
    let n = w.len();
    let letters = w.letters();
    let mut runs: Vec<(Letter, usize, usize)> = Vec::new();
    let mut i = 0usize;
    while i < n {
        let l = letters[i];
        let mut j = i;
        while j < n && letters[j] == l {
            j += 1;
        }
        runs.push((l, j - i, i));
        i = j;
    }
    if runs.len() > 1 {
        let (l0, c0, _s0) = runs[0];
        let &(ll, cl, sl) = runs.last().unwrap();
        if l0 == ll {
            runs[0] = (l0, c0 + cl, sl);
            runs.pop();
        }
    }
    runs
}

/// Minimum a-run length strictly between two consecutive B's (cyclically),
/// or None when no two B's are adjacent through a-runs alone.
pub fn min_b_gap(w: &CyclicWord) -> Option<usize> {
    let runs = cyclic_runs(w);
    let m = runs.len();
    let mut best: Option<usize> = None;
    let mut upd = |v: usize| best = Some(best.map_or(v, |b: usize| b.min(v)));
    for (i, &(l, c, _)) in runs.iter().enumerate() {
        // a lone B-run is still cyclically adjacent to itself
        if l == lp('B') && (c >= 2 || m == 1) {
            upd(0);
        }
        if l == lp('a') && m >= 2 {
            let prev = runs[(i + m - 1) % m].0;
            let next = runs[(i + 1) % m].0;
            if prev == lp('B') && next == lp('B') {
                upd(c);
            }
        }
    }
    best
}

fn max_abar_run(w: &CyclicWord) -> usize {
    cyclic_runs(w)
        .iter()
        .filter(|&&(l, _, _)| l == lp('A'))
        .map(|&(_, c, _)| c)
        .max()
        .unwrap_or(0)
}

/// Fast membership predicate for the level-n left-offshoot language:
/// in the level-n language, with every A-run between b's of length at most
/// n + 2 and no pure-A cycle. Equals the tree predicate R^n L.
pub fn in_rnl(w: &CyclicWord, n: usize) -> bool {
    if w.is_empty() || w.rank() != 2 {
        return w.is_empty();
    }
    if !in_goldstein_set(w) {
        return false;
    }
    if w.contains_cyclic_subword(&Word::parse(2, "BA").unwrap())
        || w.contains_cyclic_subword(&Word::parse(2, "AB").unwrap())
    {
        return false;
    }
    if let Some(gap) = min_b_gap(w) {
        if gap <= n {
            return false;
        }
    }
    if w.letters().iter().any(|&l| l == lp('A')) {
        if w.letters().iter().all(|&l| l == lp('A')) {
            return false;
        }
        if max_abar_run(w) > n + 2 {
            return false;
        }
    }
    true
}

/// The largest n with `in_rnl(w, n)`, i.e. min B-gap minus one; None when the
/// word has no B-to-B segment (every level admits it) or is out of domain.
pub fn maximal_rnl_level(w: &CyclicWord) -> Option<usize> {
    let gap = min_b_gap(w)?;
    let n = gap.checked_sub(1)?;
    in_rnl(w, n).then_some(n)
}

/// A maximal group of s >= 2 B's separated by a-runs, located by letter
/// indices, together with its flanking a-runs. Such groups are exactly the
/// factors forbidden in the limit language.
#[derive(Debug, Clone)]
struct Segment {
    /// Indices of the B letters, in cyclic order.
    b_positions: Vec<usize>,
    /// Length of the a-run before the first B (>= 1).
    k0: usize,
    /// Lengths of the a-runs between consecutive B's.
    gaps: Vec<usize>,
    /// Length of the a-run after the last B (>= 1).
    ks: usize,
    /// Start index of the replaced span (the a-run before the first B).
    span_start: usize,
    /// Total letters replaced (excluding the enclosing b's).
    span_len: usize,
}

fn find_segments(w: &CyclicWord) -> Vec<Segment> {
    let n = w.len();
    let at = |i: usize| w.letter_at(i);
    let b_pos: Vec<usize> = (0..n).filter(|&i| at(i) == lp('B')).collect();
    let mut used = vec![false; n];
    let mut segs = Vec::new();
    for &p in &b_pos {
        if used[p] {
            continue;
        }
        // collect the maximal group around p through pure a-runs
        let mut group = vec![p];
        loop {
            let last = *group.last().unwrap();
            let mut j = (last + 1) % n;
            while at(j) == lp('a') {
                j = (j + 1) % n;
            }
            if at(j) == lp('B') && j != group[0] {
                group.push(j);
            } else {
                break;
            }
        }
        loop {
            let first = group[0];
            let mut j = (first + n - 1) % n;
            while at(j) == lp('a') {
                j = (j + n - 1) % n;
            }
            if at(j) == lp('B') && j != *group.last().unwrap() && !group.contains(&j) {
                group.insert(0, j);
            } else {
                break;
            }
        }
        for &g in &group {
            used[g] = true;
        }
        if group.len() < 2 {
            continue;
        }
        let first = group[0];
        let mut i = (first + n - 1) % n;
        let mut k0 = 0usize;
        while at(i) == lp('a') {
            k0 += 1;
            i = (i + n - 1) % n;
        }
        let last = *group.last().unwrap();
        let mut j = (last + 1) % n;
        let mut ks = 0usize;
        while at(j) == lp('a') {
            ks += 1;
            j = (j + 1) % n;
        }
        let gaps: Vec<usize> = group
            .windows(2)
            .map(|p| (p[1] + n - p[0]) % n - 1)
            .collect();
        let span_start = (first + n - k0) % n;
        let span_len = k0 + ks + group.len() + gaps.iter().sum::<usize>();
        segs.push(Segment {
            b_positions: group,
            k0,
            gaps,
            ks,
            span_start,
            span_len,
        });
    }
    segs.sort_by_key(|s| s.b_positions[0]);
    segs
}

fn check_encode_domain(w: &CyclicWord, n: usize) -> Result<(), PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    if !in_rnl(w, n) {
        return Err(PotposError::NotInDomain(format!(
            "word is not in the level-{n} left-offshoot language"
        )));
    }
    if !w.letters().iter().any(|&l| l == lp('b')) {
        return Err(PotposError::NotInDomain("word contains no b".into()));
    }
    Ok(())
}

fn rebuild_with_replacements(
    w: &CyclicWord,
    repl: &[(usize, usize, Vec<Letter>)],
) -> Result<CyclicWord, PotposError> {
    let n = w.len();
    let mut covered = vec![false; n];
    for &(start, len, _) in repl {
        for t in 0..len {
            covered[(start + t) % n] = true;
        }
    }
    let anchor = (0..n)
        .find(|&i| !covered[i])
        .expect("enclosing b letters are never replaced");
    let by_start: std::collections::HashMap<usize, (usize, &Vec<Letter>)> = repl
        .iter()
        .map(|&(start, len, ref letters)| (start, (len, letters)))
        .collect();
    let mut out: Vec<Letter> = Vec::with_capacity(n + 8);
    let mut i = anchor;
    loop {
        if let Some(&(len, letters)) = by_start.get(&i) {
            out.extend(letters.iter().copied());
            i = (i + len) % n;
        } else {
            out.push(w.letter_at(i));
            i = (i + 1) % n;
        }
        if i == anchor {
            break;
        }
    }
    Ok(CyclicWord::reduce(2, out)?)
}

/// Replace every forbidden segment with its same-length image, carrying the
/// word into the limit language. Identity when no segment exists.
///
/// segment  b a^k0 (B a^(n+k_i))_{i<s} B a^ks b
/// image    b a^(k0-1) b A^(n+k1+2) (b A^(n+k_i))_{2<=i<s} b a^(ks-1) b
pub fn encode_f(n: usize, w: &CyclicWord) -> Result<CyclicWord, PotposError> {
    check_encode_domain(w, n)?;
    let segs = find_segments(w);
    if segs.is_empty() {
        return Ok(w.clone());
    }
    let mut repl = Vec::new();
    for seg in &segs {
        let mut letters: Vec<Letter> = Vec::with_capacity(seg.span_len);
        letters.extend(std::iter::repeat_n(lp('a'), seg.k0 - 1));
        letters.push(lp('b'));
        letters.extend(std::iter::repeat_n(lp('A'), seg.gaps[0] + 2));
        for &g in &seg.gaps[1..] {
            letters.push(lp('b'));
            letters.extend(std::iter::repeat_n(lp('A'), g));
        }
        letters.push(lp('b'));
        letters.extend(std::iter::repeat_n(lp('a'), seg.ks - 1));
        debug_assert_eq!(letters.len(), seg.span_len, "encoding preserves length");
        repl.push((seg.span_start, seg.span_len, letters));
    }
    rebuild_with_replacements(w, &repl)
}

/// An encoded chain in an image word: the span to restore plus decoded runs.
struct Chain {
    span_start: usize,
    span_len: usize,
    /// leading a-run length inside the span
    j0: usize,
    /// A-run lengths in order
    runs: Vec<usize>,
    /// trailing a-run length inside the span
    js: usize,
}

/// Scan for chains `b a^j0 b (A^m b)+ a^js b` whose first A-run satisfies
/// `accept_first` and is preceded by `b a^j0 b` (not by an A-run).
fn find_chains(w: &CyclicWord, accept_first: impl Fn(usize) -> bool) -> Vec<Chain> {
    let n = w.len();
    let at = |i: usize| w.letter_at(i);
    let mut chains = Vec::new();
    for i in 0..n {
        if at(i) != lp('A') || at((i + n - 1) % n) == lp('A') {
            continue;
        }
        // run length at i
        let mut c = 0usize;
        let mut j = i;
        while at(j) == lp('A') && c < n {
            c += 1;
            j = (j + 1) % n;
        }
        if !accept_first(c) {
            continue;
        }
        // preceding must be: b, then a-run (possibly empty), then b
        let p = (i + n - 1) % n;
        if at(p) != lp('b') {
            continue;
        }
        let mut q = (p + n - 1) % n;
        let mut j0 = 0usize;
        while at(q) == lp('a') {
            j0 += 1;
            q = (q + n - 1) % n;
        }
        if at(q) != lp('b') {
            continue;
        }
        // walk the chain: (b A^m)* then b a^js b
        let mut runs = vec![c];
        let mut k = j; // index of the b after the first A-run
        debug_assert_eq!(at(k), lp('b'));
        loop {
            let nxt = (k + 1) % n;
            if at(nxt) == lp('A') {
                let mut c2 = 0usize;
                let mut t = nxt;
                while at(t) == lp('A') {
                    c2 += 1;
                    t = (t + 1) % n;
                }
                runs.push(c2);
                k = t;
            } else {
                break;
            }
        }
        let mut t = (k + 1) % n;
        let mut js = 0usize;
        while at(t) == lp('a') {
            js += 1;
            t = (t + 1) % n;
        }
        if at(t) != lp('b') {
            continue;
        }
        let span_start = (q + 1) % n;
        let span_len = (t + n - span_start) % n;
        chains.push(Chain {
            span_start,
            span_len,
            j0,
            runs,
            js,
        });
    }
    chains
}

/// Invert [`encode_f`]: find each chain whose first A-run has length
/// >= n + 3 and restore the original segment.
pub fn decode_f(n: usize, w: &CyclicWord) -> Result<CyclicWord, PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    let chains = find_chains(w, |c| c >= n + 3);
    if chains.is_empty() {
        return Ok(w.clone());
    }
    let mut repl = Vec::new();
    for ch in &chains {
        let mut letters: Vec<Letter> = Vec::with_capacity(ch.span_len);
        letters.extend(std::iter::repeat_n(lp('a'), ch.j0 + 1));
        letters.push(lp('B'));
        letters.extend(std::iter::repeat_n(lp('a'), ch.runs[0] - 2));
        for &m in &ch.runs[1..] {
            letters.push(lp('B'));
            letters.extend(std::iter::repeat_n(lp('a'), m));
        }
        letters.push(lp('B'));
        letters.extend(std::iter::repeat_n(lp('a'), ch.js + 1));
        repl.push((ch.span_start, ch.span_len, letters));
    }
    rebuild_with_replacements(w, &repl)
}

/// Encode with a signal: the segment whose first B has least index in the
/// canonical rotation becomes
/// `b a^(k0-1) b A b A^(n+3) (b A^(k_i))_{i<s} b a^(ks-1) b`
/// and every other segment uses the [`encode_f`] replacement. Requires `n`
/// to be the maximal level admitting the word.
pub fn encode_signal(n: usize, w: &CyclicWord) -> Result<CyclicWord, PotposError> {
    check_encode_domain(w, n)?;
    if maximal_rnl_level(w) != Some(n) {
        return Err(PotposError::NotInDomain(format!(
            "level {n} is not the maximal admitting level"
        )));
    }
    let segs = find_segments(w);
    if segs.is_empty() {
        return Err(PotposError::NotInDomain(
            "word has no forbidden segment to signal".into(),
        ));
    }
    let mut repl = Vec::new();
    for (idx, seg) in segs.iter().enumerate() {
        let mut letters: Vec<Letter> = Vec::new();
        letters.extend(std::iter::repeat_n(lp('a'), seg.k0 - 1));
        if idx == 0 {
            letters.push(lp('b'));
            letters.push(lp('A'));
            letters.push(lp('b'));
            letters.extend(std::iter::repeat_n(lp('A'), n + 3));
            for &g in &seg.gaps {
                letters.push(lp('b'));
                letters.extend(std::iter::repeat_n(lp('A'), g - n));
            }
        } else {
            letters.push(lp('b'));
            letters.extend(std::iter::repeat_n(lp('A'), seg.gaps[0] + 2));
            for &g in &seg.gaps[1..] {
                letters.push(lp('b'));
                letters.extend(std::iter::repeat_n(lp('A'), g));
            }
        }
        letters.push(lp('b'));
        letters.extend(std::iter::repeat_n(lp('a'), seg.ks - 1));
        repl.push((seg.span_start, seg.span_len, letters));
    }
    rebuild_with_replacements(w, &repl)
}

/// Recover the level and original word from a signal-encoded image. The
/// signal is the marker `b a^i b A b A^(m+3) b` with the largest `m`.
pub fn decode_signal(w: &CyclicWord) -> Result<(usize, CyclicWord), PotposError> {
    if w.rank() != 2 {
        return Err(PotposError::RankMismatch(w.rank()));
    }
    // markers: chains whose first run is exactly 1 followed by a run >= 3
    let candidates: Vec<Chain> = find_chains(w, |c| c == 1)
        .into_iter()
        .filter(|ch| ch.runs.len() >= 2 && ch.runs[1] >= 3)
        .collect();
    let best = candidates
        .iter()
        .map(|ch| ch.runs[1] - 3)
        .max()
        .ok_or(PotposError::NoSignal)?;
    let n = best;
    let signal: Vec<&Chain> = candidates.iter().filter(|ch| ch.runs[1] - 3 == n).collect();
    if signal.len() != 1 {
        return Err(PotposError::NoSignal);
    }
    let signal = signal[0];
    // restore the signal segment: runs[0] = 1 (marker), runs[1] = n+3,
    // runs[2..] = k_1 .. k_{s-1}
    let mut letters: Vec<Letter> = Vec::with_capacity(signal.span_len);
    letters.extend(std::iter::repeat_n(lp('a'), signal.j0 + 1));
    for &m in &signal.runs[2..] {
        letters.push(lp('B'));
        letters.extend(std::iter::repeat_n(lp('a'), n + m));
    }
    letters.push(lp('B'));
    letters.extend(std::iter::repeat_n(lp('a'), signal.js + 1));
    let intermediate = rebuild_with_replacements(
        w,
        &[(signal.span_start, signal.span_len, letters)],
    )?;
    // the remaining chains are plain encode_f images at level n
    let restored = decode_f(n, &intermediate)?;
    Ok((n, restored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::build_f2_lower;

    fn w(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::parse(2, s).unwrap()
    }

    #[test]
    fn goldstein_check_examples() {
        assert!(goldstein_check(&cw("abAB")).unwrap().is_empty());
        let pairs = goldstein_check(&cw("BaaBabAAAba")).unwrap();
        assert!(pairs.contains(&CriterionPair { x: lp('B'), y: lp('a') }));
        let vac = goldstein_check(&cw("aaa")).unwrap();
        assert!(vac.contains(&CriterionPair { x: lp('b'), y: lp('a') }));
        assert_eq!(vac.len(), 6); // all pairs with absent x
    }

    #[test]
    fn switch_step_examples() {
        let ba = CriterionPair { x: lp('B'), y: lp('a') };
        let (img, out, _) = switch_step(&cw("Baa"), ba).unwrap();
        assert_eq!(img, cw("Ba"));
        // the image still satisfies (B, a); it also happens to admit the
        // all-but-one witness, which is the stronger stopping condition
        assert!(satisfies_pair(&img, ba));
        assert_eq!(out, SwitchOutcome::AllButOne);

        let (img, out, _) = switch_step(&cw("babAba"), ba).unwrap();
        assert_eq!(img, cw("baabbaa"));
        assert_eq!(out, SwitchOutcome::Positive);

        let err = switch_step(&cw("abAB"), ba).unwrap_err();
        assert_eq!(err, PotposError::CriterionNotSatisfied);
    }

    #[test]
    fn switch_step_fail_case() {
        // the first switch on BaBabAAAba keeps the criterion; the second fails
        let ba = CriterionPair { x: lp('B'), y: lp('a') };
        let (img, _, _) = switch_step(&cw("BaBabAAAba"), ba).unwrap();
        let sat = goldstein_check(&img).unwrap();
        assert!(sat.is_empty(), "image {img} should fail every pair");
    }

    #[test]
    fn all_but_one_examples() {
        let sigma = all_but_one(&w("aB"), 2).unwrap().unwrap();
        let img = sigma.apply_cyclic(&cw("aB")).unwrap();
        assert_eq!(img, cw("a"));

        let sigma = all_but_one(&w("aBaB"), 2).unwrap().unwrap();
        let img = sigma.apply_cyclic(&cw("aBaB")).unwrap();
        assert_eq!(img, cw("aa"));

        let word3 = Word::parse(3, "cAc").unwrap();
        let sigma = all_but_one(&word3, 3).unwrap().unwrap();
        let img = sigma.apply_cyclic(&word3.cyclic_reduce().0).unwrap();
        assert_eq!(img, CyclicWord::parse(3, "cca").unwrap());

        // both generators mixed: no witness
        assert!(all_but_one(&w("aBAb"), 2).unwrap().is_none());
    }

    #[test]
    fn decide_pp_examples() {
        let d = decide_pp2(&w("BaaBabAAAba"), None).unwrap();
        assert_eq!(d.verdict, Verdict::PotentiallyPositive);
        let img = verify_witness(&w("BaaBabAAAba"), d.witness.as_ref().unwrap()).unwrap();
        assert!(img.is_positive_word());
        assert_eq!(img, cw("aabbb"));
        assert_eq!(d.steps_used, 4);

        let d = decide_pp2(&w("abAB"), None).unwrap();
        assert_eq!(d.verdict, Verdict::NotPotentiallyPositive);
        assert_eq!(d.certificate.as_ref().unwrap().step, 0);

        let d = decide_pp2(&w("aB"), None).unwrap();
        assert_eq!(d.verdict, Verdict::PotentiallyPositive);
        let img = verify_witness(&w("aB"), d.witness.as_ref().unwrap()).unwrap();
        assert_eq!(img, cw("a"));

        let d = decide_pp2(&w("BaBabAAAba"), None).unwrap();
        assert_eq!(d.verdict, Verdict::NotPotentiallyPositive);
    }

    #[test]
    fn decide_pp_degenerate() {
        assert_eq!(
            decide_pp2(&w(""), None).unwrap().verdict,
            Verdict::PotentiallyPositive
        );
        let d = decide_pp2(&w("AAA"), None).unwrap();
        assert_eq!(d.verdict, Verdict::PotentiallyPositive);
        let img = verify_witness(&w("AAA"), d.witness.as_ref().unwrap()).unwrap();
        assert_eq!(img, cw("aaa"));
        // conjugate of identity
        assert_eq!(
            decide_pp2(&w("abA").concat(&w("aBA")).unwrap(), None)
                .unwrap()
                .verdict,
            Verdict::PotentiallyPositive
        );
    }

    #[test]
    fn machine_words_decided_pp() {
        let m = build_f2_lower();
        for l in 1..=7usize {
            for word in m.language(l).unwrap() {
                let d = decide_pp2(&word.to_word(), None).unwrap();
                assert_eq!(d.verdict, Verdict::PotentiallyPositive, "{word}");
                verify_witness(&word.to_word(), d.witness.as_ref().unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn tree_membership_examples() {
        let r = TreeSpec::parse("R").unwrap();
        assert!(tree_member(&r, &cw("Baa")).unwrap());
        assert!(!tree_member(&r, &cw("Ba")).unwrap());
        let empty = TreeSpec::parse("").unwrap();
        assert!(tree_member(&empty, &cw("abab")).unwrap());
        // R^n membership equals the bounded-run machine language
        for n in 0..=3usize {
            let spec = TreeSpec {
                path: vec![TreeStep::R; n],
            };
            let m = machines::build_rn(n);
            for l in 1..=7usize {
                for word in crate::words::enumerate_cyclic(2, l) {
                    assert_eq!(
                        tree_member(&spec, &word).unwrap(),
                        m.accepts_cyclic(&word),
                        "n={n} w={word}"
                    );
                }
            }
        }
    }

    #[test]
    fn tree_survival() {
        assert!(!tree_survives(&cw("abAB"), 0).unwrap());
        let m = build_f2_lower();
        for l in 1..=6usize {
            for word in m.language(l).unwrap() {
                for n in 0..=4usize {
                    assert!(tree_survives(&word, n).unwrap(), "{word} at layer {n}");
                }
            }
        }
        // tree_member("RR", w) implies tree_survives(w, 2)
        let rr = TreeSpec::parse("RR").unwrap();
        for l in 1..=6usize {
            for word in crate::words::enumerate_cyclic(2, l) {
                if tree_member(&rr, &word).unwrap() {
                    assert!(tree_survives(&word, 2).unwrap());
                }
            }
        }
    }

    #[test]
    fn rnl_predicate_matches_tree() {
        for n in 0..=2usize {
            let mut path = vec![TreeStep::R; n];
            path.push(TreeStep::L);
            let spec = TreeSpec { path };
            for l in 1..=8usize {
                for word in crate::words::enumerate_cyclic(2, l) {
                    assert_eq!(
                        in_rnl(&word, n),
                        tree_member(&spec, &word).unwrap(),
                        "n={n} w={word}"
                    );
                }
            }
        }
    }

    #[test]
    fn encode_f_examples() {
        let img = encode_f(0, &cw("baBaBab")).unwrap();
        assert_eq!(img, cw("bbAAAbb"));
        assert_eq!(decode_f(0, &img).unwrap(), cw("baBaBab"));
        // no-segment words encode to themselves
        let plain = cw("baab");
        assert_eq!(encode_f(0, &plain).unwrap(), plain);
        // out of domain
        assert!(matches!(
            encode_f(0, &cw("BB")),
            Err(PotposError::NotInDomain(_))
        ));
    }

    #[test]
    fn encode_signal_examples() {
        let img = encode_signal(0, &cw("baBaBab")).unwrap();
        assert_eq!(img, cw("bbAbAAAbAbb"));
        assert_eq!(img.len(), cw("baBaBab").len() + 4);
        let (n, back) = decode_signal(&img).unwrap();
        assert_eq!((n, back), (0, cw("baBaBab")));
        assert!(matches!(
            decode_signal(&cw("baab")),
            Err(PotposError::NoSignal)
        ));
        // non-maximal level is rejected
        assert!(matches!(
            encode_signal(1, &cw("baBaBab")),
            Err(PotposError::NotInDomain(_))
        ));
    }

    #[test]
    fn positivize_rank_examples() {
        let a3 = CyclicWord::parse(3, "a").unwrap();
        let sigma = positivize_rank_word(3, &a3).unwrap();
        assert!(sigma.moves().is_empty());

        let abc = CyclicWord::parse(3, "aBc").unwrap();
        let sigma = positivize_rank_word(3, &abc).unwrap();
        let img = sigma.apply_cyclic(&abc).unwrap();
        assert!(img.is_positive_word(), "image {img}");

        // not a machine word
        let bad = CyclicWord::parse(3, "Ab").unwrap();
        assert!(matches!(
            positivize_rank_word(3, &bad),
            Err(PotposError::NotMachineWord)
        ));
    }

    #[test]
    fn decision_serializes_to_stable_json() {
        let d = decide_pp2(&w("aB"), None).unwrap();
        let js = serde_json::to_value(&d).unwrap();
        assert_eq!(js["verdict"], "PP");
        assert_eq!(js["witness"][0]["sub"], "a->ab");
    }
}
