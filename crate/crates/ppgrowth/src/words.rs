//! Free-group word kernel: letters, reduction, cyclic words, subword search,
//! syllables, abelianization, enumeration, and automorphism application.
//!
//! Generators are written `a..g` with inverses `A..G` (ranks up to 7), or as
//! `x<i>` / `X<i>` tokens for arbitrary rank. All values are immutable after
//! construction and all operations are pure.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} out of range for rank {1}")]
    InvalidLetter(String, u16),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u16, u16),
    #[error("malformed word literal {0:?}: {1}")]
    Parse(String, String),
    #[error("substitution for x{gen} must have the form u*x{gen}*v with u, v free of x{gen}")]
    BadSubstitution { gen: u16 },
}

/// A generator or inverse generator. Stored as a signed 1-based index:
/// `+g` is the generator, `-g` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i16);

impl Letter {
    pub fn positive(gen: u16) -> Letter {
        assert!(gen >= 1 && gen <= i16::MAX as u16);
        Letter(gen as i16)
    }

    pub fn negative(gen: u16) -> Letter {
        assert!(gen >= 1 && gen <= i16::MAX as u16);
        Letter(-(gen as i16))
    }

    /// 1-based generator index.
    pub fn generator(self) -> u16 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.0 == -other.0
    }

    fn check_rank(self, rank: u16) -> Result<(), WordError> {
        if self.generator() >= 1 && self.generator() <= rank {
            Ok(())
        } else {
            Err(WordError::InvalidLetter(self.to_string(), rank))
        }
    }

    /// Compact single-char form for generators 1..=7.
    pub fn to_char(self) -> Option<char> {
        let g = self.generator();
        if (1..=7).contains(&g) {
            let base = if self.is_positive() { b'a' } else { b'A' };
            Some((base + (g - 1) as u8) as char)
        } else {
            None
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='g' => Some(Letter::positive(c as u16 - 'a' as u16 + 1)),
            'A'..='G' => Some(Letter::negative(c as u16 - 'A' as u16 + 1)),
            _ => None,
        }
    }
}

/// Letter order `a < A < b < B < c < C < ...` used for canonical rotations.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.generator(), !self.is_positive()).cmp(&(other.generator(), !other.is_positive()))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => {
                if self.is_positive() {
                    write!(f, "x{}", self.generator())
                } else {
                    write!(f, "X{}", self.generator())
                }
            }
        }
    }
}

/// Free reduction of a raw letter sequence, in place on a buffer.
fn reduce_letters(raw: impl IntoIterator<Item = Letter>, out: &mut Vec<Letter>) {
    out.clear();
    for l in raw {
        if out.last().is_some_and(|&p| p.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

/// A reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: u16,
    letters: Vec<Letter>,
}

impl Word {
    /// Freely reduce a raw letter sequence.
    pub fn reduce(rank: u16, raw: impl IntoIterator<Item = Letter>) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for l in raw {
            l.check_rank(rank)?;
            if letters.last().is_some_and(|&p: &Letter| p.is_inverse_of(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(Word { rank, letters })
    }

    pub fn identity(rank: u16) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Parse either the compact `[a-gA-G]*` form or whitespace-separated
    /// `x<i>` / `X<i>` tokens. The empty string is the identity.
    pub fn parse(rank: u16, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::identity(rank));
        }
        let raw = parse_letters(text)?;
        Word::reduce(rank, raw)
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive_word(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenate and reduce.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        Word::reduce(
            self.rank,
            self.letters.iter().chain(other.letters.iter()).copied(),
        )
    }

    /// Strip inverse first/last pairs, returning the cyclically reduced core
    /// `c` (in canonical rotation) and the conjugator `v` with
    /// `self = v c v^-1`. The rotation performed by canonicalization is
    /// absorbed into `v`.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].is_inverse_of(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let middle = &self.letters[lo..hi];
        let k = least_rotation(middle);
        let mut conj = self.letters[..lo].to_vec();
        conj.extend_from_slice(&middle[..k]);
        let mut rotated = middle[k..].to_vec();
        rotated.extend_from_slice(&middle[..k]);
        let core = CyclicWord::from_cyclically_reduced(self.rank, rotated);
        (
            core,
            Word {
                rank: self.rank,
                letters: conj,
            },
        )
    }

    /// Exponent-sum vector, one entry per generator.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for l in &self.letters {
            let i = (l.generator() - 1) as usize;
            v[i] += if l.is_positive() { 1 } else { -1 };
        }
        v
    }

    /// Maximal runs of a single generator with signed exponents.
    pub fn syllables(&self) -> Vec<(u16, i64)> {
        syllables_of(&self.letters, false)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(&self.letters, f)
    }
}

/// A cyclically reduced cyclic word stored in its canonical (lexicographically
/// least) rotation under the order `a < A < b < B < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rank: u16,
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Reduce, cyclically reduce, and canonicalize an arbitrary raw sequence.
    pub fn reduce(rank: u16, raw: impl IntoIterator<Item = Letter>) -> Result<CyclicWord, WordError> {
        let w = Word::reduce(rank, raw)?;
        Ok(w.cyclic_reduce().0)
    }

    pub fn parse(rank: u16, text: &str) -> Result<CyclicWord, WordError> {
        let w = Word::parse(rank, text)?;
        Ok(w.cyclic_reduce().0)
    }

    /// Wrap a sequence already known to be reduced with non-inverse ends.
    /// Canonicalizes the rotation.
    pub(crate) fn from_cyclically_reduced(rank: u16, mut letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(letters.windows(2).all(|p| !p[0].is_inverse_of(p[1])));
        debug_assert!(letters.len() < 2 || !letters[0].is_inverse_of(letters[letters.len() - 1]));
        let k = least_rotation(&letters);
        letters.rotate_left(k);
        CyclicWord { rank, letters }
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    /// Letters of the canonical rotation.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive_word(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// A linear representative (the canonical rotation).
    pub fn to_word(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.clone(),
        }
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }

    /// True iff `pattern` occurs as a factor of the bi-infinite periodic
    /// sequence of this cyclic word.
    pub fn contains_cyclic_subword(&self, pattern: &Word) -> bool {
        let m = pattern.len();
        if m == 0 {
            return true;
        }
        let n = self.letters.len();
        if n == 0 {
            return false;
        }
        let pat = pattern.letters();
        'outer: for start in 0..n {
            #[allow(clippy::needless_range_loop)]
            for j in 0..m {
                if self.letters[(start + j) % n] != pat[j] {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    pub fn abelianize(&self) -> Vec<i64> {
        self.to_word().abelianize()
    }

    /// Syllables with the seam merged: the first and last run of the same
    /// generator combine across the rotation point.
    pub fn syllables(&self) -> Vec<(u16, i64)> {
        syllables_of(&self.letters, true)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(&self.letters, f)
    }
}

fn format_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.iter().all(|l| l.to_char().is_some()) {
        for l in letters {
            write!(f, "{}", l.to_char().unwrap())?;
        }
        Ok(())
    } else {
        // tokens must not mix alphabets: x<i>/X<i> throughout
        let toks: Vec<String> = letters
            .iter()
            .map(|l| {
                if l.is_positive() {
                    format!("x{}", l.generator())
                } else {
                    format!("X{}", l.generator())
                }
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let mut out = Vec::new();
    if text.split_whitespace().count() > 1 || text.starts_with('x') || text.starts_with('X') {
        for tok in text.split_whitespace() {
            let (neg, digits) = match tok.strip_prefix('x') {
                Some(d) => (false, d),
                None => match tok.strip_prefix('X') {
                    Some(d) => (true, d),
                    None => {
                        // single-letter token in a space-separated list
                        if tok.len() == 1 {
                            if let Some(l) = Letter::from_char(tok.chars().next().unwrap()) {
                                out.push(l);
                                continue;
                            }
                        }
                        return Err(WordError::Parse(
                            text.to_string(),
                            format!("bad token {tok:?}"),
                        ));
                    }
                },
            };
            let gen: u16 = digits.parse().map_err(|_| {
                WordError::Parse(text.to_string(), format!("bad generator index in {tok:?}"))
            })?;
            if gen == 0 {
                return Err(WordError::Parse(text.to_string(), "index 0".into()));
            }
            out.push(if neg { Letter::negative(gen) } else { Letter::positive(gen) });
        }
    } else {
        for c in text.chars() {
            let l = Letter::from_char(c)
                .ok_or_else(|| WordError::Parse(text.to_string(), format!("bad letter {c:?}")))?;
            out.push(l);
        }
    }
    Ok(out)
}

fn syllables_of(letters: &[Letter], cyclic: bool) -> Vec<(u16, i64)> {
    let mut runs: Vec<(u16, i64)> = Vec::new();
    for l in letters {
        let sign = if l.is_positive() { 1 } else { -1 };
        match runs.last_mut() {
            Some((g, e)) if *g == l.generator() => *e += sign,
            _ => runs.push((l.generator(), sign)),
        }
    }
    if cyclic && runs.len() > 1 {
        let (g0, _) = runs[0];
        let (gl, el) = *runs.last().unwrap();
        if g0 == gl {
            runs[0].1 += el;
            runs.pop();
        }
    }
    runs
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: usize| letters[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

/// One invertible substitution move. `Substitute` is restricted to the shapes
/// `g -> g·u`, `g -> u·g`, `g -> u·g·v` with `u`, `v` free of `g` and `g^-1`,
/// which keeps the move an automorphism with an explicit inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryMove {
    Substitute { gen: u16, replacement: Word },
    Invert(u16),
    Swap(u16, u16),
}

impl ElementaryMove {
    fn validate(&self, rank: u16) -> Result<(), WordError> {
        match self {
            ElementaryMove::Substitute { gen, replacement } => {
                if *gen < 1 || *gen > rank {
                    return Err(WordError::InvalidLetter(format!("x{gen}"), rank));
                }
                if replacement.rank() != rank {
                    return Err(WordError::RankMismatch(replacement.rank(), rank));
                }
                let hits: Vec<&Letter> = replacement
                    .letters()
                    .iter()
                    .filter(|l| l.generator() == *gen)
                    .collect();
                if hits.len() != 1 || !hits[0].is_positive() {
                    return Err(WordError::BadSubstitution { gen: *gen });
                }
                Ok(())
            }
            ElementaryMove::Invert(g) => {
                if *g < 1 || *g > rank {
                    return Err(WordError::InvalidLetter(format!("x{g}"), rank));
                }
                Ok(())
            }
            ElementaryMove::Swap(g, h) => {
                for x in [g, h] {
                    if *x < 1 || *x > rank {
                        return Err(WordError::InvalidLetter(format!("x{x}"), rank));
                    }
                }
                if g == h {
                    return Err(WordError::BadSubstitution { gen: *g });
                }
                Ok(())
            }
        }
    }

    /// Image of a single letter, appended to `out` (unreduced).
    fn push_image(&self, l: Letter, out: &mut Vec<Letter>) {
        match self {
            ElementaryMove::Substitute { gen, replacement } => {
                if l.generator() == *gen {
                    if l.is_positive() {
                        out.extend_from_slice(replacement.letters());
                    } else {
                        out.extend(replacement.letters().iter().rev().map(|x| x.inverse()));
                    }
                } else {
                    out.push(l);
                }
            }
            ElementaryMove::Invert(g) => {
                out.push(if l.generator() == *g { l.inverse() } else { l });
            }
            ElementaryMove::Swap(g, h) => {
                let t = if l.generator() == *g {
                    *h
                } else if l.generator() == *h {
                    *g
                } else {
                    out.push(l);
                    return;
                };
                out.push(if l.is_positive() {
                    Letter::positive(t)
                } else {
                    Letter::negative(t)
                });
            }
        }
    }

    pub fn inverse_move(&self) -> ElementaryMove {
        match self {
            ElementaryMove::Substitute { gen, replacement } => {
                let pos = replacement
                    .letters()
                    .iter()
                    .position(|l| l.generator() == *gen)
                    .expect("validated substitution");
                let rank = replacement.rank();
                let u = Word {
                    rank,
                    letters: replacement.letters()[..pos].to_vec(),
                };
                let v = Word {
                    rank,
                    letters: replacement.letters()[pos + 1..].to_vec(),
                };
                let mut letters = u.inverse().letters.clone();
                letters.push(Letter::positive(*gen));
                letters.extend(v.inverse().letters.iter().copied());
                ElementaryMove::Substitute {
                    gen: *gen,
                    replacement: Word { rank, letters },
                }
            }
            ElementaryMove::Invert(g) => ElementaryMove::Invert(*g),
            ElementaryMove::Swap(g, h) => ElementaryMove::Swap(*g, *h),
        }
    }
}

impl fmt::Display for ElementaryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryMove::Substitute { gen, replacement } => {
                write!(f, "{}->{}", Letter::positive(*gen), replacement)
            }
            ElementaryMove::Invert(g) => {
                write!(f, "{}->{}", Letter::positive(*g), Letter::negative(*g))
            }
            ElementaryMove::Swap(g, h) => {
                write!(f, "{}<->{}", Letter::positive(*g), Letter::positive(*h))
            }
        }
    }
}

/// A free-group automorphism given as a sequence of elementary moves applied
/// left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    rank: u16,
    moves: Vec<ElementaryMove>,
}

impl Automorphism {
    pub fn new(rank: u16, moves: Vec<ElementaryMove>) -> Result<Automorphism, WordError> {
        for m in &moves {
            m.validate(rank)?;
        }
        Ok(Automorphism { rank, moves })
    }

    pub fn identity(rank: u16) -> Automorphism {
        Automorphism { rank, moves: Vec::new() }
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn moves(&self) -> &[ElementaryMove] {
        &self.moves
    }

    pub fn push(&mut self, m: ElementaryMove) -> Result<(), WordError> {
        m.validate(self.rank)?;
        self.moves.push(m);
        Ok(())
    }

    pub fn extend(&mut self, other: &Automorphism) -> Result<(), WordError> {
        if other.rank != self.rank {
            return Err(WordError::RankMismatch(other.rank, self.rank));
        }
        self.moves.extend(other.moves.iter().cloned());
        Ok(())
    }

    /// Reversed sequence of inverted moves.
    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            rank: self.rank,
            moves: self.moves.iter().rev().map(|m| m.inverse_move()).collect(),
        }
    }

    /// Letter-by-letter substitution followed by reduction, one move at a time.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.rank() != self.rank {
            return Err(WordError::RankMismatch(w.rank(), self.rank));
        }
        let mut cur = w.letters.clone();
        let mut buf = Vec::new();
        let mut reduced = Vec::new();
        for m in &self.moves {
            buf.clear();
            for &l in &cur {
                m.push_image(l, &mut buf);
            }
            reduce_letters(buf.iter().copied(), &mut reduced);
            std::mem::swap(&mut cur, &mut reduced);
        }
        Ok(Word { rank: self.rank, letters: cur })
    }

    /// Apply and cyclically reduce; well defined because each move preserves
    /// conjugacy.
    pub fn apply_cyclic(&self, w: &CyclicWord) -> Result<CyclicWord, WordError> {
        let img = self.apply(&w.to_word())?;
        Ok(img.cyclic_reduce().0)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl serde::Serialize for ElementaryMove {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        match self {
            ElementaryMove::Substitute { gen, replacement } => {
                map.serialize_entry(
                    "sub",
                    &format!("{}->{}", Letter::positive(*gen), replacement),
                )?;
            }
            ElementaryMove::Invert(g) => {
                map.serialize_entry("inv", &Letter::positive(*g).to_string())?;
            }
            ElementaryMove::Swap(g, h) => {
                map.serialize_entry(
                    "swap",
                    &format!("{}{}", Letter::positive(*g), Letter::positive(*h)),
                )?;
            }
        }
        map.end()
    }
}

/// All reduced words of exactly the given length, in lexicographic order of
/// their letter sequences.
pub fn enumerate_reduced(rank: u16, len: usize) -> ReducedWords {
    ReducedWords {
        rank,
        len,
        stack: Vec::with_capacity(len),
        done: false,
    }
}

pub struct ReducedWords {
    rank: u16,
    len: usize,
    stack: Vec<Letter>,
    done: bool,
}

impl ReducedWords {
    /// Letters in enumeration order: a < A < b < B < ...
    fn alphabet(&self) -> impl Iterator<Item = Letter> {
        let r = self.rank;
        (1..=r).flat_map(|g| [Letter::positive(g), Letter::negative(g)])
    }

    fn next_letter(&self, after: Option<Letter>, prev: Option<Letter>) -> Option<Letter> {
        let mut seen = after.is_none();
        for l in self.alphabet() {
            if !seen {
                if Some(l) == after {
                    seen = true;
                }
                continue;
            }
            if prev.is_some_and(|p| p.is_inverse_of(l)) {
                continue;
            }
            return Some(l);
        }
        None
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if self.len == 0 {
            self.done = true;
            return Some(Word::identity(self.rank));
        }
        if self.stack.is_empty() {
            // first word: extend greedily with least letters
            for _ in 0..self.len {
                let prev = self.stack.last().copied();
                let l = self.next_letter(None, prev)?;
                self.stack.push(l);
            }
        } else {
            // advance like an odometer
            loop {
                let last = self.stack.pop()?;
                let prev = self.stack.last().copied();
                if let Some(nl) = self.next_letter(Some(last), prev) {
                    self.stack.push(nl);
                    break;
                }
                if self.stack.is_empty() {
                    self.done = true;
                    return None;
                }
            }
            while self.stack.len() < self.len {
                let prev = self.stack.last().copied();
                match self.next_letter(None, prev) {
                    Some(l) => self.stack.push(l),
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
        Some(Word {
            rank: self.rank,
            letters: self.stack.clone(),
        })
    }
}

/// Every cyclically reduced cyclic word of the given length exactly once
/// (canonical rotations only).
pub fn enumerate_cyclic(rank: u16, len: usize) -> impl Iterator<Item = CyclicWord> {
    enumerate_reduced(rank, len).filter_map(move |w| {
        let ls = w.letters();
        if len >= 1 {
            if ls[0].is_inverse_of(ls[len - 1]) {
                return None;
            }
            if least_rotation(ls) != 0 {
                return None;
            }
        }
        Some(CyclicWord {
            rank,
            letters: ls.to_vec(),
        })
    })
}

/// Count of reduced words of length `n`: `2r(2r-1)^(n-1)` for `n >= 1`.
pub fn reduced_word_count(rank: u16, len: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    use num_traits::One;
    if len == 0 {
        return BigUint::one();
    }
    let r = BigUint::from(rank);
    let two_r = &r * 2u32;
    let base = &two_r - 1u32;
    two_r * base.pow((len - 1) as u32)
}

/// The set of generators occurring in a letter slice, with sign usage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignUsage {
    Absent,
    PositiveOnly,
    NegativeOnly,
    Mixed,
}

pub fn sign_usage(letters: &[Letter], gen: u16) -> SignUsage {
    let mut pos = false;
    let mut neg = false;
    for l in letters {
        if l.generator() == gen {
            if l.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
    }
    match (pos, neg) {
        (false, false) => SignUsage::Absent,
        (true, false) => SignUsage::PositiveOnly,
        (false, true) => SignUsage::NegativeOnly,
        (true, true) => SignUsage::Mixed,
    }
}

/// Generators present in the word.
pub fn generators_used(letters: &[Letter]) -> BTreeSet<u16> {
    letters.iter().map(|l| l.generator()).collect()
}

/// Longest cyclic run of `gen^-1` in a cyclic word.
pub fn max_negative_run(w: &CyclicWord, gen: u16) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let target = Letter::negative(gen);
    if w.letters().iter().all(|&l| l == target) {
        return n;
    }
    let mut best = 0usize;
    let mut run = 0usize;
    for i in 0..2 * n {
        if w.letter_at(i) == target {
            run += 1;
            best = best.max(run.min(n));
        } else {
            run = 0;
        }
    }
    best
}
