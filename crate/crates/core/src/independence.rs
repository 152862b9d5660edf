//! Independence of finite sets in the free group.
//!
//! Two unrelated checkers:
//!
//! * [`check_significant_factors`] applies the significant-factor criterion
//!   with the central axis letter of each `x^w` as its significant factor.
//!   It is only sufficient: a failure says the criterion does not apply with
//!   central factors, not that the set is dependent.
//! * [`nielsen_independent`] runs Nielsen reduction to a Nielsen-reduced set
//!   and decides independence exactly.

use std::fmt;
use std::sync::Arc;

use crate::conj_quandle::QuandleElement;
use crate::error::{Error, Result};
use crate::free_group::{self, cancellation_depth, same_alphabet, Alphabet, Letter, Sign, Word};

/// A member of `S ∪ S^-1` together with its significant position
/// (1-based, into the group word).
#[derive(Debug, Clone)]
pub struct SignedElement {
    pub index: usize,
    pub sign: Sign,
    pub word: Vec<Letter>,
    pub significant_index: usize,
}

impl SignedElement {
    pub fn new(index: usize, base: &QuandleElement, sign: Sign) -> Self {
        let word = base.actor_letters(Sign::Pos);
        let central = base.tail_len() + 1;
        let (word, significant_index) = match sign {
            Sign::Pos => (word, central),
            Sign::Neg => {
                let len = word.len();
                (free_group::inverse(&word), len + 1 - central)
            }
        };
        SignedElement {
            index,
            sign,
            word,
            significant_index,
        }
    }
}

/// An ordered pair `(u, v)` whose product cancels into a significant factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub left: QuandleElement,
    pub left_sign: Sign,
    pub right: QuandleElement,
    pub right_sign: Sign,
    pub depth: usize,
    /// `|u| - i(u)`: the most cancellation `u` tolerates.
    pub left_limit: usize,
    /// `i(v) - 1`: the most cancellation `v` tolerates.
    pub right_limit: usize,
}

fn write_signed(f: &mut fmt::Formatter<'_>, e: &QuandleElement, s: Sign) -> fmt::Result {
    match s {
        Sign::Pos => write!(f, "{e}"),
        Sign::Neg => write!(f, "({e})^-1"),
    }
}

impl fmt::Display for PairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_signed(f, &self.left, self.left_sign)?;
        f.write_str(", ")?;
        write_signed(f, &self.right, self.right_sign)?;
        write!(
            f,
            ") cancels {} letter(s); limits {} and {}",
            self.depth, self.left_limit, self.right_limit
        )
    }
}

#[derive(Debug, Clone)]
pub struct HallReport {
    pub elements: Vec<QuandleElement>,
    pub checked_pairs: usize,
    pub failures: Vec<PairFailure>,
}

impl HallReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "independent (central factors are significant)"
        } else {
            "criterion inapplicable with central factors"
        }
    }
}

/// Significant-factor check with central factors. Pairs are visited sign
/// block by sign block (`++`, `+-`, `-+`, `--`), row-major inside a block;
/// all failing pairs are collected in that order.
pub fn check_significant_factors(set: &[QuandleElement]) -> Result<HallReport> {
    let first = set.first().ok_or(Error::EmptyGeneratorSet)?;
    let mut elements: Vec<QuandleElement> = Vec::with_capacity(set.len());
    for e in set {
        if !same_alphabet(first.alphabet(), e.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        if !elements.contains(e) {
            elements.push(e.clone());
        }
    }
    let signed: [Vec<SignedElement>; 2] = [Sign::Pos, Sign::Neg].map(|s| {
        elements
            .iter()
            .enumerate()
            .map(|(i, e)| SignedElement::new(i, e, s))
            .collect()
    });

    let mut checked_pairs = 0;
    let mut failures = Vec::new();
    for (lu, lv) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for u in &signed[lu] {
            for v in &signed[lv] {
                if u.index == v.index && u.sign != v.sign {
                    continue;
                }
                checked_pairs += 1;
                let depth = cancellation_depth(&u.word, &v.word);
                let left_limit = u.word.len() - u.significant_index;
                let right_limit = v.significant_index - 1;
                if depth > left_limit || depth > right_limit {
                    failures.push(PairFailure {
                        left: elements[u.index].clone(),
                        left_sign: u.sign,
                        right: elements[v.index].clone(),
                        right_sign: v.sign,
                        depth,
                        left_limit,
                        right_limit,
                    });
                }
            }
        }
    }
    Ok(HallReport {
        elements,
        checked_pairs,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NielsenOutcome {
    /// Reached a Nielsen-reduced set of full size: the input is a free basis
    /// of the subgroup it generates.
    Reduced,
    /// Some word became the identity.
    ReachedIdentity,
    /// Two words became equal or mutually inverse.
    Collapsed,
}

#[derive(Debug, Clone)]
pub struct NielsenReport {
    pub input: Vec<Word>,
    pub reduced: Vec<Word>,
    pub moves: usize,
    pub outcome: NielsenOutcome,
}

impl NielsenReport {
    pub fn passed(&self) -> bool {
        self.outcome == NielsenOutcome::Reduced && self.reduced.len() == self.input.len()
    }

    pub fn verdict(&self) -> &'static str {
        match self.outcome {
            NielsenOutcome::Reduced => "independent",
            NielsenOutcome::ReachedIdentity => "dependent (a word reduced to the identity)",
            NielsenOutcome::Collapsed => "dependent (two words coincided up to inversion)",
        }
    }
}

struct Nielsen {
    words: Vec<Vec<Letter>>,
    moves: usize,
}

enum Step {
    Moved,
    Done,
    Failed(NielsenOutcome),
}

impl Nielsen {
    fn collapsed(&self) -> bool {
        let n = self.words.len();
        (0..n).any(|i| {
            (i + 1..n).any(|j| {
                self.words[i] == self.words[j] || self.words[i] == free_group::inverse(&self.words[j])
            })
        })
    }

    fn replace(&mut self, i: usize, w: Vec<Letter>) -> Step {
        self.words[i] = w;
        self.moves += 1;
        if self.words[i].is_empty() {
            Step::Failed(NielsenOutcome::ReachedIdentity)
        } else if self.collapsed() {
            Step::Failed(NielsenOutcome::Collapsed)
        } else {
            Step::Moved
        }
    }

    /// First move `w_i -> w_i w_j^{±1}` or `w_j^{±1} w_i` that shortens `w_i`.
    fn length_move(&mut self) -> Option<Step> {
        let n = self.words.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let wi = &self.words[i];
                let wj = &self.words[j];
                let wj_inv = free_group::inverse(wj);
                let candidates = [
                    (wi.as_slice(), wj.as_slice()),
                    (wi.as_slice(), wj_inv.as_slice()),
                    (wj.as_slice(), wi.as_slice()),
                    (wj_inv.as_slice(), wi.as_slice()),
                ];
                let shorter = candidates
                    .into_iter()
                    .find(|(l, r)| free_group::product_len(l, r) < wi.len())
                    .map(|(l, r)| free_group::product(l, r));
                if let Some(w) = shorter {
                    return Some(self.replace(i, w));
                }
            }
        }
        None
    }

    /// With no shortening move left, looks for `u v w` in which an
    /// even-length `v = a b` cancels completely (`u = u' a^-1`,
    /// `w = b^-1 w'`) and applies the length-preserving move that replaces
    /// the larger of the half-words `a`, `b^-1` by the smaller one.
    fn half_word_move(&mut self) -> Option<Step> {
        let n = self.words.len();
        let signed = |k: usize, s: Sign| free_group::signed_power(&self.words[k], s);
        for j in 0..n {
            if !self.words[j].len().is_multiple_of(2) {
                continue;
            }
            for sv in [Sign::Pos, Sign::Neg] {
                let v = signed(j, sv);
                let m = v.len() / 2;
                let a = &v[..m];
                let b_inv = free_group::inverse(&v[m..]);
                let a_inv = free_group::inverse(a);
                let mut left = None;
                let mut right = None;
                for k in (0..n).filter(|&k| k != j) {
                    for s in [Sign::Pos, Sign::Neg] {
                        let u = signed(k, s);
                        if left.is_none() && u.len() >= m && u[u.len() - m..] == a_inv[..] {
                            left = Some((k, s));
                        }
                        if right.is_none() && u.len() >= m && u[..m] == b_inv[..] {
                            right = Some((k, s));
                        }
                    }
                }
                let (Some((ku, su)), Some((kw, sw))) = (left, right) else {
                    continue;
                };
                return Some(if b_inv.as_slice() < a {
                    // u -> u v
                    let u = signed(ku, su);
                    let w = free_group::signed_power(&free_group::product(&u, &v), su);
                    self.replace(ku, w)
                } else {
                    // w -> v w
                    let u = signed(kw, sw);
                    let w = free_group::signed_power(&free_group::product(&v, &u), sw);
                    self.replace(kw, w)
                });
            }
        }
        None
    }

    fn step(&mut self) -> Step {
        if let Some(s) = self.length_move() {
            return s;
        }
        if let Some(s) = self.half_word_move() {
            return s;
        }
        Step::Done
    }
}

/// Decides whether `words` freely generate the subgroup they span, by
/// Nielsen reduction. Exact duplicates are removed first.
pub fn nielsen_independent(words: &[Word]) -> Result<NielsenReport> {
    let first = words.first().ok_or(Error::EmptyGeneratorSet)?;
    let alphabet: Arc<Alphabet> = Arc::clone(first.alphabet());
    let mut input: Vec<Word> = Vec::with_capacity(words.len());
    for w in words {
        if !same_alphabet(&alphabet, w.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        if w.is_empty() {
            return Err(Error::EmptyInputWord);
        }
        if !input.contains(w) {
            input.push(w.clone());
        }
    }
    let mut state = Nielsen {
        words: input.iter().map(|w| w.letters().to_vec()).collect(),
        moves: 0,
    };
    let outcome = if state.collapsed() {
        NielsenOutcome::Collapsed
    } else {
        loop {
            match state.step() {
                Step::Moved => {}
                Step::Done => break NielsenOutcome::Reduced,
                Step::Failed(o) => break o,
            }
        }
    };
    let reduced = state
        .words
        .into_iter()
        .map(|l| Word::from_reduced(&alphabet, l))
        .collect();
    Ok(NielsenReport {
        input,
        reduced,
        moves: state.moves,
        outcome,
    })
}

/// Nielsen check on the group words of quandle elements.
pub fn nielsen_independent_elements(set: &[QuandleElement]) -> Result<NielsenReport> {
    let words: Vec<Word> = set.iter().map(QuandleElement::to_group_word).collect();
    nielsen_independent(&words)
}
