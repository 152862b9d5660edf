//! Free bases of finitely generated subquandles.
//!
//! Two constructions over a bounded closure `C`:
//!
//! * [`compute_s`]: every `x^w ∈ C` such that no `q ∈ C` and sign `ε` make
//!   `|w q^ε|` shorter than `|w|`.
//! * [`greedy_shrink`]: start from the generators and keep replacing one of
//!   them by a shorter conjugate until no move applies.
//!
//! Either candidate is only trusted after the a-posteriori checks recorded in
//! the [`BasisReport`]: witnesses that re-derive every input generator, and
//! both independence checkers.

use std::fmt;

use crate::conj_quandle::QuandleElement;
use crate::error::{Error, Result};
use crate::free_group::{self, Generator, Letter, Sign, Word};
use crate::independence::{
    check_significant_factors, nielsen_independent_elements, HallReport, NielsenReport,
};
use crate::subquandle::{ClosureSet, QuandleTerm};

/// Replacing `target = x^w` by `result = x^(w q^eps)`, which has a strictly
/// shorter tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkMove {
    pub target: QuandleElement,
    pub by: QuandleElement,
    pub eps: Sign,
    pub result: QuandleElement,
}

impl ShrinkMove {
    pub fn replays(&self) -> bool {
        self.target.act(&self.by, self.eps).as_ref() == Ok(&self.result)
            && self.result.tail_len() < self.target.tail_len()
    }
}

impl fmt::Display for ShrinkMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.eps == Sign::Pos { '*' } else { '/' };
        write!(f, "{} {op} {} = {}", self.target, self.by, self.result)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Paper,
    Greedy,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Paper => "paper",
            Method::Greedy => "greedy",
        }
    }
}

/// Result of re-running the construction at a larger bound.
#[derive(Debug, Clone)]
pub struct Stability {
    pub bound: usize,
    pub rerun_bound: usize,
    pub rerun_candidate: Vec<QuandleElement>,
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct BasisReport {
    pub method: Method,
    pub generators: Vec<QuandleElement>,
    pub bound: usize,
    pub candidate: Vec<QuandleElement>,
    /// One per input generator, as a term over `candidate`; `None` when the
    /// generator was not reached within the bound.
    pub witnesses: Vec<Option<QuandleTerm>>,
    pub hall: HallReport,
    pub nielsen: NielsenReport,
    /// Empty for [`Method::Paper`].
    pub moves: Vec<ShrinkMove>,
    pub stability: Option<Stability>,
}

impl BasisReport {
    pub fn witnesses_complete(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    /// Generation and both independence checks hold, so `candidate` is a
    /// free basis of the subquandle generated by the input.
    pub fn certified(&self) -> bool {
        self.witnesses_complete() && self.hall.passed() && self.nielsen.passed()
    }
}

/// Precomputed group words of a list of actors, for repeated shrink scans.
struct Shrinker<'a> {
    actors: &'a [QuandleElement],
    words: Vec<[Vec<Letter>; 2]>,
}

impl<'a> Shrinker<'a> {
    fn new(actors: &'a [QuandleElement]) -> Self {
        let words = actors
            .iter()
            .map(|q| [q.actor_letters(Sign::Neg), q.actor_letters(Sign::Pos)])
            .collect();
        Shrinker { actors, words }
    }

    /// First `(q, eps)` in actor order, `-1` before `+1`, with
    /// `|w q^eps| < |w|`.
    fn find(&self, axis: Generator, w: &Word) -> Option<ShrinkMove> {
        let letters = w.letters();
        for (q, pair) in self.actors.iter().zip(&self.words) {
            // |q| = 2k + 1 needs k + 1 cancellations, hence k < |w|.
            if q.tail_len() >= letters.len() {
                continue;
            }
            for (g, eps) in pair.iter().zip([Sign::Neg, Sign::Pos]) {
                if free_group::product_len(letters, g) < letters.len() {
                    let tail = Word::from_reduced(w.alphabet(), free_group::product(letters, g));
                    return Some(ShrinkMove {
                        target: QuandleElement::canonicalize(axis, w.clone()),
                        by: q.clone(),
                        eps,
                        result: QuandleElement::canonicalize(axis, tail),
                    });
                }
            }
        }
        None
    }
}

/// The first shrink move for `axis^w` using elements of `c`, if any.
/// Equal-length products cannot occur since all actors have odd length.
pub fn is_shrinkable(w: &Word, axis: Generator, c: &ClosureSet) -> Option<ShrinkMove> {
    Shrinker::new(c.elements()).find(axis, w)
}

/// Tails of the non-shrinkable elements of `c` with the given axis, in
/// closure order.
pub fn compute_t(axis: Generator, c: &ClosureSet) -> Vec<Word> {
    let shrinker = Shrinker::new(c.elements());
    c.elements()
        .iter()
        .filter(|e| e.axis() == axis && shrinker.find(axis, e.tail()).is_none())
        .map(|e| e.tail().clone())
        .collect()
}

fn candidate_s(c: &ClosureSet) -> Vec<QuandleElement> {
    c.alphabet()
        .generators()
        .flat_map(|x| {
            compute_t(x, c)
                .into_iter()
                .map(move |w| QuandleElement::canonicalize(x, w))
        })
        .collect()
}

/// Terms over `basis` for each of `targets`, read from the bounded closure
/// of `basis`.
pub fn express_all(
    targets: &[QuandleElement],
    basis: &[QuandleElement],
    bound: usize,
) -> Result<Vec<Option<QuandleTerm>>> {
    let bound = bound.max(basis.iter().map(|e| e.tail_len()).max().unwrap_or(0));
    let closure = ClosureSet::build(basis, bound)?;
    // Leaves index the deduplicated generator list; map them back to `basis`.
    let remap: Vec<usize> = closure
        .generators()
        .iter()
        .map(|g| basis.iter().position(|b| b == g).unwrap())
        .collect();
    Ok(targets
        .iter()
        .map(|t| {
            closure.express(t).ok().map(|term| relabel(term, &remap))
        })
        .collect())
}

fn relabel(term: QuandleTerm, remap: &[usize]) -> QuandleTerm {
    match term {
        QuandleTerm::Leaf(i) => QuandleTerm::Leaf(remap[i]),
        QuandleTerm::Node(a, q, eps) => QuandleTerm::Node(
            Box::new(relabel(*a, remap)),
            Box::new(relabel(*q, remap)),
            eps,
        ),
    }
}

fn finish(
    method: Method,
    c: &ClosureSet,
    generators: Vec<QuandleElement>,
    candidate: Vec<QuandleElement>,
    moves: Vec<ShrinkMove>,
) -> Result<BasisReport> {
    let witnesses = express_all(&generators, &candidate, c.bound())?;
    let hall = check_significant_factors(&candidate)?;
    let nielsen = nielsen_independent_elements(&candidate)?;
    Ok(BasisReport {
        method,
        generators,
        bound: c.bound(),
        candidate,
        witnesses,
        hall,
        nielsen,
        moves,
        stability: None,
    })
}

/// The union over all axes `x` of `x^(compute_t(x, c))`, with verification.
pub fn compute_s(c: &ClosureSet) -> Result<BasisReport> {
    let candidate = candidate_s(c);
    finish(Method::Paper, c, c.generators().to_vec(), candidate, Vec::new())
}

/// Compares [`compute_s`] on the closure at `bound` with the candidate at
/// `bound + 2`.
pub fn stability_check(gens: &[QuandleElement], bound: usize) -> Result<Stability> {
    let here = candidate_s(&ClosureSet::build(gens, bound)?);
    let rerun_bound = bound + 2;
    let there = candidate_s(&ClosureSet::build(gens, rerun_bound)?);
    let stable = here.len() == there.len() && here.iter().all(|e| there.contains(e));
    Ok(Stability {
        bound,
        rerun_bound,
        rerun_candidate: there,
        stable,
    })
}

/// Shrinks the generators in place. Each move takes the first target (in
/// working-set order) that can be shortened by an element of the bounded
/// closure of the other working elements; the shortened element replaces
/// the target, or the target is dropped if the result is already present.
pub fn greedy_shrink(gens: &[QuandleElement], c: &ClosureSet) -> Result<BasisReport> {
    let mut working: Vec<QuandleElement> = Vec::with_capacity(gens.len());
    for g in gens {
        if !c.contains(g) {
            return Err(Error::NotInClosure(g.to_string()));
        }
        if !working.contains(g) {
            working.push(g.clone());
        }
    }
    if working.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    let generators = working.clone();
    let mut moves = Vec::new();
    loop {
        let mut found = None;
        for t in 0..working.len() {
            if working[t].tail_len() == 0 || working.len() == 1 {
                continue;
            }
            let others: Vec<QuandleElement> = working
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != t)
                .map(|(_, e)| e.clone())
                .collect();
            let closure = ClosureSet::build(&others, c.bound())?;
            let target = &working[t];
            if let Some(m) = Shrinker::new(closure.elements()).find(target.axis(), target.tail()) {
                found = Some((t, m));
                break;
            }
        }
        let Some((t, m)) = found else { break };
        if working.contains(&m.result) {
            working.remove(t);
        } else {
            working[t] = m.result.clone();
        }
        moves.push(m);
    }
    finish(Method::Greedy, c, generators, working, moves)
}
