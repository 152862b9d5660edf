//! Bounded enumeration of the subquandle generated by a finite set.
//!
//! The closure is the least set containing the generators that is closed
//! under `act(a, q, ±1)`, except that results whose tail is longer than the
//! bound are discarded. A negative membership answer therefore only means
//! "not found within the bound".

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::conj_quandle::QuandleElement;
use crate::error::{Error, Result};
use crate::free_group::{self, same_alphabet, Alphabet, Letter, Sign, Word};

pub const DEFAULT_MAX_TAIL_LEN: usize = 8;

/// Hard cap on closure size; enumeration fails with
/// [`Error::ClosureTooLarge`] beyond it.
pub const DEFAULT_MAX_ELEMENTS: usize = 250_000;

/// How an element of a closure was first produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Index into the closure's generator list.
    Generator(usize),
    /// `elements[a] ▷^eps elements[q]`; both indices precede this element.
    Derived { a: usize, q: usize, eps: Sign },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derivation {
    pub a: usize,
    pub q: usize,
    pub eps: Sign,
}

/// Expression over a list of generators using the two quandle operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuandleTerm {
    Leaf(usize),
    Node(Box<QuandleTerm>, Box<QuandleTerm>, Sign),
}

impl QuandleTerm {
    pub fn evaluate(&self, generators: &[QuandleElement]) -> Result<QuandleElement> {
        match self {
            QuandleTerm::Leaf(i) => generators
                .get(*i)
                .cloned()
                .ok_or(Error::NotInClosure(format!("generator #{i}"))),
            QuandleTerm::Node(a, q, eps) => {
                let a = a.evaluate(generators)?;
                let q = q.evaluate(generators)?;
                a.act(&q, *eps)
            }
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            QuandleTerm::Leaf(_) => 1,
            QuandleTerm::Node(a, q, _) => a.size() + q.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            QuandleTerm::Leaf(_) => 0,
            QuandleTerm::Node(a, q, _) => 1 + a.depth().max(q.depth()),
        }
    }
}

/// `g<i>` for leaves, `(a * q)` for `▷` and `(a / q)` for `◁`.
impl fmt::Display for QuandleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuandleTerm::Leaf(i) => write!(f, "g{i}"),
            QuandleTerm::Node(a, q, eps) => {
                let op = if *eps == Sign::Pos { '*' } else { '/' };
                write!(f, "({a} {op} {q})")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureSet {
    alphabet: Arc<Alphabet>,
    generators: Vec<QuandleElement>,
    bound: usize,
    elements: Vec<QuandleElement>,
    origins: Vec<Origin>,
    index: HashMap<QuandleElement, usize>,
}

struct Builder {
    elements: Vec<QuandleElement>,
    actors: Vec<[Vec<Letter>; 2]>,
    origins: Vec<Origin>,
    index: HashMap<QuandleElement, usize>,
    /// `(tail suffix, tail length)` -> elements, in insertion order.
    suffixes: HashMap<(Vec<Letter>, usize), Vec<usize>>,
    bound: usize,
    limit: usize,
}

impl Builder {
    fn insert(&mut self, e: QuandleElement, origin: Origin) -> Result<()> {
        if self.index.contains_key(&e) {
            return Ok(());
        }
        if self.elements.len() >= self.limit {
            return Err(Error::ClosureTooLarge { limit: self.limit });
        }
        let i = self.elements.len();
        let tail = e.tail().letters();
        for s in 0..=tail.len() {
            self.suffixes
                .entry((tail[tail.len() - s..].to_vec(), tail.len()))
                .or_default()
                .push(i);
        }
        self.index.insert(e.clone(), i);
        self.actors
            .push([e.actor_letters(Sign::Pos), e.actor_letters(Sign::Neg)]);
        self.elements.push(e);
        self.origins.push(origin);
        Ok(())
    }

    fn bucket(&self, suffix: &[Letter], len: usize) -> &[usize] {
        self.suffixes
            .get(&(suffix.to_vec(), len))
            .map_or(&[], Vec::as_slice)
    }

    /// Elements `q` (by index, unsorted, possibly repeated) for which
    /// `tail(a) · q^{±1}` may have length at most the bound. With `s` the
    /// common suffix length of `tail(a)` and `tail(q)`, a pair can only
    /// qualify if `2 (|tail q| - s) <= L - |tail a| - 1`, or if one tail is a
    /// suffix of the other (cancellation may then run further).
    fn actors_for(&self, w: &[Letter], out: &mut Vec<usize>) {
        let m = w.len();
        let slack = (self.bound as isize - m as isize - 1).max(-1);
        for s in 0..=m {
            let suffix = &w[m - s..];
            out.extend_from_slice(self.bucket(suffix, s));
            if slack >= 0 {
                for k in s + 1..=s + slack as usize / 2 {
                    out.extend_from_slice(self.bucket(suffix, k));
                }
            }
        }
        for k in m + 1..=self.bound {
            out.extend_from_slice(self.bucket(w, k));
        }
    }

    /// Elements `a` for which `tail(a) · q^{±1}` may fit the bound; the
    /// mirror image of [`Self::actors_for`].
    fn targets_for(&self, u: &[Letter], out: &mut Vec<usize>) {
        let k = u.len();
        for s in 0..=k {
            let suffix = &u[k - s..];
            out.extend_from_slice(self.bucket(suffix, s));
            // 2 (k - s) <= L - m - 1
            let room = self.bound as isize - 1 - 2 * (k - s) as isize;
            if room > s as isize {
                for m in s + 1..=room as usize {
                    out.extend_from_slice(self.bucket(suffix, m));
                }
            }
        }
        for m in k + 1..=self.bound {
            out.extend_from_slice(self.bucket(u, m));
        }
    }

    fn try_pair(&mut self, a: usize, q: usize) -> Result<()> {
        for (k, eps) in [Sign::Pos, Sign::Neg].into_iter().enumerate() {
            let w = self.elements[a].tail().letters();
            let g = &self.actors[q][k];
            let c = free_group::cancellation_depth(w, g);
            // Unless the tail cancels completely, no axis letters can be
            // stripped and the product length is final.
            if c < w.len() && w.len() + g.len() - 2 * c > self.bound {
                continue;
            }
            let base = &self.elements[a];
            let tail = free_group::product(w, g);
            let e = QuandleElement::canonicalize(base.axis(), Word::from_reduced(base.alphabet(), tail));
            if e.tail_len() <= self.bound {
                self.insert(e, Origin::Derived { a, q, eps })?;
            }
        }
        Ok(())
    }

    /// Visits every ordered pair once, when its later member `n` is reached:
    /// partners `j <= n` ascending, `(n, j)` before `(j, n)`. Pairs that the
    /// suffix index rules out are skipped; they would produce nothing.
    fn saturate(&mut self) -> Result<()> {
        let mut as_target = Vec::new();
        let mut as_actor = Vec::new();
        let mut n = 0;
        while n < self.elements.len() {
            let tail = self.elements[n].tail().letters().to_vec();
            as_target.clear();
            as_actor.clear();
            // (n, j): n acted on by j
            self.actors_for(&tail, &mut as_target);
            // (j, n): j acted on by n
            self.targets_for(&tail, &mut as_actor);
            as_target.retain(|&j| j <= n);
            as_actor.retain(|&j| j < n);
            as_target.sort_unstable();
            as_target.dedup();
            as_actor.sort_unstable();
            as_actor.dedup();
            let (mut i, mut k) = (0, 0);
            while i < as_target.len() || k < as_actor.len() {
                let next_t = as_target.get(i).copied().unwrap_or(usize::MAX);
                let next_a = as_actor.get(k).copied().unwrap_or(usize::MAX);
                let j = next_t.min(next_a);
                if next_t == j {
                    self.try_pair(n, j)?;
                    i += 1;
                }
                if next_a == j {
                    self.try_pair(j, n)?;
                    k += 1;
                }
            }
            n += 1;
        }
        Ok(())
    }
}

impl ClosureSet {
    /// Closure of `gens` under both operations, keeping tails of length at
    /// most `bound`. Duplicate generators are dropped (first occurrence wins).
    pub fn build(gens: &[QuandleElement], bound: usize) -> Result<Self> {
        Self::build_with_limit(gens, bound, DEFAULT_MAX_ELEMENTS)
    }

    pub fn build_with_limit(gens: &[QuandleElement], bound: usize, limit: usize) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGeneratorSet)?;
        let alphabet = Arc::clone(first.alphabet());
        let mut generators: Vec<QuandleElement> = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_alphabet(&alphabet, g.alphabet()) {
                return Err(Error::AlphabetMismatch);
            }
            if g.tail_len() > bound {
                return Err(Error::BoundTooSmall {
                    bound,
                    needed: g.tail_len(),
                });
            }
            if !generators.contains(g) {
                generators.push(g.clone());
            }
        }

        let mut b = Builder {
            elements: Vec::new(),
            actors: Vec::new(),
            origins: Vec::new(),
            index: HashMap::new(),
            suffixes: HashMap::new(),
            bound,
            limit,
        };
        for (i, g) in generators.iter().enumerate() {
            b.insert(g.clone(), Origin::Generator(i))?;
        }
        b.saturate()?;

        Ok(ClosureSet {
            alphabet,
            generators,
            bound,
            elements: b.elements,
            origins: b.origins,
            index: b.index,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generators(&self) -> &[QuandleElement] {
        &self.generators
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Elements in insertion order.
    pub fn elements(&self) -> &[QuandleElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn origin(&self, i: usize) -> Origin {
        self.origins[i]
    }

    /// Derivation record of a non-generator element.
    pub fn derivation(&self, i: usize) -> Option<Derivation> {
        match self.origins[i] {
            Origin::Generator(_) => None,
            Origin::Derived { a, q, eps } => Some(Derivation { a, q, eps }),
        }
    }

    pub fn index_of(&self, e: &QuandleElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &QuandleElement) -> bool {
        same_alphabet(&self.alphabet, e.alphabet()) && self.index.contains_key(e)
    }

    /// A term over [`Self::generators`] evaluating to `e`, read off the
    /// derivation records. The term is evaluated before it is returned.
    pub fn express(&self, e: &QuandleElement) -> Result<QuandleTerm> {
        if !self.contains(e) {
            return Err(Error::NotInClosure(e.to_string()));
        }
        let i = self.index[e];
        let term = self.term_for(i);
        let value = term.evaluate(&self.generators)?;
        assert_eq!(&value, e, "derivation replay diverged for {e}");
        Ok(term)
    }

    fn term_for(&self, i: usize) -> QuandleTerm {
        match self.origins[i] {
            Origin::Generator(g) => QuandleTerm::Leaf(g),
            Origin::Derived { a, q, eps } => QuandleTerm::Node(
                Box::new(self.term_for(a)),
                Box::new(self.term_for(q)),
                eps,
            ),
        }
    }
}

pub fn closure(gens: &[QuandleElement], bound: usize) -> Result<ClosureSet> {
    ClosureSet::build(gens, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::Generator;

    struct Fx {
        a: Arc<Alphabet>,
        x: Generator,
        y: Generator,
    }

    fn fx() -> Fx {
        let a = Alphabet::new(["x", "y"]).unwrap();
        Fx {
            x: a.lookup("x").unwrap(),
            y: a.lookup("y").unwrap(),
            a,
        }
    }

    impl Fx {
        fn el(&self, axis: Generator, tail: &[(Generator, Sign)]) -> QuandleElement {
            let w = Word::reduce(&self.a, tail.iter().map(|&(g, s)| Letter::new(g, s))).unwrap();
            QuandleElement::canonicalize(axis, w)
        }
    }

    use Sign::{Neg, Pos};

    #[test]
    fn single_generator_closure_is_trivial() {
        let f = fx();
        let x = f.el(f.x, &[]);
        let c = closure(std::slice::from_ref(&x), 4).unwrap();
        assert_eq!(c.elements(), std::slice::from_ref(&x));
        assert!(c.contains(&x));
        assert!(!c.contains(&f.el(f.y, &[])));
        assert_eq!(c.express(&x).unwrap(), QuandleTerm::Leaf(0));
    }

    #[test]
    fn closure_of_x_y_and_y() {
        let f = fx();
        let x_y = f.el(f.x, &[(f.y, Pos)]);
        let y = f.el(f.y, &[]);
        let c = closure(&[x_y.clone(), y.clone()], 2).unwrap();
        let x = f.el(f.x, &[]);
        let y_xy = f.el(f.y, &[(f.x, Pos), (f.y, Pos)]);
        assert!(c.contains(&x));
        assert!(c.contains(&y_xy));
        assert_eq!(
            c.express(&x).unwrap(),
            QuandleTerm::Node(Box::new(QuandleTerm::Leaf(0)), Box::new(QuandleTerm::Leaf(1)), Neg)
        );
        assert_eq!(
            c.express(&y_xy).unwrap(),
            QuandleTerm::Node(Box::new(QuandleTerm::Leaf(1)), Box::new(QuandleTerm::Leaf(0)), Pos)
        );
    }

    #[test]
    fn closure_of_x_and_y_at_bound_one() {
        let f = fx();
        let c = closure(&[f.el(f.x, &[]), f.el(f.y, &[])], 1).unwrap();
        let mut expected = vec![
            f.el(f.x, &[]),
            f.el(f.y, &[]),
            f.el(f.x, &[(f.y, Pos)]),
            f.el(f.x, &[(f.y, Neg)]),
            f.el(f.y, &[(f.x, Pos)]),
            f.el(f.y, &[(f.x, Neg)]),
        ];
        let mut got = c.elements().to_vec();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn closure_errors() {
        let f = fx();
        assert_eq!(closure(&[], 3).unwrap_err(), Error::EmptyGeneratorSet);
        let long = f.el(f.x, &[(f.y, Pos), (f.y, Pos), (f.y, Pos)]);
        assert_eq!(
            closure(&[long], 2).unwrap_err(),
            Error::BoundTooSmall { bound: 2, needed: 3 }
        );
        let gens = [f.el(f.x, &[]), f.el(f.y, &[])];
        assert_eq!(
            ClosureSet::build_with_limit(&gens, 6, 50).unwrap_err(),
            Error::ClosureTooLarge { limit: 50 }
        );
        let c = closure(&gens, 1).unwrap();
        let far = f.el(f.x, &[(f.y, Pos), (f.y, Pos)]);
        assert!(matches!(c.express(&far), Err(Error::NotInClosure(_))));
    }

    #[test]
    fn duplicate_generators_are_dropped() {
        let f = fx();
        let x = f.el(f.x, &[]);
        let c = closure(&[x.clone(), x.clone()], 3).unwrap();
        assert_eq!(c.generators().len(), 1);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn term_display() {
        let t = QuandleTerm::Node(
            Box::new(QuandleTerm::Leaf(0)),
            Box::new(QuandleTerm::Node(
                Box::new(QuandleTerm::Leaf(1)),
                Box::new(QuandleTerm::Leaf(2)),
                Pos,
            )),
            Neg,
        );
        assert_eq!(t.to_string(), "(g0 / (g1 * g2))");
        assert_eq!(t.size(), 3);
        assert_eq!(t.depth(), 2);
    }
}
