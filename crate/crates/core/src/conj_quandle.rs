//! The free quandle on an alphabet, realized as the union of the conjugacy
//! classes of the generators inside the free group.
//!
//! An element `x^w = w^-1 x w` is stored by its axis `x` and tail `w`, with
//! the tail normalized so it never begins with `x` or `x^-1`. That form is
//! unique, so structural equality is equality in the quandle.
//!
//! Both operations put the acting element on the right:
//! `a ▷ q = a^q` and `a ◁ q = a^(q^-1)`, i.e. `act(a, q, eps)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::free_group::{self, same_alphabet, Alphabet, Generator, Letter, Sign, Word};

/// The two quandle operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// `▷`: conjugation by the actor.
    Right,
    /// `◁`: conjugation by the actor's inverse.
    Left,
}

impl OpKind {
    pub fn sign(self) -> Sign {
        match self {
            OpKind::Right => Sign::Pos,
            OpKind::Left => Sign::Neg,
        }
    }

    pub fn from_sign(eps: Sign) -> Self {
        match eps {
            Sign::Pos => OpKind::Right,
            Sign::Neg => OpKind::Left,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleElement {
    axis: Generator,
    tail: Word,
}

impl QuandleElement {
    /// Builds `axis^tail`, absorbing any leading `axis^{±1}` letters of the
    /// tail (`x^(x^{±1} u) = x^u`).
    pub fn canonicalize(axis: Generator, tail: Word) -> Self {
        let skip = tail
            .letters()
            .iter()
            .take_while(|l| l.generator == axis)
            .count();
        let tail = if skip == 0 {
            tail
        } else {
            Word::from_reduced(tail.alphabet(), tail.letters()[skip..].to_vec())
        };
        QuandleElement { axis, tail }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, axis: Generator) -> Self {
        QuandleElement {
            axis,
            tail: Word::identity(alphabet),
        }
    }

    pub fn axis(&self) -> Generator {
        self.axis
    }

    pub fn tail(&self) -> &Word {
        &self.tail
    }

    pub fn tail_len(&self) -> usize {
        self.tail.len()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.tail.alphabet()
    }

    /// Length of the group word, always `2 |tail| + 1`.
    pub fn group_len(&self) -> usize {
        2 * self.tail.len() + 1
    }

    pub(crate) fn group_letters(&self) -> Vec<Letter> {
        let tail = self.tail.letters();
        let mut out = Vec::with_capacity(2 * tail.len() + 1);
        out.extend(tail.iter().rev().map(|l| l.inverse()));
        out.push(Letter::pos(self.axis));
        out.extend_from_slice(tail);
        out
    }

    /// `tail^-1 · axis · tail`. No cancellation occurs thanks to canonicity.
    pub fn to_group_word(&self) -> Word {
        Word::from_reduced(self.alphabet(), self.group_letters())
    }

    /// Recognizes `u^-1 x u` for a generator `x` and returns `x^u`.
    pub fn from_group_word(w: &Word) -> Result<Self> {
        let letters = w.letters();
        let reject = || Error::NotInFreeQuandle(w.to_string());
        if letters.len().is_multiple_of(2) {
            return Err(reject());
        }
        let mid = letters.len() / 2;
        let center = letters[mid];
        if center.sign != Sign::Pos {
            return Err(reject());
        }
        let tail = &letters[mid + 1..];
        let head = &letters[..mid];
        let mirrored = head
            .iter()
            .zip(tail.iter().rev())
            .all(|(h, t)| h.is_inverse_of(*t));
        if !mirrored {
            return Err(reject());
        }
        // A reduced word of this shape already has a canonical tail.
        Ok(QuandleElement {
            axis: center.generator,
            tail: Word::from_reduced(w.alphabet(), tail.to_vec()),
        })
    }

    /// `self ▷^eps q`, the conjugate of `self` by `q^eps`. The axis is kept.
    pub fn act(&self, q: &QuandleElement, eps: Sign) -> Result<QuandleElement> {
        if !same_alphabet(self.alphabet(), q.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.act_unchecked(q, eps))
    }

    pub(crate) fn act_unchecked(&self, q: &QuandleElement, eps: Sign) -> QuandleElement {
        let tail = free_group::product(self.tail.letters(), &q.actor_letters(eps));
        QuandleElement::canonicalize(self.axis, Word::from_reduced(self.alphabet(), tail))
    }

    /// The group word of `self` raised to `eps`.
    pub(crate) fn actor_letters(&self, eps: Sign) -> Vec<Letter> {
        let mut g = self.group_letters();
        if eps == Sign::Neg {
            let mid = g.len() / 2;
            g[mid] = g[mid].inverse();
        }
        g
    }

    pub fn apply(&self, op: OpKind, q: &QuandleElement) -> Result<QuandleElement> {
        self.act(q, op.sign())
    }

    /// Draws an element with tail length chosen uniformly from
    /// `0..=max_tail_len`. Over a one-letter alphabet only the generator
    /// itself exists.
    pub fn random<R: Rng + ?Sized>(
        alphabet: &Arc<Alphabet>,
        max_tail_len: usize,
        rng: &mut R,
    ) -> Self {
        let n = alphabet.len();
        let axis = alphabet.generator(rng.random_range(0..n)).unwrap();
        let len = if n == 1 {
            0
        } else {
            rng.random_range(0..=max_tail_len)
        };
        let mut tail: Vec<Letter> = Vec::with_capacity(len);
        while tail.len() < len {
            let g = alphabet.generator(rng.random_range(0..n)).unwrap();
            let sign = if rng.random_bool(0.5) { Sign::Pos } else { Sign::Neg };
            let l = Letter::new(g, sign);
            let ok = match tail.last() {
                None => g != axis,
                Some(prev) => !prev.is_inverse_of(l),
            };
            if ok {
                tail.push(l);
            }
        }
        QuandleElement {
            axis,
            tail: Word::from_reduced(alphabet, tail),
        }
    }
}

pub(crate) fn write_element(
    f: &mut impl fmt::Write,
    axis: Generator,
    alphabet: &Alphabet,
    tail: &[Letter],
) -> fmt::Result {
    f.write_str(alphabet.name(axis))?;
    if !tail.is_empty() {
        f.write_str("^(")?;
        free_group::write_letters(f, alphabet, tail)?;
        f.write_char(')')?;
    }
    Ok(())
}

impl fmt::Display for QuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_element(f, self.axis, self.alphabet(), self.tail.letters())
    }
}

impl fmt::Debug for QuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuandleElement({self})")
    }
}

/// The laws exercised by [`verify_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `a ▷ a = a` and `a ◁ a = a`.
    Idempotence,
    /// `(a ▷ b) ◁ b = a`.
    RightInverse,
    /// `(a ◁ b) ▷ b = a`.
    LeftInverse,
    /// `(a ▷ b) ▷ c = (a ▷ c) ▷ (b ▷ c)`.
    RightDistributivity,
    /// `(a ◁ b) ◁ c = (a ◁ c) ◁ (b ◁ c)`.
    LeftDistributivity,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Idempotence,
        Axiom::RightInverse,
        Axiom::LeftInverse,
        Axiom::RightDistributivity,
        Axiom::LeftDistributivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Idempotence => "idempotence",
            Axiom::RightInverse => "right_inverse",
            Axiom::LeftInverse => "left_inverse",
            Axiom::RightDistributivity => "right_distributivity",
            Axiom::LeftDistributivity => "left_distributivity",
        }
    }

    pub fn holds(self, a: &QuandleElement, b: &QuandleElement, c: &QuandleElement) -> bool {
        use Sign::{Neg, Pos};
        match self {
            Axiom::Idempotence => a.act_unchecked(a, Pos) == *a && a.act_unchecked(a, Neg) == *a,
            Axiom::RightInverse => a.act_unchecked(b, Pos).act_unchecked(b, Neg) == *a,
            Axiom::LeftInverse => a.act_unchecked(b, Neg).act_unchecked(b, Pos) == *a,
            Axiom::RightDistributivity | Axiom::LeftDistributivity => {
                let e = if self == Axiom::RightDistributivity { Pos } else { Neg };
                let lhs = a.act_unchecked(b, e).act_unchecked(c, e);
                let rhs = a.act_unchecked(c, e).act_unchecked(&b.act_unchecked(c, e), e);
                lhs == rhs
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub checked: usize,
    pub failed: usize,
    /// At most [`AxiomReport::MAX_COUNTEREXAMPLES`] failing triples.
    pub counterexamples: Vec<[QuandleElement; 3]>,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub samples: usize,
    pub max_tail_len: usize,
    pub seed: u64,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub const MAX_COUNTEREXAMPLES: usize = 5;

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failed == 0)
    }
}

/// Checks the quandle laws on `sample_count` random triples drawn with a
/// seeded generator.
pub fn verify_axioms(
    alphabet: &Arc<Alphabet>,
    sample_count: usize,
    max_tail_len: usize,
    seed: u64,
) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes: Vec<AxiomOutcome> = Axiom::ALL
        .iter()
        .map(|&axiom| AxiomOutcome {
            axiom,
            checked: 0,
            failed: 0,
            counterexamples: Vec::new(),
        })
        .collect();
    for _ in 0..sample_count {
        let a = QuandleElement::random(alphabet, max_tail_len, &mut rng);
        let b = QuandleElement::random(alphabet, max_tail_len, &mut rng);
        let c = QuandleElement::random(alphabet, max_tail_len, &mut rng);
        for o in &mut outcomes {
            o.checked += 1;
            if !o.axiom.holds(&a, &b, &c) {
                o.failed += 1;
                if o.counterexamples.len() < AxiomReport::MAX_COUNTEREXAMPLES {
                    o.counterexamples.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    AxiomReport {
        samples: sample_count,
        max_tail_len,
        seed,
        outcomes,
    }
}
