//! Reduced-word arithmetic in the free group over a finite alphabet.
//!
//! Words are kept reduced at all times. Every [`Word`] carries a shared
//! handle to its [`Alphabet`] so binary operations can reject operands from
//! different alphabets.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered, finite list of distinct generator names.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::InvalidAlphabet(format!("bad generator name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Arc::new(Alphabet { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.index.get(name).map(|&i| Generator(i as u32))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len()).map(|i| Generator(i as u32))
    }

    pub fn generator(&self, index: usize) -> Result<Generator> {
        if index < self.names.len() {
            Ok(Generator(index as u32))
        } else {
            Err(Error::InvalidLetter {
                index,
                rank: self.names.len(),
            })
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

// `1` is reserved for the identity and the rest are grammar delimiters.
fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '^' | '(' | ')' | '#' | '"' | '='))
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Dense index of a generator within its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An exponent in {+1, -1}. Used both for letters and for the direction of
/// a quandle operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+1",
            Sign::Neg => "-1",
        })
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: Generator, sign: Sign) -> Self {
        Letter { generator, sign }
    }

    pub fn pos(generator: Generator) -> Self {
        Letter::new(generator, Sign::Pos)
    }

    pub fn neg(generator: Generator) -> Self {
        Letter::new(generator, Sign::Neg)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, self.sign.flip())
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

// Slice-level primitives. Callers guarantee the inputs are reduced.

pub(crate) fn reduce_into(out: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for l in letters {
        match out.last() {
            Some(&top) if top.is_inverse_of(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
}

/// Number of letter pairs cancelled when forming the product `u v` of two
/// reduced words.
pub fn cancellation_depth(u: &[Letter], v: &[Letter]) -> usize {
    u.iter()
        .rev()
        .zip(v.iter())
        .take_while(|(a, b)| a.is_inverse_of(**b))
        .count()
}

pub(crate) fn product(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let c = cancellation_depth(u, v);
    let mut out = Vec::with_capacity(u.len() + v.len() - 2 * c);
    out.extend_from_slice(&u[..u.len() - c]);
    out.extend_from_slice(&v[c..]);
    out
}

pub(crate) fn product_len(u: &[Letter], v: &[Letter]) -> usize {
    u.len() + v.len() - 2 * cancellation_depth(u, v)
}

pub(crate) fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

pub(crate) fn signed_power(w: &[Letter], eps: Sign) -> Vec<Letter> {
    match eps {
        Sign::Pos => w.to_vec(),
        Sign::Neg => inverse(w),
    }
}

/// A reduced word in the free group.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, g: Generator) -> Self {
        Word::from_reduced(alphabet, vec![Letter::pos(g)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(
        alphabet: &Arc<Alphabet>,
        raw: impl IntoIterator<Item = Letter>,
    ) -> Result<Self> {
        let mut letters = Vec::new();
        for l in raw {
            if l.generator.index() >= alphabet.len() {
                return Err(Error::InvalidLetter {
                    index: l.generator.index(),
                    rank: alphabet.len(),
                });
            }
            reduce_into(&mut letters, [l]);
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    pub(crate) fn from_reduced(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| !p[0].is_inverse_of(p[1])));
        Word {
            alphabet: Arc::clone(alphabet),
            letters,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
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

    fn check_alphabet(&self, other: &Word) -> Result<()> {
        if same_alphabet(&self.alphabet, &other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_alphabet(other)?;
        Ok(Word::from_reduced(
            &self.alphabet,
            product(&self.letters, &other.letters),
        ))
    }

    pub fn invert(&self) -> Word {
        Word::from_reduced(&self.alphabet, inverse(&self.letters))
    }

    /// `self` or its inverse, depending on `eps`.
    pub fn pow(&self, eps: Sign) -> Word {
        match eps {
            Sign::Pos => self.clone(),
            Sign::Neg => self.invert(),
        }
    }

    /// `(h^eps)^-1 · self · h^eps`.
    pub fn conjugate(&self, h: &Word, eps: Sign) -> Result<Word> {
        self.check_alphabet(h)?;
        let h = signed_power(&h.letters, eps);
        let left = product(&inverse(&h), &self.letters);
        Ok(Word::from_reduced(&self.alphabet, product(&left, &h)))
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters.cmp(&other.letters)
    }
}

pub(crate) fn write_letters(
    f: &mut impl fmt::Write,
    alphabet: &Alphabet,
    letters: &[Letter],
) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("1");
    }
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        f.write_str(alphabet.name(l.generator))?;
        if l.sign == Sign::Neg {
            f.write_str("^-1")?;
        }
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.alphabet, &self.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
