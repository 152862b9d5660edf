//! Text grammars for words, elements and problem files.
//!
//! * word: whitespace-separated letters, each `name` or `name^-1`; `1` is
//!   the identity.
//! * element: `x^(w)` with `w` a word, a bare generator `x`, or any group
//!   word of the form `u^-1 x u`.
//! * problem file: an `alphabet: x y ...` line followed by one entry per
//!   line; blank lines and `#` comments are ignored.

use std::sync::Arc;

use crate::conj_quandle::QuandleElement;
use crate::error::{Error, Result};
use crate::free_group::{Alphabet, Letter, Word};

fn parse_letter(alphabet: &Alphabet, token: &str) -> Result<Option<Letter>> {
    if token == "1" {
        return Ok(None);
    }
    let (name, inverse) = match token.split_once('^') {
        None => (token, false),
        Some((name, "-1")) => (name, true),
        Some(_) => return Err(Error::MalformedExponent(token.to_string())),
    };
    let g = alphabet
        .lookup(name)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    Ok(Some(if inverse { Letter::neg(g) } else { Letter::pos(g) }))
}

/// Parses and freely reduces a word.
pub fn parse_word(alphabet: &Arc<Alphabet>, s: &str) -> Result<Word> {
    let mut letters = Vec::new();
    for token in s.split_whitespace() {
        if let Some(l) = parse_letter(alphabet, token)? {
            letters.push(l);
        }
    }
    Word::reduce(alphabet, letters)
}

pub fn parse_element(alphabet: &Arc<Alphabet>, s: &str) -> Result<QuandleElement> {
    let s = s.trim();
    if !s.contains('(') && !s.contains(')') {
        let w = parse_word(alphabet, s)?;
        return QuandleElement::from_group_word(&w);
    }
    let malformed = || Error::MalformedElement(s.to_string());
    let (name, rest) = s.split_once('^').ok_or_else(malformed)?;
    let inner = rest
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(malformed)?;
    if inner.contains('(') || inner.contains(')') {
        return Err(malformed());
    }
    let name = name.trim();
    let axis = alphabet
        .lookup(name)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    Ok(QuandleElement::canonicalize(axis, parse_word(alphabet, inner)?))
}

/// Parses a whitespace-separated alphabet declaration such as `x y z`.
pub fn parse_alphabet(s: &str) -> Result<Arc<Alphabet>> {
    Alphabet::new(s.split_whitespace())
}

/// A problem file split into its alphabet and entry lines.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub alphabet: Arc<Alphabet>,
    /// `(line number, trimmed text)` of each entry.
    pub entries: Vec<(usize, String)>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if alphabet.is_none() {
                let names = line.strip_prefix("alphabet:").ok_or_else(|| Error::Problem {
                    line: line_no,
                    message: "expected `alphabet: ...`".into(),
                })?;
                alphabet = Some(parse_alphabet(names).map_err(|e| Error::Problem {
                    line: line_no,
                    message: e.to_string(),
                })?);
            } else {
                entries.push((line_no, line.to_string()));
            }
        }
        let alphabet = alphabet.ok_or(Error::Problem {
            line: 1,
            message: "missing `alphabet:` line".into(),
        })?;
        Ok(ProblemFile { alphabet, entries })
    }

    fn map_entries<T>(&self, f: impl Fn(&Arc<Alphabet>, &str) -> Result<T>) -> Result<Vec<T>> {
        self.entries
            .iter()
            .map(|(line, s)| {
                f(&self.alphabet, s).map_err(|e| Error::Problem {
                    line: *line,
                    message: e.to_string(),
                })
            })
            .collect()
    }

    pub fn elements(&self) -> Result<Vec<QuandleElement>> {
        self.map_entries(parse_element)
    }

    /// Entries as group words; `x^(w)` entries become `w^-1 x w`.
    pub fn words(&self) -> Result<Vec<Word>> {
        self.map_entries(|a, s| {
            if s.contains('(') {
                parse_element(a, s).map(|e| e.to_group_word())
            } else {
                parse_word(a, s)
            }
        })
    }
}
