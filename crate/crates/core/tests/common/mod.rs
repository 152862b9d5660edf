#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use freequandle::subquandle::Origin;
use freequandle::{Alphabet, ClosureSet, Error, QuandleElement, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_0001;
pub const CORPUS_SIZE: usize = 100;
pub const BOUND: usize = 8;
/// Sets whose closure at `BOUND` grows past this are redrawn, which keeps
/// the whole suite at desk scale.
pub const CORPUS_CLOSURE_CAP: usize = 1500;

pub fn alphabet(n: usize) -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"].into_iter().take(n)).unwrap()
}

pub fn random_set<R: Rng>(rng: &mut R) -> Vec<QuandleElement> {
    let a = alphabet(rng.random_range(1..=3));
    let count = rng.random_range(1..=5);
    (0..count)
        .map(|_| QuandleElement::random(&a, 4, rng))
        .collect()
}

/// A random set, then each member replaced by its image under a few random
/// operations with other members (tails kept within 4). The generated
/// subquandle is unchanged, but the generators are far from reduced, which
/// gives the shrinking strategies something to do.
pub fn disguised_set<R: Rng>(rng: &mut R) -> Vec<QuandleElement> {
    let a = alphabet(rng.random_range(2..=3));
    let count = rng.random_range(2..=5);
    let mut gens: Vec<QuandleElement> = (0..count)
        .map(|_| QuandleElement::random(&a, 2, rng))
        .collect();
    for _ in 0..rng.random_range(1..=6) {
        let t = rng.random_range(0..gens.len());
        let q = rng.random_range(0..gens.len());
        let eps = if rng.random_bool(0.5) { Sign::Pos } else { Sign::Neg };
        let e = gens[t].act(&gens[q], eps).unwrap();
        if e.tail_len() <= 4 && !gens.contains(&e) {
            gens[t] = e;
        }
    }
    gens
}

#[derive(Debug)]
pub struct Instance {
    pub gens: Vec<QuandleElement>,
    pub closure: ClosureSet,
}

/// The shipped corpus: seeded random generating sets (alphabets up to 3
/// letters, up to 5 generators, tails up to 4), alternately plain and
/// disguised, with their closures at `BOUND`.
pub fn corpus() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    while out.len() < CORPUS_SIZE {
        let gens = if out.len() % 2 == 0 {
            random_set(&mut rng)
        } else {
            disguised_set(&mut rng)
        };
        match ClosureSet::build_with_limit(&gens, BOUND, CORPUS_CLOSURE_CAP) {
            Ok(closure) => out.push(Instance { gens, closure }),
            Err(Error::ClosureTooLarge { .. }) => continue,
            Err(e) => panic!("corpus generation: {e}"),
        }
    }
    out
}

/// Plain closure: every ordered pair is tried, nothing is pruned. Pairs are
/// visited in the same order as the library so origins can be compared.
pub fn naive_closure(gens: &[QuandleElement], bound: usize) -> (Vec<QuandleElement>, Vec<Origin>) {
    let mut elements: Vec<QuandleElement> = Vec::new();
    let mut origins = Vec::new();
    let mut seen = HashMap::new();
    for g in gens {
        if !seen.contains_key(g) {
            seen.insert(g.clone(), elements.len());
            origins.push(Origin::Generator(elements.len()));
            elements.push(g.clone());
        }
    }
    let mut n = 0;
    while n < elements.len() {
        for j in 0..=n {
            let mut pairs = vec![(n, j)];
            if j < n {
                pairs.push((j, n));
            }
            for (a, q) in pairs {
                for eps in [Sign::Pos, Sign::Neg] {
                    let e = elements[a].act(&elements[q], eps).unwrap();
                    if e.tail_len() <= bound && !seen.contains_key(&e) {
                        seen.insert(e.clone(), elements.len());
                        origins.push(Origin::Derived { a, q, eps });
                        elements.push(e);
                    }
                }
            }
        }
        n += 1;
    }
    (elements, origins)
}
