//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, in order.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{alphabet, corpus, Instance, BOUND};
use freequandle::basis::express_all;
use freequandle::{
    check_significant_factors, compute_s, greedy_shrink, nielsen_independent, parse_element,
    parse_word, verify_axioms, BasisReport, ClosureSet, Letter, QuandleElement, QuandleTerm,
    Sign, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn axioms() -> Outcome {
    for n in 1..=3 {
        let a = alphabet(n);
        let report = verify_axioms(&a, 1000, 4, 20_000 + n as u64);
        for o in &report.outcomes {
            ensure!(o.checked == 1000, "{}: only {} triples checked", o.axiom.name(), o.checked);
            ensure!(
                o.failed == 0,
                "{} fails over {:?}: {:?}",
                o.axiom.name(),
                a.names(),
                o.counterexamples.first()
            );
        }
    }
    Ok("1000 triples x 5 laws over {x}, {x,y}, {x,y,z}".into())
}

fn odd_length(corpus: &[Instance]) -> Outcome {
    let mut total = 0;
    for (i, inst) in corpus.iter().enumerate() {
        for e in inst.closure.elements() {
            let len = e.to_group_word().len();
            ensure!(len % 2 == 1, "set #{i}: {e} has group length {len}");
            total += 1;
        }
    }
    Ok(format!("{total} closure elements over {} sets", corpus.len()))
}

fn parity(corpus: &[Instance]) -> Outcome {
    let mut closures = 0;
    let mut products = 0usize;
    for (i, inst) in corpus.iter().enumerate() {
        let c = &inst.closure;
        if c.len() > 200 {
            continue;
        }
        closures += 1;
        for e in c.elements() {
            for q in c.elements() {
                for eps in [Sign::Pos, Sign::Neg] {
                    let w = e.tail().multiply(&q.to_group_word().pow(eps)).unwrap();
                    ensure!(
                        w.len() != e.tail_len(),
                        "set #{i}: |tail({e}) * ({q})^{eps}| = |tail|"
                    );
                    products += 1;
                }
            }
        }
    }
    ensure!(closures > 0, "no closure with at most 200 elements in the corpus");
    Ok(format!("{products} products in {closures} closures of <= 200 elements"))
}

fn replays(term: &QuandleTerm, basis: &[QuandleElement], target: &QuandleElement) -> bool {
    term.evaluate(basis).as_ref() == Ok(target)
}

fn check_witnesses(r: &BasisReport) -> bool {
    r.generators.iter().zip(&r.witnesses).all(|(g, w)| {
        w.as_ref()
            .is_some_and(|t| replays(t, &r.candidate, g))
    })
}

fn free_basis(corpus: &[Instance]) -> Outcome {
    let mut bound_failures = Vec::new();
    for (i, inst) in corpus.iter().enumerate() {
        let r = compute_s(&inst.closure).map_err(|e| format!("set #{i}: {e}"))?;
        ensure!(r.hall.passed(), "set #{i}: significant-factor check fails: {}", r.hall.failures[0]);
        ensure!(r.nielsen.passed(), "set #{i}: Nielsen check fails ({})", r.nielsen.verdict());
        if check_witnesses(&r) {
            continue;
        }
        let wider = ClosureSet::build(&inst.gens, BOUND + 2).map_err(|e| e.to_string())?;
        let r = compute_s(&wider).map_err(|e| e.to_string())?;
        if !(r.hall.passed() && r.nielsen.passed() && check_witnesses(&r)) {
            bound_failures.push(i);
        }
    }
    ensure!(bound_failures.is_empty(), "bound failures on sets {bound_failures:?}");
    Ok(format!("{} sets certified at L = {BOUND}", corpus.len()))
}

fn worked_examples() -> Outcome {
    let a = alphabet(2);
    let el = |s: &str| parse_element(&a, s).unwrap();
    let sorted = |mut v: Vec<QuandleElement>| {
        v.sort();
        v
    };

    let gens = [el("x^(y)"), el("y")];
    for bound in [2, BOUND] {
        let c = ClosureSet::build(&gens, bound).unwrap();
        let r = compute_s(&c).unwrap();
        ensure!(
            sorted(r.candidate.clone()) == sorted(vec![el("x"), el("y")]),
            "<x^y, y> at L = {bound}: got {:?}",
            r.candidate
        );
        ensure!(r.certified(), "<x^y, y> at L = {bound}: not certified");
        let g = greedy_shrink(&gens, &c).unwrap();
        ensure!(
            sorted(g.candidate.clone()) == sorted(vec![el("x"), el("y")]),
            "greedy <x^y, y>: got {:?}",
            g.candidate
        );
    }

    let gens = [el("x^(y)"), el("x^(y^-1)")];
    for bound in [4, BOUND] {
        let c = ClosureSet::build(&gens, bound).unwrap();
        let r = compute_s(&c).unwrap();
        ensure!(
            sorted(r.candidate.clone()) == sorted(gens.to_vec()),
            "<x^y, x^y^-1> at L = {bound}: got {:?}",
            r.candidate
        );
        ensure!(r.certified(), "<x^y, x^y^-1> at L = {bound}: not certified");
    }

    let set = [el("x^(y)"), el("y")];
    let hall = check_significant_factors(&set).unwrap();
    ensure!(!hall.passed(), "{{x^y, y}} passes the significant-factor check");
    let first = &hall.failures[0];
    ensure!(
        first.left == el("y") && first.right == el("x^(y)") && first.left_sign == Sign::Pos
            && first.right_sign == Sign::Pos,
        "first failing pair is {first}"
    );
    let words: Vec<Word> = set.iter().map(QuandleElement::to_group_word).collect();
    ensure!(nielsen_independent(&words).unwrap().passed(), "{{x^y, y}} fails Nielsen");
    Ok("<x^y,y> -> {x,y}; <x^y,x^y^-1> unchanged; {x^y,y} Hall fails on (y, x^y), Nielsen passes".into())
}

fn descent(corpus: &[Instance]) -> Outcome {
    let mut moves = 0;
    for (i, inst) in corpus.iter().enumerate() {
        let r = greedy_shrink(&inst.gens, &inst.closure).map_err(|e| format!("set #{i}: {e}"))?;
        let mut working = r.generators.clone();
        let mut total: usize = working.iter().map(QuandleElement::tail_len).sum();
        for m in &r.moves {
            ensure!(m.replays(), "set #{i}: move {m} does not replay");
            let t = working
                .iter()
                .position(|e| *e == m.target)
                .ok_or(format!("set #{i}: move target {} not in working set", m.target))?;
            if working.contains(&m.result) {
                working.remove(t);
            } else {
                working[t] = m.result.clone();
            }
            let next: usize = working.iter().map(QuandleElement::tail_len).sum();
            ensure!(next < total, "set #{i}: total tail length {total} -> {next} at {m}");
            total = next;
            moves += 1;
        }
        ensure!(working == r.candidate, "set #{i}: replayed moves disagree with candidate");
    }
    Ok(format!("{moves} moves over {} sets, all replayed and descending", corpus.len()))
}

fn generates(from: &[QuandleElement], targets: &[QuandleElement], bound: usize) -> Result<(), String> {
    let terms = express_all(targets, from, bound).map_err(|e| e.to_string())?;
    for (t, term) in targets.iter().zip(terms) {
        let term = term.ok_or(format!("{t} not reached"))?;
        ensure!(replays(&term, from, t), "witness {term} does not evaluate to {t}");
    }
    Ok(())
}

fn agreement(corpus: &[Instance]) -> Outcome {
    let mut differing = 0;
    for (i, inst) in corpus.iter().enumerate() {
        let paper = compute_s(&inst.closure).map_err(|e| e.to_string())?.candidate;
        let greedy = greedy_shrink(&inst.gens, &inst.closure)
            .map_err(|e| e.to_string())?
            .candidate;
        generates(&paper, &greedy, BOUND).map_err(|e| format!("set #{i}, paper -> greedy: {e}"))?;
        generates(&greedy, &paper, BOUND).map_err(|e| format!("set #{i}, greedy -> paper: {e}"))?;
        let mut p = paper.clone();
        let mut g = greedy.clone();
        p.sort();
        g.sort();
        differing += usize::from(p != g);
    }
    Ok(format!(
        "{} sets; candidates differ as sets on {differing}",
        corpus.len()
    ))
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_freequandle"))
        .args(args)
        .output()
        .expect("spawn cli");
    let mut bytes = out.stdout;
    bytes.extend(format!("exit={:?}", out.status.code()).as_bytes());
    bytes
}

fn problem_file(dir: &std::path::Path, i: usize, inst: &Instance) -> PathBuf {
    let a = inst.gens[0].alphabet();
    let mut text = format!("alphabet: {}\n", a.names().join(" "));
    for g in &inst.gens {
        text.push_str(&format!("{g}\n"));
    }
    let path = dir.join(format!("set{i}.txt"));
    fs::write(&path, text).unwrap();
    path
}

fn random_word<R: Rng>(rng: &mut R, n: usize) -> Word {
    let a = alphabet(n);
    let len = rng.random_range(0..12);
    let raw = (0..len).map(|_| {
        let g = a.generator(rng.random_range(0..n)).unwrap();
        Letter::new(g, if rng.random_bool(0.5) { Sign::Pos } else { Sign::Neg })
    });
    Word::reduce(&a, raw).unwrap()
}

fn determinism(corpus: &[Instance]) -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut runs = 0;
    let mut invocations: Vec<Vec<String>> = vec![
        vec!["verify-axioms", "--alphabet", "x y z", "--samples", "300", "--seed", "42"],
        vec!["verify-axioms", "--alphabet", "x y", "--samples", "200"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for (i, inst) in corpus.iter().enumerate().step_by(10) {
        let path = problem_file(&dir, i, inst).display().to_string();
        for cmd in [
            vec!["basis", &path, "--method", "paper"],
            vec!["basis", &path, "--method", "greedy"],
            vec!["closure", &path, "--max-tail-len", "4"],
            vec!["check-independence", &path],
        ] {
            invocations.push(cmd.into_iter().map(String::from).collect());
        }
    }
    for args in &invocations {
        let mut full = vec!["--format", "machine"];
        full.extend(args.iter().map(String::as_str));
        let first = cli(&full);
        let second = cli(&full);
        ensure!(first == second, "output differs between runs of {full:?}");
        ensure!(first.starts_with(b"kind="), "no machine records from {full:?}");
        runs += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.random_range(1..=3);
        let w = random_word(&mut rng, n);
        let back = parse_word(w.alphabet(), &w.to_string()).map_err(|e| format!("{w}: {e}"))?;
        ensure!(back == w, "word {w} re-parses as {back}");
        let e = QuandleElement::random(&alphabet(n), 6, &mut rng);
        let back = parse_element(e.alphabet(), &e.to_string()).map_err(|err| format!("{e}: {err}"))?;
        ensure!(back == e, "element {e} re-parses as {back}");
    }
    Ok(format!("{runs} invocations byte-identical twice; 1000 words and elements round-trip"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(axioms)),
        ("odd-length invariant", Box::new(|| odd_length(&corpus))),
        ("parity invariant", Box::new(|| parity(&corpus))),
        ("free basis certified", Box::new(|| free_basis(&corpus))),
        ("worked examples", Box::new(worked_examples)),
        ("greedy descent", Box::new(|| descent(&corpus))),
        ("cross-method agreement", Box::new(|| agreement(&corpus))),
        ("cli determinism and round trip", Box::new(|| determinism(&corpus))),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", n + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
