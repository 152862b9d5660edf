//! Batch command-line front end.
//!
//! Exit codes: 0 computed and certified (or PASS), 1 computed but a
//! verification failed, 2 bad input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::basis::{compute_s, greedy_shrink, stability_check, BasisReport, Method};
use crate::conj_quandle::{verify_axioms, AxiomReport, OpKind};
use crate::error::Error;
use crate::free_group::Sign;
use crate::independence::{
    check_significant_factors, nielsen_independent, HallReport, NielsenReport,
};
use crate::record::Record;
use crate::subquandle::{ClosureSet, Origin, DEFAULT_MAX_TAIL_LEN};
use crate::text::{parse_alphabet, parse_element, parse_word, ProblemFile};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "freequandle", version, about = "Subquandles of free quandles: closures, free bases, independence checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisMethod {
    Paper,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndependenceMethod {
    Hall,
    Nielsen,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// `▷`, conjugation by the second operand.
    Right,
    /// `◁`, conjugation by the inverse of the second operand.
    Left,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Freely reduce a word.
    Reduce {
        #[arg(long)]
        alphabet: String,
        word: String,
    },
    /// Apply a quandle operation: `a ▷ q` or `a ◁ q`.
    Qop {
        #[arg(long)]
        alphabet: String,
        #[arg(long, value_enum, default_value_t = Op::Right)]
        op: Op,
        a: String,
        q: String,
    },
    /// Enumerate the bounded closure of a problem file's generators.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_TAIL_LEN)]
        max_tail_len: usize,
    },
    /// Compute and certify a free basis.
    Basis {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisMethod::Paper)]
        method: BasisMethod,
        #[arg(long, default_value_t = DEFAULT_MAX_TAIL_LEN)]
        max_tail_len: usize,
        /// Skip the re-run at bound + 2 (paper method only).
        #[arg(long)]
        no_stability: bool,
    },
    /// Check independence of the entries of a problem file.
    CheckIndependence {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = IndependenceMethod::Both)]
        method: IndependenceMethod,
    },
    /// Check the quandle laws on seeded random triples.
    VerifyAxioms {
        #[arg(long)]
        alphabet: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_tail_len: usize,
    },
    /// Express an element as a term over the generators of a problem file.
    Express {
        file: PathBuf,
        element: String,
        #[arg(long, default_value_t = DEFAULT_MAX_TAIL_LEN)]
        max_tail_len: usize,
    },
}

/// Collected output of one invocation.
struct Report {
    format: Format,
    text: Vec<String>,
    records: Vec<Record>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            text: Vec::new(),
            records: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn record(&mut self, r: Record) {
        self.records.push(r);
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match self.format {
            Format::Text => self.text.iter().try_for_each(|l| writeln!(out, "{l}")),
            Format::Machine => self.records.iter().try_for_each(|r| writeln!(out, "{r}")),
        }
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn read_problem(path: &PathBuf) -> Result<ProblemFile, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ProblemFile::parse(&text)
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut report = Report::new(cli.format);
    let result = execute(&cli.command, &mut report);
    let code = match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    if let Err(e) = report.write(out) {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    code
}

fn execute(cmd: &Command, rep: &mut Report) -> Result<bool, Error> {
    match cmd {
        Command::Reduce { alphabet, word } => {
            let alphabet = parse_alphabet(alphabet)?;
            let w = parse_word(&alphabet, word)?;
            rep.line(w.to_string());
            rep.record(Record::new("word").with("length", w.len()).with("word", &w));
            Ok(true)
        }
        Command::Qop { alphabet, op, a, q } => {
            let alphabet = parse_alphabet(alphabet)?;
            let a = parse_element(&alphabet, a)?;
            let q = parse_element(&alphabet, q)?;
            let kind = match op {
                Op::Right => OpKind::Right,
                Op::Left => OpKind::Left,
            };
            let r = a.apply(kind, &q)?;
            rep.line(r.to_string());
            rep.record(
                Record::new("element")
                    .with("element", &r)
                    .with("group_word", r.to_group_word()),
            );
            Ok(true)
        }
        Command::Closure { file, max_tail_len } => {
            let p = read_problem(file)?;
            let c = ClosureSet::build(&p.elements()?, *max_tail_len)?;
            closure_report(&c, rep);
            Ok(true)
        }
        Command::Basis {
            file,
            method,
            max_tail_len,
            no_stability,
        } => {
            let p = read_problem(file)?;
            let gens = p.elements()?;
            let c = ClosureSet::build(&gens, *max_tail_len)?;
            let mut r = match method {
                BasisMethod::Paper => compute_s(&c)?,
                BasisMethod::Greedy => greedy_shrink(&gens, &c)?,
            };
            if *method == BasisMethod::Paper && !no_stability {
                r.stability = Some(stability_check(&gens, *max_tail_len)?);
            }
            basis_report(&r, c.len(), rep);
            Ok(r.certified())
        }
        Command::CheckIndependence { file, method } => {
            let p = read_problem(file)?;
            let mut ok = true;
            if matches!(method, IndependenceMethod::Hall | IndependenceMethod::Both) {
                let h = check_significant_factors(&p.elements()?)?;
                hall_report(&h, rep);
                ok &= h.passed();
            }
            if matches!(method, IndependenceMethod::Nielsen | IndependenceMethod::Both) {
                let n = nielsen_independent(&p.words()?)?;
                nielsen_report(&n, rep);
                ok &= n.passed();
            }
            Ok(ok)
        }
        Command::VerifyAxioms {
            alphabet,
            samples,
            seed,
            max_tail_len,
        } => {
            let alphabet = parse_alphabet(alphabet)?;
            if *samples == 0 {
                return Err(Error::InvalidArgument("--samples must be positive".into()));
            }
            let r = verify_axioms(&alphabet, *samples, *max_tail_len, *seed);
            axiom_report(&r, rep);
            Ok(r.passed())
        }
        Command::Express {
            file,
            element,
            max_tail_len,
        } => {
            let p = read_problem(file)?;
            let c = ClosureSet::build(&p.elements()?, *max_tail_len)?;
            let e = parse_element(&p.alphabet, element)?;
            match c.express(&e) {
                Ok(term) => {
                    rep.line(format!("{e} = {term}"));
                    for (i, g) in c.generators().iter().enumerate() {
                        rep.line(format!("  g{i} = {g}"));
                    }
                    rep.record(
                        Record::new("express")
                            .with("element", &e)
                            .with("status", "found")
                            .with("term", &term),
                    );
                    Ok(true)
                }
                Err(Error::NotInClosure(_)) => {
                    rep.line(format!("{e} not found within tail bound {}", c.bound()));
                    rep.record(
                        Record::new("express")
                            .with("bound", c.bound())
                            .with("element", &e)
                            .with("status", "not_found"),
                    );
                    Ok(false)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn closure_report(c: &ClosureSet, rep: &mut Report) {
    rep.line(format!(
        "closure: {} element(s), {} generator(s), tail bound {}",
        c.len(),
        c.generators().len(),
        c.bound()
    ));
    rep.record(
        Record::new("closure")
            .with("bound", c.bound())
            .with("generators", c.generators().len())
            .with("size", c.len()),
    );
    for (i, e) in c.elements().iter().enumerate() {
        let mut r = Record::new("element").with("element", e).with("index", i);
        match c.origin(i) {
            Origin::Generator(g) => {
                rep.line(format!("  [{i}] {e}  (generator g{g})"));
                r = r.with("generator", g);
            }
            Origin::Derived { a, q, eps } => {
                let op = if eps == Sign::Pos { '*' } else { '/' };
                rep.line(format!("  [{i}] {e}  = [{a}] {op} [{q}]"));
                r = r.with("a", a).with("eps", eps).with("q", q);
            }
        }
        rep.record(r);
    }
}

fn hall_report(h: &HallReport, rep: &mut Report) {
    rep.line(format!(
        "significant factors: {} ({} pair(s) checked) - {}",
        pass_fail(h.passed()).to_uppercase(),
        h.checked_pairs,
        h.verdict()
    ));
    rep.record(
        Record::new("verdict")
            .with("checker", "hall")
            .with("pairs", h.checked_pairs)
            .with("status", pass_fail(h.passed()))
            .with("verdict", h.verdict()),
    );
    for f in &h.failures {
        rep.line(format!("  failing pair {f}"));
        rep.record(
            Record::new("hall_failure")
                .with("depth", f.depth)
                .with("left", &f.left)
                .with("left_limit", f.left_limit)
                .with("left_sign", f.left_sign)
                .with("right", &f.right)
                .with("right_limit", f.right_limit)
                .with("right_sign", f.right_sign),
        );
    }
}

fn nielsen_report(n: &NielsenReport, rep: &mut Report) {
    rep.line(format!(
        "nielsen reduction: {} after {} move(s) - {}",
        pass_fail(n.passed()).to_uppercase(),
        n.moves,
        n.verdict()
    ));
    rep.record(
        Record::new("verdict")
            .with("checker", "nielsen")
            .with("input_size", n.input.len())
            .with("moves", n.moves)
            .with("status", pass_fail(n.passed()))
            .with("verdict", n.verdict()),
    );
    for (i, w) in n.reduced.iter().enumerate() {
        rep.line(format!("  reduced[{i}] = {w}"));
        rep.record(Record::new("reduced").with("index", i).with("word", w));
    }
}

fn basis_report(r: &BasisReport, closure_size: usize, rep: &mut Report) {
    let status = if r.certified() { "CERTIFIED" } else { "NOT CERTIFIED" };
    rep.line(format!(
        "basis ({} method, tail bound {}, closure size {}): {}",
        r.method.name(),
        r.bound,
        closure_size,
        status
    ));
    rep.record(
        Record::new("basis")
            .with("bound", r.bound)
            .with("candidate_size", r.candidate.len())
            .with("certified", r.certified())
            .with("closure_size", closure_size)
            .with("method", r.method.name()),
    );
    rep.line("candidate:");
    for (i, e) in r.candidate.iter().enumerate() {
        rep.line(format!("  b{i} = {e}"));
        rep.record(Record::new("candidate").with("element", e).with("index", i));
    }
    if r.method == Method::Greedy {
        rep.line(format!("moves: {}", r.moves.len()));
        for (i, m) in r.moves.iter().enumerate() {
            rep.line(format!("  {i}: {m}"));
            rep.record(
                Record::new("move")
                    .with("by", &m.by)
                    .with("eps", m.eps)
                    .with("result", &m.result)
                    .with("step", i)
                    .with("target", &m.target),
            );
        }
    }
    rep.line("witnesses (terms over b0, b1, ...):");
    for (i, (g, w)) in r.generators.iter().zip(&r.witnesses).enumerate() {
        let mut rec = Record::new("witness").with("generator", g).with("index", i);
        match w {
            Some(t) => {
                let t = t.to_string().replace('g', "b");
                rep.line(format!("  {g} = {t}"));
                rec = rec.with("status", "ok").with("term", t);
            }
            None => {
                rep.line(format!("  {g}: witness not found within bound {}", r.bound));
                rec = rec.with("status", "witness_not_found");
            }
        }
        rep.record(rec);
    }
    hall_report(&r.hall, rep);
    nielsen_report(&r.nielsen, rep);
    if let Some(s) = &r.stability {
        rep.line(format!(
            "stability: candidate at bound {} {} the candidate at bound {}",
            s.bound,
            if s.stable { "matches" } else { "DIFFERS from" },
            s.rerun_bound
        ));
        rep.record(
            Record::new("stability")
                .with("bound", s.bound)
                .with("rerun_bound", s.rerun_bound)
                .with("rerun_candidate_size", s.rerun_candidate.len())
                .with("stable", s.stable),
        );
    }
}

fn axiom_report(r: &AxiomReport, rep: &mut Report) {
    rep.line(format!(
        "quandle laws on {} sample(s), tails <= {}, seed {}: {}",
        r.samples,
        r.max_tail_len,
        r.seed,
        pass_fail(r.passed()).to_uppercase()
    ));
    rep.record(
        Record::new("axioms")
            .with("max_tail_len", r.max_tail_len)
            .with("samples", r.samples)
            .with("seed", r.seed)
            .with("status", pass_fail(r.passed())),
    );
    for o in &r.outcomes {
        rep.line(format!(
            "  {:<22} {}/{} hold",
            o.axiom.name(),
            o.checked - o.failed,
            o.checked
        ));
        rep.record(
            Record::new("axiom")
                .with("checked", o.checked)
                .with("failed", o.failed)
                .with("name", o.axiom.name()),
        );
        for [a, b, c] in &o.counterexamples {
            rep.line(format!("    counterexample a={a} b={b} c={c}"));
            rep.record(
                Record::new("counterexample")
                    .with("a", a)
                    .with("axiom", o.axiom.name())
                    .with("b", b)
                    .with("c", c),
            );
        }
    }
}
