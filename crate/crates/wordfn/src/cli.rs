//! The `wordfn` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wordfn_core::automata::{
    automaton_to_msoleval, first_disagreement, hankel_ranks, learn_automaton, WordFunction,
};
use wordfn_core::msoleval::eval_closed;
use wordfn_core::semiring::{check_semiring_laws, Field, Int, MaxPlus, MinPlus, Nat, Poly, Rat, Semiring};
use wordfn_core::translate::{msoleval_to_rmsol_report, rmsol_to_msoleval_report, roundtrip_check, Expr};
use wordfn_core::wmsol::{bmsol_boolean_check, classify, we_eval_closed};
use wordfn_core::word::{Alphabet, Word};

use crate::error::{exit, Error, Result};
use crate::format::{load_input, write_automaton, write_formula, write_term, Document, Formalism, Input};
use crate::generate::{rng, samples, Sample};

#[derive(Debug, Parser)]
#[command(name = "wordfn", version, about = "Word functions over commutative semirings")]
pub struct Cli {
    /// bool, nat, int, rat, trop-min, trop-max or poly. Defaults to the
    /// input's `semiring:` line, then rat.
    #[arg(long, global = true)]
    pub semiring: Option<String>,
    /// Longest word considered by exhaustive checks.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_len: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Alphabet for terms and formulas; automata carry their own.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Msoleval,
    Rmsol,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an input on one word.
    Eval {
        formalism: Formalism,
        input: String,
        /// The word; `ε` or an empty string for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Translate an RMSOL formula to a term, or a ground term to RMSOL.
    Translate {
        input: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Compile an automaton into a term.
    Compile {
        input: String,
        #[arg(long, value_enum, default_value_t = Formalism::Automaton)]
        from: Formalism,
        #[arg(long, value_enum, default_value_t = Formalism::Msoleval)]
        to: Formalism,
    },
    /// Compare two inputs on all words up to --max-len.
    Equiv {
        left: String,
        right: String,
        /// Evaluate formulas and terms through their translations.
        #[arg(long)]
        via_translation: bool,
    },
    /// Ranks of the Hankel blocks over all words up to each length.
    Hankel { input: String },
    /// Synthesize an automaton from the values of an input.
    Learn {
        input: String,
        #[arg(long, default_value_t = 2)]
        basis_len: usize,
        /// Agreement is verified up to this length; default basis_len + 2.
        #[arg(long)]
        verify_len: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run one of the built-in consistency checks.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Check the semiring axioms on random samples.
    SemiringLaws {
        #[arg(long, default_value_t = 6)]
        samples: usize,
    },
    /// Report the fragments a formula belongs to.
    Fragments { input: String },
    /// Check that a bMSOL formula is boolean and agrees with its classical reading.
    Bmsol { input: String },
    /// Translate back and forth and compare on all words up to --max-len.
    Roundtrip { input: String },
}

/// What a command produced.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: exit::OK }
    }

    fn verdict(passed: bool, text: String, json: Value) -> Self {
        Report { text, json, code: if passed { exit::OK } else { exit::DIFFERENT } }
    }
}

/// Parses arguments and runs the command. Returns the exit code and what
/// should go to stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK { (code, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let out = match cli.format {
                OutputFormat::Text => report.text,
                OutputFormat::Json => format!("{}\n", report.json),
            };
            (report.code, out, String::new())
        }
        Err(e) => {
            let code = e.exit_code();
            match cli.format {
                OutputFormat::Text => (code, String::new(), format!("error: {e}\n")),
                OutputFormat::Json => {
                    let v = json!({ "error": e.to_string(), "exit_code": code });
                    (code, format!("{v}\n"), format!("error: {e}\n"))
                }
            }
        }
    }
}

macro_rules! with_semiring {
    ($name:expr, $f:ident ( $($arg:expr),* )) => {
        match $name {
            "bool" => $f::<bool>($($arg),*),
            "nat" => $f::<Nat>($($arg),*),
            "int" => $f::<Int>($($arg),*),
            "rat" => $f::<Rat>($($arg),*),
            "trop-min" => $f::<MinPlus>($($arg),*),
            "trop-max" => $f::<MaxPlus>($($arg),*),
            p if p == "poly" || p.starts_with("poly(") => $f::<Poly>($($arg),*),
            other => Err(Error::Usage(format!(
                "unknown semiring {other}; expected bool, nat, int, rat, trop-min, trop-max or poly"
            ))),
        }
    };
}

macro_rules! with_field {
    ($name:expr, $f:ident ( $($arg:expr),* )) => {
        match $name {
            "rat" => $f::<Rat>($($arg),*),
            other => Err(Error::Usage(format!("this command needs a field; {other} is not one (use rat)"))),
        }
    };
}

fn semiring_name(cli: &Cli, docs: &[&Document]) -> Result<String> {
    if let Some(s) = &cli.semiring {
        return Ok(s.clone());
    }
    let mut declared = docs.iter().filter_map(|d| d.semiring.as_deref());
    let first = declared.next();
    if let (Some(a), Some(b)) = (first, declared.next()) {
        if a != b {
            return Err(Error::Usage(format!("inputs declare different semirings {a} and {b}; pass --semiring")));
        }
    }
    Ok(first.unwrap_or("rat").to_string())
}

fn alphabet_for<S: Semiring>(cli: &Cli, docs: &[&Document], inputs: &[&Input<S>]) -> Result<Alphabet> {
    let mut from_automata = inputs.iter().filter_map(|i| match i {
        Input::Automaton(a) => Some(a.alphabet().clone()),
        _ => None,
    });
    if let Some(a) = from_automata.next() {
        if from_automata.any(|b| b != a) {
            return Err(Error::Usage("automata over different alphabets".into()));
        }
        return Ok(a);
    }
    let text = cli
        .alphabet
        .as_deref()
        .or_else(|| docs.iter().find_map(|d| d.alphabet.as_deref()))
        .unwrap_or("01");
    Ok(Alphabet::new(text)?)
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    let text = if text == "ε" { "" } else { text };
    Ok(Word::new(alphabet, text)?)
}

fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

/// Evaluation of any input as a word function.
struct Evaluate<'a, S>(&'a Input<S>);

impl<S: Semiring> WordFunction<S> for Evaluate<'_, S> {
    fn value(&self, w: &Word) -> wordfn_core::Result<S> {
        match self.0 {
            Input::Automaton(a) => a.run(w),
            Input::Term(t) => eval_closed(t, w),
            Input::Formula(phi) => we_eval_closed(phi, w),
        }
    }
}

fn interpret<S: Semiring>(doc: &Document) -> Result<Input<S>> {
    let input = doc.interpret::<S>()?;
    if let Input::Formula(phi) = &input {
        phi.validate()?;
    }
    Ok(input)
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Eval { formalism, input, word } => {
            let doc = load_input(input, Some(*formalism))?;
            let s = semiring_name(cli, &[&doc])?;
            with_semiring!(s.as_str(), cmd_eval(cli, &doc, word))
        }
        Command::Translate { input, to } => {
            let doc = load_input(input, None)?;
            let s = semiring_name(cli, &[&doc])?;
            with_semiring!(s.as_str(), cmd_translate(&doc, *to))
        }
        Command::Compile { input, from, to } => {
            if *from != Formalism::Automaton || *to != Formalism::Msoleval {
                return Err(Error::Usage("only --from automaton --to msoleval is supported".into()));
            }
            let doc = load_input(input, Some(Formalism::Automaton))?;
            let s = semiring_name(cli, &[&doc])?;
            with_semiring!(s.as_str(), cmd_compile(&doc))
        }
        Command::Equiv { left, right, via_translation } => {
            let l = load_input(left, None)?;
            let r = load_input(right, None)?;
            let s = semiring_name(cli, &[&l, &r])?;
            with_semiring!(s.as_str(), cmd_equiv(cli, &l, &r, *via_translation))
        }
        Command::Hankel { input } => {
            let doc = load_input(input, None)?;
            let s = semiring_name(cli, &[&doc])?;
            with_field!(s.as_str(), cmd_hankel(cli, &doc))
        }
        Command::Learn { input, basis_len, verify_len, output } => {
            let doc = load_input(input, None)?;
            let s = semiring_name(cli, &[&doc])?;
            let verify = verify_len.unwrap_or(basis_len + 2);
            with_field!(s.as_str(), cmd_learn(cli, &doc, *basis_len, verify, output.as_ref()))
        }
        Command::Check { what } => match what {
            CheckCommand::SemiringLaws { samples } => match &cli.semiring {
                Some(s) => with_semiring!(s.as_str(), cmd_laws(cli, *samples)),
                None => {
                    let names = ["bool", "nat", "int", "rat", "trop-min", "trop-max", "poly"];
                    let reports = names
                        .iter()
                        .map(|s| with_semiring!(*s, cmd_laws(cli, *samples)))
                        .collect::<Result<Vec<_>>>()?;
                    let passed = reports.iter().all(|r| r.code == exit::OK);
                    let text = reports.iter().map(|r| r.text.as_str()).collect();
                    let json = json!({ "command": "check semiring-laws", "seed": cli.seed,
                        "passed": passed, "semirings": reports.into_iter().map(|r| r.json).collect::<Vec<_>>() });
                    Ok(Report::verdict(passed, text, json))
                }
            },
            CheckCommand::Fragments { input } => {
                let doc = load_input(input, Some(Formalism::Wmsol))?;
                let s = semiring_name(cli, &[&doc])?;
                with_semiring!(s.as_str(), cmd_fragments(&doc))
            }
            CheckCommand::Bmsol { input } => {
                let doc = load_input(input, Some(Formalism::Wmsol))?;
                let s = semiring_name(cli, &[&doc])?;
                with_semiring!(s.as_str(), cmd_bmsol(cli, &doc))
            }
            CheckCommand::Roundtrip { input } => {
                let doc = load_input(input, None)?;
                let s = semiring_name(cli, &[&doc])?;
                with_semiring!(s.as_str(), cmd_roundtrip(cli, &doc))
            }
        },
    }
}

fn cmd_eval<S: Semiring>(cli: &Cli, doc: &Document, word: &str) -> Result<Report> {
    let input = interpret::<S>(doc)?;
    let alphabet = alphabet_for(cli, &[doc], &[&input])?;
    let w = parse_word(&alphabet, word)?;
    let value = Evaluate(&input).value(&w)?;
    let json = json!({
        "command": "eval", "formalism": doc.formalism.name(), "semiring": S::NAME,
        "word": w.to_string(), "value": value.to_string(),
    });
    Ok(Report::ok(format!("{value}\n"), json))
}

fn cmd_translate<S: Semiring>(doc: &Document, to: Target) -> Result<Report> {
    match (interpret::<S>(doc)?, to) {
        (Input::Formula(phi), Target::Msoleval) => {
            let r = rmsol_to_msoleval_report(&phi)?;
            let mut text = write_term(&r.output);
            let note = format!(
                "; from wmsol ({})\n; position guards: {}, case monomials: {}\n",
                r.fragment, r.guard_insertions, r.case_monomials
            );
            insert_after_header(&mut text, &note);
            let json = json!({
                "command": "translate", "to": "msoleval", "semiring": S::NAME,
                "input": phi.to_string(), "output": r.output.to_string(),
                "guard_insertions": r.guard_insertions, "case_monomials": r.case_monomials,
                "output_size": r.output.size(),
            });
            Ok(Report::ok(text, json))
        }
        (Input::Term(t), Target::Rmsol) => {
            let r = msoleval_to_rmsol_report(&t)?;
            let mut text = write_formula(&r.output);
            insert_after_header(&mut text, &format!("; from msoleval; zero splits: {}\n", r.guard_insertions));
            let json = json!({
                "command": "translate", "to": "rmsol", "semiring": S::NAME,
                "input": t.to_string(), "output": r.output.to_string(),
                "guard_insertions": r.guard_insertions, "rmsol": r.fragment.is_rmsol,
                "output_size": r.output.size(),
            });
            Ok(Report::ok(text, json))
        }
        (input, to) => Err(Error::Usage(format!(
            "cannot translate {} input to {}; use a wmsol input with --to msoleval or a msoleval input with --to rmsol",
            input.formalism(),
            match to {
                Target::Msoleval => "msoleval",
                Target::Rmsol => "rmsol",
            }
        ))),
    }
}

/// Inserts comment lines after the `semiring:` line of a written document.
fn insert_after_header(text: &mut String, note: &str) {
    let at = text.match_indices('\n').nth(1).map_or(text.len(), |(i, _)| i + 1);
    text.insert_str(at, note);
}

fn cmd_compile<S: Semiring>(doc: &Document) -> Result<Report> {
    let Input::Automaton(a) = interpret::<S>(doc)? else {
        unreachable!("load_input checked the formalism")
    };
    let t = automaton_to_msoleval(&a);
    let json = json!({
        "command": "compile", "semiring": S::NAME, "size": a.size(),
        "output": t.to_string(), "output_size": t.size(),
    });
    Ok(Report::ok(write_term(&t), json))
}

fn through_translation<S: Semiring>(input: Input<S>) -> Result<Input<S>> {
    Ok(match input {
        Input::Formula(phi) => Input::Term(rmsol_to_msoleval_report(&phi)?.output),
        Input::Term(t) => Input::Formula(msoleval_to_rmsol_report(&t)?.output),
        a => a,
    })
}

fn cmd_equiv<S: Semiring>(cli: &Cli, l: &Document, r: &Document, via_translation: bool) -> Result<Report> {
    let (mut left, mut right) = (interpret::<S>(l)?, interpret::<S>(r)?);
    if via_translation {
        left = through_translation(left)?;
        right = through_translation(right)?;
    }
    let alphabet = alphabet_for(cli, &[l, r], &[&left, &right])?;
    let words = wordfn_core::word::count_words(&alphabet, cli.max_len);
    let diff = first_disagreement(&Evaluate(&left), &Evaluate(&right), &alphabet, cli.max_len)?;
    let mut json = json!({
        "command": "equiv", "semiring": S::NAME, "max_len": cli.max_len,
        "words": words, "equal": diff.is_none(),
    });
    let text = match &diff {
        None => format!("equal on all {words} words of length at most {}\n", cli.max_len),
        Some((w, a, b)) => {
            json["counterexample"] = json!({ "word": w.to_string(), "left": a.to_string(), "right": b.to_string() });
            format!("different on {}: left {a}, right {b}\n", show_word(w))
        }
    };
    Ok(Report::verdict(diff.is_none(), text, json))
}

fn cmd_hankel<S: Field>(cli: &Cli, doc: &Document) -> Result<Report> {
    let input = interpret::<S>(doc)?;
    let alphabet = alphabet_for(cli, &[doc], &[&input])?;
    let ranks = hankel_ranks(&Evaluate(&input), &alphabet, cli.max_len)?;
    let text = ranks.iter().enumerate().map(|(len, r)| format!("length {len}: rank {r}\n")).collect();
    let json = json!({ "command": "hankel", "semiring": S::NAME, "ranks": ranks });
    Ok(Report::ok(text, json))
}

fn cmd_learn<S: Field>(
    cli: &Cli,
    doc: &Document,
    basis_len: usize,
    verify_len: usize,
    output: Option<&PathBuf>,
) -> Result<Report> {
    let input = interpret::<S>(doc)?;
    let alphabet = alphabet_for(cli, &[doc], &[&input])?;
    let f = Evaluate(&input);
    let learned = learn_automaton(&f, &alphabet, basis_len)?;
    let diff = first_disagreement(&f, &learned, &alphabet, verify_len)?;
    let verdict = match &diff {
        None => format!("; verified on all words of length at most {verify_len}\n"),
        Some((w, a, b)) => format!("; verification FAILED on {}: input {a}, learned {b}\n", show_word(w)),
    };
    let automaton = write_automaton(&learned);
    let text = match output {
        Some(path) => {
            std::fs::write(path, &automaton)
                .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
            format!("size {} automaton written to {}\n{verdict}", learned.size(), path.display())
        }
        None => format!("{automaton}{verdict}"),
    };
    let json = json!({
        "command": "learn", "semiring": S::NAME, "basis_len": basis_len, "size": learned.size(),
        "verify_len": verify_len, "verified": diff.is_none(),
    });
    Ok(Report::verdict(diff.is_none(), text, json))
}

fn cmd_laws<S: Sample>(cli: &Cli, n: usize) -> Result<Report> {
    let pool: Vec<S> = samples(&mut rng(cli.seed), n);
    let report = check_semiring_laws(&S::spec(), &pool);
    let mut text = format!("{} ({} samples)\n", S::NAME, report.samples);
    let mut laws = Vec::new();
    for c in &report.checks {
        let status = if c.passed { "ok".to_string() } else { "FAILED".to_string() };
        let witness = c.witness.as_ref().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>());
        match &witness {
            Some(w) => text.push_str(&format!("  {:<24} {status} witness ({})\n", c.law.name(), w.join(", "))),
            None => text.push_str(&format!("  {:<24} {status}\n", c.law.name())),
        }
        laws.push(json!({ "law": c.law.name(), "passed": c.passed, "witness": witness }));
    }
    let json = json!({
        "command": "check semiring-laws", "semiring": S::NAME, "seed": cli.seed,
        "passed": report.all_passed(), "laws": laws,
    });
    Ok(Report::verdict(report.all_passed(), text, json))
}

fn cmd_fragments<S: Semiring>(doc: &Document) -> Result<Report> {
    let Input::Formula(phi) = doc.interpret::<S>()? else {
        unreachable!("load_input checked the formalism")
    };
    let c = classify(&phi);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "bmsol: {}\nstep: {}\nrmsol: {}\nwmsol: {}\n",
        yes(c.is_bmsol),
        yes(c.is_step),
        yes(c.is_rmsol),
        yes(c.is_full)
    );
    if let Some(bad) = phi.rmsol_violation() {
        text.push_str(&format!("outside rmsol: {bad}\n"));
    }
    let json = json!({
        "command": "check fragments", "bmsol": c.is_bmsol, "step": c.is_step,
        "rmsol": c.is_rmsol, "wmsol": c.is_full,
        "rmsol_violation": phi.rmsol_violation().map(ToString::to_string),
    });
    Ok(Report::ok(text, json))
}

fn cmd_bmsol<S: Semiring>(cli: &Cli, doc: &Document) -> Result<Report> {
    let input = interpret::<S>(doc)?;
    let alphabet = alphabet_for(cli, &[doc], &[&input])?;
    let Input::Formula(phi) = input else {
        unreachable!("load_input checked the formalism")
    };
    let report = bmsol_boolean_check(&phi, &alphabet, cli.max_len)?;
    let mut json = json!({
        "command": "check bmsol", "semiring": S::NAME, "max_len": cli.max_len,
        "cases": report.cases, "passed": report.passed(),
    });
    let text = match &report.mismatch {
        None => format!("boolean and classical on {} cases up to length {}\n", report.cases, cli.max_len),
        Some(m) => {
            json["mismatch"] = json!({
                "word": m.word.to_string(), "weighted": m.weighted.to_string(), "satisfied": m.satisfied,
            });
            format!(
                "mismatch on {} with {:?}: weighted {}, classical {}\n",
                show_word(&m.word),
                m.assignment,
                m.weighted,
                m.satisfied
            )
        }
    };
    Ok(Report::verdict(report.passed(), text, json))
}

fn cmd_roundtrip<S: Semiring>(cli: &Cli, doc: &Document) -> Result<Report> {
    let input = interpret::<S>(doc)?;
    let alphabet = alphabet_for(cli, &[doc], &[&input])?;
    let expr = match input {
        Input::Formula(phi) => Expr::Formula(phi),
        Input::Term(t) => Expr::Term(t),
        Input::Automaton(_) => return Err(Error::Usage("round trips start from a formula or a term".into())),
    };
    let report = roundtrip_check(&expr, &alphabet, cli.max_len)?;
    let mut json = json!({
        "command": "check roundtrip", "semiring": S::NAME, "max_len": cli.max_len,
        "words": report.words_checked, "cases": report.cases_checked, "passed": report.passed(),
    });
    let text = match &report.discrepancy {
        None => format!(
            "round trip agrees on all {} words of length at most {}\n",
            report.words_checked, cli.max_len
        ),
        Some(d) => {
            json["discrepancy"] = json!({
                "word": d.word.to_string(), "original": d.original.to_string(),
                "translated": d.translated.to_string(), "round_trip": d.round_trip.to_string(),
            });
            format!(
                "discrepancy on {}: original {}, translated {}, round trip {}\n",
                show_word(&d.word),
                d.original,
                d.translated,
                d.round_trip
            )
        }
    };
    Ok(Report::verdict(report.passed(), text, json))
}
