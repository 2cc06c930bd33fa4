//! Input documents.
//!
//! A file starts with a header line `formalism: automaton|msoleval|wmsol`,
//! optionally followed by `semiring:` and `alphabet:` lines. Terms and
//! formulas then give one s-expression. Automata list their data:
//!
//! ```text
//! formalism: automaton
//! semiring: rat
//! alphabet: 01
//! size: 2
//! alpha: 1 0
//! gamma: 0 1
//! mu 0:
//!   1 0
//!   0 1
//! mu 1:
//!   1 1
//!   0 1
//! ```
//!
//! Lines starting with `;` or `#` are comments. On the command line an input
//! is either a path or inline text `formalism:body`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use wordfn_core::automata::{Matrix, WeightedAutomaton};
use wordfn_core::msoleval::EvalTerm;
use wordfn_core::semiring::Semiring;
use wordfn_core::wmsol::{classify, WmsolFormula};
use wordfn_core::word::Alphabet;

use crate::error::{parse_err, Error, Result};
use crate::parse::{parse_term, parse_wmsol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Formalism {
    Automaton,
    Msoleval,
    Wmsol,
}

impl Formalism {
    pub fn name(self) -> &'static str {
        match self {
            Formalism::Automaton => "automaton",
            Formalism::Msoleval => "msoleval",
            Formalism::Wmsol => "wmsol",
        }
    }
}

impl fmt::Display for Formalism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formalism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "automaton" => Ok(Formalism::Automaton),
            "msoleval" => Ok(Formalism::Msoleval),
            "wmsol" | "rmsol" => Ok(Formalism::Wmsol),
            other => Err(parse_err(format!("unknown formalism {other}"))),
        }
    }
}

/// A document whose body has not been interpreted yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub formalism: Formalism,
    pub semiring: Option<String>,
    pub alphabet: Option<String>,
    pub body: String,
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with(';') || t.starts_with('#')
}

fn key_value(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    let k = k.trim();
    k.chars().all(|c| c.is_ascii_alphanumeric() || c == ' ').then_some((k, v.trim()))
}

pub fn read_document(text: &str) -> Result<Document> {
    let mut lines = text.lines().skip_while(|l| is_comment(l));
    let header = lines.next().ok_or_else(|| parse_err("empty input"))?;
    let formalism = match key_value(header) {
        Some(("formalism", f)) => f.parse()?,
        _ => return Err(parse_err(format!("expected a 'formalism:' header, got {header:?}"))),
    };
    let mut doc = Document { formalism, semiring: None, alphabet: None, body: String::new() };
    let mut in_meta = true;
    for line in lines {
        if in_meta {
            match key_value(line) {
                Some(("semiring", s)) => {
                    doc.semiring = Some(s.to_string());
                    continue;
                }
                Some(("alphabet", a)) => {
                    doc.alphabet = Some(a.to_string());
                    continue;
                }
                _ if is_comment(line) => continue,
                _ => in_meta = false,
            }
        }
        doc.body.push_str(line);
        doc.body.push('\n');
    }
    Ok(doc)
}

/// Reads a path, or failing that interprets the argument as inline text.
pub fn load_input(arg: &str, expected: Option<Formalism>) -> Result<Document> {
    let doc = match std::fs::read_to_string(arg) {
        Ok(text) => read_document(&text)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => inline(arg, expected)?,
        Err(source) => return Err(Error::Io { path: arg.to_string(), source }),
    };
    match expected {
        Some(f) if f != doc.formalism => {
            Err(parse_err(format!("{arg} is declared as {}, expected {f}", doc.formalism)))
        }
        _ => Ok(doc),
    }
}

fn inline(arg: &str, expected: Option<Formalism>) -> Result<Document> {
    if arg.trim_start().starts_with("formalism:") {
        return read_document(arg);
    }
    let (formalism, body) = match arg.split_once(':') {
        Some((f, body)) if f.parse::<Formalism>().is_ok() && !f.contains('(') => (f.parse()?, body),
        _ => match expected {
            Some(f) => (f, arg),
            None => {
                return Err(parse_err(format!(
                    "no file {arg:?}; inline inputs need a prefix such as 'wmsol:'"
                )))
            }
        },
    };
    if formalism == Formalism::Automaton {
        return Err(parse_err("automata must be given as files"));
    }
    Ok(Document { formalism, semiring: None, alphabet: None, body: body.to_string() })
}

/// An interpreted input.
#[derive(Clone, Debug, PartialEq)]
pub enum Input<S> {
    Automaton(WeightedAutomaton<S>),
    Term(EvalTerm<S>),
    Formula(WmsolFormula<S>),
}

impl<S: Semiring> Input<S> {
    pub fn formalism(&self) -> Formalism {
        match self {
            Input::Automaton(_) => Formalism::Automaton,
            Input::Term(_) => Formalism::Msoleval,
            Input::Formula(_) => Formalism::Wmsol,
        }
    }
}

impl Document {
    pub fn interpret<S: Semiring>(&self) -> Result<Input<S>> {
        Ok(match self.formalism {
            Formalism::Automaton => Input::Automaton(parse_automaton_body(self)?),
            Formalism::Msoleval => Input::Term(parse_term(&self.body)?),
            Formalism::Wmsol => Input::Formula(parse_wmsol(&self.body)?),
        })
    }
}

fn literals<S: Semiring>(text: &str) -> Result<Vec<S>> {
    text.split_whitespace()
        .map(|t| S::parse_literal(t).ok_or_else(|| parse_err(format!("{t} is not a literal of {}", S::NAME))))
        .collect()
}

fn parse_automaton_body<S: Semiring>(doc: &Document) -> Result<WeightedAutomaton<S>> {
    let alphabet = Alphabet::new(doc.alphabet.as_deref().ok_or_else(|| parse_err("automaton without alphabet"))?)?;
    let mut size = None;
    let (mut alpha, mut gamma) = (None, None);
    let mut mu: BTreeMap<char, Vec<Vec<S>>> = BTreeMap::new();
    let mut current: Option<char> = None;
    for line in doc.body.lines().filter(|l| !is_comment(l)) {
        if let Some(rest) = line.trim().strip_prefix("mu ") {
            let letter = rest
                .strip_suffix(':')
                .and_then(|l| {
                    let mut cs = l.trim().chars();
                    cs.next().filter(|_| cs.next().is_none())
                })
                .ok_or_else(|| parse_err(format!("bad matrix header {line:?}")))?;
            if mu.insert(letter, Vec::new()).is_some() {
                return Err(parse_err(format!("matrix for {letter} given twice")));
            }
            current = Some(letter);
            continue;
        }
        match key_value(line) {
            Some(("size", n)) => {
                size = Some(n.parse::<usize>().map_err(|_| parse_err(format!("bad size {n}")))?);
                current = None;
            }
            Some(("alpha", v)) => {
                alpha = Some(literals(v)?);
                current = None;
            }
            Some(("gamma", v)) => {
                gamma = Some(literals(v)?);
                current = None;
            }
            _ => match current {
                Some(c) => mu.get_mut(&c).expect("opened above").push(literals(line)?),
                None => return Err(parse_err(format!("unexpected line {line:?}"))),
            },
        }
    }
    let alpha: Vec<S> = alpha.ok_or_else(|| parse_err("automaton without alpha"))?;
    let gamma = gamma.ok_or_else(|| parse_err("automaton without gamma"))?;
    if let Some(r) = size {
        if r != alpha.len() {
            return Err(wordfn_core::Error::DimensionMismatch(format!("size {r} but alpha has {}", alpha.len())).into());
        }
    }
    let mu = mu
        .into_iter()
        .map(|(c, rows)| Ok((c, Matrix::from_rows(rows)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(WeightedAutomaton::new(alphabet, alpha, mu, gamma)?)
}

pub fn parse_automaton<S: Semiring>(text: &str) -> Result<WeightedAutomaton<S>> {
    let doc = read_document(text)?;
    if doc.formalism != Formalism::Automaton {
        return Err(parse_err(format!("expected an automaton, got {}", doc.formalism)));
    }
    parse_automaton_body(&doc)
}

pub fn write_automaton<S: Semiring>(a: &WeightedAutomaton<S>) -> String {
    format!("formalism: automaton\n{a}")
}

pub fn write_term<S: Semiring>(t: &EvalTerm<S>) -> String {
    format!("formalism: msoleval\nsemiring: {}\n{t}\n", S::NAME)
}

/// Formulas carry their fragment classification as a comment.
pub fn write_formula<S: Semiring>(phi: &WmsolFormula<S>) -> String {
    format!("formalism: wmsol\nsemiring: {}\n; fragment: {}\n{phi}\n", S::NAME, classify(phi))
}

pub fn write_input<S: Semiring>(input: &Input<S>) -> String {
    match input {
        Input::Automaton(a) => write_automaton(a),
        Input::Term(t) => write_term(t),
        Input::Formula(phi) => write_formula(phi),
    }
}
