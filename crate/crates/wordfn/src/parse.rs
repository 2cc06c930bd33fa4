//! Readers for MSO formulas, WMSOL formulas and MSOLEVAL terms.
//!
//! The concrete syntax is the one produced by the `Display` impls of the
//! core types, so printing and reading round-trip.

use std::collections::BTreeMap;
use std::marker::PhantomData;

use wordfn_core::msoleval::{Base, EvalTerm};
use wordfn_core::mso::MsoFormula;
use wordfn_core::semiring::Semiring;
use wordfn_core::wmsol::{WAtom, WmsolFormula};
use wordfn_core::Error as CoreError;

use crate::error::{parse_err, Result};
use crate::sexpr::{self, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    Element,
    Set,
}

struct Reader<S> {
    bound: Vec<(String, Sort)>,
    free: BTreeMap<String, Sort>,
    semiring: PhantomData<S>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn split(e: &Sexp) -> Result<(&str, &[Sexp])> {
    match e {
        Sexp::List(items) => match items.split_first() {
            Some((Sexp::Atom(head), rest)) => Ok((head, rest)),
            _ => Err(parse_err(format!("expected an operator at the head of {e}"))),
        },
        Sexp::Atom(a) => Err(parse_err(format!("unexpected atom {a}"))),
    }
}

fn arity(head: &str, args: &[Sexp], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(parse_err(format!("{head} takes {n} argument(s), got {}", args.len())))
    }
}

fn letter_of(head: &str) -> Option<char> {
    let mut chars = head.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some('P'), Some(c), None) => Some(c),
        _ => None,
    }
}

impl<S: Semiring> Reader<S> {
    fn new() -> Self {
        Reader { bound: Vec::new(), free: BTreeMap::new(), semiring: PhantomData }
    }

    fn var(&mut self, e: &Sexp, sort: Sort) -> Result<String> {
        let name = e
            .as_atom()
            .filter(|n| is_identifier(n))
            .ok_or_else(|| parse_err(format!("expected a variable name, got {e}")))?;
        let known = self.bound.iter().rev().find(|(n, _)| n == name).map(|(_, s)| *s);
        let known = known.or_else(|| self.free.get(name).copied());
        match known {
            Some(s) if s != sort => Err(CoreError::SortMismatch(name.to_string()).into()),
            Some(_) => Ok(name.to_string()),
            None => {
                self.free.insert(name.to_string(), sort);
                Ok(name.to_string())
            }
        }
    }

    fn binder(&mut self, e: &Sexp, sort: Sort) -> Result<String> {
        let name = e
            .as_atom()
            .filter(|n| is_identifier(n))
            .ok_or_else(|| parse_err(format!("expected a variable name, got {e}")))?;
        if self.bound.iter().any(|(n, _)| n == name) {
            return Err(CoreError::Shadowing(name.to_string()).into());
        }
        self.bound.push((name.to_string(), sort));
        Ok(name.to_string())
    }

    fn scoped<T>(&mut self, var: &Sexp, sort: Sort, body: impl FnOnce(&mut Self) -> Result<T>) -> Result<(String, T)> {
        let name = self.binder(var, sort)?;
        let out = body(self);
        self.bound.pop();
        Ok((name, out?))
    }

    fn literal(&self, e: &Sexp) -> Result<S> {
        let text = e.as_atom().ok_or_else(|| parse_err(format!("expected a literal, got {e}")))?;
        S::parse_literal(text).ok_or_else(|| parse_err(format!("{text} is not a literal of {}", S::NAME)))
    }

    /// Atomic formulas shared by MSO and WMSOL.
    fn atom(&mut self, head: &str, args: &[Sexp]) -> Result<Option<WAtom>> {
        if let Some(a) = letter_of(head) {
            arity(head, args, 1)?;
            return Ok(Some(WAtom::Letter(a, self.var(&args[0], Sort::Element)?)));
        }
        Ok(Some(match head {
            "leq" => {
                arity(head, args, 2)?;
                WAtom::Leq(self.var(&args[0], Sort::Element)?, self.var(&args[1], Sort::Element)?)
            }
            "in" => {
                arity(head, args, 2)?;
                WAtom::In(self.var(&args[0], Sort::Element)?, self.var(&args[1], Sort::Set)?)
            }
            _ => return Ok(None),
        }))
    }

    fn mso(&mut self, e: &Sexp) -> Result<MsoFormula> {
        match e.as_atom() {
            Some("true") => return Ok(MsoFormula::True),
            Some("false") => return Ok(MsoFormula::False),
            _ => {}
        }
        let (head, args) = split(e)?;
        if let Some(a) = self.atom(head, args)? {
            return Ok(match a {
                WAtom::Letter(c, x) => MsoFormula::Letter(c, x),
                WAtom::Leq(x, y) => MsoFormula::Leq(x, y),
                WAtom::In(x, s) => MsoFormula::In(x, s),
            });
        }
        Ok(match head {
            "eq" => {
                arity(head, args, 2)?;
                MsoFormula::Eq(self.var(&args[0], Sort::Element)?, self.var(&args[1], Sort::Element)?)
            }
            "not" => {
                arity(head, args, 1)?;
                self.mso(&args[0])?.not()
            }
            "and" | "or" => {
                let parts = args.iter().map(|a| self.mso(a)).collect::<Result<Vec<_>>>()?;
                if head == "and" {
                    MsoFormula::all(parts)
                } else {
                    MsoFormula::any(parts)
                }
            }
            "imp" => {
                arity(head, args, 2)?;
                self.mso(&args[0])?.implies(self.mso(&args[1])?)
            }
            "exists" | "forall" | "existsset" | "forallset" => {
                arity(head, args, 2)?;
                let sort = if head.ends_with("set") { Sort::Set } else { Sort::Element };
                let (x, body) = self.scoped(&args[0], sort, |r| r.mso(&args[1]))?;
                match head {
                    "exists" => MsoFormula::exists(&x, body),
                    "forall" => MsoFormula::forall(&x, body),
                    "existsset" => MsoFormula::exists_set(&x, body),
                    _ => MsoFormula::forall_set(&x, body),
                }
            }
            _ => return Err(parse_err(format!("unknown MSO operator {head}"))),
        })
    }

    fn wmsol(&mut self, e: &Sexp) -> Result<WmsolFormula<S>> {
        let (head, args) = split(e)?;
        if let Some(a) = self.atom(head, args)? {
            return Ok(WmsolFormula::Atom(a));
        }
        Ok(match head {
            "k" => {
                arity(head, args, 1)?;
                WmsolFormula::Const(self.literal(&args[0])?)
            }
            "not" => {
                arity(head, args, 1)?;
                self.wmsol(&args[0])?.negate()
            }
            "and" | "or" => {
                let mut parts = args.iter().map(|a| self.wmsol(a)).collect::<Result<Vec<_>>>()?;
                let Some(last) = parts.pop() else {
                    return Err(parse_err(format!("{head} needs at least one argument")));
                };
                parts.into_iter().rev().fold(last, |acc, p| if head == "and" { p.and(acc) } else { p.or(acc) })
            }
            "exists" | "forall" | "existsset" | "forallset" => {
                arity(head, args, 2)?;
                let sort = if head.ends_with("set") { Sort::Set } else { Sort::Element };
                let (x, body) = self.scoped(&args[0], sort, |r| r.wmsol(&args[1]))?;
                match head {
                    "exists" => WmsolFormula::exists(&x, body),
                    "forall" => WmsolFormula::forall(&x, body),
                    "existsset" => WmsolFormula::exists_set(&x, body),
                    _ => WmsolFormula::forall_set(&x, body),
                }
            }
            _ => return Err(parse_err(format!("unknown WMSOL operator {head}"))),
        })
    }

    fn term(&mut self, e: &Sexp) -> Result<EvalTerm<S>> {
        let (head, args) = split(e)?;
        Ok(match head {
            "const" => {
                arity(head, args, 1)?;
                EvalTerm::Const(self.literal(&args[0])?)
            }
            "mon" => {
                arity(head, args, 3)?;
                let base = match &args[0] {
                    Sexp::List(_) => {
                        let (h, a) = split(&args[0])?;
                        if h != "ind" {
                            return Err(parse_err(format!("expected (ind NAME), got {}", args[0])));
                        }
                        arity(h, a, 1)?;
                        let name = a[0]
                            .as_atom()
                            .filter(|n| is_identifier(n))
                            .ok_or_else(|| parse_err(format!("bad indeterminate {}", a[0])))?;
                        Base::Indeterminate(name.to_string())
                    }
                    lit => Base::Element(self.literal(lit)?),
                };
                let (var, guard) = self.scoped(&args[1], Sort::Element, |r| r.mso(&args[2]))?;
                EvalTerm::Monomial { base, var, guard }
            }
            "prod" => EvalTerm::Product(args.iter().map(|a| self.term(a)).collect::<Result<_>>()?),
            "sumel" => {
                arity(head, args, 3)?;
                let (var, (guard, body)) =
                    self.scoped(&args[0], Sort::Element, |r| Ok((r.mso(&args[1])?, r.term(&args[2])?)))?;
                EvalTerm::ElemSum { var, guard, body: Box::new(body) }
            }
            "sumset" => {
                arity(head, args, 3)?;
                let Sexp::List(vars) = &args[0] else {
                    return Err(parse_err(format!("expected a list of set variables, got {}", args[0])));
                };
                let depth = self.bound.len();
                let names = vars.iter().map(|v| self.binder(v, Sort::Set)).collect::<Result<Vec<_>>>();
                let inner = names.and_then(|names| Ok((names, self.mso(&args[1])?, self.term(&args[2])?)));
                self.bound.truncate(depth);
                let (vars, guard, body) = inner?;
                EvalTerm::SetSum { vars, guard, body: Box::new(body) }
            }
            _ => return Err(parse_err(format!("unknown term operator {head}"))),
        })
    }
}

pub fn mso_from_sexp(e: &Sexp) -> Result<MsoFormula> {
    Reader::<bool>::new().mso(e)
}

pub fn wmsol_from_sexp<S: Semiring>(e: &Sexp) -> Result<WmsolFormula<S>> {
    Reader::new().wmsol(e)
}

pub fn term_from_sexp<S: Semiring>(e: &Sexp) -> Result<EvalTerm<S>> {
    Reader::new().term(e)
}

pub fn parse_mso(text: &str) -> Result<MsoFormula> {
    mso_from_sexp(&sexpr::parse(text)?)
}

pub fn parse_wmsol<S: Semiring>(text: &str) -> Result<WmsolFormula<S>> {
    wmsol_from_sexp(&sexpr::parse(text)?)
}

pub fn parse_term<S: Semiring>(text: &str) -> Result<EvalTerm<S>> {
    term_from_sexp(&sexpr::parse(text)?)
}
