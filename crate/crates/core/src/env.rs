//! Variable environments shared by the evaluators.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::Assignment;

/// A bound value. Set values may be only partially decided: bits outside
/// `known` are undetermined, which the three-valued guard evaluator uses
/// to prune set enumerations early.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Binding {
    Elem(usize),
    Set { members: u64, known: u64 },
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Env<'a> {
    frames: Vec<(&'a str, Binding)>,
}

impl<'a> Env<'a> {
    pub(crate) fn from_assignment(sigma: &'a Assignment) -> Self {
        let mut frames = Vec::new();
        for (name, &e) in &sigma.first_order {
            frames.push((name.as_str(), Binding::Elem(e)));
        }
        for (name, set) in &sigma.second_order {
            frames.push((name.as_str(), Binding::Set { members: set.0, known: u64::MAX }));
        }
        Env { frames }
    }

    pub(crate) fn push(&mut self, name: &'a str, b: Binding) {
        self.frames.push((name, b));
    }

    pub(crate) fn pop(&mut self) {
        self.frames.pop();
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        self.frames.truncate(len);
    }

    pub(crate) fn depth(&self) -> usize {
        self.frames.len()
    }

    pub(crate) fn set_top(&mut self, b: Binding) {
        if let Some(top) = self.frames.last_mut() {
            top.1 = b;
        }
    }

    pub(crate) fn set_at(&mut self, idx: usize, b: Binding) {
        self.frames[idx].1 = b;
    }

    pub(crate) fn element(&self, name: &str) -> Result<usize> {
        match self.lookup(name)? {
            Binding::Elem(e) => Ok(e),
            Binding::Set { .. } => Err(Error::SortMismatch(name.into())),
        }
    }

    pub(crate) fn set(&self, name: &str) -> Result<(u64, u64)> {
        match self.lookup(name)? {
            Binding::Set { members, known } => Ok((members, known)),
            Binding::Elem(_) => Err(Error::SortMismatch(name.into())),
        }
    }

    fn lookup(&self, name: &str) -> Result<Binding> {
        self.frames
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|(_, b)| *b)
            .ok_or_else(|| Error::UnboundVariable(name.into()))
    }
}
