//! Fresh-name supply for the translations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;

/// Generates names that do not clash with a set of reserved names.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: BTreeSet<String>,
    counter: usize,
}

impl Fresh {
    pub fn avoiding<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Fresh {
            used: names.into_iter().map(Into::into).collect(),
            counter: 0,
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.into());
    }

    pub fn next(&mut self, prefix: &str) -> String {
        loop {
            let candidate = format!("{prefix}{}", self.counter);
            self.counter += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}
