//! Exact linear algebra over a field: rank and row-space membership.

use alloc::vec::Vec;

use crate::semiring::{Field, Ring, Semiring};

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank<S: Field>(rows: &[Vec<S>]) -> usize {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let height = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = S::one();
    let mut r = 0;
    for col in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][col].clone();
        for i in r + 1..height {
            let lead = a[i][col].clone();
            for j in col + 1..width {
                let t = pivot.times(&a[i][j]).minus(&lead.times(&a[r][j]));
                a[i][j] = t.div(&prev).expect("Bareiss divisor is a previous pivot");
            }
            a[i][col] = S::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// The span of a growing list of vectors, kept in echelon form together
/// with the coefficients expressing each reduced row in the inserted ones.
#[derive(Clone, Debug)]
pub struct RowSpace<S> {
    reduced: Vec<Reduced<S>>,
}

#[derive(Clone, Debug)]
struct Reduced<S> {
    pivot: usize,
    row: Vec<S>,
    combo: Vec<S>,
}

impl<S: Field> Default for RowSpace<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Field> RowSpace<S> {
    pub fn new() -> Self {
        RowSpace { reduced: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.reduced.len()
    }

    /// Splits `v` as `residual + Σ combo_j b_j` over the inserted vectors.
    fn reduce(&self, v: &[S]) -> (Vec<S>, Vec<S>) {
        let mut residual = v.to_vec();
        let mut combo = alloc::vec![S::zero(); self.reduced.len()];
        for red in &self.reduced {
            let lead = &residual[red.pivot];
            if lead.is_zero() {
                continue;
            }
            let f = lead.div(&red.row[red.pivot]).expect("pivots are nonzero");
            for (x, y) in residual.iter_mut().zip(&red.row) {
                *x = x.minus(&f.times(y));
            }
            for (x, y) in combo.iter_mut().zip(&red.combo) {
                *x = x.plus(&f.times(y));
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).0.iter().all(Semiring::is_zero)
    }

    /// Coefficients of `v` in the inserted vectors, in insertion order.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        let (residual, combo) = self.reduce(v);
        residual.iter().all(Semiring::is_zero).then_some(combo)
    }

    /// Inserts `v` if it is independent of the current span.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let (residual, combo) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut combo: Vec<S> = combo.iter().map(Ring::neg).collect();
        combo.push(S::one());
        for red in &mut self.reduced {
            red.combo.resize(combo.len(), S::zero());
        }
        self.reduced.push(Reduced { pivot, row: residual, combo });
        true
    }
}
