//! Weighted automata, left quotients, compilation into MSOLEVAL terms, and
//! Hankel-matrix analysis over fields.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rank, RowSpace};
use crate::mso::{stock, MsoFormula};
use crate::msoleval::EvalTerm;
use crate::semiring::{Field, Semiring};
use crate::word::{enumerate_words, Alphabet, Word};

/// A dense matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".to_string()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[S]) -> Vec<S> {
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (i, x)| acc.plus(&x.times(self.get(i, j))))
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let data = (0..self.rows).flat_map(|i| rhs.left_mul(self.row(i))).collect();
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }
}

fn dot<S: Semiring>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

/// `A = (α, μ, γ)` of size `r`: `f_A(w) = α · μ_{w_1} ⋯ μ_{w_n} · γᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAutomaton<S> {
    alphabet: Alphabet,
    alpha: Vec<S>,
    gamma: Vec<S>,
    mu: BTreeMap<char, Matrix<S>>,
}

impl<S: Semiring> WeightedAutomaton<S> {
    pub fn new(alphabet: Alphabet, alpha: Vec<S>, mu: BTreeMap<char, Matrix<S>>, gamma: Vec<S>) -> Result<Self> {
        let r = alpha.len();
        if r == 0 {
            return Err(Error::DimensionMismatch("automaton of size 0".to_string()));
        }
        if gamma.len() != r {
            return Err(Error::DimensionMismatch(format!("alpha has length {r}, gamma {}", gamma.len())));
        }
        for (c, m) in &mu {
            if !alphabet.contains(*c) {
                return Err(Error::UnknownLetter(*c));
            }
            if m.rows != r || m.cols != r {
                return Err(Error::DimensionMismatch(format!(
                    "mu {c} is {}x{}, expected {r}x{r}",
                    m.rows, m.cols
                )));
            }
        }
        if let Some(c) = alphabet.letters().iter().find(|c| !mu.contains_key(c)) {
            return Err(Error::DimensionMismatch(format!("no transition matrix for letter {c}")));
        }
        Ok(WeightedAutomaton { alphabet, alpha, gamma, mu })
    }

    pub fn size(&self) -> usize {
        self.alpha.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alpha(&self) -> &[S] {
        &self.alpha
    }

    pub fn gamma(&self) -> &[S] {
        &self.gamma
    }

    pub fn mu(&self, letter: char) -> Option<&Matrix<S>> {
        self.mu.get(&letter)
    }

    pub fn transitions(&self) -> &BTreeMap<char, Matrix<S>> {
        &self.mu
    }

    /// The row vector `α · μ_w`.
    pub fn forward(&self, w: &Word) -> Result<Vec<S>> {
        let mut v = self.alpha.clone();
        for c in w.letters() {
            let m = self.mu.get(c).ok_or(Error::UnknownLetter(*c))?;
            v = m.left_mul(&v);
        }
        Ok(v)
    }

    pub fn run(&self, w: &Word) -> Result<S> {
        Ok(dot(&self.forward(w)?, &self.gamma))
    }

    /// An automaton for `u ↦ f_A(w∘u)`: the initial vector becomes `α · μ_w`.
    pub fn left_quotient(&self, w: &Word) -> Result<Self> {
        Ok(WeightedAutomaton { alpha: self.forward(w)?, ..self.clone() })
    }
}

impl<S: Semiring> fmt::Display for WeightedAutomaton<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |v: &[S]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "semiring: {}", S::NAME)?;
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "size: {}", self.size())?;
        writeln!(f, "alpha: {}", row(&self.alpha))?;
        writeln!(f, "gamma: {}", row(&self.gamma))?;
        for (c, m) in &self.mu {
            writeln!(f, "mu {c}:")?;
            for i in 0..m.rows {
                writeln!(f, "  {}", row(m.row(i)))?;
            }
        }
        Ok(())
    }
}

/// Anything that assigns a value to every word.
pub trait WordFunction<S> {
    fn value(&self, w: &Word) -> Result<S>;
}

impl<S: Semiring> WordFunction<S> for WeightedAutomaton<S> {
    fn value(&self, w: &Word) -> Result<S> {
        self.run(w)
    }
}

impl<S, F: Fn(&Word) -> Result<S>> WordFunction<S> for F {
    fn value(&self, w: &Word) -> Result<S> {
        self(w)
    }
}

/// The first word of length at most `max_len` on which `f` and `g` differ.
pub fn first_disagreement<S: Semiring>(
    f: &impl WordFunction<S>,
    g: &impl WordFunction<S>,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<Option<(Word, S, S)>> {
    for w in enumerate_words(alphabet, max_len) {
        let (a, b) = (f.value(&w)?, g.value(&w)?);
        if a != b {
            return Ok(Some((w, a, b)));
        }
    }
    Ok(None)
}

/// An MSOLEVAL term computing `f_A`.
///
/// A run is an assignment of states to the elements `0..=n`, encoded as an
/// ordered partition `(U_1, …, U_r)` of the universe. Element 0 carries the
/// initial weight, position `v` the transition from the state of `v−1` on
/// letter `w(v)`, and the last element the final weight. Factors with weight
/// one are left out.
pub fn automaton_to_msoleval<S: Semiring>(a: &WeightedAutomaton<S>) -> EvalTerm<S> {
    let r = a.size();
    let names: Vec<String> = (1..=r).map(|i| format!("U{i}")).collect();
    let sets: Vec<&str> = names.iter().map(String::as_str).collect();
    let v = "v";
    let mut factors = Vec::new();
    let mut push = |weight: &S, guard: MsoFormula| {
        if !weight.is_one() {
            factors.push(EvalTerm::monomial(weight.clone(), v, guard));
        }
    };
    for (i, set) in sets.iter().enumerate() {
        push(&a.alpha[i], MsoFormula::member(v, set).and(stock::is_zero(v)));
    }
    for (c, m) in &a.mu {
        for (i, from) in sets.iter().enumerate() {
            for (j, to) in sets.iter().enumerate() {
                let guard = MsoFormula::all([
                    MsoFormula::member(v, to),
                    MsoFormula::letter(*c, v),
                    stock::pos(v),
                    stock::pred_in(v, from),
                ]);
                push(m.get(i, j), guard);
            }
        }
    }
    for (i, set) in sets.iter().enumerate() {
        push(&a.gamma[i], MsoFormula::member(v, set).and(stock::is_last(v)));
    }
    EvalTerm::set_sum(&sets, stock::partition(&sets), EvalTerm::Product(factors))
}

/// A finite block `H[u, v] = f(u∘v)` of the Hankel matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelBlock<S> {
    pub prefixes: Vec<Word>,
    pub suffixes: Vec<Word>,
    pub entries: Vec<Vec<S>>,
}

impl<S: Field> HankelBlock<S> {
    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }
}

pub fn hankel_block<S: Field>(
    f: &impl WordFunction<S>,
    prefixes: &[Word],
    suffixes: &[Word],
) -> Result<HankelBlock<S>> {
    let mut entries = Vec::with_capacity(prefixes.len());
    for u in prefixes {
        let row = suffixes.iter().map(|v| f.value(&u.concat(v))).collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    Ok(HankelBlock { prefixes: prefixes.to_vec(), suffixes: suffixes.to_vec(), entries })
}

pub fn hankel_rank<S: Field>(h: &HankelBlock<S>) -> usize {
    h.rank()
}

/// Ranks of the blocks indexed by all words of length at most `L`, for
/// `L = 0..=max_len`.
pub fn hankel_ranks<S: Field>(f: &impl WordFunction<S>, alphabet: &Alphabet, max_len: usize) -> Result<Vec<usize>> {
    let mut cache = Cached::new(f);
    (0..=max_len)
        .map(|len| {
            let words = enumerate_words(alphabet, len);
            Ok(rank(&cache.block(&words, &words)?))
        })
        .collect()
}

struct Cached<'f, S, F> {
    f: &'f F,
    values: BTreeMap<Vec<char>, S>,
}

impl<'f, S: Semiring, F: WordFunction<S>> Cached<'f, S, F> {
    fn new(f: &'f F) -> Self {
        Cached { f, values: BTreeMap::new() }
    }

    fn value(&mut self, w: &Word) -> Result<S> {
        if let Some(v) = self.values.get(w.letters()) {
            return Ok(v.clone());
        }
        let v = self.f.value(w)?;
        self.values.insert(w.letters().to_vec(), v.clone());
        Ok(v)
    }

    fn row(&mut self, u: &Word, suffixes: &[Word]) -> Result<Vec<S>> {
        suffixes.iter().map(|v| self.value(&u.concat(v))).collect()
    }

    fn block(&mut self, prefixes: &[Word], suffixes: &[Word]) -> Result<Vec<Vec<S>>> {
        prefixes.iter().map(|u| self.row(u, suffixes)).collect()
    }
}

/// Synthesizes an automaton from values of `f`.
///
/// Requires the block over words of length at most `basis_len` to have the
/// same rank as the block one length further. Basis rows are chosen
/// breadth-first among extensions of earlier basis words, so the basis is
/// prefix-closed; columns range over words of length at most
/// `basis_len + 1`.
pub fn learn_automaton<S: Field>(
    f: &impl WordFunction<S>,
    alphabet: &Alphabet,
    basis_len: usize,
) -> Result<WeightedAutomaton<S>> {
    let mut cache = Cached::new(f);
    let short = enumerate_words(alphabet, basis_len);
    let long = enumerate_words(alphabet, basis_len + 1);
    let rank_here = rank(&cache.block(&short, &short)?);
    let rank_next = rank(&cache.block(&long, &long)?);
    if rank_here != rank_next {
        return Err(Error::RankNotSaturated { basis_len, rank: rank_here, next_rank: rank_next });
    }

    let mut space = RowSpace::new();
    let mut basis: Vec<Word> = Vec::new();
    let mut frontier = vec![Word::empty(alphabet)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in frontier {
            if space.insert(&cache.row(&u, &long)?) {
                if u.len() < basis_len {
                    next.extend(alphabet.letters().iter().map(|&c| u.push(c)));
                }
                basis.push(u);
            }
        }
        frontier = next;
    }

    if basis.is_empty() {
        let zero = vec![S::zero()];
        let mu = alphabet.letters().iter().map(|&c| (c, Matrix::zeros(1, 1))).collect();
        return WeightedAutomaton::new(alphabet.clone(), zero.clone(), mu, zero);
    }

    let express = |cache: &mut Cached<'_, S, _>, u: &Word| -> Result<Vec<S>> {
        space
            .coordinates(&cache.row(u, &long)?)
            .ok_or_else(|| Error::Inexpressible(format!("row of {u:?} is outside the basis span")))
    };
    let alpha = express(&mut cache, &Word::empty(alphabet))?;
    let mut mu = BTreeMap::new();
    for &c in alphabet.letters() {
        let rows = basis.iter().map(|b| express(&mut cache, &b.push(c))).collect::<Result<Vec<_>>>()?;
        mu.insert(c, Matrix::from_rows(rows)?);
    }
    let gamma = basis.iter().map(|b| cache.value(b)).collect::<Result<Vec<_>>>()?;
    WeightedAutomaton::new(alphabet.clone(), alpha, mu, gamma)
}

/// Outcome of [`quotient_closure_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// Some level of the breadth-first closure added no new direction.
    pub stable: bool,
    pub dimension: usize,
    /// Words whose quotient vectors span the closure, in discovery order.
    pub basis_words: Vec<Word>,
    /// Words up to the depth whose quotient vectors were tested for
    /// membership in the span.
    pub words_checked: usize,
    /// A word whose quotient vector escaped the final span.
    pub escape: Option<Word>,
}

/// Computes the span of the quotient vectors `α · μ_w` breadth-first and
/// checks that every quotient with `|w| ≤ depth` lies in it.
pub fn quotient_closure_check<S: Field>(a: &WeightedAutomaton<S>, depth: usize) -> Result<ClosureReport> {
    let alphabet = a.alphabet();
    let mut space = RowSpace::new();
    let mut basis_words = Vec::new();
    let mut frontier = vec![(Word::empty(alphabet), a.alpha.clone())];
    let mut stable = false;
    for level in 0..=depth {
        let mut next = Vec::new();
        for (w, v) in frontier {
            if space.insert(&v) {
                if level < depth {
                    for (&c, m) in &a.mu {
                        next.push((w.push(c), m.left_mul(&v)));
                    }
                }
                basis_words.push(w);
            }
        }
        if next.is_empty() {
            // nothing new at this level, or the depth is exhausted
            stable = level < depth || space.dimension() == 0 || {
                let extended = basis_words
                    .iter()
                    .filter(|w| w.len() == level)
                    .flat_map(|w| a.mu.keys().map(move |&c| w.push(c)))
                    .collect::<Vec<_>>();
                let mut ok = true;
                for w in extended {
                    ok &= space.contains(&a.forward(&w)?);
                }
                ok
            };
            break;
        }
        frontier = next;
    }
    let mut words_checked = 0;
    let mut escape = None;
    for w in enumerate_words(alphabet, depth) {
        words_checked += 1;
        if !space.contains(&a.forward(&w)?) {
            escape = Some(w);
            break;
        }
    }
    Ok(ClosureReport { stable: stable && escape.is_none(), dimension: space.dimension(), basis_words, words_checked, escape })
}
