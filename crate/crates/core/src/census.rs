//! Exhaustive counts and closed formulas: reflection factorizations of full
//! cycles, odd full cycles, signed trees with one loop, and the
//! graph/ordering pairs they biject with.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result, MAX_DEGREE};
use crate::halgebra::{
    classify_full_cycle, FullCycleClass, GeneratorSet, SignedPermutation, SignedTransposition,
};
use crate::sgraph::{Edge, SignedGraph};

/// Largest degree accepted by [`count_factorizations`].
pub const MAX_FACTORIZATION_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationQuery {
    pub target: SignedPermutation,
    /// Number of reflections `k`.
    pub length: usize,
    pub generators: GeneratorSet,
}

impl FactorizationQuery {
    pub fn new(target: SignedPermutation, length: usize, generators: GeneratorSet) -> Self {
        FactorizationQuery {
            target,
            length,
            generators,
        }
    }

    /// Checks the query against an ambient degree.
    pub fn in_degree(self, n: usize) -> Result<Self> {
        if self.target.degree() != n {
            return Err(Error::DegreeMismatch {
                left: self.target.degree(),
                right: n,
            });
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "as_string_if_large")]
    pub count: u128,
    pub nodes_explored: u64,
    #[serde(rename = "ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// JSON numbers above 2^53 lose precision in most readers.
pub(crate) fn as_string_if_large<S: Serializer>(
    v: &u128,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    if *v <= (1u128 << 53) {
        s.serialize_u64(*v as u64)
    } else {
        s.collect_str(v)
    }
}

/// Which pruning rules the factorization search applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prune {
    None,
    /// Sign-count parity and unsigned-sign parity of the remainder.
    Parity,
    /// Parity plus the reflection-length lower bound.
    Full,
}

#[inline]
fn even_cycle_count(p: &SignedPermutation) -> usize {
    let n = p.degree();
    let mut seen = [false; MAX_DEGREE + 1];
    let mut even = 0;
    for start in 1..=n as i32 {
        if seen[start as usize] {
            continue;
        }
        let mut x = start;
        loop {
            seen[x.unsigned_abs() as usize] = true;
            x = p.apply(x);
            if x == start {
                even += 1;
                break;
            }
            if x == -start {
                break;
            }
        }
    }
    even
}

#[inline]
fn unsigned_cycle_count(p: &SignedPermutation) -> usize {
    let n = p.degree();
    let mut seen = [false; MAX_DEGREE + 1];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x as i32).unsigned_abs() as usize;
        }
    }
    cycles
}

/// Whether `rem` could be a product of exactly `steps` generators.
#[inline]
fn reachable(rem: &SignedPermutation, steps: usize, set: GeneratorSet, prune: Prune) -> bool {
    if prune == Prune::None {
        return true;
    }
    let n = rem.degree();
    let negatives = rem.negative_count();
    let unsigned_odd = (n - unsigned_cycle_count(rem)) % 2 == 1;
    match set {
        GeneratorSet::AllSigned => {
            // inversions flip the sign count, the rest flip the unsigned sign
            if (negatives % 2 == 1) ^ unsigned_odd ^ (steps % 2 == 1) {
                return false;
            }
            prune == Prune::Parity || n - even_cycle_count(rem) <= steps
        }
        GeneratorSet::PositiveOnly => {
            if negatives > 0 || unsigned_odd != (steps % 2 == 1) {
                return false;
            }
            prune == Prune::Parity || n - unsigned_cycle_count(rem) <= steps
        }
    }
}

struct Search<'a> {
    gens: &'a [SignedPermutation],
    set: GeneratorSet,
    prune: Prune,
}

impl Search<'_> {
    /// Sequences `g_1, ..., g_steps` with `rem ∘ g_1 ∘ ⋯ ∘ g_steps = id`.
    fn count(&self, rem: &SignedPermutation, steps: usize, nodes: &mut u64) -> u128 {
        *nodes += 1;
        if steps == 0 {
            return rem.is_identity() as u128;
        }
        if !reachable(rem, steps, self.set, self.prune) {
            return 0;
        }
        self.gens
            .iter()
            .map(|g| self.count(&rem.compose_unchecked(g), steps - 1, nodes))
            .sum()
    }
}

/// Counts ordered sequences `(τ_k, ..., τ_1)` of generators with
/// `τ_k ⋯ τ_1 = target`, `τ_1` applied first.
pub fn count_factorizations(q: &FactorizationQuery) -> Result<CountResult> {
    count_factorizations_with(q, Prune::Full)
}

pub fn count_factorizations_with(q: &FactorizationQuery, prune: Prune) -> Result<CountResult> {
    let n = q.target.degree();
    if n > MAX_FACTORIZATION_DEGREE || q.length > n + 1 {
        return Err(Error::BudgetExceeded(format!(
            "factorization search needs n <= {MAX_FACTORIZATION_DEGREE} and k <= n + 1 \
             (got n = {n}, k = {})",
            q.length
        )));
    }
    let start = Instant::now();
    let gens: Vec<SignedPermutation> = SignedTransposition::all(n, q.generators)
        .iter()
        .map(|t| t.to_permutation(n).expect("generator fits degree"))
        .collect();
    let search = Search {
        gens: &gens,
        set: q.generators,
        prune,
    };
    // τ_k ⋯ τ_1 = target  ⟺  target ∘ τ_1 ∘ ⋯ ∘ τ_k = id
    let (count, nodes) = if q.length == 0 {
        (q.target.is_identity() as u128, 1)
    } else if !reachable(&q.target, q.length, q.generators, prune) {
        (0, 1)
    } else {
        gens.par_iter()
            .map(|g| {
                let mut nodes = 0u64;
                let c = search.count(&q.target.compose_unchecked(g), q.length - 1, &mut nodes);
                (c, nodes)
            })
            .reduce(|| (0, 1), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    Ok(CountResult {
        count,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// `(1 2 ⋯ n)` with parity `+` or `-`.
pub fn standard_full_cycle(n: usize, odd: bool) -> Result<SignedPermutation> {
    let mut images: Vec<i64> = (2..=n as i64).collect();
    images.push(if odd { -1 } else { 1 });
    SignedPermutation::from_images(&images)
}

fn checked_pow(base: u128, exp: usize, what: &'static str) -> Result<u128> {
    (0..exp).try_fold(1u128, |acc, _| {
        acc.checked_mul(base).ok_or(Error::Overflow(what))
    })
}

fn checked_factorial(n: usize, what: &'static str) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| {
        acc.checked_mul(k).ok_or(Error::Overflow(what))
    })
}

/// Measured count of factorizations of `(1 2 ⋯ n)₊` into `n - 1` signed
/// transpositions, paired with `n^(n-2)`.
pub fn even_cycle_check(n: usize) -> Result<(u128, u128)> {
    even_cycle_check_with(n, GeneratorSet::AllSigned)
}

pub fn even_cycle_check_with(n: usize, set: GeneratorSet) -> Result<(u128, u128)> {
    if !(2..=5).contains(&n) {
        return Err(Error::BudgetExceeded(format!("n = {n} outside 2..=5")));
    }
    let q = FactorizationQuery::new(standard_full_cycle(n, false)?, n - 1, set);
    let measured = count_factorizations(&q)?.count;
    Ok((measured, checked_pow(n as u128, n - 2, "n^(n-2)")?))
}

/// Measured count of factorizations of `(1 2 ⋯ n)₋` into `n` signed
/// transpositions, paired with `n^n`.
pub fn odd_cycle_check(n: usize) -> Result<(u128, u128)> {
    if !(1..=5).contains(&n) {
        return Err(Error::BudgetExceeded(format!("n = {n} outside 1..=5")));
    }
    let q = FactorizationQuery::new(standard_full_cycle(n, true)?, n, GeneratorSet::AllSigned);
    let measured = count_factorizations(&q)?.count;
    Ok((measured, checked_pow(n as u128, n, "n^n")?))
}

/// `n! · h^n / |W|` for `W = B_n`, with `|W| = 2^n · n!` and `h = 2n`.
pub fn chapuy_stump_bn(n: usize) -> Result<u128> {
    if !(1..=15).contains(&n) {
        return Err(Error::InvalidDegree(n));
    }
    let numerator = checked_factorial(n, "n!")?
        .checked_mul(checked_pow(2 * n as u128, n, "(2n)^n")?)
        .ok_or(Error::Overflow("n! (2n)^n"))?;
    let order = checked_pow(2, n, "2^n")?
        .checked_mul(checked_factorial(n, "n!")?)
        .ok_or(Error::Overflow("2^n n!"))?;
    debug_assert_eq!(numerator % order, 0);
    Ok(numerator / order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Iterate over every element of B_n (`n <= 6`).
    Enumerate,
    /// `(n-1)! · 2^(n-1)` (`n <= 15`).
    Formula,
}

/// Number of odd full cycles in B_n.
pub fn count_odd_full_cycles(n: usize, mode: CountMode) -> Result<u128> {
    match mode {
        CountMode::Enumerate => {
            if n > 6 {
                return Err(Error::BudgetExceeded(format!(
                    "enumerating B_{n} is limited to n <= 6"
                )));
            }
            Ok(SignedPermutation::all(n)?
                .filter(|p| classify_full_cycle(p) == FullCycleClass::OddFull)
                .count() as u128)
        }
        CountMode::Formula => {
            if n == 0 || n > 15 {
                return Err(Error::InvalidDegree(n));
            }
            checked_factorial(n - 1, "(n-1)!")?
                .checked_mul(checked_pow(2, n - 1, "2^(n-1)")?)
                .ok_or(Error::Overflow("(n-1)! 2^(n-1)"))
        }
    }
}

/// Edges of the labeled tree on `[n]` encoded by a Prüfer sequence of
/// length `n - 2` over `[n]`.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return if seq.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::parse("prufer", "sequence must be empty for n < 2"))
        };
    }
    if seq.len() != n - 2 {
        return Err(Error::parse(
            "prufer",
            format!("expected length {}, got {}", n - 2, seq.len()),
        ));
    }
    if let Some(&v) = seq.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::IndexOutOfRange {
            index: v as i64,
            degree: n,
        });
    }
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf remains");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Ok(edges)
}

/// All `n^(n-2)` labeled trees on `[n]`, each as a sorted edge list.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let len = n.saturating_sub(2);
    std::iter::repeat_n(1..=n, len)
        .multi_cartesian_product()
        .chain(std::iter::once(Vec::new()).filter(move |_| len == 0))
        .map(move |seq| {
            let mut edges = prufer_decode(&seq, n).expect("valid sequence");
            edges.sort_unstable();
            edges
        })
}

/// Every signed graph on `[n]` whose underlying graph is a tree and which
/// has exactly one loop.
pub fn signed_trees_one_loop(n: usize) -> Result<Vec<SignedGraph>> {
    if !(1..=6).contains(&n) {
        return Err(Error::BudgetExceeded(format!("n = {n} outside 1..=6")));
    }
    let mut out = Vec::new();
    for tree in labeled_trees(n) {
        for signs in 0u32..1 << (n - 1) {
            let (pos, neg): (Vec<_>, Vec<_>) = tree.iter().enumerate().partition_map(|(k, &e)| {
                if signs >> k & 1 == 0 {
                    itertools::Either::Left(e)
                } else {
                    itertools::Either::Right(e)
                }
            });
            for l in 1..=n {
                out.push(SignedGraph::new(n, &pos, &neg, &[l])?);
            }
        }
    }
    Ok(out)
}

/// Number of signed trees on `[n]` with one loop, by generation
/// (`2 <= n <= 6`).
pub fn enumerate_signed_trees_one_loop(n: usize) -> Result<u128> {
    if !(2..=6).contains(&n) {
        return Err(Error::BudgetExceeded(format!("n = {n} outside 2..=6")));
    }
    Ok(signed_trees_one_loop(n)?.len() as u128)
}

/// `n^(n-2) · n · 2^(n-1)`.
pub fn signed_trees_one_loop_formula(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    if n == 1 {
        return Ok(1);
    }
    checked_pow(n as u128, n - 2, "n^(n-2)")?
        .checked_mul(n as u128)
        .and_then(|v| v.checked_mul(1u128 << (n - 1)))
        .ok_or(Error::Overflow("|Y|"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZCount {
    pub n: usize,
    /// `n^(n-1) · 2^(n-1) · n!`.
    #[serde(serialize_with = "as_string_if_large")]
    pub formula: u128,
    /// Graphs with `n` edges admitting an odd full cycle ordering, found by
    /// search (`n <= 3`).
    pub enumerated_y: Option<u128>,
    /// Pairs of such a graph and one of its odd full cycle orderings.
    pub enumerated_z: Option<u128>,
    /// Sequences of `n` signed transpositions whose product is an odd full
    /// cycle.
    pub enumerated_x: Option<u128>,
}

/// All signed graphs on `[n]` with exactly `m` edges, loops included.
pub fn graphs_with_edge_count(n: usize, m: usize) -> Result<Vec<SignedGraph>> {
    let mut candidates = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            candidates.push(Edge::pos(i, j)?);
            candidates.push(Edge::neg(i, j)?);
        }
    }
    for i in 1..=n {
        candidates.push(Edge::loop_at(i)?);
    }
    candidates
        .into_iter()
        .combinations(m)
        .map(|edges| SignedGraph::from_edges(n, &edges))
        .collect()
}

pub fn z_count(n: usize) -> Result<ZCount> {
    if !(1..=10).contains(&n) {
        return Err(Error::InvalidDegree(n));
    }
    let formula = checked_pow(n as u128, n - 1, "n^(n-1)")?
        .checked_mul(1u128 << (n - 1))
        .and_then(|v| v.checked_mul(checked_factorial(n, "n!").ok()?))
        .ok_or(Error::Overflow("|Z|"))?;
    if n > 3 {
        return Ok(ZCount {
            n,
            formula,
            enumerated_y: None,
            enumerated_z: None,
            enumerated_x: None,
        });
    }
    let (mut y, mut z) = (0u128, 0u128);
    for g in graphs_with_edge_count(n, n)? {
        let odd = g
            .edges()
            .into_iter()
            .permutations(n)
            .filter(|seq| {
                let mut p = SignedPermutation::identity(n).expect("valid degree");
                for e in seq {
                    e.transposition().act_on(&mut p);
                }
                classify_full_cycle(&p) == FullCycleClass::OddFull
            })
            .count() as u128;
        if odd > 0 {
            y += 1;
            z += odd;
        }
    }
    let gens = SignedTransposition::all(n, GeneratorSet::AllSigned);
    let x = std::iter::repeat_n(gens.iter(), n)
        .multi_cartesian_product()
        .filter(|seq| {
            let mut p = SignedPermutation::identity(n).expect("valid degree");
            for t in seq {
                t.act_on(&mut p);
            }
            classify_full_cycle(&p) == FullCycleClass::OddFull
        })
        .count() as u128;
    Ok(ZCount {
        n,
        formula,
        enumerated_y: Some(y),
        enumerated_z: Some(z),
        enumerated_x: Some(x),
    })
}
