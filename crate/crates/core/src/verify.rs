//! Verification suites: exhaustive and sampled checks of the group
//! identities, the decision procedures and the counting formulas. Each
//! suite returns one row per check.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{
    chapuy_stump_bn, count_odd_full_cycles, enumerate_signed_trees_one_loop, even_cycle_check_with,
    labeled_trees, odd_cycle_check, signed_trees_one_loop_formula, z_count, CountMode,
};
use crate::decide::{
    brute_force_signed_fcpo, has_signed_fcpo, non_full_ordering, universal_full_cyclic,
    Universality,
};
use crate::error::{Error, Result};
use crate::halgebra::{
    classify_full_cycle, phi_project, product, psi_sign, FullCycleClass, GeneratorSet, Sign,
    SignedCycle, SignedPermutation, SignedTransposition,
};
use crate::ordering::visit_orderings;
use crate::sgraph::{enumerate_signed_graphs, Multigraph, SignedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Reflection identities, signed cycle identities, homomorphisms.
    Lemmas,
    /// Existence of even/odd orderings: direct search vs. loop-parity
    /// reduction; one-loop characterization of `n`-edge graphs.
    SignedExistence,
    /// Every ordering of a tree with loops is full; a non-tree has a
    /// non-full ordering.
    Universality,
    /// Factorization counts of full cycles and the B_n reflection count.
    Factorizations,
    /// Odd full cycles, one-loop signed trees and the graph/ordering
    /// bijection.
    Census,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Lemmas,
        Suite::SignedExistence,
        Suite::Universality,
        Suite::Factorizations,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::SignedExistence => "signed-existence",
            Suite::Universality => "universality",
            Suite::Factorizations => "factorizations",
            Suite::Census => "census",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse("suite", format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub suite: Suite,
    pub case: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

impl Row {
    fn new(
        suite: Suite,
        case: impl Into<String>,
        expected: impl ToString,
        measured: impl ToString,
    ) -> Row {
        let (expected, measured) = (expected.to_string(), measured.to_string());
        Row {
            suite,
            case: case.into(),
            pass: expected == measured,
            expected,
            measured,
        }
    }

    /// A row counting failures among `checked` cases.
    fn failures(suite: Suite, case: impl Into<String>, checked: usize, failures: usize) -> Row {
        Row {
            suite,
            case: format!("{} ({checked} cases)", case.into()),
            expected: "0 failures".into(),
            measured: format!("{failures} failures"),
            pass: failures == 0,
        }
    }
}

pub fn run(suite: Suite, max_n: usize) -> Result<Vec<Row>> {
    if max_n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    match suite {
        Suite::Lemmas => lemmas(max_n),
        Suite::SignedExistence => signed_existence(max_n),
        Suite::Universality => universality(max_n),
        Suite::Factorizations => factorizations(max_n),
        Suite::Census => census(max_n),
    }
}

fn t(n: usize, t: SignedTransposition) -> SignedPermutation {
    t.to_permutation(n).expect("index within degree")
}

fn random_element(rng: &mut impl Rng, n: usize) -> SignedPermutation {
    let mut images: Vec<i64> = (1..=n as i64).collect();
    images.shuffle(rng);
    for v in &mut images {
        if rng.gen_bool(0.5) {
            *v = -*v;
        }
    }
    SignedPermutation::from_images(&images).expect("shuffled images")
}

/// Every signed cycle of length `l` on `[n]` whose first entry is positive.
fn cycles_of_length(n: usize, l: usize) -> impl Iterator<Item = SignedCycle> {
    (1..=n as i64).permutations(l).flat_map(move |support| {
        let support = support.clone();
        (0u32..1 << (l - 1)).flat_map(move |signs| {
            let trajectory: Vec<i64> = support
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    if k > 0 && signs >> (k - 1) & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            [Sign::Plus, Sign::Minus]
                .into_iter()
                .map(move |parity| SignedCycle::new(&trajectory, parity).expect("distinct support"))
        })
    })
}

fn lemmas(max_n: usize) -> Result<Vec<Row>> {
    let suite = Suite::Lemmas;
    let top = max_n.min(6);
    let mut rows = Vec::new();
    let (mut t1, mut t2, mut t3) = ((0, 0), (0, 0), (0, 0));
    for n in 2..=top {
        for i in 1..=n {
            let inv_i = t(n, SignedTransposition::Inversion(i as u8));
            for j in (1..=n).filter(|&j| j != i) {
                let inv_j = t(n, SignedTransposition::Inversion(j as u8));
                // (i -j) = (i -i)(j -j)(i j)
                let lhs = t(n, SignedTransposition::negative(i, j)?);
                let rhs = inv_i
                    .compose(&inv_j)?
                    .compose(&t(n, SignedTransposition::positive(i, j)?))?;
                t1 = (t1.0 + 1, t1.1 + (lhs != rhs) as usize);
                for sign in [Sign::Plus, Sign::Minus] {
                    let tij = t(n, SignedTransposition::with_sign(i, j, sign)?);
                    // (i εj)(j -j) = (i -i)(i εj)
                    let ok = tij.compose(&inv_j)? == inv_i.compose(&tij)?;
                    t2 = (t2.0 + 1, t2.1 + !ok as usize);
                    for k in (1..=n).filter(|&k| k != i && k != j) {
                        let inv_k = t(n, SignedTransposition::Inversion(k as u8));
                        // (i εj)(k -k) = (k -k)(i εj)
                        let ok = tij.compose(&inv_k)? == inv_k.compose(&tij)?;
                        t3 = (t3.0 + 1, t3.1 + !ok as usize);
                    }
                }
            }
        }
    }
    rows.push(Row::failures(
        suite,
        format!("(i -j) = (i -i)(j -j)(i j), n <= {top}"),
        t1.0,
        t1.1,
    ));
    rows.push(Row::failures(
        suite,
        format!("(i ±j)(j -j) = (i -i)(i ±j), n <= {top}"),
        t2.0,
        t2.1,
    ));
    rows.push(Row::failures(
        suite,
        format!("(i ±j)(k -k) = (k -k)(i ±j), n <= {top}"),
        t3.0,
        t3.1,
    ));

    let (mut c1, mut c2, mut word) = ((0, 0), (0, 0), (0, 0));
    for n in 1..=top {
        for l in 1..=n {
            for c in cycles_of_length(n, l) {
                let p = c.to_permutation(n)?;
                // every rotation describes the same element
                let mut r = c.clone();
                let mut bad = false;
                for _ in 0..l {
                    r = r.rotate();
                    bad |= r.to_permutation(n)? != p;
                }
                c1 = (c1.0 + 1, c1.1 + bad as usize);

                let support = c.support();
                let (first, last) = (support[0], support[l - 1]);
                let flipped = c.flipped().to_permutation(n)?;
                let left = t(n, SignedTransposition::Inversion(first as u8)).compose(&p)?;
                let right = p.compose(&t(n, SignedTransposition::Inversion(last as u8)))?;
                let ok = left == flipped && right == flipped;
                c2 = (c2.0 + 1, c2.1 + !ok as usize);

                let ok = product(&c.transposition_word(), n)? == p;
                word = (word.0 + 1, word.1 + !ok as usize);
            }
        }
    }
    rows.push(Row::failures(
        suite,
        format!("cycle rotation, n <= {top}"),
        c1.0,
        c1.1,
    ));
    rows.push(Row::failures(
        suite,
        format!("inversion flips cycle parity, n <= {top}"),
        c2.0,
        c2.1,
    ));
    rows.push(Row::failures(
        suite,
        format!("cycle as reflection word, n <= {top}"),
        word.0,
        word.1,
    ));

    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = (0, 0);
    let samples = 10_000;
    for _ in 0..samples {
        let (a, b) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let ab = a.compose(&b)?;
        bad.0 += (phi_project(&ab) != phi_project(&a).compose(&phi_project(&b))?) as usize;
        bad.1 += (psi_sign(&ab) != psi_sign(&a) * psi_sign(&b)) as usize;
    }
    rows.push(Row::failures(
        suite,
        format!("unsigned projection is a homomorphism, n = {n}"),
        samples,
        bad.0,
    ));
    rows.push(Row::failures(
        suite,
        format!("sign character is a homomorphism, n = {n}"),
        samples,
        bad.1,
    ));
    Ok(rows)
}

fn signed_existence(max_n: usize) -> Result<Vec<Row>> {
    let suite = Suite::SignedExistence;
    let mut rows = Vec::new();
    for n in 1..=max_n.min(4) {
        let graphs = enumerate_signed_graphs(n, 5, 2)?;
        let disagreements = graphs
            .par_iter()
            .map(|g| -> Result<usize> {
                let direct = brute_force_signed_fcpo(g, 7)?;
                let reduced = has_signed_fcpo(g, 7)?;
                let mut bad = (direct.even_exists, direct.odd_exists)
                    != (reduced.even_exists, reduced.odd_exists);
                for (w, class) in [
                    (&reduced.witness_even, FullCycleClass::EvenFull),
                    (&reduced.witness_odd, FullCycleClass::OddFull),
                ] {
                    if let Some(w) = w {
                        bad |= classify_full_cycle(&w.pi()) != class;
                    }
                }
                Ok(bad as usize)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        rows.push(Row::failures(
            suite,
            format!("search vs reduction, n = {n}, |E±| <= 5, |L| <= 2"),
            graphs.len(),
            disagreements,
        ));
    }
    for n in 1..=max_n.min(5) {
        let graphs = crate::census::graphs_with_edge_count(n, n)?;
        let bad: usize = graphs
            .par_iter()
            .map(|g| {
                let mut odd = false;
                visit_orderings(g, |_, p| {
                    odd = classify_full_cycle(p) == FullCycleClass::OddFull;
                    !odd
                });
                (odd && !(g.is_signed_tree_with_loops() && g.loop_count() == 1)) as usize
            })
            .sum();
        rows.push(Row::failures(
            suite,
            format!("odd ordering with n edges implies tree + one loop, n = {n}"),
            graphs.len(),
            bad,
        ));
    }
    Ok(rows)
}

/// Signed graphs whose underlying multigraph is connected but not a tree,
/// with `n` vertices and at most `max_edges` non-loop edges; every loop set.
fn connected_non_trees(n: usize, max_edges: usize) -> Result<Vec<SignedGraph>> {
    let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
    let mut out = Vec::new();
    for mult in std::iter::repeat_n(0..3usize, pairs.len()).multi_cartesian_product() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&mult)
            .flat_map(|(&p, &m)| std::iter::repeat_n(p, m))
            .collect();
        if edges.len() > max_edges {
            continue;
        }
        let m = Multigraph::new(n, &edges)?;
        if !m.is_connected() || m.is_tree() {
            continue;
        }
        let singles: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&mult)
            .filter(|(_, &m)| m == 1)
            .map(|(&p, _)| p)
            .collect();
        let doubles: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&mult)
            .filter(|(_, &m)| m == 2)
            .map(|(&p, _)| p)
            .collect();
        for signs in 0u32..1 << singles.len() {
            let mut pos = doubles.clone();
            let mut neg = doubles.clone();
            for (k, &p) in singles.iter().enumerate() {
                if signs >> k & 1 == 0 {
                    pos.push(p);
                } else {
                    neg.push(p);
                }
            }
            for loops in (1..=n).powerset() {
                out.push(SignedGraph::new(n, &pos, &neg, &loops)?);
            }
        }
    }
    Ok(out)
}

fn universality(max_n: usize) -> Result<Vec<Row>> {
    let suite = Suite::Universality;
    let mut rows = Vec::new();
    for n in 1..=max_n.min(5) {
        let mut graphs = Vec::new();
        for tree in labeled_trees(n) {
            for signs in 0u32..1 << (n - 1) {
                let (pos, neg): (Vec<_>, Vec<_>) = tree
                    .iter()
                    .enumerate()
                    .partition(|(k, _)| signs >> k & 1 == 0);
                let pos: Vec<_> = pos.into_iter().map(|(_, &e)| e).collect();
                let neg: Vec<_> = neg.into_iter().map(|(_, &e)| e).collect();
                for loops in (1..=n)
                    .powerset()
                    .filter(|l| l.len() <= 3 && n - 1 + l.len() <= 7)
                {
                    graphs.push(SignedGraph::new(n, &pos, &neg, &loops)?);
                }
            }
        }
        let (orderings, bad) = graphs
            .par_iter()
            .map(|g| {
                let expected = if g.loop_count() % 2 == 0 {
                    FullCycleClass::EvenFull
                } else {
                    FullCycleClass::OddFull
                };
                let universal = match universal_full_cyclic(g) {
                    Universality::AllEven => FullCycleClass::EvenFull,
                    Universality::AllOdd => FullCycleClass::OddFull,
                    Universality::NotUniversal => FullCycleClass::NotFull,
                };
                let (mut seen, mut bad) = (0usize, (universal != expected) as usize);
                visit_orderings(g, |_, p| {
                    seen += 1;
                    bad += (classify_full_cycle(p) != expected) as usize;
                    true
                });
                (seen, bad)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        rows.push(Row::failures(
            suite,
            format!(
                "trees with loops, n = {n}: all orderings full ({} graphs)",
                graphs.len()
            ),
            orderings,
            bad,
        ));
    }
    for n in 2..=max_n.min(4) {
        let graphs = connected_non_trees(n, 6)?;
        let bad = graphs
            .par_iter()
            .map(|g| -> Result<usize> {
                let w = non_full_ordering(g)?;
                let not_universal = universal_full_cyclic(g) == Universality::NotUniversal;
                Ok(
                    (classify_full_cycle(&w.pi()) != FullCycleClass::NotFull || !not_universal)
                        as usize,
                )
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        rows.push(Row::failures(
            suite,
            format!("connected non-trees, n = {n}: constructed ordering not full"),
            graphs.len(),
            bad,
        ));
    }
    Ok(rows)
}

fn factorizations(max_n: usize) -> Result<Vec<Row>> {
    let suite = Suite::Factorizations;
    let mut rows = Vec::new();
    for n in 2..=max_n.min(5) {
        let (measured, formula) = even_cycle_check_with(n, GeneratorSet::AllSigned)?;
        rows.push(Row::new(
            suite,
            format!("(A) even {n}-cycle, n-1 signed reflections"),
            formula,
            measured,
        ));
        let (measured, formula) = even_cycle_check_with(n, GeneratorSet::PositiveOnly)?;
        rows.push(Row::new(
            suite,
            format!("(A) even {n}-cycle, n-1 positive transpositions"),
            formula,
            measured,
        ));
    }
    for n in 1..=max_n.min(5) {
        let (measured, formula) = odd_cycle_check(n)?;
        rows.push(Row::new(
            suite,
            format!("(B) odd {n}-cycle, n signed reflections"),
            formula,
            measured,
        ));
    }
    for n in 1..=max_n.min(15) {
        rows.push(Row::new(
            suite,
            format!("n! h^n / |B_{n}| = n^n"),
            (n as u128).pow(n as u32),
            chapuy_stump_bn(n)?,
        ));
    }
    Ok(rows)
}

fn census(max_n: usize) -> Result<Vec<Row>> {
    let suite = Suite::Census;
    let mut rows = Vec::new();
    for n in 1..=max_n.min(6) {
        rows.push(Row::new(
            suite,
            format!("odd full cycles in B_{n}"),
            count_odd_full_cycles(n, CountMode::Formula)?,
            count_odd_full_cycles(n, CountMode::Enumerate)?,
        ));
    }
    for n in 2..=max_n.min(6) {
        rows.push(Row::new(
            suite,
            format!("signed trees with one loop on [{n}]"),
            signed_trees_one_loop_formula(n)?,
            enumerate_signed_trees_one_loop(n)?,
        ));
    }
    for n in 1..=max_n.min(3) {
        let z = z_count(n)?;
        let x = z.enumerated_x.expect("enumerated for n <= 3");
        rows.push(Row::new(
            suite,
            format!("|Z| formula vs pairs, n = {n}"),
            z.formula,
            z.enumerated_z.expect("n <= 3"),
        ));
        rows.push(Row::new(suite, format!("|X| = |Z|, n = {n}"), z.formula, x));
        rows.push(Row::new(
            suite,
            format!("|Y| search vs formula, n = {n}"),
            signed_trees_one_loop_formula(n)?,
            z.enumerated_y.expect("n <= 3"),
        ));
        let per_cycle = odd_cycle_check(n)?.0;
        rows.push(Row::new(
            suite,
            format!("|X| = x · #odd full cycles, n = {n}"),
            per_cycle * count_odd_full_cycles(n, CountMode::Formula)?,
            x,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let rows = run(s, 3).unwrap();
            assert!(!rows.is_empty());
            for r in rows {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn cycle_enumeration_size() {
        // P(3, l) orderings of support × 2^(l-1) signs × 2 parities
        assert_eq!(cycles_of_length(3, 3).count(), 6 * 4 * 2);
        assert_eq!(cycles_of_length(3, 1).count(), 3 * 2);
    }
}
