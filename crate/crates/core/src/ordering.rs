//! Edge orderings of signed graphs, their products, and the loop-stripping
//! projection to orderings of the underlying multigraph.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halgebra::{product, Permutation, SignedPermutation, SignedTransposition};
use crate::sgraph::{Edge, Multigraph, SignedGraph};

/// A linear order `(e_1, ..., e_m)` on every edge of a graph; `e_1` acts
/// first in the product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeOrdering {
    graph: SignedGraph,
    sequence: Vec<Edge>,
}

impl EdgeOrdering {
    pub fn new(graph: &SignedGraph, sequence: Vec<Edge>) -> Result<EdgeOrdering> {
        let mut expected = graph.edges();
        let mut got = sequence.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            if let Some(e) = sequence.iter().find(|e| !graph.contains(e)) {
                return Err(Error::InvalidOrdering(format!(
                    "{e} is not an edge of the graph"
                )));
            }
            if let Some((e, _)) = got.iter().tuple_windows().find(|(a, b)| a == b) {
                return Err(Error::InvalidOrdering(format!(
                    "{e} appears more than once"
                )));
            }
            let missing = expected.iter().filter(|e| !sequence.contains(e)).join(", ");
            return Err(Error::InvalidOrdering(format!("missing edges: {missing}")));
        }
        Ok(EdgeOrdering {
            graph: graph.clone(),
            sequence,
        })
    }

    /// The graph's edges in their canonical order.
    pub fn canonical(graph: &SignedGraph) -> EdgeOrdering {
        EdgeOrdering {
            graph: graph.clone(),
            sequence: graph.edges(),
        }
    }

    /// Parses `pos:3-5,loop:5,...` or a JSON array of the same literals.
    pub fn parse(graph: &SignedGraph, literal: &str) -> Result<EdgeOrdering> {
        let trimmed = literal.trim();
        let sequence: Vec<Edge> = if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(|e| Error::parse("ordering", e.to_string()))?
        } else if trimmed.is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<_>>>()?
        };
        EdgeOrdering::new(graph, sequence)
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn sequence(&self) -> &[Edge] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// `π_ω = τ_{e_m} ⋯ τ_{e_1}`.
    pub fn pi(&self) -> SignedPermutation {
        let mut p = SignedPermutation::identity(self.graph.n()).expect("graph degree is valid");
        for e in &self.sequence {
            e.transposition().act_on(&mut p);
        }
        p
    }

    /// The product written as a word, leftmost factor `τ_{e_m}`.
    pub fn word(&self) -> Vec<SignedTransposition> {
        self.sequence
            .iter()
            .rev()
            .map(Edge::transposition)
            .collect()
    }

    /// Drops the loops, keeping the order of the remaining edges.
    pub fn phi(&self) -> UnsignedOrdering {
        let index = self.graph.non_loop_edges();
        let sequence = self
            .sequence
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| index.iter().position(|x| x == e).expect("edge of graph"))
            .collect();
        UnsignedOrdering {
            graph: self.graph.underlying(),
            sequence,
        }
    }

    /// `(e_k, ..., e_m, e_1, ..., e_{k-1})` for `1 <= k <= m`.
    pub fn rotate(&self, k: usize) -> Result<EdgeOrdering> {
        let m = self.sequence.len();
        if k == 0 || k > m {
            return Err(Error::IndexOutOfRange {
                index: k as i64,
                degree: m,
            });
        }
        let mut sequence = self.sequence.clone();
        sequence.rotate_left(k - 1);
        Ok(EdgeOrdering {
            graph: self.graph.clone(),
            sequence,
        })
    }

    /// Rewrites `π_ω` as inversions times `π_{φ(ω)}`.
    ///
    /// The word `τ_{e_m} ⋯ τ_{e_1}` is rewritten in three passes: existing
    /// inversions are moved to the front, every `(i -j)` is replaced by
    /// `(i -i)(j -j)(i j)`, and the new inversions are moved to the front.
    /// Moving `(k -k)` left across `(i ±j)` leaves it unchanged when `k` is
    /// not an endpoint, and otherwise replaces `k` by the other endpoint.
    /// Factors are scanned left to right and each inversion is carried past
    /// all non-inversions already to its left.
    pub fn decompose(&self) -> Decomposition {
        let word = self.word();
        let (mut moved, rest) = move_inversions_left(&word);

        let expanded: Vec<SignedTransposition> = rest
            .iter()
            .flat_map(|t| match *t {
                SignedTransposition::Negative(i, j) => vec![
                    SignedTransposition::Inversion(i),
                    SignedTransposition::Inversion(j),
                    SignedTransposition::Positive(i, j),
                ],
                other => vec![other],
            })
            .collect();
        let (second, positive) = move_inversions_left(&expanded);
        moved.extend(second);

        let n = self.graph.n();
        let mut odd = vec![false; n + 1];
        for t in &moved {
            if let SignedTransposition::Inversion(i) = *t {
                odd[i as usize] ^= true;
            }
        }
        let inversions = (1..=n)
            .filter(|&i| odd[i])
            .map(|i| SignedTransposition::Inversion(i as u8))
            .collect();
        Decomposition {
            n,
            rewrite_inversions: moved,
            inversions,
            base_product: product(&positive, n).expect("edges lie in [n]"),
            base_word: positive,
        }
    }
}

fn move_inversions_left(
    word: &[SignedTransposition],
) -> (Vec<SignedTransposition>, Vec<SignedTransposition>) {
    let mut inversions = Vec::new();
    let mut rest: Vec<SignedTransposition> = Vec::new();
    for t in word {
        match *t {
            SignedTransposition::Inversion(k) => {
                let mut k = k;
                for r in rest.iter().rev() {
                    if let Some((i, j)) = r.unsigned_pair() {
                        if k as usize == i {
                            k = j as u8;
                        } else if k as usize == j {
                            k = i as u8;
                        }
                    }
                }
                inversions.push(SignedTransposition::Inversion(k));
            }
            other => rest.push(other),
        }
    }
    (inversions, rest)
}

impl fmt::Display for EdgeOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sequence.iter().join(","))
    }
}

impl Serialize for EdgeOrdering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sequence.serialize(s)
    }
}

/// Inversions-times-unsigned factorization of an ordering's product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    n: usize,
    /// Inversions in the order the rewrite produced them, before
    /// cancellation.
    pub rewrite_inversions: Vec<SignedTransposition>,
    /// Inversions after cancelling pairs, ascending by index.
    pub inversions: Vec<SignedTransposition>,
    /// Positive transpositions left after the rewrite, leftmost applied last.
    pub base_word: Vec<SignedTransposition>,
    pub base_product: SignedPermutation,
}

impl Decomposition {
    /// `ν_1 ⋯ ν_r ∘ base_product`.
    pub fn recompose(&self) -> SignedPermutation {
        let mut p = self.base_product;
        for t in self.inversions.iter().rev() {
            t.act_on(&mut p);
        }
        p
    }

    pub fn recompose_rewrite(&self) -> SignedPermutation {
        let mut p = self.base_product;
        for t in self.rewrite_inversions.iter().rev() {
            t.act_on(&mut p);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

/// An ordering of the underlying multigraph, by edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnsignedOrdering {
    graph: Multigraph,
    sequence: Vec<usize>,
}

impl UnsignedOrdering {
    pub fn new(graph: &Multigraph, sequence: Vec<usize>) -> Result<UnsignedOrdering> {
        let mut sorted = sequence.clone();
        sorted.sort_unstable();
        if sorted != (0..graph.edge_count()).collect::<Vec<_>>() {
            return Err(Error::InvalidOrdering(format!(
                "{sequence:?} is not an ordering of {} edges",
                graph.edge_count()
            )));
        }
        Ok(UnsignedOrdering {
            graph: graph.clone(),
            sequence,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// Edge indices into `graph().edges()`.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.sequence
            .iter()
            .map(|&k| self.graph.edges()[k])
            .collect()
    }

    /// Product in S_n, first edge applied first.
    pub fn pi(&self) -> Permutation {
        let mut p = Permutation::identity(self.graph.n()).expect("valid degree");
        for (i, j) in self.pairs() {
            p.swap_values(i, j);
        }
        p
    }
}

/// Number of orderings of `g` that lose their loops to the same ordering of
/// the underlying multigraph: `m! / (m - ℓ)!` for `m` edges and `ℓ` loops.
pub fn phi_fiber_count(g: &SignedGraph) -> Result<u128> {
    let (m, l) = (g.edge_count() as u128, g.loop_count() as u128);
    (m - l + 1..=m).try_fold(1u128, |acc, k| {
        acc.checked_mul(k).ok_or(Error::Overflow("phi_fiber_count"))
    })
}

/// Every ordering of `g` whose non-loop edges appear in the order given by
/// `base`, i.e. the fiber of the projection over `base`.
pub fn phi_fiber(g: &SignedGraph, base: &[Edge]) -> Result<Vec<EdgeOrdering>> {
    if base.iter().any(Edge::is_loop) {
        return Err(Error::InvalidOrdering(
            "base ordering contains a loop".into(),
        ));
    }
    let loops: Vec<Edge> = g.edges().into_iter().filter(Edge::is_loop).collect();
    let m = base.len() + loops.len();
    let mut out = Vec::new();
    for slots in (0..m).permutations(loops.len()) {
        let mut seq: Vec<Option<Edge>> = vec![None; m];
        for (&slot, &l) in slots.iter().zip(&loops) {
            seq[slot] = Some(l);
        }
        let mut rest = base.iter();
        let sequence = seq
            .into_iter()
            .map(|e| e.unwrap_or_else(|| *rest.next().expect("sizes agree")))
            .collect();
        out.push(EdgeOrdering::new(g, sequence)?);
    }
    Ok(out)
}

/// Calls `visit(sequence, product)` for every ordering of `g`, building
/// products incrementally. Stops early when `visit` returns `false`.
pub fn visit_orderings(
    g: &SignedGraph,
    mut visit: impl FnMut(&[Edge], &SignedPermutation) -> bool,
) {
    fn go(
        edges: &[Edge],
        used: &mut [bool],
        seq: &mut Vec<Edge>,
        p: SignedPermutation,
        visit: &mut dyn FnMut(&[Edge], &SignedPermutation) -> bool,
    ) -> bool {
        if seq.len() == edges.len() {
            return visit(seq, &p);
        }
        for k in 0..edges.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            seq.push(edges[k]);
            let mut q = p;
            edges[k].transposition().act_on(&mut q);
            let keep_going = go(edges, used, seq, q, visit);
            seq.pop();
            used[k] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
    let edges = g.edges();
    let start = SignedPermutation::identity(g.n()).expect("graph degree is valid");
    go(
        &edges,
        &mut vec![false; edges.len()],
        &mut Vec::with_capacity(edges.len()),
        start,
        &mut visit,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halgebra::{cycle_type, phi_project, psi_sign, CycleType, Sign};

    fn worked() -> EdgeOrdering {
        let g = SignedGraph::new(5, &[(1, 2), (3, 5)], &[(2, 3), (3, 4)], &[2, 5]).unwrap();
        EdgeOrdering::parse(&g, "pos:3-5,loop:5,neg:3-4,neg:2-3,loop:2,pos:1-2").unwrap()
    }

    #[test]
    fn worked_product() {
        let w = worked();
        assert_eq!(w.pi().images_i64(), [2, -3, -5, -1, -4]);
        assert_eq!(
            w.word().iter().join(""),
            "(1 2)(2 -2)(2 -3)(3 -4)(5 -5)(3 5)"
        );
    }

    #[test]
    fn worked_projection() {
        let w = worked();
        let bar = w.phi();
        assert_eq!(bar.pairs(), [(3, 5), (3, 4), (2, 3), (1, 2)]);
        assert_eq!(bar.pi(), phi_project(&w.pi()));
        let expected = Permutation::from_cycles(5, &[&[1, 2]])
            .unwrap()
            .compose(&Permutation::from_cycles(5, &[&[2, 3]]).unwrap())
            .unwrap()
            .compose(&Permutation::from_cycles(5, &[&[3, 4]]).unwrap())
            .unwrap()
            .compose(&Permutation::from_cycles(5, &[&[3, 5]]).unwrap())
            .unwrap();
        assert_eq!(bar.pi(), expected);
    }

    #[test]
    fn worked_rewrite_matches_hand_steps() {
        let d = worked().decompose();
        assert_eq!(
            d.rewrite_inversions.iter().join(""),
            "(1 -1)(5 -5)(1 -1)(3 -3)(1 -1)(4 -4)"
        );
        assert_eq!(d.inversions.iter().join(""), "(1 -1)(3 -3)(4 -4)(5 -5)");
        assert_eq!(d.base_word.iter().join(""), "(1 2)(2 3)(3 4)(3 5)");
        assert_eq!(d.base_product, worked().phi().pi().to_signed());
        assert_eq!(d.recompose(), worked().pi());
        assert_eq!(d.recompose_rewrite(), worked().pi());
    }

    #[test]
    fn loopless_positive_ordering_has_no_inversions() {
        let g = SignedGraph::new(3, &[(1, 2), (2, 3)], &[], &[]).unwrap();
        let w = EdgeOrdering::canonical(&g);
        let d = w.decompose();
        assert!(d.inversions.is_empty());
        assert_eq!(d.base_product, w.pi());
    }

    #[test]
    fn single_loop() {
        let g = SignedGraph::new(1, &[], &[], &[1]).unwrap();
        let d = EdgeOrdering::canonical(&g).decompose();
        assert_eq!(d.inversions, [SignedTransposition::Inversion(1)]);
        assert!(d.base_product.is_identity());
    }

    #[test]
    fn trivial_products() {
        let g = SignedGraph::new(2, &[(1, 2)], &[], &[]).unwrap();
        assert_eq!(EdgeOrdering::canonical(&g).pi().images_i64(), [2, 1]);
        let empty = SignedGraph::new(3, &[], &[], &[]).unwrap();
        assert!(EdgeOrdering::canonical(&empty).pi().is_identity());
        assert!(EdgeOrdering::parse(&empty, "").unwrap().is_empty());
    }

    #[test]
    fn phi_of_loops_only_is_empty() {
        let g = SignedGraph::new(2, &[], &[], &[1, 2]).unwrap();
        let w = EdgeOrdering::canonical(&g);
        assert!(w.phi().sequence().is_empty());
        assert!(w.phi().pi().is_identity());
    }

    #[test]
    fn fiber_count_matches_filtering_all_orderings() {
        let w = worked();
        let g = w.graph().clone();
        assert_eq!(phi_fiber_count(&g).unwrap(), 30);
        let target = w.phi().sequence().to_vec();
        let brute = g
            .edges()
            .into_iter()
            .permutations(6)
            .filter(|seq| EdgeOrdering::new(&g, seq.clone()).unwrap().phi().sequence() == target)
            .count();
        assert_eq!(brute, 30);
        let base: Vec<Edge> = w
            .sequence()
            .iter()
            .copied()
            .filter(|e| !e.is_loop())
            .collect();
        let fiber = phi_fiber(&g, &base).unwrap();
        assert_eq!(fiber.len(), 30);
        assert!(fiber.iter().all(|o| o.phi().sequence() == target));

        let loopless = SignedGraph::new(3, &[(1, 2)], &[], &[]).unwrap();
        assert_eq!(phi_fiber_count(&loopless).unwrap(), 1);
        let one = SignedGraph::new(1, &[], &[], &[1]).unwrap();
        assert_eq!(phi_fiber_count(&one).unwrap(), 1);
    }

    #[test]
    fn visits_every_ordering_once() {
        let w = worked();
        let mut seen = std::collections::HashSet::new();
        visit_orderings(w.graph(), |seq, p| {
            assert_eq!(EdgeOrdering::new(w.graph(), seq.to_vec()).unwrap().pi(), *p);
            assert!(seen.insert(seq.to_vec()));
            true
        });
        assert_eq!(seen.len(), 720);
        let mut calls = 0;
        visit_orderings(w.graph(), |_, _| {
            calls += 1;
            calls < 5
        });
        assert_eq!(calls, 5);
    }

    #[test]
    fn rotation() {
        let w = worked();
        assert_eq!(w.rotate(1).unwrap(), w);
        let r = w.rotate(2).unwrap();
        assert_eq!(r.sequence()[0], Edge::Loop(5));
        assert_eq!(
            cycle_type(&r.pi()),
            CycleType {
                lambda: vec![5],
                mu: vec![]
            }
        );
        assert!(w.rotate(0).is_err());
        assert!(w.rotate(7).is_err());
    }

    #[test]
    fn psi_counts_loops() {
        assert_eq!(psi_sign(&worked().pi()), Sign::Plus);
    }

    #[test]
    fn ordering_validation() {
        let g = worked().graph().clone();
        assert!(EdgeOrdering::parse(&g, "pos:3-5").is_err());
        assert!(EdgeOrdering::parse(&g, "pos:3-5,pos:3-5,neg:3-4,neg:2-3,loop:2,pos:1-2").is_err());
        assert!(EdgeOrdering::parse(&g, "pos:3-4,loop:5,neg:3-4,neg:2-3,loop:2,pos:1-2").is_err());
        let json = r#"["pos:3-5","loop:5","neg:3-4","neg:2-3","loop:2","pos:1-2"]"#;
        assert_eq!(EdgeOrdering::parse(&g, json).unwrap(), worked());
    }
}
