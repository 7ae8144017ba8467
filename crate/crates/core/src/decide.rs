//! Deciding whether a (signed) graph admits an edge ordering whose product
//! is a full cycle, and whether every ordering does.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halgebra::{classify_full_cycle, FullCycleClass, Permutation, SignedPermutation};
use crate::ordering::{EdgeOrdering, UnsignedOrdering};
use crate::sgraph::{Edge, Multigraph, SignedGraph};

/// Default bound on the number of edges an exhaustive ordering search
/// accepts.
pub const DEFAULT_EDGE_CAP: usize = 9;

/// Hard ceiling: edge subsets are tracked as 64-bit masks.
pub const MAX_EDGE_CAP: usize = 63;

/// How a report was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// The underlying graph is disconnected or has odd Betti number.
    FilterRejected,
    /// Exhaustive search over orderings of the signed graph itself.
    BruteForce,
    /// Search over the underlying multigraph combined with loop parity.
    Reduction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FcpoReport {
    pub even_exists: bool,
    pub odd_exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_even: Option<EdgeOrdering>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_odd: Option<EdgeOrdering>,
    pub method: Method,
}

/// Result of the search on an unsigned multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsignedSearch {
    pub exists: bool,
    pub witness: Option<UnsignedOrdering>,
    pub method: Method,
}

/// Connected with even Betti number. Necessary for a full cycle ordering,
/// not sufficient.
pub fn connectivity_parity_filter(m: &Multigraph) -> bool {
    let b = m.betti();
    b.connected && b.value.rem_euclid(2) == 0
}

fn check_cap(edges: usize, cap: usize) -> Result<()> {
    if edges > cap || edges > MAX_EDGE_CAP {
        Err(Error::EdgeCapExceeded {
            edges,
            cap: cap.min(MAX_EDGE_CAP),
        })
    } else {
        Ok(())
    }
}

/// Depth-first search over orderings of `m` items for one whose product is
/// accepted, returning the lexicographically least accepted ordering.
///
/// States `(used items, partial product)` that were fully explored without
/// success are remembered and not expanded again; because the search stops
/// at the first success, a remembered state can never hide an earlier
/// solution. Subtrees rooted at different first items run in parallel.
fn search_orderings<P, F, A>(m: usize, start: P, apply: &F, accept: &A) -> Option<Vec<usize>>
where
    P: Copy + Eq + Hash + Send + Sync,
    F: Fn(&P, usize) -> P + Sync,
    A: Fn(&P) -> bool + Sync,
{
    if m == 0 {
        return accept(&start).then(Vec::new);
    }
    (0..m).into_par_iter().find_map_first(|first| {
        let mut failed = HashSet::new();
        let mut path = vec![first];
        let p = apply(&start, first);
        dfs(m, 1u64 << first, p, apply, accept, &mut failed, &mut path).then_some(path)
    })
}

fn dfs<P, F, A>(
    m: usize,
    used: u64,
    p: P,
    apply: &F,
    accept: &A,
    failed: &mut HashSet<(u64, P)>,
    path: &mut Vec<usize>,
) -> bool
where
    P: Copy + Eq + Hash,
    F: Fn(&P, usize) -> P,
    A: Fn(&P) -> bool,
{
    if path.len() == m {
        return accept(&p);
    }
    if failed.contains(&(used, p)) {
        return false;
    }
    for k in 0..m {
        if used >> k & 1 == 1 {
            continue;
        }
        path.push(k);
        if dfs(m, used | 1 << k, apply(&p, k), apply, accept, failed, path) {
            return true;
        }
        path.pop();
    }
    failed.insert((used, p));
    false
}

/// Searches the orderings of an unsigned multigraph for one whose product
/// is an `n`-cycle. Rejects immediately when [`connectivity_parity_filter`] fails.
pub fn has_fcpo_unsigned(m: &Multigraph, cap: usize) -> Result<UnsignedSearch> {
    check_cap(m.edge_count(), cap)?;
    if !connectivity_parity_filter(m) {
        return Ok(UnsignedSearch {
            exists: false,
            witness: None,
            method: Method::FilterRejected,
        });
    }
    let edges = m.edges().to_vec();
    let start = Permutation::identity(m.n())?;
    let found = search_orderings(
        edges.len(),
        start,
        &|p: &Permutation, k| {
            let mut q = *p;
            q.swap_values(edges[k].0, edges[k].1);
            q
        },
        &|p: &Permutation| p.is_full_cycle(),
    );
    Ok(UnsignedSearch {
        exists: found.is_some(),
        witness: found.map(|seq| UnsignedOrdering::new(m, seq).expect("search yields orderings")),
        method: Method::BruteForce,
    })
}

/// Decides existence of even and odd full cycle orderings of `g` through
/// the underlying multigraph: an even (odd) one exists exactly when the
/// multigraph has a full cycle ordering and the number of loops is even
/// (odd). Witnesses append the loops after a multigraph witness.
///
/// `cap` bounds the number of non-loop edges.
pub fn has_signed_fcpo(g: &SignedGraph, cap: usize) -> Result<FcpoReport> {
    let bar = g.underlying();
    let search = has_fcpo_unsigned(&bar, cap)?;
    let lifted = search.witness.as_ref().map(|w| {
        let non_loop = g.non_loop_edges();
        let mut seq: Vec<Edge> = w.sequence().iter().map(|&k| non_loop[k]).collect();
        seq.extend(g.loops().iter().map(|&v| Edge::Loop(v as u8)));
        EdgeOrdering::new(g, seq).expect("lift covers every edge")
    });
    let even_loops = g.loop_count().is_multiple_of(2);
    let (even_exists, odd_exists) = (search.exists && even_loops, search.exists && !even_loops);
    Ok(FcpoReport {
        even_exists,
        odd_exists,
        witness_even: if even_exists { lifted.clone() } else { None },
        witness_odd: if odd_exists { lifted } else { None },
        method: if search.method == Method::FilterRejected {
            Method::FilterRejected
        } else {
            Method::Reduction
        },
    })
}

/// Searches the orderings of `g` directly, without using loop parity.
/// `cap` bounds the total number of edges, loops included.
pub fn brute_force_signed_fcpo(g: &SignedGraph, cap: usize) -> Result<FcpoReport> {
    check_cap(g.edge_count(), cap)?;
    let edges = g.edges();
    let start = SignedPermutation::identity(g.n())?;
    let apply = |p: &SignedPermutation, k: usize| {
        let mut q = *p;
        edges[k].transposition().act_on(&mut q);
        q
    };
    let find = |class: FullCycleClass| {
        search_orderings(edges.len(), start, &apply, &|p: &SignedPermutation| {
            classify_full_cycle(p) == class
        })
        .map(|seq| {
            EdgeOrdering::new(g, seq.into_iter().map(|k| edges[k]).collect())
                .expect("search yields orderings")
        })
    };
    let witness_even = find(FullCycleClass::EvenFull);
    let witness_odd = find(FullCycleClass::OddFull);
    Ok(FcpoReport {
        even_exists: witness_even.is_some(),
        odd_exists: witness_odd.is_some(),
        witness_even,
        witness_odd,
        method: Method::BruteForce,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universality {
    /// Every ordering yields an even full cycle.
    AllEven,
    /// Every ordering yields an odd full cycle.
    AllOdd,
    NotUniversal,
}

/// Every ordering is a full cycle ordering exactly when the underlying
/// multigraph is a tree; loop parity then fixes even or odd.
pub fn universal_full_cyclic(g: &SignedGraph) -> Universality {
    if !g.is_signed_tree_with_loops() {
        Universality::NotUniversal
    } else if g.loop_count().is_multiple_of(2) {
        Universality::AllEven
    } else {
        Universality::AllOdd
    }
}

/// A shortest cycle `v_1, ..., v_l` of the underlying multigraph together
/// with its edges `c_i = {v_i, v_{i+1}}` (`c_l = {v_l, v_1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// Shortest cycle of the underlying multigraph; among shortest cycles the
/// lexicographically least vertex sequence is chosen. A pair carrying both
/// a positive and a negative edge is a cycle of length 2.
pub fn minimal_cycle(g: &SignedGraph) -> Option<MinimalCycle> {
    if let Some(&(a, b)) = g.pos_edges().iter().find(|p| g.neg_edges().contains(p)) {
        return Some(MinimalCycle {
            vertices: vec![a, b],
            edges: vec![Edge::Pos(a as u8, b as u8), Edge::Neg(a as u8, b as u8)],
        });
    }
    let n = g.n();
    let edges = g.non_loop_edges();
    let mut adj = vec![Vec::new(); n + 1];
    for e in &edges {
        let (i, j) = e.endpoints().expect("non-loop");
        adj[i].push(j);
        adj[j].push(i);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    // girth: for each edge, shortest detour between its endpoints
    let mut girth = usize::MAX;
    for e in &edges {
        let (s, t) = e.endpoints().expect("non-loop");
        let mut dist = vec![usize::MAX; n + 1];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if (u, w) == (s, t) || (u, w) == (t, s) || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
        if dist[t] != usize::MAX {
            girth = girth.min(dist[t] + 1);
        }
    }
    if girth == usize::MAX {
        return None;
    }

    fn extend(adj: &[Vec<usize>], len: usize, path: &mut Vec<usize>) -> bool {
        let v1 = path[0];
        let last = *path.last().expect("nonempty");
        if path.len() == len {
            return adj[last].contains(&v1);
        }
        for &w in &adj[last] {
            if w > v1 && !path.contains(&w) {
                path.push(w);
                if extend(adj, len, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    let edge_between = |a: usize, b: usize| {
        *edges
            .iter()
            .find(|e| e.endpoints() == Some((a.min(b), a.max(b))))
            .expect("adjacent vertices share an edge")
    };
    for v1 in 1..=n {
        let mut path = vec![v1];
        if extend(&adj, girth, &mut path) {
            let l = path.len();
            let cycle_edges = (0..l)
                .map(|k| edge_between(path[k], path[(k + 1) % l]))
                .collect();
            return Some(MinimalCycle {
                vertices: path,
                edges: cycle_edges,
            });
        }
    }
    unreachable!("a cycle of length {girth} exists")
}

/// An ordering of `g` that is not a full cycle ordering, for a connected
/// underlying multigraph that is not a tree.
///
/// With a shortest cycle `v_1, ..., v_l` and edges `c_i`, let `b_*` be the
/// non-cycle edges at `v_l` and `d_*` all other non-loop edges. The order
/// `(c_1, ..., c_{l-1}, d_*, c_l, b_*)` carries `v_1` to `v_l` and straight
/// back, so the product sends `v_1` to `±v_1`. Loops are appended at the end.
pub fn non_full_ordering(g: &SignedGraph) -> Result<EdgeOrdering> {
    if !g.underlying().is_connected() {
        return Err(Error::Disconnected);
    }
    let cycle = minimal_cycle(g).ok_or(Error::AcyclicGraph)?;
    let l = cycle.vertices.len();
    let v_last = cycle.vertices[l - 1];
    let (b, d): (Vec<Edge>, Vec<Edge>) = g
        .non_loop_edges()
        .into_iter()
        .filter(|e| !cycle.edges.contains(e))
        .partition(|e| e.touches(v_last));
    let mut seq: Vec<Edge> = cycle.edges[..l - 1].to_vec();
    seq.extend(d);
    seq.push(cycle.edges[l - 1]);
    seq.extend(b);
    seq.extend(g.loops().iter().map(|&v| Edge::Loop(v as u8)));
    EdgeOrdering::new(g, seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn triangle() -> Multigraph {
        Multigraph::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn doubled_path() -> Multigraph {
        Multigraph::new(3, &[(1, 2), (1, 2), (2, 3), (2, 3)]).unwrap()
    }

    fn worked_graph() -> SignedGraph {
        SignedGraph::new(5, &[(1, 2), (3, 5)], &[(2, 3), (3, 4)], &[2, 5]).unwrap()
    }

    #[test]
    fn filter() {
        assert!(connectivity_parity_filter(
            &Multigraph::new(4, &[(1, 2), (2, 3), (2, 4)]).unwrap()
        ));
        assert!(!connectivity_parity_filter(&triangle()));
        assert!(connectivity_parity_filter(&doubled_path()));
        assert!(!connectivity_parity_filter(
            &Multigraph::new(2, &[]).unwrap()
        ));
    }

    #[test]
    fn triangle_has_no_fcpo_by_enumeration() {
        // independent of the filter: every one of the 3! orders leaves a fixed point
        for seq in triangle().edges().iter().permutations(3) {
            let mut p = Permutation::identity(3).unwrap();
            for &&(i, j) in &seq {
                p.swap_values(i, j);
            }
            assert!(!p.is_full_cycle());
        }
        let r = has_fcpo_unsigned(&triangle(), DEFAULT_EDGE_CAP).unwrap();
        assert!(!r.exists);
        assert_eq!(r.method, Method::FilterRejected);
    }

    #[test]
    fn doubled_path_witness() {
        let r = has_fcpo_unsigned(&doubled_path(), DEFAULT_EDGE_CAP).unwrap();
        assert!(r.exists);
        let w = r.witness.unwrap();
        assert_eq!(w.pairs(), [(1, 2), (2, 3), (1, 2), (2, 3)]);
        assert_eq!(w.pi(), Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
    }

    #[test]
    fn tree_accepts_first_ordering() {
        let tree = Multigraph::new(4, &[(1, 2), (2, 3), (2, 4)]).unwrap();
        let r = has_fcpo_unsigned(&tree, DEFAULT_EDGE_CAP).unwrap();
        assert!(r.exists);
        assert_eq!(r.witness.unwrap().sequence(), [0, 1, 2]);
    }

    #[test]
    fn cap_is_enforced() {
        let m = Multigraph::new(3, &[(1, 2), (1, 2), (2, 3), (2, 3)]).unwrap();
        assert_eq!(
            has_fcpo_unsigned(&m, 3),
            Err(Error::EdgeCapExceeded { edges: 4, cap: 3 })
        );
        let g = worked_graph();
        assert!(brute_force_signed_fcpo(&g, 5).is_err());
        assert!(has_signed_fcpo(&g, 4).is_ok());
    }

    #[test]
    fn worked_graph_is_even_only() {
        let g = worked_graph();
        let r = has_signed_fcpo(&g, DEFAULT_EDGE_CAP).unwrap();
        assert!(r.even_exists && !r.odd_exists);
        assert_eq!(r.method, Method::Reduction);
        let w = r.witness_even.unwrap();
        assert_eq!(classify_full_cycle(&w.pi()), FullCycleClass::EvenFull);
        let b = brute_force_signed_fcpo(&g, DEFAULT_EDGE_CAP).unwrap();
        assert!(b.even_exists && !b.odd_exists);
        assert_eq!(universal_full_cyclic(&g), Universality::AllEven);
    }

    #[test]
    fn one_loop_tree_is_odd_only() {
        let g = SignedGraph::new(3, &[(1, 2)], &[(2, 3)], &[1]).unwrap();
        let r = has_signed_fcpo(&g, DEFAULT_EDGE_CAP).unwrap();
        assert!(!r.even_exists && r.odd_exists);
        assert_eq!(
            classify_full_cycle(&r.witness_odd.unwrap().pi()),
            FullCycleClass::OddFull
        );
        assert_eq!(universal_full_cyclic(&g), Universality::AllOdd);
    }

    #[test]
    fn triangle_with_loops_has_neither() {
        for loops in [vec![], vec![1], vec![1, 2]] {
            let g = SignedGraph::new(3, &[(1, 2), (1, 3)], &[(2, 3)], &loops).unwrap();
            let r = has_signed_fcpo(&g, DEFAULT_EDGE_CAP).unwrap();
            assert!(!r.even_exists && !r.odd_exists);
            assert_eq!(r.method, Method::FilterRejected);
            assert_eq!(
                serde_json::to_string(&r).unwrap(),
                r#"{"even_exists":false,"odd_exists":false,"method":"filter-rejected"}"#
            );
        }
    }

    #[test]
    fn counterexamples_fix_first_vertex() {
        let cases = [
            SignedGraph::new(3, &[(1, 2), (2, 3), (1, 3)], &[], &[]).unwrap(),
            SignedGraph::new(3, &[(1, 2), (2, 3)], &[(1, 2), (2, 3)], &[]).unwrap(),
            SignedGraph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)], &[], &[2]).unwrap(),
        ];
        for g in &cases {
            let cycle = minimal_cycle(g).unwrap();
            let w = non_full_ordering(g).unwrap();
            let v1 = cycle.vertices[0] as i32;
            assert_eq!(w.pi().apply(v1).abs(), v1, "{w}");
            assert_eq!(classify_full_cycle(&w.pi()), FullCycleClass::NotFull);
            assert_eq!(universal_full_cyclic(g), Universality::NotUniversal);
        }
        assert_eq!(minimal_cycle(&cases[1]).unwrap().vertices, [1, 2]);
        assert_eq!(minimal_cycle(&cases[2]).unwrap().vertices, [1, 2, 3, 4]);
    }

    #[test]
    fn counterexample_errors() {
        let tree = SignedGraph::new(3, &[(1, 2), (2, 3)], &[], &[1]).unwrap();
        assert_eq!(non_full_ordering(&tree), Err(Error::AcyclicGraph));
        let split = SignedGraph::new(5, &[(1, 2), (2, 3), (1, 3)], &[], &[]).unwrap();
        assert_eq!(non_full_ordering(&split), Err(Error::Disconnected));
    }

    #[test]
    fn single_vertex_graphs() {
        let bare = SignedGraph::new(1, &[], &[], &[]).unwrap();
        let r = has_signed_fcpo(&bare, DEFAULT_EDGE_CAP).unwrap();
        assert!(r.even_exists && !r.odd_exists);
        let looped = SignedGraph::new(1, &[], &[], &[1]).unwrap();
        let r = brute_force_signed_fcpo(&looped, DEFAULT_EDGE_CAP).unwrap();
        assert!(!r.even_exists && r.odd_exists);
    }
}
