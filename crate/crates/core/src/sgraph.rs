//! Signed graphs `(V, E⁺, E⁻, L)` on the vertex set `[n]` and their
//! underlying unsigned multigraphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_DEGREE};
use crate::halgebra::SignedTransposition;

/// One element of `E⁺ ⊔ E⁻ ⊔ L`. Pairs are stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Pos(u8, u8),
    Neg(u8, u8),
    Loop(u8),
}

impl Edge {
    pub fn pos(i: usize, j: usize) -> Result<Edge> {
        let (a, b) = pair(i, j)?;
        Ok(Edge::Pos(a, b))
    }

    pub fn neg(i: usize, j: usize) -> Result<Edge> {
        let (a, b) = pair(i, j)?;
        Ok(Edge::Neg(a, b))
    }

    pub fn loop_at(i: usize) -> Result<Edge> {
        if i == 0 || i > MAX_DEGREE {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                degree: MAX_DEGREE,
            });
        }
        Ok(Edge::Loop(i as u8))
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Edge::Loop(_))
    }

    /// Endpoints of a non-loop edge.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match *self {
            Edge::Pos(i, j) | Edge::Neg(i, j) => Some((i as usize, j as usize)),
            Edge::Loop(_) => None,
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        match *self {
            Edge::Pos(i, j) | Edge::Neg(i, j) => i as usize == v || j as usize == v,
            Edge::Loop(i) => i as usize == v,
        }
    }

    pub fn max_vertex(&self) -> usize {
        match *self {
            Edge::Pos(_, j) | Edge::Neg(_, j) => j as usize,
            Edge::Loop(i) => i as usize,
        }
    }

    /// `(i j)`, `(i -j)` or `(i -i)`.
    pub fn transposition(&self) -> SignedTransposition {
        match *self {
            Edge::Pos(i, j) => SignedTransposition::Positive(i, j),
            Edge::Neg(i, j) => SignedTransposition::Negative(i, j),
            Edge::Loop(i) => SignedTransposition::Inversion(i),
        }
    }
}

fn pair(i: usize, j: usize) -> Result<(u8, u8)> {
    for v in [i, j] {
        if v == 0 || v > MAX_DEGREE {
            return Err(Error::IndexOutOfRange {
                index: v as i64,
                degree: MAX_DEGREE,
            });
        }
    }
    if i == j {
        return Err(Error::InvalidGraph(format!("self-pair {{{i},{i}}}")));
    }
    Ok((i.min(j) as u8, i.max(j) as u8))
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Pos(i, j) => write!(f, "pos:{i}-{j}"),
            Edge::Neg(i, j) => write!(f, "neg:{i}-{j}"),
            Edge::Loop(i) => write!(f, "loop:{i}"),
        }
    }
}

impl FromStr for Edge {
    type Err = Error;

    /// `pos:i-j`, `neg:i-j` or `loop:i`.
    fn from_str(s: &str) -> Result<Edge> {
        let bad = |msg: &str| Error::parse("edge", format!("{s:?}: {msg}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| bad(&e.to_string()));
        match kind.trim() {
            "loop" => Edge::loop_at(num(rest)?),
            "pos" | "neg" => {
                let (a, b) = rest.split_once('-').ok_or_else(|| bad("expected i-j"))?;
                let (a, b) = (num(a)?, num(b)?);
                if kind.trim() == "pos" {
                    Edge::pos(a, b)
                } else {
                    Edge::neg(a, b)
                }
            }
            other => Err(bad(&format!("unknown edge kind {other:?}"))),
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A signed graph on `[n]`. Each of `E⁺`, `E⁻` is a set; the same pair may
/// appear once in each. At most one loop per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    pos: Vec<(usize, usize)>,
    neg: Vec<(usize, usize)>,
    loops: Vec<usize>,
}

/// The JSON document `{"n": 5, "pos": [[1,2]], "neg": [[2,3]], "loops": [2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: i64,
    #[serde(default)]
    pub pos: Vec<[i64; 2]>,
    #[serde(default)]
    pub neg: Vec<[i64; 2]>,
    #[serde(default)]
    pub loops: Vec<i64>,
}

impl SignedGraph {
    pub fn new(
        n: usize,
        pos: &[(usize, usize)],
        neg: &[(usize, usize)],
        loops: &[usize],
    ) -> Result<SignedGraph> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidDegree(n));
        }
        let in_range = |v: usize, field: &str| {
            if v == 0 || v > n {
                Err(Error::InvalidGraph(format!(
                    "{field}: vertex {v} outside [1, {n}]"
                )))
            } else {
                Ok(())
            }
        };
        let class = |pairs: &[(usize, usize)], field: &str| -> Result<Vec<(usize, usize)>> {
            let mut set = BTreeSet::new();
            for &(i, j) in pairs {
                in_range(i, field)?;
                in_range(j, field)?;
                if i == j {
                    return Err(Error::InvalidGraph(format!("{field}: self-pair [{i},{i}]")));
                }
                if !set.insert((i.min(j), i.max(j))) {
                    return Err(Error::InvalidGraph(format!(
                        "{field}: duplicate pair [{},{}]",
                        i.min(j),
                        i.max(j)
                    )));
                }
            }
            Ok(set.into_iter().collect())
        };
        let pos = class(pos, "pos")?;
        let neg = class(neg, "neg")?;
        let mut lset = BTreeSet::new();
        for &v in loops {
            in_range(v, "loops")?;
            if !lset.insert(v) {
                return Err(Error::InvalidGraph(format!("loops: duplicate vertex {v}")));
            }
        }
        Ok(SignedGraph {
            n,
            pos,
            neg,
            loops: lset.into_iter().collect(),
        })
    }

    /// Builds the graph whose edge set is exactly `edges`.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<SignedGraph> {
        let (mut pos, mut neg, mut loops) = (Vec::new(), Vec::new(), Vec::new());
        for e in edges {
            match *e {
                Edge::Pos(i, j) => pos.push((i as usize, j as usize)),
                Edge::Neg(i, j) => neg.push((i as usize, j as usize)),
                Edge::Loop(i) => loops.push(i as usize),
            }
        }
        SignedGraph::new(n, &pos, &neg, &loops)
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<SignedGraph> {
        let idx = |v: i64, field: &str| -> Result<usize> {
            usize::try_from(v)
                .map_err(|_| Error::InvalidGraph(format!("{field}: vertex {v} is negative")))
        };
        let n = idx(doc.n, "n")?;
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidGraph(format!(
                "n: {n} is outside 1..={MAX_DEGREE}"
            )));
        }
        let pairs = |v: &[[i64; 2]], field: &str| -> Result<Vec<(usize, usize)>> {
            v.iter()
                .map(|&[a, b]| Ok((idx(a, field)?, idx(b, field)?)))
                .collect()
        };
        let loops = doc
            .loops
            .iter()
            .map(|&v| idx(v, "loops"))
            .collect::<Result<Vec<_>>>()?;
        SignedGraph::new(
            n,
            &pairs(&doc.pos, "pos")?,
            &pairs(&doc.neg, "neg")?,
            &loops,
        )
    }

    pub fn from_json(s: &str) -> Result<SignedGraph> {
        let doc: GraphDoc =
            serde_json::from_str(s).map_err(|e| Error::parse("graph", e.to_string()))?;
        SignedGraph::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GraphDoc {
        let pairs = |v: &[(usize, usize)]| v.iter().map(|&(a, b)| [a as i64, b as i64]).collect();
        GraphDoc {
            n: self.n as i64,
            pos: pairs(&self.pos),
            neg: pairs(&self.neg),
            loops: self.loops.iter().map(|&v| v as i64).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("plain data")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pos_edges(&self) -> &[(usize, usize)] {
        &self.pos
    }

    pub fn neg_edges(&self) -> &[(usize, usize)] {
        &self.neg
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    /// `|E⁺| + |E⁻| + |L|`.
    pub fn edge_count(&self) -> usize {
        self.pos.len() + self.neg.len() + self.loops.len()
    }

    /// All edges: positive, then negative, then loops, each ascending.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = self.non_loop_edges();
        out.extend(self.loops.iter().map(|&v| Edge::Loop(v as u8)));
        out
    }

    /// `E⁺ ⊔ E⁻` in the order used by [`SignedGraph::underlying`].
    pub fn non_loop_edges(&self) -> Vec<Edge> {
        self.pos
            .iter()
            .map(|&(i, j)| Edge::Pos(i as u8, j as u8))
            .chain(self.neg.iter().map(|&(i, j)| Edge::Neg(i as u8, j as u8)))
            .collect()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        match *e {
            Edge::Pos(i, j) => self.pos.binary_search(&(i as usize, j as usize)).is_ok(),
            Edge::Neg(i, j) => self.neg.binary_search(&(i as usize, j as usize)).is_ok(),
            Edge::Loop(i) => self.loops.binary_search(&(i as usize)).is_ok(),
        }
    }

    /// The unsigned multigraph on `E⁺ ⊔ E⁻`; loops are dropped. The k-th
    /// multigraph edge corresponds to the k-th entry of
    /// [`SignedGraph::non_loop_edges`].
    pub fn underlying(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.pos.iter().chain(self.neg.iter()).copied().collect(),
        }
    }

    /// True iff the underlying multigraph is a tree; loops and signs are
    /// ignored.
    pub fn is_signed_tree_with_loops(&self) -> bool {
        self.underlying().is_tree()
    }
}

/// An unsigned multigraph on `[n]`; every pair has multiplicity at most 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Value of `|E| - |V| + 1`, with a flag saying whether the graph is
/// connected (the formula is the Betti number only in that case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub value: i64,
    pub connected: bool,
}

impl Multigraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Multigraph> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidDegree(n));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidGraph(format!(
                    "edge [{i},{j}] outside [1, {n}]"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-pair [{i},{i}]")));
            }
            canon.push((i.min(j), i.max(j)));
        }
        let m = Multigraph { n, edges: canon };
        if let Some(&(i, j)) = m.edges.iter().find(|&&e| m.multiplicity(e.0, e.1) > 2) {
            return Err(Error::InvalidGraph(format!(
                "pair [{i},{j}] has multiplicity above 2"
            )));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.n;
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    pub fn betti(&self) -> Betti {
        Betti {
            value: self.edges.len() as i64 - self.n as i64 + 1,
            connected: self.is_connected(),
        }
    }

    /// Connected with exactly `n - 1` edges; a doubled pair therefore never
    /// occurs.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }
}

/// Every signed graph on `[n]` with at most `max_non_loop` edges in
/// `E⁺ ⊔ E⁻` and at most `max_loops` loops.
pub fn enumerate_signed_graphs(
    n: usize,
    max_non_loop: usize,
    max_loops: usize,
) -> Result<Vec<SignedGraph>> {
    let mut candidates = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            candidates.push(Edge::pos(i, j)?);
            candidates.push(Edge::neg(i, j)?);
        }
    }
    let mut out = Vec::new();
    for k in 0..=max_non_loop.min(candidates.len()) {
        for edges in candidates.iter().copied().combinations(k) {
            for l in 0..=max_loops.min(n) {
                for loops in (1..=n).combinations(l) {
                    let mut all = edges.clone();
                    all.extend(loops.iter().map(|&v| Edge::Loop(v as u8)));
                    out.push(SignedGraph::from_edges(n, &all)?);
                }
            }
        }
    }
    Ok(out)
}
