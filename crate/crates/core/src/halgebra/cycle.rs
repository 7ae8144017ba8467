//! Signed cycles, cycle types and the textual cycle notation.
//!
//! A signed cycle is written as its orbit trajectory followed by its
//! parity, e.g. `(1 2 -3 5 -4)+`: each entry is the image of the one
//! before it, and the last entry is sent to `parity · first`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Sign, SignedPermutation, SignedTransposition};
use crate::error::{Error, Result, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCycle {
    trajectory: Vec<i8>,
    parity: Sign,
}

impl SignedCycle {
    /// A cycle from its orbit trajectory `x_1, ..., x_l` and parity `ε`:
    /// `x_k -> x_{k+1}` and `x_l -> ε·x_1`.
    pub fn new(trajectory: &[i64], parity: Sign) -> Result<Self> {
        if trajectory.is_empty() {
            return Err(Error::parse("cycle", "empty cycle"));
        }
        let mut seen = [false; MAX_DEGREE + 1];
        let mut out = Vec::with_capacity(trajectory.len());
        for &x in trajectory {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > MAX_DEGREE {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    degree: MAX_DEGREE,
                });
            }
            if seen[a] {
                return Err(Error::NotBijective(format!(
                    "{a} appears twice in cycle {trajectory:?}"
                )));
            }
            seen[a] = true;
            out.push(x as i8);
        }
        Ok(SignedCycle {
            trajectory: out,
            parity,
        })
    }

    pub fn len(&self) -> usize {
        self.trajectory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectory.is_empty()
    }

    pub fn parity(&self) -> Sign {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Sign::Plus
    }

    pub fn trajectory(&self) -> Vec<i64> {
        self.trajectory.iter().map(|&x| x as i64).collect()
    }

    /// Absolute values `i_1, ..., i_l` in trajectory order.
    pub fn support(&self) -> Vec<usize> {
        self.trajectory
            .iter()
            .map(|x| x.unsigned_abs() as usize)
            .collect()
    }

    /// Signs of the trajectory entries `ε_1, ..., ε_{l-1}` after the first,
    /// relative to the sign of the first entry.
    pub fn cumulative_signs(&self) -> Vec<Sign> {
        let s0 = Sign::of(self.trajectory[0] as i64);
        self.trajectory[1..]
            .iter()
            .map(|&x| s0 * Sign::of(x as i64))
            .collect()
    }

    /// Per-step signs `ε'_k` with `η(i_k) = ε'_k · i_{k+1}` (indices cyclic).
    /// Their product is the parity.
    pub fn step_signs(&self) -> Vec<Sign> {
        let l = self.len();
        (0..l)
            .map(|k| {
                let here = Sign::of(self.trajectory[k] as i64);
                if k + 1 < l {
                    here * Sign::of(self.trajectory[k + 1] as i64)
                } else {
                    here * self.parity * Sign::of(self.trajectory[0] as i64)
                }
            })
            .collect()
    }

    /// Starts the trajectory at its second entry, turning
    /// `(x_1 x_2 ... x_l)_ε` into `(x_2 ... x_l ε·x_1)_ε`.
    pub fn rotate(&self) -> SignedCycle {
        let mut trajectory = self.trajectory[1..].to_vec();
        let first = self.trajectory[0];
        trajectory.push(if self.parity.is_minus() {
            -first
        } else {
            first
        });
        SignedCycle {
            trajectory,
            parity: self.parity,
        }
    }

    /// Rotated to start at the smallest absolute value, with that entry
    /// positive.
    pub fn canonical(&self) -> SignedCycle {
        let mut c = self.clone();
        let pos = c
            .trajectory
            .iter()
            .position_min_by_key(|x| x.unsigned_abs())
            .unwrap_or(0);
        for _ in 0..pos {
            c = c.rotate();
        }
        if c.trajectory[0] < 0 {
            for x in &mut c.trajectory {
                *x = -*x;
            }
        }
        c
    }

    /// Same support, opposite parity.
    pub fn flipped(&self) -> SignedCycle {
        SignedCycle {
            trajectory: self.trajectory.clone(),
            parity: -self.parity,
        }
    }

    /// The cycle as an element of B_n, fixing every point off its support.
    pub fn to_permutation(&self, n: usize) -> Result<SignedPermutation> {
        let mut images: Vec<i64> = (1..=n as i64).collect();
        let l = self.len();
        for k in 0..l {
            let x = self.trajectory[k] as i64;
            let y = if k + 1 < l {
                self.trajectory[k + 1] as i64
            } else {
                self.parity.to_i32() as i64 * self.trajectory[0] as i64
            };
            let a = x.unsigned_abs() as usize;
            if a > n {
                return Err(Error::IndexOutOfRange {
                    index: a as i64,
                    degree: n,
                });
            }
            images[a - 1] = if x < 0 { -y } else { y };
        }
        SignedPermutation::from_images(&images)
    }

    /// Reflections whose product, leftmost applied last, equals this cycle:
    /// `(i_1 ε'_1 i_2)(i_2 ε'_2 i_3)⋯(i_{l-1} ε'_{l-1} i_l)` for an even
    /// cycle, preceded by `(i_1 -i_1)` for an odd one.
    pub fn transposition_word(&self) -> Vec<SignedTransposition> {
        let c = if self.trajectory[0] < 0 {
            let mut c = self.clone();
            for x in &mut c.trajectory {
                *x = -*x;
            }
            c
        } else {
            self.clone()
        };
        let support = c.support();
        let steps = c.step_signs();
        let mut word = Vec::with_capacity(c.len());
        if c.parity.is_minus() {
            word.push(SignedTransposition::Inversion(support[0] as u8));
        }
        for k in 0..c.len().saturating_sub(1) {
            word.push(
                SignedTransposition::with_sign(support[k], support[k + 1], steps[k])
                    .expect("distinct support"),
            );
        }
        word
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.trajectory.iter().join(" "), self.parity)
    }
}

/// Decomposes `p` into disjoint signed cycles in canonical form, sorted by
/// the minimum of their supports.
///
/// Orbits are traced from the smallest unvisited point `s`: reaching `+s`
/// again closes an even cycle, reaching `-s` first closes an odd one.
pub fn cycle_decompose(p: &SignedPermutation) -> Vec<SignedCycle> {
    let n = p.degree();
    let mut seen = [false; MAX_DEGREE + 1];
    let mut out = Vec::new();
    for start in 1..=n as i32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut trajectory = vec![start as i8];
        let mut x = start;
        let parity = loop {
            let y = p.apply(x);
            if y == start {
                break Sign::Plus;
            }
            if y == -start {
                break Sign::Minus;
            }
            seen[y.unsigned_abs() as usize] = true;
            trajectory.push(y as i8);
            x = y;
        };
        out.push(SignedCycle { trajectory, parity });
    }
    out
}

/// Recomposes disjoint cycles into an element of degree `n`.
pub fn recompose_cycles(cycles: &[SignedCycle], n: usize) -> Result<SignedPermutation> {
    let mut p = SignedPermutation::identity(n)?;
    for c in cycles {
        for t in c.transposition_word().iter().rev() {
            if t.max_index() > n {
                return Err(Error::IndexOutOfRange {
                    index: t.max_index() as i64,
                    degree: n,
                });
            }
            t.act_on(&mut p);
        }
    }
    Ok(p)
}

/// Conjugacy invariant of B_n: lengths of even cycles (`lambda`) and of odd
/// cycles (`mu`), both sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl CycleType {
    pub fn size(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.mu.iter().sum::<usize>()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &[usize]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                format!("({})", v.iter().join(","))
            }
        };
        write!(f, "({}, {})", part(&self.lambda), part(&self.mu))
    }
}

pub fn cycle_type(p: &SignedPermutation) -> CycleType {
    let (mut lambda, mut mu) = (Vec::new(), Vec::new());
    for c in cycle_decompose(p) {
        if c.is_even() {
            lambda.push(c.len());
        } else {
            mu.push(c.len());
        }
    }
    lambda.sort_unstable_by(|a, b| b.cmp(a));
    mu.sort_unstable_by(|a, b| b.cmp(a));
    CycleType { lambda, mu }
}

/// Whether an element is a single signed cycle through every point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullCycleClass {
    EvenFull,
    OddFull,
    NotFull,
}

impl FullCycleClass {
    pub fn describe(self) -> &'static str {
        match self {
            FullCycleClass::EvenFull => "even full cycle",
            FullCycleClass::OddFull => "odd full cycle",
            FullCycleClass::NotFull => "not a full cycle",
        }
    }
}

/// Classifies by following the orbit of `1` without building cycles.
pub fn classify_full_cycle(p: &SignedPermutation) -> FullCycleClass {
    let n = p.degree() as i32;
    let mut x = 1;
    for step in 1..=n {
        x = p.apply(x);
        if x.abs() == 1 {
            if step < n {
                return FullCycleClass::NotFull;
            }
            return if x == 1 {
                FullCycleClass::EvenFull
            } else {
                FullCycleClass::OddFull
            };
        }
    }
    FullCycleClass::NotFull
}

/// Renders every cycle of `p`, fixed points included.
pub fn to_cycle_notation(p: &SignedPermutation) -> String {
    cycle_decompose(p).iter().join("")
}

/// Parses a product of disjoint signed cycles such as `(1 2 -3 5 -4)+` or
/// `(1 -2)-(3)+`. Points not mentioned are fixed. The degree defaults to the
/// largest absolute value mentioned.
///
/// Entries may use `-` or the Unicode minus sign `−`; the parity suffix is
/// required.
pub fn parse_cycle_notation(s: &str, degree: Option<usize>) -> Result<SignedPermutation> {
    let s = s.replace('−', "-");
    let mut rest = s.trim();
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse("cycle notation", format!("expected '(' at {rest:?}")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::parse("cycle notation", "missing ')'"))?;
        let body = &body_start[..close];
        let after = body_start[close + 1..].trim_start();
        let (parity, tail) = match after.chars().next() {
            Some('+') => (Sign::Plus, &after[1..]),
            Some('-') => (Sign::Minus, &after[1..]),
            _ => {
                return Err(Error::parse(
                    "cycle notation",
                    format!("cycle ({body}) needs a parity suffix '+' or '-'"),
                ))
            }
        };
        let entries = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::parse("cycle notation", format!("entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(SignedCycle::new(&entries, parity)?);
        rest = tail.trim_start();
    }
    if cycles.is_empty() {
        return Err(Error::parse("cycle notation", "no cycles given"));
    }
    let mentioned = cycles.iter().flat_map(|c| c.support()).max().unwrap_or(1);
    let n = degree.unwrap_or(mentioned);
    if mentioned > n {
        return Err(Error::IndexOutOfRange {
            index: mentioned as i64,
            degree: n,
        });
    }
    let mut seen = vec![false; n + 1];
    for a in cycles.iter().flat_map(|c| c.support()) {
        if seen[a] {
            return Err(Error::NotBijective(format!(
                "{a} appears in more than one cycle"
            )));
        }
        seen[a] = true;
    }
    recompose_cycles(&cycles, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(images: &[i64]) -> SignedPermutation {
        SignedPermutation::from_images(images).unwrap()
    }

    #[test]
    fn identity_decomposes_into_even_fixed_points() {
        let cycles = cycle_decompose(&SignedPermutation::identity(3).unwrap());
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.is_even() && c.len() == 1));
        assert_eq!(
            cycle_type(&SignedPermutation::identity(3).unwrap()),
            CycleType {
                lambda: vec![1, 1, 1],
                mu: vec![]
            }
        );
    }

    #[test]
    fn worked_product_is_one_even_five_cycle() {
        let p = sp(&[2, -3, -5, -1, -4]);
        let cycles = cycle_decompose(&p);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].trajectory(), [1, 2, -3, 5, -4]);
        assert_eq!(cycles[0].parity(), Sign::Plus);
        assert_eq!(to_cycle_notation(&p), "(1 2 -3 5 -4)+");
        assert_eq!(
            cycle_type(&p),
            CycleType {
                lambda: vec![5],
                mu: vec![]
            }
        );
        assert_eq!(classify_full_cycle(&p), FullCycleClass::EvenFull);
    }

    #[test]
    fn single_inversion() {
        let cycles = cycle_decompose(&sp(&[-1, 2]));
        assert_eq!(cycles.len(), 2);
        assert_eq!(
            (cycles[0].support(), cycles[0].parity()),
            (vec![1], Sign::Minus)
        );
        assert_eq!(
            (cycles[1].support(), cycles[1].parity()),
            (vec![2], Sign::Plus)
        );
    }

    #[test]
    fn classification() {
        let unsigned_cycle = sp(&[2, 3, 4, 1]);
        assert_eq!(
            classify_full_cycle(&unsigned_cycle),
            FullCycleClass::EvenFull
        );
        assert_eq!(
            classify_full_cycle(&SignedPermutation::identity(2).unwrap()),
            FullCycleClass::NotFull
        );
        assert_eq!(
            classify_full_cycle(&SignedPermutation::identity(1).unwrap()),
            FullCycleClass::EvenFull
        );
        assert_eq!(classify_full_cycle(&sp(&[-1])), FullCycleClass::OddFull);
        let odd = sp(&[2, 3, -1]);
        assert_eq!(classify_full_cycle(&odd), FullCycleClass::OddFull);
        assert_eq!(
            cycle_type(&odd),
            CycleType {
                lambda: vec![],
                mu: vec![3]
            }
        );
        assert_eq!(
            classify_full_cycle(&sp(&[2, 1, -3])),
            FullCycleClass::NotFull
        );
    }

    #[test]
    fn step_signs_multiply_to_parity() {
        let c = SignedCycle::new(&[1, 2, -3, 5, -4], Sign::Plus).unwrap();
        assert_eq!(
            c.cumulative_signs(),
            [Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]
        );
        let prod = c.step_signs().into_iter().fold(Sign::Plus, |a, b| a * b);
        assert_eq!(prod, Sign::Plus);
    }

    #[test]
    fn notation_parses_and_renders() {
        let p = parse_cycle_notation("(1 2 −3 5 −4)+", None).unwrap();
        assert_eq!(p, sp(&[2, -3, -5, -1, -4]));
        let q = parse_cycle_notation("(1 2)-", Some(3)).unwrap();
        assert_eq!(q, sp(&[2, -1, 3]));
        assert_eq!(to_cycle_notation(&q), "(1 2)-(3)+");
        let r = parse_cycle_notation("(1 -2)+ (3)-", None).unwrap();
        assert_eq!(r, sp(&[-2, -1, -3]));
    }

    #[test]
    fn notation_errors() {
        assert!(parse_cycle_notation("(1 2)", None).is_err());
        assert!(parse_cycle_notation("1 2)+", None).is_err());
        assert!(parse_cycle_notation("(1 2)+(2 3)+", None).is_err());
        assert!(parse_cycle_notation("(1 x)+", None).is_err());
        assert!(parse_cycle_notation("(1 4)+", Some(3)).is_err());
        assert!(parse_cycle_notation("", None).is_err());
    }

    #[test]
    fn canonical_form_starts_at_positive_minimum() {
        let c = SignedCycle::new(&[-3, 5, -1, 2], Sign::Minus).unwrap();
        let k = c.canonical();
        assert_eq!(k.trajectory()[0], 1);
        assert_eq!(k.to_permutation(5).unwrap(), c.to_permutation(5).unwrap());
    }
}
