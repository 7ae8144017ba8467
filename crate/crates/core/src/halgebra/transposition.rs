use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Permutation, SignedPermutation};
use crate::error::{Error, Result, MAX_DEGREE};

/// A reflection of B_n.
///
/// `Positive(i, j)` and `Negative(i, j)` always hold `i < j`; use the
/// constructors to canonicalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignedTransposition {
    /// `(i j)`: swaps `i` and `j`.
    Positive(u8, u8),
    /// `(i -j)`: sends `i -> -j` and `j -> -i`.
    Negative(u8, u8),
    /// `(i -i)`.
    Inversion(u8),
}

/// Which reflections a factorization may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSet {
    /// All `n²` signed transpositions.
    AllSigned,
    /// Only the `n(n-1)/2` positive transpositions.
    PositiveOnly,
}

fn check_index(i: usize) -> Result<u8> {
    if i == 0 || i > MAX_DEGREE {
        Err(Error::IndexOutOfRange {
            index: i as i64,
            degree: MAX_DEGREE,
        })
    } else {
        Ok(i as u8)
    }
}

fn ordered_pair(i: usize, j: usize) -> Result<(u8, u8)> {
    let (a, b) = (check_index(i)?, check_index(j)?);
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Ok((a, b)),
        std::cmp::Ordering::Greater => Ok((b, a)),
        std::cmp::Ordering::Equal => Err(Error::RepeatedIndex(i)),
    }
}

impl SignedTransposition {
    pub fn positive(i: usize, j: usize) -> Result<Self> {
        let (a, b) = ordered_pair(i, j)?;
        Ok(SignedTransposition::Positive(a, b))
    }

    pub fn negative(i: usize, j: usize) -> Result<Self> {
        let (a, b) = ordered_pair(i, j)?;
        Ok(SignedTransposition::Negative(a, b))
    }

    pub fn inversion(i: usize) -> Result<Self> {
        Ok(SignedTransposition::Inversion(check_index(i)?))
    }

    /// `(i εj)` for `ε = sign`.
    pub fn with_sign(i: usize, j: usize, sign: super::Sign) -> Result<Self> {
        match sign {
            super::Sign::Plus => Self::positive(i, j),
            super::Sign::Minus => Self::negative(i, j),
        }
    }

    pub fn is_inversion(&self) -> bool {
        matches!(self, SignedTransposition::Inversion(_))
    }

    /// Largest index touched.
    pub fn max_index(&self) -> usize {
        match *self {
            SignedTransposition::Positive(_, j) | SignedTransposition::Negative(_, j) => j as usize,
            SignedTransposition::Inversion(i) => i as usize,
        }
    }

    /// Image of a signed point under this reflection.
    #[inline]
    pub fn apply(&self, x: i32) -> i32 {
        let (s, a) = (x.signum(), x.abs());
        match *self {
            SignedTransposition::Positive(i, j) => {
                let (i, j) = (i as i32, j as i32);
                if a == i {
                    s * j
                } else if a == j {
                    s * i
                } else {
                    x
                }
            }
            SignedTransposition::Negative(i, j) => {
                let (i, j) = (i as i32, j as i32);
                if a == i {
                    -s * j
                } else if a == j {
                    -s * i
                } else {
                    x
                }
            }
            SignedTransposition::Inversion(i) => {
                if a == i as i32 {
                    -x
                } else {
                    x
                }
            }
        }
    }

    pub fn to_permutation(&self, n: usize) -> Result<SignedPermutation> {
        let mut p = SignedPermutation::identity(n)?;
        if self.max_index() > n {
            return Err(Error::IndexOutOfRange {
                index: self.max_index() as i64,
                degree: n,
            });
        }
        self.act_on(&mut p);
        Ok(p)
    }

    /// Replaces `p` by `self ∘ p`.
    #[inline]
    pub fn act_on(&self, p: &mut SignedPermutation) {
        debug_assert!(self.max_index() <= p.degree());
        p.map_values(|v| self.apply(v as i32) as i8);
    }

    /// Image under the projection B_n -> S_n; inversions map to `None`
    /// (the identity).
    pub fn unsigned_pair(&self) -> Option<(usize, usize)> {
        match *self {
            SignedTransposition::Positive(i, j) | SignedTransposition::Negative(i, j) => {
                Some((i as usize, j as usize))
            }
            SignedTransposition::Inversion(_) => None,
        }
    }

    /// Replaces `p` by `Φ(self) ∘ p`.
    #[inline]
    pub fn act_on_unsigned(&self, p: &mut Permutation) {
        if let Some((i, j)) = self.unsigned_pair() {
            p.swap_values(i, j);
        }
    }

    /// All reflections of the chosen kind in B_n: positive, then negative,
    /// then inversions, each in lexicographic order.
    pub fn all(n: usize, set: GeneratorSet) -> Vec<SignedTransposition> {
        let mut out = Vec::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                out.push(SignedTransposition::Positive(i, j));
            }
        }
        if set == GeneratorSet::AllSigned {
            for i in 1..=n as u8 {
                for j in i + 1..=n as u8 {
                    out.push(SignedTransposition::Negative(i, j));
                }
            }
            for i in 1..=n as u8 {
                out.push(SignedTransposition::Inversion(i));
            }
        }
        out
    }
}

impl fmt::Display for SignedTransposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedTransposition::Positive(i, j) => write!(f, "({i} {j})"),
            SignedTransposition::Negative(i, j) => write!(f, "({i} -{j})"),
            SignedTransposition::Inversion(i) => write!(f, "({i} -{i})"),
        }
    }
}
