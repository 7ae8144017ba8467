//! Dense signed and unsigned permutations.
//!
//! Products follow a single convention throughout the crate: in
//! `a.compose(&b)` the right factor `b` is applied first, so
//! `a.compose(&b).apply(i) == a.apply(b.apply(i))`. A product written
//! `t_m ... t_1` therefore applies `t_1` first.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::Sign;
use crate::error::{Error, Result, MAX_DEGREE};

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        Err(Error::InvalidDegree(n))
    } else {
        Ok(())
    }
}

/// An element of the hyperoctahedral group B_n.
///
/// Only the images of `1..=n` are stored; the image of `-i` is always
/// `-self.apply(i)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    degree: u8,
    images: [i8; MAX_DEGREE],
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        let mut images = [0i8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().take(n).enumerate() {
            *slot = (i + 1) as i8;
        }
        Ok(SignedPermutation {
            degree: n as u8,
            images,
        })
    }

    /// Builds an element from the images of `1..=n`.
    pub fn from_images(images: &[i64]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        let mut out = [0i8; MAX_DEGREE];
        for (slot, &v) in out.iter_mut().zip(images) {
            if v == 0 || v.unsigned_abs() as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    degree: n,
                });
            }
            let a = v.unsigned_abs() as usize - 1;
            if seen[a] {
                return Err(Error::NotBijective(format!(
                    "absolute value {} appears twice in {:?}",
                    a + 1,
                    images
                )));
            }
            seen[a] = true;
            *slot = v as i8;
        }
        Ok(SignedPermutation {
            degree: n as u8,
            images: out,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Images of `1..=n`.
    #[inline]
    pub fn images(&self) -> &[i8] {
        &self.images[..self.degree()]
    }

    pub fn images_i64(&self) -> Vec<i64> {
        self.images().iter().map(|&v| v as i64).collect()
    }

    /// Image of a signed point `x` with `1 <= |x| <= n`.
    #[inline]
    pub fn apply(&self, x: i32) -> i32 {
        debug_assert!(x != 0 && x.unsigned_abs() as usize <= self.degree());
        let v = self.images[x.unsigned_abs() as usize - 1] as i32;
        if x < 0 {
            -v
        } else {
            v
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &SignedPermutation) -> SignedPermutation {
        let mut images = [0i8; MAX_DEGREE];
        for (slot, &v) in images.iter_mut().zip(other.images()) {
            *slot = self.apply(v as i32) as i8;
        }
        SignedPermutation {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = [0i8; MAX_DEGREE];
        for (i, &v) in self.images().iter().enumerate() {
            let a = v.unsigned_abs() as usize - 1;
            let p = (i + 1) as i8;
            images[a] = if v < 0 { -p } else { p };
        }
        SignedPermutation {
            degree: self.degree,
            images,
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &SignedPermutation) -> Result<SignedPermutation> {
        g.compose(self)?.compose(&g.inverse())
    }

    pub fn negative_count(&self) -> usize {
        self.images().iter().filter(|&&v| v < 0).count()
    }

    /// Relabels every stored value through `f`, which must act on
    /// absolute values as a bijection of `1..=n` that commutes with
    /// negation.
    #[inline]
    pub(crate) fn map_values(&mut self, f: impl Fn(i8) -> i8) {
        let n = self.degree();
        for v in &mut self.images[..n] {
            *v = f(*v);
        }
    }

    /// The underlying unsigned permutation `i -> |η(i)|`.
    pub fn unsigned_part(&self) -> Permutation {
        let mut images = [0u8; MAX_DEGREE];
        for (slot, &v) in images.iter_mut().zip(self.images()) {
            *slot = v.unsigned_abs();
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    /// Every element of B_n, `2^n · n!` in total.
    pub fn all(n: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
        check_degree(n)?;
        Ok((1..=n as i64).permutations(n).flat_map(move |perm| {
            (0u32..1 << n).map(move |mask| {
                let imgs: Vec<i64> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                    .collect();
                SignedPermutation::from_images(&imgs).expect("valid by construction")
            })
        }))
    }

    /// Two-row rendering: the top row is `1..=n`, the bottom row the images.
    pub fn to_two_row(&self) -> String {
        let width = self
            .images()
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.degree().to_string().len());
        let top = (1..=self.degree())
            .map(|i| format!("{:>width$}", i))
            .join(" ");
        let bottom = self
            .images()
            .iter()
            .map(|v| format!("{:>width$}", v))
            .join(" ");
        format!("{top}\n{bottom}")
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation{:?}", self.images())
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images_i64().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<i64>::deserialize(d)?;
        SignedPermutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// An element of the symmetric group on `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().take(n).enumerate() {
            *slot = (i + 1) as u8;
        }
        Ok(Permutation {
            degree: n as u8,
            images,
        })
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        let mut out = [0u8; MAX_DEGREE];
        for (slot, &v) in out.iter_mut().zip(images) {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange {
                    index: v as i64,
                    degree: n,
                });
            }
            if seen[v - 1] {
                return Err(Error::NotBijective(format!(
                    "value {v} appears twice in {images:?}"
                )));
            }
            seen[v - 1] = true;
            *slot = v as u8;
        }
        Ok(Permutation {
            degree: n as u8,
            images: out,
        })
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::IndexOutOfRange {
                        index: a as i64,
                        degree: n,
                    });
                }
                if touched[a] {
                    return Err(Error::NotBijective(format!("{a} appears in two cycles")));
                }
                touched[a] = true;
                images[a - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree()]
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let mut images = [0u8; MAX_DEGREE];
        for (slot, &v) in images.iter_mut().zip(other.images()) {
            *slot = self.images[v as usize - 1];
        }
        Ok(Permutation {
            degree: self.degree,
            images,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = [0u8; MAX_DEGREE];
        for (i, &v) in self.images().iter().enumerate() {
            images[v as usize - 1] = (i + 1) as u8;
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    /// Swaps the values `a` and `b` wherever they occur, i.e. left
    /// multiplication by the transposition `(a b)`.
    #[inline]
    pub(crate) fn swap_values(&mut self, a: usize, b: usize) {
        let n = self.degree();
        for v in &mut self.images[..n] {
            if *v as usize == a {
                *v = b as u8;
            } else if *v as usize == b {
                *v = a as u8;
            }
        }
    }

    /// Cycles in ascending order of their minimum, each starting at it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// True iff this is a single cycle of length `n`.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        let mut x = 1;
        for step in 1..=n {
            x = self.apply(x);
            if x == 1 {
                return step == n;
            }
        }
        false
    }

    /// Sign of the permutation as an element of S_n.
    pub fn sign(&self) -> Sign {
        Sign::from_parity((self.degree() - self.cycle_count()) % 2 == 1)
    }

    /// The same permutation regarded as an element of B_n.
    pub fn to_signed(&self) -> SignedPermutation {
        let mut images = [0i8; MAX_DEGREE];
        for (slot, &v) in images.iter_mut().zip(self.images()) {
            *slot = v as i8;
        }
        SignedPermutation {
            degree: self.degree,
            images,
        }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images()
            .iter()
            .map(|&v| v as usize)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}
