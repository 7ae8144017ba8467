use serde::Serialize;

use super::{Permutation, Sign, SignedPermutation, SignedTransposition};

/// `p = (∏_{i ∈ flip_set} (i -i)) ∘ base` with `base` unsigned.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    /// Ascending.
    pub flip_set: Vec<usize>,
    pub base: Permutation,
}

impl NormalForm {
    pub fn inversions(&self) -> Vec<SignedTransposition> {
        self.flip_set
            .iter()
            .map(|&i| SignedTransposition::Inversion(i as u8))
            .collect()
    }

    pub fn recompose(&self) -> SignedPermutation {
        let mut p = self.base.to_signed();
        for t in self.inversions() {
            t.act_on(&mut p);
        }
        p
    }
}

pub fn normal_form(p: &SignedPermutation) -> NormalForm {
    let mut flip_set: Vec<usize> = p
        .images()
        .iter()
        .filter(|&&v| v < 0)
        .map(|v| v.unsigned_abs() as usize)
        .collect();
    flip_set.sort_unstable();
    NormalForm {
        flip_set,
        base: p.unsigned_part(),
    }
}

/// The projection B_n -> S_n forgetting signs.
pub fn phi_project(p: &SignedPermutation) -> Permutation {
    p.unsigned_part()
}

/// The homomorphism B_n -> {+, -} sending inversions to `-` and every
/// other reflection to `+`.
pub fn psi_sign(p: &SignedPermutation) -> Sign {
    Sign::from_parity(p.negative_count() % 2 == 1)
}
