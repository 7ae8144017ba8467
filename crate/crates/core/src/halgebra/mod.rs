//! Exact arithmetic in the hyperoctahedral group B_n.

mod cycle;
mod normal;
mod perm;
mod sign;
mod transposition;

pub use cycle::{
    classify_full_cycle, cycle_decompose, cycle_type, parse_cycle_notation, recompose_cycles,
    to_cycle_notation, CycleType, FullCycleClass, SignedCycle,
};
pub use normal::{normal_form, phi_project, psi_sign, NormalForm};
pub use perm::{Permutation, SignedPermutation};
pub use sign::Sign;
pub use transposition::{GeneratorSet, SignedTransposition};

/// Reflection length in B_n: `n` minus the number of even cycles.
pub fn reflection_length(p: &SignedPermutation) -> usize {
    p.degree() - cycle_decompose(p).iter().filter(|c| c.is_even()).count()
}

/// `product(word)` with the leftmost factor applied last.
pub fn product(word: &[SignedTransposition], n: usize) -> crate::Result<SignedPermutation> {
    let mut p = SignedPermutation::identity(n)?;
    for t in word.iter().rev() {
        if t.max_index() > n {
            return Err(crate::Error::IndexOutOfRange {
                index: t.max_index() as i64,
                degree: n,
            });
        }
        t.act_on(&mut p);
    }
    Ok(p)
}
