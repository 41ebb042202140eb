//! Permutations of small finite sets `{0, …, n-1}`.
//!
//! A permutation `σ` acts on multi-arrows on the right: `σ*` sends an arrow with
//! source `(a_0, …, a_{n-1})` to one with source `(a_{σ(0)}, …, a_{σ(n-1)})`, so
//! `(σ∘τ)* = τ* σ*`. Read semantically, input slot `i` of `σ*f` feeds slot
//! `σ(i)` of `f`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image list, `images[i] = σ(i)`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Rearranges `items` the way `σ*` rearranges a source list.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i].clone()).collect()
    }

    /// Lexicographic rank among all permutations of the same length.
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Inverse of [`Perm::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        Perm(digits.into_iter().map(|d| pool.remove(d)).collect())
    }

    /// All permutations of `{0, …, n-1}` in rank order.
    pub fn all(n: usize) -> Vec<Perm> {
        (0..factorial(n)).map(|r| Perm::unrank(n, r)).collect()
    }

    /// Block sum `τ_0 ⊕ … ⊕ τ_{k-1}` acting on concatenated blocks.
    pub fn block_sum(blocks: &[Perm]) -> Perm {
        let mut images = Vec::new();
        let mut offset = 0;
        for block in blocks {
            images.extend(block.0.iter().map(|&x| x + offset));
            offset += block.len();
        }
        Perm(images)
    }

    /// The permutation `π` with `γ(σ*f; g_0, …) = π* γ(f; g_{σ⁻¹(0)}, …)`, where
    /// `sizes[i]` is the arity of `g_i`.
    pub fn block_shuffle(sigma: &Perm, sizes: &[usize]) -> Perm {
        let k = sigma.len();
        assert_eq!(sizes.len(), k);
        let inv = sigma.inverse();
        // offset of f-slot j in the reordered composite
        let mut slot_offset = vec![0; k];
        let mut acc = 0;
        for j in 0..k {
            slot_offset[j] = acc;
            acc += sizes[inv.0[j]];
        }
        let mut images = Vec::with_capacity(acc);
        for i in 0..k {
            for t in 0..sizes[i] {
                images.push(slot_offset[sigma.0[i]] + t);
            }
        }
        Perm(images)
    }

    /// Transposition of adjacent positions `i`, `i+1` in a list of length `n`.
    pub fn adjacent(n: usize, i: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Perm(images)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_round_trip() {
        for n in 0..=5 {
            let all = Perm::all(n);
            assert_eq!(all.len(), factorial(n));
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.rank(), r);
            }
        }
        assert!(Perm::all(0)[0].is_identity());
    }

    #[test]
    fn right_action_convention() {
        let src = ['a', 'b', 'c'];
        let sigma = Perm::from_images(vec![1, 2, 0]).unwrap();
        let tau = Perm::from_images(vec![1, 0, 2]).unwrap();
        // (σ∘τ)* = τ* σ*
        let lhs = sigma.compose(&tau).permute(&src);
        let rhs = tau.permute(&sigma.permute(&src));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_shuffle_swaps_blocks() {
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        // blocks of sizes 2 and 1: block 0 lands after block 1
        assert_eq!(Perm::block_shuffle(&swap, &[2, 1]).images(), &[1, 2, 0]);
    }

    proptest! {
        #[test]
        fn compose_inverse_is_identity(n in 0usize..6, r in 0usize..720) {
            let p = Perm::unrank(n, r % factorial(n));
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }
    }
}
