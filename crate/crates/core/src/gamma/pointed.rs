use std::fmt;

use crate::enumeration::Multifunctor;
use crate::multicat::{power_e, BasedMulticategory, ObjectId};

/// A based map `m₊ → n₊`. `images[i - 1]` is the image of `i`, with `0` the
/// basepoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    pub m: usize,
    pub n: usize,
    pub images: Vec<usize>,
}

impl PointedMap {
    pub fn new(n: usize, images: Vec<usize>) -> Option<Self> {
        if images.iter().any(|&j| j > n) {
            return None;
        }
        Some(PointedMap {
            m: images.len(),
            n,
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap {
            m: n,
            n,
            images: (1..=n).collect(),
        }
    }

    /// `ρ_i: n₊ → 1₊`, sending `i` to 1 and everything else to the basepoint.
    pub fn projection(n: usize, i: usize) -> Self {
        PointedMap {
            m: n,
            n: 1,
            images: (1..=n).map(|j| usize::from(j == i)).collect(),
        }
    }

    /// `∇: n₊ → 1₊`, sending every non-base element to 1.
    pub fn fold(n: usize) -> Self {
        PointedMap {
            m: n,
            n: 1,
            images: vec![1; n],
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedMap) -> PointedMap {
        assert_eq!(first.n, self.m, "pointed maps are not composable");
        PointedMap {
            m: first.m,
            n: self.n,
            images: first.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|j| j.to_string()).collect();
        write!(f, "{}+ -> {}+ [{}]", self.m, self.n, imgs.join(","))
    }
}

/// All `(n+1)^m` based maps `m₊ → n₊`, lexicographically by images.
pub fn gamma_maps(m: usize, n: usize) -> Vec<PointedMap> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * (n + 1));
        for prefix in &out {
            for j in 0..=n {
                let mut v: Vec<usize> = prefix.clone();
                v.push(j);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|images| PointedMap { m, n, images })
        .collect()
}

/// The object of `Eⁿ` (a bitmask, coordinate `j` at bit `j - 1`) that
/// `φ*` assigns to `y`: coordinate `i` of the result is `y_{φ(i)}`, with
/// `y_0 = 0`.
pub fn restrict_object(phi: &PointedMap, y: u32) -> u32 {
    (1..=phi.m).fold(0, |x, i| match phi.apply(i) {
        0 => x,
        j => x | (((y >> (j - 1)) & 1) << (i - 1)),
    })
}

/// `φ*: Eⁿ → Eᵐ` for `φ: m₊ → n₊`, given `Eⁿ` and `Eᵐ` at the same cap.
pub fn restriction_multifunctor(
    phi: &PointedMap,
    source: &BasedMulticategory,
    target: &BasedMulticategory,
) -> Multifunctor {
    let object_map = source
        .objects()
        .map(|y| ObjectId(restrict_object(phi, y.0)))
        .collect();
    Multifunctor::thin(source, target, object_map).expect("coordinate sums are preserved")
}

/// `φ*` together with freshly built powers of `E`.
pub fn restriction_with_powers(phi: &PointedMap, cap: usize) -> (BasedMulticategory, BasedMulticategory, Multifunctor) {
    let source = power_e(phi.n, cap);
    let target = power_e(phi.m, cap);
    let r = restriction_multifunctor(phi, &source, &target);
    (source, target, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_counts() {
        assert_eq!(gamma_maps(1, 1).len(), 2);
        assert_eq!(gamma_maps(2, 1).len(), 4);
        assert_eq!(gamma_maps(0, 3).len(), 1);
        assert_eq!(gamma_maps(3, 2).len(), 27);
    }

    #[test]
    fn projection_sends_one_to_unit_vector() {
        for n in 1..=3 {
            for i in 1..=n {
                assert_eq!(restrict_object(&PointedMap::projection(n, i), 1), 1 << (i - 1));
            }
        }
    }

    #[test]
    fn fold_sends_one_to_diagonal() {
        assert_eq!(restrict_object(&PointedMap::fold(2), 1), 0b11);
        let (e, e2, r) = restriction_with_powers(&PointedMap::fold(2), 4);
        assert!(r.violations(&e, &e2, true).is_empty());
    }

    #[test]
    fn restriction_is_functorial() {
        let cap = 3;
        let powers: Vec<BasedMulticategory> = (0..=3).map(|n| power_e(n, cap)).collect();
        for m in 0..=3 {
            for n in 0..=3 {
                for p in 0..=3 {
                    for phi in gamma_maps(m, n) {
                        let phi_star = restriction_multifunctor(&phi, &powers[n], &powers[m]);
                        for psi in gamma_maps(n, p) {
                            let psi_star = restriction_multifunctor(&psi, &powers[p], &powers[n]);
                            let both = restriction_multifunctor(&psi.after(&phi), &powers[p], &powers[m]);
                            assert_eq!(both, phi_star.after(&psi_star));
                        }
                    }
                }
            }
        }
        for n in 0..=3 {
            let id = restriction_multifunctor(&PointedMap::identity(n), &powers[n], &powers[n]);
            assert_eq!(id, Multifunctor::identity(&powers[n]));
        }
    }
}
