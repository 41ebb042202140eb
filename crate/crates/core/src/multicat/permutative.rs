//! Finite permutative categories and the multicategory they underlie,
//! `M(a_1, …, a_n; b) = P(a_1 ⊗ ⋯ ⊗ a_n, b)`.

use thiserror::Error;

use super::builder::{build, BuildError, Presentation};
use super::{BasedMulticategory, ObjectId};
use crate::perm::Perm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermutativeError {
    #[error("category has no objects")]
    Empty,
    #[error("table {table} has the wrong shape")]
    Shape { table: &'static str },
    #[error("index out of range in {table}")]
    OutOfRange { table: &'static str },
    #[error("tensor of objects {0} and {1} is not among the objects")]
    NotClosed(String, String),
    #[error("category axiom fails: {0}")]
    Category(String),
    #[error("tensor is not a strict monoidal bifunctor: {0}")]
    Tensor(String),
    #[error("symmetry fails: {0}")]
    Symmetry(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// A small permutative category given by finite tables. Arrow `f` runs from
/// `arrow_ends[f].0` to `arrow_ends[f].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutativeCategory {
    pub objects: Vec<String>,
    pub unit: usize,
    pub arrow_ends: Vec<(usize, usize)>,
    pub arrow_labels: Vec<String>,
    pub identities: Vec<usize>,
    /// `compose[g][f] = g ∘ f` where composable.
    pub compose: Vec<Vec<Option<usize>>>,
    /// `tensor_objects[a][b] = a ⊗ b`; `None` marks a missing product.
    pub tensor_objects: Vec<Vec<Option<usize>>>,
    pub tensor_arrows: Vec<Vec<usize>>,
    /// `symmetry[a][b] = c_{a,b}: a ⊗ b → b ⊗ a`.
    pub symmetry: Vec<Vec<usize>>,
}

impl PermutativeCategory {
    /// A discrete category on `labels` with tensor `op` (a commutative monoid
    /// with identity `unit`); every symmetry is an identity.
    pub fn discrete(labels: &[&str], unit: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let n = labels.len();
        let objects: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let arrow_ends = (0..n).map(|a| (a, a)).collect();
        let arrow_labels = labels.iter().map(|l| format!("id_{l}")).collect();
        let identities = (0..n).collect();
        let compose = (0..n)
            .map(|g| (0..n).map(|f| (g == f).then_some(g)).collect())
            .collect();
        let tensor_objects = (0..n)
            .map(|a| (0..n).map(|b| Some(op(a, b))).collect())
            .collect();
        let tensor_arrows = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        let symmetry = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        PermutativeCategory {
            objects,
            unit,
            arrow_ends,
            arrow_labels,
            identities,
            compose,
            tensor_objects,
            tensor_arrows,
            symmetry,
        }
    }

    /// `Z/n` as a discrete permutative category under addition.
    pub fn discrete_cyclic(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        Self::discrete(&refs, 0, |a, b| (a + b) % n)
    }

    /// `{0, 1}` under `x·y = min(x + y, 1)`.
    pub fn saturating_pair() -> Self {
        Self::discrete(&["0", "1"], 0, |a, b| (a + b).min(1))
    }

    /// `B(Z/n)`: one object, automorphism group `Z/n`, tensor on arrows given
    /// by addition and trivial symmetry.
    pub fn delooped_cyclic(n: usize) -> Self {
        PermutativeCategory {
            objects: vec!["e".into()],
            unit: 0,
            arrow_ends: vec![(0, 0); n],
            arrow_labels: (0..n).map(|i| format!("g{i}")).collect(),
            identities: vec![0],
            compose: (0..n)
                .map(|g| (0..n).map(|f| Some((g + f) % n)).collect())
                .collect(),
            tensor_objects: vec![vec![Some(0)]],
            tensor_arrows: (0..n)
                .map(|f| (0..n).map(|g| (f + g) % n).collect())
                .collect(),
            symmetry: vec![vec![0]],
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_ends.len()
    }

    fn tensor_obj(&self, a: usize, b: usize) -> usize {
        self.tensor_objects[a][b].expect("validated closure")
    }

    fn tensor_obj_list(&self, objects: &[ObjectId]) -> usize {
        objects
            .iter()
            .fold(self.unit, |acc, o| self.tensor_obj(acc, o.index()))
    }

    fn tensor_arrow_list(&self, arrows: impl IntoIterator<Item = usize>) -> usize {
        arrows.into_iter().fold(self.identities[self.unit], |acc, f| {
            self.tensor_arrows[acc][f]
        })
    }

    fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].expect("composable arrows")
    }

    /// Arrows `a → b`.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrow_count())
            .filter(|&f| self.arrow_ends[f] == (a, b))
            .collect()
    }

    /// The coherence isomorphism `⊗_i a_{σ(i)} → ⊗_j a_j` moving the factor in
    /// position `i` to position `σ(i)`, assembled from adjacent symmetries.
    pub fn permutation_iso(&self, source: &[ObjectId], sigma: &Perm) -> usize {
        let mut order: Vec<usize> = sigma.images().to_vec();
        let mut result = self.identities[self.tensor_obj_list(&sigma.permute(source))];
        // bubble sort; each adjacent swap is 1 ⊗ c ⊗ 1
        let n = order.len();
        for pass in 0..n {
            for j in 0..n.saturating_sub(pass + 1) {
                if order[j] > order[j + 1] {
                    let objs: Vec<usize> = order.iter().map(|&i| source[i].index()).collect();
                    let prefix = objs[..j].iter().fold(self.unit, |acc, &o| self.tensor_obj(acc, o));
                    let suffix = objs[j + 2..]
                        .iter()
                        .fold(self.unit, |acc, &o| self.tensor_obj(acc, o));
                    let swap = self.tensor_arrow_list([
                        self.identities[prefix],
                        self.symmetry[objs[j]][objs[j + 1]],
                        self.identities[suffix],
                    ]);
                    result = self.comp(swap, result);
                    order.swap(j, j + 1);
                }
            }
        }
        result
    }

    /// Checks table shapes, category axioms, strict monoidality, and the
    /// symmetry axioms (involutive, natural, unital, hexagon).
    pub fn validate(&self) -> Result<(), PermutativeError> {
        let n = self.object_count();
        let m = self.arrow_count();
        if n == 0 {
            return Err(PermutativeError::Empty);
        }
        let shape = |ok: bool, table: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(PermutativeError::Shape { table })
            }
        };
        shape(self.unit < n, "unit")?;
        shape(self.arrow_labels.len() == m, "arrow_labels")?;
        shape(self.identities.len() == n, "identities")?;
        shape(
            self.compose.len() == m && self.compose.iter().all(|r| r.len() == m),
            "compose",
        )?;
        shape(
            self.tensor_objects.len() == n && self.tensor_objects.iter().all(|r| r.len() == n),
            "tensor_objects",
        )?;
        shape(
            self.tensor_arrows.len() == m && self.tensor_arrows.iter().all(|r| r.len() == m),
            "tensor_arrows",
        )?;
        shape(
            self.symmetry.len() == n && self.symmetry.iter().all(|r| r.len() == n),
            "symmetry",
        )?;
        for a in 0..n {
            for b in 0..n {
                if self.tensor_objects[a][b].is_none() {
                    return Err(PermutativeError::NotClosed(
                        self.objects[a].clone(),
                        self.objects[b].clone(),
                    ));
                }
            }
        }
        let range = |ok: bool, table: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(PermutativeError::OutOfRange { table })
            }
        };
        range(
            self.arrow_ends.iter().all(|&(a, b)| a < n && b < n),
            "arrow_ends",
        )?;
        range(self.identities.iter().all(|&f| f < m), "identities")?;
        range(
            self.compose.iter().flatten().flatten().all(|&f| f < m),
            "compose",
        )?;
        range(
            self.tensor_objects.iter().flatten().flatten().all(|&o| o < n),
            "tensor_objects",
        )?;
        range(self.tensor_arrows.iter().flatten().all(|&f| f < m), "tensor_arrows")?;
        range(self.symmetry.iter().flatten().all(|&f| f < m), "symmetry")?;

        let cat = |msg: String| Err(PermutativeError::Category(msg));
        for (a, &id) in self.identities.iter().enumerate() {
            if self.arrow_ends[id] != (a, a) {
                return cat(format!("identity of {} has wrong ends", self.objects[a]));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.arrow_ends[g].0 == self.arrow_ends[f].1;
                match (composable, self.compose[g][f]) {
                    (true, None) => return cat(format!("missing composite {g}∘{f}")),
                    (false, Some(_)) => return cat(format!("composite {g}∘{f} of non-composable arrows")),
                    (true, Some(h)) => {
                        if self.arrow_ends[h] != (self.arrow_ends[f].0, self.arrow_ends[g].1) {
                            return cat(format!("composite {g}∘{f} has wrong ends"));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..m {
            let (a, b) = self.arrow_ends[f];
            if self.comp(self.identities[b], f) != f || self.comp(f, self.identities[a]) != f {
                return cat(format!("unit law fails at arrow {f}"));
            }
        }
        for h in 0..m {
            for g in (0..m).filter(|&g| self.arrow_ends[g].1 == self.arrow_ends[h].0) {
                for f in (0..m).filter(|&f| self.arrow_ends[f].1 == self.arrow_ends[g].0) {
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f) {
                        return cat(format!("associativity fails at {h},{g},{f}"));
                    }
                }
            }
        }

        let tensor = |msg: String| Err(PermutativeError::Tensor(msg));
        let e = self.unit;
        for a in 0..n {
            if self.tensor_obj(e, a) != a || self.tensor_obj(a, e) != a {
                return tensor(format!("unit is not strict at {}", self.objects[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    let l = self.tensor_obj(self.tensor_obj(a, b), c);
                    let r = self.tensor_obj(a, self.tensor_obj(b, c));
                    if l != r {
                        return tensor("object tensor is not strictly associative".into());
                    }
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let (fa, fb) = self.arrow_ends[f];
                let (ga, gb) = self.arrow_ends[g];
                let fg = self.tensor_arrows[f][g];
                if self.arrow_ends[fg] != (self.tensor_obj(fa, ga), self.tensor_obj(fb, gb)) {
                    return tensor(format!("arrow tensor {f}⊗{g} has wrong ends"));
                }
            }
            let id_e = self.identities[e];
            if self.tensor_arrows[id_e][f] != f || self.tensor_arrows[f][id_e] != f {
                return tensor(format!("unit is not strict on arrow {f}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let t = self.tensor_arrows[self.identities[a]][self.identities[b]];
                if t != self.identities[self.tensor_obj(a, b)] {
                    return tensor("tensor does not preserve identities".into());
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                for h in 0..m {
                    let l = self.tensor_arrows[self.tensor_arrows[f][g]][h];
                    let r = self.tensor_arrows[f][self.tensor_arrows[g][h]];
                    if l != r {
                        return tensor("arrow tensor is not strictly associative".into());
                    }
                }
            }
        }
        // interchange: (f' ∘ f) ⊗ (g' ∘ g) = (f' ⊗ g') ∘ (f ⊗ g)
        for f in 0..m {
            for f2 in (0..m).filter(|&x| self.arrow_ends[x].0 == self.arrow_ends[f].1) {
                for g in 0..m {
                    for g2 in (0..m).filter(|&x| self.arrow_ends[x].0 == self.arrow_ends[g].1) {
                        let l = self.tensor_arrows[self.comp(f2, f)][self.comp(g2, g)];
                        let r = self.comp(self.tensor_arrows[f2][g2], self.tensor_arrows[f][g]);
                        if l != r {
                            return tensor("interchange law fails".into());
                        }
                    }
                }
            }
        }

        let sym = |msg: String| Err(PermutativeError::Symmetry(msg));
        for a in 0..n {
            if self.symmetry[e][a] != self.identities[a] {
                return sym(format!("c(e,{}) is not the identity", self.objects[a]));
            }
            for b in 0..n {
                let c = self.symmetry[a][b];
                let (ab, ba) = (self.tensor_obj(a, b), self.tensor_obj(b, a));
                if self.arrow_ends[c] != (ab, ba) {
                    return sym(format!("c({},{}) has wrong ends", self.objects[a], self.objects[b]));
                }
                if self.comp(self.symmetry[b][a], c) != self.identities[ab] {
                    return sym("symmetry is not involutive".into());
                }
                // hexagon: c(a, b⊗x) = (1_b ⊗ c(a,x)) ∘ (c(a,b) ⊗ 1_x)
                for x in 0..n {
                    let lhs = self.symmetry[a][self.tensor_obj(b, x)];
                    let rhs = self.comp(
                        self.tensor_arrows[self.identities[b]][self.symmetry[a][x]],
                        self.tensor_arrows[c][self.identities[x]],
                    );
                    if lhs != rhs {
                        return sym("hexagon identity fails".into());
                    }
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let (fa, fb) = self.arrow_ends[f];
                let (ga, gb) = self.arrow_ends[g];
                let lhs = self.comp(self.symmetry[fb][gb], self.tensor_arrows[f][g]);
                let rhs = self.comp(self.tensor_arrows[g][f], self.symmetry[fa][ga]);
                if lhs != rhs {
                    return sym("symmetry is not natural".into());
                }
            }
        }
        Ok(())
    }
}

struct Underlying<'a>(&'a PermutativeCategory);

impl Presentation for Underlying<'_> {
    type Key = usize;

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<usize> {
        let p = self.0;
        p.hom(p.tensor_obj_list(source), target.index())
    }

    fn unit(&self, o: ObjectId) -> usize {
        self.0.identities[o.index()]
    }

    fn compose(&self, f: &usize, gs: &[&usize]) -> usize {
        let p = self.0;
        p.comp(*f, p.tensor_arrow_list(gs.iter().map(|g| **g)))
    }

    fn act(&self, f: &usize, source: &[ObjectId], sigma: &Perm) -> usize {
        let p = self.0;
        p.comp(*f, p.permutation_iso(source, sigma))
    }

    fn label(&self, key: &usize) -> String {
        self.0.arrow_labels[*key].clone()
    }
}

/// The multicategory underlying a permutative category, based at the unit
/// object with `μ_n = 1_e`.
pub fn from_permutative(
    p: &PermutativeCategory,
    arity_cap: usize,
) -> Result<BasedMulticategory, PermutativeError> {
    p.validate()?;
    let m = build(&Underlying(p), p.objects.clone(), arity_cap)?;
    let e = ObjectId(p.unit as u32);
    let id_e = p.identities[p.unit];
    let mu = (0..=arity_cap)
        .map(|k| {
            let src = vec![e; k];
            let keys = p.hom(p.unit, p.unit);
            let pos = keys.iter().position(|&f| f == id_e).unwrap();
            m.hom(&src, e)[pos]
        })
        .collect();
    Ok(BasedMulticategory::new(m, e, mu).expect("unit object carries the identity monoid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_inputs_validate() {
        PermutativeCategory::discrete_cyclic(2).validate().unwrap();
        PermutativeCategory::saturating_pair().validate().unwrap();
        PermutativeCategory::delooped_cyclic(3).validate().unwrap();
    }

    #[test]
    fn non_closed_tensor_is_rejected() {
        let mut p = PermutativeCategory::discrete_cyclic(2);
        p.tensor_objects[1][1] = None;
        assert!(matches!(p.validate(), Err(PermutativeError::NotClosed(..))));
        assert!(from_permutative(&p, 3).is_err());
    }

    #[test]
    fn non_involutive_symmetry_is_rejected() {
        // B(Z/3) with c = 1 is natural but c ∘ c ≠ id
        let mut p = PermutativeCategory::delooped_cyclic(3);
        p.symmetry[0][0] = 1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn discrete_z2_hom_sets_follow_parity() {
        let m = from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap();
        // oracle: |M(a_1..a_k; b)| = 1 iff Σ a_i ≡ b (mod 2)
        for k in 0..=4usize {
            for bits in 0..(1u32 << k) {
                let src: Vec<ObjectId> = (0..k).map(|j| ObjectId(bits >> j & 1)).collect();
                for b in 0..2u32 {
                    let expected = (bits.count_ones() % 2 == b) as usize;
                    assert_eq!(m.hom(&src, ObjectId(b)).len(), expected);
                }
            }
        }
    }

    #[test]
    fn delooped_z3_hom_sets_are_z3() {
        let m = from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
        for k in 0..=4 {
            assert_eq!(m.hom(&vec![ObjectId(0); k], ObjectId(0)).len(), 3);
        }
    }
}
