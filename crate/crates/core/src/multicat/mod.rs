//! Finite, arity-capped symmetric multicategories.
//!
//! Multi-hom sets are stored for every profile `(a_1, …, a_n; b)` with
//! `n ≤ arity_cap`. Composition `γ(f; g_1, …, g_k)` is tabulated whenever the
//! composite arity fits under the cap; the symmetric-group action is tabulated
//! for every arrow and every permutation of its inputs (see [`crate::perm`] for
//! the variance convention).

mod algebra;
mod builder;
mod constructors;
mod permutative;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use thiserror::Error;

use crate::perm::{factorial, Perm};

pub use algebra::{
    module_check, module_data, modules_of, monoid_check, monoid_data, AlgebraError, ModuleDatum,
    ModulesOf,
};
pub use builder::build;
pub use constructors::{
    build_e, build_i, build_terminal, build_unit_u, cartesian_product, power_e, truncate, wedge,
    ConstructionError, E_MODULE, E_MONOID,
};
pub use permutative::{from_permutative, PermutativeCategory, PermutativeError};
pub use validate::{validate_multicategory, StructuralIssue, ValidationReport, Violation};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub u32);

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub u32);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowInfo {
    pub source: Vec<ObjectId>,
    pub target: ObjectId,
    pub label: String,
}

impl ArrowInfo {
    pub fn arity(&self) -> usize {
        self.source.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("multicategory has no objects")]
    NoObjects,
    #[error("arity cap must be positive")]
    ZeroArityCap,
    #[error("arrow {arrow} refers to unknown object {object}")]
    UnknownObject { arrow: usize, object: u32 },
    #[error("arrow {arrow} has arity {arity} above the cap {cap}")]
    ArityAboveCap { arrow: usize, arity: usize, cap: usize },
    #[error("unit table has {found} entries for {expected} objects")]
    UnitCount { expected: usize, found: usize },
    #[error("unknown arrow id {0}")]
    UnknownArrow(u32),
    #[error("arrow {arrow} has {found} symmetric images, expected {expected}")]
    SymmetryCount { arrow: usize, expected: usize, found: usize },
    #[error("basepoint object {0} out of range")]
    UnknownBasepoint(u32),
    #[error("monoid list has {found} entries, expected {expected}")]
    MonoidCount { expected: usize, found: usize },
}

/// Raw tables, as read from a document or assembled by hand. Turned into a
/// [`Multicategory`] by [`Multicategory::from_raw`], which checks only that
/// every id is in range; the axioms are checked by [`validate_multicategory`].
#[derive(Clone, Debug)]
pub struct RawMulticategory {
    pub objects: Vec<String>,
    pub arity_cap: usize,
    pub arrows: Vec<ArrowInfo>,
    pub units: Vec<ArrowId>,
    /// Per arrow, its image under every permutation of its inputs, by rank.
    pub sym: Vec<Vec<ArrowId>>,
    /// Keys are `[f, g_1, …, g_k]`.
    pub comp: HashMap<Vec<ArrowId>, ArrowId>,
}

#[derive(Clone, Debug)]
pub struct Multicategory {
    objects: Vec<String>,
    arity_cap: usize,
    arrows: Vec<ArrowInfo>,
    hom: FxHashMap<Vec<ObjectId>, FxHashMap<ObjectId, Vec<ArrowId>>>,
    units: Vec<ArrowId>,
    sym: Vec<Vec<ArrowId>>,
    comp: FxHashMap<Vec<ArrowId>, ArrowId>,
    /// Arrows grouped by target, each group ordered by (arity, id).
    by_target: Vec<Vec<ArrowId>>,
}

impl Multicategory {
    pub fn from_raw(raw: RawMulticategory) -> Result<Self, StructureError> {
        let RawMulticategory {
            objects,
            arity_cap,
            arrows,
            units,
            sym,
            comp,
        } = raw;
        if objects.is_empty() {
            return Err(StructureError::NoObjects);
        }
        if arity_cap == 0 {
            return Err(StructureError::ZeroArityCap);
        }
        let n_obj = objects.len() as u32;
        for (i, a) in arrows.iter().enumerate() {
            for o in a.source.iter().chain(std::iter::once(&a.target)) {
                if o.0 >= n_obj {
                    return Err(StructureError::UnknownObject {
                        arrow: i,
                        object: o.0,
                    });
                }
            }
            if a.arity() > arity_cap {
                return Err(StructureError::ArityAboveCap {
                    arrow: i,
                    arity: a.arity(),
                    cap: arity_cap,
                });
            }
        }
        let n_arr = arrows.len() as u32;
        let check = |id: &ArrowId| {
            if id.0 >= n_arr {
                Err(StructureError::UnknownArrow(id.0))
            } else {
                Ok(())
            }
        };
        if units.len() != objects.len() {
            return Err(StructureError::UnitCount {
                expected: objects.len(),
                found: units.len(),
            });
        }
        units.iter().try_for_each(check)?;
        if sym.len() != arrows.len() {
            return Err(StructureError::SymmetryCount {
                arrow: sym.len(),
                expected: arrows.len(),
                found: sym.len(),
            });
        }
        for (i, images) in sym.iter().enumerate() {
            let expected = factorial(arrows[i].arity());
            if images.len() != expected {
                return Err(StructureError::SymmetryCount {
                    arrow: i,
                    expected,
                    found: images.len(),
                });
            }
            images.iter().try_for_each(check)?;
        }
        for (key, value) in &comp {
            key.iter().try_for_each(check)?;
            check(value)?;
        }

        let mut hom: FxHashMap<Vec<ObjectId>, FxHashMap<ObjectId, Vec<ArrowId>>> =
            FxHashMap::default();
        let mut by_target = vec![Vec::new(); objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            let id = ArrowId(i as u32);
            hom.entry(a.source.clone())
                .or_default()
                .entry(a.target)
                .or_default()
                .push(id);
            by_target[a.target.index()].push(id);
        }
        for group in &mut by_target {
            group.sort_by_key(|id| (arrows[id.index()].arity(), *id));
        }
        Ok(Multicategory {
            objects,
            arity_cap,
            arrows,
            hom,
            units,
            sym,
            comp: comp.into_iter().collect(),
            by_target,
        })
    }

    pub fn to_raw(&self) -> RawMulticategory {
        RawMulticategory {
            objects: self.objects.clone(),
            arity_cap: self.arity_cap,
            arrows: self.arrows.clone(),
            units: self.units.clone(),
            sym: self.sym.clone(),
            comp: self.comp.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len() as u32).map(ObjectId)
    }

    pub fn object_label(&self, o: ObjectId) -> &str {
        &self.objects[o.index()]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, label: &str) -> Option<ObjectId> {
        self.objects
            .iter()
            .position(|l| l == label)
            .map(|i| ObjectId(i as u32))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, f: ArrowId) -> &ArrowInfo {
        &self.arrows[f.index()]
    }

    pub fn source(&self, f: ArrowId) -> &[ObjectId] {
        &self.arrows[f.index()].source
    }

    pub fn target(&self, f: ArrowId) -> ObjectId {
        self.arrows[f.index()].target
    }

    pub fn arity(&self, f: ArrowId) -> usize {
        self.arrows[f.index()].arity()
    }

    /// The multi-hom set `M(source; target)`, in canonical order.
    pub fn hom(&self, source: &[ObjectId], target: ObjectId) -> &[ArrowId] {
        self.hom
            .get(source)
            .and_then(|m| m.get(&target))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// All arrows into `target`, ordered by arity.
    pub fn arrows_into(&self, target: ObjectId) -> &[ArrowId] {
        &self.by_target[target.index()]
    }

    pub fn unit(&self, a: ObjectId) -> ArrowId {
        self.units[a.index()]
    }

    pub fn is_unit(&self, f: ArrowId) -> bool {
        self.arity(f) == 1 && self.units[self.source(f)[0].index()] == f
    }

    /// `σ* f`.
    pub fn act(&self, f: ArrowId, sigma: &Perm) -> ArrowId {
        self.sym[f.index()][sigma.rank()]
    }

    pub(crate) fn sym_images(&self, f: ArrowId) -> &[ArrowId] {
        &self.sym[f.index()]
    }

    /// `γ(f; gs)`. Nullary `f` composes with the empty list to itself; `None` if
    /// the entry is absent (arity above cap, mismatched profiles, or a gap in
    /// the table).
    pub fn compose(&self, f: ArrowId, gs: &[ArrowId]) -> Option<ArrowId> {
        if gs.is_empty() && self.arity(f) == 0 {
            return Some(f);
        }
        const STACK: usize = 8;
        if gs.len() < STACK {
            let mut key = [ArrowId(0); STACK];
            key[0] = f;
            key[1..=gs.len()].copy_from_slice(gs);
            return self.comp.get(&key[..=gs.len()]).copied();
        }
        let mut key = Vec::with_capacity(gs.len() + 1);
        key.push(f);
        key.extend_from_slice(gs);
        self.comp.get(&key).copied()
    }

    /// Lookup with a caller-provided key `[f, g_1, …, g_k]`.
    pub fn compose_key(&self, key: &[ArrowId]) -> Option<ArrowId> {
        if key.len() == 1 && self.arity(key[0]) == 0 {
            return Some(key[0]);
        }
        self.comp.get(key).copied()
    }

    pub(crate) fn comp_table(&self) -> &FxHashMap<Vec<ArrowId>, ArrowId> {
        &self.comp
    }

    /// Every nonempty hom-set, in canonical profile order.
    pub fn profiles(&self) -> Vec<(Vec<ObjectId>, ObjectId)> {
        let mut out: Vec<(Vec<ObjectId>, ObjectId)> = self
            .hom
            .iter()
            .flat_map(|(src, m)| m.keys().map(move |t| (src.clone(), *t)))
            .collect();
        out.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
        out
    }

    /// Tuples `(g_1, …, g_k)` with `target(g_i) = targets[i]` and total arity
    /// at most `budget`, in lexicographic order.
    pub fn tuples_into(&self, targets: &[ObjectId], budget: usize) -> Vec<Vec<ArrowId>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(targets.len());
        self.tuples_rec(targets, budget, &mut current, &mut out);
        out
    }

    fn tuples_rec(
        &self,
        targets: &[ObjectId],
        budget: usize,
        current: &mut Vec<ArrowId>,
        out: &mut Vec<Vec<ArrowId>>,
    ) {
        let Some((&first, rest)) = targets.split_first() else {
            out.push(current.clone());
            return;
        };
        for &g in self.arrows_into(first) {
            let a = self.arity(g);
            if a > budget {
                break;
            }
            current.push(g);
            self.tuples_rec(rest, budget - a, current, out);
            current.pop();
        }
    }

    /// SHA-256 of a canonical encoding of every table, as lowercase hex.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("cap {}\n", self.arity_cap));
        for label in &self.objects {
            h.update(format!("object {label:?}\n"));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let src: Vec<String> = a.source.iter().map(|o| o.0.to_string()).collect();
            h.update(format!(
                "arrow {i} [{}] {} {:?} sym {:?}\n",
                src.join(","),
                a.target.0,
                a.label,
                self.sym[i].iter().map(|x| x.0).collect::<Vec<_>>()
            ));
        }
        h.update(format!("units {:?}\n", self.units.iter().map(|x| x.0).collect::<Vec<_>>()));
        let mut entries: Vec<(&Vec<ArrowId>, &ArrowId)> = self.comp.iter().collect();
        entries.sort();
        for (k, v) in entries {
            h.update(format!("comp {:?} {}\n", k.iter().map(|x| x.0).collect::<Vec<_>>(), v.0));
        }
        hex::encode(h.finalize())
    }

    /// Canonical profile key `"a1,a2|b"` used by the document format.
    pub fn profile_key(&self, source: &[ObjectId], target: ObjectId) -> String {
        let src: Vec<&str> = source.iter().map(|o| self.object_label(*o)).collect();
        format!("{}|{}", src.join(","), self.object_label(target))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasedError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("monoid arrow mu_{n} has the wrong profile")]
    MonoidProfile { n: usize },
}

/// A multicategory with a chosen commutative monoid `(b, μ_0, …, μ_cap)`.
#[derive(Clone, Debug)]
pub struct BasedMulticategory {
    base: Multicategory,
    basepoint: ObjectId,
    mu: Vec<ArrowId>,
}

impl BasedMulticategory {
    pub fn new(
        base: Multicategory,
        basepoint: ObjectId,
        mu: Vec<ArrowId>,
    ) -> Result<Self, BasedError> {
        if basepoint.index() >= base.object_count() {
            return Err(StructureError::UnknownBasepoint(basepoint.0).into());
        }
        if mu.len() != base.arity_cap() + 1 {
            return Err(StructureError::MonoidCount {
                expected: base.arity_cap() + 1,
                found: mu.len(),
            }
            .into());
        }
        for (n, &m) in mu.iter().enumerate() {
            if m.index() >= base.arrow_count() {
                return Err(StructureError::UnknownArrow(m.0).into());
            }
            let info = base.arrow(m);
            if info.target != basepoint
                || info.arity() != n
                || info.source.iter().any(|&o| o != basepoint)
            {
                return Err(BasedError::MonoidProfile { n });
            }
        }
        Ok(BasedMulticategory {
            base,
            basepoint,
            mu,
        })
    }

    pub fn multicategory(&self) -> &Multicategory {
        &self.base
    }

    pub fn basepoint(&self) -> ObjectId {
        self.basepoint
    }

    pub fn mu(&self, n: usize) -> ArrowId {
        self.mu[n]
    }

    pub fn mus(&self) -> &[ArrowId] {
        &self.mu
    }

    /// Digest of the tables together with the basepoint monoid.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.base.digest());
        h.update(format!(
            " based {} {:?}",
            self.basepoint.0,
            self.mu.iter().map(|x| x.0).collect::<Vec<_>>()
        ));
        hex::encode(h.finalize())
    }
}

impl Deref for BasedMulticategory {
    type Target = Multicategory;

    fn deref(&self) -> &Multicategory {
        &self.base
    }
}
