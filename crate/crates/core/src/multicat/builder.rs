use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use super::{ArrowId, ArrowInfo, Multicategory, ObjectId, RawMulticategory, StructureError};
use crate::perm::Perm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("unit of object {0} is not in its endo hom-set")]
    MissingUnit(String),
    #[error("composite lands outside the hom-set {0}")]
    MissingComposite(String),
    #[error("symmetric image lands outside the hom-set {0}")]
    MissingImage(String),
    #[error("duplicate arrow key in hom-set {0}")]
    DuplicateKey(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Operations a presentation supplies to [`build`]. Arrows are named by keys of
/// type `K`, unique within each hom-set.
pub trait Presentation {
    type Key: Clone + Eq + Hash;

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<Self::Key>;
    fn unit(&self, object: ObjectId) -> Self::Key;
    /// `γ(f; gs)`, where `f` has source `f_source`.
    fn compose(&self, f: &Self::Key, gs: &[&Self::Key]) -> Self::Key;
    /// `σ* f`, where `f` has source `source`.
    fn act(&self, f: &Self::Key, source: &[ObjectId], sigma: &Perm) -> Self::Key;
    fn label(&self, _key: &Self::Key) -> String {
        String::new()
    }
}

/// Tabulates a presentation: enumerates every profile up to `arity_cap`,
/// assigns arrow ids in canonical order (arity, source, target, key order) and
/// fills in units, symmetric actions and composition.
pub fn build<P: Presentation>(
    presentation: &P,
    objects: Vec<String>,
    arity_cap: usize,
) -> Result<Multicategory, BuildError> {
    let n_obj = objects.len();
    let mut arrows: Vec<ArrowInfo> = Vec::new();
    let mut keys: Vec<P::Key> = Vec::new();
    let mut index: HashMap<(Vec<ObjectId>, ObjectId), HashMap<P::Key, ArrowId>> = HashMap::new();

    for arity in 0..=arity_cap {
        for source in sources(n_obj, arity) {
            for t in 0..n_obj {
                let target = ObjectId(t as u32);
                let hom_keys = presentation.hom(&source, target);
                if hom_keys.is_empty() {
                    continue;
                }
                let mut local = HashMap::with_capacity(hom_keys.len());
                for key in hom_keys {
                    let id = ArrowId(arrows.len() as u32);
                    if local.insert(key.clone(), id).is_some() {
                        return Err(BuildError::DuplicateKey(describe(&objects, &source, target)));
                    }
                    arrows.push(ArrowInfo {
                        source: source.clone(),
                        target,
                        label: presentation.label(&key),
                    });
                    keys.push(key);
                }
                index.insert((source.clone(), target), local);
            }
        }
    }

    let lookup = |source: &[ObjectId], target: ObjectId, key: &P::Key| -> Option<ArrowId> {
        index
            .get(&(source.to_vec(), target))
            .and_then(|m| m.get(key))
            .copied()
    };

    let mut units = Vec::with_capacity(n_obj);
    for o in 0..n_obj {
        let a = ObjectId(o as u32);
        let key = presentation.unit(a);
        units.push(
            lookup(&[a], a, &key).ok_or_else(|| BuildError::MissingUnit(objects[o].clone()))?,
        );
    }

    let mut perms: Vec<Vec<Perm>> = Vec::new();
    for n in 0..=arity_cap {
        perms.push(Perm::all(n));
    }
    let mut sym = Vec::with_capacity(arrows.len());
    for (i, info) in arrows.iter().enumerate() {
        let mut images = Vec::with_capacity(perms[info.arity()].len());
        for sigma in &perms[info.arity()] {
            let key = presentation.act(&keys[i], &info.source, sigma);
            let source = sigma.permute(&info.source);
            images.push(lookup(&source, info.target, &key).ok_or_else(|| {
                BuildError::MissingImage(describe(&objects, &source, info.target))
            })?);
        }
        sym.push(images);
    }

    let mut by_target: Vec<Vec<ArrowId>> = vec![Vec::new(); n_obj];
    for (i, info) in arrows.iter().enumerate() {
        by_target[info.target.index()].push(ArrowId(i as u32));
    }
    for group in &mut by_target {
        group.sort_by_key(|id| (arrows[id.index()].arity(), *id));
    }

    let mut comp = HashMap::new();
    for (i, info) in arrows.iter().enumerate() {
        if info.arity() == 0 {
            continue;
        }
        let f = ArrowId(i as u32);
        let mut tuples = Vec::new();
        tuples_into(&arrows, &by_target, &info.source, arity_cap, &mut Vec::new(), &mut tuples);
        for gs in tuples {
            let g_keys: Vec<&P::Key> = gs.iter().map(|g| &keys[g.index()]).collect();
            let key = presentation.compose(&keys[i], &g_keys);
            let source: Vec<ObjectId> = gs
                .iter()
                .flat_map(|g| arrows[g.index()].source.iter().copied())
                .collect();
            let h = lookup(&source, info.target, &key).ok_or_else(|| {
                BuildError::MissingComposite(describe(&objects, &source, info.target))
            })?;
            let mut entry = Vec::with_capacity(gs.len() + 1);
            entry.push(f);
            entry.extend(gs);
            comp.insert(entry, h);
        }
    }

    Ok(Multicategory::from_raw(RawMulticategory {
        objects,
        arity_cap,
        arrows,
        units,
        sym,
        comp,
    })?)
}

fn tuples_into(
    arrows: &[ArrowInfo],
    by_target: &[Vec<ArrowId>],
    targets: &[ObjectId],
    budget: usize,
    current: &mut Vec<ArrowId>,
    out: &mut Vec<Vec<ArrowId>>,
) {
    let Some((&first, rest)) = targets.split_first() else {
        out.push(current.clone());
        return;
    };
    for &g in &by_target[first.index()] {
        let a = arrows[g.index()].arity();
        if a > budget {
            break;
        }
        current.push(g);
        tuples_into(arrows, by_target, rest, budget - a, current, out);
        current.pop();
    }
}

/// All source lists of the given arity over `n_obj` objects, lexicographically.
pub(crate) fn sources(n_obj: usize, arity: usize) -> Vec<Vec<ObjectId>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * n_obj);
        for prefix in &out {
            for o in 0..n_obj {
                let mut v = prefix.clone();
                v.push(ObjectId(o as u32));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn describe(objects: &[String], source: &[ObjectId], target: ObjectId) -> String {
    let src: Vec<&str> = source.iter().map(|o| objects[o.index()].as_str()).collect();
    format!("({}; {})", src.join(","), objects[target.index()])
}
