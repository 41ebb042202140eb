//! JSON input documents: builtin names, explicit multicategory tables and
//! permutative categories.
//!
//! Hom tables are keyed by profile strings `"a1,a2|b"`, composites by
//! `"f(g1,g2)"`, permutative tables by `"x,y"`. Maps serialize with sorted
//! keys and arrow lists are sorted, so [`InputDocument::to_canonical_json`]
//! is idempotent and [`InputDocument::digest`] is stable.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::multicat::{
    build_e, build_i, build_terminal, build_unit_u, from_permutative, power_e, truncate, wedge,
    ArrowId, ArrowInfo, BasedError, BasedMulticategory, ConstructionError, Multicategory, ObjectId,
    PermutativeCategory, PermutativeError, RawMulticategory, StructureError,
};
use crate::perm::factorial;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_ARITY_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("not a valid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Based(#[from] BasedError),
    #[error(transparent)]
    Permutative(#[from] PermutativeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("document has arity cap {found}, cannot raise it to {requested}")]
    CapTooLarge { found: usize, requested: usize },
}

fn schema<T>(msg: impl Into<String>) -> Result<T, DocumentError> {
    Err(DocumentError::Schema(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_cap: Option<usize>,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Body {
    Builtin(BuiltinDoc),
    Multicategory(MulticategoryDoc),
    Permutative(PermutativeDoc),
}

/// One of `terminal`, `E`, `E^n` (with `n`), `I`, `u`, `wedge(E,E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltinDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticategoryDoc {
    pub objects: Vec<String>,
    pub basepoint: String,
    /// `μ_0, …, μ_cap`.
    pub mu: Vec<String>,
    pub hom: BTreeMap<String, Vec<String>>,
    pub units: BTreeMap<String, String>,
    /// Images of an arrow under every permutation of its inputs, by rank.
    /// Arrows fixed by every permutation may be left out.
    #[serde(default)]
    pub sym: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub comp: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutativeDoc {
    pub objects: Vec<String>,
    pub unit: String,
    /// `"a|b"` to the arrows `a → b`.
    pub hom: BTreeMap<String, Vec<String>>,
    pub identities: BTreeMap<String, String>,
    /// `"g,f"` to `g ∘ f`.
    pub compose: BTreeMap<String, String>,
    pub tensor_objects: BTreeMap<String, String>,
    pub tensor_arrows: BTreeMap<String, String>,
    /// `"a,b"` to the symmetry `a ⊗ b → b ⊗ a`.
    pub symmetry: BTreeMap<String, String>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || ",|()".contains(c))
}

fn split_pair(key: &str) -> Result<(&str, &str), DocumentError> {
    match key.split_once(',') {
        Some((a, b)) if !b.contains(',') => Ok((a, b)),
        _ => schema(format!("key {key:?} is not a pair \"x,y\"")),
    }
}

fn split_list(s: &str) -> Vec<&str> {
    if s.is_empty() {
        Vec::new()
    } else {
        s.split(',').collect()
    }
}

/// Name lookup for objects and arrows.
struct Names(HashMap<String, usize>);

impl Names {
    fn new<'a>(names: impl IntoIterator<Item = &'a String>, what: &str) -> Result<Self, DocumentError> {
        let mut map = HashMap::new();
        for (i, n) in names.into_iter().enumerate() {
            if !valid_name(n) {
                return schema(format!("{what} name {n:?} is empty or contains one of \",|()\" or whitespace"));
            }
            if map.insert(n.clone(), i).is_some() {
                return schema(format!("duplicate {what} {n:?}"));
            }
        }
        Ok(Names(map))
    }

    fn get(&self, name: &str, what: &str) -> Result<usize, DocumentError> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| DocumentError::Schema(format!("unknown {what} {name:?}")))
    }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: InputDocument = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Version(doc.schema_version));
        }
        Ok(doc.canonical())
    }

    pub fn builtin(name: &str, n: Option<usize>) -> Self {
        InputDocument {
            schema_version: SCHEMA_VERSION,
            arity_cap: None,
            body: Body::Builtin(BuiltinDoc {
                name: name.into(),
                n,
            }),
        }
    }

    /// Sorts every arrow list.
    fn canonical(mut self) -> Self {
        let hom = match &mut self.body {
            Body::Builtin(_) => return self,
            Body::Multicategory(m) => &mut m.hom,
            Body::Permutative(p) => &mut p.hom,
        };
        for arrows in hom.values_mut() {
            arrows.sort();
        }
        self
    }

    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self.clone().canonical()).expect("documents serialize");
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        text
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    /// The cap the document asks for: `requested`, else its own, else 4.
    pub fn effective_cap(&self, requested: Option<usize>) -> usize {
        requested.or(self.arity_cap).unwrap_or(DEFAULT_ARITY_CAP)
    }

    /// Builds the based multicategory. Explicit tables are truncated when a
    /// smaller cap is requested and cannot be extended.
    pub fn build(&self, requested_cap: Option<usize>) -> Result<BasedMulticategory, DocumentError> {
        let cap = self.effective_cap(requested_cap);
        match &self.body {
            Body::Builtin(b) => build_builtin(b, cap),
            Body::Permutative(p) => Ok(from_permutative(&p.to_category()?, cap)?),
            Body::Multicategory(m) => {
                let found = self
                    .arity_cap
                    .ok_or_else(|| DocumentError::Schema("multicategory documents need \"arity_cap\"".into()))?;
                if cap > found {
                    return Err(DocumentError::CapTooLarge {
                        found,
                        requested: cap,
                    });
                }
                let full = m.build(found)?;
                Ok(if cap < found { truncate(&full, cap) } else { full })
            }
        }
    }
}

fn build_builtin(b: &BuiltinDoc, cap: usize) -> Result<BasedMulticategory, DocumentError> {
    Ok(match (b.name.as_str(), b.n) {
        ("terminal", None) => build_terminal(cap),
        ("E", None) => build_e(cap),
        ("E^n", Some(n)) => power_e(n, cap),
        ("I", None) => build_i(cap),
        ("u", None) => build_unit_u(cap),
        ("wedge(E,E)", None) => wedge(&build_e(cap), &build_e(cap))?,
        ("E^n", None) => return schema("builtin E^n needs \"n\""),
        (name, Some(_)) if BUILTINS.contains(&name) => {
            return schema(format!("builtin {name} takes no \"n\""))
        }
        (name, _) => return schema(format!("unknown builtin {name:?}")),
    })
}

pub const BUILTINS: [&str; 6] = ["terminal", "E", "E^n", "I", "u", "wedge(E,E)"];

impl MulticategoryDoc {
    fn build(&self, cap: usize) -> Result<BasedMulticategory, DocumentError> {
        let objects = Names::new(&self.objects, "object")?;
        // arrows in canonical order: arity, source, target, name
        let mut arrows: Vec<(Vec<usize>, usize, String)> = Vec::new();
        for (key, names) in &self.hom {
            let Some((src, tgt)) = key.split_once('|') else {
                return schema(format!("hom key {key:?} is not a profile \"a1,a2|b\""));
            };
            let source = split_list(src)
                .into_iter()
                .map(|o| objects.get(o, "object"))
                .collect::<Result<Vec<usize>, _>>()?;
            let target = objects.get(tgt, "object")?;
            for n in names {
                arrows.push((source.clone(), target, n.clone()));
            }
        }
        arrows.sort_by(|a, b| (a.0.len(), &a.0, a.1, &a.2).cmp(&(b.0.len(), &b.0, b.1, &b.2)));
        let arrow_names = Names::new(arrows.iter().map(|a| &a.2), "arrow")?;
        let arrow = |n: &str| arrow_names.get(n, "arrow").map(|i| ArrowId(i as u32));

        let units = self
            .objects
            .iter()
            .map(|o| match self.units.get(o) {
                Some(u) => arrow(u),
                None => schema(format!("object {o:?} has no unit")),
            })
            .collect::<Result<Vec<ArrowId>, _>>()?;
        if let Some(extra) = self.units.keys().find(|o| objects.get(o, "object").is_err()) {
            return schema(format!("unit given for unknown object {extra:?}"));
        }
        let mut sym = arrows
            .iter()
            .enumerate()
            .map(|(i, (src, _, _))| vec![ArrowId(i as u32); factorial(src.len())])
            .collect::<Vec<_>>();
        for (name, images) in &self.sym {
            let f = arrow(name)?;
            sym[f.index()] = images.iter().map(|n| arrow(n)).collect::<Result<_, _>>()?;
        }
        let mut comp = HashMap::new();
        for (key, value) in &self.comp {
            let parsed = key
                .strip_suffix(')')
                .and_then(|k| k.split_once('('))
                .ok_or_else(|| DocumentError::Schema(format!("composite key {key:?} is not \"f(g1,g2)\"")))?;
            let mut k = vec![arrow(parsed.0)?];
            for g in split_list(parsed.1) {
                k.push(arrow(g)?);
            }
            comp.insert(k, arrow(value)?);
        }
        let raw = RawMulticategory {
            objects: self.objects.clone(),
            arity_cap: cap,
            arrows: arrows
                .iter()
                .map(|(src, tgt, name)| ArrowInfo {
                    source: src.iter().map(|&o| ObjectId(o as u32)).collect(),
                    target: ObjectId(*tgt as u32),
                    label: name.clone(),
                })
                .collect(),
            units,
            sym,
            comp,
        };
        let m = Multicategory::from_raw(raw)?;
        let basepoint = ObjectId(objects.get(&self.basepoint, "object")? as u32);
        let mu = self.mu.iter().map(|n| arrow(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(BasedMulticategory::new(m, basepoint, mu)?)
    }

    /// Writes out any based multicategory. Labels are kept when they are
    /// usable names, otherwise replaced by `o{i}` and `f{i}`.
    pub fn from_multicategory(m: &BasedMulticategory) -> Self {
        let names = |labels: Vec<String>, prefix: &str| -> Vec<String> {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            let usable = sorted.len() == labels.len() && labels.iter().all(|l| valid_name(l));
            if usable {
                labels
            } else {
                (0..labels.len()).map(|i| format!("{prefix}{i}")).collect()
            }
        };
        let raw = m.to_raw();
        let objects = names(raw.objects.clone(), "o");
        let arrows = names(raw.arrows.iter().map(|a| a.label.clone()).collect(), "f");
        let a = |f: ArrowId| arrows[f.index()].clone();
        let mut hom: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, info) in raw.arrows.iter().enumerate() {
            let src: Vec<&str> = info.source.iter().map(|o| objects[o.index()].as_str()).collect();
            let key = format!("{}|{}", src.join(","), objects[info.target.index()]);
            hom.entry(key).or_default().push(arrows[i].clone());
        }
        let units = raw
            .units
            .iter()
            .enumerate()
            .map(|(o, &u)| (objects[o].clone(), a(u)))
            .collect();
        let sym = raw
            .sym
            .iter()
            .enumerate()
            .filter(|(i, images)| images.iter().any(|g| g.index() != *i))
            .map(|(i, images)| (arrows[i].clone(), images.iter().map(|&g| a(g)).collect()))
            .collect();
        let comp = raw
            .comp
            .iter()
            .map(|(k, &h)| {
                let gs: Vec<String> = k[1..].iter().map(|&g| a(g)).collect();
                (format!("{}({})", a(k[0]), gs.join(",")), a(h))
            })
            .collect();
        MulticategoryDoc {
            objects: objects.clone(),
            basepoint: objects[m.basepoint().index()].clone(),
            mu: m.mus().iter().map(|&f| a(f)).collect(),
            hom,
            units,
            sym,
            comp,
        }
    }
}

impl PermutativeDoc {
    pub fn to_category(&self) -> Result<PermutativeCategory, DocumentError> {
        let objects = Names::new(&self.objects, "object")?;
        let mut arrows: Vec<(usize, usize, String)> = Vec::new();
        for (key, names) in &self.hom {
            let Some((a, b)) = key.split_once('|') else {
                return schema(format!("hom key {key:?} is not \"a|b\""));
            };
            let (a, b) = (objects.get(a, "object")?, objects.get(b, "object")?);
            for n in names {
                arrows.push((a, b, n.clone()));
            }
        }
        arrows.sort();
        let arrow_names = Names::new(arrows.iter().map(|a| &a.2), "arrow")?;
        let arrow = |n: &str| arrow_names.get(n, "arrow");
        let (n, m) = (self.objects.len(), arrows.len());

        let identities = self
            .objects
            .iter()
            .map(|o| match self.identities.get(o) {
                Some(f) => arrow(f),
                None => schema(format!("object {o:?} has no identity")),
            })
            .collect::<Result<Vec<usize>, _>>()?;
        let mut compose = vec![vec![None; m]; m];
        for (key, h) in &self.compose {
            let (g, f) = split_pair(key)?;
            compose[arrow(g)?][arrow(f)?] = Some(arrow(h)?);
        }
        // an unknown object as a tensor product is a closure failure
        let mut tensor_objects = vec![vec![None; n]; n];
        for (key, c) in &self.tensor_objects {
            let (a, b) = split_pair(key)?;
            tensor_objects[objects.get(a, "object")?][objects.get(b, "object")?] = objects.0.get(c).copied();
        }
        let mut tensor_arrows = vec![vec![usize::MAX; m]; m];
        for (key, h) in &self.tensor_arrows {
            let (f, g) = split_pair(key)?;
            tensor_arrows[arrow(f)?][arrow(g)?] = arrow(h).unwrap_or(usize::MAX);
        }
        let mut symmetry = vec![vec![usize::MAX; n]; n];
        for (key, c) in &self.symmetry {
            let (a, b) = split_pair(key)?;
            symmetry[objects.get(a, "object")?][objects.get(b, "object")?] = arrow(c)?;
        }
        Ok(PermutativeCategory {
            objects: self.objects.clone(),
            unit: objects.get(&self.unit, "object")?,
            arrow_ends: arrows.iter().map(|&(a, b, _)| (a, b)).collect(),
            arrow_labels: arrows.iter().map(|a| a.2.clone()).collect(),
            identities,
            compose,
            tensor_objects,
            tensor_arrows,
            symmetry,
        })
    }

    pub fn from_category(p: &PermutativeCategory) -> Self {
        let o = |i: usize| p.objects[i].clone();
        let a = |f: usize| p.arrow_labels[f].clone();
        let mut hom: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (f, &(s, t)) in p.arrow_ends.iter().enumerate() {
            hom.entry(format!("{}|{}", o(s), o(t))).or_default().push(a(f));
        }
        let mut compose = BTreeMap::new();
        for (g, row) in p.compose.iter().enumerate() {
            for (f, h) in row.iter().enumerate() {
                if let Some(h) = h {
                    compose.insert(format!("{},{}", a(g), a(f)), a(*h));
                }
            }
        }
        let mut tensor_objects = BTreeMap::new();
        let mut symmetry = BTreeMap::new();
        for x in 0..p.object_count() {
            for y in 0..p.object_count() {
                if let Some(c) = p.tensor_objects[x][y] {
                    tensor_objects.insert(format!("{},{}", o(x), o(y)), o(c));
                }
                symmetry.insert(format!("{},{}", o(x), o(y)), a(p.symmetry[x][y]));
            }
        }
        let mut tensor_arrows = BTreeMap::new();
        for (f, row) in p.tensor_arrows.iter().enumerate() {
            for (g, &h) in row.iter().enumerate() {
                tensor_arrows.insert(format!("{},{}", a(f), a(g)), a(h));
            }
        }
        PermutativeDoc {
            objects: p.objects.clone(),
            unit: o(p.unit),
            hom,
            identities: p.identities.iter().enumerate().map(|(x, &f)| (o(x), a(f))).collect(),
            compose,
            tensor_objects,
            tensor_arrows,
            symmetry,
        }
    }
}

/// Document form of a permutative category.
pub fn permutative_document(p: &PermutativeCategory) -> InputDocument {
    InputDocument {
        schema_version: SCHEMA_VERSION,
        arity_cap: None,
        body: Body::Permutative(PermutativeDoc::from_category(p)),
    }
}

/// Document form of explicit multicategory tables.
pub fn multicategory_document(m: &BasedMulticategory) -> InputDocument {
    InputDocument {
        schema_version: SCHEMA_VERSION,
        arity_cap: Some(m.arity_cap()),
        body: Body::Multicategory(MulticategoryDoc::from_multicategory(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::validate_multicategory;

    #[test]
    fn builtins_build() {
        for name in ["terminal", "E", "I", "u", "wedge(E,E)"] {
            let m = InputDocument::builtin(name, None).build(Some(3)).unwrap();
            assert!(validate_multicategory(&m).is_valid(), "{name}");
        }
        let e2 = InputDocument::builtin("E^n", Some(2)).build(None).unwrap();
        assert_eq!(e2.object_count(), 4);
        assert!(InputDocument::builtin("E^n", None).build(None).is_err());
        assert!(InputDocument::builtin("F", None).build(None).is_err());
    }

    #[test]
    fn permutative_round_trip() {
        for p in [
            PermutativeCategory::discrete_cyclic(2),
            PermutativeCategory::saturating_pair(),
            PermutativeCategory::delooped_cyclic(3),
        ] {
            let doc = permutative_document(&p);
            let text = doc.to_canonical_json();
            let back = InputDocument::from_json(&text).unwrap();
            assert_eq!(back.to_canonical_json(), text);
            let Body::Permutative(pd) = &back.body else { unreachable!() };
            assert_eq!(pd.to_category().unwrap(), p);
            let built = back.build(None).unwrap();
            assert_eq!(built.digest(), from_permutative(&p, 4).unwrap().digest());
        }
    }

    #[test]
    fn multicategory_round_trip() {
        for m in [build_e(3), build_i(3), from_permutative(&PermutativeCategory::delooped_cyclic(3), 3).unwrap()] {
            let doc = multicategory_document(&m);
            let text = doc.to_canonical_json();
            let back = InputDocument::from_json(&text).unwrap();
            assert_eq!(back.to_canonical_json(), text);
            let rebuilt = back.build(None).unwrap();
            assert_eq!((rebuilt.object_count(), rebuilt.arrow_count()), (m.object_count(), m.arrow_count()));
            assert!(validate_multicategory(&rebuilt).is_valid());
            assert_eq!(multicategory_document(&rebuilt).to_canonical_json(), text);
        }
    }

    #[test]
    fn explicit_cap_is_respected() {
        let doc = multicategory_document(&build_e(3));
        assert_eq!(doc.build(Some(2)).unwrap().arity_cap(), 2);
        assert!(matches!(doc.build(Some(4)), Err(DocumentError::CapTooLarge { .. })));
    }

    #[test]
    fn unclosed_tensor_is_a_closure_error() {
        let mut doc = permutative_document(&PermutativeCategory::saturating_pair());
        let Body::Permutative(p) = &mut doc.body else { unreachable!() };
        p.tensor_objects.insert("1,1".into(), "2".into());
        let err = doc.build(None).unwrap_err();
        assert!(matches!(err, DocumentError::Permutative(PermutativeError::NotClosed(..))), "{err}");
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(InputDocument::from_json("{").is_err());
        assert!(InputDocument::from_json(r#"{"schema_version": 2, "type": "builtin", "name": "E"}"#).is_err());
        assert!(InputDocument::from_json(r#"{"schema_version": 1, "type": "nope"}"#).is_err());
    }
}
