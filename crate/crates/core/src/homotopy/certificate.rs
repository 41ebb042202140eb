use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::category::{components, inverse, FiniteCategory, Functor, TableCategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    InitialObjectPerSlice,
    CategoricalEquivalence,
    Isomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Per object `d` of the target, an initial object `(c, u: d → F c)` of
    /// the slice `d/F`.
    InitialObjects(Vec<(usize, usize)>),
    /// Per object `d` of the target, an object `c` with an isomorphism
    /// `d → F c`.
    EssentialLifts(Vec<(usize, usize)>),
    /// The inverse functor.
    Inverse {
        object_map: Vec<usize>,
        arrow_map: Vec<usize>,
    },
}

/// A checkable reason why a functor induces a weak equivalence of nerves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub witness: Witness,
}

impl Certificate {
    /// Re-checks the witness against `f: c → d` from scratch.
    pub fn verify<C, D>(&self, f: &Functor, c: &C, d: &D) -> Result<(), String>
    where
        C: FiniteCategory + ?Sized,
        D: FiniteCategory + ?Sized,
    {
        match (&self.kind, &self.witness) {
            (CertificateKind::InitialObjectPerSlice, Witness::InitialObjects(objs)) => {
                if objs.len() != d.object_count() {
                    return Err("one initial object per target object is required".into());
                }
                for (y, &(x, u)) in objs.iter().enumerate() {
                    if !is_slice_initial(f, c, d, y, x, u) {
                        return Err(format!("({x}, {u}) is not initial over object {y}"));
                    }
                }
                Ok(())
            }
            (CertificateKind::CategoricalEquivalence, Witness::EssentialLifts(lifts)) => {
                if lifts.len() != d.object_count() {
                    return Err("one lift per target object is required".into());
                }
                for (y, &(x, u)) in lifts.iter().enumerate() {
                    if d.source(u) != y || d.target(u) != f.object_map[x] || inverse(d, u).is_none() {
                        return Err(format!("arrow {u} is not an isomorphism {y} → F({x})"));
                    }
                }
                fully_faithful(f, c, d)
            }
            (CertificateKind::Isomorphism, Witness::Inverse { object_map, arrow_map }) => {
                let g = Functor {
                    object_map: object_map.clone(),
                    arrow_map: arrow_map.clone(),
                };
                if !g.violations(d, c).is_empty() {
                    return Err("the inverse is not a functor".into());
                }
                if g.after(f) != Functor::identity(c) || f.after(&g) != Functor::identity(d) {
                    return Err("the inverse does not invert".into());
                }
                Ok(())
            }
            _ => Err("witness does not match the certificate kind".into()),
        }
    }
}

/// Partition of objects into connected components, each class sorted and
/// classes ordered by least element.
pub fn pi0_category<C: FiniteCategory + ?Sized>(c: &C) -> Vec<Vec<usize>> {
    let class = components(c);
    let count = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (a, &k) in class.iter().enumerate() {
        out[k].push(a);
    }
    out
}

/// Objects `(c, u: y → F c)` of the slice `y/F` in canonical order.
pub fn slice_objects<C, D>(f: &Functor, c: &C, d: &D, y: usize) -> Vec<(usize, usize)>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    (0..c.object_count())
        .flat_map(|x| {
            d.hom(y, f.object_map[x])
                .iter()
                .map(move |&u| (x, u))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The slice category `y/F`, materialized. Objects are numbered as in
/// [`slice_objects`]; arrows `(x, u) → (x', u')` are the `h: x → x'` with
/// `F h ∘ u = u'`.
pub fn slice_category<C, D>(f: &Functor, c: &C, d: &D, y: usize) -> TableCategory
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    let objects = slice_objects(f, c, d, y);
    let mut table = TableCategory::with_objects(
        objects
            .iter()
            .map(|&(x, u)| format!("({}, {})", c.object_label(x), d.arrow_label(u)))
            .collect(),
    );
    let mut arrows: Vec<(usize, usize, usize)> = (0..objects.len())
        .map(|i| (i, i, c.identity(objects[i].0)))
        .collect();
    for (i, &(x, u)) in objects.iter().enumerate() {
        for (j, &(x2, u2)) in objects.iter().enumerate() {
            for &h in c.hom(x, x2).iter() {
                let identity = i == j && h == c.identity(x);
                if !identity && d.compose(f.arrow_map[h], u) == u2 {
                    table.push_arrow(i, j, c.arrow_label(h));
                    arrows.push((i, j, h));
                }
            }
        }
    }
    let index: FxHashMap<(usize, usize, usize), usize> =
        arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    for (s, &(i, j, h)) in arrows.iter().enumerate() {
        for (t, &(j2, k, h2)) in arrows.iter().enumerate() {
            if j2 == j {
                table.set_composite(t, s, index[&(i, k, c.compose(h2, h))]);
            }
        }
    }
    table
}

/// Whether `(x, u)` is initial in `y/F`: for every `(c', u')` exactly one
/// `h: x → c'` has `F h ∘ u = u'`.
pub fn is_slice_initial<C, D>(f: &Functor, c: &C, d: &D, y: usize, x: usize, u: usize) -> bool
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    if d.source(u) != y || d.target(u) != f.object_map[x] {
        return false;
    }
    let mut seen = Vec::new();
    (0..c.object_count()).all(|x2| {
        let hs = c.hom(x, x2);
        let targets = d.hom(y, f.object_map[x2]);
        if hs.len() != targets.len() {
            return false;
        }
        seen.clear();
        seen.extend(hs.iter().map(|&h| d.compose(f.arrow_map[h], u)));
        seen.sort_unstable();
        seen.dedup();
        seen.len() == targets.len()
    })
}

/// Looks for an initial object in every slice `y/F`, taking the least one
/// in canonical order.
pub fn theorem_a_certificate<C, D>(f: &Functor, c: &C, d: &D) -> Result<Certificate, String>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    let mut objs = Vec::with_capacity(d.object_count());
    for y in 0..d.object_count() {
        let found = (0..c.object_count()).find_map(|x| {
            d.hom(y, f.object_map[x])
                .iter()
                .copied()
                .find(|&u| is_slice_initial(f, c, d, y, x, u))
                .map(|u| (x, u))
        });
        match found {
            Some(p) => objs.push(p),
            None => return Err(format!("the slice over {} has no initial object", d.object_label(y))),
        }
    }
    Ok(Certificate {
        kind: CertificateKind::InitialObjectPerSlice,
        witness: Witness::InitialObjects(objs),
    })
}

fn fully_faithful<C, D>(f: &Functor, c: &C, d: &D) -> Result<(), String>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    let mut image = Vec::new();
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let hs = c.hom(a, b);
            let target = d.hom(f.object_map[a], f.object_map[b]);
            image.clear();
            image.extend(hs.iter().map(|&h| f.arrow_map[h]));
            image.sort_unstable();
            image.dedup();
            if image.len() != hs.len() {
                return Err(format!("not faithful on {a} → {b}"));
            }
            if image.len() != target.len() {
                return Err(format!("not full on {a} → {b}"));
            }
        }
    }
    Ok(())
}

/// Full, faithful and essentially surjective, by exhaustion.
pub fn equivalence_certificate<C, D>(f: &Functor, c: &C, d: &D) -> Result<Certificate, String>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    fully_faithful(f, c, d)?;
    let mut lifts = Vec::with_capacity(d.object_count());
    for y in 0..d.object_count() {
        let found = (0..c.object_count()).find_map(|x| {
            d.hom(y, f.object_map[x])
                .iter()
                .copied()
                .find(|&u| inverse(d, u).is_some())
                .map(|u| (x, u))
        });
        match found {
            Some(p) => lifts.push(p),
            None => return Err(format!("{} is not in the essential image", d.object_label(y))),
        }
    }
    Ok(Certificate {
        kind: CertificateKind::CategoricalEquivalence,
        witness: Witness::EssentialLifts(lifts),
    })
}

/// Bijective on objects and arrows; the inverse is the witness.
pub fn isomorphism_certificate<C, D>(f: &Functor, c: &C, d: &D) -> Result<Certificate, String>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    let invert = |map: &[usize], size: usize, what: &str| {
        let mut inv = vec![usize::MAX; size];
        if map.len() != size {
            return Err(format!("{what}: {} on the left, {size} on the right", map.len()));
        }
        for (i, &j) in map.iter().enumerate() {
            if inv[j] != usize::MAX {
                return Err(format!("{what}: {j} is hit twice"));
            }
            inv[j] = i;
        }
        Ok(inv)
    };
    let object_map = invert(&f.object_map, d.object_count(), "objects")?;
    let arrow_map = invert(&f.arrow_map, d.arrow_count(), "arrows")?;
    let broken = f.violations(c, d);
    if let Some(first) = broken.first() {
        return Err(first.clone());
    }
    Ok(Certificate {
        kind: CertificateKind::Isomorphism,
        witness: Witness::Inverse {
            object_map,
            arrow_map,
        },
    })
}
