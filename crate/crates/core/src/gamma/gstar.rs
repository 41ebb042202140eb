//! The based category of finite lists of finite based sets, with the zero
//! identification, and the inclusion of Γ as one-element lists.

use std::fmt;

use thiserror::Error;

use super::pointed::{gamma_maps, PointedMap};

/// A list `(n_1, …, n_m)`, in normal form: any list containing a 0 is `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GStarObject(Vec<usize>);

impl GStarObject {
    pub fn new(entries: Vec<usize>) -> Self {
        if entries.contains(&0) {
            GStarObject(vec![0])
        } else {
            GStarObject(entries)
        }
    }

    pub fn zero() -> Self {
        GStarObject(vec![0])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0]
    }
}

impl fmt::Display for GStarObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A morphism `(f, {α_i})`. `injection[j]` is `f(j)` (0-based) and
/// `alphas[i]` lists the images of `1..=d` under `α_i`, where `d` is
/// `n_{f⁻¹(i)}`, or 1 when `i` is not hit. Every morphism with a zero `α_i`
/// is the base morphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GStarMorphism {
    Base {
        source: GStarObject,
        target: GStarObject,
    },
    Map {
        source: GStarObject,
        target: GStarObject,
        injection: Vec<usize>,
        alphas: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GStarError {
    #[error("target {0} of the first morphism is not the source {1} of the second")]
    NotComposable(GStarObject, GStarObject),
}

impl GStarMorphism {
    pub fn source(&self) -> &GStarObject {
        match self {
            GStarMorphism::Base { source, .. } | GStarMorphism::Map { source, .. } => source,
        }
    }

    pub fn target(&self) -> &GStarObject {
        match self {
            GStarMorphism::Base { target, .. } | GStarMorphism::Map { target, .. } => target,
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, GStarMorphism::Base { .. })
    }

    pub fn identity(a: &GStarObject) -> Self {
        if a.is_zero() {
            return GStarMorphism::Base {
                source: a.clone(),
                target: a.clone(),
            };
        }
        GStarMorphism::Map {
            source: a.clone(),
            target: a.clone(),
            injection: (0..a.0.len()).collect(),
            alphas: a.0.iter().map(|&n| (1..=n).collect()).collect(),
        }
    }

    fn normalize(
        source: GStarObject,
        target: GStarObject,
        injection: Vec<usize>,
        alphas: Vec<Vec<usize>>,
    ) -> Self {
        if source.is_zero() || target.is_zero() || alphas.iter().any(|a| a.iter().all(|&x| x == 0)) {
            GStarMorphism::Base { source, target }
        } else {
            GStarMorphism::Map {
                source,
                target,
                injection,
                alphas,
            }
        }
    }
}

/// Sizes of the domains of the `α_i` for an injection into `t` slots.
fn domains(source: &GStarObject, injection: &[usize], t: usize) -> Vec<usize> {
    let mut d = vec![1; t];
    for (j, &i) in injection.iter().enumerate() {
        d[i] = source.0[j];
    }
    d
}

fn injections(m: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for prefix in &out {
            for i in 0..t {
                if !prefix.contains(&i) {
                    let mut v: Vec<usize> = prefix.clone();
                    v.push(i);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// Every morphism `a → b`: the base morphism first, then the others in
/// lexicographic order of (injection, α's).
pub fn build_gstar_hom(a: &GStarObject, b: &GStarObject) -> Vec<GStarMorphism> {
    let mut out = vec![GStarMorphism::Base {
        source: a.clone(),
        target: b.clone(),
    }];
    if a.is_zero() || b.is_zero() {
        return out;
    }
    let t = b.0.len();
    for injection in injections(a.0.len(), t) {
        let dom = domains(a, &injection, t);
        let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (i, &d) in dom.iter().enumerate() {
            let maps: Vec<Vec<usize>> = gamma_maps(d, b.0[i])
                .into_iter()
                .filter(|p| p.images.iter().any(|&x| x != 0))
                .map(|p| p.images)
                .collect();
            let mut next = Vec::new();
            for prefix in &choices {
                for alpha in &maps {
                    let mut v = prefix.clone();
                    v.push(alpha.clone());
                    next.push(v);
                }
            }
            choices = next;
        }
        for alphas in choices {
            out.push(GStarMorphism::Map {
                source: a.clone(),
                target: b.clone(),
                injection: injection.clone(),
                alphas,
            });
        }
    }
    out
}

/// `g ∘ f`, in normal form.
pub fn compose_gstar(g: &GStarMorphism, f: &GStarMorphism) -> Result<GStarMorphism, GStarError> {
    if f.target() != g.source() {
        return Err(GStarError::NotComposable(f.target().clone(), g.source().clone()));
    }
    let (source, target) = (f.source().clone(), g.target().clone());
    let (
        GStarMorphism::Map {
            injection: fi,
            alphas: fa,
            ..
        },
        GStarMorphism::Map {
            injection: gi,
            alphas: ga,
            ..
        },
    ) = (f, g)
    else {
        return Ok(GStarMorphism::Base { source, target });
    };
    let injection: Vec<usize> = fi.iter().map(|&i| gi[i]).collect();
    let mut alphas = ga.clone();
    for (i, &l) in gi.iter().enumerate() {
        let beta = &ga[l];
        alphas[l] = fa[i]
            .iter()
            .map(|&x| if x == 0 { 0 } else { beta[x - 1] })
            .collect();
    }
    Ok(GStarMorphism::normalize(source, target, injection, alphas))
}

/// `i: Γ → 𝒢*` on a pointed map.
pub fn include_gamma(phi: &PointedMap) -> GStarMorphism {
    let (a, b) = (GStarObject::new(vec![phi.m]), GStarObject::new(vec![phi.n]));
    GStarMorphism::normalize(a, b, vec![0], vec![phi.images.clone()])
}

/// For all `m, n ≤ bound`, `i` maps `Γ(m, n)` bijectively onto
/// `𝒢*((m), (n))`, and preserves identities and composites.
pub fn check_i_fully_faithful(bound: usize) -> bool {
    for m in 0..=bound {
        for n in 0..=bound {
            let mut images: Vec<GStarMorphism> = gamma_maps(m, n).iter().map(include_gamma).collect();
            images.sort();
            let before = images.len();
            images.dedup();
            if images.len() != before {
                return false;
            }
            let mut hom = build_gstar_hom(&GStarObject::new(vec![m]), &GStarObject::new(vec![n]));
            hom.sort();
            if images != hom {
                return false;
            }
            if include_gamma(&PointedMap::identity(m)) != GStarMorphism::identity(&GStarObject::new(vec![m])) {
                return false;
            }
            for p in 0..=bound {
                for phi in gamma_maps(m, n) {
                    for psi in gamma_maps(n, p) {
                        let lhs = include_gamma(&psi.after(&phi));
                        let rhs = compose_gstar(&include_gamma(&psi), &include_gamma(&phi));
                        if rhs.as_ref() != Ok(&lhs) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every normal-form object with entries in `0..=max_entry` and length at
/// most `max_len`, the zero object once.
pub fn gstar_objects(max_entry: usize, max_len: usize) -> Vec<GStarObject> {
    let mut out = vec![GStarObject(Vec::new()), GStarObject::zero()];
    let mut lists: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &lists {
            for n in 1..=max_entry {
                let mut v = prefix.clone();
                v.push(n);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(GStarObject));
        lists = next;
    }
    out
}

/// Unit laws and associativity on all composable triples between the
/// given objects. Returns the number of triples checked, or the first
/// failing triple.
pub fn gstar_associativity_sweep(objects: &[GStarObject]) -> Result<usize, String> {
    let homs: Vec<Vec<Vec<GStarMorphism>>> = objects
        .iter()
        .map(|a| objects.iter().map(|b| build_gstar_hom(a, b)).collect())
        .collect();
    for (x, a) in objects.iter().enumerate() {
        let id = GStarMorphism::identity(a);
        for (y, b) in objects.iter().enumerate() {
            for f in &homs[x][y] {
                let left = compose_gstar(&GStarMorphism::identity(b), f).map_err(|e| e.to_string())?;
                let right = compose_gstar(f, &id).map_err(|e| e.to_string())?;
                if &left != f || &right != f {
                    return Err(format!("unit law fails at {f:?}"));
                }
            }
        }
    }
    let mut checked = 0;
    let n = objects.len();
    for a in 0..n {
        for b in 0..n {
            for f in &homs[a][b] {
                for c in 0..n {
                    for g in &homs[b][c] {
                        let gf = compose_gstar(g, f).map_err(|e| e.to_string())?;
                        for d in 0..n {
                            for h in &homs[c][d] {
                                let lhs = compose_gstar(h, &gf).map_err(|e| e.to_string())?;
                                let hg = compose_gstar(h, g).map_err(|e| e.to_string())?;
                                let rhs = compose_gstar(&hg, f).map_err(|e| e.to_string())?;
                                if lhs != rhs {
                                    return Err(format!("associativity fails at {h:?}, {g:?}, {f:?}"));
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}
