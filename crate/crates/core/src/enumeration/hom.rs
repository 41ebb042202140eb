use std::borrow::Cow;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{enumerate_based_multifunctors, EnumerationError, Multifunctor};
use crate::category::{FiniteCategory, Functor};
use crate::multicat::{ArrowId, BasedMulticategory, Multicategory, ObjectId};

/// Components `η_x ∈ M(F x; G x)`, one per source object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultinatTransformation {
    pub components: Vec<ArrowId>,
}

/// The naturality squares of a source multicategory, grouped by the last
/// object (in object order) they mention. One arrow per σ-orbit; unit
/// arrows are omitted since they impose nothing.
pub struct NaturalityPlan {
    by_last: Vec<Vec<ArrowId>>,
}

impl NaturalityPlan {
    pub fn new(s: &Multicategory) -> Self {
        let mut by_last = vec![Vec::new(); s.object_count()];
        for f in s.arrows() {
            if s.is_unit(f) || s.sym_images(f).iter().any(|&g| g < f) {
                continue;
            }
            let last = s
                .source(f)
                .iter()
                .copied()
                .chain(std::iter::once(s.target(f)))
                .max()
                .expect("target exists");
            by_last[last.index()].push(f);
        }
        NaturalityPlan { by_last }
    }
}

/// All based multinatural transformations `F ⇒ G`, lexicographically by
/// components. The component at the basepoint is the identity.
pub fn enumerate_multinat(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    f: &Multifunctor,
    g: &Multifunctor,
    budget: u64,
) -> Result<Vec<MultinatTransformation>, EnumerationError> {
    let plan = NaturalityPlan::new(s);
    let mut remaining = budget;
    enumerate_with_plan(s, m, &plan, f, g, &mut remaining)
}

pub(crate) fn enumerate_with_plan(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    plan: &NaturalityPlan,
    f: &Multifunctor,
    g: &Multifunctor,
    remaining: &mut u64,
) -> Result<Vec<MultinatTransformation>, EnumerationError> {
    let mut search = NatSearch {
        s,
        m,
        plan,
        f,
        g,
        eta: Vec::with_capacity(s.object_count()),
        remaining: *remaining,
        budget: *remaining,
        out: Vec::new(),
    };
    let result = search.run();
    *remaining = search.remaining;
    result.map(|_| search.out)
}

struct NatSearch<'a> {
    s: &'a BasedMulticategory,
    m: &'a BasedMulticategory,
    plan: &'a NaturalityPlan,
    f: &'a Multifunctor,
    g: &'a Multifunctor,
    eta: Vec<ArrowId>,
    remaining: u64,
    budget: u64,
    out: Vec<MultinatTransformation>,
}

impl NatSearch<'_> {
    fn run(&mut self) -> Result<(), EnumerationError> {
        let x = self.eta.len();
        if x == self.s.object_count() {
            self.out.push(MultinatTransformation {
                components: self.eta.clone(),
            });
            return Ok(());
        }
        let xo = ObjectId(x as u32);
        let (fx, gx) = (self.f.object(xo), self.g.object(xo));
        let candidates: Vec<ArrowId> = if xo == self.s.basepoint() {
            if fx == gx {
                vec![self.m.unit(fx)]
            } else {
                Vec::new()
            }
        } else {
            self.m.hom(&[fx], gx).to_vec()
        };
        for c in candidates {
            if self.remaining == 0 {
                return Err(EnumerationError::Budget {
                    budget: self.budget,
                });
            }
            self.remaining -= 1;
            self.eta.push(c);
            if self.natural_at(x) {
                self.run()?;
            }
            self.eta.pop();
        }
        Ok(())
    }

    /// `γ(η_y; F f) = γ(G f; η_{x_1}, …, η_{x_k})` for the arrows whose last
    /// object is `x`.
    fn natural_at(&self, x: usize) -> bool {
        let (s, m) = (self.s, self.m);
        self.plan.by_last[x].iter().all(|&a| {
            let lhs = m.compose(self.eta[s.target(a).index()], &[self.f.arrow(a)]);
            let etas: Vec<ArrowId> = s.source(a).iter().map(|o| self.eta[o.index()]).collect();
            let rhs = m.compose(self.g.arrow(a), &etas);
            lhs.is_some() && lhs == rhs
        })
    }
}

/// The category of based multifunctors `S → M` and based multinatural
/// transformations. Arrows are stored grouped by (source, target) functor
/// pair and sorted within each group; composition looks the componentwise
/// composite up by binary search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomCategory {
    functors: Vec<Multifunctor>,
    transformations: Vec<MultinatTransformation>,
    /// `offsets[i * n + j]..offsets[i * n + j + 1]` are the arrows `i → j`.
    offsets: Vec<usize>,
    ends: Vec<(usize, usize)>,
    unary: Vec<((ArrowId, ArrowId), ArrowId)>,
    units: Vec<ArrowId>,
    #[serde(skip)]
    unary_index: FxHashMap<(ArrowId, ArrowId), ArrowId>,
}

impl HomCategory {
    pub fn build(
        s: &BasedMulticategory,
        m: &BasedMulticategory,
        budget: u64,
    ) -> Result<Self, EnumerationError> {
        let functors = enumerate_based_multifunctors(s, m, budget)?;
        let plan = NaturalityPlan::new(s);
        let n = functors.len();
        let mut transformations = Vec::new();
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut ends = Vec::new();
        offsets.push(0);
        let mut remaining = budget;
        for (i, f) in functors.iter().enumerate() {
            for (j, g) in functors.iter().enumerate() {
                let etas = enumerate_with_plan(s, m, &plan, f, g, &mut remaining)?;
                ends.extend(std::iter::repeat((i, j)).take(etas.len()));
                transformations.extend(etas);
                offsets.push(transformations.len());
            }
        }
        let mut unary = Vec::new();
        for g in m.arrows().filter(|&g| m.arity(g) == 1) {
            for h in m.objects() {
                for &f in m.hom(&[h], m.source(g)[0]) {
                    unary.push(((g, f), m.compose(g, &[f]).expect("unary composite")));
                }
            }
        }
        let unary_index = unary.iter().copied().collect();
        Ok(HomCategory {
            functors,
            transformations,
            offsets,
            ends,
            unary,
            units: m.objects().map(|y| m.unit(y)).collect(),
            unary_index,
        })
    }

    /// Restores the lookup table after deserialization.
    pub fn reindex(mut self) -> Self {
        self.unary_index = self.unary.iter().copied().collect();
        self
    }

    pub fn functors(&self) -> &[Multifunctor] {
        &self.functors
    }

    pub fn functor(&self, i: usize) -> &Multifunctor {
        &self.functors[i]
    }

    pub fn transformation(&self, a: usize) -> &MultinatTransformation {
        &self.transformations[a]
    }

    pub fn find_functor(&self, f: &Multifunctor) -> Option<usize> {
        self.functors.binary_search(f).ok()
    }

    /// The arrow `i → j` with the given components.
    pub fn find_arrow(&self, i: usize, j: usize, components: &[ArrowId]) -> Option<usize> {
        let n = self.functors.len();
        let (lo, hi) = (self.offsets[i * n + j], self.offsets[i * n + j + 1]);
        self.transformations[lo..hi]
            .binary_search_by(|t| t.components.as_slice().cmp(components))
            .ok()
            .map(|k| lo + k)
    }

    /// Precomposition with `r: S' → S`, as a functor from this category to
    /// `target = Hom(S', M)`.
    pub fn precompose(&self, r: &Multifunctor, target: &HomCategory) -> Result<Functor, String> {
        let object_map = self
            .functors
            .iter()
            .map(|f| {
                target
                    .find_functor(&f.after(r))
                    .ok_or_else(|| "precomposite is not a based multifunctor".to_string())
            })
            .collect::<Result<Vec<usize>, String>>()?;
        let arrow_map = (0..self.transformations.len())
            .map(|a| {
                let (i, j) = self.ends[a];
                let comps: Vec<ArrowId> = r
                    .object_map
                    .iter()
                    .map(|x| self.transformations[a].components[x.index()])
                    .collect();
                target
                    .find_arrow(object_map[i], object_map[j], &comps)
                    .ok_or_else(|| "precomposite is not a multinatural transformation".to_string())
            })
            .collect::<Result<Vec<usize>, String>>()?;
        Ok(Functor {
            object_map,
            arrow_map,
        })
    }
}

impl HomCategory {
    /// Postcomposition with `u: M → M'`, as a functor from this category to
    /// `target = Hom(S, M')`.
    pub fn postcompose(&self, u: &Multifunctor, target: &HomCategory) -> Result<Functor, String> {
        let object_map = self
            .functors
            .iter()
            .map(|f| {
                target
                    .find_functor(&u.after(f))
                    .ok_or_else(|| "postcomposite is not a based multifunctor".to_string())
            })
            .collect::<Result<Vec<usize>, String>>()?;
        let arrow_map = (0..self.transformations.len())
            .map(|a| {
                let (i, j) = self.ends[a];
                let comps: Vec<ArrowId> = self.transformations[a]
                    .components
                    .iter()
                    .map(|&c| u.arrow(c))
                    .collect();
                target
                    .find_arrow(object_map[i], object_map[j], &comps)
                    .ok_or_else(|| "postcomposite is not a multinatural transformation".to_string())
            })
            .collect::<Result<Vec<usize>, String>>()?;
        Ok(Functor {
            object_map,
            arrow_map,
        })
    }
}

impl FiniteCategory for HomCategory {
    fn object_count(&self) -> usize {
        self.functors.len()
    }

    fn arrow_count(&self) -> usize {
        self.transformations.len()
    }

    fn source(&self, f: usize) -> usize {
        self.ends[f].0
    }

    fn target(&self, f: usize) -> usize {
        self.ends[f].1
    }

    fn hom(&self, a: usize, b: usize) -> Cow<'_, [usize]> {
        let n = self.functors.len();
        Cow::Owned((self.offsets[a * n + b]..self.offsets[a * n + b + 1]).collect())
    }

    fn identity(&self, a: usize) -> usize {
        let comps: Vec<ArrowId> = self.functors[a]
            .object_map
            .iter()
            .map(|y| self.units[y.index()])
            .collect();
        self.find_arrow(a, a, &comps).expect("identity transformation")
    }

    fn compose(&self, g: usize, f: usize) -> usize {
        let comps: Vec<ArrowId> = self.transformations[g]
            .components
            .iter()
            .zip(&self.transformations[f].components)
            .map(|(&b, &a)| self.unary_index[&(b, a)])
            .collect();
        self.find_arrow(self.ends[f].0, self.ends[g].1, &comps)
            .expect("composite transformation")
    }

    fn object_label(&self, a: usize) -> String {
        let objs: Vec<String> = self.functors[a].object_map.iter().map(|o| o.0.to_string()).collect();
        format!("F{a}[{}]", objs.join(","))
    }

    fn arrow_label(&self, f: usize) -> String {
        let comps: Vec<String> = self.transformations[f]
            .components
            .iter()
            .map(|c| c.0.to_string())
            .collect();
        format!("[{}]", comps.join(","))
    }
}
