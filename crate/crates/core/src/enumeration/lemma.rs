use super::{EnumerationError, HomCategory, Multifunctor};
use crate::category::{arrow_category, ArrowCategory, FiniteCategory, Functor};
use crate::multicat::{
    build_e, build_i, modules_of, ArrowId, BasedMulticategory, ObjectId, E_MODULE, E_MONOID,
};

/// An explicit isomorphism `Hom(I, M) ≅ Hom(E, M)^[1]`.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub functor: Functor,
    pub left_objects: usize,
    pub left_arrows: usize,
    pub right_objects: usize,
    pub right_arrows: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum LemmaError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("no isomorphism: {0}")]
    NotIsomorphic(String),
}

/// The two inclusions `E → I`, onto `{0, 1}` and onto `{0, 2}`.
pub fn i_inclusions(e: &BasedMulticategory, i: &BasedMulticategory) -> (Multifunctor, Multifunctor) {
    let low = Multifunctor::thin(e, i, vec![ObjectId(0), ObjectId(1)]).expect("E sits in I at 1");
    let high = Multifunctor::thin(e, i, vec![ObjectId(0), ObjectId(2)]).expect("E sits in I at 2");
    (low, high)
}

/// Everything needed to compare `Hom(I, M)` with the arrow category of
/// `Hom(E, M)`.
pub struct LemmaSides {
    pub hom_e: HomCategory,
    pub hom_i: HomCategory,
    pub arrows: ArrowCategory,
    pub restrict_low: Functor,
    pub restrict_high: Functor,
}

impl LemmaSides {
    pub fn build(m: &BasedMulticategory, budget: u64) -> Result<Self, EnumerationError> {
        let cap = m.arity_cap();
        let (e, i) = (build_e(cap), build_i(cap));
        let hom_e = HomCategory::build(&e, m, budget)?;
        let hom_i = HomCategory::build(&i, m, budget)?;
        let arrows = arrow_category(&hom_e);
        let (low, high) = i_inclusions(&e, &i);
        let restrict_low = hom_i.precompose(&low, &hom_e).expect("restriction is total");
        let restrict_high = hom_i.precompose(&high, &hom_e).expect("restriction is total");
        Ok(LemmaSides {
            hom_e,
            hom_i,
            arrows,
            restrict_low,
            restrict_high,
        })
    }

    /// Sends a multifunctor on `I` to the transformation between its two
    /// restrictions whose component at 1 is the image of the arrow `1 → 2`.
    pub fn comparison(&self, i: &BasedMulticategory) -> Result<Functor, String> {
        let a12 = i.hom(&[ObjectId(1)], ObjectId(2))[0];
        let object_map = (0..self.hom_i.object_count())
            .map(|x| {
                let f = self.hom_i.functor(x);
                let (a, b) = (self.restrict_low.object_map[x], self.restrict_high.object_map[x]);
                let mut comps = vec![ArrowId(0); 2];
                comps[E_MONOID.index()] = f.arrow(i.unit(ObjectId(0)));
                comps[E_MODULE.index()] = f.arrow(a12);
                self.hom_e
                    .find_arrow(a, b, &comps)
                    .ok_or_else(|| format!("multifunctor {x} on I gives no transformation"))
            })
            .collect::<Result<Vec<usize>, String>>()?;
        let arrow_map = (0..self.hom_i.arrow_count())
            .map(|t| {
                let (u, v) = (self.restrict_low.arrow_map[t], self.restrict_high.arrow_map[t]);
                let (s, d) = (object_map[self.hom_i.source(t)], object_map[self.hom_i.target(t)]);
                self.arrows
                    .table
                    .hom(s, d)
                    .iter()
                    .copied()
                    .find(|&q| self.arrows.squares[q] == (u, v))
                    .ok_or_else(|| format!("transformation {t} on I gives no square"))
            })
            .collect::<Result<Vec<usize>, String>>()?;
        Ok(Functor {
            object_map,
            arrow_map,
        })
    }
}

fn is_bijection(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.len() == size
        && map.iter().all(|&x| {
            let fresh = x < size && !seen[x];
            if fresh {
                seen[x] = true;
            }
            fresh
        })
}

/// Builds both sides and the comparison functor and checks that it is a
/// bijective functor, hence an isomorphism of categories.
pub fn check_lemma_arrow(m: &BasedMulticategory, budget: u64) -> Result<IsoWitness, LemmaError> {
    let sides = LemmaSides::build(m, budget)?;
    let i = build_i(m.arity_cap());
    let functor = sides.comparison(&i).map_err(LemmaError::NotIsomorphic)?;
    let right = &sides.arrows.table;
    let broken = functor.violations(&sides.hom_i, right);
    if let Some(first) = broken.first() {
        return Err(LemmaError::NotIsomorphic(first.clone()));
    }
    if !is_bijection(&functor.object_map, right.object_count()) {
        return Err(LemmaError::NotIsomorphic(format!(
            "objects: {} on the left, {} on the right",
            sides.hom_i.object_count(),
            right.object_count()
        )));
    }
    if !is_bijection(&functor.arrow_map, right.arrow_count()) {
        return Err(LemmaError::NotIsomorphic(format!(
            "arrows: {} on the left, {} on the right",
            sides.hom_i.arrow_count(),
            right.arrow_count()
        )));
    }
    Ok(IsoWitness {
        functor,
        left_objects: sides.hom_i.object_count(),
        left_arrows: sides.hom_i.arrow_count(),
        right_objects: right.object_count(),
        right_arrows: right.arrow_count(),
    })
}

/// Compares unary arrows of the module multicategory with transformations
/// between the corresponding multifunctors `E → M`: for every pair of
/// modules the compatible arrows must be exactly the components at 1.
pub fn check_module_arrows(m: &BasedMulticategory, budget: u64) -> Result<(), LemmaError> {
    let mods = modules_of(m).map_err(|e| LemmaError::NotIsomorphic(e.to_string()))?;
    let e = build_e(m.arity_cap());
    let hom_e = HomCategory::build(&e, m, budget)?;
    let lambda = e.hom(&[E_MONOID, E_MODULE], E_MODULE)[0];
    let datum_of = |f: &Multifunctor| (f.object(E_MODULE), f.arrow(lambda));
    if hom_e.object_count() != mods.data.len() {
        return Err(LemmaError::NotIsomorphic(format!(
            "{} modules but {} multifunctors from E",
            mods.data.len(),
            hom_e.object_count()
        )));
    }
    for (x, d) in mods.data.iter().enumerate() {
        if datum_of(hom_e.functor(x)) != (d.m, d.lambda1) {
            return Err(LemmaError::NotIsomorphic(format!("module {x} has no multifunctor")));
        }
    }
    let mm = &mods.multicategory;
    for x in 0..mods.data.len() {
        for y in 0..mods.data.len() {
            let mut from_modules: Vec<ArrowId> = mm
                .hom(&[ObjectId(x as u32)], ObjectId(y as u32))
                .iter()
                .map(|f| mods.underlying[f.index()])
                .collect();
            let mut from_transformations: Vec<ArrowId> = hom_e
                .hom(x, y)
                .iter()
                .map(|&t| hom_e.transformation(t).components[E_MODULE.index()])
                .collect();
            from_modules.sort();
            from_transformations.sort();
            if from_modules != from_transformations {
                return Err(LemmaError::NotIsomorphic(format!(
                    "module arrows {x} → {y} differ from transformations"
                )));
            }
        }
    }
    Ok(())
}
