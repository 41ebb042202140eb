//! The K-theory Γ-object `J(M)_n = Hom(Eⁿ, M)` and the category 𝒢*.

mod gstar;
mod pointed;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

pub use gstar::{
    build_gstar_hom, check_i_fully_faithful, compose_gstar, gstar_associativity_sweep,
    gstar_objects, include_gamma, GStarError, GStarMorphism, GStarObject,
};
pub use pointed::{
    gamma_maps, restrict_object, restriction_multifunctor, restriction_with_powers, PointedMap,
};

use crate::category::{FiniteCategory, Functor};
use crate::enumeration::{
    hom_category, EnumerationCache, EnumerationError, HomCategory, Multifunctor,
};
use crate::homotopy::isomorphism_certificate;
use crate::multicat::{modules_of, power_e, truncate, BasedMulticategory, ModulesOf};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("arity cap {cap} is below levels + 1 = {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("level {level}: {source}")]
    Level {
        level: usize,
        source: EnumerationError,
    },
}

#[derive(Clone, Copy)]
pub struct KTheoryOptions<'a> {
    pub budget: u64,
    /// Worker threads for computing levels; 0 lets the pool decide.
    pub jobs: usize,
    pub cache: Option<&'a dyn EnumerationCache>,
}

impl Default for KTheoryOptions<'_> {
    fn default() -> Self {
        KTheoryOptions {
            budget: crate::enumeration::DEFAULT_BUDGET,
            jobs: 0,
            cache: None,
        }
    }
}

/// Levels `0..=L` of `J(M)` together with the powers of `E` they are built
/// from. Actions of pointed maps are computed on demand.
pub struct GammaObject {
    powers: Vec<BasedMulticategory>,
    levels: Vec<HomCategory>,
}

impl GammaObject {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &HomCategory {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[HomCategory] {
        &self.levels
    }

    pub fn power(&self, n: usize) -> &BasedMulticategory {
        &self.powers[n]
    }

    /// `J(φ): J_m → J_n`, precomposition with `φ*: Eⁿ → Eᵐ`.
    pub fn action(&self, phi: &PointedMap) -> Functor {
        let r = restriction_multifunctor(phi, &self.powers[phi.n], &self.powers[phi.m]);
        self.levels[phi.m]
            .precompose(&r, &self.levels[phi.n])
            .expect("precomposition with a restriction stays within the level")
    }
}

/// Computes levels `0..=levels` of `J(M)`; requires `cap(M) ≥ levels + 1`.
pub fn k_theory(
    m: &BasedMulticategory,
    levels: usize,
    options: KTheoryOptions<'_>,
) -> Result<GammaObject, KTheoryError> {
    let cap = m.arity_cap();
    if cap < levels + 1 {
        return Err(KTheoryError::CapTooSmall {
            cap,
            needed: levels + 1,
        });
    }
    let powers: Vec<BasedMulticategory> = (0..=levels).map(|n| power_e(n, cap)).collect();
    let compute = || {
        powers
            .par_iter()
            .enumerate()
            .map(|(n, e)| {
                hom_category(e, m, options.budget, options.cache)
                    .map_err(|source| KTheoryError::Level { level: n, source })
            })
            .collect::<Result<Vec<HomCategory>, KTheoryError>>()
    };
    let built = match rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build() {
        Ok(pool) => pool.install(compute),
        Err(_) => compute(),
    };
    Ok(GammaObject {
        powers,
        levels: built?,
    })
}

/// `J(ψ∘φ) = J(ψ)∘J(φ)` for all composable `φ: m₊ → n₊`, `ψ: n₊ → p₊`
/// and `J(id) = id`, with `m, n, p ≤ bound`. Returns the number of pairs
/// checked or a description of the first failure.
pub fn functoriality_sweep(x: &GammaObject, bound: usize) -> Result<usize, String> {
    let bound = bound.min(x.top());
    let mut actions: BTreeMap<PointedMap, Functor> = BTreeMap::new();
    for m in 0..=bound {
        for n in 0..=bound {
            for phi in gamma_maps(m, n) {
                let f = x.action(&phi);
                let broken = f.violations(x.level(m), x.level(n));
                if let Some(first) = broken.first() {
                    return Err(format!("J({phi}) is not a functor: {first}"));
                }
                actions.insert(phi, f);
            }
        }
    }
    for n in 0..=bound {
        if actions[&PointedMap::identity(n)] != Functor::identity(x.level(n)) {
            return Err(format!("identity of {n}+ does not act as the identity"));
        }
    }
    let mut checked = 0;
    for (phi, f) in &actions {
        for (psi, g) in actions.range(PointedMap { m: phi.n, n: 0, images: Vec::new() }..) {
            if psi.m != phi.n {
                break;
            }
            let both = &actions[&psi.after(phi)];
            if *both != g.after(f) {
                return Err(format!("J({psi} ∘ {phi}) differs from the composite"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The forgetful multifunctor `modules_of(M) → truncate(M, cap - 1)`.
pub fn forgetful_multifunctor(
    m: &BasedMulticategory,
    mods: &ModulesOf,
    truncated: &BasedMulticategory,
) -> Multifunctor {
    let mm = &mods.multicategory;
    let object_map = mods.data.iter().map(|d| d.m).collect();
    let arrow_map = mm
        .arrows()
        .map(|f| {
            let g = mods.underlying[f.index()];
            let (src, tgt) = (m.source(g), m.target(g));
            let pos = m.hom(src, tgt).iter().position(|&h| h == g).expect("arrow in its hom-set");
            truncated.hom(src, tgt)[pos]
        })
        .collect();
    Multifunctor {
        object_map,
        arrow_map,
    }
}

/// Per level `n ≤ levels`, whether postcomposition with the forgetful
/// multifunctor `J(modules_of(M))_n → J(truncate(M, cap - 1))_n` is an
/// isomorphism of categories; `Ok` carries the object and arrow counts.
pub fn coreflection_check(
    m: &BasedMulticategory,
    levels: usize,
    options: KTheoryOptions<'_>,
) -> Result<Vec<Result<(usize, usize), String>>, String> {
    let mods = modules_of(m).map_err(|e| e.to_string())?;
    let truncated = truncate(m, m.arity_cap() - 1);
    let u = forgetful_multifunctor(m, &mods, &truncated);
    let broken = u.violations(&mods.multicategory, &truncated, true);
    if let Some(first) = broken.first() {
        return Err(format!("forgetful map is not a based multifunctor: {first}"));
    }
    let left = k_theory(&mods.multicategory, levels, options).map_err(|e| e.to_string())?;
    let right = k_theory(&truncated, levels, options).map_err(|e| e.to_string())?;
    Ok((0..=levels)
        .map(|n| {
            let (a, b) = (left.level(n), right.level(n));
            let f = a.postcompose(&u, b)?;
            isomorphism_certificate(&f, a, b)?;
            Ok((b.object_count(), b.arrow_count()))
        })
        .collect())
}

/// Object and arrow counts per level.
pub fn level_counts(x: &GammaObject) -> Vec<(usize, usize)> {
    x.levels
        .iter()
        .map(|l| (l.object_count(), l.arrow_count()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::components;
    use crate::multicat::{build_e, from_permutative, PermutativeCategory};

    #[test]
    fn cap_must_cover_levels() {
        let e = build_e(3);
        assert!(matches!(
            k_theory(&e, 3, KTheoryOptions::default()),
            Err(KTheoryError::CapTooSmall { .. })
        ));
    }

    #[test]
    fn discrete_z2_levels_are_discrete_powers() {
        let m = from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap();
        let x = k_theory(&m, 3, KTheoryOptions::default()).unwrap();
        for n in 0..=3 {
            assert_eq!(level_counts(&x)[n], (1 << n, 1 << n));
        }
        assert!(functoriality_sweep(&x, 3).unwrap() > 0);
    }

    #[test]
    fn e_level_one_is_discrete_pair() {
        let e = build_e(4);
        let x = k_theory(&e, 2, KTheoryOptions::default()).unwrap();
        assert_eq!(level_counts(&x)[0], (1, 1));
        assert_eq!(level_counts(&x)[1], (2, 2));
        assert_eq!(components(x.level(1)), vec![0, 1]);
    }

    #[test]
    fn modules_of_z2_is_levelwise_isomorphic() {
        let m = from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap();
        let rows = coreflection_check(&m, 2, KTheoryOptions::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for (n, r) in rows.into_iter().enumerate() {
            assert_eq!(r.unwrap(), (1 << n, 1 << n));
        }
    }

    #[test]
    fn fold_realizes_addition_mod_two() {
        let m = from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap();
        let x = k_theory(&m, 2, KTheoryOptions::default()).unwrap();
        let fold = x.action(&PointedMap::fold(2));
        let rho: Vec<Functor> = (1..=2).map(|i| x.action(&PointedMap::projection(2, i))).collect();
        let value = |a: usize| x.level(1).functor(a).object(crate::multicat::E_MODULE).0 as usize;
        for a in 0..x.level(2).object_count() {
            let (p, q) = (value(rho[0].object_map[a]), value(rho[1].object_map[a]));
            assert_eq!(value(fold.object_map[a]), (p + q) % 2);
        }
    }
}
