use serde::Serialize;

use super::certificate::{is_slice_initial, theorem_a_certificate, Certificate};
use crate::category::{inverse, FiniteCategory, Functor, ProductCategory};
use crate::enumeration::{EnumerationError, LemmaSides, Multifunctor};
use crate::multicat::{build_e, build_i, BasedMulticategory, ObjectId};

/// Outcome of the three checks on `M → M^I → M × M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathObjectReport {
    /// `0*: Hom(E, M) → Hom(I, M)` has initial objects in every slice.
    #[serde(serialize_with = "super::outcome")]
    pub weak_equivalence: Result<Certificate, String>,
    /// Over each `0*(A)` the object `(A, identity)` is initial.
    pub identities_initial: bool,
    /// The composite `Hom(E, M) → Hom(I, M) → Hom(E, M)²` is the diagonal.
    pub diagonal: bool,
    /// Every pair of isomorphisms out of the image of an object lifts to an
    /// isomorphism in `Hom(I, M)`.
    #[serde(serialize_with = "super::outcome")]
    pub iso_lifting: Result<(), String>,
}

impl PathObjectReport {
    pub fn passes(&self) -> bool {
        self.weak_equivalence.is_ok() && self.identities_initial && self.diagonal && self.iso_lifting.is_ok()
    }
}

pub fn path_object_check(m: &BasedMulticategory, budget: u64) -> Result<PathObjectReport, EnumerationError> {
    let sides = LemmaSides::build(m, budget)?;
    let cap = m.arity_cap();
    let (e, i) = (build_e(cap), build_i(cap));
    let collapse = Multifunctor::thin(&i, &e, vec![ObjectId(0), ObjectId(1), ObjectId(1)])
        .expect("I collapses onto E");
    let zero = sides
        .hom_e
        .precompose(&collapse, &sides.hom_i)
        .expect("precomposition along I → E");
    let (hom_e, hom_i) = (&sides.hom_e, &sides.hom_i);

    let weak_equivalence = theorem_a_certificate(&zero, hom_e, hom_i);
    let identities_initial = (0..hom_e.object_count()).all(|a| {
        let y = zero.object_map[a];
        is_slice_initial(&zero, hom_e, hom_i, y, a, hom_i.identity(y))
    });

    let square = ProductCategory::power(hom_e, 2);
    let projection = Functor {
        object_map: (0..hom_i.object_count())
            .map(|x| square.encode_objects(&[sides.restrict_low.object_map[x], sides.restrict_high.object_map[x]]))
            .collect(),
        arrow_map: (0..hom_i.arrow_count())
            .map(|t| square.encode_arrows(&[sides.restrict_low.arrow_map[t], sides.restrict_high.arrow_map[t]]))
            .collect(),
    };
    let diagonal = (0..hom_e.object_count()).all(|a| {
        projection.object_map[zero.object_map[a]] == square.encode_objects(&[a, a])
    }) && (0..hom_e.arrow_count()).all(|f| {
        projection.arrow_map[zero.arrow_map[f]] == square.encode_arrows(&[f, f])
    });

    let iso_lifting = iso_lifting(&projection, hom_i, &square);
    Ok(PathObjectReport {
        weak_equivalence,
        identities_initial,
        diagonal,
        iso_lifting,
    })
}

fn iso_lifting<C, D>(p: &Functor, c: &C, d: &D) -> Result<(), String>
where
    C: FiniteCategory + ?Sized,
    D: FiniteCategory + ?Sized,
{
    for x in 0..c.object_count() {
        let mut lifted: Vec<usize> = (0..c.object_count())
            .flat_map(|x2| c.hom(x, x2).into_owned())
            .filter(|&t| inverse(c, t).is_some())
            .map(|t| p.arrow_map[t])
            .collect();
        lifted.sort_unstable();
        let y = p.object_map[x];
        for y2 in 0..d.object_count() {
            for &u in d.hom(y, y2).iter() {
                if inverse(d, u).is_some() && lifted.binary_search(&u).is_err() {
                    return Err(format!(
                        "isomorphism {} out of the image of {} does not lift",
                        d.arrow_label(u),
                        c.object_label(x)
                    ));
                }
            }
        }
    }
    Ok(())
}
