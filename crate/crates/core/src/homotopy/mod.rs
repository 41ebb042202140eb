//! Certificates for weak equivalences of nerves and the homotopy invariants
//! of `J(M)` visible at small levels.

mod certificate;
mod groups;
mod path;
mod segal;

use rayon::prelude::*;
use serde::Serialize;

pub use certificate::{
    equivalence_certificate, is_slice_initial, isomorphism_certificate, pi0_category,
    slice_category, slice_objects, theorem_a_certificate, Certificate, CertificateKind, Witness,
};
pub use groups::{GroupDescription, GroupTable};
pub use path::{path_object_check, PathObjectReport};
pub use segal::{
    extract_binary_tensor, pi0_monoid, pi1_level, segal_certificate, segal_map, BinaryTensor,
    Pi0Monoid,
};

use crate::category::FiniteCategory;
use crate::gamma::GammaObject;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub level: usize,
    pub objects: usize,
    pub arrows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalVerdict {
    pub level: usize,
    pub certified: bool,
    pub certificate: Option<Certificate>,
    /// Why no certificate was found; `None` when certified.
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Verdict {
    pub level: usize,
    /// One group per component, or `None` for a level that is not a groupoid.
    pub groups: Option<Vec<GroupDescription>>,
}

/// Everything the homotopy layer reads off a computed `J(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTheoryReport {
    pub levels: Vec<LevelCounts>,
    pub segal: Vec<SegalVerdict>,
    pub special: bool,
    #[serde(serialize_with = "outcome")]
    pub pi0: Result<Pi0Monoid, String>,
    pub pi1: Vec<Pi1Verdict>,
    pub very_special: bool,
    pub stable_pi0: Option<String>,
    pub stable_pi1: Option<String>,
}

/// Segal certificates for `2 ≤ n ≤ L` (computed concurrently), the π₀
/// monoid, π₁ of groupoid levels and the resulting verdicts.
pub fn very_special_verdict(x: &GammaObject) -> KTheoryReport {
    let levels = x
        .levels()
        .iter()
        .enumerate()
        .map(|(level, c)| LevelCounts {
            level,
            objects: c.object_count(),
            arrows: c.arrow_count(),
        })
        .collect();
    let segal: Vec<SegalVerdict> = (2..=x.top())
        .into_par_iter()
        .map(|n| match segal_certificate(x, n) {
            Ok(c) => SegalVerdict {
                level: n,
                certified: true,
                certificate: Some(c),
                reason: None,
            },
            Err(e) => SegalVerdict {
                level: n,
                certified: false,
                certificate: None,
                reason: Some(e),
            },
        })
        .collect();
    let special = segal.iter().all(|v| v.certified);
    let pi0 = pi0_monoid(x);
    let pi1: Vec<Pi1Verdict> = (1..=x.top())
        .map(|level| Pi1Verdict {
            level,
            groups: pi1_level(x, level),
        })
        .collect();
    let group_like = pi0.as_ref().is_ok_and(|m| m.is_abelian_group());
    let very_special = special && group_like;
    let (mut stable_pi0, mut stable_pi1) = (None, None);
    if very_special {
        let monoid = pi0.as_ref().expect("very special has a π₀ group");
        stable_pi0 = monoid.name.clone();
        if let Some(groups) = &pi1[0].groups {
            stable_pi1 = Some(groups[monoid.unit].name.clone());
        }
    }
    KTheoryReport {
        levels,
        segal,
        special,
        pi0,
        pi1,
        very_special,
        stable_pi0,
        stable_pi1,
    }
}

/// `{"ok": value}` or `{"failure": reason}`.
pub fn outcome<T: Serialize, S: serde::Serializer>(
    value: &Result<T, String>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = serializer.serialize_map(Some(1))?;
    match value {
        Ok(v) => map.serialize_entry("ok", v)?,
        Err(e) => map.serialize_entry("failure", e)?,
    }
    map.end()
}

#[cfg(test)]
mod tests;
