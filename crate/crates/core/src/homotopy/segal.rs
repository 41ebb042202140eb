use serde::Serialize;

use super::certificate::{
    equivalence_certificate, pi0_category, theorem_a_certificate, Certificate, CertificateKind,
    Witness,
};
use super::groups::{GroupDescription, GroupTable};
use crate::category::{components, FiniteCategory, Functor, ProductCategory};
use crate::gamma::{GammaObject, PointedMap};

/// `p_n: X_n → X_1ⁿ` as a functor into the encoded product category.
pub fn segal_map(x: &GammaObject, n: usize) -> Functor {
    let one: &dyn FiniteCategory = x.level(1);
    let product = ProductCategory::power(one, n);
    let rhos: Vec<Functor> = (1..=n).map(|i| x.action(&PointedMap::projection(n, i))).collect();
    let level = x.level(n);
    let object_map = (0..level.object_count())
        .map(|a| {
            let parts: Vec<usize> = rhos.iter().map(|r| r.object_map[a]).collect();
            product.encode_objects(&parts)
        })
        .collect();
    let arrow_map = (0..level.arrow_count())
        .map(|f| {
            let parts: Vec<usize> = rhos.iter().map(|r| r.arrow_map[f]).collect();
            product.encode_arrows(&parts)
        })
        .collect();
    Functor {
        object_map,
        arrow_map,
    }
}

/// Certifies `p_n` as a weak equivalence: initial objects in every slice
/// first, then a categorical equivalence.
pub fn segal_certificate(x: &GammaObject, n: usize) -> Result<Certificate, String> {
    let p = segal_map(x, n);
    let product = ProductCategory::power(x.level(1), n);
    let initial = match theorem_a_certificate(&p, x.level(n), &product) {
        Ok(c) => return Ok(c),
        Err(e) => e,
    };
    equivalence_certificate(&p, x.level(n), &product)
        .map_err(|e| format!("no initial objects ({initial}); no equivalence ({e})"))
}

/// `π₀(X_1)` with the product induced by the fold map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0Monoid {
    /// Level-1 objects in each class.
    pub classes: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    pub commutative: bool,
    pub associative: bool,
    pub group: bool,
    /// Whether the threefold products read off level 3 agree with the
    /// table; `None` without level 3.
    pub level_three_consistent: Option<bool>,
    pub name: Option<String>,
}

impl Pi0Monoid {
    pub fn is_abelian_group(&self) -> bool {
        self.group && self.commutative
    }

    fn table(&self) -> GroupTable {
        GroupTable {
            identity: self.unit,
            mul: self.table.clone(),
        }
    }
}

/// Reads the monoid structure on `π₀(X_1)` off level 2: `[A]·[B]` is the
/// class of `∇ x` for any `x` whose Segal image is `([A], [B])`. Every
/// preimage is checked to give the same class.
pub fn pi0_monoid(x: &GammaObject) -> Result<Pi0Monoid, String> {
    if x.top() < 2 {
        return Err("π₀ monoid needs level 2".into());
    }
    segal_certificate(x, 2).map_err(|e| format!("Segal condition not certified at level 2: {e}"))?;
    let one = x.level(1);
    let class = components(one);
    let classes = pi0_category(one);
    let k = classes.len();
    let rho: Vec<Functor> = (1..=2).map(|i| x.action(&PointedMap::projection(2, i))).collect();
    let fold = x.action(&PointedMap::fold(2));
    let mut table = vec![vec![usize::MAX; k]; k];
    for a in 0..x.level(2).object_count() {
        let (p, q) = (class[rho[0].object_map[a]], class[rho[1].object_map[a]]);
        let r = class[fold.object_map[a]];
        if table[p][q] == usize::MAX {
            table[p][q] = r;
        } else if table[p][q] != r {
            return Err(format!("product of classes {p} and {q} is not well defined"));
        }
    }
    for (p, row) in table.iter().enumerate() {
        if let Some(q) = row.iter().position(|&r| r == usize::MAX) {
            return Err(format!("no level-2 object lies over classes ({p}, {q})"));
        }
    }
    let base = x.action(&PointedMap {
        m: 0,
        n: 1,
        images: Vec::new(),
    });
    let unit = class[base.object_map[0]];
    let labels = classes
        .iter()
        .map(|objs| one.object_label(objs[0]))
        .collect();
    let mut out = Pi0Monoid {
        classes,
        labels,
        unit,
        table,
        commutative: false,
        associative: false,
        group: false,
        level_three_consistent: None,
        name: None,
    };
    let t = out.table();
    out.commutative = t.is_commutative();
    out.associative = t.is_associative();
    out.group = t.is_group();
    if out.is_abelian_group() {
        out.name = Some(t.describe().name);
    }
    if x.top() >= 3 {
        let rho: Vec<Functor> = (1..=3).map(|i| x.action(&PointedMap::projection(3, i))).collect();
        let fold = x.action(&PointedMap::fold(3));
        let consistent = (0..x.level(3).object_count()).all(|a| {
            let c: Vec<usize> = rho.iter().map(|r| class[r.object_map[a]]).collect();
            class[fold.object_map[a]] == out.table[out.table[c[0]][c[1]]][c[2]]
        });
        out.level_three_consistent = Some(consistent);
    }
    Ok(out)
}

/// Automorphism groups of one object per component of level `n`, or
/// `None` when the level is not a groupoid.
pub fn pi1_level(x: &GammaObject, n: usize) -> Option<Vec<GroupDescription>> {
    let level = x.level(n);
    if !level.is_groupoid() {
        return None;
    }
    Some(
        pi0_category(level)
            .iter()
            .map(|objs| GroupTable::automorphisms(level, objs[0]).describe())
            .collect(),
    )
}

/// `A ⊗ B` for level-1 objects, read off the initial objects of the Segal
/// slices at level 2, with its comparison to the π₀ monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryTensor {
    pub table: Vec<Vec<usize>>,
    pub descends_to_pi0: bool,
    pub commutative_on_pi0: bool,
    pub associative_on_pi0: bool,
    /// `None` when the π₀ monoid is unavailable.
    pub agrees_with_pi0: Option<bool>,
}

pub fn extract_binary_tensor(x: &GammaObject, cert: &Certificate) -> Result<BinaryTensor, String> {
    let Witness::InitialObjects(objs) = &cert.witness else {
        return Err("tensor not extracted: the certificate has no initial objects".into());
    };
    if cert.kind != CertificateKind::InitialObjectPerSlice {
        return Err("tensor not extracted: the certificate has no initial objects".into());
    }
    let one = x.level(1);
    let n1 = one.object_count();
    if objs.len() != n1 * n1 {
        return Err("certificate does not belong to level 2".into());
    }
    let fold = x.action(&PointedMap::fold(2));
    let product = ProductCategory::power(one, 2);
    let table: Vec<Vec<usize>> = (0..n1)
        .map(|a| {
            (0..n1)
                .map(|b| fold.object_map[objs[product.encode_objects(&[a, b])].0])
                .collect()
        })
        .collect();
    let class = components(one);
    let k = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut on_classes = vec![vec![usize::MAX; k]; k];
    let mut descends = true;
    for a in 0..n1 {
        for b in 0..n1 {
            let slot = &mut on_classes[class[a]][class[b]];
            let r = class[table[a][b]];
            if *slot != usize::MAX && *slot != r {
                descends = false;
            }
            *slot = r;
        }
    }
    let (commutative, associative) = if descends {
        let t = GroupTable {
            identity: 0,
            mul: on_classes.clone(),
        };
        (t.is_commutative(), t.is_associative())
    } else {
        (false, false)
    };
    let agrees = pi0_monoid(x).ok().map(|m| descends && m.table == on_classes);
    Ok(BinaryTensor {
        table,
        descends_to_pi0: descends,
        commutative_on_pi0: commutative,
        associative_on_pi0: associative,
        agrees_with_pi0: agrees,
    })
}
