//! Commutative monoids and modules over the basepoint monoid.

use thiserror::Error;

use super::builder::Presentation;
use super::validate::Violation;
use super::{build, ArrowId, BasedMulticategory, Multicategory, ObjectId};
use crate::perm::Perm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("expected {expected} monoid arrows, found {found}")]
    MonoidLength { expected: usize, found: usize },
    #[error("mu_{n} does not have profile (a^{n}; a)")]
    MonoidProfile { n: usize },
    #[error("action arrow does not have profile (b, m; m)")]
    ModuleProfile,
}

/// `a` together with `λ_1 ∈ M(b, m; m)`; the higher actions are the derived
/// composites `λ_k = γ(λ_1; μ_k, 1_m)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleDatum {
    pub m: ObjectId,
    pub lambda1: ArrowId,
}

fn check_monoid_profiles(m: &Multicategory, a: ObjectId, mu: &[ArrowId]) -> Result<(), AlgebraError> {
    if mu.len() != m.arity_cap() + 1 {
        return Err(AlgebraError::MonoidLength {
            expected: m.arity_cap() + 1,
            found: mu.len(),
        });
    }
    for (n, &f) in mu.iter().enumerate() {
        if f.index() >= m.arrow_count()
            || m.target(f) != a
            || m.arity(f) != n
            || m.source(f).iter().any(|&o| o != a)
        {
            return Err(AlgebraError::MonoidProfile { n });
        }
    }
    Ok(())
}

/// Every failed monoid axiom for `mu` at object `a`. Profiles are assumed
/// correct.
pub(crate) fn monoid_violations(m: &Multicategory, a: ObjectId, mu: &[ArrowId]) -> Vec<Violation> {
    let mut out = Vec::new();
    if mu.len() > 1 && mu[1] != m.unit(a) {
        out.push(Violation::MonoidUnit);
    }
    for (n, &f) in mu.iter().enumerate() {
        for sigma in Perm::all(n) {
            if m.act(f, &sigma) != f {
                out.push(Violation::MonoidInvariance { n, sigma });
            }
        }
    }
    let cap = m.arity_cap();
    for k in 1..mu.len() {
        for inner in compositions(k, cap) {
            let gs: Vec<ArrowId> = inner.iter().map(|&j| mu[j]).collect();
            let total: usize = inner.iter().sum();
            if m.compose(mu[k], &gs) != Some(mu[total]) {
                out.push(Violation::MonoidComposition { outer: k, inner });
            }
        }
    }
    out
}

/// Sequences of `k` naturals with sum at most `cap`, lexicographically.
fn compositions(k: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in out {
            let used: usize = prefix.iter().sum();
            for j in 0..=cap - used {
                let mut v = prefix.clone();
                v.push(j);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// True iff `mu` makes `a` a commutative monoid: `μ_1 = 1_a`, each `μ_n` is
/// fixed by `Σ_n`, and `γ(μ_k; μ_{m_1}, …, μ_{m_k}) = μ_{Σm_i}` within the cap.
pub fn monoid_check(m: &Multicategory, a: ObjectId, mu: &[ArrowId]) -> Result<bool, AlgebraError> {
    check_monoid_profiles(m, a, mu)?;
    Ok(monoid_violations(m, a, mu).is_empty())
}

/// Every commutative monoid structure on `a`, lexicographically by `μ`.
pub fn monoid_data(m: &Multicategory, a: ObjectId) -> Vec<Vec<ArrowId>> {
    let cap = m.arity_cap();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(cap + 1);
    monoid_rec(m, a, cap, &mut current, &mut out);
    out
}

fn monoid_rec(
    m: &Multicategory,
    a: ObjectId,
    cap: usize,
    current: &mut Vec<ArrowId>,
    out: &mut Vec<Vec<ArrowId>>,
) {
    let n = current.len();
    if n > cap {
        out.push(current.clone());
        return;
    }
    let source = vec![a; n];
    for &f in m.hom(&source, a) {
        if n == 1 && f != m.unit(a) {
            continue;
        }
        if Perm::all(n).iter().any(|s| m.act(f, s) != f) {
            continue;
        }
        current.push(f);
        if prefix_consistent(m, current) {
            monoid_rec(m, a, cap, current, out);
        }
        current.pop();
    }
}

/// Composition equations whose every participant has arity `< current.len()`
/// and at least one participant is the newest entry.
fn prefix_consistent(m: &Multicategory, mu: &[ArrowId]) -> bool {
    let top = mu.len() - 1;
    for k in 1..=top {
        for inner in compositions(k, top) {
            let total: usize = inner.iter().sum();
            if k != top && total != top && !inner.contains(&top) {
                continue;
            }
            let gs: Vec<ArrowId> = inner.iter().map(|&j| mu[j]).collect();
            if m.compose(mu[k], &gs) != Some(mu[total]) {
                return false;
            }
        }
    }
    true
}

/// `λ_k = γ(λ_1; μ_k, 1_m)` for `0 ≤ k < cap`.
pub(crate) fn derived_actions(m: &BasedMulticategory, d: ModuleDatum) -> Option<Vec<ArrowId>> {
    let unit = m.unit(d.m);
    (0..m.arity_cap())
        .map(|k| m.compose(d.lambda1, &[m.mu(k), unit]))
        .collect()
}

/// True iff `d` is a module over the basepoint monoid: `λ_0 = 1_m`, each `λ_k`
/// is invariant under permuting its `b`-inputs, and
/// `γ(λ_k; μ_{j_1}, …, μ_{j_k}, λ_l) = λ_{Σj_i + l}` within the cap.
pub fn module_check(m: &BasedMulticategory, d: ModuleDatum) -> Result<bool, AlgebraError> {
    let b = m.basepoint();
    if d.m.index() >= m.object_count()
        || d.lambda1.index() >= m.arrow_count()
        || m.source(d.lambda1) != [b, d.m]
        || m.target(d.lambda1) != d.m
    {
        return Err(AlgebraError::ModuleProfile);
    }
    Ok(module_holds(m, d))
}

fn module_holds(m: &BasedMulticategory, d: ModuleDatum) -> bool {
    let cap = m.arity_cap();
    let Some(lambda) = derived_actions(m, d) else {
        return false;
    };
    if lambda[0] != m.unit(d.m) {
        return false;
    }
    for (k, &l) in lambda.iter().enumerate() {
        for sigma in Perm::all(k) {
            let tau = Perm::block_sum(&[sigma, Perm::identity(1)]);
            if m.act(l, &tau) != l {
                return false;
            }
        }
    }
    for (k, &lk) in lambda.iter().enumerate() {
        for inner in compositions(k, cap - 1) {
            let used: usize = inner.iter().sum();
            for (l, &ll) in lambda.iter().enumerate().take(cap - used) {
                let mut gs: Vec<ArrowId> = inner.iter().map(|&j| m.mu(j)).collect();
                gs.push(ll);
                if m.compose(lk, &gs) != Some(lambda[used + l]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every module over the basepoint monoid, ordered by `(m, λ_1)`.
pub fn module_data(m: &BasedMulticategory) -> Vec<ModuleDatum> {
    let b = m.basepoint();
    let mut out = Vec::new();
    for o in m.objects() {
        for &lambda1 in m.hom(&[b, o], o) {
            let d = ModuleDatum { m: o, lambda1 };
            if module_holds(m, d) {
                out.push(d);
            }
        }
    }
    out
}

/// The multicategory of modules over the basepoint monoid, with the arrows
/// of `M` that commute with the actions in every input slot.
#[derive(Clone, Debug)]
pub struct ModulesOf {
    pub multicategory: BasedMulticategory,
    /// Object `i` is `data[i]`.
    pub data: Vec<ModuleDatum>,
    /// The arrow of `M` underlying each arrow.
    pub underlying: Vec<ArrowId>,
}

struct Compatible<'a> {
    m: &'a BasedMulticategory,
    data: &'a [ModuleDatum],
}

impl Compatible<'_> {
    /// `γ(λ_d; 1_b, f) = σ_i* γ(f; 1, …, λ_{d_i}, …, 1)` for every slot `i`,
    /// where `σ_i` brings the `b`-input at position `i` to the front.
    fn compatible(&self, f: ArrowId, source: &[ObjectId], target: ObjectId) -> bool {
        let m = self.m;
        let k = source.len();
        let b = m.basepoint();
        let lhs = m.compose(self.data[target.index()].lambda1, &[m.unit(b), f]);
        for i in 0..k {
            let mut gs: Vec<ArrowId> = source
                .iter()
                .map(|s| m.unit(self.data[s.index()].m))
                .collect();
            gs[i] = self.data[source[i].index()].lambda1;
            let mut images = Vec::with_capacity(k + 1);
            images.push(i);
            images.extend((0..=k).filter(|&j| j != i));
            let sigma = Perm::from_images(images).expect("permutation");
            let rhs = m.compose(f, &gs).map(|h| m.act(h, &sigma));
            if lhs.is_none() || lhs != rhs {
                return false;
            }
        }
        true
    }
}

impl Presentation for Compatible<'_> {
    type Key = ArrowId;

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<ArrowId> {
        let under: Vec<ObjectId> = source.iter().map(|s| self.data[s.index()].m).collect();
        self.m
            .hom(&under, self.data[target.index()].m)
            .iter()
            .copied()
            .filter(|&f| self.compatible(f, source, target))
            .collect()
    }

    fn unit(&self, object: ObjectId) -> ArrowId {
        self.m.unit(self.data[object.index()].m)
    }

    fn compose(&self, f: &ArrowId, gs: &[&ArrowId]) -> ArrowId {
        let gs: Vec<ArrowId> = gs.iter().map(|g| **g).collect();
        self.m.compose(*f, &gs).expect("composite within the cap")
    }

    fn act(&self, f: &ArrowId, _source: &[ObjectId], sigma: &Perm) -> ArrowId {
        self.m.act(*f, sigma)
    }

    fn label(&self, key: &ArrowId) -> String {
        key.to_string()
    }
}

/// Builds the module multicategory at arity cap `cap(M) - 1`, since checking
/// compatibility of a `k`-arrow needs composites of arity `k + 1`. Based at
/// the basepoint acting on itself by `μ_2`.
pub fn modules_of(m: &BasedMulticategory) -> Result<ModulesOf, super::ConstructionError> {
    let cap = m.arity_cap();
    if cap < 2 {
        return Err(super::ConstructionError::CapMismatch(cap, 2));
    }
    let data = module_data(m);
    let labels: Vec<String> = data
        .iter()
        .map(|d| format!("{}@{}", m.object_label(d.m), d.lambda1))
        .collect();
    let presentation = Compatible { m, data: &data };
    let built = build(&presentation, labels, cap - 1)?;
    let base_datum = ModuleDatum {
        m: m.basepoint(),
        lambda1: m.mu(2),
    };
    let base = data
        .iter()
        .position(|d| *d == base_datum)
        .map(|i| ObjectId(i as u32))
        .ok_or(super::ConstructionError::BasepointMismatch)?;
    let underlying: Vec<ArrowId> = built
        .arrows()
        .map(|f| {
            let hom = presentation.hom(built.source(f), built.target(f));
            let pos = built
                .hom(built.source(f), built.target(f))
                .iter()
                .position(|&g| g == f)
                .expect("arrow in its hom-set");
            hom[pos]
        })
        .collect();
    let mu: Vec<ArrowId> = (0..cap)
        .map(|n| {
            let target = m.mu(n);
            let src = vec![base; n];
            let pos = underlying_position(&built, &underlying, &src, base, target);
            pos.expect("monoid arrows are compatible")
        })
        .collect();
    let based = BasedMulticategory::new(built, base, mu)
        .map_err(super::ConstructionError::Based)?;
    Ok(ModulesOf {
        multicategory: based,
        data,
        underlying,
    })
}

fn underlying_position(
    built: &Multicategory,
    underlying: &[ArrowId],
    source: &[ObjectId],
    target: ObjectId,
    arrow: ArrowId,
) -> Option<ArrowId> {
    built
        .hom(source, target)
        .iter()
        .copied()
        .find(|g| underlying[g.index()] == arrow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::{
        build_e, build_i, build_terminal, from_permutative, PermutativeCategory, E_MODULE,
        E_MONOID,
    };

    /// All lists `(μ_0, …, μ_cap)` at `a`, filtered by the axioms one by one.
    fn brute_monoids(m: &Multicategory, a: ObjectId) -> usize {
        let mut lists = vec![Vec::new()];
        for n in 0..=m.arity_cap() {
            let hom = m.hom(&vec![a; n], a);
            let mut next = Vec::new();
            for l in &lists {
                for &f in hom {
                    let mut v: Vec<ArrowId> = l.clone();
                    v.push(f);
                    next.push(v);
                }
            }
            lists = next;
        }
        lists
            .iter()
            .filter(|mu| monoid_violations(m, a, mu).is_empty())
            .count()
    }

    #[test]
    fn monoid_search_matches_brute_force() {
        let samples = [
            build_terminal(3),
            build_e(3),
            build_i(3),
            from_permutative(&PermutativeCategory::delooped_cyclic(3), 3).unwrap(),
            from_permutative(&PermutativeCategory::discrete_cyclic(2), 3).unwrap(),
        ];
        for m in &samples {
            for a in m.objects() {
                assert_eq!(monoid_data(m, a).len(), brute_monoids(m, a));
            }
        }
    }

    #[test]
    fn monoids_in_e() {
        let e = build_e(4);
        assert!(monoid_check(&e, E_MONOID, e.mus()).unwrap());
        assert!(monoid_data(&e, E_MODULE).is_empty());
        assert_eq!(monoid_data(&e, E_MONOID), vec![e.mus().to_vec()]);
    }

    #[test]
    fn delooped_cyclic_monoids_are_multiples() {
        let m = from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
        assert_eq!(monoid_data(&m, ObjectId(0)).len(), 3);
    }

    #[test]
    fn module_counts() {
        let e = build_e(4);
        assert_eq!(module_data(&e).len(), 2);
        let m = from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
        let data = module_data(&m);
        assert_eq!(data.len(), 1);
        assert!(m.arrow(data[0].lambda1).label.ends_with('0'));
        assert_eq!(module_data(&build_terminal(4)).len(), 1);
        assert_eq!(module_data(&build_i(4)).len(), 3);
    }

    #[test]
    fn module_profile_is_checked() {
        let e = build_e(4);
        let d = ModuleDatum {
            m: E_MODULE,
            lambda1: e.unit(E_MODULE),
        };
        assert_eq!(module_check(&e, d), Err(AlgebraError::ModuleProfile));
    }

    #[test]
    fn modules_of_e_is_e() {
        let e = build_e(4);
        let mods = modules_of(&e).unwrap();
        let me = &mods.multicategory;
        assert_eq!(me.object_count(), 2);
        let small = crate::multicat::truncate(&e, 3);
        assert_eq!(me.arrow_count(), small.arrow_count());
        for (src, t) in small.profiles() {
            let src2: Vec<ObjectId> = src.iter().map(|o| ObjectId(o.0)).collect();
            assert_eq!(me.hom(&src2, t).len(), small.hom(&src, t).len());
        }
    }
}
