//! Named multicategories and the product, wedge and truncation constructions.

use thiserror::Error;

use super::builder::{build, BuildError, Presentation};
use super::{ArrowId, BasedError, BasedMulticategory, Multicategory, ObjectId};
use crate::perm::Perm;

/// Basepoint object of `E`.
pub const E_MONOID: ObjectId = ObjectId(0);
/// Module object of `E`.
pub const E_MODULE: ObjectId = ObjectId(1);

/// A presentation whose hom-sets are singletons or empty.
struct Thin<F>(F);

impl<F: Fn(&[ObjectId], ObjectId) -> bool> Presentation for Thin<F> {
    type Key = ();

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<()> {
        if (self.0)(source, target) {
            vec![()]
        } else {
            Vec::new()
        }
    }

    fn unit(&self, _: ObjectId) {}

    fn compose(&self, _: &(), _: &[&()]) {}

    fn act(&self, _: &(), _: &[ObjectId], _: &Perm) {}
}

fn based_at_zero(m: Multicategory) -> BasedMulticategory {
    let b = ObjectId(0);
    let mu = (0..=m.arity_cap())
        .map(|n| {
            let src = vec![b; n];
            m.hom(&src, b)[0]
        })
        .collect();
    BasedMulticategory::new(m, b, mu).expect("thin monoid at object 0")
}

fn thin(
    objects: Vec<String>,
    arity_cap: usize,
    pred: impl Fn(&[ObjectId], ObjectId) -> bool,
) -> BasedMulticategory {
    let m = build(&Thin(pred), objects, arity_cap).expect("thin presentation is closed");
    based_at_zero(m)
}

/// The terminal multicategory `*`: one object, one n-arrow for every n.
pub fn build_terminal(arity_cap: usize) -> BasedMulticategory {
    thin(vec!["*".into()], arity_cap, |_, _| true)
}

/// `E`: objects 0 and 1, `E(a_1, …, a_n; b)` a singleton iff `Σ a_i = b`.
pub fn build_e(arity_cap: usize) -> BasedMulticategory {
    power_e(1, arity_cap)
}

/// `Eⁿ` by its direct description: objects `{0,1}ⁿ`, an arrow exactly when
/// sources sum coordinatewise to the target. Object ids are bit masks, with
/// coordinate `j` stored in bit `j`; labels list coordinates left to right.
pub fn power_e(n: usize, arity_cap: usize) -> BasedMulticategory {
    let count = 1usize << n;
    let objects = (0..count)
        .map(|mask| {
            if n == 0 {
                "*".to_string()
            } else {
                (0..n)
                    .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            }
        })
        .collect();
    thin(objects, arity_cap, move |source, target| {
        (0..n).all(|j| {
            let sum: u32 = source.iter().map(|o| o.0 >> j & 1).sum();
            sum == target.0 >> j & 1
        })
    })
}

/// `I`: a basepoint monoid 0, two modules 1 and 2, and a module map 1 → 2.
pub fn build_i(arity_cap: usize) -> BasedMulticategory {
    let objects = vec!["0".into(), "1".into(), "2".into()];
    thin(objects, arity_cap, |source, target| {
        let nonzero: Vec<u32> = source.iter().map(|o| o.0).filter(|&v| v != 0).collect();
        match target.0 {
            0 => nonzero.is_empty(),
            1 => nonzero == [1],
            _ => nonzero.len() == 1,
        }
    })
}

/// `u = * ⨿ [0]`: the basepoint monoid plus an isolated object `x`.
pub fn build_unit_u(arity_cap: usize) -> BasedMulticategory {
    let objects = vec!["*".into(), "x".into()];
    thin(objects, arity_cap, |source, target| match target.0 {
        0 => source.iter().all(|o| o.0 == 0),
        _ => source == [ObjectId(1)],
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("arity caps differ ({0} vs {1})")]
    CapMismatch(usize, usize),
    #[error("basepoint sub-multicategories differ, wedge is not defined by the formula")]
    BasepointMismatch,
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Based(#[from] BasedError),
}

struct Product<'a> {
    left: &'a Multicategory,
    right: &'a Multicategory,
}

impl Product<'_> {
    fn split(&self, o: ObjectId) -> (ObjectId, ObjectId) {
        let n = self.right.object_count() as u32;
        (ObjectId(o.0 / n), ObjectId(o.0 % n))
    }

    fn split_all(&self, objects: &[ObjectId]) -> (Vec<ObjectId>, Vec<ObjectId>) {
        objects.iter().map(|&o| self.split(o)).unzip()
    }
}

impl Presentation for Product<'_> {
    type Key = (ArrowId, ArrowId);

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<Self::Key> {
        let (ls, rs) = self.split_all(source);
        let (lt, rt) = self.split(target);
        let lh = self.left.hom(&ls, lt);
        let rh = self.right.hom(&rs, rt);
        lh.iter()
            .flat_map(|&l| rh.iter().map(move |&r| (l, r)))
            .collect()
    }

    fn unit(&self, o: ObjectId) -> Self::Key {
        let (l, r) = self.split(o);
        (self.left.unit(l), self.right.unit(r))
    }

    fn compose(&self, f: &Self::Key, gs: &[&Self::Key]) -> Self::Key {
        let lg: Vec<ArrowId> = gs.iter().map(|g| g.0).collect();
        let rg: Vec<ArrowId> = gs.iter().map(|g| g.1).collect();
        (
            self.left.compose(f.0, &lg).expect("left composite"),
            self.right.compose(f.1, &rg).expect("right composite"),
        )
    }

    fn act(&self, f: &Self::Key, _: &[ObjectId], sigma: &Perm) -> Self::Key {
        (self.left.act(f.0, sigma), self.right.act(f.1, sigma))
    }
}

/// Cartesian product; hom-sets, composition, action, units and the basepoint
/// monoid are all componentwise. Objects are pairs, left coordinate major.
pub fn cartesian_product(
    m: &BasedMulticategory,
    n: &BasedMulticategory,
) -> Result<BasedMulticategory, ConstructionError> {
    if m.arity_cap() != n.arity_cap() {
        return Err(ConstructionError::CapMismatch(m.arity_cap(), n.arity_cap()));
    }
    let mut objects = Vec::with_capacity(m.object_count() * n.object_count());
    for a in m.object_labels() {
        for b in n.object_labels() {
            objects.push(format!("({a};{b})"));
        }
    }
    let p = Product { left: m, right: n };
    let base = build(&p, objects, m.arity_cap())?;
    let basepoint = ObjectId(m.basepoint().0 * n.object_count() as u32 + n.basepoint().0);
    let mu = (0..=m.arity_cap())
        .map(|k| {
            let src = vec![basepoint; k];
            let pair = (m.mu(k), n.mu(k));
            let hom = base.hom(&src, basepoint);
            let pos = p.hom(&src, basepoint).iter().position(|x| *x == pair).unwrap();
            hom[pos]
        })
        .collect();
    Ok(BasedMulticategory::new(base, basepoint, mu)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Left(ArrowId),
    Right(ArrowId),
}

struct Wedge<'a> {
    left: &'a BasedMulticategory,
    right: &'a BasedMulticategory,
    /// wedge object ids of the right summand's objects
    right_objects: Vec<ObjectId>,
}

enum Region {
    Base,
    Left,
    Right,
    Mixed,
}

impl Wedge<'_> {
    fn left_count(&self) -> u32 {
        self.left.object_count() as u32
    }

    fn region<'x>(&self, objects: impl Iterator<Item = &'x ObjectId>) -> Region {
        let (mut l, mut r) = (false, false);
        for o in objects {
            if *o == self.left.basepoint() {
                continue;
            }
            if o.0 < self.left_count() {
                l = true;
            } else {
                r = true;
            }
        }
        match (l, r) {
            (false, false) => Region::Base,
            (true, false) => Region::Left,
            (false, true) => Region::Right,
            (true, true) => Region::Mixed,
        }
    }

    fn to_right(&self, o: ObjectId) -> ObjectId {
        ObjectId(self.right_objects.iter().position(|x| *x == o).unwrap() as u32)
    }

    /// Views an arrow as one of the right summand.
    fn right_arrow(&self, key: &Side) -> ArrowId {
        match *key {
            Side::Right(a) => a,
            Side::Left(a) => {
                // only basepoint-profile arrows are shared
                let n = self.left.arity(a);
                let src = vec![self.left.basepoint(); n];
                let pos = self
                    .left
                    .hom(&src, self.left.basepoint())
                    .iter()
                    .position(|x| *x == a)
                    .expect("shared arrow lies over the basepoint");
                let rsrc = vec![self.right.basepoint(); n];
                self.right.hom(&rsrc, self.right.basepoint())[pos]
            }
        }
    }

    fn left_arrow(&self, key: &Side) -> ArrowId {
        match *key {
            Side::Left(a) => a,
            Side::Right(_) => panic!("right arrow in a left composite"),
        }
    }
}

impl Presentation for Wedge<'_> {
    type Key = Side;

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<Side> {
        match self.region(source.iter().chain(std::iter::once(&target))) {
            Region::Base | Region::Left => self
                .left
                .hom(source, target)
                .iter()
                .map(|&a| Side::Left(a))
                .collect(),
            Region::Right => {
                let src: Vec<ObjectId> = source.iter().map(|&o| self.to_right(o)).collect();
                self.right
                    .hom(&src, self.to_right(target))
                    .iter()
                    .map(|&a| Side::Right(a))
                    .collect()
            }
            Region::Mixed => Vec::new(),
        }
    }

    fn unit(&self, o: ObjectId) -> Side {
        if o.0 < self.left_count() {
            Side::Left(self.left.unit(o))
        } else {
            Side::Right(self.right.unit(self.to_right(o)))
        }
    }

    fn compose(&self, f: &Side, gs: &[&Side]) -> Side {
        let any_right = matches!(f, Side::Right(_)) || gs.iter().any(|g| matches!(g, Side::Right(_)));
        if any_right {
            let rg: Vec<ArrowId> = gs.iter().map(|g| self.right_arrow(g)).collect();
            let h = self
                .right
                .compose(self.right_arrow(f), &rg)
                .expect("right composite");
            Side::Right(h)
        } else {
            let lg: Vec<ArrowId> = gs.iter().map(|g| self.left_arrow(g)).collect();
            Side::Left(self.left.compose(self.left_arrow(f), &lg).expect("left composite"))
        }
    }

    fn act(&self, f: &Side, _: &[ObjectId], sigma: &Perm) -> Side {
        match *f {
            Side::Left(a) => Side::Left(self.left.act(a, sigma)),
            Side::Right(a) => Side::Right(self.right.act(a, sigma)),
        }
    }
}

fn same_basepoint_part(m: &BasedMulticategory, n: &BasedMulticategory) -> bool {
    let cap = m.arity_cap();
    let pos = |x: &BasedMulticategory, a: ArrowId| {
        let src = vec![x.basepoint(); x.arity(a)];
        x.hom(&src, x.basepoint()).iter().position(|y| *y == a)
    };
    for k in 0..=cap {
        let ls = vec![m.basepoint(); k];
        let rs = vec![n.basepoint(); k];
        let lh = m.hom(&ls, m.basepoint());
        let rh = n.hom(&rs, n.basepoint());
        if lh.len() != rh.len() || pos(m, m.mu(k)) != pos(n, n.mu(k)) {
            return false;
        }
        for (&l, &r) in lh.iter().zip(rh) {
            for sigma in Perm::all(k) {
                if pos(m, m.act(l, &sigma)) != pos(n, n.act(r, &sigma)) {
                    return false;
                }
            }
            for gs in m.tuples_into(&ls, cap) {
                if gs.iter().any(|g| m.source(*g).iter().any(|o| *o != m.basepoint())) {
                    continue;
                }
                let rgs: Vec<ArrowId> = gs
                    .iter()
                    .map(|g| {
                        let p = pos(m, *g).unwrap();
                        let src = vec![n.basepoint(); m.arity(*g)];
                        n.hom(&src, n.basepoint())[p]
                    })
                    .collect();
                let lc = m.compose(l, &gs).and_then(|h| pos(m, h));
                let rc = n.compose(r, &rgs).and_then(|h| pos(n, h));
                if lc != rc {
                    return false;
                }
            }
        }
    }
    true
}

/// `M ∨ N`: the disjoint union of objects with the basepoints identified.
/// A hom-set is taken from `M` when every non-basepoint entry lies in `M`,
/// from `N` when every such entry lies in `N`, and is empty otherwise.
pub fn wedge(
    m: &BasedMulticategory,
    n: &BasedMulticategory,
) -> Result<BasedMulticategory, ConstructionError> {
    if m.arity_cap() != n.arity_cap() {
        return Err(ConstructionError::CapMismatch(m.arity_cap(), n.arity_cap()));
    }
    if !same_basepoint_part(m, n) {
        return Err(ConstructionError::BasepointMismatch);
    }
    let mut objects: Vec<String> = m.object_labels().to_vec();
    let mut right_objects = Vec::with_capacity(n.object_count());
    for o in n.objects() {
        if o == n.basepoint() {
            right_objects.push(m.basepoint());
        } else {
            right_objects.push(ObjectId(objects.len() as u32));
            let mut label = n.object_label(o).to_string();
            while objects.contains(&label) {
                label.push('\'');
            }
            objects.push(label);
        }
    }
    let w = Wedge {
        left: m,
        right: n,
        right_objects,
    };
    let base = build(&w, objects, m.arity_cap())?;
    let b = m.basepoint();
    let mu = (0..=m.arity_cap())
        .map(|k| {
            let src = vec![b; k];
            let pos = m.hom(&src, b).iter().position(|x| *x == m.mu(k)).unwrap();
            base.hom(&src, b)[pos]
        })
        .collect();
    Ok(BasedMulticategory::new(base, b, mu)?)
}

struct Restrict<'a>(&'a Multicategory);

impl Presentation for Restrict<'_> {
    type Key = ArrowId;

    fn hom(&self, source: &[ObjectId], target: ObjectId) -> Vec<ArrowId> {
        self.0.hom(source, target).to_vec()
    }

    fn unit(&self, o: ObjectId) -> ArrowId {
        self.0.unit(o)
    }

    fn compose(&self, f: &ArrowId, gs: &[&ArrowId]) -> ArrowId {
        let gs: Vec<ArrowId> = gs.iter().map(|g| **g).collect();
        self.0.compose(*f, &gs).expect("composite within the original cap")
    }

    fn act(&self, f: &ArrowId, _: &[ObjectId], sigma: &Perm) -> ArrowId {
        self.0.act(*f, sigma)
    }

    fn label(&self, key: &ArrowId) -> String {
        self.0.arrow(*key).label.clone()
    }
}

/// Forgets every arrow of arity above `arity_cap`.
pub fn truncate(m: &BasedMulticategory, arity_cap: usize) -> BasedMulticategory {
    assert!(arity_cap >= 1 && arity_cap <= m.arity_cap());
    let base = build(&Restrict(m), m.object_labels().to_vec(), arity_cap)
        .expect("truncation of a tabulated multicategory");
    let mu = m.mus()[..=arity_cap]
        .iter()
        .map(|&a| {
            let src = vec![m.basepoint(); m.arity(a)];
            let pos = m.hom(&src, m.basepoint()).iter().position(|x| *x == a).unwrap();
            base.hom(&src, m.basepoint())[pos]
        })
        .collect();
    BasedMulticategory::new(base, m.basepoint(), mu).expect("truncated monoid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(i: u32) -> ObjectId {
        ObjectId(i)
    }

    #[test]
    fn e_hom_sets() {
        let e = build_e(4);
        assert_eq!(e.hom(&[o(0), o(1)], o(1)).len(), 1);
        assert_eq!(e.hom(&[o(1), o(1)], o(1)).len(), 0);
        assert_eq!(e.hom(&[], o(0)).len(), 1);
        assert_eq!(e.hom(&[], o(1)).len(), 0);
        assert_eq!(e.basepoint(), E_MONOID);
    }

    #[test]
    fn terminal_is_singleton_everywhere() {
        let t = build_terminal(3);
        assert_eq!(t.object_count(), 1);
        for k in 0..=3 {
            assert_eq!(t.hom(&vec![o(0); k], o(0)).len(), 1);
        }
        assert_eq!(t.arrow_count(), 4);
    }

    #[test]
    fn i_hom_sets() {
        let i = build_i(4);
        assert_eq!(i.hom(&[o(1)], o(2)).len(), 1);
        assert_eq!(i.hom(&[o(2)], o(1)).len(), 0);
        assert_eq!(i.hom(&[o(1), o(2)], o(2)).len(), 0);
        assert_eq!(i.hom(&[o(0), o(2), o(0)], o(2)).len(), 1);
        assert_eq!(i.hom(&[o(0), o(0)], o(2)).len(), 0);
    }

    #[test]
    fn u_has_no_cross_arrows() {
        let u = build_unit_u(3);
        assert_eq!(u.object_count(), 2);
        assert!(u.hom(&[o(0)], o(1)).is_empty());
        assert!(u.hom(&[o(1)], o(0)).is_empty());
        assert!(u.hom(&[o(0), o(1)], o(1)).is_empty());
        assert_eq!(u.hom(&[o(1)], o(1)).len(), 1);
    }

    #[test]
    fn wedge_of_e_with_itself() {
        let e = build_e(4);
        let w = wedge(&e, &e).unwrap();
        assert_eq!(w.object_labels(), &["0", "1", "1'"]);
        for x in w.objects() {
            assert!(w.hom(&[o(1), o(2)], x).is_empty());
        }
        assert_eq!(w.hom(&[o(0), o(2)], o(2)).len(), 1);
    }

    #[test]
    fn truncation_keeps_low_arities() {
        let e = build_e(4);
        let t = truncate(&e, 2);
        assert_eq!(t.arity_cap(), 2);
        assert_eq!(t.hom(&[o(0), o(1)], o(1)).len(), 1);
        assert_eq!(t.mus().len(), 3);
    }
}
