//! Finite 1-categories: explicit tables, lazy products, functors and arrow
//! categories.

use std::borrow::Cow;

use rustc_hash::FxHashMap;

/// A finite category with objects `0..object_count()` and arrows
/// `0..arrow_count()`.
pub trait FiniteCategory {
    fn object_count(&self) -> usize;
    fn arrow_count(&self) -> usize;
    fn source(&self, f: usize) -> usize;
    fn target(&self, f: usize) -> usize;
    /// Arrows `a → b`, in increasing order.
    fn hom(&self, a: usize, b: usize) -> Cow<'_, [usize]>;
    fn identity(&self, a: usize) -> usize;
    /// `g ∘ f`; requires `target(f) = source(g)`.
    fn compose(&self, g: usize, f: usize) -> usize;

    fn object_label(&self, a: usize) -> String {
        a.to_string()
    }

    fn arrow_label(&self, f: usize) -> String {
        f.to_string()
    }

    fn is_groupoid(&self) -> bool {
        (0..self.arrow_count()).all(|f| inverse(self, f).is_some())
    }
}

/// The inverse of `f`, if any.
pub fn inverse<C: FiniteCategory + ?Sized>(c: &C, f: usize) -> Option<usize> {
    let (a, b) = (c.source(f), c.target(f));
    c.hom(b, a)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == c.identity(a) && c.compose(f, g) == c.identity(b))
}

/// A category given by explicit tables.
#[derive(Clone, Debug, Default)]
pub struct TableCategory {
    objects: Vec<String>,
    ends: Vec<(usize, usize)>,
    labels: Vec<String>,
    identities: Vec<usize>,
    homs: FxHashMap<(usize, usize), Vec<usize>>,
    comp: FxHashMap<(usize, usize), usize>,
}

impl TableCategory {
    /// Starts a category with the given objects; identities are added as
    /// arrows `0..n` and compose with everything.
    pub fn with_objects(objects: Vec<String>) -> Self {
        let mut c = TableCategory {
            objects,
            ..Default::default()
        };
        for a in 0..c.objects.len() {
            let id = c.push_arrow(a, a, format!("1_{a}"));
            c.identities.push(id);
        }
        c
    }

    pub fn push_arrow(&mut self, source: usize, target: usize, label: String) -> usize {
        let id = self.ends.len();
        self.ends.push((source, target));
        self.labels.push(label);
        self.homs.entry((source, target)).or_default().push(id);
        id
    }

    /// Records `g ∘ f = h`. Composites with identities are implicit.
    pub fn set_composite(&mut self, g: usize, f: usize, h: usize) {
        self.comp.insert((g, f), h);
    }

    /// Copies any finite category into tables.
    pub fn materialize<C: FiniteCategory + ?Sized>(c: &C) -> Self {
        let mut t = TableCategory {
            objects: (0..c.object_count()).map(|a| c.object_label(a)).collect(),
            ..Default::default()
        };
        for f in 0..c.arrow_count() {
            t.ends.push((c.source(f), c.target(f)));
            t.labels.push(c.arrow_label(f));
            t.homs.entry((c.source(f), c.target(f))).or_default().push(f);
        }
        t.identities = (0..c.object_count()).map(|a| c.identity(a)).collect();
        for f in 0..c.arrow_count() {
            for b in 0..c.object_count() {
                for &g in c.hom(c.target(f), b).iter() {
                    t.comp.insert((g, f), c.compose(g, f));
                }
            }
        }
        t
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        TableCategory::with_objects((0..n).map(|a| a.to_string()).collect())
    }

    /// `Z/n` as a one-object groupoid; arrow `k` is the element `k`.
    pub fn cyclic_group(n: usize) -> Self {
        let mut c = TableCategory::with_objects(vec!["*".into()]);
        for k in 1..n {
            c.push_arrow(0, 0, k.to_string());
        }
        for g in 0..n {
            for f in 0..n {
                c.set_composite(g, f, (g + f) % n);
            }
        }
        c
    }
}

impl FiniteCategory for TableCategory {
    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn arrow_count(&self) -> usize {
        self.ends.len()
    }

    fn source(&self, f: usize) -> usize {
        self.ends[f].0
    }

    fn target(&self, f: usize) -> usize {
        self.ends[f].1
    }

    fn hom(&self, a: usize, b: usize) -> Cow<'_, [usize]> {
        match self.homs.get(&(a, b)) {
            Some(v) => Cow::Borrowed(v.as_slice()),
            None => Cow::Borrowed(&[]),
        }
    }

    fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    fn compose(&self, g: usize, f: usize) -> usize {
        if let Some(&h) = self.comp.get(&(g, f)) {
            return h;
        }
        if self.identities[self.ends[g].0] == g && self.ends[g].0 == self.ends[f].1 {
            return f;
        }
        if self.identities[self.ends[f].1] == f && self.ends[g].0 == self.ends[f].1 {
            return g;
        }
        panic!("composite of arrows {g} and {f} is not tabulated")
    }

    fn object_label(&self, a: usize) -> String {
        self.objects[a].clone()
    }

    fn arrow_label(&self, f: usize) -> String {
        self.labels[f].clone()
    }
}

/// Violated category axioms, as readable lines. Empty iff `c` is a category.
pub fn validate_category<C: FiniteCategory + ?Sized>(c: &C) -> Vec<String> {
    let mut out = Vec::new();
    let n = c.object_count();
    for a in 0..n {
        let id = c.identity(a);
        if c.source(id) != a || c.target(id) != a {
            out.push(format!("identity of {a} has the wrong ends"));
        }
    }
    for f in 0..c.arrow_count() {
        let (a, b) = (c.source(f), c.target(f));
        if c.compose(c.identity(b), f) != f || c.compose(f, c.identity(a)) != f {
            out.push(format!("unit law fails at arrow {f}"));
        }
        for d in 0..n {
            for &g in c.hom(b, d).iter() {
                let gf = c.compose(g, f);
                if c.source(gf) != a || c.target(gf) != d {
                    out.push(format!("composite {g}∘{f} has the wrong ends"));
                    continue;
                }
                for e in 0..n {
                    for &h in c.hom(d, e).iter() {
                        if c.compose(h, gf) != c.compose(c.compose(h, g), f) {
                            out.push(format!("associativity fails at {h}∘{g}∘{f}"));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The product of finitely many categories, computed on demand. Objects and
/// arrows are tuples encoded in mixed radix with the first factor most
/// significant.
pub struct ProductCategory<'a> {
    factors: Vec<&'a dyn FiniteCategory>,
}

impl<'a> ProductCategory<'a> {
    pub fn new(factors: Vec<&'a dyn FiniteCategory>) -> Self {
        ProductCategory { factors }
    }

    pub fn power(c: &'a dyn FiniteCategory, n: usize) -> Self {
        ProductCategory {
            factors: vec![c; n],
        }
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn encode_objects(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&p, c)| acc * c.object_count() + p)
    }

    pub fn encode_arrows(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&p, c)| acc * c.arrow_count() + p)
    }

    pub fn decode_objects(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, c) in self.factors.iter().enumerate().rev() {
            out[i] = x % c.object_count();
            x /= c.object_count();
        }
        out
    }

    pub fn decode_arrows(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, c) in self.factors.iter().enumerate().rev() {
            out[i] = x % c.arrow_count();
            x /= c.arrow_count();
        }
        out
    }
}

impl FiniteCategory for ProductCategory<'_> {
    fn object_count(&self) -> usize {
        self.factors.iter().map(|c| c.object_count()).product()
    }

    fn arrow_count(&self) -> usize {
        self.factors.iter().map(|c| c.arrow_count()).product()
    }

    fn source(&self, f: usize) -> usize {
        let parts = self.decode_arrows(f);
        let src: Vec<usize> = parts
            .iter()
            .zip(&self.factors)
            .map(|(&p, c)| c.source(p))
            .collect();
        self.encode_objects(&src)
    }

    fn target(&self, f: usize) -> usize {
        let parts = self.decode_arrows(f);
        let tgt: Vec<usize> = parts
            .iter()
            .zip(&self.factors)
            .map(|(&p, c)| c.target(p))
            .collect();
        self.encode_objects(&tgt)
    }

    fn hom(&self, a: usize, b: usize) -> Cow<'_, [usize]> {
        let (a, b) = (self.decode_objects(a), self.decode_objects(b));
        let mut out = vec![0usize];
        for (i, c) in self.factors.iter().enumerate() {
            let h = c.hom(a[i], b[i]);
            let mut next = Vec::with_capacity(out.len() * h.len());
            for &prefix in &out {
                for &f in h.iter() {
                    next.push(prefix * c.arrow_count() + f);
                }
            }
            out = next;
        }
        Cow::Owned(out)
    }

    fn identity(&self, a: usize) -> usize {
        let parts: Vec<usize> = self
            .decode_objects(a)
            .iter()
            .zip(&self.factors)
            .map(|(&p, c)| c.identity(p))
            .collect();
        self.encode_arrows(&parts)
    }

    fn compose(&self, g: usize, f: usize) -> usize {
        let (gs, fs) = (self.decode_arrows(g), self.decode_arrows(f));
        let parts: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, c)| c.compose(gs[i], fs[i]))
            .collect();
        self.encode_arrows(&parts)
    }

    fn object_label(&self, a: usize) -> String {
        let parts: Vec<String> = self
            .decode_objects(a)
            .iter()
            .zip(&self.factors)
            .map(|(&p, c)| c.object_label(p))
            .collect();
        format!("({})", parts.join(", "))
    }

    fn arrow_label(&self, f: usize) -> String {
        let parts: Vec<String> = self
            .decode_arrows(f)
            .iter()
            .zip(&self.factors)
            .map(|(&p, c)| c.arrow_label(p))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// A functor between finite categories, as object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl Functor {
    pub fn identity<C: FiniteCategory + ?Sized>(c: &C) -> Self {
        Functor {
            object_map: (0..c.object_count()).collect(),
            arrow_map: (0..c.arrow_count()).collect(),
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            object_map: first.object_map.iter().map(|&a| self.object_map[a]).collect(),
            arrow_map: first.arrow_map.iter().map(|&f| self.arrow_map[f]).collect(),
        }
    }

    /// Lines describing where `self` fails to be a functor `c → d`.
    pub fn violations<C, D>(&self, c: &C, d: &D) -> Vec<String>
    where
        C: FiniteCategory + ?Sized,
        D: FiniteCategory + ?Sized,
    {
        let mut out = Vec::new();
        if self.object_map.len() != c.object_count() || self.arrow_map.len() != c.arrow_count() {
            out.push("map sizes do not match the source category".into());
            return out;
        }
        for f in 0..c.arrow_count() {
            let ff = self.arrow_map[f];
            if d.source(ff) != self.object_map[c.source(f)]
                || d.target(ff) != self.object_map[c.target(f)]
            {
                out.push(format!("arrow {f} is sent to an arrow with the wrong ends"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..c.object_count() {
            if self.arrow_map[c.identity(a)] != d.identity(self.object_map[a]) {
                out.push(format!("identity of object {a} is not preserved"));
            }
        }
        for f in 0..c.arrow_count() {
            for b in 0..c.object_count() {
                for &g in c.hom(c.target(f), b).iter() {
                    let lhs = self.arrow_map[c.compose(g, f)];
                    let rhs = d.compose(self.arrow_map[g], self.arrow_map[f]);
                    if lhs != rhs {
                        out.push(format!("composite {g}∘{f} is not preserved"));
                    }
                }
            }
        }
        out
    }
}

/// The category whose objects are the arrows of `c` and whose morphisms
/// `f → f'` are commuting squares `(u, v)` with `v ∘ f = f' ∘ u`.
pub struct ArrowCategory {
    pub table: TableCategory,
    /// Morphism `i` is the square `squares[i] = (u, v)`.
    pub squares: Vec<(usize, usize)>,
}

pub fn arrow_category<C: FiniteCategory + ?Sized>(c: &C) -> ArrowCategory {
    let n = c.arrow_count();
    let mut table = TableCategory {
        objects: (0..n).map(|f| c.arrow_label(f)).collect(),
        ..Default::default()
    };
    let mut squares = Vec::new();
    let mut index: FxHashMap<(usize, usize, usize, usize), usize> = FxHashMap::default();
    for f in 0..n {
        for f2 in 0..n {
            for &u in c.hom(c.source(f), c.source(f2)).iter() {
                for &v in c.hom(c.target(f), c.target(f2)).iter() {
                    if c.compose(v, f) == c.compose(f2, u) {
                        let id = table.push_arrow(f, f2, format!("({}, {})", c.arrow_label(u), c.arrow_label(v)));
                        squares.push((u, v));
                        index.insert((f, f2, u, v), id);
                    }
                }
            }
        }
    }
    table.identities = (0..n)
        .map(|f| index[&(f, f, c.identity(c.source(f)), c.identity(c.target(f)))])
        .collect();
    for s in 0..squares.len() {
        let (a, b) = table.ends[s];
        for f2 in 0..n {
            for &t in table.hom(b, f2).to_vec().iter() {
                let (u, v) = squares[s];
                let (u2, v2) = squares[t];
                let h = index[&(a, f2, c.compose(u2, u), c.compose(v2, v))];
                table.comp.insert((t, s), h);
            }
        }
    }
    ArrowCategory { table, squares }
}

/// Connected components of the underlying graph, as a class index per
/// object; classes are numbered by their least object.
pub fn components<C: FiniteCategory + ?Sized>(c: &C) -> Vec<usize> {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in 0..c.arrow_count() {
        let (a, b) = (find(&mut parent, c.source(f)), find(&mut parent, c.target(f)));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for a in 0..n {
        let r = find(&mut parent, a);
        if class[r] == usize::MAX {
            class[r] = next;
            next += 1;
        }
        out[a] = class[r];
    }
    out
}
