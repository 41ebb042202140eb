use serde::{Deserialize, Serialize};

use super::EnumerationError;
use crate::multicat::{ArrowId, BasedMulticategory, Multicategory, ObjectId};
use crate::perm::Perm;

/// A multifunctor, as its object and arrow maps. The derived order is the
/// canonical one: lexicographic in (object map, arrow map).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multifunctor {
    pub object_map: Vec<ObjectId>,
    pub arrow_map: Vec<ArrowId>,
}

impl Multifunctor {
    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.object_map[x.index()]
    }

    pub fn arrow(&self, f: ArrowId) -> ArrowId {
        self.arrow_map[f.index()]
    }

    pub fn identity(s: &Multicategory) -> Self {
        Multifunctor {
            object_map: s.objects().collect(),
            arrow_map: s.arrows().collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Multifunctor) -> Multifunctor {
        Multifunctor {
            object_map: first.object_map.iter().map(|&x| self.object(x)).collect(),
            arrow_map: first.arrow_map.iter().map(|&f| self.arrow(f)).collect(),
        }
    }

    /// The multifunctor `s → m` with the given object map that sends each
    /// arrow to the unique arrow of the image profile. `None` if some image
    /// hom-set is not a singleton.
    pub fn thin(s: &Multicategory, m: &Multicategory, object_map: Vec<ObjectId>) -> Option<Self> {
        let arrow_map = s
            .arrows()
            .map(|f| {
                let src: Vec<ObjectId> = s.source(f).iter().map(|x| object_map[x.index()]).collect();
                match m.hom(&src, object_map[s.target(f).index()]) {
                    [g] => Some(*g),
                    _ => None,
                }
            })
            .collect::<Option<Vec<ArrowId>>>()?;
        Some(Multifunctor {
            object_map,
            arrow_map,
        })
    }

    /// Lines describing where `self` fails to be a multifunctor `s → m`;
    /// with `based`, also requires the basepoint monoid to be preserved.
    pub fn violations(&self, s: &BasedMulticategory, m: &BasedMulticategory, based: bool) -> Vec<String> {
        let mut out = Vec::new();
        if self.object_map.len() != s.object_count() || self.arrow_map.len() != s.arrow_count() {
            out.push("map sizes do not match the source".into());
            return out;
        }
        for f in s.arrows() {
            let v = self.arrow(f);
            let src: Vec<ObjectId> = s.source(f).iter().map(|&x| self.object(x)).collect();
            if m.source(v) != src.as_slice() || m.target(v) != self.object(s.target(f)) {
                out.push(format!("{f} is sent to {v} with the wrong profile"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in s.objects() {
            if self.arrow(s.unit(x)) != m.unit(self.object(x)) {
                out.push(format!("unit of {x} is not preserved"));
            }
        }
        for f in s.arrows() {
            for sigma in Perm::all(s.arity(f)) {
                if self.arrow(s.act(f, &sigma)) != m.act(self.arrow(f), &sigma) {
                    out.push(format!("action of [{sigma}] on {f} is not preserved"));
                }
            }
            if s.arity(f) == 0 {
                continue;
            }
            for gs in s.tuples_into(s.source(f), s.arity_cap()) {
                let Some(h) = s.compose(f, &gs) else { continue };
                let images: Vec<ArrowId> = gs.iter().map(|&g| self.arrow(g)).collect();
                if m.compose(self.arrow(f), &images) != Some(self.arrow(h)) {
                    out.push(format!("composite at {f} with {gs:?} is not preserved"));
                }
            }
        }
        if based {
            if self.object(s.basepoint()) != m.basepoint() {
                out.push("basepoint is not preserved".into());
            }
            for n in 0..=s.arity_cap().min(m.arity_cap()) {
                if self.arrow(s.mu(n)) != m.mu(n) {
                    out.push(format!("mu_{n} is not preserved"));
                }
            }
        }
        out
    }
}

#[derive(Copy, Clone, Debug)]
enum Task {
    Object(u32, ObjectId),
    Arrow(u32, ArrowId),
}

#[derive(Copy, Clone, Debug)]
enum Undo {
    Object(u32),
    Arrow(u32),
    Pending(u32),
}

struct Entry {
    key: Vec<ArrowId>,
    result: ArrowId,
}

struct Search<'a> {
    s: &'a Multicategory,
    m: &'a Multicategory,
    objects: Vec<Option<ObjectId>>,
    arrows: Vec<Option<ArrowId>>,
    entries: Vec<Entry>,
    /// Per source arrow, the composition entries it is an input of (with
    /// multiplicity).
    watch: Vec<Vec<u32>>,
    pending: Vec<u32>,
    trail: Vec<Undo>,
    queue: Vec<Task>,
    nodes: u64,
    budget: u64,
    out: Vec<Multifunctor>,
}

impl<'a> Search<'a> {
    fn new(s: &'a Multicategory, m: &'a Multicategory, budget: u64) -> Self {
        let mut entries = Vec::new();
        let mut watch = vec![Vec::new(); s.arrow_count()];
        let mut pending = Vec::new();
        for f in s.arrows() {
            if s.arity(f) == 0 {
                continue;
            }
            for gs in s.tuples_into(s.source(f), s.arity_cap()) {
                let Some(result) = s.compose(f, &gs) else { continue };
                let id = entries.len() as u32;
                let mut key = Vec::with_capacity(gs.len() + 1);
                key.push(f);
                key.extend(gs);
                for a in &key {
                    watch[a.index()].push(id);
                }
                pending.push(key.len() as u32);
                entries.push(Entry { key, result });
            }
        }
        Search {
            s,
            m,
            objects: vec![None; s.object_count()],
            arrows: vec![None; s.arrow_count()],
            entries,
            watch,
            pending,
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            budget,
            out: Vec::new(),
        }
    }

    /// Runs the queued assignments to a fixpoint; false on a conflict.
    fn propagate(&mut self) -> bool {
        while let Some(task) = self.queue.pop() {
            match task {
                Task::Object(x, y) => match self.objects[x as usize] {
                    Some(z) if z == y => {}
                    Some(_) => return false,
                    None => {
                        self.objects[x as usize] = Some(y);
                        self.trail.push(Undo::Object(x));
                        let u = self.s.unit(ObjectId(x));
                        self.queue.push(Task::Arrow(u.0, self.m.unit(y)));
                    }
                },
                Task::Arrow(a, v) => match self.arrows[a as usize] {
                    Some(w) if w == v => {}
                    Some(_) => return false,
                    None => {
                        let f = ArrowId(a);
                        if self.m.arity(v) != self.s.arity(f) {
                            return false;
                        }
                        self.arrows[a as usize] = Some(v);
                        self.trail.push(Undo::Arrow(a));
                        let (s, m) = (self.s, self.m);
                        for (x, y) in s.source(f).iter().zip(m.source(v)) {
                            self.queue.push(Task::Object(x.0, *y));
                        }
                        self.queue.push(Task::Object(s.target(f).0, m.target(v)));
                        for (img, vimg) in s.sym_images(f).iter().zip(m.sym_images(v)) {
                            self.queue.push(Task::Arrow(img.0, *vimg));
                        }
                        for i in 0..self.watch[a as usize].len() {
                            let e = self.watch[a as usize][i];
                            self.pending[e as usize] -= 1;
                            self.trail.push(Undo::Pending(e));
                            if self.pending[e as usize] == 0 {
                                let entry = &self.entries[e as usize];
                                let f_img = self.arrows[entry.key[0].index()].expect("assigned");
                                let gs: Vec<ArrowId> = entry.key[1..]
                                    .iter()
                                    .map(|g| self.arrows[g.index()].expect("assigned"))
                                    .collect();
                                let Some(h) = m.compose(f_img, &gs) else {
                                    return false;
                                };
                                self.queue.push(Task::Arrow(entry.result.0, h));
                            }
                        }
                    }
                },
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("nonempty") {
                Undo::Object(x) => self.objects[x as usize] = None,
                Undo::Arrow(a) => self.arrows[a as usize] = None,
                Undo::Pending(e) => self.pending[e as usize] += 1,
            }
        }
    }

    fn try_task(&mut self, task: Task) -> Result<(), EnumerationError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(EnumerationError::Budget {
                budget: self.budget,
            });
        }
        let mark = self.trail.len();
        self.queue.clear();
        self.queue.push(task);
        if self.propagate() {
            self.branch()?;
        }
        self.undo_to(mark);
        Ok(())
    }

    fn branch(&mut self) -> Result<(), EnumerationError> {
        let mut best: Option<(usize, ArrowId, Vec<ArrowId>)> = None;
        for f in self.s.arrows() {
            if self.arrows[f.index()].is_some() {
                continue;
            }
            let src: Option<Vec<ObjectId>> =
                self.s.source(f).iter().map(|x| self.objects[x.index()]).collect();
            let (Some(src), Some(tgt)) = (src, self.objects[self.s.target(f).index()]) else {
                continue;
            };
            let domain = self.m.hom(&src, tgt);
            if best.as_ref().is_none_or(|b| domain.len() < b.0) {
                best = Some((domain.len(), f, domain.to_vec()));
                if domain.len() <= 1 {
                    break;
                }
            }
        }
        let free_object = self.objects.iter().position(Option::is_none);
        match (best, free_object) {
            (Some((size, f, domain)), obj) if obj.is_none() || size <= self.m.object_count() => {
                for v in domain {
                    self.try_task(Task::Arrow(f.0, v))?;
                }
            }
            (_, Some(x)) => {
                for y in self.m.objects() {
                    self.try_task(Task::Object(x as u32, y))?;
                }
            }
            (None, None) => {
                let object_map = self.objects.iter().map(|o| o.expect("complete")).collect();
                let arrow_map = self.arrows.iter().map(|a| a.expect("complete")).collect();
                self.out.push(Multifunctor {
                    object_map,
                    arrow_map,
                });
            }
            (Some(_), None) => unreachable!("guard covers every object-free case"),
        }
        Ok(())
    }
}

/// All multifunctors `s → m` preserving the basepoint monoid, in canonical
/// order. Exceeding `budget` search nodes is an error, never a partial list.
pub fn enumerate_based_multifunctors(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    budget: u64,
) -> Result<Vec<Multifunctor>, EnumerationError> {
    enumerate(s, m, budget, true)
}

/// All multifunctors `s → m`, ignoring basepoints.
pub fn enumerate_multifunctors(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    budget: u64,
) -> Result<Vec<Multifunctor>, EnumerationError> {
    enumerate(s, m, budget, false)
}

fn enumerate(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    budget: u64,
    based: bool,
) -> Result<Vec<Multifunctor>, EnumerationError> {
    if s.arity_cap() != m.arity_cap() {
        return Err(EnumerationError::CapMismatch(s.arity_cap(), m.arity_cap()));
    }
    let mut search = Search::new(s.multicategory(), m.multicategory(), budget);
    search.queue.clear();
    if based {
        search
            .queue
            .push(Task::Object(s.basepoint().0, m.basepoint()));
        for (a, b) in s.mus().iter().zip(m.mus()) {
            search.queue.push(Task::Arrow(a.0, *b));
        }
    }
    if search.propagate() {
        search.branch()?;
    }
    let mut out = search.out;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::{
        build_e, build_i, build_terminal, from_permutative, power_e, wedge, PermutativeCategory,
    };

    const BUDGET: u64 = 10_000_000;

    /// Every total assignment of objects and arrows, filtered by the axioms.
    fn brute_force(s: &BasedMulticategory, m: &BasedMulticategory) -> usize {
        let n_obj = m.object_count();
        let mut count = 0;
        let total = n_obj.pow(s.object_count() as u32);
        for code in 0..total {
            let mut c = code;
            let object_map: Vec<ObjectId> = (0..s.object_count())
                .map(|_| {
                    let y = ObjectId((c % n_obj) as u32);
                    c /= n_obj;
                    y
                })
                .collect();
            let domains: Vec<&[ArrowId]> = s
                .arrows()
                .map(|f| {
                    let src: Vec<ObjectId> =
                        s.source(f).iter().map(|x| object_map[x.index()]).collect();
                    m.hom(&src, object_map[s.target(f).index()])
                })
                .collect();
            let mut idx = vec![0usize; domains.len()];
            if domains.iter().any(|d| d.is_empty()) {
                continue;
            }
            loop {
                let f = Multifunctor {
                    object_map: object_map.clone(),
                    arrow_map: idx.iter().zip(&domains).map(|(&i, d)| d[i]).collect(),
                };
                if f.violations(s, m, true).is_empty() {
                    count += 1;
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < domains[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        count
    }

    #[test]
    fn small_counts() {
        let e = build_e(4);
        let t = build_terminal(4);
        assert_eq!(enumerate_based_multifunctors(&t, &e, BUDGET).unwrap().len(), 1);
        let fs = enumerate_based_multifunctors(&e, &e, BUDGET).unwrap();
        assert_eq!(fs.len(), 2);
        for f in &fs {
            assert!(f.violations(&e, &e, true).is_empty());
        }
    }

    #[test]
    fn power_e2_into_discrete_z2() {
        let z2 = from_permutative(&PermutativeCategory::discrete_cyclic(2), 3).unwrap();
        let e2 = power_e(2, 3);
        let fs = enumerate_based_multifunctors(&e2, &z2, BUDGET).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(brute_force(&e2, &z2), 4);
    }

    #[test]
    fn search_agrees_with_brute_force() {
        let cap = 2;
        let e = build_e(cap);
        let z3 = from_permutative(&PermutativeCategory::delooped_cyclic(3), cap).unwrap();
        let z2 = from_permutative(&PermutativeCategory::discrete_cyclic(2), cap).unwrap();
        let i = build_i(cap);
        for (s, m) in [(&e, &z3), (&e, &z2), (&e, &i), (&i, &e), (&e, &e)] {
            let fs = enumerate_based_multifunctors(s, m, BUDGET).unwrap();
            assert_eq!(fs.len(), brute_force(s, m));
        }
    }

    #[test]
    fn wedge_counts_square() {
        let e = build_e(3);
        let w = wedge(&e, &e).unwrap();
        assert_eq!(enumerate_based_multifunctors(&w, &e, BUDGET).unwrap().len(), 4);
    }

    #[test]
    fn budget_is_an_error() {
        let e2 = power_e(2, 3);
        let z3 = from_permutative(&PermutativeCategory::delooped_cyclic(3), 3).unwrap();
        assert!(matches!(
            enumerate_based_multifunctors(&e2, &z3, 2),
            Err(EnumerationError::Budget { .. })
        ));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let e2 = power_e(2, 4);
        let z3 = from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap();
        let a = enumerate_based_multifunctors(&e2, &z3, BUDGET).unwrap();
        let b = enumerate_based_multifunctors(&e2, &z3, BUDGET).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }
}
