//! Exhaustive axiom checking within the arity cap.

use std::fmt;

use super::{ArrowId, BasedMulticategory, Multicategory, ObjectId};
use crate::perm::Perm;

/// A table entry whose profile does not fit, or a composite missing from the
/// table. These are distinct from axiom failures.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructuralIssue {
    UnitProfile { object: ObjectId },
    SymmetryProfile { arrow: ArrowId, perm: Perm },
    CompositeProfile { key: Vec<ArrowId> },
    MissingComposite { key: Vec<ArrowId> },
    MonoidProfile { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    LeftUnit { arrow: ArrowId },
    RightUnit { arrow: ArrowId },
    Associativity { f: ArrowId, gs: Vec<ArrowId>, hs: Vec<ArrowId> },
    SymmetryIdentity { arrow: ArrowId },
    SymmetryComposition { arrow: ArrowId, sigma: Perm, tau: Perm },
    /// `γ(σ*f; gs) ≠ π* γ(f; gs∘σ⁻¹)`
    EquivarianceOuter { f: ArrowId, sigma: Perm, gs: Vec<ArrowId> },
    /// `γ(f; τ_i* g_i) ≠ (⊕τ_i)* γ(f; gs)`
    EquivarianceInner { f: ArrowId, gs: Vec<ArrowId>, taus: Vec<Perm> },
    MonoidUnit,
    MonoidInvariance { n: usize, sigma: Perm },
    MonoidComposition { outer: usize, inner: Vec<usize> },
}

impl fmt::Display for StructuralIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralIssue::UnitProfile { object } => {
                write!(f, "unit of {object} does not have profile ({object}; {object})")
            }
            StructuralIssue::SymmetryProfile { arrow, perm } => {
                write!(f, "image of {arrow} under [{perm}] has the wrong profile")
            }
            StructuralIssue::CompositeProfile { key } => {
                write!(f, "composition entry {} has the wrong profile", fmt_key(key))
            }
            StructuralIssue::MissingComposite { key } => {
                write!(f, "composition entry {} is missing", fmt_key(key))
            }
            StructuralIssue::MonoidProfile { n } => {
                write!(f, "mu_{n} does not have profile (b^{n}; b)")
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeftUnit { arrow } => write!(f, "left unit law fails at {arrow}"),
            Violation::RightUnit { arrow } => write!(f, "right unit law fails at {arrow}"),
            Violation::Associativity { f: a, gs, hs } => write!(
                f,
                "associativity fails at f={a}, g=[{}], h=[{}]",
                fmt_ids(gs),
                fmt_ids(hs)
            ),
            Violation::SymmetryIdentity { arrow } => {
                write!(f, "identity permutation moves {arrow}")
            }
            Violation::SymmetryComposition { arrow, sigma, tau } => write!(
                f,
                "action is not functorial at {arrow} for [{sigma}] then [{tau}]"
            ),
            Violation::EquivarianceOuter { f: a, sigma, gs } => write!(
                f,
                "composition is not equivariant in the outer arrow at {a}, [{sigma}], g=[{}]",
                fmt_ids(gs)
            ),
            Violation::EquivarianceInner { f: a, gs, taus } => {
                let taus: Vec<String> = taus.iter().map(|t| format!("[{t}]")).collect();
                write!(
                    f,
                    "composition is not equivariant in the inner arrows at {a}, g=[{}], perms {}",
                    fmt_ids(gs),
                    taus.join("")
                )
            }
            Violation::MonoidUnit => write!(f, "mu_1 is not the unit of the basepoint"),
            Violation::MonoidInvariance { n, sigma } => {
                write!(f, "mu_{n} is not invariant under [{sigma}]")
            }
            Violation::MonoidComposition { outer, inner } => {
                let inner: Vec<String> = inner.iter().map(|x| x.to_string()).collect();
                write!(f, "mu_{outer} composed with mu_({}) is not mu of the sum", inner.join(","))
            }
        }
    }
}

fn fmt_ids(ids: &[ArrowId]) -> String {
    ids.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_key(key: &[ArrowId]) -> String {
    match key.split_first() {
        Some((f, gs)) => format!("γ({f}; {})", fmt_ids(gs)),
        None => "γ()".into(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub structural: Vec<StructuralIssue>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        self.structural
            .iter()
            .map(|s| format!("structural: {s}"))
            .chain(self.violations.iter().map(|v| format!("axiom: {v}")))
            .collect()
    }
}

/// Checks unit laws, associativity in every nested shape, functoriality of
/// the symmetric action and both equivariance laws, all within the cap. When
/// `m` is based, also checks the basepoint monoid.
pub fn validate_multicategory(m: &BasedMulticategory) -> ValidationReport {
    let mut report = validate_unbased(m.multicategory());
    validate_monoid(m, &mut report);
    report
}

pub(crate) fn validate_unbased(m: &Multicategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    let cap = m.arity_cap();
    let perms: Vec<Vec<Perm>> = (0..=cap).map(Perm::all).collect();

    // structural
    for a in m.objects() {
        let u = m.unit(a);
        if m.source(u) != [a] || m.target(u) != a {
            report.structural.push(StructuralIssue::UnitProfile { object: a });
        }
    }
    for f in m.arrows() {
        let info = m.arrow(f);
        for (sigma, &img) in perms[info.arity()].iter().zip(m.sym_images(f)) {
            if m.source(img) != sigma.permute(&info.source).as_slice() || m.target(img) != info.target
            {
                report.structural.push(StructuralIssue::SymmetryProfile {
                    arrow: f,
                    perm: sigma.clone(),
                });
            }
        }
    }
    let mut keys: Vec<&Vec<ArrowId>> = m.comp_table().keys().collect();
    keys.sort();
    for key in keys {
        let value = m.comp_table()[key];
        let (f, gs) = key.split_first().expect("nonempty key");
        let fits = m.arity(*f) == gs.len()
            && gs.iter().zip(m.source(*f)).all(|(g, &o)| m.target(*g) == o)
            && gs.iter().map(|g| m.arity(*g)).sum::<usize>() <= cap;
        let src: Vec<ObjectId> = gs.iter().flat_map(|g| m.source(*g).iter().copied()).collect();
        if !fits || m.source(value) != src.as_slice() || m.target(value) != m.target(*f) {
            report
                .structural
                .push(StructuralIssue::CompositeProfile { key: key.clone() });
        }
    }
    for f in m.arrows() {
        if m.arity(f) == 0 {
            continue;
        }
        for gs in m.tuples_into(m.source(f), cap) {
            if m.compose(f, &gs).is_none() {
                let mut key = vec![f];
                key.extend(gs);
                report.structural.push(StructuralIssue::MissingComposite { key });
            }
        }
    }
    let profiles_ok = report
        .structural
        .iter()
        .all(|s| matches!(s, StructuralIssue::MissingComposite { .. }));
    if !profiles_ok {
        return report;
    }

    // instances that need a missing composite are skipped
    for f in m.arrows() {
        let left = m.compose(m.unit(m.target(f)), &[f]);
        if left.is_some() && left != Some(f) {
            report.violations.push(Violation::LeftUnit { arrow: f });
        }
        let units: Vec<ArrowId> = m.source(f).iter().map(|&a| m.unit(a)).collect();
        let right = m.compose(f, &units);
        if right.is_some() && right != Some(f) {
            report.violations.push(Violation::RightUnit { arrow: f });
        }
    }

    // symmetric action
    for f in m.arrows() {
        let n = m.arity(f);
        let id = Perm::identity(n);
        if m.act(f, &id) != f {
            report.violations.push(Violation::SymmetryIdentity { arrow: f });
        }
        for sigma in &perms[n] {
            let fs = m.act(f, sigma);
            for tau in &perms[n] {
                if m.act(f, &sigma.compose(tau)) != m.act(fs, tau) {
                    report.violations.push(Violation::SymmetryComposition {
                        arrow: f,
                        sigma: sigma.clone(),
                        tau: tau.clone(),
                    });
                }
            }
        }
    }

    // associativity and equivariance
    for f in m.arrows() {
        let k = m.arity(f);
        if k == 0 {
            continue;
        }
        for gs in m.tuples_into(m.source(f), cap) {
            let Some(fg) = m.compose(f, &gs) else {
                continue;
            };
            let sizes: Vec<usize> = gs.iter().map(|g| m.arity(*g)).collect();
            let blocks: Vec<Vec<Block>> = gs
                .iter()
                .map(|&g| {
                    m.tuples_into(m.source(g), cap)
                        .into_iter()
                        .filter_map(|hs| {
                            let arity = hs.iter().map(|h| m.arity(*h)).sum();
                            m.compose(g, &hs).map(|composite| Block {
                                hs,
                                composite,
                                arity,
                            })
                        })
                        .collect()
                })
                .collect();
            let mut search = AssocSearch {
                m,
                f,
                fg,
                gs: &gs,
                blocks: &blocks,
                hs: Vec::new(),
                inner: Vec::with_capacity(k),
                out: &mut report.violations,
            };
            search.run(0, cap);

            // inner equivariance
            let mut tau_choices: Vec<Vec<Perm>> = vec![Vec::new()];
            for &size in &sizes {
                let mut next = Vec::new();
                for prefix in &tau_choices {
                    for t in &perms[size] {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        next.push(v);
                    }
                }
                tau_choices = next;
            }
            for taus in tau_choices {
                let moved: Vec<ArrowId> = gs.iter().zip(&taus).map(|(g, t)| m.act(*g, t)).collect();
                let Some(lhs) = m.compose(f, &moved) else {
                    continue;
                };
                let rhs = m.act(fg, &Perm::block_sum(&taus));
                if lhs != rhs {
                    report.violations.push(Violation::EquivarianceInner {
                        f,
                        gs: gs.clone(),
                        taus,
                    });
                }
            }
        }

        // outer equivariance
        for sigma in &perms[k] {
            let fs = m.act(f, sigma);
            let inv = sigma.inverse();
            for gs in m.tuples_into(m.source(fs), cap) {
                let reordered: Vec<ArrowId> = (0..k).map(|j| gs[inv.apply(j)]).collect();
                let (Some(lhs), Some(h)) = (m.compose(fs, &gs), m.compose(f, &reordered)) else {
                    continue;
                };
                let sizes: Vec<usize> = gs.iter().map(|g| m.arity(*g)).collect();
                let rhs = m.act(h, &Perm::block_shuffle(sigma, &sizes));
                if lhs != rhs {
                    report.violations.push(Violation::EquivarianceOuter {
                        f,
                        sigma: sigma.clone(),
                        gs,
                    });
                }
            }
        }
    }
    report
}

struct Block {
    hs: Vec<ArrowId>,
    composite: ArrowId,
    arity: usize,
}

/// Walks every `hs` for a fixed `(f, gs)` block by block, so each inner
/// composite `γ(g_i; hs_i)` is looked up once per block choice.
struct AssocSearch<'a> {
    m: &'a Multicategory,
    f: ArrowId,
    fg: ArrowId,
    gs: &'a [ArrowId],
    blocks: &'a [Vec<Block>],
    hs: Vec<ArrowId>,
    inner: Vec<ArrowId>,
    out: &'a mut Vec<Violation>,
}

impl AssocSearch<'_> {
    fn run(&mut self, i: usize, budget: usize) {
        if i == self.blocks.len() {
            let lhs = self.m.compose(self.fg, &self.hs);
            let rhs = self.m.compose(self.f, &self.inner);
            if lhs.is_some() && rhs.is_some() && lhs != rhs {
                self.out.push(Violation::Associativity {
                    f: self.f,
                    gs: self.gs.to_vec(),
                    hs: self.hs.clone(),
                });
            }
            return;
        }
        let blocks = self.blocks;
        for block in &blocks[i] {
            if block.arity > budget {
                continue;
            }
            let len = self.hs.len();
            self.hs.extend_from_slice(&block.hs);
            self.inner.push(block.composite);
            self.run(i + 1, budget - block.arity);
            self.inner.pop();
            self.hs.truncate(len);
        }
    }
}

fn validate_monoid(m: &BasedMulticategory, report: &mut ValidationReport) {
    let b = m.basepoint();
    for n in 0..=m.arity_cap() {
        let mu = m.mu(n);
        if m.source(mu) != vec![b; n].as_slice() || m.target(mu) != b {
            report.structural.push(StructuralIssue::MonoidProfile { n });
        }
    }
    if !report.structural.is_empty() {
        return;
    }
    for v in super::algebra::monoid_violations(m, b, m.mus()) {
        report.violations.push(v);
    }
}
