use super::*;
use crate::category::{arrow_category, validate_category, Functor, TableCategory};
use crate::enumeration::DEFAULT_BUDGET;
use crate::gamma::{k_theory, KTheoryOptions};
use crate::multicat::{
    build_e, build_terminal, from_permutative, BasedMulticategory, PermutativeCategory, E_MODULE,
};

fn gamma(m: &BasedMulticategory, levels: usize) -> GammaObject {
    k_theory(m, levels, KTheoryOptions::default()).unwrap()
}

fn z2() -> BasedMulticategory {
    from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap()
}

fn z3() -> BasedMulticategory {
    from_permutative(&PermutativeCategory::delooped_cyclic(3), 4).unwrap()
}

fn saturating() -> BasedMulticategory {
    from_permutative(&PermutativeCategory::saturating_pair(), 4).unwrap()
}

/// Two isomorphic objects `a ⇄ b`.
fn iso_pair() -> TableCategory {
    let mut c = TableCategory::with_objects(vec!["a".into(), "b".into()]);
    let f = c.push_arrow(0, 1, "f".into());
    let g = c.push_arrow(1, 0, "g".into());
    c.set_composite(g, f, 0);
    c.set_composite(f, g, 1);
    c
}

/// `0 → 1 ← 2`.
fn cospan() -> TableCategory {
    let mut c = TableCategory::with_objects(vec!["0".into(), "1".into(), "2".into()]);
    c.push_arrow(0, 1, "l".into());
    c.push_arrow(2, 1, "r".into());
    c
}

#[test]
fn components_of_small_categories() {
    assert_eq!(pi0_category(&TableCategory::discrete(2)), vec![vec![0], vec![1]]);
    assert_eq!(pi0_category(&TableCategory::cyclic_group(3)), vec![vec![0]]);
    let arrows = arrow_category(&TableCategory::discrete(2));
    assert_eq!(pi0_category(&arrows.table).len(), 2);
    assert_eq!(pi0_category(&cospan()), vec![vec![0, 1, 2]]);
}

#[test]
fn slice_counts_match_double_loop() {
    let c = cospan();
    let id = Functor::identity(&c);
    for y in 0..3 {
        let s = slice_category(&id, &c, &c, y);
        assert!(validate_category(&s).is_empty());
        // objects: arrows out of y; arrows: pairs (u, h) with h ∘ u defined
        let mut objects = 0;
        let mut arrows = 0;
        for u in 0..c.arrow_count() {
            if c.source(u) != y {
                continue;
            }
            objects += 1;
            for h in 0..c.arrow_count() {
                if c.source(h) == c.target(u) {
                    arrows += 1;
                }
            }
        }
        assert_eq!((s.object_count(), s.arrow_count()), (objects, arrows));
    }
}

#[test]
fn identity_has_theorem_a_certificate() {
    for c in [cospan(), iso_pair(), TableCategory::cyclic_group(3)] {
        let id = Functor::identity(&c);
        let cert = theorem_a_certificate(&id, &c, &c).unwrap();
        cert.verify(&id, &c, &c).unwrap();
        let Witness::InitialObjects(objs) = &cert.witness else { unreachable!() };
        for (y, &(x, u)) in objs.iter().enumerate() {
            assert!(x <= y);
            assert!(is_slice_initial(&id, &c, &c, y, y, c.identity(y)));
            assert_eq!((c.source(u), c.target(u)), (y, x));
        }
    }
}

#[test]
fn empty_source_has_no_certificate() {
    let empty = TableCategory::discrete(0);
    let d = TableCategory::discrete(1);
    let f = Functor {
        object_map: vec![],
        arrow_map: vec![],
    };
    assert!(theorem_a_certificate(&f, &empty, &d).is_err());
    assert!(equivalence_certificate(&f, &empty, &d).is_err());
}

#[test]
fn skeleton_inclusion_is_an_equivalence() {
    let c = iso_pair();
    let point = TableCategory::discrete(1);
    let f = Functor {
        object_map: vec![0],
        arrow_map: vec![0],
    };
    let cert = equivalence_certificate(&f, &point, &c).unwrap();
    cert.verify(&f, &point, &c).unwrap();
    assert!(isomorphism_certificate(&f, &point, &c).is_err());
    let collapse = Functor {
        object_map: vec![0, 0],
        arrow_map: vec![0, 0],
    };
    assert!(equivalence_certificate(&collapse, &TableCategory::discrete(2), &point).is_err());
}

#[test]
fn tampered_certificate_fails_verification() {
    let c = cospan();
    let id = Functor::identity(&c);
    let mut cert = theorem_a_certificate(&id, &c, &c).unwrap();
    cert.witness = Witness::InitialObjects(vec![(1, 1); 3]);
    assert!(cert.verify(&id, &c, &c).is_err());
}

#[test]
fn theorem_a_preserves_components() {
    let c = cospan();
    let point = TableCategory::discrete(1);
    let to_point = Functor {
        object_map: vec![0; 3],
        arrow_map: vec![0; c.arrow_count()],
    };
    // the cospan has terminal object 1, not an initial one over the point
    let cert = theorem_a_certificate(&to_point, &c, &point);
    assert!(cert.is_err());
    assert_eq!(pi0_category(&c).len(), pi0_category(&point).len());
}

#[test]
fn discrete_z2_segal_map_is_an_isomorphism() {
    let x = gamma(&z2(), 3);
    let p = segal_map(&x, 2);
    let square = crate::category::ProductCategory::power(x.level(1), 2);
    let cert = isomorphism_certificate(&p, x.level(2), &square).unwrap();
    cert.verify(&p, x.level(2), &square).unwrap();
    for n in 2..=3 {
        assert!(segal_certificate(&x, n).is_ok());
    }
}

#[test]
fn z3_level_two_is_equivalent_to_square() {
    let x = gamma(&z3(), 2);
    let p = segal_map(&x, 2);
    let square = crate::category::ProductCategory::power(x.level(1), 2);
    assert_eq!((x.level(2).object_count(), x.level(2).arrow_count()), (3, 81));
    let cert = equivalence_certificate(&p, x.level(2), &square).unwrap();
    cert.verify(&p, x.level(2), &square).unwrap();
    let aut = GroupTable::automorphisms(x.level(2), 0).describe();
    assert_eq!(aut.name, "Z/3 x Z/3");
    assert_eq!(segal_certificate(&x, 2).unwrap().kind, CertificateKind::InitialObjectPerSlice);
}

#[test]
fn e_level_two_is_not_certified() {
    let x = gamma(&build_e(4), 2);
    assert_eq!(x.level(2).object_count(), 3);
    assert!(segal_certificate(&x, 2).is_err());
}

#[test]
fn pi0_monoids_of_standard_inputs() {
    let m = pi0_monoid(&gamma(&z2(), 3)).unwrap();
    assert!(m.is_abelian_group());
    assert_eq!(m.name.as_deref(), Some("Z/2"));
    assert_eq!(m.level_three_consistent, Some(true));

    let m = pi0_monoid(&gamma(&saturating(), 3)).unwrap();
    assert!(m.commutative && m.associative && !m.group);
    assert_eq!(m.table, vec![vec![0, 1], vec![1, 1]]);

    let m = pi0_monoid(&gamma(&z3(), 2)).unwrap();
    assert_eq!(m.classes.len(), 1);
    assert_eq!(m.name.as_deref(), Some("0"));
}

/// Iso classes of objects of `p` under `⊗`, computed from the tables.
fn direct_pi0(p: &PermutativeCategory) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = p.object_count();
    let mut class: Vec<usize> = (0..n).collect();
    for &(a, b) in &p.arrow_ends {
        let (lo, hi) = (class[a].min(class[b]), class[a].max(class[b]));
        for c in class.iter_mut() {
            if *c == hi {
                *c = lo;
            }
        }
    }
    let mut reps: Vec<usize> = class.clone();
    reps.sort_unstable();
    reps.dedup();
    let idx = |a: usize| reps.binary_search(&class[a]).unwrap();
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| idx(p.tensor_objects[a][b].unwrap())).collect())
        .collect();
    (reps, table)
}

#[test]
fn pi0_monoid_matches_permutative_tables() {
    for p in [
        PermutativeCategory::discrete_cyclic(2),
        PermutativeCategory::discrete_cyclic(3),
        PermutativeCategory::saturating_pair(),
        PermutativeCategory::delooped_cyclic(3),
    ] {
        let m = from_permutative(&p, 3).unwrap();
        let x = gamma(&m, 2);
        let monoid = pi0_monoid(&x).unwrap();
        let (reps, table) = direct_pi0(&p);
        // classes of level 1 correspond to objects of p via the module value
        let value: Vec<usize> = monoid
            .classes
            .iter()
            .map(|objs| x.level(1).functor(objs[0]).object(E_MODULE).index())
            .map(|o| reps.iter().position(|&r| r == o).unwrap())
            .collect();
        for a in 0..reps.len() {
            for b in 0..reps.len() {
                assert_eq!(value[monoid.table[a][b]], table[value[a]][value[b]]);
            }
        }
    }
}

#[test]
fn pi1_of_levels() {
    let x = gamma(&z3(), 2);
    assert_eq!(pi1_level(&x, 1).unwrap()[0].name, "Z/3");
    let x = gamma(&z2(), 2);
    assert!(pi1_level(&x, 1).unwrap().iter().all(|g| g.name == "0"));
    let x = gamma(&crate::multicat::build_i(4), 1);
    assert!(pi1_level(&x, 1).is_none());
}

#[test]
fn verdicts_of_standard_inputs() {
    let r = very_special_verdict(&gamma(&z2(), 3));
    assert!(r.special && r.very_special);
    assert_eq!((r.stable_pi0.as_deref(), r.stable_pi1.as_deref()), (Some("Z/2"), Some("0")));

    let r = very_special_verdict(&gamma(&z3(), 2));
    assert!(r.very_special);
    assert_eq!((r.stable_pi0.as_deref(), r.stable_pi1.as_deref()), (Some("0"), Some("Z/3")));

    let r = very_special_verdict(&gamma(&saturating(), 3));
    assert!(r.special && !r.very_special);
    assert_eq!(r.stable_pi0, None);
}

#[test]
fn path_object_legs() {
    for m in [build_e(4), z2(), z3(), build_terminal(4)] {
        let r = path_object_check(&m, DEFAULT_BUDGET).unwrap();
        assert!(r.passes(), "{r:?}");
    }
}

#[test]
fn tensor_on_discrete_z2_is_addition() {
    let x = gamma(&z2(), 2);
    let cert = segal_certificate(&x, 2).unwrap();
    let t = extract_binary_tensor(&x, &cert).unwrap();
    let value = |a: usize| x.level(1).functor(a).object(E_MODULE).index();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(value(t.table[a][b]), (value(a) + value(b)) % 2);
        }
    }
    assert!(t.descends_to_pi0 && t.commutative_on_pi0 && t.associative_on_pi0);
    assert_eq!(t.agrees_with_pi0, Some(true));
}

#[test]
fn tensor_needs_initial_objects() {
    let x = gamma(&build_terminal(4), 2);
    let cert = segal_certificate(&x, 2).unwrap();
    let t = extract_binary_tensor(&x, &cert).unwrap();
    assert_eq!(t.table, vec![vec![0]]);
    let equivalence = Certificate {
        kind: CertificateKind::CategoricalEquivalence,
        witness: Witness::EssentialLifts(vec![(0, 0)]),
    };
    assert!(extract_binary_tensor(&x, &equivalence).is_err());
}
