use std::sync::OnceLock;

use proptest::prelude::*;

use multikat::category::{FiniteCategory, Functor, TableCategory};
use multikat::document::{permutative_document, InputDocument};
use multikat::gamma::{k_theory, GammaObject, KTheoryOptions, PointedMap};
use multikat::homotopy::{equivalence_certificate, pi0_category, theorem_a_certificate, GroupTable};
use multikat::multicat::{from_permutative, ObjectId, PermutativeCategory};
use multikat::perm::{factorial, Perm};

fn z2_levels() -> &'static GammaObject {
    static X: OnceLock<GammaObject> = OnceLock::new();
    X.get_or_init(|| {
        let m = from_permutative(&PermutativeCategory::discrete_cyclic(2), 4).unwrap();
        k_theory(&m, 3, KTheoryOptions::default()).unwrap()
    })
}

fn pointed(m: usize, n: usize) -> impl Strategy<Value = PointedMap> {
    proptest::collection::vec(0..=n, m).prop_map(move |images| PointedMap::new(n, images).unwrap())
}

fn composable() -> impl Strategy<Value = (PointedMap, PointedMap)> {
    (0usize..=3, 0usize..=3, 0usize..=3).prop_flat_map(|(m, n, p)| (pointed(m, n), pointed(n, p)))
}

/// Reflexive-transitive closure of `rel` on `0..n`.
fn closure(n: usize, rel: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in rel {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// The preorder as a thin category, with `arrow[i][j]` the arrow `i → j`.
fn thin(le: &[Vec<bool>]) -> (TableCategory, Vec<Vec<Option<usize>>>) {
    let n = le.len();
    let mut c = TableCategory::with_objects((0..n).map(|i| i.to_string()).collect());
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        arrow[i][i] = Some(i);
        for j in 0..n {
            if i != j && le[i][j] {
                arrow[i][j] = Some(c.push_arrow(i, j, format!("{i}<{j}")));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                    if i != j && j != k {
                        c.set_composite(g, f, arrow[i][k].unwrap());
                    }
                }
            }
        }
    }
    (c, arrow)
}

/// A monotone map between random preorders: the target relation is
/// enlarged by the image of the source relation.
fn preorder_functor() -> impl Strategy<Value = (TableCategory, TableCategory, Functor)> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                Just(k),
                proptest::collection::vec((0..n, 0..n), 0..5),
                proptest::collection::vec((0..k, 0..k), 0..5),
                proptest::collection::vec(0..k, n),
            )
        })
        .prop_map(|(n, k, rp, rq, map)| {
            let lp = closure(n, &rp);
            let mut rel = rq;
            for i in 0..n {
                for j in 0..n {
                    if lp[i][j] {
                        rel.push((map[i], map[j]));
                    }
                }
            }
            let lq = closure(k, &rel);
            let (p, ap) = thin(&lp);
            let (q, aq) = thin(&lq);
            let mut arrow_map = vec![0; p.arrow_count()];
            for i in 0..n {
                for j in 0..n {
                    if let Some(f) = ap[i][j] {
                        arrow_map[f] = aq[map[i]][map[j]].unwrap();
                    }
                }
            }
            (p, q, Functor { object_map: map, arrow_map })
        })
}

fn component_map(f: &Functor, c: &TableCategory, d: &TableCategory) -> Vec<usize> {
    let target: Vec<Vec<usize>> = pi0_category(d);
    let class = |y: usize| target.iter().position(|comp| comp.contains(&y)).unwrap();
    pi0_category(c).iter().map(|comp| class(f.object_map[comp[0]])).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_action_is_contravariant(n in 0usize..=3, r in 0usize..6, s in 0usize..6, pick in 0usize..1000) {
        let m = from_permutative(&PermutativeCategory::delooped_cyclic(3), 3).unwrap();
        let sigma = Perm::unrank(n, r % factorial(n));
        let tau = Perm::unrank(n, s % factorial(n));
        let source = vec![ObjectId(0); n];
        let hom = m.hom(&source, ObjectId(0));
        let f = hom[pick % hom.len()];
        prop_assert_eq!(m.act(m.act(f, &sigma), &tau), m.act(f, &sigma.compose(&tau)));
        let labels: Vec<usize> = (0..n).collect();
        prop_assert_eq!(sigma.compose(&tau).permute(&labels), tau.permute(&sigma.permute(&labels)));
    }

    #[test]
    fn gamma_action_is_functorial((phi, psi) in composable()) {
        let x = z2_levels();
        let both = x.action(&psi.after(&phi));
        prop_assert_eq!(both, x.action(&psi).after(&x.action(&phi)));
        prop_assert_eq!(x.action(&PointedMap::identity(phi.m)), Functor::identity(x.level(phi.m)));
    }

    #[test]
    fn certificates_reverify_and_preserve_components((p, q, f) in preorder_functor()) {
        prop_assert!(f.violations(&p, &q).is_empty());
        if let Ok(cert) = theorem_a_certificate(&f, &p, &q) {
            prop_assert!(cert.verify(&f, &p, &q).is_ok());
            let comps = component_map(&f, &p, &q);
            let mut sorted = comps.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), comps.len());
            prop_assert_eq!(comps.len(), pi0_category(&q).len());
        }
        if let Ok(cert) = equivalence_certificate(&f, &p, &q) {
            prop_assert!(cert.verify(&f, &p, &q).is_ok());
        }
        let id = Functor::identity(&p);
        prop_assert!(theorem_a_certificate(&id, &p, &p).is_ok());
    }

    #[test]
    fn two_cyclic_factors_have_gcd_lcm_invariants(a in 1usize..=6, b in 1usize..=6) {
        let order = a * b;
        let mul = (0..order)
            .map(|x| (0..order).map(|y| ((x / b + y / b) % a) * b + (x % b + y % b) % b).collect())
            .collect();
        let g = GroupTable { identity: 0, mul };
        let (d, l) = (gcd(a, b), a * b / gcd(a, b));
        let expected = match (d, l) {
            (_, 1) => "0".to_string(),
            (1, l) => format!("Z/{l}"),
            (d, l) => format!("Z/{d} x Z/{l}"),
        };
        prop_assert_eq!(g.describe().name, expected);
    }

    #[test]
    fn permutative_documents_round_trip(n in 1usize..=5, delooped in any::<bool>()) {
        let p = if delooped { PermutativeCategory::delooped_cyclic(n) } else { PermutativeCategory::discrete_cyclic(n) };
        let doc = permutative_document(&p);
        let again = InputDocument::from_json(&doc.to_canonical_json()).unwrap();
        prop_assert_eq!(again.to_canonical_json(), doc.to_canonical_json());
        let built = again.build(Some(3)).unwrap();
        prop_assert_eq!(built.digest(), from_permutative(&p, 3).unwrap().digest());
    }
}
