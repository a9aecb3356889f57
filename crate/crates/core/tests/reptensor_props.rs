mod common;

use std::collections::BTreeSet;

use common::characters::{box_weights, doubled, klimyk_disagreements, Character};
use eigencone::fixtures::Fixtures;
use eigencone::reptensor::*;
use eigencone::rootdata::{DiagramAutomorphism, WeylElement};
use proptest::prelude::*;

fn w(a: [i64; 4]) -> DominantWeight {
    DominantWeight(a)
}

#[test]
fn klimyk_matches_character_products() {
    let (checked, bad) = klimyk_disagreements(2);
    assert_eq!(checked, 81 * 82 / 2 * 81);
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn freudenthal_matches_weyl_characters() {
    for a in box_weights(2) {
        let table = weight_multiplicities(w(a));
        let oracle = Character::of(a);
        assert_eq!(table.len(), oracle.mult.len(), "{a:?}");
        for (x, &m) in table.weights() {
            assert_eq!(m as i64, oracle.get(x), "{a:?} at {x:?}");
        }
    }
}

#[test]
fn freudenthal_totals_are_weyl_dimensions() {
    for a in box_weights(3) {
        let table = weight_multiplicities(w(a));
        assert_eq!(table.total(), weyl_dimension(w(a)), "{a:?}");
        assert_eq!(table.get(&doubled(a)), 1);
    }
}

#[test]
fn tables_are_weyl_invariant() {
    for a in [[1, 1, 0, 2], [0, 2, 1, 0], [3, 0, 0, 1]] {
        let table = weight_multiplicities(w(a));
        for (x, &m) in table.weights() {
            for g in WeylElement::all().iter().step_by(7) {
                assert_eq!(table.get(&g.apply(x)), m);
            }
        }
    }
}

#[test]
fn spinor_weights() {
    // the half-spin representations have the sixteen (±½)^4 split by parity
    let s3 = weight_multiplicities(w([0, 0, 1, 0]));
    let s4 = weight_multiplicities(w([0, 0, 0, 1]));
    let odd: BTreeSet<[i64; 4]> = s3.weights().map(|(x, _)| *x).collect();
    let even: BTreeSet<[i64; 4]> = s4.weights().map(|(x, _)| *x).collect();
    assert_eq!(odd.len(), 8);
    assert_eq!(even.len(), 8);
    assert!(odd
        .iter()
        .all(|x| x.iter().filter(|&&c| c < 0).count() % 2 == 1));
    assert!(even
        .iter()
        .all(|x| x.iter().filter(|&&c| c < 0).count() % 2 == 0));
}

#[test]
fn self_duality() {
    for a in box_weights(3) {
        assert_eq!(invariant_dim(w(a), w(a), DominantWeight::ZERO), 1, "{a:?}");
    }
}

#[test]
fn printed_generators_have_invariants() {
    let reps = Fixtures::embedded().h_prime().unwrap();
    let report = verify_generators(&reps).unwrap();
    assert_eq!(report.rows.len(), 10);
    assert!(report.passed(), "{}", report.markdown());
    for t in &reps {
        for n in 1..=4 {
            let [a, b, c] = t.map(|x| w(x).scale(n));
            assert!(invariant_dim(a, b, c) > 0, "{n}·{t:?}");
        }
    }
}

#[test]
fn generator_examples() {
    let z = DominantWeight::ZERO;
    let adj = w([0, 1, 0, 0]);
    assert!(invariant_dim(adj, adj, adj) > 0);
    assert!(invariant_dim(w([0, 2, 0, 0]), adj, w([1, 0, 1, 1])) > 0);
    let cone = ConeTest::new().unwrap();
    let outside = [w([2, 0, 0, 0]), z, z];
    assert_eq!(invariant_dim(outside[0], z, z), 0);
    assert!(!cone.contains(&outside));
}

#[test]
fn saturation_holds_on_a_sample() {
    let report = saturation_sample(150, 3, 5).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert!(report.in_cone > 0 && report.in_cone < 150);
    let again = saturation_sample(150, 3, 5).unwrap();
    assert_eq!(
        serde_json::to_string(&report).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}

#[test]
fn sampled_triples_are_admissible() {
    for t in sample_triples(200, 4, 9) {
        assert!(in_root_lattice(&t));
        assert!(t.iter().all(|x| x.0.iter().all(|&c| (0..=4).contains(&c))));
    }
}

fn permute(g: &DiagramAutomorphism, a: [i64; 4]) -> [i64; 4] {
    let mut out = [0; 4];
    for i in 1..=4u8 {
        out[g.node(i) as usize - 1] = a[i as usize - 1];
    }
    out
}

/// Irreducible constituents of `V(λ) ⊗ V(μ)` are among `λ + (weights of μ)`.
fn constituents(lam: [i64; 4], mu: [i64; 4]) -> BTreeSet<[i64; 4]> {
    let top = doubled(lam);
    weight_multiplicities(w(mu))
        .weights()
        .filter_map(|(x, _)| {
            let v: [i64; 4] = std::array::from_fn(|i| top[i] + x[i]);
            DominantWeight::from_doubled(&dominant_rep(&v))
                .ok()
                .map(|d| d.0)
        })
        .collect()
}

fn coordinate() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(0i64..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn invariants_are_symmetric(a in coordinate(), b in coordinate(), c in coordinate(), g in 0usize..6) {
        let d = invariant_dim(w(a), w(b), w(c));
        for [x, y, z] in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(invariant_dim(w(x), w(y), w(z)), d);
        }
        let f = DiagramAutomorphism::all()[g];
        prop_assert_eq!(invariant_dim(w(permute(&f, a)), w(permute(&f, b)), w(permute(&f, c))), d);
    }

    #[test]
    fn decomposition_dimensions_add_up(a in coordinate(), b in coordinate()) {
        let total: u128 = constituents(a, b)
            .into_iter()
            .map(|n| tensor_multiplicity(w(a), w(b), w(n)) as u128 * weyl_dimension(w(n)))
            .sum();
        prop_assert_eq!(total, weyl_dimension(w(a)) * weyl_dimension(w(b)));
    }

    #[test]
    fn invariants_imply_cone_membership(a in coordinate(), b in coordinate(), c in coordinate()) {
        let cone = ConeTest::new().unwrap();
        let t = [w(a), w(b), w(c)];
        if invariant_dim(t[0], t[1], t[2]) > 0 {
            prop_assert!(cone.contains(&t));
        }
    }
}
