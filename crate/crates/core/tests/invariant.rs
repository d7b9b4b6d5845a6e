mod common;

use treeinv_core::algebra::{AlgebraElement, QSymElement};
use treeinv_core::forest::{b_plus, enumerate_forests, enumerate_trees, parse_tree, RootedForest};
use treeinv_core::invariant::{
    brute_force_order_count, collision_report, order_spec, qsym_strict, qsym_strict_spec, qsym_weak_spec,
    strict_order_poly, strict_order_spec, Invariant, InvariantSpec,
};
use treeinv_core::Error;

fn forest_laws<A: AlgebraElement>(spec: InvariantSpec<A>) {
    let inv = Invariant::new(spec);
    for n in 0..=6 {
        let forests = enumerate_forests(n);
        for f in &forests {
            let product = f
                .trees()
                .iter()
                .fold(inv.spec().unit().clone(), |acc, t| acc.times(&inv.evaluate(t)));
            assert_eq!(inv.evaluate_forest(f), product, "{} on {f}", inv.name());
            let grafted = b_plus(f.clone());
            assert_eq!(inv.evaluate(&grafted), inv.spec().apply(&inv.evaluate_forest(f)), "{} on {f}", inv.name());
        }
        // disjoint unions of two smaller forests
        for k in 0..=n {
            for a in enumerate_forests(k) {
                for b in enumerate_forests(n - k).iter().take(6) {
                    let joined: RootedForest = a.union(b);
                    assert_eq!(
                        inv.evaluate_forest(&joined),
                        inv.evaluate_forest(&a).times(&inv.evaluate_forest(b)),
                        "{} on {a} {b}",
                        inv.name()
                    );
                }
            }
        }
    }
}

#[test]
fn strict_order_is_multiplicative_and_recursive() {
    forest_laws(strict_order_spec());
}

#[test]
fn order_is_multiplicative_and_recursive() {
    forest_laws(order_spec());
}

#[test]
fn qsym_strict_is_multiplicative_and_recursive() {
    forest_laws(qsym_strict_spec(7));
}

#[test]
fn qsym_weak_is_multiplicative_and_recursive() {
    forest_laws(qsym_weak_spec(7));
}

#[test]
fn strict_qsym_is_homogeneous_of_degree_v() {
    for n in 1..=7 {
        for t in enumerate_trees(n).unwrap() {
            let k = qsym_strict(&t, n).unwrap();
            assert!(!k.is_empty());
            assert!(k.terms().all(|(alpha, _)| alpha.weight() == n), "{t}");
        }
    }
}

#[test]
fn degree_bound_below_vertex_count_is_rejected() {
    let t = parse_tree("(()())").unwrap();
    assert!(matches!(qsym_strict(&t, 2), Err(Error::Domain(_))));
}

#[test]
fn brute_force_guard() {
    let t = parse_tree("(()()()()()()()())").unwrap();
    assert!(matches!(brute_force_order_count(&t, 8, true), Err(Error::Resource(_))));
}

#[test]
fn strict_order_polynomial_counts_chains() {
    // a chain of v vertices maps strictly into [n] in C(n, v) ways
    let chain = parse_tree("(((())))").unwrap();
    let p = strict_order_poly(&chain);
    for n in 0..=8 {
        let want = (0..4).fold(common::r(1, 1), |acc, i| acc * common::r(n - i, i + 1));
        assert_eq!(p.eval_at(&common::r(n, 1)), want);
    }
}

#[test]
fn constant_invariant_collides_with_alpha_flags() {
    let spec = InvariantSpec::new(
        "constant",
        "qsym",
        QSymElement::one(4),
        treeinv_core::operators::LinearOperator::new("id", "qsym", QSymElement::clone),
    )
    .unwrap();
    let found = collision_report(&Invariant::new(spec), 4);
    // every pair among 2 trees of size 3 and 4 trees of size 4
    assert_eq!(found.len(), 1 + 6);
    let json = found[0].to_json();
    assert_eq!(json["n"], 3);
    assert!(json["alpha_collision"].is_boolean());
    assert_eq!(json["colliding_trees"].as_array().unwrap().len(), 2);
}
