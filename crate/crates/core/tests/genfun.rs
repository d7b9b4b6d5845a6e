mod common;

use common::r;
use proptest::prelude::*;
use treeinv_core::algebra::Rational;
use treeinv_core::genfun::{elementary_schur, u_by_recurrence};
use treeinv_core::invariant::{order_spec, Invariant};

proptest! {
    #[test]
    fn schur_ignores_later_values(
        values in prop::collection::vec((-5i64..=5, 1i64..=3), 8),
        noise in prop::collection::vec(-7i64..=7, 8),
        n in 0usize..=5,
    ) {
        let base: Vec<Rational> = values.iter().map(|&(a, b)| r(a, b)).collect();
        let mut perturbed = base.clone();
        for k in n..8 {
            perturbed[k] += r(noise[k], 1);
        }
        let one = r(1, 1);
        prop_assert_eq!(
            elementary_schur(&base, n, &one).unwrap(),
            elementary_schur(&perturbed, n, &one).unwrap()
        );
    }
}

#[test]
fn weak_order_sequence_at_one_gives_cayley_numbers() {
    let u = u_by_recurrence(&Invariant::new(order_spec()), 8).unwrap();
    let one = r(1, 1);
    for n in 1..=8i64 {
        let want = (1..n).fold(r(1, 1), |acc, _| acc * r(n, 1)) / (1..=n).fold(r(1, 1), |acc, k| acc * r(k, 1));
        assert_eq!(u.term(n as usize).eval_at(&one), want, "n={n}");
    }
}
