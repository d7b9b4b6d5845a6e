mod common;

use common::{compositions, r, rank};
use proptest::prelude::*;
use treeinv_core::algebra::{qsym_to_finite, FiniteVarPoly, Polynomial, QSymElement, Rational};
use treeinv_core::operators::{delta, delta_inv, finite_model, lambda, lambda_bar, nabla, nabla_inv};

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 0..=max_degree + 1)
        .prop_map(|c| Polynomial::from_coeffs(c.into_iter().map(|(n, d)| r(n, d)).collect()))
}

/// Random polynomial in `x_1..x_m` of degree at most `deg`, carried with
/// degree bound `bound`.
fn finite(m: usize, deg: usize, bound: usize) -> impl Strategy<Value = FiniteVarPoly> {
    // each monomial is a multiset of at most `deg` variable indices
    let monomial = prop::collection::vec(0..m, 0..=deg);
    prop::collection::vec((monomial, -5i64..=5), 1..6).prop_map(move |terms| {
        let mut p = FiniteVarPoly::zero(m, bound);
        for (vars, c) in terms {
            let mut e = vec![0u32; m];
            for v in vars {
                e[v] += 1;
            }
            p.add_term(e, r(c, 1));
        }
        p
    })
}

proptest! {
    #[test]
    fn differences_invert(g in polynomial(10)) {
        let zero = Rational::from_integer(0.into());
        prop_assert_eq!(delta(&delta_inv(&g)), g.clone());
        prop_assert_eq!(nabla(&nabla_inv(&g)), g.clone());
        prop_assert_eq!(delta_inv(&g).eval_at(&zero), zero.clone());
        prop_assert_eq!(nabla_inv(&g).eval_at(&zero), zero);
    }

    #[test]
    fn inverse_differences_are_linear(f in polynomial(6), g in polynomial(6), n in -4i64..=4) {
        let c = r(n, 3);
        prop_assert_eq!(delta_inv(&f.add(&g.scale(&c))), delta_inv(&f).add(&delta_inv(&g).scale(&c)));
        prop_assert_eq!(nabla_inv(&f.add(&g.scale(&c))), nabla_inv(&f).add(&nabla_inv(&g).scale(&c)));
    }

    #[test]
    fn shift_commutes_past_variables(p in finite(6, 4, 5), (m, k) in (2usize..=6).prop_flat_map(|m| (Just(m), 1..m))) {
        let lhs = p.shift_pow(k).mul_var(m);
        let rhs = p.mul_var(m - k).shift_pow(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_minus_shift_of_lambda_bar(p in finite(6, 4, 5)) {
        let lb = finite_model::lambda_bar(&p);
        let lhs = lb.add(&finite_model::shift_s(&lb).scale(&r(-1, 1)));
        prop_assert_eq!(lhs, finite_model::shift_s(&p).mul_var(1));
    }
}

#[test]
fn basis_action_matches_defining_sums() {
    let (m, d) = (10, 5);
    let safe = m - d;
    for w in 0..d as u32 {
        for alpha in compositions(w) {
            let mono = QSymElement::m(&alpha, d);
            let finite = qsym_to_finite(&mono, m, d).unwrap();
            let closed = qsym_to_finite(&lambda_bar(&mono), m, d).unwrap();
            assert_eq!(
                closed.support_within(safe),
                finite_model::lambda_bar(&finite).support_within(safe),
                "lambda-bar on M{alpha:?}"
            );
            let closed = qsym_to_finite(&lambda(&mono), m, d).unwrap();
            assert_eq!(
                closed.support_within(safe),
                finite_model::lambda(&finite).support_within(safe),
                "lambda on M{alpha:?}"
            );
        }
    }
}

#[test]
fn lambda_operators_have_full_column_rank() {
    for n in 0..=5u32 {
        let cols = compositions(n);
        let targets = compositions(n + 1);
        for op in [lambda_bar as fn(&QSymElement) -> QSymElement, lambda] {
            let images: Vec<QSymElement> = cols.iter().map(|a| op(&QSymElement::m(a, n as usize + 1))).collect();
            let rows = targets
                .iter()
                .map(|b| images.iter().map(|img| img.coeff(b)).collect())
                .collect();
            assert_eq!(rank(rows), cols.len(), "degree {n}");
        }
    }
}
