use hecke_core::identities::{catalog, hecke_sum, HeckeSumSpec};
use hecke_core::qkit::{
    euler_partial_sum, gauss_binomial, poch_finite, poch_infinite, qbinomial_partial_sum, Monomial,
};
use hecke_core::truncated;
use hecke_core::{HalfExp, Series};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(k: i64) -> HalfExp {
    HalfExp::from_q(k)
}

fn agree(a: &Series, b: &Series, order: HalfExp) -> bool {
    Series::equal_up_to(a, b, order).unwrap().is_none()
}

fn small_poly() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (-6i64..6, prop::collection::vec(-9i64..=9, 0..=21))
}

fn poly(p: &(i64, Vec<i64>)) -> Series {
    Series::from_i64s(HalfExp(p.0), &p.1, None)
}

fn signed_monomial() -> impl Strategy<Value = Monomial> {
    (any::<bool>(), 1i64..8).prop_map(|(neg, h)| if neg { Monomial::neg(HalfExp(h)) } else { Monomial::pos(HalfExp(h)) })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 600, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_matches_convolution(a in small_poly(), b in small_poly()) {
        let prod = &poly(&a) * &poly(&b);
        for e in (a.0 + b.0)..(a.0 + b.0 + 45) {
            let mut want = 0i64;
            for (i, x) in a.1.iter().enumerate() {
                let j = e - a.0 - b.0 - i as i64;
                if (0..b.1.len() as i64).contains(&j) {
                    want += x * b.1[j as usize];
                }
            }
            prop_assert_eq!(prod.coeff(HalfExp(e)).unwrap(), BigInt::from(want));
        }
    }

    #[test]
    fn truncated_products_keep_the_truncation_rule(a in small_poly(), b in small_poly(), ta in 30i64..60, tb in 30i64..60) {
        let (sa, sb) = (poly(&a).truncated(HalfExp(ta)), poly(&b).truncated(HalfExp(tb)));
        let prod = &sa * &sb;
        let exact = &poly(&a) * &poly(&b);
        if let (Some(va), Some(vb)) = (sa.min_exp(), sb.min_exp()) {
            prop_assert_eq!(prod.trunc(), Some(HalfExp((ta + vb.0).min(tb + va.0))));
        }
        prop_assert!(agree(&prod, &exact, prod.trunc().unwrap()));
    }

    #[test]
    fn inversion(tail in prop::collection::vec(-9i64..=9, 0..=20), unit in prop::bool::ANY, shift in -4i64..4, order in 1i64..80) {
        let mut cs = vec![if unit { 1 } else { -1 }];
        cs.extend(tail);
        let a = Series::from_i64s(HalfExp(shift), &cs, None);
        let inv = a.invert(HalfExp(order)).unwrap();
        let one = &a * &inv;
        prop_assert_eq!(one.trunc(), Some(HalfExp(order + shift)));
        prop_assert!(agree(&one, &Series::exact_one(), HalfExp(order + shift)));
    }

    #[test]
    fn truncation_monotonicity(arg in signed_monomial(), step in 1i64..4, big in 20i64..90, small in 1i64..20) {
        let step = HalfExp(step);
        let full = poch_infinite(arg, step, HalfExp(big)).unwrap();
        let direct = poch_infinite(arg, step, HalfExp(small)).unwrap();
        prop_assert!(agree(&full.truncated(HalfExp(small)), &direct, HalfExp(small)));
        let inv_full = full.invert(HalfExp(big)).unwrap().truncated(HalfExp(small));
        let inv_direct = direct.invert(HalfExp(small)).unwrap();
        prop_assert!(agree(&inv_full, &inv_direct, HalfExp(small)));
    }

    #[test]
    fn pochhammer_recurrence(sign in -1i8..=1, h in -6i64..8, step in 1i64..4, n in 0usize..30) {
        let arg = match sign {
            0 => Monomial::ZERO,
            1 => Monomial::pos(HalfExp(h)),
            _ => Monomial::neg(HalfExp(h)),
        };
        let step = HalfExp(step);
        let next = poch_finite(arg, step, n + 1, None);
        let factor = &Series::exact_one() - &arg.shift(step * n as i64).to_series();
        prop_assert_eq!(next, &poch_finite(arg, step, n, None) * &factor);
    }

    #[test]
    fn pochhammer_splitting(arg in signed_monomial(), step in 1i64..4, n in 0usize..12, order in 1i64..70) {
        let (step, order) = (HalfExp(step), HalfExp(order));
        let whole = poch_infinite(arg, step, order).unwrap();
        let head = poch_finite(arg, step, n, None);
        let rest = poch_infinite(arg.shift(step * n as i64), step, order).unwrap();
        prop_assert!(agree(&whole, &(&head * &rest), order));
    }

    #[test]
    fn q_binomial_theorem(neg in any::<bool>(), s in 0i64..6, t in 1i64..6, order in 1i64..60) {
        let a = if neg { Monomial::neg(HalfExp(s)) } else { Monomial::pos(HalfExp(s)) };
        let z = Monomial::pos(HalfExp(t));
        let order = HalfExp(order);
        let sum = qbinomial_partial_sum(a, z, q(1), order).unwrap();
        let num = poch_infinite(a.mul(z), q(1), order).unwrap();
        let den = poch_infinite(z, q(1), order).unwrap().invert(order).unwrap();
        prop_assert!(agree(&sum, &(&num * &den), order));
    }

    #[test]
    fn reciprocal_and_euler_specializations(neg in any::<bool>(), t in 1i64..6, order in 1i64..60) {
        let z = if neg { Monomial::neg(HalfExp(t)) } else { Monomial::pos(HalfExp(t)) };
        let order = HalfExp(order);
        let recip = qbinomial_partial_sum(Monomial::ZERO, z, q(1), order).unwrap();
        let want = poch_infinite(z, q(1), order).unwrap().invert(order).unwrap();
        prop_assert!(agree(&recip, &want, order));
        let euler = euler_partial_sum(z, q(1), order).unwrap();
        prop_assert!(agree(&euler, &poch_infinite(z.negated(), q(1), order).unwrap(), order));
    }
}

#[test]
fn pascal_recurrence() {
    for big_m in 1..=25 {
        for n in 0..=big_m {
            let lhs = gauss_binomial(big_m, n, q(1));
            let rhs = &gauss_binomial(big_m - 1, n, q(1)) + &gauss_binomial(big_m - 1, n - 1, q(1)).shifted(1, q(big_m - n));
            assert_eq!(lhs, rhs, "[{big_m} {n}]");
        }
    }
}

#[test]
fn catalog_passes_at_every_checked_order() {
    for order in [10, 50, 200] {
        for id in catalog::identity_ids() {
            let r = catalog::verify_identity(id, q(order)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn product_identities_over_the_z_grid() {
    let zs = [Monomial::q(1), Monomial::neg(q(1)), Monomial::q(2), Monomial::pos(HalfExp(1))];
    for id in ["triple-product", "quintuple"] {
        for z in zs {
            let r = catalog::verify_identity_at(id, q(100), Some(z)).unwrap();
            assert!(r.passed(), "{id} z={z}: {r}");
        }
    }
}

#[test]
fn hecke_sums_are_truncation_consistent() {
    for entry in catalog::CATALOG {
        if let catalog::Rhs::Hecke(spec) = entry.rhs {
            let spec: HeckeSumSpec = spec;
            let big = hecke_sum(&spec, q(120)).unwrap();
            let small = hecke_sum(&spec, q(40)).unwrap();
            assert!(agree(&big.truncated(q(40)), &small, q(40)), "{}", entry.id);
        }
    }
}

#[test]
fn truncated_prefixes_match_printed_powers() {
    for id in truncated::truncated_ids() {
        for m in 0..=6 {
            let r = truncated::prefix_check(id, m, q(150)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
