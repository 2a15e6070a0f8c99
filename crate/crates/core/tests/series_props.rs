use isingser_core::rational::{self, Rational};
use isingser_core::series::{Series, VarTag};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rational::frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |c| *c != rational::int(0))
}

/// Series with a nonzero leading coefficient at `min_exp`.
fn series_from(min_exp: std::ops::Range<i64>) -> impl Strategy<Value = Series> {
    (min_exp, nonzero_rational(), prop::collection::vec(small_rational(), 0..8)).prop_map(|(m, lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        Series::from_coeffs(VarTag::U, m, c)
    })
}

fn laurent() -> impl Strategy<Value = Series> {
    series_from(-2..3)
}

/// `1 + ...`
fn unit() -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), 1..9).prop_map(|rest| {
        let mut c = vec![rational::int(1)];
        c.extend(rest);
        Series::from_coeffs(VarTag::U, 0, c)
    })
}

/// Equal on every exponent both sides know.
fn agree(a: &Series, b: &Series) -> bool {
    let o = a.order().min(b.order());
    a.truncate(o) == b.truncate(o)
}

proptest! {
    #[test]
    fn addition_is_a_commutative_group(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(agree(&a.add(&b).unwrap().add(&c).unwrap(), &a.add(&b.add(&c).unwrap()).unwrap()));
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(agree(&a.add(&a.neg()).unwrap(), &Series::zero(VarTag::U, a.order())));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_distributes(a in laurent(), b in laurent(), c in laurent()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn one_is_neutral(a in laurent()) {
        let one = Series::one(VarTag::U, a.order() - a.min_exp());
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn reciprocal_inverts(a in laurent()) {
        let r = a.reciprocal().unwrap();
        let p = a.mul(&r).unwrap();
        prop_assert!(agree(&p, &Series::one(VarTag::U, p.order())));
        prop_assert_eq!(p.order(), a.order() - a.min_exp());
        prop_assert!(agree(&r.reciprocal().unwrap(), &a));
    }

    #[test]
    fn reversion_round_trips(lead in nonzero_rational(), rest in prop::collection::vec(small_rational(), 0..9)) {
        let mut c = vec![rational::int(0), lead];
        c.extend(rest);
        let f = Series::from_coeffs(VarTag::U, 0, c);
        let g = f.revert().unwrap();
        let id = Series::identity(VarTag::U, f.order());
        prop_assert!(agree(&f.compose(&g).unwrap(), &id));
        prop_assert!(agree(&g.compose(&f).unwrap(), &id));
        prop_assert!(agree(&g.revert().unwrap(), &f));
    }

    #[test]
    fn composition_is_associative(
        f in series_from(0..3),
        g in series_from(1..3),
        h in series_from(1..3),
    ) {
        let lhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        let rhs = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn integer_powers_add(a in laurent(), j in -3i64..4, k in -3i64..4) {
        let lhs = a.pow_int(j).unwrap().mul(&a.pow_int(k).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &a.pow_int(j + k).unwrap()));
    }

    #[test]
    fn rational_powers_add(a in unit(), p in small_rational(), q in small_rational()) {
        let lhs = a.pow_rational(&p).unwrap().mul(&a.pow_rational(&q).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &a.pow_rational(&(&p + &q)).unwrap()));
    }

    #[test]
    fn rational_power_matches_integer_power(a in laurent(), k in -3i64..4) {
        prop_assert!(agree(&a.pow_rational(&rational::int(k)).unwrap(), &a.pow_int(k).unwrap()));
    }

    #[test]
    fn derivative_obeys_leibniz(a in laurent(), b in laurent()) {
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a.derivative().mul(&b).unwrap().add(&a.mul(&b.derivative()).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn json_round_trips(a in laurent()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Series>(&text).unwrap(), a);
    }
}

#[test]
fn square_root_of_magnetization_factor() {
    // (1 - 6u + u^2)^{1/4} squared twice gives back the quadratic
    let q = Series::from_ints(VarTag::U, 0, &[1, -6, 1, 0, 0, 0, 0, 0]);
    let r = q.pow_rational(&rational::frac(1, 4)).unwrap();
    assert_eq!(r.pow_int(4).unwrap(), q);
}
