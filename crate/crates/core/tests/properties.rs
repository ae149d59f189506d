use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use tiltkit_core::b::{butterfly_equal, compose, make_strict, BObject, Butterfly};
use tiltkit_core::{hom_group, BigInt, FgGroup, GroupMap, IntMatrix};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn cyclic_object() -> impl Strategy<Value = BObject> {
    (0i64..6, 0i64..6).prop_filter_map("H⁰ must be finite", |(a, k)| {
        let x = FgGroup::cyclic(a);
        BObject::new(GroupMap::new(FgGroup::free(1), x, IntMatrix::from_vec(1, 1, vec![BigInt::from(k)])).unwrap()).ok()
    })
}

/// A strict morphism between one-generator objects with `f⁻¹ = a`, taking
/// the first `f⁰` from `b` onward that commutes. `f⁻¹ = 0` always admits `f⁰ = 0`.
fn scalar_strict(x: &BObject, y: &BObject, a: i64, b: i64) -> Option<Butterfly> {
    let one = |s: &FgGroup, t: &FgGroup, k: i64| GroupMap::new(s.clone(), t.clone(), IntMatrix::from_vec(1, 1, vec![BigInt::from(k)])).ok();
    let f_m1 = one(x.x_m1(), y.x_m1(), a)?;
    (b..b + 12).find_map(|c| make_strict(&f_m1, &one(x.x_0(), y.x_0(), c)?, x, y).ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_factors_and_divides(a in matrix(4, 4)) {
        let s = a.snf();
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn presentation_change_keeps_invariants(a in matrix(3, 4), extra in prop::collection::vec(-5i64..=5, 3)) {
        let g = FgGroup::new(a.clone());
        // Appending a combination of existing relations changes nothing.
        let n = a.rows();
        let mut cols = a.columns();
        let mut comb = vec![BigInt::from(0); n];
        for (j, c) in cols.iter().enumerate() {
            let k = BigInt::from(extra[j % extra.len()]);
            for i in 0..n {
                comb[i] += &k * &c[i];
            }
        }
        cols.push(comb);
        let h = FgGroup::new(IntMatrix::from_columns(n, &cols));
        prop_assert!(g.is_isomorphic(&h));
        prop_assert_eq!(g.free_rank(), h.free_rank());
    }

    #[test]
    fn hom_between_cyclic_groups(a in 1i64..30, b in 1i64..30) {
        let h = hom_group(&FgGroup::cyclic(a), &FgGroup::cyclic(b));
        prop_assert!(h.group().is_isomorphic(&FgGroup::cyclic(a.gcd(&b))));
    }

    #[test]
    fn butterfly_identity_and_associativity(
        x in cyclic_object(), y in cyclic_object(), z in cyclic_object(), w in cyclic_object(),
        s in prop::array::uniform6(-3i64..=3),
    ) {
        let p = scalar_strict(&x, &y, s[0], s[1]);
        let q = scalar_strict(&y, &z, s[2], s[3]);
        let r = scalar_strict(&z, &w, s[4], s[5]);
        prop_assume!(p.is_some() && q.is_some() && r.is_some());
        let (p, q, r) = (p.unwrap(), q.unwrap(), r.unwrap());
        prop_assert!(butterfly_equal(&compose(&Butterfly::identity(&x), &p).unwrap(), &p).unwrap());
        prop_assert!(butterfly_equal(&compose(&p, &Butterfly::identity(&y)).unwrap(), &p).unwrap());
        let left = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let right = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        prop_assert!(butterfly_equal(&left, &right).unwrap());
    }
}
