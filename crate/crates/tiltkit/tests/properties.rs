use proptest::prelude::*;
use tiltkit::gen::{tag, Bounds, Gen};
use tiltkit::json::Json;
use tiltkit_core::b::{butterfly_equal, Butterfly};
use tiltkit_core::decorated::{is_compatible, DecComplex};
use tiltkit_core::tot::{g_inverse, tot};
use tiltkit_core::FgGroup;

fn gen(seed: u64) -> Gen {
    Gen::for_trial(seed, tag("properties"), 0, Bounds::default())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_json_round_trip(seed in any::<u64>()) {
        let a = gen(seed).group();
        let back = FgGroup::from_value(a.to_value()).unwrap();
        prop_assert_eq!(back.relations(), a.relations());
    }

    #[test]
    fn butterfly_json_round_trip(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, y) = (g.b_object(), g.b_object());
        let p = g.butterfly(&x, &y);
        let back = Butterfly::from_value(p.to_value()).unwrap();
        prop_assert!(butterfly_equal(&p, &back).unwrap());
    }

    #[test]
    fn tot_inverts_g_on_compatible_complexes(seed in any::<u64>()) {
        let d = gen(seed).dec_complex_compatible();
        prop_assert!(is_compatible(&d));
        let x = g_inverse(&d).unwrap();
        prop_assert!(tot(&x).trimmed() == d);
        // A rank-0 term may carry empty relation columns that JSON cannot
        // record, so compare serialized forms.
        let back = DecComplex::from_value(d.to_value()).unwrap();
        prop_assert_eq!(back.to_value(), d.to_value());
        prop_assert!(is_compatible(&back));
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>()) {
        prop_assert_eq!(gen(seed).b_complex().to_value(), gen(seed).b_complex().to_value());
    }
}
