use proptest::prelude::*;

use mcalg::envelope::{check_envelope, envelope, EnvError, PresentedSym};
use mcalg::multicube::{McSpec, Multicube};
use mcalg::spec_file::{parse_spec, AlgebraSpec, Factor, SpecFile};

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (0u32..4).prop_map(Factor::Signed),
        (0u32..4).prop_map(Factor::Interval),
        (0u32..4).prop_map(Factor::Boolean),
        prop::collection::vec(0i64..5, 1..4).prop_map(Factor::Multicube),
    ]
}

fn algebra() -> impl Strategy<Value = AlgebraSpec> {
    prop_oneof![
        prop::collection::vec(0i64..5, 1..4).prop_map(|sizes| AlgebraSpec::Multicube { sizes }),
        (0u32..5).prop_map(|ground| AlgebraSpec::Signed { ground }),
        (0u32..5).prop_map(|ground| AlgebraSpec::Interval { ground }),
        (1u32..4, prop::collection::vec(0u32..8, 1..6), prop::collection::vec((0u32..8, 0u32..8), 0..3))
            .prop_map(|(atoms, elements, swaps)| AlgebraSpec::Presented { atoms, elements, swaps }),
        prop::collection::vec(factor(), 1..4).prop_map(|factors| AlgebraSpec::Product { factors }),
    ]
}

proptest! {
    #[test]
    fn spec_text_round_trips(algebra in algebra(), suites in prop::sample::subsequence(vec!["basicGD", "cubic", "envelope"], 0..3)) {
        let s = SpecFile { algebra, suites: suites.into_iter().map(String::from).collect(), fault: None };
        prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn multicube_size_and_laws(sizes in prop::collection::vec(0i64..3, 1..3)) {
        let m = Multicube::new(&McSpec::new(&sizes).unwrap()).unwrap();
        let expect: usize = sizes.iter().map(|&k| 2 * k as usize + 2).product();
        prop_assert_eq!(m.len(), expect);
        prop_assert!(m.check_order_lemma().passed());
        prop_assert!(m.check_basic_reflection().passed());
    }

    #[test]
    fn envelopes_of_random_presentations(elements in prop::collection::vec(1u32..16, 1..10), swap in prop::bool::ANY) {
        let swaps: &[(u32, u32)] = if swap { &[(1, 2)] } else { &[] };
        let Ok(p) = PresentedSym::from_masks(4, &elements, swaps) else { return Ok(()) };
        match envelope(&p) {
            Ok(r) => prop_assert!(check_envelope(&p, &r).passed()),
            Err(EnvError::Unsupported(_)) | Err(EnvError::TooLarge) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
