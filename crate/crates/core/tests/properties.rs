use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use plumbing_core::{
    blow_up_generic, build_form, hilbert_h, min_chi, sublevel_set, Constraint, Cycle,
    IntersectionForm, RatCycle,
};
use plumbing_oracle::{analytic_box, brute_sublevel, corpus};

fn forms() -> &'static [IntersectionForm] {
    static FORMS: OnceLock<Vec<IntersectionForm>> = OnceLock::new();
    FORMS.get_or_init(|| {
        corpus::standard()
            .iter()
            .map(|g| build_form(g).unwrap())
            .collect()
    })
}

/// A corpus graph with two coefficient vectors for integral and dual parts.
fn sample() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0..forms().len()).prop_flat_map(|k| {
        let n = forms()[k].len();
        (
            Just(k),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(-2i64..=2, n),
        )
    })
}

fn class(f: &IntersectionForm, integral: &[i64], dual: &[i64]) -> RatCycle {
    let mut x = Cycle::from_i64s(integral).to_rat();
    for (i, &k) in dual.iter().enumerate() {
        x = &x
            + &f.dual_cycle_at(i)
                .scale(&BigRational::from_integer(k.into()));
    }
    x
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chi_is_symmetric_about_half_canonical((k, a, b) in sample()) {
        let f = &forms()[k];
        let x = class(f, &a, &b);
        prop_assert_eq!(f.chi(&x), f.chi(&(f.canonical_cycle() - &x)));
    }

    #[test]
    fn chi_defect_is_the_pairing((k, a, b) in sample(), (c, d) in (prop::collection::vec(-3i64..=3, 10), prop::collection::vec(-2i64..=2, 10))) {
        let f = &forms()[k];
        let n = f.len();
        let x = class(f, &a, &b);
        let y = class(f, &c[..n], &d[..n]);
        let defect = f.chi(&(&x + &y)) - f.chi(&x) - f.chi(&y);
        prop_assert_eq!(defect, -f.pairing(&x, &y));
    }

    #[test]
    fn lattice_operations_are_consistent((_k, a, b) in sample()) {
        let x = Cycle::from_i64s(&a);
        let y = Cycle::from_i64s(&b);
        let j = x.join(&y);
        let m = x.meet(&y);
        prop_assert!(x.leq(&j) && y.leq(&j) && m.leq(&x) && m.leq(&y));
        prop_assert_eq!(&j + &m, &x + &y);
    }

    #[test]
    fn hilbert_function_is_monotone((k, a, _b) in sample(), v in 0usize..10) {
        let f = &forms()[k];
        let n = f.len();
        let l0 = Cycle::from_i64s(&a.iter().map(|x| x.abs() % 3).collect::<Vec<_>>());
        let bigger = &l0 + &Cycle::unit(n, v % n);
        prop_assert!(hilbert_h(f, &l0).unwrap() <= hilbert_h(f, &bigger).unwrap());
    }

    #[test]
    fn blow_up_shifts_chi_by_triangular_numbers((k, a, b) in sample(), v in 0usize..10, e in -2i64..=3) {
        let f = &forms()[k];
        let id = f.id_at(v % f.len());
        let blown = blow_up_generic(f.graph(), id).unwrap();
        let fb = build_form(&blown.graph).unwrap();
        let x = class(f, &a, &b);
        let exc = blown.exceptional(&fb).unwrap().to_rat().scale(&q(e));
        let y = &blown.pull_back(f, &fb, &x).unwrap() + &exc;
        prop_assert_eq!(fb.chi(&y), f.chi(&x) + q(e * (e + 1) / 2));
    }

    #[test]
    fn minimizers_are_exactly_the_bottom_level((k, _a, b) in sample()) {
        let f = &forms()[k];
        let n = f.len();
        if n > 7 {
            return Ok(());
        }
        let shift = class(f, &vec![0; n], &b);
        let r = min_chi(f, &shift, &Constraint::nonnegative(n)).unwrap();
        for l in &r.minimizers {
            prop_assert_eq!(f.chi(&(&shift + l)), r.min_value.clone());
        }
        let bound = &r.min_value + q(2);
        let fast = sublevel_set(f, &shift, &Constraint::nonnegative(n), &bound).unwrap();
        let zero = vec![0i64; n];
        let scan = analytic_box(f, &shift, Some(&zero), None, false, &bound).unwrap();
        if scan.candidates() <= 2_000_000 {
            let slow = brute_sublevel(f, &shift, &scan, &bound).unwrap();
            prop_assert_eq!(fast.members, slow);
        }
    }
}
