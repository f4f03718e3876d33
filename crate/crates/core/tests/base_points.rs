use num_bigint::BigInt;
use num_traits::Signed;

use plumbing_core::{
    base_point_report, blow_up_generic, build_form, classify, maximal_ideal_cycle,
    multiplicity_generic, ClassTag, Cycle, IntersectionForm,
};
use plumbing_oracle::{corpus, oracle_semigroup};

fn non_rational() -> Vec<IntersectionForm> {
    corpus::standard()
        .iter()
        .map(|g| build_form(g).unwrap())
        .filter(|f| classify(f).unwrap().tag != ClassTag::Rational)
        .collect()
}

#[test]
fn multiplicity_is_floor_plus_correction() {
    for g in corpus::standard() {
        let f = build_form(&g).unwrap();
        let r = multiplicity_generic(&f).unwrap();
        let mult = r.multiplicity.clone().unwrap();
        let floor = r.wagreich_floor.to_integer();
        assert!(mult >= floor);
        assert_eq!(&mult - &floor, r.correction());
        assert_eq!(mult == floor, r.total_base_points == BigInt::from(0));
        for d in &r.per_vertex {
            assert!(d.pairing.is_negative());
            if d.count.is_positive() {
                assert!(d.star);
                assert!(d.t.clone().unwrap() >= BigInt::from(1));
            }
        }
    }
}

/// `s'` from the level set equals the least semigroup element `≥ l' + E_v`
/// found by scanning `l' + E_v ≤ x ≤ s'`.
#[test]
fn s_max_is_least_semigroup_element_above() {
    for f in non_rational().into_iter().filter(|f| f.len() <= 8) {
        let z = maximal_ideal_cycle(&f).unwrap().cycle;
        let report = base_point_report(&f, &z.to_rat()).unwrap();
        for d in report.per_vertex.iter().filter(|d| d.star) {
            let s = d.s_max.clone().unwrap().to_cycle().unwrap();
            let i = f.index_of(d.vertex).unwrap();
            let lower = &z + &Cycle::unit(f.len(), i);
            let lo: Vec<i64> = lower
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect();
            let hi: Vec<i64> = s
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect();
            let mut x = lo.clone();
            let mut members: Vec<Cycle> = Vec::new();
            'outer: loop {
                let c = Cycle::from_i64s(&x);
                if oracle_semigroup(&f, &c.to_rat()).unwrap() {
                    members.push(c);
                }
                for k in 0..x.len() {
                    if x[k] < hi[k] {
                        x[k] += 1;
                        continue 'outer;
                    }
                    x[k] = lo[k];
                }
                break;
            }
            let meet = members
                .iter()
                .skip(1)
                .fold(members[0].clone(), |a, b| a.meet(b));
            assert_eq!(meet, s, "{:?} v{}", f.graph().name(), d.vertex);
            assert_eq!(d.m_v_plus.clone().unwrap(), s.to_rat().coeffs()[i].clone());
        }
    }
}

#[test]
fn multiplicity_survives_generic_blow_ups() {
    for g in corpus::standard() {
        let f = build_form(&g).unwrap();
        let mult = multiplicity_generic(&f).unwrap().multiplicity;
        for &v in f.ids() {
            let once = blow_up_generic(&g, v).unwrap();
            let f1 = build_form(&once.graph).unwrap();
            assert_eq!(multiplicity_generic(&f1).unwrap().multiplicity, mult);
            let again = blow_up_generic(&once.graph, v).unwrap();
            let f2 = build_form(&again.graph).unwrap();
            assert_eq!(multiplicity_generic(&f2).unwrap().multiplicity, mult);
        }
    }
}
