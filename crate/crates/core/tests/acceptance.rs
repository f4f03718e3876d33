//! Acceptance criteria, one pass/fail line each. Exits non-zero on failure.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plumbing_core::catalog;
use plumbing_core::{
    base_point_data, blow_up_generic, build_form, classify, elliptic_claims, geometric_genus,
    in_analytic_semigroup, laufer_zmin, maximal_ideal_cycle, min_chi, minimally_elliptic_cycle,
    multiplicity_generic, star_condition, ClassTag, Constraint, Cycle, HilbertFunction,
    IntersectionForm, RatCycle, ResolutionGraph,
};
use plumbing_oracle::{brute_zmin, corpus, oracle_min_chi, oracle_semigroup};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(int(n))
}

fn form(g: &ResolutionGraph) -> Result<IntersectionForm, String> {
    build_form(g).map_err(|e| format!("{:?}: {e}", g.name()))
}

fn name(f: &IntersectionForm) -> String {
    f.graph().name().unwrap_or("unnamed").to_string()
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|err| format!("{what}: {err}"))
}

fn min_over(f: &IntersectionForm, c: &Constraint) -> Result<BigRational, String> {
    e(min_chi(f, &RatCycle::zero(f.len()), c), "min_chi").map(|r| r.min_value)
}

fn sigma_2_3_17() -> Outcome {
    let f = form(&catalog::seifert_2_3_17())?;
    let n = f.len();
    ensure!(f.det_neg() == &int(1), "det(-I) = {}", f.det_neg());
    let e1 = e(f.dual_cycle(1), "E1*")?;
    let e2 = e(f.dual_cycle(2), "E2*")?;
    let z_min = laufer_zmin(&f);
    ensure!(z_min.to_rat() == e1, "Z_min = {z_min:?}");
    ensure!(f.canonical_cycle() == &e2, "Z_K differs from E2*");
    let m = min_over(&f, &Constraint::unbounded())?;
    ensure!(m.is_zero(), "min chi = {m}");
    let p_g = e(geometric_genus(&f), "p_g")?;
    ensure!(p_g == int(1), "p_g = {p_g}");
    let z_max = e(maximal_ideal_cycle(&f), "Z_max")?.cycle;
    ensure!(z_max.to_rat() == e2, "Z_max = {z_max:?}");
    let report = e(multiplicity_generic(&f), "mult")?;
    let with_points: Vec<_> = report
        .per_vertex
        .iter()
        .filter(|d| d.count.is_positive())
        .collect();
    ensure!(
        with_points.len() == 1 && with_points[0].vertex == 2 && with_points[0].count == int(1),
        "base points {with_points:?}"
    );
    ensure!(
        with_points[0].t == Some(int(1)),
        "t = {:?}",
        with_points[0].t
    );
    ensure!(
        report.multiplicity == Some(int(3)),
        "mult = {:?}",
        report.multiplicity
    );
    ensure!(
        !e(in_analytic_semigroup(&f, &z_min.to_rat()), "S_an")?,
        "Z_min in S_an"
    );
    ensure!(
        e(in_analytic_semigroup(&f, &e2), "S_an")?,
        "Z_K not in S'_an"
    );
    let next = &e2 + &z_min;
    let d = e(base_point_data(&f, &next, 2), "O(-Z_K-Z_min)")?;
    ensure!(
        d.count == int(1),
        "O(-Z_K-Z_min) has {} base points on E2",
        d.count
    );
    Ok(format!("mult 3, p_g 1, {n} vertices"))
}

fn minus13_two_nodes() -> Outcome {
    let f = form(&catalog::minus13_two_nodes())?;
    let m = min_over(&f, &Constraint::unbounded())?;
    ensure!(m == q(-1), "min chi = {m}");
    let p_g = e(geometric_genus(&f), "p_g")?;
    ensure!(p_g == int(2), "p_g = {p_g}");
    let ev = e(f.dual_cycle(3), "E3*")?;
    let z_max = e(maximal_ideal_cycle(&f), "Z_max")?.cycle;
    ensure!(z_max.to_rat() == ev.scale(&q(2)), "Z_max = {z_max:?}");
    let i = e(f.index_of(3), "index")?;
    let pairing = f.pairing_with_vertex_int(&z_max, i);
    ensure!(pairing == int(-2), "(Z_max, E_v) = {pairing}");
    let report = e(multiplicity_generic(&f), "mult")?;
    let with_points: Vec<_> = report
        .per_vertex
        .iter()
        .filter(|d| d.count.is_positive())
        .collect();
    ensure!(
        with_points.len() == 1 && with_points[0].vertex == 3 && with_points[0].count == int(2),
        "base points {with_points:?}"
    );
    ensure!(
        with_points[0].t == Some(int(1)),
        "t = {:?}",
        with_points[0].t
    );
    ensure!(
        report.multiplicity == Some(int(6)),
        "mult = {:?}",
        report.multiplicity
    );
    let floor = -f.pairing_int(&z_max, &z_max);
    ensure!(floor == int(4), "-Z_max^2 = {floor}");
    Ok("mult 6, p_g 2, -Z_max^2 4".into())
}

fn to_i64s(c: &Cycle) -> Vec<i64> {
    c.coeffs()
        .iter()
        .map(|x| i64::try_from(x).expect("small"))
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let graphs: Vec<ResolutionGraph> = corpus::standard();
    let small = graphs.iter().filter(|g| g.len() <= 8).count();
    ensure!(small >= 25, "only {small} graphs with at most 8 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0usize;
    for g in &graphs {
        let f = form(g)?;
        let n = f.len();
        let zero = RatCycle::zero(n);
        for c in [
            Constraint::unbounded(),
            Constraint::nonnegative(n),
            Constraint::positive(n),
        ] {
            let fast = e(min_chi(&f, &zero, &c), "min_chi")?;
            let lower = c.lower.as_ref().map(to_i64s);
            let slow = e(
                oracle_min_chi(&f, &zero, lower.as_deref(), None, c.nonzero),
                "oracle",
            )?;
            ensure!(fast.min_value == slow.min_value, "{}: minimum", name(&f));
            ensure!(
                fast.minimizers == slow.minimizers,
                "{}: minimizer set",
                name(&f)
            );
            checks += 1;
        }
        let z = laufer_zmin(&f);
        ensure!(
            e(brute_zmin(&f, &z), "brute_zmin")? == z,
            "{}: Z_min",
            name(&f)
        );
        let mut classes = vec![zero.clone(), z.to_rat(), f.canonical_cycle().clone()];
        for i in 0..n {
            classes.push(f.dual_cycle_at(i));
            classes.push(&f.dual_cycle_at(i) + &z);
        }
        for _ in 0..6 {
            let mut x =
                Cycle::from_i64s(&(0..n).map(|_| rng.gen_range(-1..=2)).collect::<Vec<_>>())
                    .to_rat();
            for i in 0..n {
                let k = BigInt::from(rng.gen_range(0..=1));
                x = &x + &f.dual_cycle_at(i).scale(&BigRational::from_integer(k));
            }
            classes.push(x);
        }
        for x in &classes {
            let fast = e(in_analytic_semigroup(&f, x), "semigroup")?;
            let slow = e(oracle_semigroup(&f, x), "oracle semigroup")?;
            ensure!(fast == slow, "{}: semigroup membership of {x:?}", name(&f));
            checks += 1;
        }
    }
    Ok(format!("{} graphs, {checks} comparisons", graphs.len()))
}

struct Invariants {
    min_chi: BigRational,
    p_g: BigInt,
    mult: Option<BigInt>,
}

fn invariants(f: &IntersectionForm) -> Result<Invariants, String> {
    Ok(Invariants {
        min_chi: min_over(f, &Constraint::unbounded())?,
        p_g: e(geometric_genus(f), "p_g")?,
        mult: e(multiplicity_generic(f), "mult")?.multiplicity,
    })
}

fn same(a: &Invariants, b: &Invariants) -> bool {
    a.min_chi == b.min_chi && a.p_g == b.p_g && a.mult == b.mult
}

fn blow_up_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut blow_ups = 0usize;
    let mut samples = 0usize;
    for g in corpus::standard() {
        let f = form(&g)?;
        let base = invariants(&f)?;
        for &v in f.ids() {
            let once = e(blow_up_generic(&g, v), "blow-up")?;
            let f1 = form(&once.graph)?;
            ensure!(
                same(&base, &invariants(&f1)?),
                "{}: one blow-up at v{v}",
                name(&f)
            );
            let twice = e(blow_up_generic(&once.graph, once.new_vertex), "blow-up")?;
            let f2 = form(&twice.graph)?;
            ensure!(
                same(&base, &invariants(&f2)?),
                "{}: two blow-ups at v{v}",
                name(&f)
            );
            blow_ups += 2;
        }
        let v = f.ids()[rng.gen_range(0..f.len())];
        let b = e(blow_up_generic(&g, v), "blow-up")?;
        let fb = form(&b.graph)?;
        let exc = e(b.exceptional(&fb), "E_new")?.to_rat();
        for _ in 0..100 {
            let mut x = RatCycle::zero(f.len());
            for i in 0..f.len() {
                let k = BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3)));
                x = &x + &f.dual_cycle_at(i).scale(&k);
            }
            let k: i64 = rng.gen_range(-2..=3);
            let pulled = e(b.pull_back(&f, &fb, &x), "pullback")?;
            let y = &pulled + &exc.scale(&q(k));
            let expected = f.chi(&x) + q(k * (k + 1) / 2);
            ensure!(
                fb.chi(&y) == expected,
                "{}: chi(b*l' + kE) at k = {k}",
                name(&f)
            );
            samples += 1;
        }
    }
    Ok(format!(
        "{blow_ups} blown-up graphs, {samples} pullback samples"
    ))
}

fn rational_suite() -> Outcome {
    let mut graphs = catalog::ade(8);
    graphs.extend(corpus::random_rational_trees(5, 10, 3, 8));
    let count = graphs.len();
    for g in graphs {
        let f = form(&g)?;
        let class = e(classify(&f), "classify")?;
        ensure!(
            class.tag == ClassTag::Rational,
            "{} is not rational",
            name(&f)
        );
        let p_g = e(geometric_genus(&f), "p_g")?;
        ensure!(p_g.is_zero(), "{}: p_g = {p_g}", name(&f));
        let z = laufer_zmin(&f);
        let report = e(multiplicity_generic(&f), "mult")?;
        ensure!(
            report.total_base_points.is_zero(),
            "{}: base points",
            name(&f)
        );
        ensure!(
            report.multiplicity == Some(-f.pairing_int(&z, &z)),
            "{}: mult {:?}",
            name(&f),
            report.multiplicity
        );
        let zr = z.to_rat();
        for (i, &v) in f.ids().iter().enumerate() {
            if f.pairing_with_vertex(&zr, i).is_negative() {
                let (d, star) = e(star_condition(&f, &zr, v), "(*_v)")?;
                ensure!(
                    !star && d >= q(2),
                    "{}: (*_v) at v{v} with d = {d}",
                    name(&f)
                );
            }
        }
    }
    Ok(format!("{count} rational graphs"))
}

fn elliptic_suite() -> Outcome {
    let graphs = catalog::gorenstein_elliptic();
    ensure!(graphs.len() >= 5, "only {} elliptic graphs", graphs.len());
    ensure!(
        graphs.iter().any(|g| g.name() == Some("sigma_2_3_17")),
        "the ten-vertex example is missing"
    );
    let mut with_points = 0;
    for g in &graphs {
        let f = form(g)?;
        ensure!(
            f.is_minimal() && f.is_numerically_gorenstein(),
            "{}: hypotheses",
            name(&f)
        );
        ensure!(
            e(classify(&f), "classify")?.tag == ClassTag::Elliptic,
            "{}: not elliptic",
            name(&f)
        );
        let c = e(minimally_elliptic_cycle(&f), "C")?;
        ensure!(f.chi_int(&c).is_zero(), "{}: chi(C) != 0", name(&f));
        let claims = e(elliptic_claims(&f), "claims")?;
        ensure!(claims.z_max_is_canonical, "{}: Z_max != Z_K", name(&f));
        ensure!(
            claims.hold(),
            "{}: base point {} but C^2 = {}",
            name(&f),
            claims.has_base_point,
            claims.c_squared
        );
        if claims.has_base_point {
            with_points += 1;
        }
    }
    Ok(format!(
        "{} graphs, {with_points} with a base point",
        graphs.len()
    ))
}

fn random_dual(rng: &mut ChaCha8Rng, f: &IntersectionForm) -> RatCycle {
    let mut x = Cycle::from_i64s(
        &(0..f.len())
            .map(|_| rng.gen_range(-3..=3))
            .collect::<Vec<_>>(),
    )
    .to_rat();
    for i in 0..f.len() {
        let k = BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2)));
        x = &x + &f.dual_cycle_at(i).scale(&k);
    }
    x
}

fn identity_suite() -> Outcome {
    const SAMPLES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs = corpus::standard();
    for g in &graphs {
        let f = form(g)?;
        let n = f.len();
        let zk = f.canonical_cycle().clone();
        for u in 0..n {
            let du = f.dual_cycle_at(u);
            ensure!(
                du.coeffs().iter().all(|c| c.is_positive()),
                "{}: E*_{u} not positive",
                name(&f)
            );
            for v in 0..n {
                let expected = if u == v { q(-1) } else { q(0) };
                ensure!(
                    f.pairing_with_vertex(&du, v) == expected,
                    "{}: (E*_{u}, E_{v})",
                    name(&f)
                );
            }
        }
        let all = min_over(&f, &Constraint::unbounded())?;
        let effective = min_over(&f, &Constraint::nonnegative(n))?;
        ensure!(
            all == effective,
            "{}: min over L>=0 differs from min over L",
            name(&f)
        );
        let class = e(classify(&f), "classify")?;
        if !class.is_rational() {
            let z_max = e(maximal_ideal_cycle(&f), "Z_max")?.cycle;
            ensure!(
                laufer_zmin(&f).leq(&z_max),
                "{}: Z_min not below Z_max",
                name(&f)
            );
        }
        let h = e(HilbertFunction::new(&f), "hilbert")?;
        ensure!(
            e(h.value(&Cycle::zero(n)), "h(0)")?.is_zero(),
            "{}: h(0) != 0",
            name(&f)
        );
        for _ in 0..SAMPLES {
            let x = random_dual(&mut rng, &f);
            let y = random_dual(&mut rng, &f);
            ensure!(
                f.chi(&x) == f.chi(&(&zk - &x)),
                "{}: chi symmetry at {x:?}",
                name(&f)
            );
            let defect = f.chi(&(&x + &y)) - f.chi(&x) - f.chi(&y);
            ensure!(
                defect == -f.pairing(&x, &y),
                "{}: bilinearity defect",
                name(&f)
            );
            let l0 = Cycle::from_i64s(&(0..n).map(|_| rng.gen_range(0..=2)).collect::<Vec<_>>());
            let v = rng.gen_range(0..n);
            let bigger = &l0 + &Cycle::unit(n, v);
            let (a, b) = (e(h.value(&l0), "h")?, e(h.value(&bigger), "h")?);
            ensure!(a <= b, "{}: h not monotone at {l0:?} + E_{v}", name(&f));
        }
    }
    Ok(format!("{} graphs x {SAMPLES} samples", graphs.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 7] = [
        (
            "1 ten-vertex example",
            sigma_2_3_17,
            Some(Duration::from_secs(5)),
        ),
        (
            "2 two-node -13 example",
            minus13_two_nodes,
            Some(Duration::from_secs(5)),
        ),
        (
            "3 oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        (
            "4 blow-up invariance",
            blow_up_invariance,
            Some(Duration::from_secs(60)),
        ),
        ("5 rational suite", rational_suite, None),
        ("6 elliptic suite", elliptic_suite, None),
        ("7 identity suite", identity_suite, None),
    ];
    let mut failed = 0;
    for (label, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(max)) if elapsed > max => {
                Err(format!("took {elapsed:.2?}, limit {max:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {label}: PASS ({detail}; {elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {label}: FAIL ({why}; {elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
