mod common;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use common::*;
use tsched::ptas::parse_epsilon;
use tsched::{
    check_feasible, dp_solve, idle_ladder, ptas_solve, round_instance, solve_exact, Error,
    Instance, Permutation, PtasConfig, ScheduleTrace, TimeValue,
};

fn unit_instance(b: usize, max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec(0u64..=20, b..=max_n).prop_map(move |ks| {
        Instance::unit(b, ks.into_iter().map(|k| TimeValue::from_ratio(k, 20)).collect()).unwrap()
    })
}

fn eps() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["1/2", "1/3", "1/4", "9/10"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_is_monotone_and_tight(inst in unit_instance(2, 8), e in eps()) {
        let cfg = parse_epsilon(e).unwrap();
        let epsq = q(e);
        let r = round_instance(&inst, &cfg).unwrap();
        let rounded = r.rounded_sizes();
        for (s, v) in inst.jobs().iter().zip(&rounded) {
            prop_assert!(s <= v);
            prop_assert!(v.as_rational() <= &((BigRational::one() + &epsq) * s.as_rational()).max(epsq.clone()));
            prop_assert_eq!(v.as_rational(), &round_up(s.as_rational(), &epsq));
        }
        for i in 0..inst.n() {
            for j in 0..inst.n() {
                if inst.jobs()[i] <= inst.jobs()[j] {
                    prop_assert!(rounded[i] <= rounded[j]);
                }
            }
        }
        prop_assert_eq!(r.counts.iter().sum::<usize>(), inst.n());
    }

    #[test]
    fn dp_schedule_is_a_feasible_regular_schedule(inst in unit_instance(2, 7), e in eps()) {
        let cfg = parse_epsilon(e).unwrap();
        let r = round_instance(&inst, &cfg).unwrap();
        let sol = dp_solve(&r, &cfg).unwrap();
        let ladder = idle_ladder(&cfg);
        prop_assert!(sol.idles.iter().all(|g| ladder.contains(g)));
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); r.classes.len()];
        for (job, &c) in r.origin.iter().enumerate() {
            members[c].push(job);
        }
        let order: Vec<usize> = sol.classes_in_order.iter().map(|&c| members[c].remove(0)).collect();
        let rounded_inst = Instance::unit(inst.b(), r.rounded_sizes()).unwrap();
        let tr = ScheduleTrace::from_gaps(&rounded_inst, Permutation::new(order, inst.n()).unwrap(), sol.idles.clone()).unwrap();
        prop_assert!(check_feasible(&rounded_inst, &tr).unwrap());
        prop_assert_eq!(tr.makespan(), &sol.f_star);
        prop_assert!(sol.stats.infeasible <= sol.stats.states);
        prop_assert!((sol.stats.states as u128) <= sol.stats.state_ceiling);
    }

    #[test]
    fn dp_matches_brute_force(inst in unit_instance(2, 5), e in prop::sample::select(vec!["1/2", "1/3"])) {
        let cfg = parse_epsilon(e).unwrap();
        let r = round_instance(&inst, &cfg).unwrap();
        let sizes: Vec<BigRational> = r.rounded_sizes().into_iter().map(TimeValue::into_rational).collect();
        let want = brute_force_regular(&sizes, 2, &ladder(&q(e)));
        prop_assert_eq!(dp_solve(&r, &cfg).unwrap().f_star.into_rational(), want);
    }

    #[test]
    fn dp_matches_brute_force_b3(inst in unit_instance(3, 5)) {
        let cfg = parse_epsilon("1/2").unwrap();
        let r = round_instance(&inst, &cfg).unwrap();
        let sizes: Vec<BigRational> = r.rounded_sizes().into_iter().map(TimeValue::into_rational).collect();
        let want = brute_force_regular(&sizes, 3, &ladder(&q("1/2")));
        prop_assert_eq!(dp_solve(&r, &cfg).unwrap().f_star.into_rational(), want);
    }

    #[test]
    fn ptas_sandwich(inst in unit_instance(2, 6), e in eps()) {
        let cfg = parse_epsilon(e).unwrap();
        let res = ptas_solve(&inst, &cfg).unwrap();
        let opt = solve_exact(&inst, 12).unwrap().optimum;
        prop_assert!(check_feasible(&inst, &res.trace).unwrap());
        prop_assert!(opt <= *res.trace.makespan());
        prop_assert!(res.trace.makespan() <= &res.f_star);
    }
}

#[test]
fn config_rejects_bad_epsilon() {
    for bad in ["0", "1", "3/2", "-1/2", "x"] {
        assert!(parse_epsilon(bad).is_err(), "{bad}");
    }
    assert!(PtasConfig::new(q("1/5")).is_ok());
}

#[test]
fn ladder_reaches_one() {
    for e in ["1/2", "1/3", "1/4", "1/7", "9/10", "1/40"] {
        let cfg = parse_epsilon(e).unwrap();
        let lad = idle_ladder(&cfg);
        assert_eq!(lad.iter().map(|v| v.as_rational().clone()).collect::<Vec<_>>(), ladder(&q(e)), "{e}");
        assert!(lad.last().unwrap() >= &TimeValue::one());
    }
}

#[test]
fn refusals() {
    let cfg = parse_epsilon("1/2").unwrap();
    let w2 = Instance::new(2, t("2"), ts(&["1", "1"])).unwrap();
    assert!(matches!(round_instance(&w2, &cfg), Err(Error::WindowNotUnit(_))));
    let short = Instance::unit(3, ts(&["1", "1"])).unwrap();
    let r = round_instance(&short, &cfg).unwrap();
    assert!(matches!(dp_solve(&r, &cfg), Err(Error::TooFewJobs { n: 2, b: 3 })));
}

#[test]
fn oversized_jobs_keep_climbing() {
    let cfg = parse_epsilon("1/2").unwrap();
    let inst = Instance::unit(2, ts(&["2", "1/10"])).unwrap();
    let r = round_instance(&inst, &cfg).unwrap();
    // 1/2 · (3/2)^4 = 81/32 is the first ladder value at least 2.
    assert_eq!(r.rounded_sizes(), ts(&["81/32", "1/2"]));
    let sizes: Vec<BigRational> = r.rounded_sizes().into_iter().map(TimeValue::into_rational).collect();
    assert_eq!(
        dp_solve(&r, &cfg).unwrap().f_star.into_rational(),
        brute_force_regular(&sizes, 2, &ladder(&q("1/2")))
    );
}
