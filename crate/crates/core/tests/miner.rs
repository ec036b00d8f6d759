mod common;

use std::sync::Arc;

use common::*;
use ordsum::format::{parse_document, parse_lattice, parse_op};
use ordsum::miner::{
    enumerate_lattices, enumerate_lattices_up_to, enumerate_ops, find_counterexample, verify_theorem, write_bundle,
    MinerConfig, Mode, Target,
};
use ordsum::ordsum::{ey_sum, OrdinalSumInput};
use ordsum::{Elem, Interval, Lattice};

/// Brute force over every commutative table (`m^(m(m+1)/2)` of them),
/// counting those that satisfy each mode.
fn naive_counts(iv: &Interval) -> Vec<(Mode, usize)> {
    let l = iv.lattice();
    let mem = iv.members();
    let m = mem.len();
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let mut counts = vec![0usize; Mode::ALL.len()];
    let mut t = vec![0usize; m * m];
    for code in 0..m.pow(cells.len() as u32) {
        let mut c = code;
        for &(i, j) in &cells {
            t[i * m + j] = c % m;
            t[j * m + i] = c % m;
            c /= m;
        }
        let f = |x: Elem, y: Elem| {
            let (i, j) = (iv.local_index(x).unwrap(), iv.local_index(y).unwrap());
            mem[t[i * m + j]]
        };
        let p = props(l, mem, iv.hi(), &f);
        for (k, mode) in Mode::ALL.iter().enumerate() {
            let ok = match mode {
                Mode::TNorm => p.tnorm(),
                Mode::TSubnorm => p.tsubnorm(),
                Mode::CommutativeMonotone => p.increasing,
                Mode::CommutativeAssociativeMonotone => p.increasing && p.associative,
                Mode::CommutativeRange => p.range,
            };
            counts[k] += ok as usize;
        }
    }
    Mode::ALL.into_iter().zip(counts).collect()
}

#[test]
fn op_enumeration_matches_brute_force_on_four_elements() {
    for l in enumerate_lattices(4).unwrap() {
        let iv = Interval::full(&l);
        for (mode, expected) in naive_counts(&iv) {
            assert_eq!(
                enumerate_ops(&iv, mode).unwrap().len(),
                expected,
                "{mode} on {}",
                l.name()
            );
        }
    }
}

#[test]
fn enumerated_ops_satisfy_their_mode() {
    for l in enumerate_lattices(5).unwrap() {
        let iv = Interval::full(&l);
        for t in enumerate_ops(&iv, Mode::TNorm).unwrap() {
            assert!(op_props(&t).tnorm());
        }
        for t in enumerate_ops(&iv, Mode::TSubnorm).unwrap() {
            assert!(op_props(&t).tsubnorm());
        }
    }
}

#[test]
fn theorems_hold_up_to_six_elements() {
    for (target, mode) in [
        (Target::TnormThm5, Mode::TSubnorm),
        (Target::EyThm3, Mode::TNorm),
        (Target::SamingerThm2, Mode::TNorm),
    ] {
        let r = verify_theorem(&MinerConfig::new(target, mode).with_max_size(6)).unwrap();
        assert!(
            r.violations.is_empty(),
            "{target}: {:?}",
            r.violations.first().map(|v| &v.detail)
        );
        assert!(r.instances > 0);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cfg = MinerConfig::new(Target::IncreasingThm4, Mode::CommutativeRange).with_max_size(5);
    let summarize = || {
        let r = verify_theorem(&cfg).unwrap();
        let cx: Vec<String> = r.counterexamples.iter().map(|c| c.summary()).collect();
        (r.summary(), r.filtered, r.skipped_pivots, cx)
    };
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(summarize);
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(summarize);
    assert_eq!(single, many);
}

#[test]
fn counterexamples_replay_and_bundle_round_trips() {
    // Summands that are associative, commutative and monotone but not
    // t-norms break the two-summand construction.
    let cfg = MinerConfig::new(Target::EyThm3, Mode::CommutativeAssociativeMonotone).with_max_size(5);
    let r = find_counterexample(&cfg).unwrap();
    let cx = r.counterexamples.first().expect("a counterexample within budget");
    assert!(cx.replays());

    let dir = tempfile::tempdir().unwrap();
    write_bundle(dir.path(), cx).unwrap();
    let read = |f: &str| std::fs::read_to_string(dir.path().join(f)).unwrap();
    let lattice = Arc::new(parse_lattice(&read("lattice.lat")).unwrap());
    assert_eq!(*lattice, *cx.lattice);
    let t1 = parse_op(&read("t1.op"), &lattice).unwrap().table;
    let t2 = parse_op(&read("t2.op"), &lattice).unwrap().table;
    let sum = parse_op(&read("sum.op"), &lattice).unwrap().table;
    let rebuilt = ey_sum(&OrdinalSumInput::new(Arc::clone(&lattice), cx.pivot, t1, t2).unwrap());
    assert_eq!(rebuilt.local_values(), sum.local_values());
    assert!(read("verdict.txt").starts_with(&cx.summary()));
    assert!(parse_document(&read("sum.op"), Some(&lattice)).is_ok());
}

#[test]
fn condition_rules_out_counterexamples() {
    let mut cfg = MinerConfig::new(Target::TnormThm5, Mode::TSubnorm).with_max_size(6);
    cfg.require_condition = true;
    let r = find_counterexample(&cfg).unwrap();
    assert!(r.counterexamples.is_empty());
    assert!(r.filtered > 0);
}

#[test]
fn claim_range_below_meet_under_increasing_conditions() {
    // Under commutative, range-bounded summands and both increasingness
    // conditions, the sum stays below the meet everywhere.
    for (l, a) in pivots(&enumerate_lattices_up_to(3, 5).unwrap()) {
        for t1 in enumerate_ops(&upper(&l, a), Mode::CommutativeRange).unwrap() {
            for t2 in enumerate_ops(&lower(&l, a), Mode::CommutativeRange).unwrap() {
                let input = OrdinalSumInput::new(Arc::clone(&l), a, t1.clone(), t2).unwrap();
                let cond = ordsum::ordsum::check_increasingness_condition(&input).unwrap().holds()
                    && ordsum::ordsum::check_half_open_increasing(&input).holds();
                if cond {
                    let sum = ey_sum(&input);
                    for x in l.elements() {
                        for y in l.elements() {
                            assert!(l.leq(sum.get(x, y), glb(&l, x, y)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn tnorm_sum_forces_range_on_half_open_squares() {
    // If the sum of commutative monotone summands is a t-norm, both
    // summands are below the meet on the half-open squares.
    for (l, a) in pivots(&enumerate_lattices_up_to(3, 5).unwrap()) {
        let t1s = enumerate_ops(&upper(&l, a), Mode::CommutativeMonotone).unwrap();
        let t2s = enumerate_ops(&lower(&l, a), Mode::CommutativeMonotone).unwrap();
        let up: Vec<Elem> = upper(&l, a)
            .members()
            .iter()
            .copied()
            .filter(|&x| x != l.top())
            .collect();
        let lo: Vec<Elem> = lower(&l, a).members().iter().copied().filter(|&x| x != a).collect();
        for t1 in &t1s {
            for t2 in &t2s {
                let sum = ey_sum(&OrdinalSumInput::new(Arc::clone(&l), a, t1.clone(), t2.clone()).unwrap());
                if !ordsum::check_axioms(&sum).is_tnorm() {
                    continue;
                }
                for (set, t) in [(&up, t1), (&lo, t2)] {
                    for &x in set.iter() {
                        for &y in set.iter() {
                            assert!(l.leq(t.get(x, y), glb(&l, x, y)), "{} pivot {}", l.name(), l.name_of(a));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lattice_names_are_stable() {
    let names: Vec<String> = enumerate_lattices(5)
        .unwrap()
        .iter()
        .map(|l: &Arc<Lattice>| l.name().to_string())
        .collect();
    assert_eq!(names, ["n5_0", "n5_1", "n5_2", "n5_3", "n5_4"]);
}

#[test]
fn weakened_hypotheses_include_constant_lower_summand() {
    // Dropping neutrality and the range bound: a constant lower summand at
    // the pivot is among the counterexamples.
    let mut cfg = MinerConfig::new(Target::EyThm3, Mode::CommutativeAssociativeMonotone).with_max_size(5);
    cfg.max_recorded = usize::MAX;
    let r = verify_theorem(&cfg).unwrap();
    assert!(r.counterexample_count > 0);
    assert_eq!(r.counterexamples.len() as u64, r.counterexample_count);
    let constant = r.counterexamples.iter().find(|cx| {
        let t2 = &cx.t2;
        t2.domain()
            .members()
            .iter()
            .all(|&x| t2.domain().members().iter().all(|&y| t2.get(x, y) == cx.pivot))
    });
    let cx = constant.expect("constant lower summand among the counterexamples");
    assert!(cx.replays());
}

#[test]
fn saminger_sweep_on_l1_finds_counterexample() {
    let l1 = Arc::new(parse_lattice(&read_data("L1.lat")).unwrap());
    let a = l1.elem("a").unwrap();
    let cfg = MinerConfig::new(Target::SamingerThm2, Mode::TNorm);
    let r = ordsum::miner::verify_theorem_on(&cfg, std::slice::from_ref(&l1)).unwrap();
    assert!(r.violations.is_empty());
    let cx = r
        .counterexamples
        .iter()
        .find(|cx| cx.pivot == a)
        .expect("a failing t-norm pair at a");
    assert!(!ordsum::ordsum::check_saminger_conditions(&l1, a).unwrap().holds());
    assert!(cx.replays());
}
