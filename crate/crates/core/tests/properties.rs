use std::collections::BTreeSet;

use proptest::prelude::*;

use o1loop::exactnum::CycNum;
use o1loop::exec::Exec;
use o1loop::fpl::{enumerate_fpl, enumerate_htsfpl, extract_link_pattern};
use o1loop::linkpat::Kind;
use o1loop::pipeline::{run_check_entry, Cache, CheckSpec, Identity, Status};
use o1loop::transfer::{eigenvector_any, values, verify_cyclic, verify_exchange, verify_sum_rule, Param};

fn rational() -> impl Strategy<Value = CycNum> {
    (1i64..=30, 1i64..=6).prop_map(|(a, b)| CycNum::rational(a, b))
}

fn point(l: usize) -> impl Strategy<Value = Vec<CycNum>> {
    proptest::collection::vec(rational(), l)
}

fn kind_and_point() -> impl Strategy<Value = (Kind, Vec<CycNum>)> {
    prop_oneof![
        point(3).prop_map(|z| (Kind::Odd, z)),
        point(5).prop_map(|z| (Kind::Odd, z)),
        point(2).prop_map(|z| (Kind::Punctured, z)),
        point(4).prop_map(|z| (Kind::Punctured, z)),
        point(4).prop_map(|z| (Kind::Even, z)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ground_state_independent_of_t((kind, z) in kind_and_point(), t1 in rational(), t2 in rational()) {
        let zs = values(&z);
        let a = eigenvector_any(kind, &zs, Some(&Param::Val(t1)), Exec::Parallel);
        let b = eigenvector_any(kind, &zs, Some(&Param::Val(t2)), Exec::Parallel);
        prop_assume!(a.is_ok() && b.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        prop_assume!(a.normalization == b.normalization);
        prop_assert_eq!(a.components, b.components);
    }

    #[test]
    fn sum_rule_at_random_points((kind, z) in kind_and_point()) {
        let r = verify_sum_rule(kind, &z, Exec::Parallel);
        prop_assume!(r.is_ok());
        prop_assert!(r.unwrap().ok);
    }

    #[test]
    fn exchange_and_cyclic((kind, z) in kind_and_point()) {
        let rec = eigenvector_any(kind, &values(&z), None, Exec::Parallel);
        prop_assume!(rec.is_ok());
        let rec = rec.unwrap();
        for i in 1..=z.len() {
            let r = verify_exchange(&rec, i, Exec::Parallel);
            prop_assume!(r.is_ok());
            prop_assert!(r.unwrap(), "exchange at {}", i);
        }
        let c = verify_cyclic(&rec, Exec::Parallel);
        prop_assume!(c.is_ok());
        prop_assert!(c.unwrap());
    }

    #[test]
    fn schedule_independent((kind, z) in kind_and_point()) {
        let a = eigenvector_any(kind, &values(&z), None, Exec::Sequential);
        let b = eigenvector_any(kind, &values(&z), None, Exec::Parallel);
        prop_assume!(a.is_ok());
        prop_assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn cache_round_trip((kind, z) in kind_and_point()) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let rec = eigenvector_any(kind, &values(&z), None, Exec::Parallel);
        prop_assume!(rec.is_ok());
        let rec = rec.unwrap();
        cache.put(&rec).unwrap();
        let back = cache.get(kind, &rec.z, &rec.t).unwrap();
        prop_assert_eq!(back, Some(rec));
    }

    #[test]
    fn reports_replay(seed in 0u64..1000) {
        let spec = CheckSpec::new(Identity::SumRule, Some(Kind::Odd), 3, 2, seed);
        let a = run_check_entry(&spec, None, Exec::Parallel);
        let b = run_check_entry(&spec, None, Exec::Sequential);
        prop_assert_eq!(a.status, Status::ProvenChecked);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn fpl_sets_closed_under_half_turn() {
    for l in 1..=5 {
        let all = enumerate_fpl(l, Exec::Parallel).unwrap();
        let set: BTreeSet<u128> = all.iter().map(|c| c.edges).collect();
        for c in &all {
            assert!(set.contains(&c.rotated().edges));
        }
        let sym = enumerate_htsfpl(l, Exec::Parallel).unwrap();
        for c in &sym {
            assert!(c.is_half_turn_symmetric());
            assert!(set.contains(&c.edges));
            assert!(extract_link_pattern(c, true).is_ok());
        }
        assert_eq!(sym.len(), all.iter().filter(|c| c.is_half_turn_symmetric()).count());
    }
}
