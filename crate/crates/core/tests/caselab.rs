use pjl_core::caselab::*;
use pjl_core::rational::{int, rat};
use proptest::prelude::*;

fn case(key: &str) -> CaseData {
    builtin_case(key).unwrap()
}

#[test]
fn builtin_data() {
    let c = case("75x50");
    assert_eq!((c.delta2.clone(), c.delta1.clone(), c.v3, c.v2), (rat(1, 5), rat(2, 3), 4, 2));
    assert_eq!((c.m2, c.m3), (55, 73));
    let c = case("99,66");
    assert_eq!((c.delta2.clone(), c.delta1.clone(), c.v3, c.v2), (rat(1, 3), rat(4, 9), 8, 8));
    assert_eq!((c.m2, c.m3, c.distinct_cap, c.principal), (77, 97, 3, 18));
    assert!(c.d3.is_none());
    assert!(builtin_case("64x48").is_none());
    assert!(builtin_case("84x56").is_none());
    for c in builtin_cases() {
        c.validate().unwrap();
    }
}

#[test]
fn invalid_case_rejected() {
    let mut c = case("99x66");
    c.delta1 = rat(1, 4);
    assert!(analyze(&c, false).is_err());
    let mut c = case("99x66");
    c.m = 120;
    assert!(c.validate().is_err());
}

#[test]
fn case_75_50() {
    let v = analyze(&case("75x50"), false).unwrap();
    let got: Vec<_> = v.patterns.iter().map(|p| (p.pattern.blocks.clone(), p.minor.clone(), p.major.clone())).collect();
    assert_eq!(got, vec![(vec![4, 4], int(4), int(8)), (vec![4, 2, 2], int(6), int(4))]);
    assert!(v.patterns.iter().all(|p| p.contradiction));
    assert!(v.ruled_out());
    // subcase (i): two pi^5 blocks with f-mult 4, g-mult 6
    let b = &v.patterns[0].pattern.branches;
    assert!(b.iter().filter(|b| !b.principal).all(|b| b.conjugates == 5 && b.f_mult == 4 && b.g_mult == int(6)));
    // subcase (ii): ten minor finals at 6/5
    let minors: i64 = v.patterns[1]
        .pattern
        .branches
        .iter()
        .filter(|b| !b.principal && b.kind == BranchKind::Minor && b.delta == rat(6, 5))
        .map(|b| b.conjugates)
        .sum();
    assert_eq!(minors, 10);
}

#[test]
fn case_99_66() {
    let c = case("99x66");
    let v = analyze(&c, false).unwrap();
    assert!(v.patterns.iter().all(|p| p.major == int(16)));
    assert!(v.patterns.iter().all(|p| p.pattern.blocks == vec![16]));
    let major = &v.patterns[0].pattern.branches[0];
    assert_eq!((major.conjugates, major.f_mult, major.g_mult.clone()), (3, 16, int(24)));
    let values: Vec<_> = v.patterns.iter().map(|p| p.minor.clone()).collect();
    assert!(values.contains(&rat(8, 3)));
    assert!(values.contains(&int(6)));
    assert_eq!(v.survivors.len(), 1);
    let s = &v.patterns[v.survivors[0]];
    assert_eq!(s.pattern.principal.split_at, Some(int(1)));
    assert_eq!(s.pattern.principal.finals, vec![(6, int(6)); 3]);
    assert_eq!(s.minor, int(16));

    let v = analyze(&c, true).unwrap();
    assert_eq!(v.arithmetic_survivors.len(), 1);
    assert!(v.survivors.is_empty());
    assert!(v.ruled_out());
}

#[test]
fn enumeration_is_deterministic_and_balanced() {
    for c in builtin_cases() {
        let a = enumerate_patterns(&c).unwrap();
        assert_eq!(a, enumerate_patterns(&c).unwrap());
        let ratio = int(c.n) / int(c.m);
        for p in &a {
            assert_eq!(p.f_total(), c.m);
            for b in &p.branches {
                assert_eq!(b.g_mult, int(b.f_mult) * &ratio);
            }
            let k: i64 = p.principal.finals.iter().map(|f| f.0).sum();
            assert_eq!(k, c.principal);
        }
    }
}

proptest! {
    #[test]
    fn routes_are_order_independent(idx in 0usize..29, rot in 0usize..8) {
        let pats: Vec<_> = builtin_cases().iter().flat_map(|c| {
            enumerate_patterns(c).unwrap().into_iter().map(move |p| (c.n, c.m, p))
        }).collect();
        let (n, m, p) = &pats[idx % pats.len()];
        let mut q = p.clone();
        let len = q.branches.len();
        q.branches.rotate_left(rot % len);
        q.branches.reverse();
        prop_assert_eq!(eval_minor_route(p), eval_minor_route(&q));
        prop_assert_eq!(eval_major_route(p, *n, *m), eval_major_route(&q, *n, *m));
    }
}

#[test]
fn survivors_are_exactly_the_equal_value_set() {
    for c in builtin_cases() {
        let v = analyze(&c, false).unwrap();
        for (i, p) in v.patterns.iter().enumerate() {
            assert_eq!(p.contradiction, p.minor != p.major);
            assert_eq!(v.survivors.contains(&i), p.minor == p.major);
        }
    }
}
