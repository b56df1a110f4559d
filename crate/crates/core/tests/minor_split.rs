use pjl_core::field::FieldElement;
use pjl_core::ode::{solve_special_ode, wronskian_d};
use pjl_core::rational::rat;
use pjl_core::semigroup::*;
use pjl_core::{Error, UniPoly};
use proptest::prelude::*;

fn brute_member(target: i64, gens: &[i64]) -> bool {
    // breadth-first over reachable sums
    if target < 0 {
        return false;
    }
    let mut seen = vec![false; target as usize + 1];
    let mut stack = vec![0i64];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for &g in gens {
            let t = s + g;
            if g > 0 && t <= target && !seen[t as usize] {
                seen[t as usize] = true;
                stack.push(t);
            }
        }
    }
    seen[target as usize]
}

#[test]
fn dqm_examples() {
    let s = derive_dqm(&[4, 6, 3]).unwrap();
    assert_eq!(s.d_seq(), &[4, 2, 1]);
    assert_eq!(s.q_seq(), &[9]);
    assert_eq!(s.m_seq(), &[-6, 3]);

    let s = derive_dqm(&[2, 1]).unwrap();
    assert_eq!(s.d_seq(), &[2, 1]);
    assert_eq!(s.m_seq(), &[-1]);

    let s = derive_dqm(&[6, 4, 13]).unwrap();
    assert_eq!(s.m(1), -4);
    assert_eq!(s.q(2), -1);
    assert_eq!(s.m(2), -5);
}

#[test]
fn dqm_rejects_bad_input() {
    assert!(matches!(derive_dqm(&[4, 0, 3]), Err(Error::InvalidSequence(_))));
    assert!(matches!(derive_dqm(&[4, 6]), Err(Error::InvalidSequence(_))));
    assert!(matches!(derive_dqm(&[]), Err(Error::InvalidSequence(_))));
}

#[test]
fn axiom_flags() {
    // q_2 = -1 fails the strict flag only
    assert!(DeltaSequence::new(&[6, 4, 13], Axioms::USER).is_ok());
    assert!(DeltaSequence::new(&[6, 4, 13], Axioms::CORPUS).is_err());
    assert!(DeltaSequence::new(&[4, 6, 3], Axioms::CORPUS).is_ok());
    // d does not drop: gcd(4, 8) = 4
    assert!(DeltaSequence::new(&[4, 8, 1], Axioms::USER).is_err());
}

#[test]
fn membership_examples() {
    assert!(semigroup_member(6, &[6]));
    assert!(!semigroup_member(2, &[4, 6]));
    assert!(semigroup_member(10, &[4, 6]));
    assert!(!semigroup_member(-3, &[1]));
    assert!(semigroup_member(0, &[]));
}

#[test]
fn semigroup_lemma_examples() {
    let s = derive_dqm(&[4, 6, 3]).unwrap();
    assert_eq!(s.semigroup_lemma_check(2).unwrap(), (true, true));
    let s = derive_dqm(&[6, 4, 13]).unwrap();
    assert_eq!(s.semigroup_lemma_check(2).unwrap(), (true, true));
    let s = derive_dqm(&[2, 1]).unwrap();
    assert!(matches!(s.semigroup_lemma_check(2), Err(Error::IndexOutOfRange { k: 2, h: 1 })));
}

#[test]
fn semigroup_lemma_on_corpus() {
    let corpus = random_delta_sequences(7, 40, 4, 200);
    assert!(corpus.len() >= 20);
    for s in &corpus {
        for k in 2..=s.h() {
            let t = s.delta()[k] + s.m(k);
            let want = (brute_member(t, &s.delta()[1..k]), !brute_member(t - s.delta()[0], &s.delta()[..k]));
            assert_eq!(s.semigroup_lemma_check(k).unwrap(), want);
            assert_eq!(want, (true, true), "{:?} k={k}", s.delta());
        }
    }
}

#[test]
fn obstruction_matches_lemma() {
    let mu = MuSequence::new(vec![4, 6, 3], None, None).unwrap();
    assert_eq!(mu.m_s().unwrap(), 3);
    assert!(obstruction_check(&mu).unwrap());
    // scaled copies behave the same
    let mu = MuSequence::new(vec![8, 12, 6], Some(3), Some(1)).unwrap();
    assert!(obstruction_check(&mu).unwrap());
    assert!(MuSequence::new(vec![8, 12, 6], Some(1), Some(2)).is_err());
    for s in random_delta_sequences(3, 20, 4, 200) {
        let mu = MuSequence::new(s.delta().to_vec(), None, None).unwrap();
        assert_eq!(obstruction_check(&mu).unwrap(), s.semigroup_lemma_check(s.h()).unwrap().1);
    }
}

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

#[test]
fn wronskian_examples() {
    let p = poly(&[1, 2, 3]);
    assert!(wronskian_d(1, 1, &p, &p).is_zero());
    assert_eq!(wronskian_d(1, 1, &poly(&[0, 1]), &poly(&[0, 0, 1])), poly(&[0, 0, 1]));
    assert_eq!(wronskian_d(2, 2, &poly(&[0, 0, 1]), &poly(&[0, 0, 0, 1])), poly(&[0, 0, 0, 0, 2]));
}

#[test]
fn ode_examples() {
    let one = FieldElement::one();
    let s = solve_special_ode(&poly(&[0, 1]), 2, &one, 1).unwrap();
    assert_eq!(s.q, poly(&[0, 0, 1]));
    assert!(s.a.is_zero());

    let p = poly(&[-1, 0, 1]);
    let c = FieldElement::from_i64(2);
    let s = solve_special_ode(&p, 2, &c, 2).unwrap();
    assert_eq!(wronskian_d(2, 2, &p, &s.q), p.pow(2).scale(&c));
    let lin = UniPoly::new(vec![s.a.neg_ref(), one.clone()]);
    assert_eq!(s.q, lin.mul_ref(&p));

    let c = FieldElement::from_i64(3);
    let s = solve_special_ode(&poly(&[0, 1]), 3, &c, 1).unwrap();
    let lin = UniPoly::new(vec![s.a.neg_ref(), one]);
    assert_eq!(s.q, lin.mul_ref(&poly(&[0, 0, 1])).scale(&c));
}

#[test]
fn ode_rejects_bad_input() {
    let one = FieldElement::one();
    assert!(solve_special_ode(&poly(&[0, 1]), 1, &one, 1).is_err());
    assert!(solve_special_ode(&poly(&[0, 1]), 2, &FieldElement::zero(), 1).is_err());
    assert!(solve_special_ode(&poly(&[0, 0, 1]), 2, &one, 1).is_err());
}

fn poly_strategy(deg: usize) -> impl Strategy<Value = UniPoly> {
    (prop::collection::vec(-5i64..=5, deg), 1i64..=4).prop_map(move |(mut c, lc)| {
        c.push(lc);
        UniPoly::from_ints(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_brute_force(target in -5i64..=200, gens in prop::collection::vec(1i64..=40, 0..4)) {
        prop_assert_eq!(semigroup_member(target, &gens), brute_member(target, &gens));
    }

    #[test]
    fn wronskian_is_antisymmetric_on_diagonal(a in -4i64..=4, p in (0usize..=4).prop_flat_map(poly_strategy)) {
        prop_assert!(wronskian_d(a, a, &p, &p).is_zero());
    }

    #[test]
    fn wronskian_is_bilinear(
        a in -3i64..=3, b in -3i64..=3, k in -3i64..=3,
        p in poly_strategy(2), q1 in poly_strategy(3), q2 in poly_strategy(1),
    ) {
        let kk = FieldElement::from_i64(k);
        let lhs = wronskian_d(a, b, &p, &q1.add_ref(&q2.scale(&kk)));
        let rhs = wronskian_d(a, b, &p, &q1).add_ref(&wronskian_d(a, b, &p, &q2).scale(&kk));
        prop_assert_eq!(lhs, rhs);
        let lhs = wronskian_d(a, b, &q1.add_ref(&q2.scale(&kk)), &p);
        let rhs = wronskian_d(a, b, &q1, &p).add_ref(&wronskian_d(a, b, &q2, &p).scale(&kk));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ode_solution_plugs_back(m in 1usize..=4, l in 2usize..=4, cn in 1i64..=6, cd in 1i64..=3, seed in any::<u64>()) {
        let coeffs: Vec<i64> = (0..m).map(|i| ((seed >> (8 * i)) % 11) as i64 - 5).collect();
        let mut c = coeffs.clone();
        c.push(1 + (seed % 3) as i64);
        let p = UniPoly::from_ints(&c);
        let cc = FieldElement::from(rat(cn, cd));
        let s = solve_special_ode(&p, l, &cc, m).unwrap();
        let mi = m as i64;
        prop_assert_eq!(wronskian_d(mi, mi * (l as i64 - 1), &p, &s.q), p.pow(l).scale(&cc));
        let lin = UniPoly::new(vec![s.a.neg_ref(), FieldElement::one()]);
        let cm = cc.div_ref(&FieldElement::from_i64(mi));
        prop_assert_eq!(s.q, lin.mul_ref(&p.pow(l - 1)).scale(&cm));
    }
}
