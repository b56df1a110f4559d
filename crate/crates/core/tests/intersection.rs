use pjl_core::classify::{classify_roots, minor_disc_check, RootKind};
use pjl_core::intersection::*;
use pjl_core::rational::{int, Rational};
use pjl_core::tree::{expand_adaptive, ExpandOptions};
use pjl_core::{parse_poly, BiPoly, Error};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn p(s: &str) -> BiPoly {
    parse_poly(s).unwrap()
}

fn opts() -> ExpandOptions {
    ExpandOptions::new(int(2))
}

#[test]
fn resultant_route_examples() {
    assert_eq!(intersection_resultant(&p("y - x"), &p("y")).unwrap(), 1);
    assert_eq!(intersection_resultant(&p("x + y^2"), &p("y")).unwrap(), 1);
    assert_eq!(intersection_resultant(&p("y^2 - x"), &p("y - 1")).unwrap(), 1);
    assert!(matches!(intersection_resultant(&p("y - x"), &p("2*y - 2*x")), Err(Error::ZeroResultant)));
}

#[test]
fn root_order_route_examples() {
    assert_eq!(intersection_by_root_orders(&p("y - x"), &p("y"), &opts()).unwrap(), int(1));
    assert_eq!(intersection_by_root_orders(&p("x + y^2"), &p("y"), &opts()).unwrap(), int(1));
    assert_eq!(intersection_by_root_orders(&p("y^2 - x"), &p("y^2 - 4*x"), &opts()).unwrap(), int(2));
}

#[test]
fn split_formula_examples() {
    assert_eq!(i_fxfy_split_formula(&p("y^2 - x"), &int(3), &opts()).unwrap(), int(1));
    assert_eq!(i_fxfy_split_formula(&p("y"), &int(3), &opts()).unwrap(), int(0));
    let f = p("y^3 - 3*x*y + 1");
    let xi = pick_generic_xi(&f, 1).unwrap().xi;
    let want = intersection_resultant(&f.minus_const(&xi), &f.diff_y()).unwrap();
    assert_eq!(i_fxfy_split_formula(&f, &xi, &opts()).unwrap(), int(want as i64));
}

#[test]
fn generic_shift_examples() {
    assert!(check_generic(&p("y^2"), &int(0)).unwrap().is_none());
    assert!(check_generic(&p("y^2"), &int(5)).unwrap().is_some());
    for xi in [-3, 0, 7] {
        assert!(check_generic(&p("y^2 - x"), &int(xi)).unwrap().is_some());
    }
    let f = p("y^3 - 3*y");
    assert!(check_generic(&f, &int(2)).unwrap().is_none());
    assert!(check_generic(&f, &int(-2)).unwrap().is_none());
    assert!(check_generic(&f, &int(1)).unwrap().is_some());
    let s = pick_generic_xi(&f, 4).unwrap();
    assert_eq!(s, pick_generic_xi(&f, 4).unwrap());
    assert!(s.discriminant_nonzero && s.distinct_roots_at_sample == 3);
}

#[test]
fn chain_rule_examples() {
    let target = int(10);
    let f = p("y");
    let g = p("x + y^2");
    let t = expand_adaptive(&f, &int(2), &opts()).unwrap();
    let r = chain_rule_residual(&f, &g, &t.nodes[t.leaves()[0]].prefix, &target);
    assert!(r.vanishes_below(&target));

    let f = p("x + y^2");
    let g = p("y");
    let t = expand_adaptive(&f, &int(2), &ExpandOptions::new(int(12))).unwrap();
    for l in t.leaves() {
        let r = chain_rule_residual(&f, &g, &t.nodes[l].prefix, &target);
        assert!(r.vanishes_below(&target));
    }
    let r = chain_rule_residual(&f, &f, &t.nodes[t.leaves()[0]].prefix, &target);
    assert!(r.vanishes_below(&target));
}

#[test]
fn classification_examples() {
    let pair = PolyPair::new(&p("y"), &p("x + y^2")).unwrap();
    assert!(pair.is_jacobian_pair());
    let a = analyze_pair(&pair, &int(3), &opts()).unwrap();
    assert_eq!(a.class.roots.len(), 1);
    assert_eq!(a.class.roots[0].kind, RootKind::Major);
    assert_eq!(a.class.roots[0].ord_g, int(-1));
    assert_eq!(i_minor_formulas(&pair, &a).unwrap(), (int(0), int(1)));

    let pair = PolyPair::new(&p("x + y^2"), &p("y")).unwrap();
    let a = analyze_pair(&pair, &int(3), &opts()).unwrap();
    assert!(a.class.roots.iter().all(|r| r.kind == RootKind::Major && r.ord_g == Rational::new((-1).into(), 2.into())));
    let mj = i_major_formula(&pair, &a).unwrap();
    assert_eq!(mj.delta_form, int(1));
    assert!(mj.agree() && mj.all_final);
    let eq = equivalence_suite(&pair, &int(3), &a).unwrap();
    assert!(eq.all_true() && eq.consistent());
    let tree = &a.tree;
    assert!(!minor_disc_check(&a.class, tree, tree.leaves()[0]));

    let h = p("x + y^2");
    let g = p("y").add(&h.pow(3));
    let pair = PolyPair::new(&h, &g).unwrap();
    assert!(pair.is_jacobian_pair());
    let a = analyze_pair(&pair, &int(5), &opts()).unwrap();
    assert_eq!(i_minor_formulas(&pair, &a).unwrap(), (int(1), int(1)));
}

#[test]
fn minor_roots_detected() {
    // roots of (y - x)(y - x - 1) - xi stay a bounded distance from y = x
    let f = p("(y - x)*(y - x - 1)");
    let g = p("y - x");
    let xi = pick_generic_xi(&f, 2).unwrap().xi;
    let t = expand_adaptive(&f, &xi, &opts()).unwrap();
    let c = classify_roots(&g, &t).unwrap();
    assert!(c.roots.iter().all(|r| r.kind == RootKind::Minor));
    assert!(minor_disc_check(&c, &t, 0));
    let c = classify_roots(&p("y"), &t).unwrap();
    assert!(c.roots.iter().all(|r| r.kind == RootKind::Major));
    assert!(!minor_disc_check(&c, &t, 0));
}

#[test]
fn non_jacobian_rejected() {
    let pair = PolyPair::new(&p("y^2 - x"), &p("y^2 - 4*x")).unwrap();
    assert!(!pair.is_jacobian_pair());
    let a = analyze_pair(&pair, &int(1), &opts());
    if let Ok(a) = a {
        assert!(matches!(i_major_formula(&pair, &a), Err(Error::NotJacobianPair)));
    }
    assert!(PolyPair::new(&p("x*y^2 + 1"), &p("y")).is_err());
}

#[test]
fn bound_examples() {
    assert!(bound_holds(&int(1), 2, 3));
    assert!(bound_holds(&int(1), 4, 2));
    assert!(bound_holds(&int(16), 66, 99));
    assert!(!bound_holds(&int(40), 66, 99));
}

#[test]
fn routes_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for k in 0..30 {
        let f = random_monic(&mut rng, 1 + k % 3, 2, 3);
        let g = random_monic(&mut rng, 1 + (k / 3) % 3, 2, 3);
        match intersection_resultant(&f, &g) {
            Ok(r) => {
                assert_eq!(intersection_by_root_orders(&f, &g, &opts()).unwrap(), int(r as i64), "{f} / {g}");
                checked += 1;
            }
            Err(Error::ZeroResultant) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked >= 20);
}

#[test]
fn tame_pairs_satisfy_the_theory() {
    for (k, (f, g)) in tame_pairs(3, 8, 8, 8).into_iter().enumerate() {
        let shift = pick_generic_xi(&f, k as u64).unwrap();
        let xi = shift.xi.clone();
        let r = intersection_report(&f, &g, shift, &ExpandOptions::new(int(1))).unwrap();
        assert!(r.is_jacobian_pair);
        assert!(r.agree(), "{f} / {g}: {r:?}");
        assert_eq!(r.fxi_g.resultant, Some(int(1)));
        let pair = &r.pair;
        let a = analyze_pair(pair, &xi, &ExpandOptions::new(int(1))).unwrap();
        assert!(equivalence_suite(pair, &xi, &a).unwrap().all_true());
        assert!(a.major_deltas_below_one());
        assert!(!a.has_vanishing_roots());
        let (fy, fg) = i_minor_formulas(pair, &a).unwrap();
        assert_eq!((fy, fg), (int(pair.m as i64 - 1), int(1)));
        let (fy, gy) = (pair.f.diff_y(), pair.g.diff_y());
        if fy.deg_y() + gy.deg_y() > 0 {
            assert_eq!(intersection_resultant(&fy, &gy).unwrap(), 0);
        }
    }
}
