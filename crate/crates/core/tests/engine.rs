use pjl_core::field::FieldElement;
use pjl_core::intersection::{critical_orders, pick_generic_xi, random_monic, split_lambda_multiset};
use pjl_core::rational::{int, rat};
use pjl_core::series::Series;
use pjl_core::tpoly::{eval_pi_root, to_t_domain};
use pjl_core::tree::{derivative_leading_form_check, expand_adaptive, expand_root_tree, ExpandOptions, RootTree};
use pjl_core::{parse_poly, Rational, UniPoly};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn mono(c: i64, e: Rational) -> Series {
    Series::monomial(FieldElement::from_i64(c), &e)
}

#[test]
fn t_domain_examples() {
    let t = to_t_domain(&parse_poly("y^2 - x").unwrap());
    assert_eq!(t.degree(), 2);
    assert!(t.coeffs()[0].same_as(&mono(-1, int(-1))));
    assert!(t.coeffs()[1].is_exact_zero());
    let t = to_t_domain(&parse_poly("x^2*y + 1").unwrap());
    assert!(t.coeffs()[1].same_as(&mono(1, int(-2))));
    assert!(t.coeffs()[0].same_as(&mono(1, int(0))));
    let t = to_t_domain(&parse_poly("5").unwrap());
    assert_eq!(t.degree(), 0);
}

#[test]
fn pi_root_examples() {
    let t = to_t_domain(&parse_poly("y^2 - x").unwrap());
    let lead = eval_pi_root(&t, &Series::zero(), &rat(-1, 2), &int(2)).unwrap();
    assert_eq!(lead[0], (int(-1), up(&[-1, 0, 1])));
    let pre = mono(1, rat(-1, 2));
    let lead = eval_pi_root(&t, &pre, &rat(1, 2), &int(2)).unwrap();
    assert_eq!(lead[0], (int(0), up(&[0, 2])));
    assert_eq!(lead[1], (int(1), up(&[0, 0, 1])));
    let t = to_t_domain(&parse_poly("y - x").unwrap());
    let lead = eval_pi_root(&t, &Series::zero(), &int(-1), &int(2)).unwrap();
    assert_eq!(lead[0], (int(-1), up(&[-1, 1])));
}

#[test]
fn polygon_examples() {
    let e = to_t_domain(&parse_poly("y^2 - x").unwrap()).newton_polygon();
    assert_eq!(e.len(), 1);
    assert_eq!((e[0].slope.clone(), e[0].length), (rat(-1, 2), 2));
    let e = to_t_domain(&parse_poly("(y - x)*(y - 2*x)").unwrap()).newton_polygon();
    assert_eq!(e.len(), 1);
    assert_eq!((e[0].slope.clone(), e[0].length), (int(-1), 2));
    assert!(to_t_domain(&parse_poly("y").unwrap()).newton_polygon().is_empty());
}

#[test]
fn derivative_examples() {
    for (f, lam) in [("y^2 - x", rat(-1, 2)), ("y^3 - x", rat(-2, 3))] {
        let t = expand_root_tree(&parse_poly(f).unwrap(), &int(0), &ExpandOptions::new(int(4))).unwrap();
        let root = t.split_nodes()[0];
        assert!(derivative_leading_form_check(&t, root).unwrap());
        let n = &t.nodes[root];
        assert_eq!(n.lambda.clone().unwrap() - n.delta.clone().unwrap(), lam);
    }
}

/// Every leaf prefix makes `f_xi` vanish to order `upto`, and leaves
/// account for all `deg_y f` roots.
fn leaves_are_roots(tree: &RootTree, upto: &Rational) -> bool {
    let f = tree.t_poly();
    tree.leaves().iter().all(|&l| {
        let v = f.eval(&tree.nodes[l].prefix, Some(upto));
        v.valuation().is_none_or(|o| &o >= upto)
    }) && f.degree() == tree.total_multiplicity()
}

fn corpus(seed: u64, count: usize) -> Vec<(pjl_core::BiPoly, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let dy = 1 + (k as u32 % 4);
            let f = random_monic(&mut rng, dy, 3, 4);
            let xi = pick_generic_xi(&f, k as u64).unwrap().xi;
            (f, xi)
        })
        .collect()
}

#[test]
fn tree_invariants_on_corpus() {
    for (f, xi) in corpus(5, 24) {
        let t = expand_adaptive(&f, &xi, &ExpandOptions::new(int(2))).unwrap();
        assert_eq!(t.total_multiplicity(), f.deg_y() as usize);
        assert!(t.is_separated());
        for i in 0..t.nodes.len() {
            assert!(derivative_leading_form_check(&t, i).unwrap(), "{f} node {i}");
            let n = &t.nodes[i];
            if let (Some(p), Some(d)) = (n.parent, &n.delta) {
                assert!(t.nodes[p].delta.as_ref().unwrap() < d);
            }
            if n.is_split() {
                assert!(n.e >= 2);
            }
        }
        let lo = t.nodes.iter().filter_map(|n| n.lambda.clone()).min().unwrap_or(int(0));
        assert!(leaves_are_roots(&t, &lo));
    }
}

#[test]
fn root_partition_on_corpus() {
    for (f, xi) in corpus(9, 16) {
        if f.deg_y() < 2 {
            continue;
        }
        let o = ExpandOptions::new(int(2));
        let t = expand_adaptive(&f, &xi, &o).unwrap();
        assert_eq!(critical_orders(&f, &xi, &o).unwrap(), split_lambda_multiset(&t), "{f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leaf_multiplicities_sum_to_degree(seed in any::<u64>(), dy in 1u32..=4, dx in 0u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_monic(&mut rng, dy, dx, 3);
        let xi = pick_generic_xi(&f, seed).unwrap().xi;
        let t = expand_adaptive(&f, &xi, &ExpandOptions::new(int(2))).unwrap();
        prop_assert_eq!(t.total_multiplicity(), dy as usize);
    }
}
