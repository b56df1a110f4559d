use pjl_core::rational::{int, rat};
use pjl_core::tree::{derivative_leading_form_check, expand_root_tree, ExpandOptions, NodeStatus};
use pjl_core::{parse_poly, Error, UniPoly};

fn opts(c: i64) -> ExpandOptions {
    ExpandOptions::new(int(c))
}

#[test]
fn sqrt_x_splits_once() {
    let f = parse_poly("y^2 - x").unwrap();
    let t = expand_root_tree(&f, &int(0), &opts(4)).unwrap();
    for i in 0..t.nodes.len() {
        eprintln!("{}", t.describe(i));
    }
    let splits = t.split_nodes();
    assert_eq!(splits.len(), 1);
    let n = &t.nodes[splits[0]];
    assert_eq!(n.delta, Some(rat(-1, 2)));
    assert_eq!(n.lambda, Some(int(-1)));
    assert_eq!(n.leading_form.as_ref().unwrap(), &UniPoly::from_ints(&[-1, 0, 1]));
    assert_eq!(n.status, NodeStatus::Final);
    assert_eq!(t.leaves().len(), 2);
    assert_eq!(t.split_formula(), int(1));
}

#[test]
fn linear_is_single_leaf() {
    let f = parse_poly("y").unwrap();
    let t = expand_root_tree(&f, &int(7), &opts(3)).unwrap();
    assert_eq!(t.nodes.len(), 1);
    assert!(t.nodes[0].is_leaf());
    assert_eq!(t.nodes[0].prefix.to_string(), "7");
}

#[test]
fn two_lines_split_at_zero() {
    let f = parse_poly("(y - x)*(y - x - 1)").unwrap();
    let t = expand_root_tree(&f, &int(0), &opts(4)).unwrap();
    for i in 0..t.nodes.len() {
        eprintln!("{}", t.describe(i));
    }
    let s = t.split_nodes();
    assert_eq!(s.len(), 1);
    let n = &t.nodes[s[0]];
    assert_eq!(n.delta, Some(int(0)));
    assert_eq!(n.leading_form.as_ref().unwrap(), &UniPoly::from_ints(&[0, -1, 1]));
    for i in 0..t.nodes.len() {
        assert!(derivative_leading_form_check(&t, i).unwrap());
    }
}

#[test]
fn cutoff_too_small() {
    let f = parse_poly("y^4 + x^2*y^2").unwrap();
    let e = expand_root_tree(&f, &int(1), &ExpandOptions::new(rat(1, 2))).unwrap_err();
    assert!(matches!(e, Error::CutoffTooSmall { .. }), "{e}");
}

#[test]
fn cubic_with_extension() {
    let f = parse_poly("y^3 - 3*x*y + 1 + x^2").unwrap();
    let t = expand_root_tree(&f, &int(5), &opts(6)).unwrap();
    for i in 0..t.nodes.len() {
        eprintln!("{}", t.describe(i));
    }
    assert_eq!(t.total_multiplicity(), 3);
}
