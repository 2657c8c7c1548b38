//! Independent cross-checks of the transfer engine.
//!
//! The transfer is recomputed by summing over binary trees only, with each edge
//! dressed by the geometric series of perturbation insertions, summed until the
//! Sym-degree cutoff kills it. Tree counts are checked against a direct recursion
//! and the closed form Catalan(d−1)·C(2d−2+b, b).

mod support;

use std::collections::HashMap;

use ainf_core::koszul::{cyclic_gamma, quintic_w, sign_normalize_gamma};
use ainf_core::transfer::{enumerate_trees, transfer};

use support::{bivalent_count, closed_form_count, count, toy_gamma, Oracle};

#[test]
fn toy_transfer_matches_dressed_binary_trees() {
    let gamma = toy_gamma();
    let engine = transfer(&gamma, 4).unwrap();
    let oracle = Oracle::new(&gamma, 4).tables(4);
    assert!(!oracle.is_empty());
    assert_eq!(engine.tables.keys().collect::<Vec<_>>(), oracle.keys().collect::<Vec<_>>());
    for (key, t) in &oracle {
        assert_eq!(engine.tables.get(key), Some(t), "table {key:?}");
    }
}

#[test]
fn cyclic_form_matches_through_arity_four() {
    let (gamma, _) = sign_normalize_gamma(&cyclic_gamma(), &quintic_w()).unwrap();
    let engine = transfer(&gamma, 4).unwrap();
    let oracle = Oracle::new(&gamma, 4).tables(4);
    assert_eq!(engine.tables, oracle);
}

#[test]
fn toy_cubic_product_is_nonzero() {
    // W_eff = −(v1³ + v2³): μ³ must see the cubic terms on diagonal inputs.
    let engine = transfer(&toy_gamma(), 4).unwrap();
    let t = engine.table(3, 0).expect("mu^3 present");
    assert!(t.contains_key(&(vec![1, 1, 1], 0)));
    assert!(t.contains_key(&(vec![2, 2, 2], 0)));
}

#[test]
fn tree_counts_match_recursion_and_closed_form() {
    let mut memo = HashMap::new();
    for d in 1..=6usize {
        let b_max = 4;
        let trees = enumerate_trees(d, b_max);
        let mut by_b = vec![0u128; b_max + 1];
        for t in &trees {
            assert_eq!(t.leaves(), d);
            by_b[bivalent_count(t)] += 1;
        }
        for (b, got) in by_b.iter().enumerate() {
            let rooted = count(d, b, &mut memo) - u128::from(d == 1 && b == 0);
            assert_eq!(*got, rooted, "d = {d}, b = {b}");
            assert_eq!(*got, closed_form_count(d, b), "closed form d = {d}, b = {b}");
        }
    }
}
