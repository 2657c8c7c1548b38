//! Shared helpers for the oracle and acceptance targets.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use ainf_core::algebra::{minus_gamma_wedge, mult_b, BEndo, HKey, HPoly, OneForm, Poly};
use ainf_core::determinacy::odd_invariant_monomials;
use ainf_core::hochschild::{Cochain, CochainKey};
use ainf_core::koszul::{homotopy_endo, include_endo, project_endo};
use ainf_core::scalars::{Mask, Monomial, Rat};
use ainf_core::transfer::{RibbonTree, Table};

/// γ = v₁²dv₁ + v₂²dv₂ on a plane.
pub fn toy_gamma() -> OneForm {
    let g = (0..2)
        .map(|k| {
            let mut e = [0u8; 2];
            e[k] = 2;
            HPoly::from_terms(vec![(HKey { mono: Monomial::from_exps(&e), hbar: 0 }, Rat::ONE)])
        })
        .collect();
    OneForm { n: 2, g }
}

pub struct Oracle {
    n: usize,
    g: BEndo,
    cutoff: u32,
    memo: HashMap<Vec<Mask>, BEndo>,
}

impl Oracle {
    pub fn new(gamma: &OneForm, d_max: usize) -> Oracle {
        Oracle { n: gamma.n, g: minus_gamma_wedge(gamma), cutoff: d_max as u32, memo: HashMap::new() }
    }

    /// Perturbation vertex: G∘τb − b∘G, τ the parity twist.
    fn pert(&self, b: &BEndo) -> BEndo {
        mult_b(&self.g, &b.parity_twist()).sub(&mult_b(b, &self.g)).truncate_above(self.cutoff)
    }

    /// Edge propagator −h∘τ.
    fn prop(&self, b: &BEndo) -> BEndo {
        homotopy_endo(&b.parity_twist()).neg().truncate_above(self.cutoff)
    }

    fn product(&self, b2: &BEndo, b1: &BEndo) -> BEndo {
        mult_b(b2, &b1.parity_twist()).truncate_above(self.cutoff)
    }

    /// Σ_k (P∘E)^k v.
    fn dress_root(&self, v: &BEndo) -> BEndo {
        let mut acc = v.clone();
        let mut cur = v.clone();
        loop {
            cur = self.pert(&self.prop(&cur));
            if cur.is_zero() {
                return acc;
            }
            acc = acc.add(&cur);
        }
    }

    /// Σ_k (E∘P)^k i(a).
    fn dress_leaf(&self, a: Mask) -> BEndo {
        let mut cur = include_endo(self.n, a);
        let mut acc = cur.clone();
        loop {
            cur = self.prop(&self.pert(&cur));
            if cur.is_zero() {
                return acc;
            }
            acc = acc.add(&cur);
        }
    }

    /// Value on an edge entering a vertex, for the inputs below it.
    fn child(&mut self, inputs: &[Mask]) -> BEndo {
        if let Some(v) = self.memo.get(inputs) {
            return v.clone();
        }
        let v = if inputs.len() == 1 {
            self.dress_leaf(inputs[0])
        } else {
            let b = self.binary(inputs);
            self.prop(&self.dress_root(&b))
        };
        self.memo.insert(inputs.to_vec(), v.clone());
        v
    }

    /// Sum over binary root vertices.
    fn binary(&mut self, inputs: &[Mask]) -> BEndo {
        let mut acc = BEndo::zero(self.n);
        for k in 1..inputs.len() {
            let l = self.child(&inputs[..k]);
            let r = self.child(&inputs[k..]);
            acc = acc.add(&self.product(&l, &r));
        }
        acc
    }

    fn root(&mut self, inputs: &[Mask]) -> BEndo {
        if inputs.len() == 1 {
            let leaf = self.dress_leaf(inputs[0]);
            self.pert(&leaf)
        } else {
            let v = self.binary(inputs);
            self.dress_root(&v)
        }
    }

    pub fn tables(&mut self, d_max: usize) -> BTreeMap<(usize, u8), Table> {
        let base = 1usize << self.n;
        let mut out: BTreeMap<(usize, u8), Table> = BTreeMap::new();
        for d in 1..=d_max {
            for idx in 0..base.pow(d as u32) {
                let mut x = idx;
                let mut inputs = vec![0 as Mask; d];
                for slot in inputs.iter_mut().rev() {
                    *slot = (x % base) as Mask;
                    x /= base;
                }
                let mut acc: BTreeMap<(u8, Mask), Rat> = BTreeMap::new();
                for (h, m, c) in project_endo(&self.root(&inputs)) {
                    *acc.entry((h, m)).or_insert(Rat::ZERO) += c;
                }
                for ((h, m), c) in acc {
                    if !c.is_zero() {
                        out.entry((d, h)).or_default().insert((inputs.clone(), m), c);
                    }
                }
            }
        }
        out
    }
}

pub fn count(d: usize, b: usize, memo: &mut HashMap<(usize, usize), u128>) -> u128 {
    if let Some(&c) = memo.get(&(d, b)) {
        return c;
    }
    // Subtrees here may be bare leaves.
    let mut c = u128::from(d == 1 && b == 0);
    if b > 0 {
        c += count(d, b - 1, memo);
    }
    for k in 1..d {
        for b1 in 0..=b {
            c += count(k, b1, memo) * count(d - k, b - b1, memo);
        }
    }
    memo.insert((d, b), c);
    c
}

pub fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn bivalent_count(t: &RibbonTree) -> usize {
    match t {
        RibbonTree::Leaf => 0,
        RibbonTree::Bi(c) => 1 + bivalent_count(c),
        RibbonTree::Tri(l, r) => bivalent_count(l) + bivalent_count(r),
    }
}


/// Trees counted by the closed form Catalan(d−1)·C(2d−2+b, b), root a vertex.
pub fn closed_form_count(d: usize, b: usize) -> u128 {
    let catalan = binomial(2 * (d as u128 - 1), d as u128 - 1) / d as u128;
    catalan * binomial(2 * d as u128 - 2 + b as u128, b as u128) - u128::from(d == 1 && b == 0)
}

/// Random cochain with up to four terms of arity ≤ 3 and small integer coefficients.
pub fn random_cochain(rng: &mut impl Rng, n: usize) -> Cochain {
    let mut c = Cochain::zero(n);
    let top = 1u8 << n;
    for _ in 0..rng.gen_range(1..=4) {
        let arity = rng.gen_range(0..=3);
        let inputs = (0..arity).map(|_| rng.gen_range(0..top)).collect();
        c.add_term(CochainKey { inputs, hbar: 0, out: rng.gen_range(0..top) }, Rat::from_int(rng.gen_range(-3..=3)));
    }
    c
}

/// Random nonzero integer combination of odd invariant monomials in F₇ below degree `order`.
pub fn random_perturbation(rng: &mut impl Rng, n: usize, order: u32) -> Poly {
    let monos = odd_invariant_monomials(n, 7, order);
    loop {
        let mut p = Poly::zero();
        for m in &monos {
            if rng.gen_bool(0.5) {
                let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                p.add_term(*m, Rat::from_int(c));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}
