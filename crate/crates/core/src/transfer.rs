//! Ribbon-tree transfer of the deformed dga structure onto Λ(V).
//!
//! Vertex and edge rules, written as operators on B:
//! leaves `i(a)`, bivalent vertices `P(b) = (−1)^{|b|}(∂̃−∂)b`, trivalent
//! vertices `M(b₂,b₁) = (−1)^{|b₁|} b₂b₁`, finite edges `H(b) = (−1)^{|b|−1}h(b)`,
//! root `p`.
//!
//! The main path sums over all trees at once. With `Child(n, b, T)` the sum of
//! values that subtrees with n leaves and b bivalent vertices put on their
//! outgoing edge (after H), and `Top(n, b, T)` the same before the final H
//! when the top vertex is trivalent:
//!
//! ```text
//! Child(1, b, a) = (HP)^b i(a)
//! Top(n, b, T)   = Σ_{splits} Σ_{b₁+b₂=b} M(Child(k, b₁, T_left), Child(n−k, b₂, T_right))
//! Child(n, b, T) = H(Top(n, b, T) + P Child(n, b−1, T))
//! μ^d            = Σ_b p(Top(d, b, T) + P Child(d, b−1, T))
//! ```
//!
//! Since h lowers Sym-degree by one and P raises it by at least two, a value
//! on an edge below which n leaves sit can only reach the root with Sym-degree
//! ≤ d_max − n (before H). Larger terms are dropped.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{minus_gamma_wedge, mult_b, AElem, BEndo, OneForm};
use crate::koszul::{homotopy_endo, include_endo, project_endo, project_product};
use crate::scalars::{parity_sign, popcount, Mask, Rat};
use crate::algebra::entry_parity;

#[derive(Debug, Error, PartialEq)]
pub enum TransferError {
    #[error("d_max must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("coefficients of the one-form must have Sym-degree >= 2")]
    LowDegreeForm,
    #[error("expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
}

/// A planar rooted tree with 2- and 3-valent vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RibbonTree {
    Leaf,
    Bi(Box<RibbonTree>),
    Tri(Box<RibbonTree>, Box<RibbonTree>),
}

impl RibbonTree {
    pub fn leaves(&self) -> usize {
        match self {
            RibbonTree::Leaf => 1,
            RibbonTree::Bi(c) => c.leaves(),
            RibbonTree::Tri(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn bivalent(&self) -> usize {
        match self {
            RibbonTree::Leaf => 0,
            RibbonTree::Bi(c) => 1 + c.bivalent(),
            RibbonTree::Tri(l, r) => l.bivalent() + r.bivalent(),
        }
    }

    pub fn trivalent(&self) -> usize {
        match self {
            RibbonTree::Leaf => 0,
            RibbonTree::Bi(c) => c.trivalent(),
            RibbonTree::Tri(l, r) => 1 + l.trivalent() + r.trivalent(),
        }
    }
}

impl fmt::Debug for RibbonTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RibbonTree::Leaf => write!(f, "*"),
            RibbonTree::Bi(c) => write!(f, "P({c:?})"),
            RibbonTree::Tri(l, r) => write!(f, "M({l:?},{r:?})"),
        }
    }
}

/// Subtrees (possibly a bare leaf) with exactly `d` leaves and `b` bivalent vertices.
fn subtrees(d: usize, b: usize, memo: &mut BTreeMap<(usize, usize), Vec<RibbonTree>>) -> Vec<RibbonTree> {
    if let Some(v) = memo.get(&(d, b)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if d == 1 && b == 0 {
        out.push(RibbonTree::Leaf);
    }
    if b >= 1 {
        for c in subtrees(d, b - 1, memo) {
            out.push(RibbonTree::Bi(Box::new(c)));
        }
    }
    for k in 1..d {
        for b1 in 0..=b {
            let left = subtrees(k, b1, memo);
            let right = subtrees(d - k, b - b1, memo);
            for l in &left {
                for r in &right {
                    out.push(RibbonTree::Tri(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
        }
    }
    memo.insert((d, b), out.clone());
    out
}

/// All trees with `d` leaves, a vertex at the root, and at most `b_max` bivalent vertices.
pub fn enumerate_trees(d: usize, b_max: usize) -> Vec<RibbonTree> {
    let mut memo = BTreeMap::new();
    let mut out = Vec::new();
    for b in 0..=b_max {
        out.extend(subtrees(d, b, &mut memo).into_iter().filter(|t| *t != RibbonTree::Leaf));
    }
    out
}

/// Operators of the tree rules for a fixed one-form.
#[derive(Clone, Debug)]
pub struct TreeRules {
    pub n: usize,
    gamma_wedge: BEndo,
}

impl TreeRules {
    pub fn new(gamma: &OneForm) -> TreeRules {
        TreeRules { n: gamma.n, gamma_wedge: minus_gamma_wedge(gamma) }
    }

    pub fn leaf(&self, a: Mask) -> BEndo {
        include_endo(self.n, a)
    }

    /// (−1)^{|b|}(∂̃−∂)b = G∘(−1)^{|b|}b − b∘G with G = −γ∧.
    pub fn bivalent(&self, b: &BEndo) -> BEndo {
        mult_b(&self.gamma_wedge, &b.parity_twist()).sub(&mult_b(b, &self.gamma_wedge))
    }

    /// (−1)^{|b₁|} b₂b₁.
    pub fn trivalent(&self, b2: &BEndo, b1: &BEndo) -> BEndo {
        mult_b(b2, &b1.parity_twist())
    }

    /// (−1)^{|b|−1} h(b).
    pub fn edge(&self, b: &BEndo) -> BEndo {
        homotopy_endo(&b.parity_twist()).neg()
    }
}

/// Output value split by ħ-power.
pub type HSplit = BTreeMap<u8, AElem>;

fn split_from_triples(v: Vec<(u8, Mask, Rat)>) -> HSplit {
    let mut out: HSplit = BTreeMap::new();
    for (h, m, c) in v {
        out.entry(h).or_default().add_term(m, c);
    }
    out.retain(|_, a| !a.is_zero());
    out
}

/// Evaluate one tree on basis inputs given in written order (a_d, …, a₁).
pub fn evaluate_tree(t: &RibbonTree, inputs: &[Mask], rules: &TreeRules) -> Result<HSplit, TransferError> {
    if t.leaves() != inputs.len() {
        return Err(TransferError::Arity { expected: t.leaves(), got: inputs.len() });
    }
    fn vertex(t: &RibbonTree, inputs: &[Mask], rules: &TreeRules) -> BEndo {
        match t {
            RibbonTree::Leaf => unreachable!("leaves are handled by the parent"),
            RibbonTree::Bi(c) => rules.bivalent(&incoming(c, inputs, rules)),
            RibbonTree::Tri(l, r) => {
                let k = l.leaves();
                rules.trivalent(&incoming(l, &inputs[..k], rules), &incoming(r, &inputs[k..], rules))
            }
        }
    }
    fn incoming(t: &RibbonTree, inputs: &[Mask], rules: &TreeRules) -> BEndo {
        match t {
            RibbonTree::Leaf => rules.leaf(inputs[0]),
            _ => rules.edge(&vertex(t, inputs, rules)),
        }
    }
    if *t == RibbonTree::Leaf {
        return Ok(HSplit::new());
    }
    Ok(split_from_triples(project_endo(&vertex(t, inputs, rules))))
}

/// Structure constants: (inputs in written order, output mask) → coefficient.
pub type Table = BTreeMap<(Vec<Mask>, Mask), Rat>;

/// Products μ^d_k for 1 ≤ d ≤ d_max, keyed by (d, k).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TransferResult {
    pub n: usize,
    pub d_max: usize,
    pub tables: BTreeMap<(usize, u8), Table>,
}

impl TransferResult {
    pub fn table(&self, d: usize, k: u8) -> Option<&Table> {
        self.tables.get(&(d, k))
    }

    pub fn total_constants(&self) -> usize {
        self.tables.values().map(BTreeMap::len).sum()
    }
}

/// Knobs of the tree-sum engine.
#[derive(Clone, Copy, Debug)]
pub struct TransferOptions {
    pub d_max: usize,
    /// Override the bivalent bound ⌊(d−2)/(r−2)⌋.
    pub b_max: Option<usize>,
    /// Drop terms that cannot reach the root with Sym-degree 0.
    pub prune: bool,
}

impl TransferOptions {
    pub fn new(d_max: usize) -> TransferOptions {
        TransferOptions { d_max, b_max: None, prune: true }
    }
}

/// Bivalent bound ⌊(d−2)/(r−2)⌋ with r − 1 the minimal Sym-degree of γ.
pub fn bivalent_bound(gamma: &OneForm, d: usize) -> usize {
    let r_minus_2 = gamma.min_sym_degree().unwrap_or(2).saturating_sub(1).max(1) as usize;
    d.saturating_sub(2) / r_minus_2
}

fn tuple_count(n: usize, len: usize) -> usize {
    (1usize << n).pow(len as u32)
}

fn decode(idx: usize, n: usize, len: usize) -> Vec<Mask> {
    let base = 1usize << n;
    let mut v = vec![0; len];
    let mut x = idx;
    for slot in v.iter_mut().rev() {
        *slot = (x % base) as Mask;
        x /= base;
    }
    v
}

/// Compute μ^d_k for all d ≤ d_max on all basis tuples.
pub fn transfer(gamma: &OneForm, d_max: usize) -> Result<TransferResult, TransferError> {
    transfer_with(gamma, TransferOptions::new(d_max))
}

pub fn transfer_with(gamma: &OneForm, opts: TransferOptions) -> Result<TransferResult, TransferError> {
    let d_max = opts.d_max;
    if d_max < 2 {
        return Err(TransferError::DegreeTooSmall(d_max));
    }
    if gamma.min_sym_degree().is_some_and(|d| d < 2) {
        return Err(TransferError::LowDegreeForm);
    }
    let n = gamma.n;
    let rules = TreeRules::new(gamma);
    let b_cap = opts.b_max.unwrap_or_else(|| bivalent_bound(gamma, d_max));
    let base = 1usize << n;
    let cap = |leaves: usize| -> Option<u32> { opts.prune.then(|| (d_max - leaves) as u32) };
    let trunc = |x: BEndo, c: Option<u32>| match c {
        Some(c) => x.truncate_above(c),
        None => x,
    };

    // child[n][b][tuple]
    let mut child: Vec<Vec<Vec<BEndo>>> = vec![Vec::new()];
    let leaf_level: Vec<Vec<BEndo>> = {
        let mut by_b = vec![Vec::with_capacity(base); b_cap + 1];
        for a in 0..base {
            let mut cur = rules.leaf(a as Mask);
            by_b[0].push(cur.clone());
            for slot in by_b.iter_mut().skip(1) {
                let c1 = cap(1).map(|c| c.saturating_sub(1));
                cur = trunc(rules.edge(&trunc(rules.bivalent(&cur), cap(1))), c1);
                slot.push(cur.clone());
            }
        }
        by_b
    };
    child.push(leaf_level);

    let top = |level: usize, b: usize, idx: usize, child: &Vec<Vec<Vec<BEndo>>>| -> BEndo {
        let mut acc = BEndo::zero(n);
        for k in 1..level {
            let right_len = level - k;
            let div = base.pow(right_len as u32);
            let (li, ri) = (idx / div, idx % div);
            for b1 in 0..=b {
                let l = &child[k][b1][li];
                if l.is_zero() {
                    continue;
                }
                let r = &child[right_len][b - b1][ri];
                if r.is_zero() {
                    continue;
                }
                acc = acc.add(&rules.trivalent(l, r));
            }
        }
        acc
    };

    for level in 2..d_max {
        let count = tuple_count(n, level);
        let top_cap = cap(level);
        let child_cap = top_cap.map(|c| c.saturating_sub(1));
        let rows: Vec<Vec<BEndo>> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let mut vals: Vec<BEndo> = Vec::with_capacity(b_cap + 1);
                for b in 0..=b_cap {
                    let mut t = trunc(top(level, b, idx, &child), top_cap);
                    if b >= 1 && !vals[b - 1].is_zero() {
                        t = t.add(&trunc(rules.bivalent(&vals[b - 1]), top_cap));
                    }
                    let v = if t.is_zero() { t } else { trunc(rules.edge(&t), child_cap) };
                    vals.push(v);
                }
                vals
            })
            .collect();
        let mut by_b = vec![Vec::with_capacity(count); b_cap + 1];
        for vals in rows {
            for (b, v) in vals.into_iter().enumerate() {
                by_b[b].push(v);
            }
        }
        child.push(by_b);
    }

    let mut tables: BTreeMap<(usize, u8), Table> = BTreeMap::new();

    // Arity one: linear chains p P (HP)^c i(a).
    for a in 0..base {
        for c in 0..=b_cap {
            let v = project_endo(&rules.bivalent(&child[1][c][a]));
            for (h, m, x) in v {
                add_constant(&mut tables, 1, h, vec![a as Mask], m, x);
            }
        }
    }

    for d in 2..=d_max {
        let bd = opts.b_max.unwrap_or_else(|| bivalent_bound(gamma, d)).min(b_cap);
        let count = tuple_count(n, d);
        let per_tuple: Vec<Vec<(u8, Mask, Rat)>> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let mut acc: BTreeMap<(u8, Mask), Rat> = BTreeMap::new();
                for k in 1..d {
                    let right_len = d - k;
                    let div = base.pow(right_len as u32);
                    let (li, ri) = (idx / div, idx % div);
                    for b in 0..=bd {
                        for b1 in 0..=b {
                            let l = &child[k][b1][li];
                            let r = &child[right_len][b - b1][ri];
                            if l.is_zero() || r.is_zero() {
                                continue;
                            }
                            let sign = |row: Mask, col: Mask| parity_sign(entry_parity(row, col));
                            for (h, m, x) in project_product(l, r, sign) {
                                *acc.entry((h, m)).or_insert(Rat::ZERO) += x;
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|((h, m), x)| (h, m, x)).collect()
            })
            .collect();
        for (idx, v) in per_tuple.into_iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let inputs = decode(idx, n, d);
            for (h, m, x) in v {
                add_constant(&mut tables, d, h, inputs.clone(), m, x);
            }
        }
    }
    tables.retain(|_, t| !t.is_empty());
    Ok(TransferResult { n, d_max, tables })
}

fn add_constant(tables: &mut BTreeMap<(usize, u8), Table>, d: usize, h: u8, inputs: Vec<Mask>, out: Mask, x: Rat) {
    if x.is_zero() {
        return;
    }
    let t = tables.entry((d, h)).or_default();
    let e = t.entry((inputs.clone(), out)).or_insert(Rat::ZERO);
    *e += x;
    if e.is_zero() {
        t.remove(&(inputs, out));
    }
}

/// Transfer by explicit per-tree evaluation; slow, used for cross-checks.
pub fn transfer_by_trees(gamma: &OneForm, d_max: usize, b_max: usize) -> TransferResult {
    let rules = TreeRules::new(gamma);
    let n = gamma.n;
    let mut tables = BTreeMap::new();
    for d in 1..=d_max {
        let trees = enumerate_trees(d, b_max);
        for idx in 0..tuple_count(n, d) {
            let inputs = decode(idx, n, d);
            for t in &trees {
                let v = evaluate_tree(t, &inputs, &rules).expect("arity matches");
                for (h, a) in v {
                    for (m, x) in a.terms {
                        add_constant(&mut tables, d, h, inputs.clone(), m, x);
                    }
                }
            }
        }
    }
    tables.retain(|_, t: &mut Table| !t.is_empty());
    TransferResult { n, d_max, tables }
}

/// μ¹(a) = Σ_c p P (HP)^c i(a), summed until the chain dies out.
pub fn mu1_series(gamma: &OneForm) -> Table {
    let rules = TreeRules::new(gamma);
    let n = gamma.n;
    let grows = gamma.min_sym_degree().is_none_or(|d| d >= 2);
    let mut table = Table::new();
    for a in 0..(1usize << n) {
        let mut cur = rules.leaf(a as Mask);
        for _ in 0..64 {
            let pc = rules.bivalent(&cur);
            for (_, m, x) in project_endo(&pc) {
                let e = table.entry((vec![a as Mask], m)).or_insert(Rat::ZERO);
                *e += x;
            }
            cur = rules.edge(&pc);
            if cur.is_zero() {
                break;
            }
            // Once every term has positive Sym-degree and P raises it faster
            // than h lowers it, p can no longer see the chain.
            if grows && cur.min_sym_degree().is_some_and(|d| d > 0) {
                break;
            }
        }
    }
    table.retain(|_, x| !x.is_zero());
    table
}

/// Index shift |out| − Σ|in| of a constant.
pub fn index_shift(inputs: &[Mask], out: Mask) -> i64 {
    popcount(out) as i64 - inputs.iter().map(|m| popcount(*m) as i64).sum::<i64>()
}
