//! Truncated power series, Jacobian-ideal membership and the reduction of W′ to W.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Poly;
use crate::hochschild::{koszul_dw, PolyVector};
use crate::linalg::{nullspace, solve};
use crate::scalars::{monomial_weight, popcount, Mask, Monomial, Rat, Weight};

#[derive(Debug, Error, PartialEq)]
pub enum DeterminacyError {
    #[error("no solution: first inconsistent equation in degree {degree}")]
    Infeasible { degree: u32 },
    #[error("input is not odd")]
    NotOdd,
    #[error("input is not invariant: monomial {0} has weight off the diagonal")]
    NotInvariant(String),
    #[error("input does not agree with W modulo F_{order}")]
    TooFar { order: u32 },
    #[error("two-form is not a cocycle: iota_dW a2 has a term in degree {degree}")]
    NotCocycle { degree: u32 },
    #[error("reduction step at order {order} left a residual of order {got}")]
    StepFailed { order: u32, got: u32 },
    #[error("expected a bivector field, found a component with {0} vectors")]
    WrongForm(u32),
}

/// A polynomial read modulo F_N (terms of degree ≥ N are dropped).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub poly: Poly,
    pub order: u32,
    /// True if constructing or operating discarded nonzero terms.
    pub truncated: bool,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod F_{}", self.poly, self.order)
    }
}

impl TruncatedSeries {
    pub fn new(p: &Poly, order: u32) -> TruncatedSeries {
        let poly = p.truncate(order);
        let truncated = poly.terms.len() != p.terms.len();
        TruncatedSeries { poly, order, truncated }
    }

    /// Membership in F_r: no terms of order below r.
    pub fn in_filtration(&self, r: u32) -> bool {
        self.poly.min_degree().is_none_or(|d| d >= r)
    }

    pub fn add(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        let mut s = TruncatedSeries::new(&self.poly.add(&o.poly), order);
        s.truncated |= self.truncated || o.truncated;
        s
    }

    pub fn sub(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.add(&TruncatedSeries { poly: o.poly.neg(), ..o.clone() })
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        TruncatedSeries { poly: mul_trunc(&self.poly, &o.poly, order), order, truncated: true }
    }
}

/// p·q with terms of degree ≥ order dropped during the product.
pub fn mul_trunc(p: &Poly, q: &Poly, order: u32) -> Poly {
    let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
    let qs: Vec<(&Monomial, &Rat, u32)> = q.terms.iter().map(|(m, c)| (m, c, m.degree())).collect();
    for (m1, c1) in &p.terms {
        let d1 = m1.degree();
        if d1 >= order {
            continue;
        }
        for (m2, c2, d2) in &qs {
            if d1 + d2 >= order {
                continue;
            }
            let v = c1 * *c2;
            acc.entry(m1.mul(m2)).and_modify(|e| *e += &v).or_insert(v);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Poly { terms: acc }
}

/// v_k ↦ v_k + f_k, modulo F_N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordChange {
    pub n: usize,
    pub f: Vec<Poly>,
    pub order: u32,
}

impl CoordChange {
    pub fn identity(n: usize, order: u32) -> CoordChange {
        CoordChange { n, f: vec![Poly::zero(); n], order }
    }

    pub fn new(f: Vec<Poly>, order: u32) -> CoordChange {
        let n = f.len();
        CoordChange { n, f: f.iter().map(|p| p.truncate(order)).collect(), order }
    }

    pub fn is_identity(&self) -> bool {
        self.f.iter().all(Poly::is_zero)
    }

    /// Lowest order of a nonzero f_k.
    pub fn min_order(&self) -> Option<u32> {
        self.f.iter().filter_map(Poly::min_degree).min()
    }

    /// The image of v_k, i.e. v_k + f_k.
    pub fn image(&self, k: usize) -> Poly {
        Poly::var(k).add(&self.f[k])
    }

    /// Every term of f_k has the weight of v_k (modulo the diagonal).
    pub fn is_equivariant(&self) -> bool {
        (0..self.n).all(|k| self.f[k].terms.keys().all(|m| same_weight(m, &Monomial::var(k), self.n)))
    }

    /// c = self ∘ other: first apply self, then substitute other into the result.
    pub fn then(&self, other: &CoordChange) -> CoordChange {
        let order = self.order.min(other.order);
        let f = (0..self.n)
            .map(|k| substitute_poly(&self.image(k), other, order).sub(&Poly::var(k)))
            .collect();
        CoordChange { n: self.n, f, order }
    }
}

fn same_weight(a: &Monomial, b: &Monomial, n: usize) -> bool {
    monomial_weight(a, n).sub(&monomial_weight(b, n)).is_diagonal()
}

/// p(v + f) mod F_order.
pub fn substitute_poly(p: &Poly, c: &CoordChange, order: u32) -> Poly {
    let n = c.n;
    let images: Vec<Poly> = (0..n).map(|k| c.image(k).truncate(order)).collect();
    let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::constant(Rat::ONE)]; n];
    let mut out = Poly::zero();
    for (m, coef) in &p.terms {
        if m.degree() >= order {
            continue;
        }
        let mut term = Poly::constant(coef.clone());
        for k in 0..n {
            let e = m.exp(k) as usize;
            while powers[k].len() <= e {
                let next = mul_trunc(powers[k].last().expect("nonempty"), &images[k], order);
                powers[k].push(next);
            }
            if e > 0 {
                term = mul_trunc(&term, &powers[k][e], order);
            }
        }
        out = out.add(&term);
    }
    out
}

pub fn substitute(s: &TruncatedSeries, c: &CoordChange) -> TruncatedSeries {
    let order = s.order.min(c.order);
    TruncatedSeries { poly: substitute_poly(&s.poly, c, order), order, truncated: s.truncated }
}

/// Keep only weight-compatible terms of each f_k.
pub fn equivariant_average(c: &CoordChange) -> CoordChange {
    let f = (0..c.n)
        .map(|k| Poly { terms: c.f[k].terms.iter().filter(|(m, _)| same_weight(m, &Monomial::var(k), c.n)).map(|(m, x)| (*m, x.clone())).collect() })
        .collect();
    CoordChange { n: c.n, f, order: c.order }
}

/// All monomials in n variables with lo ≤ degree < hi, in (degree, monomial) order.
pub fn monomials_between(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in lo..hi {
        let mut e = vec![0u8; n];
        fill(&mut out, &mut e, 0, d);
    }
    out
}

/// Odd-degree monomials with lo ≤ degree < hi that are invariant under the diagonal group.
pub fn odd_invariant_monomials(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    monomials_between(n, lo, hi).into_iter().filter(|m| m.degree() % 2 == 1 && monomial_weight(m, n).is_diagonal()).collect()
}

fn fill(out: &mut Vec<Monomial>, e: &mut Vec<u8>, k: usize, left: u32) {
    if k + 1 == e.len() {
        e[k] = left as u8;
        out.push(Monomial::from_exps(e));
        return;
    }
    for x in (0..=left).rev() {
        e[k] = x as u8;
        fill(out, e, k + 1, left - x);
    }
    e[k] = 0;
}

/// Certificate for f ≡ Σ q_k ∂_kW + remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub q: Vec<Poly>,
    /// f − Σ q_k ∂_kW, exactly.
    pub remainder: Poly,
    pub order: u32,
}

impl Membership {
    /// Σ q_k ∂_kW + remainder − f, which must vanish identically.
    pub fn defect(&self, f: &Poly, w: &Poly) -> Poly {
        let mut s = self.remainder.sub(f);
        for (k, q) in self.q.iter().enumerate() {
            s = s.add(&q.mul(&w.derivative(k)));
        }
        s
    }
}

type RowKey = (u32, Monomial);

fn row(m: Monomial) -> RowKey {
    (m.degree(), m)
}

/// Solve f ≡ Σ q_k ∂_kW mod F_N with every q_k ∈ F_{q_order}.
pub fn ideal_membership_in(f: &Poly, w: &Poly, order: u32, q_order: u32) -> Result<Membership, DeterminacyError> {
    let n = (0..crate::scalars::MAX_VARS).rev().find(|k| f.terms.keys().chain(w.terms.keys()).any(|m| m.exp(*k) > 0)).map_or(1, |k| k + 1);
    let dw: Vec<Poly> = (0..n).map(|k| w.derivative(k)).collect();
    let low = dw.iter().filter_map(Poly::min_degree).min().unwrap_or(0);
    let monos = monomials_between(n, q_order, order.saturating_sub(low));
    let mut cols = Vec::new();
    let mut keys = Vec::new();
    for (k, d) in dw.iter().enumerate() {
        for m in &monos {
            let col: BTreeMap<RowKey, Rat> = d.terms.iter().filter(|(dm, _)| m.degree() + dm.degree() < order).map(|(dm, c)| (row(m.mul(dm)), c.clone())).collect();
            if !col.is_empty() {
                cols.push(col);
                keys.push((k, *m));
            }
        }
    }
    let rhs: BTreeMap<RowKey, Rat> = f.truncate(order).terms.iter().map(|(m, c)| (row(*m), c.clone())).collect();
    let x = solve(&cols, &rhs).map_err(|e| DeterminacyError::Infeasible { degree: e.row.0 })?;
    let mut q = vec![Poly::zero(); n];
    for ((k, m), c) in keys.iter().zip(x) {
        q[*k].add_term(*m, c);
    }
    let mut remainder = f.clone();
    for (k, qk) in q.iter().enumerate() {
        remainder = remainder.sub(&qk.mul(&dw[k]));
    }
    Ok(Membership { q, remainder, order })
}

/// Solve f ≡ Σ q_k ∂_kW mod F_N with unrestricted q.
pub fn ideal_membership(f: &TruncatedSeries, w: &Poly, order: u32) -> Result<Membership, DeterminacyError> {
    ideal_membership_in(&f.poly, w, order, 0)
}

/// One step of the reduction: W_r ↦ W_{r+2}.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub from_order: u32,
    pub to_order: u32,
    pub change: CoordChange,
}

/// Output of [`reduce_to_w`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub change: CoordChange,
    pub steps: Vec<ReductionStep>,
    /// W′∘c − W mod F_N, recomputed from scratch.
    pub residual: Poly,
    pub order: u32,
}

impl Reduction {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "F_{} -> F_{}:", s.from_order, s.to_order)?;
            for (k, p) in s.change.f.iter().enumerate() {
                if !p.is_zero() {
                    writeln!(f, "  f{} = {}", k + 1, p.fmt_with(self.change.n))?;
                }
            }
        }
        for k in 0..self.change.n {
            writeln!(f, "v{} -> {}", k + 1, self.change.image(k).fmt_with(self.change.n))?;
        }
        if self.residual.is_zero() {
            write!(f, "residual = 0 mod F_{}", self.order)
        } else {
            write!(f, "residual = {} mod F_{}", self.residual.fmt_with(self.change.n), self.order)
        }
    }
}

fn is_odd(p: &Poly) -> bool {
    p.terms.keys().all(|m| m.degree() % 2 == 1)
}

fn check_invariant(p: &Poly, n: usize) -> Result<(), DeterminacyError> {
    for m in p.terms.keys() {
        if !monomial_weight(m, n).is_diagonal() {
            return Err(DeterminacyError::NotInvariant(m.fmt_vars(n, "v")));
        }
    }
    Ok(())
}

/// Find an equivariant coordinate change c with W′∘c ≡ W mod F_N.
pub fn reduce_to_w(w_prime: &Poly, w: &Poly, n: usize, order: u32) -> Result<Reduction, DeterminacyError> {
    if !is_odd(w_prime) {
        return Err(DeterminacyError::NotOdd);
    }
    check_invariant(w_prime, n)?;
    if !w_prime.sub(w).truncate(7).is_zero() {
        return Err(DeterminacyError::TooFar { order: 7 });
    }
    let mut total = CoordChange::identity(n, order);
    let mut current = w_prime.truncate(order);
    let mut steps = Vec::new();
    let mut r = 7;
    while r < order {
        let next = (r + 2).min(order);
        let q_order = if r == 7 { 5 } else { r - 4 };
        let diff = w.sub(&current);
        let cert = ideal_membership_in(&diff, w, next, q_order)?;
        let step = equivariant_average(&CoordChange::new(cert.q, order));
        current = substitute_poly(&current, &step, order);
        let got = current.sub(w).min_degree().unwrap_or(order);
        if got < next {
            return Err(DeterminacyError::StepFailed { order: next, got });
        }
        total = total.then(&step);
        steps.push(ReductionStep { from_order: r, to_order: next, change: step });
        r = next;
    }
    let residual = substitute_poly(w_prime, &total, order).sub(&w.truncate(order));
    Ok(Reduction { change: total, steps, residual, order })
}

/// The vector mask of ξ₁∧…∧ξ_n.
fn top_mask(n: usize) -> Mask {
    ((1u16 << n) - 1) as Mask
}

/// Find γ³ = g·ξ₁∧ξ₂∧ξ₃ with ι_{dW}γ³ ≡ −a2 mod F_N.
pub fn solve_two_form(a2: &PolyVector, w: &Poly, order: u32) -> Result<PolyVector, DeterminacyError> {
    let n = a2.n;
    for (_, mask, _) in a2.terms.keys() {
        if popcount(*mask) != (n as u32 - 1) {
            return Err(DeterminacyError::WrongForm(popcount(*mask)));
        }
    }
    let cyc = koszul_dw(a2, w).forget_hbar();
    if let Some(d) = cyc.terms.keys().map(|(m, _, _)| m.degree()).filter(|d| *d < order).min() {
        return Err(DeterminacyError::NotCocycle { degree: d });
    }
    let top = top_mask(n);
    let monos = monomials_between(n, 0, order);
    let mut cols = Vec::new();
    for m in &monos {
        let img = koszul_dw(&PolyVector::term(n, *m, top, Rat::ONE), w);
        let col: BTreeMap<(u32, Monomial, Mask), Rat> =
            img.terms.iter().filter(|((mm, _, _), _)| mm.degree() < order).map(|((mm, mask, _), c)| ((mm.degree(), *mm, *mask), c.clone())).collect();
        cols.push(col);
    }
    let rhs: BTreeMap<(u32, Monomial, Mask), Rat> =
        a2.forget_hbar().terms.iter().filter(|((m, _, _), _)| m.degree() < order).map(|((m, mask, _), c)| ((m.degree(), *m, *mask), c.neg_ref())).collect();
    let x = solve(&cols, &rhs).map_err(|e| DeterminacyError::Infeasible { degree: e.row.0 })?;
    let mut g = PolyVector::zero(n);
    for (m, c) in monos.iter().zip(x) {
        g.add_term(*m, top, 0, c);
    }
    Ok(g)
}

/// Basis of exact polynomial two-forms a2 with ι_{dW}a2 = 0, monomial degrees in [lo, hi).
pub fn two_form_cocycles(n: usize, w: &Poly, lo: u32, hi: u32) -> Vec<PolyVector> {
    let monos = monomials_between(n, lo, hi);
    let masks: Vec<Mask> = (0..(1u16 << n)).map(|m| m as Mask).filter(|m| popcount(*m) == n as u32 - 1).collect();
    let mut keys = Vec::new();
    let mut cols = Vec::new();
    for m in &monos {
        for mask in &masks {
            let img = koszul_dw(&PolyVector::term(n, *m, *mask, Rat::ONE), w);
            // Weight key first so components stay small.
            let col: BTreeMap<(Weight, Monomial, Mask), Rat> =
                img.terms.iter().map(|((mm, mk, _), c)| ((crate::hochschild::polyvector_term_weight(n, mm, *mk), *mm, *mk), c.clone())).collect();
            cols.push(col);
            keys.push((*m, *mask));
        }
    }
    nullspace(&cols)
        .into_iter()
        .map(|v| {
            let mut p = PolyVector::zero(n);
            for (j, c) in v {
                p.add_term(keys[j].0, keys[j].1, 0, c);
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::quintic_w;

    fn v(k: usize) -> Poly {
        Poly::var(k)
    }

    #[test]
    fn mixed_monomial_certificate() {
        let w = quintic_w();
        let f = v(0).mul(&v(1));
        let cert = ideal_membership(&TruncatedSeries::new(&f, 4), &w, 4).unwrap();
        assert_eq!(cert.q[0], Poly::zero());
        assert_eq!(cert.q[1], Poly::zero());
        assert_eq!(cert.q[2], Poly::constant(Rat::from_int(-1)));
        assert_eq!(cert.remainder, Poly::monomial(Monomial::from_exps(&[0, 0, 4]), Rat::from_int(5)));
        assert!(cert.defect(&f, &w).is_zero());
    }

    #[test]
    fn derivative_is_member() {
        let w = quintic_w();
        let cert = ideal_membership(&TruncatedSeries::new(&w.derivative(0), 10), &w, 10).unwrap();
        assert_eq!(cert.q[0], Poly::constant(Rat::ONE));
        assert!(cert.remainder.is_zero());
    }

    #[test]
    fn substitution_example() {
        let w = quintic_w();
        let c = CoordChange::new(vec![v(0).mul(&v(0)).mul(&v(0)), Poly::zero(), Poly::zero()], 7);
        let got = substitute(&TruncatedSeries::new(&w, 7), &c);
        let expect = w.sub(&Poly::monomial(Monomial::from_exps(&[3, 1, 1]), Rat::ONE)).truncate(7);
        assert_eq!(got.poly, expect);
    }

    #[test]
    fn averaging_drops_off_weight_terms() {
        let c = CoordChange::new(vec![Poly::monomial(Monomial::from_exps(&[0, 5, 0]), Rat::ONE), Poly::zero(), Poly::zero()], 10);
        assert!(!c.is_equivariant());
        let a = equivariant_average(&c);
        assert!(a.is_identity());
        assert_eq!(equivariant_average(&a), a);
    }

    #[test]
    fn reduce_identity() {
        let w = quintic_w();
        let r = reduce_to_w(&w, &w, 3, 15).unwrap();
        assert!(r.change.is_identity());
        assert!(r.passed());
    }

    #[test]
    fn rejects_bad_inputs() {
        let w = quintic_w();
        let even = w.add(&Poly::monomial(Monomial::from_exps(&[2, 2, 2]), Rat::ONE));
        assert_eq!(reduce_to_w(&even, &w, 3, 15).unwrap_err(), DeterminacyError::NotOdd);
        let off = w.add(&Poly::monomial(Monomial::from_exps(&[7, 0, 0]), Rat::ONE));
        assert!(matches!(reduce_to_w(&off, &w, 3, 15), Err(DeterminacyError::NotInvariant(_))));
    }

    #[test]
    fn two_form_round_trip() {
        let w = quintic_w();
        let gamma = PolyVector::term(3, Monomial::from_exps(&[2, 0, 0]), 0b111, Rat::ONE);
        let a2 = koszul_dw(&gamma, &w);
        let g = solve_two_form(&a2, &w, 10).unwrap();
        let back = koszul_dw(&g, &w).add(&a2).truncate(10);
        assert!(back.is_zero());
        assert!(solve_two_form(&PolyVector::zero(3), &w, 10).unwrap().is_zero());
    }
}
