//! Hochschild cochains of Λ(V), polyvector fields, and the maps between them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{fmt_mask, fmt_poly_terms, Poly};
use crate::scalars::{mask_sign, mask_weight, monomial_weight, parity_sign, popcount, ExtMask, Mask, Monomial, Rat, Side, Weight, MAX_VARS};

/// Basis element of Hom(A^{⊗i}, A)·ħ^k: inputs in written order (a_i, …, a₁).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CochainKey {
    pub inputs: Vec<Mask>,
    pub hbar: u8,
    pub out: Mask,
}

impl CochainKey {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// j = |out| − Σ|in|, the internal degree of the map.
    pub fn internal_degree(&self) -> i64 {
        popcount(self.out) as i64 - self.inputs.iter().map(|m| popcount(*m) as i64).sum::<i64>()
    }

    /// Degree i + j − 1 in the Hochschild complex.
    pub fn cc_degree(&self) -> i64 {
        self.arity() as i64 + self.internal_degree() - 1
    }
}

/// A finite sum of basis cochains, possibly of mixed arity.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Cochain {
    pub n: usize,
    pub terms: BTreeMap<CochainKey, Rat>,
}

fn sgn(e: i64) -> i32 {
    parity_sign(e.rem_euclid(2) as u32)
}

impl Cochain {
    pub fn zero(n: usize) -> Cochain {
        Cochain { n, terms: BTreeMap::new() }
    }

    pub fn single(n: usize, inputs: Vec<Mask>, out: Mask, c: Rat) -> Cochain {
        let mut x = Cochain::zero(n);
        x.add_term(CochainKey { inputs, hbar: 0, out }, c);
        x
    }

    pub fn add_term(&mut self, k: CochainKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut r = Cochain::zero(self.n);
        for (k, x) in &self.terms {
            r.add_term(k.clone(), x * c);
        }
        r
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        self.add(&o.scale(&-Rat::ONE))
    }

    /// Components of the given arity.
    pub fn arity_part(&self, i: usize) -> Cochain {
        Cochain { n: self.n, terms: self.terms.iter().filter(|(k, _)| k.arity() == i).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn max_arity(&self) -> usize {
        self.terms.keys().map(CochainKey::arity).max().unwrap_or(0)
    }

    /// Drop components of arity above `d`.
    pub fn truncate_arity(&self, d: usize) -> Cochain {
        Cochain { n: self.n, terms: self.terms.iter().filter(|(k, _)| k.arity() <= d).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// The product cochain m(a₂, a₁) = (−1)^{|a₁|} a₂a₁.
    pub fn product(n: usize) -> Cochain {
        let mut m = Cochain::zero(n);
        for a2 in 0..(1u16 << n) {
            for a1 in 0..(1u16 << n) {
                let (a2, a1) = (a2 as Mask, a1 as Mask);
                let s = mask_sign(a2, a1) * parity_sign(popcount(a1));
                if s != 0 {
                    m.add_term(CochainKey { inputs: vec![a2, a1], hbar: 0, out: a2 | a1 }, Rat::from_int(s as i64));
                }
            }
        }
        m
    }

    /// The identity 1-cochain.
    pub fn identity(n: usize) -> Cochain {
        let mut m = Cochain::zero(n);
        for a in 0..(1u16 << n) {
            m.add_term(CochainKey { inputs: vec![a as Mask], hbar: 0, out: a as Mask }, Rat::ONE);
        }
        m
    }

    /// Evaluate on basis inputs, returning the output coefficients by (ħ, mask).
    pub fn eval(&self, inputs: &[Mask]) -> BTreeMap<(u8, Mask), Rat> {
        let lo = CochainKey { inputs: inputs.to_vec(), hbar: 0, out: 0 };
        let mut out = BTreeMap::new();
        for (k, c) in self.terms.range(lo..) {
            if k.inputs != inputs {
                break;
            }
            out.insert((k.hbar, k.out), c.clone());
        }
        out
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Cochain {{")?;
        for (k, c) in &self.terms {
            let ins: Vec<String> = k.inputs.iter().map(|m| fmt_mask(*m, "x")).collect();
            writeln!(f, "  ({}) -> {} * {} h^{}", ins.join(", "), c, fmt_mask(k.out, "x"), k.hbar)?;
        }
        write!(f, "}}")
    }
}

/// The Hochschild differential, evaluated termwise against the wedge product.
pub fn hochschild_d(phi: &Cochain) -> Cochain {
    let n = phi.n;
    let all: Vec<Mask> = (0..(1u16 << n)).map(|m| m as Mask).collect();
    let mut out = Cochain::zero(n);
    for (key, c) in &phi.terms {
        let deg = key.cc_degree();
        let len = key.arity();
        let j = len + 1;
        // |a₁| + … + |a_t| for the inputs of φ counted from the right.
        let parity_right = |t: usize| -> i64 { key.inputs[len - t..].iter().map(|m| popcount(*m) as i64).sum() };

        // φ(a_j, …, a_{k+1}a_k, …, a₁): slot k of φ (from the right) receives a_{k+1}a_k.
        for k in 1..j {
            let slot = len - k;
            let m = key.inputs[slot];
            let below = parity_right(k - 1);
            let mut sub = m;
            loop {
                let y = sub;
                let x = m & !y;
                let s = mask_sign(x, y);
                let e = deg + below + popcount(y) as i64 + k as i64;
                let mut inputs = Vec::with_capacity(j);
                inputs.extend_from_slice(&key.inputs[..slot]);
                inputs.push(x);
                inputs.push(y);
                inputs.extend_from_slice(&key.inputs[slot + 1..]);
                out.add_term(CochainKey { inputs, hbar: key.hbar, out: key.out }, c.signed(s * sgn(e)));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }

        // a_j φ(a_{j−1}, …, a₁)
        let all_par = parity_right(len);
        for &x in &all {
            let s = mask_sign(x, key.out);
            if s == 0 {
                continue;
            }
            let e = deg + all_par + j as i64;
            let mut inputs = Vec::with_capacity(j);
            inputs.push(x);
            inputs.extend_from_slice(&key.inputs);
            out.add_term(CochainKey { inputs, hbar: key.hbar, out: x | key.out }, c.signed(s * sgn(e)));
        }

        // φ(a_j, …, a₂) a₁
        for &y in &all {
            let s = mask_sign(key.out, y);
            if s == 0 {
                continue;
            }
            let e = (deg - 1) * (popcount(y) as i64 - 1) + 1;
            let mut inputs = key.inputs.clone();
            inputs.push(y);
            out.add_term(CochainKey { inputs, hbar: key.hbar, out: key.out | y }, c.signed(s * sgn(e)));
        }
    }
    out
}

/// Σ_k ±outer(…, inner(…), a_k, …, a₁) with the sign (−1)^{|inner|(|a₁|+…+|a_k|−k)}
/// times `extra(|outer|, |inner|)`, keeping only results of arity ≤ `max_arity`.
pub fn compose(
    outer: &Cochain,
    inner: &Cochain,
    max_arity: usize,
    extra: impl Fn(i64, i64) -> i32,
) -> Cochain {
    let mut by_out: HashMap<Mask, Vec<(&CochainKey, &Rat, i64)>> = HashMap::new();
    for (k, c) in &inner.terms {
        by_out.entry(k.out).or_default().push((k, c, k.cc_degree()));
    }
    let mut acc: HashMap<CochainKey, Rat> = HashMap::new();
    for (ok, oc) in &outer.terms {
        let odeg = ok.cc_degree();
        let len = ok.arity();
        for slot in 0..len {
            let Some(list) = by_out.get(&ok.inputs[slot]) else { continue };
            let k = len - 1 - slot;
            let right: i64 = ok.inputs[slot + 1..].iter().map(|m| popcount(*m) as i64).sum::<i64>() - k as i64;
            for (ik, ic, ideg) in list {
                let new_arity = len - 1 + ik.arity();
                if new_arity > max_arity {
                    continue;
                }
                let s = sgn(ideg * right) * extra(odeg, *ideg);
                let mut inputs = Vec::with_capacity(new_arity);
                inputs.extend_from_slice(&ok.inputs[..slot]);
                inputs.extend_from_slice(&ik.inputs);
                inputs.extend_from_slice(&ok.inputs[slot + 1..]);
                let key = CochainKey { inputs, hbar: ok.hbar + ik.hbar, out: ok.out };
                let v = (oc * *ic).signed(s);
                acc.entry(key).and_modify(|e| *e += &v).or_insert(v);
            }
        }
    }
    Cochain { n: outer.n, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Gerstenhaber bracket [φ, ψ], keeping results of arity ≤ `max_arity`.
pub fn gerstenhaber_upto(phi: &Cochain, psi: &Cochain, max_arity: usize) -> Cochain {
    let a = compose(phi, psi, max_arity, |_, _| 1);
    let b = compose(psi, phi, max_arity, |outer, inner| sgn(outer * inner));
    a.sub(&b)
}

pub fn gerstenhaber(phi: &Cochain, psi: &Cochain) -> Cochain {
    gerstenhaber_upto(phi, psi, usize::MAX)
}

/// Split into pieces of homogeneous Hochschild degree.
pub fn homogeneous_parts(phi: &Cochain) -> BTreeMap<i64, Cochain> {
    let mut out: BTreeMap<i64, Cochain> = BTreeMap::new();
    for (k, c) in &phi.terms {
        out.entry(k.cc_degree()).or_insert_with(|| Cochain::zero(phi.n)).add_term(k.clone(), c.clone());
    }
    out
}

/// [φ, ψ] + (−1)^{|φ||ψ|}[ψ, φ], summed over homogeneous parts; zero when the bracket is graded antisymmetric.
pub fn antisymmetry_defect(phi: &Cochain, psi: &Cochain) -> Cochain {
    let mut acc = Cochain::zero(phi.n);
    for (p, x) in homogeneous_parts(phi) {
        for (q, y) in homogeneous_parts(psi) {
            let t = gerstenhaber(&x, &y).add(&gerstenhaber(&y, &x).scale(&Rat::from_int(sgn(p * q) as i64)));
            acc = acc.add(&t);
        }
    }
    acc
}

/// [φ,[ψ,χ]] − [[φ,ψ],χ] − (−1)^{|φ||ψ|}[ψ,[φ,χ]] over homogeneous parts.
pub fn jacobi_defect(phi: &Cochain, psi: &Cochain, chi: &Cochain) -> Cochain {
    let mut acc = Cochain::zero(phi.n);
    for (p, x) in homogeneous_parts(phi) {
        for (q, y) in homogeneous_parts(psi) {
            let lhs = gerstenhaber(&x, &gerstenhaber(&y, chi));
            let r1 = gerstenhaber(&gerstenhaber(&x, &y), chi);
            let r2 = gerstenhaber(&y, &gerstenhaber(&x, chi)).scale(&Rat::from_int(sgn(p * q) as i64));
            acc = acc.add(&lhs.sub(&r1).sub(&r2));
        }
    }
    acc
}

/// ∂α + ½[α, α], truncated to arity ≤ `max_arity`.
pub fn mc_residual(alpha: &Cochain, max_arity: usize) -> Cochain {
    let d = hochschild_d(&alpha.truncate_arity(max_arity.saturating_sub(1)));
    let br = gerstenhaber_upto(alpha, alpha, max_arity);
    d.add(&br.scale(&Rat::new(1, 2))).truncate_arity(max_arity)
}

/// Element of ℂ[V]⊗Λ(V), keyed by (monomial, vector mask, ħ-power).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyVector {
    pub n: usize,
    pub terms: BTreeMap<(Monomial, Mask, u8), Rat>,
}

impl PolyVector {
    pub fn zero(n: usize) -> PolyVector {
        PolyVector { n, terms: BTreeMap::new() }
    }

    pub fn term(n: usize, m: Monomial, mask: Mask, c: Rat) -> PolyVector {
        let mut p = PolyVector::zero(n);
        p.add_term(m, mask, 0, c);
        p
    }

    pub fn from_poly(n: usize, p: &Poly, mask: Mask) -> PolyVector {
        let mut r = PolyVector::zero(n);
        for (m, c) in &p.terms {
            r.add_term(*m, mask, 0, c.clone());
        }
        r
    }

    pub fn add_term(&mut self, m: Monomial, mask: Mask, h: u8, c: Rat) {
        if c.is_zero() {
            return;
        }
        let k = (m, mask, h);
        let e = self.terms.entry(k).or_insert(Rat::ZERO);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &PolyVector) -> PolyVector {
        let mut r = self.clone();
        for ((m, mask, h), c) in &o.terms {
            r.add_term(*m, *mask, *h, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> PolyVector {
        let mut r = PolyVector::zero(self.n);
        for ((m, mask, h), x) in &self.terms {
            r.add_term(*m, *mask, *h, x * c);
        }
        r
    }

    pub fn neg(&self) -> PolyVector {
        self.scale(&-Rat::ONE)
    }

    /// Coefficient polynomial of ξ_mask, forgetting ħ.
    pub fn component(&self, mask: Mask) -> Poly {
        let mut p = Poly::zero();
        for ((m, k, _), c) in &self.terms {
            if *k == mask {
                p.add_term(*m, c.clone());
            }
        }
        p
    }

    /// Drop ħ-tags.
    pub fn forget_hbar(&self) -> PolyVector {
        let mut r = PolyVector::zero(self.n);
        for ((m, mask, _), c) in &self.terms {
            r.add_term(*m, *mask, 0, c.clone());
        }
        r
    }

    /// Keep terms of Sym-degree < `order`.
    pub fn truncate(&self, order: u32) -> PolyVector {
        PolyVector { n: self.n, terms: self.terms.iter().filter(|((m, _, _), _)| m.degree() < order).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn fmt_plain(&self) -> String {
        fmt_poly_terms(self.terms.iter().map(|((m, mask, h), c)| {
            let mut parts = Vec::new();
            if *m != Monomial::ONE {
                parts.push(m.fmt_vars(self.n, "v"));
            }
            if *mask != 0 {
                parts.push(fmt_mask(*mask, "xi"));
            }
            if *h != 0 {
                parts.push(format!("h^{h}"));
            }
            let s = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
            (s, c)
        }))
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_plain())
    }
}

/// HKR map: Σ over index tuples of v_{k_i}⋯v_{k₁} φ(ξ_{k_i}, …, ξ_{k₁}).
pub fn hkr(phi: &Cochain) -> PolyVector {
    let mut r = PolyVector::zero(phi.n);
    for (k, c) in &phi.terms {
        if k.inputs.iter().all(|m| popcount(*m) == 1) {
            let mut e = [0u8; MAX_VARS];
            for m in &k.inputs {
                e[m.trailing_zeros() as usize] += 1;
            }
            r.add_term(Monomial(e), k.out, k.hbar, c.clone());
        }
    }
    r
}

/// Schouten bracket, termwise as displayed for f ξ_I and g ξ_J with increasing I, J.
pub fn schouten(p: &PolyVector, q: &PolyVector) -> PolyVector {
    let n = p.n;
    let mut r = PolyVector::zero(n);
    for ((fm, fi, fh), fc) in &p.terms {
        let ii = crate::scalars::mask_indices(*fi);
        let k = ii.len() as i64;
        for ((gm, gj, gh), gc) in &q.terms {
            let jj = crate::scalars::mask_indices(*gj);
            let l = jj.len() as i64;
            let h = fh + gh;
            for (q0, &iq) in ii.iter().enumerate() {
                let qi = q0 as i64 + 1;
                let Some((e, gd)) = gm.div_var(iq - 1) else { continue };
                let rest = *fi & !(1 << (iq - 1));
                let s = mask_sign(rest, *gj);
                if s == 0 {
                    continue;
                }
                let coef = (fc * gc * Rat::from_int(e as i64)).signed(s * sgn(k - qi - 1));
                r.add_term(fm.mul(&gd), rest | gj, h, coef);
            }
            for (q0, &jq) in jj.iter().enumerate() {
                let qj = q0 as i64 + 1;
                let Some((e, fd)) = fm.div_var(jq - 1) else { continue };
                let rest = *gj & !(1 << (jq - 1));
                let s = mask_sign(rest, *fi);
                if s == 0 {
                    continue;
                }
                let coef = (fc * gc * Rat::from_int(e as i64)).signed(s * sgn(l - qj + (k - 1) * (l - 1)));
                r.add_term(gm.mul(&fd), rest | fi, h, coef);
            }
        }
    }
    r
}

/// ι_{dW} P with left contraction: ι_{dW}(f ξ_J) = Σ_q (−1)^{q−1} f ∂_{j_q}W ξ_{J∖j_q}.
pub fn koszul_dw(p: &PolyVector, w: &Poly) -> PolyVector {
    let n = p.n;
    let dw: Vec<Poly> = (0..n).map(|k| w.derivative(k)).collect();
    let mut r = PolyVector::zero(n);
    for ((m, mask, h), c) in &p.terms {
        for (q0, j) in crate::scalars::mask_indices(*mask).into_iter().enumerate() {
            let rest = mask & !(1 << (j - 1));
            let s = parity_sign(q0 as u32);
            for (dm, dc) in &dw[j - 1].terms {
                r.add_term(m.mul(dm), rest, *h, (c * dc).signed(s));
            }
        }
    }
    r
}

/// Counts of monomials in `n` variables of degree `i`, by weight.
fn sym_weight_counts(n: usize, i: u32) -> HashMap<Weight, u64> {
    // Dynamic programme over variables: (degree used, weight) → count.
    let mut cur: HashMap<(u32, Weight), u64> = HashMap::new();
    cur.insert((0, Weight::zero(n)), 1);
    for k in 0..n {
        let mut next: HashMap<(u32, Weight), u64> = HashMap::new();
        for ((deg, w), cnt) in &cur {
            for e in 0..=(i - deg) {
                let mut v = vec![0i64; n];
                v[k] = -(e as i64);
                let w2 = w.add(&Weight::from_ints(&v));
                *next.entry((deg + e, w2)).or_default() += cnt;
            }
        }
        cur = next;
    }
    let mut out = HashMap::new();
    for ((deg, w), c) in cur {
        if deg == i {
            *out.entry(w).or_default() += c;
        }
    }
    out
}

fn masks_of_size(n: usize, j: u32) -> Vec<Mask> {
    (0..(1u16 << n)).map(|m| m as Mask).filter(|m| popcount(*m) == j).collect()
}

/// dim (Sym^i(V^∨)⊗Λ^j(V))^G for the diagonal group G ⊂ SL(V) of fifth roots of unity.
pub fn invariant_dim(n: usize, i: u32, j: u32) -> u64 {
    let sym = sym_weight_counts(n, i);
    let mut total = 0;
    for m in masks_of_size(n, j) {
        let wm = mask_weight(ExtMask { bits: m, side: Side::Vectors }, n);
        for (w, c) in &sym {
            if w.add(&wm).is_diagonal() {
                total += c;
            }
        }
    }
    total
}

/// dim Hom^j(A^{⊗arity}, A)^G: basis maps with |out| − Σ|in| = j and balanced weight.
pub fn hom_invariant_dim(n: usize, arity: usize, j: i64) -> u64 {
    let dim = 1usize << n;
    // Convolve the input side: (total size, weight) → count.
    let mut cur: HashMap<(i64, Weight), u64> = HashMap::new();
    cur.insert((0, Weight::zero(n)), 1);
    for _ in 0..arity {
        let mut next: HashMap<(i64, Weight), u64> = HashMap::new();
        for ((s, w), cnt) in &cur {
            for m in 0..dim {
                let m = m as Mask;
                let wm = mask_weight(ExtMask { bits: m, side: Side::Vectors }, n);
                *next.entry((s + popcount(m) as i64, w.add(&wm))).or_default() += cnt;
            }
        }
        cur = next;
    }
    let mut total = 0;
    for out in 0..dim {
        let out = out as Mask;
        let wo = mask_weight(ExtMask { bits: out, side: Side::Vectors }, n);
        for ((s, w), cnt) in &cur {
            if popcount(out) as i64 - s == j && wo.sub(w).is_diagonal() {
                total += cnt;
            }
        }
    }
    total
}

/// Membership tests for the degree-d summands of the two graded Lie algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreePredicates {
    /// 2i + j − 4k = 3d + 3, k ≥ 0, i ≥ d + 2.
    pub in_polyvector_algebra: bool,
    /// 3i + j − 4k = 3d + 3, k ≥ 0, i ≥ d + 2.
    pub in_hochschild_algebra: bool,
    /// 2i + j + d + 1 ≡ 0 mod 4.
    pub parity_condition: bool,
}

pub fn degree_predicates(d: i64, i: i64, j: i64, k: i64) -> DegreePredicates {
    let range = k >= 0 && i >= d + 2;
    DegreePredicates {
        in_polyvector_algebra: range && 2 * i + j - 4 * k == 3 * d + 3,
        in_hochschild_algebra: range && 3 * i + j - 4 * k == 3 * d + 3,
        parity_condition: (2 * i + j + d + 1).rem_euclid(4) == 0,
    }
}

/// Weight of a polyvector term, used for equivariance bookkeeping.
pub fn polyvector_term_weight(n: usize, m: &Monomial, mask: Mask) -> Weight {
    monomial_weight(m, n).add(&mask_weight(ExtMask { bits: mask, side: Side::Vectors }, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::mask_of;

    #[test]
    fn d_squared_on_product_and_identity() {
        let m = Cochain::product(2);
        assert!(hochschild_d(&hochschild_d(&m)).is_zero());
        let id = Cochain::identity(2);
        assert!(hochschild_d(&hochschild_d(&id)).is_zero());
    }

    #[test]
    fn d_of_identity_on_pair() {
        // |id| = 0: (∂ id)(a₂,a₁) = (−1)^{|a₁|+1} id(a₂a₁) + (−1)^{|a₁|+2} a₂a₁ + (−1)^{|a₁|} a₂a₁.
        let d = hochschild_d(&Cochain::identity(3));
        let v = d.eval(&[mask_of(&[1]), mask_of(&[2])]);
        // a₁ = ξ₂ odd: +ξ₁ξ₂ − ξ₁ξ₂ − ξ₁ξ₂ = −ξ₁ξ₂.
        assert_eq!(v.get(&(0, 0b11)), Some(&-Rat::ONE));
    }

    #[test]
    fn d_of_constant() {
        // |c| = 0; (∂c)(a) = (−1)^{1} a∧ξ₁ + (−1)^{−(|a|−1)+1} ξ₁∧a, which cancels
        // because Λ(V) is graded commutative.
        let c = Cochain::single(3, vec![], mask_of(&[1]), Rat::ONE);
        assert!(hochschild_d(&c).is_zero());
        let c = Cochain::single(3, vec![], mask_of(&[1, 2]), Rat::ONE);
        assert!(hochschild_d(&c).is_zero());
    }

    #[test]
    fn hkr_examples() {
        let phi = Cochain::single(3, vec![4, 2, 1], 0, -Rat::ONE);
        assert_eq!(hkr(&phi), PolyVector::term(3, Monomial::from_exps(&[1, 1, 1]), 0, -Rat::ONE));
        assert!(hkr(&Cochain::product(3)).is_zero());
        let diag = Cochain::single(3, vec![1; 5], 0, Rat::ONE);
        assert_eq!(hkr(&diag), PolyVector::term(3, Monomial::from_exps(&[5, 0, 0]), 0, Rat::ONE));
    }

    #[test]
    fn schouten_first_example() {
        let xi1 = PolyVector::term(3, Monomial::ONE, 1, Rat::ONE);
        let v1 = PolyVector::term(3, Monomial::var(0), 0, Rat::ONE);
        assert_eq!(schouten(&xi1, &v1), PolyVector::term(3, Monomial::ONE, 0, -Rat::ONE));
        assert_eq!(schouten(&v1, &xi1), PolyVector::term(3, Monomial::ONE, 0, Rat::ONE));
    }

    #[test]
    fn koszul_examples() {
        let w = crate::koszul::quintic_w();
        let top = PolyVector::term(3, Monomial::ONE, 0b111, Rat::ONE);
        assert!(koszul_dw(&koszul_dw(&top, &w), &w).is_zero());
        let xi1 = PolyVector::term(3, Monomial::ONE, 1, Rat::ONE);
        assert_eq!(koszul_dw(&xi1, &w), PolyVector::from_poly(3, &w.derivative(0), 0));
        let x23 = PolyVector::term(3, Monomial::ONE, 0b110, Rat::ONE);
        let expect = PolyVector::from_poly(3, &w.derivative(1), 0b100).add(&PolyVector::from_poly(3, &w.derivative(2).neg(), 0b010));
        assert_eq!(koszul_dw(&x23, &w), expect);
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(invariant_dim(3, 3, 0), 1);
        assert_eq!(invariant_dim(3, 4, 2), 3);
        assert_eq!(invariant_dim(3, 5, 0), 3);
        assert_eq!(hom_invariant_dim(3, 3, 1), 0);
        assert_eq!(hom_invariant_dim(3, 3, -2), 0);
    }

    #[test]
    fn degree_predicate_examples() {
        assert!(degree_predicates(1, 3, 0, 0).in_polyvector_algebra);
        assert!(!degree_predicates(1, 3, 0, 0).in_hochschild_algebra);
        assert!(degree_predicates(1, 3, -3, 0).in_hochschild_algebra);
        assert!(degree_predicates(1, 3, 0, 0).parity_condition);
    }
}
