//! Λ(V), ℂ[V], and the Koszul dga B = End_{ℂ[V]}(Ω(V)).
//!
//! B has two interchangeable representations. [`BEndo`] is a sparse matrix
//! over polynomials indexed by covector masks, and [`BTensor`] is the tensor
//! form Ω(V)⊗Λ(V), in which f·dv_B⊗θ acts by δ ↦ ⟨θ, δ⟩·f·dv_B. The pairing is
//! the scalar part of the left contraction, ⟨θ, δ⟩ = (ι_θ δ)₀, with
//! ι_{ξ_k}(dv_{j₁}∧…∧dv_{j_p}) = Σ_q (−1)^{q−1} δ_{k j_q} dv_{j₁}∧…ŵ…∧dv_{j_p}
//! and ι_{θ₁∧θ₂} = ι_{θ₁}∘ι_{θ₂}. Consequently ⟨ξ_I, dv_I⟩ = (−1)^{p(p−1)/2}.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{mask_sign, parity_sign, popcount, reversal_sign, Mask, Monomial, Rat};

/// Element of Λ(V): vector mask → coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AElem {
    pub terms: BTreeMap<Mask, Rat>,
}

impl AElem {
    pub fn zero() -> AElem {
        AElem::default()
    }

    pub fn basis(m: Mask) -> AElem {
        AElem::term(m, Rat::ONE)
    }

    pub fn term(m: Mask, c: Rat) -> AElem {
        let mut a = AElem::zero();
        a.add_term(m, c);
        a
    }

    pub fn add_term(&mut self, m: Mask, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(Rat::ZERO);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &AElem) -> AElem {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> AElem {
        let mut r = AElem::zero();
        for (m, x) in &self.terms {
            r.add_term(*m, x * c);
        }
        r
    }

    pub fn coeff(&self, m: Mask) -> Rat {
        self.terms.get(&m).cloned().unwrap_or(Rat::ZERO)
    }

    /// Parity if homogeneous.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| popcount(*m) % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Debug for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("{c}*{}", fmt_mask(*m, "x"))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `xi1^xi3` style rendering of a mask; `1` for the empty mask.
pub fn fmt_mask(m: Mask, name: &str) -> String {
    if m == 0 {
        return "1".into();
    }
    crate::scalars::mask_indices(m)
        .iter()
        .map(|k| format!("{name}{k}"))
        .collect::<Vec<_>>()
        .join("^")
}

/// Exterior product a₂ ∧ a₁.
pub fn wedge_a(a2: &AElem, a1: &AElem) -> AElem {
    let mut r = AElem::zero();
    for (m2, c2) in &a2.terms {
        for (m1, c1) in &a1.terms {
            let s = mask_sign(*m2, *m1);
            if s != 0 {
                r.add_term(m2 | m1, (c2 * c1).signed(s));
            }
        }
    }
    r
}

/// The product μ²(a₂, a₁) = (−1)^{|a₁|} a₂ ∧ a₁, extended bilinearly.
pub fn mu2_standard(a2: &AElem, a1: &AElem) -> AElem {
    let mut r = AElem::zero();
    for (m2, c2) in &a2.terms {
        for (m1, c1) in &a1.terms {
            let s = mask_sign(*m2, *m1) * parity_sign(popcount(*m1));
            if s != 0 {
                r.add_term(m2 | m1, (c2 * c1).signed(s));
            }
        }
    }
    r
}

/// Polynomial in ℂ[V] with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(k: usize) -> Poly {
        Poly::monomial(Monomial::var(k), Rat::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(Rat::ZERO);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rat::ONE)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut r = Poly::zero();
        for (m, x) in &self.terms {
            r.add_term(*m, x * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    /// ∂f/∂v_k (0-based k).
    pub fn derivative(&self, k: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((e, q)) = m.div_var(k) {
                r.add_term(q, c * Rat::from_int(e as i64));
            }
        }
        r
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Drop all terms of degree ≥ n.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() < n).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn fmt_with(&self, n: usize) -> String {
        fmt_poly_terms(self.terms.iter().map(|(m, c)| (m.fmt_vars(n, "v"), c)))
    }
}

/// Render `c*m` pairs as a signed sum.
pub fn fmt_poly_terms<'a>(it: impl Iterator<Item = (String, &'a Rat)>) -> String {
    let mut out = String::new();
    for (m, c) in it {
        let neg = c.signum() < 0;
        let abs = if neg { -c } else { c.clone() };
        let body = if m == "1" {
            abs.to_string()
        } else if abs.is_one() {
            m
        } else {
            format!("{abs}*{m}")
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(crate::scalars::MAX_VARS))
    }
}

/// Monomial together with its ħ-power tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct HKey {
    pub mono: Monomial,
    pub hbar: u8,
}

/// Polynomial with ħ-tagged terms, kept as a sorted vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HPoly {
    pub terms: Vec<(HKey, Rat)>,
}

impl HPoly {
    pub fn zero() -> HPoly {
        HPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: Rat) -> HPoly {
        HPoly::term(Monomial::ONE, 0, c)
    }

    pub fn term(m: Monomial, hbar: u8, c: Rat) -> HPoly {
        if c.is_zero() {
            HPoly::zero()
        } else {
            HPoly { terms: vec![(HKey { mono: m, hbar }, c)] }
        }
    }

    pub fn from_poly(p: &Poly, hbar: u8) -> HPoly {
        HPoly { terms: p.terms.iter().map(|(m, c)| (HKey { mono: *m, hbar }, c.clone())).collect() }
    }

    /// Forget ħ-tags.
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in &self.terms {
            p.add_term(k.mono, c.clone());
        }
        p
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(mut v: Vec<(HKey, Rat)>) -> HPoly {
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(HKey, Rat)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((k, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        HPoly { terms: out }
    }

    pub fn add(&self, o: &HPoly) -> HPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        HPoly { terms: out }
    }

    pub fn scale(&self, c: &Rat) -> HPoly {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly { terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn neg(&self) -> HPoly {
        HPoly { terms: self.terms.iter().map(|(k, x)| (*k, -x)).collect() }
    }

    pub fn signed(&self, s: i32) -> HPoly {
        if s >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn mul(&self, o: &HPoly) -> HPoly {
        if self.is_zero() || o.is_zero() {
            return HPoly::zero();
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                v.push((HKey { mono: k1.mono.mul(&k2.mono), hbar: k1.hbar + k2.hbar }, c1 * c2));
            }
        }
        HPoly::from_terms(v)
    }

    pub fn min_sym_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(k, _)| k.mono.degree()).min()
    }

    /// Keep only terms of Sym-degree ≤ `max`.
    pub fn truncate_above(&self, max: u32) -> HPoly {
        HPoly { terms: self.terms.iter().filter(|(k, _)| k.mono.degree() <= max).cloned().collect() }
    }

    /// Constant (Sym-degree 0) terms, by ħ-power.
    pub fn constant_terms(&self) -> impl Iterator<Item = (u8, &Rat)> {
        self.terms.iter().filter(|(k, _)| k.mono == Monomial::ONE).map(|(k, c)| (k.hbar, c))
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = fmt_poly_terms(self.terms.iter().map(|(k, c)| {
            let m = k.mono.fmt_vars(crate::scalars::MAX_VARS, "v");
            let tag = match k.hbar {
                0 => m,
                h => {
                    if m == "1" {
                        format!("h^{h}")
                    } else {
                        format!("{m}*h^{h}")
                    }
                }
            };
            (tag, c)
        }));
        write!(f, "{s}")
    }
}

/// Key of a tensor term f·dv_B⊗ξ_I·ħ^m.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TKey {
    pub sym: Monomial,
    pub dual: Mask,
    pub vec: Mask,
    pub hbar: u8,
}

impl TKey {
    /// Degree 2i − j + k − 4m of the term.
    pub fn grading(&self) -> i64 {
        2 * self.sym.degree() as i64 - popcount(self.dual) as i64 + popcount(self.vec) as i64
            - 4 * self.hbar as i64
    }
}

/// Element of B in the tensor form Ω(V)⊗Λ(V).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BTensor {
    pub terms: BTreeMap<TKey, Rat>,
}

impl BTensor {
    pub fn zero() -> BTensor {
        BTensor::default()
    }

    pub fn term(sym: Monomial, dual: Mask, vec: Mask, hbar: u8, c: Rat) -> BTensor {
        let mut t = BTensor::zero();
        t.add_term(TKey { sym, dual, vec, hbar }, c);
        t
    }

    pub fn add_term(&mut self, k: TKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert(Rat::ZERO);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &BTensor) -> BTensor {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> BTensor {
        let mut r = BTensor::zero();
        for (k, x) in &self.terms {
            r.add_term(*k, x * c);
        }
        r
    }

    pub fn sub(&self, o: &BTensor) -> BTensor {
        self.add(&o.scale(&-Rat::ONE))
    }
}

impl fmt::Debug for BTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                format!(
                    "{c}*{:?}*{}(x){}*h^{}",
                    k.sym,
                    fmt_mask(k.dual, "dv"),
                    fmt_mask(k.vec, "xi"),
                    k.hbar
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of B as a sparse matrix over ħ-tagged polynomials.
///
/// Entry (row, col) is the coefficient of dv_row in the image of dv_col.
/// Entries are sorted by (row, col) and never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BEndo {
    pub n: usize,
    pub entries: Vec<(Mask, Mask, HPoly)>,
}

/// Parity of the matrix entry (row, col) as an endomorphism.
pub fn entry_parity(row: Mask, col: Mask) -> u32 {
    (popcount(row) + popcount(col)) % 2
}

impl BEndo {
    pub fn zero(n: usize) -> BEndo {
        BEndo { n, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> BEndo {
        let entries = (0..(1u16 << n)).map(|m| (m as Mask, m as Mask, HPoly::constant(Rat::ONE))).collect();
        BEndo { n, entries }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Build from unsorted entries, combining duplicates and dropping zeros.
    pub fn from_entries(n: usize, v: Vec<(Mask, Mask, HPoly)>) -> BEndo {
        let mut map: BTreeMap<(Mask, Mask), HPoly> = BTreeMap::new();
        for (r, c, p) in v {
            if p.is_zero() {
                continue;
            }
            match map.get_mut(&(r, c)) {
                Some(e) => *e = e.add(&p),
                None => {
                    map.insert((r, c), p);
                }
            }
        }
        BEndo { n, entries: map.into_iter().filter(|(_, p)| !p.is_zero()).map(|((r, c), p)| (r, c, p)).collect() }
    }

    pub fn entry(&self, row: Mask, col: Mask) -> HPoly {
        match self.entries.binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => HPoly::zero(),
        }
    }

    /// Entries in the given row.
    pub fn row(&self, row: Mask) -> &[(Mask, Mask, HPoly)] {
        let lo = self.entries.partition_point(|(r, _, _)| *r < row);
        let hi = self.entries.partition_point(|(r, _, _)| *r <= row);
        &self.entries[lo..hi]
    }

    /// Parity if homogeneous.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.entries.iter().map(|(r, c, _)| entry_parity(*r, *c));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, o: &BEndo) -> BEndo {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut v = self.entries.clone();
        v.extend(o.entries.iter().cloned());
        BEndo::from_entries(self.n, v)
    }

    pub fn scale(&self, c: &Rat) -> BEndo {
        BEndo::from_entries(self.n, self.entries.iter().map(|(r, k, p)| (*r, *k, p.scale(c))).collect())
    }

    pub fn neg(&self) -> BEndo {
        BEndo { n: self.n, entries: self.entries.iter().map(|(r, c, p)| (*r, *c, p.neg())).collect() }
    }

    pub fn sub(&self, o: &BEndo) -> BEndo {
        self.add(&o.neg())
    }

    /// b ↦ (−1)^{|b|} b, applied entrywise by entry parity.
    pub fn parity_twist(&self) -> BEndo {
        BEndo {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(r, c, p)| (*r, *c, p.signed(parity_sign(entry_parity(*r, *c)))))
                .collect(),
        }
    }

    /// Multiply every entry by the given sign of its parity: s_even or s_odd.
    pub fn sign_by_parity(&self, even: i32, odd: i32) -> BEndo {
        BEndo {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(r, c, p)| (*r, *c, p.signed(if entry_parity(*r, *c) == 0 { even } else { odd })))
                .collect(),
        }
    }

    /// Drop polynomial terms of Sym-degree above `max`.
    pub fn truncate_above(&self, max: u32) -> BEndo {
        BEndo {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(r, c, p)| (*r, *c, p.truncate_above(max)))
                .filter(|(_, _, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn min_sym_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|(_, _, p)| p.min_sym_degree()).min()
    }

    /// Sum of entries as scalar multiple of the identity, if it is one.
    pub fn as_scalar(&self) -> Option<HPoly> {
        let dim = self.dim();
        if self.entries.is_empty() {
            return Some(HPoly::zero());
        }
        if self.entries.len() != dim {
            return None;
        }
        let first = self.entries[0].2.clone();
        self.entries.iter().all(|(r, c, p)| r == c && *p == first).then_some(first)
    }

    pub fn hbar_max(&self) -> u8 {
        self.entries.iter().flat_map(|(_, _, p)| p.terms.iter().map(|(k, _)| k.hbar)).max().unwrap_or(0)
    }
}

impl fmt::Debug for BEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BEndo(n={}) {{", self.n)?;
        for (r, c, p) in &self.entries {
            writeln!(f, "  [{} <- {}] {:?}", fmt_mask(*r, "dv"), fmt_mask(*c, "dv"), p)?;
        }
        write!(f, "}}")
    }
}

/// Composition b₂∘b₁ of endomorphisms.
pub fn mult_b(b2: &BEndo, b1: &BEndo) -> BEndo {
    assert_eq!(b2.n, b1.n, "mismatched ranks");
    let mut v = Vec::new();
    for (r, m, p) in &b2.entries {
        for (_, c, q) in b1.row(*m) {
            v.push((*r, *c, p.mul(q)));
        }
    }
    BEndo::from_entries(b2.n, v)
}

/// Matrix entry sign attached to the tensor term f·dv_B⊗ξ_I.
fn pairing_sign(vec: Mask) -> i32 {
    reversal_sign(vec)
}

pub fn to_endo(n: usize, b: &BTensor) -> BEndo {
    let v = b
        .terms
        .iter()
        .map(|(k, c)| (k.dual, k.vec, HPoly::term(k.sym, k.hbar, c.signed(pairing_sign(k.vec)))))
        .collect();
    BEndo::from_entries(n, v)
}

pub fn to_tensor(b: &BEndo) -> BTensor {
    let mut t = BTensor::zero();
    for (r, c, p) in &b.entries {
        let s = pairing_sign(*c);
        for (k, x) in &p.terms {
            t.add_term(TKey { sym: k.mono, dual: *r, vec: *c, hbar: k.hbar }, x.signed(s));
        }
    }
    t
}

/// Odd one-form γ = Σ g_k dv_k with ħ-tagged coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneForm {
    pub n: usize,
    pub g: Vec<HPoly>,
}

impl OneForm {
    pub fn zero(n: usize) -> OneForm {
        OneForm { n, g: vec![HPoly::zero(); n] }
    }

    pub fn neg(&self) -> OneForm {
        OneForm { n: self.n, g: self.g.iter().map(HPoly::neg).collect() }
    }

    /// Smallest Sym-degree among all coefficients.
    pub fn min_sym_degree(&self) -> Option<u32> {
        self.g.iter().filter_map(HPoly::min_sym_degree).min()
    }

    /// γ(η) = Σ g_k v_k with ħ-tags forgotten.
    pub fn eval_euler(&self) -> Poly {
        let mut p = Poly::zero();
        for (k, g) in self.g.iter().enumerate() {
            p = p.add(&g.to_poly().mul(&Poly::var(k)));
        }
        p
    }
}

/// δ₀ = ι_η, the Koszul differential.
pub fn delta0(n: usize) -> BEndo {
    let mut v = Vec::new();
    for col in 0..(1u16 << n) {
        let col = col as Mask;
        for k in 0..n {
            if col & (1 << k) != 0 {
                let below = (col & ((1 << k) - 1)).count_ones();
                v.push((col & !(1 << k), col, HPoly::term(Monomial::var(k), 0, Rat::from_int(parity_sign(below) as i64))));
            }
        }
    }
    BEndo::from_entries(n, v)
}

/// The endomorphism −γ∧·.
pub fn minus_gamma_wedge(gamma: &OneForm) -> BEndo {
    let n = gamma.n;
    let mut v = Vec::new();
    for col in 0..(1u16 << n) {
        let col = col as Mask;
        for k in 0..n {
            let s = mask_sign(1 << k, col);
            if s != 0 && !gamma.g[k].is_zero() {
                v.push((col | (1 << k), col, gamma.g[k].signed(-s)));
            }
        }
    }
    BEndo::from_entries(n, v)
}

/// δ̃ = ι_η − γ∧·.
pub fn delta_deformed(gamma: &OneForm) -> BEndo {
    delta0(gamma.n).add(&minus_gamma_wedge(gamma))
}

/// Graded commutator [d, b] = d∘b − (−1)^{|b|} b∘d with an odd d.
pub fn odd_commutator(d: &BEndo, b: &BEndo) -> BEndo {
    mult_b(d, b).sub(&mult_b(&b.parity_twist(), d))
}

/// ∂b = δ₀∘b − (−1)^{|b|} b∘δ₀.
pub fn partial_b(b: &BEndo) -> BEndo {
    odd_commutator(&delta0(b.n), b)
}

/// (∂̃ − ∂)b, the graded commutator with −γ∧·.
pub fn deformation_part(gamma: &OneForm, b: &BEndo) -> BEndo {
    odd_commutator(&minus_gamma_wedge(gamma), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::mask_of;

    fn x(k: usize) -> AElem {
        AElem::basis(mask_of(&[k]))
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge_a(&x(1), &x(2)), AElem::basis(0b11));
        assert_eq!(wedge_a(&AElem::basis(0b11), &x(1)), AElem::zero());
        assert_eq!(wedge_a(&x(2), &x(1)), AElem::term(0b11, -Rat::ONE));
    }

    #[test]
    fn mu2_examples() {
        assert_eq!(mu2_standard(&x(1), &x(2)), AElem::term(0b11, -Rat::ONE));
        assert_eq!(mu2_standard(&x(1), &AElem::basis(0)), x(1));
        assert_eq!(mu2_standard(&AElem::basis(0), &AElem::basis(0b11)), AElem::basis(0b11));
    }

    #[test]
    fn identity_tensor() {
        let t = BTensor::term(Monomial::ONE, 0, 0, 0, Rat::ONE);
        // 1⊗1 acts as the projection onto the constant forms only; the identity is i(1).
        let e = to_endo(3, &t);
        assert_eq!(e.entries.len(), 1);
        assert_eq!(to_tensor(&e), t);
    }

    #[test]
    fn contraction_after_wedge_has_scalar_entry() {
        let a = to_endo(3, &BTensor::term(Monomial::ONE, 0, 1, 0, Rat::ONE));
        let b = to_endo(3, &BTensor::term(Monomial::ONE, 1, 0, 0, Rat::ONE));
        let ab = mult_b(&a, &b);
        assert!(!ab.entry(0, 0).is_zero());
        assert!(mult_b(&b, &b).is_zero());
    }

    #[test]
    fn delta0_examples() {
        let d = delta0(3);
        assert_eq!(d.entry(0, 1), HPoly::term(Monomial::var(0), 0, Rat::ONE));
        assert!(mult_b(&d, &d).is_zero());
        assert!(partial_b(&BEndo::identity(3)).is_zero());
    }

    #[test]
    fn single_dv1_factorization() {
        let mut g = OneForm::zero(3);
        g.g[0] = HPoly::constant(Rat::ONE);
        let d = delta_deformed(&g);
        let sq = mult_b(&d, &d);
        let s = sq.as_scalar().expect("scalar");
        assert_eq!(s, HPoly::term(Monomial::var(0), 0, -Rat::ONE));
    }
}
