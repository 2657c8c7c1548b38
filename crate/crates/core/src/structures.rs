//! A∞-structures on Λ(V): tables, gradings, verification and the semidirect product.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::hochschild::{mc_residual, Cochain, CochainKey};
use crate::scalars::{cyc5_mul, parity_sign, popcount, vec_mask_weight, Coeff, Cyc5, Mask, Rat, Weight};
use crate::transfer::{index_shift, Table, TransferResult};

#[derive(Debug, Error, PartialEq)]
pub enum StructureError {
    #[error("structure is not equivariant: constant {inputs:?} -> {out} has weight {weight:?}")]
    NotEquivariant { inputs: Vec<Mask>, out: Mask, weight: Vec<u8> },
    #[error("group generator {0:?} does not annihilate the diagonal weight")]
    NotSpecialLinear(Vec<i64>),
}

/// Sparse structure constants μ^d_k on the basis of Λ(V).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AInftyStructure {
    pub n: usize,
    pub tables: BTreeMap<(usize, u8), Table>,
}

impl fmt::Debug for AInftyStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AInftyStructure(n={}) {{", self.n)?;
        for ((d, k), t) in &self.tables {
            write!(f, " ({d},{k}): {}", t.len())?;
        }
        write!(f, " }}")
    }
}

fn mu2_table(n: usize) -> Table {
    let m = Cochain::product(n);
    m.terms.into_iter().map(|(k, c)| ((k.inputs, k.out), c)).collect()
}

impl AInftyStructure {
    /// The exterior algebra with μ² the signed wedge product and nothing else.
    pub fn wedge(n: usize) -> AInftyStructure {
        let mut tables = BTreeMap::new();
        tables.insert((2, 0), mu2_table(n));
        AInftyStructure { n, tables }
    }

    pub fn from_transfer(r: &TransferResult) -> AInftyStructure {
        AInftyStructure { n: r.n, tables: r.tables.clone() }
    }

    pub fn max_arity(&self) -> usize {
        self.tables.keys().map(|(d, _)| *d).max().unwrap_or(0)
    }

    pub fn table(&self, d: usize, k: u8) -> Option<&Table> {
        self.tables.get(&(d, k))
    }

    /// Keep only arities ≤ d.
    pub fn truncate(&self, d: usize) -> AInftyStructure {
        AInftyStructure { n: self.n, tables: self.tables.iter().filter(|((a, _), _)| *a <= d).map(|(k, t)| (*k, t.clone())).collect() }
    }

    /// μ^d with all ħ-powers summed, on basis inputs.
    pub fn eval(&self, inputs: &[Mask]) -> BTreeMap<Mask, Rat> {
        let d = inputs.len();
        let mut out: BTreeMap<Mask, Rat> = BTreeMap::new();
        for ((dd, _), t) in &self.tables {
            if *dd != d {
                continue;
            }
            let lo = (inputs.to_vec(), 0u8);
            for ((ins, o), c) in t.range(lo..) {
                if ins.as_slice() != inputs {
                    break;
                }
                *out.entry(*o).or_insert(Rat::ZERO) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn constants(&self) -> impl Iterator<Item = (usize, u8, &Vec<Mask>, Mask, &Rat)> {
        self.tables.iter().flat_map(|((d, k), t)| t.iter().map(move |((i, o), c)| (*d, *k, i, *o, c)))
    }
}

/// The Hochschild cochain α with α² = μ² − m and α^j = μ^j otherwise.
pub fn to_mc(mu: &AInftyStructure) -> Cochain {
    let mut a = Cochain::zero(mu.n);
    for ((_, k), t) in &mu.tables {
        for ((ins, o), c) in t {
            a.add_term(CochainKey { inputs: ins.clone(), hbar: *k, out: *o }, c.clone());
        }
    }
    let m = Cochain::product(mu.n);
    a.sub(&m)
}

pub fn from_mc(alpha: &Cochain) -> AInftyStructure {
    let full = alpha.add(&Cochain::product(alpha.n));
    let mut tables: BTreeMap<(usize, u8), Table> = BTreeMap::new();
    for (k, c) in full.terms {
        tables.entry((k.inputs.len(), k.hbar)).or_default().insert((k.inputs, k.out), c);
    }
    AInftyStructure { n: alpha.n, tables }
}

/// Result of an A∞ relation check.
#[derive(Clone, Debug, Default)]
pub struct AInftyReport {
    pub max_arity: usize,
    pub residual_terms: usize,
    /// Smallest failing (inputs, ħ, output, residual) if any.
    pub first_failure: Option<(Vec<Mask>, u8, Mask, Rat)>,
    /// Zero-residual check per arity.
    pub per_arity: BTreeMap<usize, bool>,
}

impl AInftyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for AInftyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, ok) in &self.per_arity {
            writeln!(f, "arity {d}: {}", if *ok { "ok" } else { "FAIL" })?;
        }
        match &self.first_failure {
            None => write!(f, "Maurer-Cartan residual vanishes through arity {}", self.max_arity),
            Some((i, h, o, c)) => write!(f, "first failure: inputs {i:?}, hbar^{h}, output {o:#b}, residual {c}"),
        }
    }
}

/// Check ∂α + ½[α, α] = 0 through arity D for α = to_mc(μ).
pub fn verify_ainfty(mu: &AInftyStructure, max_arity: usize) -> AInftyReport {
    let alpha = to_mc(&mu.truncate(max_arity.saturating_sub(1).max(2)));
    let res = mc_residual(&alpha, max_arity);
    let mut rep = AInftyReport { max_arity, residual_terms: res.terms.len(), ..Default::default() };
    for d in 0..=max_arity {
        rep.per_arity.insert(d, true);
    }
    if let Some((k, c)) = res.terms.iter().next() {
        rep.first_failure = Some((k.inputs.clone(), k.hbar, k.out, c.clone()));
    }
    for k in res.terms.keys() {
        rep.per_arity.insert(k.arity(), false);
    }
    rep
}

/// Generic finite A∞ data over a coefficient ring, used for direct relation checks.
pub trait FiniteAInfty: Sync {
    type C: Coeff;
    fn basis_len(&self) -> usize;
    fn degree(&self, x: usize) -> u32;
    fn max_arity(&self) -> usize;
    /// μ^d on basis inputs in written order; returns (output index, coefficient).
    fn mu(&self, inputs: &[usize]) -> Vec<(usize, Self::C)>;
}

/// Σ (−1)^{✠} μ(a_d, …, μ(a_{s+r}, …, a_{s+1}), a_s, …, a₁) on one tuple,
/// with ✠ = Σ_{i≤s}(|a_i| − 1).
pub fn ainfty_relation<S: FiniteAInfty>(s: &S, inputs: &[usize]) -> BTreeMap<usize, S::C> {
    let d = inputs.len();
    let mut acc: BTreeMap<usize, S::C> = BTreeMap::new();
    for r in 1..=d {
        for sidx in 0..=(d - r) {
            // inner occupies written positions [d − sidx − r, d − sidx)
            let start = d - sidx - r;
            let inner = &inputs[start..start + r];
            let right = &inputs[start + r..];
            let star: i64 = right.iter().map(|x| s.degree(*x) as i64 - 1).sum();
            let sign = parity_sign(star.rem_euclid(2) as u32);
            for (o, c) in s.mu(inner) {
                let mut outer = Vec::with_capacity(d - r + 1);
                outer.extend_from_slice(&inputs[..start]);
                outer.push(o);
                outer.extend_from_slice(right);
                for (o2, c2) in s.mu(&outer) {
                    let mut v = c.mul(&c2);
                    if sign < 0 {
                        v = v.neg();
                    }
                    let e = acc.entry(o2).or_insert_with(S::C::zero);
                    *e = e.add(&v);
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Check the A∞ relations for every tuple of length ≤ `max_arity`; returns the first failing tuple.
pub fn check_relations<S: FiniteAInfty>(s: &S, max_arity: usize) -> Option<Vec<usize>> {
    let b = s.basis_len();
    for d in 1..=max_arity {
        let count = b.pow(d as u32);
        let fail = (0..count).into_par_iter().find_first(|idx| {
            let mut inputs = vec![0; d];
            let mut x = *idx;
            for slot in inputs.iter_mut().rev() {
                *slot = x % b;
                x /= b;
            }
            !ainfty_relation(s, &inputs).is_empty()
        });
        if let Some(idx) = fail {
            let mut inputs = vec![0; d];
            let mut x = idx;
            for slot in inputs.iter_mut().rev() {
                *slot = x % b;
                x /= b;
            }
            return Some(inputs);
        }
    }
    None
}

/// Direct relation view of an [`AInftyStructure`] (ħ-powers summed).
pub struct DirectView<'a> {
    pub mu: &'a AInftyStructure,
    pub max_arity: usize,
}

impl FiniteAInfty for DirectView<'_> {
    type C = Rat;
    fn basis_len(&self) -> usize {
        1 << self.mu.n
    }
    fn degree(&self, x: usize) -> u32 {
        popcount(x as Mask)
    }
    fn max_arity(&self) -> usize {
        self.max_arity
    }
    fn mu(&self, inputs: &[usize]) -> Vec<(usize, Rat)> {
        if inputs.len() > self.max_arity {
            return Vec::new();
        }
        let ins: Vec<Mask> = inputs.iter().map(|x| *x as Mask).collect();
        self.mu.eval(&ins).into_iter().map(|(o, c)| (o as usize, c)).collect()
    }
}

/// Violations of a grading law.
#[derive(Clone, Debug, Default)]
pub struct GradingReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Σ weight(inputs) − weight(output) must lie in the diagonal ⟨(1,…,1)⟩.
pub fn check_weights(mu: &AInftyStructure) -> GradingReport {
    let mut rep = GradingReport::default();
    for (d, k, ins, out, _) in mu.constants() {
        rep.checked += 1;
        let w = constant_weight(mu.n, ins, out);
        if !w.is_diagonal() {
            rep.violations.push(format!("mu^{d}_{k} {ins:?} -> {out:#b}: weight {w:?}"));
        }
    }
    rep
}

/// Σ weight(inputs) − weight(output).
pub fn constant_weight(n: usize, ins: &[Mask], out: Mask) -> Weight {
    let mut w = Weight::zero(n);
    for m in ins {
        w = w.add(&vec_mask_weight(*m, n));
    }
    w.sub(&vec_mask_weight(out, n))
}

/// |out| − Σ|in| = 6 − 3d + 4k (three variables).
pub fn check_index_degrees(mu: &AInftyStructure) -> GradingReport {
    let mut rep = GradingReport::default();
    for (d, k, ins, out, _) in mu.constants() {
        rep.checked += 1;
        let expect = 6 - 3 * d as i64 + 4 * k as i64;
        let got = index_shift(ins, out);
        if got != expect {
            rep.violations.push(format!("mu^{d}_{k} {ins:?} -> {out:#b}: shift {got}, expected {expect}"));
        }
    }
    rep
}

/// Diagonal subgroup of SL(V) given by weight covectors mod 5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl GroupSpec {
    /// Z = ⟨diag(ζ, ζ, ζ³)⟩.
    pub fn z_113() -> GroupSpec {
        GroupSpec { n: 3, generators: vec![vec![1, 1, 3]] }
    }

    pub fn trivial(n: usize) -> GroupSpec {
        GroupSpec { n, generators: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        for g in &self.generators {
            if g.iter().sum::<i64>().rem_euclid(5) != 0 {
                return Err(StructureError::NotSpecialLinear(g.clone()));
            }
        }
        Ok(())
    }

    /// All group elements as covectors mod 5 (sorted, deduplicated).
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; self.n]);
        loop {
            let mut grew = false;
            let cur: Vec<Vec<i64>> = set.iter().cloned().collect();
            for e in &cur {
                for g in &self.generators {
                    let s: Vec<i64> = (0..self.n).map(|i| (e[i] + g[i]).rem_euclid(5)).collect();
                    grew |= set.insert(s);
                }
            }
            if !grew {
                break;
            }
        }
        set.into_iter().collect()
    }
}

/// Character value exponent: z acts on ξ_J by ζ^{⟨z, e_J⟩}.
fn character(z: &[i64], m: Mask) -> i64 {
    (0..z.len()).filter(|i| m & (1 << i) != 0).map(|i| z[i]).sum::<i64>().rem_euclid(5)
}

/// A ⋊ Z with basis (a, z) and coefficients in ℚ(ζ).
pub struct SemidirectStructure<'a> {
    pub base: &'a AInftyStructure,
    pub elements: Vec<Vec<i64>>,
    pub max_arity: usize,
}

impl SemidirectStructure<'_> {
    fn split(&self, x: usize) -> (Mask, usize) {
        let g = self.elements.len();
        ((x / g) as Mask, x % g)
    }

    fn join(&self, a: Mask, z: usize) -> usize {
        a as usize * self.elements.len() + z
    }

    fn add_elems(&self, a: usize, b: usize) -> usize {
        let n = self.base.n;
        let s: Vec<i64> = (0..n).map(|i| (self.elements[a][i] + self.elements[b][i]).rem_euclid(5)).collect();
        self.elements.iter().position(|e| *e == s).expect("closed under addition")
    }
}

/// Build A ⋊ Z after checking Z-equivariance of the base structure.
pub fn semidirect<'a>(mu: &'a AInftyStructure, z: &GroupSpec, max_arity: usize) -> Result<SemidirectStructure<'a>, StructureError> {
    z.validate()?;
    for (_, _, ins, out, _) in mu.constants() {
        let w = constant_weight(mu.n, ins, out);
        for g in &z.generators {
            if w.pair(g) != 0 {
                return Err(StructureError::NotEquivariant { inputs: ins.clone(), out, weight: w.as_slice().to_vec() });
            }
        }
    }
    Ok(SemidirectStructure { base: mu, elements: z.elements(), max_arity })
}

impl FiniteAInfty for SemidirectStructure<'_> {
    type C = Cyc5;
    fn basis_len(&self) -> usize {
        (1 << self.base.n) * self.elements.len()
    }
    fn degree(&self, x: usize) -> u32 {
        popcount(self.split(x).0)
    }
    fn max_arity(&self) -> usize {
        self.max_arity
    }
    /// μ((a_d,z_d), …, (a₁,z₁)) = (μ(a_d, z_d·a_{d−1}, (z_d z_{d−1})·a_{d−2}, …), z_d⋯z₁).
    fn mu(&self, inputs: &[usize]) -> Vec<(usize, Cyc5)> {
        if inputs.len() > self.max_arity || inputs.is_empty() {
            return Vec::new();
        }
        let mut masks = Vec::with_capacity(inputs.len());
        let mut acc_z = self.elements.iter().position(|e| e.iter().all(|x| *x == 0)).unwrap();
        let mut phase = 0i64;
        for (pos, x) in inputs.iter().enumerate() {
            let (a, z) = self.split(*x);
            if pos > 0 {
                phase += character(&self.elements[acc_z], a);
            }
            masks.push(a);
            acc_z = self.add_elems(acc_z, z);
        }
        let factor = Cyc5::zeta_pow(phase);
        self.base
            .eval(&masks)
            .into_iter()
            .map(|(o, c)| (self.join(o, acc_z), cyc5_mul(&factor, &Cyc5::from_rat(c))))
            .collect()
    }
}

/// Explicit conjugation check: μ(g·a_d, …, g·a₁) = g·μ(a_d, …, a₁) over ℚ(ζ).
pub fn equivariant_under(mu: &AInftyStructure, g: &[i64], max_arity: usize) -> bool {
    for (d, _, ins, out, c) in mu.constants() {
        if d > max_arity {
            continue;
        }
        let lhs_phase: i64 = ins.iter().map(|m| character(g, *m)).sum();
        let rhs_phase = character(g, out);
        let lhs = Cyc5::zeta_pow(lhs_phase).scale(c);
        let rhs = Cyc5::zeta_pow(rhs_phase).scale(c);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Check associativity of the arity-2 part alone on the full basis.
pub fn arity2_associative<S: FiniteAInfty>(s: &S) -> bool {
    let b = s.basis_len();
    (0..b * b * b).into_par_iter().all(|idx| {
        let (x, y, z) = (idx / (b * b), (idx / b) % b, idx % b);
        // μ²(μ²(x,y),z) with the A∞ sign against μ²(x,μ²(y,z)).
        let mut acc: BTreeMap<usize, S::C> = BTreeMap::new();
        let sign_z = parity_sign((s.degree(z) + 1) % 2);
        for (o, c) in s.mu(&[x, y]) {
            for (o2, c2) in s.mu(&[o, z]) {
                let mut v = c.mul(&c2);
                if sign_z < 0 {
                    v = v.neg();
                }
                let e = acc.entry(o2).or_insert_with(S::C::zero);
                *e = e.add(&v);
            }
        }
        for (o, c) in s.mu(&[y, z]) {
            for (o2, c2) in s.mu(&[x, o]) {
                let e = acc.entry(o2).or_insert_with(S::C::zero);
                *e = e.add(&c.mul(&c2));
            }
        }
        acc.values().all(|c| c.is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_structure() {
        let w = AInftyStructure::wedge(3);
        assert!(to_mc(&w).is_zero());
        assert_eq!(from_mc(&to_mc(&w)), w);
        assert!(verify_ainfty(&w, 4).passed());
        assert!(check_relations(&DirectView { mu: &w, max_arity: 2 }, 4).is_none());
        assert!(check_index_degrees(&w).passed());
        assert!(check_weights(&w).passed());
    }

    #[test]
    fn group_elements() {
        assert_eq!(GroupSpec::z_113().elements().len(), 5);
        assert_eq!(GroupSpec::trivial(3).elements().len(), 1);
        assert!(GroupSpec { n: 3, generators: vec![vec![1, 0, 0]] }.validate().is_err());
    }

    #[test]
    fn semidirect_wedge_associative() {
        let w = AInftyStructure::wedge(3);
        let s = semidirect(&w, &GroupSpec::z_113(), 2).unwrap();
        assert_eq!(s.basis_len(), 40);
        assert!(arity2_associative(&s));
    }
}
