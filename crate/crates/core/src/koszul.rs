//! Contraction data (i, p, h) between B and Λ(V), and the matrix factorization.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{
    delta_deformed, mult_b, partial_b, to_endo, to_tensor, AElem, BEndo, BTensor, HKey, HPoly,
    OneForm, Poly, TKey,
};
use crate::scalars::{mask_sign, popcount, reversal_sign, Mask, Monomial, Rat, MAX_VARS};

#[derive(Debug, Error, PartialEq)]
pub enum KoszulError {
    #[error("deformed differential squares to a non-scalar endomorphism")]
    NotScalar,
    #[error("W_eff = {found} is neither W nor -W")]
    SignMismatch { found: String },
    #[error("malformed conventions line: {0}")]
    Conventions(String),
}

/// i(θ) = Σ_J dv_J ⊗ ξ_{j_p}∧…∧ξ_{j_1}∧θ.
pub fn include_i(n: usize, a: &AElem) -> BTensor {
    let mut t = BTensor::zero();
    for (theta, c) in &a.terms {
        for j in 0..(1u16 << n) {
            let j = j as Mask;
            let s = mask_sign(j, *theta);
            if s == 0 {
                continue;
            }
            let s = s * reversal_sign(j);
            t.add_term(TKey { sym: Monomial::ONE, dual: j, vec: j | theta, hbar: 0 }, c.signed(s));
        }
    }
    t
}

/// i applied to a single basis element, as an endomorphism (equal to ι_θ).
pub fn include_endo(n: usize, theta: Mask) -> BEndo {
    to_endo(n, &include_i(n, &AElem::basis(theta)))
}

/// p: keep terms with trivial Sym and form parts, split by ħ-power.
pub fn project_p(b: &BTensor) -> BTreeMap<u8, AElem> {
    let mut out: BTreeMap<u8, AElem> = BTreeMap::new();
    for (k, c) in &b.terms {
        if k.sym == Monomial::ONE && k.dual == 0 {
            out.entry(k.hbar).or_default().add_term(k.vec, c.clone());
        }
    }
    out.retain(|_, a| !a.is_zero());
    out
}

/// p on the matrix form: (ħ-power, output mask, coefficient) triples.
pub fn project_endo(b: &BEndo) -> Vec<(u8, Mask, Rat)> {
    let mut out = Vec::new();
    for (_, c, p) in b.row(0) {
        let s = reversal_sign(*c);
        for (h, x) in p.constant_terms() {
            out.push((h, *c, x.signed(s)));
        }
    }
    out
}

/// p(X∘Y) computed from row ∅ of X and the constant parts of Y only.
pub fn project_product(x: &BEndo, y: &BEndo, y_sign: impl Fn(Mask, Mask) -> i32) -> Vec<(u8, Mask, Rat)> {
    let mut acc: BTreeMap<(u8, Mask), Rat> = BTreeMap::new();
    for (_, m, p) in x.row(0) {
        for (hx, cx) in p.constant_terms() {
            for (_, col, q) in y.row(*m) {
                let s = y_sign(*m, *col) * reversal_sign(*col);
                for (hy, cy) in q.constant_terms() {
                    *acc.entry((hx + hy, *col)).or_insert(Rat::ZERO) += (cx * cy).signed(s);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((h, m), c)| (h, m, c)).collect()
}

fn falling_coeff(w: u32, p: u32) -> Rat {
    // p! / (w (w+1) ⋯ (w+p))
    let mut num = Rat::ONE;
    for i in 1..=p {
        num = num * Rat::from_int(i as i64);
    }
    let mut den = Rat::ONE;
    for i in 0..=p {
        den = den * Rat::from_int((w + i) as i64);
    }
    num * den.recip().expect("positive weight")
}

/// Apply h to one tensor term, pushing the resulting tensor terms.
fn h_term(n: usize, k: &TKey, c: &Rat, out: &mut impl FnMut(TKey, Rat)) {
    let r = k.sym.degree();
    if r == 0 {
        return;
    }
    let w = r + popcount(k.dual);
    for var in 0..n {
        let Some((e, q)) = k.sym.div_var(var) else { continue };
        let s1 = mask_sign(1 << var, k.dual);
        if s1 == 0 {
            continue;
        }
        let form = k.dual | (1 << var);
        let base = c * Rat::from_int(e as i64 * s1 as i64);
        for j in 0..(1u16 << n) {
            let j = j as Mask;
            let s2 = mask_sign(form, j);
            if s2 == 0 {
                continue;
            }
            let s3 = mask_sign(j, k.vec);
            if s3 == 0 {
                continue;
            }
            let s = s2 * s3 * reversal_sign(j);
            let coef = (&base * falling_coeff(w, popcount(j))).signed(s);
            out(TKey { sym: q, dual: form | j, vec: j | k.vec, hbar: k.hbar }, coef);
        }
    }
}

/// h(f β⊗θ) = Σ_p p!/(w⋯(w+p)) Σ_J df∧β∧dv_J ⊗ ξ_{j_p}∧…∧ξ_{j_1}∧θ, w = deg f + |β|.
pub fn homotopy_h(n: usize, b: &BTensor) -> BTensor {
    let mut t = BTensor::zero();
    for (k, c) in &b.terms {
        h_term(n, k, c, &mut |k2, c2| t.add_term(k2, c2));
    }
    t
}

/// h on the matrix form.
pub fn homotopy_endo(b: &BEndo) -> BEndo {
    let n = b.n;
    let mut v: Vec<(Mask, Mask, HPoly)> = Vec::new();
    let mut buf: BTreeMap<(Mask, Mask), Vec<(HKey, Rat)>> = BTreeMap::new();
    for (row, col, p) in &b.entries {
        let s_in = reversal_sign(*col);
        for (hk, x) in &p.terms {
            let k = TKey { sym: hk.mono, dual: *row, vec: *col, hbar: hk.hbar };
            h_term(n, &k, &x.signed(s_in), &mut |k2, c2| {
                buf.entry((k2.dual, k2.vec))
                    .or_default()
                    .push((HKey { mono: k2.sym, hbar: k2.hbar }, c2.signed(reversal_sign(k2.vec))));
            });
        }
    }
    for ((r, c), terms) in buf {
        v.push((r, c, HPoly::from_terms(terms)));
    }
    BEndo::from_entries(n, v)
}

/// The cyclic coefficients g₁ = −v₂v₃/3 + ħv₁⁴ (and cyclic), for n = 3.
pub fn cyclic_gamma() -> OneForm {
    let mut g = Vec::new();
    for k in 0..3 {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        let mut cubic = [0u8; MAX_VARS];
        cubic[a] = 1;
        cubic[b] = 1;
        let mut quartic = [0u8; MAX_VARS];
        quartic[k] = 4;
        g.push(HPoly::from_terms(vec![
            (HKey { mono: Monomial(cubic), hbar: 0 }, Rat::new(-1, 3)),
            (HKey { mono: Monomial(quartic), hbar: 1 }, Rat::ONE),
        ]));
    }
    OneForm { n: 3, g }
}

/// W = −v₁v₂v₃ + v₁⁵ + v₂⁵ + v₃⁵.
pub fn quintic_w() -> Poly {
    let mut w = Poly::monomial(Monomial::from_exps(&[1, 1, 1]), -Rat::ONE);
    for k in 0..3 {
        let mut e = [0u8; 3];
        e[k] = 5;
        w.add_term(Monomial::from_exps(&e), Rat::ONE);
    }
    w
}

/// Returns W_eff = −γ(η) after checking δ̃² = W_eff·id.
pub fn matrix_factorization_check(gamma: &OneForm) -> Result<Poly, KoszulError> {
    let d = delta_deformed(gamma);
    let sq = mult_b(&d, &d);
    let s = sq.as_scalar().ok_or(KoszulError::NotScalar)?;
    let w_eff = gamma.eval_euler().neg();
    if s.to_poly() != w_eff {
        return Err(KoszulError::NotScalar);
    }
    Ok(w_eff)
}

/// Flip γ ↦ −γ when needed so that −γ(η) = W. Returns the flag.
pub fn sign_normalize_gamma(gamma: &OneForm, w: &Poly) -> Result<(OneForm, bool), KoszulError> {
    let w_eff = gamma.eval_euler().neg();
    if &w_eff == w {
        Ok((gamma.clone(), false))
    } else if w_eff.neg() == *w {
        Ok((gamma.neg(), true))
    } else {
        Err(KoszulError::SignMismatch { found: w_eff.fmt_with(gamma.n) })
    }
}

/// The sign and convention choices fixed for this build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conventions {
    /// ε in ∂h + h∂ = ε(id − i∘p).
    pub homotopy_sign: i32,
    /// −1 if γ from the given g's must be negated to produce W.
    pub gamma_flip: i32,
    /// +1 for left contraction ι_{ξ_k} with sign (−1)^{q−1}.
    pub left_contraction: i32,
    /// +1: the homotopy relates id to i∘p (not p∘i).
    pub homotopy_to_ip: i32,
    /// Sign s with ∂φ = s·[m, φ] in the Hochschild complex.
    pub hochschild_bracket_sign: i32,
    /// σ with HKR(μ) = σ·W_eff for the sign-normalized γ.
    pub hkr_sign: i32,
}

impl Conventions {
    /// The values fixed by the checks in this crate for the sign-normalized γ.
    pub fn standard() -> Conventions {
        Conventions { homotopy_sign: 1, gamma_flip: -1, left_contraction: 1, homotopy_to_ip: 1, hochschild_bracket_sign: 1, hkr_sign: -1 }
    }

    pub fn to_text(&self) -> String {
        format!(
            "homotopy_sign = {:+}\ngamma_flip = {:+}\nleft_contraction = {:+}\nhomotopy_to_ip = {:+}\nhochschild_bracket_sign = {:+}\nhkr_sign = {:+}\n",
            self.homotopy_sign, self.gamma_flip, self.left_contraction, self.homotopy_to_ip, self.hochschild_bracket_sign, self.hkr_sign
        )
    }

    pub fn parse(text: &str) -> Result<Conventions, KoszulError> {
        let mut map = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line.split_once('=').ok_or_else(|| KoszulError::Conventions(line.into()))?;
            let v: i32 = v.trim().parse().map_err(|_| KoszulError::Conventions(line.into()))?;
            if v != 1 && v != -1 {
                return Err(KoszulError::Conventions(line.into()));
            }
            map.insert(k.trim().to_string(), v);
        }
        let get = |k: &str| map.get(k).copied().ok_or_else(|| KoszulError::Conventions(format!("missing {k}")));
        Ok(Conventions {
            homotopy_sign: get("homotopy_sign")?,
            gamma_flip: get("gamma_flip")?,
            left_contraction: get("left_contraction")?,
            homotopy_to_ip: get("homotopy_to_ip")?,
            hochschild_bracket_sign: get("hochschild_bracket_sign")?,
            hkr_sign: get("hkr_sign")?,
        })
    }
}

/// Outcome of an exhaustive contraction check.
#[derive(Clone, Debug, Default)]
pub struct ContractionReport {
    pub n: usize,
    pub max_sym_degree: u32,
    pub terms_checked: usize,
    pub epsilon: Option<i32>,
    pub violations: Vec<String>,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.epsilon.is_some()
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "contraction check: n = {}, Sym-degree <= {}", self.n, self.max_sym_degree)?;
        writeln!(f, "terms checked: {}", self.terms_checked)?;
        match self.epsilon {
            Some(e) => writeln!(f, "homotopy sign: {e:+}")?,
            None => writeln!(f, "homotopy sign: undetermined")?,
        }
        if self.violations.is_empty() {
            write!(f, "all identities hold")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in self.violations.iter().take(20) {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// All monomials in n variables of degree ≤ max.
pub fn monomials_up_to(n: usize, max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_VARS];
    fn rec(k: usize, n: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if k == n {
            out.push(Monomial(*cur));
            return;
        }
        for e in 0..=left {
            cur[k] = e as u8;
            rec(k + 1, n, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, n, max, &mut cur, &mut out);
    out.sort();
    out
}

fn tensor_partial(n: usize, t: &BTensor) -> BTensor {
    to_tensor(&partial_b(&to_endo(n, t)))
}

fn i_after_p(n: usize, t: &BTensor) -> BTensor {
    let mut r = BTensor::zero();
    for (_, a) in project_p(t) {
        r = r.add(&include_i(n, &a));
    }
    r
}

/// Exhaustively check p∘i = id, h² = 0, p∘h = 0, h∘i = 0, and
/// ∂h + h∂ = ε(id − i∘p) on every basis term with Sym-degree ≤ `max_sym`.
pub fn verify_contraction(n: usize, max_sym: u32) -> ContractionReport {
    let mut rep = ContractionReport { n, max_sym_degree: max_sym, ..Default::default() };
    let masks: Vec<Mask> = (0..(1u16 << n)).map(|m| m as Mask).collect();

    for &a in &masks {
        let ia = include_i(n, &AElem::basis(a));
        let back = project_p(&ia);
        if back.get(&0) != Some(&AElem::basis(a)) || back.len() != 1 {
            rep.violations.push(format!("p i != id on mask {a:#b}"));
        }
        if !homotopy_h(n, &ia).is_zero() {
            rep.violations.push(format!("h i != 0 on mask {a:#b}"));
        }
        if !tensor_partial(n, &ia).is_zero() {
            rep.violations.push(format!("d i != 0 on mask {a:#b}"));
        }
    }

    let monos = monomials_up_to(n, max_sym);
    let results: Vec<(usize, Vec<String>, Vec<i32>)> = monos
        .par_iter()
        .map(|m| {
            let mut viol = Vec::new();
            let mut eps = Vec::new();
            let mut count = 0;
            for &dual in &masks {
                for &vec in &masks {
                    count += 1;
                    let t = BTensor::term(*m, dual, vec, 0, Rat::ONE);
                    let ht = homotopy_h(n, &t);
                    if !homotopy_h(n, &ht).is_zero() {
                        viol.push(format!("h^2 != 0 on {t:?}"));
                    }
                    if !project_p(&ht).is_empty() {
                        viol.push(format!("p h != 0 on {t:?}"));
                    }
                    if !project_p(&tensor_partial(n, &t)).is_empty() {
                        viol.push(format!("p d != 0 on {t:?}"));
                    }
                    let lhs = tensor_partial(n, &ht).add(&homotopy_h(n, &tensor_partial(n, &t)));
                    let rhs = t.sub(&i_after_p(n, &t));
                    if rhs.is_zero() {
                        if !lhs.is_zero() {
                            viol.push(format!("dh + hd != 0 on {t:?}"));
                        }
                    } else if lhs == rhs {
                        eps.push(1);
                    } else if lhs == rhs.scale(&-Rat::ONE) {
                        eps.push(-1);
                    } else {
                        viol.push(format!("dh + hd not proportional to id - ip on {t:?}"));
                    }
                }
            }
            (count, viol, eps)
        })
        .collect();

    let mut signs = Vec::new();
    for (c, v, e) in results {
        rep.terms_checked += c;
        rep.violations.extend(v);
        signs.extend(e);
    }
    rep.epsilon = signs.first().copied();
    if let Some(e) = rep.epsilon {
        if signs.iter().any(|s| *s != e) {
            rep.violations.push("homotopy sign differs between terms".into());
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{delta0, mult_b};
    use crate::scalars::mask_of;

    /// ι_θ on Λ(V^∨) computed from the contraction rule directly.
    fn contraction_endo(n: usize, theta: Mask) -> BEndo {
        let idx = crate::scalars::mask_indices(theta);
        let mut v = Vec::new();
        for col in 0..(1u16 << n) {
            // Apply ι_{ξ_{t_q}} for the last index first.
            let mut cur: Vec<(Mask, i32)> = vec![(col as Mask, 1)];
            for &t in idx.iter().rev() {
                let bit = 1u8 << (t - 1);
                cur = cur
                    .into_iter()
                    .filter(|(m, _)| m & bit != 0)
                    .map(|(m, s)| {
                        let below = (m & (bit - 1)).count_ones();
                        (m & !bit, s * if below.is_multiple_of(2) { 1 } else { -1 })
                    })
                    .collect();
            }
            for (m, s) in cur {
                v.push((m, col as Mask, HPoly::constant(Rat::from_int(s as i64))));
            }
        }
        BEndo::from_entries(n, v)
    }

    #[test]
    fn include_is_contraction() {
        for theta in [0, mask_of(&[1]), mask_of(&[1, 2]), mask_of(&[1, 2, 3]), mask_of(&[2, 3])] {
            assert_eq!(include_endo(3, theta), contraction_endo(3, theta), "theta {theta:#b}");
        }
        assert_eq!(include_i(3, &AElem::basis(0)).terms.len(), 8);
        assert_eq!(include_endo(3, 0), BEndo::identity(3));
    }

    #[test]
    fn include_is_algebra_map() {
        for a2 in 0..8u8 {
            for a1 in 0..8u8 {
                let prod = crate::algebra::wedge_a(&AElem::basis(a2), &AElem::basis(a1));
                let lhs = to_endo(3, &include_i(3, &prod));
                let rhs = mult_b(&include_endo(3, a2), &include_endo(3, a1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let t = BTensor::term(Monomial::ONE, 0, 1, 0, Rat::ONE);
        assert_eq!(project_p(&t).get(&0), Some(&AElem::basis(1)));
        let t = BTensor::term(Monomial::var(0), 0, 1, 0, Rat::ONE);
        assert!(project_p(&t).is_empty());
    }

    #[test]
    fn h_on_v1() {
        let t = BTensor::term(Monomial::var(0), 0, 0, 0, Rat::ONE);
        let h = homotopy_h(3, &t);
        // Terms: dv1∧dv_J ⊗ ξ_J^rev with J ⊆ {2,3}; coefficient p!/(1⋯(1+p)).
        let mut expect = BTensor::zero();
        let c = |p: u32| falling_coeff(1, p);
        expect.add_term(TKey { sym: Monomial::ONE, dual: 0b001, vec: 0, hbar: 0 }, c(0));
        expect.add_term(TKey { sym: Monomial::ONE, dual: 0b011, vec: 0b010, hbar: 0 }, c(1));
        expect.add_term(TKey { sym: Monomial::ONE, dual: 0b101, vec: 0b100, hbar: 0 }, c(1));
        // dv1∧dv2∧dv3 ⊗ ξ3∧ξ2 = −dv1∧dv2∧dv3 ⊗ ξ2∧ξ3
        expect.add_term(TKey { sym: Monomial::ONE, dual: 0b111, vec: 0b110, hbar: 0 }, -c(2));
        assert_eq!(h, expect);
        assert_eq!(c(0), Rat::ONE);
        assert_eq!(c(1), Rat::new(1, 2));
        assert_eq!(c(2), Rat::new(1, 3));
        assert!(homotopy_h(3, &BTensor::term(Monomial::ONE, 0b11, 0b1, 0, Rat::ONE)).is_zero());
    }

    #[test]
    fn endo_and_tensor_h_agree() {
        let t = BTensor::term(Monomial::from_exps(&[1, 2, 0]), 0b010, 0b100, 1, Rat::new(3, 7))
            .add(&BTensor::term(Monomial::from_exps(&[0, 0, 3]), 0b001, 0b011, 0, Rat::ONE));
        assert_eq!(to_tensor(&homotopy_endo(&to_endo(3, &t))), homotopy_h(3, &t));
    }

    #[test]
    fn contraction_small() {
        let rep = verify_contraction(3, 3);
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.epsilon, Some(1));
        let rep = verify_contraction(2, 4);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn matrix_factorization() {
        let g = cyclic_gamma();
        let w = matrix_factorization_check(&g).unwrap();
        assert_eq!(w, quintic_w().neg());
        let (g2, flipped) = sign_normalize_gamma(&g, &quintic_w()).unwrap();
        assert!(flipped);
        assert_eq!(matrix_factorization_check(&g2).unwrap(), quintic_w());
        assert_eq!(matrix_factorization_check(&OneForm::zero(3)).unwrap(), Poly::zero());
        assert!(mult_b(&delta0(3), &delta0(3)).is_zero());
    }

    #[test]
    fn conventions_roundtrip() {
        let c = Conventions::standard();
        assert_eq!(Conventions::parse(&c.to_text()).unwrap(), c);
        assert!(Conventions::parse("homotopy_sign = 2").is_err());
    }
}
