//! Charts of the toric crepant resolution of V/Z and the pullback of W.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Poly;
use crate::linalg::det;
use crate::scalars::Rat;

const GOLDEN: &str = include_str!("../data/toric_golden.txt");

pub type Vec3 = [i64; 3];

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ToricError {
    #[error("generators {0:?} are not a basis of M")]
    NotBasis([Vec3; 3]),
    #[error("generator {0:?} violates the cone inequalities")]
    OutsideCone(Vec3),
    #[error("{0:?} in the dual cone is not a non-negative combination of the generators")]
    NotGenerated(Vec3),
    #[error("monomial with exponent {0:?} is not Z-invariant")]
    NotInvariant(Vec3),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no chart {0}")]
    NoChart(usize),
}

/// N = ℤ³ + ℤ·⅕(1,1,3), dual M = {m : m₁+m₂+3m₃ ≡ 0 mod 5}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub extra: Vec3,
    pub denominator: i64,
}

impl Lattice {
    pub fn z_invariant() -> Lattice {
        Lattice { extra: [1, 1, 3], denominator: 5 }
    }

    pub fn in_dual(&self, m: &Vec3) -> bool {
        dot(&self.extra, m).rem_euclid(self.denominator) == 0
    }

    /// [N : ℤ³] = [ℤ³ : M].
    pub fn index(&self) -> i64 {
        self.denominator
    }
}

fn dot(a: &Vec3, b: &Vec3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// A maximal cone given by its dual-cone inequalities ⟨u, m⟩ ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub index: usize,
    pub inequalities: Vec<Vec3>,
}

impl ChartSpec {
    pub fn contains(&self, m: &Vec3) -> bool {
        self.inequalities.iter().all(|u| dot(u, m) >= 0)
    }
}

/// The five dual cones, in their standard order.
pub fn resolution_charts() -> Vec<ChartSpec> {
    let rows: [[Vec3; 3]; 5] = [
        [[0, 1, 0], [1, 1, 3], [2, 2, 1]],
        [[1, 0, 0], [1, 1, 3], [2, 2, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 1, 3]],
        [[1, 0, 0], [0, 0, 1], [1, 1, 3]],
        [[1, 0, 0], [0, 1, 0], [2, 2, 1]],
    ];
    rows.iter().enumerate().map(|(i, r)| ChartSpec { index: i + 1, inequalities: r.to_vec() }).collect()
}

fn box_points(lattice: &Lattice, chart: &ChartSpec, radius: i64) -> Vec<Vec3> {
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            for c in -radius..=radius {
                let m = [a, b, c];
                if m != [0, 0, 0] && lattice.in_dual(&m) && chart.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Irreducible elements of σ^∨ ∩ M with entries bounded by `radius`.
pub fn hilbert_basis(lattice: &Lattice, chart: &ChartSpec, radius: i64) -> Vec<Vec3> {
    let small = box_points(lattice, chart, radius);
    let big = box_points(lattice, chart, 2 * radius);
    let set: std::collections::BTreeSet<Vec3> = big.iter().copied().collect();
    let mut out: Vec<Vec3> = small
        .into_iter()
        .filter(|m| !big.iter().any(|a| set.contains(&[m[0] - a[0], m[1] - a[1], m[2] - a[2]])))
        .collect();
    out.sort();
    out
}

fn rat_matrix(g: &[Vec3; 3]) -> Vec<Vec<Rat>> {
    g.iter().map(|r| r.iter().map(|x| Rat::from_int(*x)).collect()).collect()
}

/// Coordinates c with m = Σ c_j g_j, if integral.
pub fn coordinates(g: &[Vec3; 3], m: &Vec3) -> Option<Vec3> {
    // Cramer's rule on the transposed system.
    let d = det(&rat_matrix(g));
    if d.is_zero() {
        return None;
    }
    let mut c = [0i64; 3];
    for (j, slot) in c.iter_mut().enumerate() {
        let mut h = *g;
        h[j] = *m;
        let x = det(&rat_matrix(&h)) / d.clone();
        if !x.is_integer() {
            return None;
        }
        *slot = x.to_big().numer().try_into().ok()?;
    }
    Some(c)
}

/// Outcome of checking a proposed generator triple against its cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub chart: usize,
    pub determinant: i64,
    pub hilbert_basis: Vec<Vec3>,
    pub points_checked: usize,
}

/// Check that `proposed` freely generates σ^∨ ∩ M.
pub fn dual_generators(lattice: &Lattice, chart: &ChartSpec, proposed: &[Vec3; 3]) -> Result<GeneratorReport, ToricError> {
    for g in proposed {
        if !chart.contains(g) || !lattice.in_dual(g) {
            return Err(ToricError::OutsideCone(*g));
        }
    }
    let d = det(&rat_matrix(proposed));
    let determinant: i64 = d.to_big().numer().try_into().unwrap_or(0);
    if determinant.abs() != lattice.index() {
        return Err(ToricError::NotBasis(*proposed));
    }
    let pts = box_points(lattice, chart, 6);
    for m in &pts {
        match coordinates(proposed, m) {
            Some(c) if c.iter().all(|x| *x >= 0) => {}
            _ => return Err(ToricError::NotGenerated(*m)),
        }
    }
    let hb = hilbert_basis(lattice, chart, 6);
    let mut sorted = proposed.to_vec();
    sorted.sort();
    if hb != sorted {
        return Err(ToricError::NotBasis(*proposed));
    }
    Ok(GeneratorReport { chart: chart.index, determinant, hilbert_basis: hb, points_checked: pts.len() })
}

/// b_j = Π_l a_l^{rows[j][l]}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub rows: [Vec3; 3],
}

impl MonomialMap {
    pub fn identity() -> MonomialMap {
        MonomialMap { rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
    }

    /// (self ∘ inner): first inner, then self.
    pub fn after(&self, inner: &MonomialMap) -> MonomialMap {
        let mut rows = [[0i64; 3]; 3];
        for (j, row) in rows.iter_mut().enumerate() {
            for (m, slot) in row.iter_mut().enumerate() {
                *slot = (0..3).map(|l| self.rows[j][l] * inner.rows[l][m]).sum();
            }
        }
        MonomialMap { rows }
    }

    pub fn apply(&self, p: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e, c) in &p.terms {
            let mut f = [0i64; 3];
            for (j, ej) in e.iter().enumerate() {
                for (l, slot) in f.iter_mut().enumerate() {
                    *slot += ej * self.rows[j][l];
                }
            }
            out.add_term(f, c.clone());
        }
        out
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| fmt_monomial(r).unwrap_or_else(|| "1".into())).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Map expressing chart-`to` coordinates through chart-`from` coordinates.
pub fn transition(from: &[Vec3; 3], to: &[Vec3; 3]) -> Result<MonomialMap, ToricError> {
    let mut rows = [[0i64; 3]; 3];
    for (j, g) in to.iter().enumerate() {
        rows[j] = coordinates(from, g).ok_or(ToricError::NotBasis(*from))?;
    }
    Ok(MonomialMap { rows })
}

/// Laurent polynomial in a₁, a₂, a₃.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Laurent {
    pub terms: BTreeMap<Vec3, Rat>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_monomial(e: &Vec3) -> Option<String> {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != 0)
        .map(|(i, x)| if *x == 1 { format!("a{}", i + 1) } else { format!("a{}^{}", i + 1, x) })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest total degree first, then the canonical order.
        let mut terms: Vec<(&Vec3, &Rat)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(e.iter().sum::<i64>()));
        write!(f, "{}", fmt_terms(terms.into_iter()))
    }
}

fn fmt_terms<'a>(terms: impl Iterator<Item = (&'a Vec3, &'a Rat)>) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let neg = c.signum() < 0;
        let mag = c.signed(c.signum());
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match fmt_monomial(e) {
            None => out.push_str(&mag.to_string()),
            Some(m) if mag.is_one() => out.push_str(&m),
            Some(m) => out.push_str(&format!("{mag}*{m}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Laurent {
    pub fn add_term(&mut self, e: Vec3, c: Rat) {
        if c.is_zero() {
            return;
        }
        let z = {
            let slot = self.terms.entry(e).or_insert(Rat::ZERO);
            *slot += &c;
            slot.is_zero()
        };
        if z {
            self.terms.remove(&e);
        }
    }

    pub fn monomial(e: Vec3) -> Laurent {
        let mut l = Laurent::default();
        l.add_term(e, Rat::ONE);
        l
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).filter(|(_, x)| !x.is_zero()).collect() }
    }

    /// Componentwise minimum exponent.
    pub fn gcd_monomial(&self) -> Vec3 {
        let mut g = [i64::MAX; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                g[i] = g[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            g
        }
    }
}

/// Exponents of the terms of a sum, in written order.
fn parse_order(s: &str) -> Vec<Vec3> {
    let mut out = Vec::new();
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            if let Some((_, e)) = parse_term(cur.trim_start_matches(['+', '-'])) {
                out.push(e);
            }
            cur.clear();
        }
        cur.push(ch);
    }
    if let Some((_, e)) = parse_term(cur.trim_start_matches(['+', '-'])) {
        out.push(e);
    }
    out
}

/// Parse sums of signed terms like `a2*a3 - 1 - a1^2*a2^-5`.
pub fn parse_laurent(s: &str) -> Option<Laurent> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Laurent::default();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && !((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            i += 1;
        }
        let (c, e) = parse_term(&s[start..i])?;
        out.add_term(e, Rat::from_int(sign * c));
    }
    Some(out)
}

fn parse_term(t: &str) -> Option<(i64, Vec3)> {
    let mut c = 1;
    let mut e = [0i64; 3];
    for factor in t.split('*') {
        if let Some(rest) = factor.strip_prefix('a') {
            let (var, pow) = match rest.split_once('^') {
                Some((v, p)) => (v, p.parse().ok()?),
                None => (rest, 1),
            };
            let k: usize = var.parse().ok()?;
            if !(1..=3).contains(&k) {
                return None;
            }
            e[k - 1] += pow;
        } else {
            c *= factor.parse::<i64>().ok()?;
        }
    }
    Some((c, e))
}

/// prefactor · strict transform.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub prefactor: Vec3,
    pub strict: Laurent,
    /// Display order of the strict terms; equality ignores it.
    pub order: Vec<Vec3>,
}

impl PartialEq for Pullback {
    fn eq(&self, o: &Pullback) -> bool {
        self.prefactor == o.prefactor && self.strict == o.strict
    }
}

impl Eq for Pullback {}

impl Pullback {
    pub fn full(&self) -> Laurent {
        Laurent::monomial(self.prefactor).mul(&self.strict)
    }
}

impl fmt::Display for Pullback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<Vec3> = self.order.iter().filter(|e| self.strict.terms.contains_key(*e)).copied().collect();
        keys.extend(self.strict.terms.keys().filter(|e| !self.order.contains(e)));
        let body = fmt_terms(keys.iter().map(|e| (e, &self.strict.terms[e])));
        match fmt_monomial(&self.prefactor) {
            Some(p) => write!(f, "{p} * ({body})"),
            None => write!(f, "{body}"),
        }
    }
}

/// W in chart coordinates with the largest monomial factor split off.
pub fn pullback_w(lattice: &Lattice, generators: &[Vec3; 3], w: &Poly) -> Result<Pullback, ToricError> {
    let mut full = Laurent::default();
    let mut order = Vec::new();
    let mut monos: Vec<_> = w.terms.iter().collect();
    monos.sort_by_key(|(m, _)| (m.degree(), std::cmp::Reverse(**m)));
    for (m, c) in monos {
        let e = [m.exp(0) as i64, m.exp(1) as i64, m.exp(2) as i64];
        if !lattice.in_dual(&e) {
            return Err(ToricError::NotInvariant(e));
        }
        let coords = coordinates(generators, &e).ok_or(ToricError::NotInvariant(e))?;
        full.add_term(coords, c.clone());
        order.push(coords);
    }
    let g = full.gcd_monomial();
    let strict = Laurent::monomial([-g[0], -g[1], -g[2]]).mul(&full);
    let order = order.iter().map(|e| [e[0] - g[0], e[1] - g[1], e[2] - g[2]]).collect();
    Ok(Pullback { prefactor: g, strict, order })
}

/// The defining equation of H: the pullback scaled so the image of the lowest-order monomial of W has coefficient +1.
pub fn h_equation(lattice: &Lattice, generators: &[Vec3; 3], w: &Poly) -> Result<Pullback, ToricError> {
    let p = pullback_w(lattice, generators, w)?;
    let lowest = w.terms.iter().min_by_key(|(m, _)| m.degree()).map(|(_, c)| c.signum()).unwrap_or(1);
    Ok(Pullback { strict: p.strict.scale(&Rat::from_int(lowest as i64)), ..p })
}

/// The vendored data: generators, consecutive transitions and H equations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ToricGolden {
    pub generators: BTreeMap<usize, [Vec3; 3]>,
    pub transitions: Vec<(usize, usize, MonomialMap)>,
    pub h: BTreeMap<usize, Pullback>,
}

fn parse_vec3(s: &str) -> Option<Vec3> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let v: Vec<i64> = inner.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    v.try_into().ok()
}

pub fn parse_golden(text: &str) -> Result<ToricGolden, ToricError> {
    let mut g = ToricGolden::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| ToricError::Parse { line, msg: msg.into() };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l == "format 1" {
            continue;
        }
        let (head, body) = l.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let mut words = head.split_whitespace();
        match words.next() {
            Some("generators") => {
                let c: usize = words.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("chart number"))?;
                let vs: Vec<Vec3> = body.split_whitespace().map(parse_vec3).collect::<Option<_>>().ok_or_else(|| err("bad vector"))?;
                let triple: [Vec3; 3] = vs.try_into().map_err(|_| err("need three generators"))?;
                g.generators.insert(c, triple);
            }
            Some("transition") => {
                let from: usize = words.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("chart number"))?;
                let _arrow = words.next();
                let to: usize = words.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("chart number"))?;
                let inner = body.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| err("bad map"))?;
                let mut rows = [[0i64; 3]; 3];
                for (j, comp) in inner.split(',').enumerate() {
                    let p = parse_laurent(comp).ok_or_else(|| err("bad monomial"))?;
                    if j >= 3 || p.terms.len() != 1 {
                        return Err(err("components must be three monomials"));
                    }
                    rows[j] = *p.terms.keys().next().expect("one term");
                }
                g.transitions.push((from, to, MonomialMap { rows }));
            }
            Some("H") => {
                let c: usize = words.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("chart number"))?;
                let (pre, strict) = body.split_once("* (").ok_or_else(|| err("expected prefactor * (..)"))?;
                let pre = parse_laurent(pre).ok_or_else(|| err("bad prefactor"))?;
                let strict_text = strict.trim().strip_suffix(')').ok_or_else(|| err("missing ')'"))?;
                let strict = parse_laurent(strict_text).ok_or_else(|| err("bad polynomial"))?;
                let prefactor = *pre.terms.keys().next().ok_or_else(|| err("empty prefactor"))?;
                let order = parse_order(strict_text);
                g.h.insert(c, Pullback { prefactor, strict, order });
            }
            _ => return Err(err("unknown record")),
        }
    }
    Ok(g)
}

pub fn golden() -> ToricGolden {
    parse_golden(GOLDEN).expect("vendored toric data parses")
}

/// Everything recomputed from the cone inequalities, the golden generator order and W.
#[derive(Clone, Debug)]
pub struct ToricReport {
    pub generators: Vec<Result<GeneratorReport, ToricError>>,
    pub transitions: Vec<(usize, usize, MonomialMap, bool)>,
    pub h: Vec<(usize, Pullback, bool)>,
}

impl ToricReport {
    pub fn passed(&self) -> bool {
        self.generators.iter().all(Result::is_ok) && self.transitions.iter().all(|t| t.3) && self.h.iter().all(|h| h.2)
    }
}

impl fmt::Display for ToricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = golden();
        for r in &self.generators {
            match r {
                Ok(rep) => {
                    let t = &g.generators[&rep.chart];
                    writeln!(f, "generators {}: {}  [det {}, {} points]", rep.chart, t.iter().map(|v| format!("({},{},{})", v[0], v[1], v[2])).collect::<Vec<_>>().join(" "), rep.determinant, rep.points_checked)?;
                }
                Err(e) => writeln!(f, "generators: FAIL {e}")?,
            }
        }
        for (a, b, m, ok) in &self.transitions {
            writeln!(f, "transition {a} -> {b}: {m}{}", if *ok { "" } else { "  MISMATCH" })?;
        }
        for (c, p, ok) in &self.h {
            writeln!(f, "H {c}: {p}{}", if *ok { "" } else { "  MISMATCH" })?;
        }
        Ok(())
    }
}

/// Recompute generators, transitions and H equations and compare with the golden data.
pub fn toric_check(w: &Poly) -> ToricReport {
    let lattice = Lattice::z_invariant();
    let gold = golden();
    let charts = resolution_charts();
    let generators = charts
        .iter()
        .map(|c| gold.generators.get(&c.index).ok_or(ToricError::NoChart(c.index)).and_then(|g| dual_generators(&lattice, c, g)))
        .collect();
    let transitions = gold
        .transitions
        .iter()
        .map(|(a, b, m)| {
            let got = transition(&gold.generators[a], &gold.generators[b]);
            match got {
                Ok(t) => (*a, *b, t, t == *m),
                Err(_) => (*a, *b, *m, false),
            }
        })
        .collect();
    let h = charts
        .iter()
        .map(|c| match h_equation(&lattice, &gold.generators[&c.index], w) {
            Ok(p) => {
                let ok = gold.h.get(&c.index) == Some(&p);
                (c.index, p, ok)
            }
            Err(_) => (c.index, Pullback { prefactor: [0; 3], strict: Laurent::default(), order: Vec::new() }, false),
        })
        .collect();
    ToricReport { generators, transitions, h }
}

/// Lines of the vendored data missing from the report ("- ...") and report lines absent from it ("+ ...").
pub fn golden_diff(report: &ToricReport) -> Vec<String> {
    let data: Vec<&str> = GOLDEN.lines().filter(|l| ["generators ", "transition ", "H "].iter().any(|p| l.starts_with(p))).collect();
    let text = report.to_string();
    let got: Vec<&str> = text.lines().map(|l| l.split("  [").next().unwrap_or(l)).collect();
    let mut diff: Vec<String> = data.iter().filter(|l| !got.contains(l)).map(|l| format!("- {l}")).collect();
    diff.extend(got.iter().filter(|l| !data.contains(l)).map(|l| format!("+ {l}")));
    diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::quintic_w;

    #[test]
    fn dual_membership() {
        let l = Lattice::z_invariant();
        assert!(l.in_dual(&[1, 1, 1]));
        assert!(!l.in_dual(&[1, 0, 0]));
        assert!(l.in_dual(&[5, 0, 0]));
    }

    #[test]
    fn chart_generators() {
        let l = Lattice::z_invariant();
        let g = golden();
        for c in resolution_charts() {
            let r = dual_generators(&l, &c, &g.generators[&c.index]).unwrap();
            assert_eq!(r.determinant.abs(), 5);
        }
        let bad = [[3, 0, -1], [-1, 0, 2], [0, 0, 5]];
        assert!(dual_generators(&l, &resolution_charts()[0], &bad).is_err());
    }

    #[test]
    fn transitions_compose() {
        let g = golden();
        let t21 = transition(&g.generators[&2], &g.generators[&1]).unwrap();
        assert_eq!(t21.to_string(), "(a1*a3^3, a2*a3^-1, a3^-1)");
        let t32 = transition(&g.generators[&3], &g.generators[&2]).unwrap();
        let t31 = transition(&g.generators[&3], &g.generators[&1]).unwrap();
        assert_eq!(t21.after(&t32), t31);
        assert_eq!(transition(&g.generators[&4], &g.generators[&4]).unwrap(), MonomialMap::identity());
        let t31_text = "(a2^-1, a1*a2^2, a3)";
        assert_eq!(t31.to_string(), t31_text);
        assert_ne!(t32.to_string(), t31_text);
    }

    #[test]
    fn pullback_examples() {
        let l = Lattice::z_invariant();
        let g = golden();
        let w = quintic_w();
        let h1 = h_equation(&l, &g.generators[&1], &w).unwrap();
        assert_eq!(h1.prefactor, [1, 1, 0]);
        assert_eq!(h1.strict, parse_laurent("a3 - a1 - a1*a3^5 - a2^2").unwrap());
        let cubic = Poly::monomial(crate::scalars::Monomial::from_exps(&[1, 1, 1]), Rat::ONE);
        let p = pullback_w(&l, &g.generators[&5], &cubic).unwrap();
        assert_eq!(p.prefactor, [1, 1, 1]);
    }

    #[test]
    fn pullback_commutes_with_transitions() {
        let l = Lattice::z_invariant();
        let g = golden();
        let w = quintic_w();
        for (a, b) in [(2, 1), (3, 1), (5, 2), (4, 5)] {
            let t = transition(&g.generators[&a], &g.generators[&b]).unwrap();
            let pb = pullback_w(&l, &g.generators[&b], &w).unwrap().full();
            let pa = pullback_w(&l, &g.generators[&a], &w).unwrap().full();
            assert_eq!(t.apply(&pb), pa);
        }
    }

    #[test]
    fn golden_reproduced() {
        let rep = toric_check(&quintic_w());
        assert!(rep.passed(), "{rep}");
        let text = rep.to_string();
        for line in GOLDEN.lines().filter(|l| l.starts_with("H ") || l.starts_with("transition ")) {
            assert!(text.contains(line), "{line}");
        }
        assert_eq!(golden_diff(&rep), Vec::<String>::new());
    }

    #[test]
    fn laurent_parsing() {
        let p = parse_laurent("a2*a3 - 1 - a3^5 - a1^2*a2^5").unwrap();
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.terms[&[0, 0, 0]], Rat::from_int(-1));
        let q = parse_laurent("a1^-3*a3^-1").unwrap();
        assert_eq!(q.terms.keys().next(), Some(&[-3, 0, -1]));
    }
}
