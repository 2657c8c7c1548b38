//! Static Floer data for the immersed curve and its transport into Λ(V).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::Poly;
use crate::hochschild::{hkr, Cochain, PolyVector};
use crate::koszul::Conventions;
use crate::scalars::{mask_of, popcount, vec_mask_weight, Mask, Monomial, Rat, Weight};
use crate::structures::AInftyStructure;

const BUILTIN: &str = include_str!("../data/floer_tables.txt");

#[derive(Debug, Error, PartialEq)]
pub enum FloerError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: Weight,
    pub index: u32,
}

impl Generator {
    pub fn parity(&self) -> u32 {
        self.index % 2
    }
}

/// One displayed equation μ^d_k(inputs) = coeff · output (coeff 0 means the product vanishes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerEntry {
    pub d: usize,
    pub k: u8,
    pub inputs: Vec<String>,
    pub coeff: i64,
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerTables {
    pub generators: Vec<Generator>,
    pub entries: Vec<FloerEntry>,
}

/// Generator ↦ sign · ξ_mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    pub map: BTreeMap<String, (i32, Mask)>,
}

fn perr(line: usize, msg: impl Into<String>) -> FloerError {
    FloerError::Parse { line, msg: msg.into() }
}

/// Parse the text format shipped with the crate.
pub fn parse_floer(text: &str) -> Result<(FloerTables, Dictionary), FloerError> {
    let mut gens = Vec::new();
    let mut entries = Vec::new();
    let mut dict = BTreeMap::new();
    let mut seen_format = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts[0] {
            "format" => {
                if parts.get(1) != Some(&"1") {
                    return Err(perr(line, "unsupported format version"));
                }
                seen_format = true;
            }
            "gen" => {
                let [_, name, w, idx] = parts[..] else { return Err(perr(line, "expected: gen name weight index")) };
                let w: Vec<i64> = w.split(',').map(str::parse).collect::<Result<_, _>>().map_err(|_| perr(line, "bad weight"))?;
                let index = idx.parse().map_err(|_| perr(line, "bad index"))?;
                gens.push(Generator { name: name.into(), weight: Weight::from_ints(&w).mod_diagonal(), index });
            }
            "dict" => {
                let [_, name, sign, mask] = parts[..] else { return Err(perr(line, "expected: dict name sign mask")) };
                let s = match sign {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(perr(line, "bad sign")),
                };
                let m = if mask == "-" {
                    0
                } else {
                    let idx: Vec<usize> = mask.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(|| perr(line, "bad mask"))?;
                    mask_of(&idx)
                };
                dict.insert(name.to_string(), (s, m));
            }
            "mu" => {
                let [_, d, k, ins, "=", c, out] = parts[..] else { return Err(perr(line, "expected: mu d k inputs = coeff output")) };
                let inputs: Vec<String> = ins.split(',').map(String::from).collect();
                let d: usize = d.parse().map_err(|_| perr(line, "bad arity"))?;
                if inputs.len() != d {
                    return Err(perr(line, "arity does not match inputs"));
                }
                let coeff: i64 = c.parse().map_err(|_| perr(line, "bad coefficient"))?;
                let output = if out == "0" { None } else { Some(out.to_string()) };
                if output.is_none() != (coeff == 0) {
                    return Err(perr(line, "zero output needs zero coefficient"));
                }
                entries.push(FloerEntry { d, k: k.parse().map_err(|_| perr(line, "bad k"))?, inputs, coeff, output });
            }
            other => return Err(perr(line, format!("unknown record {other}"))),
        }
    }
    if !seen_format {
        return Err(perr(0, "missing format line"));
    }
    let tables = FloerTables { generators: gens, entries };
    for e in &tables.entries {
        for g in e.inputs.iter().chain(e.output.iter()) {
            if tables.generator(g).is_none() {
                return Err(FloerError::UnknownGenerator(g.clone()));
            }
        }
    }
    Ok((tables, Dictionary { map: dict }))
}

/// The vendored tables and dictionary.
pub fn builtin() -> (FloerTables, Dictionary) {
    parse_floer(BUILTIN).expect("vendored Floer data parses")
}

impl FloerTables {
    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }
}

/// Transported constants plus the list of input tuples where μ² is specified.
#[derive(Clone, Debug)]
pub struct Transported {
    pub structure: AInftyStructure,
    pub mu2_defined: Vec<(Mask, Mask)>,
}

pub fn transport(tables: &FloerTables, dict: &Dictionary) -> Result<Transported, FloerError> {
    let look = |g: &str| dict.map.get(g).copied().ok_or_else(|| FloerError::UnknownGenerator(g.into()));
    let mut s = AInftyStructure { n: 3, tables: BTreeMap::new() };
    let mut defined = Vec::new();
    for e in &tables.entries {
        let mut sign = 1;
        let mut ins = Vec::new();
        for g in &e.inputs {
            let (si, m) = look(g)?;
            sign *= si;
            ins.push(m);
        }
        if e.d == 2 && e.k == 0 {
            defined.push((ins[0], ins[1]));
        }
        if let Some(o) = &e.output {
            let (so, m) = look(o)?;
            let c = Rat::from_int(e.coeff * (sign * so) as i64);
            s.tables.entry((e.d, e.k)).or_default().insert((ins, m), c);
        }
    }
    Ok(Transported { structure: s, mu2_defined: defined })
}

fn cochain_of(s: &AInftyStructure, d: usize, k: u8) -> Cochain {
    let mut c = Cochain::zero(s.n);
    if let Some(t) = s.table(d, k) {
        for ((ins, o), x) in t {
            c.add_term(crate::hochschild::CochainKey { inputs: ins.clone(), hbar: k, out: *o }, x.clone());
        }
    }
    c
}

/// HKR image of μ^d_k with ħ dropped.
pub fn hkr_of(s: &AInftyStructure, d: usize, k: u8) -> PolyVector {
    hkr(&cochain_of(s, d, k)).forget_hbar()
}

/// −v₁v₂v₃ and v₁⁵+v₂⁵+v₃⁵ as functions (vector part empty).
pub fn classification_targets() -> (PolyVector, PolyVector) {
    let cubic = Poly::monomial(Monomial::from_exps(&[1, 1, 1]), Rat::from_int(-1));
    let mut quintic = Poly::zero();
    for k in 0..3 {
        let mut e = [0u8; 3];
        e[k] = 5;
        quintic.add_term(Monomial::from_exps(&e), Rat::ONE);
    }
    (PolyVector::from_poly(3, &cubic, 0), PolyVector::from_poly(3, &quintic, 0))
}

#[derive(Clone, Debug, Default)]
pub struct FloerReport {
    pub checks: Vec<(String, bool)>,
    pub mismatches: Vec<String>,
}

impl FloerReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checks.iter().all(|(_, ok)| *ok)
    }

    fn record(&mut self, name: &str, problems: Vec<String>) {
        self.checks.push((name.to_string(), problems.is_empty()));
        self.mismatches.extend(problems);
    }
}

impl fmt::Display for FloerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{}: {name}", if *ok { "ok  " } else { "FAIL" })?;
        }
        for m in &self.mismatches {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Consistency of the Floer data with the wedge product, gradings and HKR targets.
pub fn validate_floer(tables: &FloerTables, dict: &Dictionary) -> Result<FloerReport, FloerError> {
    let mut rep = FloerReport::default();
    let t = transport(tables, dict)?;

    // Dictionary respects weights and indices.
    let mut probs = Vec::new();
    for g in &tables.generators {
        match dict.map.get(&g.name) {
            None => probs.push(format!("{} missing from dictionary", g.name)),
            Some((_, m)) => {
                if popcount(*m) != g.index {
                    probs.push(format!("{}: index {} but mask size {}", g.name, g.index, popcount(*m)));
                }
                if vec_mask_weight(*m, 3).mod_diagonal() != g.weight {
                    probs.push(format!("{}: weight does not match its image", g.name));
                }
            }
        }
    }
    rep.record("dictionary matches weights and indices", probs);

    // μ² against the wedge product on every specified pair.
    let wedge = AInftyStructure::wedge(3);
    let mut probs = Vec::new();
    for (a2, a1) in &t.mu2_defined {
        let got = t.structure.eval(&[*a2, *a1]);
        let want = wedge.eval(&[*a2, *a1]);
        if got != want {
            probs.push(format!("mu2({a2:#b}, {a1:#b}): {got:?} vs {want:?}"));
        }
    }
    rep.record("transported mu2 equals the wedge product", probs);

    // Unit rules: μ²(x,e) = x, μ²(e,x) = (−1)^{|x|}x.
    let mut probs = Vec::new();
    for e in tables.entries.iter().filter(|e| e.d == 2) {
        let (a, b) = (&e.inputs[0], &e.inputs[1]);
        let expect = if b == "e" {
            Some((1, a))
        } else if a == "e" {
            let g = tables.generator(b).expect("validated");
            Some((if g.parity() == 1 { -1 } else { 1 }, b))
        } else {
            None
        };
        if let Some((c, out)) = expect {
            if e.coeff != c || e.output.as_ref() != Some(out) {
                probs.push(format!("mu2({a},{b}) = {} {:?}", e.coeff, e.output));
            }
        }
    }
    rep.record("unit identities", probs);

    // Weight and index laws in Floer terms.
    let mut probs = Vec::new();
    for e in &tables.entries {
        let Some(o) = &e.output else { continue };
        let g = |n: &String| tables.generator(n).expect("validated");
        let w = e.inputs.iter().fold(Weight::zero(3), |acc, n| acc.add(&g(n).weight)).sub(&g(o).weight);
        if !w.is_diagonal() {
            probs.push(format!("mu{}_{} {:?}: weight imbalance", e.d, e.k, e.inputs));
        }
        let shift = g(o).index as i64 - e.inputs.iter().map(|n| g(n).index as i64).sum::<i64>();
        if shift != 6 - 3 * e.d as i64 + 4 * e.k as i64 {
            probs.push(format!("mu{}_{} {:?}: index shift {shift}", e.d, e.k, e.inputs));
        }
    }
    rep.record("weight and index laws", probs);

    // HKR targets.
    let (cubic, quintic) = classification_targets();
    let mut probs = Vec::new();
    let h3 = hkr_of(&t.structure, 3, 0);
    if h3 != cubic {
        probs.push(format!("HKR(mu3_0) = {}", h3.fmt_plain()));
    }
    let h5 = hkr_of(&t.structure, 5, 1);
    if h5 != quintic {
        probs.push(format!("HKR(mu5_1) = {}", h5.fmt_plain()));
    }
    rep.record("HKR targets -v1v2v3 and v1^5+v2^5+v3^5", probs);
    Ok(rep)
}

/// μ^d ↦ σ^d μ^d, the effect of γ ↦ σγ on the transferred structure.
pub fn apply_hkr_sign(mu: &AInftyStructure, sign: i32) -> AInftyStructure {
    let mut out = mu.clone();
    for ((d, _), t) in out.tables.iter_mut() {
        if sign < 0 && d % 2 == 1 {
            for c in t.values_mut() {
                *c = c.neg_ref();
            }
        }
    }
    out
}

/// Compare transported data with a transferred structure: μ² exactly, μ³₀ by HKR, μ⁵₁ on diagonals.
pub fn compare_with_transfer(tables: &FloerTables, dict: &Dictionary, transferred: &AInftyStructure, conv: &Conventions) -> Result<FloerReport, FloerError> {
    let t = transport(tables, dict)?;
    let mu = apply_hkr_sign(transferred, conv.hkr_sign);
    let mut rep = FloerReport::default();
    let mut probs = Vec::new();
    for (a2, a1) in &t.mu2_defined {
        if t.structure.eval(&[*a2, *a1]) != mu.eval(&[*a2, *a1]) {
            probs.push(format!("mu2({a2:#b}, {a1:#b}) differs"));
        }
    }
    rep.record("mu2 agrees", probs);
    let mut probs = Vec::new();
    if hkr_of(&t.structure, 3, 0) != hkr_of(&mu, 3, 0) {
        probs.push(format!("HKR(mu3_0): {} vs {}", hkr_of(&t.structure, 3, 0).fmt_plain(), hkr_of(&mu, 3, 0).fmt_plain()));
    }
    rep.record("HKR(mu3_0) agrees", probs);
    let mut probs = Vec::new();
    for k in 0..3 {
        let x: Mask = 1 << k;
        let ins = vec![x; 5];
        let a = t.structure.table(5, 1).and_then(|tb| tb.get(&(ins.clone(), 0))).cloned().unwrap_or(Rat::ZERO);
        let b = mu.table(5, 1).and_then(|tb| tb.get(&(ins.clone(), 0))).cloned().unwrap_or(Rat::ZERO);
        if a != b {
            probs.push(format!("mu5_1(xi{}^5): {a} vs {b}", k + 1));
        }
    }
    rep.record("mu5_1 diagonals agree", probs);
    Ok(rep)
}
