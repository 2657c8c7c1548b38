//! Canonical JSON form of transferred structure constants.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use ainf_core::floer::hkr_of;
use ainf_core::koszul::Conventions;
use ainf_core::scalars::{Mask, Rat};
use ainf_core::structures::AInftyStructure;
use ainf_core::transfer::TransferResult;

use crate::config::FormTerm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub normalize_gamma: bool,
    pub gamma_flipped: bool,
    pub hkr_sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub conventions_sha256: String,
    pub n: usize,
    pub d_max: usize,
    /// γ after normalization, sorted by (component, ħ, exponents).
    pub gamma: Vec<FormTerm>,
    pub flags: Flags,
}

/// HKR image of one table with the recorded sign applied, as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkrSummary {
    pub d: usize,
    pub k: u8,
    pub hkr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub d: usize,
    pub k: u8,
    pub inputs: Vec<Mask>,
    pub output: Mask,
    pub coeff: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantTable {
    pub metadata: Metadata,
    pub hkr: Vec<HkrSummary>,
    pub entries: Vec<Entry>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// γ as sorted terms.
pub fn gamma_terms(gamma: &ainf_core::algebra::OneForm) -> Vec<FormTerm> {
    let mut v: Vec<FormTerm> = gamma
        .g
        .iter()
        .enumerate()
        .flat_map(|(k, g)| g.terms.iter().map(move |(key, c)| FormTerm { component: k + 1, coeff: c.clone(), exps: key.mono.0[..gamma.n].to_vec(), hbar: key.hbar }))
        .collect();
    v.sort_by(|a, b| (a.component, a.hbar, &a.exps).cmp(&(b.component, b.hbar, &b.exps)));
    v
}

impl ConstantTable {
    pub fn build(r: &TransferResult, gamma: &ainf_core::algebra::OneForm, conv: &Conventions, normalize: bool, flipped: bool) -> ConstantTable {
        let metadata = Metadata {
            conventions_sha256: sha256_hex(&conv.to_text()),
            n: r.n,
            d_max: r.d_max,
            gamma: gamma_terms(gamma),
            flags: Flags { normalize_gamma: normalize, gamma_flipped: flipped, hkr_sign: conv.hkr_sign },
        };
        let s = AInftyStructure::from_transfer(r);
        let hkr = r
            .tables
            .keys()
            .map(|&(d, k)| {
                let p = hkr_of(&s, d, k);
                let p = if conv.hkr_sign.pow(d as u32) < 0 { p.neg() } else { p };
                HkrSummary { d, k, hkr: if p.is_zero() { "0".into() } else { p.fmt_plain() } }
            })
            .collect();
        let entries = r
            .tables
            .iter()
            .flat_map(|(&(d, k), t)| t.iter().map(move |((ins, out), c)| Entry { d, k, inputs: ins.clone(), output: *out, coeff: c.clone() }))
            .collect();
        ConstantTable { metadata, hkr, entries }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_transfer(&self) -> TransferResult {
        let mut r = TransferResult { n: self.metadata.n, d_max: self.metadata.d_max, tables: Default::default() };
        for h in &self.hkr {
            r.tables.entry((h.d, h.k)).or_default();
        }
        for e in &self.entries {
            r.tables.entry((e.d, e.k)).or_default().insert((e.inputs.clone(), e.output), e.coeff.clone());
        }
        r
    }
}
