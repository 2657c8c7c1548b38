//! Job configuration read from TOML.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use ainf_core::algebra::{HKey, HPoly, OneForm, Poly};
use ainf_core::koszul::{cyclic_gamma, quintic_w};
use ainf_core::scalars::{Monomial, Rat, MAX_VARS};
use ainf_core::structures::GroupSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// One term c·v^e (ħ^h) of the k-th coefficient of γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub component: usize,
    pub coeff: Rat,
    pub exps: Vec<u8>,
    #[serde(default)]
    pub hbar: u8,
}

/// One term c·v^e of the superpotential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub coeff: Rat,
    pub exps: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub n: usize,
    pub d_max: usize,
    /// N in "agreement mod F_N" for determinacy.
    pub truncation: u32,
    pub seed: u64,
    /// Negate γ if needed so that −γ(η) equals `w`.
    pub normalize_gamma: bool,
    /// Weight covectors mod 5 generating the group.
    pub group: Vec<Vec<i64>>,
    pub w: Vec<PolyTerm>,
    pub gamma: Vec<FormTerm>,
}

impl Default for JobConfig {
    fn default() -> JobConfig {
        JobConfig::standard()
    }
}

fn exps_of(m: &Monomial, n: usize) -> Vec<u8> {
    m.0[..n].to_vec()
}

impl JobConfig {
    /// n = 3, the cyclic one-form sign-normalized against W, Z = ⟨(1,1,3)⟩, d_max = 6, N = 15.
    pub fn standard() -> JobConfig {
        let n = 3;
        let gamma = cyclic_gamma()
            .g
            .iter()
            .enumerate()
            .flat_map(|(k, g)| g.terms.iter().map(move |(key, c)| FormTerm { component: k + 1, coeff: c.clone(), exps: exps_of(&key.mono, n), hbar: key.hbar }))
            .collect();
        let w = quintic_w().terms.iter().map(|(m, c)| PolyTerm { coeff: c.clone(), exps: exps_of(m, n) }).collect();
        JobConfig { n, d_max: 6, truncation: 15, seed: 20211, normalize_gamma: true, group: GroupSpec::z_113().generators, w, gamma }
    }

    pub fn parse(text: &str) -> Result<JobConfig, ConfigError> {
        let cfg: JobConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<JobConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
        JobConfig::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.n == 0 || self.n > MAX_VARS {
            return bad(format!("n = {} is outside 1..={MAX_VARS}", self.n));
        }
        if self.d_max < 2 {
            return bad(format!("d_max = {} is below 2", self.d_max));
        }
        if self.truncation < 9 {
            return bad(format!("truncation = {} is below 9", self.truncation));
        }
        for t in &self.gamma {
            if t.component == 0 || t.component > self.n {
                return bad(format!("gamma component {} is outside 1..={}", t.component, self.n));
            }
            if t.exps.len() != self.n {
                return bad(format!("gamma term {:?} has {} exponents, expected {}", t.exps, t.exps.len(), self.n));
            }
            if t.exps.iter().map(|&e| e as u32).sum::<u32>() < 2 {
                return bad(format!("gamma term {:?} has Sym-degree below 2", t.exps));
            }
        }
        for t in &self.w {
            if t.exps.len() != self.n {
                return bad(format!("w term {:?} has {} exponents, expected {}", t.exps, t.exps.len(), self.n));
            }
        }
        for g in &self.group {
            if g.len() != self.n {
                return bad(format!("group generator {g:?} has length {}, expected {}", g.len(), self.n));
            }
        }
        self.group_spec().validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(())
    }

    pub fn group_spec(&self) -> GroupSpec {
        GroupSpec { n: self.n, generators: self.group.clone() }
    }

    pub fn superpotential(&self) -> Poly {
        let mut p = Poly::zero();
        for t in &self.w {
            p.add_term(Monomial::from_exps(&t.exps), t.coeff.clone());
        }
        p
    }

    /// γ exactly as written in the file.
    pub fn raw_gamma(&self) -> OneForm {
        let mut g = vec![Vec::new(); self.n];
        for t in &self.gamma {
            g[t.component - 1].push((HKey { mono: Monomial::from_exps(&t.exps), hbar: t.hbar }, t.coeff.clone()));
        }
        OneForm { n: self.n, g: g.into_iter().map(HPoly::from_terms).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_config_reproduces_gamma() {
        let cfg = JobConfig::standard();
        assert_eq!(cfg.raw_gamma(), cyclic_gamma());
        assert_eq!(cfg.superpotential(), quintic_w());
        cfg.validate().unwrap();
    }

    #[test]
    fn empty_file_means_defaults() {
        assert_eq!(JobConfig::parse("").unwrap(), JobConfig::standard());
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(matches!(JobConfig::parse("n = 0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(JobConfig::parse("bogus = 1"), Err(ConfigError::Toml(_))));
        assert!(matches!(JobConfig::parse("group = [[1, 1, 1]]"), Err(ConfigError::Invalid(_))));
        let text = "[[gamma]]\ncomponent = 4\ncoeff = \"1\"\nexps = [2, 0, 0]\n";
        assert!(matches!(JobConfig::parse(text), Err(ConfigError::Invalid(_))));
    }
}
