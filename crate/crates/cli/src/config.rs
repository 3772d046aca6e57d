//! Field and limit settings from flags and an optional TOML file. Flags
//! override the file.
//!
//! ```toml
//! [field]
//! p = 3
//! e = 2
//! modulus = [1, 0, 1]   # c0, c1, ..., leading 1 last
//! max_q = 16
//!
//! [limits]
//! budget = 60.0
//! max_nodes = 1000000
//! max_vertices = 5000
//! ```

use std::path::Path;

use serde::Deserialize;
use subspace_graph::gf::{self, FieldError, DEFAULT_MAX_ORDER};
use subspace_graph::FieldSpec;
use thiserror::Error;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub field: FieldSection,
    #[serde(default)]
    pub limits: LimitsSection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub max_q: Option<u32>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSection {
    pub budget: Option<f64>,
    pub max_nodes: Option<u64>,
    pub max_vertices: Option<usize>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad config file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("no field given: pass -p (with -e, --modulus) or -q")]
    MissingField,
    #[error("{0}")]
    Conflict(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl ConfigError {
    /// Field orders above the cap are a resource limit, not a typo.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, ConfigError::Field(FieldError::OrderTooLarge { .. }))
    }
}

pub fn load(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(toml::from_str(&text)?)
}

/// Field flags as given on the command line.
#[derive(Debug, Default, Clone)]
pub struct FieldArgs {
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub q: Option<u32>,
}

impl FieldArgs {
    pub fn is_empty(&self) -> bool {
        self.p.is_none() && self.e.is_none() && self.modulus.is_none() && self.q.is_none()
    }
}

pub fn resolve_field(args: &FieldArgs, file: &FileConfig) -> Result<FieldSpec, ConfigError> {
    let max_q = file.field.max_q.unwrap_or(DEFAULT_MAX_ORDER);
    let modulus = args.modulus.clone().or_else(|| file.field.modulus.clone());
    let mut p = args.p.or(file.field.p);
    let mut e = args.e.or(file.field.e);
    if let Some(q) = args.q {
        let (qp, qe) = gf::factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if p.is_some_and(|p| p != qp) || e.is_some_and(|e| e != qe) {
            return Err(ConfigError::Conflict(format!(
                "-q {q} disagrees with p = {}, e = {}",
                p.unwrap_or(qp),
                e.unwrap_or(qe)
            )));
        }
        p = Some(qp);
        e = Some(qe);
    }
    let p = p.ok_or(ConfigError::MissingField)?;
    let e = match (e, &modulus) {
        (Some(e), _) => e,
        (None, Some(m)) if !m.is_empty() => m.len() as u32 - 1,
        _ => 1,
    };
    Ok(gf::build_field(p, e, modulus.as_deref(), max_q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(p: Option<u32>, e: Option<u32>, q: Option<u32>) -> FieldArgs {
        FieldArgs {
            p,
            e,
            modulus: None,
            q,
        }
    }

    #[test]
    fn q_sugar() {
        let f = resolve_field(&args(None, None, Some(9)), &FileConfig::default()).unwrap();
        assert_eq!((f.p(), f.e()), (3, 2));
        let f = resolve_field(&args(Some(3), None, Some(9)), &FileConfig::default()).unwrap();
        assert_eq!(f.q(), 9);
        assert!(matches!(
            resolve_field(&args(Some(2), None, Some(9)), &FileConfig::default()),
            Err(ConfigError::Conflict(_))
        ));
        assert!(resolve_field(&args(None, None, Some(6)), &FileConfig::default()).is_err());
    }

    #[test]
    fn file_and_override() {
        let file: FileConfig = toml::from_str("[field]\np = 2\ne = 3\nmodulus = [1, 0, 1, 1]\n").unwrap();
        let f = resolve_field(&FieldArgs::default(), &file).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
        let f = resolve_field(&args(Some(3), Some(1), None), &FileConfig::default()).unwrap();
        assert_eq!(f.q(), 3);
        assert!(matches!(
            resolve_field(&FieldArgs::default(), &FileConfig::default()),
            Err(ConfigError::MissingField)
        ));
        assert!(toml::from_str::<FileConfig>("[field]\nprime = 2\n").is_err());
    }

    #[test]
    fn degree_from_modulus_and_cap() {
        let a = FieldArgs {
            p: Some(2),
            modulus: Some(vec![1, 1, 1]),
            ..FieldArgs::default()
        };
        assert_eq!(resolve_field(&a, &FileConfig::default()).unwrap().q(), 4);

        let e = resolve_field(&args(Some(5), Some(2), None), &FileConfig::default()).unwrap_err();
        assert!(e.is_resource_cap());
        let file: FileConfig = toml::from_str("[field]\nmax_q = 32\n").unwrap();
        let a = FieldArgs {
            p: Some(5),
            e: Some(2),
            modulus: Some(vec![2, 0, 1]),
            q: None,
        };
        assert_eq!(resolve_field(&a, &file).unwrap().q(), 25);
    }
}
