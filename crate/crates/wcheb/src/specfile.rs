//! Function specifications for `erdos-lax`:
//!
//! ```json
//! {"scale": [1.0, 0.0], "factors": [{"root": [1.0, 0.0], "exponent": 1.5}]}
//! ```
//!
//! `scale` defaults to `1`.

use std::path::Path;

use serde::Deserialize;
use wcheb_core::weighted_fn::{Factor, WeightedRootFn};
use wcheb_core::Complex;

use crate::error::{usage, CliError};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default = "unit")]
    pub scale: [f64; 2],
    pub factors: Vec<FactorSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub root: [f64; 2],
    pub exponent: f64,
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

impl FunctionSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| usage(format!("invalid spec file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read spec file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_function(&self) -> Result<WeightedRootFn, CliError> {
        let factors = self
            .factors
            .iter()
            .map(|f| Factor::new(Complex::new(f.root[0], f.root[1]), f.exponent))
            .collect();
        Ok(WeightedRootFn::new(Complex::new(self.scale[0], self.scale[1]), factors)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_default_scale() {
        let spec = FunctionSpec::parse(r#"{"factors": [{"root": [1, 0], "exponent": 1.5}]}"#).unwrap();
        let f = spec.to_function().unwrap();
        assert_eq!(f.scale(), Complex::new(1.0, 0.0));
        assert_eq!(f.factors().len(), 1);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_exponents() {
        assert!(FunctionSpec::parse(r#"{"factors": [], "extra": 1}"#).is_err());
        let spec = FunctionSpec::parse(r#"{"factors": [{"root": [1, 0], "exponent": -1}]}"#).unwrap();
        assert_eq!(spec.to_function().unwrap_err().exit_code(), 64);
    }
}
