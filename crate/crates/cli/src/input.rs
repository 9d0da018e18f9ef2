use std::path::Path;
use std::sync::Arc;

use cyclotome_core::cyclic::{Colimit, CyclicNerve, FiniteCategory, FiniteMonoid, Presentation, TruncatedCyclicSet};
use cyclotome_core::hochschild::GradedAlgebra;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::cache::sha256_hex;
use crate::error::{CliError, CliResult};
use crate::report::InputDigest;

/// A file read once, hashed, and parsed later.
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub text: String,
    pub sha256: String,
}

impl InputFile {
    pub fn read(role: &str, path: &Path) -> CliResult<Self> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
        let sha256 = sha256_hex(text.as_bytes());
        Ok(Self { role: role.into(), path: path.display().to_string(), text, sha256 })
    }

    pub fn digest(&self) -> InputDigest {
        InputDigest { role: self.role.clone(), sha256: self.sha256.clone() }
    }

    fn parse<T: DeserializeOwned>(&self) -> CliResult<T> {
        serde_json::from_str(&self.text).map_err(|e| self.json_error(&e))
    }

    fn json_error(&self, e: &serde_json::Error) -> CliError {
        CliError::Input(format!("{}: line {} column {}: {e}", self.path, e.line(), e.column()))
    }

    pub fn algebra(&self) -> CliResult<GradedAlgebra> {
        GradedAlgebra::from_json(&self.text).map_err(|e| CliError::Input(format!("{}: {e}", self.path)))
    }

    pub fn monoid(&self) -> CliResult<FiniteMonoid> {
        let m: FiniteMonoid = self.parse()?;
        m.validate().map_err(|e| CliError::Input(format!("{}: {e}", self.path)))?;
        Ok(m)
    }

    pub fn category(&self) -> CliResult<FiniteCategory> {
        let c: FiniteCategory = self.parse()?;
        c.validate().map_err(|e| CliError::Input(format!("{}: {e}", self.path)))?;
        Ok(c)
    }

    /// A cyclic set from a colimit presentation (`representables`), a monoid
    /// (`table`) or a category (`compose`), the last two via the cyclic nerve.
    pub fn cyclic_set(&self, truncation: usize, cap: u128) -> CliResult<Arc<TruncatedCyclicSet>> {
        let v: Value = self.parse()?;
        let has = |k: &str| v.get(k).is_some();
        let x = if has("representables") {
            let p: Presentation = self.parse()?;
            let model = Colimit::new(p).map_err(|e| CliError::Input(format!("{}: {e}", self.path)))?.with_cap(cap);
            TruncatedCyclicSet::from_model(model, truncation)?
        } else if has("table") {
            let nerve = CyclicNerve::of_monoid(&self.monoid()?)?.with_cap(cap);
            TruncatedCyclicSet::from_model(nerve, truncation)?
        } else if has("compose") {
            let nerve = CyclicNerve::new(self.category()?)?.with_cap(cap);
            TruncatedCyclicSet::from_model(nerve, truncation)?
        } else {
            return Err(CliError::Input(format!(
                "{}: expected a presentation (`representables`), a monoid (`table`) or a category (`compose`)",
                self.path
            )));
        };
        Ok(Arc::new(x))
    }
}
