use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::fieldgrid::Field;
use crate::fieldgrid::{field_norms, FieldValue, Norms};
use crate::{Error, Result};

use super::{MaxwellResidual, RelationCheck, RelationResiduals, WaveResiduals};

/// `{relation_name: {linf, l2}}`, serialised with sorted keys.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidualReport(pub BTreeMap<String, Norms>);

impl ResidualReport {
    pub fn new() -> Self {
        ResidualReport::default()
    }

    pub fn insert_field<T: FieldValue>(&mut self, name: impl Into<String>, field: &Field<T>) {
        self.0.insert(name.into(), field_norms(field));
    }

    pub fn insert_residuals(&mut self, names: [&str; 4], r: &RelationResiduals) {
        self.insert_field(names[0], &r.scalar);
        self.insert_field(names[1], &r.pseudoscalar);
        self.insert_field(names[2], &r.vector);
        self.insert_field(names[3], &r.pseudovector);
    }

    pub fn insert_maxwell(&mut self, m: &MaxwellResidual) {
        self.insert_residuals(
            ["gauss", "magnetic_divergence", "ampere", "faraday"],
            &m.residuals,
        );
    }

    pub fn insert_relation(&mut self, r: &RelationCheck) {
        self.insert_residuals(r.names, &r.residuals);
    }

    pub fn insert_wave(&mut self, prefix: &str, w: &WaveResiduals) {
        self.insert_field(format!("{prefix}wave_e"), &w.wave_e);
        self.insert_field(format!("{prefix}wave_h"), &w.wave_h);
        self.insert_field(format!("{prefix}continuity"), &w.continuity);
    }

    pub fn get(&self, name: &str) -> Option<Norms> {
        self.0.get(name).copied()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldgrid::{Grid3, ScalarField};

    #[test]
    fn json_shape() {
        let g = Grid3::cube(4, 4.0).unwrap();
        let mut r = ResidualReport::new();
        r.insert_field("zero", &ScalarField::zeros(g));
        r.insert_field("ones", &ScalarField::constant(g, 1.0));
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["ones"]["linf"], 1.0);
        assert_eq!(v["ones"]["l2"], 8.0);
        assert_eq!(v["zero"]["l2"], 0.0);
    }
}
