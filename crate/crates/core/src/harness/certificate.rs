//! Versioned JSON certificates for tables and single witnesses. Loading a
//! certificate re-checks every claim it makes.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::table::RfTableRow;
use crate::error::{Error, Result};
use crate::hall::{word_norm, GroupElement};
use crate::witness::{verify_witness, WitnessQuotient};
use crate::VERSION;

pub const SCHEMA_VERSION: u32 = 1;

/// Label carried by every table: values are an upper envelope over the
/// implemented witness family, not exact `rf`.
pub const TABLE_LABEL: &str = "upper envelope over witness family";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCertificate {
    pub schema_version: u32,
    pub library_version: String,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub label: String,
    pub rows: Vec<RfTableRow>,
}

impl TableCertificate {
    pub fn new(config: &ExperimentConfig, rows: Vec<RfTableRow>) -> Self {
        TableCertificate {
            schema_version: SCHEMA_VERSION,
            library_version: VERSION.to_string(),
            config_hash: config.hash(),
            config: config.clone(),
            label: TABLE_LABEL.to_string(),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// Parse and re-verify.
    pub fn from_json(text: &str) -> Result<Self> {
        let cert: TableCertificate = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cert.verify()?;
        Ok(cert)
    }

    pub fn verify(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::MalformedWitness(format!("unknown schema version {}", self.schema_version)));
        }
        if self.config_hash != self.config.hash() {
            return Err(Error::MalformedWitness("config hash does not match the embedded config".into()));
        }
        let spec = self.config.family.group();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 && self.rows[i - 1].quotient_order > row.quotient_order {
                return Err(Error::MalformedWitness(format!("row {} breaks monotonicity", row.n)));
            }
            let g = GroupElement::parse(&row.worst_element, &spec)?;
            if !self.config.family.admits(&g) {
                return Err(Error::MalformedWitness(format!("{g} is outside the scanned family")));
            }
            check_claim(&g, &row.witness)?;
            if row.quotient_order != row.witness.order {
                return Err(Error::MalformedWitness(format!("row {} order disagrees with its witness", row.n)));
            }
            match word_norm(&g, row.n)? {
                Some(k) if k <= row.n => {}
                _ => return Err(Error::MalformedWitness(format!("{g} has norm above {}", row.n))),
            }
        }
        Ok(())
    }
}

fn check_claim(g: &GroupElement, w: &WitnessQuotient) -> Result<()> {
    let check = verify_witness(g, w)?;
    if !check.nontrivial {
        return Err(Error::MalformedWitness(format!("witness does not separate {g}")));
    }
    if check.order != w.order || check.image != w.image {
        return Err(Error::MalformedWitness(format!("witness data for {g} does not re-derive")));
    }
    Ok(())
}

/// Certificate for one separated element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub schema_version: u32,
    pub library_version: String,
    pub group: String,
    pub element: String,
    pub witness: WitnessQuotient,
}

impl WitnessCertificate {
    pub fn new(g: &GroupElement, witness: WitnessQuotient) -> Self {
        WitnessCertificate {
            schema_version: SCHEMA_VERSION,
            library_version: VERSION.to_string(),
            group: g.spec().descriptor(),
            element: g.to_string(),
            witness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// Re-verify against the group the caller names.
    pub fn verify(&self, spec: &crate::hall::QuotientSpec) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION || self.group != spec.descriptor() {
            return Err(Error::MalformedWitness("certificate is for a different schema or group".into()));
        }
        check_claim(&GroupElement::parse(&self.element, spec)?, &self.witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{rf_upper_table, WitnessFamily};
    use crate::hall::QuotientSpec;
    use crate::witness::lamplighter_witness;

    fn cert() -> TableCertificate {
        let cfg = ExperimentConfig::new(WitnessFamily::Lamplighter, 4);
        TableCertificate::new(&cfg, rf_upper_table(&cfg).unwrap())
    }

    #[test]
    fn round_trip_and_determinism() {
        let c = cert();
        let json = c.to_json();
        assert_eq!(json, cert().to_json());
        assert_eq!(TableCertificate::from_json(&json).unwrap(), c);
        assert!(json.contains(TABLE_LABEL));
    }

    #[test]
    fn tampering_is_detected() {
        let c = cert();
        let mut bad = c.clone();
        bad.rows[2].quotient_order += 1u32;
        assert!(bad.verify().is_err());

        let mut bad = c.clone();
        bad.config.max_n = 5;
        assert!(bad.verify().is_err());

        let mut bad = c.clone();
        bad.rows[0].worst_element = "a_0 a_5".into();
        assert!(bad.verify().is_err());

        let json = c.to_json().replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(TableCertificate::from_json(&json).is_err());
    }

    #[test]
    fn single_witness_certificate() {
        let spec = QuotientSpec::TrivialCenter;
        let g = GroupElement::parse("a_0 a_1^-1", &spec).unwrap();
        let c = WitnessCertificate::new(&g, lamplighter_witness(&g).unwrap());
        let json = c.to_json();
        for needle in ["\"p\": 7", "\"s\": 3", "\"k\": 1", "\"r\": 3", "\"order\": \"21\""] {
            assert!(json.contains(needle), "{needle} missing from {json}");
        }
        c.verify(&spec).unwrap();
        let mut bad = c.clone();
        bad.element = "a_0".into();
        assert!(bad.verify(&spec).is_err());
    }
}
