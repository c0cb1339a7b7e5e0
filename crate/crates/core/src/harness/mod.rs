//! Experiment driver: residual-finiteness tables over the witness
//! families, lower-bound probes for `G_d`, and certificate records.

pub mod certificate;
pub mod config;
pub mod probe;
pub mod table;

pub use certificate::{TableCertificate, WitnessCertificate, SCHEMA_VERSION, TABLE_LABEL};
pub use config::{ExperimentConfig, WitnessFamily};
pub use probe::{rf_lower_probe, ProbeEntry, ProbeReport};
pub use table::{family_layers, rf_upper_table, scan, table_csv, RfTableRow, ScanEntry, CSV_HEADER};
