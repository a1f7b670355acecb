//! Versioned JSON envelopes for command output.
//!
//! Every command prints exactly one [`RunReport`] to stdout (logs go to
//! stderr), so downstream tooling can rely on a stable shape: the envelope
//! carries the schema version, the tool version, an echo of the inputs,
//! and the command-specific payload under `outputs`.  The machine-readable
//! schema ships with the repository and is embedded in the binary.

use serde::Serialize;
use serde_json::Value;

/// Version of the report envelope; bumped on breaking shape changes.
pub const SCHEMA_VERSION: &str = "1";

/// The JSON Schema document describing [`RunReport`], as shipped in the
/// repository at `schema/run_report.schema.json`.
pub const RUN_REPORT_SCHEMA: &str = include_str!("../../../schema/run_report.schema.json");

/// The output envelope.
#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub schema_version: &'static str,
    pub tool: &'static str,
    pub tool_version: &'static str,
    /// Subcommand that produced this report.
    pub command: String,
    /// Echo of the effective inputs (after defaulting).
    pub inputs: Value,
    /// Command-specific payload.
    pub outputs: T,
    /// RNG seed, for commands that draw samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &str, inputs: Value, outputs: T, elapsed_ms: u64) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs,
            outputs,
            seed: None,
            elapsed_ms,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Print the report as pretty JSON on stdout.
    pub fn emit(&self) -> crate::Result<()> {
        println!("{}", serde_json::to_string_pretty(self)?);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_document_is_valid_json_and_pins_version() {
        let schema: Value = serde_json::from_str(RUN_REPORT_SCHEMA).unwrap();
        assert_eq!(
            schema["properties"]["schema_version"]["const"],
            SCHEMA_VERSION
        );
        for field in ["command", "inputs", "outputs", "elapsed_ms"] {
            assert!(
                schema["required"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .any(|v| v == field),
                "{field} must be required"
            );
        }
    }

    #[test]
    fn report_round_trips() {
        let r = RunReport::new(
            "invariants",
            serde_json::json!({"curve": "0,-1,1,0,0"}),
            serde_json::json!({"ok": true}),
            12,
        )
        .with_seed(7);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["command"], "invariants");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["outputs"]["ok"], true);
    }
}
