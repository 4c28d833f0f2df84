//! Versioned JSON reports.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report<C: Serialize, P: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub precision_bits: u32,
    pub config: C,
    pub result: P,
}

impl<C: Serialize, P: Serialize> Report<C, P> {
    pub fn new(
        command: &'static str,
        seed: Option<u64>,
        precision_bits: u32,
        config: C,
        result: P,
    ) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command,
            seed,
            precision_bits,
            config,
            result,
        }
    }

    /// Writes the report to the path, or stdout when no path is given.
    /// A closed stdout (downstream pipe) is not an error.
    pub fn emit(&self, out: Option<&std::path::Path>) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("report serializes");
        match out {
            Some(path) => std::fs::write(path, text + "\n"),
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                match writeln!(stdout, "{text}") {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    other => other,
                }
            }
        }
    }
}
