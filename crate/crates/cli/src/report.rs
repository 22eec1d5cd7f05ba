//! The `crookedlab-report v1` text document.
//!
//! ```text
//! crookedlab-report v1
//! tool = crookedlab 0.1.0
//! command = check pair --a 0 --b 1 --delta 2/5 id.plmap
//!
//! [inputs]
//! map.sha256 = 9f86...
//!
//! [verdict]
//! status = fails
//! delta = 2/5 (0.400000)
//! ```
//!
//! Keys are unique within a section and sections appear in insertion
//! order. Rational values are written exactly, followed by a six-place
//! decimal in parentheses for reading only. The `[timing]` section is the
//! only part that varies between identical runs and is left out with
//! `--no-timing`.

use std::fmt::Write as _;
use std::time::Duration;

use crookedlab::rational::decimal;
use crookedlab::Rational;
use sha2::{Digest, Sha256};

pub const HEADER: &str = "crookedlab-report v1";

pub struct Report {
    command: String,
    sections: Vec<(String, Vec<(String, String)>)>,
    timing: Option<Duration>,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report {
            command,
            sections: Vec::new(),
            timing: None,
        }
    }

    pub fn section(&mut self, name: &str) -> Section<'_> {
        self.sections.push((name.to_string(), Vec::new()));
        Section(&mut self.sections.last_mut().expect("just pushed").1)
    }

    pub fn set_timing(&mut self, elapsed: Duration) {
        self.timing = Some(elapsed);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "tool = crookedlab {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "command = {}", self.command);
        for (name, entries) in &self.sections {
            let _ = writeln!(out, "\n[{name}]");
            for (k, v) in entries {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        if let Some(t) = self.timing {
            let _ = writeln!(out, "\n[timing]\nelapsed_ms = {}", t.as_millis());
        }
        out
    }
}

pub struct Section<'a>(&'a mut Vec<(String, String)>);

impl Section<'_> {
    pub fn text(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn rational(&mut self, key: &str, value: &Rational) -> &mut Self {
        self.text(key, exact(value))
    }

    pub fn interval(&mut self, key: &str, lo: &Rational, hi: &Rational) -> &mut Self {
        self.text(
            key,
            format!("[{lo}, {hi}] ([{}, {}])", decimal(lo, 6), decimal(hi, 6)),
        )
    }
}

/// `p/q (d.dddddd)`.
pub fn exact(value: &Rational) -> String {
    format!("{value} ({})", decimal(value, 6))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
