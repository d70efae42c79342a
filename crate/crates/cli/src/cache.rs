//! On-disk memo of subcommand outcomes: one JSON file per command and
//! input tuple, stamped with the tool version.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::output::{Outcome, TOOL_VERSION};

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    tool_version: String,
    command: String,
    inputs: Map<String, Value>,
    outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File name built from the command and its sorted inputs.
    pub fn path(&self, command: &str, inputs: &Map<String, Value>) -> PathBuf {
        let mut name = command.to_string();
        for (k, v) in inputs {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Array(a) => a.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), String::from)).collect::<Vec<_>>().join(","),
                other => other.to_string(),
            };
            name.push_str(&format!("__{k}={v}"));
        }
        let name: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || "-_=.".contains(c) { c } else { '+' })
            .collect();
        self.dir.join(format!("{name}.json"))
    }

    /// A stored outcome, if present, readable and written by this version.
    pub fn load(&self, command: &str, inputs: &Map<String, Value>) -> Option<Outcome> {
        let text = fs::read_to_string(self.path(command, inputs)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.tool_version == TOOL_VERSION && entry.command == command && &entry.inputs == inputs)
            .then_some(entry.outcome)
    }

    pub fn store(&self, command: &str, inputs: &Map<String, Value>, outcome: &Outcome) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            inputs: inputs.clone(),
            outcome: outcome.clone(),
        };
        let path = self.path(command, inputs);
        // write then rename so a concurrent reader never sees half a file
        let tmp = path.with_extension(format!("json.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, path)
    }
}
