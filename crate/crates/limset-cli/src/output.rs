//! Deterministic emission: every artifact carries the run configuration in
//! its header, so identical configurations yield byte-identical files.

use limset::error::{Error, Result};
use std::fs;
use std::path::{Path, PathBuf};

/// Echoed key/value pairs describing the run.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pairs: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(subcommand: &str) -> RunConfig {
        let mut c = RunConfig::default();
        c.push("subcommand", subcommand);
        c
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    pub fn header_lines(&self, comment: &str) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out.push_str(&format!("{comment} {k}={v}\n"));
        }
        out
    }

    pub fn json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .pairs
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::Value::Object(map)
    }
}

pub struct Emitter {
    out_dir: Option<PathBuf>,
    pub config: RunConfig,
}

impl Emitter {
    pub fn new(out_dir: Option<PathBuf>, config: RunConfig) -> Result<Emitter> {
        if let Some(dir) = &out_dir {
            fs::create_dir_all(dir)
                .map_err(|e| Error::Invalid(format!("cannot create {}: {e}", dir.display())))?;
        }
        Ok(Emitter { out_dir, config })
    }

    /// Write (or print, without an --out dir) a text artifact with the
    /// config echoed as comment lines.
    pub fn emit_text(&self, name: &str, comment: &str, body: &str) -> Result<()> {
        let content = format!("{}{body}", self.config.header_lines(comment));
        match &self.out_dir {
            None => {
                print!("{content}");
                Ok(())
            }
            Some(dir) => {
                let path = dir.join(name);
                fs::write(&path, content)
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
                Ok(())
            }
        }
    }

    /// Write a JSON artifact with the config embedded under `config`.
    pub fn emit_json(&self, name: &str, mut value: serde_json::Value) -> Result<()> {
        if let serde_json::Value::Object(map) = &mut value {
            map.insert("config".into(), self.config.json_value());
        }
        let body = serde_json::to_string_pretty(&value).expect("serialisable");
        match &self.out_dir {
            None => {
                println!("{body}");
                Ok(())
            }
            Some(dir) => {
                let path = dir.join(name);
                fs::write(&path, body)
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}
