use anyhow::{bail, Result};
use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

/// A titled table; markdown renders every section, CSV only a single one.
pub struct Section {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: Option<&str>, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self {
            title: title.map(str::to_string),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(&format!("### {t}\n\n"));
        }
        out.push_str(&format!("| {} |\n", self.headers.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        out
    }
}

pub struct Doc {
    pub json: Value,
    pub sections: Vec<Section>,
    /// Prerendered markdown used instead of the sections.
    pub markdown: Option<String>,
}

impl Doc {
    pub fn new(json: Value, sections: Vec<Section>) -> Self {
        Self {
            json,
            sections,
            markdown: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Md => Ok(match &self.markdown {
                Some(md) => md.clone(),
                None => self
                    .sections
                    .iter()
                    .map(Section::markdown)
                    .collect::<Vec<_>>()
                    .join("\n"),
            }),
            Format::Csv => {
                let [section] = self.sections.as_slice() else {
                    bail!(
                        "this output has {} tables; use --format json or md",
                        self.sections.len()
                    );
                };
                let mut wtr = csv::Writer::from_writer(Vec::new());
                wtr.write_record(&section.headers)?;
                for row in &section.rows {
                    wtr.write_record(row)?;
                }
                Ok(String::from_utf8(wtr.into_inner()?)?)
            }
        }
    }
}
