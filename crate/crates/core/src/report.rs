//! Metric tables as JSON (`report/v1`), CSV or Markdown.

use crate::metrics::{Comparison, MetricsRecord};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub const REPORT_SCHEMA: &str = "report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}` (expected json, csv or markdown)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        })
    }
}

const COLUMNS: [&str; 6] = ["noa", "nom", "sloc", "lcom1", "lcom2", "cbo"];

fn values(r: &MetricsRecord) -> [usize; 6] {
    [r.noa, r.nom, r.sloc, r.lcom1, r.lcom2, r.cbo]
}

#[derive(Serialize)]
struct MetricsDoc<'a> {
    schema: &'static str,
    classes: &'a [MetricsRecord],
}

#[derive(Serialize)]
struct CompareDoc<'a> {
    schema: &'static str,
    classes: Vec<&'a MetricsRecord>,
    comparisons: &'a [Comparison],
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

fn markdown(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n", header.join(" | "));
    s.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

pub fn metrics_report(rows: &[MetricsRecord], format: Format) -> String {
    let header: Vec<String> = ["name", "view"].into_iter().chain(COLUMNS).map(String::from).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.name.clone(), r.view.to_string()];
            row.extend(values(r).iter().map(|v| v.to_string()));
            row
        })
        .collect();
    match format {
        Format::Json => json(&MetricsDoc {
            schema: REPORT_SCHEMA,
            classes: rows,
        }),
        Format::Csv => csv_text(std::iter::once(header).chain(body).collect()),
        Format::Markdown => markdown(&header, &body),
    }
}

fn rules_cell(c: &Comparison) -> String {
    let fired: Vec<String> = c
        .rules
        .iter()
        .filter(|(_, n)| **n > 0)
        .map(|(r, n)| format!("{r}:{n}"))
        .collect();
    if fired.is_empty() {
        "-".into()
    } else {
        fired.join(" ")
    }
}

pub fn compare_report(cmp: &[Comparison], format: Format) -> String {
    match format {
        Format::Json => json(&CompareDoc {
            schema: REPORT_SCHEMA,
            classes: cmp.iter().flat_map(|c| [&c.original, &c.flattened]).collect(),
            comparisons: cmp,
        }),
        Format::Csv => {
            let rule_ids: Vec<String> = cmp.first().map(|c| c.rules.keys().cloned().collect()).unwrap_or_default();
            let mut header = vec!["name".to_string()];
            for c in COLUMNS {
                for suffix in ["original", "flattened", "delta"] {
                    header.push(format!("{c}_{suffix}"));
                }
            }
            header.extend(rule_ids.iter().cloned());
            let mut rows = vec![header];
            for c in cmp {
                let mut row = vec![c.name.clone()];
                let (o, f) = (values(&c.original), values(&c.flattened));
                for i in 0..COLUMNS.len() {
                    row.push(o[i].to_string());
                    row.push(f[i].to_string());
                    row.push((f[i] as i64 - o[i] as i64).to_string());
                }
                row.extend(rule_ids.iter().map(|r| c.rules[r].to_string()));
                rows.push(row);
            }
            csv_text(rows)
        }
        Format::Markdown => {
            let header: Vec<String> = std::iter::once("class".to_string())
                .chain(COLUMNS.iter().map(|c| c.to_uppercase()))
                .chain(std::iter::once("rules".to_string()))
                .collect();
            let rows: Vec<Vec<String>> = cmp
                .iter()
                .map(|c| {
                    let (o, f) = (values(&c.original), values(&c.flattened));
                    let mut row = vec![c.name.clone()];
                    for i in 0..COLUMNS.len() {
                        let d = f[i] as i64 - o[i] as i64;
                        row.push(if d == 0 {
                            o[i].to_string()
                        } else {
                            format!("{} → {} ({d:+})", o[i], f[i])
                        });
                    }
                    row.push(rules_cell(c));
                    row
                })
                .collect();
            markdown(&header, &rows)
        }
    }
}
