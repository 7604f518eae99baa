//! Text, JSON and CSV rendering. All orderings are fixed so output is byte-identical
//! across runs.

use galcoh_core::cohomology::KLabel;
use galcoh_core::exactlat::TorusPoint;
use serde::Serialize;

use crate::engine::Evaluation;
use crate::error::CliError;
use crate::tables::{Document, Table};

pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::resolution(format!("unknown format {s:?}"))),
        }
    }
}

pub fn point(p: &TorusPoint) -> Vec<String> {
    p.coords().iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
pub struct KLabelJson {
    pub name: String,
    pub dim_k: usize,
    pub rank_k: usize,
    pub compact_imaginary_type: String,
    pub k_type: String,
    pub central_torus_rank: usize,
}

impl From<&KLabel> for KLabelJson {
    fn from(k: &KLabel) -> Self {
        KLabelJson {
            name: k.name(),
            dim_k: k.dim_k,
            rank_k: k.rank_k,
            compact_imaginary_type: k.compact_imaginary_type.to_string(),
            k_type: k.k_type.to_string(),
            central_torus_rank: k.central_torus_rank,
        }
    }
}

#[derive(Serialize)]
struct H1Json<'a> {
    schema_version: u32,
    form: &'a str,
    k_label: KLabelJson,
    invariant: Vec<String>,
    h1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi0: Option<usize>,
    strong_classes: Vec<Vec<String>>,
}

pub fn h1(ev: &Evaluation, format: Format) -> String {
    let classes: Vec<Vec<String>> = ev.strong_classes.iter().map(point).collect();
    match format {
        Format::Json => {
            let doc = H1Json {
                schema_version: JSON_SCHEMA_VERSION,
                form: &ev.name,
                k_label: (&ev.k_label).into(),
                invariant: point(&ev.invariant),
                h1: ev.h1,
                pi0: ev.pi0,
                strong_classes: classes,
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["form", "k_label", "invariant", "h1", "pi0"]).expect("csv");
            w.write_record([
                ev.name.clone(),
                ev.k_label.name(),
                ev.invariant.to_string(),
                ev.h1.to_string(),
                ev.pi0.map(|p| p.to_string()).unwrap_or_default(),
            ])
            .expect("csv");
            csv_finish(w)
        }
        Format::Text => {
            let mut s = format!("form:      {}\nK:         {}\ninvariant: {}\n|H^1|:     {}\n", ev.name, ev.k_label, ev.invariant, ev.h1);
            if let Some(p) = ev.pi0 {
                s += &format!("pi0:       {p}\n");
            }
            s += "strong classes:\n";
            for c in &ev.strong_classes {
                s += &format!("  {c}\n");
            }
            s
        }
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn table_cells(t: &Table) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let header = vec![
        "group",
        "inner class",
        "K",
        "real rank (published, not computed)",
        "name",
        "pi0",
        "pi0 formula",
        "|H^1|",
        "|H^1| formula",
        "match",
    ];
    let rows = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.inner_class.clone().unwrap_or_default(),
                r.k.clone(),
                opt(r.real_rank_published),
                r.name.clone().unwrap_or_default(),
                opt(r.pi0),
                opt(r.pi0_formula),
                r.h1.to_string(),
                r.h1_formula.to_string(),
                if r.matches { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    (header, rows)
}

/// Columns empty in every row are dropped from text output.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let keep: Vec<usize> = (0..header.len()).filter(|&c| rows.iter().any(|r| !r[c].is_empty())).collect();
    let width: Vec<usize> = keep
        .iter()
        .map(|&c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0).max(header[c].len()))
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(keep.iter().map(|&c| header[c]).collect());
    for r in rows {
        out += &line(keep.iter().map(|&c| r[c].as_str()).collect());
    }
    out
}

pub fn tables(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        Format::Csv => {
            let mut w = csv_writer();
            let (header, _) = table_cells(&Table { name: String::new(), rows: vec![] });
            let mut h = vec!["table"];
            h.extend(header);
            w.write_record(&h).expect("csv");
            for t in &doc.tables {
                let (_, rows) = table_cells(t);
                for r in rows {
                    let mut rec = vec![t.name.clone()];
                    rec.extend(r);
                    w.write_record(&rec).expect("csv");
                }
            }
            csv_finish(w)
        }
        Format::Text => {
            let mut out = String::new();
            for t in &doc.tables {
                let (header, rows) = table_cells(t);
                out += &format!("== {} ==\n", t.name);
                out += &aligned(&header, &rows);
                out += "\n";
            }
            if let Some(d) = &doc.delta {
                out += "== delta(p mod 4, q mod 4): computed (published) ==\n";
                for (c, p) in d.computed.iter().zip(&d.published) {
                    let cells: Vec<String> =
                        c.iter().zip(p).map(|(x, y)| format!("{}({y})", x.map_or("?".to_string(), |v| v.to_string()))).collect();
                    out += &cells.join(" ");
                    out += "\n";
                }
                out += &format!("match: {}\n\n", if d.matches { "yes" } else { "NO" });
            }
            if !doc.adjoint_census.is_empty() {
                out += "== adjoint inner classes: census size ==\n";
                let rows: Vec<Vec<String>> = doc
                    .adjoint_census
                    .iter()
                    .map(|r| {
                        vec![
                            r.inner_class.clone(),
                            r.forms.to_string(),
                            r.h1_formula.to_string(),
                            if r.matches { "yes" } else { "NO" }.to_string(),
                        ]
                    })
                    .collect();
                out += &aligned(&["inner class", "forms", "|H^1| formula", "match"], &rows);
                out += "\n";
            }
            out
        }
    }
}
