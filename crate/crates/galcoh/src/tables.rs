//! Regenerates the published tables: every row carries the computed value, the
//! closed-form value and a match flag.

use galcoh_core::rootdata::{BasedRootDatum, CartanType, InnerClass};
use serde::Serialize;

use crate::engine::{Engine, Prepared};
use crate::error::CliError;
use crate::formulas::{self, DELTA, EXCEPTIONAL_AD, EXCEPTIONAL_SC};
use crate::named::resolve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Classical,
    Spin,
    ExceptionalSc,
    Adjoint,
    All,
}

impl std::str::FromStr for Which {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "classical" => Which::Classical,
            "spin" => Which::Spin,
            "exceptional-sc" => Which::ExceptionalSc,
            "adjoint" => Which::Adjoint,
            "all" => Which::All,
            _ => return Err(CliError::resolution(format!("unknown table {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub group: String,
    pub inner_class: Option<String>,
    pub k: String,
    pub h1: usize,
    pub h1_formula: usize,
    pub pi0: Option<usize>,
    pub pi0_formula: Option<usize>,
    pub name: Option<String>,
    /// Reprinted from the published table, not computed.
    pub real_rank_published: Option<usize>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub rows: Vec<Row>,
}

/// `delta(p mod 4, q mod 4)` recovered as `|H^1(Spin(p,q))| - floor((p+q)/4)`.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaTable {
    pub computed: Vec<Vec<Option<usize>>>,
    pub published: Vec<Vec<usize>>,
    pub matches: bool,
}

/// Adjoint inner classes: number of forms in the census against the table's `|H^1|`.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub inner_class: String,
    pub forms: usize,
    pub h1_formula: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub schema_version: u32,
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub adjoint_census: Vec<CensusRow>,
}

impl Document {
    pub fn all_match(&self) -> bool {
        self.tables.iter().flat_map(|t| &t.rows).all(|r| r.matches)
            && self.delta.as_ref().is_none_or(|d| d.matches)
            && self.adjoint_census.iter().all(|r| r.matches)
    }
}

pub fn classical_names() -> Vec<String> {
    let mut v = Vec::new();
    for n in 2..=8 {
        v.push(format!("SL({n},R)"));
    }
    for n in 1..=8 {
        v.push(format!("GL({n},R)"));
    }
    for n in 2..=8usize {
        for q in 0..=n / 2 {
            v.push(format!("SU({},{q})", n - q));
        }
    }
    for n in 1..=4 {
        v.push(format!("SL({n},H)"));
    }
    for n in 1..=8usize {
        v.push(format!("Sp({},R)", 2 * n));
        for q in 0..=n / 2 {
            v.push(format!("Sp({},{q})", n - q));
        }
    }
    for n in 3..=8usize {
        for q in 0..=n / 2 {
            v.push(format!("SO({},{q})", n - q));
        }
    }
    for n in 2..=8 {
        v.push(format!("SO*({})", 2 * n));
    }
    v
}

pub fn spin_names() -> Vec<String> {
    let mut v = Vec::new();
    for n in 3..=10usize {
        for q in 0..=n / 2 {
            v.push(format!("Spin({},{q})", n - q));
        }
    }
    for n in 2..=5 {
        v.push(format!("Spin*({})", 2 * n));
    }
    v
}

pub fn adjoint_names() -> Vec<String> {
    let mut v = Vec::new();
    for n in 2..=8 {
        v.push(format!("PSL({n},R)"));
    }
    for n in 1..=4 {
        v.push(format!("PSL({n},H)"));
    }
    for n in 2..=8usize {
        for q in 0..=n / 2 {
            v.push(format!("PSU({},{q})", n - q));
        }
    }
    for n in 3..=8usize {
        for q in 0..=n / 2 {
            v.push(format!("PSO({},{q})", n - q));
        }
    }
    for n in 2..=8 {
        v.push(format!("PSO*({})", 2 * n));
    }
    for n in 1..=6usize {
        v.push(format!("PSp({},R)", 2 * n));
        for q in 0..=n / 2 {
            v.push(format!("PSp({},{q})", n - q));
        }
    }
    for (_, _, name, _, _) in EXCEPTIONAL_AD {
        v.push(format!("E7ad-{name}"));
    }
    v
}

fn named_rows(engine: &mut Engine, names: &[String]) -> Result<Vec<Row>, CliError> {
    names
        .iter()
        .map(|n| {
            let r = resolve(n)?;
            let ev = engine.evaluate(&r)?;
            Ok(Row {
                group: ev.name.clone(),
                inner_class: None,
                k: ev.k_label.name(),
                h1: ev.h1,
                h1_formula: ev.expected_h1.unwrap_or(ev.h1),
                pi0: ev.pi0,
                pi0_formula: ev.expected_pi0,
                name: None,
                real_rank_published: None,
                matches: ev.matches(),
            })
        })
        .collect()
}

fn exceptional_rows(engine: &mut Engine) -> Result<Vec<Row>, CliError> {
    EXCEPTIONAL_SC
        .iter()
        .map(|row| {
            let alias = if row.name.is_empty() { row.k } else { row.name };
            let ev = engine.evaluate(&resolve(&format!("{}-{alias}", row.group))?)?;
            let k = ev.k_label.name();
            Ok(Row {
                group: row.group.to_string(),
                inner_class: Some(if row.outer { "split" } else { "compact" }.to_string()),
                matches: ev.matches() && k == row.k,
                k,
                h1: ev.h1,
                h1_formula: row.h1,
                pi0: None,
                pi0_formula: None,
                name: Some(row.name.to_string()),
                real_rank_published: Some(row.real_rank),
            })
        })
        .collect()
}

fn delta_table(rows: &[Row]) -> DeltaTable {
    let mut computed: Vec<Vec<Option<usize>>> = vec![vec![None; 4]; 4];
    let mut consistent = true;
    for r in rows {
        let Some(args) = r.group.strip_prefix("Spin(").and_then(|s| s.strip_suffix(')')) else { continue };
        let Some((p, q)) = args.split_once(',') else { continue };
        let (p, q): (usize, usize) = (p.parse().expect("p"), q.parse().expect("q"));
        let d = r.h1.checked_sub((p + q) / 4);
        for (a, b) in [(p % 4, q % 4), (q % 4, p % 4)] {
            match (computed[a][b], d) {
                (_, None) => consistent = false,
                (None, Some(d)) => computed[a][b] = Some(d),
                (Some(prev), Some(d)) if prev != d => consistent = false,
                _ => {}
            }
        }
    }
    let published: Vec<Vec<usize>> = DELTA.iter().map(|r| r.to_vec()).collect();
    let matches = consistent
        && computed.iter().zip(&published).all(|(c, p)| c.iter().zip(p).all(|(x, y)| *x == Some(*y)));
    DeltaTable { computed, published, matches }
}

fn adjoint_census(engine: &mut Engine) -> Result<Vec<CensusRow>, CliError> {
    let mut classes: Vec<(String, &str, bool, usize)> = Vec::new();
    for n in 2..=8usize {
        classes.push((format!("A{}", n - 1), "compact", false, formulas::psu(n, 0).1));
        if n >= 3 {
            classes.push((format!("A{}", n - 1), "split", true, formulas::psl_real(n).1));
        }
    }
    for m in 2..=3usize {
        classes.push((format!("B{m}"), "compact", false, formulas::pso(2 * m + 1, 0).1));
    }
    for m in 3..=6usize {
        classes.push((format!("C{m}"), "compact", false, formulas::psp_real(m).1));
    }
    for m in 4..=4usize {
        classes.push((format!("D{m}"), "compact", false, formulas::pso(2 * m, 0).1));
        classes.push((format!("D{m}"), "split", true, formulas::pso(2 * m - 1, 1).1));
    }
    classes.push(("E7".into(), "compact", false, 4));
    classes
        .into_iter()
        .map(|(t, label, outer, expect)| {
            let ty: CartanType = t.parse()?;
            let rd = BasedRootDatum::adjoint(&ty);
            let ic = if outer { InnerClass::flip(&rd)? } else { InnerClass::compact(&rd) };
            let p: std::rc::Rc<Prepared> = engine.prepare(&format!("{t}:ad:{label}"), &rd, &ic)?;
            let forms = p.census.forms.len();
            Ok(CensusRow { inner_class: format!("{t} adjoint, {label}"), forms, h1_formula: expect, matches: forms == expect })
        })
        .collect()
}

pub fn build(which: Which) -> Result<Document, CliError> {
    let mut engine = Engine::new();
    let mut tables = Vec::new();
    let mut delta = None;
    let mut census = Vec::new();
    let all = which == Which::All;
    if all || which == Which::Classical {
        tables.push(Table { name: "classical".into(), rows: named_rows(&mut engine, &classical_names())? });
    }
    if all || which == Which::Spin {
        let rows = named_rows(&mut engine, &spin_names())?;
        delta = Some(delta_table(&rows));
        tables.push(Table { name: "spin".into(), rows });
    }
    if all || which == Which::ExceptionalSc {
        tables.push(Table { name: "exceptional-sc".into(), rows: exceptional_rows(&mut engine)? });
    }
    if all || which == Which::Adjoint {
        let mut rows = named_rows(&mut engine, &adjoint_names())?;
        for (row, (_, rank, name, _, _)) in rows.iter_mut().rev().zip(EXCEPTIONAL_AD.iter().rev()) {
            row.real_rank_published = Some(*rank);
            row.name = Some(name.to_string());
        }
        tables.push(Table { name: "adjoint".into(), rows });
        census = adjoint_census(&mut engine)?;
    }
    Ok(Document { schema_version: 1, tables, delta, adjoint_census: census })
}
