use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use galcoh_core::cohomology::torus_h1;
use galcoh_core::exactlat::{Rational, TorusPoint};
use galcoh_core::isogeny::{fiber_sizes, quotient_datum};
use galcoh_core::rootdata::{BasedRootDatum, CartanType, InnerClass};
use serde::Serialize;

use crate::datafile::{parse_inner, DatumFile, MatrixFile};
use crate::engine::{Engine, Evaluation, Prepared};
use crate::error::CliError;
use crate::named::{resolve, Selector};
use crate::report::{self, point, Format, KLabelJson, JSON_SCHEMA_VERSION};
use crate::tables::{self, Which};

#[derive(Parser, Debug)]
#[command(name = "galcoh", version, about = "Galois cohomology of real reductive groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// |H^1(Gamma, G)| for one real form.
    H1 {
        /// A named form such as "SU(2,1)", "Spin(5,3)", "E8-split".
        name: Option<String>,
        #[command(flatten)]
        datum: DatumArgs,
        /// With --datum: "index:N", "dim:N" or a K label such as "A1T".
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// All real forms of one inner class.
    Census {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Regenerate the published tables.
    Tables {
        #[arg(long, default_value = "all")]
        which: Which,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Fibers of H^1(G) -> H^1(G/A) for a central subgroup A.
    Fibers {
        /// A named form; its whole inner class is reported.
        name: Option<String>,
        #[command(flatten)]
        datum: DatumArgs,
        /// "center", "trivial", "gen:i,j" (center generators) or "1/2,0;0,1/2" (points).
        #[arg(long, default_value = "center")]
        quotient: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// H^1 of a torus with the given involution of its cocharacter lattice.
    TorusH1 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Args, Debug, Default)]
pub struct DatumArgs {
    /// Cartan type such as "E7" or "A3xA1".
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// "sc", "ad", or a datum file.
    #[arg(long, default_value = "sc")]
    pub isogeny: String,
    /// A datum file (same as --isogeny FILE).
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// "compact", "flip" or "perm:i,j,...".
    #[arg(long)]
    pub inner: Option<String>,
}

impl DatumArgs {
    fn given(&self) -> bool {
        self.cartan_type.is_some() || self.datum.is_some() || !matches!(self.isogeny.as_str(), "sc" | "ad")
    }

    fn load(&self) -> Result<(BasedRootDatum, InnerClass, String), CliError> {
        let file = self.datum.clone().or_else(|| {
            (!matches!(self.isogeny.as_str(), "sc" | "ad")).then(|| PathBuf::from(&self.isogeny))
        });
        let (rd, from_file) = match &file {
            Some(path) => {
                let f = DatumFile::load(path)?;
                let rd = f.datum()?;
                if let Some(t) = &self.cartan_type {
                    if t.parse::<CartanType>()? != *rd.cartan_type() {
                        return Err(CliError::resolution(format!("--type {t} disagrees with {}", path.display())));
                    }
                }
                let ic = f.inner_class(&rd)?;
                (rd, ic)
            }
            None => {
                let t: CartanType = self
                    .cartan_type
                    .as_deref()
                    .ok_or_else(|| CliError::resolution("give --type, --datum or a named form"))?
                    .parse()?;
                let rd = if self.isogeny == "ad" {
                    BasedRootDatum::adjoint(&t)
                } else {
                    BasedRootDatum::simply_connected(&t)
                };
                (rd, None)
            }
        };
        let ic = match (&self.inner, from_file) {
            (Some(s), _) => parse_inner(s, &rd)?,
            (None, Some(ic)) => ic,
            (None, None) => InnerClass::compact(&rd),
        };
        let key = format!("{}:{}:{:?}", rd.cartan_type(), self.isogeny, ic.permutation());
        Ok((rd, ic, key))
    }
}

fn parse_selector(s: &str) -> Result<Selector, CliError> {
    if let Some(d) = s.strip_prefix("dim:") {
        return d.parse().map(Selector::DimK).map_err(|_| CliError::resolution(format!("bad selector {s:?}")));
    }
    Ok(Selector::KName(s.to_string()))
}

fn evaluate_datum(d: &DatumArgs, form: Option<&str>) -> Result<Evaluation, CliError> {
    let (rd, ic, _) = d.load()?;
    let p = Prepared::new(&rd, &ic)?;
    let sel = form.ok_or_else(|| CliError::resolution("--form is required with a datum"))?;
    let f = match sel.strip_prefix("index:") {
        Some(i) => {
            let i: usize = i.parse().map_err(|_| CliError::resolution(format!("bad selector {sel:?}")))?;
            if i >= p.census.forms.len() {
                return Err(CliError::resolution(format!("form index {i} out of range")));
            }
            i
        }
        None => p.select(&parse_selector(sel)?, sel)?,
    };
    let form = &p.census.forms[f];
    Ok(Evaluation {
        name: format!("{} form {f}", rd.cartan_type()),
        k_label: form.k_label.clone(),
        invariant: form.invariant.clone(),
        h1: form.h1_count,
        strong_classes: p.census.fibers[form.fiber].classes.iter().map(|c| c.rep.clone()).collect(),
        pi0: None,
        expected_h1: None,
        expected_pi0: None,
    })
}

#[derive(Serialize)]
struct FormJson {
    form: usize,
    k_label: KLabelJson,
    invariant: Vec<String>,
    h1: usize,
    quasicompact: bool,
    strong_classes: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct FiberJson {
    invariant: Vec<String>,
    strong_classes: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CensusJson {
    schema_version: u32,
    datum: String,
    inner_class: Vec<usize>,
    forms: Vec<FormJson>,
    fibers: Vec<FiberJson>,
}

fn census(d: &DatumArgs, format: Format) -> Result<String, CliError> {
    let (rd, ic, _) = d.load()?;
    let p = Prepared::new(&rd, &ic)?;
    let forms: Vec<FormJson> = p
        .census
        .forms
        .iter()
        .enumerate()
        .map(|(i, f)| FormJson {
            form: i,
            k_label: (&f.k_label).into(),
            invariant: point(&f.invariant),
            h1: f.h1_count,
            quasicompact: f.is_quasicompact,
            strong_classes: f.classes.iter().map(|&c| point(&p.census.fibers[f.fiber].classes[c].rep)).collect(),
        })
        .collect();
    let fibers: Vec<FiberJson> = p
        .census
        .fibers
        .iter()
        .map(|f| FiberJson { invariant: point(&f.invariant), strong_classes: f.classes.iter().map(|c| point(&c.rep)).collect() })
        .collect();
    let doc = CensusJson {
        schema_version: JSON_SCHEMA_VERSION,
        datum: rd.cartan_type().to_string(),
        inner_class: ic.permutation().to_vec(),
        forms,
        fibers,
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        _ => {
            let mut s = format!(
                "datum {}  inner class {:?}  strong forms {}\n",
                doc.datum,
                doc.inner_class,
                p.census.strong_form_count()
            );
            for (f, rec) in doc.forms.iter().zip(&p.census.forms) {
                s += &format!(
                    "form {:>2}  K {:<12} invariant {:<20} |H^1| {}{}\n",
                    f.form,
                    f.k_label.name,
                    rec.invariant.to_string(),
                    f.h1,
                    if f.quasicompact { "  (quasicompact)" } else { "" }
                );
            }
            s
        }
    })
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::resolution(format!("bad rational {s:?}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n.into(), d.into()))
}

fn quotient_points(rd: &BasedRootDatum, arg: &str) -> Result<Vec<TorusPoint>, CliError> {
    let center = rd.center();
    match arg {
        "center" => Ok(center.finite.into_iter().map(|(g, _)| g).collect()),
        "trivial" => Ok(vec![]),
        _ => {
            if let Some(list) = arg.strip_prefix("gen:") {
                return list
                    .split(',')
                    .map(|i| {
                        let i: usize = i.trim().parse().map_err(|_| CliError::resolution(format!("bad index {i:?}")))?;
                        center
                            .finite
                            .get(i)
                            .map(|(g, _)| g.clone())
                            .ok_or_else(|| CliError::resolution(format!("center has no generator {i}")))
                    })
                    .collect();
            }
            arg.split(';')
                .map(|v| {
                    let coords = v.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
                    if coords.len() != rd.rank() {
                        return Err(CliError::resolution(format!("point {v:?} has the wrong dimension")));
                    }
                    Ok(TorusPoint::new(coords))
                })
                .collect()
        }
    }
}

#[derive(Serialize)]
struct FiberRowJson {
    source_invariant: Vec<String>,
    target_invariant: Vec<String>,
    target_class: usize,
    target_k_label: String,
    source_forms: Vec<String>,
    hit: bool,
    fiber: usize,
    quotient_order: Option<usize>,
}

#[derive(Serialize)]
struct FibersJson {
    schema_version: u32,
    source: String,
    target: String,
    kernel_order: usize,
    kernel_h1: usize,
    fibers: Vec<FiberRowJson>,
}

fn fibers(name: Option<&str>, d: &DatumArgs, quotient: &str, format: Format) -> Result<String, CliError> {
    let (rd, ic) = match name {
        Some(s) => {
            let r = resolve(s)?;
            (r.datum, r.inner)
        }
        None => {
            let (rd, ic, _) = d.load()?;
            (rd, ic)
        }
    };
    let src = Prepared::new(&rd, &ic)?;
    let map = quotient_datum(&rd, &quotient_points(&rd, quotient)?)?;
    let tic = map.target_inner_class(&ic)?;
    let tgt = galcoh_core::cohomology::InnerClassContext::new(&map.target, &tic)?;
    let h1a = map.kernel_h1(&ic);
    let mut rows = Vec::new();
    for (fi, fiber) in src.census.fibers.iter().enumerate() {
        let rep = fiber_sizes(&src.ctx, &tgt, &map, fiber)?;
        for (j, class) in rep.target.classes.iter().enumerate() {
            let mut source_forms: Vec<String> = (0..fiber.classes.len())
                .filter(|&c| rep.images[c] == j)
                .filter_map(|c| src.census.form_of(fi, c))
                .map(|f| src.census.forms[f].k_label.name())
                .collect();
            source_forms.dedup();
            let n = rep.counts[j];
            rows.push(FiberRowJson {
                source_invariant: point(&fiber.invariant),
                target_invariant: point(&rep.target.invariant),
                target_class: j,
                target_k_label: tgt.k_label(&class.rep)?.name(),
                source_forms,
                hit: n > 0,
                fiber: n,
                quotient_order: (n > 0).then(|| h1a / n),
            });
        }
    }
    let doc = FibersJson {
        schema_version: JSON_SCHEMA_VERSION,
        source: rd.cartan_type().to_string(),
        target: format!("{} / A", map.target.cartan_type()),
        kernel_order: map.kernel_order(),
        kernel_h1: h1a,
        fibers: rows,
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        _ => {
            let mut s = format!("{} -> {}  |A| = {}  |H^1(A)| = {}\n", doc.source, doc.target, doc.kernel_order, doc.kernel_h1);
            for r in &doc.fibers {
                s += &format!(
                    "over ({}) -> ({})  class {}  K {:<10} fiber {}  {}  from [{}]\n",
                    r.source_invariant.join(","),
                    r.target_invariant.join(","),
                    r.target_class,
                    r.target_k_label,
                    r.fiber,
                    r.quotient_order.map_or("not hit".to_string(), |q| format!("quotient order {q}")),
                    r.source_forms.join(" "),
                );
            }
            s
        }
    })
}

fn torus(path: &PathBuf, format: Format) -> Result<String, CliError> {
    let m = MatrixFile::load(path)?;
    let g = torus_h1(&m).map_err(|e| CliError::resolution(e.to_string()))?;
    Ok(match format {
        Format::Json => {
            let divisors: Vec<String> = g.divisors().iter().map(|d| d.to_string()).collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "h1": g.to_string(),
                "order": g.order().to_string(),
                "divisors": divisors,
            }))
            .expect("serializable")
                + "\n"
        }
        _ => format!("{g}\n"),
    })
}

/// Runs one invocation and returns its standard output.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::H1 { name, datum, form, format } => {
            let ev = match name {
                Some(s) => {
                    if datum.given() {
                        return Err(CliError::resolution("give either a named form or a datum, not both"));
                    }
                    let r = resolve(&s)?;
                    let ev = Engine::new().evaluate(&r)?;
                    ev.validate()?;
                    ev
                }
                None => evaluate_datum(&datum, form.as_deref())?,
            };
            Ok(report::h1(&ev, format))
        }
        Command::Census { datum, format } => census(&datum, format),
        Command::Tables { which, format } => {
            let doc = tables::build(which)?;
            Ok(report::tables(&doc, format))
        }
        Command::Fibers { name, datum, quotient, format } => fibers(name.as_deref(), &datum, &quotient, format),
        Command::TorusH1 { matrix, format } => torus(&matrix, format),
    }
}
