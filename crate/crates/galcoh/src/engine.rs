//! Evaluates resolved forms, caching one census per (datum, inner class).

use std::collections::HashMap;
use std::rc::Rc;

use galcoh_core::cohomology::{Census, InnerClassContext, InvariantClass, KLabel};
use galcoh_core::exactlat::TorusPoint;
use galcoh_core::isogeny::{adjoint_quotient, fiber_sizes, quotient_census, IsogenyMap, QuotientForm};
use galcoh_core::rootdata::{BasedRootDatum, InnerClass};

use crate::error::CliError;
use crate::named::{Resolved, Selector};

pub struct Prepared {
    pub ctx: InnerClassContext,
    pub census: Census,
    pub classes: Vec<InvariantClass>,
}

impl Prepared {
    pub fn new(rd: &BasedRootDatum, ic: &InnerClass) -> Result<Self, CliError> {
        let ctx = InnerClassContext::new(rd, ic)?;
        let census = ctx.census()?;
        let classes = ctx.invariant_classes()?;
        Ok(Prepared { ctx, census, classes })
    }

    /// Index of the unique form picked by `sel`.
    pub fn select(&self, sel: &Selector, what: &str) -> Result<usize, CliError> {
        if let Selector::Hint(amb) = sel {
            let v = self
                .ctx
                .datum()
                .from_ambient_vector(amb)
                .ok_or_else(|| CliError::resolution(format!("{what}: hint is outside the cocharacter space")))?;
            return Ok(self.ctx.locate_form(&self.census, &self.classes, &TorusPoint::new(v))?);
        }
        let hits: Vec<usize> = (0..self.census.forms.len())
            .filter(|&i| {
                let k = &self.census.forms[i].k_label;
                match sel {
                    Selector::DimK(d) => k.dim_k == *d,
                    Selector::KName(s) => k.name() == *s,
                    Selector::Hint(_) => unreachable!(),
                }
            })
            .collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            [] => Err(CliError::resolution(format!("{what}: no form matches {sel:?}"))),
            _ => {
                let names: Vec<String> = hits
                    .iter()
                    .map(|&i| {
                        let f = &self.census.forms[i];
                        format!("{} at {}", f.k_label.name(), f.invariant)
                    })
                    .collect();
                Err(CliError::resolution(format!("{what}: ambiguous, candidates: {}", names.join(", "))))
            }
        }
    }
}

pub struct Quotient {
    pub map: IsogenyMap,
    pub target: InnerClassContext,
    pub rows: Vec<QuotientForm>,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub name: String,
    pub k_label: KLabel,
    pub invariant: TorusPoint,
    pub h1: usize,
    pub strong_classes: Vec<TorusPoint>,
    pub pi0: Option<usize>,
    pub expected_h1: Option<usize>,
    pub expected_pi0: Option<usize>,
}

impl Evaluation {
    pub fn matches(&self) -> bool {
        self.expected_h1.is_none_or(|e| e == self.h1) && self.expected_pi0.is_none_or(|e| Some(e) == self.pi0)
    }

    /// Fails with a validation error if a closed-form value disagrees.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.matches() {
            return Ok(());
        }
        Err(CliError::validation(format!(
            "{}: computed |H^1| = {} (expected {:?}), pi0 = {:?} (expected {:?})",
            self.name, self.h1, self.expected_h1, self.pi0, self.expected_pi0
        )))
    }
}

#[derive(Default)]
pub struct Engine {
    prepared: HashMap<String, Rc<Prepared>>,
    quotients: HashMap<String, Rc<Quotient>>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    pub fn prepare(&mut self, key: &str, rd: &BasedRootDatum, ic: &InnerClass) -> Result<Rc<Prepared>, CliError> {
        if let Some(p) = self.prepared.get(key) {
            return Ok(p.clone());
        }
        let p = Rc::new(Prepared::new(rd, ic)?);
        self.prepared.insert(key.to_string(), p.clone());
        Ok(p)
    }

    pub fn adjoint(&mut self, key: &str, src: &Prepared) -> Result<Rc<Quotient>, CliError> {
        if let Some(q) = self.quotients.get(key) {
            return Ok(q.clone());
        }
        let map = adjoint_quotient(src.ctx.datum())?;
        let tic = map.target_inner_class(src.ctx.inner_class())?;
        let target = InnerClassContext::new(&map.target, &tic)?;
        let rows = quotient_census(&src.ctx, &target, &map)?;
        let q = Rc::new(Quotient { map, target, rows });
        self.quotients.insert(key.to_string(), q.clone());
        Ok(q)
    }

    pub fn evaluate(&mut self, r: &Resolved) -> Result<Evaluation, CliError> {
        let src = self.prepare(&r.key, &r.datum, &r.inner)?;
        let f = src.select(&r.selector, &r.name)?;
        let form = &src.census.forms[f];
        let fiber = &src.census.fibers[form.fiber];
        let mut ev = Evaluation {
            name: r.name.clone(),
            k_label: form.k_label.clone(),
            invariant: form.invariant.clone(),
            h1: form.h1_count,
            strong_classes: fiber.classes.iter().map(|c| c.rep.clone()).collect(),
            pi0: None,
            expected_h1: r.expected_h1,
            expected_pi0: r.expected_pi0,
        };
        if r.adjoint {
            let q = self.adjoint(&r.key, &src)?;
            let report = fiber_sizes(&src.ctx, &q.target, &q.map, fiber)?;
            let row = &q.rows[f];
            ev.invariant = report.target.invariant.clone();
            ev.h1 = row.target_h1;
            ev.strong_classes = report.target.classes.iter().map(|c| c.rep.clone()).collect();
            ev.pi0 = Some(row.pi0_quotient);
        }
        Ok(ev)
    }
}
