//! Named real forms: `SU(2,1)`, `Spin(5,3)`, `Sp(4,R)`, `PSO*(8)`, `E8-split`, ...
//!
//! A name resolves to a datum, an inner class and a selector picking one form of
//! that inner class's census. Equal-rank orthogonal and spin forms are picked by an
//! explicit strong involution (their K labels can coincide under triality); all
//! other classical forms by the dimension of K; exceptional forms by K label.

use galcoh_core::exactlat::{frac, Rational};
use galcoh_core::rootdata::{classical, BasedRootDatum, CartanType, InnerClass};

use crate::error::CliError;
use crate::formulas;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    DimK(usize),
    KName(String),
    /// Coordinates of a strong involution in the ambient basis of the datum.
    Hint(Vec<Rational>),
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub name: String,
    /// Identifies (datum, inner class) for caching.
    pub key: String,
    pub datum: BasedRootDatum,
    pub inner: InnerClass,
    pub selector: Selector,
    /// Evaluate on the quotient by the full center.
    pub adjoint: bool,
    pub expected_h1: Option<usize>,
    pub expected_pi0: Option<usize>,
}

fn so_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn sp_dim(n: usize) -> usize {
    n * (2 * n + 1)
}

fn parse_args(inner: &str) -> Vec<String> {
    inner.split(',').map(|s| s.trim().to_string()).collect()
}

fn num(s: &str, name: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::resolution(format!("{name}: expected a nonnegative integer, got {s:?}")))
}

fn field(s: &str) -> Option<char> {
    match s {
        "R" | "r" => Some('R'),
        "H" | "h" => Some('H'),
        _ => None,
    }
}

struct Plan {
    datum: BasedRootDatum,
    key: String,
    inner: InnerClass,
    selector: Selector,
}

fn compact(datum: BasedRootDatum, key: String, selector: Selector) -> Plan {
    let inner = InnerClass::compact(&datum);
    Plan { datum, key: format!("{key}:compact"), inner, selector }
}

fn flip(datum: BasedRootDatum, key: String, selector: Selector) -> Result<Plan, CliError> {
    let inner = InnerClass::flip(&datum)?;
    Ok(Plan { datum, key: format!("{key}:flip"), inner, selector })
}

/// The outer class of `D_m` in orthogonal coordinates, `e_m -> -e_m`. For `m = 2`
/// this swaps the two `A1` factors, which have no diagram involution of their own.
fn d_outer(datum: BasedRootDatum, key: String, selector: Selector, m: usize) -> Result<Plan, CliError> {
    if m == 2 {
        let inner = InnerClass::from_permutation(&datum, &[1, 0])?;
        return Ok(Plan { datum, key: format!("{key}:flip"), inner, selector });
    }
    flip(datum, key, selector)
}

/// `SL(n)` real forms: split for `quaternionic = false`.
fn sl_form(n: usize, quaternionic: bool) -> Result<Plan, CliError> {
    if n < 2 {
        return Err(CliError::resolution("SL(n) needs n >= 2"));
    }
    let sel = Selector::DimK(if quaternionic { sp_dim(n / 2) } else { so_dim(n) });
    if n == 2 {
        Ok(compact(classical::sl(2), "sl2".into(), sel))
    } else {
        flip(classical::sl(n), format!("sl{n}"), sel)
    }
}

fn half_hint(m: usize, k: usize) -> Selector {
    Selector::Hint((0..m).map(|i| if i < k { frac(1, 2) } else { frac(0, 1) }).collect())
}

fn quarter_hint(m: usize) -> Selector {
    Selector::Hint(vec![frac(1, 4); m])
}

/// Orthogonal-type forms for `SO(p,q)` (`spin = false`) or `Spin(p,q)`.
fn orthogonal(p: usize, q: usize, spin: bool) -> Result<Plan, CliError> {
    let n = p + q;
    if n < 3 {
        return Err(CliError::resolution("orthogonal groups need p + q >= 3"));
    }
    let m = n / 2;
    let tag = if spin { "spin" } else { "so" };
    if n % 2 == 1 {
        let d = if spin { classical::spin_odd(m) } else { classical::so_odd(m) };
        return Ok(compact(d, format!("{tag}{n}"), Selector::DimK(so_dim(p) + so_dim(q))));
    }
    let d = if spin { classical::spin_even(m) } else { classical::so_even(m) };
    if p.is_multiple_of(2) {
        Ok(compact(d, format!("{tag}{n}"), half_hint(m, p.min(q) / 2)))
    } else {
        d_outer(d, format!("{tag}{n}"), Selector::DimK(so_dim(p) + so_dim(q)), m)
    }
}

fn star(n: usize, spin: bool) -> Result<Plan, CliError> {
    if n < 2 {
        return Err(CliError::resolution("SO*(2n) needs n >= 2"));
    }
    let d = if spin { classical::spin_even(n) } else { classical::so_even(n) };
    let tag = if spin { "spin" } else { "so" };
    Ok(compact(d, format!("{tag}{}", 2 * n), quarter_hint(n)))
}

fn exceptional(name: &str) -> Option<Result<Resolved, CliError>> {
    let (head, alias) = name.split_once('-')?;
    let (group, adjoint) = match head.strip_suffix("ad") {
        Some(g) => (g, true),
        None => (head, false),
    };
    if !matches!(group, "E6" | "E7" | "E8" | "F4" | "G2") {
        return None;
    }
    let Some(row) = formulas::exceptional_alias(group, alias) else {
        return Some(Err(CliError::resolution(format!("{group} has no form called {alias:?}"))));
    };
    let t: CartanType = group.parse().expect("exceptional type");
    let datum = BasedRootDatum::simply_connected(&t);
    let inner = if row.outer { InnerClass::flip(&datum) } else { Ok(InnerClass::compact(&datum)) };
    let inner = match inner {
        Ok(i) => i,
        Err(e) => return Some(Err(e.into())),
    };
    let (expected_h1, expected_pi0) = if adjoint {
        match formulas::EXCEPTIONAL_AD.iter().find(|r| group == "E7" && r.0 == row.k) {
            Some(r) => (Some(r.4), Some(r.3)),
            // E6, E8, F4, G2: the adjoint group has the same H^1
            None => (Some(row.h1), None),
        }
    } else {
        (Some(row.h1), None)
    };
    let label = if row.name.is_empty() { row.k } else { row.name };
    Some(Ok(Resolved {
        name: format!("{group}{}-{label}", if adjoint { "ad" } else { "" }),
        key: format!("{group}:{}", if row.outer { "flip" } else { "compact" }),
        datum,
        inner,
        selector: Selector::KName(row.k.to_string()),
        adjoint,
        expected_h1,
        expected_pi0,
    }))
}

/// Resolves a group name. Unknown or malformed names are resolution errors.
pub fn resolve(name: &str) -> Result<Resolved, CliError> {
    let compacted: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(r) = exceptional(&compacted) {
        return r;
    }
    let (prefix, rest) = compacted
        .split_once('(')
        .ok_or_else(|| CliError::resolution(format!("cannot parse group name {name:?}")))?;
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| CliError::resolution(format!("missing ')' in {name:?}")))?;
    let args = parse_args(inner);
    let (adjoint, base) = match prefix.strip_prefix('P') {
        Some(b) if !b.is_empty() && prefix != "P" => (true, b),
        _ => (false, prefix),
    };
    let bad = || CliError::resolution(format!("cannot parse group name {name:?}"));

    let (plan, h1, pi0): (Plan, usize, Option<usize>) = match (base, args.as_slice()) {
        ("SL", [n, f]) => {
            let n = num(n, name)?;
            match field(f).ok_or_else(bad)? {
                'R' => {
                    let (p, h) = formulas::psl_real(n);
                    (sl_form(n, false)?, if adjoint { h } else { 1 }, adjoint.then_some(p))
                }
                _ => {
                    let (p, h) = formulas::psl_quaternionic();
                    let plan = if n == 1 {
                        compact(classical::sl(2), "sl2".into(), Selector::DimK(3))
                    } else {
                        sl_form(2 * n, true)?
                    };
                    (plan, if adjoint { h } else { 2 }, adjoint.then_some(p))
                }
            }
        }
        ("GL", [n, f]) if !adjoint && field(f) == Some('R') => {
            let n = num(n, name)?;
            if n == 0 {
                return Err(bad());
            }
            let d = classical::gl(n);
            let inner = InnerClass::from_matrix(&d, classical::gl_split_tau(n))?;
            let plan = Plan { datum: d, key: format!("gl{n}:split"), inner, selector: Selector::DimK(so_dim(n)) };
            (plan, 1, None)
        }
        ("SU", [p, q]) => {
            let (p, q) = (num(p, name)?, num(q, name)?);
            if p + q < 2 {
                return Err(CliError::resolution("SU(p,q) needs p + q >= 2"));
            }
            let plan = compact(classical::sl(p + q), format!("sl{}", p + q), Selector::DimK(p * p + q * q - 1));
            let (p0, h) = formulas::psu(p, q);
            (plan, if adjoint { h } else { formulas::su(p, q) }, adjoint.then_some(p0))
        }
        ("Sp", [n2, f]) if field(f) == Some('R') => {
            let n2 = num(n2, name)?;
            if n2 == 0 || n2 % 2 == 1 {
                return Err(CliError::resolution("Sp(2n,R) needs an even positive size"));
            }
            let n = n2 / 2;
            let plan = compact(classical::sp(n), format!("sp{n2}"), Selector::DimK(n * n));
            let (p0, h) = formulas::psp_real(n);
            (plan, if adjoint { h } else { 1 }, adjoint.then_some(p0))
        }
        ("Sp", [p, q]) => {
            let (p, q) = (num(p, name)?, num(q, name)?);
            if p + q == 0 {
                return Err(bad());
            }
            let plan = compact(classical::sp(p + q), format!("sp{}", 2 * (p + q)), Selector::DimK(sp_dim(p) + sp_dim(q)));
            let (p0, h) = formulas::psp_pq(p, q);
            (plan, if adjoint { h } else { formulas::sp_pq(p, q) }, adjoint.then_some(p0))
        }
        ("SO", [p, q]) => {
            let (p, q) = (num(p, name)?, num(q, name)?);
            let (p0, h) = formulas::pso(p, q);
            // PSO is the quotient of Spin by its full center
            (orthogonal(p, q, adjoint)?, if adjoint { h } else { formulas::so(p, q) }, adjoint.then_some(p0))
        }
        ("SO*", [n2]) => {
            let n2 = num(n2, name)?;
            if n2 % 2 == 1 {
                return Err(CliError::resolution("SO*(2n) needs an even size"));
            }
            let (p0, h) = formulas::pso_star(n2 / 2);
            (star(n2 / 2, adjoint)?, if adjoint { h } else { 2 }, adjoint.then_some(p0))
        }
        ("Spin", [p, q]) if !adjoint => {
            let (p, q) = (num(p, name)?, num(q, name)?);
            (orthogonal(p, q, true)?, formulas::spin(p, q), None)
        }
        ("Spin*", [n2]) if !adjoint => {
            let n2 = num(n2, name)?;
            if n2 % 2 == 1 {
                return Err(CliError::resolution("Spin*(2n) needs an even size"));
            }
            (star(n2 / 2, true)?, 2, None)
        }
        _ => return Err(CliError::resolution(format!("unknown group name {name:?}"))),
    };
    Ok(Resolved {
        name: name.trim().to_string(),
        key: plan.key,
        datum: plan.datum,
        inner: plan.inner,
        selector: plan.selector,
        adjoint,
        expected_h1: Some(h1),
        expected_pi0: pi0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        for n in ["SL(3,R)", "SL(2, H)", "SU(2,1)", "Sp(4,R)", "Sp(3,2)", "SO(5,3)", "SO*(8)", "Spin(4,4)", "Spin*(10)", "GL(3,R)", "PSL(4,R)", "PSO*(8)", "PSp(6,R)", "E8-split", "E7ad-hermitian", "F4-B4"] {
            resolve(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
    }

    #[test]
    fn rejects_garbage() {
        for n in ["SL(3)", "XY(2,1)", "Sp(3,R)", "SO*(7)", "E9-split", "G2-hermitian", "SU(1,0)", "PSpin(4,4)"] {
            assert!(resolve(n).is_err(), "{n}");
        }
    }

    #[test]
    fn expected_values() {
        assert_eq!(resolve("Sp(3,2)").unwrap().expected_h1, Some(6));
        assert_eq!(resolve("Spin(4,4)").unwrap().expected_h1, Some(5));
        let r = resolve("PSO(4,4)").unwrap();
        assert_eq!((r.expected_pi0, r.expected_h1), (Some(4), Some(5)));
        assert!(r.adjoint);
    }
}
