//! Strong-involution fibers by exhaustive enumeration on a `1/N` grid.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::OracleError;
use crate::exactlat::{rat, TorusPoint};
use crate::rootdata::{BasedRootDatum, InnerClass};
use crate::tits::{TitsElement, TitsGroup};
use crate::weyl::ImaginarySubsystem;

pub const MAX_RANK: usize = 6;
pub const MAX_DENOMINATOR: i64 = 8;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn grid_coords(p: &TorusPoint, n: i64) -> Option<Vec<i64>> {
    p.coords()
        .iter()
        .map(|x| {
            let y = x * rat(n);
            y.is_integer().then(|| y.to_integer().to_i64()).flatten().map(|k| k.rem_euclid(n))
        })
        .collect()
}

fn grid_point(k: &[i64], n: i64) -> TorusPoint {
    TorusPoint::from_fractions(&k.iter().map(|&a| (a, n)).collect::<Vec<_>>())
}

/// Classes of `{v in (1/N)Z^n / Z^n : (1+tau) v = z}` under twisted coboundaries
/// `v -> v + (1-tau) u` landing on the grid and conjugation by `sigma_w`, `w` a simple imaginary reflection.
/// Each class is sorted; classes are sorted by their first member.
pub fn brute_fiber(
    rd: &BasedRootDatum,
    ic: &InnerClass,
    z: &TorusPoint,
    denominator: i64,
) -> Result<Vec<Vec<TorusPoint>>, OracleError> {
    let dim = rd.rank();
    if dim > MAX_RANK || !(1..=MAX_DENOMINATOR).contains(&denominator) {
        return Err(OracleError::Guard);
    }
    let n = denominator;
    let zk = grid_coords(z, n).ok_or(OracleError::OffGrid)?;
    let tau: Vec<Vec<i64>> = ic.tau().to_i64_rows().ok_or(OracleError::Guard)?;
    let plus = |k: &[i64]| -> Vec<i64> {
        (0..dim).map(|r| (k[r] + (0..dim).map(|c| tau[r][c] * k[c]).sum::<i64>()).rem_euclid(n)).collect()
    };

    let total = (n as usize).pow(dim as u32);
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut k = alloc::vec![0i64; dim];
    for _ in 0..total {
        if plus(&k) == zk {
            points.push(k.clone());
        }
        for d in 0..dim {
            k[d] += 1;
            if k[d] < n {
                break;
            }
            k[d] = 0;
        }
    }
    let index: BTreeMap<Vec<i64>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind((0..points.len()).collect());

    // (1 - tau) u on the grid needs u in (1/2N)Z^n: u = a/N + b/(2N) with b a 0/1 vector
    // and (1 - tau) b even. In grid units these moves are the columns of 1 - tau and (1 - tau) b / 2.
    let one_minus = |b: &[i64]| -> Vec<i64> {
        (0..dim).map(|r| b[r] - (0..dim).map(|c| tau[r][c] * b[c]).sum::<i64>()).collect()
    };
    let mut cob: Vec<Vec<i64>> = (0..dim)
        .map(|c| one_minus(&(0..dim).map(|r| i64::from(r == c)).collect::<Vec<_>>()))
        .collect();
    for mask in 1u32..(1 << dim) {
        let b: Vec<i64> = (0..dim).map(|r| i64::from(mask >> r & 1 == 1)).collect();
        let d = one_minus(&b);
        if d.iter().all(|x| x % 2 == 0) {
            cob.push(d.iter().map(|x| x / 2).collect());
        }
    }
    let tits = TitsGroup::new(rd);
    let imag = ImaginarySubsystem::new(rd, ic, tits.weyl());
    let conj: Vec<(TitsElement, TitsElement)> = imag
        .generators
        .iter()
        .map(|w| {
            let s = tits.sigma_of(w);
            let t = tits.inverse(&tits.theta_qc(ic, &s));
            (s, t)
        })
        .collect();

    for (i, p) in points.iter().enumerate() {
        for col in &cob {
            let q: Vec<i64> = p.iter().zip(col).map(|(a, b)| (a + b).rem_euclid(n)).collect();
            let j = *index.get(&q).ok_or(OracleError::OffGrid)?;
            uf.union(i, j);
        }
        let x = tits.torus(grid_point(p, n));
        for (s, tinv) in &conj {
            let y = tits.multiply(&tits.multiply(s, &x), tinv);
            debug_assert!(y.w.is_identity());
            let q = grid_coords(&y.t, n).ok_or(OracleError::OffGrid)?;
            let j = *index.get(&q).ok_or(OracleError::OffGrid)?;
            uf.union(i, j);
        }
    }

    let mut classes: BTreeMap<usize, Vec<TorusPoint>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let r = uf.find(i);
        classes.entry(r).or_default().push(grid_point(p, n));
    }
    let mut out: Vec<Vec<TorusPoint>> = classes.into_values().collect();
    for c in &mut out {
        c.sort();
    }
    out.sort();
    Ok(out)
}
