//! Signs of the pinned automorphism on root spaces, from Chevalley structure constants.
//!
//! For simply laced data the constants come from the asymmetry function
//! `eps(a_i, a_j) = -1` if `i = j` or (`i < j` and `a_i, a_j` are joined), extended
//! bimultiplicatively, so that `[E_a, E_b] = eps(a, b) E_{a+b}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::OracleError;
use crate::rootdata::{BasedRootDatum, InnerClass};

pub const MAX_RANK: usize = 4;

fn asymmetry(cartan: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let l = cartan.len();
    let mut e = 0i64;
    for i in 0..l {
        for j in 0..l {
            if i == j || (i < j && cartan[i][j] != 0) {
                e += a[i] * b[j];
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Signs `c_a` with `theta(E_a) = c_a E_{pi a}` for every positive root `a`, indexed as
/// in the root system. Every decomposition `a = a_i + b` is checked for consistency.
pub fn pinned_signs(rd: &BasedRootDatum, ic: &InnerClass) -> Result<Vec<i64>, OracleError> {
    let l = rd.semisimple_rank();
    if l > MAX_RANK {
        return Err(OracleError::Guard);
    }
    let cartan = rd.cartan_matrix();
    let simply_laced = cartan.iter().flatten().all(|&x| x >= -1);
    if !simply_laced && !ic.is_inner_perm() {
        return Err(OracleError::Unsupported);
    }
    let rs = rd.root_system();
    let pos = rs.positive();
    let mut sign: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    // roots come sorted by height
    for a in pos {
        let height: i64 = a.iter().sum();
        if height == 1 {
            sign.insert(a.clone(), 1);
            continue;
        }
        let mut found: Option<i64> = None;
        for i in 0..l {
            let mut b = a.clone();
            b[i] -= 1;
            let Some(&cb) = sign.get(&b) else { continue };
            if !simply_laced {
                // trivial permutation: theta is the identity on root spaces
                found = Some(1);
                break;
            }
            let mut ai = alloc::vec![0i64; l];
            ai[i] = 1;
            let n = asymmetry(cartan, &ai, &b);
            let n_img = asymmetry(cartan, &ic.permute_coefficients(&ai), &ic.permute_coefficients(&b));
            let c = cb * n_img * n;
            match found {
                None => found = Some(c),
                Some(prev) if prev != c => return Err(OracleError::Inconsistent),
                _ => {}
            }
        }
        sign.insert(a.clone(), found.ok_or(OracleError::Inconsistent)?);
    }
    Ok(pos.iter().map(|a| sign[a]).collect())
}

/// The sign of `theta` on `g_alpha` for an imaginary positive root `alpha` (by index).
pub fn chevalley_sign(rd: &BasedRootDatum, ic: &InnerClass, alpha: usize) -> Result<i64, OracleError> {
    let pos = rd.root_system().positive();
    let a = pos.get(alpha).ok_or(OracleError::NotImaginary)?;
    if ic.permute_coefficients(a) != *a {
        return Err(OracleError::NotImaginary);
    }
    Ok(pinned_signs(rd, ic)?[alpha])
}
