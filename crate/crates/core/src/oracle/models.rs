//! Explicit matrix models of `SL(2)`, `SL(3)` and `Sp(4)` over `Q(i)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::gaussian::{span_rank, CMatrix, Gaussian};
use crate::cohomology::InnerClassContext;
use crate::exactlat::TorusPoint;
use crate::rootdata::{classical, BasedRootDatum, CartanType, InnerClass};
use crate::tits::{TitsElement, TitsGroup};
use crate::weyl::{generated_subgroup, ImaginarySubsystem, DEFAULT_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    SL2,
    SL3,
    Sp4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assertion {
    /// `sigma_i^2 = alpha_i^vee(-1)`.
    SigmaSquare,
    /// Products of `sigma_i` along all words of length at most 4 agree with the Tits group.
    TitsProducts,
    /// The pinned outer involution of `SL(3)` matches `theta_qc` on Tits elements.
    PinnedOuter,
    /// `t_w` matches the matrix cocycle `sigma_w^-1 theta(sigma_w)` for every `w` in `W_i` of the `SL(3)` outer class.
    OuterCocycle,
    /// The outer involution acts by `-1` on the highest root space of `sl(3)`.
    OuterSign,
    /// The fixed algebra of the outer involution of `sl(3)` has dimension 3.
    FixedAlgebraDim,
    /// Diagonal elements of `Sp(4)` squaring to `-I` form one class.
    SquareRootsOfMinusOne,
}

pub const ALL_CHECKS: [(Model, Assertion); 9] = [
    (Model::SL2, Assertion::SigmaSquare),
    (Model::SL2, Assertion::TitsProducts),
    (Model::SL3, Assertion::TitsProducts),
    (Model::SL3, Assertion::PinnedOuter),
    (Model::SL3, Assertion::OuterCocycle),
    (Model::SL3, Assertion::OuterSign),
    (Model::SL3, Assertion::FixedAlgebraDim),
    (Model::Sp4, Assertion::TitsProducts),
    (Model::Sp4, Assertion::SquareRootsOfMinusOne),
];

/// A group of matrices with a pinning and its based root datum.
struct Pinned {
    datum: BasedRootDatum,
    size: usize,
    x: Vec<CMatrix>,
    y: Vec<CMatrix>,
    /// Diagonal entries of `exp(2 pi i v)`, as integer combinations of the coordinates of `v`.
    torus_weights: Vec<Vec<i64>>,
}

fn e(n: usize, r: usize, c: usize) -> CMatrix {
    CMatrix::unit(n, r, c)
}

impl Pinned {
    fn new(model: Model) -> Self {
        match model {
            Model::SL2 => Pinned {
                datum: BasedRootDatum::simply_connected(&"A1".parse::<CartanType>().expect("type")),
                size: 2,
                x: alloc::vec![e(2, 0, 1)],
                y: alloc::vec![e(2, 1, 0)],
                torus_weights: alloc::vec![alloc::vec![1], alloc::vec![-1]],
            },
            Model::SL3 => Pinned {
                datum: BasedRootDatum::simply_connected(&"A2".parse::<CartanType>().expect("type")),
                size: 3,
                x: alloc::vec![e(3, 0, 1), e(3, 1, 2)],
                y: alloc::vec![e(3, 1, 0), e(3, 2, 1)],
                torus_weights: alloc::vec![alloc::vec![1, 0], alloc::vec![-1, 1], alloc::vec![0, -1]],
            },
            Model::Sp4 => Pinned {
                // basis e1, e2, f1, f2 with omega(e_i, f_i) = 1; roots e1 - e2 and 2 e2
                datum: classical::sp(2),
                size: 4,
                x: alloc::vec![e(4, 0, 1).sub(&e(4, 3, 2)), e(4, 1, 3)],
                y: alloc::vec![e(4, 1, 0).sub(&e(4, 2, 3)), e(4, 3, 1)],
                torus_weights: alloc::vec![
                    alloc::vec![1, 0],
                    alloc::vec![0, 1],
                    alloc::vec![-1, 0],
                    alloc::vec![0, -1]
                ],
            },
        }
    }

    fn exp_nilpotent(&self, x: &CMatrix) -> CMatrix {
        debug_assert!(x.mul(x).is_zero());
        CMatrix::identity(self.size).add(x)
    }

    /// `exp(X_i) exp(-Y_i) exp(X_i)`.
    fn sigma(&self, i: usize) -> CMatrix {
        let ex = self.exp_nilpotent(&self.x[i]);
        let ey = self.exp_nilpotent(&self.y[i].scale(&Gaussian::int(-1)));
        ex.mul(&ey).mul(&ex)
    }

    /// `exp(2 pi i v)`, with the coordinates of `v` in the basis of the datum.
    fn torus(&self, v: &TorusPoint) -> Option<CMatrix> {
        let d = self
            .torus_weights
            .iter()
            .map(|w| {
                let t = w.iter().zip(v.coords()).map(|(&a, x)| x * crate::exactlat::rat(a)).sum();
                Gaussian::root_of_unity(&t)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CMatrix::diagonal(d))
    }

    fn word(&self, w: &[usize]) -> CMatrix {
        w.iter().fold(CMatrix::identity(self.size), |acc, &i| acc.mul(&self.sigma(i)))
    }

    fn element(&self, tits: &TitsGroup, a: &TitsElement) -> Option<CMatrix> {
        let word = tits.weyl().reduced_word(&a.w);
        Some(self.torus(&a.t)?.mul(&self.word(&word)))
    }
}

fn words(l: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    let mut layer = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..l {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `g -> J (g^T)^-1 J^-1` with `J` antidiagonal `(1, -1, 1)`.
fn sl3_outer(g: &CMatrix) -> CMatrix {
    let j = CMatrix::from_int(&[alloc::vec![0, 0, 1], alloc::vec![0, -1, 0], alloc::vec![1, 0, 0]]);
    j.mul(&g.transpose().inverse().expect("invertible")).mul(&j)
}

/// `X -> -J X^T J^-1` on the Lie algebra.
fn sl3_outer_lie(x: &CMatrix) -> CMatrix {
    let j = CMatrix::from_int(&[alloc::vec![0, 0, 1], alloc::vec![0, -1, 0], alloc::vec![1, 0, 0]]);
    j.mul(&x.transpose()).mul(&j).scale(&Gaussian::int(-1))
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Runs one check, returning a description of the first discrepancy.
pub fn matrix_model_check(model: Model, assertion: Assertion) -> Result<(), String> {
    let p = Pinned::new(model);
    let tits = TitsGroup::new(&p.datum);
    let l = p.datum.semisimple_rank();
    match assertion {
        Assertion::SigmaSquare => {
            for i in 0..l {
                let s = p.sigma(i);
                let expect = p.element(&tits, &tits.multiply(&tits.sigma(i), &tits.sigma(i))).ok_or("torus")?;
                check(s.mul(&s) == expect, || format!("sigma_{i}^2 differs"))?;
                check(s.determinant() == Gaussian::int(1), || format!("det sigma_{i} != 1"))?;
            }
            if model == Model::SL2 {
                let s = p.sigma(0);
                check(s.mul(&s) == CMatrix::identity(2).scale(&Gaussian::int(-1)), || "sigma^2 != -I".into())?;
            }
            Ok(())
        }
        Assertion::TitsProducts => {
            for w in words(l, 4) {
                let m = p.word(&w);
                let t = tits.word(&w);
                let expect = p.element(&tits, &t).ok_or("torus")?;
                check(m == expect, || format!("word {w:?} differs"))?;
            }
            Ok(())
        }
        Assertion::PinnedOuter => {
            require(model == Model::SL3)?;
            let ic = InnerClass::flip(&p.datum).map_err(|e| format!("{e}"))?;
            for i in 0..l {
                let j = ic.permutation()[i];
                check(sl3_outer_lie(&p.x[i]) == p.x[j], || format!("X_{i} not pinned"))?;
                check(sl3_outer_lie(&p.y[i]) == p.y[j], || format!("Y_{i} not pinned"))?;
            }
            let quarter = TorusPoint::from_fractions(&[(1, 4), (1, 2)]);
            for w in words(l, 3) {
                let a = tits.multiply(&tits.torus(quarter.clone()), &tits.word(&w));
                let m = p.element(&tits, &a).ok_or("torus")?;
                let img = p.element(&tits, &tits.theta_qc(&ic, &a)).ok_or("torus")?;
                check(sl3_outer(&m) == img, || format!("theta_qc differs on {w:?}"))?;
            }
            Ok(())
        }
        Assertion::OuterCocycle => {
            require(model == Model::SL3)?;
            let ic = InnerClass::flip(&p.datum).map_err(|e| format!("{e}"))?;
            let imag = ImaginarySubsystem::new(&p.datum, &ic, tits.weyl());
            let wi = generated_subgroup(&imag.generators, l, DEFAULT_GUARD).map_err(|e| format!("{e}"))?;
            check(wi.len() == 2, || format!("W_i has {} elements", wi.len()))?;
            for w in &wi {
                let t = tits.cocycle(&ic, w).map_err(|e| format!("{e}"))?;
                let s = p.word(&tits.weyl().reduced_word(w));
                let m = s.inverse().ok_or("singular")?.mul(&sl3_outer(&s));
                check(Some(m) == p.torus(&t), || format!("t_w differs for {:?}", tits.weyl().reduced_word(w)))?;
            }
            Ok(())
        }
        Assertion::OuterSign => {
            require(model == Model::SL3)?;
            let top = p.x[0].bracket(&p.x[1]);
            check(sl3_outer_lie(&top) == top.scale(&Gaussian::int(-1)), || "sign on E_13 is not -1".into())
        }
        Assertion::FixedAlgebraDim => {
            require(model == Model::SL3)?;
            let mut basis = Vec::new();
            for r in 0..3 {
                for c in 0..3 {
                    if r != c {
                        basis.push(e(3, r, c));
                    }
                }
            }
            basis.push(e(3, 0, 0).sub(&e(3, 1, 1)));
            basis.push(e(3, 1, 1).sub(&e(3, 2, 2)));
            let images: Vec<CMatrix> = basis.iter().map(|x| sl3_outer_lie(x).sub(x)).collect();
            let fixed = basis.len() - span_rank(&images);
            check(fixed == 3, || format!("fixed algebra has dimension {fixed}"))
        }
        Assertion::SquareRootsOfMinusOne => {
            require(model == Model::Sp4)?;
            let minus = CMatrix::identity(4).scale(&Gaussian::int(-1));
            let omega = CMatrix::from_int(&[
                alloc::vec![0, 0, 1, 0],
                alloc::vec![0, 0, 0, 1],
                alloc::vec![-1, 0, 0, 0],
                alloc::vec![0, -1, 0, 0],
            ]);
            let sigmas: Vec<CMatrix> = (0..l).map(|i| p.sigma(i)).collect();
            for s in &sigmas {
                check(s.transpose().mul(&omega).mul(s) == omega, || "sigma not symplectic".into())?;
            }
            let quarters: Vec<TorusPoint> = (0..4)
                .flat_map(|a| (0..4).map(move |b| TorusPoint::from_fractions(&[(a, 4), (b, 4)])))
                .collect();
            let roots: Vec<CMatrix> = quarters
                .iter()
                .filter_map(|v| p.torus(v))
                .filter(|m| m.mul(m) == minus)
                .collect();
            // orbits under conjugation by the sigma_i
            let key = |m: &CMatrix| format!("{m:?}");
            let mut seen = BTreeSet::new();
            let mut orbits = 0;
            for r in &roots {
                if seen.contains(&key(r)) {
                    continue;
                }
                orbits += 1;
                let mut stack = alloc::vec![r.clone()];
                seen.insert(key(r));
                while let Some(m) = stack.pop() {
                    for s in &sigmas {
                        let c = s.mul(&m).mul(&s.inverse().ok_or("singular")?);
                        if seen.insert(key(&c)) {
                            stack.push(c);
                        }
                    }
                }
            }
            check(orbits == 1, || format!("{orbits} classes of square roots of -I"))?;
            let ctx = InnerClassContext::new(&p.datum, &InnerClass::compact(&p.datum)).map_err(|e| format!("{e}"))?;
            let z = TorusPoint::from_fractions(&[(1, 2), (1, 2)]);
            check(p.torus(&z) == Some(minus), || "no central -I in the torus coordinates".into())?;
            let fiber = ctx.strong_fiber(&z).map_err(|e| format!("{e}"))?;
            check(fiber.classes.len() == orbits, || format!("strong fiber over -I has {} classes", fiber.classes.len()))
        }
    }
}

fn require(ok: bool) -> Result<(), String> {
    check(ok, || "assertion not available for this model".into())
}
