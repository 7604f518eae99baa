//! The Tits extension of `W`: elements `t . sigma_w` with `t` in the torus
//! and `sigma_w` the product of the pinned representatives `sigma_i` along a
//! reduced word of `w`.

use alloc::vec::Vec;
use core::fmt;

use crate::exactlat::{frac, IntMatrix, Rational, TorusPoint};
use crate::rootdata::{BasedRootDatum, InnerClass};
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TitsError {
    NotTauFixed,
}

impl fmt::Display for TitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TitsError::NotTauFixed => write!(f, "Weyl element is not fixed by tau"),
        }
    }
}

/// `exp(2 pi i t) . sigma_w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TitsElement {
    pub t: TorusPoint,
    pub w: WeylElement,
}

pub struct TitsGroup<'a> {
    rd: &'a BasedRootDatum,
    weyl: WeylGroup,
    /// `alpha_i^vee(-1)`, i.e. `sigma_i^2`.
    squares: Vec<TorusPoint>,
}

impl<'a> TitsGroup<'a> {
    pub fn new(rd: &'a BasedRootDatum) -> Self {
        let half = frac(1, 2);
        let squares = (0..rd.semisimple_rank())
            .map(|i| {
                TorusPoint::new(rd.simple_coroot(i).iter().map(|&a| Rational::from_integer(a.into()) * &half).collect())
            })
            .collect();
        TitsGroup { rd, weyl: WeylGroup::new(rd), squares }
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn identity(&self) -> TitsElement {
        TitsElement { t: TorusPoint::zero(self.rd.rank()), w: self.weyl.identity() }
    }

    pub fn torus(&self, t: TorusPoint) -> TitsElement {
        TitsElement { t, w: self.weyl.identity() }
    }

    pub fn sigma(&self, i: usize) -> TitsElement {
        TitsElement { t: TorusPoint::zero(self.rd.rank()), w: self.weyl.generator(i).clone() }
    }

    /// `sigma_w` for the element `w`.
    pub fn sigma_of(&self, w: &WeylElement) -> TitsElement {
        TitsElement { t: TorusPoint::zero(self.rd.rank()), w: w.clone() }
    }

    /// Product `sigma_i1 ... sigma_ik` of an arbitrary (not necessarily reduced) word.
    pub fn word(&self, word: &[usize]) -> TitsElement {
        word.iter().fold(self.identity(), |acc, &i| self.multiply(&acc, &self.sigma(i)))
    }

    fn act(&self, w: &WeylElement, t: &TorusPoint) -> TorusPoint {
        self.weyl.act_point(self.rd, w, t)
    }

    pub fn multiply(&self, a: &TitsElement, b: &TitsElement) -> TitsElement {
        let mut t = a.t.add(&self.act(&a.w, &b.t));
        let mut cur = a.w.clone();
        for i in self.weyl.reduced_word(&b.w) {
            let next = cur.mul(self.weyl.generator(i));
            if !cur.keeps_positive(i) {
                // sigma_u sigma_i = sigma_{u s_i} sigma_i^2 when the length drops
                t = t.add(&self.act(&next, &self.squares[i]));
            }
            cur = next;
        }
        TitsElement { t, w: cur }
    }

    pub fn inverse(&self, a: &TitsElement) -> TitsElement {
        let winv = self.weyl.from_word(&self.weyl.reduced_word(&a.w).into_iter().rev().collect::<Vec<_>>());
        let c = self.multiply(&self.sigma_of(&a.w), &self.sigma_of(&winv));
        debug_assert!(c.w.is_identity());
        TitsElement { t: self.act(&winv, &c.t.add(&a.t).neg()), w: winv }
    }

    /// The pinned involution: `tau` on the torus, `sigma_i -> sigma_{pi(i)}`.
    pub fn theta_qc(&self, ic: &InnerClass, a: &TitsElement) -> TitsElement {
        TitsElement { t: ic.apply_point(&a.t), w: a.w.permuted(ic.permutation()) }
    }

    /// `t_w = sigma_w^-1 theta_qc(sigma_w)`, a torus element for `w` fixed by `tau`.
    pub fn cocycle(&self, ic: &InnerClass, w: &WeylElement) -> Result<TorusPoint, TitsError> {
        if w.permuted(ic.permutation()) != *w {
            return Err(TitsError::NotTauFixed);
        }
        let s = self.sigma_of(w);
        let prod = self.multiply(&self.inverse(&s), &self.theta_qc(ic, &s));
        debug_assert!(prod.w.is_identity());
        Ok(prod.t)
    }
}

/// The action of `W_i` on strong-involution coordinates, `v -> w (v - t_w)`,
/// with the cocycles of the generators computed once.
#[derive(Debug, Clone)]
pub struct StrongAction {
    generators: Vec<(IntMatrix, TorusPoint)>,
}

impl StrongAction {
    pub fn new(
        rd: &BasedRootDatum,
        ic: &InnerClass,
        gens: &[WeylElement],
    ) -> Result<Self, TitsError> {
        let tits = TitsGroup::new(rd);
        let generators = gens
            .iter()
            .map(|g| Ok((tits.weyl().lattice_matrix(g), tits.cocycle(ic, g)?)))
            .collect::<Result<_, TitsError>>()?;
        Ok(StrongAction { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cocycle(&self, g: usize) -> &TorusPoint {
        &self.generators[g].1
    }

    /// Applies generator `g` (not yet reduced modulo coboundaries).
    pub fn apply(&self, g: usize, v: &TorusPoint) -> TorusPoint {
        let (m, t) = &self.generators[g];
        v.sub(t).transform(m)
    }
}

/// `w (v - t_w)` for an arbitrary `w` in `W^tau`.
pub fn act_on_strong(
    rd: &BasedRootDatum,
    ic: &InnerClass,
    w: &WeylElement,
    v: &TorusPoint,
) -> Result<TorusPoint, TitsError> {
    let tits = TitsGroup::new(rd);
    let t = tits.cocycle(ic, w)?;
    Ok(tits.weyl().act_point(rd, w, &v.sub(&t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;
    use crate::weyl::{generated_subgroup, ImaginarySubsystem, DEFAULT_GUARD};
    use alloc::vec;

    fn datum(s: &str) -> BasedRootDatum {
        BasedRootDatum::simply_connected(&s.parse::<CartanType>().unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let rd = datum("A1");
        let g = TitsGroup::new(&rd);
        let sq = g.word(&[0, 0]);
        assert!(sq.w.is_identity());
        assert_eq!(sq.t, TorusPoint::from_fractions(&[(1, 2)]));
        assert!(g.word(&[0, 0, 0, 0]).t.is_zero());
    }

    #[test]
    fn braid_relations() {
        for (s, i, j, m) in [("A2", 0, 1, 3), ("B2", 0, 1, 4), ("G2", 0, 1, 6), ("A3", 0, 2, 2)] {
            let rd = datum(s);
            let g = TitsGroup::new(&rd);
            let a: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
            let b: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
            assert_eq!(g.word(&a), g.word(&b), "{s}");
        }
    }

    #[test]
    fn a2_cube_of_coxeter_element() {
        // (sigma_1 sigma_2)^3 is central in SL(3): it is the identity there
        let rd = datum("A2");
        let g = TitsGroup::new(&rd);
        let c = g.word(&[0, 1, 0, 1, 0, 1]);
        assert!(c.w.is_identity());
        assert!(rd.is_central(&c.t));
    }

    #[test]
    fn inverses() {
        let rd = datum("B3");
        let g = TitsGroup::new(&rd);
        for word in [vec![0, 1, 2], vec![2, 1, 2, 1], vec![0, 1, 0, 2, 1]] {
            let mut a = g.word(&word);
            a.t = a.t.add(&TorusPoint::from_fractions(&[(1, 3), (0, 1), (1, 2)]));
            assert_eq!(g.multiply(&a, &g.inverse(&a)), g.identity());
            assert_eq!(g.multiply(&g.inverse(&a), &a), g.identity());
        }
    }

    #[test]
    fn cocycles_vanish_on_tau_fixed_elements() {
        let rd = datum("A2");
        let ic = InnerClass::flip(&rd).unwrap();
        let g = TitsGroup::new(&rd);
        let w = g.weyl().from_word(&[0, 1, 0]);
        assert!(g.cocycle(&ic, &w).unwrap().is_zero());
        assert_eq!(g.cocycle(&ic, g.weyl().generator(0)), Err(TitsError::NotTauFixed));
        let rd = datum("A3");
        let ic = InnerClass::flip(&rd).unwrap();
        let g = TitsGroup::new(&rd);
        assert!(g.cocycle(&ic, g.weyl().generator(1)).unwrap().is_zero());
    }

    #[test]
    fn cocycle_identity_on_imaginary_weyl_groups() {
        for s in ["A3", "A4", "D4"] {
            let rd = datum(s);
            let ic = InnerClass::flip(&rd).unwrap();
            let g = TitsGroup::new(&rd);
            let im = ImaginarySubsystem::new(&rd, &ic, g.weyl());
            let elems = generated_subgroup(&im.generators, rd.semisimple_rank(), DEFAULT_GUARD).unwrap();
            for a in elems.iter().take(24) {
                for b in elems.iter().take(24) {
                    let tab = g.cocycle(&ic, &a.mul(b)).unwrap();
                    let ta = g.cocycle(&ic, a).unwrap();
                    let tb = g.cocycle(&ic, b).unwrap();
                    let binv = g.inverse(&g.sigma_of(b)).w;
                    assert_eq!(tab, g.weyl().act_point(&rd, &binv, &ta).add(&tb), "{s}");
                }
            }
        }
    }

    #[test]
    fn strong_action_preserves_invariant() {
        let rd = datum("A3");
        let ic = InnerClass::flip(&rd).unwrap();
        let w = WeylGroup::new(&rd);
        let im = ImaginarySubsystem::new(&rd, &ic, &w);
        let act = StrongAction::new(&rd, &ic, &im.generators).unwrap();
        let inv = |p: &TorusPoint| p.add(&ic.apply_point(p));
        // (1 - tau) u plus a point whose invariant is the central element of order 2
        let u = TorusPoint::from_fractions(&[(1, 4), (1, 3), (1, 2)]);
        let v = u.sub(&ic.apply_point(&u)).add(&TorusPoint::from_fractions(&[(1, 2), (0, 1), (0, 1)]));
        assert!(rd.is_central(&inv(&v)));
        for g in 0..act.len() {
            assert_eq!(inv(&act.apply(g, &v)), inv(&v));
        }
    }

    #[test]
    fn equal_rank_action_is_weyl_action() {
        let rd = datum("A1");
        let ic = InnerClass::compact(&rd);
        let w = WeylGroup::new(&rd);
        let v = TorusPoint::from_fractions(&[(1, 4)]);
        assert_eq!(
            act_on_strong(&rd, &ic, w.generator(0), &v).unwrap(),
            TorusPoint::from_fractions(&[(3, 4)])
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn associativity(a in proptest::collection::vec(0usize..3, 0..7),
                             b in proptest::collection::vec(0usize..3, 0..7),
                             c in proptest::collection::vec(0usize..3, 0..7)) {
                let rd = datum("C3");
                let g = TitsGroup::new(&rd);
                let (x, y, z) = (g.word(&a), g.word(&b), g.word(&c));
                prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
                let mut ab = a.clone();
                ab.extend(&b);
                prop_assert_eq!(g.word(&ab), g.multiply(&x, &y));
                // torus parts of sigma products are 2-torsion
                prop_assert!(x.t.scale(2).is_zero());
            }
        }
    }
}
