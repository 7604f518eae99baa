use std::collections::BTreeSet;

use galcoh_core::cohomology::InnerClassContext;
use galcoh_core::exactlat::TorusPoint;
use galcoh_core::oracle::{brute_fiber, chevalley_sign, matrix_model_check, ALL_CHECKS};
use galcoh_core::rootdata::{classical, BasedRootDatum, CartanType, InnerClass};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn sc(s: &str) -> BasedRootDatum {
    BasedRootDatum::simply_connected(&s.parse::<CartanType>().unwrap())
}

fn ad(s: &str) -> BasedRootDatum {
    BasedRootDatum::adjoint(&s.parse::<CartanType>().unwrap())
}

/// Small inner classes: every simply connected type of rank at most 4 with and without
/// its diagram involution, plus a few other isogeny types.
fn small_classes() -> Vec<(String, BasedRootDatum, InnerClass)> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "A1xA1", "A2xA1"] {
        let rd = sc(t);
        out.push((format!("{t} compact"), rd.clone(), InnerClass::compact(&rd)));
        if rd.cartan_type().has_flip() {
            out.push((format!("{t} flip"), rd.clone(), InnerClass::flip(&rd).unwrap()));
        }
    }
    for t in ["A1", "A3", "B2", "D4"] {
        let rd = ad(t);
        out.push((format!("{t} adjoint"), rd.clone(), InnerClass::compact(&rd)));
    }
    let a1a1 = sc("A1xA1");
    out.push(("A1xA1 swap".into(), a1a1.clone(), InnerClass::from_permutation(&a1a1, &[1, 0]).unwrap()));
    let so6 = classical::so_even(3);
    out.push(("SO(6) flip".into(), so6.clone(), InnerClass::flip(&so6).unwrap()));
    out.push(("GL(3) split".into(), classical::gl(3), InnerClass::from_matrix(&classical::gl(3), classical::gl_split_tau(3)).unwrap()));
    out
}

fn grid_for(z: &TorusPoint) -> Option<i64> {
    let m = z.order().to_i64()?;
    let n = num_integer::lcm(2 * m, 4);
    (n <= 8).then_some(n)
}

#[test]
fn brute_force_fibers_agree() {
    let mut checked = 0;
    for (name, rd, ic) in small_classes() {
        if rd.rank() > 4 {
            continue;
        }
        let ctx = InnerClassContext::new(&rd, &ic).unwrap();
        for inv in ctx.invariant_classes().unwrap() {
            let Some(n) = grid_for(&inv.rep) else { continue };
            let fiber = ctx.strong_fiber(&inv.rep).unwrap();
            let brute = brute_fiber(&rd, &ic, &inv.rep, n).unwrap();
            assert_eq!(brute.len(), fiber.classes.len(), "{name} over {:?}", inv.rep);
            // each brute class lands in exactly one strong class, bijectively
            let mut hit = BTreeSet::new();
            for class in &brute {
                let idx: BTreeSet<usize> =
                    class.iter().map(|v| fiber.class_of(&ctx.canonical(v)).expect("in fiber")).collect();
                assert_eq!(idx.len(), 1, "{name}");
                hit.extend(idx);
            }
            assert_eq!(hit.len(), fiber.classes.len(), "{name}");
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} fibers checked");
}

#[test]
fn structure_constant_signs() {
    for (name, rd, ic) in small_classes() {
        if rd.semisimple_rank() > 4 {
            continue;
        }
        let ctx = InnerClassContext::new(&rd, &ic).unwrap();
        let im = ctx.imaginary();
        for (i, &k) in im.roots.iter().enumerate() {
            let expect = if im.swapped_pair[i] { -1 } else { 1 };
            assert_eq!(chevalley_sign(&rd, &ic, k).unwrap(), expect, "{name} root {k}");
        }
    }
}

#[test]
fn matrix_models() {
    for (m, a) in ALL_CHECKS {
        assert_eq!(matrix_model_check(m, a), Ok(()), "{m:?} {a:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Brute force agrees with the engine over arbitrary points of the central slice.
    #[test]
    fn brute_matches_on_central_points(which in 0usize..6, pick in 0usize..64) {
        let (rd, ic) = match which {
            0 => { let r = sc("A3"); let i = InnerClass::flip(&r).unwrap(); (r, i) }
            1 => { let r = sc("D4"); let i = InnerClass::compact(&r); (r, i) }
            2 => { let r = sc("C3"); let i = InnerClass::compact(&r); (r, i) }
            3 => { let r = sc("D4"); let i = InnerClass::flip(&r).unwrap(); (r, i) }
            4 => { let r = sc("B3"); let i = InnerClass::compact(&r); (r, i) }
            _ => { let r = sc("A2"); let i = InnerClass::flip(&r).unwrap(); (r, i) }
        };
        let ctx = InnerClassContext::new(&rd, &ic).unwrap();
        let classes = ctx.invariant_classes().unwrap();
        let all: Vec<TorusPoint> = classes.iter().flat_map(|c| c.members.iter().cloned()).collect();
        let z = &all[pick % all.len()];
        if let Some(n) = grid_for(z) {
            let brute = brute_fiber(&rd, &ic, z, n).unwrap();
            prop_assert_eq!(brute.len(), ctx.strong_fiber(z).unwrap().classes.len());
        }
    }
}
