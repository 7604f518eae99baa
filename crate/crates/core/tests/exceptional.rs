use galcoh_core::cohomology::InnerClassContext;
use galcoh_core::rootdata::{BasedRootDatum, CartanType, InnerClass};

fn census_summary(ty: &str, sc: bool, flip: bool) -> Vec<(String, usize)> {
    let t: CartanType = ty.parse().unwrap();
    let rd = if sc { BasedRootDatum::simply_connected(&t) } else { BasedRootDatum::adjoint(&t) };
    let ic = if flip { InnerClass::flip(&rd).unwrap() } else { InnerClass::compact(&rd) };
    let census = InnerClassContext::new(&rd, &ic).unwrap().census().unwrap();
    let mut out: Vec<(String, usize)> =
        census.forms.iter().map(|f| (f.k_label.name(), f.h1_count)).collect();
    out.sort();
    out
}

fn rows(r: &[(&str, usize)]) -> Vec<(String, usize)> {
    let mut v: Vec<(String, usize)> = r.iter().map(|(a, b)| (a.to_string(), *b)).collect();
    v.sort();
    v
}

#[test]
fn e6_inner_classes() {
    assert_eq!(census_summary("E6", true, false), rows(&[("A5A1", 3), ("D5T", 3), ("E6", 3)]));
    assert_eq!(census_summary("E6", true, true), rows(&[("C4", 2), ("F4", 2)]));
}

#[test]
fn e7() {
    assert_eq!(
        census_summary("E7", true, false),
        rows(&[("A7", 2), ("D6A1", 4), ("E6T", 2), ("E7", 4)])
    );
    assert_eq!(
        census_summary("E7", false, false),
        rows(&[("A7", 4), ("D6A1", 4), ("E6T", 4), ("E7", 4)])
    );
}

#[test]
fn f4_and_g2() {
    assert_eq!(census_summary("F4", true, false), rows(&[("B4", 3), ("C3A1", 3), ("F4", 3)]));
    assert_eq!(census_summary("G2", true, false), rows(&[("A1A1", 2), ("G2", 2)]));
}
