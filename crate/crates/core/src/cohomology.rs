//! Strong real forms and `H^1(Gamma, G)`.
//!
//! A strong involution in the inner class of `tau` is written
//! `y = exp(2 pi i v) delta` with `v` in `X_* (x) Q`; its square is the
//! central element `(1 + tau) v`. Strong classes with a fixed square `z` are
//! the solutions of `(1 + tau) v = z (mod X_*)`, modulo twisted coboundaries
//! `(1 - tau) Q^n` and the action of the imaginary Weyl group `W_i`. Their
//! number is `|H^1(Gamma, G)|` for every real form whose central invariant
//! is the class of `z`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exactlat::{
    lattice_tate, solve_with_reducer, FiniteAbelianGroup, IntMatrix, LatticeError, Parity,
    QuotientReducer, Rational, TorusPoint,
};
use crate::rootdata::{classify_cartan, BasedRootDatum, CartanType, CenterDescription, InnerClass};
use crate::tits::{StrongAction, TitsError};
use crate::weyl::{orbit_partition, ImaginarySubsystem, WeylError, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    NotCentral,
    NotTauFixed,
    /// `<alpha, v>` is not half-integral on an imaginary root.
    NotStrongInvolution,
    /// The point cannot be matched with a computed invariant class.
    UnknownInvariant,
    Lattice(LatticeError),
    Weyl(WeylError),
    Tits(TitsError),
    Classification(String),
    /// A raw fiber would have more than `bound` points.
    FiberGuard { size: BigInt, bound: u64 },
}

/// Largest raw fiber (a torsor under `H^1` of the fundamental torus) that is enumerated.
pub const MAX_RAW_FIBER: u64 = 1 << 16;

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::NotCentral => write!(f, "element is not central"),
            CohomologyError::NotTauFixed => write!(f, "element is not fixed by tau"),
            CohomologyError::NotStrongInvolution => {
                write!(f, "point is not the coordinate of a strong involution")
            }
            CohomologyError::UnknownInvariant => {
                write!(f, "central invariant is outside the computed finite-order slice")
            }
            CohomologyError::Lattice(e) => write!(f, "{e}"),
            CohomologyError::Weyl(e) => write!(f, "{e}"),
            CohomologyError::Tits(e) => write!(f, "{e}"),
            CohomologyError::Classification(s) => write!(f, "cannot classify root system: {s}"),
            CohomologyError::FiberGuard { size, bound } => {
                write!(f, "raw fiber has {size} points, above the guard of {bound}")
            }
        }
    }
}

impl From<LatticeError> for CohomologyError {
    fn from(e: LatticeError) -> Self {
        CohomologyError::Lattice(e)
    }
}

impl From<WeylError> for CohomologyError {
    fn from(e: WeylError) -> Self {
        CohomologyError::Weyl(e)
    }
}

impl From<TitsError> for CohomologyError {
    fn from(e: TitsError) -> Self {
        CohomologyError::Tits(e)
    }
}

/// `H^1` of the real torus whose Cartan involution acts on `X_*` by `theta`.
pub fn torus_h1(theta: &IntMatrix) -> Result<FiniteAbelianGroup, LatticeError> {
    lattice_tate(theta, Parity::Even)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongClass {
    /// Least canonical point of the class.
    pub rep: TorusPoint,
    pub invariant: TorusPoint,
    /// Canonical points in the `W_i`-orbit.
    pub members: Vec<TorusPoint>,
}

impl StrongClass {
    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }
}

/// Strong classes with a fixed square `z`.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub invariant: TorusPoint,
    /// Solutions of `(1 + tau) v = z` modulo twisted coboundaries, before the `W_i` quotient.
    pub raw: Vec<TorusPoint>,
    pub classes: Vec<StrongClass>,
}

impl Fiber {
    pub fn class_of(&self, v: &TorusPoint) -> Option<usize> {
        self.classes.iter().position(|c| c.members.binary_search(v).is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLabel {
    pub dim_k: usize,
    pub rank_k: usize,
    /// Type of the compact imaginary roots.
    pub compact_imaginary_type: CartanType,
    /// Type of the root system of `K`.
    pub k_type: CartanType,
    pub central_torus_rank: usize,
}

impl KLabel {
    /// Name in the style of the tables: `D5T`, `A5A1`, `E7`; `T` alone for a torus.
    pub fn name(&self) -> String {
        let mut s = self.k_type.compact_name();
        match self.central_torus_rank {
            0 => {}
            1 => s.push('T'),
            k => s.push_str(&format!("T{k}")),
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Display for KLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, rank {})", self.name(), self.dim_k, self.rank_k)
    }
}

#[derive(Debug, Clone)]
pub struct FormRecord {
    pub k_label: KLabel,
    /// Index into [`Census::fibers`].
    pub fiber: usize,
    pub invariant: TorusPoint,
    /// `|H^1(Gamma, G)|` for this real form.
    pub h1_count: usize,
    /// Indices of the strong classes (in the fiber) belonging to this form.
    pub classes: Vec<usize>,
    pub is_quasicompact: bool,
    pub is_compact: bool,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub fibers: Vec<Fiber>,
    pub forms: Vec<FormRecord>,
    /// True when the center has a torus part, so only a finite-order slice of invariants is used.
    pub finite_slice: bool,
}

impl Census {
    /// Total number of strong real forms over the chosen invariant representatives.
    pub fn strong_form_count(&self) -> usize {
        self.fibers.iter().map(|f| f.classes.len()).sum()
    }

    pub fn form_of(&self, fiber: usize, class: usize) -> Option<usize> {
        self.forms.iter().position(|f| f.fiber == fiber && f.classes.contains(&class))
    }
}

/// Invariant class in `Z^tau / (1 + tau) Z`, within the finite-order slice.
#[derive(Debug, Clone)]
pub struct InvariantClass {
    pub rep: TorusPoint,
    pub members: Vec<TorusPoint>,
}

/// Everything attached to a root datum and an inner class.
#[derive(Debug, Clone)]
pub struct InnerClassContext {
    rd: BasedRootDatum,
    ic: InnerClass,
    weyl: WeylGroup,
    imaginary: ImaginarySubsystem,
    action: StrongAction,
    one_plus_tau: IntMatrix,
    reducer: QuotientReducer,
    center: CenterDescription,
}

impl InnerClassContext {
    pub fn new(rd: &BasedRootDatum, ic: &InnerClass) -> Result<Self, CohomologyError> {
        let n = rd.rank();
        let weyl = WeylGroup::new(rd);
        let imaginary = ImaginarySubsystem::new(rd, ic, &weyl);
        let action = StrongAction::new(rd, ic, &imaginary.generators)?;
        let tau = ic.tau();
        let one_plus_tau = IntMatrix::identity(n).add(tau);
        let one_minus_tau = IntMatrix::identity(n).sub(tau);
        let coboundaries: Vec<Vec<Rational>> = (0..n).map(|j| one_minus_tau.col(j).into_iter().map(Rational::from_integer).collect()).collect();
        let reducer = QuotientReducer::new(n, &coboundaries)?;
        Ok(InnerClassContext {
            rd: rd.clone(),
            ic: ic.clone(),
            weyl,
            imaginary,
            action,
            one_plus_tau,
            reducer,
            center: rd.center(),
        })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.rd
    }

    pub fn inner_class(&self) -> &InnerClass {
        &self.ic
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn imaginary(&self) -> &ImaginarySubsystem {
        &self.imaginary
    }

    pub fn strong_action(&self) -> &StrongAction {
        &self.action
    }

    pub fn center(&self) -> &CenterDescription {
        &self.center
    }

    /// Canonical form modulo twisted coboundaries and `X_*`.
    pub fn canonical(&self, v: &TorusPoint) -> TorusPoint {
        self.reducer.canonical_point(v)
    }

    pub fn invariant(&self, v: &TorusPoint) -> TorusPoint {
        v.transform(&self.one_plus_tau)
    }

    /// `H^1` of the fundamental torus, i.e. the size of every nonempty raw fiber.
    pub fn fundamental_torus_h1(&self) -> FiniteAbelianGroup {
        torus_h1(self.ic.tau()).expect("tau is an involution")
    }

    fn check_invariant(&self, z: &TorusPoint) -> Result<(), CohomologyError> {
        if !self.rd.is_central(z) {
            return Err(CohomologyError::NotCentral);
        }
        if self.ic.apply_point(z) != *z {
            return Err(CohomologyError::NotTauFixed);
        }
        Ok(())
    }

    /// Solutions of `(1 + tau) v = z`, canonical modulo twisted coboundaries.
    pub fn raw_fiber(&self, z: &TorusPoint) -> Result<Vec<TorusPoint>, CohomologyError> {
        self.check_invariant(z)?;
        let size = self.fundamental_torus_h1().order();
        if size > BigInt::from(MAX_RAW_FIBER) {
            return Err(CohomologyError::FiberGuard { size, bound: MAX_RAW_FIBER });
        }
        Ok(solve_with_reducer(&self.one_plus_tau, z, &self.reducer)?)
    }

    pub fn strong_fiber(&self, z: &TorusPoint) -> Result<Fiber, CohomologyError> {
        let raw = self.raw_fiber(z)?;
        let actions: Vec<_> = (0..self.action.len())
            .map(|g| move |p: &TorusPoint| self.canonical(&self.action.apply(g, p)))
            .collect();
        let classes = orbit_partition(&raw, &actions)?
            .into_iter()
            .map(|o| StrongClass { rep: o.rep, invariant: z.clone(), members: o.members })
            .collect();
        Ok(Fiber { invariant: z.clone(), raw, classes })
    }

    fn slice_order(&self) -> BigInt {
        let e = self.center.exponent();
        if self.center.torus_rank() > 0 {
            e * BigInt::from(4)
        } else {
            e * BigInt::from(2)
        }
    }

    /// Central elements whose order divides `m`.
    pub fn central_elements(&self, m: &BigInt) -> Vec<TorusPoint> {
        let n = self.rd.rank();
        let mut pts = vec![TorusPoint::zero(n)];
        for (g, d) in &self.center.finite {
            let d = d.to_usize().expect("small center");
            let mut next = Vec::with_capacity(pts.len() * d);
            for p in &pts {
                let mut q = p.clone();
                for _ in 0..d {
                    next.push(q.clone());
                    q = q.add(g);
                }
            }
            pts = next;
        }
        let m_us = m.to_usize().expect("small slice order");
        let mr = Rational::from_integer(m.clone());
        for dir in &self.center.torus_directions {
            let step = TorusPoint::new(dir.iter().map(|x| x / &mr).collect());
            let mut next = Vec::with_capacity(pts.len() * m_us);
            for p in &pts {
                let mut q = p.clone();
                for _ in 0..m_us {
                    next.push(q.clone());
                    q = q.add(&step);
                }
            }
            pts = next;
        }
        let set: BTreeSet<TorusPoint> =
            pts.into_iter().filter(|p| m.is_multiple_of(&p.order()) || p.order().is_one()).collect();
        set.into_iter().collect()
    }

    fn torus_image_reducer(&self) -> QuotientReducer {
        let n = self.rd.rank();
        let image: Vec<Vec<Rational>> =
            self.center.torus_directions.iter().map(|d| self.one_plus_tau.apply(d)).collect();
        QuotientReducer::new(n, &image).expect("dimensions agree")
    }

    /// `Z^tau / (1 + tau) Z` on the finite-order slice, sorted by representative.
    pub fn invariant_classes(&self) -> Result<Vec<InvariantClass>, CohomologyError> {
        let slice: Vec<TorusPoint> = self
            .central_elements(&self.slice_order())
            .into_iter()
            .filter(|z| self.ic.apply_point(z) == *z)
            .collect();
        let red = &self.torus_image_reducer();
        let shifts: Vec<TorusPoint> =
            self.center.finite.iter().map(|(g, _)| g.transform(&self.one_plus_tau)).collect();
        let keys: Vec<TorusPoint> = slice.iter().map(|z| red.canonical_point(z)).collect();
        let actions: Vec<_> =
            shifts.iter().map(|s| move |k: &TorusPoint| red.canonical_point(&k.add(s))).collect();
        let orbits = orbit_partition(&keys, &actions)?;
        let mut out: Vec<InvariantClass> = orbits
            .into_iter()
            .map(|o| {
                let members: Vec<TorusPoint> = slice
                    .iter()
                    .zip(&keys)
                    .filter(|(_, k)| o.members.binary_search(k).is_ok())
                    .map(|(z, _)| z.clone())
                    .collect();
                InvariantClass { rep: members[0].clone(), members }
            })
            .collect();
        out.sort_by(|a, b| a.rep.cmp(&b.rep));
        Ok(out)
    }

    /// Central elements `c` of the slice with `(1 + tau) c = 0`: translating a
    /// strong involution by them does not change its square or its real form.
    pub fn form_translations(&self) -> Vec<TorusPoint> {
        self.central_elements(&self.slice_order())
            .into_iter()
            .filter(|c| self.invariant(c).is_zero())
            .collect()
    }

    pub fn k_label(&self, v: &TorusPoint) -> Result<KLabel, CohomologyError> {
        let rs = self.rd.root_system();
        let pos = rs.positive();
        let mut trace = self.ic.trace();
        let mut compact: Vec<usize> = Vec::new();
        for (idx, &k) in self.imaginary.roots.iter().enumerate() {
            let p = self.rd.pair_root(k, v.coords());
            let doubled = &p + &p;
            if !doubled.is_integer() {
                return Err(CohomologyError::NotStrongInvolution);
            }
            let mut sign = if p.is_integer() { 1 } else { -1 };
            if self.imaginary.swapped_pair[idx] {
                sign = -sign;
            }
            trace += 2 * sign;
            if sign == 1 {
                compact.push(k);
            }
        }
        let dim_g = self.rd.dimension() as i64;
        let dim_k = ((dim_g + trace) / 2) as usize;
        let rank_k = self.ic.fixed_rank();

        let ci_pos: Vec<Vec<i64>> = compact.iter().map(|&k| pos[k].clone()).collect();
        let ci_cartan = string_cartan(&ci_pos);
        let compact_imaginary_type =
            classify_cartan(&ci_cartan).map_err(|e| CohomologyError::Classification(format!("{e}")))?;

        // K roots: compact imaginary roots and one root per pair of complex roots,
        // as doubled averages c + pi(c) in simple-root coordinates
        let mut k_roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        for &k in &compact {
            k_roots.insert(pos[k].iter().map(|x| 2 * x).collect());
        }
        for c in pos {
            let pc = self.ic.permute_coefficients(c);
            if pc != *c {
                k_roots.insert(c.iter().zip(&pc).map(|(a, b)| a + b).collect());
            }
        }
        let k_pos: Vec<Vec<i64>> = k_roots.into_iter().collect();
        let k_cartan = string_cartan(&k_pos);
        let k_type = classify_cartan(&k_cartan).map_err(|e| CohomologyError::Classification(format!("{e}")))?;
        let k_rank = k_type.rank();
        debug_assert_eq!(dim_k, rank_k + 2 * k_pos.len());
        if dim_k != rank_k + 2 * k_pos.len() || k_rank > rank_k {
            return Err(CohomologyError::Classification(format!(
                "dim K = {dim_k} disagrees with rank {rank_k} and {} positive roots",
                k_pos.len()
            )));
        }
        Ok(KLabel {
            dim_k,
            rank_k,
            compact_imaginary_type,
            k_type,
            central_torus_rank: rank_k - k_rank,
        })
    }

    /// All strong classes over the invariant representatives, grouped into real forms.
    pub fn census(&self) -> Result<Census, CohomologyError> {
        let classes = self.invariant_classes()?;
        let translations = self.form_translations();
        let mut fibers = Vec::with_capacity(classes.len());
        let mut forms = Vec::new();
        let zero = TorusPoint::zero(self.rd.rank());
        for (fi, ic) in classes.iter().enumerate() {
            let fiber = self.strong_fiber(&ic.rep)?;
            let idx: Vec<usize> = (0..fiber.classes.len()).collect();
            let actions: Vec<_> = translations
                .iter()
                .map(|c| {
                    let fiber = &fiber;
                    move |&k: &usize| {
                        let moved = self.canonical(&fiber.classes[k].rep.add(c));
                        fiber.class_of(&moved).expect("translation preserves the fiber")
                    }
                })
                .collect();
            for orbit in orbit_partition(&idx, &actions)? {
                let first = &fiber.classes[orbit.rep];
                let k_label = self.k_label(&first.rep)?;
                let is_quasicompact = ic.rep == zero
                    && orbit.members.iter().any(|&k| fiber.classes[k].members.binary_search(&zero).is_ok());
                forms.push(FormRecord {
                    is_compact: k_label.dim_k == self.rd.dimension(),
                    k_label,
                    fiber: fi,
                    invariant: ic.rep.clone(),
                    h1_count: fiber.classes.len(),
                    classes: orbit.members,
                    is_quasicompact,
                });
            }
            fibers.push(fiber);
        }
        Ok(Census { fibers, forms, finite_slice: self.center.torus_rank() > 0 })
    }

    /// Finds the invariant class of a central element, with a translation
    /// `c` such that `z + (1 + tau) c` is that class's representative.
    pub fn locate_invariant(
        &self,
        z: &TorusPoint,
        classes: &[InvariantClass],
    ) -> Result<(usize, TorusPoint), CohomologyError> {
        self.check_invariant(z)?;
        let m = self.slice_order().lcm(&z.order()) * BigInt::from(2);
        let cands = self.central_elements(&m);
        for (i, class) in classes.iter().enumerate() {
            for c in &cands {
                if z.add(&self.invariant(c)) == class.rep {
                    return Ok((i, c.clone()));
                }
            }
        }
        Err(CohomologyError::UnknownInvariant)
    }

    /// The real form of the census containing the strong involution with coordinate `v`.
    pub fn locate_form(
        &self,
        census: &Census,
        classes: &[InvariantClass],
        v: &TorusPoint,
    ) -> Result<usize, CohomologyError> {
        let z = self.invariant(v);
        let (fi, c) = self.locate_invariant(&z, classes)?;
        let moved = self.canonical(&v.add(&c));
        let class = census.fibers[fi].class_of(&moved).ok_or(CohomologyError::NotStrongInvolution)?;
        census.form_of(fi, class).ok_or(CohomologyError::NotStrongInvolution)
    }
}

/// Simple roots of a set of positive roots: those that are not sums of two others.
fn simple_subset(pos: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<&Vec<i64>> = pos.iter().collect();
    pos.iter()
        .filter(|a| {
            !pos.iter().any(|b| {
                let d: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                set.contains(&d)
            })
        })
        .cloned()
        .collect()
}

/// Cartan matrix of the simple roots of a positive system given as vectors,
/// from root strings: for simple `b != g`, `<b, g^vee> = -q` where `q` is the
/// largest `k` with `b + k g` a root.
fn string_cartan(pos: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let simple = simple_subset(pos);
    let set: BTreeMap<&Vec<i64>, ()> = pos.iter().map(|p| (p, ())).collect();
    simple
        .iter()
        .map(|b| {
            simple
                .iter()
                .map(|g| {
                    if b == g {
                        return 2;
                    }
                    let mut q = 0;
                    let mut cur = b.clone();
                    loop {
                        cur = cur.iter().zip(g).map(|(x, y)| x + y).collect();
                        if set.contains_key(&cur) {
                            q += 1;
                        } else {
                            break;
                        }
                    }
                    -q
                })
                .collect()
        })
        .collect()
}

/// `|H^1(Gamma, A)|` for a finite `tau`-stable subgroup `A` of the torus,
/// given by its elements: `ker(1 + tau) / im(1 - tau)`.
pub fn finite_module_h1(elements: &[TorusPoint], tau: &IntMatrix) -> usize {
    let set: BTreeSet<&TorusPoint> = elements.iter().collect();
    let kernel = elements.iter().filter(|a| a.add(&a.transform(tau)).is_zero()).count();
    let image: BTreeSet<TorusPoint> = elements.iter().map(|a| a.sub(&a.transform(tau))).collect();
    debug_assert!(image.iter().all(|x| set.contains(x)));
    if image.is_empty() {
        return 0;
    }
    kernel / image.len()
}
