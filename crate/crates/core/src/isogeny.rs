//! Central isogenies `G -> G/A` and the induced map on strong classes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::{finite_module_h1, CohomologyError, Fiber, InnerClassContext};
use crate::exactlat::{integral_matrix, rat_mat_mul, rational_inverse, IntMatrix, Rational, TorusPoint};
use crate::rootdata::{lattice_basis, BasedRootDatum, InnerClass, RootDataError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsogenyError {
    NotCentral,
    NotTauStable,
    EmptyFiber,
    /// `|H^1(A)|` is not a multiple of the fiber size.
    NonIntegralQuotient { h1: usize, fiber: usize },
    RootData(RootDataError),
    Cohomology(CohomologyError),
}

impl fmt::Display for IsogenyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsogenyError::NotCentral => write!(f, "quotient subgroup is not central"),
            IsogenyError::NotTauStable => write!(f, "quotient subgroup is not tau-stable"),
            IsogenyError::EmptyFiber => write!(f, "fiber is empty"),
            IsogenyError::NonIntegralQuotient { h1, fiber } => {
                write!(f, "fiber size {fiber} does not divide |H^1(A)| = {h1}")
            }
            IsogenyError::RootData(e) => write!(f, "{e}"),
            IsogenyError::Cohomology(e) => write!(f, "{e}"),
        }
    }
}

impl From<RootDataError> for IsogenyError {
    fn from(e: RootDataError) -> Self {
        IsogenyError::RootData(e)
    }
}

impl From<CohomologyError> for IsogenyError {
    fn from(e: CohomologyError) -> Self {
        IsogenyError::Cohomology(e)
    }
}

/// `p : G -> G/A`, with `X_*(G/A) = X_*(G) + span(A)`.
#[derive(Debug, Clone)]
pub struct IsogenyMap {
    pub source: BasedRootDatum,
    pub target: BasedRootDatum,
    /// All elements of `A`, in source coordinates.
    pub kernel: Vec<TorusPoint>,
    /// Source coordinates to target coordinates.
    to_target: IntMatrix,
    /// Columns: target basis in source coordinates.
    basis: Vec<Vec<Rational>>,
}

/// Subgroup generated by finitely many torsion points.
pub fn generated_points(gens: &[TorusPoint], n: usize) -> Vec<TorusPoint> {
    let mut set = BTreeSet::new();
    set.insert(TorusPoint::zero(n));
    let mut frontier = alloc::vec![TorusPoint::zero(n)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.add(g);
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    set.into_iter().collect()
}

pub fn quotient_datum(rd: &BasedRootDatum, gens: &[TorusPoint]) -> Result<IsogenyMap, IsogenyError> {
    let n = rd.rank();
    if gens.iter().any(|g| g.dim() != n || !rd.is_central(g)) {
        return Err(IsogenyError::NotCentral);
    }
    let mut lat: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::from_integer(0.into()) }).collect())
        .collect();
    lat.extend(gens.iter().map(|g| g.coords().to_vec()));
    let basis = lattice_basis(&lat, n);
    // matrix with the basis vectors as columns
    let bmat: Vec<Vec<Rational>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let binv = rational_inverse(&bmat).expect("lattice basis is invertible");
    let to_target = integral_matrix(&binv).expect("source lattice lies in the target lattice");
    let coroots = rd.coroots().mul(&to_target.transpose());
    let roots = integral_matrix(&rat_mat_mul(&rd.roots().to_rational(), &bmat)).ok_or(IsogenyError::NotCentral)?;
    let mut target = BasedRootDatum::from_matrices(rd.cartan_type().clone(), roots, coroots)?;
    if let Some(amb) = rd.ambient_basis() {
        let m = amb.first().map_or(0, Vec::len);
        let cols: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| (0..m).map(|r| amb.iter().zip(b).map(|(col, x)| &col[r] * x).sum()).collect())
            .collect();
        let roots_std: Vec<Vec<i64>> = ambient_rows(rd, true);
        let coroots_std: Vec<Vec<i64>> = ambient_rows(rd, false);
        target = BasedRootDatum::from_ambient(rd.cartan_type(), &roots_std, &coroots_std, &cols)?;
    }
    Ok(IsogenyMap {
        source: rd.clone(),
        target,
        kernel: generated_points(gens, n),
        to_target,
        basis,
    })
}

/// Simple roots or coroots of a datum with an ambient basis, in ambient coordinates.
fn ambient_rows(rd: &BasedRootDatum, roots: bool) -> Vec<Vec<i64>> {
    let amb = rd.ambient_basis().expect("ambient basis");
    let m = amb.first().map_or(0, Vec::len);
    (0..rd.semisimple_rank())
        .map(|i| {
            if roots {
                // alpha_std is determined by its pairing with the basis; solve on the span
                let row = rd.simple_root(i);
                let pairings: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
                ambient_dual(amb, &pairings, m)
            } else {
                let v: Vec<Rational> = rd.simple_coroot(i).iter().map(|&x| Rational::from_integer(x.into())).collect();
                rd.to_ambient_vector(&v).iter().map(|x| x.to_integer().try_into().expect("small")).collect()
            }
        })
        .collect()
}

/// The vector in the span of the basis with prescribed pairings against it.
fn ambient_dual(amb: &[Vec<Rational>], pairings: &[Rational], m: usize) -> Vec<i64> {
    // x = sum_k y_k b_k with Gram * y = pairings
    let n = amb.len();
    let gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| amb[i].iter().zip(&amb[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let ginv = rational_inverse(&gram).expect("basis is independent");
    let y: Vec<Rational> = (0..n).map(|i| (0..n).map(|j| &ginv[i][j] * &pairings[j]).sum()).collect();
    (0..m)
        .map(|r| {
            let s: Rational = (0..n).map(|k| &amb[k][r] * &y[k]).sum();
            s.to_integer().try_into().expect("integral ambient root")
        })
        .collect()
}

impl IsogenyMap {
    pub fn map_point(&self, v: &TorusPoint) -> TorusPoint {
        v.transform(&self.to_target)
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.len()
    }

    /// The inner class of the target induced by `ic`.
    pub fn target_inner_class(&self, ic: &InnerClass) -> Result<InnerClass, IsogenyError> {
        let tau = ic.tau();
        for a in &self.kernel {
            if !self.kernel.contains(&a.transform(tau)) {
                return Err(IsogenyError::NotTauStable);
            }
        }
        let bmat: Vec<Vec<Rational>> =
            (0..self.basis.len()).map(|i| self.basis.iter().map(|b| b[i].clone()).collect()).collect();
        let t = rat_mat_mul(&self.to_target.to_rational(), &rat_mat_mul(&tau.to_rational(), &bmat));
        let t = integral_matrix(&t).ok_or(IsogenyError::NotTauStable)?;
        Ok(InnerClass::from_matrix(&self.target, t)?)
    }

    /// `|H^1(Gamma, A)|` for the action of `tau` on `A`.
    pub fn kernel_h1(&self, ic: &InnerClass) -> usize {
        finite_module_h1(&self.kernel, ic.tau())
    }
}

/// The map on strong classes over a fixed source invariant `z`.
#[derive(Debug, Clone)]
pub struct FiberReport {
    pub source_invariant: TorusPoint,
    /// The target fiber over `p(z)`.
    pub target: Fiber,
    /// For each source class (in the source fiber's order), its image class.
    pub images: Vec<usize>,
    /// For each target class, the number of source classes mapping to it.
    pub counts: Vec<usize>,
}

impl FiberReport {
    pub fn is_hit(&self, target_class: usize) -> bool {
        self.counts[target_class] > 0
    }
}

pub fn fiber_sizes(
    _src: &InnerClassContext,
    tgt: &InnerClassContext,
    map: &IsogenyMap,
    source_fiber: &Fiber,
) -> Result<FiberReport, IsogenyError> {
    let zbar = map.map_point(&source_fiber.invariant);
    let target = tgt.strong_fiber(&zbar)?;
    let mut counts = alloc::vec![0usize; target.classes.len()];
    let mut images = Vec::with_capacity(source_fiber.classes.len());
    for class in &source_fiber.classes {
        let img = tgt.canonical(&map.map_point(&class.rep));
        let k = target.class_of(&img).ok_or(CohomologyError::NotStrongInvolution)?;
        counts[k] += 1;
        images.push(k);
    }
    Ok(FiberReport { source_invariant: source_fiber.invariant.clone(), target, images, counts })
}

/// `|H^1(A)| / |fiber|`, the order of the component-group quotient acting on `H^1(A)`.
pub fn pi0_quotient_order(h1_a: usize, fiber: usize) -> Result<usize, IsogenyError> {
    if fiber == 0 {
        return Err(IsogenyError::EmptyFiber);
    }
    if !h1_a.is_multiple_of(fiber) {
        return Err(IsogenyError::NonIntegralQuotient { h1: h1_a, fiber });
    }
    Ok(h1_a / fiber)
}

/// One source real form and its image in the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientForm {
    pub source_form: usize,
    /// `|H^1(Gamma, G/A)|` for the image form.
    pub target_h1: usize,
    /// Source classes mapping to the base point of the image.
    pub fiber: usize,
    pub pi0_quotient: usize,
}

pub fn quotient_census(
    src: &InnerClassContext,
    tgt: &InnerClassContext,
    map: &IsogenyMap,
) -> Result<Vec<QuotientForm>, IsogenyError> {
    let census = src.census()?;
    let h1a = map.kernel_h1(src.inner_class());
    let mut reports = Vec::with_capacity(census.fibers.len());
    for fiber in &census.fibers {
        reports.push(fiber_sizes(src, tgt, map, fiber)?);
    }
    census
        .forms
        .iter()
        .enumerate()
        .map(|(i, form)| {
            let rep = &reports[form.fiber];
            let fiber = rep.counts[rep.images[form.classes[0]]];
            Ok(QuotientForm {
                source_form: i,
                target_h1: rep.target.classes.len(),
                fiber,
                pi0_quotient: pi0_quotient_order(h1a, fiber)?,
            })
        })
        .collect()
}

/// The quotient by the full finite center.
pub fn adjoint_quotient(rd: &BasedRootDatum) -> Result<IsogenyMap, IsogenyError> {
    let gens: Vec<TorusPoint> = rd.center().finite.into_iter().map(|(g, _)| g).collect();
    quotient_datum(rd, &gens)
}
