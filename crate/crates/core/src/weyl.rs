//! Weyl groups: elements, reduced words, orbits of finite point sets, the
//! imaginary root subsystem of an inner class, and twisted involutions.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactlat::{IntMatrix, TorusPoint};
use crate::rootdata::{BasedRootDatum, InnerClass};

pub const DEFAULT_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylError {
    /// The acted-on set is not stable under a generator.
    ActionLeavesSet,
    GuardExceeded { bound: u64 },
    NotTwistedFixed,
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::ActionLeavesSet => write!(f, "group action leaves the point set"),
            WeylError::GuardExceeded { bound } => {
                write!(f, "group order exceeds the enumeration bound {bound}")
            }
            WeylError::NotTwistedFixed => write!(f, "element is not fixed by the diagram involution"),
        }
    }
}

/// An element of `W`, stored as its action on simple-root coefficient vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    l: usize,
    m: Vec<i64>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.m)
    }
}

impl WeylElement {
    pub fn identity(l: usize) -> Self {
        let mut m = vec![0; l * l];
        for i in 0..l {
            m[i * l + i] = 1;
        }
        WeylElement { l, m }
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.l)
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.m[r * self.l + c]
    }

    pub fn mul(&self, o: &WeylElement) -> WeylElement {
        let l = self.l;
        let mut m = vec![0; l * l];
        for i in 0..l {
            for k in 0..l {
                let a = self.m[i * l + k];
                if a == 0 {
                    continue;
                }
                for j in 0..l {
                    m[i * l + j] += a * o.m[k * l + j];
                }
            }
        }
        WeylElement { l, m }
    }

    /// Image of a root given by coefficients.
    pub fn apply(&self, c: &[i64]) -> Vec<i64> {
        let l = self.l;
        (0..l).map(|i| (0..l).map(|j| self.m[i * l + j] * c[j]).sum()).collect()
    }

    /// Whether `w(alpha_i)` is a positive root.
    pub fn keeps_positive(&self, i: usize) -> bool {
        (0..self.l).all(|r| self.entry(r, i) >= 0)
    }

    /// Conjugates the matrix by a permutation of the simple roots.
    pub fn permuted(&self, perm: &[usize]) -> WeylElement {
        let l = self.l;
        let mut m = vec![0; l * l];
        for i in 0..l {
            for j in 0..l {
                m[perm[i] * l + perm[j]] = self.m[i * l + j];
            }
        }
        WeylElement { l, m }
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    cartan: Vec<Vec<i64>>,
    gens: Vec<WeylElement>,
    lattice_gens: Vec<IntMatrix>,
}

impl WeylGroup {
    pub fn new(rd: &BasedRootDatum) -> Self {
        let cartan = rd.cartan_matrix().to_vec();
        let l = cartan.len();
        let gens = (0..l).map(|i| simple_reflection(&cartan, i)).collect();
        let lattice_gens = (0..l).map(|i| rd.reflection_matrix(i)).collect();
        WeylGroup { cartan, gens, lattice_gens }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn generator(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    pub fn lattice_generator(&self, i: usize) -> &IntMatrix {
        &self.lattice_gens[i]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank())
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(&self.gens[i]))
    }

    /// A reduced word `[i1, ..., ik]` with `w = s_i1 ... s_ik`, found by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut cur = w.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..self.rank() {
                if !cur.keeps_positive(i) {
                    cur = cur.mul(&self.gens[i]);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(cur.is_identity());
        rev.reverse();
        rev
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.reduced_word(w).len()
    }

    /// Action of `w` on `X_*`.
    pub fn lattice_matrix(&self, w: &WeylElement) -> IntMatrix {
        let n = self.lattice_gens.first().map_or(0, IntMatrix::rows);
        self.reduced_word(w)
            .iter()
            .fold(IntMatrix::identity(n), |acc, &i| acc.mul(&self.lattice_gens[i]))
    }

    pub fn act_point(&self, rd: &BasedRootDatum, w: &WeylElement, v: &TorusPoint) -> TorusPoint {
        self.reduced_word(w).iter().rev().fold(v.clone(), |p, &i| rd.reflect_point(i, &p))
    }

    /// Reflection in a positive root of the datum's root system.
    pub fn reflection(&self, rd: &BasedRootDatum, k: usize) -> WeylElement {
        let rs = rd.root_system();
        let c = &rs.positive()[k];
        let d = rs.coroot_coefficients(k);
        let l = self.rank();
        // <gamma, beta^vee> = sum_j gamma_j (C d)_j
        let cd: Vec<i64> = (0..l).map(|j| (0..l).map(|t| self.cartan[j][t] * d[t]).sum()).collect();
        let mut m = WeylElement::identity(l).m;
        for r in 0..l {
            for col in 0..l {
                m[r * l + col] -= c[r] * cd[col];
            }
        }
        WeylElement { l, m }
    }

    /// `|W|` by orbit-stabilizer on fundamental weights down a chain of
    /// parabolic subgroups.
    pub fn order(&self) -> BigInt {
        parabolic_order(&self.cartan, &(0..self.rank()).collect::<Vec<_>>())
    }

    /// All elements, by breadth-first search; fails beyond `guard` elements.
    pub fn elements(&self, guard: u64) -> Result<Vec<WeylElement>, WeylError> {
        if self.order() > BigInt::from(guard) {
            return Err(WeylError::GuardExceeded { bound: guard });
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(id.clone());
        queue.push_back(id);
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for g in &self.gens {
                let x = w.mul(g);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
            out.push(w);
        }
        Ok(out)
    }
}

fn simple_reflection(cartan: &[Vec<i64>], i: usize) -> WeylElement {
    let l = cartan.len();
    let mut w = WeylElement::identity(l);
    // s_i(c) = c - <c, alpha_i^vee> e_i,  <c, alpha_i^vee> = sum_k c_k C[k][i]
    for k in 0..l {
        w.m[i * l + k] -= cartan[k][i];
    }
    w
}

fn parabolic_order(cartan: &[Vec<i64>], nodes: &[usize]) -> BigInt {
    let Some((&last, rest)) = nodes.split_last() else {
        return BigInt::one();
    };
    // orbit of the fundamental weight of `last` in Dynkin-label coordinates
    let mut start = vec![0i64; nodes.len()];
    start[nodes.len() - 1] = 1;
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(lam) = stack.pop() {
        for (a, &i) in nodes.iter().enumerate() {
            if lam[a] == 0 {
                continue;
            }
            let next: Vec<i64> = nodes
                .iter()
                .enumerate()
                .map(|(b, &j)| lam[b] - lam[a] * cartan[i][j])
                .collect();
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let _ = last;
    BigInt::from(seen.len()) * parabolic_order(cartan, rest)
}

/// An orbit, reported by its least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit<P> {
    pub rep: P,
    pub members: Vec<P>,
}

/// Partitions `points` into orbits under the group generated by `actions`.
/// Orbits are returned sorted by representative; members sorted.
pub fn orbit_partition<P, F>(points: &[P], actions: &[F]) -> Result<Vec<Orbit<P>>, WeylError>
where
    P: Ord + Clone,
    F: Fn(&P) -> P,
{
    let set: BTreeSet<P> = points.iter().cloned().collect();
    let mut assigned: BTreeSet<P> = BTreeSet::new();
    let mut out = Vec::new();
    for p in &set {
        if assigned.contains(p) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(p.clone());
        let mut stack = vec![p.clone()];
        while let Some(x) = stack.pop() {
            for a in actions {
                let y = a(&x);
                if !set.contains(&y) {
                    return Err(WeylError::ActionLeavesSet);
                }
                if orbit.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        assigned.extend(orbit.iter().cloned());
        let members: Vec<P> = orbit.into_iter().collect();
        out.push(Orbit { rep: members[0].clone(), members });
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(out)
}

/// The `tau`-fixed roots, with a simple system and the Weyl group `W_i`.
#[derive(Debug, Clone)]
pub struct ImaginarySubsystem {
    /// Indices of positive imaginary roots in the datum's root system.
    pub roots: Vec<usize>,
    /// Indices of the simple imaginary roots.
    pub simple: Vec<usize>,
    /// For each entry of `roots`: whether it is `beta + tau beta` for some root `beta`.
    pub swapped_pair: Vec<bool>,
    /// Reflections in the simple imaginary roots.
    pub generators: Vec<WeylElement>,
}

impl ImaginarySubsystem {
    pub fn new(rd: &BasedRootDatum, ic: &InnerClass, w: &WeylGroup) -> Self {
        let rs = rd.root_system();
        let pos = rs.positive();
        let roots: Vec<usize> = (0..pos.len())
            .filter(|&k| ic.permute_coefficients(&pos[k]) == pos[k])
            .collect();
        let set: BTreeSet<&Vec<i64>> = roots.iter().map(|&k| &pos[k]).collect();
        let simple: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&k| {
                !roots.iter().any(|&a| {
                    let diff: Vec<i64> = pos[k].iter().zip(&pos[a]).map(|(x, y)| x - y).collect();
                    set.contains(&diff)
                })
            })
            .collect();
        let swapped_pair = roots
            .iter()
            .map(|&k| {
                pos.iter().any(|b| {
                    let tb = ic.permute_coefficients(b);
                    tb != *b && b.iter().zip(&tb).zip(&pos[k]).all(|((x, y), z)| x + y == *z)
                })
            })
            .collect();
        let generators = simple.iter().map(|&k| w.reflection(rd, k)).collect();
        ImaginarySubsystem { roots, simple, swapped_pair, generators }
    }

    pub fn is_swapped_pair(&self, k: usize) -> Option<bool> {
        self.roots.iter().position(|&r| r == k).map(|i| self.swapped_pair[i])
    }

    /// Cartan matrix of the simple imaginary roots.
    pub fn cartan_matrix(&self, rd: &BasedRootDatum) -> Vec<Vec<i64>> {
        let rs = rd.root_system();
        self.simple
            .iter()
            .map(|&a| self.simple.iter().map(|&b| rs.pairing(a, b)).collect())
            .collect()
    }
}

/// A class of twisted involutions `{w : w tau(w) = 1}` under `w -> x w tau(x)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedClass {
    /// Reduced word of the shortest, then lexicographically least, member.
    pub rep: Vec<usize>,
    pub size: usize,
}

pub fn twisted_involution_classes(
    w: &WeylGroup,
    perm: &[usize],
    guard: u64,
) -> Result<Vec<TwistedClass>, WeylError> {
    let elems = w.elements(guard)?;
    let tau = |x: &WeylElement| x.permuted(perm);
    let invols: Vec<WeylElement> = elems.into_iter().filter(|x| x.mul(&tau(x)).is_identity()).collect();
    let gens: Vec<(WeylElement, WeylElement)> =
        (0..w.rank()).map(|i| (w.generator(i).clone(), w.generator(perm[i]).clone())).collect();
    let actions: Vec<_> = gens.iter().map(|(a, b)| move |x: &WeylElement| a.mul(x).mul(b)).collect();
    let orbits = orbit_partition(&invols, &actions)?;
    let mut out: Vec<TwistedClass> = orbits
        .into_iter()
        .map(|o| {
            let rep = o
                .members
                .iter()
                .map(|x| w.reduced_word(x))
                .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
                .expect("orbits are nonempty");
            TwistedClass { rep, size: o.members.len() }
        })
        .collect();
    out.sort_by(|a, b| a.rep.len().cmp(&b.rep.len()).then_with(|| a.rep.cmp(&b.rep)));
    Ok(out)
}

/// Elements of the subgroup generated by `gens`, by closure.
pub fn generated_subgroup(gens: &[WeylElement], l: usize, guard: u64) -> Result<Vec<WeylElement>, WeylError> {
    let mut seen: BTreeMap<WeylElement, ()> = BTreeMap::new();
    let id = WeylElement::identity(l);
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains_key(&y) {
                if seen.len() as u64 >= guard {
                    return Err(WeylError::GuardExceeded { bound: guard });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_keys().collect())
}
