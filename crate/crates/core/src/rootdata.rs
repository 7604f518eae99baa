//! Based root data, centers and inner classes.
//!
//! Roots live in `X^* = Z^n` (row vectors), coroots in `X_* = Z^n` (column
//! vectors) and the pairing is the dot product. Simple roots are numbered as
//! in Bourbaki; a reducible type numbers its factors consecutively.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlat::{
    hermite_rows, integral_matrix, rat, rational_inverse, rref, smith_normal_form, IntMatrix,
    Rational, TorusPoint,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootDataError {
    InvalidType(String),
    CartanMismatch,
    NotIntegral(&'static str),
    NotDiagramAutomorphism,
    LatticeNotPreserved,
    NotInvolution,
    Dimension(String),
    LatticeOutOfRange,
}

impl fmt::Display for RootDataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDataError::InvalidType(s) => write!(f, "invalid Cartan type `{s}`"),
            RootDataError::CartanMismatch => {
                write!(f, "root/coroot pairing does not equal the Cartan matrix")
            }
            RootDataError::NotIntegral(what) => write!(f, "{what} is not integral in the lattice"),
            RootDataError::NotDiagramAutomorphism => {
                write!(f, "permutation is not an involutive diagram automorphism")
            }
            RootDataError::LatticeNotPreserved => {
                write!(f, "diagram automorphism does not preserve the cocharacter lattice")
            }
            RootDataError::NotInvolution => write!(f, "tau is not an involution"),
            RootDataError::Dimension(s) => write!(f, "dimension mismatch: {s}"),
            RootDataError::LatticeOutOfRange => {
                write!(f, "lattice generators must lie between the coroot and coweight lattices")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        let ok = match series {
            Series::A | Series::B | Series::C => rank >= 1,
            Series::D => rank >= 2,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(RootDataError::InvalidType(format!("{}{}", series.letter(), rank)))
        }
    }

    /// Squared root lengths and nonzero inner products `(i, j, (a_i, a_j))`
    /// of a Weyl-invariant form, Bourbaki numbering, zero based.
    fn form(self) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1)).collect::<Vec<_>>();
        match self.series {
            Series::A => (vec![2; n], chain(n)),
            Series::B => {
                let mut lens = vec![4; n];
                lens[n - 1] = 2;
                let e = chain(n).into_iter().map(|(i, j, _)| (i, j, -2)).collect();
                (lens, e)
            }
            Series::C => {
                let mut lens = vec![2; n];
                lens[n - 1] = 4;
                let mut e = chain(n);
                if n >= 2 {
                    e[n - 2].2 = -2;
                }
                (lens, e)
            }
            Series::D => {
                let mut e = chain(n - 1);
                if n >= 3 {
                    e.push((n - 3, n - 1, -1));
                }
                (vec![2; n], e)
            }
            Series::E => {
                let mut e = vec![(0, 2, -1), (1, 3, -1)];
                for i in 2..n - 1 {
                    e.push((i, i + 1, -1));
                }
                (vec![2; n], e)
            }
            Series::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
            Series::G => (vec![2, 6], vec![(0, 1, -3)]),
        }
    }

    /// `C[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let (lens, edges) = self.form();
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        for (i, j, ip) in edges {
            c[i][j] = 2 * ip / lens[j];
            c[j][i] = 2 * ip / lens[i];
        }
        c
    }

    /// The nontrivial involutive diagram automorphism, if any (zero based).
    pub fn diagram_flip(self) -> Option<Vec<usize>> {
        let n = self.rank;
        match self.series {
            Series::A if n >= 2 => Some((0..n).rev().collect()),
            Series::D if n >= 2 => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            Series::E if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// A product of simple types, e.g. `A1xA1` or `E6`. Rank 0 (the empty product) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CartanType(pub Vec<SimpleType>);

impl CartanType {
    pub fn simple(series: Series, rank: usize) -> Result<Self, RootDataError> {
        Ok(CartanType(vec![SimpleType::new(series, rank)?]))
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        let l = self.rank();
        let mut m = IntMatrix::zeros(l, l);
        let mut off = 0;
        for t in &self.0 {
            let c = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    m[(off + i, off + j)] = BigInt::from(c[i][j]);
                }
            }
            off += t.rank;
        }
        m
    }

    /// Flip every factor that has a nontrivial diagram involution.
    pub fn default_flip(&self) -> Vec<usize> {
        let mut p = Vec::new();
        let mut off = 0;
        for t in &self.0 {
            match t.diagram_flip() {
                Some(f) => p.extend(f.into_iter().map(|i| i + off)),
                None => p.extend(off..off + t.rank),
            }
            off += t.rank;
        }
        p
    }

    pub fn has_flip(&self) -> bool {
        self.0.iter().any(|t| t.diagram_flip().is_some())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "trivial");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = RootDataError;

    /// Accepts `E8`, `A1xA1`, `A1*B2`, `A1+A1`, `A1 A1` and `A5A1`.
    fn from_str(s: &str) -> Result<Self, RootDataError> {
        let bad = || RootDataError::InvalidType(s.to_string());
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || matches!(c, 'x' | '*' | '+' | '×') {
                i += 1;
                continue;
            }
            let series = Series::from_letter(c).ok_or_else(bad)?;
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let rank: usize = digits.parse().map_err(|_| bad())?;
            out.push(SimpleType::new(series, rank)?);
        }
        if out.is_empty() {
            return Err(bad());
        }
        Ok(CartanType(out))
    }
}

/// Identifies the type of a (possibly reducible) Cartan matrix given in the
/// convention `C[i][j] = <alpha_i, alpha_j^vee>`. Components are sorted by
/// rank (descending), then series. Low-rank coincidences are normalized:
/// `B1 = C1 = A1`, `C2 = B2`, `D3 = A3`.
pub fn classify_cartan(c: &[Vec<i64>]) -> Result<CartanType, RootDataError> {
    let l = c.len();
    let bad = || RootDataError::InvalidType(format!("{c:?}"));
    let mut seen = vec![false; l];
    let mut out = Vec::new();
    for start in 0..l {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..l {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(classify_component(c, &comp).ok_or_else(bad)?);
    }
    out.sort_by(|a: &SimpleType, b| b.rank.cmp(&a.rank).then(a.series.cmp(&b.series)));
    Ok(CartanType(out))
}

fn classify_component(c: &[Vec<i64>], nodes: &[usize]) -> Option<SimpleType> {
    let k = nodes.len();
    let adj = |i: usize| nodes.iter().copied().filter(move |&j| j != i && c[i][j] != 0);
    let degree = |i: usize| adj(i).count();
    if k == 1 {
        return SimpleType::new(Series::A, 1).ok();
    }
    let mut multi = None;
    for &i in nodes {
        for j in adj(i) {
            if c[i][j] > 0 || c[j][i] == 0 {
                return None;
            }
            let m = c[i][j] * c[j][i];
            if m > 1 && i < j {
                if multi.is_some() {
                    return None;
                }
                multi = Some((i, j, m));
            }
        }
    }
    // a Dynkin diagram is a tree
    let edges: usize = nodes.iter().map(|&i| degree(i)).sum::<usize>() / 2;
    if edges != k - 1 {
        return None;
    }
    match multi {
        Some((_, _, 3)) => (k == 2).then_some(SimpleType { series: Series::G, rank: 2 }),
        Some((i, j, 2)) => {
            if nodes.iter().any(|&x| degree(x) > 2) {
                return None;
            }
            if k == 2 {
                return Some(SimpleType { series: Series::B, rank: 2 });
            }
            if degree(i) == 2 && degree(j) == 2 {
                return (k == 4).then_some(SimpleType { series: Series::F, rank: 4 });
            }
            // the short root of the double bond: |<alpha_other, alpha_short^vee>| = 2
            let short = if c[i][j].abs() == 2 { j } else { i };
            let end = if degree(i) == 1 { i } else { j };
            let series = if short == end { Series::B } else { Series::C };
            Some(SimpleType { series, rank: k })
        }
        Some(_) => None,
        None => {
            let branch: Vec<usize> = nodes.iter().copied().filter(|&i| degree(i) > 2).collect();
            match branch.as_slice() {
                [] => Some(SimpleType { series: Series::A, rank: k }),
                [b] if degree(*b) == 3 => {
                    let mut arms: Vec<usize> = adj(*b)
                        .map(|first| {
                            let (mut prev, mut cur, mut len) = (*b, first, 1);
                            loop {
                                let next: Vec<usize> = adj(cur).filter(|&x| x != prev).collect();
                                match next.as_slice() {
                                    [n] => {
                                        prev = cur;
                                        cur = *n;
                                        len += 1;
                                    }
                                    _ => break len,
                                }
                            }
                        })
                        .collect();
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, _] => Some(SimpleType { series: Series::D, rank: k }),
                        [1, 2, 2] => Some(SimpleType { series: Series::E, rank: 6 }),
                        [1, 2, 3] => Some(SimpleType { series: Series::E, rank: 7 }),
                        [1, 2, 4] => Some(SimpleType { series: Series::E, rank: 8 }),
                        _ => None,
                    }
                }
                _ => None,
            }
        }
    }
}

impl CartanType {
    /// Compact name without separators, as in `A5A1` or `D6A1`.
    pub fn compact_name(&self) -> String {
        self.0.iter().map(|t| t.to_string()).collect()
    }
}

/// Positive roots as coefficient vectors over the simple roots, together
/// with the coefficient vectors of their coroots over the simple coroots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    pos: Vec<Vec<i64>>,
    pos_co: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Self {
        let l = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; l];
            v[i] = 1;
            v
        };
        let mut pos: Vec<Vec<i64>> = (0..l).map(unit).collect();
        let mut pos_co: Vec<Vec<i64>> = (0..l).map(unit).collect();
        let mut index: BTreeMap<Vec<i64>, usize> = (0..l).map(|i| (unit(i), i)).collect();
        let mut k = 0;
        while k < pos.len() {
            for i in 0..l {
                let c = pos[k].clone();
                let d = pos_co[k].clone();
                // <beta, alpha_i^vee> and <alpha_i, beta^vee>
                let b_i: i64 = (0..l).map(|j| c[j] * cartan[j][i]).sum();
                let i_b: i64 = (0..l).map(|j| cartan[i][j] * d[j]).sum();
                let mut c2 = c;
                c2[i] -= b_i;
                if c2.iter().any(|&x| x < 0) || c2.iter().all(|&x| x == 0) {
                    continue;
                }
                if index.contains_key(&c2) {
                    continue;
                }
                let mut d2 = d;
                d2[i] -= i_b;
                index.insert(c2.clone(), pos.len());
                pos.push(c2);
                pos_co.push(d2);
            }
            k += 1;
        }
        // order by height, then lexicographically, for determinism
        let mut order: Vec<usize> = (0..pos.len()).collect();
        order.sort_by(|&a, &b| {
            let ha: i64 = pos[a].iter().sum();
            let hb: i64 = pos[b].iter().sum();
            ha.cmp(&hb).then_with(|| pos[b].cmp(&pos[a]))
        });
        let pos: Vec<Vec<i64>> = order.iter().map(|&i| pos[i].clone()).collect();
        let pos_co: Vec<Vec<i64>> = order.iter().map(|&i| pos_co[i].clone()).collect();
        let index = pos.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        RootSystem { cartan, pos, pos_co, index }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_positive(&self) -> usize {
        self.pos.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive(&self) -> &[Vec<i64>] {
        &self.pos
    }

    pub fn coroot_coefficients(&self, k: usize) -> &[i64] {
        &self.pos_co[k]
    }

    /// Index of a positive root given by its coefficients.
    pub fn find(&self, c: &[i64]) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Finds a root of either sign; returns `(index, is_positive)`.
    pub fn find_signed(&self, c: &[i64]) -> Option<(usize, bool)> {
        if let Some(i) = self.find(c) {
            return Some((i, true));
        }
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        self.find(&neg).map(|i| (i, false))
    }

    /// `<beta_a, beta_b^vee>` for positive roots.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        let c = &self.pos[a];
        let d = &self.pos_co[b];
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            if c[i] == 0 {
                continue;
            }
            for j in 0..l {
                s += c[i] * self.cartan[i][j] * d[j];
            }
        }
        s
    }
}

/// Finite part and torus part of the center of `G`.
#[derive(Debug, Clone)]
pub struct CenterDescription {
    /// Generators of the component group of the center, with their orders.
    pub finite: Vec<(TorusPoint, BigInt)>,
    /// Rational directions spanning the identity component (a torus).
    pub torus_directions: Vec<Vec<Rational>>,
}

impl CenterDescription {
    pub fn finite_order(&self) -> BigInt {
        self.finite.iter().fold(BigInt::one(), |a, (_, d)| a * d)
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_directions.len()
    }

    pub fn exponent(&self) -> BigInt {
        use num_integer::Integer;
        self.finite.iter().fold(BigInt::one(), |a, (_, d)| a.lcm(d))
    }
}

#[derive(Debug, Clone)]
pub struct BasedRootDatum {
    cartan_type: CartanType,
    roots: IntMatrix,
    coroots: IntMatrix,
    roots_i64: Vec<Vec<i64>>,
    coroots_i64: Vec<Vec<i64>>,
    system: RootSystem,
    /// Columns: a basis of `X_*` in some ambient coordinates.
    ambient: Option<Vec<Vec<Rational>>>,
}

impl BasedRootDatum {
    /// Root datum from explicit simple roots (rows, in `X^*`) and simple coroots (rows, in `X_*`).
    pub fn from_matrices(
        cartan_type: CartanType,
        roots: IntMatrix,
        coroots: IntMatrix,
    ) -> Result<Self, RootDataError> {
        let l = cartan_type.rank();
        if roots.rows() != l || coroots.rows() != l || roots.cols() != coroots.cols() {
            return Err(RootDataError::Dimension(format!(
                "expected {l} roots and coroots of equal length"
            )));
        }
        if roots.mul(&coroots.transpose()) != cartan_type.cartan_matrix() {
            return Err(RootDataError::CartanMismatch);
        }
        let roots_i64 = roots.to_i64_rows().ok_or(RootDataError::Dimension("entries too large".into()))?;
        let coroots_i64 =
            coroots.to_i64_rows().ok_or(RootDataError::Dimension("entries too large".into()))?;
        let cartan = cartan_type.cartan_matrix().to_i64_rows().expect("small Cartan entries");
        Ok(BasedRootDatum {
            system: RootSystem::from_cartan(cartan),
            cartan_type,
            roots,
            coroots,
            roots_i64,
            coroots_i64,
            ambient: None,
        })
    }

    /// `X_*` is the coroot lattice; coroots are the standard basis.
    pub fn simply_connected(t: &CartanType) -> Self {
        let c = t.cartan_matrix();
        Self::from_matrices(t.clone(), c.clone(), IntMatrix::identity(t.rank()))
            .expect("simply connected datum is consistent")
    }

    /// `X_*` is the coweight lattice; roots are the standard basis.
    pub fn adjoint(t: &CartanType) -> Self {
        let c = t.cartan_matrix();
        Self::from_matrices(t.clone(), IntMatrix::identity(t.rank()), c.transpose())
            .expect("adjoint datum is consistent")
    }

    /// Semisimple datum whose cocharacter lattice is the coroot lattice
    /// enlarged by the given vectors, written in fundamental coweight
    /// coordinates.
    pub fn from_coweight_generators(
        t: &CartanType,
        generators: &[Vec<i64>],
    ) -> Result<Self, RootDataError> {
        let l = t.rank();
        let c = t.cartan_matrix();
        let cinv = rational_inverse(&c.to_rational()).map_err(|_| RootDataError::LatticeOutOfRange)?;
        let mut gens: Vec<Vec<Rational>> = (0..l)
            .map(|i| (0..l).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        for g in generators {
            if g.len() != l {
                return Err(RootDataError::Dimension(format!("generator of length {}", g.len())));
            }
            let gv: Vec<Rational> = g.iter().map(|&x| rat(x)).collect();
            gens.push(crate::exactlat::rat_mat_vec(&cinv, &gv));
        }
        let basis = lattice_basis(&gens, l);
        let bmat: Vec<Vec<Rational>> =
            (0..l).map(|i| (0..l).map(|j| basis[j][i].clone()).collect()).collect();
        let binv = rational_inverse(&bmat).map_err(|_| RootDataError::LatticeOutOfRange)?;
        let coroots = integral_matrix(&crate::exactlat::transpose_rat(&binv))
            .ok_or(RootDataError::NotIntegral("coroot"))?;
        let roots = integral_matrix(&crate::exactlat::rat_mat_mul(&c.to_rational(), &bmat))
            .ok_or(RootDataError::LatticeOutOfRange)?;
        Self::from_matrices(t.clone(), roots, coroots)
    }

    /// Root datum given in ambient coordinates `Z^m`: roots and coroots as
    /// rows, `X_*` spanned by the columns of `basis` (given as a list of
    /// vectors). Hints and other vectors can later be converted with
    /// [`BasedRootDatum::from_ambient_vector`].
    pub fn from_ambient(
        t: &CartanType,
        roots_std: &[Vec<i64>],
        coroots_std: &[Vec<i64>],
        basis: &[Vec<Rational>],
    ) -> Result<Self, RootDataError> {
        let n = basis.len();
        let m = basis.first().map_or(0, Vec::len);
        if basis.iter().any(|b| b.len() != m) || roots_std.iter().chain(coroots_std).any(|r| r.len() != m) {
            return Err(RootDataError::Dimension("ambient vectors of unequal length".into()));
        }
        if rref(basis).len() != n {
            return Err(RootDataError::Dimension("lattice basis is not independent".into()));
        }
        let mut coroot_rows = Vec::new();
        for cr in coroots_std {
            let v: Vec<Rational> = cr.iter().map(|&x| rat(x)).collect();
            let w = solve_in_basis(basis, &v).ok_or(RootDataError::NotIntegral("coroot"))?;
            if w.iter().any(|x| !x.is_integer()) {
                return Err(RootDataError::NotIntegral("coroot"));
            }
            coroot_rows.push(w.iter().map(|x| x.to_integer()).collect::<Vec<BigInt>>());
        }
        let mut root_rows = Vec::new();
        for r in roots_std {
            let mut row = Vec::new();
            for b in basis {
                let s: Rational = r.iter().zip(b).map(|(x, y)| rat(*x) * y).sum();
                if !s.is_integer() {
                    return Err(RootDataError::NotIntegral("root"));
                }
                row.push(s.to_integer());
            }
            root_rows.push(row);
        }
        let mut rd = Self::from_matrices(
            t.clone(),
            IntMatrix::from_big_rows(&root_rows, n),
            IntMatrix::from_big_rows(&coroot_rows, n),
        )?;
        rd.ambient = Some(basis.to_vec());
        Ok(rd)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    /// Rank of `X_*`.
    pub fn rank(&self) -> usize {
        self.roots.cols()
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.roots.rows()
    }

    pub fn roots(&self) -> &IntMatrix {
        &self.roots
    }

    pub fn coroots(&self) -> &IntMatrix {
        &self.coroots
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.roots_i64[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.coroots_i64[i]
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.system
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        self.system.cartan()
    }

    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.system.num_positive()
    }

    pub fn ambient_basis(&self) -> Option<&[Vec<Rational>]> {
        self.ambient.as_deref()
    }

    /// Coordinates of a positive root in `X^*`.
    pub fn root_vector(&self, k: usize) -> Vec<i64> {
        combine(&self.system.pos[k], &self.roots_i64, self.rank())
    }

    /// Coordinates of the coroot of a positive root in `X_*`.
    pub fn coroot_vector(&self, k: usize) -> Vec<i64> {
        combine(&self.system.pos_co[k], &self.coroots_i64, self.rank())
    }

    /// Converts a vector in ambient coordinates into `X_* (x) Q` coordinates.
    pub fn from_ambient_vector(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        match &self.ambient {
            Some(b) => solve_in_basis(b, v),
            None => (v.len() == self.rank()).then(|| v.to_vec()),
        }
    }

    pub fn to_ambient_vector(&self, v: &[Rational]) -> Vec<Rational> {
        match &self.ambient {
            Some(b) => {
                let m = b.first().map_or(0, Vec::len);
                (0..m).map(|i| b.iter().zip(v).map(|(col, x)| &col[i] * x).sum()).collect()
            }
            None => v.to_vec(),
        }
    }

    /// `<alpha_i, v>` for a simple root.
    pub fn pair_simple(&self, i: usize, v: &[Rational]) -> Rational {
        pair(&self.roots_i64[i], v)
    }

    /// `<beta_k, v>` for a positive root.
    pub fn pair_root(&self, k: usize, v: &[Rational]) -> Rational {
        let c = &self.system.pos[k];
        (0..self.semisimple_rank())
            .filter(|&i| c[i] != 0)
            .map(|i| rat(c[i]) * self.pair_simple(i, v))
            .sum()
    }

    /// Simple reflection on `X_*`: `v - <alpha_i, v> alpha_i^vee`.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= BigInt::from(self.coroots_i64[i][r] * self.roots_i64[i][c]);
            }
        }
        m
    }

    pub fn reflect_point(&self, i: usize, v: &TorusPoint) -> TorusPoint {
        let p = self.pair_simple(i, v.coords());
        let out: Vec<Rational> = v
            .coords()
            .iter()
            .zip(&self.coroots_i64[i])
            .map(|(x, &a)| x - &p * rat(a))
            .collect();
        TorusPoint::new(out)
    }

    pub fn center(&self) -> CenterDescription {
        let snf = smith_normal_form(&self.roots);
        let n = self.rank();
        let r = snf.rank();
        let mut finite = Vec::new();
        for i in 0..r {
            let d = snf.d[(i, i)].clone();
            if d.is_one() {
                continue;
            }
            let dr = Rational::from_integer(d.clone());
            let v: Vec<Rational> =
                snf.v.col(i).into_iter().map(|x| Rational::from_integer(x) / &dr).collect();
            finite.push((TorusPoint::new(v), d));
        }
        let torus_directions = (r..n)
            .map(|j| snf.v.col(j).into_iter().map(Rational::from_integer).collect())
            .collect();
        CenterDescription { finite, torus_directions }
    }

    /// Whether `v` is central: `<alpha_i, v>` integral for every simple root.
    pub fn is_central(&self, v: &TorusPoint) -> bool {
        (0..self.semisimple_rank()).all(|i| self.pair_simple(i, v.coords()).is_integer())
    }
}

fn pair(row: &[i64], v: &[Rational]) -> Rational {
    row.iter().zip(v).filter(|(a, _)| **a != 0).map(|(a, x)| rat(*a) * x).sum()
}

fn combine(coeffs: &[i64], rows: &[Vec<i64>], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n];
    for (c, row) in coeffs.iter().zip(rows) {
        if *c == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

/// Coordinates `w` with `sum w_j basis_j = v`, if `v` is in the span.
fn solve_in_basis(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = basis.len();
    let m = v.len();
    if basis.iter().any(|b| b.len() != m) {
        return None;
    }
    let aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let red = rref(&aug);
    let mut w = vec![rat(0); n];
    for row in &red {
        let p = row.iter().position(|x| !x.is_zero())?;
        if p == n {
            return None;
        }
        w[p] = row[n].clone();
    }
    Some(w)
}

/// A `Z`-basis (columns, as a list) of the lattice spanned by rational vectors of length `dim`.
pub fn lattice_basis(gens: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let scale = crate::exactlat::lcm_of_denominators(gens.iter().flatten());
    let sr = Rational::from_integer(scale.clone());
    let rows: Vec<Vec<BigInt>> =
        gens.iter().map(|g| g.iter().map(|x| (x * &sr).to_integer()).collect()).collect();
    let h = hermite_rows(&IntMatrix::from_big_rows(&rows, dim));
    h.into_iter()
        .map(|r| r.into_iter().map(|x| Rational::from_integer(x) / &sr).collect())
        .collect()
}

/// A diagram involution and the lattice involution `tau` it induces on `X_*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerClass {
    perm: Vec<usize>,
    tau: IntMatrix,
}

impl InnerClass {
    pub fn compact(rd: &BasedRootDatum) -> Self {
        InnerClass {
            perm: (0..rd.semisimple_rank()).collect(),
            tau: IntMatrix::identity(rd.rank()),
        }
    }

    /// `tau` permutes the simple coroots by `perm` and fixes the radical
    /// (the cocharacters orthogonal to every root).
    pub fn from_permutation(rd: &BasedRootDatum, perm: &[usize]) -> Result<Self, RootDataError> {
        let l = rd.semisimple_rank();
        let n = rd.rank();
        check_diagram_involution(rd, perm)?;
        // basis of X_* (x) Q: simple coroots, then the radical
        let mut cols: Vec<Vec<Rational>> = (0..l)
            .map(|j| rd.simple_coroot(j).iter().map(|&x| rat(x)).collect())
            .collect();
        let mut images: Vec<Vec<Rational>> = (0..l)
            .map(|j| rd.simple_coroot(perm[j]).iter().map(|&x| rat(x)).collect())
            .collect();
        for dir in rd.center().torus_directions {
            images.push(dir.clone());
            cols.push(dir);
        }
        if cols.len() != n {
            return Err(RootDataError::Dimension("coroots and radical do not span".into()));
        }
        // tau * P = Q  =>  tau = Q P^{-1}
        let p: Vec<Vec<Rational>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let q: Vec<Vec<Rational>> = (0..n).map(|i| images.iter().map(|c| c[i].clone()).collect()).collect();
        let pinv = rational_inverse(&p).map_err(|_| RootDataError::LatticeNotPreserved)?;
        let tau = integral_matrix(&crate::exactlat::rat_mat_mul(&q, &pinv))
            .ok_or(RootDataError::LatticeNotPreserved)?;
        Self::from_matrix(rd, tau)
    }

    pub fn flip(rd: &BasedRootDatum) -> Result<Self, RootDataError> {
        Self::from_permutation(rd, &rd.cartan_type().default_flip())
    }

    /// Validates an explicit `tau` and recovers its diagram permutation.
    pub fn from_matrix(rd: &BasedRootDatum, tau: IntMatrix) -> Result<Self, RootDataError> {
        let n = rd.rank();
        let l = rd.semisimple_rank();
        if tau.rows() != n || tau.cols() != n {
            return Err(RootDataError::Dimension(format!("tau must be {n}x{n}")));
        }
        if !tau.is_involution() {
            return Err(RootDataError::NotInvolution);
        }
        let mut perm = Vec::with_capacity(l);
        for j in 0..l {
            let col: Vec<BigInt> = rd.simple_coroot(j).iter().map(|&x| BigInt::from(x)).collect();
            let img = tau.apply_int(&col);
            let k = (0..l)
                .find(|&k| rd.simple_coroot(k).iter().zip(&img).all(|(a, b)| BigInt::from(*a) == *b))
                .ok_or(RootDataError::NotDiagramAutomorphism)?;
            perm.push(k);
        }
        // roots transform by the transpose: alpha_i tau = alpha_{perm i}
        let tt = tau.transpose();
        for i in 0..l {
            let row: Vec<BigInt> = rd.simple_root(i).iter().map(|&x| BigInt::from(x)).collect();
            let img = tt.apply_int(&row);
            if !rd.simple_root(perm[i]).iter().zip(&img).all(|(a, b)| BigInt::from(*a) == *b) {
                return Err(RootDataError::NotDiagramAutomorphism);
            }
        }
        check_diagram_involution(rd, &perm)?;
        Ok(InnerClass { perm, tau })
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn tau(&self) -> &IntMatrix {
        &self.tau
    }

    pub fn is_equal_rank(&self) -> bool {
        self.tau.is_identity()
    }

    pub fn is_inner_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Action on root coefficient vectors.
    pub fn permute_coefficients(&self, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0; c.len()];
        for (i, &x) in c.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        out
    }

    pub fn apply_point(&self, v: &TorusPoint) -> TorusPoint {
        v.transform(&self.tau)
    }

    /// Trace of `tau` on `X_* (x) R`.
    pub fn trace(&self) -> i64 {
        (0..self.tau.rows()).map(|i| self.tau[(i, i)].to_i64().expect("small tau")).sum()
    }

    /// Rank of the `tau`-fixed sublattice.
    pub fn fixed_rank(&self) -> usize {
        let n = self.tau.rows();
        n - self.tau.sub(&IntMatrix::identity(n)).rank()
    }
}

fn check_diagram_involution(rd: &BasedRootDatum, perm: &[usize]) -> Result<(), RootDataError> {
    let l = rd.semisimple_rank();
    if perm.len() != l || perm.iter().any(|&p| p >= l) {
        return Err(RootDataError::NotDiagramAutomorphism);
    }
    let c = rd.cartan_matrix();
    for i in 0..l {
        if perm[perm[i]] != i {
            return Err(RootDataError::NotDiagramAutomorphism);
        }
        for j in 0..l {
            if c[perm[i]][perm[j]] != c[i][j] {
                return Err(RootDataError::NotDiagramAutomorphism);
            }
        }
    }
    Ok(())
}

/// Classical groups in their standard coordinates.
pub mod classical {
    use super::*;

    fn unit(m: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; m];
        v[i] = 1;
        v
    }

    fn diff(m: usize, i: usize) -> Vec<i64> {
        let mut v = unit(m, i);
        v[i + 1] = -1;
        v
    }

    fn ints(v: &[Vec<i64>]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn std_basis(m: usize) -> Vec<Vec<Rational>> {
        ints(&(0..m).map(|i| unit(m, i)).collect::<Vec<_>>())
    }

    /// Coroot lattice spanned by the given coroots.
    fn coroot_lattice(coroots: &[Vec<i64>], m: usize) -> Vec<Vec<Rational>> {
        lattice_basis(&ints(coroots), m)
    }

    /// Coweight lattice: vectors in the span of the coroots pairing integrally with roots.
    fn coweight_lattice(roots: &[Vec<i64>], coroots: &[Vec<i64>], m: usize) -> Vec<Vec<Rational>> {
        let l = roots.len();
        let c: Vec<Vec<Rational>> = (0..l)
            .map(|i| (0..l).map(|j| rat(roots[i].iter().zip(&coroots[j]).map(|(a, b)| a * b).sum())).collect())
            .collect();
        let cinv = rational_inverse(&c).expect("Cartan matrix invertible");
        let cw: Vec<Vec<Rational>> = (0..l)
            .map(|j| {
                (0..m)
                    .map(|t| (0..l).map(|k| &cinv[k][j] * rat(coroots[k][t])).sum())
                    .collect()
            })
            .collect();
        lattice_basis(&cw, m)
    }

    pub struct Shape {
        pub cartan_type: CartanType,
        pub ambient_dim: usize,
        pub roots: Vec<Vec<i64>>,
        pub coroots: Vec<Vec<i64>>,
    }

    pub fn type_a(n: usize) -> Shape {
        let rs: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i)).collect();
        Shape {
            cartan_type: if n == 1 {
                CartanType::default()
            } else {
                CartanType::simple(Series::A, n - 1).expect("n >= 2")
            },
            ambient_dim: n,
            coroots: rs.clone(),
            roots: rs,
        }
    }

    /// Sp(2m): roots `e_i - e_{i+1}`, `2 e_m`.
    pub fn type_c(m: usize) -> Shape {
        let mut roots: Vec<Vec<i64>> = (0..m - 1).map(|i| diff(m, i)).collect();
        let mut coroots = roots.clone();
        let mut long = unit(m, m - 1);
        coroots.push(long.clone());
        long[m - 1] = 2;
        roots.push(long);
        let series = if m == 1 { Series::A } else { Series::C };
        Shape { cartan_type: CartanType::simple(series, m).expect("m >= 1"), ambient_dim: m, roots, coroots }
    }

    /// SO(2m+1): roots `e_i - e_{i+1}`, `e_m`.
    pub fn type_b(m: usize) -> Shape {
        let mut roots: Vec<Vec<i64>> = (0..m - 1).map(|i| diff(m, i)).collect();
        let mut coroots = roots.clone();
        let short = unit(m, m - 1);
        roots.push(short.clone());
        let mut co = short;
        co[m - 1] = 2;
        coroots.push(co);
        Shape { cartan_type: CartanType::simple(Series::B, m).expect("m >= 1"), ambient_dim: m, roots, coroots }
    }

    /// SO(2m): roots `e_i - e_{i+1}`, `e_{m-1} + e_m`. For `m = 2` this is `A1xA1`.
    pub fn type_d(m: usize) -> Shape {
        let mut roots: Vec<Vec<i64>> = (0..m - 1).map(|i| diff(m, i)).collect();
        let mut last = vec![0; m];
        last[m - 2] = 1;
        last[m - 1] = 1;
        roots.push(last);
        let cartan_type = if m == 2 {
            "A1xA1".parse().expect("valid type")
        } else {
            CartanType::simple(Series::D, m).expect("m >= 3")
        };
        Shape { cartan_type, ambient_dim: m, coroots: roots.clone(), roots }
    }

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum Lattice {
        /// Coroot lattice.
        SimplyConnected,
        /// All of `Z^m`.
        Standard,
        /// Coweight lattice.
        Adjoint,
    }

    pub fn build(shape: &Shape, lattice: Lattice) -> BasedRootDatum {
        let m = shape.ambient_dim;
        let basis = match lattice {
            Lattice::SimplyConnected => coroot_lattice(&shape.coroots, m),
            Lattice::Standard => std_basis(m),
            Lattice::Adjoint => coweight_lattice(&shape.roots, &shape.coroots, m),
        };
        BasedRootDatum::from_ambient(&shape.cartan_type, &shape.roots, &shape.coroots, &basis)
            .expect("classical datum is consistent")
    }

    pub fn sl(n: usize) -> BasedRootDatum {
        build(&type_a(n), Lattice::SimplyConnected)
    }

    pub fn psl(n: usize) -> BasedRootDatum {
        build(&type_a(n), Lattice::Adjoint)
    }

    pub fn gl(n: usize) -> BasedRootDatum {
        build(&type_a(n), Lattice::Standard)
    }

    pub fn sp(m: usize) -> BasedRootDatum {
        build(&type_c(m), Lattice::SimplyConnected)
    }

    pub fn psp(m: usize) -> BasedRootDatum {
        build(&type_c(m), Lattice::Adjoint)
    }

    pub fn so_odd(m: usize) -> BasedRootDatum {
        build(&type_b(m), Lattice::Standard)
    }

    pub fn spin_odd(m: usize) -> BasedRootDatum {
        build(&type_b(m), Lattice::SimplyConnected)
    }

    pub fn so_even(m: usize) -> BasedRootDatum {
        build(&type_d(m), Lattice::Standard)
    }

    pub fn spin_even(m: usize) -> BasedRootDatum {
        build(&type_d(m), Lattice::SimplyConnected)
    }

    pub fn pso_even(m: usize) -> BasedRootDatum {
        build(&type_d(m), Lattice::Adjoint)
    }

    /// The involution `e_i -> -e_{n+1-i}` of `Z^n`, the split inner class of `GL(n)`.
    pub fn gl_split_tau(n: usize) -> IntMatrix {
        let mut t = IntMatrix::zeros(n, n);
        for i in 0..n {
            t[(n - 1 - i, i)] = BigInt::from(-1);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::frac;
    use num_traits::Signed;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_types() {
        assert_eq!(ty("A5A1").to_string(), "A5xA1");
        assert_eq!(ty("a1 x b2").rank(), 3);
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D1".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
    }

    #[test]
    fn classification_round_trip() {
        for s in ["A1", "A5", "B2", "B4", "C3", "C5", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let t = ty(s);
            let c = t.cartan_matrix().to_i64_rows().unwrap();
            assert_eq!(classify_cartan(&c).unwrap(), t, "{s}");
        }
        let c = ty("A1xC2xD3xE7").cartan_matrix().to_i64_rows().unwrap();
        assert_eq!(classify_cartan(&c).unwrap().compact_name(), "E7A3B2A1");
        // relabelled B3 (short root first) is still B3
        let c = vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]];
        assert_eq!(classify_cartan(&c).unwrap(), ty("B3"));
        let c = vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(classify_cartan(&c).unwrap(), ty("C3"));
        assert!(classify_cartan(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).is_err());
        assert_eq!(classify_cartan(&[]).unwrap().rank(), 0);
    }

    #[test]
    fn cartan_conventions() {
        // <alpha_1, alpha_2^vee> = -1 and <alpha_2, alpha_1^vee> = -2 for B2 (alpha_2 short)
        let b2 = SimpleType::new(Series::B, 2).unwrap().cartan_matrix();
        assert_eq!(b2, vec![vec![2, -2], vec![-1, 2]]);
        let g2 = SimpleType::new(Series::G, 2).unwrap().cartan_matrix();
        assert_eq!(g2, vec![vec![2, -1], vec![-3, 2]]);
        let c3 = SimpleType::new(Series::C, 3).unwrap().cartan_matrix();
        assert_eq!(c3[1][2], -1);
        assert_eq!(c3[2][1], -2);
        let f4 = SimpleType::new(Series::F, 4).unwrap().cartan_matrix();
        assert_eq!((f4[1][2], f4[2][1]), (-2, -1));
        let e6 = SimpleType::new(Series::E, 6).unwrap().cartan_matrix();
        assert_eq!(e6[1][3], -1);
        assert_eq!(e6[1][2], 0);
    }

    #[test]
    fn positive_root_counts() {
        for (s, n) in [
            ("A4", 10),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D3", 6),
            ("D2", 2),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
            ("A1xA2", 4),
        ] {
            let rd = BasedRootDatum::simply_connected(&ty(s));
            assert_eq!(rd.root_system().num_positive(), n, "{s}");
        }
        assert_eq!(BasedRootDatum::simply_connected(&ty("E8")).dimension(), 248);
    }

    #[test]
    fn coroots_pair_to_two() {
        for s in ["B3", "C3", "F4", "G2", "E6"] {
            let rd = BasedRootDatum::simply_connected(&ty(s));
            let rs = rd.root_system();
            for k in 0..rs.num_positive() {
                assert_eq!(rs.pairing(k, k), 2, "{s}");
                let a = rd.root_vector(k);
                let b = rd.coroot_vector(k);
                assert_eq!(a.iter().zip(&b).map(|(x, y)| x * y).sum::<i64>(), 2);
            }
        }
    }

    #[test]
    fn a1_sc() {
        let rd = BasedRootDatum::simply_connected(&ty("A1"));
        assert_eq!(rd.simple_root(0), &[2]);
        assert_eq!(rd.simple_coroot(0), &[1]);
        let z = rd.center();
        assert_eq!(z.finite_order(), BigInt::from(2));
        assert_eq!(z.finite[0].0, TorusPoint::from_fractions(&[(1, 2)]));
        assert_eq!(z.torus_rank(), 0);
    }

    #[test]
    fn centers() {
        let order = |s: &str| BasedRootDatum::simply_connected(&ty(s)).center().finite_order();
        assert_eq!(order("E8"), BigInt::from(1));
        assert_eq!(order("E6"), BigInt::from(3));
        assert_eq!(order("E7"), BigInt::from(2));
        assert_eq!(order("A4"), BigInt::from(5));
        let d4 = BasedRootDatum::simply_connected(&ty("D4")).center();
        assert_eq!(d4.finite.iter().map(|(_, d)| d.clone()).collect::<Vec<_>>(), vec![BigInt::from(2); 2]);
        assert!(BasedRootDatum::adjoint(&ty("A1")).center().finite.is_empty());
        assert!(BasedRootDatum::adjoint(&ty("E7")).center().finite.is_empty());
    }

    #[test]
    fn sc_center_order_is_cartan_determinant() {
        for s in ["A1", "A5", "B4", "C3", "D5", "D6", "E6", "E7", "F4", "G2"] {
            let t = ty(s);
            let rd = BasedRootDatum::simply_connected(&t);
            assert_eq!(rd.center().finite_order(), t.cartan_matrix().determinant().abs(), "{s}");
        }
    }

    #[test]
    fn center_generators_are_central() {
        for rd in [
            BasedRootDatum::simply_connected(&ty("D4")),
            BasedRootDatum::simply_connected(&ty("E7")),
            classical::gl(3),
            classical::spin_even(4),
        ] {
            for (z, _) in rd.center().finite {
                assert!(rd.is_central(&z));
                for i in 0..rd.semisimple_rank() {
                    assert_eq!(rd.reflect_point(i, &z), z);
                }
            }
        }
    }

    #[test]
    fn inner_classes() {
        let a1 = BasedRootDatum::simply_connected(&ty("A1"));
        let ic = InnerClass::compact(&a1);
        assert!(ic.is_equal_rank());
        let a2 = BasedRootDatum::simply_connected(&ty("A2"));
        let ic = InnerClass::flip(&a2).unwrap();
        assert_eq!(ic.tau(), &IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert!(!ic.is_equal_rank());
        assert!(InnerClass::from_permutation(&a2, &[0, 0]).is_err());
        let b2 = BasedRootDatum::simply_connected(&ty("B2"));
        assert_eq!(
            InnerClass::from_permutation(&b2, &[1, 0]),
            Err(RootDataError::NotDiagramAutomorphism)
        );
    }

    #[test]
    fn d4_swap_fixes_half_the_center() {
        let rd = BasedRootDatum::simply_connected(&ty("D4"));
        let ic = InnerClass::from_permutation(&rd, &[0, 1, 3, 2]).unwrap();
        let z = rd.center();
        let (a, b) = (&z.finite[0].0, &z.finite[1].0);
        let elems = [TorusPoint::zero(4), a.clone(), b.clone(), a.add(b)];
        let fixed = elems.iter().filter(|p| ic.apply_point(p) == **p).count();
        assert_eq!(fixed, 2);
    }

    #[test]
    fn tau_is_root_datum_automorphism() {
        for (s, flip) in [("A3", true), ("D5", true), ("E6", true), ("A1xA1", false)] {
            let rd = BasedRootDatum::simply_connected(&ty(s));
            let ic = if flip {
                InnerClass::flip(&rd).unwrap()
            } else {
                InnerClass::from_permutation(&rd, &[1, 0]).unwrap()
            };
            let rs = rd.root_system();
            for k in 0..rs.num_positive() {
                let img = ic.permute_coefficients(&rs.positive()[k]);
                let j = rs.find(&img).expect("tau maps positive roots to positive roots");
                // <tau* a, tau a^vee> = <a, a^vee>
                assert_eq!(rs.pairing(j, j), rs.pairing(k, k));
                let tv = ic.tau().apply_int(
                    &rd.coroot_vector(k).iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
                );
                let expect: Vec<BigInt> = rd.coroot_vector(j).iter().map(|&x| BigInt::from(x)).collect();
                assert_eq!(tv, expect);
            }
        }
    }

    #[test]
    fn adjoint_flip_preserves_lattice() {
        let rd = BasedRootDatum::adjoint(&ty("E6"));
        assert!(InnerClass::flip(&rd).is_ok());
        let rd = BasedRootDatum::adjoint(&ty("D4"));
        assert!(InnerClass::from_permutation(&rd, &[0, 1, 3, 2]).is_ok());
    }

    #[test]
    fn sublattice_between_sc_and_ad() {
        // SO(8): enlarge the D4 coroot lattice by the vector coweight
        let so8 = BasedRootDatum::from_coweight_generators(&ty("D4"), &[vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(so8.center().finite_order(), BigInt::from(2));
        let full = BasedRootDatum::from_coweight_generators(&ty("A2"), &[vec![1, 0]]).unwrap();
        assert!(full.center().finite.is_empty());
        // spinor-type lattice in D4 is not preserved by the swap of nodes 3,4
        let half = BasedRootDatum::from_coweight_generators(&ty("D4"), &[vec![0, 0, 1, 0]]).unwrap();
        assert_eq!(
            InnerClass::from_permutation(&half, &[0, 1, 3, 2]),
            Err(RootDataError::LatticeNotPreserved)
        );
    }

    #[test]
    fn classical_presets() {
        let sl3 = classical::sl(3);
        assert_eq!(sl3.rank(), 2);
        assert_eq!(sl3.center().finite_order(), BigInt::from(3));
        let gl3 = classical::gl(3);
        assert_eq!(gl3.center().torus_rank(), 1);
        assert!(gl3.center().finite.is_empty());
        let split = InnerClass::from_matrix(&gl3, classical::gl_split_tau(3)).unwrap();
        assert_eq!(split.permutation(), &[1, 0]);
        assert_eq!(classical::sp(3).center().finite_order(), BigInt::from(2));
        assert_eq!(classical::so_odd(3).center().finite_order(), BigInt::from(1));
        assert_eq!(classical::spin_odd(3).center().finite_order(), BigInt::from(2));
        assert_eq!(classical::spin_even(4).center().finite_order(), BigInt::from(4));
        assert_eq!(classical::so_even(4).center().finite_order(), BigInt::from(2));
        assert_eq!(classical::pso_even(4).center().finite_order(), BigInt::from(1));
        assert_eq!(classical::psp(2).center().finite_order(), BigInt::from(1));
        assert_eq!(classical::spin_even(2).cartan_type().to_string(), "A1xA1");
        let v = classical::so_even(3)
            .from_ambient_vector(&[frac(1, 2), frac(1, 2), rat(0)])
            .unwrap();
        assert_eq!(v, vec![frac(1, 2), frac(1, 2), rat(0)]);
        let spin = classical::spin_even(3);
        let w = spin.from_ambient_vector(&[rat(1), rat(1), rat(0)]).unwrap();
        assert_eq!(spin.to_ambient_vector(&w), vec![rat(1), rat(1), rat(0)]);
    }
}
