//! Cartan data of the finite simple Lie algebras: Cartan matrices, the
//! invariant form, positive roots, the highest root, and the Weyl group.
//!
//! Conventions: `a_ij = <alpha_i, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`,
//! so the simple root `alpha_i` written in fundamental-weight coordinates is
//! the i-th *row* of the Cartan matrix. Long roots have squared length 2.
//! Node numbering follows Bourbaki.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, ratio, Rational, RationalMatrix};
use crate::weight::Weight;

pub const DEFAULT_MAX_WEYL_ORDER: u64 = 2_000_000;

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
    fn letter(self) -> char {
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
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    series: Series,
    rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::UnsupportedType(format!("{}{}", series.letter(), rank)))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group from the closed formulas.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Gram matrix `(alpha_i, alpha_j)` of the simple roots.
    fn simple_root_gram(&self) -> RationalMatrix {
        let n = self.rank;
        let mut b = RationalMatrix::zeros(n, n);
        let link = |b: &mut RationalMatrix, i: usize, j: usize, v: Rational| {
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..n {
                    b[(i, i)] = rat(2);
                }
                for i in 0..n - 1 {
                    link(&mut b, i, i + 1, rat(-1));
                }
            }
            Series::B => {
                for i in 0..n {
                    b[(i, i)] = rat(2);
                }
                b[(n - 1, n - 1)] = rat(1);
                for i in 0..n - 1 {
                    link(&mut b, i, i + 1, rat(-1));
                }
            }
            Series::C => {
                for i in 0..n {
                    b[(i, i)] = rat(1);
                }
                b[(n - 1, n - 1)] = rat(2);
                for i in 0..n - 2 {
                    link(&mut b, i, i + 1, ratio(-1, 2));
                }
                link(&mut b, n - 2, n - 1, rat(-1));
            }
            Series::D => {
                for i in 0..n {
                    b[(i, i)] = rat(2);
                }
                for i in 0..n - 2 {
                    link(&mut b, i, i + 1, rat(-1));
                }
                link(&mut b, n - 3, n - 1, rat(-1));
            }
            Series::E => {
                for i in 0..n {
                    b[(i, i)] = rat(2);
                }
                link(&mut b, 0, 2, rat(-1));
                link(&mut b, 1, 3, rat(-1));
                for i in 2..n - 1 {
                    link(&mut b, i, i + 1, rat(-1));
                }
            }
            Series::F => {
                b[(0, 0)] = rat(2);
                b[(1, 1)] = rat(2);
                b[(2, 2)] = rat(1);
                b[(3, 3)] = rat(1);
                link(&mut b, 0, 1, rat(-1));
                link(&mut b, 1, 2, rat(-1));
                link(&mut b, 2, 3, ratio(-1, 2));
            }
            Series::G => {
                b[(0, 0)] = ratio(2, 3);
                b[(1, 1)] = rat(2);
                link(&mut b, 0, 1, rat(-1));
            }
        }
        b
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse { what: "Cartan type", input: s.to_string() };
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(err()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let rank = digits.parse::<usize>().map_err(|_| err())?;
        CartanType::new(series, rank)
    }
}

/// An element of the Weyl group, stored as its integer action matrix on
/// fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    length: usize,
}

impl WeylElement {
    fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement { rank, matrix, length: 0 }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let x = w.coords();
        Weight::new(
            (0..self.rank)
                .map(|r| (0..self.rank).map(|c| self.matrix[r * self.rank + c] * x[c]).sum())
                .collect(),
        )
    }

    /// `(-1)^length`
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Matrix of `self ∘ other`.
    pub fn compose_matrix(&self, other: &WeylElement) -> Vec<i64> {
        let n = self.rank;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.matrix[k * n + j];
                }
            }
        }
        out
    }
}

/// A positive root, in both simple-root and fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub simple_coords: Vec<i64>,
    pub weight: Weight,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan_matrix: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    root_lengths: Vec<Rational>,
    sym_form: RationalMatrix,
    // Solves Σ c_k alpha_k = x for c, given x in fundamental coordinates.
    to_simple_coords: RationalMatrix,
    positive_roots: Vec<PositiveRoot>,
    theta: Weight,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    rho: Weight,
    dual_coxeter: i64,
    w0_word: Vec<usize>,
    dual_permutation: Vec<usize>,
    weyl_order: u64,
    weyl: OnceLock<Vec<WeylElement>>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        Self::with_weyl_cap(t, DEFAULT_MAX_WEYL_ORDER)
    }

    pub fn with_weyl_cap(t: CartanType, max_weyl_order: u64) -> Result<Self> {
        let order = t.weyl_order();
        if order > max_weyl_order as u128 {
            return Err(Error::CapExceeded {
                what: "Weyl group order",
                actual: u64::try_from(order).unwrap_or(u64::MAX),
                cap: max_weyl_order,
            });
        }
        let n = t.rank();
        let b = t.simple_root_gram();
        let root_lengths: Vec<Rational> = (0..n).map(|i| b[(i, i)].clone()).collect();

        let mut cartan_matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = rat(2) * &b[(i, j)] / &b[(j, j)];
                debug_assert!(a.is_integer());
                cartan_matrix[i][j] = i64::try_from(a.to_integer()).expect("small Cartan entry");
            }
        }
        let a = RationalMatrix::from_i64_rows(&cartan_matrix);
        let a_inv = a.inverse().ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        let sym_form = a_inv.matmul(&b).matmul(&a_inv.transpose());
        let to_simple_coords = a_inv.transpose();

        let simple_roots: Vec<Weight> = cartan_matrix.iter().map(|row| Weight::new(row.clone())).collect();
        let positive_roots = enumerate_positive_roots(&cartan_matrix, &simple_roots);

        let top = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("at least one positive root");
        let theta = top.weight.clone();
        let marks = top.simple_coords.clone();
        let comarks: Vec<i64> = marks
            .iter()
            .zip(&root_lengths)
            .map(|(&m, len)| {
                let c = rat(m) * len / rat(2);
                i64::try_from(c.to_integer()).expect("integral comark")
            })
            .collect();
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();
        let rho = Weight::rho(n);

        let mut rs = RootSystem {
            cartan_type: t,
            cartan_matrix,
            simple_roots,
            root_lengths,
            sym_form,
            to_simple_coords,
            positive_roots,
            theta,
            marks,
            comarks,
            rho,
            dual_coxeter,
            w0_word: Vec::new(),
            dual_permutation: Vec::new(),
            weyl_order: order as u64,
            weyl: OnceLock::new(),
        };

        let mut x = -&rs.rho;
        let mut word = Vec::new();
        while let Some(i) = (0..n).find(|&i| x[i] < 0) {
            x = rs.reflect_unchecked(i, &x);
            word.push(i);
        }
        rs.w0_word = word;
        let mut perm = vec![0; n];
        for (i, slot) in perm.iter_mut().enumerate() {
            let image = rs.apply_word(&rs.w0_word, &rs.simple_roots[i]);
            let neg = -&image;
            *slot = rs
                .simple_roots
                .iter()
                .position(|a| *a == neg)
                .ok_or_else(|| Error::Internal(format!("w0 does not permute simple roots of {t}")))?;
        }
        rs.dual_permutation = perm;
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// `(alpha_i, alpha_i)`
    pub fn root_length(&self, i: usize) -> &Rational {
        &self.root_lengths[i]
    }

    /// Gram matrix `(lambda_i, lambda_j)` of the fundamental weights.
    pub fn sym_form(&self) -> &RationalMatrix {
        &self.sym_form
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    pub fn dual_permutation(&self) -> &[usize] {
        &self.dual_permutation
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { weight: w.clone(), expected: self.rank(), got: w.rank() })
        }
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.clone()))
        }
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: j, rank: self.rank() })
        }
    }

    /// `<lambda, alpha_j> = (lambda, alpha_j^vee)`, which in this basis is a
    /// coordinate read.
    pub fn pairing(&self, lambda: &Weight, j: usize) -> Result<i64> {
        self.check_index(j)?;
        self.check_rank(lambda)?;
        Ok(lambda[j])
    }

    /// `<lambda, theta> = Σ n_i comark_i`; equals `(lambda, theta)` since
    /// `(theta, theta) = 2`.
    pub fn theta_pairing(&self, lambda: &Weight) -> i64 {
        lambda.coords().iter().zip(&self.comarks).map(|(n, c)| n * c).sum()
    }

    pub fn form(&self, lambda: &Weight, mu: &Weight) -> Rational {
        let s = &self.sym_form;
        let mut acc = Rational::zero();
        for (i, &x) in lambda.coords().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in mu.coords().iter().enumerate() {
                if y != 0 {
                    acc += &s[(i, j)] * rat(x * y);
                }
            }
        }
        acc
    }

    /// Coordinates of `x` in the basis of simple roots (rational in general).
    pub fn simple_coords(&self, x: &Weight) -> Vec<Rational> {
        let v: Vec<Rational> = x.coords().iter().map(|&c| rat(c)).collect();
        self.to_simple_coords.mul_vec(&v)
    }

    /// Height `Σ c_k` of `x = Σ c_k alpha_k` when `x` lies in the root lattice.
    pub fn height(&self, x: &Weight) -> Option<i64> {
        let c = self.simple_coords(x);
        if c.iter().all(|q| q.is_integer()) {
            Some(c.iter().map(|q| i64::try_from(q.to_integer()).unwrap_or(i64::MAX)).sum())
        } else {
            None
        }
    }

    /// `nu <= lambda` in the dominance order.
    pub fn dominated_by(&self, nu: &Weight, lambda: &Weight) -> bool {
        self.simple_coords(&(lambda - nu))
            .iter()
            .all(|q| q.is_integer() && *q >= Rational::zero())
    }

    pub fn reflect(&self, i: usize, lambda: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_rank(lambda)?;
        Ok(self.reflect_unchecked(i, lambda))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, lambda: &Weight) -> Weight {
        lambda.add_scaled(-lambda[i], &self.simple_roots[i])
    }

    /// Applies `r_{word[0]}` first.
    pub fn apply_word(&self, word: &[usize], lambda: &Weight) -> Weight {
        word.iter().fold(lambda.clone(), |x, &i| self.reflect_unchecked(i, &x))
    }

    /// The full Weyl group, materialized on first use by breadth-first
    /// generation from the simple reflections. The identity comes first and
    /// elements are ordered by length.
    pub fn weyl_elements(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| generate_weyl_group(self))
    }

    /// `lambda* = -w0(lambda)`
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        let mut out = vec![0; self.rank()];
        for (i, &c) in lambda.coords().iter().enumerate() {
            out[self.dual_permutation[i]] = c;
        }
        Weight::new(out)
    }

    /// Folds `mu + rho` into the dominant chamber. Returns
    /// `(w(mu + rho) - rho, sign(w))`, or sign 0 when `mu + rho` lies on a wall.
    pub fn make_dominant(&self, mu: &Weight) -> (Weight, i64) {
        let mut x = mu + &self.rho;
        let mut sign = 1;
        while let Some(i) = (0..self.rank()).find(|&i| x[i] < 0) {
            x = self.reflect_unchecked(i, &x);
            sign = -sign;
        }
        if x.coords().contains(&0) {
            sign = 0;
        }
        (&x - &self.rho, sign)
    }

    /// The unique dominant weight in the Weyl orbit of `lambda`.
    pub fn dominant_conjugate(&self, lambda: &Weight) -> Weight {
        let mut x = lambda.clone();
        while let Some(i) = (0..self.rank()).find(|&i| x[i] < 0) {
            x = self.reflect_unchecked(i, &x);
        }
        x
    }

    /// Weyl orbit of `lambda`, sorted.
    pub fn orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                if x[i] == 0 {
                    continue;
                }
                let y = self.reflect_unchecked(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Weyl dimension formula `Π_{alpha>0} (lambda+rho, alpha) / (rho, alpha)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> BigInt {
        let shifted = lambda + &self.rho;
        let mut num = Rational::one();
        let mut den = Rational::one();
        for root in &self.positive_roots {
            num *= self.form_with_root(&shifted, root);
            den *= self.form_with_root(&self.rho, root);
        }
        (num / den).to_integer()
    }

    /// `(x, alpha)` via `(lambda_i, alpha_k) = δ_ik (alpha_k, alpha_k) / 2`.
    pub(crate) fn form_with_root(&self, x: &Weight, root: &PositiveRoot) -> Rational {
        let mut acc = Rational::zero();
        for (k, &c) in root.simple_coords.iter().enumerate() {
            if c != 0 && x[k] != 0 {
                acc += rat(c * x[k]) * &self.root_lengths[k];
            }
        }
        acc / rat(2)
    }
}

/// Positive roots by height, growing each root along simple-root strings:
/// for a positive root `beta != alpha_i` with `beta - p alpha_i` the bottom of
/// its alpha_i-string, `beta + alpha_i` is a root iff `p - <beta, alpha_i> > 0`.
fn enumerate_positive_roots(cartan: &[Vec<i64>], simple: &[Weight]) -> Vec<PositiveRoot> {
    let n = cartan.len();
    let mut known: HashMap<Vec<i64>, Weight> = HashMap::new();
    let mut layer: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        known.insert(c.clone(), simple[i].clone());
        layer.push(c);
    }
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            let weight = known[beta].clone();
            out.push(PositiveRoot { simple_coords: beta.clone(), weight: weight.clone() });
            for i in 0..n {
                if beta.iter().sum::<i64>() == 1 && beta[i] == 1 {
                    continue;
                }
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - weight[i];
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), weight.add_scaled(1, &simple[i]));
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    out
}

fn generate_weyl_group(rs: &RootSystem) -> Vec<WeylElement> {
    let n = rs.rank();
    let generators: Vec<WeylElement> = (0..n)
        .map(|i| {
            let mut m = vec![0; n * n];
            for r in 0..n {
                m[r * n + r] = 1;
                m[r * n + i] -= rs.simple_roots[i][r];
            }
            WeylElement { rank: n, matrix: m, length: 1 }
        })
        .collect();
    let identity = WeylElement::identity(n);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(identity.matrix.clone());
    let mut elements = vec![identity];
    let mut frontier = 0;
    while frontier < elements.len() {
        let end = elements.len();
        for idx in frontier..end {
            for g in &generators {
                let m = g.compose_matrix(&elements[idx]);
                if seen.insert(m.clone()) {
                    let length = elements[idx].length + 1;
                    elements.push(WeylElement { rank: n, matrix: m, length });
                }
            }
        }
        frontier = end;
    }
    elements
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    /// Independent route to the positive roots: the Weyl orbits of the simple
    /// roots, keeping those with nonnegative simple coordinates.
    fn roots_by_orbit(rs: &RootSystem) -> HashSet<Weight> {
        let mut out = HashSet::new();
        for a in rs.simple_roots() {
            for w in rs.weyl_elements() {
                let r = w.apply(a);
                if rs.simple_coords(&r).iter().all(|q| *q >= Rational::zero()) {
                    out.insert(r);
                }
            }
        }
        out
    }

    const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"];

    #[test]
    fn parse_cartan_types() {
        assert_eq!("A2".parse::<CartanType>().unwrap().rank(), 2);
        assert_eq!("g2".parse::<CartanType>().unwrap().to_string(), "G2");
        for bad in ["Z9", "", "A", "A0", "B1", "D2", "E5", "E9", "F3", "G3", "A-1", "A2x"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn weyl_cap_rejects_large_groups() {
        let e8: CartanType = "E8".parse().unwrap();
        assert!(matches!(RootSystem::new(e8), Err(Error::CapExceeded { .. })));
        let e7: CartanType = "E7".parse().unwrap();
        assert!(RootSystem::new(e7).is_err());
        let a3: CartanType = "A3".parse().unwrap();
        assert!(RootSystem::with_weyl_cap(a3, 23).is_err());
        assert!(RootSystem::with_weyl_cap(a3, 24).is_ok());
    }

    #[test]
    fn a1_data() {
        let r = rs("A1");
        assert_eq!(r.cartan_matrix(), &[vec![2]]);
        assert_eq!(r.theta(), &Weight::new(vec![2]));
        assert_eq!(r.theta(), r.simple_root(0));
        assert_eq!(r.dual_coxeter(), 2);
    }

    #[test]
    fn a2_theta_and_dual_coxeter() {
        let r = rs("A2");
        assert_eq!(r.theta(), &Weight::new(vec![1, 1]));
        assert_eq!(r.dual_coxeter(), 3);
        assert_eq!(r.pairing(r.theta(), 0).unwrap(), 1);
        assert_eq!(r.form(r.rho(), r.rho()), rat(2));
    }

    #[test]
    fn g2_dual_coxeter() {
        let r = rs("G2");
        assert_eq!(r.dual_coxeter(), 4);
        assert_eq!(r.theta_pairing(r.rho()), 3);
        assert_eq!(r.marks(), &[3, 2]);
        assert_eq!(r.comarks(), &[1, 2]);
    }

    #[test]
    fn known_dual_coxeter_numbers() {
        for (t, h) in [("A3", 4), ("B2", 3), ("B3", 5), ("C3", 4), ("D4", 6), ("F4", 9), ("E6", 12)] {
            assert_eq!(rs(t).dual_coxeter(), h, "{t}");
        }
    }

    #[test]
    fn positive_roots_match_orbit_oracle() {
        for t in TYPES {
            let r = rs(t);
            let ours: HashSet<Weight> = r.positive_roots().iter().map(|p| p.weight.clone()).collect();
            assert_eq!(ours, roots_by_orbit(&r), "{t}");
            let theta_h = r.positive_roots().iter().map(|p| p.height()).max().unwrap();
            assert_eq!(r.positive_roots().iter().filter(|p| p.height() == theta_h).count(), 1);
            // theta dominates every positive root
            for p in r.positive_roots() {
                assert!(r.dominated_by(&p.weight, r.theta()), "{t}");
            }
        }
    }

    #[test]
    fn structural_invariants() {
        for t in TYPES {
            let r = rs(t);
            let n = r.rank();
            for i in 0..n {
                assert_eq!(r.cartan_matrix()[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(r.cartan_matrix()[i][j] <= 0);
                        assert_eq!(r.cartan_matrix()[i][j] == 0, r.cartan_matrix()[j][i] == 0);
                    }
                    // alpha_i is row i
                    assert_eq!(r.simple_root(i)[j], r.cartan_matrix()[i][j]);
                    // (alpha_i, alpha_j^vee) = a_ij
                    let coroot = rat(2) / r.root_length(j);
                    assert_eq!(r.form(r.simple_root(i), r.simple_root(j)) * coroot, rat(r.cartan_matrix()[i][j]));
                    // (lambda_i, alpha_j^vee) = δ_ij
                    let li = Weight::fundamental(n, i);
                    let d = r.form(&li, r.simple_root(j)) * rat(2) / r.root_length(j);
                    assert_eq!(d, rat(i64::from(i == j)));
                }
                assert_eq!(rat(r.comarks()[i]), rat(r.marks()[i]) * r.root_length(i) / rat(2));
            }
            assert_eq!(r.form(r.theta(), r.theta()), rat(2), "{t}");
            assert_eq!(rat(r.theta_pairing(r.rho())), r.form(r.rho(), r.theta()));
            assert!(r.sym_form().is_symmetric());
        }
    }

    #[test]
    fn weyl_group_orders_and_closure() {
        for (t, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48)] {
            let r = rs(t);
            let els = r.weyl_elements();
            assert_eq!(els.len(), order, "{t}");
            assert_eq!(els.iter().filter(|w| w.is_identity()).count(), 1);
            let mats: HashSet<&[i64]> = els.iter().map(|w| w.matrix()).collect();
            let sign_of: HashMap<&[i64], i64> = els.iter().map(|w| (w.matrix(), w.sign())).collect();
            for a in els.iter().take(12) {
                for b in els {
                    let c = a.compose_matrix(b);
                    assert!(mats.contains(c.as_slice()));
                    assert_eq!(sign_of[c.as_slice()], a.sign() * b.sign());
                }
            }
        }
    }

    #[test]
    fn weyl_elements_are_isometries_permuting_roots() {
        for t in ["A2", "B2", "G2", "A3"] {
            let r = rs(t);
            let mut roots: HashSet<Weight> = r.positive_roots().iter().map(|p| p.weight.clone()).collect();
            roots.extend(r.positive_roots().iter().map(|p| -&p.weight));
            let probe = [Weight::rho(r.rank()), r.theta().clone(), Weight::fundamental(r.rank(), 0)];
            for w in r.weyl_elements() {
                for x in &probe {
                    for y in &probe {
                        assert_eq!(r.form(&w.apply(x), &w.apply(y)), r.form(x, y));
                    }
                }
                let image: HashSet<Weight> = roots.iter().map(|a| w.apply(a)).collect();
                assert_eq!(image, roots);
            }
        }
    }

    #[test]
    fn reflections() {
        let r = rs("A2");
        let rho = r.rho().clone();
        for i in 0..2 {
            assert_eq!(r.reflect(i, &rho).unwrap(), &rho - r.simple_root(i));
        }
        let l = Weight::new(vec![0, 3]);
        assert_eq!(r.reflect(0, &l).unwrap(), l);
        assert!(r.reflect(2, &l).is_err());
        let a1 = rs("A1");
        for m in 0..6 {
            assert_eq!(a1.reflect(0, &Weight::new(vec![m])).unwrap(), Weight::new(vec![-m]));
        }
    }

    #[test]
    fn w0_and_duality() {
        let a2 = rs("A2");
        assert_eq!(a2.dual_weight(&Weight::new(vec![1, 0])), Weight::new(vec![0, 1]));
        assert_eq!(a2.dual_weight(a2.theta()), a2.theta().clone());
        let a1 = rs("A1");
        assert_eq!(a1.dual_weight(&Weight::new(vec![5])), Weight::new(vec![5]));
        for t in TYPES {
            let r = rs(t);
            let w0_len = r.positive_roots().len();
            assert_eq!(r.w0_word().len(), w0_len, "{t}: w0 is a reduced word of maximal length");
            assert_eq!(r.apply_word(r.w0_word(), r.rho()), -r.rho());
            for i in 0..r.rank() {
                let image = r.apply_word(r.w0_word(), r.simple_root(i));
                assert_eq!(image, -r.simple_root(r.dual_permutation()[i]));
            }
            assert_eq!(r.dual_weight(r.theta()), r.theta().clone());
        }
        // D4 and B/C/G are self-dual; A3 swaps the ends; E6 swaps 1<->6, 3<->5.
        assert_eq!(rs("A3").dual_permutation(), &[2, 1, 0]);
        assert_eq!(rs("E6").dual_permutation(), &[5, 1, 4, 3, 2, 0]);
        assert_eq!(rs("D4").dual_permutation(), &[0, 1, 2, 3]);
        assert_eq!(rs("D5").dual_permutation(), &[0, 1, 2, 4, 3]);
    }

    #[test]
    fn make_dominant_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.make_dominant(&Weight::new(vec![3])), (Weight::new(vec![3]), 1));
        assert_eq!(a1.make_dominant(&Weight::new(vec![-1])).1, 0);
        assert_eq!(a1.make_dominant(&Weight::new(vec![-2])), (Weight::new(vec![0]), -1));
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = rs("A2");
        assert_eq!(a2.weyl_dimension(&Weight::new(vec![1, 1])), BigInt::from(8));
        assert_eq!(a2.weyl_dimension(&Weight::new(vec![2, 0])), BigInt::from(6));
        assert_eq!(rs("G2").weyl_dimension(&Weight::new(vec![1, 0])), BigInt::from(7));
        assert_eq!(rs("G2").weyl_dimension(&Weight::new(vec![0, 1])), BigInt::from(14));
        assert_eq!(rs("B2").weyl_dimension(&Weight::new(vec![0, 1])), BigInt::from(4));
        assert_eq!(rs("B2").weyl_dimension(&Weight::new(vec![1, 0])), BigInt::from(5));
        assert_eq!(rs("E6").weyl_dimension(&Weight::fundamental(6, 0)), BigInt::from(27));
    }
}
