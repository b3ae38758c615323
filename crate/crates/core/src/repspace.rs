//! Explicit construction of irreducible highest weight modules over the
//! rationals.
//!
//! Each weight space `V_beta` gets a basis of lowering monomials
//! `f_{i1} f_{i2} ... f_{in} v_lambda`. Form values are obtained from the
//! contravariance rule `(f_i u, w) = (u, e_i w)` together with
//! `e_j f_i = f_i e_j + δ_ij h_i`, so everything is computed from data at
//! strictly higher weights. Among the candidate monomials at a weight the
//! first ones (lexicographically by index sequence) whose Gram rows are
//! independent become the basis; the radical of the form is exactly the
//! maximal submodule of the Verma module, so this realizes the irreducible
//! quotient directly.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{rat, EchelonBasis, RationalMatrix};
use crate::multiplicity::{weight_diagram, WeightDiagram};
use crate::rootdata::RootSystem;
use crate::weight::Weight;

pub const DEFAULT_MAX_MODULE_DIM: u64 = 3000;

/// Operators available on a [`RepModule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// `e_i`
    Raise(usize),
    /// `f_i`
    Lower(usize),
    /// `e_theta`
    RaiseTheta,
    /// `f_theta`
    LowerTheta,
}

/// A weight-homogeneous operator, stored as one block per source weight.
/// A missing block is the zero map.
#[derive(Debug, Clone)]
pub struct Operator {
    shift: Weight,
    blocks: HashMap<Weight, RationalMatrix>,
}

impl Operator {
    fn new(shift: Weight) -> Self {
        Operator { shift, blocks: HashMap::new() }
    }

    pub fn shift(&self) -> &Weight {
        &self.shift
    }

    /// The block `V_beta -> V_{beta + shift}`, if nonzero.
    pub fn block(&self, beta: &Weight) -> Option<&RationalMatrix> {
        self.blocks.get(beta)
    }
}

#[derive(Debug, Clone)]
struct WeightSpace {
    labels: Vec<Vec<usize>>,
    gram: RationalMatrix,
}

#[derive(Debug, Clone)]
pub struct RepModule {
    highest: Weight,
    spaces: BTreeMap<Weight, WeightSpace>,
    raising: Vec<Operator>,
    lowering: Vec<Operator>,
    theta_raising: Operator,
    theta_lowering: Operator,
    theta_word: Vec<usize>,
}

impl RepModule {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn dimension(&self) -> usize {
        self.spaces.values().map(|s| s.labels.len()).sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.keys()
    }

    pub fn contains(&self, beta: &Weight) -> bool {
        self.spaces.contains_key(beta)
    }

    /// `dim V_beta`, zero off the support.
    pub fn weight_dim(&self, beta: &Weight) -> usize {
        self.spaces.get(beta).map_or(0, |s| s.labels.len())
    }

    /// Lowering monomials spanning `V_beta`: the label `[i1, ..., in]` stands
    /// for `f_{i1} ... f_{in} v_lambda`.
    pub fn basis_labels(&self, beta: &Weight) -> Option<&[Vec<usize>]> {
        self.spaces.get(beta).map(|s| s.labels.as_slice())
    }

    /// Gram matrix of the contravariant form on `V_beta`.
    pub fn gram(&self, beta: &Weight) -> Option<&RationalMatrix> {
        self.spaces.get(beta).map(|s| &s.gram)
    }

    /// Simple-root word `[j0, j1, ..., jm]` with
    /// `e_theta = [e_jm, [..., [e_j1, e_j0]]]`.
    pub fn theta_word(&self) -> &[usize] {
        &self.theta_word
    }

    pub fn operator(&self, op: Op) -> &Operator {
        match op {
            Op::Raise(i) => &self.raising[i],
            Op::Lower(i) => &self.lowering[i],
            Op::RaiseTheta => &self.theta_raising,
            Op::LowerTheta => &self.theta_lowering,
        }
    }

    fn check_op(&self, op: Op) -> Result<()> {
        let rank = self.raising.len();
        match op {
            Op::Raise(i) | Op::Lower(i) if i >= rank => Err(Error::IndexOutOfRange { index: i, rank }),
            _ => Ok(()),
        }
    }

    fn check_weight(&self, beta: &Weight) -> Result<()> {
        if self.contains(beta) {
            Ok(())
        } else {
            Err(Error::NotAWeight { weight: beta.clone(), highest: self.highest.clone() })
        }
    }

    /// The block of `op` out of `V_beta` as a `dim V_{beta+shift} x dim V_beta`
    /// matrix (zero rows when the target is not a weight).
    pub fn block(&self, op: Op, beta: &Weight) -> RationalMatrix {
        let o = self.operator(op);
        match o.block(beta) {
            Some(m) => m.clone(),
            None => RationalMatrix::zeros(self.weight_dim(&(beta + &o.shift)), self.weight_dim(beta)),
        }
    }

    /// `op^p` restricted to `V_beta`.
    pub fn power_block(&self, op: Op, p: u64, beta: &Weight) -> Result<RationalMatrix> {
        self.check_op(op)?;
        self.check_weight(beta)?;
        let shift = self.operator(op).shift.clone();
        let mut acc = RationalMatrix::identity(self.weight_dim(beta));
        let mut current = beta.clone();
        for _ in 0..p {
            let target = &current + &shift;
            if !self.contains(&target) {
                return Ok(RationalMatrix::zeros(0, self.weight_dim(beta)));
            }
            acc = self.block(op, &current).matmul(&acc);
            current = target;
        }
        Ok(acc)
    }

    /// Basis (as columns) of `{v in V_beta : op^p v = 0}`.
    pub fn power_kernel(&self, op: Op, p: u64, beta: &Weight) -> Result<RationalMatrix> {
        Ok(self.power_block(op, p, beta)?.kernel())
    }

    /// Basis of the common kernel of several operator powers on `V_beta`.
    pub fn joint_kernel(&self, conditions: &[(Op, u64)], beta: &Weight) -> Result<RationalMatrix> {
        self.check_weight(beta)?;
        let blocks = conditions
            .iter()
            .map(|&(op, p)| self.power_block(op, p, beta))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&RationalMatrix> = blocks.iter().collect();
        Ok(RationalMatrix::vstack(&refs, self.weight_dim(beta)).kernel())
    }

    /// Commutator `[a, b]` assembled blockwise over every weight.
    pub fn commutator(&self, a: &Operator, b: &Operator) -> Operator {
        let mut out = Operator::new(&a.shift + &b.shift);
        for beta in self.spaces.keys() {
            let target = beta + &out.shift;
            if !self.contains(&target) {
                continue;
            }
            let mut m = RationalMatrix::zeros(self.weight_dim(&target), self.weight_dim(beta));
            if let (Some(bb), Some(ab)) = (b.block(beta), a.block(&(beta + &b.shift))) {
                m = m.add(&ab.matmul(bb));
            }
            if let (Some(ab), Some(bb)) = (a.block(beta), b.block(&(beta + &a.shift))) {
                m = m.sub(&bb.matmul(ab));
            }
            if !m.is_zero() {
                out.blocks.insert(beta.clone(), m);
            }
        }
        out
    }
}

/// Builds `V^lambda` with its e_i, f_i blocks and Gram matrices, then adds
/// `e_theta` and `f_theta`.
pub fn build_module(rs: &RootSystem, lambda: &Weight, max_dim: u64) -> Result<RepModule> {
    rs.check_dominant(lambda)?;
    let dim = rs.weyl_dimension(lambda).to_u64().unwrap_or(u64::MAX);
    if dim > max_dim {
        return Err(Error::CapExceeded { what: "module dimension", actual: dim, cap: max_dim });
    }
    let diagram = weight_diagram(rs, lambda)?;
    let mut module = build_simple_part(rs, &diagram)?;
    build_theta_operators(rs, &mut module)?;
    Ok(module)
}

fn build_simple_part(rs: &RootSystem, diagram: &WeightDiagram) -> Result<RepModule> {
    let n = rs.rank();
    let lambda = diagram.highest().clone();
    let mut raising: Vec<Operator> = rs.simple_roots().iter().map(|a| Operator::new(a.clone())).collect();
    let mut lowering: Vec<Operator> = rs.simple_roots().iter().map(|a| Operator::new(-a)).collect();
    let mut spaces: BTreeMap<Weight, WeightSpace> = BTreeMap::new();
    spaces.insert(lambda.clone(), WeightSpace { labels: vec![Vec::new()], gram: RationalMatrix::identity(1) });

    let mut layer = vec![lambda.clone()];
    loop {
        let mut next: Vec<Weight> = layer
            .iter()
            .flat_map(|b| rs.simple_roots().iter().map(move |a| b - a))
            .filter(|b| diagram.contains(b))
            .collect();
        next.sort();
        next.dedup();
        if next.is_empty() {
            break;
        }
        for beta in &next {
            let space = build_weight_space(rs, beta, diagram.multiplicity(beta), &spaces, &mut raising, &mut lowering)?;
            spaces.insert(beta.clone(), space);
        }
        layer = next;
    }
    debug_assert_eq!(raising.len(), n);
    Ok(RepModule {
        highest: lambda.clone(),
        spaces,
        raising,
        lowering,
        theta_raising: Operator::new(rs.theta().clone()),
        theta_lowering: Operator::new(-rs.theta()),
        theta_word: Vec::new(),
    })
}

/// Processes one weight: picks the basis, records its Gram matrix, the `e_j`
/// blocks out of it and the `f_i` blocks into it.
fn build_weight_space(
    rs: &RootSystem,
    beta: &Weight,
    mult: u64,
    spaces: &BTreeMap<Weight, WeightSpace>,
    raising: &mut [Operator],
    lowering: &mut [Operator],
) -> Result<WeightSpace> {
    let n = rs.rank();
    let above: Vec<Option<Weight>> = (0..n)
        .map(|i| {
            let up = beta + rs.simple_root(i);
            spaces.contains_key(&up).then_some(up)
        })
        .collect();
    let dim_of = |w: &Weight| spaces.get(w).map_or(0, |s| s.labels.len());

    // candidate f_i b_t, b_t the t-th basis vector of V_{beta + alpha_i}
    let mut candidates: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    for (i, up) in above.iter().enumerate() {
        let Some(up) = up else { continue };
        for (t, label) in spaces[up].labels.iter().enumerate() {
            let mut l = Vec::with_capacity(label.len() + 1);
            l.push(i);
            l.extend_from_slice(label);
            candidates.push((l, i, t));
        }
    }
    candidates.sort();
    let nc = candidates.len();

    // e_j on each candidate, in the basis of V_{beta + alpha_j}:
    // e_j f_i b = f_i e_j b + δ_ij <beta + alpha_i, alpha_i> b
    let mut raised: Vec<Option<RationalMatrix>> = vec![None; n];
    for j in 0..n {
        let Some(target) = &above[j] else { continue };
        let mut m = RationalMatrix::zeros(dim_of(target), nc);
        for (c, (_, i, t)) in candidates.iter().enumerate() {
            let src = above[*i].as_ref().expect("candidate source is a weight");
            if let Some(ej) = raising[j].blocks.get(src) {
                let via = src + rs.simple_root(j);
                if let Some(fi) = lowering[*i].blocks.get(&via) {
                    let v = fi.mul_vec(&ej.column(*t));
                    for (r, x) in v.into_iter().enumerate() {
                        m[(r, c)] += x;
                    }
                }
            }
            if *i == j {
                m[(*t, c)] += rat(src[j]);
            }
        }
        raised[j] = Some(m);
    }

    // (f_i b_t, x) = (b_t, e_i x)
    let mut gram_full = RationalMatrix::zeros(nc, nc);
    let mut weighted: Vec<Option<RationalMatrix>> = vec![None; n];
    for i in 0..n {
        if let (Some(up), Some(e)) = (&above[i], &raised[i]) {
            weighted[i] = Some(spaces[up].gram.matmul(e));
        }
    }
    for (c, (_, i, t)) in candidates.iter().enumerate() {
        let ge = weighted[*i].as_ref().expect("gram row source");
        for c2 in 0..nc {
            gram_full[(c, c2)] = ge[(*t, c2)].clone();
        }
    }
    debug_assert!(gram_full.is_symmetric(), "candidate Gram matrix at ({beta}) is not symmetric");

    let mut echelon = EchelonBasis::new(nc);
    let mut chosen = Vec::new();
    for c in 0..nc {
        if chosen.len() as u64 == mult {
            break;
        }
        if echelon.insert(gram_full.row(c).to_vec()) {
            chosen.push(c);
        }
    }
    if chosen.len() as u64 != mult {
        return Err(Error::Internal(format!(
            "weight ({beta}): Gram rank {} but multiplicity {mult}",
            chosen.len()
        )));
    }

    let gram = gram_full.select_rows(&chosen).select_columns(&chosen);
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::Internal(format!("singular Gram matrix at ({beta})")))?;

    for (j, e) in raised.iter().enumerate() {
        if let Some(e) = e {
            let block = e.select_columns(&chosen);
            if !block.is_zero() {
                raising[j].blocks.insert(beta.clone(), block);
            }
        }
    }
    for (i, up) in above.iter().enumerate() {
        let Some(up) = up else { continue };
        let cols: Vec<usize> = (0..dim_of(up))
            .map(|t| {
                candidates
                    .iter()
                    .position(|(_, ci, ct)| *ci == i && *ct == t)
                    .expect("every f_i b_t is a candidate")
            })
            .collect();
        let block = gram_inv.matmul(&gram_full.select_rows(&chosen).select_columns(&cols));
        if !block.is_zero() {
            lowering[i].blocks.insert(up.clone(), block);
        }
    }

    Ok(WeightSpace { labels: chosen.iter().map(|&c| candidates[c].0.clone()).collect(), gram })
}

/// Simple-root word realizing theta as an iterated bracket: every partial sum
/// `alpha_j0 + ... + alpha_jr` is a positive root.
pub fn theta_bracket_word(rs: &RootSystem) -> Vec<usize> {
    let roots: std::collections::HashSet<&Vec<i64>> =
        rs.positive_roots().iter().map(|r| &r.simple_coords).collect();
    let mut gamma = rs.marks().to_vec();
    let mut descent = Vec::new();
    while gamma.iter().sum::<i64>() > 1 {
        let i = (0..rs.rank())
            .find(|&i| {
                let mut g = gamma.clone();
                g[i] -= 1;
                g[i] >= 0 && roots.contains(&g)
            })
            .expect("every non-simple positive root has a positive root one step below");
        gamma[i] -= 1;
        descent.push(i);
    }
    let start = gamma.iter().position(|&c| c == 1).expect("simple root remains");
    let mut word = vec![start];
    word.extend(descent.into_iter().rev());
    word
}

/// Realizes `e_theta = [e_jm, [..., [e_j1, e_j0]]]` and
/// `f_theta = -e_theta^dagger`, where the Chevalley involution sends `e_i` to
/// `-f_i`; this makes `(e_theta v, w) = (v, f_theta w)`.
pub fn build_theta_operators(rs: &RootSystem, module: &mut RepModule) -> Result<()> {
    let word = theta_bracket_word(rs);
    let mut e = module.raising[word[0]].clone();
    let mut f = module.lowering[word[0]].clone();
    for &j in &word[1..] {
        e = module.commutator(&module.raising[j], &e);
        f = module.commutator(&module.lowering[j], &f);
    }
    if &e.shift != rs.theta() {
        return Err(Error::Internal("theta bracket word does not sum to theta".into()));
    }
    // f currently holds the bracket of f's; e^dagger = (-1)^len * that.
    let sign = if word.len() % 2 == 0 { -1 } else { 1 };
    if sign < 0 {
        for m in f.blocks.values_mut() {
            *m = m.scaled(&rat(-1));
        }
    }
    module.theta_raising = e;
    module.theta_lowering = f;
    module.theta_word = word;
    Ok(())
}
