//! Verification suites. Each suite sweeps a fixed family of instances,
//! compares independent computations exactly and reports every mismatch.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::context::{Context, Limits};
use crate::error::{Error, Result};
use crate::fusion::{self, Backend, Level, Triple};
use crate::linalg::RationalMatrix;
use crate::multiplicity::{freudenthal_diagram, weight_diagram};
use crate::repspace::Op;
use crate::rootdata::{CartanType, RootSystem};
use crate::tensor::{stability_threshold, weight_string};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Sl2ClosedForm,
    Prv,
    ThreeWay,
    Axioms,
    Lemmas,
    Stability,
    Threshold,
    Multiplicity,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Sl2ClosedForm,
        Suite::Prv,
        Suite::ThreeWay,
        Suite::Axioms,
        Suite::Lemmas,
        Suite::Stability,
        Suite::Threshold,
        Suite::Multiplicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sl2ClosedForm => "sl2-closed-form",
            Suite::Prv => "prv",
            Suite::ThreeWay => "three-way",
            Suite::Axioms => "axioms",
            Suite::Lemmas => "lemmas",
            Suite::Stability => "stability",
            Suite::Threshold => "threshold",
            Suite::Multiplicity => "multiplicity",
        }
    }

    /// Whether the suite can be narrowed to one `(type, level)` case.
    pub fn takes_case(self) -> bool {
        matches!(self, Suite::ThreeWay | Suite::Axioms)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse { what: "suite", input: s.to_string() })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: u64,
    /// Instances outside a resource cap, not counted as checks.
    pub skipped: u64,
    pub failures: Vec<String>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report { suite: suite.name().to_string(), ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failures", self.suite, self.checks, self.failures.len())?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        Ok(())
    }
}

fn context(t: &str, limits: Limits) -> Result<Context> {
    Context::new(t.parse()?, limits)
}

fn level(k: u64) -> Level {
    Level::new(k).expect("levels in suites are positive")
}

/// Dominant weights with every coordinate at most `bound`, lexicographic.
fn box_weights(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Weight::zero(rank)];
    for i in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=bound).map(move |n| {
                    let mut c = w.coords().to_vec();
                    c[i] = n;
                    Weight::new(c)
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Dominant weights of Weyl dimension at most `max_dim`.
fn weights_up_to_dim(rs: &RootSystem, max_dim: u64) -> Vec<Weight> {
    let fits = |w: &Weight| rs.weyl_dimension(w) <= max_dim.into();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![Weight::zero(rs.rank())];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..rs.rank() {
            let next = &w + &Weight::fundamental(rs.rank(), i);
            if fits(&next) && !seen.contains(&next) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Sl2 Walton dimensions against the closed form
/// `1 iff i <= n2 and n1 + n2 - 2i <= k - i`.
pub fn sl2_closed_form(ctx: &Context, max_level: u64) -> Result<Report> {
    let mut report = Report::new(Suite::Sl2ClosedForm);
    for k in 1..=max_level as i64 {
        for n1 in 0..=k {
            for n2 in 0..=k {
                for i in 0..=n1 {
                    let top = n1 + n2 - 2 * i;
                    if top < 0 || top > k {
                        continue;
                    }
                    let expected = u64::from(i <= n2 && top <= k - i);
                    let got = fusion::walton_dimension(
                        ctx,
                        level(k as u64),
                        &Weight::new(vec![n1]),
                        &Weight::new(vec![n1 - 2 * i]),
                        &Weight::new(vec![n2]),
                    )?;
                    report.check(got == expected, || {
                        format!("k={k} n1={n1} n2={n2} i={i}: got {got}, expected {expected}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Triples `(lambda, beta, mu)` of the PRV sweep with `beta + mu` dominant.
fn prv_sweep(ctx: &Context, lambdas: &[Weight], mus: &[Weight]) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for lambda in lambdas {
        let d = ctx.diagram(lambda)?;
        for mu in mus {
            for beta in d.weights() {
                if (beta + mu).is_dominant() {
                    out.push((lambda.clone(), beta.clone(), mu.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn a1_prv_weights() -> Vec<Weight> {
    (0..12).map(|n| Weight::new(vec![n])).collect()
}

fn sweeps(limits: Limits) -> Result<Vec<(Context, Vec<Triple>)>> {
    let a1 = context("A1", limits)?;
    let a1_sweep = prv_sweep(&a1, &a1_prv_weights(), &a1_prv_weights())?;
    let a2 = context("A2", limits)?;
    let a2_weights = box_weights(2, 2);
    let a2_sweep = prv_sweep(&a2, &a2_weights, &a2_weights)?;
    Ok(vec![(a1, a1_sweep), (a2, a2_sweep)])
}

fn par_report<T: Sync>(suite: Suite, items: &[T], f: impl Fn(&T, &mut Report) -> Result<()> + Sync) -> Result<Report> {
    let parts = items
        .par_iter()
        .map(|x| {
            let mut r = Report::new(suite);
            f(x, &mut r).map(|_| r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new(suite);
    for p in parts {
        report.absorb(p);
    }
    Ok(report)
}

/// PRV dimension equals the Racah-Speiser multiplicity.
pub fn prv(limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Prv);
    for (ctx, sweep) in sweeps(limits)? {
        let t = ctx.root_system().cartan_type();
        report.absorb(par_report(Suite::Prv, &sweep, |(lambda, beta, mu), r| {
            let prv = fusion::prv_dimension(&ctx, lambda, beta, mu)?;
            let rs_mult = ctx.tensor_multiplicity(lambda, mu, &(beta + mu))?;
            r.check(prv == rs_mult, || format!("{t} ({lambda}) beta=({beta}) mu=({mu}): prv {prv}, racah-speiser {rs_mult}"));
            Ok(())
        })?);
    }
    Ok(report)
}

/// Default three-way and axiom cases.
pub fn three_way_cases() -> Vec<(CartanType, Level)> {
    let a1: CartanType = "A1".parse().unwrap();
    let a2: CartanType = "A2".parse().unwrap();
    (1..=4).map(|k| (a1, level(k))).chain((1..=2).map(|k| (a2, level(k)))).collect()
}

pub fn axiom_cases() -> Vec<(CartanType, Level)> {
    let a1: CartanType = "A1".parse().unwrap();
    let a2: CartanType = "A2".parse().unwrap();
    (1..=6).map(|k| (a1, level(k))).chain((1..=3).map(|k| (a2, level(k)))).collect()
}

/// Walton = Kac-Walton on every triple, Walton = Frenkel-Zhu on
/// every triple under the tensor dimension cap.
pub fn three_way(cases: &[(CartanType, Level)], limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::ThreeWay);
    for &(t, k) in cases {
        let ctx = Context::new(t, limits)?;
        let alcove = fusion::level_alcove(ctx.root_system(), k);
        let mut triples: Vec<(&Weight, &Weight, &Weight)> = Vec::new();
        for l in &alcove {
            for m in &alcove {
                triples.extend(alcove.iter().map(|n| (l, m, n)));
            }
        }
        report.absorb(par_report(Suite::ThreeWay, &triples, |&(l, m, n), r| {
            let walton = fusion::coefficient(&ctx, k, Backend::Walton, l, m, n)?;
            let kw = fusion::coefficient(&ctx, k, Backend::KacWalton, l, m, n)?;
            r.check(walton == kw, || format!("{t} k={k} ({l})x({m})->({n}): walton {walton}, kac-walton {kw}"));
            match fusion::coefficient(&ctx, k, Backend::Fz, l, m, n) {
                Ok(fz) => r.check(walton == fz, || format!("{t} k={k} ({l})x({m})->({n}): walton {walton}, fz {fz}")),
                Err(Error::CapExceeded { .. }) => r.skipped += 1,
                Err(e) => return Err(e),
            }
            Ok(())
        })?);
    }
    Ok(report)
}

/// Fusion-ring axioms on Walton tables, plus truncation
/// `N <= Mult` on every entry.
pub fn axioms(cases: &[(CartanType, Level)], limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Axioms);
    for &(t, k) in cases {
        let ctx = Context::new(t, limits)?;
        let table = fusion::fusion_table(&ctx, k, Backend::Walton)?;
        let violations = table.axiom_violations(ctx.root_system());
        report.check(violations.is_empty(), || format!("{t} k={k}: {}", violations.join("; ")));
        for ((l, m, n), &c) in &table.coeffs {
            let mult = ctx.tensor_multiplicity(l, m, n)?;
            report.check(c <= mult, || format!("{t} k={k} ({l})x({m})->({n}): fusion {c} > tensor {mult}"));
        }
    }
    Ok(report)
}

/// Fusion equals the tensor multiplicity once
/// `k >= <mu,theta> + r`, with `r` the downward length of the theta string
/// through `beta`. On A1 the threshold is also checked to be sharp.
pub fn threshold(limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Threshold);
    for (ctx, sweep) in sweeps(limits)? {
        let rs = ctx.root_system();
        let t = rs.cartan_type();
        let is_sl2 = t.rank() == 1;
        report.absorb(par_report(Suite::Threshold, &sweep, |(lambda, beta, mu), r| {
            let target = beta + mu;
            let d = ctx.diagram(lambda)?;
            let down = weight_string(&d, beta, rs.theta())?.down as i64;
            let bound = rs.theta_pairing(mu) + down;
            let min_level = [lambda, mu, &target].iter().map(|w| rs.theta_pairing(w)).max().unwrap().max(1);
            let mult = ctx.tensor_multiplicity(lambda, mu, &target)?;
            for k in min_level..=bound.max(min_level) + 2 {
                let n = fusion::walton_dimension(&ctx, level(k as u64), lambda, beta, mu)?;
                if k >= bound {
                    r.check(n == mult, || {
                        format!("{t} k={k} ({lambda}) beta=({beta}) mu=({mu}): fusion {n}, tensor {mult}")
                    });
                } else if is_sl2 && k == bound - 1 && mult > 0 {
                    r.check(n < mult, || format!("{t} k={k} ({lambda}) beta=({beta}) mu=({mu}): threshold not sharp"));
                }
            }
            Ok(())
        })?);
    }
    Ok(report)
}

/// `im(e^p) ⊥ ker(f^p)` inside `V_beta`, with complementary dimensions.
fn orthogonal_split(module: &crate::repspace::RepModule, raise: Op, lower: Op, p: u64, beta: &Weight) -> Result<bool> {
    let gram = module.gram(beta).expect("beta is a weight");
    let kernel = module.power_kernel(lower, p, beta)?;
    let source = beta.add_scaled(-(p as i64), module.operator(raise).shift());
    let image = if module.contains(&source) {
        module.power_block(raise, p, &source)?
    } else {
        RationalMatrix::zeros(module.weight_dim(beta), 0)
    };
    let orthogonal = kernel.cols() == 0 || image.cols() == 0 || kernel.transpose().matmul(gram).matmul(&image).is_zero();
    Ok(orthogonal && kernel.cols() + image.rank() == module.weight_dim(beta))
}

fn lemma_orthogonal_sum(ctx: &Context, report: &mut Report) -> Result<()> {
    for m in 0..=10i64 {
        let module = ctx.module(&Weight::new(vec![m]))?;
        for p in 1..=(m as u64 + 2) {
            let mut ok = true;
            for beta in module.weights() {
                ok &= orthogonal_split(&module, Op::Raise(0), Op::Lower(0), p, beta)?;
            }
            report.check(ok, || format!("orthogonal decomposition fails on V({m}) at p={p}"));
        }
    }
    Ok(())
}

fn lemma_kernel_dims(ctx: &Context, report: &mut Report) -> Result<()> {
    let rs = ctx.root_system();
    let directions = [(Op::Raise(0), Op::Lower(0)), (Op::Raise(1), Op::Lower(1)), (Op::RaiseTheta, Op::LowerTheta)];
    let lambdas = weights_up_to_dim(rs, 200);
    let parts = lambdas
        .par_iter()
        .map(|lambda| -> Result<Report> {
            let mut r = Report::new(Suite::Lemmas);
            let module = ctx.module(lambda)?;
            for (idx, &(e, f)) in directions.iter().enumerate() {
                for beta in module.weights() {
                    let pairing = if idx < 2 { beta[idx] } else { rs.theta_pairing(beta) };
                    let span = module.operator(e).shift().clone();
                    let d = ctx.diagram(lambda)?;
                    let s = weight_string(&d, beta, &span)?;
                    let top = (s.up + s.down) as i64 + 1;
                    for p in (-pairing).max(0)..=top {
                        let ke = module.power_kernel(e, p as u64, beta)?.cols();
                        let kf = module.power_kernel(f, (p + pairing) as u64, beta)?.cols();
                        r.check(ke == kf, || {
                            format!("A2 ({lambda}) beta=({beta}) op {e:?} p={p}: ker e^p {ke}, ker f^(p+<beta,alpha>) {kf}")
                        });
                    }
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    for p in parts {
        report.absorb(p);
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    RationalMatrix::from_i64_rows(&data)
}

/// Orthogonal projection onto the column span of `w` (full column rank).
fn projector(gram: &RationalMatrix, w: &RationalMatrix) -> RationalMatrix {
    let wt_g = w.transpose().matmul(gram);
    let inner = wt_g.matmul(w).inverse().expect("positive definite restriction");
    w.matmul(&inner).matmul(&wt_g)
}

/// One random instance of the projection lemma: `W = P_W(U1) ⊕ (W ∩ U2)`
/// orthogonally, where `U2 = U1^perp`.
fn projection_instance(rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(2..=8);
    // positive definite Gram A^T A + I
    let a = random_matrix(rng, n, n);
    let gram = a.transpose().matmul(&a).add(&RationalMatrix::identity(n));
    let d1 = rng.gen_range(0..=n);
    let u1 = random_matrix(rng, n, d1);
    let u1 = basis_of(&u1);
    let u2 = if u1.cols() == 0 { RationalMatrix::identity(n) } else { u1.transpose().matmul(&gram).kernel() };
    let dw = rng.gen_range(1..=n);
    let w = basis_of(&random_matrix(rng, n, dw));
    if w.cols() == 0 {
        return true;
    }
    let proj = projector(&gram, &w);
    let p_u1 = basis_of(&proj.matmul(&u1));
    // W ∩ U2 = { W c : U1^T G W c = 0 }
    let inter = if u1.cols() == 0 {
        w.clone()
    } else {
        basis_of(&w.matmul(&u1.transpose().matmul(&gram).matmul(&w).kernel()))
    };
    let orthogonal = p_u1.cols() == 0 || inter.cols() == 0 || p_u1.transpose().matmul(&gram).matmul(&inter).is_zero();
    let sum = RationalMatrix::hstack(&[&p_u1, &inter], n);
    let inside_w = RationalMatrix::hstack(&[&w, &sum], n).rank() == w.cols();
    u2.cols() + u1.cols() == n && orthogonal && inside_w && sum.rank() == w.cols()
}

/// Independent columns spanning the column space of `m`.
fn basis_of(m: &RationalMatrix) -> RationalMatrix {
    let (_, pivots) = m.rref();
    m.select_columns(&pivots)
}

fn lemma_projection(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..50 {
        let ok = projection_instance(&mut rng);
        report.check(ok, || format!("projection lemma fails on random instance {trial}"));
    }
}

/// The three structural lemmas on explicit modules.
pub fn lemmas(limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Lemmas);
    lemma_orthogonal_sum(&context("A1", limits)?, &mut report)?;
    lemma_kernel_dims(&context("A2", limits)?, &mut report)?;
    lemma_projection(&mut report);
    Ok(report)
}

/// Outer multiplicities are stable along `lambda_j` once
/// `<mu,alpha_j> >= q_{beta,j}`.
pub fn stability(limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Stability);
    for t in ["A1", "A2"] {
        let ctx = context(t, limits)?;
        let rs = ctx.root_system();
        let n = rs.rank();
        let two_l1 = Weight::fundamental(n, 0).scale(2);
        for lambda in [rs.theta().clone(), two_l1] {
            let d = ctx.diagram(&lambda)?;
            for beta in d.weights() {
                for j in 0..n {
                    let q = stability_threshold(rs, &d, beta, j)? as i64;
                    let fj = Weight::fundamental(n, j);
                    for mu in box_weights(n, q + 2) {
                        if mu[j] < q || !(beta + &mu).is_dominant() {
                            continue;
                        }
                        let base = ctx.tensor_multiplicity(&lambda, &mu, &(beta + &mu))?;
                        for m in 1..=2 {
                            let shift = fj.scale(m);
                            let mu_m = &mu + &shift;
                            let moved = ctx.tensor_multiplicity(&lambda, &mu_m, &(beta + &mu_m))?;
                            report.check(base == moved, || {
                                format!("{t} ({lambda}) beta=({beta}) j={j} mu=({mu}) m={m}: {base} != {moved}")
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The recursion and Freudenthal's formula give identical
/// diagrams whose size matches the Weyl dimension formula.
pub fn multiplicity(limits: Limits) -> Result<Report> {
    let mut report = Report::new(Suite::Multiplicity);
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = RootSystem::with_weyl_cap(t.parse()?, limits.max_weyl)?;
        let lambdas = weights_up_to_dim(&rs, 500);
        report.absorb(par_report(Suite::Multiplicity, &lambdas, |lambda, r| {
            let d = weight_diagram(&rs, lambda)?;
            let f = freudenthal_diagram(&rs, lambda)?;
            r.check(d == f, || format!("{t} ({lambda}): recursion and Freudenthal differ"));
            let weyl = rs.weyl_dimension(lambda);
            r.check(weyl == d.dimension().into(), || format!("{t} ({lambda}): dimension {} != Weyl {weyl}", d.dimension()));
            Ok(())
        })?);
    }
    Ok(report)
}

/// Runs one suite. `case` narrows `three-way` and `axioms` to a single
/// `(type, level)`; other suites reject it.
pub fn run(suite: Suite, case: Option<(CartanType, Level)>, limits: Limits) -> Result<Report> {
    if case.is_some() && !suite.takes_case() {
        return Err(Error::Parse { what: "suite case", input: suite.name().to_string() });
    }
    match suite {
        Suite::Sl2ClosedForm => sl2_closed_form(&context("A1", limits)?, 8),
        Suite::Prv => prv(limits),
        Suite::ThreeWay => three_way(&case.map_or_else(three_way_cases, |c| vec![c]), limits),
        Suite::Axioms => axioms(&case.map_or_else(axiom_cases, |c| vec![c]), limits),
        Suite::Lemmas => lemmas(limits),
        Suite::Stability => stability(limits),
        Suite::Threshold => threshold(limits),
        Suite::Multiplicity => multiplicity(limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_cases_pass() {
        let limits = Limits::default();
        let a1 = context("A1", limits).unwrap();
        assert!(sl2_closed_form(&a1, 3).unwrap().passed());
        let case = ("A1".parse().unwrap(), level(3));
        assert!(run(Suite::Axioms, Some(case), limits).unwrap().passed());
        let case = ("A2".parse().unwrap(), level(1));
        assert!(run(Suite::ThreeWay, Some(case), limits).unwrap().passed());
        assert!(run(Suite::Lemmas, Some(case), limits).is_err());
    }

    #[test]
    fn projection_lemma_instances() {
        let mut r = Report::new(Suite::Lemmas);
        lemma_projection(&mut r);
        assert_eq!(r.checks, 50);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn dimension_enumeration() {
        let a2 = RootSystem::new("A2".parse().unwrap()).unwrap();
        let ws = weights_up_to_dim(&a2, 8);
        let expected: Vec<Weight> = [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]].iter().map(|c| Weight::new(c.to_vec())).collect();
        assert_eq!(ws, expected);
        assert_eq!(box_weights(2, 1).len(), 4);
    }
}
