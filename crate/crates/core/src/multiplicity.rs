//! Weight diagrams of irreducible modules.
//!
//! The main route is the Racah-Speiser recursion at `mu = 0`:
//! `Mult(nu) = -Σ_{w != 1} sign(w) Mult(nu + rho - w rho)` for `nu != lambda`.
//! Freudenthal's formula is kept alongside as an independent check.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::rootdata::RootSystem;
use crate::weight::Weight;

/// Inner multiplicities of one irreducible module. Only nonzero entries are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    highest: Weight,
    table: BTreeMap<Weight, u64>,
}

impl WeightDiagram {
    /// Assembles a diagram from raw entries, e.g. when reading a cache. No
    /// invariant checking is done beyond dropping zero entries.
    pub fn from_parts(highest: Weight, table: BTreeMap<Weight, u64>) -> Self {
        let table = table.into_iter().filter(|(_, m)| *m > 0).collect();
        WeightDiagram { highest, table }
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn table(&self) -> &BTreeMap<Weight, u64> {
        &self.table
    }

    /// `Mult_lambda(nu)`; zero off the support.
    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.table.get(nu).copied().unwrap_or(0)
    }

    pub fn contains(&self, nu: &Weight) -> bool {
        self.table.contains_key(nu)
    }

    pub fn dimension(&self) -> u64 {
        self.table.values().sum()
    }

    /// Weights in the support.
    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.table.keys()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Dominant weights `mu <= lambda` in the same root-lattice coset, reached by
/// subtracting positive roots while staying dominant.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(mu) = queue.pop_front() {
        for root in rs.positive_roots() {
            let next = &mu - &root.weight;
            if next.is_dominant() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn weight_diagram(rs: &RootSystem, lambda: &Weight) -> Result<WeightDiagram> {
    rs.check_dominant(lambda)?;
    let mut dominant = dominant_weights_below(rs, lambda);
    dominant.sort_by_cached_key(|mu| rs.height(&(lambda - mu)).unwrap_or(i64::MAX));

    // rho - w rho for every w != 1, with sign(w)
    let shifts: Vec<(Weight, i64)> = rs
        .weyl_elements()
        .iter()
        .filter(|w| !w.is_identity())
        .map(|w| (rs.rho() - &w.apply(rs.rho()), w.sign()))
        .collect();

    let mut dominant_mult: HashMap<Weight, i64> = HashMap::new();
    for nu in &dominant {
        if nu == lambda {
            dominant_mult.insert(nu.clone(), 1);
            continue;
        }
        let mut acc = 0i64;
        for (shift, sign) in &shifts {
            let key = rs.dominant_conjugate(&(nu + shift));
            if let Some(m) = dominant_mult.get(&key) {
                acc -= sign * m;
            }
        }
        if acc < 0 {
            return Err(Error::Internal(format!(
                "negative multiplicity {acc} at ({nu}) for highest weight ({lambda})"
            )));
        }
        dominant_mult.insert(nu.clone(), acc);
    }

    let mut table = BTreeMap::new();
    for (mu, m) in dominant_mult {
        if m == 0 {
            continue;
        }
        for x in rs.orbit(&mu) {
            table.insert(x, m as u64);
        }
    }
    Ok(WeightDiagram { highest: lambda.clone(), table })
}

pub fn inner_multiplicity(d: &WeightDiagram, nu: &Weight) -> u64 {
    d.multiplicity(nu)
}

/// Freudenthal's formula
/// `((lambda+rho)^2 - (nu+rho)^2) m(nu) = 2 Σ_{alpha>0} Σ_{j>=1} (nu + j alpha, alpha) m(nu + j alpha)`,
/// evaluated over every weight (not just dominant ones) top-down.
pub fn freudenthal_diagram(rs: &RootSystem, lambda: &Weight) -> Result<WeightDiagram> {
    rs.check_dominant(lambda)?;
    let top = {
        let s = lambda + rs.rho();
        rs.form(&s, &s)
    };
    // (x, alpha) = <x, scaled_roots[alpha]> / scale with integer coefficients
    let unit = |k: usize| Weight::fundamental(rs.rank(), k);
    let exact: Vec<Vec<Rational>> = rs
        .positive_roots()
        .iter()
        .map(|root| (0..rs.rank()).map(|k| rs.form_with_root(&unit(k), root)).collect())
        .collect();
    let scale = exact.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled_roots: Vec<Vec<i64>> = exact
        .iter()
        .map(|row| row.iter().map(|q| (q * &scale).to_integer().to_i64().expect("small coefficient")).collect())
        .collect();
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    let mut layer = vec![lambda.clone()];
    while !layer.is_empty() {
        let mut candidates: Vec<Weight> = layer
            .iter()
            .flat_map(|w| rs.simple_roots().iter().map(move |a| w - a))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        candidates.sort();
        let mut next = Vec::new();
        for nu in candidates {
            let shifted = &nu + rs.rho();
            let denom = &top - rs.form(&shifted, &shifted);
            if denom <= Rational::zero() {
                // Only weights strictly inside the (lambda+rho)-sphere can occur.
                continue;
            }
            let mut num = 0i128;
            for (root, coef) in rs.positive_roots().iter().zip(&scaled_roots) {
                let mut j = 1;
                loop {
                    let up = nu.add_scaled(j, &root.weight);
                    let Some(&m) = mult.get(&up) else { break };
                    let pairing: i64 = up.coords().iter().zip(coef).map(|(x, c)| x * c).sum();
                    num += pairing as i128 * m as i128;
                    j += 1;
                }
            }
            let num = Rational::new(num.into(), scale.clone());
            let value = rat(2) * num / denom;
            if !value.is_integer() {
                return Err(Error::Internal(format!("non-integral Freudenthal value at ({nu})")));
            }
            let m = value.to_integer().to_u64().unwrap_or(0);
            if m > 0 {
                mult.insert(nu.clone(), m);
                next.push(nu);
            }
        }
        layer = next;
    }
    Ok(WeightDiagram { highest: lambda.clone(), table: mult.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn sl2_strings() {
        let r = rs("A1");
        for m in 0..8 {
            let d = weight_diagram(&r, &w(&[m])).unwrap();
            assert_eq!(d.len() as i64, m + 1);
            for i in 0..=m {
                assert_eq!(d.multiplicity(&w(&[m - 2 * i])), 1);
            }
        }
        let f = freudenthal_diagram(&r, &w(&[3])).unwrap();
        let keys: Vec<i64> = f.weights().map(|x| x[0]).collect();
        assert_eq!(keys, vec![-3, -1, 1, 3]);
        assert!(f.table().values().all(|&m| m == 1));
    }

    #[test]
    fn trivial_module() {
        for t in ["A1", "A2", "G2"] {
            let r = rs(t);
            let z = Weight::zero(r.rank());
            for d in [weight_diagram(&r, &z).unwrap(), freudenthal_diagram(&r, &z).unwrap()] {
                assert_eq!(d.table().len(), 1);
                assert_eq!(d.multiplicity(&z), 1);
            }
        }
    }

    #[test]
    fn a2_adjoint() {
        let r = rs("A2");
        let d = weight_diagram(&r, r.theta()).unwrap();
        assert_eq!(d.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(d.dimension(), 8);
        assert_eq!(inner_multiplicity(&d, r.theta()), 1);
        assert_eq!(inner_multiplicity(&d, &(r.theta() + r.simple_root(0))), 0);
        assert_eq!(freudenthal_diagram(&r, &w(&[2, 0])).unwrap().dimension(), 6);
    }

    #[test]
    fn rejects_non_dominant() {
        let r = rs("A2");
        assert!(matches!(weight_diagram(&r, &w(&[1, -1])), Err(Error::NotDominant(_))));
        assert!(freudenthal_diagram(&r, &w(&[-1, 0])).is_err());
        assert!(weight_diagram(&r, &w(&[1])).is_err());
    }

    #[test]
    fn g2_and_b2_known_multiplicities() {
        // G2 adjoint: zero weight has multiplicity 2 (the rank).
        let g2 = rs("G2");
        let d = weight_diagram(&g2, g2.theta()).unwrap();
        assert_eq!(d.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(d.dimension(), 14);
        // G2 7-dim: zero weight has multiplicity 1.
        assert_eq!(weight_diagram(&g2, &w(&[1, 0])).unwrap().multiplicity(&w(&[0, 0])), 1);
        let b2 = rs("B2");
        assert_eq!(weight_diagram(&b2, b2.theta()).unwrap().dimension(), 10);
    }

    #[test]
    fn recursion_matches_freudenthal_and_weyl() {
        for t in ["A1", "A2", "B2", "G2", "A3"] {
            let r = rs(t);
            let n = r.rank();
            let bound = if n <= 2 { 3 } else { 2 };
            let mut coords = vec![0i64; n];
            loop {
                let lambda = Weight::new(coords.clone());
                let d = weight_diagram(&r, &lambda).unwrap();
                let f = freudenthal_diagram(&r, &lambda).unwrap();
                assert_eq!(d, f, "{t} ({lambda})");
                assert_eq!(BigInt::from(d.dimension()), r.weyl_dimension(&lambda));
                assert_eq!(d.multiplicity(&lambda), 1);
                for x in d.weights() {
                    assert!(r.dominated_by(x, &lambda));
                    for g in r.weyl_elements() {
                        assert_eq!(d.multiplicity(&g.apply(x)), d.multiplicity(x));
                    }
                }
                // odometer over [0, bound]^n
                let mut i = 0;
                while i < n && coords[i] == bound {
                    coords[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                coords[i] += 1;
            }
        }
    }
}
