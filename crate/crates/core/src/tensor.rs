//! Tensor product multiplicities (Racah-Speiser), weight strings and the
//! stability threshold for outer multiplicities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multiplicity::WeightDiagram;
use crate::rootdata::RootSystem;
use crate::weight::Weight;

/// `V^left ⊗ V^right = ⊕ terms[nu] V^nu`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecomposition {
    pub left: Weight,
    pub right: Weight,
    pub terms: BTreeMap<Weight, u64>,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }
}

/// The maximal unbroken string `base - down·direction, …, base + up·direction`
/// inside a weight diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightString {
    pub base: Weight,
    pub direction: Weight,
    pub down: u64,
    pub up: u64,
}

/// `Mult_{lambda,mu}^nu = Σ_w sign(w) Mult_lambda(w(nu+rho) - mu - rho)`.
pub fn tensor_multiplicity(
    rs: &RootSystem,
    lambda_diagram: &WeightDiagram,
    mu: &Weight,
    nu: &Weight,
) -> Result<u64> {
    rs.check_dominant(lambda_diagram.highest())?;
    rs.check_dominant(mu)?;
    rs.check_dominant(nu)?;
    let shifted = nu + rs.rho();
    let offset = mu + rs.rho();
    let mut acc = 0i64;
    for w in rs.weyl_elements() {
        let m = lambda_diagram.multiplicity(&(&w.apply(&shifted) - &offset));
        acc += w.sign() * m as i64;
    }
    u64::try_from(acc).map_err(|_| {
        Error::Internal(format!(
            "negative tensor multiplicity {acc} for ({}) x ({mu}) -> ({nu})",
            lambda_diagram.highest()
        ))
    })
}

/// Full decomposition: every weight `beta` of `V^lambda` contributes
/// `Mult_lambda(beta)` with the sign of the Weyl element folding `beta + mu + rho`
/// into the dominant chamber; wall cases cancel.
pub fn tensor_decompose(rs: &RootSystem, lambda_diagram: &WeightDiagram, mu: &Weight) -> Result<TensorDecomposition> {
    let lambda = lambda_diagram.highest();
    rs.check_dominant(lambda)?;
    rs.check_dominant(mu)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (beta, &m) in lambda_diagram.table() {
        let (nu, sign) = rs.make_dominant(&(beta + mu));
        if sign != 0 {
            *acc.entry(nu).or_insert(0) += sign * m as i64;
        }
    }
    let mut terms = BTreeMap::new();
    for (nu, c) in acc {
        match c {
            0 => {}
            c if c > 0 => {
                terms.insert(nu, c as u64);
            }
            c => {
                return Err(Error::Internal(format!(
                    "negative coefficient {c} at ({nu}) in ({lambda}) x ({mu})"
                )))
            }
        }
    }
    Ok(TensorDecomposition { left: lambda.clone(), right: mu.clone(), terms })
}

pub fn weight_string(d: &WeightDiagram, beta: &Weight, direction: &Weight) -> Result<WeightString> {
    if !d.contains(beta) {
        return Err(Error::NotAWeight { weight: beta.clone(), highest: d.highest().clone() });
    }
    if direction.is_zero() {
        return Err(Error::Internal("weight string along the zero vector".into()));
    }
    let walk = |sign: i64| {
        let mut n = 0u64;
        let mut x = beta.add_scaled(sign, direction);
        while d.contains(&x) {
            n += 1;
            x = x.add_scaled(sign, direction);
        }
        n
    };
    Ok(WeightString { base: beta.clone(), direction: direction.clone(), down: walk(-1), up: walk(1) })
}

/// `q_{beta,j}`: once `<mu, alpha_j>` reaches this value, adding `lambda_j`
/// to both `mu` and `beta + mu` no longer changes the outer multiplicity.
pub fn stability_threshold(rs: &RootSystem, d: &WeightDiagram, beta: &Weight, j: usize) -> Result<u64> {
    if j >= rs.rank() {
        return Err(Error::IndexOutOfRange { index: j, rank: rs.rank() });
    }
    Ok(weight_string(d, beta, rs.simple_root(j))?.up)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::multiplicity::weight_diagram;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    /// Test-only oracle: multiply characters as weight multisets and peel off
    /// the highest dominant weight repeatedly.
    fn greedy_decompose(r: &RootSystem, lambda: &Weight, mu: &Weight) -> BTreeMap<Weight, u64> {
        let a = weight_diagram(r, lambda).unwrap();
        let b = weight_diagram(r, mu).unwrap();
        let mut product: HashMap<Weight, i64> = HashMap::new();
        for (x, m) in a.table() {
            for (y, n) in b.table() {
                *product.entry(x + y).or_insert(0) += (m * n) as i64;
            }
        }
        let mut out = BTreeMap::new();
        loop {
            product.retain(|_, m| *m != 0);
            // a maximal dominant weight: pick the one of greatest height above zero
            let Some(top) = product
                .keys()
                .filter(|x| x.is_dominant())
                .max_by_key(|x| {
                    let c = r.simple_coords(x);
                    let total = c.iter().fold(crate::linalg::rat(0), |acc, q| acc + q);
                    (total, (*x).clone())
                })
                .cloned()
            else {
                break;
            };
            let count = product[&top];
            assert!(count > 0);
            out.insert(top.clone(), count as u64);
            for (x, m) in weight_diagram(r, &top).unwrap().table() {
                *product.entry(x.clone()).or_insert(0) -= count * *m as i64;
            }
        }
        assert!(product.is_empty(), "character did not decompose");
        out
    }

    #[test]
    fn sl2_clebsch_gordan() {
        let r = rs("A1");
        let d = weight_diagram(&r, &w(&[2])).unwrap();
        for nu in 0..8 {
            let expected = u64::from([5, 3, 1].contains(&nu));
            assert_eq!(tensor_multiplicity(&r, &d, &w(&[3]), &w(&[nu])).unwrap(), expected);
        }
        let dec = tensor_decompose(&r, &d, &w(&[2])).unwrap();
        let expected: BTreeMap<Weight, u64> = [(w(&[0]), 1), (w(&[2]), 1), (w(&[4]), 1)].into_iter().collect();
        assert_eq!(dec.terms, expected);
    }

    #[test]
    fn tensoring_with_trivial() {
        let r = rs("A2");
        let lambda = w(&[2, 1]);
        let d = weight_diagram(&r, &lambda).unwrap();
        let z = w(&[0, 0]);
        assert_eq!(tensor_multiplicity(&r, &d, &z, &lambda).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&r, &d, &z, &w(&[0, 0])).unwrap(), 0);
        assert_eq!(tensor_decompose(&r, &d, &z).unwrap().terms, [(lambda, 1)].into_iter().collect());
    }

    #[test]
    fn a2_fundamental_product() {
        let r = rs("A2");
        let d = weight_diagram(&r, &w(&[1, 0])).unwrap();
        assert_eq!(tensor_multiplicity(&r, &d, &w(&[0, 1]), r.theta()).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&r, &d, &w(&[0, 1]), &w(&[0, 0])).unwrap(), 1);
        assert_eq!(greedy_decompose(&r, &w(&[1, 0]), &w(&[0, 1])), tensor_decompose(&r, &d, &w(&[0, 1])).unwrap().terms);
    }

    #[test]
    fn a2_adjoint_squared() {
        let r = rs("A2");
        let d = weight_diagram(&r, r.theta()).unwrap();
        let dec = tensor_decompose(&r, &d, r.theta()).unwrap();
        let expected: BTreeMap<Weight, u64> =
            [(w(&[2, 2]), 1), (w(&[3, 0]), 1), (w(&[0, 3]), 1), (w(&[1, 1]), 2), (w(&[0, 0]), 1)].into_iter().collect();
        assert_eq!(dec.terms, expected);
        assert_eq!(greedy_decompose(&r, r.theta(), r.theta()), expected);
    }

    #[test]
    fn decomposition_agrees_with_oracle_and_pointwise_formula() {
        for t in ["A2", "B2", "G2"] {
            let r = rs(t);
            let weights: Vec<Weight> = [[0, 0], [1, 0], [0, 1], [1, 1], [2, 0]].iter().map(|c| w(c)).collect();
            for lambda in &weights {
                let d = weight_diagram(&r, lambda).unwrap();
                for mu in &weights {
                    let dec = tensor_decompose(&r, &d, mu).unwrap();
                    assert_eq!(dec.terms, greedy_decompose(&r, lambda, mu), "{t} ({lambda})x({mu})");
                    for (nu, &m) in &dec.terms {
                        assert_eq!(tensor_multiplicity(&r, &d, mu, nu).unwrap(), m);
                        // support lies in beta + mu
                        assert!(d.contains(&(nu - mu)));
                    }
                    let dim: u64 = dec.terms.iter().map(|(nu, m)| m * weight_diagram(&r, nu).unwrap().dimension()).sum();
                    assert_eq!(dim, d.dimension() * weight_diagram(&r, mu).unwrap().dimension());
                }
            }
        }
    }

    #[test]
    fn rejects_non_dominant_inputs() {
        let r = rs("A2");
        let d = weight_diagram(&r, &w(&[1, 0])).unwrap();
        assert!(tensor_multiplicity(&r, &d, &w(&[-1, 0]), &w(&[0, 0])).is_err());
        assert!(tensor_multiplicity(&r, &d, &w(&[1, 0]), &w(&[0, -1])).is_err());
        assert!(tensor_decompose(&r, &d, &w(&[0, -2])).is_err());
    }

    #[test]
    fn weight_strings() {
        let a1 = rs("A1");
        let d = weight_diagram(&a1, &w(&[2])).unwrap();
        let s = weight_string(&d, &w(&[0]), a1.simple_root(0)).unwrap();
        assert_eq!((s.down, s.up), (1, 1));
        assert_eq!(stability_threshold(&a1, &d, &w(&[0]), 0).unwrap(), 1);
        assert_eq!(stability_threshold(&a1, &d, &w(&[2]), 0).unwrap(), 0);
        assert!(weight_string(&d, &w(&[1]), a1.simple_root(0)).is_err());

        let a2 = rs("A2");
        let d = weight_diagram(&a2, a2.theta()).unwrap();
        let s = weight_string(&d, &w(&[0, 0]), a2.theta()).unwrap();
        assert_eq!((s.down, s.up), (1, 1));
        assert_eq!(stability_threshold(&a2, &d, &w(&[0, 0]), 0).unwrap(), 1);
        for j in 0..2 {
            assert_eq!(stability_threshold(&a2, &d, a2.theta(), j).unwrap(), 0);
        }
        assert!(stability_threshold(&a2, &d, &w(&[0, 0]), 2).is_err());
    }

    #[test]
    fn string_symmetry() {
        for t in ["A2", "B2", "G2"] {
            let r = rs(t);
            let d = weight_diagram(&r, &w(&[2, 1])).unwrap();
            for beta in d.weights() {
                let mut dirs: Vec<Weight> = r.simple_roots().to_vec();
                dirs.push(r.theta().clone());
                for (idx, dir) in dirs.iter().enumerate() {
                    let s = weight_string(&d, beta, dir).unwrap();
                    let pairing = if idx < r.rank() { beta[idx] } else { r.theta_pairing(beta) };
                    assert_eq!(s.up as i64 - s.down as i64, -pairing, "{t} ({beta}) dir {idx}");
                }
            }
        }
    }
}
