//! Shared state for one Cartan type: the root system, resource caps, and
//! caches of weight diagrams and constructed modules.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::multiplicity::{weight_diagram, WeightDiagram};
use crate::repspace::{build_module, RepModule, DEFAULT_MAX_MODULE_DIM};
use crate::rootdata::{CartanType, RootSystem, DEFAULT_MAX_WEYL_ORDER};
use crate::tensor::{self, TensorDecomposition};
use crate::weight::Weight;

pub const DEFAULT_MAX_FZ_DIM: u64 = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest module built explicitly.
    pub max_dim: u64,
    /// Largest Weyl group accepted.
    pub max_weyl: u64,
    /// Largest `dim V^lambda * dim V^mu` for the Frenkel-Zhu backend.
    pub max_fz_dim: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: DEFAULT_MAX_MODULE_DIM, max_weyl: DEFAULT_MAX_WEYL_ORDER, max_fz_dim: DEFAULT_MAX_FZ_DIM }
    }
}

/// Caches are safe for concurrent readers; insertion takes the write lock
/// only after the value has been computed.
#[derive(Debug)]
pub struct Context {
    rs: RootSystem,
    limits: Limits,
    diagrams: RwLock<HashMap<Weight, Arc<WeightDiagram>>>,
    modules: RwLock<HashMap<Weight, Arc<RepModule>>>,
}

impl Context {
    pub fn new(t: CartanType, limits: Limits) -> Result<Self> {
        Ok(Self::from_root_system(RootSystem::with_weyl_cap(t, limits.max_weyl)?, limits))
    }

    pub fn from_root_system(rs: RootSystem, limits: Limits) -> Self {
        Context { rs, limits, diagrams: RwLock::default(), modules: RwLock::default() }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn dimension(&self, lambda: &Weight) -> u64 {
        self.rs.weyl_dimension(lambda).to_u64().unwrap_or(u64::MAX)
    }

    pub fn diagram(&self, lambda: &Weight) -> Result<Arc<WeightDiagram>> {
        if let Some(d) = self.diagrams.read().map_err(poisoned)?.get(lambda) {
            return Ok(Arc::clone(d));
        }
        let d = Arc::new(weight_diagram(&self.rs, lambda)?);
        let mut guard = self.diagrams.write().map_err(poisoned)?;
        Ok(Arc::clone(guard.entry(lambda.clone()).or_insert(d)))
    }

    /// Seeds the diagram cache, e.g. from disk.
    pub fn insert_diagram(&self, d: WeightDiagram) -> Result<()> {
        self.rs.check_dominant(d.highest())?;
        let mut guard = self.diagrams.write().map_err(poisoned)?;
        guard.entry(d.highest().clone()).or_insert_with(|| Arc::new(d));
        Ok(())
    }

    /// Every diagram computed or inserted so far, sorted by highest weight.
    pub fn cached_diagrams(&self) -> Vec<Arc<WeightDiagram>> {
        let guard = match self.diagrams.read() {
            Ok(g) => g,
            Err(p) => p.into_inner(),
        };
        let mut out: Vec<_> = guard.values().cloned().collect();
        out.sort_by(|a, b| a.highest().cmp(b.highest()));
        out
    }

    pub fn module(&self, lambda: &Weight) -> Result<Arc<RepModule>> {
        if let Some(m) = self.modules.read().map_err(poisoned)?.get(lambda) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(build_module(&self.rs, lambda, self.limits.max_dim)?);
        let mut guard = self.modules.write().map_err(poisoned)?;
        Ok(Arc::clone(guard.entry(lambda.clone()).or_insert(m)))
    }

    pub fn tensor_multiplicity(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        let d = self.diagram(lambda)?;
        tensor::tensor_multiplicity(&self.rs, &d, mu, nu)
    }

    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<TensorDecomposition> {
        let d = self.diagram(lambda)?;
        tensor::tensor_decompose(&self.rs, &d, mu)
    }
}

fn poisoned<T>(_: T) -> Error {
    Error::Internal("cache lock poisoned".into())
}
