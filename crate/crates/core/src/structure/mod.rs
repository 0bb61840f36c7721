//! Structure theory as algorithms: degree and classification, homogeneous
//! decomposition and polarization, translate spans and their dimensions,
//! difference-operator component isolation, and the product-group lift.

mod classify;
mod components;
mod homogeneous;
mod lift;
mod span;

pub use classify::{
    classify, degree, degree_certificate, differences_vanish_sampled, functional_span_bounds,
    is_generalized_polynomial, ClassificationReport,
};
pub use components::{
    isolate_components, isolate_components_oracle, isolating_operators, solve_components,
};
pub use homogeneous::{homogeneous_parts, polarize};
pub use lift::{lift, unlift};
pub use span::{spectral_set, translate_span, TranslateSpan};

use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::expopoly::ExpoPoly;
use crate::group::{GroupElement, GroupSpec};

/// Black-box access to a function on the group. Implementations must be
/// deterministic; the closure is shared, so it must be safe to call from
/// multiple threads.
#[derive(Clone)]
pub struct FunctionOracle {
    group: GroupSpec,
    vector_dim: usize,
    order: u64,
    eval: Arc<dyn Fn(&GroupElement) -> Result<Vec<Cyclotomic>> + Send + Sync>,
}

impl FunctionOracle {
    pub fn new(
        group: GroupSpec,
        vector_dim: usize,
        order: u64,
        eval: Arc<dyn Fn(&GroupElement) -> Result<Vec<Cyclotomic>> + Send + Sync>,
    ) -> FunctionOracle {
        FunctionOracle {
            group,
            vector_dim,
            order,
            eval,
        }
    }

    pub fn from_expo_poly(f: &ExpoPoly) -> FunctionOracle {
        let owned = f.clone();
        FunctionOracle {
            group: f.group().clone(),
            vector_dim: f.vector_dim(),
            order: f.order(),
            eval: Arc::new(move |x| owned.evaluate(x)),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn vector_dim(&self) -> usize {
        self.vector_dim
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn eval(&self, x: &GroupElement) -> Result<Vec<Cyclotomic>> {
        if !self.group.contains(x) {
            return Err(Error::GroupMismatch(format!(
                "oracle evaluated outside its group at {x:?}"
            )));
        }
        (self.eval)(x)
    }
}

impl std::fmt::Debug for FunctionOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionOracle")
            .field("group", &self.group)
            .field("vector_dim", &self.vector_dim)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}
