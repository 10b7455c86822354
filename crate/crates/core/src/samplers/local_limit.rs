use std::collections::VecDeque;

use rand_distr::{Distribution, Poisson};

use crate::rng::RngStream;

use super::SamplerError;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Neighbourhood of the focal vertex in the pruned spine-plus-Galton-Watson tree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalLimitSample {
    pub focal_degree: usize,
    pub focal_in_degree: usize,
    /// Size of the pruned tree containing the focal vertex.
    pub component_size: usize,
    /// Uniform mark of the focal vertex.
    pub focal_mark: f64,
    /// Number of retained spine edges above the focal vertex.
    pub spine_kept: usize,
}

struct Pending {
    mark: f64,
    on_spine: bool,
}

pub fn sample_local_limit(rng: &mut RngStream) -> Result<LocalLimitSample, SamplerError> {
    sample_local_limit_with_budget(rng, DEFAULT_NODE_BUDGET)
}

/// Spine `u0 <- u1 <- ...` plus independent Poisson(1) Galton-Watson trees on every
/// spine vertex, each vertex carrying a uniform mark; an edge `a -> b` survives iff
/// `mark(a) < mark(b)`. Only the focal component is generated, breadth-first, with
/// the spine extended one vertex at a time while its edges survive.
pub fn sample_local_limit_with_budget(
    rng: &mut RngStream,
    budget: usize,
) -> Result<LocalLimitSample, SamplerError> {
    let offspring = Poisson::new(1.0).expect("valid rate");
    let focal_mark = rng.unit();
    let mut queue = VecDeque::new();
    queue.push_back(Pending {
        mark: focal_mark,
        on_spine: true,
    });
    let mut component_size = 1;
    let mut spine_kept = 0;
    let mut focal_out = 0;
    let mut first = true;

    while let Some(Pending { mark, on_spine }) = queue.pop_front() {
        if on_spine {
            let up = rng.unit();
            if up < mark {
                spine_kept += 1;
                component_size += 1;
                queue.push_back(Pending {
                    mark: up,
                    on_spine: true,
                });
            }
        }
        let children = offspring.sample(rng) as usize;
        for _ in 0..children {
            let child = rng.unit();
            if child > mark {
                component_size += 1;
                if first {
                    focal_out += 1;
                }
                queue.push_back(Pending {
                    mark: child,
                    on_spine: false,
                });
            }
        }
        if component_size > budget {
            return Err(SamplerError::BudgetExceeded { budget });
        }
        first = false;
    }

    let focal_in_degree = usize::from(spine_kept > 0);
    Ok(LocalLimitSample {
        focal_degree: focal_in_degree + focal_out,
        focal_in_degree,
        component_size,
        focal_mark,
        spine_kept,
    })
}
