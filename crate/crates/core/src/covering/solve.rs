//! End-to-end Euler family solver for `l`-covering `k`-hypergraphs.

use std::str::FromStr;

use thiserror::Error;

use super::reduce::{lift_family, reduce_once, LiftError, ReduceError, ReductionTrace};
use super::{solve_small_cases, SmallCase, SmallCaseError};
use crate::factor::{solve_even_two_factor, FactorError, FactorSelection};
use crate::hypercore::{Hypergraph, HypergraphError, VertexId};
use crate::trails::{extract_family, EulerFamily};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Gadget matching on the input itself.
    #[default]
    Direct,
    /// Delete vertices down to a 2-covering base, solve it, lift back.
    Reduce,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "reduce" => Ok(Strategy::Reduce),
            other => Err(format!("unknown strategy {other:?} (expected direct or reduce)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoveringError {
    #[error("covering parameter l={0} must be at least 2")]
    BadParameter(usize),
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("edge size k={k} must exceed l={l}")]
    EdgesTooSmall { k: usize, l: usize },
    #[error("not {l}-covering: {witness:?} lies in no edge")]
    NotCovering { l: usize, witness: Vec<VertexId> },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    SmallCase(#[from] SmallCaseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSolution {
    /// `None` when the hypergraph has no Euler family.
    pub family: Option<EulerFamily>,
    /// The selection the family induces (or the one it was built from).
    pub selection: Option<FactorSelection>,
    /// Present for [`Strategy::Reduce`].
    pub trace: Option<ReductionTrace>,
}

fn direct(h: &Hypergraph) -> Result<Option<(EulerFamily, FactorSelection)>, CoveringError> {
    let Some(sel) = solve_even_two_factor(h)? else {
        return Ok(None);
    };
    let family = extract_family(&h.incidence_graph(), h, &sel).expect("solver output is valid");
    Ok(Some((family, sel)))
}

/// Finds an Euler family of an `l`-covering `k`-hypergraph, `2 <= l < k`.
///
/// Hypergraphs with at most one edge have none. With [`Strategy::Reduce`],
/// vertex 0 is deleted `l - 2` times; the 2-covering base is solved by the
/// small-case constructions when they apply and by the gadget solver
/// otherwise, and the family is lifted back through every step.
pub fn solve_l_covering(
    h: &Hypergraph,
    l: usize,
    strategy: Strategy,
) -> Result<CoveringSolution, CoveringError> {
    if l < 2 {
        return Err(CoveringError::BadParameter(l));
    }
    let k = h.uniformity().ok_or(CoveringError::NotUniform)?;
    if k <= l {
        return Err(CoveringError::EdgesTooSmall { k, l });
    }
    if let Some(witness) = h.uncovered_subset(l, Default::default())? {
        return Err(CoveringError::NotCovering { l, witness });
    }
    let none = CoveringSolution {
        family: None,
        selection: None,
        trace: (strategy == Strategy::Reduce).then(ReductionTrace::default),
    };
    if h.size() <= 1 {
        return Ok(none);
    }

    match strategy {
        Strategy::Direct => Ok(match direct(h)? {
            Some((family, sel)) => CoveringSolution {
                family: Some(family),
                selection: Some(sel),
                trace: None,
            },
            None => none,
        }),
        Strategy::Reduce => {
            let mut levels = vec![h.clone()];
            let mut trace = ReductionTrace::default();
            for _ in 2..l {
                let (next, step) = reduce_once(levels.last().expect("non-empty"), 0)?;
                levels.push(next);
                trace.steps.push(step);
            }
            let base = levels.last().expect("non-empty");
            let small = match base.order() >= 3 {
                true => solve_small_cases(base)?,
                false => SmallCase::NotApplicable,
            };
            let mut family = match small {
                SmallCase::Tour(t) => EulerFamily::new(vec![t]).canonical(),
                SmallCase::NotApplicable => match direct(base)? {
                    Some((family, _)) => family,
                    None => {
                        return Ok(CoveringSolution {
                            trace: Some(trace),
                            ..none
                        })
                    }
                },
            };
            for (i, step) in trace.steps.iter().enumerate().rev() {
                family = lift_family(&levels[i + 1], &family, step, &levels[i])?;
            }
            Ok(CoveringSolution {
                selection: Some(family.selection()),
                family: Some(family),
                trace: Some(trace),
            })
        }
    }
}
