//! Scenario files: an orthonormal system, one operator `αI + Σ λᵢ Pᵢ` over
//! it, and a list of queries.

use std::sync::Arc;

use nacalc::measure::{Clopen, TaggedPartition};
use nacalc::spectral::PointRef;
use nacalc::verify::Suite;
use nacalc::{FieldElem, OpRepr, OpSY, OrthoSystem, Vec0};
use serde::Deserialize;

use crate::func::{FuncExpr, FuncSpec};
use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub y_system: Vec<Vec0>,
    #[serde(default = "FieldElem::zero")]
    pub alpha: FieldElem,
    pub lambda: Vec<FieldElem>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Query {
    Spectrum {
        /// Operators whose characters are tabulated on every point.
        #[serde(default)]
        gelfand: Vec<OpRepr>,
    },
    Resolvent {
        z: FieldElem,
    },
    Project {
        k: PointArg,
    },
    Measure {
        clopen: Clopen,
    },
    Integrate {
        f: FuncSpec,
        clopen: Clopen,
    },
    Riemann {
        f: FuncSpec,
        partition: TaggedPartition,
    },
    Verify {
        suite: String,
        n: Option<usize>,
        trials: Option<usize>,
        seed: Option<u64>,
    },
}

/// A spectrum point given as an id (`"p2"`, `"zero"`) or a bare index.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointArg {
    Index(usize),
    Id(String),
}

impl PointArg {
    fn to_ref(&self) -> Result<PointRef, String> {
        match self {
            PointArg::Index(0) => Ok(PointRef::Zero),
            PointArg::Index(k) => Ok(PointRef::Point(*k)),
            PointArg::Id(s) => s.parse().map_err(|e: nacalc::Error| e.to_string()),
        }
    }
}

/// A query with every payload parsed; only checks that need the spectrum
/// remain.
#[derive(Clone, Debug)]
pub enum Task {
    Spectrum {
        gelfand: Vec<OpSY>,
    },
    Resolvent {
        z: FieldElem,
    },
    Project {
        k: PointRef,
    },
    Measure {
        clopen: Clopen,
    },
    Integrate {
        f: FuncExpr,
        text: String,
        clopen: Clopen,
    },
    Riemann {
        f: FuncExpr,
        text: String,
        partition: TaggedPartition,
    },
    Verify {
        suite: Suite,
        n: usize,
        trials: usize,
        seed: Option<u64>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Spectrum { .. } => "spectrum",
            Task::Resolvent { .. } => "resolvent",
            Task::Project { .. } => "project",
            Task::Measure { .. } => "measure",
            Task::Integrate { .. } => "integrate",
            Task::Riemann { .. } => "riemann",
            Task::Verify { .. } => "verify",
        }
    }
}

pub struct Prepared {
    pub operator: OpSY,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        serde_json::from_str(text).map_err(CliError::Json)
    }

    pub fn prepare(&self) -> Result<Prepared, CliError> {
        let system = OrthoSystem::new(self.y_system.clone()).map_err(|e| CliError::input("y_system", e))?;
        let system = Arc::new(system);
        let operator = OpSY::new(system.clone(), self.alpha.clone(), self.lambda.clone())
            .map_err(|e| CliError::input("lambda", e))?;
        let tasks = self
            .queries
            .iter()
            .enumerate()
            .map(|(i, q)| prepare_query(q, &system).map_err(|msg| CliError::Input(format!("query {}: {msg}", i + 1))))
            .collect::<Result<_, _>>()?;
        Ok(Prepared { operator, tasks })
    }
}

fn func_text(f: &FuncSpec) -> String {
    match f {
        FuncSpec::Text(s) => s.trim().to_string(),
        FuncSpec::Repr(r) => serde_json::to_string(r).expect("serialisable"),
    }
}

fn prepare_query(q: &Query, system: &Arc<OrthoSystem>) -> Result<Task, String> {
    Ok(match q {
        Query::Spectrum { gelfand } => Task::Spectrum {
            gelfand: gelfand
                .iter()
                .map(|r| r.clone().into_op(system.clone()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?,
        },
        Query::Resolvent { z } => Task::Resolvent { z: z.clone() },
        Query::Project { k } => Task::Project { k: k.to_ref()? },
        Query::Measure { clopen } => Task::Measure { clopen: clopen.clone() },
        Query::Integrate { f, clopen } => Task::Integrate {
            f: f.parse().map_err(|e| e.to_string())?,
            text: func_text(f),
            clopen: clopen.clone(),
        },
        Query::Riemann { f, partition } => Task::Riemann {
            f: f.parse().map_err(|e| e.to_string())?,
            text: func_text(f),
            partition: partition.clone(),
        },
        Query::Verify { suite, n, trials, seed } => {
            let defaults = nacalc::verify::SuiteConfig::default();
            Task::Verify {
                suite: suite.parse().map_err(|e: nacalc::Error| e.to_string())?,
                n: n.unwrap_or(defaults.rank),
                trials: trials.unwrap_or(defaults.trials),
                seed: *seed,
            }
        }
    })
}
