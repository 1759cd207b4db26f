//! Run reports for the color command.

use std::fmt;

use brooks_core::{ComponentException, Vertex};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Colored,
    CliqueException,
    OddCycleException,
    Refused,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Colored => "colored",
            Outcome::CliqueException => "clique-exception",
            Outcome::OddCycleException => "odd-cycle-exception",
            Outcome::Refused => "refused",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionReport {
    pub kind: &'static str,
    /// 0-based vertex ids.
    pub vertices: Vec<Vertex>,
}

impl ExceptionReport {
    pub fn from_component(exc: &ComponentException) -> Self {
        match exc {
            ComponentException::Clique { vertices } => ExceptionReport {
                kind: "clique",
                vertices: vertices.clone(),
            },
            ComponentException::OddCycle { vertices } => ExceptionReport {
                kind: "odd-cycle",
                vertices: vertices.clone(),
            },
        }
    }
}

/// Summary of one color run. `verified` is always present when the outcome
/// is `colored`; `coloring` lists the assigned label of each vertex.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub k: usize,
    pub mode: &'static str,
    pub outcome: Outcome,
    pub exceptions: Vec<ExceptionReport>,
    pub wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<i32>>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "instance: n={} m={} max-degree={} k={} mode={}",
            self.n, self.m, self.max_degree, self.k, self.mode
        )?;
        writeln!(f, "outcome: {}", self.outcome.as_str())?;
        for exc in &self.exceptions {
            let ids: Vec<String> = exc.vertices.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "  {} component: vertices {}", exc.kind, ids.join(" "))?;
        }
        if let Some(ok) = self.verified {
            writeln!(f, "verification: {}", if ok { "ok" } else { "FAILED" })?;
        }
        write!(f, "wall time: {:.3} ms", self.wall_ms)
    }
}
