use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};

/// Which algorithm produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    Complete,
    SimpleSort,
    SociallyOptimal,
    Tree,
    Kcore,
    Heuristic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Complete => "complete",
            Method::SimpleSort => "simple_sort",
            Method::SociallyOptimal => "socially_optimal",
            Method::Tree => "tree",
            Method::Kcore => "kcore",
            Method::Heuristic => "heuristic",
        }
    }

    /// Exact methods certify non-existence; the heuristic cannot.
    pub fn is_exact(self) -> bool {
        self != Method::Heuristic
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oracle" => Method::Oracle,
            "complete" => Method::Complete,
            "simple_sort" => Method::SimpleSort,
            "socially_optimal" => Method::SociallyOptimal,
            "tree" => Method::Tree,
            "kcore" => Method::Kcore,
            "heuristic" => Method::Heuristic,
            other => return Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Psne(ActionProfile),
    NoPsne,
    ApproxPsne { profile: ActionProfile, epsilon: f64 },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Psne(_) => "psne",
            Status::NoPsne => "no_psne",
            Status::ApproxPsne { .. } => "approx_psne",
        }
    }
}

/// Counters a solver may fill in. Zero means "not applicable".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Outer iterations (heuristic) or `k` values examined (complete graphs).
    pub iterations: usize,
    pub evolve_calls: usize,
    pub br_sweeps: usize,
    /// Profiles enumerated by the oracle.
    pub enumerated: u64,
    /// Equilibria found by the oracle or certified by the k-core solver.
    pub psne_found: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: Status,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn new(status: Status, method: Method) -> Self {
        SolveReport {
            status,
            method,
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn psne(profile: ActionProfile, method: Method) -> Self {
        Self::new(Status::Psne(profile), method)
    }

    pub fn no_psne(method: Method) -> Self {
        Self::new(Status::NoPsne, method)
    }

    pub fn with_diagnostics(mut self, diagnostics: Diagnostics) -> Self {
        self.diagnostics = diagnostics;
        self
    }

    pub fn profile(&self) -> Option<&ActionProfile> {
        match &self.status {
            Status::Psne(p) | Status::ApproxPsne { profile: p, .. } => Some(p),
            Status::NoPsne => None,
        }
    }

    pub fn is_psne(&self) -> bool {
        matches!(self.status, Status::Psne(_))
    }

    /// 0 = PSNE found, 1 = certified no PSNE, 2 = approximate only.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Psne(_) => 0,
            Status::NoPsne => 1,
            Status::ApproxPsne { .. } => 2,
        }
    }

    /// Plain-text rendering, one `key: value` per line.
    pub fn render(&self, instance: &BnpgInstance) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method: {}", self.method);
        let _ = writeln!(out, "status: {}", self.status.label());
        if let Some(profile) = self.profile() {
            let _ = writeln!(out, "profile: {profile}");
            let _ = writeln!(out, "investors: {}", profile.invest_count());
            if let Status::ApproxPsne { epsilon, .. } = self.status {
                let _ = writeln!(out, "epsilon: {epsilon}");
            }
            if let Ok(sw) = instance.social_welfare(profile) {
                let _ = writeln!(out, "welfare: {sw}");
            }
        }
        let d = &self.diagnostics;
        for (name, value) in [
            ("iterations", d.iterations as u64),
            ("evolve_calls", d.evolve_calls as u64),
            ("br_sweeps", d.br_sweeps as u64),
            ("enumerated", d.enumerated),
            ("psne_found", d.psne_found as u64),
        ] {
            if value > 0 {
                let _ = writeln!(out, "{name}: {value}");
            }
        }
        out
    }
}
