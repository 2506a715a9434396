//! Pass/fail reports shared by all checkers.

use serde::Serialize;

/// Comparison tolerance, absolute on entries and relative on norms.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn get(self) -> f64 {
        self.0
    }

    /// True when `residual` is within tolerance.
    pub fn accepts(self, residual: f64) -> bool {
        residual.is_finite() && residual <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

/// One named identity and its worst observed residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
}

/// Outcome of a verification routine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new(), witnesses: Vec::new() }
    }

    /// Record a residual-based check.
    pub fn residual(&mut self, name: impl Into<String>, residual: f64, tol: Tolerance) -> &mut Self {
        let passed = tol.accepts(residual);
        self.checks.push(Check { name: name.into(), residual, passed });
        self
    }

    /// Record a boolean check; residual is 0 on success and 1 on failure.
    pub fn flag(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.checks.push(Check { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, passed: ok });
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    /// Append all checks of `other`, prefixing their names.
    pub fn absorb(&mut self, other: Report) -> &mut Self {
        for c in other.checks {
            self.checks.push(Check { name: format!("{}/{}", other.name, c.name), ..c });
        }
        self.witnesses.extend(other.witnesses);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: {} (max residual {:.3e})", self.name, if self.passed() { "pass" } else { "FAIL" }, self.max_residual())?;
        for c in &self.checks {
            writeln!(f, "  [{}] {} {:.3e}", if c.passed { "ok" } else { "!!" }, c.name, c.residual)?;
        }
        for w in &self.witnesses {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}
