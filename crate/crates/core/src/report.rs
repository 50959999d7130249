//! Structured check results. Every entry names its check, window, depth and
//! budget so no claim is reported without its scope.

use serde::{Deserialize, Serialize};

use crate::search::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// `Yes` passes, `No` fails.
    pub fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Status::Pass,
            Verdict::No => Status::Fail,
            Verdict::Undetermined => Status::Undetermined,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub window: String,
    pub depth: usize,
    pub budget: u64,
    pub subject: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl ReportEntry {
    pub fn with_degree(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn with_dimension(mut self, d: usize) -> Self {
        self.dimension = Some(d);
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Shared labels for a batch of entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub window: String,
    pub depth: usize,
    pub budget: u64,
}

impl Scope {
    pub fn new(window: impl Into<String>, depth: usize, budget: u64) -> Self {
        Self { window: window.into(), depth, budget }
    }

    pub fn entry(&self, check: impl Into<String>, subject: impl Into<String>, status: Status) -> ReportEntry {
        ReportEntry {
            check: check.into(),
            window: self.window.clone(),
            depth: self.depth,
            budget: self.budget,
            subject: subject.into(),
            status,
            degree: None,
            dimension: None,
            detail: None,
        }
    }
}

/// A named batch of entries with its aggregate status and the smallest
/// failing subject, ranked by the entries' `dimension` field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckGroup {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    pub entries: Vec<ReportEntry>,
}

impl CheckGroup {
    pub fn new(name: impl Into<String>, mut entries: Vec<ReportEntry>) -> Self {
        sort_entries(&mut entries);
        let status = aggregate(&entries);
        let counterexample = entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .min_by_key(|e| (e.dimension.unwrap_or(usize::MAX), e.subject.clone()))
            .map(|e| format!("{}: {}", e.check, e.subject));
        Self { name: name.into(), status, counterexample, entries }
    }

    /// A group that was not run, with the reason.
    pub fn skipped(name: impl Into<String>, scope: &Scope, reason: &str) -> Self {
        let name = name.into();
        let e = scope.entry(name.clone(), "all", Status::Skipped).with_detail(reason);
        Self::new(name, vec![e])
    }
}

/// Aggregate status: any failure fails, otherwise any undetermined entry
/// leaves the aggregate undetermined. Skipped entries are neutral, and a
/// nonempty batch of nothing but skipped entries is itself skipped.
pub fn aggregate<'a>(entries: impl IntoIterator<Item = &'a ReportEntry>) -> Status {
    let mut out = Status::Pass;
    let mut ran = false;
    let mut any = false;
    for e in entries {
        any = true;
        match e.status {
            Status::Fail => return Status::Fail,
            Status::Undetermined => out = Status::Undetermined,
            Status::Pass => ran = true,
            Status::Skipped => {}
        }
    }
    if any && !ran && out == Status::Pass {
        Status::Skipped
    } else {
        out
    }
}

/// Deterministic order independent of how the entries were produced.
pub fn sort_entries(entries: &mut [ReportEntry]) {
    entries.sort_by(|a, b| {
        (&a.check, &a.window, &a.subject, a.degree, a.depth, &a.detail, a.status)
            .cmp(&(&b.check, &b.window, &b.subject, b.degree, b.depth, &b.detail, b.status))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation_prefers_failures() {
        let s = Scope::new("w", 2, 10);
        let a = s.entry("c", "x", Status::Pass);
        let b = s.entry("c", "y", Status::Undetermined);
        let c = s.entry("c", "z", Status::Fail);
        assert_eq!(aggregate([&a, &b]), Status::Undetermined);
        assert_eq!(aggregate([&a, &b, &c]), Status::Fail);
        assert_eq!(aggregate([&a, &s.entry("c", "s", Status::Skipped)]), Status::Pass);
    }

    #[test]
    fn sorting_is_order_independent() {
        let s = Scope::new("w", 2, 10);
        let mut one = vec![s.entry("b", "x", Status::Pass), s.entry("a", "y", Status::Fail)];
        let mut two = vec![one[1].clone(), one[0].clone()];
        sort_entries(&mut one);
        sort_entries(&mut two);
        assert_eq!(one, two);
    }
}
