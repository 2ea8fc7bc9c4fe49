//! Line-oriented `key: value` certificates.

use std::fmt;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// A number stated as a result of the construction.
    Claim,
    /// A number obtained by an independent computation (brute force,
    /// closed-form formula, round trip).
    Derived,
    /// Bookkeeping: aggregates, shapes, and similar.
    Trivial,
    /// Taken as input without any computational check.
    Axiom,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Claim => "claim",
            Source::Derived => "derived",
            Source::Trivial => "trivial",
            Source::Axiom => "axiom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub source: Source,
    pub pass: bool,
}

impl Check {
    /// A check that passes iff the rendered values agree.
    pub fn eq<E: fmt::Display, C: fmt::Display>(name: &str, expected: E, computed: C, source: Source) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        Self {
            name: name.into(),
            expected,
            computed,
            source,
            pass,
        }
    }

    /// A boolean property; `expected` reads `true`.
    pub fn holds(name: &str, value: bool, source: Source) -> Self {
        Self::eq(name, true, value, source)
    }

    /// A value recorded without comparison.
    pub fn given<V: fmt::Display>(name: &str, value: V) -> Self {
        let v = value.to_string();
        Self {
            name: name.into(),
            expected: v.clone(),
            computed: v,
            source: Source::Axiom,
            pass: true,
        }
    }

    pub fn render(&self) -> String {
        format!(
            "check: {} | expected: {} | computed: {} | source: {} | {}",
            self.name,
            self.expected,
            self.computed,
            self.source,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(subject: &str) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render(&self) -> String {
        let mut out = format!("subject: {}\n", self.subject);
        for c in &self.checks {
            out.push_str(&c.render());
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "result: {} ({}/{} checks)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len() - self.failures(),
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_status() {
        let mut c = Certificate::new("demo");
        c.push(Check::eq("count", 3, 3, Source::Derived));
        assert!(c.passed());
        c.push(Check::eq("other", 4, 5, Source::Claim));
        assert!(!c.passed());
        let text = c.render();
        assert!(text.starts_with("subject: demo\n"));
        assert!(text.contains("source: claim | FAIL"));
        assert!(text.ends_with("result: FAIL (1/2 checks)\n"));
    }
}
