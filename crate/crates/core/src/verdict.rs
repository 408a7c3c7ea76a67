use std::fmt;

use crate::ringcore::Exponent;

/// Which clause a partition or ring failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    EmptyClass,
    Overlap,
    Uncovered,
    OutsideUniverse,
    InvalidExponent,
    IdentityClass,
    StarClosure,
    ProductSplit,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::EmptyClass => "empty-class",
            Rule::Overlap => "overlap",
            Rule::Uncovered => "uncovered",
            Rule::OutsideUniverse => "outside-universe",
            Rule::InvalidExponent => "invalid-exponent",
            Rule::IdentityClass => "identity",
            Rule::StarClosure => "star",
            Rule::ProductSplit => "product",
        }
    }
}

/// Machine-readable rejection witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    /// Indices of the offending classes (canonical order), if any.
    pub classes: Vec<usize>,
    /// Offending exponents.
    pub elements: Vec<Exponent>,
    pub message: String,
}

impl Violation {
    pub fn new(rule: Rule, message: impl Into<String>) -> Self {
        Violation { rule, classes: Vec::new(), elements: Vec::new(), message: message.into() }
    }

    pub fn with_classes(mut self, classes: Vec<usize>) -> Self {
        self.classes = classes;
        self
    }

    pub fn with_elements(mut self, elements: Vec<Exponent>) -> Self {
        self.elements = elements;
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule.name(), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    /// Every checkable clause holds on a window or class-list fragment.
    AcceptFragment,
    Reject(Violation),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        !matches!(self, Verdict::Reject(_))
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Reject(v) => Some(v),
            _ => None,
        }
    }
}

/// `{a,b,c}` rendering used in witness messages.
pub(crate) fn fmt_set<'a, I: IntoIterator<Item = &'a Exponent>>(set: I) -> String {
    let items: Vec<String> = set.into_iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}
