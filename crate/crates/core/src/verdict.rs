use std::fmt;

/// Outcome of a law check: either it holds, or it fails with a witness
/// describing the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { witness: String },
}

impl Verdict {
    pub fn fails(witness: impl Into<String>) -> Self {
        Verdict::Fails {
            witness: witness.into(),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }

    /// Keeps the first failure.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds => other(),
            fail => fail,
        }
    }

    pub fn context(self, ctx: &str) -> Verdict {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails { witness } => Verdict::fails(format!("{ctx}: {witness}")),
        }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::fails(witness())
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails { witness } => write!(f, "fails: {witness}"),
        }
    }
}

/// Collects verdicts over a family of cases, stopping at the first failure.
pub fn all<I>(cases: I) -> Verdict
where
    I: IntoIterator<Item = Verdict>,
{
    for v in cases {
        if !v.holds() {
            return v;
        }
    }
    Verdict::Holds
}
