//! Verdict-carrying reports.

use std::fmt;

use crate::exact::{SVec, Scalar, Space};

/// A failing instance: the basis tuple and both evaluated sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// The defining identity, quoted.
    pub anchor: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: &str, anchor: &str) -> Check {
        Check { name: name.into(), anchor: anchor.into(), passed: true, witness: None, note: None }
    }

    pub fn fail(name: &str, anchor: &str, witness: Option<Witness>) -> Check {
        Check { name: name.into(), anchor: anchor.into(), passed: false, witness, note: None }
    }

    pub fn verdict(name: &str, anchor: &str, ok: bool) -> Check {
        if ok {
            Check::pass(name, anchor)
        } else {
            Check::fail(name, anchor, None)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Check {
        self.witness = Some(w);
        self
    }
}

/// Runs `cases` until the first mismatch of the two sides. Each case yields
/// the tuple labels, the left and the right side.
pub fn compare<I>(name: &str, anchor: &str, space: &Space, cases: I) -> Check
where
    I: IntoIterator<Item = (Vec<String>, SVec, SVec)>,
{
    for (at, l, r) in cases {
        if l != r {
            let w = Witness { at, lhs: show_vec(space, &l), rhs: show_vec(space, &r) };
            return Check::fail(name, anchor, Some(w));
        }
    }
    Check::pass(name, anchor)
}

/// Renders a sparse vector as a combination of basis labels.
pub fn show_vec(space: &Space, v: &SVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (i, x)) in v.iter().enumerate() {
        let lab = space.labels().get(*i).map(String::as_str).unwrap_or("?");
        let neg = x.is_negative();
        let mag = if neg { x.neg() } else { x.clone() };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            s.push_str(lab);
        } else {
            s.push_str(&format!("{mag}*{lab}"));
        }
    }
    s
}

pub fn show_scalar(x: &Scalar) -> String {
    x.to_string()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "== {}", self.title)?;
        }
        for c in &self.checks {
            write!(f, "{} {}  [{}]", if c.passed { "PASS" } else { "FAIL" }, c.name, c.anchor)?;
            if let Some(n) = &c.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "     at ({}): {}  !=  {}", w.at.join(", "), w.lhs, w.rhs)?;
            }
        }
        Ok(())
    }
}
