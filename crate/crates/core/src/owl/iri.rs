use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// An absolute IRI kept as `base + fragment`.
///
/// Equality, ordering and hashing use the rendered form only, so two IRIs
/// that render to the same string are the same IRI regardless of where the
/// split between base and fragment was made.
#[derive(Clone)]
pub struct Iri {
    full: String,
    split: usize,
}

impl Iri {
    pub fn new(base: &str, fragment: &str) -> Result<Self> {
        check_fragment(fragment)?;
        check_base(base)?;
        Ok(Self {
            full: format!("{base}{fragment}"),
            split: base.len(),
        })
    }

    /// Splits a full IRI after its last `#` or `/`.
    pub fn parse(full: &str) -> Result<Self> {
        let split = full
            .rfind(['#', '/'])
            .map(|i| i + 1)
            .ok_or_else(|| Error::InvalidIri(full.to_string(), "no namespace separator".into()))?;
        Self::new(&full[..split], &full[split..])
    }

    pub fn base(&self) -> &str {
        &self.full[..self.split]
    }

    pub fn fragment(&self) -> &str {
        &self.full[self.split..]
    }

    pub fn as_str(&self) -> &str {
        &self.full
    }
}

pub(crate) fn check_fragment(fragment: &str) -> Result<()> {
    if fragment.is_empty() || fragment.chars().any(char::is_whitespace) {
        return Err(Error::InvalidFragment(fragment.to_string()));
    }
    Ok(())
}

pub(crate) fn check_base(base: &str) -> Result<()> {
    if base.chars().any(char::is_whitespace) {
        return Err(Error::InvalidIri(base.to_string(), "contains whitespace".into()));
    }
    url::Url::parse(base)
        .map(|_| ())
        .map_err(|e| Error::InvalidIri(base.to_string(), e.to_string()))
}

impl PartialEq for Iri {
    fn eq(&self, other: &Self) -> bool {
        self.full == other.full
    }
}

impl Eq for Iri {}

impl Hash for Iri {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.full.hash(state)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> Ordering {
        self.full.cmp(&other.full)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.full)
    }
}

impl serde::Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.full)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.full)
    }
}
