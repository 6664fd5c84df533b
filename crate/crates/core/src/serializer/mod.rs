//! Text output: OWL Functional Syntax (written and read back) and
//! Manchester Syntax (written only).

mod functional;
mod manchester;

pub use functional::{functional_axiom, read_functional_subset, to_functional};
pub use manchester::{class_frame, render_expression, to_manchester};

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::owl::{Axiom, Iri, Ontology};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Functional,
    Manchester,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "functional" => Ok(Format::Functional),
            "manchester" => Ok(Format::Manchester),
            _ => Err(format!("unknown format `{s}`, expected functional or manchester")),
        }
    }
}

/// Axiom and frame order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SortOrder {
    InsertionOrder,
    /// By axiom kind, then by rendered text. Independent of build order.
    #[default]
    Canonical,
}

/// How Manchester output names entities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NameStyle {
    /// Short IRI forms: `Pizza`, `rdfs:label`, `<http://...>`.
    #[default]
    Fragment,
    /// The entity's `rdfs:label` in single quotes where it has one.
    Label,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SerializationConfig {
    pub format: Format,
    pub sort: SortOrder,
    pub names: NameStyle,
}

impl SerializationConfig {
    pub fn functional() -> Self {
        Self::default()
    }

    pub fn manchester() -> Self {
        Self {
            format: Format::Manchester,
            ..Self::default()
        }
    }

    pub fn sort(mut self, sort: SortOrder) -> Self {
        self.sort = sort;
        self
    }

    pub fn names(mut self, names: NameStyle) -> Self {
        self.names = names;
        self
    }
}

/// Serializes in the configured format.
pub fn serialize(ont: &Ontology, cfg: &SerializationConfig) -> Result<String> {
    match cfg.format {
        Format::Functional => to_functional(ont, cfg),
        Format::Manchester => to_manchester(ont, cfg),
    }
}

fn check_declared(ont: &Ontology) -> Result<()> {
    match ont.finalize_check().into_iter().next() {
        Some(iri) => Err(Error::Undeclared(iri)),
        None => Ok(()),
    }
}

/// Characters allowed in an abbreviated IRI's local part.
pub(crate) fn is_safe_local(local: &str) -> bool {
    let bytes = local.as_bytes();
    let inner = |b: &u8| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-');
    match (bytes.first(), bytes.last()) {
        (Some(first), Some(last)) => {
            (first.is_ascii_alphanumeric() || *first == b'_')
                && bytes.iter().all(inner)
                && *last != b'.'
        }
        _ => false,
    }
}

/// Abbreviates IRIs against the default namespace and the prefix map.
pub(crate) struct ShortNames<'a> {
    namespace: &'a str,
    prefixes: &'a BTreeMap<String, String>,
}

impl<'a> ShortNames<'a> {
    pub(crate) fn new(ont: &'a Ontology) -> Self {
        Self {
            namespace: ont.namespace(),
            prefixes: ont.prefixes(),
        }
    }

    /// `:local`, `pfx:local` or `<full>`. `default` is what stands before
    /// the local part for the default namespace.
    pub(crate) fn render(&self, iri: &Iri, default: &str) -> String {
        let full = iri.as_str();
        if let Some(local) = full.strip_prefix(self.namespace) {
            if is_safe_local(local) {
                return format!("{default}{local}");
            }
        }
        let best = self
            .prefixes
            .iter()
            .filter(|(_, ns)| full.starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.len());
        if let Some((prefix, ns)) = best {
            let local = &full[ns.len()..];
            if is_safe_local(local) {
                return format!("{prefix}:{local}");
            }
        }
        format!("<{full}>")
    }
}

pub(crate) fn quote_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Splits serializer output into comparable tokens: whitespace separates
/// tokens, `(`, `)` and `,` are tokens of their own, and a quoted string
/// (single or double quotes, with any `@lang` or `^^type` suffix) is one
/// token.
pub fn normalize_tokens(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => flush(&mut current, &mut tokens),
            '(' | ')' | ',' => {
                flush(&mut current, &mut tokens);
                tokens.push(c.to_string());
            }
            '\'' | '"' => {
                current.push(c);
                while let Some(d) = chars.next() {
                    current.push(d);
                    if d == '\\' && c == '"' {
                        if let Some(e) = chars.next() {
                            current.push(e);
                        }
                    } else if d == c {
                        break;
                    }
                }
            }
            _ => current.push(c),
        }
    }
    flush(&mut current, &mut tokens);
    tokens
}

fn flush(current: &mut String, tokens: &mut Vec<String>) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

/// Axioms in output order for the given sort.
pub(crate) fn ordered_axioms<'a>(ont: &'a Ontology, cfg: &SerializationConfig) -> Vec<&'a Axiom> {
    let mut axioms: Vec<&Axiom> = ont.axioms().collect();
    if cfg.sort == SortOrder::Canonical {
        let names = ShortNames::new(ont);
        let mut keyed: Vec<_> = axioms
            .into_iter()
            .map(|a| ((a.kind(), functional::render_axiom(&names, a, true)), a))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        axioms = keyed.into_iter().map(|(_, a)| a).collect();
    }
    axioms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_split_on_parens_and_commas() {
        assert_eq!(
            normalize_tokens("hasTopping only\n   (MozzarellaTopping or TomatoTopping)"),
            ["hasTopping", "only", "(", "MozzarellaTopping", "or", "TomatoTopping", ")"]
        );
        assert_eq!(normalize_tokens("A, B"), ["A", ",", "B"]);
    }

    #[test]
    fn quoted_strings_are_single_tokens() {
        assert_eq!(
            normalize_tokens("'has proper part' some ('hexokinase reaction')"),
            ["'has proper part'", "some", "(", "'hexokinase reaction'", ")"]
        );
        assert_eq!(normalize_tokens(r#"rdfs:label "a \"b\" c"@en x"#), ["rdfs:label", r#""a \"b\" c"@en"#, "x"]);
    }

    #[test]
    fn safe_locals() {
        for ok in ["Pizza", "HumanChromosomeBand1p36.31", "2p21", "to_regulate", "a-b"] {
            assert!(is_safe_local(ok), "{ok}");
        }
        for bad in ["", "a.", "a b", "-a", "a(b)", "a:b", "'x'"] {
            assert!(!is_safe_local(bad), "{bad}");
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("manchester".parse::<Format>().unwrap(), Format::Manchester);
        assert!("turtle".parse::<Format>().is_err());
    }
}
