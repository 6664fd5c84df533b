use thiserror::Error;

use crate::iscn::IscnError;
use crate::owl::{EntityKind, Iri};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while building or querying an ontology.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid IRI `{0}`: {1}")]
    InvalidIri(String, String),

    #[error("invalid fragment `{0}`: must be non-empty and contain no whitespace")]
    InvalidFragment(String),

    #[error("prefix `{prefix}` already bound to <{existing}>, cannot rebind to <{requested}>")]
    PrefixConflict {
        prefix: String,
        existing: String,
        requested: String,
    },

    #[error("<{iri}> is already declared as {existing}, cannot use it as {requested}")]
    KindConflict {
        iri: Iri,
        existing: EntityKind,
        requested: EntityKind,
    },

    #[error("{0}: empty operand list")]
    EmptyOperands(&'static str),

    #[error("{construct} needs at least {min} operands, found {found}")]
    TooFewOperands {
        construct: &'static str,
        min: usize,
        found: usize,
    },

    #[error("{construct}: duplicate operand {operand}")]
    DuplicateOperand {
        construct: &'static str,
        operand: String,
    },

    #[error("<{0}> is not declared in the ontology")]
    Undeclared(Iri),

    #[error("<{0}> is not a declared class")]
    UnknownClass(Iri),

    #[error("invalid pattern input: {0}")]
    InvalidSpec(String),

    #[error("{0} cannot be functional")]
    InvalidCharacteristic(EntityKind),

    #[error("event cardinality must be at least 1")]
    ZeroCardinality,

    #[error("invalid chromosome `{0}`: expected 1..22, X or Y")]
    InvalidChromosome(String),

    #[error("invalid band name `{0}`")]
    InvalidBand(String),

    #[error("sub-band {band} has no parent band {parent} in the same invocation")]
    MissingParentBand { band: String, parent: String },

    #[error("invalid ChEBI identifier `{0}`: expected CHEBI:<digits>")]
    InvalidChebi(String),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("required scaffold entity `{0}` is missing; build the scaffold first")]
    MissingScaffold(String),

    #[error("line {line}: {message}")]
    Read { line: usize, message: String },

    #[error("{0} cannot be written in this format")]
    Unsupported(String),

    #[error(transparent)]
    Iscn(#[from] IscnError),
}
