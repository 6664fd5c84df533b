//! Pattern-driven OWL ontology construction.
//!
//! Ontologies are built in memory through frame-style constructors
//! ([`owl`]), expanded from reusable design patterns ([`patterns`],
//! [`pizza`], [`karyotype`], [`sio`]), compiled from ISCN karyotype strings
//! ([`iscn`]) and written out deterministically ([`serializer`]).

pub mod builds;
pub mod error;
pub mod iscn;
pub mod karyotype;
pub mod owl;
pub mod patterns;
pub mod pizza;
pub mod serializer;
pub mod sio;
pub mod validate;

pub use error::{Error, Result};
pub use owl::{Axiom, ClassExpression, Iri, Ontology};
