use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::owl::iri::{check_base, check_fragment};
use crate::owl::model::{Annotation, AnnotationValue, Axiom, ClassExpression, Entity, EntityKind};
use crate::owl::Iri;

pub mod vocab {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const DC_TERMS: &str = "http://purl.org/dc/terms/";

    /// Vocabulary terms that never need a declaration.
    pub const BUILTINS: &[&str] = &[
        "http://www.w3.org/2000/01/rdf-schema#label",
        "http://www.w3.org/2000/01/rdf-schema#comment",
        "http://www.w3.org/2000/01/rdf-schema#seeAlso",
        "http://www.w3.org/2000/01/rdf-schema#isDefinedBy",
        "http://www.w3.org/2002/07/owl#versionInfo",
        "http://www.w3.org/2002/07/owl#deprecated",
        "http://www.w3.org/2002/07/owl#Thing",
        "http://www.w3.org/2002/07/owl#Nothing",
    ];
}

pub const DEFAULT_PREFIXES: [(&str, &str); 4] = [
    ("owl", vocab::OWL),
    ("rdf", vocab::RDF),
    ("rdfs", vocab::RDFS),
    ("xsd", vocab::XSD),
];

pub fn is_builtin(iri: &Iri) -> bool {
    vocab::BUILTINS.contains(&iri.as_str())
}

pub fn rdfs_label() -> Iri {
    Iri::new(vocab::RDFS, "label").expect("static IRI")
}

pub fn rdfs_see_also() -> Iri {
    Iri::new(vocab::RDFS, "seeAlso").expect("static IRI")
}

/// The build target: a prefix map plus an insertion-ordered, duplicate-free
/// set of axioms.
///
/// All entities created through fragment names live under one default
/// namespace, `<ontology iri>#` unless overridden.
#[derive(Clone, Debug)]
pub struct Ontology {
    iri: Iri,
    namespace: String,
    prefixes: BTreeMap<String, String>,
    axioms: IndexSet<Axiom>,
    kinds: HashMap<Iri, EntityKind>,
}

impl Ontology {
    pub fn new<I, K, V>(iri: Iri, prefixes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let mut map: BTreeMap<String, String> = DEFAULT_PREFIXES
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        for (name, uri) in prefixes {
            let (name, uri) = (name.into(), uri.into());
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidIri(
                    uri,
                    format!("invalid prefix name `{name}`"),
                ));
            }
            check_base(&uri)?;
            match map.get(&name) {
                Some(existing) if *existing != uri => {
                    return Err(Error::PrefixConflict {
                        prefix: name,
                        existing: existing.clone(),
                        requested: uri,
                    })
                }
                _ => {
                    map.insert(name, uri);
                }
            }
        }
        let namespace = format!("{iri}#");
        Ok(Self {
            iri,
            namespace,
            prefixes: map,
            axioms: IndexSet::new(),
            kinds: HashMap::new(),
        })
    }

    /// Replaces the default namespace. Only meaningful before any entity
    /// has been created.
    pub fn with_namespace(mut self, namespace: &str) -> Result<Self> {
        check_base(namespace)?;
        self.namespace = namespace.to_string();
        Ok(self)
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    pub fn namespace(&self) -> &str {
        &self.namespace
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    /// The IRI a fragment name denotes under the default namespace.
    pub fn entity(&self, fragment: &str) -> Result<Iri> {
        check_fragment(fragment)?;
        Iri::new(&self.namespace, fragment)
    }

    /// Resolves `<full-iri>`, `prefix:local` or a bare fragment.
    pub fn resolve(&self, text: &str) -> Result<Iri> {
        if let Some(full) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            return Iri::parse(full);
        }
        if let Some((prefix, local)) = text.split_once(':') {
            if prefix.is_empty() {
                return self.entity(local);
            }
            if let Some(base) = self.prefixes.get(prefix) {
                return Iri::new(base, local);
            }
            if !local.starts_with("//") {
                return Err(Error::InvalidIri(
                    text.to_string(),
                    format!("unknown prefix `{prefix}`"),
                ));
            }
            return Iri::parse(text);
        }
        self.entity(text)
    }

    /// Adds an axiom. Returns `false` when it was already present.
    pub fn add(&mut self, axiom: Axiom) -> Result<bool> {
        axiom.validate()?;
        match &axiom {
            Axiom::Declaration(entity) => self.check_kind(&entity.iri, entity.kind)?,
            Axiom::FunctionalObjectProperty(p) => self.check_kind(p, EntityKind::ObjectProperty)?,
            Axiom::AnnotationAssertion { annotation, .. } => {
                self.check_kind(&annotation.property, EntityKind::AnnotationProperty)?
            }
            _ => {}
        }
        if let Axiom::Declaration(entity) = &axiom {
            self.kinds.insert(entity.iri.clone(), entity.kind);
        }
        Ok(self.axioms.insert(axiom))
    }

    pub fn declare(&mut self, entity: Entity) -> Result<bool> {
        self.add(Axiom::Declaration(entity))
    }

    fn check_kind(&self, iri: &Iri, requested: EntityKind) -> Result<()> {
        match self.kinds.get(iri) {
            Some(&existing) if existing != requested => Err(Error::KindConflict {
                iri: iri.clone(),
                existing,
                requested,
            }),
            _ => Ok(()),
        }
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn kind_of(&self, iri: &Iri) -> Option<EntityKind> {
        self.kinds.get(iri).copied()
    }

    pub fn is_class(&self, iri: &Iri) -> bool {
        self.kind_of(iri) == Some(EntityKind::Class)
    }

    pub fn require_class(&self, iri: &Iri) -> Result<()> {
        if self.is_class(iri) {
            Ok(())
        } else {
            Err(Error::UnknownClass(iri.clone()))
        }
    }

    /// Declared entities of one kind, in declaration order.
    pub fn declared(&self, kind: EntityKind) -> impl Iterator<Item = &Iri> {
        self.axioms.iter().filter_map(move |a| match a {
            Axiom::Declaration(e) if e.kind == kind => Some(&e.iri),
            _ => None,
        })
    }

    pub fn annotations(&self, subject: &Iri) -> impl Iterator<Item = &Annotation> {
        let subject = subject.clone();
        self.axioms.iter().filter_map(move |a| match a {
            Axiom::AnnotationAssertion {
                subject: s,
                annotation,
            } if *s == subject => Some(annotation),
            _ => None,
        })
    }

    pub fn label(&self, subject: &Iri) -> Option<&str> {
        let label = rdfs_label();
        self.annotations(subject)
            .find(|a| a.property == label)
            .and_then(|a| match &a.value {
                AnnotationValue::Literal(l) => Some(l.lexical()),
                AnnotationValue::Iri(_) => None,
            })
    }

    /// Superclass expressions asserted for a named class, in insertion order.
    pub fn superclasses(&self, class: &Iri) -> Vec<&ClassExpression> {
        self.axioms
            .iter()
            .filter_map(|a| match a {
                Axiom::SubClassOf {
                    sub: ClassExpression::Named(s),
                    sup,
                } if s == class => Some(sup),
                _ => None,
            })
            .collect()
    }

    /// The axioms about `subject` together with declarations for every
    /// entity they mention, as a standalone ontology.
    pub fn fragment(&self, subject: &Iri) -> Ontology {
        let about: Vec<&Axiom> = self.axioms.iter().filter(|a| a.subject() == Some(subject)).collect();
        let mut out = Ontology {
            iri: self.iri.clone(),
            namespace: self.namespace.clone(),
            prefixes: self.prefixes.clone(),
            axioms: IndexSet::new(),
            kinds: HashMap::new(),
        };
        let mentioned = about.iter().flat_map(|a| a.references()).chain(std::iter::once(subject));
        let mut seen = HashSet::new();
        for iri in mentioned {
            if let (Some(kind), true) = (self.kinds.get(iri), seen.insert(iri)) {
                out.kinds.insert(iri.clone(), *kind);
                out.axioms.insert(Axiom::Declaration(Entity { kind: *kind, iri: iri.clone() }));
            }
        }
        for axiom in about {
            out.axioms.insert(axiom.clone());
        }
        out
    }

    /// IRIs used by some axiom but never declared; sorted and deduplicated.
    /// Built-in vocabulary is exempt.
    pub fn finalize_check(&self) -> Vec<Iri> {
        let undeclared: BTreeSet<&Iri> = self
            .axioms
            .iter()
            .flat_map(Axiom::references)
            .filter(|iri| !self.kinds.contains_key(*iri) && !is_builtin(iri))
            .collect();
        undeclared.into_iter().cloned().collect()
    }
}

/// Structural equality: same IRI, namespace, prefixes and axiom set.
impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.iri == other.iri
            && self.namespace == other.namespace
            && self.prefixes == other.prefixes
            && self.axioms == other.axioms
    }
}

impl Eq for Ontology {}
