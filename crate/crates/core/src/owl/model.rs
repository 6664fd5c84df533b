use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::owl::Iri;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    AnnotationProperty,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    pub kind: EntityKind,
    pub iri: Iri,
}

impl Entity {
    pub fn class(iri: Iri) -> Self {
        Self {
            kind: EntityKind::Class,
            iri,
        }
    }

    pub fn object_property(iri: Iri) -> Self {
        Self {
            kind: EntityKind::ObjectProperty,
            iri,
        }
    }

    pub fn annotation_property(iri: Iri) -> Self {
        Self {
            kind: EntityKind::AnnotationProperty,
            iri,
        }
    }
}

/// A literal value. A language tag and a datatype are never both present;
/// a literal with neither is a plain literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: String,
    lang: Option<String>,
    datatype: Option<Iri>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            lang: None,
            datatype: None,
        }
    }

    pub fn with_lang(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            lang: Some(lang.into()),
            datatype: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Self {
            lexical: lexical.into(),
            lang: None,
            datatype: Some(datatype),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    pub fn datatype(&self) -> Option<&Iri> {
        self.datatype.as_ref()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnnotationValue {
    Literal(Literal),
    Iri(Iri),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Annotation {
    pub property: Iri,
    pub value: AnnotationValue,
}

impl Annotation {
    pub fn literal(property: Iri, literal: Literal) -> Self {
        Self {
            property,
            value: AnnotationValue::Literal(literal),
        }
    }
}

/// Class expression tree.
///
/// Equality is structural and order-preserving: `A or B` and `B or A` are
/// different expressions. Set-valued axioms compare their members
/// order-insensitively, see [`Axiom`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassExpression {
    Named(Iri),
    SomeValuesFrom {
        property: Iri,
        filler: Box<ClassExpression>,
    },
    AllValuesFrom {
        property: Iri,
        filler: Box<ClassExpression>,
    },
    IntersectionOf(Vec<ClassExpression>),
    UnionOf(Vec<ClassExpression>),
    ExactCardinality {
        n: u32,
        property: Iri,
        filler: Box<ClassExpression>,
    },
}

impl ClassExpression {
    pub fn some(property: Iri, filler: impl Into<ClassExpression>) -> Self {
        ClassExpression::SomeValuesFrom {
            property,
            filler: Box::new(filler.into()),
        }
    }

    pub fn only(property: Iri, filler: impl Into<ClassExpression>) -> Self {
        ClassExpression::AllValuesFrom {
            property,
            filler: Box::new(filler.into()),
        }
    }

    pub fn exactly(n: u32, property: Iri, filler: impl Into<ClassExpression>) -> Self {
        ClassExpression::ExactCardinality {
            n,
            property,
            filler: Box::new(filler.into()),
        }
    }

    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ClassExpression::Named(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_named(&self) -> bool {
        matches!(self, ClassExpression::Named(_))
    }

    /// Checks the n-ary operand invariant over the whole tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            ClassExpression::Named(_) => Ok(()),
            ClassExpression::SomeValuesFrom { filler, .. }
            | ClassExpression::AllValuesFrom { filler, .. }
            | ClassExpression::ExactCardinality { filler, .. } => filler.validate(),
            ClassExpression::IntersectionOf(ops) | ClassExpression::UnionOf(ops) => {
                if ops.len() < 2 {
                    return Err(Error::TooFewOperands {
                        construct: self.construct_name(),
                        min: 2,
                        found: ops.len(),
                    });
                }
                ops.iter().try_for_each(ClassExpression::validate)
            }
        }
    }

    fn construct_name(&self) -> &'static str {
        match self {
            ClassExpression::Named(_) => "Class",
            ClassExpression::SomeValuesFrom { .. } => "ObjectSomeValuesFrom",
            ClassExpression::AllValuesFrom { .. } => "ObjectAllValuesFrom",
            ClassExpression::IntersectionOf(_) => "ObjectIntersectionOf",
            ClassExpression::UnionOf(_) => "ObjectUnionOf",
            ClassExpression::ExactCardinality { .. } => "ObjectExactCardinality",
        }
    }

    /// Every IRI mentioned in the tree, classes and properties alike, in
    /// depth-first order.
    pub fn signature(&self) -> Vec<&Iri> {
        let mut out = Vec::new();
        self.collect_signature(&mut out);
        out
    }

    fn collect_signature<'a>(&'a self, out: &mut Vec<&'a Iri>) {
        match self {
            ClassExpression::Named(iri) => out.push(iri),
            ClassExpression::SomeValuesFrom { property, filler }
            | ClassExpression::AllValuesFrom { property, filler }
            | ClassExpression::ExactCardinality {
                property, filler, ..
            } => {
                out.push(property);
                filler.collect_signature(out);
            }
            ClassExpression::IntersectionOf(ops) | ClassExpression::UnionOf(ops) => {
                ops.iter().for_each(|op| op.collect_signature(out))
            }
        }
    }
}

impl From<Iri> for ClassExpression {
    fn from(iri: Iri) -> Self {
        ClassExpression::Named(iri)
    }
}

impl From<&Iri> for ClassExpression {
    fn from(iri: &Iri) -> Self {
        ClassExpression::Named(iri.clone())
    }
}

/// An axiom. `EquivalentClasses` and `DisjointClasses` keep their members
/// in the order given (for serialization) but compare and hash as sets.
#[derive(Clone, Debug)]
pub enum Axiom {
    Declaration(Entity),
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    EquivalentClasses(Vec<ClassExpression>),
    DisjointClasses(Vec<ClassExpression>),
    AnnotationAssertion {
        subject: Iri,
        annotation: Annotation,
    },
    FunctionalObjectProperty(Iri),
}

impl Axiom {
    pub fn subclass(sub: impl Into<ClassExpression>, sup: impl Into<ClassExpression>) -> Self {
        Axiom::SubClassOf {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    pub fn kind(&self) -> AxiomKind {
        match self {
            Axiom::Declaration(_) => AxiomKind::Declaration,
            Axiom::SubClassOf { .. } => AxiomKind::SubClassOf,
            Axiom::EquivalentClasses(_) => AxiomKind::EquivalentClasses,
            Axiom::DisjointClasses(_) => AxiomKind::DisjointClasses,
            Axiom::AnnotationAssertion { .. } => AxiomKind::AnnotationAssertion,
            Axiom::FunctionalObjectProperty(_) => AxiomKind::FunctionalObjectProperty,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Axiom::Declaration(_)
            | Axiom::AnnotationAssertion { .. }
            | Axiom::FunctionalObjectProperty(_) => Ok(()),
            Axiom::SubClassOf { sub, sup } => {
                sub.validate()?;
                sup.validate()
            }
            Axiom::EquivalentClasses(members) | Axiom::DisjointClasses(members) => {
                let construct = match self {
                    Axiom::EquivalentClasses(_) => "EquivalentClasses",
                    _ => "DisjointClasses",
                };
                if members.len() < 2 {
                    return Err(Error::TooFewOperands {
                        construct,
                        min: 2,
                        found: members.len(),
                    });
                }
                for (i, m) in members.iter().enumerate() {
                    m.validate()?;
                    if members[..i].contains(m) {
                        return Err(Error::DuplicateOperand {
                            construct,
                            operand: format!("{m:?}"),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    /// IRIs referenced by the axiom, excluding the entity a declaration
    /// introduces.
    pub fn references(&self) -> Vec<&Iri> {
        match self {
            Axiom::Declaration(_) => Vec::new(),
            Axiom::SubClassOf { sub, sup } => {
                let mut out = sub.signature();
                out.extend(sup.signature());
                out
            }
            Axiom::EquivalentClasses(ms) | Axiom::DisjointClasses(ms) => {
                ms.iter().flat_map(ClassExpression::signature).collect()
            }
            Axiom::AnnotationAssertion {
                subject,
                annotation,
            } => {
                let mut out = vec![subject, &annotation.property];
                if let AnnotationValue::Iri(v) = &annotation.value {
                    out.push(v);
                }
                out
            }
            Axiom::FunctionalObjectProperty(p) => vec![p],
        }
    }

    /// The entity an axiom is about: the declared entity, a named subclass,
    /// the first named member of an equivalence, an annotation subject or a
    /// property. Disjointness and general class axioms have none.
    pub fn subject(&self) -> Option<&Iri> {
        match self {
            Axiom::Declaration(e) => Some(&e.iri),
            Axiom::SubClassOf { sub, .. } => sub.as_named(),
            Axiom::EquivalentClasses(ms) => ms.iter().find_map(ClassExpression::as_named),
            Axiom::DisjointClasses(_) => None,
            Axiom::AnnotationAssertion { subject, .. } => Some(subject),
            Axiom::FunctionalObjectProperty(p) => Some(p),
        }
    }

    fn sorted_members(members: &[ClassExpression]) -> Vec<&ClassExpression> {
        let mut sorted: Vec<_> = members.iter().collect();
        sorted.sort();
        sorted
    }
}

impl PartialEq for Axiom {
    fn eq(&self, other: &Self) -> bool {
        use Axiom::*;
        match (self, other) {
            (Declaration(a), Declaration(b)) => a == b,
            (SubClassOf { sub: a, sup: b }, SubClassOf { sub: c, sup: d }) => a == c && b == d,
            (EquivalentClasses(a), EquivalentClasses(b))
            | (DisjointClasses(a), DisjointClasses(b)) => {
                Axiom::sorted_members(a) == Axiom::sorted_members(b)
            }
            (
                AnnotationAssertion {
                    subject: s1,
                    annotation: a1,
                },
                AnnotationAssertion {
                    subject: s2,
                    annotation: a2,
                },
            ) => s1 == s2 && a1 == a2,
            (FunctionalObjectProperty(a), FunctionalObjectProperty(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Axiom {}

impl Hash for Axiom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Axiom::Declaration(e) => e.hash(state),
            Axiom::SubClassOf { sub, sup } => {
                sub.hash(state);
                sup.hash(state);
            }
            Axiom::EquivalentClasses(ms) | Axiom::DisjointClasses(ms) => {
                Axiom::sorted_members(ms).hash(state)
            }
            Axiom::AnnotationAssertion {
                subject,
                annotation,
            } => {
                subject.hash(state);
                annotation.hash(state);
            }
            Axiom::FunctionalObjectProperty(p) => p.hash(state),
        }
    }
}

/// Axiom kinds in canonical serialization rank order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    FunctionalObjectProperty,
    AnnotationAssertion,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn iri(f: &str) -> Iri {
        Iri::new("http://example.org/t#", f).unwrap()
    }

    #[test]
    fn disjoint_compares_as_set() {
        let a = Axiom::DisjointClasses(vec![iri("A").into(), iri("B").into()]);
        let b = Axiom::DisjointClasses(vec![iri("B").into(), iri("A").into()]);
        assert_eq!(a, b);
        let set: HashSet<_> = [a, b].into_iter().collect();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn union_is_order_sensitive() {
        let ab = ClassExpression::UnionOf(vec![iri("A").into(), iri("B").into()]);
        let ba = ClassExpression::UnionOf(vec![iri("B").into(), iri("A").into()]);
        assert_ne!(ab, ba);
    }

    #[test]
    fn validate_rejects_degenerate_nary() {
        let one = ClassExpression::IntersectionOf(vec![iri("A").into()]);
        assert!(one.validate().is_err());
        let dup = Axiom::DisjointClasses(vec![iri("A").into(), iri("A").into()]);
        assert!(matches!(dup.validate(), Err(Error::DuplicateOperand { .. })));
        let single = Axiom::EquivalentClasses(vec![iri("A").into()]);
        assert!(single.validate().is_err());
    }

    #[test]
    fn literal_forms_are_exclusive() {
        let l = Literal::with_lang("x", "en");
        assert_eq!(l.lang(), Some("en"));
        assert!(l.datatype().is_none());
        let p = Literal::plain("x");
        assert!(p.lang().is_none() && p.datatype().is_none());
    }
}
