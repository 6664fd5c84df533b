//! In-memory OWL model and the frame-style constructors the pattern
//! generators are written against.

mod iri;
mod model;
mod ontology;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use iri::Iri;
pub use model::{
    Annotation, AnnotationValue, Axiom, AxiomKind, ClassExpression, Entity, EntityKind, Literal,
};
pub use ontology::{is_builtin, rdfs_label, rdfs_see_also, vocab, Ontology, DEFAULT_PREFIXES};

use crate::error::{Error, Result};

/// One frame of a class definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    SubClass(ClassExpression),
    Equivalent(ClassExpression),
    Annotation(Annotation),
}

/// The keyword frames accepted by [`owl_class`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassFrames {
    pub label: Option<String>,
    pub subclass: Vec<ClassExpression>,
    pub equivalent: Vec<ClassExpression>,
    pub annotations: Vec<Annotation>,
}

impl ClassFrames {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn subclass(mut self, sup: impl Into<ClassExpression>) -> Self {
        self.subclass.push(sup.into());
        self
    }

    pub fn subclasses(mut self, sups: impl IntoIterator<Item = ClassExpression>) -> Self {
        self.subclass.extend(sups);
        self
    }

    pub fn equivalent(mut self, expr: impl Into<ClassExpression>) -> Self {
        self.equivalent.push(expr.into());
        self
    }

    pub fn annotation(mut self, annotation: Annotation) -> Self {
        self.annotations.push(annotation);
        self
    }

    pub fn frame(mut self, frame: Frame) -> Self {
        match frame {
            Frame::SubClass(e) => self.subclass.push(e),
            Frame::Equivalent(e) => self.equivalent.push(e),
            Frame::Annotation(a) => self.annotations.push(a),
        }
        self
    }
}

/// Declares a class under the ontology's default namespace and attaches its
/// frames. Returns the named expression for reuse in other definitions.
pub fn owl_class(ont: &mut Ontology, name: &str, frames: ClassFrames) -> Result<ClassExpression> {
    let iri = ont.entity(name)?;
    owl_class_iri(ont, iri, frames)
}

/// [`owl_class`] for an IRI that is already resolved.
pub fn owl_class_iri(ont: &mut Ontology, iri: Iri, frames: ClassFrames) -> Result<ClassExpression> {
    if let Some(existing) = ont.kind_of(&iri).filter(|k| *k != EntityKind::Class) {
        return Err(Error::KindConflict {
            iri,
            existing,
            requested: EntityKind::Class,
        });
    }
    for expr in frames.subclass.iter().chain(&frames.equivalent) {
        expr.validate()?;
    }
    for annotation in &frames.annotations {
        if let Some(existing) = ont
            .kind_of(&annotation.property)
            .filter(|k| *k != EntityKind::AnnotationProperty)
        {
            return Err(Error::KindConflict {
                iri: annotation.property.clone(),
                existing,
                requested: EntityKind::AnnotationProperty,
            });
        }
    }

    let named = ClassExpression::Named(iri.clone());
    ont.declare(Entity::class(iri.clone()))?;
    for sup in frames.subclass {
        ont.add(Axiom::subclass(named.clone(), sup))?;
    }
    for eq in frames.equivalent {
        ont.add(Axiom::EquivalentClasses(vec![named.clone(), eq]))?;
    }
    if let Some(label) = frames.label {
        ont.add(Axiom::AnnotationAssertion {
            subject: iri.clone(),
            annotation: Annotation::literal(rdfs_label(), Literal::plain(label)),
        })?;
    }
    for annotation in frames.annotations {
        add_annotation(ont, &iri, annotation)?;
    }
    Ok(named)
}

/// Attaches an annotation to an entity, declaring the annotation property
/// first unless it is built-in vocabulary.
pub fn add_annotation(ont: &mut Ontology, subject: &Iri, annotation: Annotation) -> Result<()> {
    if !is_builtin(&annotation.property) {
        ont.declare(Entity::annotation_property(annotation.property.clone()))?;
    }
    ont.add(Axiom::AnnotationAssertion {
        subject: subject.clone(),
        annotation,
    })?;
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Characteristics {
    pub functional: bool,
}

impl Characteristics {
    pub fn functional() -> Self {
        Self { functional: true }
    }
}

pub fn declare_property(
    ont: &mut Ontology,
    name: &str,
    kind: EntityKind,
    characteristics: Characteristics,
) -> Result<Iri> {
    let iri = ont.entity(name)?;
    declare_property_iri(ont, iri, kind, characteristics)
}

pub fn declare_property_iri(
    ont: &mut Ontology,
    iri: Iri,
    kind: EntityKind,
    characteristics: Characteristics,
) -> Result<Iri> {
    if kind == EntityKind::Class {
        return Err(Error::KindConflict {
            iri,
            existing: EntityKind::ObjectProperty,
            requested: EntityKind::Class,
        });
    }
    if characteristics.functional && kind != EntityKind::ObjectProperty {
        return Err(Error::InvalidCharacteristic(kind));
    }
    ont.declare(Entity {
        kind,
        iri: iri.clone(),
    })?;
    if characteristics.functional {
        ont.add(Axiom::FunctionalObjectProperty(iri.clone()))?;
    }
    Ok(iri)
}

fn collect_fillers<I>(construct: &'static str, fillers: I) -> Result<Vec<ClassExpression>>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    let out: Vec<ClassExpression> = fillers.into_iter().map(Into::into).collect();
    if out.is_empty() {
        return Err(Error::EmptyOperands(construct));
    }
    Ok(out)
}

/// One existential restriction per filler, in filler order.
pub fn owl_some<I>(property: &Iri, fillers: I) -> Result<Vec<ClassExpression>>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    Ok(collect_fillers("owl_some", fillers)?
        .into_iter()
        .map(|f| ClassExpression::some(property.clone(), f))
        .collect())
}

/// A universal restriction. Several fillers are combined into a union whose
/// operands are deduplicated and put in canonical order; a single filler is
/// used as-is.
pub fn owl_only<I>(property: &Iri, fillers: I) -> Result<ClassExpression>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    let mut fillers = collect_fillers("owl_only", fillers)?;
    fillers.sort();
    fillers.dedup();
    let filler = if fillers.len() == 1 {
        fillers.pop().expect("one filler")
    } else {
        ClassExpression::UnionOf(fillers)
    };
    Ok(ClassExpression::only(property.clone(), filler))
}

/// Intersection preserving operand order. Repeated operands are dropped and
/// a single remaining operand is returned unwrapped.
pub fn owl_and<I>(operands: I) -> Result<ClassExpression>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    nary("owl_and", operands, ClassExpression::IntersectionOf)
}

/// Union preserving operand order; see [`owl_and`].
pub fn owl_or<I>(operands: I) -> Result<ClassExpression>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    nary("owl_or", operands, ClassExpression::UnionOf)
}

fn nary<I>(
    construct: &'static str,
    operands: I,
    build: fn(Vec<ClassExpression>) -> ClassExpression,
) -> Result<ClassExpression>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    let mut ops: Vec<ClassExpression> = Vec::new();
    for op in collect_fillers(construct, operands)? {
        if !ops.contains(&op) {
            ops.push(op);
        }
    }
    Ok(if ops.len() == 1 {
        ops.pop().expect("one operand")
    } else {
        build(ops)
    })
}

pub fn exactly(n: u32, property: &Iri, filler: impl Into<ClassExpression>) -> ClassExpression {
    ClassExpression::exactly(n, property.clone(), filler)
}

/// Number of declared entities per kind; every kind is present.
pub fn count_by_kind(ont: &Ontology) -> BTreeMap<EntityKind, usize> {
    let mut counts: BTreeMap<EntityKind, usize> = [
        EntityKind::Class,
        EntityKind::ObjectProperty,
        EntityKind::AnnotationProperty,
    ]
    .into_iter()
    .map(|k| (k, 0))
    .collect();
    for axiom in ont.axioms() {
        if let Axiom::Declaration(e) = axiom {
            *counts.entry(e.kind).or_default() += 1;
        }
    }
    counts
}

/// Named classes asserted below `class` through SubClassOf edges between
/// named classes. The class itself is not included.
pub fn subclasses_of(ont: &Ontology, class: &Iri, transitive: bool) -> Result<BTreeSet<Iri>> {
    ont.require_class(class)?;
    let mut children: HashMap<&Iri, Vec<&Iri>> = HashMap::new();
    for axiom in ont.axioms() {
        if let Axiom::SubClassOf {
            sub: ClassExpression::Named(sub),
            sup: ClassExpression::Named(sup),
        } = axiom
        {
            children.entry(sup).or_default().push(sub);
        }
    }
    let mut found = BTreeSet::new();
    let mut stack = vec![class];
    while let Some(next) = stack.pop() {
        for &child in children.get(next).into_iter().flatten() {
            if child != class && found.insert(child.clone()) && transitive {
                stack.push(child);
            }
        }
    }
    Ok(found)
}
