//! Construction patterns for a SIO-style ontology: safe identifiers,
//! described classes, atoms with optional ChEBI links, the biochemical
//! pathway pattern and annotation audits.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::owl::{
    add_annotation, declare_property, owl_and, owl_class, owl_class_iri, owl_some, rdfs_label,
    rdfs_see_also, subclasses_of, vocab, Annotation, Characteristics,
    ClassExpression, ClassFrames, Entity, EntityKind, Frame, Iri, Literal, Ontology,
};

pub const PROCESS: &str = "process";
pub const ATOM: &str = "atom";
pub const PATHWAY: &str = "pathway";
pub const BIOCHEMICAL_REACTION: &str = "biochemical reaction";
pub const HAS_PROPER_PART: &str = "has proper part";
pub const PRECEDES: &str = "precedes";

const RESERVED: &[&str] = &["true", "false", "nil"];

/// Turns a label into an identifier matching `[A-Za-z_][A-Za-z0-9_]*`.
///
/// Characters outside `[A-Za-z0-9_]` become `_`, runs of `_` collapse, a
/// leading digit is prefixed with `n`, and reserved words get an `_entity`
/// suffix. Case is kept.
pub fn make_safe(label: &str) -> Result<String> {
    if label.is_empty() {
        return Err(Error::Empty("label"));
    }
    let mut out = String::with_capacity(label.len() + 1);
    for c in label.chars() {
        let c = if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' };
        if c == '_' && out.ends_with('_') {
            continue;
        }
        out.push(c);
    }
    if out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert(0, 'n');
    }
    if RESERVED.contains(&out.as_str()) {
        out.push_str("_entity");
    }
    Ok(out)
}

pub fn dc_description() -> Iri {
    Iri::new(vocab::DC_TERMS, "description").expect("static IRI")
}

/// A `dc:description` annotation in English.
pub fn desc(description: &str) -> Result<Annotation> {
    if description.is_empty() {
        return Err(Error::Empty("description"));
    }
    Ok(Annotation::literal(dc_description(), Literal::with_lang(description, "en")))
}

/// An `rdfs:seeAlso` annotation with a plain literal.
pub fn see_also(value: &str) -> Result<Annotation> {
    if value.is_empty() {
        return Err(Error::Empty("seeAlso value"));
    }
    Ok(Annotation::literal(rdfs_see_also(), Literal::plain(value)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SioClassSpec {
    pub name: String,
    pub parent: ClassExpression,
    pub description: String,
    pub extra_frames: Vec<Frame>,
}

impl SioClassSpec {
    pub fn new(name: impl Into<String>, parent: impl Into<ClassExpression>, description: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            parent: parent.into(),
            description: description.into(),
            extra_frames: Vec::new(),
        }
    }

    pub fn frame(mut self, frame: Frame) -> Self {
        self.extra_frames.push(frame);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Empty("class name"));
        }
        if self.description.is_empty() {
            return Err(Error::Empty("description"));
        }
        self.parent.validate()
    }
}

/// Declares `make_safe(name)` under `parent`, labelled with the original
/// name and described. A named parent that is not yet declared is declared
/// as a class.
pub fn sio_class(ont: &mut Ontology, spec: &SioClassSpec) -> Result<ClassExpression> {
    spec.validate()?;
    let iri = ont.entity(&make_safe(&spec.name)?)?;
    if let Some(parent) = spec.parent.as_named() {
        if ont.kind_of(parent).is_none() {
            ont.declare(Entity::class(parent.clone()))?;
        }
    }
    let mut frames = ClassFrames::new()
        .subclass(spec.parent.clone())
        .label(spec.name.clone())
        .annotation(desc(&spec.description)?);
    for frame in &spec.extra_frames {
        frames = frames.frame(frame.clone());
    }
    owl_class_iri(ont, iri, frames)
}

fn labelled_property(ont: &mut Ontology, label: &str) -> Result<Iri> {
    let iri = declare_property(ont, &make_safe(label)?, EntityKind::ObjectProperty, Characteristics::default())?;
    add_annotation(ont, &iri, Annotation::literal(rdfs_label(), Literal::plain(label)))?;
    Ok(iri)
}

/// A minimal upper layer: entity, object, process, role, atom, pathway,
/// biochemical reaction and reactant role, plus the `has_proper_part` and
/// `precedes` properties.
pub fn sio_scaffold(ont: &mut Ontology) -> Result<()> {
    owl_class(
        ont,
        "entity",
        ClassFrames::new()
            .label("entity")
            .annotation(desc("Anything that exists or is conceived of.")?),
    )?;
    let classes = [
        ("object", "entity", "An entity that persists through time while keeping its identity."),
        (PROCESS, "entity", "An entity that unfolds in time and has temporal parts."),
        ("role", "entity", "A realizable entity that an object bears in some context."),
        (ATOM, "object", "The smallest unit of a chemical element."),
        (PATHWAY, PROCESS, "A process made of an ordered series of steps."),
        (BIOCHEMICAL_REACTION, PROCESS, "A process that converts reactants into products."),
        ("reactant role", "role", "The role of a substance consumed by a reaction."),
    ];
    for (name, parent, description) in classes {
        let parent = ont.entity(&make_safe(parent)?)?;
        sio_class(ont, &SioClassSpec::new(name, parent, description))?;
    }
    labelled_property(ont, HAS_PROPER_PART)?;
    labelled_property(ont, PRECEDES)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub name: String,
    #[serde(default)]
    pub chebi: Option<String>,
}

impl AtomSpec {
    pub fn new(name: impl Into<String>, chebi: Option<&str>) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            chebi: chebi.map(str::to_string),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Empty("atom name"));
        }
        if let Some(chebi) = &self.chebi {
            let ok = chebi
                .strip_prefix("CHEBI:")
                .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
            if !ok {
                return Err(Error::InvalidChebi(chebi.clone()));
            }
        }
        Ok(())
    }
}

/// Reads a JSON array of `{"name": ..., "chebi": "CHEBI:n" | null}`.
pub fn load_atoms(json: &str) -> Result<Vec<AtomSpec>> {
    let atoms: Vec<AtomSpec> =
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(format!("atom list: {e}")))?;
    let mut names = HashSet::new();
    for atom in &atoms {
        atom.validate()?;
        if !names.insert(&atom.name) {
            return Err(Error::InvalidSpec(format!("atom {} listed twice", atom.name)));
        }
    }
    Ok(atoms)
}

/// Declares an atom class under `atom` with a seeAlso link when a ChEBI
/// identifier is known.
pub fn owl_atom(ont: &mut Ontology, spec: &AtomSpec) -> Result<ClassExpression> {
    spec.validate()?;
    let atom = ont.entity(ATOM)?;
    ont.require_class(&atom)
        .map_err(|_| Error::MissingScaffold(ATOM.into()))?;
    let mut frames = ClassFrames::new().subclass(atom).label(spec.name.clone());
    if let Some(chebi) = &spec.chebi {
        frames = frames.annotation(see_also(chebi)?);
    }
    owl_class(ont, &make_safe(&spec.name)?, frames)
}

/// `r1 and precedes some (r2 and precedes some (... rn))`.
pub fn precedes_chain(precedes: &Iri, reactions: &[Iri]) -> Result<ClassExpression> {
    match reactions {
        [] => Err(Error::EmptyOperands("precedes_chain")),
        [last] => Ok(ClassExpression::Named(last.clone())),
        [first, rest @ ..] => owl_and([
            ClassExpression::Named(first.clone()),
            ClassExpression::some(precedes.clone(), precedes_chain(precedes, rest)?),
        ]),
    }
}

/// A pathway class equivalent to a pathway having the reactions as proper
/// parts, in sequence.
pub fn biochemical_pathway(ont: &mut Ontology, name: &str, reactions: &[Iri]) -> Result<ClassExpression> {
    if reactions.is_empty() {
        return Err(Error::EmptyOperands("biochemical_pathway"));
    }
    let pathway = ont.entity(PATHWAY)?;
    ont.require_class(&pathway)
        .map_err(|_| Error::MissingScaffold(PATHWAY.into()))?;
    let has_proper_part = ont.entity(&make_safe(HAS_PROPER_PART)?)?;
    let precedes = ont.entity(&make_safe(PRECEDES)?)?;
    for p in [&has_proper_part, &precedes] {
        if ont.kind_of(p) != Some(EntityKind::ObjectProperty) {
            return Err(Error::MissingScaffold(p.fragment().to_string()));
        }
    }
    let mut seen = HashSet::new();
    for r in reactions {
        ont.require_class(r)?;
        if !seen.insert(r) {
            return Err(Error::DuplicateOperand {
                construct: "biochemical_pathway",
                operand: r.fragment().to_string(),
            });
        }
    }
    let mut operands = vec![
        ClassExpression::Named(pathway),
        ClassExpression::some(has_proper_part.clone(), precedes_chain(&precedes, reactions)?),
    ];
    operands.extend(owl_some(&has_proper_part, reactions)?);
    let definition = owl_and(operands)?;
    owl_class(
        ont,
        &make_safe(name)?,
        ClassFrames::new().label(name).equivalent(definition),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AuditFinding {
    pub class: Iri,
    pub missing: Iri,
}

/// Every class below `scope` lacking one of the required annotation
/// properties, ordered by class fragment and then property.
pub fn audit_annotations(ont: &Ontology, required: &BTreeSet<Iri>, scope: &Iri) -> Result<Vec<AuditFinding>> {
    let mut findings = Vec::new();
    for class in subclasses_of(ont, scope, true)? {
        let present: HashSet<&Iri> = ont.annotations(&class).map(|a| &a.property).collect();
        for property in required {
            if !present.contains(property) {
                findings.push(AuditFinding {
                    class: class.clone(),
                    missing: property.clone(),
                });
            }
        }
    }
    findings.sort_by(|a, b| {
        (a.class.fragment(), a.class.as_str(), &a.missing).cmp(&(b.class.fragment(), b.class.as_str(), &b.missing))
    });
    Ok(findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl::{AnnotationValue, Axiom, AxiomKind};
    use proptest::prelude::*;

    fn onto() -> Ontology {
        Ontology::new(Iri::new("http://example.org/", "sio").unwrap(), [("dc", vocab::DC_TERMS)]).unwrap()
    }

    fn scaffolded() -> Ontology {
        let mut o = onto();
        sio_scaffold(&mut o).unwrap();
        o
    }

    #[test]
    fn make_safe_examples() {
        assert_eq!(make_safe("to regulate").unwrap(), "to_regulate");
        assert_eq!(make_safe("Pizza").unwrap(), "Pizza");
        assert_eq!(make_safe("true").unwrap(), "true_entity");
        assert_eq!(make_safe("nil").unwrap(), "nil_entity");
        assert_eq!(make_safe("1,2-diol").unwrap(), "n1_2_diol");
        assert_eq!(make_safe("a  --  b").unwrap(), "a_b");
        assert!(make_safe("").is_err());
    }

    proptest! {
        #[test]
        fn make_safe_is_idempotent_and_well_formed(label in "\\PC{1,24}") {
            let once = make_safe(&label).unwrap();
            prop_assert_eq!(make_safe(&once).unwrap(), once.clone());
            let mut chars = once.chars();
            let first = chars.next().unwrap();
            prop_assert!(first.is_ascii_alphabetic() || first == '_');
            prop_assert!(chars.all(|c| c.is_ascii_alphanumeric() || c == '_'));
        }
    }

    #[test]
    fn desc_and_see_also_literals() {
        let d = desc("a quantity is ...").unwrap();
        assert_eq!(d.property.as_str(), "http://purl.org/dc/terms/description");
        let AnnotationValue::Literal(l) = d.value else { panic!() };
        assert_eq!(l.lang(), Some("en"));
        assert_eq!(l.datatype(), None);
        assert!(desc("").is_err());

        let s = see_also("CHEBI:33517").unwrap();
        assert_eq!(s.property, rdfs_see_also());
        let AnnotationValue::Literal(l) = s.value else { panic!() };
        assert_eq!((l.lang(), l.datatype()), (None, None));
        assert!(see_also("").is_err());
    }

    #[test]
    fn sio_class_to_regulate() {
        let mut o = scaffolded();
        let process = o.entity(PROCESS).unwrap();
        let cls = sio_class(&mut o, &SioClassSpec::new("to regulate", process, "to regulate is to control a process")).unwrap();
        let iri = cls.as_named().unwrap().clone();
        assert_eq!(iri.fragment(), "to_regulate");
        assert_eq!(o.label(&iri), Some("to regulate"));
        assert_eq!(o.annotations(&iri).filter(|a| a.property == dc_description()).count(), 1);
        assert_eq!(o.annotations(&iri).filter(|a| a.property == rdfs_label()).count(), 1);
    }

    #[test]
    fn sio_class_extra_frame_and_errors() {
        let mut o = scaffolded();
        let process = o.entity(PROCESS).unwrap();
        let entity = o.entity("entity").unwrap();
        let spec = SioClassSpec::new("to bind", process.clone(), "binding").frame(Frame::SubClass(entity.into()));
        let cls = sio_class(&mut o, &spec).unwrap();
        assert_eq!(o.superclasses(cls.as_named().unwrap()).len(), 2);
        assert!(sio_class(&mut o, &SioClassSpec::new("x", process, "")).is_err());
    }

    #[test]
    fn sio_class_declares_missing_parent() {
        let mut o = onto();
        let parent = o.entity("quality").unwrap();
        sio_class(&mut o, &SioClassSpec::new("mass", parent.clone(), "how heavy")).unwrap();
        assert!(o.is_class(&parent));
        assert!(o.finalize_check().is_empty());
    }

    #[test]
    fn atoms_with_and_without_chebi() {
        let mut o = scaffolded();
        let cn = owl_atom(&mut o, &AtomSpec::new("copernicium", Some("CHEBI:33517")).unwrap()).unwrap();
        let e118 = owl_atom(&mut o, &AtomSpec::new("element 118", None).unwrap()).unwrap();
        let see = |c: &ClassExpression| o.annotations(c.as_named().unwrap()).filter(|a| a.property == rdfs_see_also()).count();
        assert_eq!(see(&cn), 1);
        assert_eq!(see(&e118), 0);
        assert!(AtomSpec::new("hydrogen", Some("33517")).is_err());
        assert!(AtomSpec::new("hydrogen", Some("CHEBI:")).is_err());
    }

    #[test]
    fn atom_requires_scaffold() {
        let mut o = onto();
        let spec = AtomSpec::new("hydrogen", Some("CHEBI:49637")).unwrap();
        assert!(matches!(owl_atom(&mut o, &spec), Err(Error::MissingScaffold(_))));
    }

    #[test]
    fn atoms_json() {
        let atoms = load_atoms(r#"[{"name":"hydrogen","chebi":"CHEBI:49637"},{"name":"oganesson","chebi":null}]"#).unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[1].chebi, None);
        assert!(load_atoms(r#"[{"name":"x","chebi":"nope"}]"#).is_err());
        assert!(load_atoms(r#"[{"name":"x","mass":1}]"#).is_err());
    }

    fn reactions(o: &mut Ontology, n: usize) -> Vec<Iri> {
        let parent = o.entity(&make_safe(BIOCHEMICAL_REACTION).unwrap()).unwrap();
        (0..n)
            .map(|i| {
                let spec = SioClassSpec::new(format!("reaction {i}"), parent.clone(), "a step");
                sio_class(o, &spec).unwrap().as_named().unwrap().clone()
            })
            .collect()
    }

    #[test]
    fn pathway_of_two() {
        let mut o = scaffolded();
        let rs = reactions(&mut o, 2);
        let cls = biochemical_pathway(&mut o, "short pathway", &rs).unwrap();
        let hpp = o.entity("has_proper_part").unwrap();
        let prec = o.entity("precedes").unwrap();
        let expected = ClassExpression::IntersectionOf(vec![
            o.entity(PATHWAY).unwrap().into(),
            ClassExpression::some(
                hpp.clone(),
                ClassExpression::IntersectionOf(vec![(&rs[0]).into(), ClassExpression::some(prec, &rs[1])]),
            ),
            ClassExpression::some(hpp.clone(), &rs[0]),
            ClassExpression::some(hpp, &rs[1]),
        ]);
        assert!(o.contains(&Axiom::EquivalentClasses(vec![cls, expected])));
    }

    #[test]
    fn pathway_of_one_collapses() {
        let mut o = scaffolded();
        let rs = reactions(&mut o, 1);
        let cls = biochemical_pathway(&mut o, "trivial", &rs).unwrap();
        let hpp = o.entity("has_proper_part").unwrap();
        let expected = ClassExpression::IntersectionOf(vec![
            o.entity(PATHWAY).unwrap().into(),
            ClassExpression::some(hpp, &rs[0]),
        ]);
        assert!(o.contains(&Axiom::EquivalentClasses(vec![cls, expected])));
        assert!(biochemical_pathway(&mut o, "none", &[]).is_err());
    }

    #[test]
    fn audit_reports_missing() {
        let mut o = scaffolded();
        owl_atom(&mut o, &AtomSpec::new("hydrogen", Some("CHEBI:49637")).unwrap()).unwrap();
        owl_atom(&mut o, &AtomSpec::new("oganesson", None).unwrap()).unwrap();
        owl_atom(&mut o, &AtomSpec::new("nihonium", None).unwrap()).unwrap();
        let atom = o.entity(ATOM).unwrap();
        let required: BTreeSet<Iri> = [rdfs_see_also()].into();
        let findings = audit_annotations(&o, &required, &atom).unwrap();
        let names: Vec<_> = findings.iter().map(|f| f.class.fragment()).collect();
        assert_eq!(names, ["nihonium", "oganesson"]);
    }

    #[test]
    fn audit_descriptions_over_sio_classes_is_clean() {
        let o = scaffolded();
        let entity = o.entity("entity").unwrap();
        let required: BTreeSet<Iri> = [dc_description()].into();
        assert!(audit_annotations(&o, &required, &entity).unwrap().is_empty());
        let ghost = o.entity("ghost").unwrap();
        assert!(audit_annotations(&o, &required, &ghost).is_err());
    }

    #[test]
    fn scaffold_shape() {
        let o = scaffolded();
        assert!(o.finalize_check().is_empty());
        assert!(!o.is_class(&o.entity("target_role").unwrap()));
        assert_eq!(o.declared(EntityKind::ObjectProperty).count(), 2);
        assert_eq!(o.axioms().filter(|a| a.kind() == AxiomKind::FunctionalObjectProperty).count(), 0);
    }
}
