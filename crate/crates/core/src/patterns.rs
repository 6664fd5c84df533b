//! Generic ontology design patterns: closure, covering and value partition.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::owl::{
    declare_property, owl_class, owl_only, owl_or, owl_some, Axiom, Characteristics,
    ClassExpression, ClassFrames, EntityKind, Iri, Ontology,
};

/// Closure pattern: one existential per filler plus a single universal over
/// all fillers.
pub fn some_only<I>(property: &Iri, fillers: I) -> Result<Vec<ClassExpression>>
where
    I: IntoIterator,
    I::Item: Into<ClassExpression>,
{
    let fillers: Vec<ClassExpression> = fillers.into_iter().map(Into::into).collect();
    check_distinct("some_only", &fillers)?;
    let mut out = owl_some(property, fillers.iter().cloned())?;
    out.push(owl_only(property, fillers)?);
    Ok(out)
}

fn check_distinct(construct: &'static str, items: &[ClassExpression]) -> Result<()> {
    let mut seen = HashSet::new();
    for item in items {
        if !seen.insert(item) {
            return Err(Error::DuplicateOperand {
                construct,
                operand: format!("{item:?}"),
            });
        }
    }
    Ok(())
}

/// States that `parent` is covered by `children`, optionally making the
/// children pairwise disjoint.
pub fn covering_axiom(ont: &mut Ontology, parent: &Iri, children: &[Iri], disjoint: bool) -> Result<()> {
    if children.is_empty() {
        return Err(Error::EmptyOperands("covering_axiom"));
    }
    ont.require_class(parent)?;
    for child in children {
        ont.require_class(child)?;
    }
    let members: Vec<ClassExpression> = children.iter().map(ClassExpression::from).collect();
    check_distinct("covering_axiom", &members)?;
    ont.add(Axiom::subclass(parent, owl_or(members.clone())?))?;
    if disjoint && members.len() >= 2 {
        ont.add(Axiom::DisjointClasses(members))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuePartitionSpec {
    pub partition_name: String,
    pub values: Vec<String>,
    pub include_covering: bool,
}

impl ValuePartitionSpec {
    pub fn new<I, S>(partition_name: impl Into<String>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let spec = Self {
            partition_name: partition_name.into(),
            values: values.into_iter().map(Into::into).collect(),
            include_covering: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_covering(mut self, include: bool) -> Self {
        self.include_covering = include;
        self
    }

    pub fn property_name(&self) -> String {
        format!("has{}", self.partition_name)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSpec(format!(
                "value partition {} has no values",
                self.partition_name
            )));
        }
        let mut seen = HashSet::new();
        for value in &self.values {
            if *value == self.partition_name || !seen.insert(value) {
                return Err(Error::InvalidSpec(format!(
                    "value partition {}: value {value} repeated or equal to the partition",
                    self.partition_name
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuePartition {
    pub partition_class: Iri,
    pub property: Iri,
    pub value_classes: Vec<Iri>,
}

/// Value partition: a partition class, one subclass per value, disjointness
/// between the values and a functional `has<Partition>` property.
pub fn value_partition(ont: &mut Ontology, spec: &ValuePartitionSpec) -> Result<ValuePartition> {
    spec.validate()?;
    let property_name = spec.property_name();
    // check every generated name before emitting anything
    let class_names = std::iter::once(&spec.partition_name).chain(&spec.values);
    for name in class_names {
        let iri = ont.entity(name)?;
        if let Some(existing) = ont.kind_of(&iri).filter(|k| *k != EntityKind::Class) {
            return Err(Error::KindConflict {
                iri,
                existing,
                requested: EntityKind::Class,
            });
        }
    }
    let property_iri = ont.entity(&property_name)?;
    if let Some(existing) = ont
        .kind_of(&property_iri)
        .filter(|k| *k != EntityKind::ObjectProperty)
    {
        return Err(Error::KindConflict {
            iri: property_iri,
            existing,
            requested: EntityKind::ObjectProperty,
        });
    }

    let partition = owl_class(ont, &spec.partition_name, ClassFrames::new())?;
    let mut value_classes = Vec::with_capacity(spec.values.len());
    for value in &spec.values {
        let cls = owl_class(ont, value, ClassFrames::new().subclass(partition.clone()))?;
        value_classes.push(cls.as_named().cloned().expect("named class"));
    }
    if value_classes.len() >= 2 {
        ont.add(Axiom::DisjointClasses(
            value_classes.iter().map(ClassExpression::from).collect(),
        ))?;
    }
    let property = declare_property(
        ont,
        &property_name,
        EntityKind::ObjectProperty,
        Characteristics::functional(),
    )?;
    let partition_class = partition.as_named().cloned().expect("named class");
    if spec.include_covering {
        covering_axiom(ont, &partition_class, &value_classes, false)?;
    }
    Ok(ValuePartition {
        partition_class,
        property,
        value_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl::{count_by_kind, AxiomKind};

    fn onto() -> Ontology {
        Ontology::new(Iri::new("http://example.org/", "pizza").unwrap(), Vec::<(String, String)>::new()).unwrap()
    }

    fn kind_count(o: &Ontology, kind: AxiomKind) -> usize {
        o.axioms().filter(|a| a.kind() == kind).count()
    }

    #[test]
    fn closure_of_two_fillers() {
        let o = onto();
        let p = o.entity("hasTopping").unwrap();
        let t = o.entity("TomatoTopping").unwrap();
        let m = o.entity("MozzarellaTopping").unwrap();
        let out = some_only(&p, [t.clone(), m.clone()]).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0], ClassExpression::some(p.clone(), t.clone()));
        assert_eq!(out[1], ClassExpression::some(p.clone(), m.clone()));
        assert_eq!(
            out[2],
            ClassExpression::only(p.clone(), ClassExpression::UnionOf(vec![m.into(), t.into()]))
        );
    }

    #[test]
    fn closure_singleton_and_empty() {
        let o = onto();
        let p = o.entity("hasTopping").unwrap();
        let t = o.entity("TomatoTopping").unwrap();
        assert_eq!(
            some_only(&p, [t.clone()]).unwrap(),
            vec![ClassExpression::some(p.clone(), t.clone()), ClassExpression::only(p.clone(), t.clone())]
        );
        assert!(some_only(&p, Vec::<Iri>::new()).is_err());
        assert!(some_only(&p, [t.clone(), t]).is_err());
    }

    #[test]
    fn covering_with_disjointness() {
        let mut o = onto();
        let base = owl_class(&mut o, "PizzaBase", ClassFrames::new()).unwrap();
        let thin = owl_class(&mut o, "ThinBase", ClassFrames::new()).unwrap();
        let deep = owl_class(&mut o, "DeepBase", ClassFrames::new()).unwrap();
        let before = o.len();
        let kids = [thin.as_named().unwrap().clone(), deep.as_named().unwrap().clone()];
        covering_axiom(&mut o, base.as_named().unwrap(), &kids, true).unwrap();
        assert_eq!(o.len() - before, 2);
        assert_eq!(kind_count(&o, AxiomKind::DisjointClasses), 1);
    }

    #[test]
    fn covering_singleton_and_errors() {
        let mut o = onto();
        let p = owl_class(&mut o, "P", ClassFrames::new()).unwrap();
        let c = owl_class(&mut o, "C", ClassFrames::new()).unwrap();
        let p = p.as_named().unwrap().clone();
        let c = c.as_named().unwrap().clone();
        covering_axiom(&mut o, &p, std::slice::from_ref(&c), true).unwrap();
        assert!(o.contains(&Axiom::subclass(p.clone(), c)));
        assert_eq!(kind_count(&o, AxiomKind::DisjointClasses), 0);
        assert!(covering_axiom(&mut o, &p, &[], true).is_err());
        let ghost = o.entity("Ghost").unwrap();
        assert!(matches!(covering_axiom(&mut o, &p, &[ghost], false), Err(Error::UnknownClass(_))));
    }

    #[test]
    fn spiciness_partition() {
        let mut o = onto();
        let spec = ValuePartitionSpec::new("Spiciness", ["Mild", "Medium", "Hot"]).unwrap();
        let vp = value_partition(&mut o, &spec).unwrap();
        assert_eq!(vp.property.fragment(), "hasSpiciness");
        assert_eq!(count_by_kind(&o)[&EntityKind::Class], 4);
        assert_eq!(count_by_kind(&o)[&EntityKind::ObjectProperty], 1);
        assert_eq!(kind_count(&o, AxiomKind::SubClassOf), 3);
        assert_eq!(kind_count(&o, AxiomKind::DisjointClasses), 1);
        assert_eq!(kind_count(&o, AxiomKind::FunctionalObjectProperty), 1);
        assert_eq!(o.len(), 10);
    }

    #[test]
    fn covering_partition_adds_union() {
        let mut o = onto();
        let spec = ValuePartitionSpec::new("Spiciness", ["Mild", "Medium", "Hot"]).unwrap().with_covering(true);
        let vp = value_partition(&mut o, &spec).unwrap();
        let union = ClassExpression::UnionOf(vp.value_classes.iter().map(ClassExpression::from).collect());
        assert!(o.contains(&Axiom::subclass(vp.partition_class, union)));
        assert_eq!(kind_count(&o, AxiomKind::SubClassOf), 4);
    }

    #[test]
    fn degenerate_partition() {
        let mut o = onto();
        let spec = ValuePartitionSpec::new("Doneness", ["Done"]).unwrap();
        value_partition(&mut o, &spec).unwrap();
        assert_eq!(count_by_kind(&o)[&EntityKind::Class], 2);
        assert_eq!(kind_count(&o, AxiomKind::SubClassOf), 1);
        assert_eq!(kind_count(&o, AxiomKind::DisjointClasses), 0);
    }

    #[test]
    fn partition_spec_invariants() {
        assert!(ValuePartitionSpec::new("S", Vec::<String>::new()).is_err());
        assert!(ValuePartitionSpec::new("S", ["A", "A"]).is_err());
        assert!(ValuePartitionSpec::new("S", ["S"]).is_err());
    }

    #[test]
    fn partition_collision_leaves_ontology_untouched() {
        let mut o = onto();
        declare_property(&mut o, "Hot", EntityKind::ObjectProperty, Characteristics::default()).unwrap();
        let spec = ValuePartitionSpec::new("Spiciness", ["Mild", "Hot"]).unwrap();
        assert!(matches!(value_partition(&mut o, &spec), Err(Error::KindConflict { .. })));
        assert_eq!(o.len(), 1);
    }
}
