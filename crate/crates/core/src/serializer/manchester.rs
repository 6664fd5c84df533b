use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::owl::{rdfs_label, Annotation, AnnotationValue, Axiom, ClassExpression, EntityKind, Iri, Literal, Ontology};
use crate::serializer::{check_declared, ordered_axioms, quote_literal, NameStyle, SerializationConfig, ShortNames, SortOrder};

struct Namer<'a> {
    ont: &'a Ontology,
    short: ShortNames<'a>,
    style: NameStyle,
}

impl<'a> Namer<'a> {
    fn new(ont: &'a Ontology, cfg: &SerializationConfig) -> Self {
        Self {
            ont,
            short: ShortNames::new(ont),
            style: cfg.names,
        }
    }

    fn name(&self, iri: &Iri) -> String {
        if self.style == NameStyle::Label {
            if let Some(label) = self.ont.label(iri).filter(|l| !l.contains('\'')) {
                return format!("'{label}'");
            }
        }
        self.short.render(iri, "")
    }

    fn expr(&self, e: &ClassExpression) -> String {
        match e {
            ClassExpression::Named(i) => self.name(i),
            ClassExpression::SomeValuesFrom { property, filler } => {
                format!("{} some {}", self.name(property), self.filler(filler))
            }
            ClassExpression::AllValuesFrom { property, filler } => {
                format!("{} only {}", self.name(property), self.filler(filler))
            }
            ClassExpression::ExactCardinality { n, property, filler } => {
                format!("{} exactly {n} {}", self.name(property), self.filler(filler))
            }
            ClassExpression::IntersectionOf(ops) => self.nary(ops, " and "),
            ClassExpression::UnionOf(ops) => self.nary(ops, " or "),
        }
    }

    fn filler(&self, e: &ClassExpression) -> String {
        if e.is_named() {
            self.expr(e)
        } else {
            format!("({})", self.expr(e))
        }
    }

    fn nary(&self, ops: &[ClassExpression], sep: &str) -> String {
        ops.iter()
            .map(|op| match op {
                ClassExpression::IntersectionOf(_) | ClassExpression::UnionOf(_) => format!("({})", self.expr(op)),
                _ => self.expr(op),
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    fn literal(&self, l: &Literal) -> String {
        let mut out = quote_literal(l.lexical());
        if let Some(lang) = l.lang() {
            out.push('@');
            out.push_str(lang);
        } else if let Some(dt) = l.datatype() {
            out.push_str("^^");
            out.push_str(&self.short.render(dt, ""));
        }
        out
    }

    fn annotation(&self, a: &Annotation) -> String {
        let value = match &a.value {
            AnnotationValue::Literal(l) => self.literal(l),
            AnnotationValue::Iri(i) => self.name(i),
        };
        format!("{} {value}", self.short.render(&a.property, ""))
    }
}

/// A class expression in Manchester syntax. Compound restriction fillers
/// and nested boolean operands are parenthesized.
pub fn render_expression(ont: &Ontology, expr: &ClassExpression, cfg: &SerializationConfig) -> String {
    Namer::new(ont, cfg).expr(expr)
}

#[derive(Default)]
struct Frame {
    kind: Option<EntityKind>,
    annotations: Vec<String>,
    characteristics: Vec<&'static str>,
    subclass: Vec<String>,
    equivalent: Vec<String>,
}

struct Frames {
    entities: IndexMap<Iri, Frame>,
    misc: Vec<String>,
}

fn collect(ont: &Ontology, cfg: &SerializationConfig, namer: &Namer) -> Result<Frames> {
    let mut entities: IndexMap<Iri, Frame> = IndexMap::new();
    let mut misc = Vec::new();
    for axiom in ordered_axioms(ont, cfg) {
        match axiom {
            Axiom::Declaration(e) => {
                entities.entry(e.iri.clone()).or_default().kind = Some(e.kind);
            }
            Axiom::SubClassOf { sub, sup } => {
                let Some(sub) = sub.as_named() else {
                    return Err(Error::Unsupported("a SubClassOf axiom with a complex subclass".into()));
                };
                entities.entry(sub.clone()).or_default().subclass.push(namer.expr(sup));
            }
            Axiom::EquivalentClasses(ms) => {
                let mut ms: Vec<&ClassExpression> = ms.iter().collect();
                if cfg.sort == SortOrder::Canonical {
                    ms.sort_by_key(|m| namer.expr(m));
                }
                match ms.iter().position(|m| m.is_named()) {
                    Some(i) if ms.len() == 2 => {
                        let subject = ms[i].as_named().expect("named member");
                        let other = namer.expr(ms[1 - i]);
                        entities.entry(subject.clone()).or_default().equivalent.push(other);
                    }
                    _ => misc.push(format!("EquivalentClasses:\n  {}", join_members(namer, &ms))),
                }
            }
            Axiom::DisjointClasses(ms) => {
                let mut ms: Vec<&ClassExpression> = ms.iter().collect();
                if cfg.sort == SortOrder::Canonical {
                    ms.sort_by_key(|m| namer.expr(m));
                }
                misc.push(format!("DisjointClasses:\n  {}", join_members(namer, &ms)));
            }
            Axiom::FunctionalObjectProperty(p) => {
                entities.entry(p.clone()).or_default().characteristics.push("Functional");
            }
            Axiom::AnnotationAssertion { subject, annotation } => {
                // with label names the label already heads the frame
                if namer.style == NameStyle::Label && annotation.property == rdfs_label() {
                    entities.entry(subject.clone()).or_default();
                    continue;
                }
                entities.entry(subject.clone()).or_default().annotations.push(namer.annotation(annotation));
            }
        }
    }
    for (iri, frame) in entities.iter_mut() {
        frame.kind = frame.kind.or_else(|| ont.kind_of(iri));
    }
    if cfg.sort == SortOrder::Canonical {
        entities.sort_by(|a, fa, b, fb| {
            (kind_rank(fa.kind), namer.name(a)).cmp(&(kind_rank(fb.kind), namer.name(b)))
        });
    }
    Ok(Frames { entities, misc })
}

fn join_members(namer: &Namer, ms: &[&ClassExpression]) -> String {
    ms.iter().map(|m| namer.filler(m)).collect::<Vec<_>>().join(", ")
}

fn kind_rank(kind: Option<EntityKind>) -> u8 {
    match kind {
        Some(EntityKind::AnnotationProperty) => 0,
        Some(EntityKind::ObjectProperty) => 1,
        Some(EntityKind::Class) | None => 2,
    }
}

fn render_frame(namer: &Namer, iri: &Iri, frame: &Frame) -> String {
    let keyword = match frame.kind {
        Some(EntityKind::AnnotationProperty) => "AnnotationProperty",
        Some(EntityKind::ObjectProperty) => "ObjectProperty",
        Some(EntityKind::Class) | None => "Class",
    };
    let mut out = format!("{keyword}: {}\n", namer.name(iri));
    let sections: [(&str, Vec<&str>); 4] = [
        ("Annotations", frame.annotations.iter().map(String::as_str).collect()),
        ("Characteristics", frame.characteristics.clone()),
        ("SubClassOf", frame.subclass.iter().map(String::as_str).collect()),
        ("EquivalentTo", frame.equivalent.iter().map(String::as_str).collect()),
    ];
    for (title, entries) in sections {
        if entries.is_empty() {
            continue;
        }
        out.push_str(&format!("  {title}:\n"));
        for entry in entries {
            out.push_str(&format!("    {entry}\n"));
        }
    }
    out
}

/// The whole ontology as Manchester frames: prefixes, the ontology header,
/// one frame per entity, then disjointness and n-ary equivalence frames.
pub fn to_manchester(ont: &Ontology, cfg: &SerializationConfig) -> Result<String> {
    check_declared(ont)?;
    let namer = Namer::new(ont, cfg);
    let frames = collect(ont, cfg, &namer)?;
    let mut out = format!("Prefix: : <{}>\n", ont.namespace());
    for (prefix, ns) in ont.prefixes() {
        out.push_str(&format!("Prefix: {prefix}: <{ns}>\n"));
    }
    out.push_str(&format!("\nOntology: <{}>\n", ont.iri()));
    for (iri, frame) in &frames.entities {
        out.push('\n');
        out.push_str(&render_frame(&namer, iri, frame));
    }
    let mut misc = frames.misc;
    if cfg.sort == SortOrder::Canonical {
        misc.sort();
    }
    for m in misc {
        out.push('\n');
        out.push_str(&m);
        out.push('\n');
    }
    Ok(out)
}

/// The Manchester frame of one entity.
pub fn class_frame(ont: &Ontology, iri: &Iri, cfg: &SerializationConfig) -> Result<String> {
    let namer = Namer::new(ont, cfg);
    let frames = collect(ont, cfg, &namer)?;
    match frames.entities.get(iri) {
        Some(frame) => Ok(render_frame(&namer, iri, frame)),
        None => Err(Error::Undeclared(iri.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl::{owl_class, ClassFrames};
    use crate::patterns::{some_only, value_partition, ValuePartitionSpec};
    use crate::serializer::normalize_tokens;

    fn onto() -> Ontology {
        Ontology::new(Iri::new("http://example.org/", "pizza").unwrap(), Vec::<(String, String)>::new()).unwrap()
    }

    #[test]
    fn closure_lines() {
        let o = onto();
        let p = o.entity("hasTopping").unwrap();
        let t = o.entity("TomatoTopping").unwrap();
        let m = o.entity("MozzarellaTopping").unwrap();
        let cfg = SerializationConfig::manchester();
        let lines: Vec<String> = some_only(&p, [t, m]).unwrap().iter().map(|e| render_expression(&o, e, &cfg)).collect();
        assert_eq!(
            lines,
            [
                "hasTopping some TomatoTopping",
                "hasTopping some MozzarellaTopping",
                "hasTopping only (MozzarellaTopping or TomatoTopping)",
            ]
        );
    }

    #[test]
    fn nested_booleans_get_parens() {
        let o = onto();
        let [a, b, c] = ["A", "B", "C"].map(|n| ClassExpression::Named(o.entity(n).unwrap()));
        let e = ClassExpression::IntersectionOf(vec![a.clone(), ClassExpression::UnionOf(vec![b.clone(), c])]);
        let cfg = SerializationConfig::manchester();
        assert_eq!(render_expression(&o, &e, &cfg), "A and (B or C)");
        let p = o.entity("p").unwrap();
        let e = ClassExpression::IntersectionOf(vec![a, ClassExpression::some(p, b)]);
        assert_eq!(render_expression(&o, &e, &cfg), "A and p some B");
    }

    #[test]
    fn partition_frames() {
        let mut o = onto();
        value_partition(&mut o, &ValuePartitionSpec::new("Spiciness", ["Mild", "Hot"]).unwrap()).unwrap();
        let text = to_manchester(&o, &SerializationConfig::manchester()).unwrap();
        let tokens = normalize_tokens(&text);
        let joined = tokens.join(" ");
        assert!(joined.contains("ObjectProperty: hasSpiciness Characteristics: Functional"), "{text}");
        assert!(joined.contains("DisjointClasses: Hot , Mild"), "{text}");
        assert!(joined.contains("Class: Mild SubClassOf: Spiciness"), "{text}");
    }

    #[test]
    fn label_style_quotes_labels() {
        let mut o = onto();
        let cls = owl_class(&mut o, "glycolysis", ClassFrames::new().label("glycolysis")).unwrap();
        let cfg = SerializationConfig::manchester().names(NameStyle::Label);
        let frame = class_frame(&o, cls.as_named().unwrap(), &cfg).unwrap();
        assert!(frame.starts_with("Class: 'glycolysis'\n"), "{frame}");
    }
}
