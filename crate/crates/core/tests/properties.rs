mod common;

use proptest::prelude::*;

use ontoforge::iscn::{parse_iscn, render_iscn};
use ontoforge::owl::{
    rdfs_label, Annotation, Axiom, ClassExpression, Entity, Iri, Literal, Ontology,
};
use ontoforge::serializer::{read_functional_subset, serialize, to_functional, Format, SerializationConfig, SortOrder};

const NS: &str = "http://example.org/p#";

fn iri(name: String) -> Iri {
    Iri::new(NS, &name).unwrap()
}

fn class() -> impl Strategy<Value = Iri> {
    (0..6u8).prop_map(|i| iri(format!("C{i}")))
}

fn property() -> impl Strategy<Value = Iri> {
    (0..3u8).prop_map(|i| iri(format!("p{i}")))
}

fn expression() -> impl Strategy<Value = ClassExpression> {
    let leaf = class().prop_map(ClassExpression::Named);
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (property(), inner.clone()).prop_map(|(p, f)| ClassExpression::some(p, f)),
            (property(), inner.clone()).prop_map(|(p, f)| ClassExpression::only(p, f)),
            (0..4u32, property(), inner.clone()).prop_map(|(n, p, f)| ClassExpression::exactly(n, p, f)),
            prop::collection::vec(inner.clone(), 2..4).prop_map(ClassExpression::IntersectionOf),
            prop::collection::vec(inner, 2..4).prop_map(ClassExpression::UnionOf),
        ]
    })
}

fn literal() -> impl Strategy<Value = Literal> {
    ("[a-zA-Z \"\\\\'(),]{0,10}", prop::option::of("[a-z]{2}(-[A-Z]{2})?")).prop_map(|(text, lang)| match lang {
        Some(lang) => Literal::with_lang(text, lang),
        None => Literal::plain(text),
    })
}

fn distinct(members: Vec<ClassExpression>) -> Option<Vec<ClassExpression>> {
    let mut out: Vec<ClassExpression> = Vec::new();
    for m in members {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    (out.len() >= 2).then_some(out)
}

fn axiom() -> impl Strategy<Value = Option<Axiom>> {
    prop_oneof![
        (class(), expression()).prop_map(|(c, e)| Some(Axiom::subclass(c, e))),
        prop::collection::vec(expression(), 2..4).prop_map(|ms| distinct(ms).map(Axiom::EquivalentClasses)),
        prop::collection::vec(expression(), 2..4).prop_map(|ms| distinct(ms).map(Axiom::DisjointClasses)),
        property().prop_map(|p| Some(Axiom::FunctionalObjectProperty(p))),
        (class(), literal(), any::<bool>()).prop_map(|(c, l, label)| {
            let property = if label { rdfs_label() } else { iri("note".into()) };
            Some(Axiom::AnnotationAssertion {
                subject: c,
                annotation: Annotation::literal(property, l),
            })
        }),
    ]
}

fn vocabulary() -> Vec<Axiom> {
    let mut out: Vec<Axiom> = (0..6).map(|i| Axiom::Declaration(Entity::class(iri(format!("C{i}"))))).collect();
    out.extend((0..3).map(|i| Axiom::Declaration(Entity::object_property(iri(format!("p{i}"))))));
    out.push(Axiom::Declaration(Entity::annotation_property(iri("note".into()))));
    out
}

fn build(axioms: &[Axiom]) -> Ontology {
    let mut ont = Ontology::new(Iri::parse("http://example.org/p").unwrap(), [("ex", "http://example.org/other/")]).unwrap();
    for a in axioms {
        ont.add(a.clone()).unwrap();
    }
    ont
}

fn axioms() -> impl Strategy<Value = Vec<Axiom>> {
    prop::collection::vec(axiom(), 0..20).prop_map(|v| {
        let mut all = vocabulary();
        all.extend(v.into_iter().flatten());
        all
    })
}

proptest! {
    #[test]
    fn iscn_render_inverts_parse(s in common::iscn_string()) {
        let k = parse_iscn(&s).unwrap();
        prop_assert_eq!(render_iscn(&k), s);
    }

    #[test]
    fn iscn_parse_never_panics(s in "[0-9XYNZ,+\\-invpq().]{0,24}") {
        if let Ok(k) = parse_iscn(&s) {
            prop_assert_eq!(parse_iscn(&render_iscn(&k)).unwrap(), k);
        }
    }

    #[test]
    fn iscn_parse_never_panics_on_any_text(s in "\\PC{0,24}") {
        let _ = parse_iscn(&s);
    }

    #[test]
    fn functional_round_trip(axioms in axioms()) {
        let ont = build(&axioms);
        for sort in [SortOrder::Canonical, SortOrder::InsertionOrder] {
            let text = to_functional(&ont, &SerializationConfig::functional().sort(sort)).unwrap();
            let back = read_functional_subset(&text).unwrap();
            prop_assert_eq!(&back, &ont, "{}", text);
        }
    }

    #[test]
    fn canonical_output_ignores_build_order(axioms in axioms().prop_flat_map(|a| (Just(a.clone()), Just(a).prop_shuffle()))) {
        let (a, b) = axioms;
        let (a, b) = (build(&a), build(&b));
        for format in [Format::Functional, Format::Manchester] {
            let cfg = SerializationConfig { format, ..Default::default() };
            match (serialize(&a, &cfg), serialize(&b, &cfg)) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(_), Err(_)) => {}
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
            }
        }
    }

    #[test]
    fn output_is_deterministic(axioms in axioms()) {
        let ont = build(&axioms);
        for format in [Format::Functional, Format::Manchester] {
            for sort in [SortOrder::Canonical, SortOrder::InsertionOrder] {
                let cfg = SerializationConfig { format, sort, ..Default::default() };
                let first = serialize(&ont, &cfg).ok();
                prop_assert_eq!(first, serialize(&ont.clone(), &cfg).ok());
            }
        }
    }

    #[test]
    fn each_functional_line_reads_alone(axioms in axioms()) {
        let ont = build(&axioms);
        let text = to_functional(&ont, &SerializationConfig::functional()).unwrap();
        let (header, body) = text.split_at(text.find("Ontology(").unwrap());
        let mut lines = body.lines();
        let open = lines.next().unwrap();
        for line in lines.filter(|l| *l != ")") {
            let single = format!("{header}{open}\n{line}\n)\n");
            prop_assert!(read_functional_subset(&single).is_ok(), "{}", line);
        }
    }
}
