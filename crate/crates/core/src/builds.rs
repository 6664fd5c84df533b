//! Ready-made example ontologies, shared by the command line tool and the
//! tests.

use crate::error::Result;
use crate::iscn::compile_iscn;
use crate::karyotype::{centromere_telomere, human_scaffold, humanbands_dataset, BandDataset, ChromosomeId};
use crate::owl::{vocab, ClassExpression, Iri, Ontology};
use crate::patterns::{value_partition, ValuePartitionSpec};
use crate::pizza::{generate_named_pizza, parse_pizza_list, pizza_scaffold, topping_scaffold};
use crate::sio::{biochemical_pathway, make_safe, owl_atom, sio_class, sio_scaffold, AtomSpec, SioClassSpec};

pub const PIZZA_IRI: &str = "http://example.org/pizza";
pub const KARYOTYPE_IRI: &str = "http://example.org/karyotype";
pub const SIO_IRI: &str = "http://example.org/sio";

/// The bundled named-pizza list.
pub const NAMED_PIZZAS: &str = include_str!("../data/named_pizzas.txt");
/// A chromosome 1 band sample.
pub const BANDS_SAMPLE: &str = include_str!("../data/bands_sample.json");
/// A few elements, with and without ChEBI links.
pub const ATOMS: &str = include_str!("../data/atoms.json");

/// The glycolysis steps used by the SIO demo.
pub const GLYCOLYSIS: [&str; 3] = [
    "hexokinase reaction",
    "phosphoglucose isomerase reaction",
    "phosphofructokinase reaction",
];

/// A fresh ontology at `iri`, its entities under `namespace` when given.
pub fn new_ontology(iri: &str, prefixes: &[(&str, &str)], namespace: Option<&str>) -> Result<Ontology> {
    let ont = Ontology::new(Iri::parse(iri)?, prefixes.iter().copied())?;
    match namespace {
        Some(ns) => ont.with_namespace(ns),
        None => Ok(ont),
    }
}

/// Pizza scaffold, toppings and the named pizzas listed in `pizzas`.
pub fn pizza_ontology(pizzas: &str, namespace: Option<&str>) -> Result<Ontology> {
    let mut ont = new_ontology(PIZZA_IRI, &[], namespace)?;
    pizza_scaffold(&mut ont)?;
    topping_scaffold(&mut ont)?;
    let specs = parse_pizza_list(pizzas, &ont)?;
    generate_named_pizza(&mut ont, &specs)?;
    Ok(ont)
}

/// The Spiciness value partition on its own.
pub fn spiciness_ontology(namespace: Option<&str>) -> Result<Ontology> {
    let mut ont = new_ontology(PIZZA_IRI, &[], namespace)?;
    value_partition(&mut ont, &ValuePartitionSpec::new("Spiciness", ["Mild", "Medium", "Hot"])?)?;
    Ok(ont)
}

/// Chromosome scaffold, the given bands, and centromeres and telomeres for
/// all 24 chromosomes.
pub fn karyotype_ontology(bands: Option<&BandDataset>, namespace: Option<&str>) -> Result<Ontology> {
    let mut ont = new_ontology(KARYOTYPE_IRI, &[], namespace)?;
    human_scaffold(&mut ont)?;
    if let Some(bands) = bands {
        humanbands_dataset(&mut ont, bands)?;
    }
    let all: Vec<ChromosomeId> = ChromosomeId::all().collect();
    centromere_telomere(&mut ont, &all)?;
    Ok(ont)
}

/// Compiles an ISCN string into the karyotype ontology. Returns the
/// ontology and the new class.
pub fn iscn_ontology(iscn: &str, bands: Option<&BandDataset>, namespace: Option<&str>) -> Result<(Ontology, Iri)> {
    let mut ont = new_ontology(KARYOTYPE_IRI, &[], namespace)?;
    human_scaffold(&mut ont)?;
    if let Some(bands) = bands {
        humanbands_dataset(&mut ont, bands)?;
    }
    let (_, cls) = compile_iscn(&mut ont, iscn)?;
    let iri = cls.as_named().cloned().expect("named class");
    Ok((ont, iri))
}

/// SIO scaffold, one described class, the atoms and a glycolysis pathway.
pub fn sio_demo(atoms: &[AtomSpec], namespace: Option<&str>) -> Result<Ontology> {
    let mut ont = new_ontology(SIO_IRI, &[("dc", vocab::DC_TERMS)], namespace)?;
    sio_scaffold(&mut ont)?;
    let process = ont.entity("process")?;
    sio_class(
        &mut ont,
        &SioClassSpec::new("to regulate", process, "A process that changes the rate or extent of another process."),
    )?;
    for atom in atoms {
        owl_atom(&mut ont, atom)?;
    }
    let reaction = ClassExpression::Named(ont.entity(&make_safe("biochemical reaction")?)?);
    let mut steps = Vec::new();
    for name in GLYCOLYSIS {
        let spec = SioClassSpec::new(name, reaction.clone(), format!("The {name} step of glycolysis."));
        steps.push(sio_class(&mut ont, &spec)?.as_named().cloned().expect("named class"));
    }
    biochemical_pathway(&mut ont, "glycolysis", &steps)?;
    Ok(ont)
}

/// Every bundled example, by name.
pub fn examples() -> Result<Vec<(&'static str, Ontology)>> {
    let bands = BandDataset::from_json(BANDS_SAMPLE)?;
    Ok(vec![
        ("pizza", pizza_ontology(NAMED_PIZZAS, None)?),
        ("spiciness", spiciness_ontology(None)?),
        ("karyotype", karyotype_ontology(Some(&bands), None)?),
        ("iscn-45X", iscn_ontology("45,X", None, None)?.0),
        ("iscn-45XY", iscn_ontology("45,X,-Y", None, None)?.0),
        ("sio", sio_demo(&crate::sio::load_atoms(ATOMS)?, None)?),
    ])
}
