//! The pizza exemplar: scaffold, topping catalogue and the named-pizza
//! generator.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::owl::{
    declare_property, owl_class, owl_some, Characteristics, ClassFrames, EntityKind, Iri, Ontology,
};
use crate::patterns::some_only;

/// Toppings used by the bundled named-pizza list, declared under
/// `PizzaTopping`.
pub const TOPPINGS: &[&str] = &[
    "AnchoviesTopping",
    "CaperTopping",
    "HamTopping",
    "MozzarellaTopping",
    "OliveTopping",
    "OnionTopping",
    "PeperonataTopping",
    "PrawnsTopping",
    "TobascoPepperSauce",
    "TomatoTopping",
];

/// Declares `Pizza`, `PizzaTopping`, `PizzaBase`, `NamedPizza` and the
/// `hasTopping`/`hasBase` properties.
pub fn pizza_scaffold(ont: &mut Ontology) -> Result<()> {
    let has_topping = declare_property(ont, "hasTopping", EntityKind::ObjectProperty, Characteristics::default())?;
    let has_base = declare_property(ont, "hasBase", EntityKind::ObjectProperty, Characteristics::default())?;
    let topping = owl_class(ont, "PizzaTopping", ClassFrames::new())?;
    let base = owl_class(ont, "PizzaBase", ClassFrames::new())?;
    let pizza = owl_class(
        ont,
        "Pizza",
        ClassFrames::new()
            .label("Pizza")
            .subclasses(owl_some(&has_topping, [topping])?)
            .subclasses(owl_some(&has_base, [base])?),
    )?;
    owl_class(ont, "NamedPizza", ClassFrames::new().subclass(pizza))?;
    Ok(())
}

/// Declares every class in [`TOPPINGS`] as a subclass of `PizzaTopping`.
pub fn topping_scaffold(ont: &mut Ontology) -> Result<()> {
    let parent = ont.entity("PizzaTopping")?;
    ont.require_class(&parent)
        .map_err(|_| Error::MissingScaffold("PizzaTopping".into()))?;
    for name in TOPPINGS {
        owl_class(ont, name, ClassFrames::new().subclass(parent.clone()))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPizzaSpec {
    pub name: String,
    pub toppings: Vec<Iri>,
}

impl NamedPizzaSpec {
    pub fn new(name: impl Into<String>, toppings: Vec<Iri>) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            toppings,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.toppings.is_empty() {
            return Err(Error::InvalidSpec(format!("{} has no toppings", self.name)));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.toppings.iter().find(|t| !seen.insert(*t)) {
            return Err(Error::InvalidSpec(format!(
                "{} lists topping {} twice",
                self.name,
                dup.fragment()
            )));
        }
        Ok(())
    }
}

/// Emits one class per spec: a `NamedPizza` subclass closed over its
/// toppings. All specs are checked before anything is written.
pub fn generate_named_pizza(ont: &mut Ontology, specs: &[NamedPizzaSpec]) -> Result<()> {
    if specs.is_empty() {
        return Ok(());
    }
    let named_pizza = ont.entity("NamedPizza")?;
    let has_topping = ont.entity("hasTopping")?;
    if !ont.is_class(&named_pizza) || ont.kind_of(&has_topping) != Some(EntityKind::ObjectProperty) {
        return Err(Error::MissingScaffold("NamedPizza/hasTopping".into()));
    }
    for spec in specs {
        spec.validate()?;
        ont.entity(&spec.name)?;
        for topping in &spec.toppings {
            ont.require_class(topping)?;
        }
    }
    for spec in specs {
        let frames = ClassFrames::new()
            .subclass(named_pizza.clone())
            .subclasses(some_only(&has_topping, spec.toppings.iter())?);
        owl_class(ont, &spec.name, frames)?;
    }
    Ok(())
}

/// A line-oriented pizza list: one pizza per line, the first token the
/// pizza's name, the rest its toppings. Brackets are ignored, so the
/// `[Name Topping ...]` vector form is accepted too. `#` starts a comment
/// line.
pub fn parse_pizza_list(text: &str, ont: &Ontology) -> Result<Vec<NamedPizzaSpec>> {
    let mut specs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cleaned = line.replace(['[', ']'], " ");
        let mut tokens = cleaned.split_whitespace();
        let Some(name) = tokens.next() else { continue };
        let toppings = tokens.map(|t| ont.entity(t)).collect::<Result<Vec<_>>>()?;
        let spec = NamedPizzaSpec::new(name, toppings)
            .map_err(|e| Error::InvalidSpec(format!("line {}: {e}", lineno + 1)))?;
        specs.push(spec);
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl::{count_by_kind, subclasses_of, ClassExpression};

    const LISTING: &str = include_str!("../data/named_pizzas.txt");

    fn onto() -> Ontology {
        Ontology::new(Iri::new("http://example.org/", "pizza").unwrap(), Vec::<(String, String)>::new()).unwrap()
    }

    #[test]
    fn scaffold_counts() {
        let mut o = onto();
        pizza_scaffold(&mut o).unwrap();
        let counts = count_by_kind(&o);
        assert_eq!(counts[&EntityKind::Class], 4);
        assert_eq!(counts[&EntityKind::ObjectProperty], 2);
        let pizza = o.entity("Pizza").unwrap();
        let existentials = o
            .superclasses(&pizza)
            .into_iter()
            .filter(|e| matches!(e, ClassExpression::SomeValuesFrom { .. }))
            .count();
        assert_eq!(existentials, 2);
        assert!(subclasses_of(&o, &pizza, true).unwrap().contains(&o.entity("NamedPizza").unwrap()));
    }

    #[test]
    fn bundled_list_parses() {
        let o = onto();
        let specs = parse_pizza_list(LISTING, &o).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].name, "CajunPizza");
        assert_eq!(specs[0].toppings.len(), 6);
        assert_eq!(specs[1].toppings.len(), 7);
    }

    #[test]
    fn pizza_list_rejects_bad_lines() {
        let o = onto();
        assert!(parse_pizza_list("LonelyPizza\n", &o).is_err());
        assert!(parse_pizza_list("Twice TomatoTopping TomatoTopping\n", &o).is_err());
        assert!(parse_pizza_list("# only a comment\n\n", &o).unwrap().is_empty());
    }

    #[test]
    fn named_pizzas_are_closed() {
        let mut o = onto();
        pizza_scaffold(&mut o).unwrap();
        topping_scaffold(&mut o).unwrap();
        let specs = parse_pizza_list(LISTING, &o).unwrap();
        generate_named_pizza(&mut o, &specs).unwrap();
        let cajun = o.superclasses(&o.entity("CajunPizza").unwrap()).len();
        let capricciosa = o.superclasses(&o.entity("CapricciosaPizza").unwrap()).len();
        assert_eq!(cajun, 1 + 6 + 1);
        assert_eq!(capricciosa, 1 + 7 + 1);
    }

    #[test]
    fn empty_spec_list_is_noop() {
        let mut o = onto();
        pizza_scaffold(&mut o).unwrap();
        let before = o.clone();
        generate_named_pizza(&mut o, &[]).unwrap();
        assert_eq!(o, before);
    }

    #[test]
    fn undeclared_topping_rejected_atomically() {
        let mut o = onto();
        pizza_scaffold(&mut o).unwrap();
        topping_scaffold(&mut o).unwrap();
        let before = o.len();
        let good = NamedPizzaSpec::new("Margherita", vec![o.entity("TomatoTopping").unwrap()]).unwrap();
        let bad = NamedPizzaSpec::new("Mystery", vec![o.entity("UnicornTopping").unwrap()]).unwrap();
        assert!(generate_named_pizza(&mut o, &[good, bad]).is_err());
        assert_eq!(o.len(), before);
    }
}
