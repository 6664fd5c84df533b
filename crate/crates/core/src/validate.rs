//! Structural checks over a finished ontology.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Result;
use crate::owl::{Axiom, ClassExpression, Iri, Ontology};
use crate::sio::{audit_annotations, AuditFinding};

/// A class whose universal restriction on a property does not list exactly
/// the fillers of its existential restrictions on that property.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClosureFinding {
    pub class: Iri,
    pub property: Iri,
    pub existential: Vec<String>,
    pub universal: Vec<String>,
}

#[derive(Default)]
struct Restrictions<'a> {
    some: BTreeSet<&'a ClassExpression>,
    only: Vec<&'a ClassExpression>,
}

/// Checks every (class, property) pair that has both existential and
/// universal superclass restrictions.
pub fn check_closure(ont: &Ontology) -> Vec<ClosureFinding> {
    let mut by_pair: BTreeMap<(&Iri, &Iri), Restrictions> = BTreeMap::new();
    for axiom in ont.axioms() {
        let Axiom::SubClassOf {
            sub: ClassExpression::Named(class),
            sup,
        } = axiom
        else {
            continue;
        };
        match sup {
            ClassExpression::SomeValuesFrom { property, filler } => {
                by_pair.entry((class, property)).or_default().some.insert(filler);
            }
            ClassExpression::AllValuesFrom { property, filler } => {
                by_pair.entry((class, property)).or_default().only.push(filler);
            }
            _ => {}
        }
    }
    let mut findings = Vec::new();
    for ((class, property), r) in by_pair {
        if r.some.is_empty() {
            continue;
        }
        for universal in r.only {
            let operands: BTreeSet<&ClassExpression> = match universal {
                ClassExpression::UnionOf(ops) => ops.iter().collect(),
                other => [other].into(),
            };
            if operands != r.some {
                findings.push(ClosureFinding {
                    class: class.clone(),
                    property: property.clone(),
                    existential: r.some.iter().map(|e| format!("{e:?}")).collect(),
                    universal: operands.iter().map(|e| format!("{e:?}")).collect(),
                });
            }
        }
    }
    findings
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub undeclared: Vec<Iri>,
    pub closure: Vec<ClosureFinding>,
    pub annotations: Vec<AuditFinding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.undeclared.is_empty() && self.closure.is_empty() && self.annotations.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationOptions {
    pub require_closure: bool,
    pub required_annotations: BTreeSet<Iri>,
    /// Classes audited for annotations; every declared class that is not
    /// below another when absent.
    pub scope: Option<Iri>,
}

pub fn validate(ont: &Ontology, opts: &ValidationOptions) -> Result<ValidationReport> {
    let mut report = ValidationReport {
        undeclared: ont.finalize_check(),
        ..Default::default()
    };
    if opts.require_closure {
        report.closure = check_closure(ont);
    }
    if !opts.required_annotations.is_empty() {
        match &opts.scope {
            Some(scope) => report.annotations = audit_annotations(ont, &opts.required_annotations, scope)?,
            None => {
                let mut all = Vec::new();
                for class in ont.declared(crate::owl::EntityKind::Class) {
                    let present: BTreeSet<&Iri> = ont.annotations(class).map(|a| &a.property).collect();
                    for p in &opts.required_annotations {
                        if !present.contains(p) {
                            all.push(AuditFinding {
                                class: class.clone(),
                                missing: p.clone(),
                            });
                        }
                    }
                }
                all.sort_by(|a, b| (a.class.fragment(), &a.class, &a.missing).cmp(&(b.class.fragment(), &b.class, &b.missing)));
                report.annotations = all;
            }
        }
    }
    Ok(report)
}
