//! A small ISCN karyotype subset: parser, canonical renderer and compiler
//! to event-based karyotype classes.
//!
//! Accepted grammar (ASCII, no whitespace):
//!
//! ```text
//! KARYO = 1*2DIGIT "," 1*4SEX *("," ABN)
//! SEX   = "X" / "Y" / "N"
//! ABN   = ("+" / "-") CHROM / "inv(" CHROM ")(" BAND BAND ")"
//! CHROM = "1".."22" / "X" / "Y"
//! BAND  = ("p" / "q") DIGITS ["." 1*2DIGIT]
//! ```
//!
//! The declared total must equal 44 autosomes plus the listed sex
//! chromosomes, adjusted by autosomal gains and losses. Sex-chromosome
//! gains and losses are already reflected in the sex designation
//! (`45,X,-Y`), so they do not enter the count.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::karyotype::{
    band_class_name, base_karyotype, karyotype_class, karyotype_class_name, karyotype_label,
    BandName, BaseKaryotype, ChromosomeId, KaryotypeEvent, HUMAN_SEX_CHROMOSOME,
};
use crate::owl::{ClassExpression, Ontology};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IscnError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown chromosome `{symbol}` at byte {offset}")]
    UnknownChromosome { offset: usize, symbol: String },

    #[error("chromosome count mismatch: declared {declared}, but the sex chromosomes and abnormalities give {expected}")]
    ArithmeticMismatch { declared: u32, expected: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SexSymbol {
    X,
    Y,
    N,
}

impl SexSymbol {
    fn as_char(self) -> char {
        match self {
            SexSymbol::X => 'X',
            SexSymbol::Y => 'Y',
            SexSymbol::N => 'N',
        }
    }

    fn of_chromosome(c: ChromosomeId) -> Option<SexSymbol> {
        match c {
            ChromosomeId::X => Some(SexSymbol::X),
            ChromosomeId::Y => Some(SexSymbol::Y),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Abnormality {
    Loss {
        chromosome: ChromosomeId,
    },
    Gain {
        chromosome: ChromosomeId,
    },
    Inv {
        chromosome: ChromosomeId,
        band1: BandName,
        band2: BandName,
    },
}

impl fmt::Display for Abnormality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Abnormality::Loss { chromosome } => write!(f, "-{chromosome}"),
            Abnormality::Gain { chromosome } => write!(f, "+{chromosome}"),
            Abnormality::Inv {
                chromosome,
                band1,
                band2,
            } => write!(f, "inv({chromosome})({band1}{band2})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IscnKaryotype {
    pub declared_total: u32,
    pub sex: Vec<SexSymbol>,
    pub abnormalities: Vec<Abnormality>,
}

impl IscnKaryotype {
    pub fn new(
        declared_total: u32,
        sex: Vec<SexSymbol>,
        abnormalities: Vec<Abnormality>,
    ) -> Result<Self, IscnError> {
        let k = Self {
            declared_total,
            sex,
            abnormalities,
        };
        k.validate()?;
        Ok(k)
    }

    /// The chromosome count implied by the sex designation and the
    /// autosomal gains and losses.
    pub fn expected_total(&self) -> i64 {
        let mut total = 44 + self.sex.len() as i64;
        for a in &self.abnormalities {
            match a {
                Abnormality::Gain { chromosome } if !chromosome.is_sex() => total += 1,
                Abnormality::Loss { chromosome } if !chromosome.is_sex() => total -= 1,
                _ => {}
            }
        }
        total
    }

    pub fn validate(&self) -> Result<(), IscnError> {
        if !(1..=4).contains(&self.sex.len()) {
            return Err(IscnError::Syntax {
                offset: 0,
                message: format!("sex designation must have 1 to 4 symbols, found {}", self.sex.len()),
            });
        }
        if !(1..=99).contains(&self.declared_total) {
            return Err(IscnError::Syntax {
                offset: 0,
                message: format!("chromosome total {} out of range 1..99", self.declared_total),
            });
        }
        let expected = self.expected_total();
        if expected != i64::from(self.declared_total) {
            return Err(IscnError::ArithmeticMismatch {
                declared: self.declared_total,
                expected,
            });
        }
        Ok(())
    }
}

impl fmt::Display for IscnKaryotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},", self.declared_total)?;
        for s in &self.sex {
            write!(f, "{}", s.as_char())?;
        }
        for a in &self.abnormalities {
            write!(f, ",{a}")?;
        }
        Ok(())
    }
}

impl FromStr for IscnKaryotype {
    type Err = IscnError;

    fn from_str(s: &str) -> Result<Self, IscnError> {
        parse_iscn(s)
    }
}

pub fn parse_iscn(text: &str) -> Result<IscnKaryotype, IscnError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let k = p.karyotype()?;
    k.validate()?;
    Ok(k)
}

pub fn render_iscn(k: &IscnKaryotype) -> String {
    k.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, IscnError> {
        Err(IscnError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, lit: &str) -> Result<(), IscnError> {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn karyotype(&mut self) -> Result<IscnKaryotype, IscnError> {
        let start = self.pos;
        let total = self.digits();
        if total.is_empty() || total.len() > 2 {
            self.pos = start;
            return self.error("expected a one- or two-digit chromosome total");
        }
        if total.starts_with('0') {
            self.pos = start;
            return self.error("chromosome total must not have a leading zero");
        }
        let declared_total: u32 = total.parse().expect("two digits");
        self.expect(",")?;

        let mut sex = Vec::new();
        while let Some(b) = self.peek() {
            let symbol = match b {
                b'X' => SexSymbol::X,
                b'Y' => SexSymbol::Y,
                b'N' => SexSymbol::N,
                _ => break,
            };
            if sex.len() == 4 {
                return self.error("sex designation has more than 4 symbols");
            }
            sex.push(symbol);
            self.pos += 1;
        }
        if sex.is_empty() {
            return self.error("expected a sex designation of X, Y or N");
        }

        let mut abnormalities = Vec::new();
        while self.peek().is_some() {
            self.expect(",")?;
            abnormalities.push(self.abnormality()?);
        }
        Ok(IscnKaryotype {
            declared_total,
            sex,
            abnormalities,
        })
    }

    fn abnormality(&mut self) -> Result<Abnormality, IscnError> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Ok(Abnormality::Gain {
                    chromosome: self.chromosome()?,
                })
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Abnormality::Loss {
                    chromosome: self.chromosome()?,
                })
            }
            Some(b'i') => {
                self.expect("inv(")?;
                let chromosome = self.chromosome()?;
                self.expect(")(")?;
                let band1 = self.band()?;
                let band2 = self.band()?;
                self.expect(")")?;
                Ok(Abnormality::Inv {
                    chromosome,
                    band1,
                    band2,
                })
            }
            _ => self.error("expected `+`, `-` or `inv(`"),
        }
    }

    fn chromosome(&mut self) -> Result<ChromosomeId, IscnError> {
        let start = self.pos;
        let symbol = match self.peek() {
            Some(b'X') | Some(b'Y') => {
                self.pos += 1;
                &self.src[start..self.pos]
            }
            Some(b) if b.is_ascii_digit() => {
                self.digits();
                &self.src[start..self.pos]
            }
            Some(b) if b.is_ascii_alphabetic() => {
                self.pos += 1;
                &self.src[start..self.pos]
            }
            _ => return self.error("expected a chromosome"),
        };
        let symbol = String::from_utf8_lossy(symbol).into_owned();
        symbol
            .parse::<ChromosomeId>()
            .map_err(|_| IscnError::UnknownChromosome {
                offset: start,
                symbol,
            })
    }

    fn band(&mut self) -> Result<BandName, IscnError> {
        let start = self.pos;
        match self.peek() {
            Some(b'p') | Some(b'q') => self.pos += 1,
            _ => return self.error("expected a band starting with `p` or `q`"),
        }
        if self.digits().is_empty() {
            return self.error("expected band digits");
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac = self.digits().len();
            if !(1..=2).contains(&frac) {
                return self.error("expected one or two sub-band digits");
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii band");
        text.parse().map_err(|_| IscnError::Syntax {
            offset: start,
            message: format!("invalid band `{text}`"),
        })
    }
}

/// The canonical karyotype a parsed karyotype derives from, and the events
/// implied by a sex designation that is short of, or beyond, two sex
/// chromosomes.
pub fn base_and_sex_events(k: &IscnKaryotype) -> (BaseKaryotype, i64) {
    let mut original = k.sex.clone();
    for a in &k.abnormalities {
        match a {
            Abnormality::Loss { chromosome } => {
                if let Some(s) = SexSymbol::of_chromosome(*chromosome) {
                    original.push(s);
                }
            }
            Abnormality::Gain { chromosome } => {
                if let Some(s) = SexSymbol::of_chromosome(*chromosome) {
                    if let Some(i) = original.iter().position(|x| *x == s) {
                        original.remove(i);
                    }
                }
            }
            Abnormality::Inv { .. } => {}
        }
    }
    original.sort();
    let base = match original.as_slice() {
        [SexSymbol::X, SexSymbol::X] => BaseKaryotype::XX,
        [SexSymbol::X, SexSymbol::Y] => BaseKaryotype::XY,
        _ => BaseKaryotype::XN,
    };
    (base, original.len() as i64 - 2)
}

/// Compiles a parsed karyotype into a class derived from its canonical
/// karyotype. Identical events are merged into one restriction with a
/// higher count.
pub fn iscn_to_ontology(ont: &mut Ontology, k: &IscnKaryotype, name: &str) -> Result<ClassExpression> {
    k.validate()?;
    let (base, sex_delta) = base_and_sex_events(k);

    let mut events: Vec<KaryotypeEvent> = Vec::new();
    if sex_delta != 0 {
        let target = ont.entity(HUMAN_SEX_CHROMOSOME)?;
        ont.require_class(&target)?;
        let n = sex_delta.unsigned_abs() as u32;
        events.push(if sex_delta < 0 {
            KaryotypeEvent::Deletion { n, target }
        } else {
            KaryotypeEvent::Addition { n, target }
        });
    }
    for a in &k.abnormalities {
        let event = match a {
            Abnormality::Loss { chromosome } => KaryotypeEvent::Deletion {
                n: 1,
                target: ont.entity(&chromosome.class_name())?,
            },
            Abnormality::Gain { chromosome } => KaryotypeEvent::Addition {
                n: 1,
                target: ont.entity(&chromosome.class_name())?,
            },
            Abnormality::Inv {
                chromosome,
                band1,
                band2,
            } => KaryotypeEvent::Inversion {
                n: 1,
                band1: ont.entity(&band_class_name(*chromosome, band1))?,
                band2: ont.entity(&band_class_name(*chromosome, band2))?,
            },
        };
        merge_event(&mut events, event);
    }
    for event in &events {
        let targets = match event {
            KaryotypeEvent::Deletion { target, .. } | KaryotypeEvent::Addition { target, .. } => vec![target],
            KaryotypeEvent::Inversion { band1, band2, .. } => vec![band1, band2],
        };
        for t in targets {
            if !ont.is_class(t) {
                return Err(Error::Undeclared(t.clone()));
            }
        }
    }

    let base_class = base_karyotype(ont, base)?;
    let label = karyotype_label(&render_iscn(k));
    karyotype_class(ont, name, Some(&label), &base_class, &events)
}

fn merge_event(events: &mut Vec<KaryotypeEvent>, event: KaryotypeEvent) {
    let key = event.with_count(1);
    match events.iter_mut().find(|e| e.with_count(1) == key) {
        Some(existing) => *existing = existing.with_count(existing.count() + event.count()),
        None => events.push(event),
    }
}

/// Parses `text` and compiles it under its default class name (`45,X`
/// becomes `k45_X`).
pub fn compile_iscn(ont: &mut Ontology, text: &str) -> Result<(IscnKaryotype, ClassExpression)> {
    let k = parse_iscn(text)?;
    let name = karyotype_class_name(&render_iscn(&k));
    let cls = iscn_to_ontology(ont, &k, &name)?;
    Ok((k, cls))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::karyotype::{human_scaffold, humanbands};
    use crate::owl::Iri;

    fn chr(s: &str) -> ChromosomeId {
        s.parse().unwrap()
    }

    #[test]
    fn parses_reference_karyotypes() {
        assert_eq!(
            parse_iscn("45,X,-Y").unwrap(),
            IscnKaryotype {
                declared_total: 45,
                sex: vec![SexSymbol::X],
                abnormalities: vec![Abnormality::Loss { chromosome: chr("Y") }],
            }
        );
        assert_eq!(
            parse_iscn("46,XY").unwrap(),
            IscnKaryotype { declared_total: 46, sex: vec![SexSymbol::X, SexSymbol::Y], abnormalities: vec![] }
        );
        assert_eq!(parse_iscn("45,X").unwrap().sex, vec![SexSymbol::X]);
        assert_eq!(parse_iscn("46,XN").unwrap().sex, vec![SexSymbol::X, SexSymbol::N]);
    }

    #[test]
    fn parses_inversion() {
        let k = parse_iscn("46,XY,inv(2)(p21q31)").unwrap();
        assert_eq!(
            k.abnormalities,
            vec![Abnormality::Inv { chromosome: chr("2"), band1: "p21".parse().unwrap(), band2: "q31".parse().unwrap() }]
        );
        let k = parse_iscn("46,XX,inv(X)(p11.23q21.1)").unwrap();
        assert_eq!(render_iscn(&k), "46,XX,inv(X)(p11.23q21.1)");
    }

    #[test]
    fn arithmetic_mismatch() {
        assert_eq!(
            parse_iscn("45,XY"),
            Err(IscnError::ArithmeticMismatch { declared: 45, expected: 46 })
        );
        assert!(parse_iscn("47,XY,+21").is_ok());
        assert!(parse_iscn("47,XXY").is_ok());
        assert!(matches!(parse_iscn("46,XY,+21"), Err(IscnError::ArithmeticMismatch { .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(parse_iscn(""), Err(IscnError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_iscn("46XY"), Err(IscnError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_iscn("46,"), Err(IscnError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_iscn("46,XY,"), Err(IscnError::Syntax { offset: 6, .. })));
        assert!(matches!(parse_iscn("46,XY,inv(2)(p21)"), Err(IscnError::Syntax { .. })));
        assert!(matches!(parse_iscn("46,XXXXX"), Err(IscnError::Syntax { .. })));
        assert!(matches!(parse_iscn("046,XY"), Err(IscnError::Syntax { .. })));
        assert!(matches!(parse_iscn("46, XY"), Err(IscnError::Syntax { .. })));
        assert!(matches!(parse_iscn("46,XY,inv(2)(p21q31.123)"), Err(IscnError::Syntax { .. })));
    }

    #[test]
    fn unknown_chromosomes() {
        assert_eq!(
            parse_iscn("47,XY,+23"),
            Err(IscnError::UnknownChromosome { offset: 7, symbol: "23".into() })
        );
        assert!(matches!(parse_iscn("45,X,-Z"), Err(IscnError::UnknownChromosome { .. })));
        assert!(matches!(parse_iscn("45,XY,-0"), Err(IscnError::UnknownChromosome { .. })));
    }

    #[test]
    fn renders_canonically() {
        let k = IscnKaryotype::new(45, vec![SexSymbol::X], vec![Abnormality::Loss { chromosome: chr("Y") }]).unwrap();
        assert_eq!(render_iscn(&k), "45,X,-Y");
        let k = IscnKaryotype::new(46, vec![SexSymbol::X, SexSymbol::N], vec![]).unwrap();
        assert_eq!(render_iscn(&k), "46,XN");
    }

    fn karyotype_onto() -> Ontology {
        let mut o = Ontology::new(Iri::new("http://example.org/", "karyotype").unwrap(), Vec::<(String, String)>::new()).unwrap();
        human_scaffold(&mut o).unwrap();
        o
    }

    #[test]
    fn base_selection() {
        let base = |s: &str| base_and_sex_events(&parse_iscn(s).unwrap());
        assert_eq!(base("46,XY"), (BaseKaryotype::XY, 0));
        assert_eq!(base("46,XX"), (BaseKaryotype::XX, 0));
        assert_eq!(base("46,XN"), (BaseKaryotype::XN, 0));
        assert_eq!(base("45,X"), (BaseKaryotype::XN, -1));
        assert_eq!(base("45,X,-Y"), (BaseKaryotype::XY, 0));
        assert_eq!(base("47,XXY"), (BaseKaryotype::XN, 1));
    }

    #[test]
    fn compile_normal_karyotype() {
        let mut o = karyotype_onto();
        let (_, cls) = compile_iscn(&mut o, "46,XY").unwrap();
        let sups = o.superclasses(cls.as_named().unwrap());
        assert_eq!(sups.len(), 2);
        assert!(o.finalize_check().is_empty());
    }

    #[test]
    fn compile_acquired_loss() {
        let mut o = karyotype_onto();
        let (_, cls) = compile_iscn(&mut o, "45,X,-Y").unwrap();
        let has_event = o.entity("hasEvent").unwrap();
        let hbp = o.entity("hasBreakPoint").unwrap();
        let expected = ClassExpression::exactly(
            1,
            has_event,
            ClassExpression::IntersectionOf(vec![
                o.entity("Deletion").unwrap().into(),
                ClassExpression::some(hbp, o.entity("HumanChromosomeY").unwrap()),
            ]),
        );
        let sups = o.superclasses(cls.as_named().unwrap());
        assert!(sups.contains(&&expected));
        let derived = ClassExpression::some(o.entity("derivedFrom").unwrap(), o.entity("k46_XY").unwrap());
        assert!(sups.contains(&&derived));
    }

    #[test]
    fn compile_inversion_needs_bands() {
        let mut o = karyotype_onto();
        assert!(matches!(compile_iscn(&mut o, "46,XY,inv(2)(p21q31)"), Err(Error::Undeclared(_))));
        humanbands(&mut o, chr("2"), &["p21".parse().unwrap(), "q31".parse().unwrap()]).unwrap();
        let (_, cls) = compile_iscn(&mut o, "46,XY,inv(2)(p21q31)").unwrap();
        assert_eq!(o.superclasses(cls.as_named().unwrap()).len(), 3);
    }

    #[test]
    fn repeated_events_merge() {
        let mut o = karyotype_onto();
        let (_, cls) = compile_iscn(&mut o, "48,XY,+21,+21").unwrap();
        let sups = o.superclasses(cls.as_named().unwrap());
        assert_eq!(sups.len(), 3);
        assert!(sups.iter().any(|e| matches!(e, ClassExpression::ExactCardinality { n: 2, .. })));
    }
}
