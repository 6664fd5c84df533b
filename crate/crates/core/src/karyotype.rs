//! Human chromosome band partonomy, centromere/telomere classes, karyotype
//! events and model statistics.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::owl::{
    declare_property, exactly, owl_and, owl_class, owl_class_iri, owl_some, subclasses_of,
    Characteristics, ClassExpression, ClassFrames, EntityKind, Iri, Ontology,
};

pub const HUMAN_CHROMOSOME: &str = "HumanChromosome";
pub const HUMAN_AUTOSOME: &str = "HumanAutosome";
pub const HUMAN_SEX_CHROMOSOME: &str = "HumanSexChromosome";
pub const HUMAN_CHROMOSOME_BAND: &str = "HumanChromosomeBand";
pub const HUMAN_CENTROMERE: &str = "HumanCentromere";
pub const HUMAN_TELOMERE: &str = "HumanTelomere";
pub const ISCN_EXAMPLE_KARYOTYPE: &str = "ISCNExampleKaryotype";

pub const IS_BAND_OF: &str = "isBandOf";
pub const IS_SUB_BAND_OF: &str = "isSubBandOf";
pub const HAS_EVENT: &str = "hasEvent";
pub const HAS_BREAK_POINT: &str = "hasBreakPoint";
pub const DERIVED_FROM: &str = "derivedFrom";

/// One of the 24 human chromosomes: autosomes 1 to 22, then X and Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ChromosomeId(u8);

impl ChromosomeId {
    pub const X: ChromosomeId = ChromosomeId(23);
    pub const Y: ChromosomeId = ChromosomeId(24);

    pub fn autosome(n: u8) -> Result<Self> {
        if (1..=22).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::InvalidChromosome(n.to_string()))
        }
    }

    pub fn all() -> impl Iterator<Item = ChromosomeId> {
        (1..=24).map(ChromosomeId)
    }

    pub fn is_sex(self) -> bool {
        self.0 > 22
    }

    pub fn class_name(self) -> String {
        format!("{HUMAN_CHROMOSOME}{self}")
    }
}

impl fmt::Display for ChromosomeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            23 => f.write_str("X"),
            24 => f.write_str("Y"),
            n => write!(f, "{n}"),
        }
    }
}

impl FromStr for ChromosomeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Self::X),
            "Y" => Ok(Self::Y),
            _ if !s.is_empty() && !s.starts_with('0') && s.bytes().all(|b| b.is_ascii_digit()) => s
                .parse::<u8>()
                .map_err(|_| Error::InvalidChromosome(s.to_string()))
                .and_then(Self::autosome),
            _ => Err(Error::InvalidChromosome(s.to_string())),
        }
    }
}

impl TryFrom<String> for ChromosomeId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ChromosomeId> for String {
    fn from(c: ChromosomeId) -> Self {
        c.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arm {
    P,
    Q,
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arm::P => "p",
            Arm::Q => "q",
        })
    }
}

/// A band designation such as `p36.31`: an arm followed by a region/band
/// number and an optional one- or two-digit sub-band suffix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BandName {
    arm: Arm,
    digits: String,
}

impl BandName {
    pub fn new(arm: Arm, digits: &str) -> Result<Self> {
        let valid = match digits.split_once('.') {
            None => is_digits(digits),
            Some((int, frac)) => is_digits(int) && is_digits(frac) && frac.len() <= 2,
        };
        if !valid {
            return Err(Error::InvalidBand(format!("{arm}{digits}")));
        }
        Ok(Self {
            arm,
            digits: digits.to_string(),
        })
    }

    pub fn arm(&self) -> Arm {
        self.arm
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    /// The band this one subdivides: `p36.31` has parent `p36.3`. Only a
    /// second sub-band digit makes a band a sub-band.
    pub fn parent(&self) -> Option<BandName> {
        let (_, frac) = self.digits.split_once('.')?;
        (frac.len() == 2).then(|| BandName {
            arm: self.arm,
            digits: self.digits[..self.digits.len() - 1].to_string(),
        })
    }

    pub fn is_sub_band_of(&self, other: &BandName) -> bool {
        self.parent().as_ref() == Some(other)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for BandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.arm, self.digits)
    }
}

impl FromStr for BandName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let arm = match s.as_bytes().first() {
            Some(b'p') => Arm::P,
            Some(b'q') => Arm::Q,
            _ => return Err(Error::InvalidBand(s.to_string())),
        };
        BandName::new(arm, &s[1..]).map_err(|_| Error::InvalidBand(s.to_string()))
    }
}

impl TryFrom<String> for BandName {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BandName> for String {
    fn from(b: BandName) -> Self {
        b.to_string()
    }
}

pub fn band_root_name(c: ChromosomeId) -> String {
    format!("{HUMAN_CHROMOSOME}{c}Band")
}

pub fn arm_class_name(c: ChromosomeId, arm: Arm) -> String {
    format!("{HUMAN_CHROMOSOME}{c}Band{arm}")
}

pub fn band_class_name(c: ChromosomeId, band: &BandName) -> String {
    format!("{HUMAN_CHROMOSOME_BAND}{c}{band}")
}

pub fn centromere_class_name(c: ChromosomeId) -> String {
    format!("{HUMAN_CHROMOSOME}{c}Centromere")
}

pub fn telomere_class_name(c: ChromosomeId) -> String {
    format!("{HUMAN_CHROMOSOME}{c}Telomere")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandEntry {
    pub chromosome: ChromosomeId,
    pub bands: Vec<BandName>,
}

/// Band data for any subset of chromosomes, loaded from a JSON array of
/// `{"chromosome": "1", "bands": ["p36.3", ...]}` objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BandDataset {
    pub entries: Vec<BandEntry>,
}

impl BandDataset {
    pub fn from_json(text: &str) -> Result<Self> {
        let dataset: BandDataset = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("band dataset: {e}")))?;
        dataset.validate()?;
        Ok(dataset)
    }

    pub fn validate(&self) -> Result<()> {
        let mut chromosomes = HashSet::new();
        for entry in &self.entries {
            if !chromosomes.insert(entry.chromosome) {
                return Err(Error::InvalidSpec(format!(
                    "band dataset lists chromosome {} twice",
                    entry.chromosome
                )));
            }
            check_distinct_bands(entry.chromosome, &entry.bands)?;
        }
        Ok(())
    }

    pub fn band_count(&self) -> usize {
        self.entries.iter().map(|e| e.bands.len()).sum()
    }
}

fn check_distinct_bands(c: ChromosomeId, bands: &[BandName]) -> Result<()> {
    let mut seen = HashSet::new();
    match bands.iter().find(|b| !seen.insert(*b)) {
        Some(dup) => Err(Error::InvalidSpec(format!(
            "chromosome {c}: band {dup} listed twice"
        ))),
        None => Ok(()),
    }
}

/// Chromosome taxonomy plus the band and event properties.
pub fn human_scaffold(ont: &mut Ontology) -> Result<()> {
    let chromosome = owl_class(ont, HUMAN_CHROMOSOME, ClassFrames::new())?;
    let autosome = owl_class(ont, HUMAN_AUTOSOME, ClassFrames::new().subclass(chromosome.clone()))?;
    let sex = owl_class(ont, HUMAN_SEX_CHROMOSOME, ClassFrames::new().subclass(chromosome))?;
    for name in [HUMAN_CHROMOSOME_BAND, HUMAN_CENTROMERE, HUMAN_TELOMERE] {
        owl_class(ont, name, ClassFrames::new())?;
    }
    for c in ChromosomeId::all() {
        let parent = if c.is_sex() { &sex } else { &autosome };
        owl_class(ont, &c.class_name(), ClassFrames::new().subclass(parent.clone()))?;
    }
    for name in [IS_BAND_OF, IS_SUB_BAND_OF, HAS_EVENT, HAS_BREAK_POINT, DERIVED_FROM] {
        declare_property(ont, name, EntityKind::ObjectProperty, Characteristics::default())?;
    }
    Ok(())
}

fn scaffold_class(ont: &Ontology, name: &str) -> Result<Iri> {
    let iri = ont.entity(name)?;
    if ont.is_class(&iri) {
        Ok(iri)
    } else {
        Err(Error::MissingScaffold(name.to_string()))
    }
}

fn scaffold_property(ont: &Ontology, name: &str) -> Result<Iri> {
    let iri = ont.entity(name)?;
    if ont.kind_of(&iri) == Some(EntityKind::ObjectProperty) {
        Ok(iri)
    } else {
        Err(Error::MissingScaffold(name.to_string()))
    }
}

/// Band partonomy for one chromosome: a per-chromosome band root, one class
/// per arm in use, one class per band, and `isSubBandOf` links from each
/// sub-band to its parent band.
pub fn humanbands(ont: &mut Ontology, chromosome: ChromosomeId, bands: &[BandName]) -> Result<()> {
    check_distinct_bands(chromosome, bands)?;
    for band in bands {
        if let Some(parent) = band.parent() {
            if !bands.contains(&parent) {
                return Err(Error::MissingParentBand {
                    band: band.to_string(),
                    parent: parent.to_string(),
                });
            }
        }
    }
    let band_top = scaffold_class(ont, HUMAN_CHROMOSOME_BAND)?;
    let chromosome_class = scaffold_class(ont, &chromosome.class_name())?;
    let is_band_of = scaffold_property(ont, IS_BAND_OF)?;
    let is_sub_band_of = scaffold_property(ont, IS_SUB_BAND_OF)?;

    let root = owl_class(
        ont,
        &band_root_name(chromosome),
        ClassFrames::new()
            .subclass(band_top)
            .subclasses(owl_some(&is_band_of, [chromosome_class])?),
    )?;
    let arms: BTreeSet<Arm> = bands.iter().map(BandName::arm).collect();
    for arm in arms {
        owl_class(ont, &arm_class_name(chromosome, arm), ClassFrames::new().subclass(root.clone()))?;
    }
    for band in bands {
        let arm = ont.entity(&arm_class_name(chromosome, band.arm()))?;
        let mut frames = ClassFrames::new().subclass(arm);
        if let Some(parent) = band.parent() {
            let parent = ont.entity(&band_class_name(chromosome, &parent))?;
            frames = frames.subclasses(owl_some(&is_sub_band_of, [parent])?);
        }
        owl_class(ont, &band_class_name(chromosome, band), frames)?;
    }
    Ok(())
}

/// Runs [`humanbands`] for every entry of a dataset.
pub fn humanbands_dataset(ont: &mut Ontology, dataset: &BandDataset) -> Result<()> {
    dataset.validate()?;
    for entry in &dataset.entries {
        humanbands(ont, entry.chromosome, &entry.bands)?;
    }
    Ok(())
}

/// One centromere and one telomere class per chromosome. The telomere class
/// stands for both the pTer and qTer ends.
pub fn centromere_telomere(ont: &mut Ontology, chromosomes: &[ChromosomeId]) -> Result<()> {
    let centromere = scaffold_class(ont, HUMAN_CENTROMERE)?;
    let telomere = scaffold_class(ont, HUMAN_TELOMERE)?;
    let is_band_of = scaffold_property(ont, IS_BAND_OF)?;
    let mut targets = Vec::with_capacity(chromosomes.len());
    for &c in chromosomes {
        let iri = ont.entity(&c.class_name())?;
        if !ont.is_class(&iri) {
            return Err(Error::InvalidChromosome(c.to_string()));
        }
        targets.push((c, iri));
    }
    for (c, chromosome_class) in targets {
        let part_of = owl_some(&is_band_of, [chromosome_class])?;
        owl_class(
            ont,
            &centromere_class_name(c),
            ClassFrames::new().subclass(centromere.clone()).subclasses(part_of.clone()),
        )?;
        owl_class(
            ont,
            &telomere_class_name(c),
            ClassFrames::new().subclass(telomere.clone()).subclasses(part_of),
        )?;
    }
    Ok(())
}

/// A change event relative to a canonical karyotype.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KaryotypeEvent {
    Deletion { n: u32, target: Iri },
    Addition { n: u32, target: Iri },
    Inversion { n: u32, band1: Iri, band2: Iri },
}

impl KaryotypeEvent {
    pub fn count(&self) -> u32 {
        match self {
            KaryotypeEvent::Deletion { n, .. }
            | KaryotypeEvent::Addition { n, .. }
            | KaryotypeEvent::Inversion { n, .. } => *n,
        }
    }

    pub fn with_count(&self, n: u32) -> Self {
        let mut out = self.clone();
        match &mut out {
            KaryotypeEvent::Deletion { n: m, .. }
            | KaryotypeEvent::Addition { n: m, .. }
            | KaryotypeEvent::Inversion { n: m, .. } => *m = n,
        }
        out
    }

    /// Name of the event's class.
    pub fn class_name(&self) -> &'static str {
        match self {
            KaryotypeEvent::Deletion { .. } => "Deletion",
            KaryotypeEvent::Addition { .. } => "Addition",
            KaryotypeEvent::Inversion { .. } => "Inversion",
        }
    }

    fn break_points(&self) -> Vec<&Iri> {
        match self {
            KaryotypeEvent::Deletion { target, .. } | KaryotypeEvent::Addition { target, .. } => {
                vec![target]
            }
            KaryotypeEvent::Inversion { band1, band2, .. } => vec![band1, band2],
        }
    }
}

/// `hasEvent exactly n (EventClass and hasBreakPoint some b ...)`.
pub fn event_restriction(ont: &Ontology, event: &KaryotypeEvent) -> Result<ClassExpression> {
    if event.count() == 0 {
        return Err(Error::ZeroCardinality);
    }
    for target in event.break_points() {
        ont.require_class(target)?;
    }
    let has_event = ont.entity(HAS_EVENT)?;
    let has_break_point = ont.entity(HAS_BREAK_POINT)?;
    let event_class = ClassExpression::Named(ont.entity(event.class_name())?);
    let mut operands = vec![event_class];
    operands.extend(owl_some(&has_break_point, event.break_points())?);
    Ok(exactly(event.count(), &has_event, owl_and(operands)?))
}

/// The canonical karyotypes events are applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKaryotype {
    XX,
    XY,
    XN,
}

impl BaseKaryotype {
    pub fn iscn(self) -> &'static str {
        match self {
            BaseKaryotype::XX => "46,XX",
            BaseKaryotype::XY => "46,XY",
            BaseKaryotype::XN => "46,XN",
        }
    }

    pub fn class_name(self) -> String {
        karyotype_class_name(self.iscn())
    }
}

/// `45,X` becomes `k45_X`.
pub fn karyotype_class_name(iscn: &str) -> String {
    let mut name = String::from("k");
    for c in iscn.chars() {
        if c.is_ascii_alphanumeric() {
            name.push(c);
        } else if !name.ends_with('_') {
            name.push('_');
        }
    }
    while name.ends_with('_') && name.len() > 1 {
        name.pop();
    }
    name
}

pub fn karyotype_label(iscn: &str) -> String {
    format!("The {iscn} karyotype")
}

fn example_karyotype_root(ont: &mut Ontology) -> Result<ClassExpression> {
    owl_class(ont, ISCN_EXAMPLE_KARYOTYPE, ClassFrames::new())
}

/// Declares one of the canonical karyotypes.
pub fn base_karyotype(ont: &mut Ontology, base: BaseKaryotype) -> Result<Iri> {
    let root = example_karyotype_root(ont)?;
    let cls = owl_class(
        ont,
        &base.class_name(),
        ClassFrames::new().label(karyotype_label(base.iscn())).subclass(root),
    )?;
    Ok(cls.as_named().cloned().expect("named class"))
}

/// A karyotype defined by derivation from another karyotype plus events.
pub fn karyotype_class(
    ont: &mut Ontology,
    name: &str,
    label: Option<&str>,
    derived_from: &Iri,
    events: &[KaryotypeEvent],
) -> Result<ClassExpression> {
    ont.require_class(derived_from)?;
    let derived = scaffold_property(ont, DERIVED_FROM)?;
    scaffold_property(ont, HAS_EVENT)?;
    scaffold_property(ont, HAS_BREAK_POINT)?;
    let restrictions = events
        .iter()
        .map(|e| event_restriction(ont, e))
        .collect::<Result<Vec<_>>>()?;
    let iri = ont.entity(name)?;

    let root = example_karyotype_root(ont)?;
    for event in events {
        owl_class(ont, event.class_name(), ClassFrames::new())?;
    }
    let mut frames = ClassFrames::new()
        .subclass(root)
        .subclasses(owl_some(&derived, [derived_from])?)
        .subclasses(restrictions);
    if let Some(label) = label {
        frames = frames.label(label);
    }
    owl_class_iri(ont, iri, frames)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatsCategory {
    Chromosome,
    Centromere,
    Telomere,
    Bands,
    Total,
}

impl fmt::Display for StatsCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatsCategory::Chromosome => "Chromosome",
            StatsCategory::Centromere => "Centromere",
            StatsCategory::Telomere => "Telomere",
            StatsCategory::Bands => "Bands and Sub-bands",
            StatsCategory::Total => "Total Number",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub category: StatsCategory,
    pub biological: usize,
    pub classes: usize,
}

/// Per-category counts of biological objects and of classes.
///
/// Class counts include the category root and every class asserted below
/// it. Biological objects are the concrete chromosomes, one centromere and
/// two telomeres per chromosome, and the individual band classes; band
/// roots and arm classes are structural only.
pub fn karyotype_stats(ont: &Ontology) -> Vec<StatsRow> {
    let below = |root: &str| -> Option<BTreeSet<Iri>> {
        let iri = ont.entity(root).ok()?;
        subclasses_of(ont, &iri, true).ok()
    };
    let row = |category, root: &str, biological: &dyn Fn(&BTreeSet<Iri>) -> usize| match below(root) {
        Some(descendants) => StatsRow {
            category,
            biological: biological(&descendants),
            classes: descendants.len() + 1,
        },
        None => StatsRow {
            category,
            biological: 0,
            classes: 0,
        },
    };

    let chromosomes = row(StatsCategory::Chromosome, HUMAN_CHROMOSOME, &|d| {
        d.iter()
            .filter(|iri| {
                iri.fragment()
                    .strip_prefix(HUMAN_CHROMOSOME)
                    .is_some_and(|rest| rest.parse::<ChromosomeId>().is_ok())
            })
            .count()
    });
    let centromeres = row(StatsCategory::Centromere, HUMAN_CENTROMERE, &|d| d.len());
    let telomeres = row(StatsCategory::Telomere, HUMAN_TELOMERE, &|d| 2 * d.len());
    let bands = row(StatsCategory::Bands, HUMAN_CHROMOSOME_BAND, &|d| {
        d.iter().filter(|iri| is_band_class(iri.fragment())).count()
    });
    let rows = [chromosomes, centromeres, telomeres, bands];
    let total = StatsRow {
        category: StatsCategory::Total,
        biological: rows.iter().map(|r| r.biological).sum(),
        classes: rows.iter().map(|r| r.classes).sum(),
    };
    let mut out = rows.to_vec();
    out.push(total);
    out
}

fn is_band_class(fragment: &str) -> bool {
    let Some(rest) = fragment.strip_prefix(HUMAN_CHROMOSOME_BAND) else {
        return false;
    };
    let Some(split) = rest.find(['p', 'q']) else {
        return false;
    };
    rest[..split].parse::<ChromosomeId>().is_ok() && rest[split..].parse::<BandName>().is_ok()
}

/// Renders stats rows as an aligned text table.
pub fn format_stats(rows: &[StatsRow]) -> String {
    let mut out = format!("{:<22}{:>18}{:>19}\n", "Class Type", "Biological Object", "Number of Classes");
    for r in rows {
        out.push_str(&format!("{:<22}{:>18}{:>19}\n", r.category.to_string(), r.biological, r.classes));
    }
    out
}
