//! Corpus-wide property suites with counterexample reporting.
//!
//! Every suite walks the corpus in order, builds instances and hands each
//! to a property check in [`checks`]. Pairs run in parallel; results are
//! merged in corpus order so reports do not depend on scheduling.

pub mod checks;
mod corpus;

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{Checker, Instance};
pub use corpus::{
    corpus_msets, generate_corpus, integer_msets, Corpus, CorpusEntry, CorpusSpec, IntegerCase, MsetPolicy,
};

use crate::doc::{self, IdealDoc, MsetDoc};
use crate::error::{Error, Result};
use crate::ideal::{self, Ideal, MultiplicativeSet};
use crate::ring::{construct_ring_with, BuildOptions, Ring, RingSpec};

/// Deliberate corruption of a predicate, for checking that suites fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// Every S-primary (and primary) verdict is inverted.
    NegateSPrimary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    NotApplicable,
    Fails(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Intersection,
    QuotientTransfer,
    NilPrimary,
    Spectrum,
    Localization,
    MainTheorem,
    ColonSplit,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Intersection,
        Suite::QuotientTransfer,
        Suite::NilPrimary,
        Suite::Spectrum,
        Suite::Localization,
        Suite::MainTheorem,
        Suite::ColonSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Intersection => "intersection",
            Suite::QuotientTransfer => "quotient-transfer",
            Suite::NilPrimary => "nil-primary",
            Suite::Spectrum => "spectrum",
            Suite::Localization => "localization",
            Suite::MainTheorem => "main-theorem",
            Suite::ColonSplit => "colon-split",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    IntersectionClosure,
    IntersectionMeet,
    QuotientNil,
    QuotientReduced,
    QuotientDivided,
    QuotientNonnil,
    NilPrimary,
    Spectrum,
    SpectrumIntegers,
    LocalizationImage,
    LocalizationDecompose,
    MainDecompose,
    MainIrreducible,
    MainMinimal,
    MainSMaximal,
    MainIntegers,
    ColonSplit,
}

impl Property {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .expect("unit variant")
    }
}

/// A failing instance in serialized form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub property: Property,
    pub ring: RingSpec,
    pub mset: MsetDoc,
    pub ideals: Vec<IdealDoc>,
    #[serde(default)]
    pub elements: Vec<Value>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Vacuous => 2,
        }
    }

    /// Fail beats vacuous beats pass.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        statuses.into_iter().fold(Status::Pass, |acc, s| match (acc, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Vacuous, _) | (_, Status::Vacuous) => Status::Vacuous,
            _ => Status::Pass,
        })
    }
}

/// Most counterexamples kept in a report; `failures` counts all of them.
pub const MAX_REPORTED: usize = 25;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    /// Instances whose hypotheses held and whose conclusion was checked.
    pub instances: u64,
    pub not_applicable: u64,
    /// Checked instances per property.
    pub clauses: BTreeMap<Property, u64>,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Corpus pairs that contributed no checked instance.
    pub vacuous_pairs: Vec<String>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
        };
        let mut out = format!(
            "{}: {status} ({} instances, {} not applicable, {} ms)\n",
            self.suite.name(),
            self.instances,
            self.not_applicable,
            self.wall_time_ms
        );
        for (p, n) in &self.clauses {
            out.push_str(&format!("  {}: {n}\n", p.name()));
        }
        out.push_str(&format!("  {} counterexamples\n", self.failures));
        for c in &self.counterexamples {
            out.push_str(&format!("  - {} on {}: {}\n", c.property.name(), c.ring.describe(), c.detail));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LabConfig {
    pub mutation: Mutation,
}

/// Per-pair tally, merged in corpus order.
#[derive(Default)]
struct Tally {
    instances: u64,
    not_applicable: u64,
    clauses: BTreeMap<Property, u64>,
    failures: Vec<Counterexample>,
}

impl Tally {
    fn record(&mut self, property: Property, inst: &Instance, outcome: Result<Outcome>) {
        let outcome = outcome.unwrap_or_else(|e| Outcome::Fails(format!("error: {e}")));
        match outcome {
            Outcome::Holds => {
                self.instances += 1;
                *self.clauses.entry(property).or_default() += 1;
            }
            Outcome::NotApplicable => self.not_applicable += 1,
            Outcome::Fails(detail) => {
                self.instances += 1;
                *self.clauses.entry(property).or_default() += 1;
                self.failures.push(serialize(property, inst, detail));
            }
        }
    }

    fn error(&mut self, property: Property, inst: &Instance, e: Error) {
        self.record(property, inst, Err(e));
    }
}

fn serialize(property: Property, inst: &Instance, detail: String) -> Counterexample {
    Counterexample {
        property,
        ring: inst.ring.spec(),
        mset: doc::mset_to_doc(&inst.mset),
        ideals: inst.ideals.iter().map(doc::ideal_to_doc).collect(),
        elements: inst
            .elements
            .iter()
            .map(|e| inst.ring.payload(e).unwrap_or(Value::Null))
            .collect(),
        detail,
    }
}

fn inst(ring: &Ring, s: &MultiplicativeSet, ideals: Vec<Ideal>) -> Instance {
    Instance {
        ring: ring.clone(),
        mset: s.clone(),
        ideals,
        elements: vec![],
    }
}

fn pair_label(ring: &Ring, s: &MultiplicativeSet) -> String {
    format!("{} with S = {}", ring.describe(), s.describe())
}

type PairFn = fn(&Checker, &Ring, &MultiplicativeSet, &mut Tally) -> Result<()>;

fn pair_driver(suite: Suite) -> PairFn {
    match suite {
        Suite::Intersection => intersection_pair,
        Suite::QuotientTransfer => quotient_pair,
        Suite::NilPrimary => nil_primary_pair,
        Suite::Spectrum => spectrum_pair,
        Suite::Localization => localization_pair,
        Suite::MainTheorem => main_pair,
        Suite::ColonSplit => colon_split_ring,
    }
}

fn intersection_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    let cands = checks::candidates(ring, s, false)?;
    let mut groups: Vec<(Ideal, Vec<Ideal>)> = Vec::new();
    for q in &cands {
        if !c.s_primary(q, s)? {
            continue;
        }
        let key = ideal::saturation(&ideal::radical(q), s)?;
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, g)) => g.push(q.clone()),
            None => groups.push((key, vec![q.clone()])),
        }
    }
    for (_, group) in &groups {
        for k in 2..=3 {
            for set in group.iter().cloned().combinations(k) {
                let i = inst(ring, s, set);
                t.record(Property::IntersectionClosure, &i, checks::intersection_closure(c, &i.ideals, s));
            }
        }
    }
    let meeting: Vec<Ideal> = ideal::enumerate_ideals(ring)?
        .into_iter()
        .filter(|j| !ideal::disjoint_from(j, s).unwrap_or(true))
        .collect();
    for q in &cands {
        if !c.primary(q)? {
            continue;
        }
        for j in &meeting {
            let i = inst(ring, s, vec![q.clone(), j.clone()]);
            t.record(Property::IntersectionMeet, &i, checks::intersection_meet(c, q, j, s));
        }
    }
    Ok(())
}

fn quotient_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    let nil = ideal::nilradical(ring);
    let ideals = ideal::enumerate_ideals(ring)?;
    let mut bases: Vec<(Property, Ideal)> = Vec::new();
    for i in &ideals {
        if i.is_proper() && i.is_subset(&nil)? {
            bases.push((Property::QuotientNil, i.clone()));
        }
    }
    if nil.is_proper() {
        bases.push((Property::QuotientReduced, nil.clone()));
    }
    for i in &ideals {
        if checks::nonnil_candidate(i, s)? {
            bases.push((Property::QuotientNonnil, i.clone()));
        }
    }
    for (property, base) in bases {
        let q = checks::Quotient::new(&base, s)?;
        let nonnil = property == Property::QuotientNil;
        for k in q.targets(nonnil)? {
            let i = inst(ring, s, vec![base.clone(), k.clone()]);
            t.record(property, &i, q.clause(c, &k, nonnil));
        }
    }
    let hyp = checks::DividedHypothesis::derive(ring, s)?;
    if !hyp.holds {
        t.not_applicable += 1;
        return Ok(());
    }
    for i in checks::candidates(ring, s, true)? {
        let ii = inst(ring, s, vec![i.clone()]);
        t.record(Property::QuotientDivided, &ii, hyp.clause(c, &i, s));
    }
    Ok(())
}

fn nil_primary_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    if !checks::nil_primary_applies(ring, s)? {
        t.not_applicable += 1;
        return Ok(());
    }
    let nil = ideal::nilradical(ring);
    for i in ideal::enumerate_ideals(ring)? {
        if i.is_subset(&nil)? {
            let ii = inst(ring, s, vec![i.clone()]);
            t.record(Property::NilPrimary, &ii, checks::nil_primary(c, &i, s));
        }
    }
    Ok(())
}

fn spectrum_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    let i = inst(ring, s, vec![]);
    t.record(Property::Spectrum, &i, checks::spectrum(c, ring, s));
    Ok(())
}

fn localization_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    let (l, map) = ideal::localize(ring, s)?;
    for q in checks::candidates(ring, s, false)? {
        let i = inst(ring, s, vec![q.clone()]);
        t.record(Property::LocalizationImage, &i, checks::localization_image(c, &q, s, &l, &map));
    }
    for k in ideal::enumerate_ideals(&l)? {
        let contraction = ideal::preimage_ideal(&map, &k)?;
        let i = inst(ring, s, vec![contraction.clone()]);
        t.record(
            Property::LocalizationDecompose,
            &i,
            checks::localization_decompose(c, &contraction, &l, &map),
        );
    }
    Ok(())
}

fn main_pair(c: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    let family = checks::candidates(ring, s, true)?;
    for i in &family {
        let ii = inst(ring, s, vec![i.clone()]);
        t.record(Property::MainDecompose, &ii, checks::main_decompose(i, s));
        t.record(Property::MainIrreducible, &ii, checks::main_irreducible(c, i, s));
        t.record(Property::MainMinimal, &ii, checks::main_minimal(i, s));
    }
    let ii = inst(ring, s, vec![]);
    t.record(Property::MainSMaximal, &ii, checks::main_s_maximal(&family, s));
    Ok(())
}

/// Runs once per ring (the multiplicative set plays no part).
fn colon_split_ring(_: &Checker, ring: &Ring, s: &MultiplicativeSet, t: &mut Tally) -> Result<()> {
    for i in ideal::enumerate_ideals(ring)? {
        for e in ring.elements()? {
            let ii = Instance {
                ring: ring.clone(),
                mset: s.clone(),
                ideals: vec![i.clone()],
                elements: vec![e.clone()],
            };
            t.record(Property::ColonSplit, &ii, checks::colon_split(&i, &e));
        }
    }
    Ok(())
}

/// Integer instances for the spectrum and main theorem suites.
fn integer_units(suite: Suite, corpus: &Corpus) -> Vec<(MultiplicativeSet, Vec<u64>, Property)> {
    match suite {
        Suite::Spectrum if corpus.spec.integer_bound >= 2 => {
            let s = MultiplicativeSet::complement_of_prime(3).expect("prime");
            vec![(s, vec![2, 3, 5, 7, 11], Property::SpectrumIntegers)]
        }
        Suite::MainTheorem => corpus
            .integers
            .iter()
            .map(|case| (case.mset.clone(), case.moduli.clone(), Property::MainIntegers))
            .collect(),
        _ => vec![],
    }
}

pub fn run_suite(suite: Suite, corpus: &Corpus, config: &LabConfig) -> SuiteReport {
    let start = Instant::now();
    let checker = Checker {
        mutation: config.mutation,
    };
    let driver = pair_driver(suite);
    let units: Vec<(&Ring, MultiplicativeSet)> = if suite == Suite::ColonSplit {
        corpus
            .entries
            .iter()
            .map(|e| (&e.ring, MultiplicativeSet::trivial(&e.ring)))
            .collect()
    } else {
        corpus.pairs().into_iter().map(|(e, s)| (&e.ring, s.clone())).collect()
    };
    let mut tallies: Vec<(String, Tally)> = units
        .par_iter()
        .map(|(ring, s)| {
            let mut t = Tally::default();
            if let Err(e) = driver(&checker, ring, s, &mut t) {
                t.error(Property::for_suite(suite), &inst(ring, s, vec![]), e);
            }
            (pair_label(ring, s), t)
        })
        .collect();
    let integer: Vec<(String, Tally)> = integer_units(suite, corpus)
        .into_par_iter()
        .map(|(s, moduli, property)| {
            let mut t = Tally::default();
            for n in moduli {
                let i = inst(&Ring::Integers, &s, vec![Ideal::integers(n)]);
                let outcome = checks::check(property, &checker, &i);
                t.record(property, &i, outcome);
            }
            (pair_label(&Ring::Integers, &s), t)
        })
        .collect();
    tallies.extend(integer);
    let mut report = SuiteReport {
        suite,
        status: Status::Pass,
        instances: 0,
        not_applicable: 0,
        clauses: BTreeMap::new(),
        failures: 0,
        counterexamples: vec![],
        vacuous_pairs: vec![],
        wall_time_ms: 0,
    };
    for (label, t) in tallies {
        if t.instances == 0 {
            report.vacuous_pairs.push(label);
        }
        report.instances += t.instances;
        report.not_applicable += t.not_applicable;
        for (p, n) in t.clauses {
            *report.clauses.entry(p).or_default() += n;
        }
        report.failures += t.failures.len() as u64;
        for cx in t.failures {
            if report.counterexamples.len() < MAX_REPORTED {
                report.counterexamples.push(cx);
            }
        }
    }
    report.status = if report.failures > 0 {
        Status::Fail
    } else if report.instances == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}

impl Property {
    /// Property charged with driver errors.
    fn for_suite(suite: Suite) -> Property {
        match suite {
            Suite::Intersection => Property::IntersectionClosure,
            Suite::QuotientTransfer => Property::QuotientNil,
            Suite::NilPrimary => Property::NilPrimary,
            Suite::Spectrum => Property::Spectrum,
            Suite::Localization => Property::LocalizationImage,
            Suite::MainTheorem => Property::MainDecompose,
            Suite::ColonSplit => Property::ColonSplit,
        }
    }
}

pub fn run_all(corpus: &Corpus, config: &LabConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, corpus, config)).collect()
}

fn suite_from_spec(suite: Suite, spec: &CorpusSpec) -> Result<SuiteReport> {
    let corpus = generate_corpus(spec)?;
    Ok(run_suite(suite, &corpus, &LabConfig::default()))
}

pub fn suite_intersection(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::Intersection, spec)
}

pub fn suite_quotient_transfer(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::QuotientTransfer, spec)
}

pub fn suite_nil_primary(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::NilPrimary, spec)
}

pub fn suite_spectrum(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::Spectrum, spec)
}

pub fn suite_localization(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::Localization, spec)
}

pub fn suite_main_theorem(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::MainTheorem, spec)
}

pub fn suite_colon_split(spec: &CorpusSpec) -> Result<SuiteReport> {
    suite_from_spec(Suite::ColonSplit, spec)
}

/// Rebuilds a serialized instance and runs its property again.
pub fn rerun(cx: &Counterexample, config: &LabConfig) -> Result<Outcome> {
    let ring = construct_ring_with(
        &cx.ring,
        &BuildOptions {
            size_cap: u16::MAX as usize,
        },
    )?;
    let mset = doc::mset_from_doc(&ring, &cx.mset)?;
    let ideals = cx
        .ideals
        .iter()
        .map(|d| doc::ideal_from_doc(&ring, d))
        .collect::<Result<Vec<_>>>()?;
    let elements = cx.elements.iter().map(|v| ring.element(v)).collect::<Result<Vec<_>>>()?;
    let arity = match cx.property {
        Property::Spectrum | Property::MainSMaximal => 0,
        Property::IntersectionMeet
        | Property::QuotientNil
        | Property::QuotientReduced
        | Property::QuotientNonnil => 2,
        Property::IntersectionClosure => ideals.len().max(1),
        _ => 1,
    };
    if ideals.len() < arity || (cx.property == Property::ColonSplit && elements.is_empty()) {
        return Err(Error::Document(format!(
            "{} needs {arity} ideals",
            cx.property.name()
        )));
    }
    let checker = Checker {
        mutation: config.mutation,
    };
    let instance = Instance {
        ring,
        mset,
        ideals,
        elements,
    };
    checks::check(cx.property, &checker, &instance)
}
