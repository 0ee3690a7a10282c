//! File ingestion, reports, and the cross-checks between the topological
//! and algebraic Cohen-Macaulay tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{
    enumerate_all_complexes, random_complex, random_pure_complex, FVector, Face, SimplicialComplex,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::face_ring::{
    algebraic_verdict, betti_numbers, koszul_strand, link_ideal_two_ways,
    localization_identity_check, nonsquarefree_vanishing_check, AlgebraicVerdict, BettiTable,
    MultiDegree,
};
use crate::homology::{homology_dims, reduced_cohomology, reduced_homology, BettiVector};
use crate::linalg::FieldSpec;
use crate::sheaf::{
    closed_cover_cohomology, constant_sheaf, global_sections, hypercohomology, koszul_sheaf_strand,
    sheaf_cohomology, simple_sheaf_cohomology_check, FacePoset, PosetSheaf,
};

/// Largest complex the sheaf engine is run on from the command line.
pub const SHEAF_MAX_VERTICES: usize = 5;

/// The on-disk form of a complex: `{"n": 4, "facets": [[0, 1], [2, 3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            n: complex.n(),
            facets: complex.facets().iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        for facet in &self.facets {
            if facet.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Input(format!(
                    "facet {facet:?} is not strictly increasing"
                )));
            }
        }
        if self.n == 0 {
            return match self.facets.iter().all(Vec::is_empty) {
                true => Ok(SimplicialComplex::irrelevant()),
                false => Err(Error::Input(
                    "a complex with n = 0 has only the empty facet".into(),
                )),
            };
        }
        if self.facets.iter().any(Vec::is_empty) {
            return Err(Error::Input(
                "the empty facet only appears in the complex with n = 0".into(),
            ));
        }
        SimplicialComplex::from_vertex_lists(self.n, &self.facets)
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexFile>(text)?.to_complex()
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

/// A link with nonvanishing homology below its top degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkWitness {
    pub face: Face,
    pub degree: i64,
    pub link_dim: isize,
    pub homology: usize,
}

/// The topological verdict: `H̃_i(lk σ) = 0` for all `i < dim lk σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReisnerVerdict {
    pub field: FieldSpec,
    pub is_cm: bool,
    /// The condition on links of nonempty faces.
    pub links_condition: bool,
    /// The condition on Σ itself, i.e. on `lk ∅`.
    pub complex_condition: bool,
    /// First failure in graded-lex face order.
    pub witness: Option<LinkWitness>,
    /// First failure among nonempty faces.
    pub link_witness: Option<LinkWitness>,
}

fn first_failure(
    complex: &SimplicialComplex,
    sigma: Face,
    field: FieldSpec,
) -> Option<LinkWitness> {
    let link = complex
        .link(sigma)
        .expect("faces of the complex have links")
        .complex;
    let link_dim = link.dim();
    let homology = reduced_homology(&link, field);
    (-1..link_dim as i64)
        .find(|&i| homology.get(i) != 0)
        .map(|degree| LinkWitness {
            face: sigma,
            degree,
            link_dim,
            homology: homology.get(degree),
        })
}

pub fn reisner_criterion(complex: &SimplicialComplex, field: FieldSpec) -> ReisnerVerdict {
    let complex_witness = first_failure(complex, Face::EMPTY, field);
    let link_witness = complex
        .faces()
        .into_iter()
        .filter(|f| !f.is_empty())
        .find_map(|sigma| first_failure(complex, sigma, field));
    ReisnerVerdict {
        field,
        is_cm: complex_witness.is_none() && link_witness.is_none(),
        links_condition: link_witness.is_none(),
        complex_condition: complex_witness.is_none(),
        witness: complex_witness.or_else(|| link_witness.clone()),
        link_witness,
    }
}

/// Recomputes `H̃_i(lk σ)` at a witness.
pub fn witness_holds(
    complex: &SimplicialComplex,
    witness: &LinkWitness,
    field: FieldSpec,
) -> Result<bool> {
    let link = complex.link(witness.face)?.complex;
    Ok(witness.degree < link.dim() as i64
        && reduced_homology(&link, field).get(witness.degree) != 0)
}

/// One row of the decomposition probe: `β_r` against the two readings of
/// the cohomological formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub r: usize,
    pub beta: usize,
    /// `Σ_j C(n,j) dim H̃^{j−r−1}(Σ)`; also the proof's formula with `r = −i`.
    pub statement: usize,
    /// `Σ_j C(n,j) dim H̃^{j+r−1}(Σ)` with `r = i`.
    pub literal_proof: usize,
    pub statement_matches: bool,
    pub literal_proof_matches: bool,
    pub in_guaranteed_range: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionSummary {
    pub name: String,
    pub matching_degrees: Vec<usize>,
    pub matches_on_guaranteed_range: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTable {
    pub field: FieldSpec,
    pub n: usize,
    pub dim: isize,
    /// `[n − dim Σ, n]`, where the vanishing argument applies.
    pub guaranteed_range: (usize, usize),
    pub rows: Vec<ProbeRow>,
    pub conventions: Vec<ConventionSummary>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Compares `β_r` with both readings of the decomposition of Tor into
/// reduced cohomology. Reports, never asserts.
pub fn decomposition_probe(complex: &SimplicialComplex, field: FieldSpec) -> Result<ProbeTable> {
    if !complex.is_pure() {
        return Err(Error::ProbeRefused {
            reason: "the complex is not pure".into(),
            face: None,
            degree: None,
        });
    }
    if let Some(w) = reisner_criterion(complex, field).link_witness {
        return Err(Error::ProbeRefused {
            reason: format!(
                "H̃_{}(lk {}) = {} below the top degree {}",
                w.degree, w.face, w.homology, w.link_dim
            ),
            face: Some(w.face),
            degree: Some(w.degree),
        });
    }
    let n = complex.n();
    let dim = complex.dim();
    let betti = betti_numbers(complex, field)?;
    let cohomology = reduced_cohomology(complex, field);
    let rhs = |shift: i64| -> usize {
        (0..=n)
            .map(|j| binomial(n, j) * cohomology.get(j as i64 + shift))
            .sum()
    };
    let lo = (n as isize - dim).max(0) as usize;
    let rows: Vec<ProbeRow> = (0..=n)
        .map(|r| {
            let beta = betti.get(r);
            let statement = rhs(-(r as i64) - 1);
            let literal_proof = rhs(r as i64 - 1);
            ProbeRow {
                r,
                beta,
                statement,
                literal_proof,
                statement_matches: statement == beta,
                literal_proof_matches: literal_proof == beta,
                in_guaranteed_range: r >= lo,
            }
        })
        .collect();
    let summarize = |name: &str, pick: fn(&ProbeRow) -> bool| {
        let matching_degrees: Vec<usize> = rows.iter().filter(|r| pick(r)).map(|r| r.r).collect();
        ConventionSummary {
            name: name.into(),
            matches_on_guaranteed_range: rows.iter().filter(|r| r.in_guaranteed_range).all(pick),
            matching_degrees,
        }
    };
    let conventions = vec![
        summarize("statement", |r| r.statement_matches),
        summarize("literal_proof", |r| r.literal_proof_matches),
    ];
    Ok(ProbeTable {
        field,
        n,
        dim,
        guaranteed_range: (lo, n),
        rows,
        conventions,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProbeOutcome {
    Table(ProbeTable),
    Refused {
        reason: String,
        face: Option<Face>,
        degree: Option<i64>,
    },
}

fn probe_outcome(complex: &SimplicialComplex, field: FieldSpec) -> Result<ProbeOutcome> {
    match decomposition_probe(complex, field) {
        Ok(table) => Ok(ProbeOutcome::Table(table)),
        Err(Error::ProbeRefused {
            reason,
            face,
            degree,
        }) => Ok(ProbeOutcome::Refused {
            reason,
            face,
            degree,
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldAnalysis {
    pub field: FieldSpec,
    pub reduced_homology: BettiVector,
    pub betti: BettiTable,
    pub depth: usize,
    pub projdim: usize,
    pub krull_dim: usize,
    pub reisner: ReisnerVerdict,
    pub algebraic: AlgebraicVerdict,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: ComplexFile,
    pub f_vector: FVector,
    pub dim: isize,
    pub pure: bool,
    pub minimal_nonfaces: Vec<Face>,
    pub fields: Vec<FieldAnalysis>,
}

impl AnalysisReport {
    pub fn all_agree(&self) -> bool {
        self.fields.iter().all(|f| f.agree)
    }
}

const NON_PURE_NOTE: &str =
    "not pure: the algebraic verdict fails because Cohen-Macaulay complexes are pure; agreement is not asserted";

fn analyze_field(
    complex: &SimplicialComplex,
    field: FieldSpec,
    probe: bool,
) -> Result<FieldAnalysis> {
    let betti = betti_numbers(complex, field)?;
    let algebraic = algebraic_verdict(complex, &betti);
    let reisner = reisner_criterion(complex, field);
    let agree = reisner.is_cm == algebraic.is_cm;
    if complex.is_pure() && !agree {
        return Err(Error::TheoremViolation(format!(
            "{} over {field}: topological verdict {} but algebraic verdict {}",
            complex.encoding(),
            reisner.is_cm,
            algebraic.is_cm
        )));
    }
    Ok(FieldAnalysis {
        field,
        reduced_homology: reduced_homology(complex, field),
        depth: algebraic.depth,
        projdim: algebraic.projdim,
        krull_dim: algebraic.krull_dim,
        betti,
        reisner,
        algebraic,
        agree,
        note: (!complex.is_pure()).then(|| NON_PURE_NOTE.to_string()),
        probe: probe.then(|| probe_outcome(complex, field)).transpose()?,
    })
}

/// Both verdicts over every field, plus the invariants around them. On a
/// pure complex a disagreement is an error.
pub fn analyze(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
    probe: bool,
) -> Result<AnalysisReport> {
    let per_field = fields
        .par_iter()
        .map(|&field| analyze_field(complex, field, probe))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        input: ComplexFile::from_complex(complex),
        f_vector: complex.f_vector(),
        dim: complex.dim(),
        pure: complex.is_pure(),
        minimal_nonfaces: complex.minimal_nonfaces(),
        fields: per_field,
    })
}

pub fn cross_check(complex: &SimplicialComplex, fields: &[FieldSpec]) -> Result<AnalysisReport> {
    analyze(complex, fields, false)
}

/// Betti numbers as CSV: `field,i,beta`, or `field,i,degree,beta` with a
/// per-degree breakdown.
pub fn betti_csv(tables: &[BettiTable], per_degree: bool) -> String {
    let mut out = String::new();
    if per_degree {
        out.push_str("field,i,degree,beta\n");
        for t in tables {
            for strand in t.breakdown.iter().flatten() {
                for (i, b) in strand.betti.iter().enumerate().filter(|(_, b)| **b != 0) {
                    let degree: Vec<String> =
                        strand.degree.vertices().map(|v| v.to_string()).collect();
                    let _ = writeln!(out, "{},{i},{},{b}", t.field.short_name(), degree.join(" "));
                }
            }
        }
    } else {
        out.push_str("field,i,beta\n");
        for t in tables {
            for (i, b) in t.totals.iter().enumerate() {
                let _ = writeln!(out, "{},{i},{b}", t.field.short_name());
            }
        }
    }
    out
}

/// Outcomes of one sheaf oracle on one complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteTally {
    pub checked: usize,
    pub passed: usize,
}

impl SuiteTally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.passed += usize::from(ok);
    }

    fn merge(&mut self, other: &SuiteTally) {
        self.checked += other.checked;
        self.passed += other.passed;
    }

    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

type Tallies = BTreeMap<String, SuiteTally>;

fn record(tallies: &mut Tallies, suite: &str, ok: bool) {
    tallies.entry(suite.to_string()).or_default().record(ok);
}

/// The sheaf-engine oracles on one complex over one field.
fn sheaf_suites(
    complex: &SimplicialComplex,
    field: FieldSpec,
    tallies: &mut Tallies,
) -> Result<()> {
    let n = complex.n();
    let full = Arc::new(FacePoset::full(complex));
    let reduced = reduced_cohomology(complex, field);
    for g in [1, 2] {
        let constant = constant_sheaf(&full, g, field);
        let h = sheaf_cohomology(&constant)?;
        record(
            tallies,
            "sheaf_constant_acyclic",
            h == BettiVector::new(0, vec![g]),
        );
        record(
            tallies,
            "sheaf_h0_is_sections",
            sections_match(&constant, &h)?,
        );
        if n > 0 {
            let cover = closed_cover_cohomology(complex, g, field)?;
            record(tallies, "sheaf_closed_cover", cover == reduced.scaled(g));
        }
    }

    let punctured = Arc::new(FacePoset::punctured(complex));
    let constant = constant_sheaf(&punctured, 1, field);
    let h = sheaf_cohomology(&constant)?;
    let mut expected = BettiVector::new(
        0,
        (0..=reduced.hi().max(0)).map(|d| reduced.get(d)).collect(),
    );
    if n > 0 {
        expected.dims[0] += 1;
    }
    record(tallies, "sheaf_punctured_constant", h == expected);
    record(
        tallies,
        "sheaf_h0_is_sections",
        sections_match(&constant, &h)?,
    );

    for (k, sigma) in complex.faces().into_iter().enumerate() {
        let g = 1 + k % 2;
        record(
            tallies,
            "sheaf_simple_lemma",
            simple_sheaf_cohomology_check(complex, sigma, g, field)?,
        );
    }

    for a in Face::full(n).subsets() {
        let degree = MultiDegree::squarefree(n, a);
        let hyper = hypercohomology(&koszul_sheaf_strand(complex, &degree, field)?)?;
        let strand = homology_dims(&koszul_strand(complex, &degree, field)?)?;
        let ok = (0..=a.len() as i64).all(|i| hyper.get(-i) == strand.get(i))
            && (1..=hyper.hi()).all(|d| hyper.get(d) == 0);
        record(tallies, "hypercohomology_strand", ok);
    }
    Ok(())
}

fn sections_match(sheaf: &PosetSheaf, h: &BettiVector) -> Result<bool> {
    let complex = sheaf.poset().complex();
    Ok(global_sections(sheaf, complex.facets())? == h.get(0))
}

/// How much of the pipeline to run over a corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusConfig {
    pub max_n: usize,
    pub random_count: usize,
    pub seed: u64,
    pub fields: Vec<FieldSpec>,
    /// Vertex counts for random complexes.
    pub random_vertices: (usize, usize),
    /// Non-squarefree strands sampled per complex and field.
    pub nonsquarefree_samples: usize,
    /// Sheaf and lemma suites run up to this many vertices.
    pub sheaf_max_n: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_n: 4,
            random_count: 0,
            seed: 0,
            fields: vec![FieldSpec::Q, FieldSpec::GF2, FieldSpec::GF3],
            random_vertices: (5, 7),
            nonsquarefree_samples: 100,
            sheaf_max_n: 4,
        }
    }
}

/// Deterministic aggregate of a corpus run. Holds no timings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub max_n: usize,
    pub random_count: usize,
    pub seed: u64,
    pub fields: Vec<FieldSpec>,
    /// Exhaustive complexes per vertex count.
    pub exhaustive: BTreeMap<usize, usize>,
    /// Random complexes per vertex count.
    pub random: BTreeMap<usize, usize>,
    pub pure_complexes: usize,
    pub pure_random_complexes: usize,
    /// Cohen-Macaulay complexes per field.
    pub cohen_macaulay: BTreeMap<String, usize>,
    pub suites: BTreeMap<String, SuiteTally>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.suites.values().all(SuiteTally::all_passed)
    }

    pub fn suite(&self, name: &str) -> SuiteTally {
        self.suites.get(name).cloned().unwrap_or_default()
    }
}

struct ItemResult {
    n: usize,
    random: bool,
    pure: bool,
    cm_fields: Vec<String>,
    tallies: Tallies,
}

fn replay_error(complex: &SimplicialComplex, e: Error) -> Error {
    let replay = serde_json::to_string(&ComplexFile::from_complex(complex)).unwrap_or_default();
    match e {
        Error::TheoremViolation(m) => Error::TheoremViolation(format!("{m}; replay with {replay}")),
        Error::Invariant(m) => Error::Invariant(format!("{m}; replay with {replay}")),
        other => Error::Invariant(format!("{other}; replay with {replay}")),
    }
}

fn check_item(
    complex: &SimplicialComplex,
    random: bool,
    index: u64,
    config: &CorpusConfig,
) -> Result<ItemResult> {
    let n = complex.n();
    let pure = complex.is_pure();
    let mut tallies = Tallies::new();
    let mut cm_fields = Vec::new();
    for &field in &config.fields {
        let betti = betti_numbers(complex, field)?;
        let algebraic = algebraic_verdict(complex, &betti);
        let reisner = reisner_criterion(complex, field);
        let agree = reisner.is_cm == algebraic.is_cm;
        if pure {
            record(&mut tallies, "equivalence_pure", agree);
            if !agree {
                return Err(Error::TheoremViolation(format!(
                    "over {field}: topological verdict {}, algebraic verdict {}",
                    reisner.is_cm, algebraic.is_cm
                )));
            }
        } else {
            record(&mut tallies, "equivalence_nonpure", agree);
        }
        if reisner.is_cm {
            cm_fields.push(field.short_name());
            record(&mut tallies, "purity", pure);
            if !pure {
                return Err(Error::TheoremViolation(format!(
                    "over {field}: passes the link test but is not pure"
                )));
            }
        }
        if let Some(w) = &reisner.witness {
            record(
                &mut tallies,
                "witness_recheck",
                witness_holds(complex, w, field)?,
            );
        }
        record(&mut tallies, "betti_zero_is_one", betti.get(0) == 1);
        record(
            &mut tallies,
            "homology_equals_cohomology",
            reduced_homology(complex, field) == reduced_cohomology(complex, field),
        );
        if n > 0 && config.nonsquarefree_samples > 0 {
            let seed =
                config.seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ field.characteristic();
            record(
                &mut tallies,
                "nonsquarefree_vanishing",
                nonsquarefree_vanishing_check(complex, field, config.nonsquarefree_samples, seed)?,
            );
        }
        if n <= config.sheaf_max_n {
            sheaf_suites(complex, field, &mut tallies)?;
        }
    }
    if n <= config.sheaf_max_n {
        for sigma in complex.faces() {
            let (direct, via_star) = link_ideal_two_ways(complex, sigma)?;
            record(&mut tallies, "lemma_link_ideal", direct == via_star);
            record(
                &mut tallies,
                "lemma_localization",
                localization_identity_check(complex, sigma)?,
            );
        }
    }
    if let Some((suite, _)) = tallies.iter().find(|(_, t)| !t.all_passed()) {
        return Err(Error::Invariant(format!("suite {suite} failed")));
    }
    Ok(ItemResult {
        n,
        random,
        pure,
        cm_fields,
        tallies,
    })
}

/// Mixes the corpus seed with an item index into an independent stream.
fn item_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random part of the corpus: even indices are pure by construction,
/// odd ones unrestricted.
pub fn random_corpus(config: &CorpusConfig) -> Result<Vec<SimplicialComplex>> {
    let (lo, hi) = config.random_vertices;
    if lo == 0 || lo > hi {
        return Err(Error::Input(format!(
            "random vertex range {lo}..={hi} is empty or starts at 0"
        )));
    }
    (0..config.random_count as u64)
        .map(|k| {
            let seed = item_seed(config.seed, k);
            let n = lo + (seed % (hi - lo + 1) as u64) as usize;
            let density = 0.15 + 0.1 * ((seed >> 8) % 4) as f64;
            if k % 2 == 0 {
                let dim = 1 + ((seed >> 16) % (n as u64 - 2).max(1)) as usize;
                random_pure_complex(n, dim.min(n - 1), density, seed)
            } else {
                random_complex(n, density / 2.0, seed)
            }
        })
        .collect()
}

/// Exhaustive sweep up to `max_n` vertices plus the seeded random corpus.
pub fn run_corpus(config: &CorpusConfig) -> Result<CorpusSummary> {
    if config.max_n > DEFAULT_ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n: config.max_n,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let mut items: Vec<(SimplicialComplex, bool)> = Vec::new();
    for n in 0..=config.max_n {
        items.extend(enumerate_all_complexes(n)?.map(|c| (c, false)));
    }
    items.extend(random_corpus(config)?.into_iter().map(|c| (c, true)));

    let results: Vec<ItemResult> = items
        .par_iter()
        .enumerate()
        .map(|(index, (complex, random))| {
            check_item(complex, *random, index as u64, config).map_err(|e| replay_error(complex, e))
        })
        .collect::<Result<_>>()?;

    let mut summary = CorpusSummary {
        max_n: config.max_n,
        random_count: config.random_count,
        seed: config.seed,
        fields: config.fields.clone(),
        exhaustive: BTreeMap::new(),
        random: BTreeMap::new(),
        pure_complexes: 0,
        pure_random_complexes: 0,
        cohen_macaulay: config.fields.iter().map(|f| (f.short_name(), 0)).collect(),
        suites: BTreeMap::new(),
    };
    for item in &results {
        let bucket = if item.random {
            &mut summary.random
        } else {
            &mut summary.exhaustive
        };
        *bucket.entry(item.n).or_default() += 1;
        summary.pure_complexes += usize::from(item.pure);
        summary.pure_random_complexes += usize::from(item.pure && item.random);
        for f in &item.cm_fields {
            *summary.cohen_macaulay.entry(f.clone()).or_default() += 1;
        }
        for (suite, tally) in &item.tallies {
            summary
                .suites
                .entry(suite.clone())
                .or_default()
                .merge(tally);
        }
    }
    Ok(summary)
}

/// Per-field results of every sheaf oracle on one complex.
#[derive(Clone, Debug, Serialize)]
pub struct SheafFieldReport {
    pub field: FieldSpec,
    pub reduced_cohomology: BettiVector,
    pub constant_full: BettiVector,
    pub constant_punctured: BettiVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_cover: Option<BettiVector>,
    pub suites: BTreeMap<String, SuiteTally>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafReport {
    pub input: ComplexFile,
    pub fields: Vec<SheafFieldReport>,
    pub all_passed: bool,
}

pub fn sheaf_test(complex: &SimplicialComplex, fields: &[FieldSpec]) -> Result<SheafReport> {
    if complex.n() > SHEAF_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: complex.n(),
            max: SHEAF_MAX_VERTICES,
        });
    }
    let reports = fields
        .par_iter()
        .map(|&field| {
            let mut suites = Tallies::new();
            sheaf_suites(complex, field, &mut suites)?;
            Ok(SheafFieldReport {
                field,
                reduced_cohomology: reduced_cohomology(complex, field),
                constant_full: sheaf_cohomology(&constant_sheaf(
                    &Arc::new(FacePoset::full(complex)),
                    1,
                    field,
                ))?,
                constant_punctured: sheaf_cohomology(&constant_sheaf(
                    &Arc::new(FacePoset::punctured(complex)),
                    1,
                    field,
                ))?,
                closed_cover: (complex.n() > 0)
                    .then(|| closed_cover_cohomology(complex, 1, field))
                    .transpose()?,
                suites,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_passed = reports
        .iter()
        .all(|r| r.suites.values().all(SuiteTally::all_passed));
    Ok(SheafReport {
        input: ComplexFile::from_complex(complex),
        fields: reports,
        all_passed,
    })
}
