//! The per-prime pipeline: one call that runs enumeration, orbit census,
//! fixed points, parity, ramification, genus, and the giant classification,
//! flattened into the JSON shape the CLI caches and the CSV rows scans emit.

use crate::error::{Error, Result};
use crate::field::{property_p, PrimeModulus};
use crate::orbits::{compute_orbits, maximal_orbit, Level};
use crate::perm::{
    classify_giant, permutation_of, permutation_on_subset, Classification, GiantSearchConfig,
    Parity, ROT1_WORD,
};
use crate::ramification::{
    predicted_monodromy, profile, riemann_hurwitz_genus, Monodromy, RamificationProfile,
};
use crate::sl2::run_full_oracle;
use crate::surface::{enumerate_surface, GeneratorName, GAMMA_GENERATORS, VIETA_GENERATORS};
use serde::{Deserialize, Serialize};

/// Bumped when the cached report shape changes; mismatched cache files are
/// recomputed, never reused.
pub const SCHEMA_VERSION: u32 = 1;

/// Frozen scan column order.
pub const CSV_HEADER: &str = "ell,n_triples,n_blocks,transitive_triples,transitive_blocks,\
max_orbit,g0_fixed,g1728_fixed,g1728_parity,monodromy,predicted,match,property_p,genus";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilePair {
    pub full: RamificationProfile,
    pub maximal_orbit: RamificationProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllReport {
    pub ell: u64,
    pub n_triples: u64,
    pub n_blocks: u64,
    pub transitive_triples: bool,
    pub transitive_blocks: bool,
    pub max_orbit_size: u64,
    pub g0_fixed_blocks: u64,
    pub g1728_fixed_blocks: u64,
    pub g1728_parity: Parity,
    pub monodromy_computed: String,
    pub monodromy_predicted: String,
    pub prediction_match: bool,
    pub property_p: String,
    pub genus: u64,
    pub profile: ProfilePair,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_status: Option<String>,
    pub schema_version: u32,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub seed: u64,
    pub primitivity_cap: usize,
    pub word_budget: u32,
    pub max_word_len: u32,
    pub run_oracle: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let giant = GiantSearchConfig::default();
        PipelineConfig {
            seed: giant.seed,
            primitivity_cap: giant.primitivity_cap,
            word_budget: giant.word_budget,
            max_word_len: giant.max_word_len,
            run_oracle: false,
        }
    }
}

/// Run every stage at one prime. The giant classification acts on the maximal
/// block orbit, seeded with the rot1 word.
pub fn build_ell_report(m: PrimeModulus, cfg: &PipelineConfig) -> Result<EllReport> {
    let ell = m.ell();
    if ell < 5 {
        return Err(Error::ModulusTooSmall { ell, min: 5 });
    }
    let table = enumerate_surface(m)?;
    let triple_census = compute_orbits(&table, Level::Triples, &VIETA_GENERATORS).census;
    let block_partition = compute_orbits(&table, Level::Blocks, &VIETA_GENERATORS);
    let maximal =
        maximal_orbit(&block_partition).expect("block set is nonempty for ell >= 5");

    let full = profile(&table, None)?;
    let on_maximal = profile(&table, Some(&maximal.member_indices))?;
    let genus = riemann_hurwitz_genus(&on_maximal)?;

    let gens = GAMMA_GENERATORS
        .iter()
        .map(|&g| permutation_on_subset(g, &table, Level::Blocks, &maximal.member_indices))
        .collect::<Result<Vec<_>>>()?;
    let giant_cfg = GiantSearchConfig {
        seed: cfg.seed,
        word_budget: cfg.word_budget,
        max_word_len: cfg.max_word_len,
        primitivity_cap: cfg.primitivity_cap,
    };
    let cert = classify_giant(&gens, &[ROT1_WORD.to_vec()], &giant_cfg);
    let predicted = predicted_monodromy(ell)?;
    let prediction_match = matches!(
        (&cert.classification, predicted),
        (Classification::Alt, Monodromy::Alt) | (Classification::Sym, Monodromy::Sym)
    );

    let oracle_status = if cfg.run_oracle {
        let oracle = run_full_oracle(m, cfg.seed)?;
        Some(format!(
            "verified: image {}, {} generating pairs",
            oracle.bijection.image_size, oracle.bijection.generating_pairs
        ))
    } else {
        None
    };

    Ok(EllReport {
        ell,
        n_triples: table.triples().len() as u64,
        n_blocks: table.blocks().len() as u64,
        transitive_triples: triple_census.is_transitive(),
        transitive_blocks: block_partition.census.is_transitive(),
        max_orbit_size: maximal.size,
        g0_fixed_blocks: table.fixed_blocks(GeneratorName::Gamma0).len() as u64,
        g1728_fixed_blocks: table.fixed_blocks(GeneratorName::Gamma1728).len() as u64,
        g1728_parity: permutation_of(GeneratorName::Gamma1728, &table, Level::Blocks).parity(),
        monodromy_computed: cert.classification.to_string(),
        monodromy_predicted: predicted.to_string(),
        prediction_match,
        property_p: property_p(m)?.to_string(),
        genus,
        profile: ProfilePair { full, maximal_orbit: on_maximal },
        oracle_status,
        schema_version: SCHEMA_VERSION,
    })
}

/// One scan row in the frozen column order.
pub fn csv_row(r: &EllReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.ell,
        r.n_triples,
        r.n_blocks,
        r.transitive_triples,
        r.transitive_blocks,
        r.max_orbit_size,
        r.g0_fixed_blocks,
        r.g1728_fixed_blocks,
        r.g1728_parity,
        r.monodromy_computed,
        r.monodromy_predicted,
        r.prediction_match,
        r.property_p,
        r.genus
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub from: u64,
    pub to: u64,
    pub rows: u64,
    pub matches: u64,
    pub unknowns: u64,
    pub mismatches: u64,
    pub property_p_holds: u64,
    pub property_p_density: f64,
    pub wall_seconds: f64,
}

pub fn summarize(from: u64, to: u64, reports: &[EllReport], wall_seconds: f64) -> ScanSummary {
    let rows = reports.len() as u64;
    let matches = reports.iter().filter(|r| r.prediction_match).count() as u64;
    let unknowns = reports
        .iter()
        .filter(|r| r.monodromy_computed.starts_with("Unknown"))
        .count() as u64;
    let holds = reports.iter().filter(|r| r.property_p == "holds").count() as u64;
    ScanSummary {
        from,
        to,
        rows,
        matches,
        unknowns,
        mismatches: rows - matches - unknowns,
        property_p_holds: holds,
        property_p_density: if rows == 0 { 0.0 } else { holds as f64 / rows as f64 },
        wall_seconds,
    }
}
