//! Explicit permutations and the recognition chain certifying a generated
//! group as alternating or symmetric: transitive, primitive, contains a
//! p-cycle with p <= n-3 prime, then decide by generator parity.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::orbits::{image_index, DisjointSet, Level};
use crate::surface::{GeneratorName, SurfaceTable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of [0, n) stored by its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Validates that images is a bijection of [0, n).
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j as usize >= n || seen[j as usize] {
                return Err(Error::InvalidParam(format!(
                    "image array of length {n} is not a bijection"
                )));
            }
            seen[j as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// self first, then other.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Cycle lengths in descending order, fixed points included as 1s.
    pub fn cycle_type(&self) -> Vec<u64> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i] as usize;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn parity(&self) -> Parity {
        let transpositions: u64 = self.cycle_type().iter().map(|&c| c - 1).sum();
        if transpositions.is_multiple_of(2) { Parity::Even } else { Parity::Odd }
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The permutation induced by g on the full triple or block table.
pub fn permutation_of(g: GeneratorName, table: &SurfaceTable, level: Level) -> Permutation {
    let n = match level {
        Level::Triples => table.triples().len(),
        Level::Blocks => table.blocks().len(),
    };
    Permutation {
        images: (0..n).map(|i| image_index(table, level, g, i) as u32).collect(),
    }
}

/// The permutation induced by g on a sorted subset of indices, re-indexed to
/// [0, subset.len()). Errors when the subset is not closed under g.
pub fn permutation_on_subset(
    g: GeneratorName,
    table: &SurfaceTable,
    level: Level,
    subset: &[usize],
) -> Result<Permutation> {
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    let mut images = Vec::with_capacity(subset.len());
    for &i in subset {
        let j = image_index(table, level, g, i);
        let pos = subset
            .binary_search(&j)
            .map_err(|_| Error::DomainNotClosed { gen: g })?;
        images.push(pos as u32);
    }
    Ok(Permutation { images })
}

/// Whether the generated group moves every point to every other (BFS from 0).
pub fn is_transitive(gens: &[Permutation], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut reached = 1usize;
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                stack.push(j);
            }
        }
    }
    reached == n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A proper nontrivial block system, blocks sorted by least element.
    Imprimitive { blocks: Vec<Vec<usize>> },
}

/// Primitivity by minimal-block closure: for each beta != 0, close the
/// partition seeded with {0, beta} under all generators; the group is
/// primitive iff every closure reaches the whole domain. Quadratic in the
/// degree, linear memory. Errors on non-transitive input.
pub fn is_primitive(gens: &[Permutation], n: usize) -> Result<Primitivity> {
    if !is_transitive(gens, n) {
        return Err(Error::NotTransitive);
    }
    if n <= 2 || is_prime(n as u64) {
        // block sizes divide the degree
        return Ok(Primitivity::Primitive);
    }
    let mut stack: Vec<(u32, u32)> = Vec::new();
    for beta in 1..n as u32 {
        let mut dsu = DisjointSet::new(n);
        stack.clear();
        dsu.union(0, beta);
        stack.push((0, beta));
        let mut full = false;
        while let Some((u, v)) = stack.pop() {
            for g in gens {
                let (gu, gv) = (g.apply(u as usize) as u32, g.apply(v as usize) as u32);
                if dsu.union(gu, gv) {
                    stack.push((gu, gv));
                    if dsu.class_size(0) as usize == n {
                        full = true;
                        break;
                    }
                }
            }
            if full {
                break;
            }
        }
        if full || dsu.class_size(0) as usize == n {
            continue;
        }
        // proper congruence: its classes are the blocks
        let mut by_root: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
        for i in 0..n as u32 {
            by_root.entry(dsu.find(i)).or_default().push(i as usize);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        debug_assert!(blocks.len() > 1 && blocks.iter().all(|b| b.len() == blocks[0].len()));
        return Ok(Primitivity::Imprimitive { blocks });
    }
    Ok(Primitivity::Primitive)
}

/// A word over the generator alphabet (applied left to right) some power of
/// which is a single p-cycle. The power itself is not stored: it exists iff
/// exactly one cycle length of the word is divisible by p and that length is
/// p itself, which the verifier recomputes from the word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCycleWitness {
    pub word: Vec<u8>,
    pub p: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct GiantSearchConfig {
    pub seed: u64,
    pub word_budget: u32,
    pub max_word_len: u32,
    pub primitivity_cap: usize,
}

impl Default for GiantSearchConfig {
    fn default() -> Self {
        GiantSearchConfig { seed: 1, word_budget: 100_000, max_word_len: 24, primitivity_cap: 70_000 }
    }
}

/// The largest prime p <= n-3 such that some power of a permutation with this
/// cycle type is a single p-cycle: exactly one length divisible by p, and that
/// length equal to p (raising to the lcm of the other lengths then realizes it).
fn single_prime_cycle_prime(cycle_type: &[u64], n: usize) -> Option<u64> {
    if n < 4 {
        return None;
    }
    let cap = (n - 3) as u64;
    let mut primes: Vec<u64> = cycle_type
        .iter()
        .copied()
        .filter(|&c| c <= cap && is_prime(c))
        .collect();
    primes.sort_unstable_by(|a, b| b.cmp(a));
    primes.dedup();
    primes
        .into_iter()
        .find(|&p| cycle_type.iter().filter(|&&c| c % p == 0).count() == 1)
}

fn word_permutation(word: &[u8], gens: &[Permutation], n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for &letter in word {
        let g = &gens[letter as usize];
        for v in images.iter_mut() {
            *v = g.images[*v as usize];
        }
    }
    Permutation { images }
}

fn check_word(word: &[u8], gens: &[Permutation], n: usize) -> Option<PrimeCycleWitness> {
    let pi = word_permutation(word, gens, n);
    single_prime_cycle_prime(&pi.cycle_type(), n)
        .map(|p| PrimeCycleWitness { word: word.to_vec(), p })
}

/// Search for a witness word: preferred words first (the rotation image is the
/// workhorse), then single generators, then seeded random words over the
/// alphabet of single generators and preferred macros. Deterministic given the
/// seed; None after the budget is an outcome, not an error.
/// rot1 as a word over [gamma0, gamma1728], letters applied left to right:
/// gamma1728 first, then gamma0 twice.
pub const ROT1_WORD: [u8; 3] = [1, 0, 0];

pub fn find_prime_cycle(
    gens: &[Permutation],
    preferred: &[Vec<u8>],
    cfg: &GiantSearchConfig,
) -> Option<PrimeCycleWitness> {
    if gens.is_empty() {
        return None;
    }
    let n = gens[0].degree();
    for word in preferred {
        if let Some(w) = check_word(word, gens, n) {
            return Some(w);
        }
    }
    for i in 0..gens.len() as u8 {
        if let Some(w) = check_word(&[i], gens, n) {
            return Some(w);
        }
    }
    let mut alphabet: Vec<Vec<u8>> = (0..gens.len() as u8).map(|i| vec![i]).collect();
    alphabet.extend(preferred.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut word = Vec::new();
    for _ in 0..cfg.word_budget {
        let len = rng.random_range(2..=cfg.max_word_len as usize);
        word.clear();
        for _ in 0..len {
            word.extend_from_slice(&alphabet[rng.random_range(0..alphabet.len())]);
        }
        if let Some(w) = check_word(&word, gens, n) {
            return Some(w);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Alt,
    Sym,
    Unknown(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Alt => f.write_str("Alt"),
            Classification::Sym => f.write_str("Sym"),
            Classification::Unknown(reason) => write!(f, "Unknown({reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GiantCertificate {
    pub n: usize,
    pub transitive: bool,
    pub primitive: bool,
    pub prime_cycle: Option<PrimeCycleWitness>,
    pub generator_parities: Vec<Parity>,
    pub classification: Classification,
}

/// Run the full chain. Alt/Sym only with all three stages certified; the
/// group is symmetric iff some generator is odd, alternating when all are
/// even. Unknown names the first failing stage and is an honest outcome.
pub fn classify_giant(
    gens: &[Permutation],
    preferred: &[Vec<u8>],
    cfg: &GiantSearchConfig,
) -> GiantCertificate {
    let n = gens.first().map_or(0, Permutation::degree);
    let generator_parities: Vec<Parity> = gens.iter().map(Permutation::parity).collect();
    let mut cert = GiantCertificate {
        n,
        transitive: false,
        primitive: false,
        prime_cycle: None,
        generator_parities,
        classification: Classification::Unknown("not transitive".into()),
    };
    if !is_transitive(gens, n) {
        return cert;
    }
    cert.transitive = true;
    if n > cfg.primitivity_cap {
        cert.classification = Classification::Unknown(format!(
            "degree {n} exceeds primitivity cap {}",
            cfg.primitivity_cap
        ));
        return cert;
    }
    match is_primitive(gens, n).expect("transitivity was just established") {
        Primitivity::Imprimitive { .. } => {
            cert.classification = Classification::Unknown("not primitive".into());
            return cert;
        }
        Primitivity::Primitive => cert.primitive = true,
    }
    match find_prime_cycle(gens, preferred, cfg) {
        None => {
            cert.classification = Classification::Unknown(format!(
                "no prime cycle found within budget {}",
                cfg.word_budget
            ));
            cert
        }
        Some(w) => {
            cert.prime_cycle = Some(w);
            cert.classification = if cert.generator_parities.contains(&Parity::Odd) {
                Classification::Sym
            } else {
                Classification::Alt
            };
            cert
        }
    }
}
