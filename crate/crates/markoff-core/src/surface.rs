//! The Markoff surface x^2 + y^2 + z^2 - xyz = 0 over F_ell, its sign-class
//! quotient, and the explicit automorphisms acting on it.

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Residue};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of X*(ell): on the surface and not the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub x: Residue,
    pub y: Residue,
    pub z: Residue,
}

impl Triple {
    pub fn new(x: Residue, y: Residue, z: Residue) -> Self {
        Triple { x, y, z }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A sign-class [x,y,z]: the orbit of a triple under negating two coordinates,
/// stored by its lexicographically least member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub rep: Triple,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.rep.x, self.rep.y, self.rep.z)
    }
}

/// Names for the automorphisms used throughout. R1 and R2 are the remaining
/// Vieta moves, conjugates of R3 by coordinate transpositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorName {
    R3,
    R1,
    R2,
    Tau12,
    Tau23,
    Rot1,
    Gamma0,
    Gamma1728,
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeneratorName::R3 => "r3",
            GeneratorName::R1 => "r1",
            GeneratorName::R2 => "r2",
            GeneratorName::Tau12 => "tau12",
            GeneratorName::Tau23 => "tau23",
            GeneratorName::Rot1 => "rot1",
            GeneratorName::Gamma0 => "gamma0",
            GeneratorName::Gamma1728 => "gamma1728",
        };
        f.write_str(s)
    }
}

/// The moves generating the full sign-and-Vieta action on triples.
pub const VIETA_GENERATORS: [GeneratorName; 3] =
    [GeneratorName::R3, GeneratorName::Tau12, GeneratorName::Tau23];

/// The two lifted elliptic elements whose joint action is certified as a giant.
pub const GAMMA_GENERATORS: [GeneratorName; 2] = [GeneratorName::Gamma0, GeneratorName::Gamma1728];

/// x^2 + y^2 + z^2 - xyz mod ell.
pub fn residual(x: Residue, y: Residue, z: Residue, m: PrimeModulus) -> Residue {
    let sq = m.add(m.add(m.mul(x, x), m.mul(y, y)), m.mul(z, z));
    m.sub(sq, m.mul(m.mul(x, y), z))
}

pub fn on_surface(t: Triple, m: PrimeModulus) -> bool {
    residual(t.x, t.y, t.z, m) == 0 && (t.x, t.y, t.z) != (0, 0, 0)
}

/// Trace of the commutator attached to a surface point: always -2 mod ell,
/// because the residual vanishes. Off-surface input is a domain error.
pub fn trace_invariant(t: Triple, m: PrimeModulus) -> Result<Residue> {
    if !on_surface(t, m) {
        return Err(Error::OffSurface { x: t.x, y: t.y, z: t.z, ell: m.ell() });
    }
    Ok(m.sub(residual(t.x, t.y, t.z, m), 2 % m.ell()))
}

pub fn apply(g: GeneratorName, t: Triple, m: PrimeModulus) -> Triple {
    let Triple { x, y, z } = t;
    match g {
        GeneratorName::R3 => Triple::new(x, y, m.sub(m.mul(x, y), z)),
        GeneratorName::R1 => Triple::new(m.sub(m.mul(y, z), x), y, z),
        GeneratorName::R2 => Triple::new(x, m.sub(m.mul(x, z), y), z),
        GeneratorName::Tau12 => Triple::new(y, x, z),
        GeneratorName::Tau23 => Triple::new(x, z, y),
        GeneratorName::Rot1 => Triple::new(x, z, m.sub(m.mul(x, z), y)),
        GeneratorName::Gamma0 => {
            let xy_z = m.sub(m.mul(x, y), z);
            // third coordinate x^2*y - xz - y = x*(xy - z) - y
            Triple::new(xy_z, x, m.sub(m.mul(x, xy_z), y))
        }
        GeneratorName::Gamma1728 => Triple::new(y, x, m.sub(m.mul(x, y), z)),
    }
}

/// Lexicographically least of the four sign variants
/// {(x,y,z), (x,-y,-z), (-x,y,-z), (-x,-y,z)}.
pub fn block_canonical(t: Triple, m: PrimeModulus) -> Block {
    let Triple { x, y, z } = t;
    let (nx, ny, nz) = (m.neg(x), m.neg(y), m.neg(z));
    let rep = [
        Triple::new(x, y, z),
        Triple::new(x, ny, nz),
        Triple::new(nx, y, nz),
        Triple::new(nx, ny, z),
    ]
    .into_iter()
    .min()
    .unwrap();
    Block { rep }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicClass {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

/// Class of the trace value a, by the character of a^2 - 4.
pub fn classify(a: Residue, m: PrimeModulus) -> ConicClass {
    let a = m.reduce(a);
    match m.legendre(m.sub(m.mul(a, a), 4 % m.ell())) {
        1 => ConicClass::Hyperbolic,
        -1 => ConicClass::Elliptic,
        _ => ConicClass::Parabolic,
    }
}

/// The block count n_ell predicted by the point-count formula (0 at ell = 3).
pub fn expected_block_count(ell: u64) -> u64 {
    if ell % 4 == 1 {
        ell * (ell + 3) / 4
    } else {
        ell * (ell - 3) / 4
    }
}

/// All of X*(ell) and its block quotient, in reproducible lexicographic order.
#[derive(Clone, Debug)]
pub struct SurfaceTable {
    m: PrimeModulus,
    triples: Vec<Triple>,
    blocks: Vec<Block>,
}

/// Solve z^2 - (xy)z + (x^2 + y^2) = 0 per (x,y) via the discriminant; O(ell^2)
/// rather than cubic brute force. Refuses ell = 2, where the sign action is
/// trivial and block-level analysis breaks down.
pub fn enumerate_surface(m: PrimeModulus) -> Result<SurfaceTable> {
    let l = m.ell();
    if l < 3 {
        return Err(Error::ModulusTooSmall { ell: l, min: 3 });
    }
    let inv2 = m.inv(2);
    let mut triples = Vec::new();
    for x in 0..l {
        let x2 = m.mul(x, x);
        for y in 0..l {
            let b = m.mul(x, y);
            let c = m.add(x2, m.mul(y, y));
            let disc = m.sub(m.mul(b, b), m.mul(4 % l, c));
            if let Some(r) = m.sqrt(disc) {
                let z0 = m.mul(m.add(b, r), inv2);
                if (x, y, z0) != (0, 0, 0) {
                    triples.push(Triple::new(x, y, z0));
                }
                if r != 0 {
                    let z1 = m.mul(m.sub(b, r), inv2);
                    if (x, y, z1) != (0, 0, 0) {
                        triples.push(Triple::new(x, y, z1));
                    }
                }
            }
        }
    }
    triples.sort_unstable();
    let mut blocks: Vec<Block> = triples.iter().map(|&t| block_canonical(t, m)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    debug_assert_eq!(blocks.len() as u64, expected_block_count(l));
    debug_assert_eq!(triples.len(), 4 * blocks.len());
    Ok(SurfaceTable { m, triples, blocks })
}

impl SurfaceTable {
    pub fn modulus(&self) -> PrimeModulus {
        self.m
    }

    pub fn ell(&self) -> u64 {
        self.m.ell()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn triple_index(&self, t: Triple) -> Option<usize> {
        self.triples.binary_search(&t).ok()
    }

    pub fn block_index(&self, b: Block) -> Option<usize> {
        self.blocks.binary_search(&b).ok()
    }

    /// Index of the block containing t.
    pub fn block_index_of(&self, t: Triple) -> Option<usize> {
        self.block_index(block_canonical(t, self.m))
    }

    pub fn apply(&self, g: GeneratorName, t: Triple) -> Triple {
        apply(g, t, self.m)
    }

    /// Blocks fixed by g, as indices into blocks().
    pub fn fixed_blocks(&self, g: GeneratorName) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| block_canonical(apply(g, b.rep, self.m), self.m) == **b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Blocks whose sign-class meets first coordinate +-a, as indices into
/// table.blocks(). Canonical representatives carry x = min(x, ell - x), so the
/// slice is a single scan.
pub fn conic_slice(table: &SurfaceTable, a: Residue) -> Vec<usize> {
    let m = table.modulus();
    let a = m.reduce(a);
    let amin = a.min(m.ell() - a).min(a); // a = 0 stays 0
    table
        .blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.rep.x == amin)
        .map(|(i, _)| i)
        .collect()
}

/// Cycle lengths of rot1 on the blocks of the conic at +-a, largest first.
/// rot1 preserves the first coordinate, so the conic is closed under it.
pub fn rot1_cycles_on_conic(table: &SurfaceTable, a: Residue) -> Result<Vec<u64>> {
    let m = table.modulus();
    let slice = conic_slice(table, a);
    if slice.is_empty() {
        return Err(Error::EmptyConic { a: m.reduce(a), ell: m.ell() });
    }
    let mut lengths = Vec::new();
    let mut seen = vec![false; table.blocks().len()];
    for &start in &slice {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            let img = block_canonical(apply(GeneratorName::Rot1, table.blocks()[i].rep, m), m);
            i = table.block_index(img).expect("rot1 leaves the surface closed");
            debug_assert_eq!(table.blocks()[i].rep.x, table.blocks()[start].rep.x);
        }
        debug_assert_eq!(i, start, "walk must close into its own cycle");
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Ok(lengths)
}
