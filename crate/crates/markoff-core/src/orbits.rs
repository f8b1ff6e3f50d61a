//! Orbit censuses of generator sets acting on the surface or its blocks.

use crate::error::{Error, Result};
use crate::surface::{apply, block_canonical, GeneratorName, SurfaceTable};
use serde::{Deserialize, Serialize};

/// Union-find with path compression and union by size over dense indices.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize);
        DisjointSet {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let gp = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = gp;
            i = gp;
        }
        i
    }

    /// Merge the classes of a and b; true when they were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    pub fn class_size(&mut self, i: u32) -> u32 {
        let r = self.find(i);
        self.size[r as usize]
    }
}

/// Which index space the generators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    Triples,
    Blocks,
}

/// Orbit sizes in descending order with one least-index representative each.
/// Ties in size are ordered by representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCensus {
    pub orbit_sizes: Vec<u64>,
    pub representatives: Vec<usize>,
    pub total: u64,
}

impl OrbitCensus {
    pub fn is_transitive(&self) -> bool {
        self.orbit_sizes.len() == 1
    }
}

/// A census together with the orbit ordinal of every index, aligned to the
/// census order (ordinal 0 is the maximal orbit).
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub census: OrbitCensus,
    pub orbit_of: Vec<u32>,
}

/// The largest orbit; among ties, the one containing the smallest index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalOrbit {
    pub member_indices: Vec<usize>,
    pub size: u64,
}

pub(crate) fn image_index(table: &SurfaceTable, level: Level, g: GeneratorName, i: usize) -> usize {
    let m = table.modulus();
    match level {
        Level::Triples => {
            let img = apply(g, table.triples()[i], m);
            table.triple_index(img).expect("generators preserve the surface")
        }
        Level::Blocks => {
            let img = block_canonical(apply(g, table.blocks()[i].rep, m), m);
            table.block_index(img).expect("generators preserve the block set")
        }
    }
}

/// Exact orbit partition under the group generated by gens: one union per
/// (index, generator) edge closes the partition, since orbits of the generated
/// group are the connected components of the generator graph.
pub fn compute_orbits(table: &SurfaceTable, level: Level, gens: &[GeneratorName]) -> OrbitPartition {
    let n = match level {
        Level::Triples => table.triples().len(),
        Level::Blocks => table.blocks().len(),
    };
    let mut dsu = DisjointSet::new(n);
    for i in 0..n {
        for &g in gens {
            dsu.union(i as u32, image_index(table, level, g, i) as u32);
        }
    }
    // least-index representative per root, in one ascending scan
    let mut rep_of_root: Vec<Option<(usize, u64)>> = vec![None; n];
    for i in 0..n {
        let r = dsu.find(i as u32) as usize;
        match &mut rep_of_root[r] {
            Some((_, size)) => *size += 1,
            None => rep_of_root[r] = Some((i, 1)),
        }
    }
    let mut orbits: Vec<(u64, usize, usize)> = rep_of_root
        .iter()
        .enumerate()
        .filter_map(|(root, e)| e.map(|(rep, size)| (size, rep, root)))
        .collect();
    orbits.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut ordinal_of_root = vec![u32::MAX; n];
    for (ord, &(_, _, root)) in orbits.iter().enumerate() {
        ordinal_of_root[root] = ord as u32;
    }
    let orbit_of: Vec<u32> = (0..n).map(|i| ordinal_of_root[dsu.find(i as u32) as usize]).collect();
    OrbitPartition {
        census: OrbitCensus {
            orbit_sizes: orbits.iter().map(|o| o.0).collect(),
            representatives: orbits.iter().map(|o| o.1).collect(),
            total: n as u64,
        },
        orbit_of,
    }
}

pub fn orbits(table: &SurfaceTable, level: Level, gens: &[GeneratorName]) -> OrbitCensus {
    compute_orbits(table, level, gens).census
}

/// None only for the empty census (ell = 3).
pub fn maximal_orbit(partition: &OrbitPartition) -> Option<MaximalOrbit> {
    if partition.census.orbit_sizes.is_empty() {
        return None;
    }
    let member_indices: Vec<usize> = partition
        .orbit_of
        .iter()
        .enumerate()
        .filter(|(_, &o)| o == 0)
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(member_indices.len() as u64, partition.census.orbit_sizes[0]);
    Some(MaximalOrbit {
        size: member_indices.len() as u64,
        member_indices,
    })
}

/// Whether the block [3,3,3] lies in the given orbit.
pub fn contains_333(orbit: &MaximalOrbit, table: &SurfaceTable) -> Result<bool> {
    let m = table.modulus();
    let l = m.ell();
    if l < 5 {
        return Err(Error::ModulusTooSmall { ell: l, min: 5 });
    }
    let b = block_canonical(crate::surface::Triple::new(3 % l, 3 % l, 3 % l), m);
    let idx = table
        .block_index(b)
        .ok_or(Error::OffSurface { x: 3 % l, y: 3 % l, z: 3 % l, ell: l })?;
    Ok(orbit.member_indices.binary_search(&idx).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{primes_in, PrimeModulus};
    use crate::surface::{enumerate_surface, GeneratorName, GAMMA_GENERATORS, VIETA_GENERATORS};

    fn table(ell: u64) -> SurfaceTable {
        enumerate_surface(PrimeModulus::new(ell).unwrap()).unwrap()
    }

    #[test]
    fn vieta_censuses() {
        assert_eq!(orbits(&table(5), Level::Triples, &VIETA_GENERATORS).orbit_sizes, vec![40]);
        assert_eq!(orbits(&table(7), Level::Blocks, &VIETA_GENERATORS).orbit_sizes, vec![7]);
    }

    #[test]
    fn rot1_census_ell7() {
        // One 3-cycle per the q-cycle count with q = 3; the remaining four
        // blocks form a single 4-cycle (rot1 has no 2-cycles at ell = 3 mod 4).
        let census = orbits(&table(7), Level::Blocks, &[GeneratorName::Rot1]);
        assert_eq!(census.orbit_sizes, vec![4, 3]);
        assert_eq!(census.total, 7);
    }

    #[test]
    fn maximal_orbit_examples() {
        let p7 = compute_orbits(&table(7), Level::Blocks, &VIETA_GENERATORS);
        let m7 = maximal_orbit(&p7).unwrap();
        assert_eq!(m7.size, 7);
        assert_eq!(m7.member_indices, (0..7).collect::<Vec<_>>());

        let p5 = compute_orbits(&table(5), Level::Blocks, &VIETA_GENERATORS);
        assert_eq!(maximal_orbit(&p5).unwrap().size, 10);

        // no generators: all singletons, tie-break picks index 0
        let p = compute_orbits(&table(5), Level::Blocks, &[]);
        assert_eq!(p.census.orbit_sizes, vec![1; 10]);
        assert_eq!(p.census.representatives, (0..10).collect::<Vec<_>>());
        assert_eq!(maximal_orbit(&p).unwrap().member_indices, vec![0]);
    }

    #[test]
    fn empty_surface_census() {
        let t3 = table(3);
        let p = compute_orbits(&t3, Level::Blocks, &VIETA_GENERATORS);
        assert_eq!(p.census.total, 0);
        assert!(p.census.orbit_sizes.is_empty());
        assert!(maximal_orbit(&p).is_none());
    }

    #[test]
    fn contains_333_examples() {
        for l in [7u64, 11, 13] {
            let t = table(l);
            let p = compute_orbits(&t, Level::Blocks, &VIETA_GENERATORS);
            let mo = maximal_orbit(&p).unwrap();
            assert!(contains_333(&mo, &t).unwrap(), "ell={l}");
        }
    }

    #[test]
    fn transitive_on_small_range() {
        for l in primes_in(5, 61) {
            let t = table(l);
            assert!(orbits(&t, Level::Triples, &VIETA_GENERATORS).is_transitive(), "ell={l}");
            assert!(orbits(&t, Level::Blocks, &VIETA_GENERATORS).is_transitive(), "ell={l}");
        }
    }

    #[test]
    fn census_independent_of_generator_order() {
        for l in [7u64, 13, 19] {
            let t = table(l);
            let a = orbits(&t, Level::Blocks, &VIETA_GENERATORS);
            let b = orbits(
                &t,
                Level::Blocks,
                &[GeneratorName::Tau23, GeneratorName::R3, GeneratorName::Tau12],
            );
            assert_eq!(a, b, "ell={l}");
        }
    }

    #[test]
    fn gamma_orbits_refine_vieta_orbits() {
        // Blocks: every gamma0/gamma1728/rot1 image stays in its Vieta orbit.
        for l in primes_in(5, 31) {
            let t = table(l);
            let p = compute_orbits(&t, Level::Blocks, &VIETA_GENERATORS);
            for g in GAMMA_GENERATORS.iter().copied().chain([GeneratorName::Rot1]) {
                for i in 0..t.blocks().len() {
                    let j = super::image_index(&t, Level::Blocks, g, i);
                    assert_eq!(p.orbit_of[i], p.orbit_of[j], "ell={l} gen={g} i={i}");
                }
            }
        }
    }
}
