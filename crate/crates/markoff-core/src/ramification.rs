//! The three-point-cover picture: fibers above j = 0, 1728, infinity read off
//! the cycle structures of gamma0, gamma1728, rot1, plus the mod-8/mod-16
//! parity laws, monodromy prediction, and Riemann-Hurwitz genus bookkeeping.

use crate::error::{Error, Result};
use crate::orbits::Level;
use crate::perm::{permutation_of, permutation_on_subset, Classification, Parity, Permutation};
use crate::surface::{GeneratorName, SurfaceTable};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Cycle-length multisets (descending) of gamma0, gamma1728, rot1 on a domain.
/// j0 entries are always 1 or 3, j1728 entries 1 or 2; jinf is raw cusp data
/// carrying no further interpretation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub degree: u64,
    pub j0: Vec<u64>,
    pub j1728: Vec<u64>,
    pub jinf: Vec<u64>,
}

/// Cycle multisets of the three fiber permutations on all blocks (None) or on
/// a sorted block subset, which must be closed under all three.
pub fn profile(table: &SurfaceTable, subset: Option<&[usize]>) -> Result<RamificationProfile> {
    let perm_for = |g: GeneratorName| -> Result<Permutation> {
        match subset {
            None => Ok(permutation_of(g, table, Level::Blocks)),
            Some(s) => permutation_on_subset(g, table, Level::Blocks, s),
        }
    };
    let j0 = perm_for(GeneratorName::Gamma0)?.cycle_type();
    let j1728 = perm_for(GeneratorName::Gamma1728)?.cycle_type();
    let jinf = perm_for(GeneratorName::Rot1)?.cycle_type();
    let degree = subset.map_or(table.blocks().len(), <[usize]>::len) as u64;
    debug_assert!(j0.iter().all(|&e| e == 1 || e == 3));
    debug_assert!(j1728.iter().all(|&e| e == 1 || e == 2));
    debug_assert_eq!(j0.iter().sum::<u64>(), degree);
    Ok(RamificationProfile { degree, j0, j1728, jinf })
}

/// Number of unramified points (size-1 entries) above j = 0 and j = 1728.
pub fn unramified_counts(profile: &RamificationProfile) -> (u64, u64) {
    let ones = |v: &[u64]| v.iter().filter(|&&e| e == 1).count() as u64;
    (ones(&profile.j0), ones(&profile.j1728))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monodromy {
    Alt,
    Sym,
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monodromy::Alt => "Alt",
            Monodromy::Sym => "Sym",
        })
    }
}

/// The mod-16 prediction: symmetric for 5,7,9,11, alternating otherwise.
pub fn predicted_monodromy(ell: u64) -> Result<Monodromy> {
    if ell < 5 {
        return Err(Error::ModulusTooSmall { ell, min: 5 });
    }
    Ok(match ell % 16 {
        5 | 7 | 9 | 11 => Monodromy::Sym,
        _ => Monodromy::Alt,
    })
}

/// 2g - 2 = -2*degree + sum over the three fibers of (e - 1). A non-integral
/// or negative g means the profile does not describe a cover and is reported
/// as an inconsistency, never clamped.
pub fn riemann_hurwitz_genus(profile: &RamificationProfile) -> Result<u64> {
    let n = profile.degree as i128;
    let branch: i128 = [&profile.j0, &profile.j1728, &profile.jinf]
        .into_iter()
        .flatten()
        .map(|&e| e as i128 - 1)
        .sum();
    let two_g = 2 - 2 * n + branch;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::GenusInconsistency {
            degree: profile.degree,
            branch: branch as u64,
        });
    }
    Ok((two_g / 2) as u64)
}

/// The assembled per-curve facts fed to reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub degree: u64,
    pub genus: u64,
    pub unramified_j0: u64,
    pub unramified_j1728: u64,
    pub predicted_monodromy: Monodromy,
    pub computed_monodromy: Classification,
    pub parity_match: bool,
}

pub fn curve_invariants(
    ell: u64,
    profile: &RamificationProfile,
    computed: Classification,
) -> Result<CurveInvariants> {
    let predicted = predicted_monodromy(ell)?;
    let (unramified_j0, unramified_j1728) = unramified_counts(profile);
    let parity_match = matches!(
        (&computed, predicted),
        (Classification::Alt, Monodromy::Alt) | (Classification::Sym, Monodromy::Sym)
    );
    Ok(CurveInvariants {
        degree: profile.degree,
        genus: riemann_hurwitz_genus(profile)?,
        unramified_j0,
        unramified_j1728,
        predicted_monodromy: predicted,
        computed_monodromy: computed,
        parity_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityLawReport {
    pub ell: u64,
    pub computed: Parity,
    pub predicted: Parity,
    pub parity_ok: bool,
    pub two_cycles: u64,
    pub formula_two_cycles: u64,
    pub count_ok: bool,
    pub ok: bool,
}

/// gamma1728 is even on blocks iff ell = 1,3,13,15 mod 16; equivalently its
/// 2-cycle count has the parity given by the mod-8 closed forms, which are
/// also checked exactly.
pub fn parity_law_check(table: &SurfaceTable) -> Result<ParityLawReport> {
    let l = table.ell();
    if l < 5 {
        return Err(Error::ModulusTooSmall { ell: l, min: 5 });
    }
    let perm = permutation_of(GeneratorName::Gamma1728, table, Level::Blocks);
    let computed = perm.parity();
    let predicted = if matches!(l % 16, 1 | 3 | 13 | 15) { Parity::Even } else { Parity::Odd };
    let two_cycles = perm.cycle_type().iter().filter(|&&c| c == 2).count() as u64;
    let formula_two_cycles = match l % 8 {
        1 => (l * (l + 3) - 4) / 8,
        3 => l * (l - 3) / 8,
        5 => l * (l + 3) / 8,
        _ => (l * (l - 3) - 4) / 8,
    };
    let count_parity = if two_cycles.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let parity_ok = computed == predicted;
    let count_ok = two_cycles == formula_two_cycles && count_parity == computed;
    Ok(ParityLawReport {
        ell: l,
        computed,
        predicted,
        parity_ok,
        two_cycles,
        formula_two_cycles,
        count_ok,
        ok: parity_ok && count_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{primes_in, PrimeModulus};
    use crate::orbits::{compute_orbits, maximal_orbit, Level};
    use crate::surface::{enumerate_surface, VIETA_GENERATORS};

    fn table(ell: u64) -> SurfaceTable {
        enumerate_surface(PrimeModulus::new(ell).unwrap()).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p5 = profile(&table(5), None).unwrap();
        assert_eq!(p5.j0, vec![3, 3, 3, 1]);
        assert_eq!(p5.j1728, vec![2, 2, 2, 2, 2]);
        let p7 = profile(&table(7), None).unwrap();
        assert_eq!(p7.j1728, vec![2, 2, 2, 1]);
        assert_eq!(p7.jinf.iter().sum::<u64>(), 7);
    }

    #[test]
    fn unramified_examples() {
        assert_eq!(unramified_counts(&profile(&table(7), None).unwrap()), (1, 1));
        assert_eq!(unramified_counts(&profile(&table(5), None).unwrap()), (1, 0));
        assert_eq!(unramified_counts(&profile(&table(13), None).unwrap()), (1, 0));
    }

    #[test]
    fn degree_one_mod_three_on_full_set() {
        for l in primes_in(5, 61) {
            let p = profile(&table(l), None).unwrap();
            assert_eq!(p.degree % 3, 1, "ell={l}");
            assert_eq!(p.j0.iter().filter(|&&e| e == 1).count(), 1, "ell={l}");
        }
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_monodromy(5).unwrap(), Monodromy::Sym);
        assert_eq!(predicted_monodromy(13).unwrap(), Monodromy::Alt);
        assert_eq!(predicted_monodromy(19).unwrap(), Monodromy::Alt);
        assert!(predicted_monodromy(3).is_err());
    }

    #[test]
    fn genus_trivial_and_small() {
        let trivial = RamificationProfile { degree: 1, j0: vec![1], j1728: vec![1], jinf: vec![1] };
        assert_eq!(riemann_hurwitz_genus(&trivial).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(&profile(&table(5), None).unwrap()).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(&profile(&table(7), None).unwrap()).unwrap(), 0);
    }

    #[test]
    fn genus_rejects_inconsistent_profiles() {
        // odd branch sum: 2g would be odd
        let bad = RamificationProfile { degree: 2, j0: vec![2], j1728: vec![1, 1], jinf: vec![1, 1] };
        assert!(matches!(riemann_hurwitz_genus(&bad), Err(Error::GenusInconsistency { .. })));
        // unbranched degree-2 cover of the sphere by itself: 2g = -2
        let neg = RamificationProfile {
            degree: 2,
            j0: vec![1, 1],
            j1728: vec![1, 1],
            jinf: vec![1, 1],
        };
        assert!(matches!(riemann_hurwitz_genus(&neg), Err(Error::GenusInconsistency { .. })));
    }

    #[test]
    fn genus_table_on_maximal_orbit() {
        let want = [
            (5u64, 0u64), (7, 0), (11, 0), (13, 0), (17, 0),
            (19, 1), (23, 2), (29, 4), (31, 5), (37, 13),
            (41, 11), (43, 18), (47, 22), (53, 33),
        ];
        for (l, g) in want {
            let t = table(l);
            let part = compute_orbits(&t, Level::Blocks, &VIETA_GENERATORS);
            let mo = maximal_orbit(&part).unwrap();
            let p = profile(&t, Some(&mo.member_indices)).unwrap();
            assert_eq!(riemann_hurwitz_genus(&p).unwrap(), g, "ell={l}");
        }
    }

    #[test]
    fn jinf_entries_divide_the_three_periods() {
        for l in primes_in(5, 199) {
            let p = profile(&table(l), None).unwrap();
            for &e in &p.jinf {
                assert!(
                    (l - 1) / 2 % e == 0 || l.div_ceil(2) % e == 0 || l % e == 0,
                    "ell={l} cycle {e}"
                );
            }
        }
    }

    #[test]
    fn non_closed_domain_errors() {
        let t = table(7);
        assert!(matches!(
            profile(&t, Some(&[0, 1])),
            Err(Error::DomainNotClosed { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        let r5 = parity_law_check(&table(5)).unwrap();
        assert!(r5.ok && r5.computed == Parity::Odd);
        let r17 = parity_law_check(&table(17)).unwrap();
        assert!(r17.ok && r17.computed == Parity::Even);
        assert_eq!(r17.two_cycles, 42);
        let r23 = parity_law_check(&table(23)).unwrap();
        assert!(r23.ok && r23.computed == Parity::Odd);
    }

    #[test]
    fn parity_law_small_range() {
        for l in primes_in(5, 97) {
            let r = parity_law_check(&table(l)).unwrap();
            assert!(r.ok, "ell={l}: {r:?}");
        }
    }

    #[test]
    fn curve_invariants_assembly() {
        let t = table(7);
        let p = profile(&t, None).unwrap();
        let ci = curve_invariants(7, &p, Classification::Sym).unwrap();
        assert_eq!(ci.degree, 7);
        assert_eq!(ci.genus, 0);
        assert_eq!((ci.unramified_j0, ci.unramified_j1728), (1, 1));
        assert_eq!(ci.predicted_monodromy, Monodromy::Sym);
        assert!(ci.parity_match);
        let ci2 = curve_invariants(7, &p, Classification::Unknown("x".into())).unwrap();
        assert!(!ci2.parity_match);
    }
}
