//! Brute-force SL2(F_ell) oracle: generating pairs with commutator trace -2,
//! the trace-triple dictionary onto the surface, and the Nielsen moves. Kept
//! deliberately theory-free (full closure instead of subgroup classification)
//! so it can check the structured pipeline independently.

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Residue};
use crate::orbits::Level;
use crate::perm::permutation_of;
use crate::surface::{apply, block_canonical, enumerate_surface, GeneratorName, Triple};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A matrix of SL2(F_ell); determinant 1 is the caller's invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Residue,
    pub b: Residue,
    pub c: Residue,
    pub d: Residue,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 { a: 1, b: 0, c: 0, d: 1 }
    }

    /// Reduce signed integer entries.
    pub fn from_signed(a: i64, b: i64, c: i64, d: i64, m: PrimeModulus) -> Self {
        Mat2 {
            a: m.reduce_signed(a),
            b: m.reduce_signed(b),
            c: m.reduce_signed(c),
            d: m.reduce_signed(d),
        }
    }

    #[inline]
    pub fn mul(self, o: Mat2, m: PrimeModulus) -> Mat2 {
        Mat2 {
            a: m.add(m.mul(self.a, o.a), m.mul(self.b, o.c)),
            b: m.add(m.mul(self.a, o.b), m.mul(self.b, o.d)),
            c: m.add(m.mul(self.c, o.a), m.mul(self.d, o.c)),
            d: m.add(m.mul(self.c, o.b), m.mul(self.d, o.d)),
        }
    }

    /// Inverse via the adjugate; valid because det = 1.
    pub fn inv(self, m: PrimeModulus) -> Mat2 {
        Mat2 { a: self.d, b: m.neg(self.b), c: m.neg(self.c), d: self.a }
    }

    pub fn neg(self, m: PrimeModulus) -> Mat2 {
        Mat2 { a: m.neg(self.a), b: m.neg(self.b), c: m.neg(self.c), d: m.neg(self.d) }
    }

    pub fn trace(self, m: PrimeModulus) -> Residue {
        m.add(self.a, self.d)
    }

    pub fn det(self, m: PrimeModulus) -> Residue {
        m.sub(m.mul(self.a, self.d), m.mul(self.b, self.c))
    }
}

/// (tr A, tr B, tr AB): the complete conjugation invariant of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceTriple {
    pub tr_a: Residue,
    pub tr_b: Residue,
    pub tr_ab: Residue,
}

impl TraceTriple {
    pub fn of(a: Mat2, b: Mat2, m: PrimeModulus) -> Self {
        TraceTriple {
            tr_a: a.trace(m),
            tr_b: b.trace(m),
            tr_ab: a.mul(b, m).trace(m),
        }
    }

    pub fn as_triple(self) -> Triple {
        Triple::new(self.tr_a, self.tr_b, self.tr_ab)
    }
}

/// tr(A B A^-1 B^-1), computed from the actual matrices.
pub fn commutator_trace(a: Mat2, b: Mat2, m: PrimeModulus) -> Residue {
    a.mul(b, m).mul(a.inv(m), m).mul(b.inv(m), m).trace(m)
}

/// All of SL2(F_ell) in packed-index order; ell(ell^2 - 1) elements.
pub fn enumerate_sl2(m: PrimeModulus) -> Vec<Mat2> {
    let l = m.ell();
    let mut out = Vec::with_capacity((l * l * l - l) as usize);
    // a = 0 forces bc = -1
    for b in 1..l {
        let c = m.neg(m.inv(b));
        for d in 0..l {
            out.push(Mat2 { a: 0, b, c, d });
        }
    }
    for a in 1..l {
        let ia = m.inv(a);
        for b in 0..l {
            for c in 0..l {
                out.push(Mat2 { a, b, c, d: m.mul(ia, m.add(1, m.mul(b, c))) });
            }
        }
    }
    out.sort_unstable_by_key(|x| ((x.a * l + x.b) * l + x.c) * l + x.d);
    debug_assert_eq!(out.len() as u64, l * l * l - l);
    out
}

/// Reusable closure workspace: a bitset over packed matrix indices with a
/// touched-word list so clearing costs only what the last run dirtied.
struct ClosureScratch {
    visited: Vec<u64>,
    touched: Vec<u32>,
    queue: Vec<Mat2>,
}

impl ClosureScratch {
    fn new(ell: u64) -> Self {
        let bits = (ell as usize).pow(4);
        ClosureScratch {
            visited: vec![0u64; bits.div_ceil(64)],
            touched: Vec::new(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn insert(&mut self, idx: usize) -> bool {
        let (w, b) = (idx / 64, idx % 64);
        if self.visited[w] >> b & 1 == 1 {
            return false;
        }
        if self.visited[w] == 0 {
            self.touched.push(w as u32);
        }
        self.visited[w] |= 1 << b;
        true
    }

    fn clear(&mut self) {
        for &w in &self.touched {
            self.visited[w as usize] = 0;
        }
        self.touched.clear();
        self.queue.clear();
    }
}

#[inline]
fn pack(x: Mat2, l: u64) -> usize {
    (((x.a * l + x.b) * l + x.c) * l + x.d) as usize
}

fn generates_with(a: Mat2, b: Mat2, m: PrimeModulus, order: usize, s: &mut ClosureScratch) -> bool {
    let l = m.ell();
    s.clear();
    let id = Mat2::identity();
    s.insert(pack(id, l));
    s.queue.push(id);
    let mut count = 1usize;
    let mut head = 0usize;
    while head < s.queue.len() {
        let cur = s.queue[head];
        head += 1;
        for g in [a, b] {
            let nxt = cur.mul(g, m);
            if s.insert(pack(nxt, l)) {
                count += 1;
                if count == order {
                    return true;
                }
                s.queue.push(nxt);
            }
        }
    }
    false
}

/// Whether {A, B} generates all of SL2(F_ell): multiplicative closure from the
/// identity with early exit at the group order.
pub fn generates_sl2(a: Mat2, b: Mat2, m: PrimeModulus) -> bool {
    let l = m.ell();
    let order = (l * l * l - l) as usize;
    if l <= 64 {
        let mut s = ClosureScratch::new(l);
        return generates_with(a, b, m, order, &mut s);
    }
    // sparse path for large moduli, where an ell^4 bitset would not fit
    let mut seen: HashSet<u64> = HashSet::new();
    let id = Mat2::identity();
    seen.insert(pack(id, l) as u64);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        for g in [a, b] {
            let nxt = cur.mul(g, m);
            if seen.insert(pack(nxt, l) as u64) {
                if seen.len() == order {
                    return true;
                }
                queue.push(nxt);
            }
        }
    }
    false
}

/// Deterministic random element: solve the determinant for d (or c) instead of
/// rejection sampling. Not exactly uniform, which none of the spot checks need.
fn random_element(m: PrimeModulus, rng: &mut ChaCha8Rng) -> Mat2 {
    let l = m.ell();
    let a = rng.random_range(0..l);
    if a == 0 {
        let b = rng.random_range(1..l);
        Mat2 { a: 0, b, c: m.neg(m.inv(b)), d: rng.random_range(0..l) }
    } else {
        let b = rng.random_range(0..l);
        let c = rng.random_range(0..l);
        Mat2 { a, b, c, d: m.mul(m.inv(a), m.add(1, m.mul(b, c))) }
    }
}

/// Conjugation by diag(u, u^-1) with u^2 = nu the smallest non-residue: scales
/// b by nu and c by nu^-1. Realizes the normalizer twist at the level of its
/// effect on matrices; enough for every trace check.
fn normalizer_twist(x: Mat2, m: PrimeModulus) -> Mat2 {
    let nu = m.smallest_nonresidue();
    Mat2 { a: x.a, b: m.mul(nu, x.b), c: m.mul(m.inv(nu), x.c), d: x.d }
}

struct PairScan {
    pairs_trace_minus2: u64,
    generating: Vec<(u32, u32)>,
    image_bits: Vec<u64>,
}

/// Scan all ordered pairs, keeping those with commutator trace -2 that
/// generate. Parallel over the outer element; the pair list is sorted
/// afterwards so downstream sampling is schedule-independent.
fn scan_pairs(m: PrimeModulus, elems: &[Mat2]) -> PairScan {
    let l = m.ell();
    let order = elems.len();
    let minus2 = m.neg(2 % l);
    let triple_words = ((l * l * l) as usize).div_ceil(64);
    let (pairs_trace_minus2, generating, image_bits) = (0..order)
        .into_par_iter()
        .fold(
            || (0u64, Vec::new(), vec![0u64; triple_words], ClosureScratch::new(l)),
            |(mut n_m2, mut gen, mut img, mut scratch), i| {
                let a = elems[i];
                let ia = a.inv(m);
                for (j, &b) in elems.iter().enumerate() {
                    let comm = a.mul(b, m).mul(ia, m).mul(b.inv(m), m).trace(m);
                    if comm != minus2 {
                        continue;
                    }
                    n_m2 += 1;
                    if generates_with(a, b, m, order, &mut scratch) {
                        gen.push((i as u32, j as u32));
                        let t = TraceTriple::of(a, b, m);
                        let idx = ((t.tr_a * l + t.tr_b) * l + t.tr_ab) as usize;
                        img[idx / 64] |= 1 << (idx % 64);
                    }
                }
                (n_m2, gen, img, scratch)
            },
        )
        .map(|(n, g, i, _)| (n, g, i))
        .reduce(
            || (0u64, Vec::new(), vec![0u64; triple_words]),
            |(n1, mut g1, mut i1), (n2, g2, i2)| {
                g1.extend(g2);
                for (w1, w2) in i1.iter_mut().zip(i2) {
                    *w1 |= w2;
                }
                (n1 + n2, g1, i1)
            },
        );
    let mut generating = generating;
    generating.sort_unstable();
    PairScan { pairs_trace_minus2, generating, image_bits }
}

fn image_triples(bits: &[u64], l: u64) -> Vec<Triple> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            let idx = (w * 64 + b) as u64;
            out.push(Triple::new(idx / (l * l), idx / l % l, idx % l));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrBijectionReport {
    pub ell: u64,
    pub pairs_trace_minus2: u64,
    pub generating_pairs: u64,
    pub image_size: u64,
    pub surface_size: u64,
    pub conjugations_checked: u64,
}

/// The fiber bijection: trace triples of generating pairs with commutator
/// trace -2 are exactly X*(ell), and the triple is invariant under 1000 seeded
/// conjugations (group elements and the normalizer twist).
pub fn verify_tr_bijection(m: PrimeModulus, seed: u64) -> Result<TrBijectionReport> {
    let table = enumerate_surface(m)?;
    let l = m.ell();
    let elems = enumerate_sl2(m);
    let scan = scan_pairs(m, &elems);
    let image = image_triples(&scan.image_bits, l);
    if image != table.triples() {
        let only_image: Vec<&Triple> =
            image.iter().filter(|t| table.triple_index(**t).is_none()).collect();
        let only_surface: Vec<&Triple> =
            table.triples().iter().filter(|t| !image.binary_search(t).is_ok()).collect();
        return Err(Error::VerificationFailed {
            check: "tr_bijection".into(),
            witness: format!(
                "image size {} vs surface size {}; image-only {:?}; surface-only {:?}",
                image.len(),
                table.triples().len(),
                only_image.first(),
                only_surface.first()
            ),
        });
    }
    let mut conjugations_checked = 0u64;
    if !scan.generating.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let (i, j) = scan.generating[rng.random_range(0..scan.generating.len())];
            let (a, b) = (elems[i as usize], elems[j as usize]);
            let t0 = TraceTriple::of(a, b, m);
            let g = random_element(m, &mut rng);
            let gi = g.inv(m);
            let conj = TraceTriple::of(g.mul(a, m).mul(gi, m), g.mul(b, m).mul(gi, m), m);
            let twist = TraceTriple::of(normalizer_twist(a, m), normalizer_twist(b, m), m);
            for (name, t) in [("conjugation", conj), ("normalizer twist", twist)] {
                if t != t0 {
                    return Err(Error::VerificationFailed {
                        check: "tr_bijection".into(),
                        witness: format!("{name} moved {t0:?} to {t:?} for pair ({a:?}, {b:?})"),
                    });
                }
            }
            conjugations_checked += 1;
        }
    }
    Ok(TrBijectionReport {
        ell: l,
        pairs_trace_minus2: scan.pairs_trace_minus2,
        generating_pairs: scan.generating.len() as u64,
        image_size: image.len() as u64,
        surface_size: table.triples().len() as u64,
        conjugations_checked,
    })
}

/// Nielsen moves act on trace triples as the Vieta/transposition moves:
/// r:(A,B) -> (A^-1, B) as R3, s as tau12, t:(A,B) -> (A^-1, AB) as tau23.
/// Checked on seeded-random pairs, not only generating ones.
pub fn nielsen_correspondence_check(m: PrimeModulus, samples: u64, seed: u64) -> Result<u64> {
    if m.ell() < 5 {
        return Err(Error::ModulusTooSmall { ell: m.ell(), min: 5 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let a = random_element(m, &mut rng);
        let b = random_element(m, &mut rng);
        let t0 = TraceTriple::of(a, b, m).as_triple();
        let moves = [
            (GeneratorName::R3, TraceTriple::of(a.inv(m), b, m)),
            (GeneratorName::Tau12, TraceTriple::of(b, a, m)),
            (GeneratorName::Tau23, TraceTriple::of(a.inv(m), a.mul(b, m), m)),
        ];
        for (g, got) in moves {
            let want = apply(g, t0, m);
            if got.as_triple() != want {
                return Err(Error::VerificationFailed {
                    check: "nielsen_correspondence".into(),
                    witness: format!(
                        "sample {k}: move {g} sent {t0} to {:?}, surface move gives {want}",
                        got
                    ),
                });
            }
        }
    }
    Ok(samples)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberReport {
    pub ell: u64,
    pub sign_classes: u64,
    pub blocks: u64,
}

/// Group generating pairs by the sign classes (+-A, +-B) and confirm each
/// class holds all four lifts, whose trace triples are the four sign variants
/// of a single block.
pub fn psl_fiber_check(m: PrimeModulus) -> Result<FiberReport> {
    let l = m.ell();
    if l < 3 {
        return Err(Error::ModulusTooSmall { ell: l, min: 3 });
    }
    let elems = enumerate_sl2(m);
    let scan = scan_pairs(m, &elems);
    let canon = |x: Mat2| -> Mat2 {
        let n = x.neg(m);
        if pack(x, l) <= pack(n, l) { x } else { n }
    };
    let mut classes: std::collections::BTreeMap<(u64, u64), Vec<(Mat2, Mat2)>> = Default::default();
    for &(i, j) in &scan.generating {
        let (a, b) = (elems[i as usize], elems[j as usize]);
        let key = (pack(canon(a), l) as u64, pack(canon(b), l) as u64);
        classes.entry(key).or_default().push((a, b));
    }
    let mut blocks = HashSet::new();
    for (key, members) in &classes {
        if members.len() != 4 {
            return Err(Error::VerificationFailed {
                check: "psl_fiber".into(),
                witness: format!("sign class {key:?} has {} lifts, expected 4", members.len()),
            });
        }
        let mut triples: Vec<Triple> = members
            .iter()
            .map(|&(a, b)| TraceTriple::of(a, b, m).as_triple())
            .collect();
        triples.sort_unstable();
        let block = block_canonical(triples[0], m);
        let mut variants = [
            block.rep,
            Triple::new(block.rep.x, m.neg(block.rep.y), m.neg(block.rep.z)),
            Triple::new(m.neg(block.rep.x), block.rep.y, m.neg(block.rep.z)),
            Triple::new(m.neg(block.rep.x), m.neg(block.rep.y), block.rep.z),
        ];
        variants.sort_unstable();
        if triples != variants {
            return Err(Error::VerificationFailed {
                check: "psl_fiber".into(),
                witness: format!("sign class {key:?} gives triples {triples:?}, not a block fiber"),
            });
        }
        blocks.insert(block);
    }
    Ok(FiberReport {
        ell: l,
        sign_classes: classes.len() as u64,
        blocks: blocks.len() as u64,
    })
}

/// tr(T^i) = -2 for every i coprime to 2*ell, for both unipotent-times-minus-
/// identity representatives T = [[-1,1],[0,-1]] and T' = [[-1,nu],[0,-1]].
pub fn trace_minus2_power_stability(m: PrimeModulus) -> Result<u64> {
    let l = m.ell();
    if l < 5 {
        return Err(Error::ModulusTooSmall { ell: l, min: 5 });
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let minus2 = m.neg(2);
    let reps = [
        Mat2::from_signed(-1, 1, 0, -1, m),
        Mat2 { a: m.neg(1), b: m.smallest_nonresidue(), c: 0, d: m.neg(1) },
    ];
    let mut checked = 0u64;
    for t in reps {
        let mut power = Mat2::identity();
        for i in 1..2 * l {
            power = power.mul(t, m);
            if gcd(i, 2 * l) != 1 {
                continue;
            }
            if power.trace(m) != minus2 {
                return Err(Error::VerificationFailed {
                    check: "trace_minus2_power_stability".into(),
                    witness: format!("tr(T^{i}) = {} for T = {t:?}", power.trace(m)),
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The explicit integer generating pair reduced mod ell: asserts generation
/// and commutator trace -2, returns its trace triple, always (3,3,6).
pub fn gamma1prime_point(m: PrimeModulus) -> Result<Triple> {
    let l = m.ell();
    if l < 5 {
        return Err(Error::ModulusTooSmall { ell: l, min: 5 });
    }
    let a = Mat2::from_signed(2, -1, -1, 1, m);
    let b = Mat2::from_signed(1, -1, -1, 2, m);
    debug_assert_eq!(a.det(m), 1);
    debug_assert_eq!(b.det(m), 1);
    if !generates_sl2(a, b, m) {
        return Err(Error::VerificationFailed {
            check: "gamma1prime_point".into(),
            witness: format!("integer pair fails to generate SL2(F_{l})"),
        });
    }
    if commutator_trace(a, b, m) != m.neg(2) {
        return Err(Error::VerificationFailed {
            check: "gamma1prime_point".into(),
            witness: "integer pair has wrong commutator trace".into(),
        });
    }
    Ok(TraceTriple::of(a, b, m).as_triple())
}

/// The two pair-level identities on seeded-random (not necessarily
/// generating) pairs: commutator trace equals the surface form minus 2, and
/// Fricke's tr(AB) + tr(A^-1 B) = tr(A) tr(B).
pub fn identity_spot_checks(m: PrimeModulus, samples: u64, seed: u64) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let a = random_element(m, &mut rng);
        let b = random_element(m, &mut rng);
        let t = TraceTriple::of(a, b, m);
        let form = crate::surface::residual(t.tr_a, t.tr_b, t.tr_ab, m);
        if commutator_trace(a, b, m) != m.sub(form, 2 % m.ell()) {
            return Err(Error::VerificationFailed {
                check: "trace_identity".into(),
                witness: format!("sample {k}: pair ({a:?}, {b:?})"),
            });
        }
        let fricke_lhs = m.add(t.tr_ab, a.inv(m).mul(b, m).trace(m));
        if fricke_lhs != m.mul(t.tr_a, t.tr_b) {
            return Err(Error::VerificationFailed {
                check: "fricke_identity".into(),
                witness: format!("sample {k}: pair ({a:?}, {b:?})"),
            });
        }
    }
    Ok(samples)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub ell: u64,
    pub bijection: TrBijectionReport,
    pub nielsen_samples: u64,
    pub fibers: FiberReport,
    pub power_stability_checks: u64,
    pub gamma1prime_triple: Triple,
    pub gamma1prime_block_gamma0_fixed: bool,
    pub identity_samples: u64,
}

/// Every oracle check at one modulus; any failure surfaces as a verification
/// error with its witness.
pub fn run_full_oracle(m: PrimeModulus, seed: u64) -> Result<OracleReport> {
    let bijection = verify_tr_bijection(m, seed)?;
    let nielsen_samples = nielsen_correspondence_check(m, 1000, seed)?;
    let fibers = psl_fiber_check(m)?;
    let power_stability_checks = trace_minus2_power_stability(m)?;
    let gamma1prime_triple = gamma1prime_point(m)?;
    let identity_samples = identity_spot_checks(m, 10_000, seed)?;

    let table = enumerate_surface(m)?;
    let g0 = permutation_of(GeneratorName::Gamma0, &table, Level::Blocks);
    let idx = table
        .block_index_of(gamma1prime_triple)
        .expect("trace triple of a commutator-trace -2 pair is on the surface");
    let gamma1prime_block_gamma0_fixed = g0.apply(idx) == idx;
    if !gamma1prime_block_gamma0_fixed {
        return Err(Error::VerificationFailed {
            check: "gamma1prime_point".into(),
            witness: format!("block of {gamma1prime_triple} is not gamma0-fixed"),
        });
    }
    Ok(OracleReport {
        ell: m.ell(),
        bijection,
        nielsen_samples,
        fibers,
        power_stability_checks,
        gamma1prime_triple,
        gamma1prime_block_gamma0_fixed,
        identity_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;

    fn pm(ell: u64) -> PrimeModulus {
        PrimeModulus::new(ell).unwrap()
    }

    #[test]
    fn commutator_trace_examples() {
        let m5 = pm(5);
        let u = Mat2 { a: 1, b: 1, c: 0, d: 1 };
        let v = Mat2 { a: 1, b: 0, c: 1, d: 1 };
        assert_eq!(commutator_trace(u, v, m5), 3);
        assert_eq!(commutator_trace(u, u, m5), 2);

        let m7 = pm(7);
        let a = Mat2::from_signed(2, -1, -1, 1, m7);
        let b = Mat2::from_signed(1, -1, -1, 2, m7);
        assert_eq!(commutator_trace(a, b, m7), m7.neg(2));
    }

    #[test]
    fn enumeration_and_inverse() {
        for l in [3u64, 5, 7] {
            let m = pm(l);
            let elems = enumerate_sl2(m);
            assert_eq!(elems.len() as u64, l * l * l - l);
            for &x in elems.iter().step_by(7) {
                assert_eq!(x.det(m), 1);
                assert_eq!(x.mul(x.inv(m), m), Mat2::identity());
            }
        }
    }

    #[test]
    fn generation_examples() {
        let m = pm(5);
        let u = Mat2 { a: 1, b: 1, c: 0, d: 1 };
        let v = Mat2 { a: 1, b: 0, c: 1, d: 1 };
        assert!(generates_sl2(u, v, m));
        assert!(!generates_sl2(Mat2::identity(), Mat2::identity(), m));
        let d1 = Mat2 { a: 2, b: 0, c: 0, d: 3 };
        let d2 = Mat2 { a: 3, b: 0, c: 0, d: 2 };
        assert_eq!(d1.det(m), 1);
        assert!(!generates_sl2(d1, d2, m));
    }

    #[test]
    fn quaternion_pair_has_trace_minus2_but_no_generation() {
        // commutator trace alone does not certify generation; the closure
        // test is what separates these from honest fiber members
        let m = pm(5);
        let i = Mat2 { a: 2, b: 0, c: 0, d: 3 }; // i^2 = -1
        let j = Mat2 { a: 0, b: 1, c: 4, d: 0 }; // j^2 = -1, ij = -ji
        assert_eq!(i.det(m), 1);
        assert_eq!(j.det(m), 1);
        assert_eq!(commutator_trace(i, j, m), m.neg(2));
        assert!(!generates_sl2(i, j, m));
    }

    #[test]
    fn bijection_at_5_and_empty_at_3() {
        let r = verify_tr_bijection(pm(5), 1).unwrap();
        assert_eq!(r.image_size, 40);
        assert_eq!(r.surface_size, 40);
        assert_eq!(r.conjugations_checked, 1000);
        assert!(r.generating_pairs >= r.image_size);

        let r3 = verify_tr_bijection(pm(3), 1).unwrap();
        assert_eq!(r3.generating_pairs, 0);
        assert_eq!(r3.image_size, 0);
        assert_eq!(r3.conjugations_checked, 0);
    }

    #[test]
    fn bijection_at_7() {
        let r = verify_tr_bijection(pm(7), 1).unwrap();
        assert_eq!(r.image_size, 28);
    }

    #[test]
    fn nielsen_moves() {
        let m = pm(5);
        let u = Mat2 { a: 1, b: 1, c: 0, d: 1 };
        let v = Mat2 { a: 1, b: 0, c: 1, d: 1 };
        let t = TraceTriple::of(u, v, m);
        assert_eq!((t.tr_a, t.tr_b, t.tr_ab), (2, 2, 3));
        let r = TraceTriple::of(u.inv(m), v, m);
        assert_eq!((r.tr_a, r.tr_b, r.tr_ab), (2, 2, 1));
        let s = TraceTriple::of(v, u, m);
        assert_eq!((s.tr_a, s.tr_b, s.tr_ab), (2, 2, 3));
        let tt = TraceTriple::of(u.inv(m), u.mul(v, m), m);
        assert_eq!(tt.tr_ab, v.trace(m));

        assert_eq!(nielsen_correspondence_check(m, 500, 1).unwrap(), 500);
        assert_eq!(nielsen_correspondence_check(pm(7), 500, 1).unwrap(), 500);
    }

    #[test]
    fn fibers_at_5_and_7() {
        let r5 = psl_fiber_check(pm(5)).unwrap();
        assert_eq!(r5.blocks, 10);
        assert_eq!(r5.sign_classes % r5.blocks, 0);
        let r7 = psl_fiber_check(pm(7)).unwrap();
        assert_eq!(r7.blocks, 7);
    }

    #[test]
    fn power_stability() {
        // phi(2*ell) coprime exponents per representative, two representatives
        assert_eq!(trace_minus2_power_stability(pm(5)).unwrap(), 8);
        assert_eq!(trace_minus2_power_stability(pm(7)).unwrap(), 12);
    }

    #[test]
    fn gamma1prime_examples() {
        assert_eq!(gamma1prime_point(pm(5)).unwrap(), Triple::new(3, 3, 1));
        assert_eq!(gamma1prime_point(pm(7)).unwrap(), Triple::new(3, 3, 6));
        assert_eq!(gamma1prime_point(pm(11)).unwrap(), Triple::new(3, 3, 6));
    }

    #[test]
    fn identities_hold() {
        assert_eq!(identity_spot_checks(pm(5), 10_000, 1).unwrap(), 10_000);
        assert_eq!(identity_spot_checks(pm(13), 10_000, 1).unwrap(), 10_000);
    }

    #[test]
    fn full_oracle_at_5() {
        let r = run_full_oracle(pm(5), 1).unwrap();
        assert_eq!(r.bijection.image_size, 40);
        assert_eq!(r.fibers.blocks, 10);
        assert_eq!(r.gamma1prime_triple, Triple::new(3, 3, 1));
        assert!(r.gamma1prime_block_gamma0_fixed);
    }
}
