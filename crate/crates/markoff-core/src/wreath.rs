//! Exhaustive small-instance verification of the wreath-product lemmas behind
//! the giant classification: the two-cycle proposition, the embedding
//! corollary, and the power-elimination corollary, all checked over full
//! G wr S_r element sets at desk scale.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A permutation of [0, k) small enough to enumerate by the armful.
pub type SmallPerm = Vec<u8>;

fn sp_identity(k: usize) -> SmallPerm {
    (0..k as u8).collect()
}

fn sp_inverse(p: &SmallPerm) -> SmallPerm {
    let mut inv = vec![0u8; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

/// f first, then g.
fn sp_then(f: &SmallPerm, g: &SmallPerm) -> SmallPerm {
    f.iter().map(|&i| g[i as usize]).collect()
}

/// All permutations of [0, k) in lexicographic order of their image arrays.
pub fn all_perms(k: usize) -> Vec<SmallPerm> {
    fn rec(avail: &mut Vec<u8>, cur: &mut SmallPerm, out: &mut Vec<SmallPerm>) {
        if avail.is_empty() {
            out.push(cur.clone());
            return;
        }
        for idx in 0..avail.len() {
            let v = avail.remove(idx);
            cur.push(v);
            rec(avail, cur, out);
            cur.pop();
            avail.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k as u8).collect(), &mut Vec::new(), &mut out);
    out
}

/// An element (sigma, tau) of G wr S_r acting on tuples over [0, m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathElement {
    pub sigma: Vec<SmallPerm>,
    pub tau: SmallPerm,
}

impl WreathElement {
    pub fn identity(m: usize, r: usize) -> Self {
        WreathElement { sigma: vec![sp_identity(m); r], tau: sp_identity(r) }
    }
}

/// y_i = sigma_i(x_{tau^-1(i)}).
pub fn wreath_act(w: &WreathElement, point: &[u8]) -> Result<Vec<u8>> {
    let r = w.tau.len();
    if w.sigma.len() != r || point.len() != r {
        return Err(Error::ShapeMismatch { expected: r, got: w.sigma.len().max(point.len()) });
    }
    let tau_inv = sp_inverse(&w.tau);
    (0..r)
        .map(|i| {
            let x = point[tau_inv[i] as usize] as usize;
            w.sigma[i].get(x).copied().ok_or(Error::ShapeMismatch {
                expected: w.sigma[i].len(),
                got: x + 1,
            })
        })
        .collect()
}

/// Semidirect-product composition, w2 applied first:
/// tau = tau1 tau2, sigma_i = sigma1_i after sigma2_{tau1^-1(i)}.
pub fn wreath_compose(w1: &WreathElement, w2: &WreathElement) -> WreathElement {
    let r = w1.tau.len();
    debug_assert_eq!(r, w2.tau.len());
    let tau1_inv = sp_inverse(&w1.tau);
    WreathElement {
        sigma: (0..r)
            .map(|i| sp_then(&w2.sigma[tau1_inv[i] as usize], &w1.sigma[i]))
            .collect(),
        tau: sp_then(&w2.tau, &w1.tau),
    }
}

fn decode(p: usize, m: usize, r: usize) -> Vec<u8> {
    let mut x = Vec::with_capacity(r);
    let mut p = p;
    for _ in 0..r {
        x.push((p % m) as u8);
        p /= m;
    }
    x
}

fn encode(x: &[u8], m: usize) -> usize {
    x.iter().rev().fold(0, |acc, &d| acc * m + d as usize)
}

/// The embedding into S_{m^r}: tuples indexed with coordinate 0 least
/// significant.
pub fn iota(w: &WreathElement, m: usize) -> Result<Permutation> {
    let r = w.tau.len();
    let n = m.pow(r as u32);
    let mut images = Vec::with_capacity(n);
    for p in 0..n {
        images.push(encode(&wreath_act(w, &decode(p, m, r))?, m) as u32);
    }
    Permutation::new(images)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Closure of generators inside S_m, sorted for determinism.
pub fn group_closure(m: usize, gens: &[SmallPerm]) -> Vec<SmallPerm> {
    let mut seen: HashSet<SmallPerm> = HashSet::new();
    let id = sp_identity(m);
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let nxt = sp_then(&cur, g);
            if seen.insert(nxt.clone()) {
                queue.push(nxt);
            }
        }
    }
    let mut out: Vec<SmallPerm> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// All of G wr S_r, odometer order over (sigma tuple, tau).
fn wreath_elements(group: &[SmallPerm], r: usize) -> Vec<WreathElement> {
    let taus = all_perms(r);
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let sigma: Vec<SmallPerm> = idx.iter().map(|&i| group[i].clone()).collect();
        for tau in &taus {
            out.push(WreathElement { sigma: sigma.clone(), tau: tau.clone() });
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            idx[k] += 1;
            if idx[k] < group.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Cycle length of the cycle through each point.
fn cycle_len_at(perm: &Permutation) -> Vec<u64> {
    let n = perm.degree();
    let mut len_at = vec![0u64; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            members.push(i);
            i = perm.apply(i);
        }
        for &j in &members {
            len_at[j] = members.len() as u64;
        }
    }
    len_at
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropWreathsOutcome {
    pub m: usize,
    pub r: usize,
    pub q: u64,
    pub s: u64,
    pub elements: u64,
    pub qs_cycle_elements: u64,
    pub pairs_checked: u64,
    pub pass: bool,
    pub witness: Option<String>,
}

/// One element's verdict under the two-cycle proposition.
#[derive(Clone, Debug)]
pub struct ElementPairCheck {
    /// Conclusion (1): iota(pi) has a qs-divisible cycle.
    pub qs_cycle: bool,
    pub qualifying_pairs: u64,
    /// Pairs settled by the coordinate-fixing search of conclusion (2).
    pub case2_pairs: u64,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Check one wreath element against the proposition: for every pair of
/// points in q- and s-divisible cycles, either a qs-divisible cycle exists,
/// or some i and some t coprime to qs have tau^t(i) = i with pi^t fixing
/// both points away from coordinate i.
pub fn check_prop_wreaths_element(
    w: &WreathElement,
    m: usize,
    q: u64,
    s: u64,
) -> Result<ElementPairCheck> {
    let r = w.tau.len();
    let pi = iota(w, m)?;
    let len_at = cycle_len_at(&pi);
    let a_points: Vec<usize> = (0..pi.degree()).filter(|&p| len_at[p].is_multiple_of(q)).collect();
    let b_points: Vec<usize> = (0..pi.degree()).filter(|&p| len_at[p].is_multiple_of(s)).collect();
    let mut out = ElementPairCheck {
        qs_cycle: len_at.iter().any(|&c| c % (q * s) == 0),
        qualifying_pairs: (a_points.len() * b_points.len()) as u64,
        case2_pairs: 0,
        pass: true,
        witness: None,
    };
    if out.qs_cycle || out.qualifying_pairs == 0 {
        return Ok(out); // conclusion (1), or nothing to check
    }
    // powers pi^1..pi^ord (pi^ord = identity) and the tau powers; t beyond
    // lcm(ord, qs) repeats both pi^t and t's residue mod qs
    let ord = len_at.iter().fold(1u64, |acc, &c| lcm(acc, c));
    let mut pows = Vec::with_capacity(ord as usize);
    let mut tau_pows = Vec::with_capacity(ord as usize);
    let mut acc = pi.clone();
    let mut tau_acc = w.tau.clone();
    for _ in 0..ord {
        pows.push(acc.clone());
        tau_pows.push(tau_acc.clone());
        acc = acc.then(&pi);
        tau_acc = sp_then(&tau_acc, &w.tau);
    }
    let t_span = lcm(ord, q * s);
    for &a in &a_points {
        for &b in &b_points {
            let da = decode(a, m, r);
            let db = decode(b, m, r);
            let mut satisfied = false;
            't_loop: for t in 1..=t_span {
                if gcd(t, q * s) != 1 {
                    continue;
                }
                let k = ((t - 1) % ord) as usize; // pi^t = pows[k]
                let (pt, taut) = (&pows[k], &tau_pows[k]);
                let ia = decode(pt.apply(a), m, r);
                let ib = decode(pt.apply(b), m, r);
                for (i, &ti) in taut.iter().enumerate() {
                    if ti as usize != i {
                        continue;
                    }
                    if (0..r).all(|j| j == i || (ia[j] == da[j] && ib[j] == db[j])) {
                        satisfied = true;
                        break 't_loop;
                    }
                }
            }
            if satisfied {
                out.case2_pairs += 1;
            } else {
                out.pass = false;
                out.witness = Some(format!(
                    "element {w:?}: points {da:?} and {db:?} satisfy neither conclusion"
                ));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// The proposition over all of S_m wr S_r.
pub fn check_prop_wreaths(m: usize, r: usize, q: u64, s: u64) -> Result<PropWreathsOutcome> {
    if q == s || !crate::field::is_prime(q) || !crate::field::is_prime(s) {
        return Err(Error::InvalidParam(format!("q = {q}, s = {s} must be distinct primes")));
    }
    let group = all_perms(m);
    let elements = wreath_elements(&group, r);
    let mut out = PropWreathsOutcome {
        m,
        r,
        q,
        s,
        elements: elements.len() as u64,
        qs_cycle_elements: 0,
        pairs_checked: 0,
        pass: true,
        witness: None,
    };
    for w in &elements {
        let check = check_prop_wreaths_element(w, m, q, s)?;
        out.pairs_checked += check.qualifying_pairs;
        if check.qs_cycle && check.qualifying_pairs > 0 {
            out.qs_cycle_elements += 1;
        }
        if !check.pass {
            out.pass = false;
            out.witness = check.witness;
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingOutcome {
    /// The base group itself has an element with q- and s-divisible cycles
    /// but none divisible by qs; the corollary does not apply.
    HypothesisViolated { witness: String },
    Verified { elements: u64, applicable_elements: u64 },
    Violated { witness: String },
}

/// The embedding corollary for the closure of gens inside S_m: if the base
/// group never separates q- and s-divisible cycles, neither does any element
/// of its wreath product with S_r.
pub fn check_cor_embedding(
    m: usize,
    gens: &[SmallPerm],
    r: usize,
    q: u64,
    s: u64,
) -> Result<EmbeddingOutcome> {
    if q == s || !crate::field::is_prime(q) || !crate::field::is_prime(s) {
        return Err(Error::InvalidParam(format!("q = {q}, s = {s} must be distinct primes")));
    }
    let group = group_closure(m, gens);
    let has_div_cycles = |len_at: &[u64]| {
        (
            len_at.iter().any(|&c| c % q == 0),
            len_at.iter().any(|&c| c % s == 0),
            len_at.iter().any(|&c| c % (q * s) == 0),
        )
    };
    for g in &group {
        let perm = Permutation::new(g.iter().map(|&i| i as u32).collect())?;
        let (has_q, has_s, has_qs) = has_div_cycles(&cycle_len_at(&perm));
        if has_q && has_s && !has_qs {
            return Ok(EmbeddingOutcome::HypothesisViolated {
                witness: format!("base element {g:?} has q- and s-divisible cycles but no qs"),
            });
        }
    }
    let elements = wreath_elements(&group, r);
    let mut applicable = 0u64;
    for w in &elements {
        let (has_q, has_s, has_qs) = has_div_cycles(&cycle_len_at(&iota(w, m)?));
        if has_q && has_s {
            applicable += 1;
            if !has_qs {
                return Ok(EmbeddingOutcome::Violated {
                    witness: format!("{w:?} has q- and s-divisible cycles but no qs-divisible one"),
                });
            }
        }
    }
    Ok(EmbeddingOutcome::Verified {
        elements: elements.len() as u64,
        applicable_elements: applicable,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EliminatePowerOutcome {
    pub m: usize,
    pub r: usize,
    pub q: u64,
    pub a: u64,
    pub elements: u64,
    pub checked_points: u64,
    pub skipped_hypothesis: u64,
    pub pass: bool,
    pub witness: Option<String>,
}

/// The power-elimination corollary over S_m wr S_r: whenever some point sits
/// in a q-divisible cycle, b sits in a cycle of length exactly A, and no
/// prime s | A admits a qs-divisible cycle, then tau fixes some i and pi
/// moves b in at most that coordinate. Elements failing the hypothesis are
/// skipped and counted, per the statement.
pub fn check_cor_eliminatepower(m: usize, r: usize, q: u64, a: u64) -> Result<EliminatePowerOutcome> {
    if !crate::field::is_prime(q) {
        return Err(Error::InvalidParam(format!("q = {q} must be prime")));
    }
    if a < 2 {
        return Err(Error::InvalidParam("A must exceed 1".into()));
    }
    let prime_divisors: Vec<u64> = crate::field::factorize(a).into_iter().map(|(p, _)| p).collect();
    let group = all_perms(m);
    let elements = wreath_elements(&group, r);
    let mut out = EliminatePowerOutcome {
        m,
        r,
        q,
        a,
        elements: elements.len() as u64,
        checked_points: 0,
        skipped_hypothesis: 0,
        pass: true,
        witness: None,
    };
    'element: for w in &elements {
        let pi = iota(w, m)?;
        let len_at = cycle_len_at(&pi);
        if !len_at.iter().any(|&c| c % q == 0) {
            continue; // no qualifying a-point
        }
        if prime_divisors
            .iter()
            .any(|&s| len_at.iter().any(|&c| c % (q * s) == 0))
        {
            out.skipped_hypothesis += 1;
            continue;
        }
        for (b, &cycle_len) in len_at.iter().enumerate() {
            if cycle_len != a {
                continue;
            }
            out.checked_points += 1;
            let db = decode(b, m, r);
            let ib = decode(pi.apply(b), m, r);
            let ok = (0..r).any(|i| {
                w.tau[i] as usize == i && (0..r).all(|j| j == i || ib[j] == db[j])
            });
            if !ok {
                out.pass = false;
                out.witness = Some(format!("element {w:?}: point {db:?} breaks the conclusion"));
                break 'element;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WreathGridReport {
    pub prop: Vec<PropWreathsOutcome>,
    pub embedding: Vec<(usize, usize, u64, u64, EmbeddingOutcome)>,
    pub eliminate: Vec<EliminatePowerOutcome>,
    pub all_pass: bool,
}

/// Generators of S_m: a transposition and an m-cycle.
pub fn symmetric_gens(m: usize) -> Vec<SmallPerm> {
    match m {
        0 | 1 => vec![],
        2 => vec![vec![1, 0]],
        _ => {
            let mut cycle: SmallPerm = (1..m as u8).collect();
            cycle.push(0);
            let mut swap = sp_identity(m);
            swap.swap(0, 1);
            vec![swap, cycle]
        }
    }
}

/// The default instance grid: m <= 4, r <= 2, (q,s) in {(2,3),(2,5),(3,5)},
/// and power elimination at (q,A) in {(2,3),(3,2),(3,4)}.
pub fn default_grid_report() -> Result<WreathGridReport> {
    let qs_pairs = [(2u64, 3u64), (2, 5), (3, 5)];
    let qa_pairs = [(2u64, 3u64), (3, 2), (3, 4)];
    let mut report = WreathGridReport {
        prop: Vec::new(),
        embedding: Vec::new(),
        eliminate: Vec::new(),
        all_pass: true,
    };
    for m in 1..=4 {
        for r in 1..=2 {
            for (q, s) in qs_pairs {
                let p = check_prop_wreaths(m, r, q, s)?;
                report.all_pass &= p.pass;
                report.prop.push(p);

                let e = check_cor_embedding(m, &symmetric_gens(m), r, q, s)?;
                report.all_pass &= matches!(e, EmbeddingOutcome::Verified { .. });
                report.embedding.push((m, r, q, s, e));
            }
            for (q, a) in qa_pairs {
                let e = check_cor_eliminatepower(m, r, q, a)?;
                report.all_pass &= e.pass;
                report.eliminate.push(e);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> SmallPerm {
        vec![1, 2, 0]
    }

    #[test]
    fn act_examples() {
        let id = WreathElement::identity(3, 2);
        for p in 0..9 {
            let x = decode(p, 3, 2);
            assert_eq!(wreath_act(&id, &x).unwrap(), x);
        }

        let w = WreathElement { sigma: vec![c3(), sp_identity(3)], tau: sp_identity(2) };
        assert_eq!(wreath_act(&w, &[0, 1]).unwrap(), vec![1, 1]);

        let swap = WreathElement { sigma: vec![sp_identity(2); 2], tau: vec![1, 0] };
        assert_eq!(wreath_act(&swap, &[0, 1]).unwrap(), vec![1, 0]);

        assert!(matches!(
            wreath_act(&swap, &[0, 1, 0]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn compose_matches_sequential_action() {
        let elems = wreath_elements(&all_perms(3), 2);
        for (i, w1) in elems.iter().enumerate().step_by(37) {
            for (j, w2) in elems.iter().enumerate().step_by(41) {
                let w12 = wreath_compose(w1, w2);
                for p in 0..9 {
                    let x = decode(p, 3, 2);
                    let seq = wreath_act(w1, &wreath_act(w2, &x).unwrap()).unwrap();
                    assert_eq!(wreath_act(&w12, &x).unwrap(), seq, "w1={i} w2={j}");
                }
            }
        }
    }

    #[test]
    fn power_formula_matches_iteration() {
        let w = WreathElement { sigma: vec![c3(), vec![1, 0, 2]], tau: vec![1, 0] };
        let mut power = WreathElement::identity(3, 2);
        for i in 1..=20 {
            power = wreath_compose(&power, &w);
            let by_element = iota(&power, 3).unwrap();
            let mut by_iteration = Permutation::identity(9);
            let step = iota(&w, 3).unwrap();
            for _ in 0..i {
                by_iteration = by_iteration.then(&step);
            }
            assert_eq!(by_element, by_iteration, "power {i}");
        }
    }

    #[test]
    fn iota_cycle_example() {
        // (c3, transposition) with trivial tau: cycle lengths are lcms of the
        // component cycles, so a 6-cycle appears on the 9 points
        let w = WreathElement { sigma: vec![c3(), vec![1, 0, 2]], tau: sp_identity(2) };
        let ct = iota(&w, 3).unwrap().cycle_type();
        assert!(ct.contains(&6), "{ct:?}");
    }

    #[test]
    fn prop_wreaths_instances() {
        let r = check_prop_wreaths(3, 2, 2, 3).unwrap();
        assert!(r.pass, "{:?}", r.witness);
        assert!(r.pairs_checked > 0);
        assert!(r.qs_cycle_elements > 0);

        // no 3-divisible cycles in S_2 wr S_1: vacuous pass
        let v = check_prop_wreaths(2, 1, 3, 5).unwrap();
        assert!(v.pass);
        assert_eq!(v.pairs_checked, 0);
        assert_eq!(v.qs_cycle_elements, 0);

        assert!(check_prop_wreaths(3, 2, 2, 2).is_err());
        assert!(check_prop_wreaths(3, 2, 4, 3).is_err());
    }

    #[test]
    fn prop_wreaths_second_conclusion_fires() {
        // (01)(234) in one coordinate, identity in the other: 2- and
        // 3-divisible cycles with no 6-divisible one, so only the
        // coordinate-fixing conclusion can certify the pairs
        let sigma0: SmallPerm = vec![1, 0, 3, 4, 2];
        let w = WreathElement {
            sigma: vec![sigma0, sp_identity(5)],
            tau: sp_identity(2),
        };
        let c = check_prop_wreaths_element(&w, 5, 2, 3).unwrap();
        assert!(c.pass, "{:?}", c.witness);
        assert!(!c.qs_cycle);
        assert!(c.qualifying_pairs > 0);
        assert_eq!(c.case2_pairs, c.qualifying_pairs);
    }

    #[test]
    fn embedding_instances() {
        // S_4 with (2,3): a 2-cycle and a 3-cycle cannot coexist in 4 points,
        // so the hypothesis holds vacuously and the wreath scan runs clean
        let s4 = check_cor_embedding(4, &symmetric_gens(4), 2, 2, 3).unwrap();
        assert!(matches!(s4, EmbeddingOutcome::Verified { .. }), "{s4:?}");

        // S_5 separates them: (01)(234) has 2- and 3-cycles, no 6-cycle
        let s5 = check_cor_embedding(5, &symmetric_gens(5), 2, 2, 3).unwrap();
        assert!(matches!(s5, EmbeddingOutcome::HypothesisViolated { .. }), "{s5:?}");

        // no 5-cycles in S_3 at all
        let s3 = check_cor_embedding(3, &symmetric_gens(3), 2, 3, 5).unwrap();
        match s3 {
            EmbeddingOutcome::Verified { applicable_elements, .. } => {
                assert_eq!(applicable_elements, 0)
            }
            other => panic!("{other:?}"),
        }

        // the cyclic group generated by a 3-cycle
        let c3 = check_cor_embedding(3, &[c3()], 2, 2, 3).unwrap();
        match c3 {
            EmbeddingOutcome::Verified { elements, .. } => assert_eq!(elements, 18),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eliminatepower_instances() {
        // vacuous at this size: a 3-divisible cycle next to an exact 2-cycle
        // always produces a 6-divisible cycle on 16 points, failing the
        // hypothesis, so no point survives to the conclusion
        let r = check_cor_eliminatepower(4, 2, 3, 2).unwrap();
        assert!(r.pass, "{:?}", r.witness);
        assert_eq!(r.checked_points, 0);
        assert!(r.skipped_hypothesis > 0);

        assert!(matches!(
            check_cor_eliminatepower(4, 2, 3, 1),
            Err(Error::InvalidParam(_))
        ));
        assert!(check_cor_eliminatepower(4, 2, 4, 2).is_err());

        // S_5 wr S_2 separates the cycles: (01)(234) alongside an identity
        // coordinate reaches the conclusion with real work to do
        let s = check_cor_eliminatepower(5, 2, 2, 3).unwrap();
        assert!(s.pass, "{:?}", s.witness);
        assert!(s.checked_points > 0);
        assert!(s.skipped_hypothesis > 0);
    }

    #[test]
    fn full_grid_passes() {
        let g = default_grid_report().unwrap();
        assert!(g.all_pass);
        assert_eq!(g.prop.len(), 24);
        assert_eq!(g.embedding.len(), 24);
        assert_eq!(g.eliminate.len(), 24);
        // the (q,s) = (2,5) and (3,5) instances are vacuous at this scale:
        // no cycle length on <= 16 points is divisible by 5 here
        for p in &g.prop {
            if p.s == 5 {
                assert_eq!(p.pairs_checked, 0, "m={} r={}", p.m, p.r);
            }
        }
    }
}
