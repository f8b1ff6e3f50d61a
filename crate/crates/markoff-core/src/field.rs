//! Arithmetic in F_ell and its quadratic extension.

use crate::error::{Error, Result};

/// An element of F_ell, always reduced into [0, ell).
pub type Residue = u64;

/// A verified prime modulus. ell = 2 is accepted for plain arithmetic but the
/// surface pipeline refuses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeModulus {
    ell: u64,
}

impl PrimeModulus {
    pub fn new(ell: u64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        Ok(PrimeModulus { ell })
    }

    #[inline]
    pub fn ell(self) -> u64 {
        self.ell
    }

    #[inline]
    pub fn reduce(self, v: u64) -> Residue {
        v % self.ell
    }

    /// Reduce a possibly negative integer.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> Residue {
        let l = self.ell as i64;
        (v.rem_euclid(l)) as u64
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.ell { s - self.ell } else { s }
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        if a >= b { a - b } else { a + self.ell - b }
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 { 0 } else { self.ell - a }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u128 * b as u128) % self.ell as u128) as u64
    }

    pub fn pow(self, mut base: Residue, mut exp: u64) -> Residue {
        base %= self.ell;
        let mut acc: Residue = 1 % self.ell;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; a must be nonzero mod ell.
    pub fn inv(self, a: Residue) -> Residue {
        let a = a % self.ell;
        assert!(a != 0, "inverse of zero mod {}", self.ell);
        self.pow(a, self.ell - 2)
    }

    /// Euler-criterion quadratic character: +1 residue, -1 non-residue, 0 for zero.
    pub fn legendre(self, a: Residue) -> i32 {
        let a = a % self.ell;
        if a == 0 {
            return 0;
        }
        if self.ell == 2 {
            return 1;
        }
        let e = self.pow(a, (self.ell - 1) / 2);
        if e == 1 { 1 } else { -1 }
    }

    /// Smallest quadratic non-residue. Requires ell odd.
    pub fn smallest_nonresidue(self) -> Residue {
        debug_assert!(self.ell > 2);
        (2..self.ell)
            .find(|&z| self.legendre(z) == -1)
            .expect("odd prime fields have non-residues")
    }

    /// Canonical square root in [0, ell/2], when one exists (Tonelli-Shanks).
    pub fn sqrt(self, a: Residue) -> Option<Residue> {
        let l = self.ell;
        let a = a % l;
        if l == 2 {
            return Some(a);
        }
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let r = if l % 4 == 3 {
            self.pow(a, (l + 1) / 4)
        } else {
            let mut q = l - 1;
            let mut s = 0u32;
            while q.is_multiple_of(2) {
                q /= 2;
                s += 1;
            }
            let z = self.smallest_nonresidue();
            let mut m = s;
            let mut c = self.pow(z, q);
            let mut t = self.pow(a, q);
            let mut r = self.pow(a, q.div_ceil(2));
            while t != 1 {
                let mut i = 0u32;
                let mut t2 = t;
                while t2 != 1 {
                    t2 = self.mul(t2, t2);
                    i += 1;
                }
                let b = self.pow(c, 1u64 << (m - i - 1));
                m = i;
                c = self.mul(b, b);
                t = self.mul(t, c);
                r = self.mul(r, b);
            }
            r
        };
        debug_assert_eq!(self.mul(r, r), a);
        Some(r.min(l - r))
    }

    /// Order of a nonzero element of F_ell^*.
    pub fn multiplicative_order(self, a: Residue) -> Result<u64> {
        let a = a % self.ell;
        if a == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut order = self.ell - 1;
        for (p, _) in factorize(self.ell - 1) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == 1 {
                order /= p;
            }
        }
        Ok(order)
    }
}

/// Deterministic Miller-Rabin, sound for all u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division; fine for the 64-bit desk scale here.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    for p in [2u64, 3] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        push(p, e);
    }
    let mut p = 5u64;
    while p * p <= n {
        for q in [p, p + 2] {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            push(q, e);
        }
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes in the inclusive range [lo, hi].
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// a + b*omega with omega^2 = d, d a fixed non-residue mod ell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtElement {
    pub a: Residue,
    pub b: Residue,
    pub d: Residue,
}

impl QuadExtElement {
    pub fn one(d: Residue) -> Self {
        QuadExtElement { a: 1, b: 0, d }
    }

    pub fn is_one(self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn mul(self, o: Self, m: PrimeModulus) -> Self {
        debug_assert_eq!(self.d, o.d);
        QuadExtElement {
            a: m.add(m.mul(self.a, o.a), m.mul(m.mul(self.b, o.b), self.d)),
            b: m.add(m.mul(self.a, o.b), m.mul(self.b, o.a)),
            d: self.d,
        }
    }

    pub fn pow(self, mut exp: u64, m: PrimeModulus) -> Self {
        let mut base = self;
        let mut acc = QuadExtElement::one(self.d);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base, m);
            }
            base = base.mul(base, m);
            exp >>= 1;
        }
        acc
    }

    /// Norm down to F_ell: a^2 - d*b^2.
    pub fn norm(self, m: PrimeModulus) -> Residue {
        m.sub(m.mul(self.a, self.a), m.mul(self.d, m.mul(self.b, self.b)))
    }
}

/// Exact multiplicative order in F_{ell^2}^*, by factoring ell^2 - 1 and
/// descending through prime divisors.
pub fn quad_ext_order(x: &QuadExtElement, m: PrimeModulus) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroOrder);
    }
    let l = m.ell();
    let group = l * l - 1;
    debug_assert!(x.pow(group, m).is_one());
    let mut order = group;
    for (p, _) in factorize(group) {
        while order.is_multiple_of(p) && x.pow(order / p, m).is_one() {
            order /= p;
        }
    }
    Ok(order)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PropertyP {
    Holds,
    Fails { order: u64, bound: f64 },
}

impl PropertyP {
    pub fn holds(self) -> bool {
        matches!(self, PropertyP::Holds)
    }
}

impl std::fmt::Display for PropertyP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PropertyP::Holds => write!(f, "holds"),
            PropertyP::Fails { order, .. } => write!(f, "fails({order})"),
        }
    }
}

/// Property P: ell = 1 mod 4, or the order of (3+sqrt(5))/2 in F_{ell^2}^* is
/// at least 32*sqrt(ell+1). The comparison is exact: order^2 >= 1024*(ell+1).
pub fn property_p(m: PrimeModulus) -> Result<PropertyP> {
    let l = m.ell();
    if l < 5 {
        return Err(Error::ModulusTooSmall { ell: l, min: 5 });
    }
    if l % 4 == 1 {
        return Ok(PropertyP::Holds);
    }
    let inv2 = m.inv(2);
    let order = if m.legendre(5 % l) == 1 {
        // 5 is a square, so (3+sqrt(5))/2 already lives in F_ell.
        let s5 = m.sqrt(5 % l).expect("legendre said square");
        m.multiplicative_order(m.mul(m.add(3 % l, s5), inv2))?
    } else {
        let d = m.smallest_nonresidue();
        // sqrt(5) = c*omega with c^2 = 5/d (a residue: both 5 and d are non-residues).
        let c = m.sqrt(m.mul(5 % l, m.inv(d))).expect("ratio of non-residues");
        let x = QuadExtElement {
            a: m.mul(3 % l, inv2),
            b: m.mul(c, inv2),
            d,
        };
        debug_assert_eq!(x.norm(m), 1);
        quad_ext_order(&x, m)?
    };
    if (order as u128) * (order as u128) >= 1024u128 * (l as u128 + 1) {
        Ok(PropertyP::Holds)
    } else {
        Ok(PropertyP::Fails {
            order,
            bound: 32.0 * ((l + 1) as f64).sqrt(),
        })
    }
}
