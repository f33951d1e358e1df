//! Exact arithmetic in GF(p^m).
//!
//! Elements are canonically encoded as integers in `[0, q)`: the residue for
//! prime fields, the base-p digit vector of the polynomial representative for
//! extension fields. Multiplication goes through exp/log tables built from a
//! generator found at construction time; addition is digitwise mod p.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// A field element, stored by its canonical integer encoding in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(pub u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Specification of GF(p^m): the characteristic, extension degree, and the
/// modulus polynomial (coefficients ascending by degree, length m+1, monic;
/// empty for m = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `modulus` is ascending by degree; `None` picks the lexicographically
    /// smallest monic irreducible of degree m.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree m must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(m).ok_or(Error::FieldTooLarge(u128::MAX))?;
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = if m == 1 {
            match modulus {
                None => Vec::new(),
                Some(v) if v.is_empty() => Vec::new(),
                Some(_) => {
                    return Err(Error::BadModulus("prime field takes no modulus".into()));
                }
            }
        } else {
            let v = match modulus {
                Some(v) => {
                    let v: Vec<u64> = v.iter().map(|&c| c % p).collect();
                    if v.len() != m as usize + 1 || *v.last().unwrap() != 1 {
                        return Err(Error::BadModulus(format!(
                            "need a monic polynomial of degree {m}"
                        )));
                    }
                    v
                }
                None => default_modulus(p, m)?,
            };
            if !is_irreducible(&v, p) {
                return Err(Error::BadModulus(format!(
                    "polynomial is reducible over GF({p})"
                )));
            }
            v
        };
        Ok(FieldSpec { p, m, modulus })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Accepts `p`, `p^m`, or `p^m:c_m,...,c_0` (coefficients most significant
    /// first).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("field spec {s:?}: {msg}"));
        let (base, coeffs) = match s.split_once(':') {
            Some((b, c)) => (b, Some(c)),
            None => (s, None),
        };
        let (p_str, m_str) = match base.split_once('^') {
            Some((p, m)) => (p, Some(m)),
            None => (base, None),
        };
        let p: u64 = p_str.trim().parse().map_err(|_| bad("bad characteristic"))?;
        let m: u32 = match m_str {
            Some(m) => m.trim().parse().map_err(|_| bad("bad extension degree"))?,
            None => 1,
        };
        let modulus = match coeffs {
            None => None,
            Some(c) => {
                let mut v: Vec<u64> = c
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad("bad modulus coefficient")))
                    .collect::<Result<_>>()?;
                v.reverse(); // external format is most significant first
                Some(v)
            }
        };
        Self::new(p, m, modulus)
    }

    /// Renders back to the CLI form.
    pub fn display_string(&self) -> String {
        if self.m == 1 {
            format!("{}", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
            format!("{}^{}:{}", self.p, self.m, coeffs.join(","))
        }
    }
}

/// A concrete field: the spec plus exp/log tables for multiplicative
/// arithmetic. Immutable after construction.
pub struct FieldCtx {
    spec: FieldSpec,
    q: usize,
    p: u64,
    m: u32,
    exp: Vec<u16>, // exp[i] = g^i, i in [0, q-1)
    log: Vec<u16>, // log[e] for e != 0
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(GF({}))", self.spec.display_string())
    }
}

pub type Field = Arc<FieldCtx>;

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let q = spec.q() as usize;
        let p = spec.p;
        let m = spec.m;
        let mut ctx = FieldCtx {
            spec,
            q,
            p,
            m,
            exp: Vec::new(),
            log: vec![0; q],
        };
        ctx.build_tables();
        Ok(Arc::new(ctx))
    }

    pub fn parse(s: &str) -> Result<Field> {
        FieldCtx::new(FieldSpec::parse(s)?)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1];
            self.log[1] = 0;
            return;
        }
        // Find a multiplicative generator by walking its cycle.
        let mut powers = vec![0u16; q - 1];
        'cand: for cand in 2..q as u64 {
            let mut x = Felt(1);
            for (i, slot) in powers.iter_mut().enumerate() {
                *slot = x.0;
                x = self.mul_raw(x, Felt(cand as u16));
                if x.0 == 1 && i + 1 < q - 1 {
                    continue 'cand; // order divides i+1 < q-1
                }
            }
            debug_assert_eq!(x.0, 1);
            self.exp = powers;
            for (i, &e) in self.exp.iter().enumerate() {
                self.log[e as usize] = i as u16;
            }
            return;
        }
        unreachable!("every finite field has a generator");
    }

    /// Slow multiplication by polynomial reduction; used only to build tables.
    fn mul_raw(&self, a: Felt, b: Felt) -> Felt {
        let p = self.p;
        if self.m == 1 {
            return Felt(((a.0 as u64 * b.0 as u64) % p) as u16);
        }
        let md = self.m as usize;
        let da = to_digits(a.0 as u64, p, md);
        let db = to_digits(b.0 as u64, p, md);
        let mut prod = vec![0u64; 2 * md - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (md..2 * md - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..md {
                let sub = (c * self.spec.modulus[j]) % p;
                prod[i - md + j] = (prod[i - md + j] + p - sub) % p;
            }
        }
        Felt(from_digits(&prod[..md], p) as u16)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn felt(&self, encoding: u64) -> Result<Felt> {
        if (encoding as usize) < self.q {
            Ok(Felt(encoding as u16))
        } else {
            Err(Error::InvalidParameter(format!(
                "element encoding {encoding} out of range for q = {}",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q as u16).map(Felt)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (1..self.q as u16).map(Felt)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.m == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = self.p;
            Felt(if s >= p { (s - p) as u16 } else { s as u16 })
        } else if self.p == 2 {
            Felt(a.0 ^ b.0)
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, a: Felt, b: Felt) -> Felt {
        let p = self.p;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let s = (x % p + y % p) % p;
            out += s * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Felt(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return if a.0 == 0 { a } else { Felt((self.p - a.0 as u64) as u16) };
        }
        let p = self.p;
        let mut x = a.0 as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            let d = x % p;
            out += if d == 0 { 0 } else { (p - d) * place };
            place *= p;
            x /= p;
        }
        Felt(out as u16)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        let n = self.q - 1;
        let i = self.log[a.index()] as usize + self.log[b.index()] as usize;
        self_exp(&self.exp, if i >= n { i - n } else { i })
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.index()] as usize;
        Ok(self_exp(&self.exp, (n - l) % n))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for non-negative integer e, with 0^0 = 1.
    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.is_zero() {
            return Felt::ZERO;
        }
        let n = (self.q - 1) as u64;
        let i = (self.log[a.index()] as u64 * (e % n)) % n;
        self_exp(&self.exp, i as usize)
    }

    /// Sum of beta^l over every element of the field: -1 when (q-1) | l,
    /// 0 otherwise.
    pub fn power_sum_all(&self, l: u64) -> Result<Felt> {
        if l == 0 {
            return Err(Error::InvalidParameter("power sum requires l >= 1".into()));
        }
        if l % (self.q as u64 - 1) == 0 {
            Ok(self.neg(Felt::ONE))
        } else {
            Ok(Felt::ZERO)
        }
    }
}

#[inline]
fn self_exp(exp: &[u16], i: usize) -> Felt {
    Felt(exp[i])
}

pub fn to_digits(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = vec![0u64; len];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

pub fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of polynomial division over GF(p); coefficients ascending.
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let dd = den.len() - 1;
    let lead_inv = mod_inv(den[dd], p);
    let mut r = num.to_vec();
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let f = (c * lead_inv) % p;
        let off = i - dd;
        for (j, &dc) in den.iter().enumerate() {
            let sub = (f * dc) % p;
            r[off + j] = (r[off + j] + p - sub) % p;
        }
    }
    r.truncate(dd);
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Exhaustive divisor search; feasible for desk-scale degrees.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32) as u64;
        for c in 0..count {
            let mut den = to_digits(c, p, d);
            den.push(1); // monic divisor candidate of degree d
            let r = poly_rem(poly, &den, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over GF(p),
/// ordering by the integer encoding of the low coefficients.
fn default_modulus(p: u64, m: u32) -> Result<Vec<u64>> {
    let count = (p as u128).pow(m) as u64;
    for c in 0..count {
        let mut cand = to_digits(c, p, m as usize);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return Ok(cand);
        }
    }
    Err(Error::BadModulus(format!(
        "no irreducible of degree {m} over GF({p})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> Field {
        FieldCtx::parse(s).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f = gf("5");
        assert_eq!(f.q(), 5);
        assert_eq!(f.inv(Felt(2)).unwrap(), Felt(3));
        assert_eq!(f.add(Felt(3), Felt(4)), Felt(2));
        assert_eq!(f.neg(Felt(1)), Felt(4));
    }

    #[test]
    fn gf4_multiplication() {
        // x^2 + x + 1; x = 2, x+1 = 3, x * (x+1) = x^2 + x = 1.
        let f = FieldCtx::new(FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap()).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.mul(Felt(2), Felt(3)), Felt(1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2).
        assert!(FieldSpec::new(2, 2, Some(vec![1, 0, 1])).is_err());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(FieldSpec::prime(6), Err(Error::NonPrime(6))));
    }

    #[test]
    fn fermat_pow() {
        let f = gf("7");
        assert_eq!(f.pow(Felt(3), 6), Felt(1));
        for a in f.nonzero_elements() {
            assert_eq!(f.pow(a, 6), Felt(1));
        }
    }

    #[test]
    fn frobenius_all_small_fields() {
        for spec in ["2", "3", "5", "7", "13", "2^2", "2^4", "3^2", "2^8", "3^4", "5^2"] {
            let f = gf(spec);
            let q = f.q() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a, "x^q = x fails in GF({spec}) at {a}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for spec in ["5", "7", "2^2", "2^3", "3^2", "2^4"] {
            let f = gf(spec);
            let els: Vec<Felt> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
                    if !a.is_zero() {
                        assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                    }
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn power_sum_closed_form_matches_direct() {
        for spec in ["5", "7", "11", "2^2", "2^3", "3^2", "2^4"] {
            let f = gf(spec);
            let q = f.q() as u64;
            for l in 1..=2 * (q - 1) {
                let direct = f
                    .elements()
                    .fold(Felt::ZERO, |acc, b| f.add(acc, f.pow(b, l)));
                assert_eq!(f.power_sum_all(l).unwrap(), direct, "l={l} in GF({spec})");
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        let f5 = gf("5");
        assert_eq!(f5.power_sum_all(4).unwrap(), Felt(4));
        assert_eq!(f5.power_sum_all(3).unwrap(), Felt(0));
        let f7 = gf("7");
        assert_eq!(f7.power_sum_all(12).unwrap(), Felt(6));
        assert!(f5.power_sum_all(0).is_err());
    }

    #[test]
    fn spec_string_round_trip() {
        for s in ["5", "2^4", "3^2"] {
            let spec = FieldSpec::parse(s).unwrap();
            let back = FieldSpec::parse(&spec.display_string()).unwrap();
            assert_eq!(spec, back);
        }
        let explicit = FieldSpec::parse("2^2:1,1,1").unwrap();
        assert_eq!(explicit.modulus, vec![1, 1, 1]);
        assert!(FieldSpec::parse("2^2:1,0,1").is_err());
    }

    #[test]
    fn max_size_enforced() {
        assert!(FieldSpec::new(2, 17, None).is_err());
        assert!(FieldSpec::new(2, 16, None).is_ok());
    }
}
