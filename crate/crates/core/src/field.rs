//! Finite fields GF(p^f) with table-driven arithmetic.
//!
//! An element is encoded as `sum c_i p^i` for its coefficient vector
//! `(c_0, .., c_{f-1})` in the polynomial basis modulo the chosen modulus.
//! For `f = 1` the code is the residue itself.

use crate::error::{Error, Result};

/// Largest field order supported by the lookup tables.
pub const FIELD_CAP: u32 = 1 << 10;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus of degree `f`, low coefficient first, leading 1 included.
    modulus: Vec<u32>,
    zeta: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
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

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut f) = (q, 0);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

fn digits(code: u32, p: u32, f: u32) -> Vec<u32> {
    let mut c = code;
    (0..f)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&b| (a as u64 * b as u64) % p as u64 == 1)
        .expect("nonzero residue")
}

/// Remainder of `a` modulo the nonzero polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    if db == 0 {
        return vec![0];
    }
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for i in 0..=db {
            let sub = (c * b[i] as u64 % p as u64) as u32;
            r[dr - db + i] = (r[dr - db + i] + p - sub) % p;
        }
        // the leading coefficient is now zero
        r.pop();
    }
    trim(r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as u64 * y as u64;
        }
    }
    trim(out.into_iter().map(|v| (v % p as u64) as u32).collect())
}

/// Irreducibility of a polynomial of degree >= 1 by trial division.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // monic divisors of degree d
        for low in 0..p.pow(d as u32) {
            let mut div = digits(low, p, d as u32);
            div.push(1);
            let r = poly_rem(&poly, &div, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// GF(p^f) with the given modulus, or the least irreducible one when
    /// `modulus` is `None`. Moduli are compared by their coefficient vectors
    /// read from the highest non-leading coefficient down.
    pub fn new(p: u32, f: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if f == 0 {
            return Err(Error::BadParameters(
                "field degree must be at least 1".into(),
            ));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or(Error::CapExceeded {
                what: "field order".into(),
                cap: FIELD_CAP as usize,
            })?;
        let modulus = match modulus {
            Some(m) => {
                let m = trim(m.iter().map(|&c| c % p).collect());
                if m.len() != f as usize + 1 {
                    return Err(Error::BadParameters(format!(
                        "modulus must have degree {f}"
                    )));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::Reducible);
                }
                let lead = inv_mod(m[f as usize], p);
                m.iter()
                    .map(|&c| (c as u64 * lead as u64 % p as u64) as u32)
                    .collect()
            }
            None => (0..p.pow(f))
                .map(|low| {
                    let mut m = digits(low, p, f);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree"),
        };
        let mulraw = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&digits(a, p, f), &digits(b, p, f), p);
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(f as usize, 0);
            undigits(&r, p)
        };
        let order_of = |x: u32| -> u32 {
            let mut y = x;
            let mut k = 1;
            while y != 1 {
                y = mulraw(y, x);
                k += 1;
            }
            k
        };
        let zeta = (1..q)
            .find(|&x| order_of(x) == q - 1)
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut y = 1;
        for i in 0..q - 1 {
            exp.push(y);
            log[y as usize] = i;
            y = mulraw(y, zeta);
        }
        let mut add = vec![0u32; (q * q) as usize];
        let mut neg = vec![0u32; q as usize];
        for a in 0..q {
            let da = digits(a, p, f);
            let na: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = undigits(&na, p);
            for b in 0..q {
                let db = digits(b, p, f);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
            }
        }
        Ok(FiniteField {
            p,
            f,
            q,
            modulus,
            zeta,
            exp,
            log,
            add,
            neg,
        })
    }

    /// GF(q) with the canonical modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, f) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        Self::new(p as u32, f, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least element of multiplicative order `q - 1`.
    pub fn zeta(&self) -> u32 {
        self.zeta
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[s as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.exp[((self.q - 1 - self.log[a as usize]) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let s = (self.log[a as usize] as u64 * e) % (self.q as u64 - 1);
        self.exp[s as usize]
    }

    /// `zeta^i` for any integer `i`.
    pub fn zeta_pow(&self, i: i64) -> u32 {
        self.exp[i.rem_euclid(self.q as i64 - 1) as usize]
    }

    /// Discrete logarithm base `zeta`; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `v -> v^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u32) -> bool {
        a != 0 && (self.p == 2 || self.log[a as usize] % 2 == 0)
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u32> {
        let l = self.log(a)?;
        Some((self.q - 1) / crate::perm::gcd(l as u64, self.q as u64 - 1) as u32)
    }

    /// The embedded image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Whether GF(q0) embeds in this field.
    pub fn has_subfield(&self, q0: u32) -> bool {
        match prime_power(q0 as u64) {
            Some((p0, f0)) => p0 == self.p as u64 && self.f % f0 == 0,
            None => false,
        }
    }

    /// Generator of the multiplicative group of the subfield of order `q0`.
    pub fn subfield_zeta(&self, q0: u32) -> Result<u32> {
        if !self.has_subfield(q0) {
            return Err(Error::BadParameters(format!(
                "GF({q0}) is not a subfield of GF({})",
                self.q
            )));
        }
        Ok(self.zeta_pow(((self.q - 1) / (q0 - 1)) as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f7 = FiniteField::new(7, 1, None).unwrap();
        assert_eq!(f7.zeta(), 3);
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3), Some(5));
        assert_eq!(
            FiniteField::new(6, 1, None).unwrap_err(),
            Error::NotPrime(6)
        );
    }

    #[test]
    fn small_extension_fields() {
        let f9 = FiniteField::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(
            FiniteField::new(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            Error::Reducible
        );
        let f4 = FiniteField::of_order(4).unwrap();
        assert_eq!(f4.pow(f4.zeta(), 3), 1);
        assert_eq!(f4.multiplicative_order(f4.zeta()), Some(3));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [4u32, 8, 9, 25, 27] {
            let k = FiniteField::of_order(q).unwrap();
            for a in k.elements() {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                for b in k.elements() {
                    for c in [0, 1, k.zeta(), q - 1] {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
                // Frobenius is additive
                assert_eq!(k.frobenius(k.add(a, 1)), k.add(k.frobenius(a), 1));
            }
        }
    }

    #[test]
    fn subfields() {
        let k = FiniteField::of_order(25).unwrap();
        let z0 = k.subfield_zeta(5).unwrap();
        assert_eq!(k.multiplicative_order(z0), Some(4));
        assert_eq!(k.pow(z0, 5), z0);
        assert!(FiniteField::of_order(27).unwrap().subfield_zeta(9).is_err());
    }
}
