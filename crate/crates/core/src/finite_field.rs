//! Arithmetic in GF(p^k) for small prime powers, with exp/log tables.
//!
//! Elements are packed base-p digit vectors (coefficient of x^0 least
//! significant), so `0..q` enumerates the field. The modulus is the least
//! monic irreducible polynomial of the right degree under that packing,
//! and the designated generator is the least primitive element, making
//! every construction reproducible bit for bit.

use crate::error::Error;

/// Largest supported field size.
pub const MAX_FIELD: u64 = 1 << 20;

const LOG_ZERO: u64 = u64::MAX;

// ---------------------------------------------------------------------------
// polynomial helpers over GF(p), coefficients low-to-high
// ---------------------------------------------------------------------------

pub(crate) mod poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// (a * b) mod m over GF(p); m monic.
    pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut res = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                res[i + j] = (res[i + j] + x * y) % p;
            }
        }
        let dm = m.len() - 1;
        while res.len() > dm {
            let lead = *res.last().unwrap();
            if lead != 0 {
                let shift = res.len() - 1 - dm;
                for (i, &c) in m.iter().enumerate() {
                    let t = (lead * c) % p;
                    res[shift + i] = (res[shift + i] + p - t) % p;
                }
            }
            res.pop();
        }
        trim(res)
    }

    /// a^e mod m over GF(p).
    pub(crate) fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1];
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        result
    }

    /// Does the monic polynomial `d` divide `a` over GF(p)?
    pub(crate) fn divides(d: &[u64], a: &[u64], p: u64) -> bool {
        let mut a = trim(a.to_vec());
        let dd = d.len() - 1;
        while a.len() > dd {
            let lead = *a.last().unwrap();
            if lead != 0 {
                let shift = a.len() - 1 - dd;
                for (i, &c) in d.iter().enumerate() {
                    let t = (lead * c) % p;
                    a[shift + i] = (a[shift + i] + p - t) % p;
                }
            }
            a.pop();
            a = trim(a);
        }
        a.is_empty()
    }

    /// Irreducibility by trial division by every monic polynomial of
    /// degree at most k/2.
    pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        for deg in 1..=k / 2 {
            let count = p.pow(deg as u32);
            for v in 0..count {
                let mut d = super::unpack(v, p, deg);
                d.push(1);
                if divides(&d, f, p) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn unpack(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

pub(crate) fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power into (p, k); errors otherwise.
pub fn prime_power(q: u64) -> Result<(u64, u32), Error> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = fs[0];
    let mut k = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        k += 1;
    }
    Ok((p, k))
}

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

/// GF(p^k) with exp/log tables over a designated primitive element.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl Field {
    /// GF(p^k) over the least monic irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Self, Error> {
        let q = check_envelope(p, k)?;
        let modulus = (0..q)
            .map(|v| {
                let mut f = unpack(v, p, k as usize);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, k, modulus)
    }

    /// GF(p^k) over an explicit monic modulus (low-to-high coefficients).
    pub fn with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self, Error> {
        check_envelope(p, k)?;
        if modulus.len() != k as usize + 1 || modulus.last() != Some(&1) {
            return Err(Error::domain(format!("modulus must be monic of degree {k}")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::domain("modulus coefficients must be reduced mod p".to_string()));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::domain("modulus is reducible".to_string()));
        }
        Self::build(p, k, modulus)
    }

    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self, Error> {
        let q = p.pow(k);
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .find(|&v| {
                let a = unpack(v, p, k as usize);
                factors
                    .iter()
                    .all(|&r| pack(&poly::pow_mod(&a, (q - 1) / r, &modulus, p), p) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let g = unpack(generator, p, k as usize);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![LOG_ZERO; q as usize];
        let mut x = vec![1u64];
        for i in 0..q - 1 {
            let v = pack(&x, p);
            debug_assert_eq!(log[v as usize], LOG_ZERO, "generator order too small");
            exp.push(v);
            log[v as usize] = i;
            x = poly::mul_mod(&x, &g, &modulus, p);
        }
        debug_assert_eq!(pack(&x, p), 1);
        Ok(Field { p, k, q, modulus, generator, exp, log })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The designated primitive element (packed).
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn coeffs(&self, x: u64) -> Vec<u64> {
        unpack(x, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        pack(&coeffs.iter().map(|&c| c % self.p).collect::<Vec<_>>(), self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let pa = self.coeffs(a);
        let pb = self.coeffs(b);
        let sum: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % self.p).collect();
        pack(&sum, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let pa = self.coeffs(a);
        pack(&pa.iter().map(|&x| (self.p - x) % self.p).collect::<Vec<_>>(), self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp(self.log[a as usize] + self.log[b as usize])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp((self.log[a as usize] as u128 * e as u128 % (self.q as u128 - 1)) as u64)
    }

    /// g^e for the designated generator.
    pub fn exp(&self, e: u64) -> u64 {
        self.exp[(e % (self.q - 1)) as usize]
    }

    /// The exponent of `x` over the designated generator, in [0, q-2].
    pub fn dlog(&self, x: u64) -> Result<u64, Error> {
        if x == 0 || x >= self.q {
            return Err(Error::ZeroDlog);
        }
        Ok(self.log[x as usize])
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GF({}^{}), modulus={:?}, g={:?}",
            self.p,
            self.k,
            self.modulus,
            self.coeffs(self.generator)
        )
    }
}

fn check_envelope(p: u64, k: u32) -> Result<u64, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::envelope("degree must be positive".to_string()));
    }
    match p.checked_pow(k) {
        Some(q) if q <= MAX_FIELD => Ok(q),
        _ => Err(Error::envelope(format!("{p}^{k} exceeds {MAX_FIELD}"))),
    }
}

/// Least primitive polynomial of degree k over GF(2): the least monic
/// irreducible whose root generates the whole multiplicative group.
pub fn least_primitive_poly_gf2(k: u32) -> Result<Vec<u64>, Error> {
    if k == 0 || k > 20 {
        return Err(Error::envelope(format!("degree {k} not in 1..=20")));
    }
    let n = (1u64 << k) - 1;
    let factors = prime_factors(n);
    for v in 0..1u64 << k {
        let mut f = unpack(v, 2, k as usize);
        f.push(1);
        if !poly::is_irreducible(&f, 2) {
            continue;
        }
        let x = poly::mul_mod(&[0, 1], &[1], &f, 2);
        if pack(&x, 2) == 0 {
            continue; // k = 1 modulus "x": its root is zero
        }
        if factors.iter().all(|&r| pack(&poly::pow_mod(&x, n / r, &f, 2), 2) != 1) {
            return Ok(f);
        }
    }
    unreachable!("primitive polynomials exist for every degree")
}
