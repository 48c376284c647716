//! Finite fields GF(p^k) in a polynomial basis.
//!
//! A [`FieldCtx`] owns the presentation (prime, degree, monic irreducible
//! modulus) and all arithmetic. Elements are [`Fq`] handles that pack the
//! coefficient vector `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` into the integer
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. The packed integer order is the
//! fixed total order on elements used wherever a deterministic choice among
//! elements is needed (least root, modulus search, root listings).

mod factor;
mod poly;

pub use factor::{factor_poly, factor_poly_seeded, splitting_field_roots};
pub use poly::FqPoly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size admitted for element enumeration paths.
pub const ENUMERATION_CAP: u64 = 1 << 20;
/// Largest field size admitted at all (packed elements must fit in a u64).
pub const ARITHMETIC_CAP: u64 = 1 << 62;
const MAX_DEGREE: usize = 64;

/// Shared handle to a field presentation.
pub type Field = Arc<FieldCtx>;

/// An element of some [`FieldCtx`]; meaningless without its context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) u64);

impl Fq {
    /// The packed integer encoding `sum c_i p^i`.
    pub fn packed(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(p^k) presented as GF(p)[x]/(modulus).
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    size: u64,
    pow_p: Vec<u64>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.k, self.modulus)
    }
}

/// Serialized field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub prime: u64,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_size(p: u64, k: usize, cap: u64) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..k {
        size = size
            .checked_mul(p)
            .filter(|&s| s <= cap)
            .ok_or(Error::CapExceeded { p, k })?;
    }
    Ok(size)
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// GF(p^k) with the deterministic modulus: the least monic irreducible of
/// degree k in packed order of its low coefficients `[c_0, ..., c_{k-1}]`.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    make_field_capped(p, k, ARITHMETIC_CAP)
}

/// As [`make_field`], rejecting fields with more than `cap` elements.
pub fn make_field_capped(p: u64, k: usize, cap: u64) -> Result<Field> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::CapExceeded { p, k });
    }
    checked_size(p, k, cap.min(ARITHMETIC_CAP))?;
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        least_irreducible(p, k)
    };
    let field = Arc::new(FieldCtx::build(p, k, modulus));
    field_cache().lock().unwrap().insert((p, k), field.clone());
    Ok(field)
}

/// A field with an explicit modulus, which must be monic irreducible.
pub fn field_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::NotPrime(p));
    }
    if modulus.len() < 2 {
        return Err(Error::BadModulus(0));
    }
    let k = modulus.len() - 1;
    if k > MAX_DEGREE {
        return Err(Error::CapExceeded { p, k });
    }
    checked_size(p, k, ARITHMETIC_CAP)?;
    if modulus.iter().any(|&c| c >= p) || modulus[k] != 1 {
        return Err(Error::BadModulus(k));
    }
    if k > 1 && !is_irreducible_over_prime(p, &modulus) {
        return Err(Error::BadModulus(k));
    }
    Ok(Arc::new(FieldCtx::build(p, k, modulus)))
}

/// Resolves a serialized descriptor; a missing modulus means the default one.
pub fn field_from_descriptor(desc: &FieldDescriptor) -> Result<Field> {
    match &desc.modulus {
        None => make_field(desc.prime, desc.degree),
        Some(m) => {
            if m.len() != desc.degree + 1 {
                return Err(Error::BadModulus(desc.degree));
            }
            let default = make_field(desc.prime, desc.degree)?;
            if default.modulus == *m {
                Ok(default)
            } else {
                field_with_modulus(desc.prime, m.clone())
            }
        }
    }
}

fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(k + 1);
        let mut c = code;
        for _ in 0..k {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if is_irreducible_over_prime(p, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin-style test: gcd(f, x^(p^i) - x) = 1 for all i <= deg/2.
fn is_irreducible_over_prime(p: u64, coeffs: &[u64]) -> bool {
    let base = make_field(p, 1).expect("prime checked by caller");
    let f = FqPoly::new(
        base.clone(),
        coeffs.iter().map(|&c| base.from_u64(c)).collect(),
    );
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return deg == 1;
    }
    let x = FqPoly::x(base.clone());
    let mut xp = x.clone();
    for _ in 0..deg / 2 {
        xp = xp.pow_mod(p as u128, &f);
        let g = f.gcd(&xp.sub(&x));
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

impl FieldCtx {
    fn build(p: u64, k: usize, modulus: Vec<u64>) -> Self {
        let mut pow_p = Vec::with_capacity(k);
        let mut acc = 1u64;
        for _ in 0..k {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let size = checked_size(p, k, ARITHMETIC_CAP).expect("size checked");
        FieldCtx {
            p,
            k,
            modulus,
            size,
            pow_p,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Monic modulus, `k + 1` coefficients low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            prime: self.p,
            degree: self.k,
            modulus: Some(self.modulus.clone()),
        }
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    pub fn from_u64(&self, v: u64) -> Fq {
        Fq(v % self.p)
    }

    pub fn from_i64(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given coefficient vector (length at most k).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq> {
        if coeffs.len() > self.k {
            return Err(Error::Invalid(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        Ok(Fq(coeffs
            .iter()
            .zip(&self.pow_p)
            .map(|(&c, &w)| (c % self.p) * w)
            .sum()))
    }

    /// Element from its packed encoding, if in range.
    pub fn from_packed(&self, v: u64) -> Option<Fq> {
        (v < self.size).then_some(Fq(v))
    }

    /// Coefficient vector of length k.
    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let mut out = vec![0; self.k];
        self.decode(a, &mut out);
        out
    }

    /// The class of x in GF(p)[x]/(modulus).
    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            // x = -c_0 modulo a degree-one modulus
            self.neg(Fq(self.modulus[0]))
        } else {
            Fq(self.p)
        }
    }

    /// Is `a` in the prime subfield?
    pub fn is_prime_subfield(&self, a: Fq) -> bool {
        a.0 < self.p
    }

    fn decode(&self, a: Fq, out: &mut [u64]) {
        let mut v = a.0;
        for c in out.iter_mut().take(self.k) {
            *c = v % self.p;
            v /= self.p;
        }
    }

    fn encode(&self, coeffs: &[u64]) -> Fq {
        let mut v = 0u64;
        for &c in coeffs[..self.k].iter().rev() {
            v = v * self.p + c;
        }
        Fq(v)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        for i in 0..self.k {
            x[i] += y[i];
            if x[i] >= self.p {
                x[i] -= self.p;
            }
        }
        self.encode(&x)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.k == 1 {
            return Fq(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = [0u64; MAX_DEGREE];
        self.decode(a, &mut x);
        for c in x.iter_mut().take(self.k) {
            if *c != 0 {
                *c = self.p - *c;
            }
        }
        self.encode(&x)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq(a.0 * b.0 % self.p);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let k = self.k;
        let p = self.p;
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            let c = p - c;
            for j in 0..k {
                prod[i - k + j] = (prod[i - k + j] + c * self.modulus[j]) % p;
            }
            prod[i] = 0;
        }
        self.encode(&prod)
    }

    pub fn pow(&self, a: Fq, mut e: u128) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        if self.k == 1 {
            // extended Euclid on residues
            let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (t0, t1) = (t1, t0 - q * t1);
            }
            return Some(self.from_i64(t0));
        }
        Some(self.pow(a, (self.size - 2) as u128))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Frobenius a -> a^p.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u128)
    }

    /// All elements in packed order; refuses fields above [`ENUMERATION_CAP`].
    pub fn elements(&self) -> Result<impl Iterator<Item = Fq>> {
        if self.size > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                p: self.p,
                k: self.k,
            });
        }
        Ok((0..self.size).map(Fq))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.size - 1;
        let mut order = n;
        for (r, _) in crate::util::factorize(n) {
            while order.is_multiple_of(r) && self.pow(a, (order / r) as u128) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// Display form: a bare integer for prime-subfield elements.
    pub fn format(&self, a: Fq) -> String {
        if self.k == 1 || self.is_prime_subfield(a) {
            a.0.to_string()
        } else {
            format!("{:?}", self.coeffs(a))
        }
    }

    /// y += a * x, elementwise.
    pub fn axpy(&self, y: &mut [Fq], a: Fq, x: &[Fq]) {
        if a.is_zero() {
            return;
        }
        if self.k == 1 {
            let p = self.p;
            for (yi, xi) in y.iter_mut().zip(x) {
                yi.0 = (yi.0 + a.0 * xi.0) % p;
            }
        } else {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.add(*yi, self.mul(a, xi));
            }
        }
    }

    pub fn scale_in_place(&self, y: &mut [Fq], a: Fq) {
        for yi in y.iter_mut() {
            *yi = self.mul(*yi, a);
        }
    }

    pub fn dot(&self, x: &[Fq], y: &[Fq]) -> Fq {
        if self.k == 1 {
            let p = self.p;
            let mut acc = 0u64;
            for (a, b) in x.iter().zip(y) {
                acc = (acc + a.0 * b.0) % p;
            }
            return Fq(acc);
        }
        x.iter()
            .zip(y)
            .fold(self.zero(), |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// A field homomorphism GF(p^k) -> GF(p^m) fixing GF(p).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of 1, g, g^2, ..., g^(k-1) for the source generator g.
    basis_images: Vec<Fq>,
}

impl Embedding {
    /// The deterministic embedding: the source generator goes to the least
    /// root (packed order) of the source modulus in the target.
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::FieldMismatch);
        }
        if !target.k.is_multiple_of(source.k) {
            return Err(Error::IncompatibleDegrees {
                source_degree: source.k,
                target_degree: target.k,
            });
        }
        if source.k == 1 {
            return Ok(Embedding {
                source: source.clone(),
                target: target.clone(),
                basis_images: vec![target.one()],
            });
        }
        let modulus = FqPoly::new(
            target.clone(),
            source.modulus.iter().map(|&c| target.from_u64(c)).collect(),
        );
        let roots = factor::roots_of(&modulus, 0)?;
        let root = roots.into_iter().min().ok_or(Error::IncompatibleDegrees {
            source_degree: source.k,
            target_degree: target.k,
        })?;
        let mut basis_images = Vec::with_capacity(source.k);
        let mut acc = target.one();
        for _ in 0..source.k {
            basis_images.push(acc);
            acc = target.mul(acc, root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: Fq) -> Fq {
        if self.source.k == 1 {
            return x;
        }
        let t = &self.target;
        self.source
            .coeffs(x)
            .iter()
            .zip(&self.basis_images)
            .fold(t.zero(), |acc, (&c, &b)| {
                t.add(acc, t.mul(t.from_u64(c), b))
            })
    }
}

/// Image of `x` (an element of `source`) in `target` under the deterministic embedding.
pub fn embed(x: Fq, source: &Field, target: &Field) -> Result<Fq> {
    Ok(Embedding::new(source, target)?.apply(x))
}
