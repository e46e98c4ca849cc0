//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored as coordinate vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` of `Q[X]/Φ_N(X)`. Every value is kept reduced
//! modulo `Φ_N`, so two scalars are equal iff their coordinates agree.
//!
//! Roots of unity get their own lightweight type, [`RootOfUnity`], which
//! does exponent arithmetic modulo `N` and only materializes a
//! [`CycScalar`] when asked.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar literal error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// The field `Q(ζ_N)` together with the integer polynomial `Φ_N`.
#[derive(Debug)]
pub struct CycField {
    conductor: u32,
    /// Coefficients of `Φ_N`, lowest degree first; monic.
    modulus: Vec<i64>,
}

impl CycField {
    /// Returns the shared field context for conductor `n`.
    pub fn get(n: u32) -> Arc<CycField> {
        assert!(n >= 1, "conductor must be positive");
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = cache.read().unwrap().get(&n) {
            return f.clone();
        }
        let field = Arc::new(CycField {
            conductor: n,
            modulus: cyclotomic_polynomial(n),
        });
        cache.write().unwrap().entry(n).or_insert(field).clone()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // X^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

/// An element of `Q(ζ_N)` in canonical reduced form.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar[N={}]({})", self.field.conductor, self)
    }
}

impl CycScalar {
    pub fn zero(n: u32) -> Self {
        let field = CycField::get(n);
        let coeffs = vec![BigRational::zero(); field.degree()];
        CycScalar { field, coeffs }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(n: u32, v: BigRational) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = v;
        s
    }

    /// Builds a scalar from arbitrary-length power-basis coordinates,
    /// reducing modulo `Φ_N`.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        let field = CycField::get(n);
        let coeffs = reduce(&field, coeffs);
        CycScalar { field, coeffs }
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(n, c)
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.field.conductor != other.field.conductor {
            return Err(CycError::ConductorMismatch {
                left: self.field.conductor,
                right: other.field.conductor,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.conductor()));
        }
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs: reduce(&self.field, prod),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[X]`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor(), r.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        // Invariant: s_k * a ≡ r_k (mod Φ).
        let mut r0 = trim(modulus);
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so the last nonzero remainder is a constant.
        let c = r1[0].clone();
        let coeffs = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(self.conductor(), coeffs))
    }

    /// Multiplies by `ζ_N^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.conductor() as i64;
        let k = k.rem_euclid(n) as usize;
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(self.conductor(), c)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative order if this scalar is an `N`-th root of unity.
    ///
    /// Tests `s^d = 1` over the divisors `d` of `N` in increasing order.
    pub fn detect_root_order(&self) -> Option<u32> {
        let n = self.conductor();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| self.pow(d as u64).is_one())
    }

    /// The exponent `k` with `self = ζ_N^k`, if any.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let n = self.conductor();
        (0..n)
            .map(|k| RootOfUnity::new(n, k as i64))
            .find(|r| &r.value() == self)
    }

    /// Parses a `z`-polynomial literal such as `1/2*z^3 - z + 2`.
    pub fn parse(n: u32, text: &str) -> Result<Self, CycError> {
        Parser::new(n, text).parse()
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                self.$checked(rhs).expect("scalar conductor mismatch")
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$checked(&rhs).expect("scalar conductor mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

fn reduce(field: &CycField, mut c: Vec<BigRational>) -> Vec<BigRational> {
    let d = field.degree();
    for top in (d..c.len()).rev() {
        let lead = std::mem::take(&mut c[top]);
        if lead.is_zero() {
            continue;
        }
        // Φ is monic: X^d ≡ -Σ_{j<d} φ_j X^j.
        for (j, &phi) in field.modulus[..d].iter().enumerate() {
            if phi != 0 {
                c[top - d + j] -= &lead * BigInt::from(phi);
            }
        }
    }
    c.resize(d, BigRational::zero());
    c
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder; `den` must be trimmed and nonzero.
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dn = den.len() - 1;
    let lead = &den[dn];
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![BigRational::zero()], trim(rem));
    }
    let qlen = rem.len() - dn;
    let mut quo = vec![BigRational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = &rem[k + dn] / lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        quo[k] = c;
    }
    rem.truncate(dn.max(1));
    (trim(quo), trim(rem))
}

/// `ζ_N^k` represented by its exponent modulo `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    conductor: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1);
        RootOfUnity {
            conductor,
            exponent: k.rem_euclid(conductor as i64) as u32,
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::new(conductor, 0)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Multiplicative order `N / gcd(N, k)`.
    pub fn order(&self) -> u32 {
        self.conductor / self.conductor.gcd(&self.exponent)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(self, other: Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "root conductor mismatch");
        Self::new(
            self.conductor,
            self.exponent as i64 + other.exponent as i64,
        )
    }

    pub fn inv(self) -> Self {
        Self::new(self.conductor, -(self.exponent as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        let n = self.conductor as i64;
        let e = e.rem_euclid(n);
        Self::new(
            self.conductor,
            (self.exponent as i64 * e) % n,
        )
    }

    pub fn value(&self) -> CycScalar {
        CycScalar::root_of_unity(self.conductor, self.exponent as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "1"),
            k if 2 * k == self.conductor => write!(f, "-1"),
            1 => write!(f, "z{}", self.conductor),
            k => write!(f, "z{}^{}", self.conductor, k),
        }
    }
}

struct Parser<'a> {
    n: u32,
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(n: u32, src: &'a str) -> Self {
        Parser {
            n,
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, CycError> {
        Err(CycError::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<CycScalar, CycError> {
        if self.peek().is_none() {
            return self.err("empty literal");
        }
        let mut acc = CycScalar::zero(self.n);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycScalar, CycError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycScalar, CycError> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let mut e = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let v = self.integer()?;
                    let v = v
                        .to_i64()
                        .map(|v| v.rem_euclid(self.n as i64))
                        .ok_or_else(|| CycError::Parse {
                            offset: self.pos,
                            message: "exponent too large".into(),
                        })?;
                    e = if neg { -v } else { v };
                }
                Ok(CycScalar::root_of_unity(self.n, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                }
                Ok(CycScalar::from_rational(self.n, BigRational::new(num, den)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of literal"),
        }
    }

    fn integer(&mut self) -> Result<BigInt, CycError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }
}
