//! Exact scalars: arbitrary-precision rationals and residues modulo an odd prime.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default bound on numerator and denominator of sampled rationals.
pub const DEFAULT_HEIGHT: u32 = 100;

/// The ground field: ℚ or F_p for an odd prime p below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// F_p, rejecting p = 2, composites and p ≥ 2^31.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !(3..(1 << 31)).contains(&p) {
            return Err(Error::InvalidField(format!("modulus {p} is outside 3 <= p < 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// n/d in this field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        self.int(n).checked_div(&self.int(d))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// All field elements in increasing residue order; `None` for ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some((0..p).map(|value| Scalar::Mod { value, p }).collect()),
        }
    }

    /// Parses "a", "-a" or "a/b". Over F_p the quotient is taken in the field.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let parse_int = |s: &str| -> Result<BigInt> {
            s.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a number: {text:?}")))
        };
        let n = parse_int(num)?;
        let d = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            FieldSpec::Rational => Ok(Scalar::Rat(BigRational::new(n, d))),
            FieldSpec::Prime(p) => {
                let reduce = |v: &BigInt| -> Scalar {
                    let m = v.mod_floor(&BigInt::from(p));
                    Scalar::Mod {
                        value: m.to_u32().expect("residue fits"),
                        p,
                    }
                };
                reduce(&n).checked_div(&reduce(&d))
            }
        }
    }
}

/// An exact field element. Rationals are always stored reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u32, p: u32 },
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
        })
    }

    /// Numerator and denominator of a rational; `None` over F_p.
    pub fn as_ratio(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Scalar::Rat(q) => Some((q.numer(), q.denom())),
            Scalar::Mod { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by field, then by value (residue order over F_p).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, p: pa }, Scalar::Mod { value: b, p: pb }) => pa.cmp(pb).then(a.cmp(b)),
            (Scalar::Rat(_), Scalar::Mod { .. }) => Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rat(_)) => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Arithmetic entry point with explicit error reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

/// Seeded source of field elements. The same seed yields the same sequence.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    height: u32,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler::with_height(seed, DEFAULT_HEIGHT)
    }

    pub fn with_height(seed: u64, height: u32) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: height.max(1),
        }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Any element; rationals have numerator and denominator bounded by the height.
    pub fn any(&mut self, spec: FieldSpec) -> Scalar {
        match spec {
            FieldSpec::Rational => {
                let h = self.height as i64;
                let n = self.rng.gen_range(-h..=h);
                let d = self.rng.gen_range(1..=h);
                Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            FieldSpec::Prime(p) => Scalar::Mod {
                value: self.rng.gen_range(0..p),
                p,
            },
        }
    }

    /// An element outside `excluded`.
    pub fn sample(&mut self, spec: FieldSpec, excluded: &[Scalar]) -> Result<Scalar> {
        if let FieldSpec::Prime(p) = spec {
            let mut hit = vec![false; p as usize];
            for e in excluded.iter().filter(|e| spec.contains(e)) {
                if let Scalar::Mod { value, .. } = e {
                    hit[*value as usize] = true;
                }
            }
            if hit.iter().all(|h| *h) {
                return Err(Error::ExhaustedField);
            }
        }
        // The height-bounded rationals number far more than any finite exclusion
        // list used in practice, so rejection terminates quickly.
        for _ in 0..100_000 {
            let v = self.any(spec);
            if !excluded.contains(&v) {
                return Ok(v);
            }
        }
        Err(Error::ExhaustedField)
    }

    pub fn nonzero(&mut self, spec: FieldSpec) -> Scalar {
        self.sample(spec, &[spec.zero()])
            .expect("a field has a nonzero element")
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn coin(&mut self, probability: f64) -> bool {
        self.rng.gen_bool(probability)
    }
}

/// One-shot form of [`Sampler::sample`].
pub fn sample_nonzero(spec: FieldSpec, seed: u64, excluded: &[Scalar]) -> Result<Scalar> {
    Sampler::new(seed).sample(spec, excluded)
}

/// Absolute bound check used by tests of the height contract.
pub fn within_height(s: &Scalar, height: u32) -> bool {
    match s {
        Scalar::Rat(q) => {
            let h = BigInt::from(height);
            q.numer().abs() <= h && q.denom() <= &h
        }
        Scalar::Mod { .. } => true,
    }
}
