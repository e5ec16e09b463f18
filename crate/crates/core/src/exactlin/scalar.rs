use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Largest admissible prime modulus (exclusive).
pub const PRIME_LIMIT: u64 = 1 << 61;

/// Base field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, ExactError> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(ExactError::BadModulus(p));
        }
        Ok(Field::Prime { p })
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime { p } => Some(p),
        }
    }

    pub fn characteristic(self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(self, 1)
    }

    pub fn int(self, n: i64) -> Scalar {
        Scalar::from_i64(self, n)
    }

    /// Every element of a prime field, in representative order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        let p = self.modulus()?;
        Some((0..p).map(|v| Scalar::Fp { v, p }).collect())
    }

    /// Short human label: `Q` or `F5`.
    pub fn label(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime { p } => format!("F{p}"),
        }
    }

    pub fn parse_label(s: &str) -> Result<Self, ExactError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| ExactError::Parse(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mod_reduce(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    pub fn from_i64(field: Field, n: i64) -> Self {
        match field {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Fp {
                v: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Self {
        match field {
            Field::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime { p } => Scalar::Fp {
                v: mod_reduce(n, p),
                p,
            },
        }
    }

    /// `num/den` in the field; `None` when the denominator vanishes there.
    pub fn ratio(field: Field, num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        match field {
            Field::Rational => Some(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime { p } => {
                let d = inv_mod(mod_reduce(den, p), p)?;
                Some(Scalar::Fp {
                    v: mul_mod(mod_reduce(num, p), d, p),
                    p,
                })
            }
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`.
    pub fn parse(field: Field, s: &str) -> Result<Self, ExactError> {
        let t = s.trim();
        let bad = || ExactError::Parse(format!("malformed scalar `{s}`"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(ExactError::Parse(format!("zero denominator in `{s}`")));
        }
        Scalar::ratio(field, &n, &d)
            .ok_or_else(|| ExactError::Parse(format!("denominator of `{s}` vanishes in {field}")))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) if q.is_zero() => None,
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp { v, p } => inv_mod(*v, *p).map(|v| Scalar::Fp { v, p: *p }),
        }
    }

    /// Representative in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.partial_cmp(b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: add_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: sub_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: sub_mod(0, *v, *p),
                p: *p,
            },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        Scalar::parse(Field::Rational, s).unwrap()
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("-3/-6").to_string(), "1/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert!(Scalar::parse(Field::Rational, "1/0").is_err());
        assert!(Scalar::parse(Field::Rational, "x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.int(3);
        assert_eq!((&a * &a.inv().unwrap()), f.one());
        assert_eq!((&a + &(-&a)), f.zero());
        assert_eq!(Scalar::parse(f, "1/2").unwrap(), f.int(3));
        assert!(Scalar::parse(Field::prime(2).unwrap(), "1/2").is_err());
        assert_eq!(f.int(-1).to_string(), "4");
    }

    #[test]
    fn primality() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(1 << 61).is_err());
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        let big = Field::prime((1 << 61) - 1).unwrap();
        let x = big.int(-2);
        assert_eq!(&x * &x.inv().unwrap(), big.one());
    }

    #[test]
    fn field_labels_round_trip() {
        for f in [Field::Rational, Field::prime(7).unwrap()] {
            assert_eq!(Field::parse_label(&f.label()).unwrap(), f);
        }
        let json = serde_json::to_string(&Field::prime(3).unwrap()).unwrap();
        assert_eq!(json, r#"{"kind":"Fp","p":3}"#);
    }
}
