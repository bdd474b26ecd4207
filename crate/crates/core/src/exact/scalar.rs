use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use super::ExactError;

/// Scalar field of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Prime field of the given characteristic (`p < 2^31`).
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, ExactError> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(ExactError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::zero(),
            Field::Prime(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        Scalar::from(n).into_field(self)
    }

    /// Parses an integer or fraction literal `a` / `a/b`.
    pub fn parse(self, s: &str) -> Result<Scalar, ExactError> {
        let bad = || ExactError::BadLiteral(s.to_string());
        let t = s.trim();
        if t.is_empty() || t.contains(['.', 'e', 'E']) {
            return Err(bad());
        }
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let q = Scalar::from_big(BigRational::new(n, d));
        match self {
            Field::Rational => Ok(q),
            Field::Prime(p) => q.try_into_prime(p).ok_or_else(bad),
        }
    }

    pub fn describe(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a rational number or a residue modulo a prime.
///
/// Small rationals are kept as reduced `i64` pairs and promoted to
/// `BigRational` on overflow. A rational meeting a residue is reduced modulo
/// that residue's prime, so integer constants work in either field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Small(i64, i64),
    Big(Box<BigRational>),
    Mod(u32, u32),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Scalar {
        Scalar::Small(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n == 0,
            Scalar::Big(b) => b.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(n, d) => *n == 1 && *d == 1,
            Scalar::Big(b) => b.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    fn from_big(q: BigRational) -> Scalar {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(Box::new(q)),
        }
    }

    fn small(n: i128, d: i128) -> Scalar {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
            Scalar::Mod(..) => panic!("residue used as rational"),
        }
    }

    /// The field this element lives in (rationals report `Rational`).
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod(_, p) => Field::Prime(*p),
            _ => Field::Rational,
        }
    }

    pub fn into_field(self, f: Field) -> Scalar {
        match (f, &self) {
            (Field::Prime(p), Scalar::Small(..) | Scalar::Big(_)) => {
                self.try_into_prime(p).unwrap_or_else(|| panic!("denominator divisible by {p}"))
            }
            _ => self,
        }
    }

    fn try_into_prime(&self, p: u32) -> Option<Scalar> {
        let pm = p as i64;
        match self {
            Scalar::Small(n, d) => {
                let n = n.rem_euclid(pm) as u64;
                let d = d.rem_euclid(pm) as u32;
                let di = inv_mod(d, p)?;
                Some(Scalar::Mod((n * di as u64 % p as u64) as u32, p))
            }
            Scalar::Big(b) => {
                let bp = BigInt::from(p);
                let n = b.numer().mod_floor(&bp).to_u32()?;
                let d = b.denom().mod_floor(&bp).to_u32()?;
                let di = inv_mod(d, p)?;
                Some(Scalar::Mod((n as u64 * di as u64 % p as u64) as u32, p))
            }
            Scalar::Mod(v, q) => (*q == p).then_some(Scalar::Mod(*v, p)),
        }
    }

    fn coerce<'a>(a: &'a Scalar, b: &'a Scalar) -> Option<(u32, u32, u32)> {
        match (a, b) {
            (Scalar::Mod(x, p), Scalar::Mod(y, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Some((*x, *y, *p))
            }
            (Scalar::Mod(x, p), o) => match o.try_into_prime(*p) {
                Some(Scalar::Mod(y, _)) => Some((*x, y, *p)),
                _ => panic!("rational not representable mod {p}"),
            },
            (o, Scalar::Mod(y, p)) => match o.try_into_prime(*p) {
                Some(Scalar::Mod(x, _)) => Some((x, *y, *p)),
                _ => panic!("rational not representable mod {p}"),
            },
            _ => None,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if let Some((x, y, p)) = Scalar::coerce(self, o) {
            return Scalar::Mod(((x as u64 + y as u64) % p as u64) as u32, p);
        }
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Scalar::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(z)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(s) = x.checked_add(y) {
                    return Scalar::small(s, z);
                }
            }
        }
        Scalar::from_big(self.to_big() + o.to_big())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => Scalar::from_big(-self.to_big()),
            },
            Scalar::Big(b) => Scalar::from_big(-(**b).clone()),
            Scalar::Mod(v, p) => Scalar::Mod(if *v == 0 { 0 } else { p - v }, *p),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if let Some((x, y, p)) = Scalar::coerce(self, o) {
            return Scalar::Mod((x as u64 * y as u64 % p as u64) as u32, p);
        }
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_mul(*c) {
                    return Scalar::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(z)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Scalar::small(x, z);
            }
        }
        Scalar::from_big(self.to_big() * o.to_big())
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Small(n, d) => Scalar::small(*d as i128, *n as i128),
            Scalar::Big(b) => Scalar::from_big(b.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(inv_mod(*v, *p)?, *p),
        })
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv().expect("division by zero"))
    }
}

fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let e = (a as i64).extended_gcd(&(p as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(p as i64) as u32)
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => a == c && b == d,
            (Scalar::Mod(..), _) | (_, Scalar::Mod(..)) => self.sub(o).is_zero(),
            _ => self.to_big() == o.to_big(),
        }
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::Small(n, 1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Scalar::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(b) => b.is_negative(),
            Scalar::Mod(..) => false,
        }
    }
}
