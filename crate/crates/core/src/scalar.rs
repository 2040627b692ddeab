//! Exact scalars of the form `Σ c_r · √r`, with `c_r` a Gaussian rational and
//! `r` a square-free positive integer.
//!
//! The set is a field: it is the multiquadratic extension of `Q(i)` generated by
//! the square roots of the primes that occur in the radicands. Square roots of
//! distinct square-free integers are linearly independent over `Q(i)`, so a value
//! is zero exactly when its canonical term map is empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Gaussian rational `re + im·i`.
pub type GaussianRational = Complex<BigRational>;

/// Splits `n` into `(s, f)` with `n = s²·f` and `f` square-free. Trial division.
pub fn square_part(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        s *= d.pow(e / 2);
        if e % 2 == 1 {
            f *= d;
        }
        d += 1;
    }
    (s, f * rest)
}

fn is_square_free(n: u64) -> bool {
    n >= 1 && square_part(n).0 == 1
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An exact element of `Q(i)(√2, √3, √5, …)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, GaussianRational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::term(1, Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(ratio(num, den))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(1, Complex::new(q, BigRational::zero()))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Self::term(1, Complex::new(re, im))
    }

    /// `√n`, with the largest square factor pulled out of the radical.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (s, f) = square_part(n);
        Self::term(
            f,
            Complex::new(BigRational::from_integer(s.into()), BigRational::zero()),
        )
    }

    /// `√(num/den) = √(num·den)/den`. Returns `None` for a zero denominator or
    /// when `num·den` does not fit in 64 bits.
    pub fn sqrt_ratio(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let prod = num.checked_mul(den)?;
        Some(Self::sqrt(prod).scale_rational(&ratio(1, den as i64)))
    }

    /// Square root of a non-negative rational, if it is representable.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        let num = q.numer().to_u64()?;
        let den = q.denom().to_u64()?;
        Self::sqrt_ratio(num, den)
    }

    /// Builds `coeff·√radicand`. The radicand must be square-free.
    ///
    /// # Panics
    /// If `radicand` is zero or not square-free.
    pub fn term(radicand: u64, coeff: GaussianRational) -> Self {
        assert!(
            is_square_free(radicand),
            "radicand {radicand} is not square-free"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        Self { terms }
    }

    /// Builds a value from `(radicand, coefficient)` pairs, merging duplicates.
    /// Returns `None` if some radicand is not square-free.
    pub fn from_terms<I>(terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = (u64, GaussianRational)>,
    {
        let mut out = Self::zero();
        for (r, c) in terms {
            if !is_square_free(r) {
                return None;
            }
            out.accumulate(r, c);
        }
        Some(out)
    }

    /// Iterates over `(radicand, coefficient)` in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> {
        self.terms.iter().map(|(r, c)| (*r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    /// The value as a Gaussian rational, if it has no irrational part.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(Complex::new(BigRational::zero(), BigRational::zero())),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The value as a real rational, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gaussian().filter(|c| c.im.is_zero()).map(|c| c.re)
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(r, c)| (*r, c.conj())).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (*r, Complex::new(&c.re * q, &c.im * q)))
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (r, c)| {
                let root = (*r as f64).sqrt();
                acc + Complex64::new(
                    c.re.to_f64().unwrap_or(f64::NAN) * root,
                    c.im.to_f64().unwrap_or(f64::NAN) * root,
                )
            })
    }

    /// Modulus of the floating-point value.
    pub fn abs_f64(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Repeatedly multiplies by the Galois conjugate that flips the sign of `√q`
    /// for some prime `q` still present, until the value lies in `Q(i)`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut reduced = self.clone();
        let mut cofactor = Self::one();
        while let Some(q) = reduced
            .terms
            .keys()
            .filter_map(|r| smallest_prime_factor(*r))
            .min()
        {
            let flipped = reduced.flip_prime(q);
            cofactor = &cofactor * &flipped;
            reduced = &reduced * &flipped;
        }
        let g = reduced.as_gaussian()?;
        let norm = &g.re * &g.re + &g.im * &g.im;
        let g_inv = Complex::new(&g.re / &norm, -(&g.im / &norm));
        Some(&cofactor * &Self::term(1, g_inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    /// Galois automorphism `√q ↦ −√q` for a prime `q`.
    fn flip_prime(&self, q: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (*r, if r % q == 0 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    fn accumulate(&mut self, radicand: u64, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(radicand)
            .or_insert_with(|| Complex::new(BigRational::zero(), BigRational::zero()));
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for RadicalScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        for (r, c) in &rhs.terms {
            self.accumulate(*r, c.clone());
        }
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.accumulate(*r, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                // r1, r2 square-free: r1·r2 = g²·(r1/g)(r2/g) with the cofactor square-free
                let g = r1.gcd(r2);
                let radicand = (r1 / g)
                    .checked_mul(r2 / g)
                    .expect("radicand product overflows u64");
                let gf = BigRational::from_integer(g.into());
                let c = c1 * c2;
                out.accumulate(radicand, Complex::new(&c.re * &gf, &c.im * &gf));
            }
        }
        out
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;

    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(r, c)| (*r, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: &RadicalScalar) -> RadicalScalar {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RadicalScalar {
    type Output = RadicalScalar;

    fn neg(self) -> RadicalScalar {
        -&self
    }
}

impl std::iter::Sum for RadicalScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn fmt_gaussian(c: &GaussianRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) if c.im.is_one() => "i".to_string(),
        (true, false) if (-&c.im).is_one() => "-i".to_string(),
        (true, false) => format!("{}i", c.im),
        (false, false) => {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("({} {} {}i)", c.re, sign, c.im.abs())
        }
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (r, c)) in self.terms.iter().enumerate() {
            let negative =
                c.im.is_zero() && c.re.is_negative() || c.re.is_zero() && c.im.is_negative();
            let shown = if negative { -c.clone() } else { c.clone() };
            let coeff = fmt_gaussian(&shown);
            let body = match (*r, coeff.as_str()) {
                (1, _) => coeff,
                (r, "1") => format!("√{r}"),
                (r, _) => format!("{coeff}√{r}"),
            };
            match (k, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

/// JSON integer that degrades to a decimal string once it leaves the `i64` range.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(n: &BigInt) -> Self {
        n.to_i64()
            .map(WireInt::Small)
            .unwrap_or_else(|| WireInt::Big(n.to_string()))
    }
}

impl WireInt {
    fn into_bigint(self) -> Result<BigInt, String> {
        match self {
            WireInt::Small(n) => Ok(n.into()),
            WireInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

/// `(radicand, re_num, re_den, im_num, im_den)`
type WireTerm = (u64, WireInt, WireInt, WireInt, WireInt);

impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<WireTerm> = self
            .terms
            .iter()
            .map(|(r, c)| {
                (
                    *r,
                    c.re.numer().into(),
                    c.re.denom().into(),
                    c.im.numer().into(),
                    c.im.denom().into(),
                )
            })
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Vec::<WireTerm>::deserialize(d)?;
        let mut terms = Vec::with_capacity(wire.len());
        for (r, rn, rd, inum, id) in wire {
            let rd = rd.into_bigint().map_err(D::Error::custom)?;
            let id = id.into_bigint().map_err(D::Error::custom)?;
            if rd.is_zero() || id.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            let re = BigRational::new(rn.into_bigint().map_err(D::Error::custom)?, rd);
            let im = BigRational::new(inum.into_bigint().map_err(D::Error::custom)?, id);
            terms.push((r, Complex::new(re, im)));
        }
        Self::from_terms(terms).ok_or_else(|| D::Error::custom("radicand is not square-free"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn like_radicands_merge() {
        let s2 = RadicalScalar::sqrt(2);
        let sum = &s2 + &s2;
        assert_eq!(sum, RadicalScalar::sqrt(8));
        assert_eq!(sum.terms().count(), 1);
        assert!((&s2 + &(-&s2)).is_zero());
    }

    #[test]
    fn sum_cancels_radical_part() {
        let a = &RadicalScalar::one() + &RadicalScalar::sqrt(3);
        let b = &RadicalScalar::from_integer(2) - &RadicalScalar::sqrt(3);
        let sum = &a + &b;
        assert!(close(sum.to_complex(), a.to_complex() + b.to_complex()));
        assert_eq!(sum, RadicalScalar::from_integer(3));
    }

    #[test]
    fn products_reduce_radicands() {
        assert_eq!(
            &RadicalScalar::sqrt(2) * &RadicalScalar::sqrt(2),
            RadicalScalar::from_integer(2)
        );
        let i = RadicalScalar::i();
        assert_eq!(&i * &i, RadicalScalar::from_integer(-1));
    }

    #[test]
    fn sqrt6_times_sqrt10() {
        // oracle: 60 = 2^2 * 3 * 5 by trial division, so sqrt(60) = 2 sqrt(15)
        let mut n = 60u64;
        let mut factors = vec![];
        let mut d = 2;
        while n > 1 {
            while n.is_multiple_of(d) {
                factors.push(d);
                n /= d;
            }
            d += 1;
        }
        assert_eq!(factors, vec![2, 2, 3, 5]);
        let expected = RadicalScalar::term(
            15,
            Complex::new(BigRational::from_integer(2.into()), BigRational::zero()),
        );
        assert_eq!(&RadicalScalar::sqrt(6) * &RadicalScalar::sqrt(10), expected);
    }

    #[test]
    fn conjugation() {
        let i = RadicalScalar::i();
        let x = &i * &RadicalScalar::sqrt(2);
        assert_eq!(x.conj(), -&x);
        assert_eq!(
            RadicalScalar::from_integer(3).conj(),
            RadicalScalar::from_integer(3)
        );

        let one_plus_i = RadicalScalar::gaussian(ratio(1, 1), ratio(1, 1));
        let two_minus_i = RadicalScalar::gaussian(ratio(2, 1), ratio(-1, 1));
        let y = &one_plus_i + &(&two_minus_i * &RadicalScalar::sqrt(5));
        let expected = &one_plus_i.conj() + &(&two_minus_i.conj() * &RadicalScalar::sqrt(5));
        assert_eq!(y.conj(), expected);
        assert!(close(y.conj().to_complex(), y.to_complex().conj()));
    }

    #[test]
    fn float_rendering() {
        let v = RadicalScalar::sqrt(8).to_complex();
        assert!((v.re - 2.8284271247).abs() < 1e-9 && v.im == 0.0);
        assert_eq!(RadicalScalar::zero().to_complex(), Complex64::new(0.0, 0.0));
        let w = (&(-&RadicalScalar::sqrt(3)) + &RadicalScalar::i()).to_complex();
        assert!((w.re + 1.7320508).abs() < 1e-7 && (w.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_part_splits() {
        assert_eq!(square_part(1), (1, 1));
        assert_eq!(square_part(12), (2, 3));
        assert_eq!(square_part(72), (6, 2));
        assert_eq!(square_part(97), (1, 97));
    }

    #[test]
    fn sqrt_ratio_of_half() {
        let h = RadicalScalar::sqrt_ratio(1, 2).unwrap();
        assert_eq!(h, RadicalScalar::sqrt(2).scale_rational(&ratio(1, 2)));
        assert_eq!(&h * &h, RadicalScalar::from_ratio(1, 2));
        assert!(RadicalScalar::sqrt_ratio(1, 0).is_none());
    }

    #[test]
    fn inverse_of_multiquadratic_value() {
        let x = &(&RadicalScalar::one() + &RadicalScalar::sqrt(2))
            + &(&RadicalScalar::i() * &RadicalScalar::sqrt(15));
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, RadicalScalar::one());
        assert!(RadicalScalar::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        let x = &RadicalScalar::sqrt(8) - &RadicalScalar::from_ratio(1, 3);
        assert_eq!(x.to_string(), "-1/3 + 2√2");
        assert_eq!((-&RadicalScalar::sqrt(2)).to_string(), "-√2");
        assert_eq!(
            (&RadicalScalar::i() * &RadicalScalar::sqrt(3)).to_string(),
            "i√3"
        );
        assert_eq!(RadicalScalar::zero().to_string(), "0");
    }

    #[test]
    fn json_tuple_form() {
        let x = &RadicalScalar::from_ratio(1, 2) + &(&RadicalScalar::i() * &RadicalScalar::sqrt(3));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[[1,1,2,0,1],[3,0,1,1,1]]");
        let back: RadicalScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<RadicalScalar>("[[4,1,1,0,1]]").is_err());
    }
}
