//! Exact coefficients, monomials, exterior masks and weights.
//!
//! Every Koszul sign in the crate is computed by [`mask_sign`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Maximum number of variables supported by [`Monomial`] and masks.
pub const MAX_VARS: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse rational from {0:?}")]
    ParseRat(String),
    #[error("masks live on different sides")]
    SideMismatch,
    #[error("division by zero")]
    DivByZero,
}

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in `i64` are kept in
/// the `Small` form; everything else falls back to a big rational. The
/// representation is canonical, so structural equality is numeric equality.
#[derive(Clone)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn from_int(n: i64) -> Rat {
        if n == i64::MIN {
            return Rat::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rat::Small(n, 1)
    }

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        if num == 0 {
            return Rat::ZERO;
        }
        let neg = (num < 0) != (den < 0);
        let (un, ud) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd_u128(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            Rat::Small(if neg { -n } else { n }, ud as i64)
        } else {
            let n = BigInt::from(un);
            let n = if neg { -n } else { n };
            Rat::Big(Box::new(BigRational::new_raw(n, BigInt::from(ud))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new reduces; callers may pass raw values.
        let r = if r.denom().is_negative() || !r.numer().gcd(r.denom()).is_one() {
            BigRational::new(r.numer().clone(), r.denom().clone())
        } else {
            r
        };
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn recip(&self) -> Result<Rat, ScalarError> {
        match self {
            Rat::Small(0, _) => Err(ScalarError::DivByZero),
            Rat::Small(n, d) => Ok(Rat::from_i128(*d as i128, *n as i128)),
            Rat::Big(b) => Ok(Rat::from_big(b.recip())),
        }
    }

    /// Multiply by ±1 without allocating.
    pub fn signed(&self, sign: i32) -> Rat {
        if sign >= 0 {
            self.clone()
        } else {
            -self
        }
    }

    pub fn add_ref(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) => o.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn mul_ref(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn neg_ref(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from_int(n as i64)
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Rat, ScalarError> {
        let s = s.trim();
        let err = || ScalarError::ParseRat(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                $f(self, o)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                $f(&self, &o)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                $f(&self, o)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                $f(self, &o)
            }
        }
    };
}

rat_binop!(Add, add, |a: &Rat, b: &Rat| a.add_ref(b));
rat_binop!(Sub, sub, |a: &Rat, b: &Rat| a.add_ref(&b.neg_ref()));
rat_binop!(Mul, mul, |a: &Rat, b: &Rat| a.mul_ref(b));
rat_binop!(Div, div, |a: &Rat, b: &Rat| a.mul_ref(&b.recip().expect("division by zero")));

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        *self = self.add_ref(o);
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, o: Rat) {
        *self = self.add_ref(&o);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        *self = self.add_ref(&o.neg_ref());
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, o: &Rat) {
        *self = self.mul_ref(o);
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat::ZERO
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat::ONE
    }
}

/// Commutative ring interface shared by [`Rat`] and [`Cyc5`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Element a + bζ + cζ² + dζ³ of ℚ(ζ) with ζ a primitive fifth root of unity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc5(pub [Rat; 4]);

impl Cyc5 {
    pub fn from_rat(r: Rat) -> Cyc5 {
        Cyc5([r, Rat::ZERO, Rat::ZERO, Rat::ZERO])
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Cyc5 {
        let k = k.rem_euclid(5) as usize;
        let mut c = [Rat::ZERO, Rat::ZERO, Rat::ZERO, Rat::ZERO];
        if k < 4 {
            c[k] = Rat::ONE;
        } else {
            c = [-Rat::ONE, -Rat::ONE, -Rat::ONE, -Rat::ONE];
        }
        Cyc5(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn add(&self, o: &Cyc5) -> Cyc5 {
        Cyc5(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn neg(&self) -> Cyc5 {
        Cyc5(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn scale(&self, r: &Rat) -> Cyc5 {
        Cyc5(std::array::from_fn(|i| &self.0[i] * r))
    }

    /// Multiply by ζ^k.
    pub fn mul_zeta(&self, k: i64) -> Cyc5 {
        cyc5_mul(self, &Cyc5::zeta_pow(k))
    }
}

/// Exact product in ℚ(ζ), reduced by 1 + ζ + ζ² + ζ³ + ζ⁴ = 0.
pub fn cyc5_mul(a: &Cyc5, b: &Cyc5) -> Cyc5 {
    // Product in ℚ[ζ]/(ζ⁵ − 1), then fold the ζ⁴ coefficient.
    let mut full: [Rat; 5] = Default::default();
    for i in 0..4 {
        if a.0[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b.0[j].is_zero() {
                continue;
            }
            let k = (i + j) % 5;
            full[k] += a.0[i].mul_ref(&b.0[j]);
        }
    }
    let top = full[4].clone();
    Cyc5(std::array::from_fn(|i| &full[i] - &top))
}

impl Coeff for Cyc5 {
    fn zero() -> Self {
        Cyc5::default()
    }
    fn one() -> Self {
        Cyc5::from_rat(Rat::ONE)
    }
    fn is_zero(&self) -> bool {
        Cyc5::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Cyc5::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        cyc5_mul(self, o)
    }
    fn neg(&self) -> Self {
        Cyc5::neg(self)
    }
    fn from_rat(r: &Rat) -> Self {
        Cyc5::from_rat(r.clone())
    }
}

impl fmt::Debug for Cyc5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Exponent vector of a monomial v₁^{a₁}⋯vₙ^{aₙ}; unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exps(exps: &[u8]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0u8; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(k: usize) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        m[k] = 1;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn exp(&self, k: usize) -> u8 {
        self.0[k]
    }

    /// Divide by v_k, returning the old exponent, or `None` if v_k does not divide.
    pub fn div_var(&self, k: usize) -> Option<(u8, Monomial)> {
        if self.0[k] == 0 {
            return None;
        }
        let mut m = *self;
        m.0[k] -= 1;
        Some((self.0[k], m))
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] <= o.0[i])
    }

    pub fn fmt_vars(&self, n: usize, var: &str) -> String {
        let mut parts = Vec::new();
        for k in 0..n {
            match self.0[k] {
                0 => {}
                1 => parts.push(format!("{var}{}", k + 1)),
                e => parts.push(format!("{var}{}^{e}", k + 1)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars(MAX_VARS, "v"))
    }
}

/// Bitmask of exterior generators: bit k-1 stands for ξ_k (or dv_k).
pub type Mask = u8;

/// Which exterior algebra a mask lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Λ(V), generators ξ_k.
    Vectors,
    /// Λ(V^∨), generators dv_k.
    Covectors,
}

/// A canonical exterior basis monomial together with its side tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtMask {
    pub bits: Mask,
    pub side: Side,
}

impl ExtMask {
    pub fn vec(indices: &[usize]) -> ExtMask {
        ExtMask { bits: mask_of(indices), side: Side::Vectors }
    }
    pub fn covec(indices: &[usize]) -> ExtMask {
        ExtMask { bits: mask_of(indices), side: Side::Covectors }
    }
    pub fn parity(&self) -> u32 {
        self.bits.count_ones() % 2
    }
}

/// Mask from 1-based indices.
pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &k| {
        assert!((1..=8).contains(&k), "index out of range");
        m | (1 << (k - 1))
    })
}

/// 1-based indices of a mask in increasing order.
pub fn mask_indices(m: Mask) -> Vec<usize> {
    (0..8).filter(|b| m & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn popcount(m: Mask) -> u32 {
    m.count_ones()
}

/// Sign of e_a ∧ e_b = sign · e_{a∪b} for increasing basis monomials.
pub fn mask_sign(a: Mask, b: Mask) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inv += ((a as u32) >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Side-checked form of [`mask_sign`].
pub fn wedge_sign(m1: ExtMask, m2: ExtMask) -> Result<i32, ScalarError> {
    if m1.side != m2.side {
        return Err(ScalarError::SideMismatch);
    }
    Ok(mask_sign(m1.bits, m2.bits))
}

/// Sign relating ξ_{j_p}∧…∧ξ_{j_1} to ξ_{j_1}∧…∧ξ_{j_p}: (−1)^{p(p−1)/2}.
pub fn reversal_sign(m: Mask) -> i32 {
    let p = m.count_ones();
    if (p * p.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn parity_sign(p: u32) -> i32 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Element of (ℤ/5)ⁿ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub n: usize,
    pub w: [u8; MAX_VARS],
}

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight { n, w: [0; MAX_VARS] }
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        let mut w = [0u8; MAX_VARS];
        for (i, x) in v.iter().enumerate() {
            w[i] = x.rem_euclid(5) as u8;
        }
        Weight { n: v.len(), w }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        let mut w = self.w;
        for i in 0..self.n.max(o.n) {
            w[i] = (self.w[i] + o.w[i]) % 5;
        }
        Weight { n: self.n.max(o.n), w }
    }

    pub fn neg(&self) -> Weight {
        let mut w = self.w;
        for x in w.iter_mut().take(self.n) {
            *x = (5 - *x) % 5;
        }
        Weight { n: self.n, w }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.neg())
    }

    /// Whether the weight lies in the diagonal subgroup ⟨(1,…,1)⟩.
    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.w[i] == self.w[0])
    }

    /// Representative mod the diagonal with last coordinate 0.
    pub fn mod_diagonal(&self) -> Weight {
        if self.n == 0 {
            return *self;
        }
        let shift = self.w[self.n - 1];
        let mut w = self.w;
        for x in w.iter_mut().take(self.n) {
            *x = (*x + 5 - shift) % 5;
        }
        Weight { n: self.n, w }
    }

    /// Pairing ⟨t, w⟩ mod 5 with a covector t.
    pub fn pair(&self, t: &[i64]) -> i64 {
        (0..self.n).map(|i| t[i] * self.w[i] as i64).sum::<i64>().rem_euclid(5)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.w[..self.n]
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// Weight of a monomial: v_k has weight −e_k.
pub fn monomial_weight(m: &Monomial, n: usize) -> Weight {
    let v: Vec<i64> = (0..n).map(|k| -(m.0[k] as i64)).collect();
    Weight::from_ints(&v)
}

/// Weight of an exterior mask: ξ_k has weight +e_k, dv_k has weight −e_k.
pub fn mask_weight(m: ExtMask, n: usize) -> Weight {
    let s = if m.side == Side::Vectors { 1 } else { -1 };
    let v: Vec<i64> = (0..n).map(|k| if m.bits & (1 << k) != 0 { s } else { 0 }).collect();
    Weight::from_ints(&v)
}

/// Weight of a vector mask ξ_J.
pub fn vec_mask_weight(m: Mask, n: usize) -> Weight {
    mask_weight(ExtMask { bits: m, side: Side::Vectors }, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_sign_examples() {
        assert_eq!(wedge_sign(ExtMask::vec(&[1]), ExtMask::vec(&[1])), Ok(0));
        assert_eq!(wedge_sign(ExtMask::vec(&[2]), ExtMask::vec(&[1])), Ok(-1));
        assert_eq!(wedge_sign(ExtMask::vec(&[1, 3]), ExtMask::vec(&[2])), Ok(-1));
        assert_eq!(
            wedge_sign(ExtMask::vec(&[1]), ExtMask::covec(&[2])),
            Err(ScalarError::SideMismatch)
        );
    }

    #[test]
    fn cyc5_examples() {
        assert_eq!(cyc5_mul(&Cyc5::zeta_pow(2), &Cyc5::zeta_pow(3)), Cyc5::one());
        let s = Cyc5([Rat::ONE, Rat::ONE, Rat::ONE, Rat::ONE]);
        assert_eq!(cyc5_mul(&s, &Cyc5::one()), s);
        assert_eq!(s, Cyc5::zeta_pow(4).neg());
        assert_eq!(cyc5_mul(&Cyc5::zeta_pow(1), &Cyc5::zeta_pow(4)), Cyc5::one());
    }

    #[test]
    fn weight_examples() {
        let m = Monomial::from_exps(&[1, 1, 1]);
        assert_eq!(monomial_weight(&m, 3).as_slice(), &[4, 4, 4]);
        assert_eq!(mask_weight(ExtMask::vec(&[1, 2]), 3).as_slice(), &[1, 1, 0]);
        assert_eq!(monomial_weight(&Monomial::from_exps(&[5, 0, 0]), 3).as_slice(), &[0, 0, 0]);
    }

    #[test]
    fn rat_small_big_boundary() {
        let big = Rat::from_int(i64::MAX);
        let s = &big + &Rat::ONE;
        assert!(matches!(s, Rat::Big(_)));
        let back = &s - &Rat::ONE;
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(..)));
        assert_eq!("6/-4".parse::<Rat>().unwrap(), Rat::new(-3, 2));
        assert_eq!(Rat::new(-3, 2).to_string(), "-3/2");
    }
}
