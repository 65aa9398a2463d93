use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::params::Field;
use crate::error::{Error, Result};

const EXACT_ZERO: i64 = i64::MAX;

/// Absolute value of an element of `K`: either `0` or `base^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbsValue {
    Zero,
    Power(i64),
}

impl AbsValue {
    pub fn from_valuation(v: Option<i64>) -> Self {
        match v {
            None => AbsValue::Zero,
            Some(v) => AbsValue::Power(-v),
        }
    }

    pub fn to_f64(self, base: u64) -> f64 {
        match self {
            AbsValue::Zero => 0.0,
            AbsValue::Power(e) => (base as f64).powi(e as i32),
        }
    }

    /// Exponent `e` with value `base^e`, `None` for zero.
    pub fn exponent(self) -> Option<i64> {
        match self {
            AbsValue::Zero => None,
            AbsValue::Power(e) => Some(e),
        }
    }
}

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AbsValue::Zero, AbsValue::Zero) => Ordering::Equal,
            (AbsValue::Zero, _) => Ordering::Less,
            (_, AbsValue::Zero) => Ordering::Greater,
            (AbsValue::Power(a), AbsValue::Power(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Zero => write!(f, "0"),
            AbsValue::Power(e) => write!(f, "base^{e}"),
        }
    }
}

/// Truncated element `p^v · u` of an unramified extension `K/Q_p`.
///
/// `u` is stored by its coordinates in the basis `1, θ, …, θ^{f-1}` modulo
/// `p^prec`, with at least one coordinate prime to `p`. Zero carries its
/// absolute precision instead (`O(p^k)`), exact zero has none.
#[derive(Clone)]
pub struct PadicScalar {
    field: Field,
    val: i64,
    prec: u32,
    unit: Vec<BigInt>,
}

pub(crate) fn pow_p(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

fn vp(p: u64, x: &BigInt) -> u32 {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        x = q;
        k += 1;
    }
}

/// Multiply two coordinate vectors in `(Z/m)[θ]/(F)`.
pub(crate) fn poly_mul_mod(a: &[BigInt], b: &[BigInt], modulus: &[u64], m: &BigInt) -> Vec<BigInt> {
    let f = a.len();
    let mut prod = vec![BigInt::zero(); 2 * f - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    while prod.len() > f {
        let top = prod.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = prod.len() - f;
        for (i, &c) in modulus.iter().take(f).enumerate() {
            if c != 0 {
                prod[shift + i] -= &top * BigInt::from(c);
            }
        }
    }
    prod.into_iter().map(|c| c.mod_floor(m)).collect()
}

impl PadicScalar {
    /// Normalizes `p^v0 · Σ c_j θ^j`, known modulo `p^{v0 + rel}`.
    fn normalize(field: &Field, v0: i64, coords: Vec<BigInt>, rel: u32) -> PadicScalar {
        let p = field.p();
        let m = pow_p(p, rel);
        let coords: Vec<BigInt> = coords.into_iter().map(|c| c.mod_floor(&m)).collect();
        let k = coords.iter().filter(|c| !c.is_zero()).map(|c| vp(p, c)).min();
        match k {
            None => PadicScalar::zero_with_precision(field, v0.saturating_add(rel as i64)),
            Some(k) => {
                let prec = (rel - k).min(field.precision());
                let pk = pow_p(p, k);
                let mp = pow_p(p, prec);
                let unit = coords.into_iter().map(|c| (c / &pk).mod_floor(&mp)).collect();
                PadicScalar { field: field.clone(), val: v0 + k as i64, prec, unit }
            }
        }
    }

    pub fn zero(field: &Field) -> Self {
        PadicScalar { field: field.clone(), val: EXACT_ZERO, prec: 0, unit: Vec::new() }
    }

    /// Zero known only modulo `p^abs_prec`.
    pub fn zero_with_precision(field: &Field, abs_prec: i64) -> Self {
        PadicScalar { field: field.clone(), val: abs_prec, prec: 0, unit: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: &Field, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &Field, n: &BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[0] = n.clone();
        Self::from_coords(field, 0, &coords)
    }

    /// `n / d` for integers, `d != 0`.
    pub fn from_rational(field: &Field, n: i64, d: i64) -> Result<Self> {
        Self::from_i64(field, n).checked_div(&Self::from_i64(field, d))
    }

    /// The element `p^v · Σ coords[j] θ^j` at full working precision.
    pub fn from_coords(field: &Field, v: i64, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate count must equal f");
        if coords.iter().all(|c| c.is_zero()) {
            return Self::zero(field);
        }
        let p = field.p();
        let k = coords.iter().filter(|c| !c.is_zero()).map(|c| vp(p, c)).min().unwrap();
        Self::normalize(field, v, coords.to_vec(), field.precision() + k)
    }

    /// `p^v · Σ_i digits[i] p^i` where each digit is an encoded residue element.
    pub fn from_digits(field: &Field, v: i64, digits: &[u64]) -> Self {
        let p = field.p();
        let f = field.degree();
        let mut coords = vec![BigInt::zero(); f];
        let mut pw = BigInt::one();
        for &d in digits {
            for (j, c) in field.decode_residue(d).into_iter().enumerate() {
                coords[j] += &pw * BigInt::from(c);
            }
            pw *= BigInt::from(p);
        }
        Self::from_coords(field, v, &coords)
    }

    /// The generator `θ` of the residue extension (equals `0` when `f = 1`).
    pub fn theta(field: &Field) -> Self {
        if field.degree() == 1 {
            return Self::zero(field);
        }
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[1] = BigInt::one();
        Self::from_coords(field, 0, &coords)
    }

    /// `p^k`.
    pub fn uniformizer_power(field: &Field, k: i64) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[0] = BigInt::one();
        Self::from_coords(field, k, &coords)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec == 0 && self.val == EXACT_ZERO
    }

    /// Valuation, `None` standing for `+∞` (zero).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Number of significant digits (0 for zero).
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The value is known modulo `p^abs_precision`; `None` when exact.
    pub fn abs_precision(&self) -> Option<i64> {
        if self.is_exact_zero() {
            None
        } else if self.is_zero() {
            Some(self.val)
        } else {
            Some(self.val + self.prec as i64)
        }
    }

    /// Unit-part coordinates modulo `p^precision`.
    pub fn unit_coords(&self) -> &[BigInt] {
        &self.unit
    }

    /// `|x|_K = base^{-v(x)}`.
    pub fn norm(&self) -> AbsValue {
        AbsValue::from_valuation(self.valuation())
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm().to_f64(self.field.base())
    }

    /// Digits of the unit part as encoded residue elements, leading digit first.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigInt::from(self.field.p());
        let mut coords = self.unit.clone();
        let mut out = Vec::with_capacity(self.prec as usize);
        for _ in 0..self.prec {
            let mut digit = Vec::with_capacity(coords.len());
            for c in coords.iter_mut() {
                let (q, r) = c.div_rem(&p);
                digit.push(r.to_u64().unwrap());
                *c = q;
            }
            out.push(self.field.encode_residue(&digit));
        }
        out
    }

    /// Leading residue digit (encoded), `None` for zero.
    pub fn leading_digit(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let p = BigInt::from(self.field.p());
        let coords: Vec<u64> = self.unit.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect();
        Some(self.field.encode_residue(&coords))
    }

    /// Ordering used for canonical choices: valuation, then digits leading first.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self.valuation(), other.valuation()) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Greater,
            (_, None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.digits().cmp(&other.digits())),
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_exact_zero() {
            return Ok(other.clone());
        }
        if other.is_exact_zero() {
            return Ok(self.clone());
        }
        let abs = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let vmin = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Ok(Self::zero_with_precision(&self.field, abs)),
        };
        if abs <= vmin {
            return Ok(Self::zero_with_precision(&self.field, abs));
        }
        let p = self.field.p();
        let f = self.field.degree();
        let mut coords = vec![BigInt::zero(); f];
        for x in [self, other] {
            if let Some(v) = x.valuation() {
                let shift = pow_p(p, (v - vmin) as u32);
                for (c, u) in coords.iter_mut().zip(&x.unit) {
                    *c += u * &shift;
                }
            }
        }
        Ok(Self::normalize(&self.field, vmin, coords, (abs - vmin) as u32))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_p(self.field.p(), self.prec);
        let unit = self.unit.iter().map(|c| (-c).mod_floor(&m)).collect();
        PadicScalar { field: self.field.clone(), val: self.val, prec: self.prec, unit }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero(&self.field));
        }
        match (self.valuation(), other.valuation()) {
            (Some(va), Some(vb)) => {
                let prec = self.prec.min(other.prec);
                let m = pow_p(self.field.p(), prec);
                let unit = poly_mul_mod(&self.unit, &other.unit, self.field.modulus(), &m);
                Ok(PadicScalar { field: self.field.clone(), val: va + vb, prec, unit })
            }
            (None, Some(v)) => Ok(Self::zero_with_precision(&self.field, self.val + v)),
            (Some(v), None) => Ok(Self::zero_with_precision(&self.field, other.val + v)),
            (None, None) => Ok(Self::zero_with_precision(&self.field, self.val + other.val)),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let unit = unit_inverse(&self.field, &self.unit, self.prec);
        Ok(PadicScalar { field: self.field.clone(), val: -self.val, prec: self.prec, unit })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplication by `p^k`, exact.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.val += k;
        out
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            base = base.checked_mul(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Equality modulo the smaller of the two absolute precisions.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.checked_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Trace `Tr_{K/Q_p}(x)` as an element of `Q_p`.
    pub fn trace(&self) -> PadicScalar {
        let base = self.field.base_field();
        if self.is_exact_zero() {
            return PadicScalar::zero(&base);
        }
        if self.is_zero() {
            return PadicScalar::zero_with_precision(&base, self.val);
        }
        let t = self
            .unit
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (j, c)| acc + c * self.field.trace_of_power(j));
        PadicScalar::normalize(&base, self.val, vec![t], self.prec)
    }

    /// Fractional part of the trace as `(numerator, denominator)` with
    /// denominator `p^k` and `0 <= numerator < p^k`.
    pub fn trace_fraction(&self) -> Result<(BigInt, BigInt)> {
        let v = match self.valuation() {
            None => {
                return match self.abs_precision() {
                    Some(a) if a < 0 => Err(Error::PrecisionExhausted(format!(
                        "zero known only modulo p^{a}; character undetermined"
                    ))),
                    _ => Ok((BigInt::zero(), BigInt::one())),
                }
            }
            Some(v) => v,
        };
        if v >= 0 {
            return Ok((BigInt::zero(), BigInt::one()));
        }
        let k = (-v) as u32;
        if self.prec < k {
            return Err(Error::PrecisionExhausted(format!(
                "need {k} digits for the character, have {}",
                self.prec
            )));
        }
        let den = pow_p(self.field.p(), k);
        let t = self
            .unit
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (j, c)| acc + c * self.field.trace_of_power(j));
        Ok((t.mod_floor(&den), den))
    }

    /// Square root with the canonical choice of sign (smaller digit sequence,
    /// leading digit first). `NoRoot` when `x` is not a square in `K`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            let half = self.abs_precision().map(|a| a.div_euclid(2));
            return Ok(match half {
                None => Self::zero(&self.field),
                Some(h) => Self::zero_with_precision(&self.field, h),
            });
        }
        if self.val % 2 != 0 {
            return Err(Error::NoRoot(format!("odd valuation {}", self.val)));
        }
        let (root, prec) = unit_sqrt(&self.field, &self.unit, self.prec)?;
        let m = pow_p(self.field.p(), prec);
        let unit: Vec<BigInt> = root.into_iter().map(|c| c.mod_floor(&m)).collect();
        let r = PadicScalar { field: self.field.clone(), val: self.val / 2, prec, unit };
        let neg = r.neg_ref();
        Ok(if neg.canonical_cmp(&r) == Ordering::Less { neg } else { r })
    }
}

/// Inverse of a unit modulo `p^prec`: residue inverse by exponentiation, then Newton.
fn unit_inverse(field: &Field, unit: &[BigInt], prec: u32) -> Vec<BigInt> {
    let p = field.p();
    let pb = BigInt::from(p);
    let residue: Vec<BigInt> = unit.iter().map(|c| c.mod_floor(&pb)).collect();
    // u^{q-2} in F_q
    let mut e = field.q() - 2;
    let mut base = residue;
    let mut y = {
        let mut one = vec![BigInt::zero(); field.degree()];
        one[0] = BigInt::one();
        one
    };
    if field.q() == 2 {
        e = 0;
    }
    while e > 0 {
        if e & 1 == 1 {
            y = poly_mul_mod(&y, &base, field.modulus(), &pb);
        }
        base = poly_mul_mod(&base, &base, field.modulus(), &pb);
        e >>= 1;
    }
    let m = pow_p(p, prec);
    let mut known = 1u32;
    let two = BigInt::from(2);
    while known < prec {
        let uy = poly_mul_mod(unit, &y, field.modulus(), &m);
        let mut corr: Vec<BigInt> = uy.iter().map(|c| -c).collect();
        corr[0] += &two;
        y = poly_mul_mod(&y, &corr, field.modulus(), &m);
        known *= 2;
    }
    y.into_iter().map(|c| c.mod_floor(&m)).collect()
}

fn is_zero_mod(v: &[BigInt], m: &BigInt) -> bool {
    v.iter().all(|c| c.mod_floor(m).is_zero())
}

fn sub_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Square root of a unit known modulo `p^prec`. Returns the root and the
/// number of digits to which it is determined.
fn unit_sqrt(field: &Field, unit: &[BigInt], prec: u32) -> Result<(Vec<BigInt>, u32)> {
    let p = field.p();
    let f = field.degree();
    let (start_mod_exp, out_prec) = if p == 2 { (3u32, prec.saturating_sub(1)) } else { (1u32, prec) };
    if prec < start_mod_exp {
        return Err(Error::PrecisionExhausted(format!(
            "square roots in residue characteristic 2 need 3 digits, have {prec}"
        )));
    }
    // brute-force a root modulo p^start over all coordinate vectors
    let m0 = pow_p(p, start_mod_exp);
    let m0_u = m0.to_u64().unwrap();
    let total = m0_u.checked_pow(f as u32).ok_or_else(|| {
        Error::InvalidField("residue search space too large for square roots".into())
    })?;
    let mut found = None;
    for code in 0..total {
        let mut c = code;
        let mut y = Vec::with_capacity(f);
        for _ in 0..f {
            y.push(BigInt::from(c % m0_u));
            c /= m0_u;
        }
        if y.iter().all(|x| (x % BigInt::from(p)).is_zero()) {
            continue;
        }
        let sq = poly_mul_mod(&y, &y, field.modulus(), &m0);
        if is_zero_mod(&sub_vec(&sq, unit), &m0) {
            found = Some(y);
            break;
        }
    }
    let mut y = found.ok_or_else(|| Error::NoRoot("unit is not a square modulo p".into()))?;
    // Newton: y <- y - (y^2 - u) / (2y), computed modulo p^{prec+1}
    let work = pow_p(p, prec + 1);
    let target = pow_p(p, prec);
    for _ in 0..80 {
        let sq = poly_mul_mod(&y, &y, field.modulus(), &work);
        let diff = sub_vec(&sq, unit);
        if is_zero_mod(&diff, &target) {
            return Ok((y, out_prec));
        }
        let (num, den_unit) = if p == 2 {
            // y^2 - u is divisible by 2, and 2y = 2·y with y a unit
            let half: Vec<BigInt> = diff.iter().map(|c| c.mod_floor(&work) / BigInt::from(2)).collect();
            (half, y.clone())
        } else {
            let two_y: Vec<BigInt> = y.iter().map(|c| c * 2).collect();
            (diff, two_y)
        };
        let inv = unit_inverse(field, &den_unit.iter().map(|c| c.mod_floor(&work)).collect::<Vec<_>>(), prec + 1);
        let step = poly_mul_mod(&num, &inv, field.modulus(), &work);
        y = sub_vec(&y, &step).into_iter().map(|c| c.mod_floor(&work)).collect();
    }
    Err(Error::PrecisionExhausted("square-root iteration did not converge".into()))
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        if self.is_exact_zero() {
            return write!(f, "0");
        }
        if self.is_zero() {
            return write!(f, "O({p}^{})", self.val);
        }
        let digits = self.digits();
        let shown: Vec<String> = digits.iter().take(8).map(|d| d.to_string()).collect();
        let ell = if digits.len() > 8 { ",…" } else { "" };
        write!(f, "{p}^{}·[{}{}] + O({p}^{})", self.val, shown.join(","), ell, self.val + self.prec as i64)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

// Operator forms panic on mismatched fields; use the `checked_*` methods when
// operands come from different sources.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: &PadicScalar) -> PadicScalar {
                self.$checked(rhs).expect("operands must share field parameters")
            }
        }
        impl $tr<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: &PadicScalar) -> PadicScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Four-function arithmetic selector for the `padic_arith` entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn padic_arith(op: ArithOp, a: &PadicScalar, b: &PadicScalar) -> Result<PadicScalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Integer value of a `Q_p` element with nonnegative valuation, modulo `p^k`.
pub fn residue_integer(x: &PadicScalar, k: u32) -> Option<BigInt> {
    let m = pow_p(x.field().p(), k);
    match x.valuation() {
        None => Some(BigInt::zero()),
        Some(v) if v < 0 => None,
        Some(v) => {
            let shift = pow_p(x.field().p(), v as u32);
            Some((&x.unit_coords()[0] * shift).mod_floor(&m))
        }
    }
}

#[allow(dead_code)]
pub(crate) fn is_negative(x: &BigInt) -> bool {
    x.is_negative()
}
