use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which base the absolute value uses: `|x| = p^{-v(x)}` or `|x| = q^{-v(x)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormBase {
    #[serde(alias = "p")]
    P,
    #[serde(alias = "q")]
    Q,
}

/// Parameters of an unramified extension `K/Q_p` of degree `f`.
///
/// The ring of integers is `Z_p[θ]/(F(θ))` where `F` is the monic integer lift
/// (coefficients in `0..p`) of an irreducible polynomial over `Z/p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldParams {
    p: u64,
    f: usize,
    /// Monic modulus, coefficients low to high, length `f + 1`.
    modulus: Vec<u64>,
    q: u64,
    norm_base: NormBase,
    precision: u32,
    /// `Tr(θ^j)` for `j < 2f - 1`, exact integers.
    trace_powers: Vec<BigInt>,
}

pub type Field = Arc<FieldParams>;

pub const DEFAULT_PRECISION: u32 = 32;

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .field("norm_base", &self.norm_base)
            .field("precision", &self.precision)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldParams {
    /// `Q_p` with the default precision and `|p| = 1/p`.
    pub fn qp(p: u64) -> Result<Field> {
        Self::new(p, 1, None, None, DEFAULT_PRECISION)
    }

    /// Unramified extension of degree `f`. When `modulus` is `None` a default
    /// irreducible polynomial is chosen (`t^f - n` when one exists, otherwise
    /// the lexicographically smallest). `norm_base` defaults to `P` for `f = 1`
    /// and `Q` otherwise.
    pub fn new(
        p: u64,
        f: usize,
        modulus: Option<Vec<u64>>,
        norm_base: Option<NormBase>,
        precision: u32,
    ) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if precision == 0 {
            return Err(Error::InvalidField("precision must be positive".into()));
        }
        let q = p
            .checked_pow(f as u32)
            .ok_or_else(|| Error::InvalidField("q = p^f overflows".into()))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != f + 1 || m[f] != 1 {
                    return Err(Error::InvalidField(
                        "modulus must be monic of degree f (low-to-high coefficients)".into(),
                    ));
                }
                let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                if !is_irreducible(&m, p) {
                    return Err(Error::InvalidField(format!("modulus {m:?} is reducible mod {p}")));
                }
                m
            }
            None => default_modulus(p, f),
        };
        let norm_base = norm_base.unwrap_or(if f == 1 { NormBase::P } else { NormBase::Q });
        let trace_powers = trace_powers(&modulus, f);
        Ok(Arc::new(FieldParams { p, f, modulus, q, norm_base, precision, trace_powers }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.f
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn norm_base(&self) -> NormBase {
        self.norm_base
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Numeric value of the norm base (`p` or `q`).
    pub fn base(&self) -> u64 {
        match self.norm_base {
            NormBase::P => self.p,
            NormBase::Q => self.q,
        }
    }

    /// Same field with a different norm base.
    pub fn with_norm_base(&self, norm_base: NormBase) -> Field {
        let mut out = self.clone();
        out.norm_base = norm_base;
        Arc::new(out)
    }

    /// Same field with a different working precision.
    pub fn with_precision(&self, precision: u32) -> Field {
        let mut out = self.clone();
        out.precision = precision.max(1);
        Arc::new(out)
    }

    /// The base field `Q_p` at the same precision and norm base `P`.
    pub fn base_field(&self) -> Field {
        Arc::new(FieldParams {
            p: self.p,
            f: 1,
            modulus: vec![0, 1],
            q: self.p,
            norm_base: NormBase::P,
            precision: self.precision,
            trace_powers: vec![BigInt::one()],
        })
    }

    /// `Tr_{K/Q_p}(θ^j)` for `0 <= j <= 2f - 2`.
    pub fn trace_of_power(&self, j: usize) -> &BigInt {
        &self.trace_powers[j]
    }

    /// Trace form matrix `B[j][k] = Tr(θ^{j+k})`, used to pair coordinate vectors.
    pub fn trace_form(&self) -> Vec<Vec<BigInt>> {
        (0..self.f)
            .map(|j| (0..self.f).map(|k| self.trace_powers[j + k].clone()).collect())
            .collect()
    }

    /// Integer encoding `Σ c_j p^j` of a residue-field element with coordinates `c`.
    pub fn encode_residue(&self, coords: &[u64]) -> u64 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn decode_residue(&self, mut code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.f);
        for _ in 0..self.f {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }
}

// ---- polynomials over Z/p (low to high) ----

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return r;
    }
    for i in (db..r.len()).rev() {
        let coef = r[i] * lead_inv % p;
        if coef == 0 {
            continue;
        }
        for (k, &bk) in b.iter().enumerate() {
            let idx = i - db + k;
            r[idx] = (r[idx] + p - coef * bk % p) % p;
        }
    }
    r.truncate(db.max(1));
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Irreducibility of a monic polynomial over `Z/p` by trial division with all
/// monic polynomials of degree at most half.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            let r = poly_rem(m, &g, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    // t^f - n
    for n in 1..p {
        let mut m = vec![0u64; f + 1];
        m[0] = (p - n) % p;
        m[f] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    let count = p.pow(f as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(f + 1);
        let mut c = code;
        for _ in 0..f {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Traces of `θ^j` computed as traces of the multiplication matrices over Z.
fn trace_powers(modulus: &[u64], f: usize) -> Vec<BigInt> {
    let modulus: Vec<BigInt> = modulus.iter().map(|&c| BigInt::from(c)).collect();
    let reduce = |mut a: Vec<BigInt>| -> Vec<BigInt> {
        while a.len() > f {
            let top = a.pop().unwrap();
            let shift = a.len() - f;
            for i in 0..f {
                a[shift + i] -= &top * &modulus[i];
            }
        }
        a.resize(f, BigInt::zero());
        a
    };
    (0..(2 * f - 1))
        .map(|j| {
            (0..f)
                .map(|i| {
                    let mut mono = vec![BigInt::zero(); i + j + 1];
                    mono[i + j] = BigInt::one();
                    reduce(mono)[i].clone()
                })
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .collect()
}
