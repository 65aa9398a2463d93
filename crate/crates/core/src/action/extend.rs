use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ball::{Ball, BallUnion};
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, PadicVector};

pub type CustomFn = Arc<dyn Fn(&PadicVector) -> Result<PadicVector> + Send + Sync>;

/// A map defined on `X ⊆ O^N` sending balls to balls.
#[derive(Clone)]
pub enum CoreMap {
    Identity,
    /// Piece `i` sends `domain[i] = c + p^r O^N` to `targets[i] = c' + p^{r'} O^N`
    /// by `c + p^r u ↦ c' + p^{r'} u`.
    Affine { domain: BallUnion, targets: Vec<Ball> },
    Custom { domain: BallUnion, map: CustomFn },
}

impl fmt::Debug for CoreMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreMap::Identity => write!(f, "Identity"),
            CoreMap::Affine { domain, targets } => {
                f.debug_struct("Affine").field("domain", domain).field("targets", targets).finish()
            }
            CoreMap::Custom { domain, .. } => f.debug_struct("Custom").field("domain", domain).finish(),
        }
    }
}

impl CoreMap {
    pub fn affine(pieces: Vec<(Ball, Ball)>) -> Result<Self> {
        let (src, dst): (Vec<Ball>, Vec<Ball>) = pieces.into_iter().unzip();
        Ok(CoreMap::Affine { domain: BallUnion::new(src)?, targets: dst })
    }

    pub fn domain(&self) -> Option<&BallUnion> {
        match self {
            CoreMap::Identity => None,
            CoreMap::Affine { domain, .. } | CoreMap::Custom { domain, .. } => Some(domain),
        }
    }

    /// Image of `x`, or `None` when `x ∉ X`.
    pub fn apply(&self, x: &PadicVector) -> Result<Option<PadicVector>> {
        let out = match self {
            CoreMap::Identity => return Ok(None),
            CoreMap::Affine { domain, targets } => match domain.locate(x)? {
                None => return Ok(None),
                Some(i) => {
                    let (src, dst) = (&domain.balls()[i], &targets[i]);
                    let u = x.checked_sub(&src.center)?.shift(-src.radius);
                    dst.center.checked_add(&u.shift(dst.radius))?
                }
            },
            CoreMap::Custom { domain, map } => {
                if !domain.contains(x)? {
                    return Ok(None);
                }
                map(x)?
            }
        };
        if out.valuation().is_some_and(|v| v < 0) {
            return Err(Error::EscapesPolydisk(format!("{:?}", x.comps())));
        }
        Ok(Some(out))
    }
}

/// Core map extended to all of `K^N`: the core map on `X`, its conjugate by
/// `s_ρ(x) = p^ρ x` on `B_ρ(0) ∖ O^N`, and the identity elsewhere.
#[derive(Clone, Debug)]
pub struct ExtendedMap {
    core: CoreMap,
    rho: i64,
    n: usize,
    field: Field,
}

/// `1 + max(max_support, largest radius exponent in X)`.
pub fn default_rho(max_support: i64, domain: Option<&BallUnion>) -> i64 {
    1 + max_support.max(domain.and_then(|d| d.max_radius()).unwrap_or(0)).max(0)
}

fn check_ball(b: &Ball, rho: i64, n: usize) -> Result<()> {
    if b.center.dim() != n {
        return Err(Error::InvalidAction("ball dimension differs from N".into()));
    }
    if b.radius < 0 || b.center.valuation().is_some_and(|v| v < 0) {
        return Err(Error::InvalidAction("X must lie in the unit polydisk".into()));
    }
    if b.radius > rho {
        return Err(Error::InvalidAction(format!(
            "ball radius exponent {} exceeds rho = {rho}",
            b.radius
        )));
    }
    if b.contains_origin() {
        return Err(Error::InvalidAction(format!("X meets p^{rho} O^N")));
    }
    Ok(())
}

/// Builds the piecewise extension. `X` must be a disjoint union of balls of
/// radius exponent at most `ρ` avoiding `p^ρ O^N`.
pub fn extend_action(core: CoreMap, rho: i64, n: usize, field: &Field) -> Result<ExtendedMap> {
    if rho < 1 {
        return Err(Error::InvalidAction("rho must be positive".into()));
    }
    if let Some(d) = core.domain() {
        for b in d.balls() {
            check_ball(b, rho, n)?;
        }
    }
    if let CoreMap::Affine { targets, domain } = &core {
        if targets.len() != domain.balls().len() {
            return Err(Error::InvalidAction("one target per domain ball".into()));
        }
        for b in targets {
            check_ball(b, rho, n)?;
        }
    }
    Ok(ExtendedMap { core, rho, n, field: field.clone() })
}

impl ExtendedMap {
    pub fn identity(field: &Field, n: usize, rho: i64) -> Self {
        ExtendedMap { core: CoreMap::Identity, rho, n, field: field.clone() }
    }

    pub fn rho(&self) -> i64 {
        self.rho
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn core(&self) -> &CoreMap {
        &self.core
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.core, CoreMap::Identity)
    }

    pub fn apply(&self, x: &PadicVector) -> Result<PadicVector> {
        match x.valuation() {
            None => Ok(x.clone()),
            Some(v) if v >= 0 => Ok(self.core.apply(x)?.unwrap_or_else(|| x.clone())),
            Some(v) if v >= -self.rho => {
                let y = x.shift(self.rho);
                Ok(self.core.apply(&y)?.map_or_else(|| x.clone(), |z| z.shift(-self.rho)))
            }
            Some(_) => Ok(x.clone()),
        }
    }
}

/// A finite group acting through extended maps, one per element.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    maps: Vec<ExtendedMap>,
}

impl GroupAction {
    /// Checks the action property `(gh)x = g(hx)` on sample points of each ball.
    pub fn new(group: FiniteGroup, maps: Vec<ExtendedMap>) -> Result<Self> {
        if maps.len() != group.order() {
            return Err(Error::InvalidAction("one map per group element".into()));
        }
        let action = GroupAction { group, maps };
        let pts = action.sample_points(64, 0x5eed);
        for g in 0..action.group.order() {
            for h in 0..action.group.order() {
                let gh = action.group.mul(g, h);
                for x in &pts {
                    let lhs = action.maps[gh].apply(x)?;
                    let rhs = action.maps[g].apply(&action.maps[h].apply(x)?)?;
                    if !lhs.approx_eq(&rhs) {
                        return Err(Error::InvalidAction(format!(
                            "action property fails for ({}, {})",
                            action.group.elements()[g],
                            action.group.elements()[h]
                        )));
                    }
                }
            }
        }
        Ok(action)
    }

    /// Every element acts as the identity.
    pub fn trivial(group: FiniteGroup, field: &Field, n: usize, rho: i64) -> Self {
        let maps = (0..group.order()).map(|_| ExtendedMap::identity(field, n, rho)).collect();
        GroupAction { group, maps }
    }

    /// `Z/ℓ` permuting the balls `A_j = p^j e_1 + p^{j+1} O^N` (`j = 1..ℓ`)
    /// cyclically. Needs `ρ ≥ ℓ + 1`, which is the default.
    pub fn demo_cycle(field: &Field, n: usize, ell: usize, rho: Option<i64>) -> Result<Self> {
        if ell < 1 || n < 1 {
            return Err(Error::InvalidAction("need ℓ ≥ 1 and N ≥ 1".into()));
        }
        let rho = rho.unwrap_or(ell as i64 + 1);
        let ball = |j: usize| {
            let mut coords = vec![PadicScalar::zero(field); n];
            coords[0] = PadicScalar::uniformizer_power(field, j as i64);
            Ball::new(PadicVector::new(coords).expect("same field"), j as i64 + 1)
        };
        let group = FiniteGroup::cyclic(ell)?;
        let mut maps = Vec::with_capacity(ell);
        for k in 0..ell {
            let core = if k == 0 {
                CoreMap::Identity
            } else {
                CoreMap::affine((1..=ell).map(|j| (ball(j), ball((j - 1 + k) % ell + 1))).collect())?
            };
            maps.push(extend_action(core, rho, n, field)?);
        }
        Self::new(group, maps)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn map(&self, g: usize) -> &ExtendedMap {
        &self.maps[g]
    }

    pub fn maps(&self) -> &[ExtendedMap] {
        &self.maps
    }

    pub fn rho(&self) -> i64 {
        self.maps.iter().map(|m| m.rho()).max().unwrap_or(1)
    }

    pub fn dim(&self) -> usize {
        self.maps[0].dim()
    }

    pub fn field(&self) -> &Field {
        self.maps[0].field()
    }

    pub fn apply(&self, g: usize, x: &PadicVector) -> Result<PadicVector> {
        self.maps[g].apply(x)
    }

    /// Deterministic sample points: random points in every ball of every
    /// core domain, their rescalings `p^{-ρ} x`, and generic points.
    pub fn sample_points(&self, budget: usize, seed: u64) -> Vec<PadicVector> {
        let field = self.field().clone();
        let n = self.dim();
        let rho = self.rho();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for m in &self.maps {
            if let Some(d) = m.core().domain() {
                for b in d.balls() {
                    for _ in 0..4 {
                        let u = random_vector(&field, n, 0, 3, &mut rng);
                        let x = b.center.checked_add(&u.shift(b.radius)).expect("same field");
                        out.push(x.shift(-m.rho()));
                        out.push(x);
                    }
                }
            }
        }
        while out.len() < budget {
            out.push(random_vector(&field, n, -rho - 2, rho + 2, &mut rng));
        }
        out
    }
}

/// Random exact vector whose coordinates have valuations in `[vmin, vmax]`
/// (or are zero), with a handful of random digits.
pub fn random_vector(field: &Field, n: usize, vmin: i64, vmax: i64, rng: &mut impl Rng) -> PadicVector {
    let q = field.q();
    let comps = (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 8) {
                return PadicScalar::zero(field);
            }
            let v = rng.gen_range(vmin..=vmax);
            let mut digits = vec![rng.gen_range(1..q)];
            digits.extend((0..5).map(|_| rng.gen_range(0..q)));
            PadicScalar::from_digits(field, v, &digits)
        })
        .collect();
    PadicVector::new(comps).expect("same field")
}

/// `p^v e_i + Σ_{j≠i} p^{v+1} e_j`: probes where the max norm is attained at a
/// single chosen coordinate.
pub fn axis_probes(field: &Field, n: usize, vmin: i64, vmax: i64) -> Vec<PadicVector> {
    let mut out = Vec::new();
    for v in vmin..=vmax {
        for i in 0..n {
            let comps = (0..n)
                .map(|j| {
                    let e = if i == j { v } else { v + 1 };
                    PadicScalar::from_coords(field, e, &unit_coords(field))
                })
                .collect();
            out.push(PadicVector::new(comps).expect("same field"));
        }
    }
    out
}

fn unit_coords(field: &Field) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); field.degree()];
    c[0] = BigInt::from(1);
    c
}
