use crate::error::{Error, Result};
use crate::padic::PadicVector;

/// Ball `c + p^r O^N` (radius `p^{-r}` in the `p`-normalized max norm).
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: PadicVector,
    pub radius: i64,
}

impl Ball {
    pub fn new(center: PadicVector, radius: i64) -> Self {
        Ball { center, radius }
    }

    pub fn contains(&self, x: &PadicVector) -> Result<bool> {
        let d = x.checked_sub(&self.center)?;
        Ok(d.valuation().is_none_or(|v| v >= self.radius))
    }

    /// Balls in an ultrametric space are disjoint or nested.
    pub fn intersects(&self, other: &Ball) -> Result<bool> {
        let r = self.radius.min(other.radius);
        let d = self.center.checked_sub(&other.center)?;
        Ok(d.valuation().is_none_or(|v| v >= r))
    }

    pub fn contains_origin(&self) -> bool {
        self.center.valuation().is_none_or(|v| v >= self.radius)
    }
}

/// Finite union of pairwise disjoint balls.
#[derive(Debug, Clone, Default)]
pub struct BallUnion {
    balls: Vec<Ball>,
}

impl BallUnion {
    pub fn new(balls: Vec<Ball>) -> Result<Self> {
        for (i, a) in balls.iter().enumerate() {
            for b in &balls[i + 1..] {
                if a.intersects(b)? {
                    return Err(Error::InvalidAction("balls of X must be disjoint".into()));
                }
            }
        }
        Ok(BallUnion { balls })
    }

    pub fn empty() -> Self {
        BallUnion { balls: Vec::new() }
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    /// Index of the ball containing `x`.
    pub fn locate(&self, x: &PadicVector) -> Result<Option<usize>> {
        for (i, b) in self.balls.iter().enumerate() {
            if b.contains(x)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, x: &PadicVector) -> Result<bool> {
        Ok(self.locate(x)?.is_some())
    }

    /// Largest radius exponent among the balls.
    pub fn max_radius(&self) -> Option<i64> {
        self.balls.iter().map(|b| b.radius).max()
    }
}
