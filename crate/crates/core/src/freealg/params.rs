use crate::quiver::{DegreeVector, Gen};

use super::FreeAlgError;

/// Quiver shape and degree truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverParams {
    pub omega: u32,
    pub r: usize,
    pub max_i: u32,
    pub max_j: u32,
    pub max_loop: u32,
}

impl QuiverParams {
    pub fn new(omega: u32, r: usize, max_i: u32, max_j: u32, max_loop: u32) -> Result<Self, FreeAlgError> {
        let p = Self { omega, r, max_i, max_j, max_loop };
        p.validate()?;
        Ok(p)
    }

    /// `omega = 2` with `max_loop = max_i`.
    pub fn standard(r: usize, max_i: u32, max_j: u32) -> Self {
        Self { omega: 2, r, max_i, max_j, max_loop: max_i.max(1) }
    }

    pub fn validate(&self) -> Result<(), FreeAlgError> {
        if self.omega < 2 {
            return Err(FreeAlgError::InvalidParams(format!("omega must be at least 2, got {}", self.omega)));
        }
        if self.max_loop < 1 {
            return Err(FreeAlgError::InvalidParams("max_loop must be at least 1".into()));
        }
        if self.max_i > 0 && self.max_loop > self.max_i {
            return Err(FreeAlgError::InvalidParams(format!(
                "max_loop {} exceeds max_i {}",
                self.max_loop, self.max_i
            )));
        }
        Ok(())
    }

    /// Generators in a fixed order: imaginary by size, then real by color.
    pub fn generators(&self) -> Vec<Gen> {
        (1..=self.max_loop.min(self.max_i.max(1))).map(Gen::Imag).chain((1..=self.r as u32).map(Gen::Real)).collect()
    }

    pub fn top(&self) -> DegreeVector {
        DegreeVector::new(self.max_i, vec![self.max_j; self.r])
    }

    pub fn in_box(&self, d: &DegreeVector) -> bool {
        d.r() == self.r && d.le(&self.top())
    }

    pub fn admits(&self, g: Gen) -> bool {
        match g {
            Gen::Imag(l) => l >= 1 && l <= self.max_loop,
            Gen::Real(k) => k >= 1 && k as usize <= self.r,
        }
    }
}
