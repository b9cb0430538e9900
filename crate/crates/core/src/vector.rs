use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-dimensional real coordinate vector.
///
/// Coordinates are validated to be finite at construction; all arithmetic
/// stays inside `f64`. Serialized as a plain JSON array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("vector must have dim >= 1".into()));
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(Vector(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[index] = 1.0;
        Vector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, t: f64) -> Vector {
        Vector(self.0.iter().map(|a| t * a).collect())
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + t * b)
                .collect(),
        )
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;
    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Vec<f64> {
        v.0
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(Vector::new(vec![1.0, f64::NAN]).is_err());
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
        assert!(Vector::new(vec![]).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = Vector::from_slice(&[1.0, 2.0]).unwrap();
        let y = Vector::from_slice(&[3.0, -1.0]).unwrap();
        assert_eq!(x.plus(&y).as_slice(), &[4.0, 1.0]);
        assert_eq!(x.minus(&y).as_slice(), &[-2.0, 3.0]);
        assert_eq!(x.add_scaled(2.0, &y).as_slice(), &[7.0, 0.0]);
        assert_eq!(x.dot(&y), 1.0);
    }

    #[test]
    fn serde_roundtrip_is_bit_exact() {
        let x = Vector::from_slice(&[1.0 / 3.0, -0.1, 7.25]).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        let back: Vector = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
    }
}
