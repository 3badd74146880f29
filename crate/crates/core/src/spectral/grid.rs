use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square periodic box `[0, L)²` sampled on `n × n` points.
///
/// Index `j` along either axis carries the integer mode `m_j ∈ [−n/2, n/2)`
/// and the wavenumber `k_j = (2π/L)·m_j`. The physical sample `j` sits at
/// `x_j = j·L/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct GridSpec {
    n: usize,
    box_length: f64,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    n: usize,
    box_length: f64,
}

impl TryFrom<GridRepr> for GridSpec {
    type Error = Error;
    fn try_from(r: GridRepr) -> Result<Self> {
        GridSpec::new(r.n, r.box_length)
    }
}

impl From<GridSpec> for GridRepr {
    fn from(g: GridSpec) -> Self {
        GridRepr {
            n: g.n,
            box_length: g.box_length,
        }
    }
}

impl GridSpec {
    pub fn new(n: usize, box_length: f64) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "n must be even and at least 8, got {n}"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box length must be positive and finite, got {box_length}"
            )));
        }
        Ok(GridSpec { n, box_length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Number of samples (and coefficients), `n²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.box_length / self.n as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dx()
    }

    /// Signed integer mode for storage index `j`.
    pub fn mode(&self, j: usize) -> i64 {
        let half = self.n / 2;
        if j < half {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Storage index of the signed mode `m` (taken modulo `n`).
    pub fn index_of_mode(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    pub fn wavenumber_unit(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    pub fn wavenumber(&self, j: usize) -> f64 {
        self.wavenumber_unit() * self.mode(j) as f64
    }

    /// True when `j` holds the unpaired mode `−n/2`.
    pub fn is_nyquist(&self, j: usize) -> bool {
        j == self.n / 2
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }

    pub fn center(&self) -> f64 {
        0.5 * self.box_length
    }

    /// Flat row-major offset; the first index runs along x.
    #[inline]
    pub fn offset(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n + i2
    }

    /// Per-mode `(k₁, k₂)` in storage order.
    pub fn wavevectors(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.n).flat_map(move |i1| {
            let k1 = self.wavenumber(i1);
            (0..self.n).map(move |i2| (k1, self.wavenumber(i2)))
        })
    }
}
