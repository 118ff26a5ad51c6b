//! Brute-force ground truth: direct enumeration of plane partitions (with
//! symmetry filters) and of Ferrers diagrams.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ensembles::{EnsembleSpec, VolumeDistribution};
use crate::error::{Error, Result};
use crate::qpoly::ExactPolynomial;

/// `r x s` array with entries in `0..=t`, weakly decreasing along rows and
/// down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePartitionArray {
    rows: usize,
    cols: usize,
    parts: Vec<usize>,
}

impl PlanePartitionArray {
    pub fn new(rows: usize, cols: usize, parts: Vec<usize>) -> Option<Self> {
        if parts.len() != rows * cols {
            return None;
        }
        let array = PlanePartitionArray { rows, cols, parts };
        array.is_monotone().then_some(array)
    }

    /// Entry at 0-based `(i, j)`.
    pub fn part(&self, i: usize, j: usize) -> usize {
        self.parts[i * self.cols + j]
    }

    pub fn volume(&self) -> usize {
        self.parts.iter().sum()
    }

    fn is_monotone(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                (j == 0 || self.part(i, j) <= self.part(i, j - 1))
                    && (i == 0 || self.part(i, j) <= self.part(i - 1, j))
            })
        })
    }

    /// Cube pile invariant under `(i, j, k) -> (j, i, k)`.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.part(i, j) == self.part(j, i)))
    }

    /// Cube pile invariant under the coordinate 3-cycle. With cubes
    /// `(i, j, k)`, `k <= p[i][j]` (1-based), the pile is invariant iff every
    /// cube's image `(j, k, i)` is again in the pile.
    pub fn is_cyclically_symmetric(&self, t: usize) -> bool {
        if self.rows != self.cols || self.rows != t {
            return false;
        }
        let n = self.rows;
        (0..n).all(|i| {
            (0..n).all(|j| (1..=self.part(i, j)).all(|k| self.part(j, k - 1) > i))
        })
    }
}

/// Caps on brute-force sizes. Exceeding one is an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_side: usize,
    pub max_box_volume: usize,
    pub max_cspp_side: usize,
    pub max_ferrers_side: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_side: 4,
            max_box_volume: 36,
            max_cspp_side: 4,
            max_ferrers_side: 8,
        }
    }
}

/// Histogram produced by enumeration rather than by a generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleDistribution {
    distribution: VolumeDistribution,
}

impl OracleDistribution {
    fn from_histogram(spec: EnsembleSpec, histogram: Vec<u64>) -> Self {
        let counts = ExactPolynomial::from_coeffs(histogram.into_iter().map(BigInt::from).collect());
        OracleDistribution {
            distribution: VolumeDistribution::new(spec, counts),
        }
    }

    pub fn distribution(&self) -> &VolumeDistribution {
        &self.distribution
    }

    pub fn into_distribution(self) -> VolumeDistribution {
        self.distribution
    }

    pub fn total(&self) -> &BigInt {
        self.distribution.total()
    }

    pub fn counts(&self) -> &ExactPolynomial {
        self.distribution.counts()
    }
}

/// Calls `visit` on every plane partition in the `r x s x t` box, filling
/// row by row with each cell bounded by its left and upper neighbours.
pub fn for_each_plane_partition<F: FnMut(&PlanePartitionArray)>(r: usize, s: usize, t: usize, mut visit: F) {
    let mut array = PlanePartitionArray {
        rows: r,
        cols: s,
        parts: vec![0; r * s],
    };
    fill(&mut array, 0, t, &mut visit);
}

fn fill<F: FnMut(&PlanePartitionArray)>(array: &mut PlanePartitionArray, cell: usize, t: usize, visit: &mut F) {
    if cell == array.parts.len() {
        visit(array);
        return;
    }
    let (i, j) = (cell / array.cols, cell % array.cols);
    let mut bound = t;
    if j > 0 {
        bound = bound.min(array.parts[cell - 1]);
    }
    if i > 0 {
        bound = bound.min(array.parts[cell - array.cols]);
    }
    for v in 0..=bound {
        array.parts[cell] = v;
        fill(array, cell + 1, t, visit);
    }
    array.parts[cell] = 0;
}

fn histogram_where<P: Fn(&PlanePartitionArray) -> bool>(r: usize, s: usize, t: usize, keep: P) -> Vec<u64> {
    let mut histogram = vec![0u64; r * s * t + 1];
    for_each_plane_partition(r, s, t, |a| {
        if keep(a) {
            histogram[a.volume()] += 1;
        }
    });
    histogram
}

fn check_box(caps: &OracleCaps, r: usize, s: usize, t: usize) -> Result<()> {
    let side = r.max(s).max(t);
    if side > caps.max_side || r * s * t > caps.max_box_volume {
        return Err(Error::OracleCapExceeded(format!(
            "box {r}x{s}x{t} exceeds side {} / volume {}",
            caps.max_side, caps.max_box_volume
        )));
    }
    Ok(())
}

pub fn enumerate_pp(r: usize, s: usize, t: usize, caps: &OracleCaps) -> Result<OracleDistribution> {
    let spec = EnsembleSpec::pp(r, s, t)?;
    check_box(caps, r, s, t)?;
    Ok(OracleDistribution::from_histogram(spec, histogram_where(r, s, t, |_| true)))
}

pub fn enumerate_spp(r: usize, t: usize, caps: &OracleCaps) -> Result<OracleDistribution> {
    let spec = EnsembleSpec::spp(r, t)?;
    check_box(caps, r, r, t)?;
    Ok(OracleDistribution::from_histogram(
        spec,
        histogram_where(r, r, t, PlanePartitionArray::is_symmetric),
    ))
}

pub fn enumerate_cspp(r: usize, caps: &OracleCaps) -> Result<OracleDistribution> {
    let spec = EnsembleSpec::cspp(r)?;
    if r > caps.max_cspp_side {
        return Err(Error::OracleCapExceeded(format!(
            "cyclically symmetric side {r} exceeds {}",
            caps.max_cspp_side
        )));
    }
    Ok(OracleDistribution::from_histogram(
        spec,
        histogram_where(r, r, r, |a| a.is_cyclically_symmetric(r)),
    ))
}

/// Ferrers diagrams with exactly `h` rows and `w` columns: row lengths
/// `w = l_1 >= l_2 >= .. >= l_h >= 1`, histogrammed by area.
pub fn enumerate_ferrers(h: usize, w: usize, caps: &OracleCaps) -> Result<OracleDistribution> {
    let spec = EnsembleSpec::ferrers_hw(h, w)?;
    if h > caps.max_ferrers_side || w > caps.max_ferrers_side {
        return Err(Error::OracleCapExceeded(format!(
            "Ferrers rectangle {h}x{w} exceeds side {}",
            caps.max_ferrers_side
        )));
    }
    let mut histogram = vec![0u64; h * w + 1];
    let mut rows = vec![0usize; h];
    rows[0] = w;
    ferrers_rows(&mut rows, 1, w, &mut histogram);
    Ok(OracleDistribution::from_histogram(spec, histogram))
}

fn ferrers_rows(rows: &mut [usize], idx: usize, area: usize, histogram: &mut [u64]) {
    if idx == rows.len() {
        histogram[area] += 1;
        return;
    }
    for len in 1..=rows[idx - 1] {
        rows[idx] = len;
        ferrers_rows(rows, idx + 1, area + len, histogram);
    }
}
