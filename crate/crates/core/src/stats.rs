//! Colour-index distribution of a colouring and its exact mean and variance.
//!
//! A colouring induces a random variable: the colour index of a uniformly
//! chosen vertex, with colours numbered so that larger classes get smaller
//! indices. Its pmf is `f(i) = |class i| / |V|`.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Decimal precision used when rendering statistics for humans.
pub const DECIMAL_DIGITS: u32 = 6;

/// Colour-class sizes, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorDistribution {
    sizes: Vec<usize>,
    n_vertices: usize,
}

impl ColorDistribution {
    /// Sorts the sizes into non-increasing order; every size must be positive.
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::input("a distribution needs at least one class"));
        }
        if sizes.contains(&0) {
            return Err(Error::input("colour classes must be nonempty"));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let n_vertices = sizes.iter().sum();
        Ok(ColorDistribution { sizes, n_vertices })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn is_equitable(&self) -> bool {
        self.sizes[0] - self.sizes[self.sizes.len() - 1] <= 1
    }
}

pub fn distribution_of(c: &Coloring) -> ColorDistribution {
    ColorDistribution::new(c.class_sizes()).expect("colourings use every colour")
}

pub fn pmf(d: &ColorDistribution) -> Vec<Rational> {
    let n = d.n_vertices() as u64;
    d.sizes().iter().map(|&s| Rational::new(s as u64, n)).collect()
}

/// Σ i·f(i) over 1-based colour indices.
pub fn mean(d: &ColorDistribution) -> Rational {
    pmf(d).into_iter().enumerate().map(|(i, f)| Rational::from((i + 1) as u64) * f).sum()
}

/// Σ i²·f(i) − (Σ i·f(i))².
pub fn variance(d: &ColorDistribution) -> Rational {
    let second: Rational =
        pmf(d).into_iter().enumerate().map(|(i, f)| Rational::from(((i + 1) * (i + 1)) as u64) * f).sum();
    let m = mean(d);
    second - &m * &m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Summed from an actual colour distribution.
    Computed,
    /// A published closed-form polynomial.
    ClosedForm,
    /// The corrected odd-wheel variance polynomial.
    Corrected,
}

/// Mean and variance of a colouring. Equality compares the two values and
/// ignores provenance.
#[derive(Clone, Debug)]
pub struct ChromaticStats {
    pub mean: Rational,
    pub variance: Rational,
    pub provenance: Provenance,
}

impl PartialEq for ChromaticStats {
    fn eq(&self, other: &Self) -> bool {
        self.mean == other.mean && self.variance == other.variance
    }
}

impl Eq for ChromaticStats {}

impl ChromaticStats {
    pub fn of(d: &ColorDistribution) -> Self {
        ChromaticStats { mean: mean(d), variance: variance(d), provenance: Provenance::Computed }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StatsJson::from(self)).expect("stats serialise")
    }
}

#[derive(Serialize)]
struct StatsJson<'a> {
    mean: &'a Rational,
    variance: &'a Rational,
    mean_decimal: String,
    variance_decimal: String,
}

impl<'a> From<&'a ChromaticStats> for StatsJson<'a> {
    fn from(s: &'a ChromaticStats) -> Self {
        StatsJson {
            mean: &s.mean,
            variance: &s.variance,
            mean_decimal: s.mean.to_decimal(DECIMAL_DIGITS),
            variance_decimal: s.variance.to_decimal(DECIMAL_DIGITS),
        }
    }
}

/// Statistics of any equitable `k`-colouring of an `n`-vertex graph.
///
/// The class sizes are forced (`r = n mod k` classes of `⌊n/k⌋ + 1`, the
/// rest of `⌊n/k⌋`), so the moments follow from arithmetic-series sums
/// without building the distribution.
pub fn stats_from_counts(n: usize, k: usize) -> Result<ChromaticStats> {
    if k == 0 || k > n {
        return Err(Error::input(format!("k = {k} is outside 1..={n}")));
    }
    let (q, r) = ((n / k) as u64, (n % k) as u64);
    let k = k as u64;
    let s1 = |m: u64| Rational::from(m * (m + 1) / 2);
    let s2 = |m: u64| Rational::from(m * (m + 1) * (2 * m + 1) / 6);
    let total = Rational::from(n as u64);

    // r classes of q+1 at indices 1..=r, then k-r classes of q
    let first = Rational::from(q + 1) * s1(r) + Rational::from(q) * (s1(k) - s1(r));
    let second = Rational::from(q + 1) * s2(r) + Rational::from(q) * (s2(k) - s2(r));
    let mean = first / &total;
    let variance = second / &total - &mean * &mean;
    Ok(ChromaticStats { mean, variance, provenance: Provenance::Computed })
}
