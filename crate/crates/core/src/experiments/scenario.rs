use std::fmt;

use crate::chain::{impurity_pattern, ChainSpec};
use crate::error::{Error, Result};

/// How a scan parameter `J` is turned into site factors.
#[derive(Clone, Debug, PartialEq)]
pub enum CouplingRule {
    /// `J` at one site (1-based), 1 elsewhere.
    SingleImpurity { site: usize },
    /// `J₁ = Jₙ = J`, interior sites 1.
    Boundary,
    /// A fixed chain; the scan parameter is ignored.
    Fixed(Vec<f64>),
}

impl fmt::Display for CouplingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingRule::SingleImpurity { site } => write!(f, "impurity at site {site}"),
            CouplingRule::Boundary => write!(f, "boundary impurities"),
            CouplingRule::Fixed(j) => write!(f, "fixed {j:?}"),
        }
    }
}

/// A named chain family with the site pairs to report.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub n: usize,
    pub rule: CouplingRule,
    pub pairs: Vec<(usize, usize)>,
    /// Temperatures used when the caller does not supply a grid.
    pub temperatures: Vec<f64>,
}

/// Names accepted by [`Scenario::named`].
pub const SCENARIO_NAMES: [&str; 5] = ["fig1", "fig2", "fig4", "fig5", "six-qubit"];

pub const SIX_QUBIT_FACTORS: [f64; 6] = [0.1, 1.0, 10.0, 10.0, 1.0, 0.1];

impl Scenario {
    pub fn single_impurity(n: usize, site: usize) -> Result<Self> {
        impurity_pattern(n, site, 1.0)?;
        Ok(Scenario {
            name: format!("impurity-n{n}-site{site}"),
            n,
            rule: CouplingRule::SingleImpurity { site },
            pairs: all_pairs(n),
            temperatures: default_t_grid(),
        })
    }

    pub fn boundary(n: usize) -> Result<Self> {
        ChainSpec::uniform(n)?;
        Ok(Scenario {
            name: format!("boundary-n{n}"),
            n,
            rule: CouplingRule::Boundary,
            pairs: all_pairs(n),
            temperatures: default_t_grid(),
        })
    }

    pub fn fixed(name: impl Into<String>, factors: Vec<f64>) -> Result<Self> {
        let n = ChainSpec::new(factors.clone())?.n();
        Ok(Scenario {
            name: name.into(),
            n,
            rule: CouplingRule::Fixed(factors),
            pairs: all_pairs(n),
            temperatures: vec![0.0],
        })
    }

    /// Built-in configurations. `fig1`/`fig2` take the impurity site
    /// (default 1); the others ignore it.
    pub fn named(name: &str, impurity_site: Option<usize>) -> Result<Self> {
        let site = impurity_site.unwrap_or(1);
        let mut s = match name {
            "fig1" => Self::single_impurity(3, site)?,
            "fig2" => Self::single_impurity(4, site)?,
            "fig4" => {
                let mut s = Self::single_impurity(4, 1)?;
                s.pairs = vec![(1, 2), (2, 3), (3, 4), (1, 4)];
                s
            }
            "fig5" => {
                let mut s = Self::boundary(4)?;
                s.pairs = vec![(1, 2), (2, 3), (3, 4), (1, 4)];
                s.temperatures = vec![0.0, 0.05, 0.1];
                s
            }
            "six-qubit" => Self::fixed("six-qubit", SIX_QUBIT_FACTORS.to_vec())?,
            other => {
                return Err(Error::input(format!(
                    "unknown scenario '{other}'; valid scenarios: {}",
                    SCENARIO_NAMES.join(", ")
                )))
            }
        };
        s.name = name.to_string();
        Ok(s)
    }

    pub fn with_pairs(mut self, pairs: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &pairs {
            if !(1 <= i && i < j && j <= self.n) {
                return Err(Error::input(format!(
                    "pair ({i}, {j}) must satisfy 1 <= i < j <= {}",
                    self.n
                )));
            }
        }
        self.pairs = pairs;
        Ok(self)
    }

    /// Site factors for scan parameter `j`.
    pub fn chain(&self, j: f64) -> Result<ChainSpec> {
        match &self.rule {
            CouplingRule::SingleImpurity { site } => impurity_pattern(self.n, *site, j),
            CouplingRule::Boundary => {
                let mut f = vec![1.0; self.n];
                f[0] = j;
                f[self.n - 1] = j;
                ChainSpec::new(f)
            }
            CouplingRule::Fixed(f) => ChainSpec::new(f.clone()),
        }
    }

    /// True when every chain of the family is mirror symmetric.
    pub fn is_palindromic(&self) -> bool {
        match &self.rule {
            CouplingRule::SingleImpurity { site } => 2 * site == self.n + 1,
            CouplingRule::Boundary => true,
            CouplingRule::Fixed(f) => f.iter().eq(f.iter().rev()),
        }
    }
}

/// Every pair `i < j` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::input(format!(
            "grid [{lo}, {hi}] with {steps} steps is empty or malformed"
        )));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k == steps - 1 {
                hi
            } else {
                lo + h * k as f64
            }
        })
        .collect())
}

/// 61 points on `[0, 3]`.
pub fn default_j_grid() -> Vec<f64> {
    linspace(0.0, 3.0, 61).expect("static grid")
}

/// The ground-multiplet limit, a geometric refinement near zero, and the
/// coarse values 0.05, 0.1, 0.5, 1.
pub fn default_t_grid() -> Vec<f64> {
    vec![0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.5, 1.0]
}

/// Site factors decreasing tenfold per site from the middle outwards, with
/// boundary value 0.1: `(0.1, 1, 1, 0.1)`, `(0.1, 1, 10, 10, 1, 0.1)`, ...
pub fn monotone_profile(n: usize) -> Result<Vec<f64>> {
    if !n.is_multiple_of(2) || !(4..=12).contains(&n) {
        return Err(Error::input(format!(
            "monotone profile needs even n in 4..=12, got {n}"
        )));
    }
    let half: Vec<f64> = (0..n / 2).map(|k| 0.1 * 10f64.powi(k as i32)).collect();
    Ok(half.iter().chain(half.iter().rev()).copied().collect())
}
