//! Directed multigraphs given by non-negative integer adjacency matrices.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::intpoly::IntLaurentPoly;
use crate::matrix::IntMatrix;
use crate::rootloc::{self, RootEnclosure, Verdict};
use crate::traintrack;

/// `γ₀⁴ = ((3 + √5)/2)²`.
pub const GOLDEN_FOURTH: f64 = 6.854101966249685;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl Digraph {
    pub fn new(adj: Vec<Vec<u64>>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return domain("a digraph needs at least one vertex");
        }
        if adj.iter().any(|r| r.len() != n) {
            return domain("adjacency matrix is not square");
        }
        Ok(Digraph { n, adj })
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let adj = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| u64::try_from(x).map_err(|_| Error::Domain(format!("negative multiplicity {x}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Digraph::new(adj)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adj(&self) -> &[Vec<u64>] {
        &self.adj
    }

    fn reaches_all(&self, transpose: bool) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                let m = if transpose { self.adj[v][u] } else { self.adj[u][v] };
                if m > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reaches_all(false) && self.reaches_all(true)
    }

    /// Gcd of cycle lengths of a strongly connected digraph, read off BFS
    /// levels from vertex 0 as the gcd of `level(u) + 1 - level(v)` over edges.
    pub fn period(&self) -> Option<u64> {
        if !self.is_strongly_connected() {
            return None;
        }
        let mut level = vec![u64::MAX; self.n];
        level[0] = 0;
        let mut q = VecDeque::from([0]);
        while let Some(u) = q.pop_front() {
            for v in 0..self.n {
                if self.adj[u][v] > 0 && level[v] == u64::MAX {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        let mut g = 0u64;
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adj[u][v] > 0 {
                    g = g.gcd(&(level[u] + 1).abs_diff(level[v]));
                }
            }
        }
        Some(g)
    }

    pub fn is_perron_frobenius(&self) -> bool {
        self.period() == Some(1)
    }

    /// `det(tI - A)` by Berkowitz's division-free recurrence.
    pub fn charpoly(&self) -> IntLaurentPoly {
        let a: Vec<Vec<BigInt>> = self
            .adj
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        // Descending coefficients of the charpoly of the leading k×k block.
        let mut c = vec![BigInt::from(1)];
        for k in 0..self.n {
            let mut col = vec![BigInt::from(1), -a[k][k].clone()];
            let mut v: Vec<BigInt> = (0..k).map(|i| a[i][k].clone()).collect();
            for _ in 0..k {
                let dot: BigInt = (0..k).map(|j| &a[k][j] * &v[j]).sum();
                col.push(-dot);
                v = (0..k).map(|i| (0..k).map(|j| &a[i][j] * &v[j]).sum()).collect();
            }
            c = (0..k + 2)
                .map(|i| (0..=i.min(k)).map(|j| &col[i - j] * &c[j]).sum())
                .collect();
        }
        c.reverse();
        IntLaurentPoly::from_dense("t", &c)
    }

    fn require_pf(&self) -> Result<()> {
        if self.is_perron_frobenius() {
            Ok(())
        } else {
            domain("the digraph is not Perron-Frobenius (strongly connected and aperiodic)")
        }
    }

    pub fn spectral_radius(&self, tol: f64) -> Result<RootEnclosure> {
        self.require_pf()?;
        rootloc::house(&self.charpoly(), tol)
    }

    /// Edge count minus vertex count.
    pub fn complexity(&self) -> i64 {
        let e: u64 = self.adj.iter().flatten().sum();
        e as i64 - self.n as i64
    }

    /// Whether `complexity <= λ^(2n) - 1`.
    pub fn ham_song_check(&self, tol: f64) -> Result<Verdict> {
        let lam = self.spectral_radius(tol)?.powi(2 * self.n as u32);
        let c = self.complexity() as f64;
        Ok(if lam.lo - 1.0 >= c {
            Verdict::True
        } else if lam.hi - 1.0 < c {
            Verdict::False
        } else {
            Verdict::Indeterminate
        })
    }

    /// Whether `λ^n >= γ₀⁴ - 1e-9`, where `n` is the matrix size (an upper
    /// bound for the Perron-Frobenius degree). The bound holds for
    /// reciprocal Perron units, so other spectra are rejected.
    pub fn mcmullen_check(&self, tol: f64) -> Result<Verdict> {
        let p = self.charpoly();
        if !p.is_reciprocal()? {
            return domain("the characteristic polynomial is not reciprocal");
        }
        let lam = self.spectral_radius(tol)?.powi(self.n as u32);
        let bound = GOLDEN_FOURTH - 1e-9;
        Ok(if lam.lo >= bound {
            Verdict::True
        } else if lam.hi < bound {
            Verdict::False
        } else {
            Verdict::Indeterminate
        })
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            adj: Vec<Vec<u64>>,
        }
        let r = Raw::deserialize(d)?;
        if r.n != r.adj.len() {
            return Err(serde::de::Error::custom(format!(
                "n = {} but adj has {} rows",
                r.n,
                r.adj.len()
            )));
        }
        Digraph::new(r.adj).map_err(serde::de::Error::custom)
    }
}

/// Cycle `0 -> 1 -> ... -> n-1 -> 0` plus the chord `n-1 -> 1`; its
/// characteristic polynomial is `t^n - t - 1`.
pub fn min_dilatation_digraph(n: usize) -> Result<Digraph> {
    if n < 2 {
        return domain(format!("need n >= 2, got {n}"));
    }
    let mut adj = vec![vec![0u64; n]; n];
    for i in 0..n - 1 {
        adj[i][i + 1] = 1;
    }
    adj[n - 1][0] += 1;
    adj[n - 1][1] += 1;
    Digraph::new(adj)
}

/// Digraph of the transition matrix of the n-th family circuit.
pub fn lt_digraph(n: usize) -> Result<Digraph> {
    let c = traintrack::family_circuit(n)?;
    Ok(traintrack::circuit_transition_matrix(&c)?.1)
}
