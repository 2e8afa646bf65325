//! Certified enclosures for root moduli of integer polynomials.
//!
//! Roots are approximated in double precision and then certified with
//! inclusion discs (see [`discs`]). A dominant real root is additionally
//! pinned down by exact sign evaluation and bisection, which is how narrow
//! enclosures are obtained. Anything that cannot be certified is reported as
//! [`Error::Uncertified`] or [`Verdict::Indeterminate`], never guessed.

mod dense;
mod discs;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::intpoly::IntLaurentPoly;

use dense::Dense;
use discs::Disc;

pub const DEFAULT_TOL: f64 = 1e-10;

/// A certified interval `[lo, hi]` for a real quantity, built to width `tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl RootEnclosure {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Self {
        debug_assert!(lo <= hi);
        RootEnclosure { lo, hi, tol }
    }

    pub fn point(x: f64) -> Self {
        RootEnclosure { lo: x, hi: x, tol: 0.0 }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when `x` lies within `slack` of the interval.
    pub fn near(&self, x: f64, slack: f64) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }

    /// `self^n` for a non-negative enclosure, rounded outward.
    pub fn powi(&self, n: u32) -> RootEnclosure {
        assert!(self.lo >= 0.0, "powering needs a non-negative enclosure");
        let mut lo = 1.0f64;
        let mut hi = 1.0f64;
        for _ in 0..n {
            lo = (lo * self.lo).next_down().max(0.0);
            hi = (hi * self.hi).next_up();
        }
        RootEnclosure {
            lo,
            hi,
            tol: (hi - lo).max(self.tol),
        }
    }
}

impl fmt::Display for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for RootEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootEnclosure", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("tol", &self.tol.to_string())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// Dense coefficients with monomial content removed, degree at least one.
fn stripped(p: &IntLaurentPoly) -> Result<Dense> {
    let (_, c) = p.to_dense()?;
    if c.len() < 2 {
        return domain(format!("`{p}` has no roots other than zero (constant after removing powers of the variable)"));
    }
    Ok(c)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    Ok(())
}

/// `1 + max_{i<d} |a_i| / |a_d|`, rounded up. Monomial content is stripped first.
pub fn cauchy_bound(p: &IntLaurentPoly) -> Result<f64> {
    let c = stripped(p)?;
    let d = c.len() - 1;
    let max = c[..d].iter().map(|x| x.abs()).max().unwrap();
    let ratio = num_rational::BigRational::new(max, c[d].abs());
    let r = ratio.to_f64().unwrap_or(f64::INFINITY);
    Ok((1.0 + r.next_up()).next_up())
}

struct Factor {
    coeffs: Dense,
    mult: u32,
    discs: Vec<Disc>,
    comps: Vec<Vec<usize>>,
}

struct Analysis {
    factors: Vec<Factor>,
    lead: BigInt,
}

impl Analysis {
    fn new(c: &Dense) -> Result<Self> {
        let mut factors = Vec::new();
        for (f, mult) in dense::squarefree_decomposition(c) {
            let discs = discs::inclusion_discs(&f)?;
            let comps = discs::components(&discs);
            factors.push(Factor {
                coeffs: f,
                mult,
                discs,
                comps,
            });
        }
        Ok(Analysis {
            factors,
            lead: c.last().unwrap().clone(),
        })
    }

    fn all_discs(&self) -> impl Iterator<Item = (usize, usize, &Disc)> {
        self.factors
            .iter()
            .enumerate()
            .flat_map(|(fi, f)| f.discs.iter().enumerate().map(move |(di, d)| (fi, di, d)))
    }

    fn upper_excluding(&self, skip: (usize, usize)) -> f64 {
        self.all_discs()
            .filter(|&(fi, di, _)| (fi, di) != skip)
            .map(|(_, _, d)| d.modulus_upper())
            .fold(0.0, f64::max)
    }

    /// Bounds on the largest root modulus. With `refine`, isolated discs on
    /// the real axis that could hold the maximum are narrowed by bisection.
    fn house_bounds(&self, refine: Option<(f64, f64)>) -> (f64, f64) {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for f in &self.factors {
            for comp in &f.comps {
                let mut clo = comp.iter().map(|&i| f.discs[i].modulus_lower()).fold(f64::INFINITY, f64::min);
                let mut chi = comp.iter().map(|&i| f.discs[i].modulus_upper()).fold(0.0, f64::max);
                if let (Some((floor, tol)), [i]) = (refine, comp.as_slice()) {
                    if chi >= floor {
                        if let Some((a, b)) = refine_real(&f.coeffs, &f.discs, *i, tol) {
                            (clo, chi) = modulus_interval(a, b);
                        }
                    }
                }
                lo = lo.max(clo);
                hi = hi.max(chi);
            }
        }
        (lo, hi)
    }

    /// The isolated disc with the largest upper modulus bound, if that disc is
    /// a component on its own.
    fn top_isolated(&self) -> Option<(usize, usize)> {
        let (fi, di, _) = self
            .all_discs()
            .max_by(|a, b| a.2.modulus_upper().total_cmp(&b.2.modulus_upper()))?;
        let isolated = self.factors[fi].comps.iter().any(|c| c.len() == 1 && c[0] == di);
        isolated.then_some((fi, di))
    }
}

/// Bisects a sign change of `f` inside the real chord of disc `idx`. The disc
/// is first widened as far as it stays clear of the other discs of `f`, so the
/// chord still holds only that disc's root, which is therefore real.
fn refine_real(f: &Dense, discs: &[Disc], idx: usize, tol: f64) -> Option<(f64, f64)> {
    let disc = discs[idx];
    let mut r = disc.r.max(disc.c.norm() * 1e-13);
    let clear = discs
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != idx)
        .all(|(_, o)| (disc.c - o.c).norm() * (1.0 - 1e-12) > r + o.r);
    if !clear {
        r = disc.r;
    }
    if disc.c.im.abs() >= r {
        return None;
    }
    let half = (r * r - disc.c.im * disc.c.im).sqrt() * (1.0 - 1e-9);
    let mut a = disc.c.re - half;
    let mut b = disc.c.re + half;
    if !(a < b) {
        return None;
    }
    let sa = dense::sign_at(f, a);
    let sb = dense::sign_at(f, b);
    if sa == Ordering::Equal {
        return Some((a, a));
    }
    if sb == Ordering::Equal {
        return Some((b, b));
    }
    if sa == sb {
        return None;
    }
    while b - a > tol {
        let m = 0.5 * a + 0.5 * b;
        if !(a < m && m < b) {
            break;
        }
        match dense::sign_at(f, m) {
            Ordering::Equal => return Some((m, m)),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    Some((a, b))
}

fn modulus_interval(a: f64, b: f64) -> (f64, f64) {
    if a >= 0.0 {
        (a, b)
    } else if b <= 0.0 {
        (-b, -a)
    } else {
        (0.0, b.max(-a))
    }
}

/// Certified enclosure of the largest root modulus, of width at most `tol`.
pub fn house(p: &IntLaurentPoly, tol: f64) -> Result<RootEnclosure> {
    check_tol(tol)?;
    let c = stripped(p)?;
    let an = Analysis::new(&c)?;
    let (lo, hi) = an.house_bounds(None);
    if hi - lo <= tol {
        return Ok(RootEnclosure::new(lo, hi, tol));
    }
    let (lo, hi) = an.house_bounds(Some((lo, tol)));
    if hi - lo <= tol {
        return Ok(RootEnclosure::new(lo, hi, tol));
    }
    Err(Error::Uncertified(format!(
        "house of `{p}` only located to [{lo}, {hi}], wider than {tol}"
    )))
}

fn lead_bounds(lead: &BigInt) -> (f64, f64) {
    let x = lead.abs().to_f64().unwrap_or(f64::INFINITY);
    if BigInt::from(x as i64) == lead.abs() && x < 9.0e15 {
        (x, x)
    } else {
        ((x * (1.0 - f64::EPSILON)).next_down(), (x * (1.0 + f64::EPSILON)).next_up())
    }
}

/// Certified enclosure of the Mahler measure `|a_d| prod max(1, |root|)`.
pub fn mahler_measure(p: &IntLaurentPoly, tol: f64) -> Result<RootEnclosure> {
    check_tol(tol)?;
    let c = stripped(p)?;
    let an = Analysis::new(&c)?;
    let (mut lo, mut hi) = lead_bounds(&an.lead);
    let mut pass = 0;
    loop {
        let inner_tol = tol / (4.0 * c.len() as f64 * hi.max(1.0));
        for f in &an.factors {
            for comp in &f.comps {
                let (flo, fhi) = if comp.len() == 1 {
                    let d = &f.discs[comp[0]];
                    let mut bounds = (d.modulus_lower().max(1.0), d.modulus_upper().max(1.0));
                    if pass > 0 && bounds.1 - bounds.0 > inner_tol {
                        if let Some((a, b)) = refine_real(&f.coeffs, &f.discs, comp[0], inner_tol) {
                            let (ma, mb) = modulus_interval(a, b);
                            bounds = (ma.max(1.0), mb.max(1.0));
                        }
                    }
                    bounds
                } else {
                    let l = comp.iter().map(|&i| f.discs[i].modulus_lower()).fold(f64::INFINITY, f64::min);
                    let h = comp.iter().map(|&i| f.discs[i].modulus_upper()).fold(0.0, f64::max);
                    (l.max(1.0), h.max(1.0))
                };
                for _ in 0..comp.len() as u32 * f.mult {
                    lo = (lo * flo).next_down();
                    hi = (hi * fhi).next_up();
                }
            }
        }
        if hi - lo <= tol {
            return Ok(RootEnclosure::new(lo, hi, tol));
        }
        if pass == 1 {
            return Err(Error::Uncertified(format!(
                "Mahler measure of `{p}` only located to [{lo}, {hi}], wider than {tol}"
            )));
        }
        pass += 1;
        (lo, hi) = lead_bounds(&an.lead);
    }
}

/// Whether the largest root in modulus is real, greater than one, simple, and
/// strictly larger in modulus than every other root.
pub fn is_perron_poly(p: &IntLaurentPoly, tol: f64) -> Result<Verdict> {
    check_tol(tol)?;
    let c = stripped(p)?;
    let an = match Analysis::new(&c) {
        Ok(an) => an,
        Err(Error::Uncertified(_)) => return Ok(Verdict::Indeterminate),
        Err(e) => return Err(e),
    };
    let real_capable: Vec<(usize, usize)> = an
        .factors
        .iter()
        .enumerate()
        .flat_map(|(fi, f)| {
            f.comps
                .iter()
                .filter(|comp| comp.iter().any(|&i| f.discs[i].meets_real_axis()))
                .flat_map(move |comp| comp.iter().map(move |&i| (fi, i)))
        })
        .collect();
    if real_capable.is_empty() {
        return Ok(Verdict::False);
    }
    let real_upper = real_capable
        .iter()
        .map(|&(fi, di)| an.factors[fi].discs[di].modulus_upper())
        .fold(0.0, f64::max);
    // An isolated non-real root at least as large as every possible real root.
    for f in &an.factors {
        for comp in f.comps.iter().filter(|c| c.len() == 1) {
            let d = &f.discs[comp[0]];
            if !d.meets_real_axis() && d.modulus_lower() >= real_upper {
                return Ok(Verdict::False);
            }
        }
    }
    let Some((fi, di)) = an.top_isolated() else {
        return Ok(Verdict::Indeterminate);
    };
    let f = &an.factors[fi];
    let Some((a, b)) = refine_real(&f.coeffs, &f.discs, di, tol.min(1e-12)) else {
        return Ok(Verdict::Indeterminate);
    };
    let (ma, _) = modulus_interval(a, b);
    let other = an.upper_excluding((fi, di));
    if !(ma > other) {
        return Ok(Verdict::Indeterminate);
    }
    if f.mult > 1 || b < 1.0 {
        return Ok(Verdict::False);
    }
    if a > 1.0 {
        return Ok(Verdict::True);
    }
    Ok(Verdict::Indeterminate)
}

/// Double-precision approximations of all roots, with multiplicity, of the
/// polynomial with monomial content removed. Uncertified.
pub fn approximate_roots(p: &IntLaurentPoly) -> Result<Vec<Complex64>> {
    let c = stripped(p)?;
    let mut out = Vec::new();
    for (f, mult) in dense::squarefree_decomposition(&c) {
        let a: Vec<f64> = f.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        for z in discs::approximate_roots(&a) {
            for _ in 0..mult {
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// Uncertified point estimate of the house.
pub fn house_estimate(p: &IntLaurentPoly) -> Result<f64> {
    Ok(approximate_roots(p)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
