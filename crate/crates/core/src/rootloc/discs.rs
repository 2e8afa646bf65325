//! Root approximation by Aberth–Ehrlich iteration and inclusion discs.
//!
//! For pairwise distinct approximations `z_i` of the roots of a degree `d`
//! polynomial `f`, every root lies in the union of the discs centred at `z_i`
//! with radius `d |f(z_i)| / (|a_d| prod_{j != i} |z_i - z_j|)`, and each
//! connected component made of `m` discs holds exactly `m` roots. Radii are
//! inflated to cover every floating-point error in their evaluation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::error::{Error, Result};

const U: f64 = f64::EPSILON / 2.0;
const MAX_ITER: usize = 2000;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Disc {
    pub c: Complex64,
    pub r: f64,
}

impl Disc {
    pub fn modulus_upper(&self) -> f64 {
        (self.c.norm() * (1.0 + 2.0 * U) + self.r).next_up()
    }

    pub fn modulus_lower(&self) -> f64 {
        (self.c.norm() * (1.0 - 2.0 * U) - self.r).next_down().max(0.0)
    }

    /// True when the disc may contain a real point.
    pub fn meets_real_axis(&self) -> bool {
        self.c.im.abs() * (1.0 - 2.0 * U) <= self.r
    }

    fn overlaps(&self, o: &Disc) -> bool {
        (self.c - o.c).norm() * (1.0 - 4.0 * U) <= self.r + o.r
    }
}

fn to_f64(c: &BigInt) -> Result<f64> {
    match c.to_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Uncertified("coefficient too large for double precision".into())),
    }
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let d = a.len() - 1;
    let mut p = Complex64::new(a[d], 0.0);
    let mut dp = Complex64::zero();
    for k in (0..d).rev() {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    (p, dp)
}

fn initial_points(a: &[f64]) -> Vec<Complex64> {
    let d = a.len() - 1;
    let r = (a[0].abs() / a[d].abs()).powf(1.0 / d as f64).max(1e-3);
    (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(r, th)
        })
        .collect()
}

/// Approximate roots of `a[0] + a[1] t + ... + a[d] t^d` with `a[0] != 0`.
pub(crate) fn approximate_roots(a: &[f64]) -> Vec<Complex64> {
    let d = a.len() - 1;
    if d == 1 {
        return vec![Complex64::new(-a[0] / a[1], 0.0)];
    }
    let mut z = initial_points(a);
    let mut settled = vec![false; d];
    for _ in 0..MAX_ITER {
        let mut moved = false;
        for i in 0..d {
            if settled[i] {
                continue;
            }
            let (p, dp) = horner(a, z[i]);
            if p.is_zero() {
                settled[i] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * U * z[i].norm() {
                settled[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // A few unconditional polishing sweeps.
    for _ in 0..3 {
        for i in 0..d {
            let (p, dp) = horner(a, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
            }
        }
    }
    z
}

/// Double-double number: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn from_bigint(c: &BigInt) -> Result<Dd> {
        let hi = to_f64(c)?;
        let rest = c - BigInt::from_f64(hi).expect("finite");
        Ok(Dd { hi, lo: rest.to_f64().unwrap_or(0.0) })
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `|f(z)|` evaluated in double-double arithmetic, with an upper bound on
/// its absolute error.
fn residual(a: &[Dd], z: Complex64) -> (f64, f64) {
    let d = a.len() - 1;
    let mut re = a[d];
    let mut im = Dd { hi: 0.0, lo: 0.0 };
    for k in (0..d).rev() {
        let nre = re.mul_f64(z.re).add(im.mul_f64(z.im).neg()).add(a[k]);
        let nim = re.mul_f64(z.im).add(im.mul_f64(z.re));
        re = nre;
        im = nim;
    }
    let m = z.norm() * (1.0 + 2.0 * U);
    let s = a.iter().rev().fold(0.0f64, |acc, c| acc * m + c.hi.abs() * (1.0 + 2.0 * U));
    let df = d as f64;
    let err = s * (64.0 * df + 64.0) * U * U * (1.0 + df * 4.0 * U);
    let v = Complex64::new(re.value(), im.value()).norm();
    (v, err)
}

/// Certified inclusion discs for the roots of a square-free polynomial with
/// non-zero constant term.
pub(crate) fn inclusion_discs(coeffs: &[BigInt]) -> Result<Vec<Disc>> {
    let a: Vec<f64> = coeffs.iter().map(to_f64).collect::<Result<_>>()?;
    let add: Vec<Dd> = coeffs.iter().map(Dd::from_bigint).collect::<Result<_>>()?;
    let d = a.len() - 1;
    let z = approximate_roots(&a);
    let df = d as f64;
    let lead_lo = a[d].abs() * (1.0 - 2.0 * U);
    let mut discs = Vec::with_capacity(d);
    for i in 0..d {
        let zi = z[i];
        if !zi.re.is_finite() || !zi.im.is_finite() {
            return Err(Error::Uncertified("root iteration diverged".into()));
        }
        let (v, err) = residual(&add, zi);
        let num = (v * (1.0 + 8.0 * U) + err) * (1.0 + 4.0 * U);
        let mut den = lead_lo;
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                den *= (zi - zj).norm();
            }
        }
        if den == 0.0 || !den.is_finite() {
            return Err(Error::Uncertified("root approximations are not separated".into()));
        }
        let r = df * num / den * (1.0 + (8.0 * df + 32.0) * U);
        discs.push(Disc { c: zi, r: r.next_up() });
    }
    Ok(discs)
}

/// Groups discs into connected components of their union.
pub(crate) fn components(discs: &[Disc]) -> Vec<Vec<usize>> {
    let n = discs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if discs[i].overlaps(&discs[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}
