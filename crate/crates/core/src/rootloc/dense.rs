//! Dense integer polynomials, ascending coefficient order, no trailing zeros.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, with the zero polynomial reported as `None`.
pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn derivative(p: &[BigInt]) -> Dense {
    let mut d: Dense = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut d);
    d
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub(crate) fn primitive(p: &[BigInt]) -> Dense {
    let mut q: Dense = p.to_vec();
    trim(&mut q);
    if q.is_empty() {
        return q;
    }
    let mut c = content(&q);
    if q.last().unwrap().is_negative() {
        c = -c;
    }
    q.iter().map(|x| x / &c).collect()
}

/// A non-zero scalar multiple of the remainder of `a` by `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let db = degree(b).expect("non-zero divisor");
    let lb = &b[db];
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let k = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] -= &lr * bc;
        }
        trim(&mut r);
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x /= &c;
            }
        }
    }
    r
}

/// Primitive greatest common divisor with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

/// Exact quotient over the integers, or `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    let db = degree(b)?;
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        let k = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + k] -= &c * bc;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    Some(q)
}

/// Square-free decomposition: primitive pairwise coprime factors `f_i` with
/// multiplicities `i` whose product is the primitive part of `p` up to sign.
pub(crate) fn squarefree_decomposition(p: &[BigInt]) -> Vec<(Dense, u32)> {
    let f = primitive(p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut g = gcd(&f, &derivative(&f));
    let mut w = div_exact(&f, &g).expect("gcd divides");
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &g);
        let z = div_exact(&w, &y).expect("gcd divides");
        if degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        g = div_exact(&g, &y).expect("gcd divides");
        w = y;
    }
    out
}

/// Exact sign of `p(x)` at a finite double `x`.
pub(crate) fn sign_at(p: &[BigInt], x: f64) -> Ordering {
    assert!(x.is_finite());
    let Some(d) = degree(p) else {
        return Ordering::Equal;
    };
    if x == 0.0 {
        return p[0].sign_ordering();
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let m = if neg { -BigInt::from(mant) } else { BigInt::from(mant) };
    let acc = if exp >= 0 {
        let xv = m << (exp as usize);
        p[..=d].iter().rev().fold(BigInt::zero(), |acc, c| acc * &xv + c)
    } else {
        // Scale by 2^{k d} with k = -exp to stay in the integers.
        let k = (-exp) as usize;
        let mut acc = p[d].clone();
        for j in (0..d).rev() {
            acc = acc * &m + (&p[j] << (k * (d - j)));
        }
        acc
    };
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}
