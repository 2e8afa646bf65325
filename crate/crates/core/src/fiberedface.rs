//! Specializations of the magic manifold's Teichmüller polynomial and the
//! two-parameter family obtained by Dehn filling one cusp.
//!
//! Classes on the filled manifold are written `(a, b)` with `|a| < b`; the
//! Teichmüller polynomial there specializes to `LT_{a,b}`.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::constants::{self, MinDilEntry, SmallDilEntry};
use crate::error::{domain, Result};
use crate::intpoly::{lt_polynomial, named_polynomial, ExponentMap, IntLaurentPoly, NamedPoly};
use crate::rootloc::{self, RootEnclosure, Verdict};

/// `t^{x+y-z} - t^x - t^y - t^{x-z} - t^{y-z} + 1` in the variables x, y, z.
pub fn magic_polynomial() -> IntLaurentPoly {
    IntLaurentPoly::parse_with_vars("x*y*z^-1 - x - y - x*z^-1 - y*z^-1 + 1", &["x", "y", "z"])
        .expect("static polynomial parses")
}

/// Strict membership in the open cone `x + y - z > max{x, y, x - z, y - z, 0}`.
pub fn magic_cone_contains(c: [i64; 3]) -> bool {
    let [x, y, z] = c;
    x + y - z > x.max(y).max(x - z).max(y - z).max(0)
}

pub fn magic_specialization(c: [i64; 3]) -> Result<IntLaurentPoly> {
    if !magic_cone_contains(c) {
        return domain(format!(
            "({}, {}, {}) is outside the fibered cone x + y - z > max{{x, y, x - z, y - z, 0}}",
            c[0], c[1], c[2]
        ));
    }
    magic_polynomial().specialize(&ExponentMap(c.to_vec()))
}

pub fn magic_dilatation(c: [i64; 3], tol: f64) -> Result<RootEnclosure> {
    rootloc::house(&magic_specialization(c)?, tol)
}

fn check_class(a: i64, b: i64) -> Result<()> {
    if b < 1 || a.abs() >= b {
        return domain(format!("(a, b) = ({a}, {b}) is outside the cone |a| < b"));
    }
    Ok(())
}

/// The magic polynomial pulled back along `(a, b) -> (2b + 2a, 2b + a, b + 2a)`:
/// `t^{3b+a} - t^{2b+2a} - t^{2b+a} - t^b - t^{b-a} + 1`.
pub fn dehn_filled_specialization(a: i64, b: i64) -> Result<IntLaurentPoly> {
    check_class(a, b)?;
    magic_polynomial().specialize(&ExponentMap(vec![2 * b + 2 * a, 2 * b + a, b + 2 * a]))
}

/// Teichmüller polynomial of the filled manifold at `(a, b)`, obtained by
/// removing the factor `t^{b+a} + 1` from [`dehn_filled_specialization`].
pub fn theta_s(a: i64, b: i64) -> Result<IntLaurentPoly> {
    let p = dehn_filled_specialization(a, b)?;
    let f = IntLaurentPoly::univariate("t", &[(b + a, 1), (0, 1)]);
    p.exact_div(&f)
}

/// Two-variable Alexander polynomial `v^2 - uv + v - u^{-1}v + 1` of the
/// filled manifold.
pub fn alexander_polynomial() -> IntLaurentPoly {
    IntLaurentPoly::parse_with_vars("v^2 - u*v + v - u^-1*v + 1", &["u", "v"])
        .expect("static polynomial parses")
}

/// `t^{2b} - t^{b+a} + t^b - t^{b-a} + 1`.
pub fn alexander_s(a: i64, b: i64) -> Result<IntLaurentPoly> {
    check_class(a, b)?;
    alexander_polynomial().specialize(&ExponentMap(vec![a, b]))
}

/// The Alexander polynomial at `u = t^a`, `v = -t^b`. Its house equals that
/// of `theta_s(a, b)` when `b` is even and `a` is odd.
pub fn alexander_s_twisted(a: i64, b: i64) -> Result<IntLaurentPoly> {
    check_class(a, b)?;
    alexander_polynomial().specialize_twisted(&ExponentMap(vec![a, b]), &[1, -1])
}

pub fn orientable_criterion(a: i64, b: i64) -> bool {
    b.rem_euclid(2) == 0 && a.rem_euclid(2) == 1
}

/// Puncture count `s = gcd(a, 3b) + gcd(3a, b)` and genus `1 + b - s/2` of
/// the fiber of a primitive class.
pub fn punctures_and_genus(a: i64, b: i64) -> Result<(u64, u64)> {
    check_class(a, b)?;
    if a.gcd(&b) != 1 {
        return domain(format!("(a, b) = ({a}, {b}) is not primitive: gcd(a, b) = {}", a.gcd(&b)));
    }
    let s = a.gcd(&(3 * b)) + (3 * a).gcd(&b);
    let g = 1 + b - s / 2;
    Ok((s as u64, g as u64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyInvariants {
    pub a: i64,
    pub b: i64,
    pub dilatation: RootEnclosure,
    pub genus: u64,
    pub punctures: u64,
    pub orientable: Option<bool>,
    /// `λ^{|χ|}` with `χ = 2 - 2g - s`.
    pub normalized: RootEnclosure,
    /// `λ^g`.
    pub genus_normalized: RootEnclosure,
}

pub fn invariants(a: i64, b: i64, tol: f64) -> Result<MonodromyInvariants> {
    let (s, g) = punctures_and_genus(a, b)?;
    let dilatation = rootloc::house(&theta_s(a, b)?, tol)?;
    let chi = 2 * g + s - 2;
    Ok(MonodromyInvariants {
        a,
        b,
        normalized: dilatation.powi(chi as u32),
        genus_normalized: dilatation.powi(g as u32),
        dilatation,
        genus: g,
        punctures: s,
        orientable: Some(orientable_criterion(a, b)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub lambda: RootEnclosure,
    pub lambda_n: RootEnclosure,
    pub lambda_2n: RootEnclosure,
    /// `|λ^{2n} - γ₀⁴|` at the enclosure midpoint.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Whether `λ_n^n` is certified strictly decreasing.
    pub monotone: Verdict,
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,lambda,lambda_n,lambda_2n,gap\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.12},{:.12},{:.12},{:.12}",
                r.n,
                r.lambda.mid(),
                r.lambda_n.mid(),
                r.lambda_2n.mid(),
                r.gap
            );
        }
        s
    }
}

/// Rows `(n, λ_n, λ_n^n, λ_n^{2n})` for `λ_n = house(LT_{1,n})`.
pub fn convergence_report(n_max: usize, tol: f64) -> Result<ConvergenceReport> {
    if n_max < 2 {
        return domain(format!("need n_max >= 2, got {n_max}"));
    }
    let target = constants::golden_sq().powi(2);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let lambda = rootloc::house(&lt_polynomial(1, n as i64)?, tol)?;
        let lambda_2n = lambda.powi(2 * n as u32);
        rows.push(ConvergenceRow {
            n,
            lambda_n: lambda.powi(n as u32),
            gap: (lambda_2n.mid() - target).abs(),
            lambda,
            lambda_2n,
        });
    }
    let monotone = strictly_decreasing(rows.iter().map(|r| r.lambda_n));
    Ok(ConvergenceReport { rows, monotone })
}

/// Certified verdict on whether a sequence of enclosures strictly decreases.
pub fn strictly_decreasing(seq: impl IntoIterator<Item = RootEnclosure>) -> Verdict {
    let v: Vec<RootEnclosure> = seq.into_iter().collect();
    let mut verdict = Verdict::True;
    for w in v.windows(2) {
        if w[1].lo >= w[0].hi {
            return Verdict::False;
        }
        if w[1].hi >= w[0].lo {
            verdict = Verdict::Indeterminate;
        }
    }
    verdict
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassParams {
    Lt([i64; 2]),
    Magic([i64; 3]),
}

impl ClassParams {
    pub fn polynomial(&self) -> Result<IntLaurentPoly> {
        match *self {
            ClassParams::Lt([a, b]) => lt_polynomial(a, b),
            ClassParams::Magic(c) => magic_specialization(c),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassParams::Lt([a, b]) => format!("lambda_({a},{b})"),
            ClassParams::Magic([x, y, z]) => format!("lambda_({x},{y},{z})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    /// The factorization as listed: `irreducible` or `sigma(t)*(...)`.
    pub listed: String,
    pub sigma_divides: bool,
    /// For listed products, whether the product equals the polynomial. For
    /// rows listed as irreducible, whether `sigma` fails to divide.
    pub listed_holds: bool,
    /// The quotient by the listed cofactor, when that division is exact.
    pub cofactor_quotient: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub genus: u32,
    pub column: String,
    pub label: String,
    pub class: ClassParams,
    pub polynomial: String,
    pub expected: f64,
    pub dilatation: RootEnclosure,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationCheck>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub rows: Vec<TableRow>,
    /// Rows whose dilatation differs from the reference value.
    pub mismatches: Vec<String>,
    /// Rows whose listed factorization does not hold.
    pub factorization_failures: Vec<String>,
}

impl Table {
    fn new(name: &str, rows: Vec<TableRow>) -> Table {
        let mismatches = rows
            .iter()
            .filter(|r| !r.matches)
            .map(|r| {
                format!(
                    "g={} {} {}: computed {} but reference value is {}",
                    r.genus, r.column, r.label, r.dilatation, r.expected
                )
            })
            .collect();
        let factorization_failures = rows
            .iter()
            .filter_map(|r| {
                let f = r.factorization.as_ref()?;
                (!f.listed_holds).then(|| {
                    let mut m = format!("g={}: {} is not {}", r.genus, r.polynomial, f.listed);
                    if let Some(q) = &f.cofactor_quotient {
                        let _ = write!(m, "; the cofactor divides it with quotient {q}");
                    }
                    m
                })
            })
            .collect();
        Table {
            name: name.into(),
            rows,
            mismatches,
            factorization_failures,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "g,column,label,a,b,x,y,z,expected,dilatation_lo,dilatation_hi,matches,polynomial,factorization_holds\n",
        );
        for r in &self.rows {
            let (ab, xyz) = match r.class {
                ClassParams::Lt([a, b]) => (format!("{a},{b}"), ",,".to_string()),
                ClassParams::Magic([x, y, z]) => (",".to_string(), format!("{x},{y},{z}")),
            };
            let fact = r
                .factorization
                .as_ref()
                .map_or(String::new(), |f| f.listed_holds.to_string());
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},\"{}\",{}",
                r.genus,
                r.column,
                r.label,
                ab,
                xyz,
                r.expected,
                r.dilatation.lo,
                r.dilatation.hi,
                r.matches,
                r.polynomial,
                fact
            );
        }
        s
    }
}

fn regenerate(
    genus: u32,
    column: &str,
    class: ClassParams,
    expected: f64,
    source: &str,
    tol: f64,
) -> Result<TableRow> {
    let p = class.polynomial()?;
    let dilatation = rootloc::house(&p, tol)?;
    Ok(TableRow {
        genus,
        column: column.into(),
        label: class.label(),
        class,
        polynomial: p.to_string(),
        expected,
        matches: dilatation.near(expected, constants::reference().comparison_tol),
        dilatation,
        factorization: None,
        source: source.into(),
    })
}

fn smalldil_row(e: &SmallDilEntry, tol: f64) -> Result<TableRow> {
    let class = match (e.lt, e.magic) {
        (Some(ab), None) => ClassParams::Lt(ab),
        (None, Some(xyz)) => ClassParams::Magic(xyz),
        _ => return domain(format!("reference entry `{}` needs exactly one of lt, magic", e.source)),
    };
    regenerate(e.genus, &e.column, class, e.value, &e.source, tol)
}

fn mindil_row(e: &MinDilEntry, tol: f64) -> Result<TableRow> {
    let listed = IntLaurentPoly::parse(&e.polynomial)?;
    let class = ClassParams::Lt(e.lt);
    let mut row = regenerate(e.genus, "orientable", class, e.value, &e.source, tol)?;
    let lt = class.polynomial()?;
    // The listed polynomial must be the LT polynomial the row is built from.
    row.matches &= listed == lt;
    let sigma = named_polynomial(NamedPoly::Sigma)?;
    let sigma_divides = lt.exact_div(&sigma).is_ok();
    row.factorization = Some(match &e.cofactor {
        Some(c) => {
            let cof = IntLaurentPoly::parse(c)?;
            FactorizationCheck {
                listed: format!("sigma(t)*({cof})"),
                sigma_divides,
                listed_holds: sigma.mul(&cof)? == lt,
                cofactor_quotient: lt.exact_div(&cof).ok().map(|q| q.to_string()),
            }
        }
        None => FactorizationCheck {
            listed: "irreducible".into(),
            sigma_divides,
            listed_holds: !sigma_divides,
            cofactor_quotient: None,
        },
    });
    Ok(row)
}

/// Smallest known dilatations for genus 2 to 12, both columns.
pub fn table_smalldil(tol: f64) -> Result<Table> {
    let rows = constants::reference()
        .smalldil
        .iter()
        .map(|e| smalldil_row(e, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("smalldil", rows))
}

/// Minimum orientable dilatations with their PF polynomials and listed
/// factorizations.
pub fn table_mindil(tol: f64) -> Result<Table> {
    let rows = constants::reference()
        .mindil
        .iter()
        .map(|e| mindil_row(e, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("mindil", rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::lt_digraph;
    use crate::traintrack::family_traintrack;

    fn poly(s: &str) -> IntLaurentPoly {
        IntLaurentPoly::parse(s).unwrap()
    }

    const TOL: f64 = 1e-10;

    #[test]
    fn cone_membership() {
        assert!(magic_cone_contains([2, 2, 1]));
        assert!(!magic_cone_contains([1, 1, 1]));
        assert!(!magic_cone_contains([1, 0, 0]));
        assert!(!magic_cone_contains([0, 0, 1]));
        assert!(magic_cone_contains([10, 8, 3]));
        assert!(magic_dilatation([0, 0, 1], TOL).is_err());
    }

    #[test]
    fn magic_dilatations() {
        for (c, v) in [([10, 8, 3], 1.20189), ([18, 17, 7], 1.10403), ([12, 20, 3], 1.10240)] {
            let r = magic_dilatation(c, TOL).unwrap();
            assert!(r.near(v, 1e-4), "{c:?}: {r}");
        }
    }

    #[test]
    fn dehn_filling_factorization() {
        for b in 2..=12 {
            for a in 1..b {
                let expanded = IntLaurentPoly::univariate(
                    "t",
                    &[(3 * b + a, 1), (2 * b + 2 * a, -1), (2 * b + a, -1), (b, -1), (b - a, -1), (0, 1)],
                );
                assert_eq!(dehn_filled_specialization(a, b).unwrap(), expanded);
                let f = IntLaurentPoly::univariate("t", &[(b + a, 1), (0, 1)]);
                assert_eq!(f.mul(&lt_polynomial(a, b).unwrap()).unwrap(), expanded);
                assert_eq!(theta_s(a, b).unwrap(), lt_polynomial(a, b).unwrap());
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_s(1, 2).unwrap(), poly("t^4 - t^3 - t^2 - t + 1"));
        assert_eq!(theta_s(2, 9).unwrap(), poly("t^18 - t^11 - t^9 - t^7 + 1"));
        assert_eq!(theta_s(0, 1).unwrap(), poly("t^2 - 3t + 1"));
        assert_eq!(theta_s(-2, 9).unwrap(), theta_s(2, 9).unwrap());
        assert!(theta_s(3, 3).is_err());
        assert!(theta_s(1, 0).is_err());
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_s(1, 2).unwrap(), poly("t^4 - t^3 + t^2 - t + 1"));
        assert_eq!(alexander_s(1, 6).unwrap(), poly("t^12 - t^7 + t^6 - t^5 + 1"));
        // The plain specialization at (1, 2) is cyclotomic.
        let h = rootloc::house(&alexander_s(1, 2).unwrap(), TOL).unwrap();
        assert!(h.near(1.0, 1e-9));
    }

    #[test]
    fn twisted_alexander_matches_teichmuller_house() {
        for (a, b) in [(1, 2), (1, 4), (1, 8), (3, 4), (1, 10)] {
            let twisted = alexander_s_twisted(a, b).unwrap();
            let theta = theta_s(a, b).unwrap();
            let ht = rootloc::house(&twisted, TOL).unwrap();
            let hs = rootloc::house(&theta, TOL).unwrap();
            assert!((ht.mid() - hs.mid()).abs() < 1e-8, "({a},{b})");
            // Exactly theta_s(-t).
            let neg = theta.specialize_twisted(&ExponentMap(vec![1]), &[-1]).unwrap();
            assert_eq!(twisted, neg);
        }
    }

    #[test]
    fn orientability() {
        assert!(orientable_criterion(1, 2));
        assert!(!orientable_criterion(1, 3));
        assert!(!orientable_criterion(2, 9));
        assert!(orientable_criterion(-1, 4));
    }

    #[test]
    fn punctures() {
        assert_eq!(punctures_and_genus(1, 4).unwrap(), (2, 4));
        assert_eq!(punctures_and_genus(1, 6).unwrap(), (4, 5));
        assert_eq!(punctures_and_genus(1, 9).unwrap(), (4, 8));
        assert_eq!(punctures_and_genus(0, 1).unwrap(), (4, 0));
        assert_eq!(punctures_and_genus(3, 4).unwrap().1, 3);
        assert_eq!(punctures_and_genus(3, 5).unwrap().1, 4);
        assert!(punctures_and_genus(2, 4).is_err());
        assert!(punctures_and_genus(0, 2).is_err());
    }

    #[test]
    fn invariant_bundles() {
        let i = invariants(1, 2, TOL).unwrap();
        assert!(i.dilatation.near(1.72208, 1e-5));
        assert_eq!((i.genus, i.punctures, i.orientable), (2, 2, Some(true)));
        assert!(i.genus_normalized.near(2.96556, 1e-4));
        assert!(i.normalized.lo >= i.dilatation.lo);
        let i = invariants(1, 8, TOL).unwrap();
        assert!(i.dilatation.near(1.12876, 1e-5));
        assert_eq!((i.genus, i.orientable), (8, Some(true)));
        let i = invariants(0, 1, TOL).unwrap();
        assert!(i.dilatation.near(constants::golden_sq(), 1e-9));
        assert!(i.normalized.near(constants::golden_sq().powi(2), 1e-8));
    }

    #[test]
    fn consistency_with_tracks_and_digraphs() {
        for n in 2..=10 {
            let inv = invariants(1, n as i64, TOL).unwrap();
            assert_eq!(inv.genus as usize, family_traintrack(n).unwrap().genus_closed().unwrap());
            let r = lt_digraph(n).unwrap().spectral_radius(TOL).unwrap();
            assert!(r.near(inv.dilatation.mid(), 2.0 * TOL));
        }
    }

    #[test]
    fn convergence() {
        let rep = convergence_report(30, TOL).unwrap();
        assert_eq!(rep.monotone, Verdict::True);
        let first = &rep.rows[0];
        assert!(first.lambda_n.near(2.96556, 1e-4));
        assert!(first.lambda_2n.near(8.7945, 1e-3));
        assert!(rep.rows.last().unwrap().gap < 0.05);
        assert!(rep.to_csv().starts_with("n,lambda,lambda_n,lambda_2n,gap\n2,"));
        assert!(convergence_report(1, TOL).is_err());
    }

    #[test]
    fn smalldil_table() {
        let t = table_smalldil(TOL).unwrap();
        assert!(t.mismatches.is_empty(), "{:?}", t.mismatches);
        let g4 = t.rows.iter().find(|r| r.genus == 4 && r.column == "unconstrained").unwrap();
        assert!(g4.dilatation.near(1.26123, 1e-4));
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 23);
    }

    #[test]
    fn mindil_table() {
        let t = table_mindil(TOL).unwrap();
        assert!(t.mismatches.is_empty(), "{:?}", t.mismatches);
        let holds: Vec<(u32, bool)> = t
            .rows
            .iter()
            .map(|r| (r.genus, r.factorization.as_ref().unwrap().listed_holds))
            .collect();
        assert_eq!(holds, [(2, true), (3, true), (4, true), (5, true), (7, false), (8, true)]);
        let g7 = t.rows.iter().find(|r| r.genus == 7).unwrap().factorization.clone().unwrap();
        assert!(!g7.sigma_divides);
        assert_eq!(g7.cofactor_quotient.as_deref(), Some("t^4 - t^3 + t^2 - t + 1"));
        assert_eq!(t.factorization_failures.len(), 1);
    }
}
