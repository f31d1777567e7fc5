//! Weierstrass models over Q and reduction modulo primes.

use rug::Integer;
use series_core::arith::factor;
use series_core::Q;

use crate::CurveError;

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 with a user-supplied conductor.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurve {
    pub a: [Q; 5],
    pub conductor: u64,
    pub label: String,
    inv: Invariants,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub b2: Q,
    pub b4: Q,
    pub b6: Q,
    pub b8: Q,
    pub c4: Q,
    pub c6: Q,
    pub disc: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good,
    Split,
    NonSplit,
    Additive,
}

impl Invariants {
    pub fn of(a: &[Q; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        let q = |n: i64| Q::from(n);
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - q(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6
            + q(9) * &b2 * &b4 * &b6;
        Invariants { b2, b4, b6, b8, c4, c6, disc }
    }
}

impl EllipticCurve {
    pub fn new(a: [Q; 5], conductor: u64, label: impl Into<String>) -> Result<Self, CurveError> {
        let inv = Invariants::of(&a);
        if inv.disc == Q::from(0) {
            return Err(CurveError::Singular);
        }
        if conductor == 0 {
            return Err(CurveError::BadConductor("conductor must be positive".into()));
        }
        for (p, _) in factor(conductor) {
            let divides = inv.disc.valuation(p).is_some_and(|v| v > 0);
            if !divides {
                return Err(CurveError::BadConductor(format!(
                    "prime {p} divides the conductor but not the discriminant"
                )));
            }
        }
        Ok(EllipticCurve { a, conductor, label: label.into(), inv })
    }

    pub fn from_ints(a: [i64; 5], conductor: u64, label: impl Into<String>) -> Result<Self, CurveError> {
        Self::new(a.map(Q::from), conductor, label)
    }

    /// Parse "a1,a2,a3,a4,a6" where each entry is an integer, fraction or finite decimal.
    pub fn parse(spec: &str, conductor: u64) -> Result<Self, CurveError> {
        let parts: Vec<Q> = spec
            .split(',')
            .map(|s| Q::parse(s).ok_or_else(|| CurveError::Parse(format!("bad coefficient {s:?}"))))
            .collect::<Result<_, _>>()?;
        let a: [Q; 5] = parts
            .try_into()
            .map_err(|_| CurveError::Parse("expected five comma-separated coefficients".into()))?;
        Self::new(a, conductor, spec.to_string())
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn c4(&self) -> &Q {
        &self.inv.c4
    }

    pub fn c6(&self) -> &Q {
        &self.inv.c6
    }

    pub fn discriminant(&self) -> &Q {
        &self.inv.disc
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(Q::is_integer)
    }

    /// Coefficients reduced mod p.
    pub fn reduce(&self, p: u64) -> Result<[u64; 5], CurveError> {
        let m = Integer::from(p);
        let mut out = [0u64; 5];
        for (o, c) in out.iter_mut().zip(&self.a) {
            *o = c
                .residue_mod(&m)
                .ok_or(CurveError::DenominatorPrime(p))?
                .to_u64()
                .expect("residue below p");
        }
        Ok(out)
    }

    /// Reduction type at p, assuming the model is minimal at p.
    pub fn reduction_type(&self, p: u64) -> Result<Reduction, CurveError> {
        let red = self.reduce(p)?;
        let disc_mod = residue(&self.inv.disc, p)?;
        if disc_mod != 0 {
            return Ok(Reduction::Good);
        }
        if residue(&self.inv.c4, p)? == 0 {
            return Ok(Reduction::Additive);
        }
        let (x0, _) = singular_point(&red, p).ok_or(CurveError::NoSingularPoint(p))?;
        // tangent cone at the node: t² + a1·s·t − (3x0 + a2)·s²
        let [a1, a2, ..] = red;
        let c = (3 * x0 + a2) % p;
        let splits = (0..p).any(|t| (t * t + a1 * t + p - c) % p == 0);
        Ok(if splits { Reduction::Split } else { Reduction::NonSplit })
    }
}

fn residue(x: &Q, p: u64) -> Result<u64, CurveError> {
    x.residue_mod(&Integer::from(p))
        .map(|r| r.to_u64().expect("residue below p"))
        .ok_or(CurveError::DenominatorPrime(p))
}

fn poly_at(red: &[u64; 5], p: u64, x: u64, y: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = *red;
    let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
    let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
    (lhs + p - rhs) % p
}

/// The singular point of a reduction with p | Δ, found by exhaustive search.
pub fn singular_point(red: &[u64; 5], p: u64) -> Option<(u64, u64)> {
    let [a1, a2, a3, a4, _] = *red;
    for x in 0..p {
        for y in 0..p {
            if poly_at(red, p, x, y) != 0 {
                continue;
            }
            let fx = (a1 * y + p * p * 4 - 3 * x % p * x % p - 2 * a2 * x % p - a4) % p;
            let fy = (2 * y + a1 * x + a3) % p;
            if fx == 0 && fy == 0 {
                return Some((x, y));
            }
        }
    }
    None
}

/// Affine points of the reduction, counted by brute force (singular point included).
pub fn brute_force_affine_count(red: &[u64; 5], p: u64) -> u64 {
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            if poly_at(red, p, x, y) == 0 {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_37a1() {
        let e = EllipticCurve::from_ints([0, 0, 1, -1, 0], 37, "37a1").unwrap();
        assert_eq!(*e.discriminant(), Q::from(37));
        assert_eq!(*e.c4(), Q::from(48));
        assert_eq!(*e.c6(), Q::from(-216));
    }

    #[test]
    fn conductor_sanity_check() {
        assert!(EllipticCurve::from_ints([0, 0, 1, -1, 0], 11, "x").is_err());
        assert!(matches!(
            EllipticCurve::from_ints([0, 0, 0, 0, 0], 1, "x"),
            Err(CurveError::Singular)
        ));
    }

    #[test]
    fn parse_rational_entries() {
        let e = EllipticCurve::parse("0,-1,1,-10,-20", 11).unwrap();
        assert_eq!(e.a[4], Q::from(-20));
        assert!(EllipticCurve::parse("0,1", 11).is_err());
    }

    #[test]
    fn reduction_types() {
        let e11 = EllipticCurve::from_ints([0, -1, 1, -10, -20], 11, "11a1").unwrap();
        assert_eq!(e11.reduction_type(11).unwrap(), Reduction::Split);
        let e37 = EllipticCurve::from_ints([0, 0, 1, -1, 0], 37, "37a1").unwrap();
        assert_eq!(e37.reduction_type(37).unwrap(), Reduction::NonSplit);
        assert_eq!(e37.reduction_type(5).unwrap(), Reduction::Good);
        let cm = EllipticCurve::from_ints([0, 0, 1, -38, 90], 361, "cm361").unwrap();
        assert_eq!(cm.reduction_type(19).unwrap(), Reduction::Additive);
    }
}
