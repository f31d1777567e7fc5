//! The genus character χ_Δ on level-N Heegner forms.

use series_core::arith::{divisors, gcd, is_fundamental, kronecker};

use crate::forms::BinaryQF;
use crate::TraceError;

/// χ_Δ([A, B, C]) for N | A: (Δ/n) for any n coprime to Δ represented by
/// [N₁·A/N, B, N₂·C] with N = N₁N₂, or 0 if Δ ∤ B² − 4AC, the quotient is not
/// a square mod 4N, or gcd(A/N, B, C, Δ) > 1.
pub fn genus_character(f: &BinaryQF, delta: i64, n: u64) -> Result<i32, TraceError> {
    if !is_fundamental(delta) {
        return Err(TraceError::NotFundamental(delta));
    }
    let ni = n as i64;
    if f.a % ni != 0 {
        return Err(TraceError::NotLevelAdapted(*f, n));
    }
    let d = f.discriminant();
    if d % delta != 0 {
        return Ok(0);
    }
    let m = 4 * ni;
    let t = (d / delta).rem_euclid(m);
    if !(0..m).any(|x| (x * x - t).rem_euclid(m) == 0) {
        return Ok(0);
    }
    let a = f.a / ni;
    if gcd(gcd(gcd(a, f.b), f.c), delta) != 1 {
        return Ok(0);
    }
    for n1 in divisors(n) {
        let n1 = n1 as i64;
        let n2 = ni / n1;
        for r in 0i64..=30 {
            // lattice points on the square of radius r
            for x in -r..=r {
                for y in -r..=r {
                    if x.abs().max(y.abs()) != r {
                        continue;
                    }
                    let v = n1 * a * x * x + f.b * x * y + n2 * f.c * y * y;
                    if v != 0 && gcd(v, delta) == 1 {
                        return Ok(kronecker(delta, v));
                    }
                }
            }
        }
    }
    Ok(0)
}
