//! ζ(𝔷) = 𝔷⁻¹ − Σ_{k≥1} G_{2k+2}𝔷^{2k+1} and ℘ = −ζ′.

use lattice_periods::eisenstein_recursion;
use series_core::{Field, LaurentQSeries};

/// ζ through 𝔷^{order−1}; coefficients in any field holding G₄, G₆.
pub fn zeta_laurent<F: Field>(g4: &F, g6: &F, order: i64) -> LaurentQSeries<F> {
    let max_weight = (order.max(4) + 2) as u32 & !1;
    let g = eisenstein_recursion(g4, g6, max_weight);
    let mut c = vec![F::zero(); (order + 1).max(0) as usize];
    if order > -1 {
        c[0] = F::one();
    }
    for (w, gw) in &g {
        let e = *w as i64 - 1;
        if e < order {
            c[(e + 1) as usize] = -gw.clone();
        }
    }
    LaurentQSeries::new(-1, c, order.max(-1)).expect("length matches precision")
}

/// ℘ = 𝔷⁻² + Σ (2k+1)G_{2k+2}𝔷^{2k} through 𝔷^{order−1}.
pub fn wp_laurent<F: Field>(g4: &F, g6: &F, order: i64) -> LaurentQSeries<F> {
    // 𝔷·d/d𝔷 then divide by 𝔷
    zeta_laurent(g4, g6, order + 1).q_derivative().neg().shift(-1)
}

/// Both expansions with a shared truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassSeries<F: Field> {
    pub zeta_laurent: LaurentQSeries<F>,
    pub wp_laurent: LaurentQSeries<F>,
}

impl<F: Field> WeierstrassSeries<F> {
    pub fn new(g4: &F, g6: &F, order: i64) -> Self {
        WeierstrassSeries { zeta_laurent: zeta_laurent(g4, g6, order), wp_laurent: wp_laurent(g4, g6, order) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use series_core::Q;

    #[test]
    fn leading_terms() {
        let z = zeta_laurent(&Q::new(1, 15), &Q::new(-1, 140), 8);
        assert_eq!(z.coeff(-1), Q::from(1));
        assert_eq!(z.coeff(3), Q::new(-1, 15));
        assert_eq!(z.coeff(5), Q::new(1, 140));
        assert_eq!(z.coeff(0), Q::from(0));
        assert_eq!(z.precision(), 8);
        let p = wp_laurent(&Q::new(1, 15), &Q::new(-1, 140), 8);
        assert_eq!(p.coeff(-2), Q::from(1));
        assert_eq!(p.coeff(2), Q::new(3, 15));
        assert_eq!(p.coeff(4), Q::new(-5, 140));
        assert_eq!(p.precision(), 8);
    }
}
