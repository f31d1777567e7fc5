//! Curves used throughout the examples.

use crate::EllipticCurve;

/// y² + y = x³ − x² − 10x − 20, conductor 11.
pub fn c11a1() -> EllipticCurve {
    EllipticCurve::from_ints([0, -1, 1, -10, -20], 11, "11a1").expect("valid model")
}

/// y² + y = x³ − x, conductor 37.
pub fn c37a1() -> EllipticCurve {
    EllipticCurve::from_ints([0, 0, 1, -1, 0], 37, "37a1").expect("valid model")
}

/// y² + y = x³ − 38x + 90, conductor 361, CM by Q(√−19).
pub fn cm361() -> EllipticCurve {
    EllipticCurve::from_ints([0, 0, 1, -38, 90], 361, "cm361").expect("valid model")
}

/// Look up one of the curves above by label.
pub fn by_label(label: &str) -> Option<EllipticCurve> {
    match label {
        "11a1" => Some(c11a1()),
        "37a1" => Some(c37a1()),
        "cm361" | "361" => Some(cm361()),
        _ => None,
    }
}
