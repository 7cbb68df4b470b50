//! Decibel helpers for power ratios.

/// 10·log10 of a power ratio.
#[inline]
pub fn to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

#[inline]
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
