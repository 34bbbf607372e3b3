//! Thin wrappers over `libm` so the numeric layer works without `std` and
//! produces identical bit patterns on every platform.

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}

pub const PI: f64 = core::f64::consts::PI;
