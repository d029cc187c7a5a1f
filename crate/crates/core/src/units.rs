//! Conversions between the SI base units used internally and the display
//! units of the design table (g, mm, cm², degrees, MPa, kPa).

pub const G_PER_KG: f64 = 1e3;
pub const MM_PER_M: f64 = 1e3;
pub const CM2_PER_M2: f64 = 1e4;
pub const PA_PER_MPA: f64 = 1e6;
pub const PA_PER_KPA: f64 = 1e3;

pub fn deg_to_rad(deg: f64) -> f64 {
    deg.to_radians()
}

pub fn rad_to_deg(rad: f64) -> f64 {
    rad.to_degrees()
}

pub fn g_to_kg(g: f64) -> f64 {
    g / G_PER_KG
}

pub fn kg_to_g(kg: f64) -> f64 {
    kg * G_PER_KG
}

pub fn mm_to_m(mm: f64) -> f64 {
    mm / MM_PER_M
}

pub fn m_to_mm(m: f64) -> f64 {
    m * MM_PER_M
}

pub fn m2_to_cm2(m2: f64) -> f64 {
    m2 * CM2_PER_M2
}

pub fn cm2_to_m2(cm2: f64) -> f64 {
    cm2 / CM2_PER_M2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_invert() {
        assert_eq!(g_to_kg(80.0), 0.08);
        assert_eq!(m_to_mm(mm_to_m(155.9)), 155.9);
        assert!((m2_to_cm2(0.105634) - 1056.34).abs() < 1e-9);
        assert!((rad_to_deg(deg_to_rad(7.2)) - 7.2).abs() < 1e-12);
    }
}
