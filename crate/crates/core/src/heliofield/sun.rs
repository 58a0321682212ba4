//! Analytical sun position (Cooper declination, solar time hour angle).

use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SunState {
    /// Degrees above the horizon.
    pub elevation: f64,
    /// Degrees clockwise from north.
    pub azimuth: f64,
    pub above_horizon: bool,
    /// Minutes since the start of the simulation window.
    pub time: f64,
    /// Unit vector pointing at the sun, (east, north, up).
    pub direction: Vec3,
}

/// Declination in degrees for a day of the year.
pub fn declination(day_of_year: u32) -> f64 {
    23.45 * libm::sin((360.0 / 365.0 * (284.0 + day_of_year as f64)).to_radians())
}

/// Sun position at a solar-time minute of the given day.
pub fn sun_position(latitude: f64, day_of_year: u32, minute_of_day: f64) -> SunState {
    let phi = latitude.to_radians();
    let delta = declination(day_of_year).to_radians();
    let omega = (15.0 * (minute_of_day / 60.0 - 12.0)).to_radians();
    let (sd, cd) = (libm::sin(delta), libm::cos(delta));
    let (sp, cp) = (libm::sin(phi), libm::cos(phi));
    let (sw, cw) = (libm::sin(omega), libm::cos(omega));
    let east = -cd * sw;
    let north = sd * cp - cd * cw * sp;
    let up = sd * sp + cd * cw * cp;
    let direction = Vec3::new(east, north, up).normalized();
    let elevation = libm::asin(direction.z.clamp(-1.0, 1.0)).to_degrees();
    let mut azimuth = libm::atan2(east, north).to_degrees();
    if azimuth < 0.0 {
        azimuth += 360.0;
    }
    SunState {
        elevation,
        azimuth,
        above_horizon: elevation > 0.0,
        time: 0.0,
        direction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equinox_noon_at_equator() {
        let s = sun_position(0.0, 81, 720.0);
        assert!((s.elevation - 90.0).abs() < 0.5, "{}", s.elevation);
    }

    #[test]
    fn summer_midnight_is_dark() {
        let s = sun_position(45.0, 172, 0.0);
        assert!(!s.above_horizon);
        // NOAA puts the solstice midnight sun about 21.5 degrees below the horizon at 45N.
        assert!((s.elevation + 21.5).abs() < 1.0, "{}", s.elevation);
    }

    #[test]
    fn symmetric_about_noon() {
        for k in 1..12 {
            let dm = 60.0 * k as f64;
            let a = sun_position(37.4, 100, 720.0 - dm);
            let b = sun_position(37.4, 100, 720.0 + dm);
            assert!((a.elevation - b.elevation).abs() < 0.1);
            assert!((a.azimuth + b.azimuth - 360.0).abs() < 1e-6);
        }
    }
}
