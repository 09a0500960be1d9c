/// Hexcone RGB to HSV conversion.
///
/// Returns `(h, s, v)` with `h` in degrees `[0, 360)` and `s`, `v` in `[0, 1]`.
/// Achromatic pixels (max == min) get `h = 0`; black gets `s = 0`.
pub fn rgb_to_hsv(r: u8, g: u8, b: u8) -> (f64, f64, f64) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let v = f64::from(max) / 255.0;
    if max == 0 {
        return (0.0, 0.0, v);
    }
    let delta = f64::from(max - min);
    let s = delta / f64::from(max);
    if max == min {
        return (0.0, s, v);
    }
    let (rf, gf, bf) = (f64::from(r), f64::from(g), f64::from(b));
    let mut h = if r == max {
        60.0 * ((gf - bf) / delta)
    } else if g == max {
        60.0 * ((bf - rf) / delta + 2.0)
    } else {
        60.0 * ((rf - gf) / delta + 4.0)
    };
    if h < 0.0 {
        h += 360.0;
    }
    if h >= 360.0 {
        h -= 360.0;
    }
    (h, s, v)
}
