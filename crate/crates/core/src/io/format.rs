/// Renders `v` with 12 significant digits, keeping trailing zeros
/// (C's `%#.12g`): `50.0` becomes `50.0000000000`.
pub fn format_sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000000000".into();
    }
    let sci = format!("{v:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if !(-4..12).contains(&exp) {
        return sci;
    }
    let decimals = (11 - exp) as usize;
    format!("{v:.decimals$}")
}
