/// Formats `x` with `decimals` places, rounding half away from zero on the
/// shortest decimal representation of `x` (so 0.125 gives "0.13", which
/// binary-exact rounding would not).
pub fn round_half_up(x: f64, decimals: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let repr = format!("{}", x.abs());
    let (int_part, frac_part) = repr.split_once('.').unwrap_or((&repr, ""));
    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes().chain(std::iter::repeat(b'0')).take(decimals))
        .map(|b| b - b'0')
        .collect();
    let round_up = frac_part.as_bytes().get(decimals).is_some_and(|d| *d >= b'5');
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - decimals;
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let body = if decimals == 0 {
        text
    } else {
        format!("{}.{}", &text[..split], &text[split..])
    };
    let is_zero = digits.iter().all(|d| *d == 0);
    if x.is_sign_negative() && !is_zero {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_up() {
        assert_eq!(round_half_up(0.125, 2), "0.13");
        assert_eq!(round_half_up(2.675, 2), "2.68");
        assert_eq!(round_half_up(9.703258693, 2), "9.70");
        assert_eq!(round_half_up(8.565446932, 2), "8.57");
        assert_eq!(round_half_up(99.995, 2), "100.00");
        assert_eq!(round_half_up(100.0, 2), "100.00");
        assert_eq!(round_half_up(0.0, 2), "0.00");
        assert_eq!(round_half_up(-1.005, 2), "-1.01");
        assert_eq!(round_half_up(-0.001, 2), "0.00");
        assert_eq!(round_half_up(1e-20, 3), "0.000");
        assert_eq!(round_half_up(7.5, 0), "8");
    }
}
