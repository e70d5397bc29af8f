use std::fmt::Write;

use num_complex::Complex64;

/// Fifteen significant digits in scientific notation; `-0` prints as `0`.
pub fn num(x: f64) -> String {
    format!("{:.14e}", x + 0.0)
}

pub fn complex(z: Complex64) -> String {
    format!("{} {}", num(z.re), num(z.im))
}

/// Accumulates `key = value` lines.
#[derive(Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn line(&mut self, key: impl AsRef<str>, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{} = {}", key.as_ref(), value);
        self
    }

    pub fn num(&mut self, key: impl AsRef<str>, x: f64) -> &mut Self {
        self.line(key, num(x))
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(num(std::f64::consts::PI), "3.14159265358979e0");
        assert_eq!(num(-0.0), "0.00000000000000e0");
        assert_eq!(num(-1.5e-12), "-1.50000000000000e-12");
    }
}
