use num_traits::{ToPrimitive, Zero};
use qapstruct::rational::{format, int};
use qapstruct::ExactMatrix;

/// Light to dark.
const RAMP: &[u8] = b" .:-=+*#%@";

/// One glyph per entry (doubled so cells look square), scaled between the
/// smallest and the largest entry, followed by a legend line.
pub fn heatmap(m: &ExactMatrix) -> String {
    let lo = m.entries().iter().min().cloned().unwrap_or_else(Zero::zero);
    let hi = m.entries().iter().max().cloned().unwrap_or_else(Zero::zero);
    let span = &hi - &lo;
    let top = RAMP.len() - 1;
    let mut out = String::new();
    for i in 0..m.n() {
        for v in m.row(i) {
            let level = if span.is_zero() {
                0
            } else {
                ((v - &lo) * int(top as i64) / &span).floor().to_integer().to_usize().unwrap_or(0)
            };
            let g = RAMP[level.min(top)] as char;
            out.push(g);
            out.push(g);
        }
        out.push('\n');
    }
    out.push_str(&format!("scale: ' ' = {} .. '@' = {}\n", format(&lo), format(&hi)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_get_the_end_glyphs() {
        let m = ExactMatrix::from_i64_rows(&[[0, 9], [3, 6]]);
        let lines: Vec<_> = heatmap(&m).lines().map(String::from).collect();
        assert_eq!(lines[0], "  @@");
        assert_eq!(lines[1], "--**");
        assert_eq!(lines[2], "scale: ' ' = 0 .. '@' = 9");
    }

    #[test]
    fn constant_matrix_is_blank() {
        let m = ExactMatrix::from_i64_rows(&[[2, 2], [2, 2]]);
        assert!(heatmap(&m).starts_with("    \n    \n"));
    }
}
