use actinf_core::rational::{to_decimal_string, to_exact_string};
use actinf_core::Rational;

/// Decimal with 2 places, or the exact value when `exact` is set.
pub fn number(value: &Rational, exact: bool) -> String {
    if exact {
        to_exact_string(value)
    } else {
        to_decimal_string(value, 2)
    }
}

/// Left-aligned columns separated by two spaces, without trailing blanks.
pub fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn tsv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join("\t") + "\n").collect()
}
