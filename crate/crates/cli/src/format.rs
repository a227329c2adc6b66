use serde_json::Value;

/// `%.12e`: twelve digits after the point, signed two-digit exponent.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Rounds every float in `v` to the twelve-digit printed value so JSON
/// carries the same numbers as the text formats.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let rounded: f64 = fmt_float(x).parse().unwrap_or(x);
            serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(v)).expect("JSON serialises");
    s.push('\n');
    s
}

/// Rows of already formatted cells.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Right-aligned columns separated by two spaces.
    pub fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.header[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printf_style_floats() {
        assert_eq!(fmt_float(1.0), "1.000000000000e+00");
        assert_eq!(fmt_float(-3.86e-7), "-3.860000000000e-07");
        assert_eq!(fmt_float(0.0), "0.000000000000e+00");
        assert_eq!(fmt_float(1.5e123), "1.500000000000e+123");
        assert_eq!(fmt_float(f64::NAN), "nan");
    }

    #[test]
    fn json_rounding() {
        let v = round_json(serde_json::json!({"a": [0.1 + 0.2, 3], "b": 1.0 / 3.0}));
        assert_eq!(v["a"][0].as_f64().unwrap(), 0.3);
        assert_eq!(v["a"][1], 3);
        assert_eq!(v["b"].as_f64().unwrap(), 0.3333333333333);
    }

    #[test]
    fn table_layouts() {
        let mut t = Table::new(&["x", "value"]);
        t.push(vec!["1".into(), "2.5".into()]);
        assert_eq!(t.csv(), "x,value\n1,2.5\n");
        assert_eq!(t.text(), "x  value\n1    2.5\n");
    }
}
