//! Number formatting and CSV assembly for command output.

/// Formats `x` with 12 significant digits in the style of C's `%.12g`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The value a reader of the CSV sees: `x` rounded to 12 significant digits.
pub fn rounded(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

/// Comma-separated table with a header row and LF line endings.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    text: String,
    width: usize,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut t = CsvTable {
            text: String::new(),
            width: header.len(),
        };
        t.push_raw(header.iter().map(|h| h.as_ref().to_string()).collect());
        t
    }

    pub fn push_row(&mut self, fields: Vec<String>) {
        assert_eq!(fields.len(), self.width, "row width must match header");
        self.push_raw(fields);
    }

    fn push_raw(&mut self, fields: Vec<String>) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
