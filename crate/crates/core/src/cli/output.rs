//! Row records and their CSV/JSON encodings.

use std::io::Write;

use serde_json::{Map, Number, Value};

/// One cell of an output row.
#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Str(String),
    Int(i64),
    Num(f64),
    Bool(bool),
    Empty,
}

impl Field {
    pub fn opt_num(x: Option<f64>) -> Field {
        x.map_or(Field::Empty, Field::Num)
    }

    pub fn opt_int<T: Into<i64>>(x: Option<T>) -> Field {
        x.map_or(Field::Empty, |v| Field::Int(v.into()))
    }

    /// Text used in CSV cells.
    pub fn text(&self) -> String {
        match self {
            Field::Str(s) => s.clone(),
            Field::Int(i) => i.to_string(),
            Field::Num(x) if x.is_finite() => fmt17(*x),
            Field::Num(_) | Field::Empty => String::new(),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Str(s) => Value::String(s.clone()),
            Field::Int(i) => Value::Number((*i).into()),
            Field::Num(x) if x.is_finite() => Value::Number(fmt17(*x).parse::<Number>().expect("numeric text")),
            Field::Num(_) | Field::Empty => Value::Null,
            Field::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Str(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Str(s)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<u32> for Field {
    fn from(x: u32) -> Self {
        Field::Int(x.into())
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::Int(x as i64)
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field::Bool(x)
    }
}

/// Ordered key/value row; every row of a command has the same keys.
pub type Record = Vec<(&'static str, Field)>;

/// `x` with 17 significant digits, positional for moderate exponents,
/// trailing zeros dropped.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    if !(-5..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        return if frac.is_empty() {
            format!("{sign}{}e{exp}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp}", &digits[..1])
        };
    }
    let (int, frac) = if exp >= 0 {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
    };
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// A command's complete output.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, Field)>,
    pub rows: Vec<Record>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let obj = |r: &[(&'static str, Field)]| {
            Value::Object(r.iter().map(|(k, v)| (k.to_string(), v.json())).collect::<Map<_, _>>())
        };
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.into()));
        top.insert("parameters".into(), obj(&self.parameters));
        top.insert("rows".into(), Value::Array(self.rows.iter().map(|r| obj(r)).collect()));
        top.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json encoding");
        s.push('\n');
        s
    }

    /// Header plus one line per row. Warnings are not part of the table.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut wr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        if let Some(first) = self.rows.first() {
            wr.write_record(first.iter().map(|(k, _)| *k))?;
        }
        for r in &self.rows {
            wr.write_record(r.iter().map(|(_, v)| v.text()))?;
        }
        wr.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [
            std::f64::consts::PI,
            -1.0 / 3.0,
            24.0,
            5.783_185_962_946_784,
            1e-7,
            6.02e23,
            0.1,
            123_456_789_012_345_680.0,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt17(24.0), "24");
        assert_eq!(fmt17(31.5), "31.5");
        assert_eq!(fmt17(-0.25), "-0.25");
        assert_eq!(fmt17(1e20), "1e20");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
    }

    #[test]
    fn csv_quotes_and_lf() {
        let r = Report {
            command: "x",
            rows: vec![vec![("a", "p,q".into()), ("b", 1.5.into()), ("c", Field::Empty)]],
            ..Report::default()
        };
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c\n\"p,q\",1.5,\n");
    }

    #[test]
    fn json_shape() {
        let r = Report {
            command: "x",
            parameters: vec![("d", 2u32.into())],
            rows: vec![vec![("v", 0.5.into()), ("w", f64::NAN.into())]],
            warnings: vec!["note".into()],
        };
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["command"], "x");
        assert_eq!(v["rows"][0]["v"].as_f64(), Some(0.5));
        assert!(v["rows"][0]["w"].is_null());
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "parameters", "rows", "warnings"]);
    }
}
