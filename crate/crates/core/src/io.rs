//! Plain-text and JSON matrix files.
//!
//! Text: one row per line, entries separated by whitespace, complex entries
//! written `a+bi` / `a-bi` without spaces. Dimensions are inferred.
//!
//! JSON: `{"dtype": "real"|"complex", "rows": r, "cols": c, "data": [...]}`
//! with nested row arrays; complex entries are `[re, im]` pairs.
//!
//! Both formats round-trip every finite `f64` exactly at the default
//! precision of 17 significant digits.

use serde_json::{json, Map, Value};

use crate::{Complex64, ComplexMatrix, Error, RealMatrix, Result};

/// Full precision: enough significant digits to round-trip any `f64`.
pub const FULL_PRECISION: usize = 17;

/// A matrix read from a file, tagged with its scalar type.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Real(RealMatrix),
    Complex(ComplexMatrix),
}

impl Matrix {
    pub fn dtype(&self) -> &'static str {
        match self {
            Matrix::Real(_) => "real",
            Matrix::Complex(_) => "complex",
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            Matrix::Real(m) => m.shape(),
            Matrix::Complex(m) => m.shape(),
        }
    }

    /// The complex version of the matrix (real input is promoted).
    pub fn to_complex(&self) -> ComplexMatrix {
        match self {
            Matrix::Real(m) => m.map(|x| Complex64::new(x, 0.0)),
            Matrix::Complex(m) => m.clone(),
        }
    }
}

impl From<RealMatrix> for Matrix {
    fn from(m: RealMatrix) -> Self {
        Matrix::Real(m)
    }
}

impl From<ComplexMatrix> for Matrix {
    fn from(m: ComplexMatrix) -> Self {
        Matrix::Complex(m)
    }
}

#[derive(Debug, Clone, Copy)]
enum Entry {
    Real(f64),
    Complex(Complex64),
}

fn parse_float(token: &str) -> Option<f64> {
    // Rust accepts "inf"/"nan" spellings; matrices must be finite.
    token.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn parse_entry(token: &str) -> Option<Entry> {
    let Some(body) = token.strip_suffix('i') else {
        return parse_float(token).map(Entry::Real);
    };
    // Split at the sign that starts the imaginary part: the last '+' or '-'
    // that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re = parse_float(&body[..split])?;
    let im_text = &body[split..];
    if im_text.len() < 2 {
        return None;
    }
    let im = parse_float(im_text)?;
    Some(Entry::Complex(Complex64::new(re, im)))
}

/// Parses the whitespace text format. Blank lines are ignored.
pub fn parse_text(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<Entry>> = Vec::new();
    let mut width = None;
    let mut any_complex = false;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, token) in line.split_whitespace().enumerate() {
            let entry = parse_entry(token).ok_or_else(|| Error::Format {
                line: line_no,
                message: format!("cannot parse entry {} (`{token}`)", col + 1),
            })?;
            any_complex |= matches!(entry, Entry::Complex(_));
            row.push(entry);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Format {
                    line: line_no,
                    message: format!("ragged row: expected {w} entries, found {}", row.len()),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    let Some(cols) = width else {
        return Err(Error::Format {
            line: 1,
            message: "no matrix entries".into(),
        });
    };
    let nrows = rows.len();
    if any_complex {
        Ok(Matrix::Complex(ComplexMatrix::from_fn(nrows, cols, |i, j| {
            match rows[i][j] {
                Entry::Real(x) => Complex64::new(x, 0.0),
                Entry::Complex(z) => z,
            }
        })))
    } else {
        Ok(Matrix::Real(RealMatrix::from_fn(nrows, cols, |i, j| {
            match rows[i][j] {
                Entry::Real(x) => x,
                Entry::Complex(z) => z.re,
            }
        })))
    }
}

/// Shortest representation that parses back to the value rounded to
/// `precision` significant digits.
pub fn format_real(x: f64, precision: usize) -> String {
    let x = if precision >= FULL_PRECISION {
        x
    } else {
        let p = precision.max(1);
        format!("{:.*e}", p - 1, x).parse().unwrap_or(x)
    };
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_complex(z: Complex64, precision: usize) -> String {
    let re = format_real(z.re, precision);
    let im = format_real(z.im.abs(), precision);
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

pub fn serialize_text(m: &Matrix, precision: usize) -> String {
    let mut out = String::new();
    let (rows, cols) = m.shape();
    for i in 0..rows {
        let line: Vec<String> = (0..cols)
            .map(|j| match m {
                Matrix::Real(a) => format_real(a[(i, j)], precision),
                Matrix::Complex(a) => format_complex(a[(i, j)], precision),
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn schema(field: &'static str, message: impl Into<String>) -> Error {
    Error::Schema {
        field,
        message: message.into(),
    }
}

fn get_dim(obj: &Map<String, Value>, field: &'static str) -> Result<usize> {
    let v = obj.get(field).ok_or_else(|| schema(field, "missing"))?;
    v.as_u64()
        .filter(|&n| n > 0)
        .map(|n| n as usize)
        .ok_or_else(|| schema(field, format!("expected a positive integer, found {v}")))
}

fn get_number(v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| schema("data", format!("expected a finite number, found {v}")))
}

/// Parses the JSON format, validating every field.
pub fn parse_structured(text: &str) -> Result<Matrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format {
        line: e.line(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("dtype", "top-level value must be an object"))?;
    let dtype = obj
        .get("dtype")
        .ok_or_else(|| schema("dtype", "missing"))?
        .as_str()
        .ok_or_else(|| schema("dtype", "expected a string"))?;
    let complex = match dtype {
        "real" => false,
        "complex" => true,
        other => return Err(schema("dtype", format!("unknown dtype `{other}`"))),
    };
    let rows = get_dim(obj, "rows")?;
    let cols = get_dim(obj, "cols")?;
    let data = obj
        .get("data")
        .ok_or_else(|| schema("data", "missing"))?
        .as_array()
        .ok_or_else(|| schema("data", "expected an array of rows"))?;
    if data.len() != rows {
        return Err(schema(
            "data",
            format!("has {} rows, `rows` says {rows}", data.len()),
        ));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| schema("data", format!("row {i} is not an array")))?;
        if row.len() != cols {
            return Err(schema(
                "data",
                format!("row {i} has {} entries, `cols` says {cols}", row.len()),
            ));
        }
        for v in row {
            let z = if complex {
                match v.as_array().map(Vec::as_slice) {
                    Some([re, im]) => Complex64::new(get_number(re)?, get_number(im)?),
                    _ => {
                        return Err(schema(
                            "data",
                            format!("complex entries must be [re, im] pairs, found {v}"),
                        ))
                    }
                }
            } else {
                if v.is_array() {
                    return Err(schema("data", "dtype is real but an entry is an array"));
                }
                Complex64::new(get_number(v)?, 0.0)
            };
            flat.push(z);
        }
    }
    if complex {
        Ok(Matrix::Complex(ComplexMatrix::from_row_slice(rows, cols, &flat)))
    } else {
        let re: Vec<f64> = flat.iter().map(|z| z.re).collect();
        Ok(Matrix::Real(RealMatrix::from_row_slice(rows, cols, &re)))
    }
}

pub fn serialize_structured(m: &Matrix) -> String {
    let (rows, cols) = m.shape();
    let data: Vec<Value> = (0..rows)
        .map(|i| {
            Value::Array(
                (0..cols)
                    .map(|j| match m {
                        Matrix::Real(a) => json!(a[(i, j)]),
                        Matrix::Complex(a) => json!([a[(i, j)].re, a[(i, j)].im]),
                    })
                    .collect(),
            )
        })
        .collect();
    let value = json!({
        "dtype": m.dtype(),
        "rows": rows,
        "cols": cols,
        "data": data,
    });
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_text_examples() {
        assert_eq!(
            parse_text("0 1\n-1 0\n").unwrap(),
            Matrix::Real(dmatrix![0.0, 1.0; -1.0, 0.0])
        );
        assert_eq!(
            parse_text("1+0i 0+1i\n").unwrap(),
            Matrix::Complex(dmatrix![c(1.0, 0.0), c(0.0, 1.0)])
        );
        match parse_text("1 2\n3\n") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_text_complex_tokens() {
        let m = parse_text("1.5e-3-2.5E+2i -3-4i 2 -0-1e-300i\n").unwrap();
        assert_eq!(
            m,
            Matrix::Complex(dmatrix![c(1.5e-3, -250.0), c(-3.0, -4.0), c(2.0, 0.0), c(-0.0, -1e-300)])
        );
    }

    #[test]
    fn parse_text_rejects_junk() {
        for bad in ["1 x\n", "1 2i\n", "nan 1\n", "inf\n", "1+i\n", "", "\n\n"] {
            assert!(matches!(parse_text(bad), Err(Error::Format { .. })), "{bad:?}");
        }
        match parse_text("1 2\n3 oops\n") {
            Err(Error::Format { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("oops"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serialize_text_examples() {
        let om = Matrix::Real(dmatrix![0.0, 1.0; -1.0, 0.0]);
        assert_eq!(serialize_text(&om, FULL_PRECISION), "0 1\n-1 0\n");
        let i = Matrix::Complex(dmatrix![c(0.0, 1.0)]);
        assert_eq!(serialize_text(&i, FULL_PRECISION), "0+1i\n");
        let small = Matrix::Real(dmatrix![1e-300, 0.1]);
        assert_eq!(serialize_text(&small, FULL_PRECISION), "1e-300 0.1\n");
        let third = Matrix::Real(dmatrix![1.0 / 3.0]);
        assert_eq!(serialize_text(&third, 4), "0.3333\n");
    }

    #[test]
    fn structured_examples() {
        let m = parse_structured(r#"{"dtype":"real","rows":1,"cols":1,"data":[[2.0]]}"#).unwrap();
        assert_eq!(m, Matrix::Real(dmatrix![2.0]));

        let id = Matrix::Complex(ComplexMatrix::identity(1, 1));
        assert_eq!(
            serialize_structured(&id),
            r#"{"cols":1,"data":[[[1.0,0.0]]],"dtype":"complex","rows":1}"#
        );

        let err = parse_structured(r#"{"dtype":"real","rows":3,"cols":3,"data":[[1,2,3],[4,5,6]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Schema { field: "data", .. }));
    }

    #[test]
    fn structured_schema_errors_name_the_field() {
        let cases = [
            (r#"{"rows":1,"cols":1,"data":[[1]]}"#, "dtype"),
            (r#"{"dtype":"quaternion","rows":1,"cols":1,"data":[[1]]}"#, "dtype"),
            (r#"{"dtype":"real","cols":1,"data":[[1]]}"#, "rows"),
            (r#"{"dtype":"real","rows":1,"cols":0,"data":[[1]]}"#, "cols"),
            (r#"{"dtype":"real","rows":1,"cols":1}"#, "data"),
            (r#"{"dtype":"real","rows":1,"cols":1,"data":[[[1,0]]]}"#, "data"),
            (r#"{"dtype":"complex","rows":1,"cols":1,"data":[[1]]}"#, "data"),
            (r#"{"dtype":"real","rows":1,"cols":2,"data":[[1]]}"#, "data"),
        ];
        for (text, field) in cases {
            match parse_structured(text) {
                Err(Error::Schema { field: f, .. }) => assert_eq!(f, field, "{text}"),
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
        assert!(matches!(parse_structured("{not json"), Err(Error::Format { .. })));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
    }

    fn real_matrix() -> impl Strategy<Value = RealMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(finite(), r * c)
                .prop_map(move |v| RealMatrix::from_row_slice(r, c, &v))
        })
    }

    fn complex_matrix() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec((finite(), finite()), r * c).prop_map(move |v| {
                let z: Vec<Complex64> = v.into_iter().map(|(a, b)| c_(a, b)).collect();
                ComplexMatrix::from_row_slice(r, c, &z)
            })
        })
    }

    fn c_(a: f64, b: f64) -> Complex64 {
        Complex64::new(a, b)
    }

    fn bits_equal(a: &Matrix, b: &Matrix) -> bool {
        match (a, b) {
            (Matrix::Real(x), Matrix::Real(y)) => {
                x.shape() == y.shape() && x.iter().zip(y.iter()).all(|(p, q)| p.to_bits() == q.to_bits())
            }
            (Matrix::Complex(x), Matrix::Complex(y)) => {
                x.shape() == y.shape()
                    && x.iter().zip(y.iter()).all(|(p, q)| {
                        p.re.to_bits() == q.re.to_bits() && p.im.to_bits() == q.im.to_bits()
                    })
            }
            _ => false,
        }
    }

    proptest! {
        #[test]
        fn real_roundtrip_is_bit_exact(m in real_matrix()) {
            let m = Matrix::Real(m);
            let text = parse_text(&serialize_text(&m, FULL_PRECISION)).unwrap();
            let json = parse_structured(&serialize_structured(&m)).unwrap();
            prop_assert!(bits_equal(&text, &m));
            prop_assert!(bits_equal(&json, &m));
        }

        #[test]
        fn complex_roundtrip_is_bit_exact(m in complex_matrix()) {
            let m = Matrix::Complex(m);
            let text = parse_text(&serialize_text(&m, FULL_PRECISION)).unwrap();
            let json = parse_structured(&serialize_structured(&m)).unwrap();
            prop_assert!(bits_equal(&text, &m));
            prop_assert!(bits_equal(&json, &m));
        }
    }
}
