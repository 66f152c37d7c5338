#![allow(dead_code)]

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use sympdec_core::io::{self, Matrix};
use sympdec_core::{Complex64, ComplexMatrix, RealMatrix};

pub fn sympdec(args: &[&str], cwd: &Path, stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sympdec"))
        .args(args)
        .current_dir(cwd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sympdec");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().expect("wait for sympdec")
}

pub fn write_real(dir: &Path, name: &str, m: &RealMatrix) -> String {
    let path = dir.join(name);
    std::fs::write(&path, io::serialize_text(&Matrix::Real(m.clone()), io::FULL_PRECISION)).unwrap();
    name.to_string()
}

pub fn read_matrix(path: &Path) -> ComplexMatrix {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let m = if path.extension().is_some_and(|e| e == "json") {
        io::parse_structured(&text)
    } else {
        io::parse_text(&text)
    };
    m.unwrap().to_complex()
}

pub fn real(m: &ComplexMatrix) -> RealMatrix {
    m.map(|z| z.re)
}

pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Hand-checkable inputs shared by the CLI tests.
pub fn omega() -> RealMatrix {
    RealMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

pub fn diag(a: f64, b: f64) -> RealMatrix {
    RealMatrix::from_diagonal(&sympdec_core::nalgebra::DVector::from_vec(vec![a, b]))
}

pub fn exchange() -> RealMatrix {
    RealMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

/// Product of the factor files a command writes, in the order that
/// reproduces its input.
pub fn rebuild(command: &str, dir: &Path, stem: &str, ext: &str) -> ComplexMatrix {
    let f = |factor: &str| read_matrix(&dir.join(format!("{stem}.{factor}.{ext}")));
    match command {
        "takagi" => {
            let w = f("W");
            &w * f("Lambda") * w.transpose()
        }
        "bloch-messiah" => f("O") * f("D") * f("Q"),
        "pre-iwasawa" | "iwasawa" => f("E") * f("D") * f("F"),
        "williamson" => {
            let s = f("S");
            &s * f("T") * s.transpose()
        }
        "polar" => f("P") * f("W"),
        other => panic!("no factor files for {other}"),
    }
}
