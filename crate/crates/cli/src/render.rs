use std::fmt::Write;

use mdrkit::construct::DecisionReport;
use mdrkit::equivalence::{EquivalenceVerdict, Su2};
use mdrkit::verify::{ConeWitness, VerifyReport};
use serde_json::{json, Value};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn decision(r: &DecisionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    let _ = writeln!(s, "real-zero: {}", yes_no(r.rz_polynomial));
    let _ = writeln!(s, "quadratic part: NSD {}, rank {}", yes_no(r.a_is_nsd), r.a_rank);
    let _ = writeln!(s, "Schur complement: NSD {}, rank {}", yes_no(r.schur_nsd), r.schur_rank);
    let _ = writeln!(s, "diagonal: {}", yes_no(r.diagonal_possible));
    let sizes = if r.available_sizes.is_empty() {
        "none".to_string()
    } else {
        list(&r.available_sizes)
    };
    let _ = write!(s, "sizes: {sizes}");
    s
}

pub fn verify(r: &VerifyReport) -> String {
    let mut s = String::new();
    match r.failing_monomial {
        Some(m) => {
            let _ = writeln!(s, "mismatch: coefficient of {m} differs by {:e}", r.coeff_residuals[&m]);
        }
        None if !r.ok => {
            let _ = writeln!(s, "mismatch: terms of degree 3 or more present");
        }
        None => {
            let _ = writeln!(s, "ok");
        }
    }
    let worst = r.coeff_residuals.values().fold(0.0f64, |a, &b| a.max(b));
    let _ = writeln!(s, "max coefficient residual: {worst:e}");
    let _ = write!(s, "max sample residual: {:e}", r.max_sample_residual);
    s
}

/// Text display only; rounding noise below 1e-12 prints as 0.
fn num(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn complex(re: f64, im: f64) -> String {
    let (re, im) = (num(re), num(im));
    if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

pub fn su2_rows(u: &Su2) -> [[String; 2]; 2] {
    let m = u.matrix();
    [
        [complex(m[(0, 0)].re, m[(0, 0)].im), complex(m[(0, 1)].re, m[(0, 1)].im)],
        [complex(m[(1, 0)].re, m[(1, 0)].im), complex(m[(1, 1)].re, m[(1, 1)].im)],
    ]
}

pub fn equivalence(v: &EquivalenceVerdict) -> String {
    let mut s = format!("{:?}", v.kind);
    if let Some(det) = v.connecting_det() {
        let _ = write!(s, "\nconnecting orthogonal determinant: {det}");
    }
    if let Some(u) = &v.witness {
        let rows = su2_rows(u);
        let _ = write!(s, "\nU = [{}, {}]\n    [{}, {}]", rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
    }
    s
}

pub fn equivalence_json(v: &EquivalenceVerdict) -> Value {
    json!({
        "kind": v.kind,
        "witness": v.witness,
        "connecting_det": v.connecting_det(),
    })
}

pub fn cone(w: Option<&ConeWitness>) -> String {
    match w {
        None => "none".to_string(),
        Some(w) => {
            let eig = w.pencil_value.eigenvalues().unwrap_or_default();
            format!(
                "witness: direction [{}]\nL(v) eigenvalues: [{}]\nrank {} = degree {}",
                list(w.direction.iter()),
                list(eig),
                w.rank,
                w.degree
            )
        }
    }
}

pub fn cone_json(w: Option<&ConeWitness>) -> Value {
    match w {
        None => json!({ "witness": null }),
        Some(w) => json!({
            "witness": {
                "direction": w.direction.as_slice(),
                "eigenvalues": w.pencil_value.eigenvalues().unwrap_or_default(),
                "rank": w.rank,
                "degree": w.degree,
            }
        }),
    }
}
