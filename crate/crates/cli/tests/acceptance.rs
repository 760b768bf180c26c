//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p mdrkit-cli --test acceptance -- --nocapture`.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;

use mdrkit::construct::{
    compress, construct_diagonal, construct_nsd, construct_size2, decide, expand_size2, HermitianPencil,
    Size2Data, Verdict,
};
use mdrkit::equivalence::{
    are_equivalent, class_label, pauli, so3_from_su2, su2_from_so3, ClassLabel, EquivalenceKind, Su2,
};
use mdrkit::linalg::{Definiteness, SymMatrix};
use mdrkit::quadform::QuadraticPolynomial;
use mdrkit::verify::{
    cone_check, linear_part, root_eigenvalue_check, verify_determinant, verify_determinant_seeded, VerifyReport,
};
use mdrkit::{Error, DEFAULT_TOL};
use nalgebra::{DMatrix, DVector, Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ITEM1: &str = "1 - 8*x1*x2 - 4*x1*x3 - 100*x2^2 - 12*x2*x3 - x3^2 - 5*x1^2";
const ITEM2: &str = "1 + 4*x1 + 10*x2 - x1^2 - 2*x1*x2 - x2^2";
const ITEM3: &str = "1 + 2*x1 + x1^2 - x2^2 - x3^2 - x4^2";
const BALL5: &str = "1 - x1^2 - x2^2 - x3^2 - x4^2 - x5^2";

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: mdrkit::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn poly(s: &str) -> QuadraticPolynomial {
    s.parse().expect("test polynomial parses")
}

fn max_coeff_residual(r: &VerifyReport) -> f64 {
    r.coeff_residuals.values().fold(0.0, |a, &b| a.max(b))
}

fn verifies(f: &QuadraticPolynomial, p: &HermitianPencil, tol: f64) -> Outcome {
    let r = ok(verify_determinant(f, p, tol, 64), "verify")?;
    ensure!(
        r.ok && max_coeff_residual(&r) <= tol,
        "verification failed: coefficient residual {:e}, sample residual {:e}",
        max_coeff_residual(&r),
        r.max_sample_residual
    );
    Ok(())
}

fn real2(rows: [[f64; 2]; 2]) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]])
}

fn real_pencil(ms: &[[[f64; 2]; 2]]) -> HermitianPencil {
    HermitianPencil::real(ms.iter().map(|&m| real2(m)).collect()).expect("symmetric")
}

fn complex_pencil(ms: &[Matrix2<Complex64>]) -> HermitianPencil {
    let mats: Vec<DMatrix<Complex64>> = ms.iter().map(|m| DMatrix::from_fn(2, 2, |i, j| m[(i, j)])).collect();
    HermitianPencil::from_complex(&mats).expect("Hermitian")
}

fn size2(p: &HermitianPencil) -> Size2Data {
    Size2Data::from_pencil(p).expect("size-2 pencil")
}

fn criterion_1() -> Outcome {
    let f = poly(ITEM1);
    let report = ok(decide(&f, DEFAULT_TOL), "decide")?;
    ensure!(report.verdict == Verdict::Size2Symmetric, "verdict {:?}", report.verdict);
    ensure!(report.schur_rank == 2, "schur rank {}", report.schur_rank);
    let built = ok(construct_size2(&f, DEFAULT_TOL), "construct")?;
    let pencil = built.pencil();
    ensure!(pencil.is_symmetric(), "constructed pencil is not real");
    verifies(&f, &pencil, 1e-9)?;
    let displayed = real_pencil(&[
        [[11.0 / 5.0, 2.0 / 5.0], [2.0 / 5.0, -11.0 / 5.0]],
        [[0.0, 10.0], [10.0, 0.0]],
        [[4.0 / 5.0, 3.0 / 5.0], [3.0 / 5.0, -4.0 / 5.0]],
    ]);
    verifies(&f, &displayed, 1e-9)?;
    let v = ok(are_equivalent(&built, &size2(&displayed), DEFAULT_TOL), "equivalence")?;
    ensure!(v.kind == EquivalenceKind::Equivalent, "constructed vs displayed: {:?}", v.kind);
    Ok(())
}

fn criterion_2() -> Outcome {
    let f = poly(ITEM2);
    ensure!(f.b().as_slice() == [4.0, 10.0], "b = {:?}", f.b().as_slice());
    let s = ok(f.matrix_representation().schur_complement_11(), "schur")?.s;
    let neg = s.scaled(-1.0);
    let expected = [[5.0, 11.0], [11.0, 26.0]];
    for i in 0..2 {
        for j in 0..2 {
            ensure!(neg[(i, j)] == expected[i][j], "-Q/(1,1)[{i}][{j}] = {}", neg[(i, j)]);
        }
    }
    // the rank-one terms behind the displayed pencil, exactly
    let r5 = 5f64.sqrt();
    let a1 = [r5, 11.0 / r5];
    let a2 = [0.0, 3.0 / r5];
    for i in 0..2 {
        for j in 0..2 {
            let g = a1[i] * a1[j] + a2[i] * a2[j];
            ensure!((g - expected[i][j]).abs() < 1e-12, "Gram identity fails at [{i}][{j}]: {g}");
        }
    }
    let reconstructed = real_pencil(&[
        [[2.0, r5], [r5, 2.0]],
        [[5.0 + 3.0 / r5, 11.0 / r5], [11.0 / r5, 5.0 - 3.0 / r5]],
    ]);
    let printed = [[[2.0, 2.2361], [2.2361, 2.0]], [[6.3416, 4.9193], [4.9193, 3.6584]]];
    for (j, m) in printed.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            for (k, want) in row.iter().enumerate() {
                let d = (reconstructed.re(j)[(i, k)] - want).abs();
                ensure!(d <= 1e-3, "printed entry A{}[{i}][{k}] off by {d}", j + 1);
            }
        }
    }
    verifies(&f, &reconstructed, 1e-9)?;
    let built = ok(construct_size2(&f, DEFAULT_TOL), "construct")?;
    ensure!(built.pencil().is_symmetric(), "constructed pencil is not real");
    verifies(&f, &built.pencil(), 1e-9)?;
    let v = ok(are_equivalent(&built, &size2(&reconstructed), DEFAULT_TOL), "equivalence")?;
    ensure!(v.kind == EquivalenceKind::Equivalent, "constructed vs reconstructed: {:?}", v.kind);
    Ok(())
}

fn item3_displayed(swapped: bool) -> HermitianPencil {
    let (a2, a3) = if swapped {
        (pauli::sigma_x(), pauli::sigma_y())
    } else {
        (pauli::sigma_y(), pauli::sigma_x())
    };
    complex_pencil(&[Matrix2::identity(), a2, a3, pauli::sigma_z()])
}

fn criterion_3() -> Outcome {
    let f = poly(ITEM3);
    let report = ok(decide(&f, DEFAULT_TOL), "decide")?;
    ensure!(report.verdict == Verdict::Size2HermitianOnly, "verdict {:?}", report.verdict);
    let built = ok(construct_size2(&f, DEFAULT_TOL), "construct")?;
    verifies(&f, &built.pencil(), 1e-9)?;
    let displayed = item3_displayed(false);
    let swapped = item3_displayed(true);
    verifies(&f, &displayed, 1e-9)?;
    verifies(&f, &swapped, 1e-9)?;

    let v1 = ok(are_equivalent(&built, &size2(&displayed), DEFAULT_TOL), "equivalence")?.kind;
    let v2 = ok(are_equivalent(&built, &size2(&swapped), DEFAULT_TOL), "equivalence")?.kind;
    let decisive = |k| matches!(k, EquivalenceKind::Equivalent | EquivalenceKind::NotEquivalent);
    ensure!(decisive(v1) && decisive(v2) && v1 != v2, "verdicts {v1:?} and {v2:?}");
    let pair = ok(are_equivalent(&size2(&displayed), &size2(&swapped), DEFAULT_TOL), "equivalence")?.kind;
    ensure!(pair == EquivalenceKind::NotEquivalent, "displayed vs swapped: {pair:?}");

    let labels: Vec<ClassLabel> = [built.clone(), size2(&displayed), size2(&swapped)]
        .iter()
        .map(|p| class_label(p, &f, DEFAULT_TOL))
        .collect::<mdrkit::Result<_>>()
        .map_err(|e| format!("class label: {e}"))?;
    let mut distinct = labels.clone();
    distinct.sort_by_key(|l| format!("{l:?}"));
    distinct.dedup();
    ensure!(distinct.len() == 2, "labels {labels:?}");
    ensure!(!labels.contains(&ClassLabel::Unique), "labels {labels:?}");
    let same_as_displayed = labels[0] == labels[1];
    ensure!(
        same_as_displayed == (v1 == EquivalenceKind::Equivalent),
        "labels {labels:?} disagree with verdict {v1:?}"
    );
    Ok(())
}

/// The block pencil with `z_k` in row `k` of the last column, where each
/// `z_k` is `x_p` or `x_p + i x_q`.
fn ball_pattern(rows: &[(usize, Option<usize>)]) -> (Vec<DMatrix<f64>>, Vec<DMatrix<f64>>) {
    let k = rows.len();
    let mut re = vec![DMatrix::zeros(k + 1, k + 1); 5];
    let mut im = vec![DMatrix::zeros(k + 1, k + 1); 5];
    for (pos, &(p, q)) in rows.iter().enumerate() {
        re[p - 1][(pos, k)] = 1.0;
        re[p - 1][(k, pos)] = 1.0;
        if let Some(q) = q {
            im[q - 1][(pos, k)] = 1.0;
            im[q - 1][(k, pos)] = -1.0;
        }
    }
    (re, im)
}

fn matches_pattern(p: &HermitianPencil, rows: &[(usize, Option<usize>)]) -> Outcome {
    let (re, im) = ball_pattern(rows);
    ensure!(p.size() == rows.len() + 1, "size {} instead of {}", p.size(), rows.len() + 1);
    for j in 0..5 {
        let dr = (p.re(j) - &re[j]).amax();
        let di = (p.im(j) - &im[j]).amax();
        ensure!(dr <= 1e-12 && di <= 1e-12, "coefficient {} deviates from the displayed pattern", j + 1);
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let f = poly(BALL5);
    let report = ok(decide(&f, DEFAULT_TOL), "decide")?;
    ensure!(!report.verdict.has_size2(), "verdict {:?}", report.verdict);
    ensure!(report.schur_rank == 5, "schur rank {}", report.schur_rank);
    ensure!(report.available_sizes.iter().copied().eq([4, 5, 6]), "sizes {:?}", report.available_sizes);
    match construct_size2(&f, DEFAULT_TOL) {
        Err(Error::NoSize2Representation(_)) => {}
        other => return Err(format!("construct_size2 gave {other:?}")),
    }
    let nc = ok(construct_nsd(&f, DEFAULT_TOL), "construct_nsd")?;
    verifies(&f, &nc.pencil, 1e-9)?;
    matches_pattern(&nc.pencil, &[(1, None), (2, None), (3, None), (4, None), (5, None)])?;
    let five = ok(compress(&nc, &[(1, 2)]), "compress")?;
    verifies(&f, &five, 1e-9)?;
    matches_pattern(&five, &[(1, Some(2)), (3, None), (4, None), (5, None)])?;
    let four = ok(compress(&nc, &[(1, 2), (3, 4)]), "compress")?;
    verifies(&f, &four, 1e-9)?;
    matches_pattern(&four, &[(1, Some(2)), (3, Some(4)), (5, None)])?;
    Ok(())
}

fn criterion_5() -> Outcome {
    let f = poly(ITEM1);
    let nc = ok(construct_nsd(&f, DEFAULT_TOL), "construct_nsd")?;
    ensure!(nc.pencil.size() == 3, "block pencil has size {}", nc.pencil.size());
    ensure!(nc.pencil.is_symmetric(), "block pencil is not real");
    verifies(&f, &nc.pencil, 1e-9)?;
    let two = ok(compress(&nc, &[(1, 2)]), "compress")?;
    ensure!(two.size() == 2 && !two.is_symmetric(), "compressed pencil has size {}", two.size());
    verifies(&f, &two, 1e-9)?;

    let i = Complex64::i();
    let c = |re: f64| Complex64::new(re, 0.0);
    let herm = |d: f64, z: Complex64| Matrix2::new(c(d), z, z.conj(), c(-d));
    let twisted = complex_pencil(&[
        herm(11.0 / 5.0, i * 2.0 / 5.0),
        herm(0.0, i * 10.0),
        herm(4.0 / 5.0, i * 3.0 / 5.0),
    ]);
    let displayed_compressed = complex_pencil(&[
        herm(0.0, Complex64::new(11.0, 2.0) / 5.0),
        herm(0.0, i * 10.0),
        herm(0.0, Complex64::new(4.0, 3.0) / 5.0),
    ]);
    for (name, p) in [("twisted", &twisted), ("displayed compressed", &displayed_compressed)] {
        verifies(&f, p, 1e-9).map_err(|e| format!("{name}: {e}"))?;
        let v = ok(are_equivalent(&size2(&two), &size2(p), DEFAULT_TOL), "equivalence")?;
        ensure!(v.kind == EquivalenceKind::Equivalent, "compressed vs {name}: {:?}", v.kind);
    }
    Ok(())
}

fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.gen_range(-half_width..=half_width))
}

fn random_size2(rng: &mut ChaCha8Rng) -> Size2Data {
    let n = rng.gen_range(1..=6);
    let u = if rng.gen_bool(0.25) {
        DVector::zeros(n)
    } else {
        uniform_vec(rng, n, 2.0)
    };
    Size2Data {
        r: uniform_vec(rng, n, 2.0),
        s: uniform_vec(rng, n, 2.0),
        t: uniform_vec(rng, n, 2.0),
        u,
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let original = random_size2(&mut rng);
        let f = expand_size2(&original);
        let report = ok(decide(&f, DEFAULT_TOL), "decide")?;
        ensure!(report.verdict.has_size2(), "case {case}: verdict {:?}", report.verdict);
        let rebuilt = ok(construct_size2(&f, DEFAULT_TOL), "construct")?;
        let r = ok(verify_determinant(&f, &rebuilt.pencil(), 1e-8, 64), "verify")?;
        ensure!(r.ok && max_coeff_residual(&r) <= 1e-8, "case {case}: residual {:e}", max_coeff_residual(&r));
        let v = ok(are_equivalent(&original, &rebuilt, DEFAULT_TOL), "equivalence")?;
        let l1 = ok(class_label(&original, &f, DEFAULT_TOL), "label")?;
        let l2 = ok(class_label(&rebuilt, &f, DEFAULT_TOL), "label")?;
        let consistent = match v.kind {
            EquivalenceKind::Equivalent => l1 == l2,
            EquivalenceKind::NotEquivalent => l1 != l2 && l1 != ClassLabel::Unique,
            EquivalenceKind::DifferentPolynomial => false,
        };
        ensure!(consistent, "case {case}: {:?} with labels {l1:?}, {l2:?}", v.kind);
    }
    Ok(())
}

/// All sets of disjoint pairs `(p, q)`, `p < q`, from rows `1..=r`.
fn pairings(r: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        go(rest, acc, out);
        for (idx, &q) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, &v)| v).collect();
            acc.push((first, q));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let rows: Vec<usize> = (1..=r).collect();
    let mut out = Vec::new();
    go(&rows, &mut Vec::new(), &mut out);
    out
}

fn random_nsd(rng: &mut ChaCha8Rng) -> QuadraticPolynomial {
    let r = rng.gen_range(1..=5);
    let n = rng.gen_range(r..=6);
    let g = DMatrix::from_fn(r, n, |_, _| rng.gen_range(-1.0..=1.0));
    let a = SymMatrix::from_lower(-(g.transpose() * &g)).expect("square");
    QuadraticPolynomial::new(a, uniform_vec(rng, n, 2.0), 1.0).expect("dimensions agree")
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let f = random_nsd(&mut rng);
        let nc = ok(construct_nsd(&f, DEFAULT_TOL), "construct_nsd")?;
        let check = |p: &HermitianPencil, what: &str| -> Outcome {
            let r = ok(verify_determinant_seeded(&f, p, 1e-8, 64, 42), "verify")?;
            ensure!(
                r.ok && max_coeff_residual(&r) <= 1e-8,
                "case {case}, {what}: coefficient residual {:e}, sample residual {:e}",
                max_coeff_residual(&r),
                r.max_sample_residual
            );
            Ok(())
        };
        check(&nc.pencil, "block pencil")?;
        for pairing in pairings(nc.c.nrows()) {
            let p = ok(compress(&nc, &pairing), "compress")?;
            check(&p, &format!("pairing {pairing:?}"))?;
        }
        let witness = ok(cone_check(&f, &nc.pencil, DEFAULT_TOL), "cone_check")?;
        ensure!(witness.is_none(), "case {case}: cone witness found for NSD quadratic part");
        for _ in 0..50 {
            let x: Vec<f64> = (0..f.n()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let d = ok(ok(linear_part(&nc.pencil, &x), "L(x)")?.definiteness(DEFAULT_TOL), "definiteness")?;
            ensure!(d != Definiteness::Psd { rank: 2 }, "case {case}: L(x) is PSD of rank 2 at {x:?}");
        }
    }
    Ok(())
}

/// Random symmetric matrix with the given eigenvalues.
fn with_spectrum(rng: &mut ChaCha8Rng, eig: &[f64]) -> DMatrix<f64> {
    let n = eig.len();
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..=1.0));
    let q = m.qr().q();
    &q * DMatrix::from_diagonal(&DVector::from_column_slice(eig)) * q.transpose()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let tau = 1e-7;
    let mut rz_seen = 0;
    for case in 0..200 {
        let n = rng.gen_range(1..=5);
        let b = uniform_vec(&mut rng, n, 2.0);
        // Schur complement: NSD (possibly singular) in half the cases,
        // otherwise with a planted positive eigenvalue
        let planted = case % 2 == 1;
        let mut eig: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(0.3) { 0.0 } else { -rng.gen_range(0.1..=2.0) })
            .collect();
        if planted {
            eig[0] = rng.gen_range(0.5..=2.0);
        }
        let s = with_spectrum(&mut rng, &eig);
        let a = SymMatrix::from_lower(s + &b * b.transpose() / 4.0).expect("square");
        let f = QuadraticPolynomial::new(a, b, 1.0).expect("dimensions agree");
        let claimed = ok(f.is_real_zero(DEFAULT_TOL), "is_real_zero")?;

        let mut sampled_rz = true;
        for _ in 0..200 {
            let x = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
            let x = x.normalize();
            let (alpha, beta, gamma) = ok(f.restrict_to_line(x.as_slice()), "restrict")?;
            let disc = beta * beta - 4.0 * alpha * gamma;
            let scale = beta * beta + (4.0 * alpha * gamma).abs();
            if disc < -tau * (1.0 + scale) {
                sampled_rz = false;
            }
        }
        ensure!(claimed == sampled_rz, "case {case}: is_real_zero {claimed}, sampling says {sampled_rz}");
        ensure!(claimed == !planted, "case {case}: is_real_zero {claimed} for planted={planted}");
        rz_seen += usize::from(claimed);
    }
    ensure!(rz_seen == 100, "{rz_seen} real-zero instances");
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..50 {
        let (f, p) = if case % 2 == 0 {
            let f = expand_size2(&random_size2(&mut rng));
            let p = ok(construct_size2(&f, DEFAULT_TOL), "construct")?.pencil();
            (f, p)
        } else {
            let f = random_nsd(&mut rng);
            let nc = ok(construct_nsd(&f, DEFAULT_TOL), "construct_nsd")?;
            let pairing: Vec<_> = (1..nc.c.nrows()).step_by(2).map(|p| (p, p + 1)).collect();
            let p = ok(compress(&nc, &pairing), "compress")?;
            (f, p)
        };
        ensure!(ok(verify_determinant(&f, &p, 1e-8, 64), "verify")?.ok, "case {case}: pencil does not verify");
        let x: Vec<f64> = (0..f.n()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let holds = ok(root_eigenvalue_check(&f, &p, &x, 1e-8), "root check")?;
        ensure!(holds, "case {case}: eigenvalues of L(x) do not match the roots at {x:?}");
    }
    Ok(())
}

fn pauli_combo(v: &Vector3<f64>) -> Matrix2<Complex64> {
    pauli::sigma_z() * Complex64::from(v[0]) + pauli::sigma_x() * Complex64::from(v[1]) + pauli::sigma_y() * Complex64::from(v[2])
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..500 {
        let mut q = [0.0f64; 4];
        for v in &mut q {
            *v = rng.gen_range(-1.0..=1.0);
        }
        let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let u = Su2 { a: q[0] / norm, b: q[1] / norm, c: q[2] / norm, d: q[3] / norm };
        let o = ok(so3_from_su2(&u), "so3_from_su2")?;
        let orth = (o.transpose() * o - Matrix3::identity()).amax();
        ensure!(orth <= 1e-12, "case {case}: orthogonality residual {orth:e}");
        ensure!((o.determinant() - 1.0).abs() <= 1e-12, "case {case}: det {}", o.determinant());

        let klm = Vector3::new(rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let um = u.matrix();
        let lhs = um.adjoint() * pauli_combo(&klm) * um;
        let rhs = pauli_combo(&(o * klm));
        let err = (lhs - rhs).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        ensure!(err <= 1e-10, "case {case}: conjugation identity off by {err:e}");

        let back = ok(su2_from_so3(&o, DEFAULT_TOL), "su2_from_so3")?;
        let same = [back.a - u.a, back.b - u.b, back.c - u.c, back.d - u.d].iter().all(|d| d.abs() <= 1e-9);
        let negated = [back.a + u.a, back.b + u.b, back.c + u.c, back.d + u.d].iter().all(|d| d.abs() <= 1e-9);
        ensure!(same || negated, "case {case}: roundtrip gave {back:?} for {u:?}");

        match su2_from_so3(&(-o), DEFAULT_TOL) {
            Err(Error::NotRotation { .. }) => {}
            other => return Err(format!("case {case}: det -1 input gave {other:?}")),
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let report = ok(decide(&poly("1 + x1^2"), DEFAULT_TOL), "decide")?;
    ensure!(report.verdict == Verdict::NoMdr, "1 + x1^2: {:?}", report.verdict);
    match construct_diagonal(&poly(ITEM1), DEFAULT_TOL) {
        Err(Error::NoDiagonalRepresentation { .. }) => {}
        other => return Err(format!("item 1 diagonal construction gave {other:?}")),
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut json = real_pencil(&[
        [[11.0 / 5.0, 2.0 / 5.0], [2.0 / 5.0, -11.0 / 5.0]],
        [[0.0, 10.0], [10.0, 0.0]],
        [[4.0 / 5.0, 3.0 / 5.0], [3.0 / 5.0, -4.0 / 5.0]],
    ])
    .to_json();
    json.matrices[0].re[0][0] += 0.1;
    let path = dir.path().join("corrupted.json");
    std::fs::write(&path, serde_json::to_string(&json).expect("serializes")).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_mdrkit"))
        .args(["verify", "-f", ITEM1, "--json", "--pencil"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(3), "verify exit {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure!(v["failing_monomial"] == "x1", "failing monomial {}", v["failing_monomial"]);
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("golden: size-2 symmetric pencil of a rank-2 Schur complement", criterion_1),
        ("golden: two-variable pencil with sqrt(5) entries", criterion_2),
        ("golden: Hermitian-only pencil and its two classes", criterion_3),
        ("golden: unit ball in five variables, sizes 6, 5 and 4", criterion_4),
        ("golden: size-3 block pencil compressed to size 2", criterion_5),
        ("property: size-2 roundtrip, 200 instances", criterion_6),
        ("property: NSD block pencils and compressions, 100 instances", criterion_7),
        ("oracle: real-zero test against sampled discriminants, 200 instances", criterion_8),
        ("property: eigenvalues of L(x) against line roots, 50 triples", criterion_9),
        ("property: SU(2) to SO(3) map, 500 quaternions", criterion_10),
        ("negative controls", criterion_11),
    ];
    let mut failed = Vec::new();
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let id = idx + 1;
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("PASS {id:>2}  {name}"),
            Err(why) => {
                println!("FAIL {id:>2}  {name}: {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
