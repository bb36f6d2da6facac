use lgkit::classify::{check_invertible, weight_system};
use lgkit::jacobian::jacobian_basis;
use lgkit::mirror::standard_good_basis;
use lgkit::poly::Polynomial;
use std::time::Instant;

fn loop_poly(a: &[u32]) -> Polynomial {
    let n = a.len();
    let rows: Vec<Vec<u32>> = a.iter().enumerate().map(|(i, &ai)| {
        let mut row = vec![0u32; n];
        row[i] = ai;
        row[(i + 1) % n] = 1;
        row
    }).collect();
    Polynomial::from_exponent_rows(rows, n).unwrap()
}

fn chain_poly(a: &[u32]) -> Polynomial {
    let n = a.len();
    let rows: Vec<Vec<u32>> = a.iter().enumerate().map(|(i, &ai)| {
        let mut row = vec![0u32; n];
        row[i] = ai;
        if i > 0 { row[i - 1] = 1; }
        row
    }).collect();
    Polynomial::from_exponent_rows(rows, n).unwrap()
}

fn main() {
    for (name, f) in [
        ("loop66666", loop_poly(&[6,6,6,6,6])),
        ("chain66666", chain_poly(&[6,6,6,6,6])),
        ("loop44444", loop_poly(&[4,4,4,4,4])),
        ("chain44444", chain_poly(&[4,4,4,4,4])),
    ] {
        let w = check_invertible(&f).unwrap();
        let ws = weight_system(&w.matrix).unwrap();
        let t0 = Instant::now();
        let gb = standard_good_basis(&w).unwrap();
        let t1 = t0.elapsed();
        let t0 = Instant::now();
        let jb = jacobian_basis(&f, &ws.weights).unwrap();
        let t2 = t0.elapsed();
        println!("{name}: mu={} good_basis={t1:?} jacobian={t2:?}", jb.len());
    }
}
