//! Exact Wronskian determinants of exponential polynomials.
//!
//! A single-term column `p·e^{kx}` has derivatives `((D + k)^i p)·e^{kx}`,
//! so its exponential factors out of the column. Multi-term inputs are split
//! by multilinearity, each resulting polynomial determinant is computed by
//! fraction-free Bareiss elimination over `Q[x]`, and the pieces are summed
//! with their exponent `Σ k_j`.

use super::{BigRat, ExpPoly, Poly};

/// `W(f_1, …, f_n)`: determinant of the matrix whose row `i` holds the
/// `i`-th derivatives. The empty list gives `1`.
pub fn wronskian(fs: &[ExpPoly]) -> ExpPoly {
    if fs.is_empty() {
        return ExpPoly::from_poly(Poly::one());
    }
    if fs.iter().any(ExpPoly::is_zero) {
        return ExpPoly::zero();
    }
    let per_column: Vec<Vec<(u32, &Poly)>> = fs.iter().map(|f| f.terms().collect()).collect();

    let mut total = ExpPoly::zero();
    let mut choice = vec![0usize; fs.len()];
    loop {
        let picked: Vec<(u32, &Poly)> = choice
            .iter()
            .zip(&per_column)
            .map(|(&c, col)| col[c])
            .collect();
        total = total.add(&single_term_wronskian(&picked));

        // odometer over the term choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return total;
            }
            choice[i] += 1;
            if choice[i] < per_column[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn single_term_wronskian(cols: &[(u32, &Poly)]) -> ExpPoly {
    let n = cols.len();
    let mut matrix = vec![vec![Poly::zero(); n]; n];
    let mut exponent = 0u32;
    for (j, &(k, p)) in cols.iter().enumerate() {
        exponent += k;
        let kq = BigRat::from(i64::from(k));
        let mut entry = p.clone();
        for row in matrix.iter_mut() {
            row[j] = entry.clone();
            entry = &entry.derive() + &entry.scale(&kq);
        }
    }
    ExpPoly::term(bareiss_det(matrix), exponent)
}

/// Fraction-free determinant over `Q[x]`; every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
