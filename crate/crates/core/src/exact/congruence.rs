use super::field::FieldElement;
use super::matrix::ExactMatrix;
use crate::error::{domain, Result};

/// Diagonalizes a symmetric matrix by congruence.
///
/// Returns `(d, C)` with `C` invertible and `Cᵀ S C = diag(d)`.
pub fn congruence_diagonalize(s: &ExactMatrix) -> Result<(Vec<FieldElement>, ExactMatrix)> {
    let (d, c) = run(s, true)?;
    Ok((d, c.expect("transform requested")))
}

/// Diagonal entries only; skips tracking the transform.
pub fn diagonal_entries(s: &ExactMatrix) -> Result<Vec<FieldElement>> {
    Ok(run(s, false)?.0)
}

fn run(s: &ExactMatrix, track: bool) -> Result<(Vec<FieldElement>, Option<ExactMatrix>)> {
    if !s.is_symmetric() {
        return domain("congruence diagonalization needs a symmetric matrix");
    }
    let field = s.field();
    let n = s.rows();
    let mut a: Vec<Vec<FieldElement>> = (0..n).map(|i| (0..n).map(|j| s.get(i, j).clone()).collect()).collect();
    // Columns of the transform, stored as rows for cheap column operations.
    let mut c: Vec<Vec<FieldElement>> = if track {
        (0..n).map(|i| (0..n).map(|j| FieldElement::from_i64(field, (i == j) as i64)).collect()).collect()
    } else {
        Vec::new()
    };
    let mut diag = Vec::with_capacity(n);

    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    diag.extend((k..n).map(|_| FieldElement::zero(field)));
                    break;
                };
                // e_i <- e_i + e_j makes the (i,i) entry 2 a_ij, nonzero in odd characteristic.
                for r in 0..n {
                    let v = &a[i][r] + &a[j][r];
                    a[i][r] = v;
                }
                for r in 0..n {
                    let v = &a[r][i] + &a[r][j];
                    a[r][i] = v;
                }
                if track {
                    for r in 0..n {
                        let v = &c[i][r] + &c[j][r];
                        c[i][r] = v;
                    }
                }
                i
            }
        };
        if pivot != k {
            a.swap(pivot, k);
            for row in a.iter_mut() {
                row.swap(pivot, k);
            }
            if track {
                c.swap(pivot, k);
            }
        }
        let inv = a[k][k].inv()?;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] * &inv;
            for col in k + 1..n {
                if !a[k][col].is_zero() {
                    let v = &a[r][col] - &(&f * &a[k][col]);
                    a[r][col] = v;
                }
            }
            if track {
                for t in 0..n {
                    if !c[k][t].is_zero() {
                        let v = &c[r][t] - &(&f * &c[k][t]);
                        c[r][t] = v;
                    }
                }
            }
        }
        for r in k + 1..n {
            a[r][k] = FieldElement::zero(field);
            a[k][r] = FieldElement::zero(field);
        }
        diag.push(a[k][k].clone());
    }

    let transform = track.then(|| {
        let cols = ExactMatrix::from_rows(field, c).expect("square transform");
        cols.transpose()
    });
    Ok((diag, transform.map(|t| if n == 0 { ExactMatrix::zeros(field, 0, 0) } else { t })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{FieldDescriptor, SquareClass};

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn check(s: &ExactMatrix) -> Vec<FieldElement> {
        let (d, c) = congruence_diagonalize(s).unwrap();
        let lhs = c.transpose().mul(s).unwrap().mul(&c).unwrap();
        assert_eq!(lhs, ExactMatrix::diagonal(s.field(), &d));
        assert!(c.is_invertible());
        d
    }

    #[test]
    fn hyperbolic_plane_splits() {
        let d = check(&ExactMatrix::from_i64_rows(Q, &[[0, 1], [1, 0]]));
        // ⟨a, −a⟩ ≅ ⟨1, −1⟩: the two classes differ exactly by −1.
        let ratio = SquareClass::of(&(&d[0] * &d[1].inv().unwrap())).unwrap();
        assert_eq!(ratio, SquareClass::minus_one(Q));
    }

    #[test]
    fn diagonal_input_is_unchanged() {
        let d = check(&ExactMatrix::from_i64_rows(Q, &[[2, 0], [0, 3]]));
        assert_eq!(d, vec![FieldElement::from_i64(Q, 2), FieldElement::from_i64(Q, 3)]);
    }

    #[test]
    fn completes_the_square() {
        let d = check(&ExactMatrix::from_i64_rows(Q, &[[2, 1], [1, 2]]));
        assert_eq!(d, vec![FieldElement::from_i64(Q, 2), FieldElement::parse(Q, "3/2").unwrap()]);
    }

    #[test]
    fn zero_count_is_radical_dimension() {
        let s = ExactMatrix::from_i64_rows(Q, &[[0, 1, 0], [1, -1, 1], [0, 1, 0]]);
        let d = check(&s);
        assert_eq!(d.iter().filter(|x| x.is_zero()).count(), s.kernel().cols());
    }

    #[test]
    fn rejects_nonsymmetric() {
        assert!(congruence_diagonalize(&ExactMatrix::from_i64_rows(Q, &[[0, 1], [0, 0]])).is_err());
    }

    #[test]
    fn empty_matrix() {
        let (d, c) = congruence_diagonalize(&ExactMatrix::zeros(Q, 0, 0)).unwrap();
        assert!(d.is_empty());
        assert_eq!(c.rows(), 0);
    }
}
