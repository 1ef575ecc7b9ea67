use super::TorusError;

/// Basis of `{x in Z^n : A x = 0}` for the rows `a`.
///
/// Unimodular column operations bring `A` to column echelon form while the
/// same operations act on the identity; the identity columns matching zero
/// columns of the echelon form span the kernel lattice exactly.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>, TorusError> {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| {
            if row.len() != n {
                return Err(TorusError::Length { got: row.len(), n });
            }
            Ok(row.iter().map(|&x| i128::from(x)).collect())
        })
        .collect::<Result<_, _>>()?;
    // columns of u record the transformation
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let rows = m.len();
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == n {
            break;
        }
        loop {
            // smallest nonzero entry in row r among the free columns
            let best = (pivot_col..n)
                .filter(|&c| m[r][c] != 0)
                .min_by_key(|&c| m[r][c].unsigned_abs());
            let Some(b) = best else { break };
            swap_cols(&mut m, &mut u, pivot_col, b);
            let p = m[r][pivot_col];
            let mut done = true;
            for c in pivot_col + 1..n {
                let f = m[r][c] / p;
                if f != 0 {
                    col_axpy(&mut m, &mut u, c, pivot_col, f)?;
                }
                if m[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    let mut out = Vec::new();
    for c in pivot_col..n {
        debug_assert!(m.iter().all(|row| row[c] == 0));
        out.push(
            (0..n)
                .map(|i| i64::try_from(u[i][c]).map_err(|_| TorusError::Overflow))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(out)
}

fn swap_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
}

/// column `dst` -= f * column `src`
fn col_axpy(m: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<(), TorusError> {
    for row in m.iter_mut().chain(u.iter_mut()) {
        row[dst] = f
            .checked_mul(row[src])
            .and_then(|x| row[dst].checked_sub(x))
            .ok_or(TorusError::Overflow)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_a_single_row() {
        let k = integer_kernel(&[vec![2, 4, 6]], 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).unwrap().is_empty());
        assert_eq!(integer_kernel(&[], 2).unwrap().len(), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 2y = 0 has kernel spanned by (1, -1), not (2, -2)
        let k = integer_kernel(&[vec![2, 2]], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].abs(), 1);
    }
}
