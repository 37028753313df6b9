use super::{CycMatrix, CycNumber};

/// Rank and a nullspace basis of `m`.
///
/// Forward elimination is fraction-free: a row below the pivot is replaced
/// by `pivot * row - lead * pivot_row`, so no field inverses are taken
/// there. Pivots are the first nonzero entry of the current column scanning
/// rows top-down. Each pivot row is then normalized once and
/// back-substituted, giving the reduced echelon form from which the basis is
/// read off: one vector per free column, with a 1 in that column.
pub fn rank_nullspace(m: &CycMatrix) -> (usize, Vec<CycMatrix>) {
    let (rows, cols) = m.shape();
    let c = m.conductor();
    let mut a: Vec<Vec<CycNumber>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let lead = a[i][col].clone();
            for j in col..cols {
                let v = &(&piv * &a[i][j]) - &(&lead * &a[r][j]);
                a[i][j] = v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let rank = pivots.len();

    for (k, &pc) in pivots.iter().enumerate() {
        let inv = a[k][pc].inv().expect("pivot is nonzero");
        for j in pc..cols {
            a[k][j] = &a[k][j] * &inv;
        }
    }
    for (k, &pc) in pivots.iter().enumerate().rev() {
        for i in 0..k {
            if a[i][pc].is_zero() {
                continue;
            }
            let f = a[i][pc].clone();
            for j in pc..cols {
                let v = &a[i][j] - &(&f * &a[k][j]);
                a[i][j] = v;
            }
        }
    }

    let mut basis = Vec::with_capacity(cols - rank);
    let mut is_pivot = vec![false; cols];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![CycNumber::zero(c); cols];
        v[free] = CycNumber::one(c);
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[k][free];
        }
        basis.push(CycMatrix::new(cols, 1, c, v).expect("column vector"));
    }
    (rank, basis)
}
