//! Small dense integer matrices.

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Matrix product; panics on overflow rather than wrapping.
pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == k), "dimension mismatch");
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = x
                    .checked_mul(b[l][j])
                    .and_then(|p| out[i][j].checked_add(p))
                    .expect("integer overflow in matrix product");
            }
        }
    }
    out
}

/// Principal submatrix on the given index set, in the given order.
pub fn submatrix(a: &IntMatrix, idx: &[usize]) -> IntMatrix {
    idx.iter().map(|&i| idx.iter().map(|&j| a[i][j]).collect()).collect()
}

pub fn format(a: &IntMatrix) -> String {
    let w = a
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| format!("{x:>w$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
