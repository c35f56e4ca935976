//! Linear algebra over GF(2) with vectors packed in `u64`.

#[inline]
fn pivot(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// Reduced row-echelon basis of the span of `vectors`.
///
/// Pivots are the highest set bits; every pivot bit is cleared from all other
/// basis vectors and the result is sorted by pivot, highest first. Two spans
/// are equal iff their echelon bases are equal.
pub fn echelon_basis<I: IntoIterator<Item = u64>>(vectors: I) -> Vec<u64> {
    let mut rows: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            if v >> pivot(r) & 1 == 1 {
                v ^= r;
            }
        }
        if v != 0 {
            let p = pivot(v);
            for r in rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows
}

/// Basis of `{v : sum_i v_i * columns[i] = 0}`, in echelon form.
pub fn nullspace_of_columns(columns: &[u64]) -> Vec<u64> {
    // (reduced column, combination of original columns producing it)
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, &col) in columns.iter().enumerate() {
        let mut c = col;
        let mut combo = 1u64 << i;
        loop {
            if c == 0 {
                kernel.push(combo);
                break;
            }
            let p = pivot(c);
            match pivots.iter().find(|(pc, _)| pivot(*pc) == p) {
                Some(&(pc, pv)) => {
                    c ^= pc;
                    combo ^= pv;
                }
                None => {
                    pivots.push((c, combo));
                    break;
                }
            }
        }
    }
    echelon_basis(kernel)
}

/// Every element of the span of `basis` (2^len of them).
pub fn span_elements(basis: &[u64]) -> impl Iterator<Item = u64> + '_ {
    (0u64..1 << basis.len()).map(move |mask| {
        basis
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &b)| acc ^ b)
    })
}
