use super::ComplexMatrix;

/// Index sets of the diagonal blocks a square matrix splits into under a
/// symmetric permutation: `i` and `j` share a block when `a_ij != 0` or
/// `a_ji != 0`. Blocks are ordered by their smallest index and each block's
/// indices are ascending, so the output is deterministic.
pub fn decoupled_components(a: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let z = a[(i, j)];
            if z.re != 0.0 || z.im != 0.0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }

    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_interleaved_blocks() {
        // couples (0,2) and (1,3); 4 isolated
        let a = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 2.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 5.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 3.0],
        ]);
        assert_eq!(decoupled_components(&a), vec![vec![0, 2], vec![1, 3], vec![4]]);
    }

    #[test]
    fn dense_matrix_is_one_component() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0]]);
        assert_eq!(decoupled_components(&a), vec![vec![0, 1, 2]]);
    }
}
