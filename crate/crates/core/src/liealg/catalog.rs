//! Standard small Lie algebras.

use num_traits::Zero;

use crate::expr::{rat, Rational};

use super::LieAlgebra;

fn v(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&e| rat(e, 1)).collect()
}

/// `sl(2)` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, v(&[0, 2, 0])),
            (0, 2, v(&[0, 0, -2])),
            (1, 2, v(&[1, 0, 0])),
        ],
    )
}

/// `so(3)`: `[e_i, e_j] = e_k` for cyclic `(i, j, k)`.
pub fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, v(&[0, 0, 1])),
            (1, 2, v(&[1, 0, 0])),
            (2, 0, v(&[0, 1, 0])),
        ],
    )
}

/// Non-abelian 2-dimensional algebra `[x, y] = y`.
pub fn solvable2() -> LieAlgebra {
    LieAlgebra::from_brackets(2, &[(0, 1, v(&[0, 1]))])
}

/// `sl(2) ⊕ ℝ`, the last basis vector central.
pub fn sl2_plus_line() -> LieAlgebra {
    let s = sl2();
    let brackets: Vec<_> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let mut c = s.bracket_basis(i, j).to_vec();
            c.push(Rational::zero());
            (i, j, c)
        })
        .collect();
    LieAlgebra::from_brackets(4, &brackets)
}

/// `gl(2)` in the basis `(E11, E12, E21, E22)`, with
/// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
pub fn gl2() -> LieAlgebra {
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut brackets = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let mut c = vec![Rational::zero(); 4];
            if j == k {
                c[idx(i, l)] += rat(1, 1);
            }
            if l == i {
                c[idx(k, j)] -= rat(1, 1);
            }
            brackets.push((a, b, c));
        }
    }
    LieAlgebra::from_brackets(4, &brackets)
}
