use num_bigint::BigInt;
use octa_core::arith::{solve_linear_congruences, valuation, Valuation};
use octa_core::{smith_normal_form, Matrix};
use proptest::prelude::*;

/// Determinant by cofactor expansion, independent of the library's
/// elimination code.
fn laplace(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * laplace(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|first| {
            subsets(n, k - 1).into_iter().filter(move |s| s.first().is_none_or(|&f| f > first)).map(move |mut s| {
                s.insert(0, first);
                s
            })
        })
        .collect()
}

/// `d_k = D_k / D_{k-1}` where `D_k` is the gcd of all `k x k` minors.
fn invariant_factors(m: &Matrix<i64>) -> Vec<i128> {
    let (r, c) = m.shape();
    let mut dets = vec![1i128];
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)] as i128).collect()).collect();
                g = gcd(g, laplace(&sub));
            }
        }
        dets.push(g);
    }
    (1..dets.len()).map(|k| if dets[k - 1] == 0 { 0 } else { dets[k] / dets[k - 1] }).collect()
}

fn small_matrix() -> impl Strategy<Value = Matrix<i64>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..=20, r * c).prop_map(move |data| Matrix::from_vec(r, c, data))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_identities(m in small_matrix()) {
        let s = smith_normal_form(&m).unwrap();
        // U and V can outgrow i64 even when D is small
        let big = |x: &Matrix<i64>| Matrix::from_vec(x.rows(), x.cols(), x.data().iter().map(|&v| BigInt::from(v)).collect());
        prop_assert_eq!(big(&s.u).checked_mul(&big(&m)).unwrap().checked_mul(&big(&s.v)).unwrap(), big(&s.d));
        prop_assert!(s.u.is_unimodular().unwrap());
        prop_assert!(s.v.is_unimodular().unwrap());
        let diag: Vec<i128> = s.diagonal().iter().map(|&d| d as i128).collect();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0 && (w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0));
        }
        prop_assert_eq!(diag, invariant_factors(&m));
    }

    #[test]
    fn snf_agrees_across_widths(m in small_matrix()) {
        let wide = Matrix::from_vec(m.rows(), m.cols(), m.data().iter().map(|&v| v as i128).collect());
        let big = Matrix::from_vec(m.rows(), m.cols(), m.data().iter().map(|&v| BigInt::from(v)).collect());
        let d64 = smith_normal_form(&m).unwrap().diagonal();
        let d128 = smith_normal_form(&wide).unwrap().diagonal();
        let dbig = smith_normal_form(&big).unwrap().diagonal();
        prop_assert_eq!(d64.iter().map(|&v| v as i128).collect::<Vec<_>>(), d128.clone());
        prop_assert_eq!(d128.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(), dbig);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn congruences_match_exhaustive_search(
        a in prop::collection::vec(-10i64..10, 4),
        b in prop::collection::vec(-10i64..10, 2),
        k in prop::collection::vec(1u32..4, 2),
    ) {
        let mods: Vec<i64> = k.iter().map(|&e| 2i64.pow(e)).collect();
        let m = Matrix::from_vec(2, 2, a.clone());
        let sol = solve_linear_congruences(&m, &b, &mods).unwrap();
        let ok = |x: &[i64]| (0..2).all(|i| (a[2 * i] * x[0] + a[2 * i + 1] * x[1] - b[i]).rem_euclid(mods[i]) == 0);
        let exists = (0..8).any(|x0| (0..8).any(|x1| ok(&[x0, x1])));
        prop_assert_eq!(sol.is_some(), exists);
        if let Some(x) = sol {
            prop_assert!(ok(&x));
        }
    }

    #[test]
    fn valuation_is_additive(a in 1i64..10_000, b in 1i64..10_000, p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let (va, vb, vab) = (valuation(&a, &p), valuation(&b, &p), valuation(&(a * b), &p));
        prop_assert_eq!(vab.finite().unwrap(), va.finite().unwrap() + vb.finite().unwrap());
        prop_assert_eq!(valuation(&0i64, &p), Valuation::Infinity);
    }
}

#[test]
fn snf_with_big_entries() {
    let e = BigInt::from(10).pow(30);
    let m = Matrix::from_rows(vec![vec![e.clone() * 6, e.clone() * 4], vec![e.clone() * 4, e.clone() * 2]]);
    let s = smith_normal_form(&m).unwrap();
    assert_eq!(s.u.checked_mul(&m).unwrap().checked_mul(&s.v).unwrap(), s.d);
    assert_eq!(s.diagonal(), vec![e.clone() * 2, e * 2]);
}
