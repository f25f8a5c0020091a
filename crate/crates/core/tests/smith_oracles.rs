//! Smith normal form checked against brute-force oracles that share no code
//! with the library: determinantal divisors from explicit minors and rank
//! from fraction-free elimination over i128.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use subsets_core::smith::{smith_normal_form, verify_snf, IntegerMatrix};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Laplace expansion along the first row.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// gcd of all k×k minors (the k-th determinantal divisor).
fn determinantal_divisor(a: &[Vec<i128>], cols: usize, k: usize) -> i128 {
    let mut g = 0;
    for rs in subsets(a.len(), k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
            g = gcd(g, det(&minor));
        }
    }
    g
}

/// Rank by Bareiss fraction-free elimination.
fn rank(a: &[Vec<i128>], cols: usize) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn check_against_oracles(rows: &[Vec<i64>], cols: usize) -> Result<(), TestCaseError> {
    let a = IntegerMatrix::from_rows_with_cols(rows, cols);
    let snf = smith_normal_form(&a);
    prop_assert!(verify_snf(&a, &snf).unwrap());

    let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let d: Vec<i128> = snf.diagonal().iter().map(|x| x.to_i128().unwrap()).collect();
    let r = rank(&wide, cols);
    prop_assert_eq!(snf.rank(), r);
    prop_assert!(d.iter().all(|&x| x >= 0));

    if !d.is_empty() {
        let g = wide.iter().flatten().fold(0, |g, &v| gcd(g, v));
        prop_assert_eq!(d[0], g);
    }
    let mut product = 1i128;
    for k in 1..=r {
        product *= d[k - 1];
        prop_assert_eq!(product, determinantal_divisor(&wide, cols, k), "k = {}", k);
    }
    if r < rows.len().min(cols) {
        prop_assert_eq!(determinantal_divisor(&wide, cols, r + 1), 0);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_4x4_matches_oracles(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 4)) {
        check_against_oracles(&rows, 4)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_rectangular_matches_oracles(
        (cols, rows) in (0usize..=5).prop_flat_map(|c| (Just(c), prop::collection::vec(prop::collection::vec(-4i64..=4, c), 0..=4)))
    ) {
        check_against_oracles(&rows, cols)?;
    }

    #[test]
    fn snf_is_deterministic(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
        let a = IntegerMatrix::from_rows(&rows);
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn tampered_product_is_rejected(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3)) {
        let a = IntegerMatrix::from_rows(&rows);
        let mut snf = smith_normal_form(&a);
        let bumped = snf.s.get(0, 0) + BigInt::from(1);
        snf.s.set(0, 0, bumped);
        prop_assert!(!verify_snf(&a, &snf).unwrap());
    }
}

#[test]
fn known_diagonals() {
    let cases: [(&[&[i64]], &[i64]); 4] = [
        (&[&[2, 0], &[0, 3]], &[1, 6]),
        (&[&[1, 0], &[0, 0]], &[1, 0]),
        (&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]], &[2, 6, 12]),
        (&[&[6, 0], &[0, 4], &[0, 0]], &[2, 12]),
    ];
    for (rows, diag) in cases {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        let got: Vec<i64> = snf.diagonal().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(got, diag);
    }
}

#[test]
fn large_entries_do_not_overflow() {
    let big = i64::MAX / 3;
    let a = IntegerMatrix::from_rows(&[vec![big, big - 1], vec![big - 2, big + 1]]);
    let snf = smith_normal_form(&a);
    assert!(verify_snf(&a, &snf).unwrap());
    let det = a.determinant().unwrap();
    let product: BigInt = snf.diagonal().into_iter().product();
    assert_eq!(product, det.abs());
    assert!(!product.is_zero());
}
