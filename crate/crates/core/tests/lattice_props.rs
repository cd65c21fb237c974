use levelzero_core::lattice::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn minors(m: &[Vec<i64>], k: usize) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn det(a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let sub: Vec<Vec<BigInt>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &a[0][j] * det(sub);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }
    let (r, c) = (m.len(), m[0].len());
    let mut out = vec![];
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            out.push(det(rows.iter().map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect()));
        }
    }
    out
}

/// Invariant factors from gcds of minors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let k_max = m.len().min(m[0].len());
    let mut prev = BigInt::one();
    let mut out = vec![];
    for k in 1..=k_max {
        let g = minors(m, k).iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

proptest! {
    #[test]
    fn smith_is_a_factorisation((r, c) in (1usize..=4, 1usize..=4), seed in any::<u64>()) {
        let m = rand_matrix(r, c, seed);
        let a = IntMatrix::from_i64_rows(&m);
        let s = smith_decompose(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(r));
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        let diag = s.diagonal();
        let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        prop_assert!(diag.iter().skip(nonzero.len()).all(|d| d.is_zero()));
        for w in nonzero.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(nonzero, determinantal_factors(&m));
    }

    #[test]
    fn torsion_order_matches_minors(m in matrix(3, 3)) {
        let g = FiniteAbelianGroup::quotient_torsion(&IntMatrix::from_i64_rows(&m));
        let want: BigInt = determinantal_factors(&m).iter().product();
        prop_assert_eq!(g.order(), want.abs());
        prop_assert_eq!(BigInt::from(g.elements().len()), g.order());
    }

    #[test]
    fn class_of_lift_round_trips(m in matrix(3, 2)) {
        let g = FiniteAbelianGroup::quotient_torsion(&IntMatrix::from_i64_rows(&m));
        for e in g.elements() {
            prop_assert_eq!(g.class_of(&g.lift(&e)), Some(e));
        }
    }

    #[test]
    fn integer_solutions_solve(m in matrix(3, 3), x in prop::collection::vec(-5i64..=5, 3)) {
        let a = IntMatrix::from_i64_rows(&m);
        let b = a.mul_vec(&int_vec(&x));
        let y = solve_integer(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }
}

fn rand_matrix(r: usize, c: usize, seed: u64) -> Vec<Vec<i64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect()
}

/// Quotients small enough to do by hand.
#[test]
fn torsion_quotient_small_cases() {
    // L = 2Z ⊕ Z, E = id: quotient Z/2 ⊕ 0.
    let l = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 1]]);
    let g = torsion_quotient(2, &l, &IntMatrix::identity(2)).unwrap();
    assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
    // L = 0, E = −id: Z²/2Z².
    let l0 = IntMatrix::zeros(2, 0);
    let g = torsion_quotient(2, &l0, &IntMatrix::from_i64_rows(&[vec![-1, 0], vec![0, -1]])).unwrap();
    assert_eq!(g.order(), BigInt::from(4));
    // swap: Z²/(1−σ) = Z, torsion-free.
    let g = torsion_quotient(2, &l0, &IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
    assert!(g.is_trivial());
    // unstable sublattice
    let l = IntMatrix::from_i64_rows(&[vec![1], vec![0]]);
    assert!(torsion_quotient(2, &l, &IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])).is_err());
}

#[test]
fn q_lattice_solutions() {
    let m = IntMatrix::from_i64_rows(&[vec![4]]);
    let s = solve_in_q_lattice(&m, &rat_vec(&int_vec(&[1]))).unwrap();
    assert_eq!(s, QmodZVector::from_fractions(&[(1, 4)]));
    let parsed = QmodZVector::parse(&s.to_strings()).unwrap();
    assert_eq!(parsed, s);
}
