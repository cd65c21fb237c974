use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*x);
            }
        }
        m
    }

    /// Square matrix from a row-major i64 slice.
    pub fn from_flat(n: usize, flat: &[i64]) -> Self {
        assert_eq!(flat.len(), n * n);
        IntMatrix { rows: n, cols: n, data: flat.iter().map(|x| BigInt::from(*x)).collect() }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() {
                        acc += &v[j] * BigRational::from_integer(self.get(i, j).clone());
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut out = IntMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Bareiss fraction-free determinant.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * a[n * n - 1].clone()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row_t += k * row_s
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[s * self.cols + j] * k;
            self.data[t * self.cols + j] += v;
        }
    }

    // col_t += k * col_s
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + s] * k;
            self.data[i * self.cols + t] += v;
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    fn neg_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form `U M V = D` with smallest-absolute-value pivoting.
pub fn smith_decompose(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&p);
                let k = -q.clone();
                a.add_row(i, t, &k);
                u.add_row(i, t, &k);
                u_inv.add_col(t, i, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&p);
                let k = -q;
                a.add_col(j, t, &k);
                v.add_col(j, t, &k);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = smallest_entry(&a, t).expect("nonzero entries remain");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    u_inv.add_col(i, t, &-one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.neg_row(t);
            u.neg_row(t);
            u_inv.neg_col(t);
        }
    }
    Smith { u, d: a, v, u_inv }
}

/// Finite abelian group presented as a torsion part of a lattice quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    basis_lift: IntMatrix,
    // rows of U reading off torsion coordinates
    coord_rows: Vec<Vec<BigInt>>,
    // rows of U reading off free coordinates
    free_rows: Vec<Vec<BigInt>>,
}

impl FiniteAbelianGroup {
    pub fn trivial(ambient: usize) -> Self {
        FiniteAbelianGroup {
            invariant_factors: vec![],
            basis_lift: IntMatrix::zeros(ambient, 0),
            coord_rows: vec![],
            free_rows: vec![],
        }
    }

    /// Torsion part of `Z^n / image(a)`.
    pub fn quotient_torsion(a: &IntMatrix) -> Self {
        let n = a.rows;
        let s = smith_decompose(a);
        let diag = s.diagonal();
        let mut inv = vec![];
        let mut lifts = vec![];
        let mut coord_rows = vec![];
        let mut free_rows = vec![];
        for i in 0..n {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                free_rows.push(s.u.row(i));
            } else if d > BigInt::one() {
                inv.push(d);
                lifts.push(s.u_inv.column(i));
                coord_rows.push(s.u.row(i));
            }
        }
        FiniteAbelianGroup {
            invariant_factors: inv,
            basis_lift: IntMatrix::from_columns(n, &lifts),
            coord_rows,
            free_rows,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn basis_lift(&self) -> &IntMatrix {
        &self.basis_lift
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn normalize(&self, e: &[BigInt]) -> Vec<BigInt> {
        e.iter().zip(&self.invariant_factors).map(|(x, d)| x.mod_floor(d)).collect()
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    /// Coordinates of the class of an ambient vector; `None` if the class has a free part.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let dot = |r: &Vec<BigInt>| -> BigInt { r.iter().zip(x).map(|(a, b)| a * b).sum() };
        if self.free_rows.iter().any(|r| !dot(r).is_zero()) {
            return None;
        }
        Some(self.normalize(&self.coord_rows.iter().map(dot).collect::<Vec<_>>()))
    }

    pub fn lift(&self, e: &[BigInt]) -> Vec<BigInt> {
        let n = self.basis_lift.rows;
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in e.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.basis_lift.get(i, k) * c;
            }
        }
        out
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for d in &self.invariant_factors {
            let d = d.to_u64().expect("group too large to enumerate");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d {
                    let mut e2 = e.clone();
                    e2.push(BigInt::from(k));
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn cokernel_group(m: &IntMatrix) -> Result<FiniteAbelianGroup> {
    if m.rows != m.cols || m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(FiniteAbelianGroup::quotient_torsion(m))
}

/// Integer solution of `m x = b`, if any.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_decompose(m);
    let y = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut z = vec![BigInt::zero(); m.cols];
    for (i, yi) in y.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !yi.is_zero() {
                return None;
            }
        } else {
            if !yi.is_multiple_of(&d) {
                return None;
            }
            z[i] = yi / &d;
        }
    }
    Some(s.v.mul_vec(&z))
}

/// Torsion part of `(Z^n / L) / (1 - E)(Z^n / L)`.
pub fn torsion_quotient(ambient_rank: usize, sublattice: &IntMatrix, endo: &IntMatrix) -> Result<FiniteAbelianGroup> {
    assert_eq!(sublattice.rows, ambient_rank);
    assert_eq!((endo.rows, endo.cols), (ambient_rank, ambient_rank));
    let image = endo.mul(sublattice);
    for j in 0..image.cols {
        if solve_integer(sublattice, &image.column(j)).is_none() {
            return Err(Error::NotStable);
        }
    }
    let rel = IntMatrix::identity(ambient_rank).sub(endo);
    Ok(FiniteAbelianGroup::quotient_torsion(&sublattice.hconcat(&rel)))
}

/// Exact inverse over Q; `None` when singular.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..n).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the solution space of `rows · x = 0` over Q.
pub fn rational_nullspace(rows: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let p = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x /= &p;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = vec![];
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rational_rank(rows: &[Vec<BigRational>], n: usize) -> usize {
    n - rational_nullspace(rows, n).len()
}

pub fn frac_mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Vector in `(Q/Z)^n`, coordinates in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZVector {
    coords: Vec<BigRational>,
}

impl QmodZVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        QmodZVector { coords: coords.iter().map(frac_mod1).collect() }
    }

    /// Rejects coordinates whose denominators meet `excluded` primes.
    pub fn constrained(coords: Vec<BigRational>, excluded: &[u64]) -> Result<Self> {
        let v = Self::new(coords);
        if v.satisfies(excluded) {
            Ok(v)
        } else {
            Err(Error::Parse("denominator divisible by an excluded prime".into()))
        }
    }

    pub fn zero(n: usize) -> Self {
        QmodZVector { coords: vec![BigRational::zero(); n] }
    }

    pub fn from_fractions(fr: &[(i64, i64)]) -> Self {
        Self::new(fr.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
    }

    /// Numerators over a common denominator `den`.
    pub fn from_numerators(nums: &[i64], den: i64) -> Self {
        Self::new(nums.iter().map(|&a| BigRational::new(a.into(), den.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn order(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn satisfies(&self, excluded: &[u64]) -> bool {
        let ord = self.order();
        excluded.iter().all(|&p| p < 2 || !ord.is_multiple_of(&BigInt::from(p)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|c| c * BigRational::from_integer(k.clone())).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn apply(&self, m: &IntMatrix) -> Self {
        Self::new(m.mul_rat_vec(&self.coords))
    }

    /// Apply a small square matrix stored row-major.
    pub fn apply_flat(&self, m: &[i64]) -> Self {
        let n = self.coords.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::zero();
            for j in 0..n {
                let e = m[i * n + j];
                if e != 0 {
                    acc += &self.coords[j] * BigRational::from_integer(e.into());
                }
            }
            out.push(acc);
        }
        Self::new(out)
    }

    /// Common-denominator form `(den, numerators)`.
    pub fn to_scaled(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.order();
        let nums = self.coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (den, nums)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn parse(items: &[String]) -> Result<Self> {
        let mut cs = vec![];
        for it in items {
            let (a, b) = match it.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (it.trim(), "1"),
            };
            let a: BigInt = a.parse().map_err(|_| Error::Parse(format!("bad numerator in {it}")))?;
            let b: BigInt = b.parse().map_err(|_| Error::Parse(format!("bad denominator in {it}")))?;
            if b.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {it}")));
            }
            cs.push(BigRational::new(a, b));
        }
        Ok(Self::new(cs))
    }
}

impl fmt::Display for QmodZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `y = m^{-1} target` reduced mod `Z^n`, so that `m y ≡ target`.
pub fn solve_in_q_lattice(m: &IntMatrix, target: &[BigRational]) -> Result<QmodZVector> {
    let inv = rational_inverse(m).ok_or(Error::SingularMatrix)?;
    let y = inv
        .iter()
        .map(|row| row.iter().zip(target).map(|(a, b)| a * b).sum())
        .collect();
    Ok(QmodZVector::new(y))
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}
