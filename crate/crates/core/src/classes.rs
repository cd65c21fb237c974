use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{cokernel_group, rat_vec, rational_rank, smith_decompose, solve_in_q_lattice, FiniteAbelianGroup, IntMatrix, QmodZVector};
use crate::root_datum::{mat_mul, mat_vec};
use crate::weyl::{RootSet, Subgroup, WeylGroup};

/// Upper bound on grid points scanned by one enumeration.
pub const GRID_LIMIT: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    QlBar,
    ZlBar { ell: u64 },
}

impl Regime {
    pub fn excluded(&self, p: u64) -> Vec<u64> {
        match self {
            Regime::QlBar => vec![p],
            Regime::ZlBar { ell } => vec![p, *ell],
        }
    }

    pub fn name(&self) -> String {
        match self {
            Regime::QlBar => "ql".into(),
            Regime::ZlBar { ell } => format!("zl({ell})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleElement {
    pub s: QmodZVector,
    pub regime: Regime,
}

impl SemisimpleElement {
    pub fn new(s: QmodZVector, regime: Regime, p: u64) -> Result<Self> {
        if !s.satisfies(&regime.excluded(p)) {
            return Err(Error::Parse(format!("{s} has order divisible by an excluded prime")));
        }
        Ok(SemisimpleElement { s, regime })
    }
}

/// A pair `(s, w̄)`; `w` is the canonical coset representative as a Weyl element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub s: QmodZVector,
    pub w: usize,
}

/// Common-denominator form of a torsion point, used in the hot loops.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Scaled {
    den: i64,
    nums: Vec<i64>,
}

impl Scaled {
    fn from_q(s: &QmodZVector) -> Option<Scaled> {
        let (den, nums) = s.to_scaled();
        let den = den.to_i64().filter(|d| *d < (1 << 40))?;
        Some(Scaled { den, nums: nums.iter().map(|x| x.to_i64().unwrap()).collect() })
    }

    fn to_q(&self) -> QmodZVector {
        QmodZVector::from_numerators(&self.nums, self.den)
    }

    fn act(&self, m: &[i64]) -> Scaled {
        let n = self.nums.len();
        let nums = (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j] * self.nums[j]).sum::<i64>().rem_euclid(self.den))
            .collect();
        Scaled { den: self.den, nums }
    }
}

/// Twisted class machinery for the reflection subgroup of W attached to a closed root subsystem.
#[derive(Clone)]
pub struct ClassContext<'a> {
    group: &'a WeylGroup,
    roots: RootSet,
    sub: Arc<Subgroup>,
    q: u64,
    frob: Vec<i64>,
}

impl<'a> ClassContext<'a> {
    pub fn new(group: &'a WeylGroup, roots: RootSet, q: u64) -> Self {
        let sub = group.reflection_subgroup(&roots);
        let frob = group.datum().theta().iter().map(|x| x * q as i64).collect();
        ClassContext { group, roots, sub, q, frob }
    }

    pub fn global(group: &'a WeylGroup, q: u64) -> Self {
        Self::new(group, RootSet::full(group.datum().num_roots()), q)
    }

    pub fn group(&self) -> &'a WeylGroup {
        self.group
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `F(s) = q ϑ s`.
    pub fn frob_s(&self, s: &QmodZVector) -> QmodZVector {
        s.apply_flat(&self.frob)
    }

    pub fn satisfies(&self, s: &QmodZVector, w: usize) -> bool {
        &self.group.act(w, &self.frob_s(s)) == s
    }

    /// `W°_s` inside this context.
    pub fn connected(&self, s: &QmodZVector) -> Arc<Subgroup> {
        self.group.reflection_subgroup(&self.group.integral_roots(s, &self.roots))
    }

    pub fn stabilizer(&self, s: &QmodZVector) -> Subgroup {
        self.group.stabilizer_in(s, &self.sub)
    }

    pub fn canonicalize(&self, s: &QmodZVector, w: usize) -> Result<ClassLabel> {
        if !self.sub.contains(w) || !self.satisfies(s, w) {
            return Err(Error::IncompatiblePair);
        }
        let (smin, movers) = match Scaled::from_q(s) {
            Some(sc) => {
                let mut best: Option<Scaled> = None;
                let mut movers = vec![];
                for &v in self.sub.elements() {
                    let t = sc.act(self.group.matrix(v));
                    match &best {
                        Some(b) if t > *b => {}
                        Some(b) if t == *b => movers.push(v),
                        _ => {
                            best = Some(t);
                            movers = vec![v];
                        }
                    }
                }
                (best.unwrap().to_q(), movers)
            }
            None => {
                let mut best: Option<QmodZVector> = None;
                let mut movers = vec![];
                for &v in self.sub.elements() {
                    let t = self.group.act(v, s);
                    match &best {
                        Some(b) if t > *b => {}
                        Some(b) if t == *b => movers.push(v),
                        _ => {
                            best = Some(t);
                            movers = vec![v];
                        }
                    }
                }
                (best.unwrap(), movers)
            }
        };
        let k = self.connected(&smin);
        let w = movers
            .iter()
            .map(|&v| self.group.coset_rep(&k, self.group.twisted_conj(v, w)))
            .min()
            .unwrap();
        Ok(ClassLabel { s: smin, w })
    }

    /// Same pair viewed in a larger context.
    pub fn induce(&self, label: &ClassLabel) -> ClassLabel {
        self.canonicalize(&label.s, label.w).expect("label valid in the larger context")
    }

    /// Every label with `N s = 0`, sorted.
    pub fn classes(&self, bound: u64) -> Result<Vec<ClassLabel>> {
        let n = self.group.rank();
        if bound == 0 {
            return Err(Error::BoundTooLarge(bound));
        }
        let total = (bound as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > GRID_LIMIT as u128 {
            return Err(Error::BoundTooLarge(bound));
        }
        let nn = bound as i64;
        let mats: Vec<&[i64]> = self.sub.elements().iter().map(|&v| self.group.matrix(v)).collect();
        let mut out = vec![];
        let mut nums = vec![0i64; n];
        for _ in 0..total {
            let sc = Scaled { den: nn, nums: nums.clone() };
            let minimal = mats.iter().all(|m| sc.act(m) >= sc);
            if minimal {
                let fs = sc.act(&self.frob);
                let cands: Vec<usize> = self
                    .sub
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&w| fs.act(self.group.matrix(w)) == sc)
                    .collect();
                if !cands.is_empty() {
                    let s = sc.to_q();
                    let k = self.connected(&s);
                    let stab: Vec<usize> = self
                        .sub
                        .elements()
                        .iter()
                        .copied()
                        .filter(|&v| sc.act(self.group.matrix(v)) == sc)
                        .collect();
                    let mut covered = HashSet::new();
                    for &w in &cands {
                        if covered.contains(&w) {
                            continue;
                        }
                        let mut reps: Vec<usize> = stab
                            .iter()
                            .map(|&v| self.group.coset_rep(&k, self.group.twisted_conj(v, w)))
                            .collect();
                        reps.sort();
                        reps.dedup();
                        for &r in &reps {
                            for &x in k.elements() {
                                covered.insert(self.group.mul(x, r));
                            }
                        }
                        out.push(ClassLabel { s: s.clone(), w: reps[0] });
                    }
                }
            }
            for c in nums.iter_mut().rev() {
                *c += 1;
                if *c < nn {
                    break;
                }
                *c = 0;
            }
        }
        out.sort();
        Ok(out)
    }

    /// Dimension of the `w ϑ`-fixed part of `(Y / <coroots of Φ_s>) ⊗ Q`.
    fn fixed_dim_mod(&self, w: usize, roots: &RootSet) -> usize {
        let n = self.group.rank();
        let a = mat_mul(&self.group.y_matrix(w), &self.group.datum().theta_y(), n);
        let mut a_minus = a.clone();
        for i in 0..n {
            a_minus[i * n + i] -= 1;
        }
        let to_rows = |m: &[i64]| -> Vec<Vec<BigRational>> {
            (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(m[i * n + j].into())).collect()).collect()
        };
        let fixed_v = n - rational_rank(&to_rows(&a_minus), n);
        let cor: Vec<Vec<i64>> = roots.iter().map(|r| self.group.datum().coroots()[r].clone()).collect();
        if cor.is_empty() {
            return fixed_v;
        }
        let cor_rows: Vec<Vec<BigRational>> =
            cor.iter().map(|c| c.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let img_rows: Vec<Vec<BigRational>> = cor
            .iter()
            .map(|c| mat_vec(&a_minus, c).iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let dim_u = rational_rank(&cor_rows, n);
        let fixed_u = dim_u - rational_rank(&img_rows, n);
        fixed_v - fixed_u
    }

    /// Meets no proper Levi of the context's reductive group.
    pub fn is_elliptic(&self, label: &ClassLabel) -> bool {
        let phi_s = self.group.integral_roots(&label.s, &self.roots);
        self.fixed_dim_mod(label.w, &phi_s) == self.fixed_dim_mod(self.group.identity(), &self.roots)
    }

    /// `s ↦ r s` with `r` the idempotent killing the ℓ-part of the order.
    pub fn ell_regular(&self, label: &ClassLabel, ell: u64) -> ClassLabel {
        let s2 = ell_regular_part(&label.s, ell);
        self.canonicalize(&s2, label.w).expect("ell-regular part stays compatible")
    }
}

pub fn ell_regular_part(s: &QmodZVector, ell: u64) -> QmodZVector {
    let m = s.order();
    let l = BigInt::from(ell);
    let mut a = BigInt::one();
    let mut rest = m.clone();
    while rest.is_multiple_of(&l) {
        rest /= &l;
        a *= &l;
    }
    if a.is_one() {
        return s.clone();
    }
    // r ≡ 0 mod a, r ≡ 1 mod rest
    let inv = if rest.is_one() {
        BigInt::zero()
    } else {
        let e = a.extended_gcd(&rest);
        e.x.mod_floor(&rest)
    };
    s.scale(&(&a * inv))
}

/// Lexicographically minimal point of the W-orbit of `s`.
pub fn geometric_class(group: &WeylGroup, s: &QmodZVector) -> QmodZVector {
    match Scaled::from_q(s) {
        Some(sc) => (0..group.order()).map(|w| sc.act(group.matrix(w))).min().unwrap().to_q(),
        None => (0..group.order()).map(|w| group.act(w, s)).min().unwrap(),
    }
}

pub fn rational_classes(group: &WeylGroup, q: u64, bound: u64) -> Result<Vec<ClassLabel>> {
    ClassContext::global(group, q).classes(bound)
}

/// Labels grouped by geometric class.
pub fn by_geometric(group: &WeylGroup, labels: &[ClassLabel]) -> BTreeMap<QmodZVector, Vec<ClassLabel>> {
    let mut out: BTreeMap<QmodZVector, Vec<ClassLabel>> = BTreeMap::new();
    for l in labels {
        out.entry(geometric_class(group, &l.s)).or_default().push(l.clone());
    }
    out
}

/// `q w ϑ − 1` on X.
pub fn frobenius_minus_one(group: &WeylGroup, w: usize, q: u64) -> IntMatrix {
    let n = group.rank();
    let mut m = mat_mul(group.matrix(w), group.datum().theta(), n);
    for x in m.iter_mut() {
        *x *= q as i64;
    }
    for i in 0..n {
        m[i * n + i] -= 1;
    }
    IntMatrix::from_flat(n, &m)
}

/// All `s` with `q w ϑ s ≡ s`, filtered by the excluded primes.
pub fn torus_fixed_points(group: &WeylGroup, w: usize, q: u64, excluded: &[u64]) -> Result<Vec<QmodZVector>> {
    let m = frobenius_minus_one(group, w, q);
    let sm = smith_decompose(&m);
    let diag = sm.diagonal();
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::SingularMatrix);
    }
    let n = group.rank();
    let mut pts = vec![vec![BigRational::zero(); n]];
    for (i, d) in diag.iter().enumerate() {
        let d64 = d.to_u64().ok_or(Error::BoundTooLarge(u64::MAX))?;
        let mut next = vec![];
        for p in &pts {
            for k in 0..d64 {
                let mut t = p.clone();
                t[i] = BigRational::new(BigInt::from(k), d.clone());
                next.push(t);
            }
        }
        pts = next;
    }
    let mut out: Vec<QmodZVector> = pts
        .iter()
        .map(|t| QmodZVector::new(sm.v.mul_rat_vec(t)))
        .filter(|s| s.satisfies(excluded))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(w, θ_w)` with `θ_w ∈ X/(wF−1)X` in the coordinates of its cokernel group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPair {
    pub w: usize,
    pub theta: Vec<BigInt>,
}

pub fn torus_character_group(group: &WeylGroup, w: usize, q: u64) -> Result<FiniteAbelianGroup> {
    cokernel_group(&frobenius_minus_one(group, w, q))
}

pub fn theta_to_s(group: &WeylGroup, q: u64, pair: &TorusPair) -> Result<QmodZVector> {
    let m = frobenius_minus_one(group, pair.w, q);
    let g = cokernel_group(&m)?;
    solve_in_q_lattice(&m, &rat_vec(&g.lift(&pair.theta)))
}

pub fn s_to_theta(group: &WeylGroup, q: u64, w: usize, s: &QmodZVector) -> Result<TorusPair> {
    let m = frobenius_minus_one(group, w, q);
    let g = cokernel_group(&m)?;
    let x = m.mul_rat_vec(s.coords());
    if x.iter().any(|c| !c.is_integer()) {
        return Err(Error::IncompatiblePair);
    }
    let xi: Vec<BigInt> = x.iter().map(|c| c.to_integer()).collect();
    let theta = g.class_of(&xi).expect("cokernel is finite");
    Ok(TorusPair { w, theta })
}

/// Representative of `λ + Fλ + … + F^{m−1}λ`.
pub fn trace_map(f: &IntMatrix, m: u32, x: &[BigInt]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); x.len()];
    let mut cur = x.to_vec();
    for _ in 0..m {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
        cur = f.mul_vec(&cur);
    }
    acc
}

/// JSON form of a label: `{s, w, word, q, theta, regime}`.
pub fn label_json(ctx: &ClassContext, label: &ClassLabel, regime: Regime) -> Value {
    let g = ctx.group();
    let n = g.rank();
    let w = match g.signed_permutation(label.w) {
        Some(sp) => json!({ "signed_perm": sp.images() }),
        None => {
            let m = g.matrix(label.w);
            json!({ "matrix": (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>() })
        }
    };
    let th = g.datum().theta();
    json!({
        "s": label.s.to_strings(),
        "w": w,
        "word": g.word(label.w).iter().map(|&k| k as u64 + 1).collect::<Vec<_>>(),
        "q": ctx.q().to_string(),
        "theta": (0..n).map(|i| th[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>(),
        "regime": regime.name(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_classical, Family, GroupSpec};

    fn weyl(f: Family, n: usize) -> WeylGroup {
        WeylGroup::new(&build_classical(&GroupSpec::new(f, n)).unwrap()).unwrap()
    }

    #[test]
    fn trivial_bound_gives_one_class() {
        let w = weyl(Family::Sp, 2);
        let c = rational_classes(&w, 3, 1).unwrap();
        assert_eq!(c, vec![ClassLabel { s: QmodZVector::zero(2), w: 0 }]);
    }

    #[test]
    fn sp4_half_half_splits_in_two() {
        let w = weyl(Family::Sp, 2);
        for q in [3, 5, 7] {
            let c = rational_classes(&w, q, 2).unwrap();
            let half = QmodZVector::from_fractions(&[(1, 2), (1, 2)]);
            assert_eq!(c.iter().filter(|l| l.s == half).count(), 2);
        }
    }

    #[test]
    fn gl2_rational_equals_geometric() {
        let w = weyl(Family::GL, 2);
        for (q, n) in [(3, 2), (5, 4), (7, 6), (7, 3)] {
            let c = rational_classes(&w, q, n).unwrap();
            let g = by_geometric(&w, &c);
            let split: usize = g.values().map(|v| v.len()).sum();
            assert_eq!(split, g.len());
            assert!(g.values().all(|v| v.len() == 1));
        }
    }

    #[test]
    fn geometric_rep_is_orbit_min() {
        let w = weyl(Family::Sp, 2);
        let s = QmodZVector::from_fractions(&[(3, 5), (1, 5)]);
        let rep = geometric_class(&w, &s);
        let orbit: Vec<QmodZVector> = (0..w.order()).map(|v| w.act(v, &s)).collect();
        assert_eq!(&rep, orbit.iter().min().unwrap());
        assert_eq!(rep, QmodZVector::from_fractions(&[(1, 5), (2, 5)]));
        assert_eq!(geometric_class(&w, &QmodZVector::zero(2)), QmodZVector::zero(2));
    }

    #[test]
    fn fixed_points_examples() {
        let gl1 = weyl(Family::GL, 1);
        let pts = torus_fixed_points(&gl1, 0, 3, &[]).unwrap();
        assert_eq!(pts, vec![QmodZVector::zero(1), QmodZVector::from_fractions(&[(1, 2)])]);
        let sl2 = weyl(Family::Sp, 1);
        assert_eq!(torus_fixed_points(&sl2, 1, 2, &[]).unwrap().len(), 3);
        let sp4 = weyl(Family::Sp, 2);
        assert_eq!(torus_fixed_points(&sp4, 0, 3, &[]).unwrap().len(), 4);
        assert_eq!(torus_fixed_points(&sp4, 0, 3, &[2]).unwrap().len(), 1);
    }

    #[test]
    fn theta_duality_examples() {
        let gl1 = weyl(Family::GL, 1);
        let zero = TorusPair { w: 0, theta: vec![BigInt::zero()] };
        assert!(theta_to_s(&gl1, 5, &zero).unwrap().is_zero());
        let g = torus_character_group(&gl1, 0, 5).unwrap();
        assert_eq!(g.order(), BigInt::from(4));
        let gen = TorusPair { w: 0, theta: vec![BigInt::one()] };
        let s = theta_to_s(&gl1, 5, &gen).unwrap();
        assert_eq!(s.order(), BigInt::from(4));
        assert_eq!(s_to_theta(&gl1, 5, 0, &s).unwrap(), gen);
    }

    #[test]
    fn trace_rank_one() {
        let f = IntMatrix::from_i64_rows(&[vec![-2]]);
        let x = vec![BigInt::one()];
        assert_eq!(trace_map(&f, 1, &x), x);
        assert_eq!(trace_map(&f, 2, &x), vec![BigInt::from(-1)]);
    }

    #[test]
    fn ell_regular_examples() {
        let s = QmodZVector::from_fractions(&[(1, 6)]);
        let r = ell_regular_part(&s, 3);
        assert_eq!(r, QmodZVector::from_fractions(&[(1, 2)]));
        let t = QmodZVector::from_fractions(&[(1, 4)]);
        assert_eq!(ell_regular_part(&t, 3), t);
        assert!(ell_regular_part(&QmodZVector::from_fractions(&[(1, 9)]), 3).is_zero());
    }

    #[test]
    fn elliptic_examples() {
        let w = weyl(Family::Sp, 2);
        let ctx = ClassContext::global(&w, 3);
        assert!(ctx.is_elliptic(&ClassLabel { s: QmodZVector::zero(2), w: 0 }));
        let s = QmodZVector::from_fractions(&[(1, 2), (0, 1)]);
        assert!(!ctx.is_elliptic(&ctx.canonicalize(&s, 0).unwrap()));
        let flip = w.index_of(&[-1, 0, 0, 1]).unwrap();
        assert!(ctx.is_elliptic(&ctx.canonicalize(&s, flip).unwrap()));
    }

    #[test]
    fn canonicalize_rejects_bad_pair() {
        let w = weyl(Family::Sp, 1);
        let ctx = ClassContext::global(&w, 3);
        let s = QmodZVector::from_fractions(&[(1, 4)]);
        // q s = 3/4 = -s, so only the reflection works
        assert_eq!(ctx.canonicalize(&s, 0), Err(Error::IncompatiblePair));
        assert!(ctx.canonicalize(&s, 1).is_ok());
    }
}
