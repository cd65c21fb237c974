use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{rational_inverse, rational_rank, IntMatrix};

pub const DATUM_SCHEMA: &str = "levelzero.datum/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PGL,
    Sp,
    SOodd,
    SOevenSplit,
    SOevenQuasisplit,
    UQuasisplit,
    Custom,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        let f = match s.to_ascii_lowercase().replace(['-', '_', '*'], "").as_str() {
            "gl" => Family::GL,
            "sl" => Family::SL,
            "pgl" => Family::PGL,
            "sp" => Family::Sp,
            "soodd" => Family::SOodd,
            "soeven" | "soevensplit" => Family::SOevenSplit,
            "soevenquasisplit" | "soevenqs" => Family::SOevenQuasisplit,
            "u" | "uquasisplit" => Family::UQuasisplit,
            "custom" => Family::Custom,
            _ => return Err(Error::UnsupportedSpec(s.to_string())),
        };
        Ok(f)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PGL => "PGL",
            Family::Sp => "Sp",
            Family::SOodd => "SOodd",
            Family::SOevenSplit => "SOeven",
            Family::SOevenQuasisplit => "SOeven_quasisplit",
            Family::UQuasisplit => "U",
            Family::Custom => "custom",
        }
    }

    pub fn is_split(self) -> bool {
        !matches!(self, Family::SOevenQuasisplit | Family::UQuasisplit)
    }
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub custom: Option<RootDatum>,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GroupSpec { family, n, custom: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    theta: Vec<i64>,
    name: String,
    index: HashMap<Vec<i64>, usize>,
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-major product of square matrices.
pub fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
}

pub fn mat_identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn mat_transpose(a: &[i64], n: usize) -> Vec<i64> {
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

/// Inverse of a unimodular integer matrix.
pub fn mat_inverse(a: &[i64], n: usize) -> Option<Vec<i64>> {
    let inv = rational_inverse(&IntMatrix::from_flat(n, a))?;
    let mut out = Vec::with_capacity(n * n);
    for row in inv {
        for x in row {
            if !x.is_integer() {
                return None;
            }
            out.push(x.to_integer().to_i64()?);
        }
    }
    Some(out)
}

impl RootDatum {
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>, simple: Vec<usize>, theta: Vec<i64>, name: &str) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidDatum("roots and coroots differ in number".into()));
        }
        if theta.len() != rank * rank || roots.iter().chain(&coroots).any(|r| r.len() != rank) {
            return Err(Error::InvalidDatum("vector of wrong length".into()));
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        if index.len() != roots.len() {
            return Err(Error::InvalidDatum("repeated root".into()));
        }
        let d = RootDatum { rank, roots, coroots, simple, theta, name: name.to_string(), index };
        d.validate()?;
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn theta_matrix(&self) -> IntMatrix {
        IntMatrix::from_flat(self.rank, &self.theta)
    }

    pub fn is_split(&self) -> bool {
        self.theta == mat_identity(self.rank)
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Contragredient action of ϑ on Y.
    pub fn theta_y(&self) -> Vec<i64> {
        let inv = mat_inverse(&self.theta, self.rank).expect("theta invertible");
        mat_transpose(&inv, self.rank)
    }

    pub fn theta_order(&self) -> usize {
        let id = mat_identity(self.rank);
        let mut p = self.theta.clone();
        let mut k = 1;
        while p != id {
            p = mat_mul(&p, &self.theta, self.rank);
            k += 1;
            assert!(k <= 1000, "theta of infinite order");
        }
        k
    }

    /// Index of ϑ(α).
    pub fn theta_root(&self, i: usize) -> usize {
        self.index[&mat_vec(&self.theta, &self.roots[i])]
    }

    /// Cartan matrix `C[i][j] = <α_j, α_i∨>` on simple roots.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| dot(&self.roots[j], &self.coroots[i])).collect())
            .collect()
    }

    /// Coefficients of a root in the simple roots.
    pub fn simple_coords(&self, i: usize) -> Vec<i64> {
        self.try_simple_coords(&self.roots[i]).expect("root in simple span")
    }

    fn try_simple_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let k = self.simple.len();
        if k == 0 {
            return if v.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
        }
        let c = self.cartan();
        let cm = IntMatrix::from_i64_rows(&c);
        let inv = rational_inverse(&cm)?;
        let pair: Vec<BigRational> = self
            .simple
            .iter()
            .map(|&i| BigRational::from_integer(dot(v, &self.coroots[i]).into()))
            .collect();
        let mut out = vec![];
        for row in &inv {
            let x: BigRational = row.iter().zip(&pair).map(|(a, b)| a * b).sum();
            if !x.is_integer() {
                return None;
            }
            out.push(x.to_integer().to_i64()?);
        }
        let back = self.simple.iter().zip(&out).fold(vec![0; self.rank], |acc, (&i, &c)| {
            add(&acc, &self.roots[i].iter().map(|x| x * c).collect::<Vec<_>>())
        });
        (back == v).then_some(out)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.simple_coords(i).iter().all(|&c| c >= 0)
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coords(i).iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDatum(m.to_string()));
        let n = self.rank;
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            if dot(a, c) != 2 {
                return bad("<a, a∨> != 2");
            }
            match self.root_index(&neg(a)) {
                Some(j) if self.coroots[j] == neg(c) => {}
                _ => return bad("roots not closed under negation"),
            }
        }
        for (a, ac) in self.roots.iter().zip(&self.coroots) {
            for (b, bc) in self.roots.iter().zip(&self.coroots) {
                let img = add(b, &a.iter().map(|x| -dot(b, ac) * x).collect::<Vec<_>>());
                let cimg = add(bc, &ac.iter().map(|x| -dot(a, bc) * x).collect::<Vec<_>>());
                match self.root_index(&img) {
                    Some(k) if self.coroots[k] == cimg => {}
                    _ => return bad("reflections do not permute the roots"),
                }
            }
        }
        let root_rows: Vec<Vec<BigRational>> = self
            .roots
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let rr = rational_rank(&root_rows, n);
        if self.simple.len() != rr || self.simple.iter().any(|&i| i >= self.roots.len()) {
            return bad("simple roots do not form a base");
        }
        for i in 0..self.roots.len() {
            match self.try_simple_coords(&self.roots[i]) {
                Some(c) if c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0) => {}
                _ => return bad("simple roots do not form a base"),
            }
        }
        let det = IntMatrix::from_flat(n, &self.theta).det();
        if det != BigInt::one() && det != -BigInt::one() {
            return bad("theta not invertible over Z");
        }
        let id = mat_identity(n);
        let mut p = self.theta.clone();
        let mut k = 1;
        while p != id {
            p = mat_mul(&p, &self.theta, n);
            k += 1;
            if k > 64 {
                return bad("theta has infinite order");
            }
        }
        let ty = self.theta_y();
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            match self.root_index(&mat_vec(&self.theta, a)) {
                Some(j) if self.coroots[j] == mat_vec(&ty, c) => {}
                _ => return bad("theta does not permute roots and coroots compatibly"),
            }
        }
        for &i in &self.simple {
            let j = self.root_index(&mat_vec(&self.theta, &self.roots[i])).unwrap();
            if !self.simple.contains(&j) {
                return bad("theta does not fix the base");
            }
        }
        Ok(())
    }

    pub fn dual(&self) -> RootDatum {
        RootDatum::new(
            self.rank,
            self.coroots.clone(),
            self.roots.clone(),
            self.simple.clone(),
            self.theta_y(),
            &format!("dual({})", self.name),
        )
        .expect("dual of a valid datum is valid")
    }

    pub fn same_as(&self, other: &RootDatum) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple == other.simple
            && self.theta == other.theta
    }

    /// Connected components of the Dynkin diagram, as positions in `simple`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let c = self.cartan();
        let k = self.simple.len();
        let mut seen = vec![false; k];
        let mut comps = vec![];
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut at = 0;
            while at < comp.len() {
                let i = comp[at];
                for j in 0..k {
                    if !seen[j] && c[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                at += 1;
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    pub fn levi(&self, subset: &[usize], twisted: bool) -> Result<Levi> {
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort();
        subset.dedup();
        if subset.iter().any(|&p| p >= self.simple.len()) {
            return Err(Error::InvalidDatum("simple position out of range".into()));
        }
        let chosen: Vec<usize> = subset.iter().map(|&p| self.simple[p]).collect();
        let stable = chosen.iter().all(|&i| chosen.contains(&self.theta_root(i)));
        if twisted && !stable {
            return Err(Error::NotThetaStable);
        }
        let root_map: Vec<usize> = (0..self.roots.len())
            .filter(|&i| {
                let c = self.simple_coords(i);
                (0..self.simple.len()).all(|p| c[p] == 0 || subset.contains(&p))
            })
            .collect();
        let simple: Vec<usize> = chosen.iter().map(|i| root_map.iter().position(|r| r == i).unwrap()).collect();
        let theta = if stable { self.theta.clone() } else { mat_identity(self.rank) };
        let datum = RootDatum::new(
            self.rank,
            root_map.iter().map(|&i| self.roots[i].clone()).collect(),
            root_map.iter().map(|&i| self.coroots[i].clone()).collect(),
            simple,
            theta,
            &format!("levi({}; {:?})", self.name, subset),
        )?;
        Ok(Levi { datum, root_map, simple_subset: subset })
    }

    pub fn to_json(&self) -> DatumJson {
        let s = |v: &Vec<i64>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        DatumJson {
            schema: DATUM_SCHEMA.to_string(),
            name: self.name.clone(),
            rank: self.rank,
            roots: self.roots.iter().map(s).collect(),
            coroots: self.coroots.iter().map(s).collect(),
            simple: self.simple.clone(),
            theta: (0..self.rank).map(|i| s(&self.theta[i * self.rank..(i + 1) * self.rank].to_vec())).collect(),
        }
    }

    pub fn from_json(j: &DatumJson) -> Result<RootDatum> {
        if j.schema != DATUM_SCHEMA {
            return Err(Error::Parse(format!("unknown schema {}", j.schema)));
        }
        let p = |v: &Vec<String>| -> Result<Vec<i64>> {
            v.iter().map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x}")))).collect()
        };
        let roots = j.roots.iter().map(p).collect::<Result<Vec<_>>>()?;
        let coroots = j.coroots.iter().map(p).collect::<Result<Vec<_>>>()?;
        let theta: Vec<i64> = j.theta.iter().map(p).collect::<Result<Vec<_>>>()?.concat();
        RootDatum::new(j.rank, roots, coroots, j.simple.clone(), theta, &j.name)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (rank {}, {} roots)", self.name, self.rank, self.roots.len())?;
        for &i in &self.simple {
            writeln!(f, "  simple {:?} coroot {:?}", self.roots[i], self.coroots[i])?;
        }
        if !self.is_split() {
            writeln!(f, "  theta {:?}", self.theta)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub schema: String,
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<String>>,
    pub coroots: Vec<Vec<String>>,
    pub simple: Vec<usize>,
    pub theta: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Levi {
    pub datum: RootDatum,
    /// Ambient index of each Levi root.
    pub root_map: Vec<usize>,
    pub simple_subset: Vec<usize>,
}

fn signed_pairs(n: usize, with_long: bool, with_short: bool) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut roots = vec![];
    let mut coroots = vec![];
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                let r = add(&unit(n, i, a), &unit(n, j, b));
                roots.push(r.clone());
                coroots.push(r);
            }
        }
    }
    for i in 0..n {
        for s in [1, -1] {
            if with_long {
                roots.push(unit(n, i, 2 * s));
                coroots.push(unit(n, i, s));
            }
            if with_short {
                roots.push(unit(n, i, s));
                coroots.push(unit(n, i, 2 * s));
            }
        }
    }
    (roots, coroots)
}

fn type_a_roots(n: usize) -> Vec<Vec<i64>> {
    let mut roots = vec![];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                roots.push(add(&unit(n, i, 1), &unit(n, j, -1)));
            }
        }
    }
    roots
}

fn find(roots: &[Vec<i64>], r: &[i64]) -> usize {
    roots.iter().position(|x| x == r).expect("simple root present")
}

pub fn build_classical(spec: &GroupSpec) -> Result<RootDatum> {
    let n = spec.n;
    if n == 0 && spec.family != Family::Custom {
        return Err(Error::UnsupportedSpec("n must be at least 1".into()));
    }
    let chain = |roots: &[Vec<i64>], m: usize| -> Vec<usize> {
        (0..m.saturating_sub(1)).map(|i| find(roots, &add(&unit(m, i, 1), &unit(m, i + 1, -1)))).collect()
    };
    let name = format!("{}{}", spec.family.name(), n);
    match spec.family {
        Family::GL | Family::UQuasisplit => {
            let roots = type_a_roots(n);
            let simple = chain(&roots, n);
            let theta = if spec.family == Family::GL {
                mat_identity(n)
            } else {
                let mut t = vec![0; n * n];
                for i in 0..n {
                    t[(n - 1 - i) * n + i] = -1;
                }
                t
            };
            RootDatum::new(n, roots.clone(), roots, simple, theta, &name)
        }
        Family::SL | Family::PGL => {
            // SL: X in fundamental weights, Y in simple coroots. PGL is the transpose.
            let r = n - 1;
            let mut wt = vec![];
            let mut rt = vec![];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (lo, hi, sg) = if i < j { (i, j, 1) } else { (j, i, -1) };
                    let w: Vec<i64> = (0..r)
                        .map(|k| {
                            let e = |a: usize| -> i64 { i64::from(a == k) - i64::from(a == k + 1) };
                            sg * (e(lo) - e(hi))
                        })
                        .collect();
                    let c: Vec<i64> = (0..r).map(|k| if k >= lo && k < hi { sg } else { 0 }).collect();
                    wt.push(w);
                    rt.push(c);
                }
            }
            let (roots, coroots) = if spec.family == Family::SL { (wt, rt) } else { (rt, wt) };
            let simple: Vec<usize> = (0..r)
                .map(|k| {
                    // root e_k - e_{k+1}
                    let mut idx = 0;
                    for i in 0..n {
                        for j in 0..n {
                            if i == j {
                                continue;
                            }
                            if i == k && j == k + 1 {
                                return idx;
                            }
                            idx += 1;
                        }
                    }
                    unreachable!()
                })
                .collect();
            RootDatum::new(r, roots, coroots, simple, mat_identity(r), &name)
        }
        Family::Sp | Family::SOodd => {
            let sp = spec.family == Family::Sp;
            let (roots, coroots) = signed_pairs(n, sp, !sp);
            let mut simple = chain(&roots, n);
            simple.push(find(&roots, &unit(n, n - 1, if sp { 2 } else { 1 })));
            RootDatum::new(n, roots, coroots, simple, mat_identity(n), &name)
        }
        Family::SOevenSplit | Family::SOevenQuasisplit => {
            let (roots, coroots) = signed_pairs(n, false, false);
            let mut simple = chain(&roots, n);
            if n >= 2 {
                simple.push(find(&roots, &add(&unit(n, n - 2, 1), &unit(n, n - 1, 1))));
            }
            let mut theta = mat_identity(n);
            if spec.family == Family::SOevenQuasisplit {
                theta[n * n - 1] = -1;
            }
            RootDatum::new(n, roots, coroots, simple, theta, &name)
        }
        Family::Custom => spec.custom.clone().ok_or_else(|| Error::UnsupportedSpec("custom spec without datum".into())),
    }
}

/// Every built classical datum of the given rank bound, as `(family, n)` specs.
pub fn classical_specs_up_to_rank(max_rank: usize) -> Vec<GroupSpec> {
    let mut out = vec![];
    for fam in [
        Family::GL,
        Family::SL,
        Family::PGL,
        Family::Sp,
        Family::SOodd,
        Family::SOevenSplit,
        Family::SOevenQuasisplit,
        Family::UQuasisplit,
    ] {
        for n in 1..=max_rank + 1 {
            let rank = if matches!(fam, Family::SL | Family::PGL) { n - 1 } else { n };
            if rank <= max_rank && !(rank == 0) {
                out.push(GroupSpec::new(fam, n));
            }
        }
    }
    out
}

pub fn zero_vec(n: usize) -> Vec<BigRational> {
    vec![BigRational::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: Family, n: usize) -> RootDatum {
        build_classical(&GroupSpec::new(f, n)).unwrap()
    }

    #[test]
    fn sp2_is_sl2() {
        let d = build(Family::Sp, 1);
        assert_eq!(d.num_roots(), 2);
        assert_eq!(d.roots()[0], vec![2]);
        assert_eq!(d.coroots()[0], vec![1]);
    }

    #[test]
    fn sp4_dual_is_b2() {
        let d = build(Family::Sp, 2);
        assert_eq!(d.num_roots(), 8);
        assert!(d.is_split());
        let dd = d.dual();
        // B2 in these coordinates: short roots ±e_i
        assert!(dd.root_index(&[1, 0]).is_some());
        assert!(dd.root_index(&[2, 0]).is_none());
        assert_eq!(dd.roots(), build(Family::SOodd, 2).roots());
    }

    #[test]
    fn so4_quasisplit_swaps_factors() {
        let d = build(Family::SOevenQuasisplit, 2);
        assert_eq!(d.num_roots(), 4);
        assert_eq!(d.theta_order(), 2);
        let s = d.simple();
        assert_eq!(d.theta_root(s[0]), s[1]);
        assert_eq!(d.components().len(), 2);
    }

    #[test]
    fn duality_is_an_involution() {
        for (f, n) in [(Family::SOodd, 2), (Family::GL, 3), (Family::SL, 3), (Family::UQuasisplit, 3)] {
            let d = build(f, n);
            assert!(d.dual().dual().same_as(&d));
        }
        let gl = build(Family::GL, 3);
        assert_eq!(gl.dual().roots(), gl.roots());
    }

    #[test]
    fn sl_and_pgl_are_dual() {
        let sl = build(Family::SL, 3);
        let pgl = build(Family::PGL, 3);
        assert_eq!(sl.dual().roots(), pgl.roots());
        assert_eq!(sl.dual().coroots(), pgl.coroots());
    }

    #[test]
    fn levi_examples() {
        let d = build(Family::Sp, 2);
        let long = d.levi(&[1], false).unwrap();
        assert_eq!(long.datum.num_roots(), 2);
        assert_eq!(d.levi(&[], false).unwrap().datum.num_roots(), 0);
        assert!(d.levi(&[0, 1], false).unwrap().datum.same_as(&d) || d.levi(&[0, 1], false).unwrap().datum.num_roots() == 8);
        let q = build(Family::SOevenQuasisplit, 2);
        assert_eq!(q.levi(&[0], true).unwrap_err(), Error::NotThetaStable);
        assert!(q.levi(&[0, 1], true).is_ok());
    }

    #[test]
    fn theta_order_by_family() {
        for spec in classical_specs_up_to_rank(4) {
            let d = build_classical(&spec).unwrap();
            let ord = d.theta_order();
            assert!(ord == 1 || ord == 2);
            assert_eq!(ord == 1, spec.family.is_split(), "{}", d.name());
        }
    }

    #[test]
    fn json_round_trip() {
        let d = build(Family::SOevenQuasisplit, 3);
        let text = serde_json::to_string(&d.to_json()).unwrap();
        let back = RootDatum::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.same_as(&d));
    }

    #[test]
    fn rejects_bad_datum() {
        let r = RootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![1], vec![-1]], vec![0], vec![1], "bad");
        assert!(matches!(r, Err(Error::InvalidDatum(_))));
    }
}
