use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::QmodZVector;
use crate::root_datum::{mat_identity, mat_inverse, mat_mul, mat_transpose, mat_vec, RootDatum};

pub const DEFAULT_BOUND: usize = 1_000_000;
const TABLE_LIMIT: usize = 4096;

/// Set of root indices, as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(Vec<u64>);

impl RootSet {
    pub fn empty(n: usize) -> Self {
        RootSet(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.contains(i))
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, w: usize) -> bool {
        self.member[w]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Root indices whose reflections generate (empty for non-reflection subgroups).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&w| other.contains(w))
    }
}

pub struct WeylGroup {
    datum: RootDatum,
    n: usize,
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    lengths: Vec<u32>,
    words: Vec<Vec<u8>>,
    inv: Vec<usize>,
    table: Vec<u32>,
    reflection: Vec<usize>,
    theta_conj: Vec<usize>,
    cache: Mutex<HashMap<RootSet, Arc<Subgroup>>>,
}

impl std::fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeylGroup({}, order {})", self.datum.name(), self.mats.len())
    }
}

pub fn reflection_matrix(root: &[i64], coroot: &[i64]) -> Vec<i64> {
    let n = root.len();
    let mut m = mat_identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] -= root[i] * coroot[j];
        }
    }
    m
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        Self::with_bound(datum, DEFAULT_BOUND)
    }

    pub fn with_bound(datum: &RootDatum, bound: usize) -> Result<Self> {
        let n = datum.rank();
        let gens: Vec<Vec<i64>> = datum
            .simple()
            .iter()
            .map(|&i| reflection_matrix(&datum.roots()[i], &datum.coroots()[i]))
            .collect();
        let id = mat_identity(n);
        let mut mats = vec![id.clone()];
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut lengths = vec![0u32];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (k, s) in gens.iter().enumerate() {
                let h = mat_mul(&mats[g], s, n);
                if index.contains_key(&h) {
                    continue;
                }
                if mats.len() >= bound {
                    return Err(Error::TooLarge { size: mats.len() + 1, bound });
                }
                let idx = mats.len();
                index.insert(h.clone(), idx);
                mats.push(h);
                let mut w = words[g].clone();
                w.push(k as u8);
                words.push(w);
                lengths.push(lengths[g] + 1);
                queue.push_back(idx);
            }
        }
        let inv: Vec<usize> = mats
            .iter()
            .map(|m| index[&mat_inverse(m, n).expect("Weyl element invertible")])
            .collect();
        let size = mats.len();
        let mut table = vec![];
        if size <= TABLE_LIMIT {
            table = Vec::with_capacity(size * size);
            for a in &mats {
                for b in &mats {
                    table.push(index[&mat_mul(a, b, n)] as u32);
                }
            }
        }
        let reflection = datum
            .roots()
            .iter()
            .zip(datum.coroots())
            .map(|(r, c)| index[&reflection_matrix(r, c)])
            .collect();
        let th = datum.theta().to_vec();
        let th_inv = mat_inverse(&th, n).expect("theta invertible");
        let theta_conj = mats
            .iter()
            .map(|m| index[&mat_mul(&mat_mul(&th, m, n), &th_inv, n)])
            .collect();
        Ok(WeylGroup {
            datum: datum.clone(),
            n,
            mats,
            index,
            lengths,
            words,
            inv,
            table,
            reflection,
            theta_conj,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn matrix(&self, w: usize) -> &[i64] {
        &self.mats[w]
    }

    /// Matrix of the contragredient action on Y.
    pub fn y_matrix(&self, w: usize) -> Vec<i64> {
        mat_transpose(&self.mats[self.inv[w]], self.n)
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn length(&self, w: usize) -> u32 {
        self.lengths[w]
    }

    /// Reduced word in positions of the simple roots.
    pub fn word(&self, w: usize) -> &[u8] {
        &self.words[w]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inv[w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.table.is_empty() {
            self.index[&mat_mul(&self.mats[a], &self.mats[b], self.n)]
        } else {
            self.table[a * self.mats.len() + b] as usize
        }
    }

    pub fn reflection(&self, root: usize) -> usize {
        self.reflection[root]
    }

    /// `F(v) = ϑ v ϑ^{-1}`.
    pub fn frob(&self, v: usize) -> usize {
        self.theta_conj[v]
    }

    /// `v w F(v)^{-1}`.
    pub fn twisted_conj(&self, v: usize, w: usize) -> usize {
        self.mul(self.mul(v, w), self.inv[self.theta_conj[v]])
    }

    pub fn act(&self, w: usize, s: &QmodZVector) -> QmodZVector {
        s.apply_flat(&self.mats[w])
    }

    pub fn act_int(&self, w: usize, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.mats[w], x)
    }

    pub fn act_y(&self, w: usize, y: &[i64]) -> Vec<i64> {
        mat_vec(&self.y_matrix(w), y)
    }

    pub fn act_y_rat(&self, w: usize, y: &[BigRational]) -> Vec<BigRational> {
        let m = self.y_matrix(w);
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..n {
                    if m[i * n + j] != 0 {
                        acc += &y[j] * BigRational::from_integer(m[i * n + j].into());
                    }
                }
                acc
            })
            .collect()
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let size = self.order();
        let mut member = vec![false; size];
        member[0] = true;
        let mut elements = vec![0];
        let mut at = 0;
        while at < elements.len() {
            let g = elements[at];
            for &s in gens {
                let h = self.mul(g, s);
                if !member[h] {
                    member[h] = true;
                    elements.push(h);
                }
            }
            at += 1;
        }
        elements.sort();
        Subgroup { elements, member, generators: vec![] }
    }

    /// Reflection subgroup generated by `s_α` for α in `roots`; cached.
    pub fn reflection_subgroup(&self, roots: &RootSet) -> Arc<Subgroup> {
        if let Some(g) = self.cache.lock().unwrap().get(roots) {
            return g.clone();
        }
        let gens: Vec<usize> = roots.iter().filter(|&r| r < self.reflection.len()).map(|r| self.reflection[r]).collect();
        let mut sg = self.generate(&gens);
        sg.generators = roots.iter().filter(|&r| r < self.reflection.len()).collect();
        let sg = Arc::new(sg);
        self.cache.lock().unwrap().insert(roots.clone(), sg.clone());
        sg
    }

    pub fn full(&self) -> Arc<Subgroup> {
        self.reflection_subgroup(&RootSet::full(self.datum.num_roots()))
    }

    /// Roots α in `within` with `<α∨, s> ≡ 0`.
    pub fn integral_roots(&self, s: &QmodZVector, within: &RootSet) -> RootSet {
        let mut out = RootSet::empty(self.datum.num_roots());
        for r in within.iter().filter(|&r| r < self.datum.num_roots()) {
            let c = &self.datum.coroots()[r];
            let p: BigRational = c
                .iter()
                .zip(s.coords())
                .filter(|(a, _)| **a != 0)
                .map(|(a, b)| b * BigRational::from_integer((*a).into()))
                .sum();
            if p.is_integer() {
                out.insert(r);
            }
        }
        out
    }

    pub fn stabilizer(&self, s: &QmodZVector) -> Subgroup {
        self.stabilizer_in(s, &self.full())
    }

    pub fn stabilizer_in(&self, s: &QmodZVector, h: &Subgroup) -> Subgroup {
        let size = self.order();
        let mut member = vec![false; size];
        let elements: Vec<usize> = h.elements().iter().copied().filter(|&w| &self.act(w, s) == s).collect();
        for &w in &elements {
            member[w] = true;
        }
        Subgroup { elements, member, generators: vec![] }
    }

    pub fn connected_stabilizer(&self, s: &QmodZVector) -> Arc<Subgroup> {
        let all = RootSet::full(self.datum.num_roots());
        self.reflection_subgroup(&self.integral_roots(s, &all))
    }

    /// Partition of W into classes `w ~ v w F(v)^{-1}`.
    pub fn twisted_classes(&self) -> Vec<Vec<usize>> {
        let size = self.order();
        let mut seen = vec![false; size];
        let mut classes = vec![];
        for w in 0..size {
            if seen[w] {
                continue;
            }
            let mut cls: Vec<usize> = (0..size).map(|v| self.twisted_conj(v, w)).collect();
            cls.sort();
            cls.dedup();
            for &x in &cls {
                seen[x] = true;
            }
            classes.push(cls);
        }
        classes
    }

    /// Canonical representatives of right cosets `H w`, in index order.
    pub fn cosets(&self, h: &Subgroup) -> Vec<usize> {
        let size = self.order();
        let mut seen = vec![false; size];
        let mut reps = vec![];
        for w in 0..size {
            if seen[w] {
                continue;
            }
            reps.push(w);
            for &x in h.elements() {
                seen[self.mul(x, w)] = true;
            }
        }
        reps
    }

    /// Canonical representative of `H w`: shortest, then first in enumeration order.
    pub fn coset_rep(&self, h: &Subgroup, w: usize) -> usize {
        h.elements().iter().map(|&x| self.mul(x, w)).min().unwrap()
    }

    pub fn signed_permutation(&self, w: usize) -> Option<SignedPermutation> {
        SignedPermutation::from_matrix(&self.mats[w], self.n)
    }
}

/// `w(e_i) = (-1)^{signs[perm[i]]} e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub signs: Vec<u8>,
    pub perm: Vec<usize>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { signs: vec![0; n], perm: (0..n).collect() }
    }

    pub fn to_matrix(&self) -> Vec<i64> {
        let n = self.perm.len();
        let mut m = vec![0; n * n];
        for i in 0..n {
            let j = self.perm[i];
            m[j * n + i] = if self.signs[j] == 1 { -1 } else { 1 };
        }
        m
    }

    pub fn from_matrix(m: &[i64], n: usize) -> Option<Self> {
        let mut perm = vec![0; n];
        let mut signs = vec![0; n];
        for i in 0..n {
            let col: Vec<(usize, i64)> = (0..n).map(|j| (j, m[j * n + i])).filter(|(_, x)| *x != 0).collect();
            match col[..] {
                [(j, x)] if x == 1 || x == -1 => {
                    perm[i] = j;
                    signs[j] = u8::from(x == -1);
                }
                _ => return None,
            }
        }
        Some(SignedPermutation { signs, perm })
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let mut signs = vec![0; n];
        for i in 0..n {
            // sign at target self.perm[j] of self, plus sign at j of other
            signs[self.perm[i]] = (self.signs[self.perm[i]] + other.signs[i]) % 2;
        }
        SignedPermutation { signs, perm }
    }

    /// Images as signed 1-based indices, e.g. `[2, -1]`.
    pub fn images(&self) -> Vec<i64> {
        self.perm
            .iter()
            .map(|&j| {
                let v = j as i64 + 1;
                if self.signs[j] == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All of `(Z/2)^n ⋊ S_n`, or its even-sign subgroup for type D.
pub fn enumerate_signed_permutations(n: usize, even_only: bool) -> Vec<SignedPermutation> {
    let mut out = vec![];
    for perm in permutations(n) {
        for mask in 0u32..(1 << n) {
            if even_only && mask.count_ones() % 2 == 1 {
                continue;
            }
            let signs = (0..n).map(|i| (mask >> i & 1) as u8).collect();
            out.push(SignedPermutation { signs, perm: perm.clone() });
        }
    }
    out
}
