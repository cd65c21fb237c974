//! Brute-force oracles shared by integration tests. Nothing here calls the Weyl-group or class code.
#![allow(dead_code)]

use std::collections::HashMap;

use levelzero_core::root_datum::RootDatum;

pub type Mat = Vec<i64>;

pub fn mul(a: &[i64], b: &[i64], n: usize) -> Mat {
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

pub fn identity(n: usize) -> Mat {
    (0..n * n).map(|i| i64::from(i % (n + 1) == 0)).collect()
}

/// `λ ↦ λ − ⟨λ, α∨⟩ α`.
pub fn reflection(alpha: &[i64], coroot: &[i64]) -> Mat {
    let n = alpha.len();
    let mut m = identity(n);
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] -= alpha[i] * coroot[j];
        }
    }
    m
}

/// The Weyl group as matrices on X, by closing the simple reflections.
pub fn weyl_matrices(d: &RootDatum) -> Vec<Mat> {
    let n = d.rank();
    let gens: Vec<Mat> = d.simple().iter().map(|&r| reflection(&d.roots()[r], &d.coroots()[r])).collect();
    let mut seen: HashMap<Mat, ()> = HashMap::new();
    let mut out = vec![identity(n)];
    seen.insert(identity(n), ());
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let m = mul(g, &out[i], n);
            if seen.insert(m.clone(), ()).is_none() {
                out.push(m);
            }
        }
        i += 1;
    }
    out
}

pub fn inverse_of(m: &[i64], n: usize) -> Mat {
    let id = identity(n);
    let mut p = m.to_vec();
    let mut prev = id.clone();
    while p != id {
        prev = p.clone();
        p = mul(&p, m, n);
    }
    prev
}

fn act_mod(m: &[i64], s: &[i64], den: i64) -> Vec<i64> {
    let n = s.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * s[j]).sum::<i64>().rem_euclid(den)).collect()
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Number of rational classes with `N s = 0`: orbits of pairs `(s, w)` with `s = w F s`
/// under `v·(s,w) = (vs, v w F(v)⁻¹)`, with `w` taken modulo `W°_s` on the left.
pub fn brute_class_count(d: &RootDatum, q: i64, den: i64) -> usize {
    let n = d.rank();
    let ws = weyl_matrices(d);
    let index: HashMap<Mat, usize> = ws.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let theta = d.theta().to_vec();
    let theta_inv = inverse_of(&theta, n);
    let frob: Mat = theta.iter().map(|x| x * q).collect();
    let gens: Vec<Mat> = d.simple().iter().map(|&r| reflection(&d.roots()[r], &d.coroots()[r])).collect();
    let refl: Vec<Mat> = (0..d.num_roots()).map(|r| reflection(&d.roots()[r], &d.coroots()[r])).collect();

    let total = (den as usize).pow(n as u32);
    let decode = |mut k: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        for c in v.iter_mut().rev() {
            *c = (k % den as usize) as i64;
            k /= den as usize;
        }
        v
    };
    let encode = |v: &[i64]| -> usize { v.iter().fold(0usize, |a, &x| a * den as usize + x as usize) };
    let mut nodes: HashMap<(usize, usize), usize> = HashMap::new();
    let mut list = vec![];
    for k in 0..total {
        let s = decode(k);
        let fs = act_mod(&frob, &s, den);
        for (wi, w) in ws.iter().enumerate() {
            if act_mod(w, &fs, den) == s {
                nodes.insert((k, wi), list.len());
                list.push((k, wi));
            }
        }
    }
    let mut uf = Uf((0..list.len()).collect());
    for (idx, &(k, wi)) in list.iter().enumerate() {
        let s = decode(k);
        for g in &gens {
            let vs = encode(&act_mod(g, &s, den));
            let fv_inv = mul(&mul(&theta, &inverse_of(g, n), n), &theta_inv, n);
            let vw = mul(&mul(g, &ws[wi], n), &fv_inv, n);
            uf.join(idx, nodes[&(vs, index[&vw])]);
        }
        for (r, m) in refl.iter().enumerate() {
            let pairing: i64 = d.coroots()[r].iter().zip(&s).map(|(a, b)| a * b).sum();
            if pairing.rem_euclid(den) == 0 {
                let rw = mul(m, &ws[wi], n);
                uf.join(idx, nodes[&(k, index[&rw])]);
            }
        }
    }
    (0..list.len()).filter(|&i| uf.find(i) == i).count()
}
