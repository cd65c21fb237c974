use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::alcove::Alcove;
use crate::classes::{ClassContext, ClassLabel};
use crate::error::{Error, Result};
use crate::lattice::QmodZVector;
use crate::root_datum::Family;
use crate::weyl::{RootSet, SignedPermutation, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
    Other,
}

/// 0 ↦ +1, 1/2 ↦ −1.
pub fn sign_pattern(s: &QmodZVector) -> Vec<Sign> {
    let half = BigRational::new(1.into(), 2.into());
    s.coords()
        .iter()
        .map(|c| {
            if c.is_zero() {
                Sign::Plus
            } else if *c == half {
                Sign::Minus
            } else {
                Sign::Other
            }
        })
        .collect()
}

/// Sum of the signs `ε_i` over `i ∈ I_s`, where `w(e_i) = ±e_{σ(i)}` carries `ε_i`.
pub fn parity_f(s: &[Sign], w: &SignedPermutation) -> u8 {
    s.iter()
        .enumerate()
        .filter(|(_, x)| **x == Sign::Minus)
        .map(|(i, _)| w.signs[w.perm[i]])
        .sum::<u8>()
        % 2
}

pub fn compose_tags(i: u8, j: u8) -> u8 {
    (i + j) % 2
}

/// `v`: the last-coordinate flip for the quasi-split even orthogonal group, trivial otherwise.
pub fn family_twist(family: Family, n: usize) -> SignedPermutation {
    let mut v = SignedPermutation::identity(n);
    if family == Family::SOevenQuasisplit && n > 0 {
        v.signs[n - 1] = 1;
    }
    v
}

fn bcd(family: Family) -> Result<()> {
    match family {
        Family::Sp | Family::SOodd | Family::SOevenSplit | Family::SOevenQuasisplit => Ok(()),
        f => Err(Error::UnsupportedSpec(format!("{} is not of type B, C or D", f.name()))),
    }
}

/// `[0]` or `[1]`; `[0]` whenever `W_s` is connected.
pub fn rational_tag(ctx: &ClassContext, family: Family, label: &ClassLabel) -> Result<u8> {
    bcd(family)?;
    let g = ctx.group();
    if ctx.stabilizer(&label.s).order() == ctx.connected(&label.s).order() {
        return Ok(0);
    }
    let n = g.rank();
    let w = g.signed_permutation(label.w).ok_or_else(|| Error::UnsupportedSpec("not a signed permutation".into()))?;
    Ok(parity_f(&sign_pattern(&label.s), &w.compose(&family_twist(family, n))))
}

/// Coordinate supports of the irreducible factors of a local root system.
pub fn factor_supports(group: &WeylGroup, roots: &RootSet) -> Vec<Vec<usize>> {
    let d = group.datum();
    let n = d.rank();
    let mut uf = crate::union_find::UnionFind::new(n);
    let mut used = vec![false; n];
    for r in roots.iter().filter(|&r| r < d.num_roots()) {
        let supp: Vec<usize> = (0..n).filter(|&i| d.roots()[r][i] != 0).collect();
        for &i in &supp {
            used[i] = true;
            uf.union(supp[0], i);
        }
    }
    let mut out: Vec<Vec<usize>> = vec![];
    let mut heads: Vec<usize> = vec![];
    for i in (0..n).filter(|&i| used[i]) {
        let h = uf.find(i);
        match heads.iter().position(|&x| x == h) {
            Some(k) => out[k].push(i),
            None => {
                heads.push(h);
                out.push(vec![i]);
            }
        }
    }
    out
}

/// Per-factor tags of a class of a facet group, for split symplectic data.
pub fn local_factor_tags(alcove: &Alcove, group: &WeylGroup, sigma: usize, label: &ClassLabel) -> Result<Vec<u8>> {
    let w = group.signed_permutation(label.w).ok_or_else(|| Error::UnsupportedSpec("not a signed permutation".into()))?;
    let pattern = sign_pattern(&label.s);
    Ok(factor_supports(group, &alcove.local_roots[sigma])
        .iter()
        .map(|supp| {
            let masked: Vec<Sign> = (0..pattern.len()).map(|i| if supp.contains(&i) { pattern[i] } else { Sign::Plus }).collect();
            parity_f(&masked, &w)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub family: Family,
    pub n: usize,
}

/// Reductive quotient at vertex `j` of the standard alcove, as two classical factors.
pub fn parahoric_factors(family: Family, n: usize, vertex: usize) -> Result<(Factor, Factor)> {
    let f = |family, n| Factor { family, n };
    match family {
        Family::Sp if vertex <= n => Ok((f(Family::Sp, n - vertex), f(Family::Sp, vertex))),
        Family::SOevenSplit if vertex <= n && n >= 2 => {
            let j = match vertex {
                0 | 1 => 0,
                v if v + 1 >= n => n,
                v => v,
            };
            Ok((f(Family::SOevenSplit, n - j), f(Family::SOevenSplit, j)))
        }
        Family::SOevenQuasisplit if vertex < n => Ok((f(Family::SOevenSplit, vertex), f(Family::SOevenQuasisplit, n - vertex))),
        Family::Sp | Family::SOevenSplit | Family::SOevenQuasisplit => Err(Error::BadVertex(vertex)),
        other => Err(Error::UnsupportedSpec(format!("no parahoric table for {}", other.name()))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    Split,
    Nonsplit,
}

/// `N = 2m²` with `m` even for the split form, odd otherwise.
pub fn unip_cuspidal_exists(dim: u64, form: Form) -> bool {
    if dim % 2 == 1 {
        return false;
    }
    let m2 = dim / 2;
    let m = m2.isqrt();
    if m * m != m2 {
        return false;
    }
    match form {
        Form::Split => m % 2 == 0,
        Form::Nonsplit => m % 2 == 1,
    }
}
