use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::alcove::Universe;
use crate::classes::{ClassContext, ClassLabel};
use crate::error::{Error, Result};
use crate::lattice::{rational_nullspace, torsion_quotient, FiniteAbelianGroup, IntMatrix, QmodZVector};
use crate::root_datum::{mat_mul, RootDatum};
use crate::weyl::RootSet;

#[derive(Clone, Debug)]
pub struct Pi0 {
    pub order: usize,
    /// Coset representatives of `W_s / W°_s`.
    pub reps: Vec<usize>,
    /// Those fixed by the `w₀ϑ`-twisted Frobenius.
    pub fixed: Vec<usize>,
}

pub fn pi0(ctx: &ClassContext, label: &ClassLabel) -> Pi0 {
    let g = ctx.group();
    let k = ctx.connected(&label.s);
    let stab = ctx.stabilizer(&label.s);
    let mut reps: Vec<usize> = stab.elements().iter().map(|&u| g.coset_rep(&k, u)).collect();
    reps.sort();
    reps.dedup();
    let w0 = label.w;
    let fixed = reps
        .iter()
        .copied()
        .filter(|&u| {
            let fu = g.mul(g.mul(w0, g.frob(u)), g.inverse(w0));
            g.coset_rep(&k, fu) == u
        })
        .collect();
    Pi0 { order: reps.len(), reps, fixed }
}

fn columns(n: usize, vecs: &[Vec<i64>]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_columns(n, &cols)
}

/// `[Y/Q∨ / (1−ϑ)]_tor`.
pub fn kottwitz_group(datum: &RootDatum) -> FiniteAbelianGroup {
    let n = datum.rank();
    torsion_quotient(n, &columns(n, datum.coroots()), &IntMatrix::from_flat(n, &datum.theta_y())).expect("coroot lattice is theta-stable")
}

#[derive(Clone, Debug)]
pub struct HMap {
    pub pi0_order: usize,
    pub pi0_fixed_order: usize,
    pub domain: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    pub domain_elements: Vec<Vec<BigInt>>,
    /// Image of each domain element.
    pub images: Vec<Vec<BigInt>>,
    /// π₀-orbits on the domain, as indices into `domain_elements`.
    pub orbits: Vec<Vec<usize>>,
    pub kernel_size: usize,
    /// Orbit count over every target element.
    pub fibers: BTreeMap<Vec<BigInt>, usize>,
}

impl HMap {
    /// π₀-orbit representative of a domain element.
    pub fn orbit_rep(&self, e: &[BigInt]) -> Vec<BigInt> {
        let i = self.domain_elements.iter().position(|x| x == e).expect("domain element");
        let o = self.orbits.iter().find(|o| o.contains(&i)).unwrap();
        self.domain_elements[o[0]].clone()
    }

    pub fn fiber(&self, omega: &[BigInt]) -> usize {
        self.fibers.get(omega).copied().unwrap_or(0)
    }
}

pub fn h_map(ctx: &ClassContext, label: &ClassLabel) -> HMap {
    let g = ctx.group();
    let datum = g.datum();
    let n = datum.rank();
    let phi_s = g.integral_roots(&label.s, ctx.roots());
    let sub: Vec<Vec<i64>> = phi_s.iter().map(|r| datum.coroots()[r].clone()).collect();
    let a = mat_mul(&g.y_matrix(label.w), &datum.theta_y(), n);
    let domain = torsion_quotient(n, &columns(n, &sub), &IntMatrix::from_flat(n, &a)).expect("Φ_s is w₀ϑ-stable");
    let target = kottwitz_group(datum);
    let elements = domain.elements();
    let images: Vec<Vec<BigInt>> = elements
        .iter()
        .map(|e| target.class_of(&domain.lift(e)).expect("torsion maps to torsion"))
        .collect();
    let p = pi0(ctx, label);
    let index: BTreeMap<Vec<BigInt>, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut seen = vec![false; elements.len()];
    let mut orbits = vec![];
    for i in 0..elements.len() {
        if seen[i] {
            continue;
        }
        let lift = domain.lift(&elements[i]);
        let mut orb: Vec<usize> = p
            .fixed
            .iter()
            .map(|&u| {
                let img = g.act_y(u, &lift.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>());
                let img: Vec<BigInt> = img.into_iter().map(BigInt::from).collect();
                index[&domain.class_of(&img).expect("π₀ preserves torsion")]
            })
            .collect();
        orb.push(i);
        orb.sort();
        orb.dedup();
        for &j in &orb {
            seen[j] = true;
        }
        orbits.push(orb);
    }
    let mut fibers: BTreeMap<Vec<BigInt>, usize> = target.elements().into_iter().map(|t| (t, 0)).collect();
    for o in &orbits {
        *fibers.get_mut(&images[o[0]]).unwrap() += 1;
    }
    let kernel_size = fibers[&target.zero()];
    HMap {
        pi0_order: p.order,
        pi0_fixed_order: p.fixed.len(),
        domain,
        target,
        domain_elements: elements,
        images,
        orbits,
        kernel_size,
        fibers,
    }
}

pub fn is_relevant(ctx: &ClassContext, label: &ClassLabel, omega: &[BigInt]) -> bool {
    h_map(ctx, label).fiber(omega) > 0
}

/// Position of a minimal-system class inside `ker h`, relative to a hyperspecial base vertex.
pub fn alpha_index(universe: &Universe, node: usize, base_vertex: usize, h: &HMap) -> Result<Vec<BigInt>> {
    let g = universe.group;
    let alcove = universe.alcove;
    let (sigma, local) = universe.pair(node);
    let global = universe.global_label(node);
    let k0 = ClassContext::global(g, universe.q).connected(&global.s);
    let target = g.coset_rep(&k0, global.w);
    let v = (0..g.order())
        .find(|&v| g.act(v, &local.s) == global.s && g.coset_rep(&k0, g.twisted_conj(v, local.w)) == target)
        .ok_or(Error::IncompatiblePair)?;
    let x = &alcove.facets[sigma].barycenter;
    let wx = g.act_y_rat(local.w, x);
    let lam: Vec<BigRational> = x.iter().zip(&wx).map(|(a, b)| a - b).collect();
    let mu = g.act_y_rat(v, &lam);
    let xo = &alcove.facets[base_vertex].barycenter;
    let w0xo = g.act_y_rat(global.w, xo);
    let diff: Vec<BigRational> = mu.iter().zip(xo).zip(&w0xo).map(|((m, a), b)| m - (a - b)).collect();
    if diff.iter().any(|d| !d.is_integer()) {
        return Err(Error::IncompatiblePair);
    }
    let y: Vec<BigInt> = diff.iter().map(|d| d.to_integer()).collect();
    let e = h.domain.class_of(&y).ok_or(Error::IncompatiblePair)?;
    Ok(h.orbit_rep(&e))
}

#[derive(Clone, Debug)]
pub struct LeviOfParameter {
    pub roots: RootSet,
    pub datum: RootDatum,
}

/// Centralizer of the `w₀ϑ`-fixed part of the connected center of `C(s)°`.
pub fn levi_of_parameter(ctx: &ClassContext, label: &ClassLabel) -> LeviOfParameter {
    let g = ctx.group();
    let datum = g.datum();
    let n = datum.rank();
    let rat = |v: &[i64]| -> Vec<BigRational> { v.iter().map(|&x| BigRational::from_integer(x.into())).collect() };
    let phi_s = g.integral_roots(&label.s, ctx.roots());
    let mut rows: Vec<Vec<BigRational>> = phi_s.iter().map(|r| rat(&datum.coroots()[r])).collect();
    let a = mat_mul(g.matrix(label.w), datum.theta(), n);
    for i in 0..n {
        let mut row = a[i * n..(i + 1) * n].to_vec();
        row[i] -= 1;
        rows.push(rat(&row));
    }
    let fixed = rational_nullspace(&rows, n);
    let roots = RootSet::from_indices(
        datum.num_roots(),
        ctx.roots().iter().filter(|&r| {
            fixed.iter().all(|v| {
                let p: BigRational = datum.coroots()[r].iter().zip(v).map(|(c, x)| x * BigRational::from_integer((*c).into())).sum();
                p.is_zero()
            })
        }),
    );
    LeviOfParameter { datum: sub_datum(datum, &roots, "M_phi"), roots }
}

/// Root sub-datum on a closed subsystem, with the base induced by the ambient positivity.
pub fn sub_datum(datum: &RootDatum, roots: &RootSet, tag: &str) -> RootDatum {
    let idx: Vec<usize> = roots.iter().filter(|&r| r < datum.num_roots()).collect();
    let pos: Vec<usize> = idx.iter().copied().filter(|&r| datum.is_positive(r)).collect();
    let simple_amb: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&r| {
            !pos.iter().any(|&a| {
                let diff: Vec<i64> = datum.roots()[r].iter().zip(&datum.roots()[a]).map(|(x, y)| x - y).collect();
                datum.root_index(&diff).is_some_and(|b| pos.contains(&b))
            })
        })
        .collect();
    let simple: Vec<usize> = simple_amb.iter().map(|r| idx.iter().position(|x| x == r).unwrap()).collect();
    let stable = idx.iter().all(|&r| roots.contains(datum.theta_root(r))) && simple_amb.iter().all(|&r| simple_amb.contains(&datum.theta_root(r)));
    let n = datum.rank();
    let theta = if stable { datum.theta().to_vec() } else { crate::root_datum::mat_identity(n) };
    RootDatum::new(
        n,
        idx.iter().map(|&r| datum.roots()[r].clone()).collect(),
        idx.iter().map(|&r| datum.coroots()[r].clone()).collect(),
        simple,
        theta,
        &format!("{tag}({})", datum.name()),
    )
    .expect("closed subsystem gives a root datum")
}

/// `ι_M^G`: the label read in the ambient group.
pub fn levi_embed_label(ambient: &ClassContext, m_label: &ClassLabel) -> ClassLabel {
    ambient.induce(m_label)
}

pub fn canonical_inertial_form(ctx: &ClassContext, s: &QmodZVector, w: usize) -> Result<ClassLabel> {
    ctx.canonicalize(s, w)
}
