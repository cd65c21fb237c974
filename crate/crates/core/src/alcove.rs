use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::classes::{ClassContext, ClassLabel};
use crate::error::{Error, Result};
use crate::lattice::{rational_inverse, solve_integer, IntMatrix};
use crate::root_datum::RootDatum;
use crate::union_find::UnionFind;
use crate::weyl::{RootSet, WeylGroup};

/// One irreducible factor of the root system with its affine node data.
#[derive(Clone, Debug)]
pub struct Component {
    /// Positions in `simple()`.
    pub nodes: Vec<usize>,
    pub highest_root: usize,
    /// Coefficient of each simple root of the component in the highest root.
    pub marks: Vec<i64>,
    /// Vertex points `ϖ_j∨ / c_j` in Y⊗Q; entry 0 is the origin (affine node).
    pub vertices: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveFacet {
    pub id: usize,
    /// Per component, the vanishing extended nodes (0 = affine node, k = k-th node of the component).
    pub vanishing: Vec<Vec<usize>>,
    pub barycenter: Vec<BigRational>,
    pub dim: usize,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct OmegaElement {
    pub w: usize,
    pub translation: Vec<BigInt>,
    pub facet_perm: Vec<usize>,
}

#[derive(Debug)]
pub struct Alcove {
    pub components: Vec<Component>,
    pub facets: Vec<AlcoveFacet>,
    /// `faces[σ]` lists facets τ ≠ σ with τ ≤ σ.
    pub faces: Vec<Vec<usize>>,
    pub local_roots: Vec<RootSet>,
    pub omega: Vec<OmegaElement>,
}

fn pair_rat(root: &[i64], y: &[BigRational]) -> BigRational {
    root.iter()
        .zip(y)
        .filter(|(a, _)| **a != 0)
        .map(|(a, b)| b * BigRational::from_integer((*a).into()))
        .sum()
}

fn subsets_proper(k: usize) -> Vec<Vec<usize>> {
    // proper subsets of {0..k}, k+1 nodes
    let m = k + 1;
    (0u32..(1 << m) - 1).map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

impl Alcove {
    pub fn new(group: &WeylGroup) -> Result<Alcove> {
        let datum = group.datum();
        if !datum.is_split() {
            return Err(Error::TwistedUnsupported);
        }
        let n = datum.rank();
        let simple = datum.simple();
        let cartan = datum.cartan();
        let k = simple.len();
        // fundamental coweights in the span of the simple coroots
        let coweights: Vec<Vec<BigRational>> = if k == 0 {
            vec![]
        } else {
            let ct = IntMatrix::from_i64_rows(&(0..k).map(|i| (0..k).map(|j| cartan[j][i]).collect()).collect::<Vec<_>>());
            let inv = rational_inverse(&ct).expect("Cartan matrix invertible");
            (0..k)
                .map(|j| {
                    let mut x = vec![BigRational::zero(); n];
                    for (kk, row) in inv.iter().enumerate() {
                        let c = &row[j];
                        for (xi, a) in x.iter_mut().zip(&datum.coroots()[simple[kk]]) {
                            *xi += c * BigRational::from_integer((*a).into());
                        }
                    }
                    x
                })
                .collect()
        };
        let mut components = vec![];
        for nodes in datum.components() {
            let highest_root = (0..datum.num_roots())
                .filter(|&r| {
                    let c = datum.simple_coords(r);
                    c.iter().all(|&x| x >= 0) && (0..k).all(|p| c[p] == 0 || nodes.contains(&p))
                })
                .max_by_key(|&r| (datum.height(r), std::cmp::Reverse(r)))
                .unwrap();
            let hc = datum.simple_coords(highest_root);
            let marks: Vec<i64> = nodes.iter().map(|&p| hc[p]).collect();
            let mut vertices = vec![vec![BigRational::zero(); n]];
            for (&p, &c) in nodes.iter().zip(&marks) {
                vertices.push(coweights[p].iter().map(|x| x / BigRational::from_integer(c.into())).collect());
            }
            components.push(Component { nodes, highest_root, marks, vertices });
        }
        // facets: product over components of proper subsets
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for comp in &components {
            let subs = subsets_proper(comp.nodes.len());
            let mut next = vec![];
            for c in &combos {
                for s in &subs {
                    let mut c2 = c.clone();
                    c2.push(s.clone());
                    next.push(c2);
                }
            }
            combos = next;
        }
        let mut facets: Vec<AlcoveFacet> = combos
            .into_iter()
            .map(|van| {
                let mut bary = vec![BigRational::zero(); n];
                let mut dim = 0;
                let mut names = vec![];
                for (comp, j) in components.iter().zip(&van) {
                    let free: Vec<usize> = (0..=comp.nodes.len()).filter(|i| !j.contains(i)).collect();
                    dim += free.len() - 1;
                    let cnt = BigRational::from_integer(BigInt::from(free.len()));
                    for &f in &free {
                        for (b, v) in bary.iter_mut().zip(&comp.vertices[f]) {
                            *b += v / &cnt;
                        }
                    }
                    names.push(free.iter().map(|f| format!("v{f}")).collect::<Vec<_>>().join(""));
                }
                let name = if names.is_empty() { "v0".to_string() } else { names.join("|") };
                AlcoveFacet { id: 0, vanishing: van, barycenter: bary, dim, name }
            })
            .collect();
        facets.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.name.cmp(&b.name)));
        for (i, f) in facets.iter_mut().enumerate() {
            f.id = i;
        }
        let faces: Vec<Vec<usize>> = facets
            .iter()
            .map(|s| {
                facets
                    .iter()
                    .filter(|t| t.id != s.id && t.vanishing.iter().zip(&s.vanishing).all(|(jt, js)| js.iter().all(|x| jt.contains(x))))
                    .map(|t| t.id)
                    .collect()
            })
            .collect();
        let local_roots: Vec<RootSet> = facets
            .iter()
            .map(|f| {
                RootSet::from_indices(
                    datum.num_roots(),
                    (0..datum.num_roots()).filter(|&r| pair_rat(&datum.roots()[r], &f.barycenter).is_integer()),
                )
            })
            .collect();
        let mut alcove = Alcove { components, facets, faces, local_roots, omega: vec![] };
        alcove.omega = alcove.compute_omega(group);
        Ok(alcove)
    }

    fn root_coords(&self, datum: &RootDatum, y: &[BigRational]) -> Vec<BigRational> {
        datum.simple().iter().map(|&i| pair_rat(&datum.roots()[i], y)).collect()
    }

    fn compute_omega(&self, group: &WeylGroup) -> Vec<OmegaElement> {
        let datum = group.datum();
        let n = datum.rank();
        let key: HashMap<Vec<BigRational>, usize> =
            self.facets.iter().map(|f| (self.root_coords(datum, &f.barycenter), f.id)).collect();
        let rows: Vec<Vec<i64>> = datum.simple().iter().map(|&i| datum.roots()[i].clone()).collect();
        let mut out: Vec<OmegaElement> = vec![];
        for v in self.vertices() {
            let t = self.root_coords(datum, &self.facets[v].barycenter);
            if t.iter().any(|x| !x.is_integer()) {
                continue;
            }
            let lam = if rows.is_empty() {
                vec![BigInt::zero(); n]
            } else {
                let m = IntMatrix::from_i64_rows(&rows);
                match solve_integer(&m, &t.iter().map(|x| x.to_integer()).collect::<Vec<_>>()) {
                    Some(l) => l,
                    None => continue,
                }
            };
            let lam_r: Vec<BigRational> = lam.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            for w in 0..group.order() {
                let mut perm = vec![];
                for f in &self.facets {
                    let img: Vec<BigRational> =
                        group.act_y_rat(w, &f.barycenter).iter().zip(&lam_r).map(|(a, b)| a + b).collect();
                    match key.get(&self.root_coords(datum, &img)) {
                        Some(&g) => perm.push(g),
                        None => break,
                    }
                }
                if perm.len() == self.facets.len() && !out.iter().any(|o| o.w == w && o.facet_perm == perm) {
                    out.push(OmegaElement { w, translation: lam.clone(), facet_perm: perm });
                }
            }
        }
        out.sort_by(|a, b| a.facet_perm.cmp(&b.facet_perm).then(a.w.cmp(&b.w)));
        let id_pos = out.iter().position(|o| o.facet_perm.iter().enumerate().all(|(i, &j)| i == j) && o.w == 0);
        if let Some(p) = id_pos {
            let e = out.remove(p);
            out.insert(0, e);
        }
        out
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.facets.iter().filter(|f| f.dim == 0).map(|f| f.id).collect()
    }

    pub fn chamber(&self) -> usize {
        self.facets.len() - 1
    }

    pub fn is_face(&self, x: usize, sigma: usize) -> bool {
        x == sigma || self.faces[sigma].contains(&x)
    }

    /// Vertices whose local Weyl group is all of W.
    pub fn hyperspecial_vertices(&self, group: &WeylGroup) -> Vec<usize> {
        self.vertices()
            .into_iter()
            .filter(|&v| group.reflection_subgroup(&self.local_roots[v]).order() == group.order())
            .collect()
    }

    pub fn context<'a>(&self, group: &'a WeylGroup, sigma: usize, q: u64) -> ClassContext<'a> {
        ClassContext::new(group, self.local_roots[sigma].clone(), q)
    }

    pub fn facet_by_name(&self, name: &str) -> Option<usize> {
        self.facets.iter().position(|f| f.name == name)
    }
}

pub fn local_classes(alcove: &Alcove, group: &WeylGroup, sigma: usize, q: u64, bound: u64) -> Result<Vec<ClassLabel>> {
    alcove.context(group, sigma, q).classes(bound)
}

/// `φ*_{σ,x}`.
pub fn restrict_class(alcove: &Alcove, group: &WeylGroup, q: u64, sigma: usize, x: usize, label: &ClassLabel) -> Result<ClassLabel> {
    if !alcove.is_face(x, sigma) {
        return Err(Error::NotAFace { face: x, facet: sigma });
    }
    Ok(alcove.context(group, x, q).induce(label))
}

pub fn omega_transport(alcove: &Alcove, group: &WeylGroup, q: u64, omega: &OmegaElement, sigma: usize, label: &ClassLabel) -> (usize, ClassLabel) {
    let target = omega.facet_perm[sigma];
    let s = group.act(omega.w, &label.s);
    let w = group.mul(group.mul(omega.w, label.w), group.inverse(group.frob(omega.w)));
    let l = alcove.context(group, target, q).canonicalize(&s, w).expect("transport preserves the defining condition");
    (target, l)
}

pub type FacetClassSystem = BTreeMap<usize, BTreeSet<ClassLabel>>;

/// All (facet, local class) pairs for a bound, with the maps among them.
pub struct Universe<'a> {
    pub alcove: &'a Alcove,
    pub group: &'a WeylGroup,
    pub q: u64,
    pub bound: u64,
    pub labels: Vec<Vec<ClassLabel>>,
    pub offsets: Vec<usize>,
    lookup: Vec<HashMap<ClassLabel, usize>>,
    /// `restrict[(σ, x)][i]` is the local index at x of the image of label i at σ.
    restrict: HashMap<(usize, usize), Vec<usize>>,
    /// Per Ω element, node ↦ node.
    omega_maps: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct MinimalSystem {
    pub nodes: Vec<usize>,
    pub global: ClassLabel,
}

#[derive(Clone, Debug, Default)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub violations: Vec<String>,
}

impl<'a> Universe<'a> {
    pub fn new(alcove: &'a Alcove, group: &'a WeylGroup, q: u64, bound: u64) -> Result<Self> {
        let labels: Vec<Vec<ClassLabel>> = (0..alcove.facets.len())
            .into_par_iter()
            .map(|f| local_classes(alcove, group, f, q, bound))
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for l in &labels {
            offsets.push(offsets.last().unwrap() + l.len());
        }
        let lookup: Vec<HashMap<ClassLabel, usize>> =
            labels.iter().map(|ls| ls.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()).collect();
        let pairs: Vec<(usize, usize)> =
            (0..alcove.facets.len()).flat_map(|s| alcove.faces[s].iter().map(move |&x| (s, x))).collect();
        let restrict: HashMap<(usize, usize), Vec<usize>> = pairs
            .par_iter()
            .map(|&(s, x)| {
                let ctx = alcove.context(group, x, q);
                let img = labels[s].iter().map(|l| lookup[x][&ctx.induce(l)]).collect();
                ((s, x), img)
            })
            .collect();
        let omega_maps: Vec<Vec<usize>> = alcove
            .omega
            .par_iter()
            .map(|om| {
                let mut m = Vec::with_capacity(*offsets.last().unwrap());
                for (f, ls) in labels.iter().enumerate() {
                    for l in ls {
                        let (t, img) = omega_transport(alcove, group, q, om, f, l);
                        m.push(offsets[t] + lookup[t][&img]);
                    }
                }
                m
            })
            .collect();
        let total = *offsets.last().unwrap();
        let mut adjacency = vec![vec![]; total];
        let vertices = alcove.vertices();
        for s in 0..alcove.facets.len() {
            for &x in alcove.faces[s].iter().filter(|x| vertices.contains(x)) {
                for (i, &j) in restrict[&(s, x)].iter().enumerate() {
                    let (a, b) = (offsets[s] + i, offsets[x] + j);
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        for m in &omega_maps {
            for (a, &b) in m.iter().enumerate() {
                if a != b {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        for adj in adjacency.iter_mut() {
            adj.sort();
            adj.dedup();
        }
        Ok(Universe { alcove, group, q, bound, labels, offsets, lookup, restrict, omega_maps, adjacency })
    }

    pub fn size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn node(&self, facet: usize, label: &ClassLabel) -> Option<usize> {
        self.lookup[facet].get(label).map(|i| self.offsets[facet] + i)
    }

    pub fn pair(&self, node: usize) -> (usize, &ClassLabel) {
        let f = self.offsets.partition_point(|&o| o <= node) - 1;
        (f, &self.labels[f][node - self.offsets[f]])
    }

    pub fn global_label(&self, node: usize) -> ClassLabel {
        let (_, l) = self.pair(node);
        ClassContext::global(self.group, self.q).induce(l)
    }

    pub fn restrict_node(&self, node: usize, x: usize) -> Result<usize> {
        let (s, _) = self.pair(node);
        if s == x {
            return Ok(node);
        }
        let img = self.restrict.get(&(s, x)).ok_or(Error::NotAFace { face: x, facet: s })?;
        Ok(self.offsets[x] + img[node - self.offsets[s]])
    }

    /// Partition into minimal systems via union-find over the ∼′ edges.
    pub fn minimal_systems(&self) -> Vec<MinimalSystem> {
        let mut uf = UnionFind::new(self.size());
        for (a, adj) in self.adjacency.iter().enumerate() {
            for &b in adj {
                uf.union(a, b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in 0..self.size() {
            groups.entry(uf.find(a)).or_default().push(a);
        }
        let mut out: Vec<MinimalSystem> = groups
            .into_values()
            .map(|nodes| {
                let global = self.global_label(nodes[0]);
                MinimalSystem { nodes, global }
            })
            .collect();
        out.sort_by_key(|m| m.nodes[0]);
        out
    }

    /// Saturation `S^i = S^{i-1} ∪ T^i` from a seed set of nodes.
    pub fn closure_nodes(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = seed.clone();
        let mut frontier: VecDeque<usize> = seed.iter().copied().collect();
        while let Some(a) = frontier.pop_front() {
            for &b in &self.adjacency[a] {
                if out.insert(b) {
                    frontier.push_back(b);
                }
            }
        }
        out
    }

    pub fn to_nodes(&self, sys: &FacetClassSystem) -> Option<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for (&f, ls) in sys {
            for l in ls {
                out.insert(self.node(f, l)?);
            }
        }
        Some(out)
    }

    pub fn to_system(&self, nodes: &BTreeSet<usize>) -> FacetClassSystem {
        let mut out = FacetClassSystem::new();
        for &a in nodes {
            let (f, l) = self.pair(a);
            out.entry(f).or_default().insert(l.clone());
        }
        out
    }

    pub fn coherent_closure(&self, seed: &FacetClassSystem) -> Option<FacetClassSystem> {
        Some(self.to_system(&self.closure_nodes(&self.to_nodes(seed)?)))
    }

    pub fn coherence_check(&self, sys: &FacetClassSystem) -> CoherenceReport {
        let mut report = CoherenceReport { coherent: true, violations: vec![] };
        let Some(nodes) = self.to_nodes(sys) else {
            report.coherent = false;
            report.violations.push("system contains labels outside the universe".into());
            return report;
        };
        let mut member = vec![false; self.size()];
        for &a in &nodes {
            member[a] = true;
        }
        let note = |r: &mut CoherenceReport, msg: String| {
            r.coherent = false;
            if r.violations.len() < 20 {
                r.violations.push(msg);
            }
        };
        for (k, m) in self.omega_maps.iter().enumerate() {
            for &a in &nodes {
                if !member[m[a]] {
                    let (f, l) = self.pair(a);
                    note(&mut report, format!("omega {k} moves ({}, {}) out of the system", self.alcove.facets[f].name, l.s));
                }
            }
        }
        for (&(s, x), img) in &self.restrict {
            for (i, &j) in img.iter().enumerate() {
                let a = self.offsets[s] + i;
                let b = self.offsets[x] + j;
                if member[a] != member[b] {
                    let l = &self.labels[s][i];
                    note(
                        &mut report,
                        format!("face condition fails for {} <= {} at s = {}", self.alcove.facets[x].name, self.alcove.facets[s].name, l.s),
                    );
                }
            }
        }
        report
    }

    pub fn omega_count(&self) -> usize {
        self.omega_maps.len()
    }
}

pub fn minimal_systems(alcove: &Alcove, group: &WeylGroup, q: u64, bound: u64) -> Result<Vec<MinimalSystem>> {
    Ok(Universe::new(alcove, group, q, bound)?.minimal_systems())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::QmodZVector;
    use crate::root_datum::{build_classical, Family, GroupSpec};

    fn weyl(f: Family, n: usize) -> WeylGroup {
        WeylGroup::new(&build_classical(&GroupSpec::new(f, n)).unwrap()).unwrap()
    }

    #[test]
    fn facet_counts() {
        let a = Alcove::new(&weyl(Family::SL, 2)).unwrap();
        assert_eq!(a.facets.len(), 3);
        assert_eq!(a.vertices().len(), 2);
        let w = weyl(Family::Sp, 2);
        let a = Alcove::new(&w).unwrap();
        assert_eq!(a.facets.len(), 7);
        assert_eq!(a.vertices().len(), 3);
        assert_eq!(a.hyperspecial_vertices(&w).len(), 2);
        assert_eq!(Alcove::new(&weyl(Family::Sp, 3)).unwrap().vertices().len(), 4);
        let q = weyl(Family::SOevenQuasisplit, 2);
        assert_eq!(Alcove::new(&q).unwrap_err(), Error::TwistedUnsupported);
    }

    #[test]
    fn sp4_geometry() {
        let w = weyl(Family::Sp, 2);
        let a = Alcove::new(&w).unwrap();
        let y = a.facet_by_name("v1").unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(a.facets[y].barycenter, vec![half.clone(), BigRational::zero()]);
        assert_eq!(w.reflection_subgroup(&a.local_roots[y]).order(), 4);
        let x2 = a.facet_by_name("v2").unwrap();
        assert_eq!(a.facets[x2].barycenter, vec![half.clone(), half]);
        assert_eq!(a.faces[a.chamber()].len(), 6);
    }

    #[test]
    fn omega_sizes() {
        let om = |f, n| Alcove::new(&weyl(f, n)).unwrap().omega.len();
        assert_eq!(om(Family::Sp, 2), 1);
        assert_eq!(om(Family::SL, 2), 1);
        assert_eq!(om(Family::PGL, 2), 2);
        assert_eq!(om(Family::SOodd, 2), 2);
        assert_eq!(om(Family::GL, 3), 3);
        assert_eq!(om(Family::PGL, 3), 3);
    }

    #[test]
    fn pgl2_omega_swaps_vertices() {
        let a = Alcove::new(&weyl(Family::PGL, 2)).unwrap();
        let v = a.vertices();
        assert_eq!(a.omega[1].facet_perm[v[0]], v[1]);
    }

    #[test]
    fn not_a_face() {
        let w = weyl(Family::Sp, 2);
        let a = Alcove::new(&w).unwrap();
        let l = ClassLabel { s: QmodZVector::zero(2), w: 0 };
        let ch = a.chamber();
        assert!(matches!(restrict_class(&a, &w, 3, 0, ch, &l), Err(Error::NotAFace { .. })));
        assert_eq!(restrict_class(&a, &w, 3, ch, ch, &l).unwrap(), l);
    }

    #[test]
    fn unipotent_bound_gives_one_system() {
        let w = weyl(Family::Sp, 2);
        let a = Alcove::new(&w).unwrap();
        assert_eq!(minimal_systems(&a, &w, 3, 1).unwrap().len(), 1);
    }
}
