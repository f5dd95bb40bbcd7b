//! Finite-dimensional right modules.
//!
//! A module `M` is stored vertex by vertex: `M e_v` has dimension `dims[v]`
//! and every basis element `g` of the algebra with source `c` and target `a`
//! acts as a `dims[c] × dims[a]` matrix sending `M e_a` to `M e_c`
//! (column vectors, `m ↦ m·g`). Hence `act(g·h) = act(h)·act(g)`.

use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::complex::{PMap, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, find_invertible_combination, Field, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub dims: Vec<usize>,
    pub acts: Vec<Matrix>,
}

/// A homomorphism given by one matrix per vertex (`target dims × source dims`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

/// A subspace at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub spaces: Vec<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoOutcome {
    pub witness: Option<ModuleMap>,
    /// `false` when a negative answer was not certified exhaustively.
    pub exact: bool,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        self.witness.is_some()
    }
}

pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

impl Module {
    pub fn new(alg: &Algebra, dims: Vec<usize>, acts: Vec<Matrix>) -> Result<Module> {
        let m = Module { dims, acts };
        m.validate(alg)?;
        Ok(m)
    }

    fn validate(&self, alg: &Algebra) -> Result<()> {
        let f = &alg.field;
        if self.dims.len() != alg.num_vertices() || self.acts.len() != alg.dim() {
            return Err(Error::InvalidModule("module and algebra do not match".into()));
        }
        for b in 0..alg.dim() {
            let (c, a) = (alg.source[b], alg.target[b]);
            let m = &self.acts[b];
            if m.rows != self.dims[c] || m.cols != self.dims[a] {
                return Err(Error::InvalidModule(format!(
                    "action of '{}' has shape {}x{}, expected {}x{}",
                    alg.basis_labels[b], m.rows, m.cols, self.dims[c], self.dims[a]
                )));
            }
            if alg.is_identity(b) && *m != Matrix::identity(self.dims[c]) {
                return Err(Error::InvalidModule(format!("idempotent '{}' does not act as 1", alg.basis_labels[b])));
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if alg.source[a] != alg.target[b] {
                    continue;
                }
                let lhs = self.act_element(alg, &alg.mul_basis(a, b), alg.source[b], alg.target[a]);
                let rhs = self.acts[b].mul(f, &self.acts[a]);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ('{}', '{}')",
                        alg.basis_labels[a], alg.basis_labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Module over a path algebra from the actions of its arrows; the
    /// relations are checked through the multiplicativity test.
    pub fn from_arrow_actions(alg: &Algebra, dims: Vec<usize>, arrow_acts: Vec<Matrix>) -> Result<Module> {
        let p = alg
            .presentation
            .as_ref()
            .ok_or_else(|| Error::InvalidModule("arrow actions need a path algebra".into()))?;
        if arrow_acts.len() != p.quiver.arrows.len() || dims.len() != alg.num_vertices() {
            return Err(Error::InvalidModule("wrong number of arrow actions or dimensions".into()));
        }
        for (x, m) in arrow_acts.iter().enumerate() {
            let arr = &p.quiver.arrows[x];
            if m.rows != dims[arr.from] || m.cols != dims[arr.to] {
                return Err(Error::InvalidModule(format!(
                    "action of arrow '{}' has shape {}x{}, expected {}x{}",
                    arr.name, m.rows, m.cols, dims[arr.from], dims[arr.to]
                )));
            }
        }
        let f = &alg.field;
        let acts: Vec<Matrix> = (0..alg.dim())
            .map(|b| {
                let w = &p.words[b];
                if w.is_empty() {
                    return Matrix::identity(dims[alg.source[b]]);
                }
                // act(x1 x2 ... xk) = act(xk) ... act(x1)
                let mut m = arrow_acts[w[0]].clone();
                for &x in &w[1..] {
                    m = arrow_acts[x].mul(f, &m);
                }
                m
            })
            .collect();
        Module::new(alg, dims, acts)
    }

    pub fn zero(alg: &Algebra) -> Module {
        Module {
            dims: vec![0; alg.num_vertices()],
            acts: (0..alg.dim()).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// The indecomposable projective `P_i = e_i A`.
    pub fn projective(alg: &Algebra, i: usize) -> Module {
        Module::projective_sum(alg, &[i])
    }

    /// `⊕_s P_{vs[s]}`, with basis at vertex `u` the concatenation of the
    /// block bases of `e_{vs[s]} A e_u`.
    pub fn projective_sum(alg: &Algebra, vs: &[usize]) -> Module {
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|u| vs.iter().map(|&i| alg.block_dim(u, i)).sum()).collect();
        let acts = (0..alg.dim())
            .map(|g| {
                let (c, a) = (alg.source[g], alg.target[g]);
                let x = alg.field.unit_vec(alg.block_dim(c, a), alg.block_position(g));
                let mut m = Matrix::zeros(dims[c], dims[a]);
                let (mut ro, mut co) = (0, 0);
                for &i in vs {
                    let r = alg.right_mul_matrix(c, a, i, &x);
                    for rr in 0..r.rows {
                        for cc in 0..r.cols {
                            m.set(ro + rr, co + cc, r.get(rr, cc).clone());
                        }
                    }
                    ro += r.rows;
                    co += r.cols;
                }
                m
            })
            .collect();
        Module { dims, acts }
    }

    pub fn simple(alg: &Algebra, i: usize) -> Module {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|v| usize::from(v == i)).collect();
        let acts = (0..alg.dim())
            .map(|b| {
                let (c, a) = (alg.source[b], alg.target[b]);
                if b == alg.identity[i] {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[c], dims[a])
                }
            })
            .collect();
        Module { dims, acts }
    }

    pub fn direct_sum(alg: &Algebra, parts: &[&Module]) -> Module {
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let acts = (0..alg.dim())
            .map(|b| {
                let (c, a) = (alg.source[b], alg.target[b]);
                let mut m = Matrix::zeros(dims[c], dims[a]);
                let (mut ro, mut co) = (0, 0);
                for p in parts {
                    let x = &p.acts[b];
                    for r in 0..x.rows {
                        for s in 0..x.cols {
                            m.set(ro + r, co + s, x.get(r, s).clone());
                        }
                    }
                    ro += x.rows;
                    co += x.cols;
                }
                m
            })
            .collect();
        Module { dims, acts }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action of an algebra element supported in the block from `source`
    /// to `target`.
    pub fn act_element(&self, alg: &Algebra, x: &[Scalar], source: usize, target: usize) -> Matrix {
        let f = &alg.field;
        let mut m = Matrix::zeros(self.dims[source], self.dims[target]);
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            debug_assert!(alg.source[b] == source && alg.target[b] == target);
            m.add_scaled(f, c, &self.acts[b]);
        }
        m
    }

    /// Action of a block element of `e_target A e_source` given in block
    /// coordinates.
    pub fn act_block(&self, alg: &Algebra, source: usize, target: usize, x: &[Scalar]) -> Matrix {
        let f = &alg.field;
        let mut m = Matrix::zeros(self.dims[source], self.dims[target]);
        for (s, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(f, c, &self.acts[alg.block(source, target)[s]]);
            }
        }
        m
    }

    /// The module `Y` viewed over `alg` through an algebra map `alg → other`
    /// that sends vertex idempotents to vertex idempotents; `images[b]` is
    /// the image of basis element `b`.
    pub fn restrict(&self, alg: &Algebra, other: &Algebra, images: &[Vector]) -> Module {
        let acts = (0..alg.dim())
            .map(|b| self.act_element(other, &images[b], alg.source[b], alg.target[b]))
            .collect();
        Module { dims: self.dims.clone(), acts }
    }

    /// Right action of an arbitrary element as one matrix on `⊕_v M e_v`.
    pub fn total_action(&self, alg: &Algebra, x: &[Scalar]) -> Matrix {
        let f = &alg.field;
        let offs: Vec<usize> = self.dims.iter().scan(0, |acc, &d| { *acc += d; Some(*acc - d) }).collect();
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (src, tgt) = (alg.source[b], alg.target[b]);
            let a = &self.acts[b];
            for r in 0..a.rows {
                for col in 0..a.cols {
                    let (i, j) = (offs[src] + r, offs[tgt] + col);
                    let v = f.add(m.get(i, j), &f.mul(c, a.get(r, col)));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// The module `Y` viewed over `alg` through an arbitrary unital algebra
    /// map `alg → other` with `images[b]` the image of basis element `b`;
    /// vertex spaces are the images of the idempotents.
    pub fn restrict_along(&self, alg: &Algebra, other: &Algebra, images: &[Vector]) -> Result<Module> {
        let f = &alg.field;
        let n = self.dim();
        let spaces: Vec<Subspace> = (0..alg.num_vertices())
            .map(|v| {
                let e = self.total_action(other, &images[alg.identity[v]]);
                Subspace::new(f, n, &e.col_vecs())
            })
            .collect();
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        if dims.iter().sum::<usize>() != n {
            return Err(Error::InvalidModule("images of the idempotents do not decompose the module".into()));
        }
        let acts = (0..alg.dim())
            .map(|b| {
                let (src, tgt) = (alg.source[b], alg.target[b]);
                let act = self.total_action(other, &images[b]);
                let cols: Vec<Vector> = spaces[tgt]
                    .basis()
                    .iter()
                    .map(|u| {
                        spaces[src]
                            .coords(f, &act.apply(f, u))
                            .ok_or_else(|| Error::InvalidModule("action leaves the vertex space".into()))
                    })
                    .collect::<Result<_>>()?;
                Ok(if cols.is_empty() { Matrix::zeros(dims[src], 0) } else { Matrix::from_columns(dims[src], &cols) })
            })
            .collect::<Result<Vec<Matrix>>>()?;
        Module::new(alg, dims, acts)
    }

    pub fn is_projective(&self, alg: &Algebra) -> bool {
        let (cover, _, _) = projective_cover(alg, self);
        cover.dim() == self.dim()
    }
}

impl ModuleMap {
    pub fn zero(src: &Module, tgt: &Module) -> ModuleMap {
        ModuleMap {
            blocks: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect(),
        }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self ∘ other`
    pub fn compose(&self, f: &Field, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(f, b)).collect() }
    }

    pub fn add(&self, f: &Field, other: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(f, b)).collect() }
    }

    pub fn scale(&self, f: &Field, c: &Scalar) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|a| a.scale(f, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.blocks.iter().all(|b| b.is_invertible(f))
    }

    pub fn inverse(&self, f: &Field) -> Option<ModuleMap> {
        let blocks = self.blocks.iter().map(|b| b.inverse(f)).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { blocks })
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.blocks.iter().map(|b| b.rank(f)).sum()
    }

    pub fn is_homomorphism(&self, alg: &Algebra, src: &Module, tgt: &Module) -> bool {
        let f = &alg.field;
        (0..alg.dim()).all(|g| {
            let (c, a) = (alg.source[g], alg.target[g]);
            self.blocks[c].mul(f, &src.acts[g]) == tgt.acts[g].mul(f, &self.blocks[a])
        })
    }

    pub fn flatten(&self) -> Vector {
        self.blocks.iter().flat_map(|b| b.data.iter().cloned()).collect()
    }
}

/// Basis of `Hom_A(M, N)`: kernel of the intertwining system over the
/// generators of the radical.
pub fn hom(alg: &Algebra, m: &Module, n: &Module) -> Vec<ModuleMap> {
    let f = &alg.field;
    let nv = alg.num_vertices();
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return vec![];
    }
    let var = |v: usize, r: usize, k: usize| off[v] + r * m.dims[v] + k;
    let mut rows: Vec<Vector> = Vec::new();
    for g in alg.generators() {
        let (c, a) = (alg.source[g], alg.target[g]);
        let (am, an) = (&m.acts[g], &n.acts[g]);
        // φ_c · am - an · φ_a = 0, shape n.dims[c] × m.dims[a]
        for r in 0..n.dims[c] {
            for s in 0..m.dims[a] {
                let mut row = f.zero_vec(unknowns);
                for k in 0..m.dims[c] {
                    let x = am.get(k, s);
                    if !x.is_zero() {
                        let i = var(c, r, k);
                        row[i] = f.add(&row[i], x);
                    }
                }
                for k in 0..n.dims[a] {
                    let x = an.get(r, k);
                    if !x.is_zero() {
                        let i = var(a, k, s);
                        row[i] = f.sub(&row[i], x);
                    }
                }
                if !f.vec_is_zero(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(f, &rows, unknowns);
    linalg::kernel(f, &sys)
        .into_iter()
        .map(|v| ModuleMap {
            blocks: (0..nv)
                .map(|u| Matrix { rows: n.dims[u], cols: m.dims[u], data: v[off[u]..off[u + 1]].to_vec() })
                .collect(),
        })
        .collect()
}

pub fn is_isomorphic(alg: &Algebra, m: &Module, n: &Module, seed: u64, budget: usize) -> IsoOutcome {
    if m.dims != n.dims {
        return IsoOutcome { witness: None, exact: true };
    }
    let basis = hom(alg, m, n);
    let support: Vec<usize> = (0..m.dims.len()).filter(|&v| m.dims[v] > 0).collect();
    let shapes: Vec<usize> = support.iter().map(|&v| m.dims[v]).collect();
    let blocks: Vec<Vec<Matrix>> =
        basis.iter().map(|h| support.iter().map(|&v| h.blocks[v].clone()).collect()).collect();
    let out = find_invertible_combination(&alg.field, &shapes, &blocks, seed, budget);
    let witness = out.coeffs.map(|c| combine_maps(&alg.field, m, n, &basis, &c));
    IsoOutcome { witness, exact: out.exact }
}

pub fn combine_maps(f: &Field, m: &Module, n: &Module, basis: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
    let mut out = ModuleMap::zero(m, n);
    for (c, h) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            for (o, b) in out.blocks.iter_mut().zip(&h.blocks) {
                o.add_scaled(f, c, b);
            }
        }
    }
    out
}

impl Submodule {
    pub fn zero(m: &Module) -> Submodule {
        Submodule { spaces: m.dims.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    pub fn full(f: &Field, m: &Module) -> Submodule {
        Submodule { spaces: m.dims.iter().map(|&d| Subspace::full(f, d)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// The smallest submodule containing the given vectors.
    pub fn generated(alg: &Algebra, m: &Module, gens: Vec<Vec<Vector>>) -> Submodule {
        let f = &alg.field;
        let mut spaces: Vec<Subspace> =
            gens.iter().enumerate().map(|(v, g)| Subspace::new(f, m.dims[v], g)).collect();
        loop {
            let mut grew = false;
            for g in alg.generators() {
                let (c, a) = (alg.source[g], alg.target[g]);
                let images: Vec<Vector> =
                    spaces[a].basis().iter().map(|x| m.acts[g].apply(f, x)).collect();
                let new = images.iter().filter(|y| !spaces[c].contains(f, y)).cloned().collect::<Vec<_>>();
                if !new.is_empty() {
                    let mut all = spaces[c].basis().to_vec();
                    all.extend(new);
                    spaces[c] = Subspace::new(f, m.dims[c], &all);
                    grew = true;
                }
            }
            if !grew {
                return Submodule { spaces };
            }
        }
    }

    pub fn sum(&self, f: &Field, other: &Submodule) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(f, b)).collect() }
    }

    pub fn contains(&self, f: &Field, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_subspace(f, b))
    }

    /// First vertex at which the subspace is not stable, if any.
    pub fn unstable_vertex(&self, alg: &Algebra, m: &Module) -> Option<usize> {
        let f = &alg.field;
        for g in 0..alg.dim() {
            let (c, a) = (alg.source[g], alg.target[g]);
            for x in self.spaces[a].basis() {
                if !self.spaces[c].contains(f, &m.acts[g].apply(f, x)) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// The submodule as a module in its echelon basis, with its inclusion.
pub fn submodule_module(alg: &Algebra, m: &Module, sub: &Submodule) -> Result<(Module, ModuleMap)> {
    if let Some(v) = sub.unstable_vertex(alg, m) {
        return Err(Error::NotSubmodule(v));
    }
    let f = &alg.field;
    let dims = sub.dims();
    let acts = (0..alg.dim())
        .map(|g| {
            let (c, a) = (alg.source[g], alg.target[g]);
            let cols: Vec<Vector> = sub.spaces[a]
                .basis()
                .iter()
                .map(|x| sub.spaces[c].coords(f, &m.acts[g].apply(f, x)).expect("stable subspace"))
                .collect();
            Matrix::from_columns(dims[c], &cols)
        })
        .collect();
    let incl = ModuleMap {
        blocks: sub
            .spaces
            .iter()
            .enumerate()
            .map(|(v, s)| Matrix::from_columns(m.dims[v], s.basis()))
            .collect(),
    };
    Ok((Module { dims, acts }, incl))
}

/// `M / sub` with basis the non-pivot coordinates of `sub`, together with
/// the projection.
pub fn quotient(alg: &Algebra, m: &Module, sub: &Submodule) -> Result<(Module, ModuleMap)> {
    if let Some(v) = sub.unstable_vertex(alg, m) {
        return Err(Error::NotSubmodule(v));
    }
    let f = &alg.field;
    let keep: Vec<Vec<usize>> = sub.spaces.iter().map(|s| s.non_pivots()).collect();
    let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
    let project = |v: usize, x: &[Scalar]| -> Vector {
        let r = sub.spaces[v].reduce(f, x);
        keep[v].iter().map(|&i| r[i].clone()).collect()
    };
    let acts = (0..alg.dim())
        .map(|g| {
            let (c, a) = (alg.source[g], alg.target[g]);
            let cols: Vec<Vector> = keep[a]
                .iter()
                .map(|&i| project(c, &m.acts[g].apply(f, &f.unit_vec(m.dims[a], i))))
                .collect();
            Matrix::from_columns(dims[c], &cols)
        })
        .collect();
    let proj = ModuleMap {
        blocks: (0..m.dims.len())
            .map(|v| {
                let cols: Vec<Vector> = (0..m.dims[v]).map(|i| project(v, &f.unit_vec(m.dims[v], i))).collect();
                Matrix::from_columns(dims[v], &cols)
            })
            .collect(),
    };
    Ok((Module { dims, acts }, proj))
}

pub fn kernel(f: &Field, phi: &ModuleMap) -> Submodule {
    Submodule {
        spaces: phi
            .blocks
            .iter()
            .map(|b| Subspace::new(f, b.cols, &linalg::kernel(f, b)))
            .collect(),
    }
}

pub fn image(f: &Field, phi: &ModuleMap) -> Submodule {
    Submodule { spaces: phi.blocks.iter().map(|b| Subspace::new(f, b.rows, &b.col_vecs())).collect() }
}

/// `M·rad(A)`, spanned by the images of the radical generators.
pub fn radical(alg: &Algebra, m: &Module) -> Submodule {
    let f = &alg.field;
    let nv = alg.num_vertices();
    let mut gens: Vec<Vec<Vector>> = vec![Vec::new(); nv];
    for g in alg.generators() {
        gens[alg.source[g]].extend(m.acts[g].col_vecs());
    }
    Submodule { spaces: (0..nv).map(|v| Subspace::new(f, m.dims[v], &gens[v])).collect() }
}

/// Elements annihilated by the radical.
pub fn socle(alg: &Algebra, m: &Module) -> Submodule {
    let f = &alg.field;
    let nv = alg.num_vertices();
    let spaces = (0..nv)
        .map(|a| {
            let mut stacked = Matrix::zeros(0, m.dims[a]);
            for g in alg.generators().into_iter().filter(|&g| alg.target[g] == a) {
                stacked = stacked.vstack(&m.acts[g]);
            }
            Subspace::new(f, m.dims[a], &linalg::kernel(f, &stacked))
        })
        .collect();
    Submodule { spaces }
}

pub fn top(alg: &Algebra, m: &Module) -> Module {
    quotient(alg, m, &radical(alg, m)).expect("radical is a submodule").0
}

/// Projective cover `P → M`: one summand `P_v` per top basis vector at `v`,
/// sent to the lift of that vector.
pub fn projective_cover(alg: &Algebra, m: &Module) -> (Module, ModuleMap, Vec<usize>) {
    let f = &alg.field;
    let rad = radical(alg, m);
    let mut vertices = Vec::new();
    let mut images: Vec<(usize, Vector)> = Vec::new();
    for v in 0..alg.num_vertices() {
        for i in rad.spaces[v].non_pivots() {
            vertices.push(v);
            images.push((v, f.unit_vec(m.dims[v], i)));
        }
    }
    let p = Module::projective_sum(alg, &vertices);
    let map = map_from_projectives(alg, &vertices, m, &images);
    (p, map, vertices)
}

/// The map `⊕ P_{vertices[s]} → M` sending the identity of the `s`-th
/// summand to `images[s]` (an element of `M e_{vertices[s]}`).
pub fn map_from_projectives(alg: &Algebra, vertices: &[usize], m: &Module, images: &[(usize, Vector)]) -> ModuleMap {
    let f = &alg.field;
    let nv = alg.num_vertices();
    let blocks = (0..nv)
        .map(|u| {
            let mut cols: Vec<Vector> = Vec::new();
            for (&i, (_, x)) in vertices.iter().zip(images) {
                // basis of e_i A e_u: element p sends e_i to x·p
                for &p in alg.block(u, i) {
                    cols.push(m.acts[p].apply(f, x));
                }
            }
            Matrix::from_columns(m.dims[u], &cols)
        })
        .collect();
    ModuleMap { blocks }
}

/// The module map between sums of projectives induced by a matrix of
/// algebra elements.
pub fn pmap_module_map(alg: &Algebra, pm: &PMap) -> ModuleMap {
    let f = &alg.field;
    let blocks = (0..alg.num_vertices())
        .map(|u| {
            let rows: usize = pm.tgt.iter().map(|&w| alg.block_dim(u, w)).sum();
            let cols: usize = pm.src.iter().map(|&v| alg.block_dim(u, v)).sum();
            let mut m = Matrix::zeros(rows, cols);
            let mut ro = 0;
            for (t, &w) in pm.tgt.iter().enumerate() {
                let mut co = 0;
                for (s, &v) in pm.src.iter().enumerate() {
                    let x = &pm.entries[t][s];
                    if !f.vec_is_zero(x) {
                        let b = alg.left_mul_matrix(u, v, w, x);
                        for r in 0..b.rows {
                            for c in 0..b.cols {
                                m.set(ro + r, co + c, b.get(r, c).clone());
                            }
                        }
                    }
                    co += alg.block_dim(u, v);
                }
                ro += alg.block_dim(u, w);
            }
            m
        })
        .collect();
    ModuleMap { blocks }
}

/// Reads a module map between sums of projectives back as a matrix of
/// algebra elements (the image of each summand identity).
pub fn module_map_pmap(alg: &Algebra, src: &[usize], tgt: &[usize], phi: &ModuleMap) -> PMap {
    let mut entries = vec![vec![Vec::new(); src.len()]; tgt.len()];
    for (s, &v) in src.iter().enumerate() {
        // column of the identity of summand s at vertex v
        let col_off: usize = src[..s].iter().map(|&x| alg.block_dim(v, x)).sum::<usize>()
            + alg.block_position(alg.identity[v]);
        let image = phi.blocks[v].col(col_off);
        let mut ro = 0;
        for (t, &w) in tgt.iter().enumerate() {
            let d = alg.block_dim(v, w);
            entries[t][s] = image[ro..ro + d].to_vec();
            ro += d;
        }
    }
    PMap { src: src.to_vec(), tgt: tgt.to_vec(), entries }
}

/// A minimal projective presentation `P1 → P0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub d: PMap,
    pub cover: ModuleMap,
}

impl Presentation {
    pub fn complex(&self) -> ProjComplex {
        ProjComplex::two_term(self.p1.clone(), self.p0.clone(), self.d.clone())
    }
}

pub fn projective_presentation(alg: &Algebra, m: &Module) -> Presentation {
    let f = &alg.field;
    let (p0m, cover, p0) = projective_cover(alg, m);
    let (k, incl) = submodule_module(alg, &p0m, &kernel(f, &cover)).expect("kernel is a submodule");
    let (_, cover1, p1) = projective_cover(alg, &k);
    let d = module_map_pmap(alg, &p1, &p0, &incl.compose(f, &cover1));
    Presentation { p1, p0, d, cover }
}

/// Terms `Q_0, …, Q_len` and differentials `Q_k → Q_{k-1}` of the start of
/// a minimal projective resolution.
pub fn projective_resolution(alg: &Algebra, m: &Module, len: usize) -> (Vec<Vec<usize>>, Vec<PMap>) {
    let f = &alg.field;
    let (mut cur, mut map, q0) = projective_cover(alg, m);
    let mut terms = vec![q0];
    let mut diffs = Vec::new();
    for _ in 0..len {
        let (k, incl) = submodule_module(alg, &cur, &kernel(f, &map)).expect("kernel is a submodule");
        let (qm, cov, q) = projective_cover(alg, &k);
        diffs.push(module_map_pmap(alg, &q, terms.last().unwrap(), &incl.compose(f, &cov)));
        terms.push(q);
        cur = qm;
        map = cov;
    }
    (terms, diffs)
}

pub fn syzygy(alg: &Algebra, m: &Module) -> Module {
    let (p, cover, _) = projective_cover(alg, m);
    submodule_module(alg, &p, &kernel(&alg.field, &cover)).expect("kernel is a submodule").0
}

/// Whether `Ω^n M` is projective.
pub fn pd_at_most(alg: &Algebra, m: &Module, n: usize) -> bool {
    let mut x = m.clone();
    for _ in 0..n {
        if x.is_projective(alg) {
            return true;
        }
        x = syzygy(alg, &x);
    }
    x.is_projective(alg)
}

/// Sum of the images of all homomorphisms from the generators into `M`.
pub fn trace(alg: &Algebra, gens: &[Module], m: &Module) -> Submodule {
    let f = &alg.field;
    let mut acc = Submodule::zero(m);
    for g in gens {
        for h in hom(alg, g, m) {
            acc = acc.sum(f, &image(f, &h));
        }
    }
    acc
}

/// `ker(d_out) / im(d_in)` for `M_prev → M → M_next`.
pub fn homology(alg: &Algebra, m: &Module, d_in: &ModuleMap, d_out: &ModuleMap) -> Module {
    let f = &alg.field;
    let z = kernel(f, d_out);
    let (zm, _) = submodule_module(alg, m, &z).expect("kernel is a submodule");
    let b = image(f, d_in);
    let inside: Vec<Vec<Vector>> = b
        .spaces
        .iter()
        .enumerate()
        .map(|(v, s)| {
            s.basis()
                .iter()
                .map(|x| z.spaces[v].coords(f, x).expect("d^2 = 0"))
                .collect()
        })
        .collect();
    let bsub = Submodule {
        spaces: inside.iter().enumerate().map(|(v, g)| Subspace::new(f, zm.dims[v], g)).collect(),
    };
    quotient(alg, &zm, &bsub).expect("image is a submodule").0
}

/// `H^k` of a complex of projectives evaluated as a complex of modules.
pub fn homology_of_complex(alg: &Algebra, x: &ProjComplex, k: i32) -> Module {
    let term = x.term(k);
    let m = Module::projective_sum(alg, term);
    let d_in = pmap_module_map(alg, &x.diff(alg, k - 1));
    let d_out = pmap_module_map(alg, &x.diff(alg, k));
    homology(alg, &m, &d_in, &d_out)
}

/// Certifies that the unital matrix algebra spanned by `basis` (whose span
/// must contain the identity) is local: every basis element is a scalar plus a
/// nilpotent, and those nilpotent parts span a nilpotent subalgebra.
pub fn matrix_algebra_is_local(f: &Field, basis: &[Matrix]) -> bool {
    let Some(first) = basis.first() else { return false };
    let n = first.rows;
    if n == 0 {
        return false;
    }
    let nilpotent = |m: &Matrix| -> bool {
        let mut pw = m.clone();
        for _ in 1..n {
            pw = pw.mul(f, m);
            if pw.is_zero() {
                return true;
            }
        }
        pw.is_zero()
    };
    let mut parts: Vec<Vector> = Vec::new();
    for b in basis {
        let p = f.characteristic();
        let shifted = |lam: &Scalar| b.sub(f, &Matrix::identity(n).scale(f, lam));
        let lam = if p == 0 || (n as u64) % p != 0 {
            let mut tr = Scalar::zero();
            for i in 0..n {
                tr = f.add(&tr, b.get(i, i));
            }
            Some(f.div(&tr, &f.from_i64(n as i64))).filter(|l| nilpotent(&shifted(l)))
        } else {
            (0..p).map(|x| f.from_i64(x as i64)).find(|l| nilpotent(&shifted(l)))
        };
        match lam {
            Some(l) => parts.push(shifted(&l).data),
            None => return false,
        }
    }
    let rad = Subspace::new(f, n * n, &parts);
    if rad.dim() + 1 != basis.len() {
        return false;
    }
    let as_mat = |v: &Vector| Matrix { rows: n, cols: n, data: v.clone() };
    let mut power = rad.clone();
    for _ in 0..=n {
        if power.dim() == 0 {
            return true;
        }
        let prods: Vec<Vector> = power
            .basis()
            .iter()
            .flat_map(|x| rad.basis().iter().map(move |r| (x, r)))
            .map(|(x, r)| as_mat(x).mul(f, &as_mat(r)).data)
            .collect();
        let next = Subspace::new(f, n * n, &prods);
        if !rad.contains_subspace(f, &next) || next.dim() == power.dim() {
            return false;
        }
        power = next;
    }
    false
}

/// The endomorphism ring of `M` as flattened block-diagonal matrices.
fn endomorphism_matrices(alg: &Algebra, m: &Module) -> Vec<Matrix> {
    let mut basis = hom(alg, m, m);
    // put the identity first so the span is visibly unital
    let id = ModuleMap::identity(m);
    basis.insert(0, id);
    let flat: Vec<Vector> = basis.iter().map(|h| h.flatten()).collect();
    let mut keep = vec![basis[0].clone()];
    let mut acc = Subspace::new(&alg.field, flat[0].len(), &[flat[0].clone()]);
    for (h, v) in basis.iter().zip(&flat).skip(1) {
        if !acc.contains(&alg.field, v) {
            acc = acc.sum(&alg.field, &Subspace::new(&alg.field, v.len(), &[v.clone()]));
            keep.push(h.clone());
        }
    }
    keep.iter().map(|h| block_diagonal(m, h)).collect()
}

fn block_diagonal(m: &Module, h: &ModuleMap) -> Matrix {
    let n = m.dim();
    let mut out = Matrix::zeros(n, n);
    let mut o = 0;
    for (v, b) in h.blocks.iter().enumerate() {
        for r in 0..b.rows {
            for c in 0..b.cols {
                out.set(o + r, o + c, b.get(r, c).clone());
            }
        }
        o += m.dims[v];
    }
    out
}

pub fn is_indecomposable(alg: &Algebra, m: &Module) -> bool {
    !m.is_zero() && matrix_algebra_is_local(&alg.field, &endomorphism_matrices(alg, m))
}

/// Rational roots of a monic polynomial given by coefficients `c[0] + c[1] x + ...`.
fn rational_roots(c: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Signed;
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().unwrap().abs();
    let limit = BigInt::from(1_000_000u64);
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        if x > &(&limit * &limit) {
            return vec![BigInt::one()];
        }
        let mut ds = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *x {
            if (x % &d).is_zero() {
                ds.push(d.clone());
                ds.push(x / &d);
            }
            d += 1;
        }
        ds
    };
    let eval = |r: &Scalar| -> bool {
        let mut acc = Scalar::zero();
        for x in c.iter().rev() {
            acc = acc * r + x;
        }
        acc.is_zero()
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for s in [1i64, -1] {
                let r = Scalar::new(p.clone() * BigInt::from(s), q.clone());
                if !roots.contains(&r) && eval(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Eigenvalues of `m` lying in the base field (all of them over a small
/// prime field; rational roots of the minimal polynomial over ℚ).
fn eigenvalue_candidates(f: &Field, m: &Matrix) -> Vec<Scalar> {
    let n = m.rows;
    match f {
        Field::Prime(p) if *p <= 1000 => (0..*p)
            .map(|x| f.from_i64(x as i64))
            .filter(|l| m.sub(f, &Matrix::identity(n).scale(f, l)).rank(f) < n)
            .collect(),
        Field::Prime(_) => (-10..=10)
            .map(|x| f.from_i64(x))
            .filter(|l| m.sub(f, &Matrix::identity(n).scale(f, l)).rank(f) < n)
            .collect(),
        Field::Rationals => {
            // minimal polynomial from the first dependency among powers
            let mut powers: Vec<Vector> = vec![Matrix::identity(n).data];
            let mut cur = Matrix::identity(n);
            loop {
                cur = cur.mul(f, m);
                let cols: Vec<Vector> = powers.clone();
                let a = Matrix::from_columns(n * n, &cols);
                if let Some(x) = linalg::solve(f, &a, &cur.data) {
                    let mut c: Vec<Scalar> = x.iter().map(|v| -v).collect();
                    c.push(Scalar::one());
                    return rational_roots(&c);
                }
                powers.push(cur.data.clone());
            }
        }
    }
}

/// Splits `M` into indecomposable summands via Fitting decompositions of
/// endomorphisms; every summand is certified to have a local endomorphism
/// ring.
pub fn decompose(alg: &Algebra, m: &Module) -> Result<Vec<Module>> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let f = &alg.field;
    let ends = endomorphism_matrices(alg, m);
    if matrix_algebra_is_local(f, &ends) {
        return Ok(vec![m.clone()]);
    }
    let basis = hom(alg, m, m);
    let mut candidates: Vec<ModuleMap> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].add(f, &basis[j]));
            candidates.push(basis[i].add(f, &basis[j].scale(f, &f.from_i64(-1))));
        }
    }
    let n = m.dim();
    for phi in candidates {
        let flat = block_diagonal(m, &phi);
        for lam in eigenvalue_candidates(f, &flat) {
            let shifted = phi.add(f, &ModuleMap::identity(m).scale(f, &f.neg(&lam)));
            let mut pw = shifted.clone();
            for _ in 1..n {
                pw = pw.compose(f, &shifted);
            }
            let k = kernel(f, &pw);
            if k.dim() == 0 || k.dim() == n {
                continue;
            }
            let i = image(f, &pw);
            let (km, _) = submodule_module(alg, m, &k)?;
            let (im, _) = submodule_module(alg, m, &i)?;
            let mut out = decompose(alg, &km)?;
            out.extend(decompose(alg, &im)?);
            return Ok(out);
        }
    }
    Err(Error::InvalidModule("no splitting endomorphism with an eigenvalue in the base field".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::{a2, a3_zero_rel};

    #[test]
    fn projective_dimensions() {
        let a = a3_zero_rel();
        let p1 = Module::projective(&a, 0);
        assert_eq!(p1.dims, vec![1, 1, 0]);
        let p3 = Module::projective(&a, 2);
        assert_eq!(p3.dim(), 1);
        assert!(is_isomorphic(&a, &p3, &Module::simple(&a, 2), 0, DEFAULT_SEARCH_BUDGET).is_iso());
        assert_eq!(Module::projective(&a2(), 1).dim(), 1);
        p1.validate(&a).unwrap();
    }

    #[test]
    fn hom_dimensions() {
        let a = a3_zero_rel();
        let p1 = Module::projective(&a, 0);
        let s1 = Module::simple(&a, 0);
        assert_eq!(hom(&a, &p1, &s1).len(), 1);
        assert_eq!(hom(&a, &s1, &Module::projective(&a, 1)).len(), 0);
        assert_eq!(hom(&a, &p1, &Module::zero(&a)).len(), 0);
    }

    #[test]
    fn projective_not_semisimple() {
        let a = a3_zero_rel();
        let p1 = Module::projective(&a, 0);
        let ss = Module::direct_sum(&a, &[&Module::simple(&a, 0), &Module::simple(&a, 1)]);
        let out = is_isomorphic(&a, &p1, &ss, 3, DEFAULT_SEARCH_BUDGET);
        assert!(!out.is_iso() && out.exact);
        assert!(!is_isomorphic(&a, &Module::simple(&a, 0), &Module::simple(&a, 1), 0, 10).is_iso());
    }

    #[test]
    fn traces() {
        let a = a3_zero_rel();
        let p1 = Module::projective(&a, 0);
        let s1 = Module::simple(&a, 0);
        let p2 = Module::projective(&a, 1);
        let h0 = Module::direct_sum(&a, &[&p1, &s1]);
        assert_eq!(trace(&a, &[h0], &p2).dim(), 0);
        assert_eq!(trace(&a, &[p2.clone()], &p2).dim(), p2.dim());
        assert_eq!(trace(&a, &[s1], &p1).dim(), 0);
    }

    #[test]
    fn top_of_projective_is_simple() {
        let a = a3_zero_rel();
        let p1 = Module::projective(&a, 0);
        let t = top(&a, &p1);
        assert!(is_isomorphic(&a, &t, &Module::simple(&a, 0), 0, 100).is_iso());
        let (q, _) = quotient(&a, &p1, &Submodule::zero(&p1)).unwrap();
        assert_eq!(q, p1);
        let (z, _) = quotient(&a, &p1, &Submodule::full(&a.field, &p1)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn presentations_and_pd() {
        let a = a3_zero_rel();
        let s1 = Module::simple(&a, 0);
        let pres = projective_presentation(&a, &s1);
        assert_eq!(pres.p0, vec![0]);
        assert_eq!(pres.p1, vec![1]);
        let s3 = Module::simple(&a, 2);
        let pres3 = projective_presentation(&a, &s3);
        assert!(pres3.p1.is_empty());
        assert_eq!(pres3.p0, vec![2]);
        assert!(pd_at_most(&a, &Module::projective(&a, 0), 0));
        assert!(!pd_at_most(&a, &s1, 1));
        assert!(pd_at_most(&a, &s1, 2));
        assert!(pd_at_most(&a, &Module::simple(&a, 1), 1));
    }

    #[test]
    fn presentation_recovers_module() {
        let a = a3_zero_rel();
        for i in 0..3 {
            for m in [Module::simple(&a, i), Module::projective(&a, i)] {
                let h = homology_of_complex(&a, &projective_presentation(&a, &m).complex(), 0);
                assert!(is_isomorphic(&a, &h, &m, 1, 1000).is_iso());
            }
        }
    }

    #[test]
    fn decompose_sum() {
        let a = a3_zero_rel();
        let m = Module::direct_sum(
            &a,
            &[&Module::projective(&a, 0), &Module::simple(&a, 0), &Module::simple(&a, 0)],
        );
        let parts = decompose(&a, &m).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| is_indecomposable(&a, p)));
        assert!(!is_indecomposable(&a, &m));
    }
}
