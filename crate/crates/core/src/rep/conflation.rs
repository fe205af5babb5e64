use super::ext::{ext1, ExtSpace};
use super::hom::{eval_pathlin, hom_direct};
use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};
use crate::pathcat::proj_arrow_matrix;

/// A short exact sequence `0 -> X -i-> E -d-> Y -> 0`.
#[derive(Clone, Debug)]
pub struct Conflation {
    pub x: Representation,
    pub e: Representation,
    pub y: Representation,
    pub i: RepMorphism,
    pub d: RepMorphism,
}

impl Conflation {
    /// Checks exactness at every window vertex.
    pub fn new(i: RepMorphism, d: RepMorphism) -> Result<Self> {
        let c = Conflation {
            x: i.source.clone(),
            e: i.target.clone(),
            y: d.target.clone(),
            i,
            d,
        };
        c.check_exact()?;
        Ok(c)
    }

    pub fn depth(&self) -> u32 {
        self.i.depth().max(self.d.depth())
    }

    /// `i` injective, `d` surjective and `im i = ker d` at every vertex of
    /// the window (the tail repeats the boundary).
    pub fn check_exact(&self) -> Result<()> {
        let q = self.x.quiver().clone();
        if self.i.target.signature(self.depth()) != self.d.source.signature(self.depth()) {
            return Err(Error::NonExact("middle terms of i and d differ".into()));
        }
        for v in q.window_vertices(self.depth()) {
            let (iv, dv) = (self.i.map_at(v), self.d.map_at(v));
            let name = q.vertex_name(v);
            if iv.rank() != self.x.dim_at(v) {
                return Err(Error::NonExact(format!("inflation not injective at `{name}`")));
            }
            if dv.rank() != self.y.dim_at(v) {
                return Err(Error::NonExact(format!("deflation not surjective at `{name}`")));
            }
            if !dv.mul(&iv).is_zero() || self.x.dim_at(v) + self.y.dim_at(v) != self.e.dim_at(v) {
                return Err(Error::NonExact(format!("image differs from kernel at `{name}`")));
            }
        }
        Ok(())
    }

    /// `0 -> X -> X ⊕ Y -> Y -> 0`.
    pub fn split(x: &Representation, y: &Representation) -> Result<Self> {
        let e = Representation::direct_sum(&[x.clone(), y.clone()])?;
        let q = x.quiver().clone();
        let f = q.field();
        let d = e.depth();
        let mut im = Vec::new();
        let mut dm = Vec::new();
        for v in q.window_vertices(d) {
            let (a, b) = (x.dim_at(v), y.dim_at(v));
            im.push(ExactMatrix::identity(f, a).vstack(&ExactMatrix::zeros(f, b, a)));
            dm.push(ExactMatrix::zeros(f, b, a).hstack(&ExactMatrix::identity(f, b)));
        }
        Conflation::new(
            RepMorphism::new_unchecked(x.clone(), e.clone(), d, im)?,
            RepMorphism::new_unchecked(e, y.clone(), d, dm)?,
        )
    }
}

/// The conflation of an extension class: the pushout of
/// `0 -> P1 -> P0 -> Y -> 0` along the cocycle `P1 -> X`.
pub fn conflation_of_class(ext: &ExtSpace, coords: &[Scalar]) -> Result<Conflation> {
    let cocycle = ext.cocycle(coords)?;
    conflation_of_cocycle(ext, &cocycle)
}

pub(crate) fn conflation_of_cocycle(ext: &ExtSpace, cocycle: &[Scalar]) -> Result<Conflation> {
    let pres = &ext.presentation;
    let (y, x) = (&ext.m, &ext.n);
    let q = y.quiver().clone();
    let f = q.field();
    let d = pres.depth().max(x.depth());
    let window = q.window_vertices(d);
    // cocycle blocks c_k ∈ X(w_k)
    let mut cs = Vec::new();
    let mut pos = 0;
    for w in &pres.p1 {
        let n = x.dim_at(*w);
        cs.push(ExactMatrix::column_vector(f, cocycle[pos..pos + n].to_vec()));
        pos += n;
    }
    let mut quots = Vec::with_capacity(window.len());
    for &v in &window {
        let mut cblocks = Vec::new();
        for (k, w) in pres.p1.iter().enumerate() {
            for p in q.paths_between(*w, v)? {
                cblocks.push(x.eval_path(&p).mul(&cs[k]));
            }
        }
        let c = ExactMatrix::hstack_all(f, x.dim_at(v), &cblocks);
        let g = pres.relation.evaluate(&q, v)?;
        quots.push(c.neg().vstack(&g).cokernel().0);
    }
    let dims: Vec<usize> = quots.iter().map(|m| m.rows()).collect();
    let mut maps = Vec::new();
    for a in q.window_arrows(d) {
        let ui = q.vertex_index(q.source(a), d).unwrap();
        let wi = q.vertex_index(q.target(a), d).unwrap();
        let block = ExactMatrix::block_diag(f, &[x.map_at(a), proj_arrow_matrix(&q, &pres.p0, a)?]);
        maps.push(quots[wi].mul(&block).mul(&quots[ui].right_inverse()?));
    }
    let e = Representation::new(q.clone(), d, dims, maps)?;
    let mut im = Vec::new();
    let mut dm = Vec::new();
    for (vi, &v) in window.iter().enumerate() {
        let (nx, np) = (x.dim_at(v), quots[vi].cols() - x.dim_at(v));
        im.push(quots[vi].mul(&ExactMatrix::identity(f, nx).vstack(&ExactMatrix::zeros(f, np, nx))));
        let pi = pres.deflation_at(v)?;
        dm.push(ExactMatrix::zeros(f, y.dim_at(v), nx).hstack(&pi).mul(&quots[vi].right_inverse()?));
    }
    Conflation::new(
        RepMorphism::new_unchecked(x.clone(), e.clone(), d, im)?,
        RepMorphism::new_unchecked(e, y.clone(), d, dm)?,
    )
}

/// Cocycle of a conflation `0 -> X -> E -> Y -> 0` relative to the
/// presentation used by `ext` (which must be `Ext¹(Y, X)`).
pub(crate) fn cocycle_of(delta: &Conflation, ext: &ExtSpace) -> Result<Vec<Scalar>> {
    let pres = &ext.presentation;
    let q = delta.x.quiver().clone();
    let d_depth = delta.depth().max(pres.depth());
    if delta.y.signature(d_depth) != ext.m.signature(d_depth) || delta.x.signature(d_depth) != ext.n.signature(d_depth) {
        return Err(Error::EndpointMismatch("conflation ends differ from the Ext space".into()));
    }
    let lifts = pres
        .p0
        .iter()
        .zip(&pres.generators)
        .map(|(v, m)| {
            delta
                .d
                .map_at(*v)
                .solve(m)
                .map_err(|_| Error::NonExact("deflation is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (k, w) in pres.p1.iter().enumerate() {
        let f = q.field();
        let mut acc = ExactMatrix::zeros(f, delta.e.dim_at(*w), 1);
        for (j, e) in lifts.iter().enumerate() {
            acc = acc.add(&eval_pathlin(&delta.e, pres.relation.get(j, k)).mul(e));
        }
        let x = delta
            .i
            .map_at(*w)
            .solve(&acc)
            .map_err(|_| Error::NonExact("relation does not land in the image of i".into()))?;
        out.extend(x.column(0));
    }
    Ok(out)
}

/// Coordinates of the class of `delta` in `Ext¹(Y, X)`, with the space used.
pub fn ext_class_of(delta: &Conflation) -> Result<(ExtSpace, Vec<Scalar>)> {
    delta.check_exact()?;
    let ext = ext1(&delta.y, &delta.x)?;
    let c = cocycle_of(delta, &ext)?;
    let coords = ext.coordinates(&c)?;
    Ok((ext, coords))
}

/// Coordinates of the class of `delta` in a given `Ext¹(Y, X)`.
pub fn ext_class_in(delta: &Conflation, ext: &ExtSpace) -> Result<Vec<Scalar>> {
    let c = cocycle_of(delta, ext)?;
    ext.coordinates(&c)
}

/// `δ.h`: the pullback of `0 -> X -> E -> Y -> 0` along `h: Z -> Y`, with
/// middle term `ker [d, -h] ⊆ E ⊕ Z`.
pub fn pullback(delta: &Conflation, h: &RepMorphism) -> Result<Conflation> {
    let dd = delta.depth().max(h.depth());
    if h.target.signature(dd) != delta.y.signature(dd) {
        return Err(Error::EndpointMismatch("pullback morphism must end at Y".into()));
    }
    let z = &h.source;
    let q = z.quiver().clone();
    let f = q.field();
    let window = q.window_vertices(dd);
    let kers: Vec<ExactMatrix> = window
        .iter()
        .map(|v| delta.d.map_at(*v).hstack(&h.map_at(*v).neg()).kernel())
        .collect();
    let mut maps = Vec::new();
    for a in q.window_arrows(dd) {
        let ui = q.vertex_index(q.source(a), dd).unwrap();
        let wi = q.vertex_index(q.target(a), dd).unwrap();
        let block = ExactMatrix::block_diag(f, &[delta.e.map_at(a), z.map_at(a)]);
        maps.push(kers[wi].solve(&block.mul(&kers[ui]))?);
    }
    let e = Representation::new(q.clone(), dd, kers.iter().map(|k| k.cols()).collect(), maps)?;
    let mut im = Vec::new();
    let mut dm = Vec::new();
    for (vi, &v) in window.iter().enumerate() {
        let nz = z.dim_at(v);
        let iv = delta.i.map_at(v);
        let target = iv.vstack(&ExactMatrix::zeros(f, nz, iv.cols()));
        im.push(kers[vi].solve(&target)?);
        let ne = delta.e.dim_at(v);
        dm.push(ExactMatrix::zeros(f, nz, ne).hstack(&ExactMatrix::identity(f, nz)).mul(&kers[vi]));
    }
    Conflation::new(
        RepMorphism::new_unchecked(delta.x.clone(), e.clone(), dd, im)?,
        RepMorphism::new_unchecked(e, z.clone(), dd, dm)?,
    )
}

/// `g.δ`: the pushout of `0 -> X -> E -> Y -> 0` along `g: X -> Z`, with
/// middle term `(Z ⊕ E) / {(g x, -i x)}`.
pub fn pushout(delta: &Conflation, g: &RepMorphism) -> Result<Conflation> {
    let dd = delta.depth().max(g.depth());
    if g.source.signature(dd) != delta.x.signature(dd) {
        return Err(Error::EndpointMismatch("pushout morphism must start at X".into()));
    }
    let z = &g.target;
    let q = z.quiver().clone();
    let f = q.field();
    let window = q.window_vertices(dd);
    let quots: Vec<ExactMatrix> = window
        .iter()
        .map(|v| g.map_at(*v).vstack(&delta.i.map_at(*v).neg()).cokernel().0)
        .collect();
    let mut maps = Vec::new();
    for a in q.window_arrows(dd) {
        let ui = q.vertex_index(q.source(a), dd).unwrap();
        let wi = q.vertex_index(q.target(a), dd).unwrap();
        let block = ExactMatrix::block_diag(f, &[z.map_at(a), delta.e.map_at(a)]);
        maps.push(quots[wi].mul(&block).mul(&quots[ui].right_inverse()?));
    }
    let e = Representation::new(q.clone(), dd, quots.iter().map(|m| m.rows()).collect(), maps)?;
    let mut im = Vec::new();
    let mut dm = Vec::new();
    for (vi, &v) in window.iter().enumerate() {
        let (nz, ne) = (z.dim_at(v), delta.e.dim_at(v));
        im.push(quots[vi].mul(&ExactMatrix::identity(f, nz).vstack(&ExactMatrix::zeros(f, ne, nz))));
        let dv = delta.d.map_at(v);
        dm.push(
            ExactMatrix::zeros(f, dv.rows(), nz)
                .hstack(&dv)
                .mul(&quots[vi].right_inverse()?),
        );
    }
    Conflation::new(
        RepMorphism::new_unchecked(z.clone(), e.clone(), dd, im)?,
        RepMorphism::new_unchecked(e, delta.y.clone(), dd, dm)?,
    )
}

/// A section of the deflation, if one exists.
pub fn section(delta: &Conflation) -> Result<Option<RepMorphism>> {
    let f = delta.x.field();
    let homs = hom_direct(&delta.y, &delta.e)?;
    let dd = delta.depth().max(delta.y.depth());
    let id = RepMorphism::identity(&delta.y);
    let target = ExactMatrix::column_vector(f, id.flatten(dd));
    let cols = homs
        .basis
        .iter()
        .map(|b| Ok(ExactMatrix::column_vector(f, delta.d.compose(b)?.flatten(dd))))
        .collect::<Result<Vec<_>>>()?;
    let sys = ExactMatrix::hstack_all(f, target.rows(), &cols);
    match sys.solve(&target) {
        Ok(t) => Ok(Some(homs.element(&t.column(0))?)),
        Err(_) => Ok(None),
    }
}

/// True iff the deflation has a section. Also checks that this agrees with
/// the extension class being zero.
pub fn splits(delta: &Conflation) -> Result<bool> {
    let by_section = section(delta)?.is_some();
    let (_, coords) = ext_class_of(delta)?;
    let f = delta.x.field();
    let by_class = coords.iter().all(|c| f.is_zero(c));
    if by_section != by_class {
        return Err(Error::Internal(
            "section search and extension class disagree on splitting".into(),
        ));
    }
    Ok(by_section)
}
