//! Linear-algebra analyses of a Poisson algebra: normalizers, subalgebra
//! closure, the symplectic Laplacian and the (D1)/(D2) markers.
//!
//! Polynomials are coordinatized by pairs (parameter monomial, generator
//! monomial), so all spans are taken over the rationals with formal
//! parameters kept independent.

use crate::error::{Error, Result};
use crate::linalg::{Coords, Echelon, LinearSystem, SparseVec};
use crate::poly::{Mono, Poly};
use crate::scalars::{Gq, ParamMono, ParamScalar};

use super::{bracket, PoissonPoly, Space, SpaceKind};

type Key = (ParamMono, Mono);

fn coords_of(p: &PoissonPoly, coords: &mut Coords<Key>) -> SparseVec {
    let mut v = SparseVec::new();
    for (m, c) in p.terms() {
        for (pm, g) in c.terms() {
            v.insert(coords.id(&(*pm, m.clone())), g.clone());
        }
    }
    v
}

fn check_parameter_free(basis: &[PoissonPoly]) -> Result<()> {
    for b in basis {
        if b.terms().any(|(_, c)| !c.is_constant()) {
            return Err(Error::ParameterInBasis(b.to_string()));
        }
    }
    Ok(())
}

fn span(basis: &[PoissonPoly], coords: &mut Coords<Key>) -> Echelon {
    let mut e = Echelon::new();
    for b in basis {
        e.insert(&coords_of(b, coords));
    }
    e
}

/// Polynomial from exact coefficients over a list of monomials.
fn combine(space: &Space, monos: &[Mono], x: &[Gq]) -> PoissonPoly {
    let mut p = Poly::zero(space.ngens());
    for (m, c) in monos.iter().zip(x) {
        p.add_term(m.clone(), &ParamScalar::from_gq(c.clone()));
    }
    PoissonPoly::new(space, p)
}

/// Kernel of a linear map given by its column images on `monos`.
fn kernel(space: &Space, monos: &[Mono], images: &[SparseVec]) -> Vec<PoissonPoly> {
    let mut rows: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    for (col, img) in images.iter().enumerate() {
        for (r, c) in img {
            rows.entry(*r).or_default().insert(col, c.clone());
        }
    }
    let mut sys = LinearSystem::new(monos.len());
    for (_, row) in rows {
        sys.add_equation(row, Gq::zero());
    }
    let sol = sys.solve().expect("homogeneous systems are consistent");
    sol.nullspace
        .iter()
        .map(|x| combine(space, monos, x))
        .collect()
}

/// Basis of `{f : deg f <= cap, {f, b} in span(basis) for all b}`.
pub fn normalizer(space: &Space, basis: &[PoissonPoly], cap: u32) -> Result<Vec<PoissonPoly>> {
    check_parameter_free(basis)?;
    let check = is_lie_subalgebra(space, &Membership::Basis(basis.to_vec()), cap)?;
    if let Some((a, b)) = check.witness {
        return Err(Error::NotASubalgebra(a.to_string(), b.to_string()));
    }
    let mut coords = Coords::new();
    let e = span(basis, &mut coords);
    let monos = space.ring.monomials_up_to(cap);
    let mut images = Vec::with_capacity(monos.len());
    for m in &monos {
        let f = PoissonPoly::monomial(space, m.clone());
        let mut img = SparseVec::new();
        for (k, b) in basis.iter().enumerate() {
            let r = e.remainder(&coords_of(&bracket(&f, b)?, &mut coords));
            // separate block of rows per basis element
            for (idx, c) in r {
                img.insert(idx * basis.len() + k, c);
            }
        }
        images.push(img);
    }
    Ok(kernel(space, &monos, &images))
}

/// How subalgebra membership is decided.
pub enum Membership {
    /// Linear span of explicit elements.
    Basis(Vec<PoissonPoly>),
    /// Span of all reduced monomials accepted by the predicate.
    Monomials(Box<dyn Fn(&Mono) -> bool + Send + Sync>),
}

impl Membership {
    pub fn monomials(pred: impl Fn(&Mono) -> bool + Send + Sync + 'static) -> Self {
        Membership::Monomials(Box::new(pred))
    }
}

/// Closure verdict with a violating pair when it fails.
#[derive(Clone, Debug)]
pub struct SubalgebraCheck {
    pub closed: bool,
    pub witness: Option<(PoissonPoly, PoissonPoly)>,
}

type MemberTest<'a> = Box<dyn Fn(&PoissonPoly) -> bool + 'a>;

/// Checks that brackets of a spanning set stay in the set.
///
/// For [`Membership::Monomials`] the spanning set is every accepted monomial
/// of degree at most `cap`; the brackets themselves are not capped.
pub fn is_lie_subalgebra(
    space: &Space,
    membership: &Membership,
    cap: u32,
) -> Result<SubalgebraCheck> {
    let (elements, test): (Vec<PoissonPoly>, MemberTest<'_>) = match membership {
        Membership::Basis(b) => {
            let mut coords = Coords::new();
            let e = span(b, &mut coords);
            let test = move |p: &PoissonPoly| {
                let mut coords = coords.clone();
                e.contains(&coords_of(p, &mut coords))
            };
            (b.clone(), Box::new(test))
        }
        Membership::Monomials(pred) => {
            let elems = space
                .ring
                .monomials_up_to(cap)
                .into_iter()
                .filter(|m| pred(m))
                .map(|m| PoissonPoly::monomial(space, m))
                .collect();
            (
                elems,
                Box::new(move |p: &PoissonPoly| p.terms().all(|(m, _)| pred(m))),
            )
        }
    };
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            if !test(&bracket(a, b)?) {
                return Ok(SubalgebraCheck {
                    closed: false,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(SubalgebraCheck {
        closed: true,
        witness: None,
    })
}

/// The finite-dimensional basic algebra of a space: `{1, q_i, p_i}` on
/// `R^{2n}`, `{S1, S2, S3}` on the sphere, `{l, cos, sin}` on the cylinder
/// and `{X, Y}` on `T*R_+`. The torus has none.
pub fn basic_algebra(space: &Space) -> Result<Vec<PoissonPoly>> {
    let gens = (0..space.ngens()).map(|i| PoissonPoly::generator(space, i));
    match space.kind {
        SpaceKind::R2n(_) => Ok(std::iter::once(PoissonPoly::one(space))
            .chain(gens)
            .collect()),
        SpaceKind::T2 => Err(Error::Unsupported(
            "the torus basic algebra of trigonometric polynomials is infinite-dimensional".into(),
        )),
        _ => Ok(gens.collect()),
    }
}

/// `-sum_i {b_i, {b_i, f}}`.
pub fn symplectic_laplacian(
    space: &Space,
    basis: &[PoissonPoly],
    f: &PoissonPoly,
) -> Result<PoissonPoly> {
    check_parameter_free(basis)?;
    let mut acc = PoissonPoly::zero(space);
    for b in basis {
        acc = acc.sub(&bracket(b, &bracket(b, f)?)?);
    }
    Ok(acc)
}

/// Kernel of the Laplacian on polynomials of degree at most `cap`.
pub fn laplacian_kernel(
    space: &Space,
    basis: &[PoissonPoly],
    cap: u32,
) -> Result<Vec<PoissonPoly>> {
    let monos = space.ring.monomials_up_to(cap);
    let mut coords = Coords::new();
    let mut images = Vec::with_capacity(monos.len());
    for m in &monos {
        let f = PoissonPoly::monomial(space, m.clone());
        images.push(coords_of(
            &symplectic_laplacian(space, basis, &f)?,
            &mut coords,
        ));
    }
    Ok(kernel(space, &monos, &images))
}

/// Obstruction markers up to a degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Markers {
    /// The constant 1 is a combination of brackets of monomials of degree at
    /// most `cap`. `false` only means no such combination exists up to `cap`.
    pub d1: bool,
    /// The polynomial algebra carries a relation.
    pub d2: bool,
    pub cap: u32,
}

pub fn obstruction_markers(space: &Space, cap: u32) -> Result<Markers> {
    let monos = space.ring.monomials_up_to(cap);
    let elems: Vec<PoissonPoly> = monos
        .iter()
        .map(|m| PoissonPoly::monomial(space, m.clone()))
        .collect();
    let mut coords = Coords::new();
    let one = coords_of(&PoissonPoly::one(space), &mut coords);
    let mut e = Echelon::new();
    let mut d1 = false;
    'outer: for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            let v = coords_of(&bracket(a, b)?, &mut coords);
            if e.insert(&v) && e.contains(&one) {
                d1 = true;
                break 'outer;
            }
        }
    }
    Ok(Markers {
        d1,
        d2: space.has_relations(),
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{make_space, SpaceKind};

    fn gens(space: &Space) -> Vec<PoissonPoly> {
        (0..space.ngens())
            .map(|i| PoissonPoly::generator(space, i))
            .collect()
    }

    #[test]
    fn heisenberg_normalizer_is_quadratics() {
        let r = make_space(SpaceKind::R2n(1)).unwrap();
        let mut basis = vec![PoissonPoly::one(&r)];
        basis.extend(gens(&r));
        let n = normalizer(&r, &basis, 4).unwrap();
        assert_eq!(n.len(), 6);
        assert!(n.iter().all(|f| f.degree() <= 2));
    }

    #[test]
    fn sphere_laplacian_eigenvalues() {
        let s = make_space(SpaceKind::S2).unwrap();
        let b = gens(&s);
        let s3 = b[2].clone();
        assert_eq!(
            symplectic_laplacian(&s, &b, &s3).unwrap(),
            s3.scale(&ParamScalar::int(2))
        );
        let s12 = b[0].mul(&b[1]);
        assert_eq!(
            symplectic_laplacian(&s, &b, &s12).unwrap(),
            s12.scale(&ParamScalar::int(6))
        );
    }

    #[test]
    fn parameter_basis_rejected() {
        let s = make_space(SpaceKind::S2).unwrap();
        let bad = vec![PoissonPoly::constant(&s, ParamScalar::hbar())];
        assert!(matches!(
            normalizer(&s, &bad, 2),
            Err(Error::ParameterInBasis(_))
        ));
    }

    #[test]
    fn non_subalgebra_rejected() {
        let r = make_space(SpaceKind::R2n(1)).unwrap();
        let basis = vec![PoissonPoly::generator(&r, 0), PoissonPoly::generator(&r, 1)];
        assert!(matches!(
            normalizer(&r, &basis, 2),
            Err(Error::NotASubalgebra(_, _))
        ));
    }
}
