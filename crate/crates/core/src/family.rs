//! Fixed five-state constructions used as fixtures and worked examples.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, re, sparse_ket, CVec};
use crate::states::{ProductState, StateSet};

const ZERO_TOL: f64 = 1e-12;

/// Parameters of the bipartite double-cycle family.
///
/// The unprimed values shape the first party's kets, the primed ones the
/// second party's. `c` and `e` (and their primed versions) are derived.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub a: Complex64,
    pub b: Complex64,
    pub d: Complex64,
    pub g: Complex64,
    pub h: Complex64,
    pub a2: Complex64,
    pub b2: Complex64,
    pub d2: Complex64,
    pub g2: Complex64,
    pub h2: Complex64,
}

impl FamilyParams {
    /// Only `a, b, a', b'` nonzero.
    pub fn simple(a: Complex64, b: Complex64, a2: Complex64, b2: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            a,
            b,
            d: z,
            g: z,
            h: z,
            a2,
            b2,
            d2: z,
            g2: z,
            h2: z,
        }
    }

    /// Real-valued shorthand for the first party with the second party at
    /// `a' = b' = 1` and the other primed values zero.
    pub fn first_party(a: f64, b: f64, d: f64, g: f64, h: f64) -> Self {
        let mut p = Self::simple(re(a), re(b), re(1.0), re(1.0));
        p.d = re(d);
        p.g = re(g);
        p.h = re(h);
        p
    }

    pub fn c(&self) -> Complex64 {
        -self.a.conj().inv()
    }

    pub fn e(&self) -> Complex64 {
        self.a * (self.b.conj() + self.d.conj() * self.g)
    }

    pub fn c2(&self) -> Complex64 {
        -self.a2.conj().inv()
    }

    pub fn e2(&self) -> Complex64 {
        self.a2 * (self.b2.conj() + self.d2.conj() * self.g2)
    }

    pub fn check(&self) -> Result<()> {
        let named = [
            ("a", self.a),
            ("b", self.b),
            ("a'", self.a2),
            ("b'", self.b2),
            (
                "e",
                if self.a.norm() > ZERO_TOL {
                    self.e()
                } else {
                    re(1.0)
                },
            ),
            (
                "e'",
                if self.a2.norm() > ZERO_TOL {
                    self.e2()
                } else {
                    re(1.0)
                },
            ),
        ];
        for (name, v) in named {
            if v.norm().is_nan() || v.norm() <= ZERO_TOL {
                return Err(Error::InvalidParams(format!("{name} must be nonzero")));
            }
        }
        let all = [
            self.a, self.b, self.d, self.g, self.h, self.a2, self.b2, self.d2, self.g2, self.h2,
        ];
        if all.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        Ok(())
    }
}

fn side_dim(d: Complex64, g: Complex64, h: Complex64) -> usize {
    if h.norm() > ZERO_TOL {
        5
    } else if d.norm() > ZERO_TOL || g.norm() > ZERO_TOL {
        4
    } else {
        3
    }
}

fn ket(dim: usize, terms: &[(usize, Complex64)]) -> CVec {
    let terms: Vec<_> = terms.iter().filter(|(i, _)| *i < dim).cloned().collect();
    linalg::normalize(&sparse_ket(dim, &terms)).expect("family kets are nonzero")
}

/// Five bipartite states whose two orthogonality colors are complementary
/// 5-cycles. Party-1 pairs orthogonal: (1,4),(1,5),(2,3),(2,5),(3,4).
pub fn family_eq2(p: &FamilyParams) -> Result<StateSet> {
    p.check()?;
    let one = re(1.0);
    let d1 = side_dim(p.d, p.g, p.h);
    let d2 = side_dim(p.d2, p.g2, p.h2);
    let first = [
        ket(d1, &[(0, one)]),
        ket(d1, &[(0, one), (2, p.a)]),
        ket(d1, &[(0, one), (1, p.b), (2, p.c()), (3, p.d)]),
        ket(d1, &[(1, one), (2, p.e()), (3, p.g), (4, p.h)]),
        ket(d1, &[(1, one)]),
    ];
    let second = [
        ket(d2, &[(0, one), (2, p.a2)]),
        ket(d2, &[(1, one)]),
        ket(d2, &[(0, one), (1, p.b2), (2, p.c2()), (3, p.d2)]),
        ket(d2, &[(0, one)]),
        ket(d2, &[(1, one), (2, p.e2()), (3, p.g2), (4, p.h2)]),
    ];
    let states = first
        .into_iter()
        .zip(second)
        .map(|(x, y)| ProductState::new(vec![x, y]))
        .collect::<Result<Vec<_>>>()?;
    StateSet::new(vec![d1, d2], states)
}

/// The double-cycle family with every optional parameter zero; both local
/// spaces are three-dimensional.
pub fn family_eq3(a: Complex64, b: Complex64, a2: Complex64, b2: Complex64) -> Result<StateSet> {
    family_eq2(&FamilyParams::simple(a, b, a2, b2))
}

fn tri(locals: [&[f64]; 3]) -> ProductState {
    ProductState::new(locals.iter().map(|a| linalg::from_reals(a)).collect())
        .expect("fixed kets are nonzero")
}

/// Five tripartite states that admit no nontrivial orthogonality-preserving
/// local measurement on any party.
pub fn family_eq10() -> StateSet {
    let s = (2.0f64 / 3.0).sqrt();
    let t = (1.0f64 / 3.0).sqrt();
    let states = vec![
        tri([&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[t, s, 0.0]]),
        tri([&[1.0, 1.0, -1.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]),
        tri([&[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]]),
        tri([&[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]]),
        tri([&[0.0, 1.0, 1.0], &[1.0, -1.0, 0.0], &[0.0, 1.0, 0.0]]),
    ];
    StateSet::new(vec![3, 3, 3], states).expect("fixed set is consistent")
}

/// Same orthogonality graph as [`family_eq10`] but perfectly distinguishable.
pub fn family_eq11() -> StateSet {
    let states = vec![
        tri([&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]),
        tri([&[1.0, 1.0, -1.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]),
        tri([&[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0]]),
        tri([&[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0]]),
        tri([&[0.0, 1.0, 1.0], &[1.0, -1.0, 0.0], &[1.0, 0.0, -1.0]]),
    ];
    StateSet::new(vec![3, 3, 3], states).expect("fixed set is consistent")
}
