//! Local POVMs on one party and their action on state sets.

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::linalg::{self, re, CMat, CVec, DEFAULT_TOL};
use crate::states::StateSet;

/// A POVM on one party, given by Kraus operators `M_m` with
/// `Σ M_m† M_m = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    party: usize,
    kraus: Vec<CMat>,
    labels: Vec<String>,
}

impl Measurement {
    /// Validates squareness, common dimension, completeness and positivity to
    /// within `tol`.
    pub fn new(party: usize, kraus: Vec<CMat>, labels: Vec<String>, tol: f64) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidMeasurement("no outcomes".into()));
        }
        if labels.len() != kraus.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} labels for {} outcomes",
                labels.len(),
                kraus.len()
            )));
        }
        let dim = kraus[0].nrows();
        if kraus.iter().any(|k| k.nrows() != dim || k.ncols() != dim) {
            return Err(Error::InvalidMeasurement(
                "operators must share a square shape".into(),
            ));
        }
        let m = Self {
            party,
            kraus,
            labels,
        };
        let residual = m.completeness_residual();
        if residual > tol {
            return Err(Error::InvalidMeasurement(format!(
                "completeness residual {residual:e}"
            )));
        }
        for (i, e) in m.elements().iter().enumerate() {
            let r = linalg::psd_residual(e)?;
            if r > tol {
                return Err(Error::InvalidMeasurement(format!(
                    "element {} has negative eigenvalue {:e}",
                    i + 1,
                    -r
                )));
            }
        }
        Ok(m)
    }

    /// Measurement whose Kraus operators are the PSD square roots of the
    /// given elements.
    pub fn from_elements(
        party: usize,
        elements: &[CMat],
        labels: Vec<String>,
        tol: f64,
    ) -> Result<Self> {
        let kraus = elements
            .iter()
            .map(linalg::psd_sqrt)
            .collect::<Result<Vec<_>>>()?;
        Self::new(party, kraus, labels, tol)
    }

    pub fn identity(party: usize, dim: usize) -> Self {
        Self {
            party,
            kraus: vec![linalg::identity(dim)],
            labels: vec!["I".into()],
        }
    }

    pub fn party(&self) -> usize {
        self.party
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn outcomes(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `E_m = M_m† M_m`.
    pub fn elements(&self) -> Vec<CMat> {
        self.kraus.iter().map(|k| k.adjoint() * k).collect()
    }

    /// Frobenius norm of `Σ E_m - I`.
    pub fn completeness_residual(&self) -> f64 {
        let mut s = -linalg::identity(self.dim());
        for e in self.elements() {
            s += e;
        }
        s.norm()
    }

    /// Largest negative-eigenvalue magnitude among the elements.
    pub fn psd_residual(&self) -> f64 {
        self.elements()
            .iter()
            .map(|e| linalg::psd_residual(e).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// The same operators acting on party `party`.
    pub fn on_party(mut self, party: usize) -> Self {
        self.party = party;
        self
    }

    fn check_against(&self, set: &StateSet) -> Result<()> {
        set.check_party(self.party)?;
        let d = set.dims()[self.party];
        if d != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Two outcomes `{|α⟩⟨α|, I - |α⟩⟨α|}`.
pub fn projective_split(party: usize, alpha: &CVec) -> Result<Measurement> {
    let p = linalg::projector(alpha)?;
    let q = linalg::identity(alpha.len()) - &p;
    Measurement::new(
        party,
        vec![p, q],
        vec!["P".into(), "I-P".into()],
        DEFAULT_TOL,
    )
}

/// Three outcomes `{|α⟩⟨α|, |β⟩⟨β|, I - |α⟩⟨α| - |β⟩⟨β|}` for orthogonal
/// `α`, `β`.
pub fn pair_split(party: usize, alpha: &CVec, beta: &CVec, tol: f64) -> Result<Measurement> {
    let a = linalg::normalize(alpha)?;
    let b = linalg::normalize(beta)?;
    let overlap = linalg::inner(&a, &b)?.norm();
    if overlap > tol {
        return Err(Error::InvalidMeasurement(format!(
            "pair split needs orthogonal kets, overlap {overlap:e}"
        )));
    }
    let pa = linalg::projector(&a)?;
    let pb = linalg::projector(&b)?;
    let rest = linalg::identity(a.len()) - &pa - &pb;
    let rest = linalg::psd_sqrt(&rest)?;
    Measurement::new(
        party,
        vec![pa, pb, rest],
        vec!["Pa".into(), "Pb".into(), "rest".into()],
        tol.max(DEFAULT_TOL),
    )
}

/// Two outcomes: the projector onto `span(vs)` and its complement.
pub fn span_split(party: usize, vs: &[CVec], tol: f64) -> Result<Measurement> {
    let dim = vs
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::InvalidMeasurement("span split needs at least one vector".into()))?;
    if let Some(v) = vs.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let p = linalg::span_projector(vs, dim, tol);
    let q = linalg::identity(dim) - &p;
    Measurement::new(
        party,
        vec![p, q],
        vec!["span".into(), "rest".into()],
        DEFAULT_TOL.max(tol),
    )
}

/// Orthogonal projective measurement onto the given mutually orthogonal
/// subspaces (as lists of spanning vectors) and the remainder, if any.
pub fn block_split(
    party: usize,
    blocks: &[Vec<CVec>],
    dim: usize,
    tol: f64,
) -> Result<Measurement> {
    let mut kraus = Vec::new();
    let mut labels = Vec::new();
    let mut total = CMat::zeros(dim, dim);
    for (i, b) in blocks.iter().enumerate() {
        let p = linalg::span_projector(b, dim, tol);
        total += &p;
        kraus.push(p);
        labels.push(format!("B{}", i + 1));
    }
    let rest = linalg::identity(dim) - total;
    if rest.norm() > DEFAULT_TOL.max(tol) {
        kraus.push(linalg::psd_sqrt(&rest)?);
        labels.push("rest".into());
    }
    Measurement::new(party, kraus, labels, DEFAULT_TOL.max(tol))
}

/// One rank-1 projector per member (its party-`party` ket) plus a remainder.
/// Requires the party kets to be pairwise orthogonal.
pub fn complete_local_discrimination(set: &StateSet, party: usize) -> Result<Measurement> {
    set.check_party(party)?;
    let bad: Vec<(usize, usize)> = (0..set.len())
        .tuple_combinations()
        .filter(|&(j, k)| !set.orthogonal_on(party, j, k))
        .collect();
    if !bad.is_empty() {
        return Err(Error::InvalidMeasurement(format!(
            "kets not pairwise orthogonal on party {}: {:?}",
            party + 1,
            bad.iter().map(|&(j, k)| (j + 1, k + 1)).collect::<Vec<_>>()
        )));
    }
    let dim = set.dims()[party];
    let locals = set.locals(party);
    let ortho = linalg::orthonormal_basis(&locals, set.tol());
    let blocks: Vec<Vec<CVec>> = ortho.into_iter().map(|v| vec![v]).collect();
    let mut m = block_split(party, &blocks, dim, set.tol())?;
    for (i, l) in m.labels.iter_mut().enumerate().take(set.len()) {
        *l = format!("state {}", set.label(i) + 1);
    }
    Ok(m)
}

/// Result of applying one outcome. Probabilities are indexed by position in
/// the input set; `dropped` lists positions whose probability is at most the
/// set tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeUpdate {
    pub probabilities: Vec<f64>,
    pub post_set: StateSet,
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
}

pub fn apply(set: &StateSet, meas: &Measurement, outcome: usize) -> Result<OutcomeUpdate> {
    meas.check_against(set)?;
    if outcome >= meas.outcomes() {
        return Err(Error::InvalidMeasurement(format!(
            "outcome {} of {}",
            outcome + 1,
            meas.outcomes()
        )));
    }
    let k = &meas.kraus[outcome];
    let mut probabilities = Vec::with_capacity(set.len());
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut kets = Vec::new();
    for j in 0..set.len() {
        let v = k * set.local(meas.party, j);
        let p = v.norm_squared();
        probabilities.push(p);
        if p > set.tol() {
            kept.push(j);
            kets.push(v.unscale(p.sqrt()));
        } else {
            dropped.push(j);
        }
    }
    let post_set = set.replace_party(meas.party, kets, &kept);
    Ok(OutcomeUpdate {
        probabilities,
        post_set,
        kept,
        dropped,
    })
}

/// Pairs of surviving members (positions in the input set) that lose full
/// orthogonality after the outcome.
pub fn orthogonality_violations(
    set: &StateSet,
    meas: &Measurement,
    outcome: usize,
) -> Result<Vec<(usize, usize)>> {
    let upd = apply(set, meas, outcome)?;
    let post = &upd.post_set;
    let mut bad = Vec::new();
    for (x, y) in (0..post.len()).tuple_combinations() {
        let mut prod = re(1.0);
        for p in 0..post.parties() {
            prod *= post.local(p, x).dotc(post.local(p, y));
        }
        if prod.norm() > set.tol() {
            bad.push((upd.kept[x], upd.kept[y]));
        }
    }
    Ok(bad)
}

pub fn preserves_orthogonality(
    set: &StateSet,
    meas: &Measurement,
    outcome: usize,
) -> Result<(bool, Vec<(usize, usize)>)> {
    let bad = orthogonality_violations(set, meas, outcome)?;
    Ok((bad.is_empty(), bad))
}

/// Whether every outcome preserves orthogonality.
pub fn preserves_all(set: &StateSet, meas: &Measurement) -> Result<bool> {
    for m in 0..meas.outcomes() {
        if !orthogonality_violations(set, meas, m)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First-party measurements for the three probabilistic cases of the
/// double-cycle family with nonzero `d` and/or `g` and `h = 0`.
///
/// Cases 1 (`g = 0`, `d ≠ 0`) and 2 (`d = 0`, `g ≠ 0`) use
/// `{|3⟩⟨3|, I - |3⟩⟨3|}`; case 3 (`d, g ≠ 0`) uses the projector onto
/// `conj(d)|1⟩ - conj(b)|3⟩` and its complement.
pub fn theorem4_measurements(p: &FamilyParams, case: u8) -> Result<Measurement> {
    let z = |x: Complex64| x.norm() <= 1e-12;
    p.check()?;
    let ok = match case {
        1 => z(p.h) && z(p.g) && !z(p.d),
        2 => z(p.h) && z(p.d) && !z(p.g),
        3 => z(p.h) && !z(p.d) && !z(p.g),
        _ => return Err(Error::InvalidParams(format!("no case {case}"))),
    };
    if !ok {
        return Err(Error::InvalidParams(format!(
            "parameters do not match case {case}"
        )));
    }
    let dim = 4;
    let v = match case {
        1 | 2 => linalg::basis(dim, 3),
        _ => linalg::sparse_ket(dim, &[(1, p.d.conj()), (3, -p.b.conj())]),
    };
    let mut m = projective_split(0, &v)?;
    m.labels = vec!["M1".into(), "M2".into()];
    Ok(m)
}

/// Four rank-1 operators `(√3/6)|x⟩⟨x|` on the third party for
/// `x = |0⟩ ± |1⟩ ± |2⟩`.
pub fn eq12_povm() -> Measurement {
    let w = 3f64.sqrt() / 6.0;
    let signs = [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];
    let kraus = signs
        .iter()
        .map(|&(s1, s2)| {
            let x = linalg::from_reals(&[1.0, s1, s2]);
            (&x * x.adjoint()).scale(w)
        })
        .collect();
    let labels = (1..=4).map(|i| format!("Pi{i}")).collect();
    Measurement::new(2, kraus, labels, 1e-12).expect("four operators are complete")
}

/// Orthogonality-preserving POVM assembled from projectors onto the
/// complement of `span{a_t : t ∈ T}`, one per minimal vertex cover `T` of the
/// party's constraint pairs, weighted so the elements sum to the identity.
///
/// Every outcome rules out the members of its cover. Returns `None` when no
/// nonnegative combination of the available projectors resolves the identity.
pub fn hitting_set_povm(
    set: &StateSet,
    party: usize,
    pairs: &[(usize, usize)],
) -> Option<Measurement> {
    let n = set.len();
    let dim = set.dims()[party];
    let tol = set.tol();
    if pairs.is_empty() {
        return None;
    }
    let covers: Vec<Vec<usize>> = (1..(1u32 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|t| pairs.iter().all(|(j, k)| t.contains(j) || t.contains(k)))
        .collect();
    let minimal: Vec<Vec<usize>> = covers
        .iter()
        .filter(|t| {
            !covers
                .iter()
                .any(|u| u.len() < t.len() && u.iter().all(|x| t.contains(x)))
        })
        .cloned()
        .collect();
    let mut projs: Vec<(Vec<usize>, CMat)> = Vec::new();
    for t in minimal {
        let vs: Vec<CVec> = t.iter().map(|&i| set.local(party, i).clone()).collect();
        let q = linalg::identity(dim) - linalg::span_projector(&vs, dim, tol);
        if q.norm() > 0.5 {
            projs.push((t, q));
        }
    }
    if projs.is_empty() {
        return None;
    }
    let weights = resolve_identity(
        &projs.iter().map(|(_, q)| q.clone()).collect::<Vec<_>>(),
        tol,
    )?;
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for ((t, q), w) in projs.into_iter().zip(weights) {
        if w > tol {
            elements.push(q.scale(w));
            labels.push(format!(
                "not {{{}}}",
                t.iter().map(|&i| (set.label(i) + 1).to_string()).join(",")
            ));
        }
    }
    Measurement::from_elements(party, &elements, labels, 1e-8).ok()
}

/// Nonnegative weights `w` with `Σ w_i Q_i = I`, searching subsets of the
/// operators from smallest to largest and solving each by least squares.
fn resolve_identity(ops: &[CMat], tol: f64) -> Option<Vec<f64>> {
    let dim = ops[0].nrows();
    let target: Vec<f64> = flatten(&linalg::identity(dim));
    let cols: Vec<Vec<f64>> = ops.iter().map(flatten).collect();
    let k = ops.len().min(12);
    for size in 1..=k {
        for subset in (0..k).combinations(size) {
            let a = nalgebra::DMatrix::from_fn(target.len(), size, |r, c| cols[subset[c]][r]);
            let b = nalgebra::DVector::from_column_slice(&target);
            let svd = a.clone().svd(true, true);
            let Ok(x) = svd.solve(&b, 1e-12) else {
                continue;
            };
            let resid = (&a * &x - &b).norm();
            if resid <= 1e-10 && x.iter().all(|&w| w >= -tol) {
                let mut w = vec![0.0; ops.len()];
                for (c, &i) in subset.iter().enumerate() {
                    w[i] = x[c].max(0.0);
                }
                return Some(w);
            }
        }
    }
    None
}

fn flatten(m: &CMat) -> Vec<f64> {
    m.iter().flat_map(|z| [z.re, z.im]).collect()
}
