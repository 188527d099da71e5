//! Harmonic structures, extension matrices and non-degeneracy certificates.
//!
//! A candidate `(D, r)` is a harmonic structure when restricting the
//! assembled level-1 Laplacian back to the boundary reproduces `D` exactly.
//! The extension matrix `A_i` sends boundary values of a harmonic function to
//! its values on the corners of cell `i`: rows follow the cell's corner
//! positions, columns the boundary order. The structure is non-degenerate
//! when every `A_i` is invertible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cell::CellStructure;
use crate::error::{Error, Result};
use crate::laplacian::{assemble_h1, validate_laplacian, HarmonicExtender};
use crate::linalg;
use crate::matrix::{DenseMatrix, MatrixDoc, SymmetricMatrix, VertexFunction, WeightVector};
use crate::scalar::{Mode, Rational, Scalar, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicStructureCandidate<S> {
    d: SymmetricMatrix<S>,
    r: WeightVector<S>,
    verified: bool,
}

impl<S: Scalar> HarmonicStructureCandidate<S> {
    /// Rejects a `D` that is not a Laplacian.
    pub fn new(d: SymmetricMatrix<S>, r: WeightVector<S>, tol: &Tolerances) -> Result<Self> {
        let report = validate_laplacian(d.dense(), tol)?;
        if !report.is_ok() {
            let reasons: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            return Err(Error::MalformedInput(format!(
                "D is not a Laplacian: {}",
                reasons.join("; ")
            )));
        }
        Ok(Self {
            d,
            r,
            verified: false,
        })
    }

    pub fn d(&self) -> &SymmetricMatrix<S> {
        &self.d
    }

    pub fn r(&self) -> &WeightVector<S> {
        &self.r
    }

    /// Set only by a successful [`is_harmonic_structure`].
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn h1(&self, s: &CellStructure) -> Result<SymmetricMatrix<S>> {
        assemble_h1(s, &self.d, &self.r)
    }
}

/// Outcome of comparing the boundary restriction with `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCheck<S> {
    pub holds: bool,
    /// Largest entrywise `|Schur - D|`.
    pub residual: S,
    pub difference: DenseMatrix<S>,
    pub schur: SymmetricMatrix<S>,
}

pub fn is_harmonic_structure<S: Scalar>(
    s: &CellStructure,
    cand: &mut HarmonicStructureCandidate<S>,
    tol: &Tolerances,
) -> Result<HarmonicCheck<S>> {
    let h1 = cand.h1(s)?;
    let extender = HarmonicExtender::new(&h1, s, tol)?;
    let check = compare_restriction(extender.schur(), &cand.d, tol)?;
    cand.verified = check.holds;
    Ok(check)
}

fn compare_restriction<S: Scalar>(
    schur: &SymmetricMatrix<S>,
    d: &SymmetricMatrix<S>,
    tol: &Tolerances,
) -> Result<HarmonicCheck<S>> {
    let difference = schur.dense().sub(d.dense())?;
    let residual = schur.dense().max_abs_diff(d.dense())?;
    let holds = residual.is_zero_within(tol.entry);
    Ok(HarmonicCheck {
        holds,
        residual,
        difference,
        schur: schur.clone(),
    })
}

fn unit_weights<S: Scalar>(s: &CellStructure) -> WeightVector<S> {
    WeightVector::uniform(s.cell_count(), S::one()).expect("one is positive")
}

/// `lambda` with `m = lambda * d`, if it exists and is positive.
fn proportionality<S: Scalar>(
    m: &SymmetricMatrix<S>,
    d: &SymmetricMatrix<S>,
    tol: &Tolerances,
) -> Result<S> {
    let not_prop = || Error::NotProportional {
        schur: format!("{:?}", MatrixDoc::from_matrix(m.dense()).entries),
    };
    let (p, q) = (0..d.dim())
        .flat_map(|p| (0..d.dim()).map(move |q| (p, q)))
        .find(|&(p, q)| !d[(p, q)].is_zero_within(tol.entry))
        .ok_or_else(not_prop)?;
    let lambda = m[(p, q)].clone() / d[(p, q)].clone();
    // Negated so NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lambda > S::zero()) || !m.dense().approx_eq(&d.dense().scale(&lambda), tol.entry) {
        return Err(not_prop());
    }
    Ok(lambda)
}

/// Uniform weight `r*` turning `(D, (r*, ..., r*))` into a harmonic
/// structure: with unit weights the restriction is `lambda * D`, and since
/// the restriction scales like `1/r`, `r* = lambda`.
pub fn solve_homogeneous_ratio<S: Scalar>(
    s: &CellStructure,
    d: &SymmetricMatrix<S>,
    tol: &Tolerances,
) -> Result<S> {
    HarmonicStructureCandidate::new(d.clone(), unit_weights(s), tol)?;
    let h1 = assemble_h1(s, d, &unit_weights(s))?;
    let extender = HarmonicExtender::new(&h1, s, tol)?;
    proportionality(extender.schur(), d, tol)
}

/// Weights `t * rho` with `rho` constant on symmetry orbits (one value per
/// orbit, in orbit order) and `t` chosen so the result is harmonic.
pub fn solve_orbit_scale<S: Scalar>(
    s: &CellStructure,
    d: &SymmetricMatrix<S>,
    orbit_weights: &[S],
    tol: &Tolerances,
) -> Result<WeightVector<S>> {
    HarmonicStructureCandidate::new(d.clone(), unit_weights(s), tol)?;
    let orbits = s.cell_orbits()?;
    let rho = WeightVector::new(orbits.expand(orbit_weights)?)?;
    let h1 = assemble_h1(s, d, &rho)?;
    let extender = HarmonicExtender::new(&h1, s, tol)?;
    let t = proportionality(extender.schur(), d, tol)?;
    rho.scale(&t)
}

/// The homogeneous harmonic structure for `d`, already verified.
pub fn homogeneous_structure<S: Scalar>(
    s: &CellStructure,
    d: &SymmetricMatrix<S>,
    tol: &Tolerances,
) -> Result<HarmonicStructureCandidate<S>> {
    let r_star = solve_homogeneous_ratio(s, d, tol)?;
    let mut cand = HarmonicStructureCandidate::new(
        d.clone(),
        WeightVector::uniform(s.cell_count(), r_star)?,
        tol,
    )?;
    is_harmonic_structure(s, &mut cand, tol)?;
    Ok(cand)
}

/// Per-cell `k x k` matrices with `h|_{F_i V_0} = A_i h|_{V_0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionMatrices<S>(Vec<DenseMatrix<S>>);

impl<S: Scalar> ExtensionMatrices<S> {
    pub fn new(matrices: Vec<DenseMatrix<S>>) -> Self {
        Self(matrices)
    }

    /// Column `j` of `A_i` is the extension of the `j`-th boundary indicator,
    /// read off at cell `i`'s corners.
    pub fn from_extender(extender: &HarmonicExtender<S>, s: &CellStructure) -> Result<Self> {
        let k = s.boundary_size();
        let columns = (0..k)
            .map(|j| {
                let e: Vec<S> = (0..k)
                    .map(|l| if l == j { S::one() } else { S::zero() })
                    .collect();
                extender.extend(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(
            s.cells()
                .iter()
                .map(|cell| DenseMatrix::from_fn(k, k, |row, col| columns[col][cell[row]].clone()))
                .collect(),
        ))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, cell: usize) -> &DenseMatrix<S> {
        &self.0[cell]
    }

    pub fn iter(&self) -> impl Iterator<Item = &DenseMatrix<S>> {
        self.0.iter()
    }
}

/// Extension matrices of the level-1 network `(s, D, r)`. Harmonicity of the
/// candidate is not required.
pub fn extension_matrices<S: Scalar>(
    s: &CellStructure,
    cand: &HarmonicStructureCandidate<S>,
    tol: &Tolerances,
) -> Result<ExtensionMatrices<S>> {
    let h1 = cand.h1(s)?;
    let extender = HarmonicExtender::new(&h1, s, tol)?;
    ExtensionMatrices::from_extender(&extender, s)
}

/// Everything needed to certify one candidate, from a single factorisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Certification<S> {
    pub candidate: HarmonicStructureCandidate<S>,
    pub check: HarmonicCheck<S>,
    pub matrices: ExtensionMatrices<S>,
    pub report: NondegeneracyReport<S>,
}

impl<S: Scalar> Certification<S> {
    /// Harmonic and non-degenerate.
    pub fn passed(&self) -> bool {
        self.check.holds && self.report.is_nondegenerate()
    }
}

/// Checks harmonicity of `cand` and certifies its extension matrices.
pub fn certify<S: Scalar>(
    s: &CellStructure,
    mut cand: HarmonicStructureCandidate<S>,
    tol: &Tolerances,
) -> Result<Certification<S>> {
    let h1 = cand.h1(s)?;
    let extender = HarmonicExtender::new(&h1, s, tol)?;
    let check = compare_restriction(extender.schur(), &cand.d, tol)?;
    cand.verified = check.holds;
    let matrices = ExtensionMatrices::from_extender(&extender, s)?;
    let report = nondegeneracy_report(&matrices, tol);
    Ok(Certification {
        candidate: cand,
        check,
        matrices,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCertificate<S> {
    pub cell: usize,
    pub determinant: S,
    /// Float mode only.
    pub min_singular_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<S> {
    Nondegenerate,
    /// `A_cell * kernel = 0` with `kernel != 0`.
    Degenerate {
        cell: usize,
        kernel: Vec<S>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NondegeneracyReport<S> {
    pub mode: Mode,
    pub cells: Vec<CellCertificate<S>>,
    pub verdict: Verdict<S>,
}

impl<S: Scalar> NondegeneracyReport<S> {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self.verdict, Verdict::Nondegenerate)
    }

    pub fn min_abs_determinant(&self) -> S {
        self.cells
            .iter()
            .map(|c| c.determinant.magnitude())
            .fold(None, |best: Option<S>, d| match best {
                Some(b) if b <= d => Some(b),
                _ => Some(d),
            })
            .unwrap_or_else(S::zero)
    }

    pub fn min_singular_value(&self) -> Option<f64> {
        self.cells
            .iter()
            .filter_map(|c| c.min_singular_value)
            .reduce(f64::min)
    }

    /// The quantity the verdict is decided on: minimum `|det A_i|` in exact
    /// mode, minimum singular value in float mode.
    pub fn min_metric(&self) -> S {
        match self.mode {
            Mode::Exact => self.min_abs_determinant(),
            Mode::Float => self
                .min_singular_value()
                .and_then(S::from_f64)
                .unwrap_or_else(S::zero),
        }
    }

    pub fn to_doc(&self, s: &CellStructure, r: &WeightVector<S>) -> ReportDoc {
        let exact = self.mode == Mode::Exact;
        ReportDoc {
            structure: s.name().to_string(),
            n: s.lattice_order(),
            mode: self.mode,
            r: r.values().iter().map(Scalar::to_text).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| CellDoc {
                    cell: c.cell,
                    det: exact.then(|| c.determinant.to_text()),
                    min_singular_value: c.min_singular_value,
                })
                .collect(),
            verdict: if self.is_nondegenerate() {
                "nondegenerate"
            } else {
                "degenerate"
            }
            .to_string(),
            witness: match &self.verdict {
                Verdict::Nondegenerate => None,
                Verdict::Degenerate { cell, kernel } => Some(WitnessDoc {
                    cell: *cell,
                    kernel: kernel.iter().map(Scalar::to_text).collect(),
                }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub structure: String,
    pub n: Option<u32>,
    pub mode: Mode,
    pub r: Vec<String>,
    pub cells: Vec<CellDoc>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDoc {
    pub cell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_singular_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub cell: usize,
    pub kernel: Vec<String>,
}

/// Scales a rational vector to coprime integers with a positive leading
/// nonzero entry.
fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x * sign.clone() / gcd.clone()))
        .collect()
}

fn exact_witness<S: Scalar>(a: &DenseMatrix<S>) -> Option<Vec<S>> {
    let kernel = linalg::null_space(a, 0.0).into_iter().next()?;
    // route through rationals so the witness is a primitive integer vector
    let as_rational: Option<Vec<Rational>> = kernel
        .iter()
        .map(|x| Rational::parse_text(&x.to_text()).ok())
        .collect();
    match as_rational {
        Some(r) => primitive_integer_vector(&r)
            .iter()
            .map(|x| S::parse_text(&x.to_text()).ok())
            .collect(),
        None => Some(kernel),
    }
}

fn float_witness<S: Scalar>(v: Vec<f64>) -> Vec<S> {
    let sign = match v.iter().find(|x| f64::abs(**x) > 1e-12) {
        Some(x) if *x < 0.0 => -1.0,
        _ => 1.0,
    };
    v.into_iter()
        .map(|x| S::from_f64(sign * x).unwrap_or_else(S::zero))
        .collect()
}

/// Exact determinants (rational mode) or minimum singular values (float
/// mode) for every `A_i`, plus a kernel witness for the first singular cell.
pub fn nondegeneracy_report<S: Scalar>(
    m: &ExtensionMatrices<S>,
    tol: &Tolerances,
) -> NondegeneracyReport<S> {
    let mut cells = Vec::with_capacity(m.len());
    let mut verdict = Verdict::Nondegenerate;
    for (i, a) in m.iter().enumerate() {
        let determinant = linalg::determinant(a, if S::is_exact() { 0.0 } else { f64::EPSILON });
        let (singular, min_sv, witness) = if S::is_exact() {
            let singular = determinant.is_zero();
            (singular, None, singular.then(|| exact_witness(a)).flatten())
        } else {
            let (sigma, vector) = linalg::min_singular_value(&a.to_f64());
            let singular = sigma <= tol.singular_floor;
            (
                singular,
                Some(sigma),
                singular.then(|| float_witness(vector)),
            )
        };
        if singular && matches!(verdict, Verdict::Nondegenerate) {
            verdict = Verdict::Degenerate {
                cell: i,
                kernel: witness.unwrap_or_default(),
            };
        }
        cells.push(CellCertificate {
            cell: i,
            determinant,
            min_singular_value: min_sv,
        });
    }
    NondegeneracyReport {
        mode: S::MODE,
        cells,
        verdict,
    }
}

/// Cells on which `v` is constant, with the constant.
pub fn check_cell_constancy<S: Scalar>(
    s: &CellStructure,
    v: &VertexFunction<S>,
    tol: &Tolerances,
) -> Vec<(usize, S)> {
    s.cells()
        .iter()
        .enumerate()
        .filter_map(|(i, cell)| {
            let first = &v[cell[0]];
            cell.iter()
                .all(|&p| v[p].approx_eq(first, tol.level))
                .then(|| (i, first.clone()))
        })
        .collect()
}

/// `A_{i_m} ... A_{i_1} u` for the address `(i_1, ..., i_m)`.
pub fn evaluate_at_address<S: Scalar>(
    m: &ExtensionMatrices<S>,
    address: &[usize],
    boundary_values: &[S],
) -> Result<Vec<S>> {
    if let Some(&cell) = address.iter().find(|&&c| c >= m.len()) {
        return Err(Error::InvalidAddress {
            cell,
            cell_count: m.len(),
        });
    }
    let mut values = boundary_values.to_vec();
    for &i in address {
        values = m.get(i).mul_vec(&values)?;
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{build_sg, build_star_toy, star};
    use crate::scalar::rat;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn d_std() -> SymmetricMatrix<Rational> {
        SymmetricMatrix::complete_graph(3)
    }

    fn m3(rows: [[Rational; 3]; 3]) -> DenseMatrix<Rational> {
        DenseMatrix::from_rows(rows.into_iter().map(Vec::from).collect()).unwrap()
    }

    fn sg2_standard() -> (CellStructure, HarmonicStructureCandidate<Rational>) {
        let s = build_sg(2).unwrap();
        let cand = HarmonicStructureCandidate::new(
            d_std(),
            WeightVector::uniform(3, rat(3, 5)).unwrap(),
            &tol(),
        )
        .unwrap();
        (s, cand)
    }

    #[test]
    fn sg2_three_fifths_is_harmonic() {
        let (s, mut cand) = sg2_standard();
        assert!(!cand.is_verified());
        let check = is_harmonic_structure(&s, &mut cand, &tol()).unwrap();
        assert!(check.holds);
        assert_eq!(check.residual, rat(0, 1));
        assert!(cand.is_verified());
    }

    #[test]
    fn sg2_unit_weights_are_not_harmonic() {
        let s = build_sg(2).unwrap();
        let mut cand = HarmonicStructureCandidate::new(
            d_std(),
            WeightVector::uniform(3, rat(1, 1)).unwrap(),
            &tol(),
        )
        .unwrap();
        let check = is_harmonic_structure(&s, &mut cand, &tol()).unwrap();
        assert!(!check.holds);
        assert!(!cand.is_verified());
        // Schur = (3/5) D, so D - Schur = (2/5) D
        assert_eq!(check.difference[(0, 1)], rat(-2, 5));
        assert_eq!(check.difference[(1, 2)], rat(-2, 5));
        assert_eq!(check.residual, rat(4, 5));
    }

    #[test]
    fn candidate_rejects_invalid_d() {
        let bad = SymmetricMatrix::triangle(rat(-1, 1), rat(1, 1), rat(1, 1));
        let r = WeightVector::uniform(3, rat(1, 1)).unwrap();
        assert!(matches!(
            HarmonicStructureCandidate::new(bad, r, &tol()),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn homogeneous_ratios() {
        assert_eq!(
            solve_homogeneous_ratio(&build_sg(2).unwrap(), &d_std(), &tol()).unwrap(),
            rat(3, 5)
        );
        let toy = build_star_toy();
        let r = solve_homogeneous_ratio(&toy, &d_std(), &tol()).unwrap();
        let mut cand =
            HarmonicStructureCandidate::new(d_std(), WeightVector::uniform(3, r).unwrap(), &tol())
                .unwrap();
        assert!(
            is_harmonic_structure(&toy, &mut cand, &tol())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn asymmetric_d_is_not_proportional() {
        let d = SymmetricMatrix::triangle(rat(1, 1), rat(2, 1), rat(3, 1));
        let err = solve_homogeneous_ratio(&build_sg(2).unwrap(), &d, &tol()).unwrap_err();
        assert!(matches!(err, Error::NotProportional { .. }));
    }

    #[test]
    fn orbit_scaled_structures() {
        let s = build_sg(3).unwrap();
        let homogeneous = solve_homogeneous_ratio(&s, &d_std(), &tol()).unwrap();
        let flat = solve_orbit_scale(&s, &d_std(), &[rat(1, 1), rat(1, 1)], &tol()).unwrap();
        assert!(flat.values().iter().all(|w| *w == homogeneous));

        let r = solve_orbit_scale(&s, &d_std(), &[rat(1, 1), rat(2, 1)], &tol()).unwrap();
        assert_eq!(r.values()[1].clone(), r.values()[0].clone() * rat(2, 1));
        let mut cand = HarmonicStructureCandidate::new(d_std(), r, &tol()).unwrap();
        assert!(is_harmonic_structure(&s, &mut cand, &tol()).unwrap().holds);

        let s4 = build_sg(4).unwrap();
        let r4 =
            solve_orbit_scale(&s4, &d_std(), &[rat(1, 1), rat(3, 1), rat(5, 2)], &tol()).unwrap();
        let mut cand = HarmonicStructureCandidate::new(d_std(), r4, &tol()).unwrap();
        assert!(is_harmonic_structure(&s4, &mut cand, &tol()).unwrap().holds);

        assert!(solve_orbit_scale(&s, &d_std(), &[rat(1, 1)], &tol()).is_err());
        assert!(solve_orbit_scale(&s, &d_std(), &[rat(1, 1), rat(0, 1)], &tol()).is_err());
        assert!(matches!(
            solve_orbit_scale(&build_star_toy(), &d_std(), &[rat(1, 1)], &tol()),
            Err(Error::UnsupportedStructure(_))
        ));
    }

    #[test]
    fn sg2_extension_matrices_and_determinants() {
        let (s, cand) = sg2_standard();
        let m = extension_matrices(&s, &cand, &tol()).unwrap();
        let a0 = m3([
            [rat(1, 1), rat(0, 1), rat(0, 1)],
            [rat(2, 5), rat(2, 5), rat(1, 5)],
            [rat(2, 5), rat(1, 5), rat(2, 5)],
        ]);
        assert_eq!(m.get(0), &a0);
        let report = nondegeneracy_report(&m, &tol());
        assert!(report.is_nondegenerate());
        assert!(report.cells.iter().all(|c| c.determinant == rat(3, 25)));
        assert_eq!(report.min_abs_determinant(), rat(3, 25));
        let ones = vec![rat(1, 1); 3];
        for a in m.iter() {
            assert_eq!(a.mul_vec(&ones).unwrap(), ones);
        }
    }

    #[test]
    fn extension_matrices_need_no_harmonicity() {
        let s = build_sg(2).unwrap();
        let unit = HarmonicStructureCandidate::new(
            d_std(),
            WeightVector::uniform(3, rat(1, 1)).unwrap(),
            &tol(),
        )
        .unwrap();
        let (_, standard) = sg2_standard();
        // uniform rescaling of r rescales H1 only
        assert_eq!(
            extension_matrices(&s, &unit, &tol()).unwrap(),
            extension_matrices(&s, &standard, &tol()).unwrap()
        );
    }

    #[test]
    fn star_toy_is_degenerate_with_witness() {
        let toy = build_star_toy();
        let cand = homogeneous_structure(&toy, &d_std(), &tol()).unwrap();
        assert!(cand.is_verified());
        let m = extension_matrices(&toy, &cand, &tol()).unwrap();
        let odd = [rat(0, 1), rat(1, 1), rat(-1, 1)];
        assert!(m.get(0).mul_vec(&odd).unwrap().iter().all(Zero::is_zero));
        let report = nondegeneracy_report(&m, &tol());
        assert_eq!(
            report.verdict,
            Verdict::Degenerate {
                cell: 0,
                kernel: odd.to_vec()
            }
        );
        assert_eq!(report.cells[0].determinant, rat(0, 1));
    }

    #[test]
    fn identity_matrices_are_nondegenerate() {
        let m = ExtensionMatrices::new(vec![DenseMatrix::<Rational>::identity(3); 4]);
        let report = nondegeneracy_report(&m, &tol());
        assert!(report.is_nondegenerate());
        assert!(report.cells.iter().all(|c| c.determinant == rat(1, 1)));
        let mf = ExtensionMatrices::new(vec![DenseMatrix::<f64>::identity(3); 2]);
        let rf = nondegeneracy_report(&mf, &tol());
        assert!(rf.is_nondegenerate());
        assert!((rf.min_singular_value().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn float_witness_is_a_kernel_vector() {
        let singular = DenseMatrix::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.5, 0.25, 0.25],
            vec![0.5, 0.25, 0.25],
        ])
        .unwrap();
        let report = nondegeneracy_report(&ExtensionMatrices::new(vec![singular.clone()]), &tol());
        let Verdict::Degenerate { cell: 0, kernel } = &report.verdict else {
            panic!("{:?}", report.verdict)
        };
        let img = singular.mul_vec(kernel).unwrap();
        assert!(img.iter().all(|x| x.abs() < 1e-12));
        assert!(kernel.iter().map(|x| x * x).sum::<f64>() > 0.5);
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[rat(0, 1), rat(-1, 2), rat(1, 3)]);
        assert_eq!(v, vec![rat(0, 1), rat(3, 1), rat(-2, 1)]);
    }

    #[test]
    fn cell_constancy() {
        let (s, cand) = sg2_standard();
        let h1 = cand.h1(&s).unwrap();
        let ext = HarmonicExtender::new(&h1, &s, &tol()).unwrap();
        let v = ext.extend(&[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(check_cell_constancy(&s, &v, &tol()).is_empty());
        let c = VertexFunction::constant(6, rat(2, 1));
        assert_eq!(check_cell_constancy(&s, &c, &tol()).len(), 3);

        let toy = build_star_toy();
        let cand = homogeneous_structure(&toy, &d_std(), &tol()).unwrap();
        let ext = HarmonicExtender::new(&cand.h1(&toy).unwrap(), &toy, &tol()).unwrap();
        let v = ext.extend(&[rat(0, 1), rat(1, 1), rat(-1, 1)]).unwrap();
        assert_eq!(check_cell_constancy(&toy, &v, &tol()), vec![(0, rat(0, 1))]);
        assert_eq!(v[star::M], rat(0, 1));
    }

    #[test]
    fn addresses() {
        let (s, cand) = sg2_standard();
        let m = extension_matrices(&s, &cand, &tol()).unwrap();
        let u = [rat(1, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(evaluate_at_address(&m, &[], &u).unwrap(), u.to_vec());
        assert_eq!(
            evaluate_at_address(&m, &[0], &u).unwrap(),
            vec![rat(1, 1), rat(2, 5), rat(2, 5)]
        );
        // row (2/5, 2/5, 1/5) against (1, 2/5, 2/5) = 2/5 + 4/25 + 2/25
        assert_eq!(
            evaluate_at_address(&m, &[0, 0], &u).unwrap(),
            vec![rat(1, 1), rat(16, 25), rat(16, 25)]
        );
        assert_eq!(
            evaluate_at_address(&m, &[3], &u),
            Err(Error::InvalidAddress {
                cell: 3,
                cell_count: 3
            })
        );
    }

    #[test]
    fn report_document() {
        let toy = build_star_toy();
        let cand = homogeneous_structure(&toy, &d_std(), &tol()).unwrap();
        let m = extension_matrices(&toy, &cand, &tol()).unwrap();
        let doc = nondegeneracy_report(&m, &tol()).to_doc(&toy, cand.r());
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["verdict"], "degenerate");
        assert_eq!(json["witness"]["cell"], 0);
        assert_eq!(
            json["witness"]["kernel"],
            serde_json::json!(["0", "1", "-1"])
        );
        assert_eq!(json["mode"], "exact");
        assert!(json["n"].is_null());
    }
}
