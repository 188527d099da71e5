//! The `verify`, `extend`, `orbits` and `render` commands.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use gasket_core::harmonic::{check_cell_constancy, ReportDoc};
use gasket_core::verify::{monotone_chain, verify_maximum_principle, Direction};
use gasket_core::{
    certify, evaluate_at_address, homogeneous_structure, validate_laplacian, CellStructure, Error,
    ExtensionMatrices, HarmonicExtender, HarmonicStructureCandidate, Mode, Rational, Scalar,
    Tolerances, Verdict, VertexFunction,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::inputs::{load_d, load_r, load_structure, parse_address, parse_values};
use crate::svg;

/// Which structure and which `(D, r)` to work with. Without `r` the
/// homogeneous harmonic structure for `D` is used.
#[derive(Debug, Clone, Default)]
pub struct StructureArgs {
    pub structure: String,
    pub d: Option<PathBuf>,
    pub r: Option<PathBuf>,
}

impl StructureArgs {
    fn load(&self) -> CliResult<CellStructure> {
        load_structure(&self.structure)
    }

    fn candidate<S: Scalar>(
        &self,
        s: &CellStructure,
        tol: &Tolerances,
    ) -> CliResult<HarmonicStructureCandidate<S>> {
        let d = load_d::<S>(self.d.as_deref(), s.boundary_size(), tol)?;
        match &self.r {
            Some(path) => {
                let r = load_r::<S>(path, s.cell_count())?;
                Ok(HarmonicStructureCandidate::new(d, r, tol)?)
            }
            None => Ok(homogeneous_structure(s, &d, tol)?),
        }
    }
}

pub fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn texts<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(Scalar::to_text).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyDoc {
    pub structure: String,
    pub mode: Mode,
    pub r: Vec<String>,
    pub samples: usize,
    pub checks: Vec<CheckDoc>,
    pub nondegeneracy: ReportDoc,
    pub passed: bool,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckDoc {
    CheckDoc {
        name,
        passed,
        detail: detail.into(),
    }
}

fn random_boundary<S: Scalar>(k: usize, rng: &mut StdRng) -> Vec<S> {
    loop {
        let u: Vec<i64> = (0..k).map(|_| rng.gen_range(-9..=9)).collect();
        if u.iter().any(|&x| x != u[0]) {
            return u.into_iter().map(S::from_i64).collect();
        }
    }
}

fn chains_from_every_vertex<S: Scalar>(
    h1: &gasket_core::SymmetricMatrix<S>,
    s: &CellStructure,
    v: &VertexFunction<S>,
    tol: &Tolerances,
) -> CliResult<Option<String>> {
    let g = s.adjacency();
    for p in s.interior() {
        if g.neighbours(p)
            .iter()
            .all(|&q| v[q].approx_eq(&v[p], tol.level))
        {
            continue;
        }
        for dir in [Direction::Increasing, Direction::Decreasing] {
            match monotone_chain(h1, s, v, p, dir, tol) {
                Ok(chain)
                    if chain.is_valid(&g) && chain.last().is_some_and(|q| s.is_boundary(q)) => {}
                Ok(chain) => {
                    return Ok(Some(format!("bad chain from {p}: {:?}", chain.vertices())))
                }
                Err(Error::NoChain(reason)) => {
                    return Ok(Some(format!("no {dir:?} chain from {p}: {reason:?}")))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(None)
}

fn verify_generic<S: Scalar>(
    args: &StructureArgs,
    tol: &Tolerances,
    samples: usize,
    seed: u64,
) -> CliResult<VerifyDoc> {
    let s = args.load()?;
    let cand = args.candidate::<S>(&s, tol)?;
    let mut checks = Vec::new();

    let d_report = validate_laplacian(cand.d().dense(), tol)?;
    checks.push(check(
        "d-laplacian",
        d_report.is_ok(),
        format!("{:?}", d_report.violations),
    ));
    let h1 = cand.h1(&s)?;
    let h1_report = validate_laplacian(h1.dense(), tol)?;
    checks.push(check(
        "h1-laplacian",
        h1_report.is_ok(),
        format!("{:?}", h1_report.violations),
    ));

    let r = cand.r().clone();
    let cert = certify(&s, cand, tol)?;
    checks.push(check(
        "harmonic",
        cert.check.holds,
        format!("max |restriction - D| = {}", cert.check.residual.to_text()),
    ));
    let report_doc = cert.report.to_doc(&s, &r);
    let nondegenerate = cert.report.is_nondegenerate();
    checks.push(check(
        "nondegenerate",
        nondegenerate,
        format!("min metric {}", cert.report.min_metric().to_text()),
    ));

    let interior = s.interior();
    let two_connected = if interior.len() >= 3 {
        let ok = s.adjacency().is_two_connected(&interior)?;
        check(
            "interior-two-connected",
            ok,
            if ok {
                String::new()
            } else {
                format!(
                    "cut vertices {:?}",
                    s.adjacency().articulation_points(&interior)
                )
            },
        )
    } else {
        check(
            "interior-two-connected",
            true,
            "skipped: fewer than 3 interior vertices",
        )
    };
    checks.push(two_connected);

    let extender = HarmonicExtender::new(&h1, &s, tol)?;
    let k = s.boundary_size();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut boundary_data: Vec<Vec<S>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect();
    boundary_data.extend((0..samples).map(|_| random_boundary(k, &mut rng)));
    if let Verdict::Degenerate { kernel, .. } = &cert.report.verdict {
        boundary_data.push(kernel.clone());
    }

    let v0: BTreeSet<usize> = s.boundary().iter().copied().collect();
    let (mut max_fail, mut chain_fail, mut flat_fail) = (None, None, None);
    for u in &boundary_data {
        let v = extender.extend(u)?;
        if max_fail.is_none() {
            let out = verify_maximum_principle(&h1, &v0, &v, tol)?;
            if !out.passed {
                max_fail = Some(format!("boundary {:?}: {:?}", texts(u), out.failure));
            }
        }
        if chain_fail.is_none() {
            chain_fail = chains_from_every_vertex(&h1, &s, &v, tol)?
                .map(|m| format!("boundary {:?}: {m}", texts(u)));
        }
        if flat_fail.is_none() {
            let flat = check_cell_constancy(&s, &v, tol);
            if let Some((cell, c)) = flat.first() {
                flat_fail = Some(format!(
                    "boundary {:?}: constant {} on cell {cell}",
                    texts(u),
                    c.to_text()
                ));
            }
        }
    }
    let tried = format!("{} boundary functions", boundary_data.len());
    for (name, fail) in [
        ("maximum-principle", max_fail),
        ("monotone-chains", chain_fail),
        ("no-constant-cell", flat_fail),
    ] {
        checks.push(match fail {
            Some(detail) => check(name, false, detail),
            None => check(name, true, tried.clone()),
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyDoc {
        structure: s.name().to_string(),
        mode: S::MODE,
        r: texts(r.values()),
        samples,
        checks,
        nondegeneracy: report_doc,
        passed,
    })
}

pub fn verify(
    args: &StructureArgs,
    mode: Mode,
    tol: &Tolerances,
    samples: usize,
    seed: u64,
) -> CliResult<VerifyDoc> {
    match mode {
        Mode::Exact => verify_generic::<Rational>(args, tol, samples, seed),
        Mode::Float => verify_generic::<f64>(args, tol, samples, seed),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtendDoc {
    pub structure: String,
    pub mode: Mode,
    pub r: Vec<String>,
    pub harmonic: bool,
    pub boundary: Vec<String>,
    pub values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub address: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_address: Option<Vec<String>>,
    #[serde(skip)]
    pub values_f64: Vec<f64>,
}

fn extend_generic<S: Scalar>(
    args: &StructureArgs,
    tol: &Tolerances,
    boundary: &str,
    address: Option<&str>,
) -> CliResult<(CellStructure, ExtendDoc)> {
    let s = args.load()?;
    let mut cand = args.candidate::<S>(&s, tol)?;
    let harmonic = gasket_core::is_harmonic_structure(&s, &mut cand, tol)?.holds;
    let u = parse_values::<S>(boundary)?;
    if u.len() != s.boundary_size() {
        return Err(CliError::Input(format!(
            "{} boundary values for k = {}",
            u.len(),
            s.boundary_size()
        )));
    }
    let extender = HarmonicExtender::new(&cand.h1(&s)?, &s, tol)?;
    let v = extender.extend(&u)?;
    let (address, at_address) = match address {
        Some(text) => {
            let word = parse_address(text)?;
            let matrices = ExtensionMatrices::from_extender(&extender, &s)?;
            let at = evaluate_at_address(&matrices, &word, &u)?;
            (Some(word), Some(texts(&at)))
        }
        None => (None, None),
    };
    let doc = ExtendDoc {
        structure: s.name().to_string(),
        mode: S::MODE,
        r: texts(cand.r().values()),
        harmonic,
        boundary: texts(&u),
        values: texts(v.values()),
        address,
        at_address,
        values_f64: v.values().iter().map(Scalar::to_f64).collect(),
    };
    Ok((s, doc))
}

/// Harmonic extension of `boundary`, optionally evaluated on the cell named
/// by `address` and drawn to `svg_path`.
pub fn extend(
    args: &StructureArgs,
    mode: Mode,
    tol: &Tolerances,
    boundary: &str,
    address: Option<&str>,
    svg_path: Option<&Path>,
) -> CliResult<ExtendDoc> {
    let (s, doc) = match mode {
        Mode::Exact => extend_generic::<Rational>(args, tol, boundary, address)?,
        Mode::Float => extend_generic::<f64>(args, tol, boundary, address)?,
    };
    if let Some(path) = svg_path {
        fs::write(path, svg::render(&s, Some(&doc.values_f64)))?;
    }
    Ok(doc)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitsDoc {
    pub structure: CellStructure,
    pub orbits: Vec<Vec<usize>>,
}

pub fn orbits(structure: &str) -> CliResult<OrbitsDoc> {
    let s = load_structure(structure)?;
    let orbits = s.cell_orbits()?.orbits().to_vec();
    Ok(OrbitsDoc {
        structure: s,
        orbits,
    })
}

/// Draws the structure, coloured by the extension of `boundary` if given.
pub fn render(
    args: &StructureArgs,
    mode: Mode,
    tol: &Tolerances,
    boundary: Option<&str>,
    svg_path: &Path,
) -> CliResult<()> {
    match boundary {
        Some(b) => {
            extend(args, mode, tol, b, None, Some(svg_path))?;
        }
        None => fs::write(svg_path, svg::render(&args.load()?, None))?,
    }
    Ok(())
}
