//! Re-checks a computed run from its manifest.

use std::path::Path;

use crate::error::Result;
use crate::formal_fj::{
    extract_siegel_fourier, precision_floor, solve_fm_space_with, FormalFJTruncation, JacobiSource,
    SiegelFourier, SiegelKey,
};
use crate::io::{deserialize_siegel, read_to_string, sha256_hex, Manifest};
use crate::jacobi::{cusp_subspace, jacobi_precision_ok};
use crate::linalg::echelonize;
use crate::oracles::{dim_siegel_even, saito_kurokawa_lift, siegel_product};

/// Outcome of [`verify_manifest`]: one line per check.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub passed: Vec<String>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, pass: impl Into<String>, fail: impl FnOnce() -> String) {
        if ok {
            self.passed.push(pass.into());
        } else {
            self.failures.push(fail());
        }
    }
}

struct LoadedRun {
    manifest: Manifest,
    elements: Vec<(String, SiegelFourier)>,
}

fn load_run(path: &Path, report: &mut VerifyReport) -> Result<LoadedRun> {
    let manifest = Manifest::load(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut elements = Vec::new();
    for entry in &manifest.elements {
        let file = dir.join(&entry.file);
        let text = read_to_string(&file)?;
        let digest = sha256_hex(text.as_bytes());
        report.check(digest == entry.sha256, format!("{}: checksum", entry.file), || {
            format!("{}: checksum mismatch (manifest {}, file {digest})", entry.file, entry.sha256)
        });
        match deserialize_siegel(&text) {
            Ok(sf) => {
                let consistent = sf.weight() == manifest.weight && sf.precision() == manifest.precision;
                report.check(consistent, format!("{}: header", entry.file), || {
                    format!(
                        "{}: header says weight {} precision {}, manifest says {} and {}",
                        entry.file,
                        sf.weight(),
                        sf.precision(),
                        manifest.weight,
                        manifest.precision
                    )
                });
                elements.push((entry.file.clone(), sf));
            }
            Err(e) => report.failures.push(format!("{}: {}", entry.file, e.with_path(&file))),
        }
    }
    Ok(LoadedRun { manifest, elements })
}

fn describe(key: &SiegelKey) -> String {
    let &(m, n, r) = key;
    format!("(n, r, m) = ({n}, {r}, {m})")
}

/// Runs every invariant check against the run described by `manifest_path`.
///
/// Problems with the run's content are collected in the report; only I/O
/// and manifest parse errors are returned as `Err`. With `with`, the
/// products of the two runs' elements are checked against the space of the
/// summed weight.
pub fn verify_manifest(
    manifest_path: &Path,
    with: Option<&Path>,
    source: &dyn JacobiSource,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let run = load_run(manifest_path, &mut report)?;
    let k = run.manifest.weight;
    let b = run.manifest.precision;

    let expected_dim = match dim_siegel_even(k) {
        Ok(d) => d,
        Err(e) => {
            report.failures.push(e.to_string());
            return Ok(report);
        }
    };
    report.check(
        run.manifest.dimension == expected_dim && run.elements.len() == expected_dim,
        format!("dimension {expected_dim}"),
        || {
            format!(
                "dimension: manifest {} with {} element files, expected {expected_dim}",
                run.manifest.dimension,
                run.elements.len()
            )
        },
    );

    let expansions: Vec<(String, FormalFJTruncation)> = run
        .elements
        .iter()
        .map(|(name, sf)| (name.clone(), sf.to_formal_fj()))
        .collect();
    for (name, e) in &expansions {
        let violation = e.symmetry_violation();
        report.check(violation.is_none(), format!("{name}: symmetry"), || {
            let (n, r, m) = violation.unwrap();
            format!("{name}: symmetry violated at (n, r, m) = ({n}, {r}, {m})")
        });
    }

    if expected_dim == 0 || b < precision_floor(k) {
        if b < precision_floor(k) && expected_dim > 0 {
            report.failures.push(format!("precision {b} below the starting precision {}", precision_floor(k)));
        }
        return Ok(report);
    }

    let fm = solve_fm_space_with(k, b, source)?;
    let recomputed = fm.elements();
    let space = fm.coefficient_space(b);
    for (i, (name, e)) in expansions.iter().enumerate() {
        let v = e.coefficient_vector(b);
        let reduction = space.reduce(&v);
        report.check(reduction.is_member(), format!("{name}: lies in FM_{k} at precision {b}"), || {
            let key = reduction.residual.leading().map(|(key, _)| *key).unwrap();
            format!("{name}: not in FM_{k} at precision {b}; first violated coefficient {}", describe(&key))
        });
        if let Some(expected) = recomputed.get(i) {
            let w = expected.coefficient_vector(b);
            let mismatch = v
                .keys()
                .chain(w.keys())
                .filter(|key| v.coeff(key) != w.coeff(key))
                .min()
                .copied();
            report.check(mismatch.is_none(), format!("{name}: matches recomputation"), || {
                let key = mismatch.unwrap();
                format!(
                    "{name}: coefficient at {} is {}, recomputation gives {}",
                    describe(&key),
                    v.coeff(&key),
                    w.coeff(&key)
                )
            });
        }
    }

    // Saito-Kurokawa lifts of index-1 cusp forms must lie in the space.
    let lift_precision = ((b - 1) * (b - 1) + 1).max(2);
    if jacobi_precision_ok(k, 1, lift_precision) {
        let cusp = cusp_subspace(&source.jacobi_basis(k, 1, lift_precision)?);
        let span = echelonize(expansions.iter().map(|(_, e)| e.coefficient_vector(b)));
        for (j, phi) in cusp.elements().iter().enumerate() {
            let lift = saito_kurokawa_lift(phi, b)?;
            report.check(
                span.contains(&lift.coefficient_vector(b)),
                format!("Saito-Kurokawa lift {j} lies in the span"),
                || format!("Saito-Kurokawa lift {j} of J_{{{k},1}} is not in the span of the run"),
            );
        }
    }

    if let Some(other_path) = with {
        let other = load_run(other_path, &mut report)?;
        let k2 = other.manifest.weight;
        let window = b.min(other.manifest.precision);
        let target_k = k + k2;
        let target = solve_fm_space_with(target_k, window.max(precision_floor(target_k)), source)?
            .coefficient_space(window);
        for (name_a, a) in &expansions {
            for (name_b, sf) in &other.elements {
                let product = siegel_product(&a.truncate(window), &sf.to_formal_fj().truncate(window))?;
                let ok = target.contains(&product.coefficient_vector(window));
                report.check(ok, format!("{name_a} x {name_b} lies in weight {target_k}"), || {
                    format!("product {name_a} x {name_b} is not in the weight-{target_k} space")
                });
                // The product must also survive extraction without symmetry errors.
                if let Err(e) = extract_siegel_fourier(&product) {
                    report.failures.push(format!("product {name_a} x {name_b}: {e}"));
                }
            }
        }
    }

    Ok(report)
}
