//! Byte-stable serialization of every analysis product.
//!
//! All floats are written with 17 significant digits (`{:.16e}`), enough
//! to round-trip any f64 exactly, so identical inputs always serialize
//! to identical bytes. Matrices use one JSON schema everywhere:
//! `{"rows": N, "cols": M, "entries": [[re, im], ...]}` in row-major
//! order; real matrices keep the schema with the imaginary slots pinned
//! to zero.

use crate::bloch::Trajectory;
use crate::endomorphism::{
    basis_element, classify, commuting_j_positions, mapping_image_dimension, verify_basis,
    EndomorphismError, SymmetryClass,
};
use crate::entanglement::BipartiteState;
use crate::gates::{gate_at_time, GateSpec};
use crate::numerics::{determinant, ComplexMatrix, C64};
use crate::realspace::{embed, is_complex_structure, is_special_orthogonal, Convention};

/// 17-significant-digit rendering: round-trips every finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn entries_json(m: &ComplexMatrix) -> String {
    let cells: Vec<String> = m
        .entries()
        .iter()
        .map(|z| format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im)))
        .collect();
    format!("[{}]", cells.join(","))
}

/// The matrix schema shared by every command.
pub fn matrix_json(m: &ComplexMatrix) -> String {
    format!(
        "{{\"rows\":{},\"cols\":{},\"entries\":{}}}",
        m.rows(),
        m.cols(),
        entries_json(m)
    )
}

/// The same schema for an embedded real matrix, with the convention
/// recorded alongside.
pub fn embedding_json(m: &ComplexMatrix, convention: Convention) -> String {
    format!(
        "{{\"rows\":{},\"cols\":{},\"entries\":{},\"convention\":{}}}",
        m.rows(),
        m.cols(),
        entries_json(m),
        json_string(convention.label())
    )
}

/// Matrix as CSV: header `re0,im0,...` per column, one line per row.
pub fn matrix_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..m.cols()).map(|j| format!("re{j},im{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .flat_map(|j| {
                let z = m[(i, j)];
                [fmt_f64(z.re), fmt_f64(z.im)]
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Gate spec: name, characteristic time, eigenphases, and the matrix.
pub fn gate_spec_json(spec: &GateSpec) -> String {
    let phases: Vec<String> = spec.eigenphases.iter().map(|&p| fmt_f64(p)).collect();
    format!(
        "{{\"name\":{},\"tau\":{},\"phases\":[{}],\"matrix\":{}}}",
        json_string(&spec.name),
        fmt_f64(spec.tau),
        phases.join(","),
        matrix_json(&spec.matrix)
    )
}

/// Trajectory CSV: `t,re0,im0,re1,im1,theta,phi,x,y,z,imag_residue`.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,re0,im0,re1,im1,theta,phi,x,y,z,imag_residue\n");
    for s in &traj.samples {
        let a = s.state[(0, 0)];
        let b = s.state[(1, 0)];
        let [x, y, z] = s.point.cart();
        let cells = [
            s.t,
            a.re,
            a.im,
            b.re,
            b.im,
            s.point.theta,
            s.point.phi,
            x,
            y,
            z,
            s.imag_residue,
        ];
        let row: Vec<String> = cells.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Trajectory as a JSON array of sample objects, same fields as the CSV.
pub fn trajectory_json(traj: &Trajectory) -> String {
    let rows: Vec<String> = traj
        .samples
        .iter()
        .map(|s| {
            let a = s.state[(0, 0)];
            let b = s.state[(1, 0)];
            let [x, y, z] = s.point.cart();
            format!(
                "{{\"t\":{},\"re0\":{},\"im0\":{},\"re1\":{},\"im1\":{},\"theta\":{},\
                 \"phi\":{},\"x\":{},\"y\":{},\"z\":{},\"imag_residue\":{}}}",
                fmt_f64(s.t),
                fmt_f64(a.re),
                fmt_f64(a.im),
                fmt_f64(b.re),
                fmt_f64(b.im),
                fmt_f64(s.point.theta),
                fmt_f64(s.point.phi),
                fmt_f64(x),
                fmt_f64(y),
                fmt_f64(z),
                fmt_f64(s.imag_residue)
            )
        })
        .collect();
    format!("{{\"samples\":[{}]}}", rows.join(","))
}

/// One row of the Bell-preparation sweep.
#[derive(Debug, Clone)]
pub struct BellRow {
    pub t: f64,
    pub concurrence: f64,
    pub state: BipartiteState,
}

/// Bell-prep CSV: `t,concurrence,re00,im00,re01,im01,re10,im10,re11,im11`.
pub fn bell_csv(rows: &[BellRow]) -> String {
    let mut out = String::from("t,concurrence,re00,im00,re01,im01,re10,im10,re11,im11\n");
    for r in rows {
        let mut cells = vec![fmt_f64(r.t), fmt_f64(r.concurrence)];
        for k in 0..4 {
            let z = r.state.amplitude(k);
            cells.push(fmt_f64(z.re));
            cells.push(fmt_f64(z.im));
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Bell sweep as a JSON array, same fields as the CSV.
pub fn bell_json(rows: &[BellRow]) -> String {
    let objects: Vec<String> = rows
        .iter()
        .map(|r| {
            let amps: Vec<String> = (0..4)
                .map(|k| {
                    let z = r.state.amplitude(k);
                    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
                })
                .collect();
            format!(
                "{{\"t\":{},\"concurrence\":{},\"amplitudes\":[{}]}}",
                fmt_f64(r.t),
                fmt_f64(r.concurrence),
                amps.join(",")
            )
        })
        .collect();
    format!("{{\"samples\":[{}]}}", objects.join(","))
}

/// Everything the embed analysis reports about one gate at one time.
#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub gate: String,
    pub t: f64,
    pub tau: f64,
    pub raw: bool,
    pub convention: Convention,
    pub matrix: ComplexMatrix,
    pub special_orthogonal: bool,
    pub det: C64,
    pub commutes_with_j: bool,
}

impl EmbedReport {
    /// Evaluate U(t), optionally embed it, and record the SO(2N)
    /// verdict, determinant, and J-commutant verdict. In raw mode the
    /// gate matrix itself is judged against real-orthogonal standards —
    /// the obstruction the embedding exists to remove.
    pub fn analyze(spec: &GateSpec, t: f64, convention: Convention, raw: bool, tol: f64) -> Self {
        let u = gate_at_time(spec, t);
        let matrix = if raw {
            u
        } else {
            embed(&u, convention).matrix
        };
        let special_orthogonal = is_special_orthogonal(&matrix, tol);
        let det = determinant(&matrix).expect("square");
        let commutes_with_j =
            is_complex_structure(&matrix, convention, tol).expect("even dimension");
        EmbedReport {
            gate: spec.name.clone(),
            t,
            tau: spec.tau,
            raw,
            convention,
            matrix,
            special_orthogonal,
            det,
            commutes_with_j,
        }
    }
}

pub fn embed_report_json(r: &EmbedReport) -> String {
    format!(
        "{{\"gate\":{},\"t\":{},\"tau\":{},\"raw\":{},\"convention\":{},\
         \"special_orthogonal\":{},\"det\":[{},{}],\"commutes_with_j\":{},\"matrix\":{}}}",
        json_string(&r.gate),
        fmt_f64(r.t),
        fmt_f64(r.tau),
        r.raw,
        json_string(r.convention.label()),
        r.special_orthogonal,
        fmt_f64(r.det.re),
        fmt_f64(r.det.im),
        r.commutes_with_j,
        matrix_json(&r.matrix)
    )
}

/// The full operator-basis analysis for one order n.
#[derive(Debug, Clone)]
pub struct BasisReport {
    pub n: usize,
    pub count: usize,
    pub max_off_diagonal: f64,
    pub max_diagonal_error: f64,
    pub antisymmetric_indices: Vec<usize>,
    pub commuting_positions: Vec<(usize, Vec<usize>)>,
    pub image_dimension: Option<usize>,
}

impl BasisReport {
    /// Run the orthonormality scan, the symmetry census, the commutant
    /// scan, and (for n >= 2) the image-dimension rank computation.
    pub fn analyze(
        n: usize,
        tol: f64,
        convention: Convention,
    ) -> Result<Self, EndomorphismError> {
        let verify = verify_basis(n, tol)?;
        let mut antisymmetric_indices = Vec::new();
        let mut commuting_positions = Vec::with_capacity(verify.count);
        for i in 0..verify.count {
            let e = basis_element(n, i)?;
            if classify(&e) == SymmetryClass::Antisymmetric {
                antisymmetric_indices.push(i);
            }
            commuting_positions.push((i, commuting_j_positions(&e)));
        }
        let image_dimension = if n >= 2 {
            Some(mapping_image_dimension(n, convention)?)
        } else {
            None
        };
        Ok(BasisReport {
            n,
            count: verify.count,
            max_off_diagonal: verify.max_off_diagonal,
            max_diagonal_error: verify.max_diagonal_error,
            antisymmetric_indices,
            commuting_positions,
            image_dimension,
        })
    }
}

pub fn basis_report_json(r: &BasisReport) -> String {
    let anti: Vec<String> = r.antisymmetric_indices.iter().map(usize::to_string).collect();
    let positions: Vec<String> = r
        .commuting_positions
        .iter()
        .map(|(i, ks)| {
            let ks: Vec<String> = ks.iter().map(usize::to_string).collect();
            format!("\"{i}\":[{}]", ks.join(","))
        })
        .collect();
    let image = match r.image_dimension {
        Some(d) => format!(",\"image_dimension\":{d}"),
        None => String::new(),
    };
    format!(
        "{{\"n\":{},\"count\":{},\"max_off_diagonal\":{},\"max_diagonal_error\":{},\
         \"antisymmetric_count\":{},\"antisymmetric_indices\":[{}],\
         \"commuting_positions\":{{{}}}{}}}",
        r.n,
        r.count,
        fmt_f64(r.max_off_diagonal),
        fmt_f64(r.max_diagonal_error),
        r.antisymmetric_indices.len(),
        anti.join(","),
        positions.join(","),
        image
    )
}
