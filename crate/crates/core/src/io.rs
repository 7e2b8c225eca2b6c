//! CSV and JSON artifacts: space/spectral samples, manifests, partition tables and Besov reports.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::besov::EquivalenceReport;
use crate::error::{Error, Result};
use crate::gelfand::{GelfandGrid, SpectralFunction};
use crate::heisenberg::{RadialFunction, RadialMesh};
use crate::littlewood_paley::SmoothPartition;

pub const SPACE_HEADER: [&str; 4] = ["r", "t", "re", "im"];
pub const SPECTRAL_HEADER: [&str; 4] = ["lambda", "m", "re", "im"];

/// Scientific notation with 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn q_label(q: f64) -> String {
    if q.is_infinite() { "inf".to_string() } else { fmt_num(q) }
}

/// SHA-256 over the grid serialization, its Plancherel weights and the mesh parameters.
pub fn grid_hash(grid: &GelfandGrid<f64>, mesh: &RadialMesh<f64>) -> String {
    let mut h = Sha256::new();
    h.update(grid.to_json().as_bytes());
    for w in &grid.plancherel_weights {
        h.update(fmt_num(*w).as_bytes());
    }
    h.update(
        format!("mesh n={} r_max={} n_r={} t_max={} n_t={}", mesh.n, fmt_num(mesh.r_max), mesh.n_r(), fmt_num(mesh.t_max), mesh.n_t())
            .as_bytes(),
    );
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_radial_csv<W: Write>(f: &RadialFunction<f64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SPACE_HEADER)?;
    let mesh = &f.mesh;
    for (i, &r) in mesh.r_nodes.iter().enumerate() {
        for (k, &t) in mesh.t_nodes.iter().enumerate() {
            let v = f.at(i, k);
            w.write_record([fmt_num(r), fmt_num(t), fmt_num(v.re), fmt_num(v.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectral_csv<W: Write>(f: &SpectralFunction<f64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SPECTRAL_HEADER)?;
    let grid = &f.grid;
    for (l, &lam) in grid.lambda_nodes.iter().enumerate() {
        for m in 0..grid.n_m() {
            let v = f.at(l, m);
            w.write_record([fmt_num(lam), m.to_string(), fmt_num(v.re), fmt_num(v.im)])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn parse_err(line: u64, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Rows of a four-column CSV with the given header, as `(line, [f64; 4])`.
fn read_rows<R: Read>(input: R, header: [&str; 4]) -> Result<Vec<(u64, [f64; 4])>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_reader(input);
    let mut rows = Vec::new();
    let mut seen_header = false;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if !seen_header {
            let got: Vec<&str> = rec.iter().collect();
            if got != header {
                return Err(parse_err(line, format!("expected header {}, got {}", header.join(","), got.join(","))));
            }
            seen_header = true;
            continue;
        }
        if rec.len() != 4 {
            return Err(parse_err(line, format!("expected 4 fields, got {}", rec.len())));
        }
        let mut vals = [0.0; 4];
        for (k, field) in rec.iter().enumerate() {
            vals[k] = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("column {}: not a finite number: {field:?}", header[k])))?;
        }
        rows.push((line, vals));
    }
    Ok(rows)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + b.abs())
}

/// Reads space samples on mesh nodes; nodes absent from the file are zero.
pub fn read_radial_csv<R: Read>(input: R, mesh: &Arc<RadialMesh<f64>>) -> Result<RadialFunction<f64>> {
    let mut f = RadialFunction::zeros(mesh);
    let nt = mesh.n_t();
    let mid = (nt as f64 - 1.0) / 2.0;
    for (line, [r, t, re, im]) in read_rows(input, SPACE_HEADER)? {
        let i = mesh
            .r_nodes
            .iter()
            .position(|&x| close(r, x))
            .ok_or_else(|| parse_err(line, format!("r = {r} is not a mesh node")))?;
        let k = (t / mesh.t_step + mid).round();
        if !(k >= 0.0 && k < nt as f64) || !close(t, mesh.t_nodes[k as usize]) {
            return Err(parse_err(line, format!("t = {t} is not a mesh node")));
        }
        f.values[i * nt + k as usize] = Complex::new(re, im);
    }
    Ok(f)
}

/// Reads spectral samples on grid nodes; nodes absent from the file are zero.
pub fn read_spectral_csv<R: Read>(input: R, grid: &Arc<GelfandGrid<f64>>) -> Result<SpectralFunction<f64>> {
    let mut f = SpectralFunction::zeros(grid);
    for (line, [lam, m, re, im]) in read_rows(input, SPECTRAL_HEADER)? {
        if m < 0.0 || m.fract() != 0.0 || m as usize > grid.m_max {
            return Err(parse_err(line, format!("m = {m} is not an index in 0..={}", grid.m_max)));
        }
        let l = grid
            .lambda_nodes
            .iter()
            .position(|&x| close(lam, x))
            .ok_or_else(|| parse_err(line, format!("lambda = {lam} is not a grid node")))?;
        f.values[grid.flat(l, m as usize)] = Complex::new(re, im);
    }
    Ok(f)
}

/// Side-car description of a data file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// `"space"`, `"spectral"`, `"kernel"`, ...
    pub kind: String,
    pub data_file: String,
    pub grid_hash: String,
    pub n: usize,
    pub r_max: f64,
    pub n_r: usize,
    pub t_max: f64,
    pub n_t: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub kappa: usize,
    pub m_max: usize,
    #[serde(default)]
    pub metrics: BTreeMap<String, f64>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Manifest {
    pub fn new(kind: &str, data_file: &str, grid: &GelfandGrid<f64>, mesh: &RadialMesh<f64>) -> Self {
        Self {
            kind: kind.to_string(),
            data_file: data_file.to_string(),
            grid_hash: grid_hash(grid, mesh),
            n: grid.n,
            r_max: mesh.r_max,
            n_r: mesh.n_r(),
            t_max: mesh.t_max,
            n_t: mesh.n_t(),
            lambda_min: grid.lambda_min(),
            lambda_max: grid.lambda_max(),
            kappa: grid.kappa,
            m_max: grid.m_max,
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Refuses data produced on a different grid or mesh.
    pub fn check_hash(&self, grid: &GelfandGrid<f64>, mesh: &RadialMesh<f64>) -> Result<()> {
        let expected = grid_hash(grid, mesh);
        if self.grid_hash != expected {
            return Err(Error::GridMismatch(format!(
                "manifest grid hash {} does not match the configured grid {}; the data was produced on a different grid",
                self.grid_hash, expected
            )));
        }
        Ok(())
    }
}

/// `xi, phi_sq, psi_sq_0, …, psi_sq_J` on the given `ξ` values.
pub fn write_partition_csv<W: Write>(part: &SmoothPartition<f64>, xis: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["xi".to_string(), "phi_sq".to_string()];
    header.extend((0..=part.levels).map(|j| format!("psi_sq_{j}")));
    w.write_record(&header)?;
    for &xi in xis {
        let mut row = vec![fmt_num(xi), fmt_num(part.phi_sq(xi))];
        row.extend((0..=part.levels).map(|j| fmt_num(part.psi_sq_j(j, xi))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub const REPORT_HEADER: [&str; 8] =
    ["function_id", "alpha", "q", "r", "wavelet_norm", "modulus_norm", "kfunctional_norm", "atom_norm"];

pub fn write_report_csv<W: Write>(rep: &EquivalenceReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_HEADER)?;
    for row in &rep.rows {
        let v = row.norms.values();
        w.write_record([
            row.function_id.clone(),
            fmt_num(row.params.alpha),
            q_label(row.params.q),
            row.params.r.to_string(),
            fmt_num(v[0]),
            fmt_num(v[1]),
            fmt_num(v[2]),
            fmt_num(v[3]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Summary<'a> {
    weight_mode: &'a str,
    ratio_bound: f64,
    passed: bool,
    max_min_ratio: BTreeMap<String, f64>,
    spreads: &'a [crate::besov::PairSpread],
    notes: &'a [String],
}

/// JSON summary: worst `max/min` per norm pair, every per-parameter spread, notes on skipped inputs.
pub fn report_summary_json(rep: &EquivalenceReport) -> String {
    let s = Summary {
        weight_mode: rep.weight_mode.as_str(),
        ratio_bound: rep.bound,
        passed: rep.passed(),
        max_min_ratio: rep.worst_by_pair().into_iter().collect(),
        spreads: &rep.spreads,
        notes: &rep.notes,
    };
    serde_json::to_string_pretty(&s).expect("summary serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gelfand::GridSpec;

    fn setup() -> (Arc<GelfandGrid<f64>>, Arc<RadialMesh<f64>>) {
        let grid = Arc::new(GelfandGrid::new(GridSpec::default()).unwrap());
        let mesh = Arc::new(RadialMesh::new(1, 10.0, 16, 20.0, 32).unwrap());
        (grid, mesh)
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(-0.1), "-1.0000000000000001e-1");
        assert_eq!(fmt_num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn space_round_trip() {
        let (_, mesh) = setup();
        let f = RadialFunction::from_fn(&mesh, |r, t| Complex::new((-r * r).exp() * t.cos(), 0.1 * t));
        let mut buf = Vec::new();
        write_radial_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("r,t,re,im\n"));
        let g = read_radial_csv(text.as_bytes(), &mesh).unwrap();
        assert_eq!(g.values, f.values);
        assert!(read_radial_csv("r,t,re,im\n".as_bytes(), &mesh).unwrap().values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn spectral_round_trip() {
        let (grid, _) = setup();
        let f = SpectralFunction::from_fn(&grid, |l, m| Complex::new(l.sin(), m as f64));
        let mut buf = Vec::new();
        write_spectral_csv(&f, &mut buf).unwrap();
        let g = read_spectral_csv(buf.as_slice(), &grid).unwrap();
        assert_eq!(g.values, f.values);
    }

    #[test]
    fn malformed_input_reports_line() {
        let (grid, mesh) = setup();
        let r0 = fmt_num(mesh.r_nodes[0]);
        let t0 = fmt_num(mesh.t_nodes[0]);
        let bad = format!("r,t,re,im\n{r0},{t0},1,0\n{r0},{t0},abc,0\n");
        match read_radial_csv(bad.as_bytes(), &mesh) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("re"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_radial_csv("x,t,re,im\n".as_bytes(), &mesh), Err(Error::Parse { line: 1, .. })));
        let off = format!("r,t,re,im\n0.123,{t0},1,0\n");
        assert!(matches!(read_radial_csv(off.as_bytes(), &mesh), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            read_spectral_csv("lambda,m,re,im\n1,99,0,0\n".as_bytes(), &grid),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(read_radial_csv(format!("r,t,re,im\n{r0},{t0},1\n").as_bytes(), &mesh), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn manifest_hash_contract() {
        let (grid, mesh) = setup();
        let man = Manifest::new("spectral", "f.csv", &grid, &mesh);
        let back = Manifest::from_json(&man.to_json()).unwrap();
        assert_eq!(back, man);
        assert!(back.check_hash(&grid, &mesh).is_ok());
        let other = Arc::new(GelfandGrid::new(GridSpec { m_max: 16, ..GridSpec::default() }).unwrap());
        assert!(back.check_hash(&other, &mesh).is_err());
        let mesh2 = RadialMesh::new(1, 10.0, 16, 20.0, 64).unwrap();
        assert!(back.check_hash(&grid, &mesh2).is_err());
        assert_eq!(grid_hash(&grid, &mesh).len(), 64);
    }

    #[test]
    fn partition_table() {
        let part = crate::littlewood_paley::build_partition(2).unwrap();
        let mut buf = Vec::new();
        write_partition_csv(&part, &[0.25, 1.0, 10.0], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("xi,phi_sq,psi_sq_0,psi_sq_1,psi_sq_2\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
