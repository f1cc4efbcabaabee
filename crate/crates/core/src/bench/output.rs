//! CSV and legacy-VTK writers, and a CSV reader for round trips.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::MeshState;
use crate::physics::Physics;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Output variables at the distinct cell centers, row-major.
fn samples(state: &MeshState, physics: &Physics) -> Result<Vec<((f64, f64), Vec<f64>)>> {
    state
        .unique_cells()
        .map(|(i, j)| {
            let u = state.point_value(i, j);
            Ok((state.center(i, j), physics.output_values(&u)?))
        })
        .collect()
}

/// CSV text: header `x,<vars>` (2D: `x,y,<vars>`), one row per cell.
pub fn csv_string(state: &MeshState, physics: &Physics) -> Result<String> {
    let two_d = state.mesh().y.is_some();
    let mut s = String::new();
    s.push('x');
    if two_d {
        s.push_str(",y");
    }
    for n in physics.output_names() {
        s.push(',');
        s.push_str(n);
    }
    s.push('\n');
    for ((x, y), vals) in samples(state, physics)? {
        write!(s, "{x:.15e}").expect("string write");
        if two_d {
            write!(s, ",{y:.15e}").expect("string write");
        }
        for v in vals {
            write!(s, ",{v:.15e}").expect("string write");
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn write_csv(state: &MeshState, physics: &Physics, path: &Path) -> Result<()> {
    fs::write(path, csv_string(state, physics)?).map_err(io_err(path))
}

/// Legacy ASCII VTK structured-points text with one scalar field per variable.
pub fn vtk_string(state: &MeshState, physics: &Physics, title: &str) -> Result<String> {
    let mesh = state.mesh();
    let cells: Vec<_> = state.unique_cells().collect();
    let nx = mesh.x.unique(state.parity()).len();
    let ny = mesh.unique_rows(state.parity()).len();
    let (x0, y0) = state.center(cells[0].0, cells[0].1);
    let dy = mesh.y.map_or(1.0, |a| a.dx());
    let data = samples(state, physics)?;
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\n");
    writeln!(s, "{}", title.replace('\n', " ")).expect("string write");
    s.push_str("ASCII\nDATASET STRUCTURED_POINTS\n");
    writeln!(s, "DIMENSIONS {nx} {ny} 1").expect("string write");
    writeln!(s, "ORIGIN {x0:.15e} {y0:.15e} 0").expect("string write");
    writeln!(s, "SPACING {} {} 1", mesh.x.dx(), dy).expect("string write");
    writeln!(s, "POINT_DATA {}", nx * ny).expect("string write");
    for (k, name) in physics.output_names().iter().enumerate() {
        writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default").expect("string write");
        for (_, vals) in &data {
            writeln!(s, "{:.15e}", vals[k]).expect("string write");
        }
    }
    Ok(s)
}

pub fn write_vtk(state: &MeshState, physics: &Physics, path: &Path, title: &str) -> Result<()> {
    fs::write(path, vtk_string(state, physics, title)?).map_err(io_err(path))
}

/// Parsed CSV: header names and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// Parses numeric CSV text with a header line.
pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, head) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let header: Vec<String> = head.split(',').map(|h| h.trim().to_string()).collect();
    if header.iter().any(|h| h.is_empty()) {
        return Err(Error::Parse {
            line: 1,
            message: "empty column name".into(),
        });
    }
    let mut rows = Vec::new();
    for (n, l) in lines {
        let row: Vec<f64> = l
            .split(',')
            .map(|v| {
                v.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: n + 1,
                    message: format!("'{}' is not a number", v.trim()),
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != header.len() {
            return Err(Error::Parse {
                line: n + 1,
                message: format!("{} fields, header has {}", row.len(), header.len()),
            });
        }
        rows.push(row);
    }
    Ok(CsvTable { header, rows })
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    parse_csv(&fs::read_to_string(path).map_err(io_err(path))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors() {
        assert!(parse_csv("").is_err());
        assert!(matches!(parse_csv("x,u\n1,2\n3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_csv("x,u\n1,zz\n"), Err(Error::Parse { line: 2, .. })));
        let t = parse_csv("x,u\n1,2\n").unwrap();
        assert_eq!(t.column("u"), Some(vec![2.0]));
    }
}
