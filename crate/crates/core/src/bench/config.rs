//! Run configuration and the plain-text parsers behind it.

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limiter::LimiterParams;
use crate::problems::CaseId;
use crate::scheme::{default_cfl, stability_bound, SchemeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Vtk,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "vtk" => Ok(OutputFormat::Vtk),
            other => Err(Error::config(format!("unknown output format '{other}'"))),
        }
    }
}

/// Everything needed to run one case.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseId,
    pub order: usize,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    /// Run the linear scheme (no limiter).
    pub linear: bool,
    pub characteristic: bool,
    pub alpha: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(case: CaseId, order: usize) -> Self {
        RunConfig {
            case,
            order,
            nx: None,
            ny: None,
            cfl: None,
            t_end: None,
            linear: false,
            characteristic: true,
            alpha: None,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    /// Reads `key = value` lines; `#` starts a comment. A `case` key is required.
    pub fn from_text(text: &str) -> Result<Self> {
        let pairs = parse_key_values(text)?;
        let case = pairs
            .iter()
            .find(|(_, k, _)| k == "case")
            .ok_or_else(|| Error::config("configuration file has no 'case' key"))?;
        let case: CaseId = case.2.parse()?;
        let mut cfg = RunConfig::new(case, 3);
        for (line, key, value) in &pairs {
            cfg.set(key, value).map_err(|e| Error::Parse {
                line: *line,
                message: e.to_string(),
            })?;
        }
        Ok(cfg)
    }

    /// Sets one option from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| -> Result<f64> {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("'{v}' is not a number")))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::config(format!("'{v}' is not finite")))
            }
        };
        let count = |v: &str| -> Result<usize> {
            v.trim()
                .parse()
                .map_err(|_| Error::config(format!("'{v}' is not a cell count")))
        };
        match key {
            "case" => self.case = value.parse()?,
            "order" => self.order = count(value)?,
            "nx" => self.nx = Some(count(value)?),
            "ny" => self.ny = Some(count(value)?),
            "cfl" => self.cfl = Some(num(value)?),
            "tend" | "t_end" => self.t_end = Some(num(value)?),
            "linear" => self.linear = parse_bool(value)?,
            "characteristic" => self.characteristic = parse_bool(value)?,
            "alpha" => self.alpha = Some(num(value)?),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            other => return Err(Error::config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Scheme options; warns when the Courant number exceeds the linear bound.
    pub fn scheme(&self) -> Result<SchemeConfig> {
        let cfl = match self.cfl {
            Some(c) => c,
            None => default_cfl(self.order)?,
        };
        if !(cfl > 0.0) {
            return Err(Error::config(format!("CFL must be positive, got {cfl}")));
        }
        let bound = stability_bound(self.order)?;
        if cfl > bound {
            log::warn!("CFL {cfl} exceeds the linear stability bound {bound} of order {}", self.order);
        }
        let limiter = if self.linear {
            None
        } else {
            let mut p = LimiterParams::default();
            if let Some(a) = self.alpha {
                if !(a > 0.0) {
                    return Err(Error::config(format!("alpha must be positive, got {a}")));
                }
                p.alpha = a;
            }
            Some(p)
        };
        Ok(SchemeConfig {
            order: self.order,
            cfl,
            limiter,
            characteristic: self.characteristic && !self.linear,
        })
    }
}

fn parse_bool(v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::config(format!("'{other}' is not a boolean"))),
    }
}

/// `(line, key, value)` triples of a `key = value` text.
pub fn parse_key_values(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: n + 1,
            message: format!("expected 'key = value', got '{line}'"),
        })?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Parse {
                line: n + 1,
                message: "empty key".into(),
            });
        }
        out.push((n + 1, k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Comma-separated positive integers, e.g. `25,50,100`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::config(format!("'{t}' is not a positive integer"))),
            }
        })
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::config("empty list"));
    }
    Ok(v)
}

/// Mesh list for a convergence study: inverse mesh sizes, at least two.
pub fn parse_mesh_list(s: &str) -> Result<Vec<usize>> {
    let v = parse_usize_list(s)?;
    if v.len() < 2 {
        return Err(Error::config("a convergence study needs at least two meshes"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values_with_comments() {
        let cfg = RunConfig::from_text("# sod run\ncase = sod\norder=2 # low\ncfl = 0.45\nlinear = yes\n").unwrap();
        assert_eq!(cfg.case, CaseId::Sod);
        assert_eq!(cfg.order, 2);
        assert_eq!(cfg.cfl, Some(0.45));
        assert!(cfg.linear);
        assert!(cfg.scheme().unwrap().limiter.is_none());
    }

    #[test]
    fn bad_lines_report_line_number() {
        let e = RunConfig::from_text("case = sod\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = RunConfig::from_text("case = sod\ncolour = red\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn mesh_lists() {
        assert_eq!(parse_mesh_list("25, 50,100").unwrap(), vec![25, 50, 100]);
        assert!(parse_mesh_list("25").is_err());
        assert!(parse_mesh_list("25,x").is_err());
        assert!(parse_mesh_list("0,5").is_err());
    }
}
