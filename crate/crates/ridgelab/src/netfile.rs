//! Line-oriented network files.
//!
//! ```text
//! RIDGENET v1 d=<d> k=<k> n=<n>
//! <a> <omega_1> ... <omega_d> <b>        (n lines)
//! POLY <m>                               (optional)
//! <e_1> ... <e_d> <coefficient>          (m lines)
//! ```
//!
//! Floats are written in shortest round-trip exponent form, so a file
//! reproduces the network bit for bit.

use std::path::Path;

use ridge_core::{Neuron, PolynomialPart, ShallowNetwork};

use crate::error::{AppError, AppResult};

pub const MAGIC: &str = "RIDGENET";
pub const VERSION: &str = "v1";

pub fn serialize(net: &ShallowNetwork) -> String {
    let mut out = format!("{MAGIC} {VERSION} d={} k={} n={}\n", net.dim(), net.degree(), net.width());
    for n in &net.neurons {
        out.push_str(&format!("{:e}", n.a));
        for w in &n.omega {
            out.push_str(&format!(" {w:e}"));
        }
        out.push_str(&format!(" {:e}\n", n.b));
    }
    if let Some(p) = &net.poly {
        out.push_str(&format!("POLY {}\n", p.len()));
        for (e, c) in p.terms() {
            let exps: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{} {c:e}\n", exps.join(" ")));
        }
    }
    out
}

pub fn deserialize(text: &str, path: &Path) -> AppResult<ShallowNetwork> {
    let fail = |line: usize, msg: String| AppError::Format { path: path.to_path_buf(), line, msg };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines.next().ok_or_else(|| fail(1, "empty network file".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some(MAGIC) {
        return Err(fail(hl, format!("not a network file (expected `{MAGIC}` header)")));
    }
    match fields.next() {
        Some(VERSION) => {}
        Some(v) => return Err(fail(hl, format!("unsupported version `{v}`"))),
        None => return Err(fail(hl, "missing version".into())),
    }
    let mut field = |name: &str| -> AppResult<usize> {
        let f = fields.next().ok_or_else(|| fail(hl, format!("missing `{name}=` field")))?;
        f.strip_prefix(name)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail(hl, format!("malformed field `{f}`, expected `{name}=<integer>`")))
    };
    let d = field("d")?;
    let k = field("k")?;
    let n = field("n")?;
    if d == 0 {
        return Err(fail(hl, "dimension must be positive".into()));
    }
    let k = u32::try_from(k).map_err(|_| fail(hl, "degree out of range".into()))?;

    let float = |line: usize, s: &str| -> AppResult<f64> {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| fail(line, format!("invalid number `{s}`")))
    };

    let mut neurons = Vec::with_capacity(n);
    for i in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| fail(hl, format!("expected {n} neurons, found {i}")))?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != d + 2 {
            return Err(fail(ln, format!("expected {} fields per neuron, found {}", d + 2, parts.len())));
        }
        let vals = parts.iter().map(|s| float(ln, s)).collect::<AppResult<Vec<f64>>>()?;
        neurons.push(Neuron::new(vals[0], vals[1..=d].to_vec(), vals[d + 1]));
    }

    let mut poly = None;
    if let Some((pl, l)) = lines.next() {
        let m: usize = l
            .strip_prefix("POLY")
            .map(str::trim)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail(pl, format!("unexpected line `{l}` after the neurons")))?;
        let mut p = PolynomialPart::zero(d);
        for i in 0..m {
            let (ln, l) = lines.next().ok_or_else(|| fail(pl, format!("expected {m} monomials, found {i}")))?;
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != d + 1 {
                return Err(fail(ln, format!("expected {} fields per monomial, found {}", d + 1, parts.len())));
            }
            let exps = parts[..d]
                .iter()
                .map(|s| s.parse::<u32>().map_err(|_| fail(ln, format!("invalid exponent `{s}`"))))
                .collect::<AppResult<Vec<u32>>>()?;
            p.add_term(exps, float(ln, parts[d])?)?;
        }
        poly = Some(p);
        if let Some((ln, l)) = lines.next() {
            return Err(fail(ln, format!("trailing content `{l}`")));
        }
    }
    Ok(ShallowNetwork::with_parts(d, k, neurons, poly)?)
}

pub fn write_network(net: &ShallowNetwork, path: &Path) -> AppResult<()> {
    std::fs::write(path, serialize(net)).map_err(|e| AppError::io(path, e))
}

pub fn read_network(path: &Path) -> AppResult<ShallowNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    deserialize(&text, path)
}
