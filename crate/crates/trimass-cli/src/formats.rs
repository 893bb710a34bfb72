//! Text formats: rational tokens, matrix dumps, the mesh file layout.

use std::fmt::Write as _;

use trimass::exact::{rat, Rat, RatMat};
use trimass::linalg::Mat;
use trimass::mesh::Mesh;

/// Parse `a` or `a/b` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, String> {
    let parse_int = |part: &str| {
        part.trim()
            .parse::<i64>()
            .map_err(|_| format!("bad rational `{text}`"))
    };
    match text.split_once('/') {
        Some((a, b)) => {
            let num = parse_int(a)?;
            let den = parse_int(b)?;
            if den == 0 {
                return Err(format!("bad rational `{text}`: zero denominator"));
            }
            Ok(rat(num, den))
        }
        None => Ok(rat(parse_int(text)?, 1)),
    }
}

/// One rational as a `num/den` token, denominator always present.
pub fn rat_token(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `n` or `a..b` (inclusive) into an ascending list.
pub fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let parse_int = |part: &str| {
        part.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad range `{text}`"))
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let lo = parse_int(a)?;
            let hi = parse_int(b)?;
            if lo > hi {
                return Err(format!("bad range `{text}`: empty"));
            }
            Ok((lo, hi))
        }
        None => {
            let v = parse_int(text)?;
            Ok((v, v))
        }
    }
}

/// Parse a level list: a range `a..b` or comma-separated values, ascending.
pub fn parse_levels(text: &str) -> Result<Vec<usize>, String> {
    let list: Vec<usize> = if text.contains("..") {
        let (lo, hi) = parse_range(text)?;
        (lo..=hi).collect()
    } else {
        text.split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad level list `{text}`"))
            })
            .collect::<Result<_, _>>()?
    };
    if list.is_empty() {
        return Err(format!("bad level list `{text}`: empty"));
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("bad level list `{text}`: must increase"));
    }
    Ok(list)
}

pub fn push_rat_matrix(out: &mut String, name: &str, m: &RatMat) {
    let _ = writeln!(
        out,
        "matrix {name} rows={} cols={} layout=rational",
        m.len(),
        m[0].len()
    );
    for row in m {
        let tokens: Vec<String> = row.iter().map(rat_token).collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
}

pub fn push_float_matrix(out: &mut String, name: &str, m: &Mat) {
    let _ = writeln!(
        out,
        "matrix {name} rows={} cols={} layout=float",
        m.nrows(),
        m.ncols()
    );
    for i in 0..m.nrows() {
        let tokens: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
}

/// Mesh text layout: a `$vertices` section with a count and `x y` lines,
/// then a `$triangles` section with a count and three 1-based vertex ids
/// per line, corners counterclockwise. Blank lines and `#` comments are
/// skipped.
pub fn read_mesh_text(text: &str) -> Result<Mesh, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| format!("mesh file ended early, expected {what}"))
    };

    let header = next("$vertices")?;
    if header != "$vertices" {
        return Err(format!("expected $vertices, found `{header}`"));
    }
    let nv: usize = next("vertex count")?
        .parse()
        .map_err(|_| "bad vertex count".to_string())?;
    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let line = next("a vertex line")?;
        let mut parts = line.split_whitespace();
        let x: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("bad vertex line {}", i + 1))?;
        let y: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("bad vertex line {}", i + 1))?;
        vertices.push((x, y));
    }

    let header = next("$triangles")?;
    if header != "$triangles" {
        return Err(format!("expected $triangles, found `{header}`"));
    }
    let nt: usize = next("triangle count")?
        .parse()
        .map_err(|_| "bad triangle count".to_string())?;
    let mut triangles = Vec::with_capacity(nt);
    for i in 0..nt {
        let line = next("a triangle line")?;
        let mut ids = [0usize; 3];
        let mut parts = line.split_whitespace();
        for slot in &mut ids {
            let id: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| format!("bad triangle line {}", i + 1))?;
            if id == 0 {
                return Err(format!("triangle line {} uses 0; ids are 1-based", i + 1));
            }
            *slot = id - 1;
        }
        triangles.push(ids);
    }

    Mesh::new(vertices, triangles).map_err(|e| e.to_string())
}

pub fn write_mesh_text(mesh: &Mesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "$vertices");
    let _ = writeln!(out, "{}", mesh.n_vertices());
    for i in 0..mesh.n_vertices() {
        let p = mesh.vertex(i);
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    let _ = writeln!(out, "$triangles");
    let _ = writeln!(out, "{}", mesh.n_triangles());
    for t in 0..mesh.n_triangles() {
        let [a, b, c] = mesh.triangle(t);
        let _ = writeln!(out, "{} {} {}", a + 1, b + 1, c + 1);
    }
    out
}
