//! Deterministic JSON, OBJ and SVG writers for [`SceneDocument`].
//!
//! Every coordinate is rounded to 9 significant digits before it is written,
//! so repeated exports and export/import/export cycles are byte-identical.

use std::fmt::Write as _;

use crate::error::{GeomError, Result};
use crate::scene::{Curve3, PlanarShape, SceneDocument};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExportOptions {
    /// Curves flagged `contains_infinity` keep only points within this radius.
    pub clip_radius: f64,
}

impl Default for ExportOptions {
    fn default() -> Self {
        Self { clip_radius: 10.0 }
    }
}

/// `x` rounded to 9 significant digits, with `-0` folded into `0`.
pub fn round9(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(GeomError::NonFinite("exported coordinate"));
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    Ok(if r == 0.0 { 0.0 } else { r })
}

fn fmt_num(x: f64) -> Result<String> {
    let r = round9(x)?;
    let a = r.abs();
    Ok(if r == 0.0 {
        "0".to_string()
    } else if (1e-4..1e9).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    })
}

fn round_points<const N: usize>(pts: &mut [[f64; N]]) -> Result<()> {
    for p in pts.iter_mut() {
        for x in p.iter_mut() {
            *x = round9(*x)?;
        }
    }
    Ok(())
}

fn clip_curve(c: &Curve3, radius: f64) -> Curve3 {
    let mut out = c.clone();
    if c.contains_infinity {
        out.points.retain(|p| p.iter().map(|x| x * x).sum::<f64>().sqrt() <= radius);
        out.closed = false;
    }
    out
}

/// Validated, clipped and rounded copy of the scene.
pub fn normalize_scene(scene: &SceneDocument, opts: &ExportOptions) -> Result<SceneDocument> {
    scene.validate()?;
    let mut doc = scene.clone();
    doc.curves = scene.curves.iter().map(|c| clip_curve(c, opts.clip_radius)).collect();
    for c in &mut doc.curves {
        round_points(&mut c.points)?;
    }
    for m in &mut doc.meshes {
        round_points(&mut m.vertices)?;
    }
    for item in &mut doc.planar {
        match &mut item.shape {
            PlanarShape::Circle { center, radius } => {
                round_points(std::slice::from_mut(center))?;
                *radius = round9(*radius)?;
            }
            PlanarShape::Line { point, direction } => {
                round_points(std::slice::from_mut(point))?;
                round_points(std::slice::from_mut(direction))?;
            }
            PlanarShape::Path { points, .. } => round_points(points)?,
            PlanarShape::Point { at } => round_points(std::slice::from_mut(at))?,
        }
    }
    doc.validate()?;
    Ok(doc)
}

pub fn export_json(scene: &SceneDocument, opts: &ExportOptions) -> Result<Vec<u8>> {
    let doc = normalize_scene(scene, opts)?;
    let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| GeomError::InvalidScene(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// Parses and validates a version-1 scene document.
pub fn import_json(bytes: &[u8]) -> Result<SceneDocument> {
    let doc: SceneDocument = serde_json::from_slice(bytes).map_err(|e| GeomError::InvalidScene(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

/// Wavefront OBJ: one `o` group per curve and mesh, curves as `l` records
/// (closed curves return to their first vertex), meshes as `f` records.
pub fn export_obj(scene: &SceneDocument, opts: &ExportOptions) -> Result<Vec<u8>> {
    let doc = normalize_scene(scene, opts)?;
    let mut s = String::new();
    let mut next = 1usize;
    let vertex = |s: &mut String, p: &[f64; 3]| -> Result<()> {
        writeln!(s, "v {} {} {}", fmt_num(p[0])?, fmt_num(p[1])?, fmt_num(p[2])?).expect("write to string");
        Ok(())
    };
    for (k, c) in doc.curves.iter().enumerate() {
        writeln!(s, "o curve_{k}").expect("write to string");
        for p in &c.points {
            vertex(&mut s, p)?;
        }
        let mut idx: Vec<String> = (next..next + c.points.len()).map(|i| i.to_string()).collect();
        if c.closed {
            idx.push(next.to_string());
        }
        writeln!(s, "l {}", idx.join(" ")).expect("write to string");
        next += c.points.len();
    }
    for (k, m) in doc.meshes.iter().enumerate() {
        writeln!(s, "o mesh_{k}").expect("write to string");
        for p in &m.vertices {
            vertex(&mut s, p)?;
        }
        for t in &m.triangles {
            writeln!(s, "f {} {} {}", next + t[0], next + t[1], next + t[2]).expect("write to string");
        }
        next += m.vertices.len();
    }
    Ok(s.into_bytes())
}

#[derive(Clone, Copy)]
struct BBox {
    min: [f64; 2],
    max: [f64; 2],
}

impl BBox {
    fn empty() -> Self {
        Self {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    fn add(&mut self, p: [f64; 2], pad: f64) {
        for k in 0..2 {
            self.min[k] = self.min[k].min(p[k] - pad);
            self.max[k] = self.max[k].max(p[k] + pad);
        }
    }

    fn is_empty(&self) -> bool {
        self.min[0] > self.max[0]
    }
}

/// SVG of the planar items, one user unit per geometric unit, y pointing up.
/// Lines are drawn across the fitted view box. 3D content is ignored.
pub fn export_svg(scene: &SceneDocument, opts: &ExportOptions) -> Result<Vec<u8>> {
    let doc = normalize_scene(scene, opts)?;
    let mut bb = BBox::empty();
    for item in &doc.planar {
        match &item.shape {
            PlanarShape::Circle { center, radius } => bb.add(*center, *radius),
            PlanarShape::Line { point, .. } => bb.add(*point, 0.0),
            PlanarShape::Path { points, .. } => points.iter().for_each(|p| bb.add(*p, 0.0)),
            PlanarShape::Point { at } => bb.add(*at, 0.0),
        }
    }
    if bb.is_empty() {
        bb = BBox { min: [-1.0, -1.0], max: [1.0, 1.0] };
    }
    let span = (bb.max[0] - bb.min[0]).max(bb.max[1] - bb.min[1]).max(1e-9);
    let margin = 0.05 * span;
    let (x0, x1) = (bb.min[0] - margin, bb.max[0] + margin);
    let (y0, y1) = (bb.min[1] - margin, bb.max[1] + margin);
    let stroke = fmt_num(span / 500.0)?;
    let f = fmt_num;

    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        f(x0)?,
        f(-y1)?,
        f(x1 - x0)?,
        f(y1 - y0)?
    )
    .expect("write to string");
    writeln!(s, "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\">").expect("write to string");
    let reach = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    for item in &doc.planar {
        let class = item.metadata.get("family").or_else(|| item.metadata.get("label")).map(String::as_str).unwrap_or("item");
        match &item.shape {
            PlanarShape::Circle { center, radius } => {
                writeln!(s, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", f(center[0])?, f(center[1])?, f(*radius)?)
            }
            PlanarShape::Line { point, direction } => {
                let n = direction[0].hypot(direction[1]);
                let mid = [(x0 + x1) / 2.0, (y0 + y1) / 2.0];
                let len = reach + (point[0] - mid[0]).hypot(point[1] - mid[1]);
                let d = [direction[0] / n * len, direction[1] / n * len];
                writeln!(
                    s,
                    "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    f(point[0] - d[0])?,
                    f(point[1] - d[1])?,
                    f(point[0] + d[0])?,
                    f(point[1] + d[1])?
                )
            }
            PlanarShape::Path { points, closed } => {
                let pts = points
                    .iter()
                    .map(|p| Ok(format!("{},{}", f(p[0])?, f(p[1])?)))
                    .collect::<Result<Vec<_>>>()?
                    .join(" ");
                let tag = if *closed { "polygon" } else { "polyline" };
                writeln!(s, "<{tag} class=\"{class}\" points=\"{pts}\"/>")
            }
            PlanarShape::Point { at } => writeln!(
                s,
                "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
                f(at[0])?,
                f(at[1])?,
                f(span / 150.0)?
            ),
        }
        .expect("write to string");
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s.into_bytes())
}
