//! Scene documents: sampled curves, triangle meshes and planar primitives,
//! plus builders for the standard scenes.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complex::{ClosedPath, Complex};
use crate::error::{GeomError, Result};
use crate::hopf::{self, HopfConvention};
use crate::inversion::{apollonian_families, Family, GeneralizedCircle};
use crate::stereo::S2Point;

pub const SCENE_VERSION: u32 = 1;

pub type Metadata = BTreeMap<String, String>;

/// Polyline in R^3. Closed curves do not repeat their first point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve3 {
    pub points: Vec<[f64; 3]>,
    pub closed: bool,
    pub metadata: Metadata,
    pub contains_infinity: bool,
}

impl Curve3 {
    pub fn open(points: Vec<[f64; 3]>) -> Self {
        Self {
            points,
            closed: false,
            metadata: Metadata::new(),
            contains_infinity: false,
        }
    }

    pub fn closed(points: Vec<[f64; 3]>) -> Self {
        Self {
            closed: true,
            ..Self::open(points)
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(GeomError::InvalidScene("curve needs at least 2 points".into()));
        }
        if self.points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeomError::InvalidScene("curve has a non-finite coordinate".into()));
        }
        if self.closed && self.points.first() == self.points.last() {
            return Err(GeomError::InvalidScene("closed curve repeats its first point".into()));
        }
        Ok(())
    }
}

/// Indexed triangle mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub metadata: Metadata,
}

impl Mesh {
    pub fn validate(&self) -> Result<()> {
        if self.vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(GeomError::InvalidScene("mesh has a non-finite vertex".into()));
        }
        for t in &self.triangles {
            if t.iter().any(|&i| i >= self.vertices.len()) {
                return Err(GeomError::InvalidScene("triangle index out of range".into()));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(GeomError::InvalidScene("degenerate triangle".into()));
            }
        }
        Ok(())
    }
}

/// A 2D primitive for planar figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanarShape {
    Circle { center: [f64; 2], radius: f64 },
    Line { point: [f64; 2], direction: [f64; 2] },
    Path { points: Vec<[f64; 2]>, closed: bool },
    Point { at: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarItem {
    #[serde(flatten)]
    pub shape: PlanarShape,
    pub metadata: Metadata,
}

impl PlanarItem {
    pub fn new(shape: PlanarShape) -> Self {
        Self {
            shape,
            metadata: Metadata::new(),
        }
    }

    pub fn from_locus(g: &GeneralizedCircle) -> Self {
        let shape = match g.center_radius() {
            Some((c, r)) => PlanarShape::Circle {
                center: [c.re, c.im],
                radius: r,
            },
            None => {
                let foot = g.sample(1, 0.0)[0];
                let dir = g.beta * Complex::new(0.0, 1.0);
                PlanarShape::Line {
                    point: [foot.re, foot.im],
                    direction: [dir.re, dir.im],
                }
            }
        };
        Self::new(shape)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match &self.shape {
            PlanarShape::Circle { center, radius } => center.iter().all(|x| x.is_finite()) && radius.is_finite() && *radius > 0.0,
            PlanarShape::Line { point, direction } => {
                point.iter().chain(direction).all(|x| x.is_finite()) && direction.iter().any(|&x| x != 0.0)
            }
            PlanarShape::Path { points, .. } => points.len() >= 2 && points.iter().flatten().all(|x| x.is_finite()),
            PlanarShape::Point { at } => at.iter().all(|x| x.is_finite()),
        };
        if ok {
            Ok(())
        } else {
            Err(GeomError::InvalidScene(format!("malformed planar primitive {:?}", self.shape)))
        }
    }
}

/// Exportable bundle of geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneDocument {
    pub version: u32,
    pub curves: Vec<Curve3>,
    pub meshes: Vec<Mesh>,
    pub planar: Vec<PlanarItem>,
    pub annotations: Metadata,
}

impl Default for SceneDocument {
    fn default() -> Self {
        Self {
            version: SCENE_VERSION,
            curves: Vec::new(),
            meshes: Vec::new(),
            planar: Vec::new(),
            annotations: Metadata::new(),
        }
    }
}

impl SceneDocument {
    pub fn validate(&self) -> Result<()> {
        if self.version != SCENE_VERSION {
            return Err(GeomError::InvalidScene(format!("unsupported version {}", self.version)));
        }
        self.curves.iter().try_for_each(Curve3::validate)?;
        self.meshes.iter().try_for_each(Mesh::validate)?;
        self.planar.iter().try_for_each(PlanarItem::validate)
    }
}

fn check_grid(nu: usize, nv: usize) -> Result<()> {
    if nu < 8 || nv < 8 {
        return Err(GeomError::InvalidArgument(format!("grid {nu}x{nv} is below 8x8")));
    }
    Ok(())
}

/// Torus of revolution about the x3 axis on a periodic `(theta, psi)` grid.
pub fn sample_torus_mesh(major: f64, minor: f64, nu: usize, nv: usize) -> Result<Mesh> {
    if !(minor > 0.0 && major > minor) || !major.is_finite() {
        return Err(GeomError::InvalidArgument(format!(
            "torus radii must satisfy R > r > 0, got R = {major}, r = {minor}"
        )));
    }
    check_grid(nu, nv)?;
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let theta = 2.0 * PI * i as f64 / nu as f64;
        for j in 0..nv {
            let psi = 2.0 * PI * j as f64 / nv as f64;
            let w = major + minor * psi.cos();
            vertices.push([w * theta.cos(), w * theta.sin(), minor * psi.sin()]);
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    let mut metadata = Metadata::new();
    metadata.insert("kind".into(), "torus".into());
    metadata.insert("major_radius".into(), major.to_string());
    metadata.insert("minor_radius".into(), minor.to_string());
    Ok(Mesh {
        vertices,
        triangles,
        metadata,
    })
}

/// Unit sphere on a latitude/longitude grid with single pole vertices.
pub fn sample_sphere_mesh(n_lon: usize, n_lat: usize) -> Result<Mesh> {
    check_grid(n_lon, n_lat)?;
    let mut vertices = vec![[0.0, 0.0, -1.0]];
    for k in 1..n_lat {
        let phi = -PI / 2.0 + PI * k as f64 / n_lat as f64;
        for i in 0..n_lon {
            let theta = 2.0 * PI * i as f64 / n_lon as f64;
            vertices.push([phi.cos() * theta.cos(), phi.cos() * theta.sin(), phi.sin()]);
        }
    }
    vertices.push([0.0, 0.0, 1.0]);
    let top = vertices.len() - 1;
    let ring = |k: usize, i: usize| 1 + (k - 1) * n_lon + i % n_lon;
    let mut triangles = Vec::new();
    for i in 0..n_lon {
        triangles.push([0, ring(1, i + 1), ring(1, i)]);
        for k in 1..n_lat - 1 {
            triangles.push([ring(k, i), ring(k, i + 1), ring(k + 1, i + 1)]);
            triangles.push([ring(k, i), ring(k + 1, i + 1), ring(k + 1, i)]);
        }
        triangles.push([ring(n_lat - 1, i), ring(n_lat - 1, i + 1), top]);
    }
    let mut metadata = Metadata::new();
    metadata.insert("kind".into(), "base-sphere".into());
    Ok(Mesh {
        vertices,
        triangles,
        metadata,
    })
}

fn convention_annotations(conv: &HopfConvention) -> Metadata {
    let mut a = Metadata::new();
    a.insert("variant".into(), conv.variant.name().into());
    a.insert("chart".into(), hopf::CHART_DESCRIPTION.into());
    a.insert("orientation_sign".into(), hopf::LINK_SIGN.to_string());
    a
}

/// Projected fibers over the given base points.
pub fn fiber_scene(conv: &HopfConvention, bases: &[S2Point], samples: usize, clip_radius: f64) -> Result<SceneDocument> {
    let mut doc = SceneDocument {
        annotations: convention_annotations(conv),
        ..SceneDocument::default()
    };
    for b in bases {
        let f = hopf::fiber(conv, b, samples)?;
        doc.curves.push(hopf::project_fiber(&f, clip_radius));
    }
    Ok(doc)
}

/// Nested latitudinal tori: for each latitude, the mesh of the fitted torus
/// and the projected fiber threads lying on it.
pub fn tori_scene(latitudes: &[f64], fibers_per_torus: usize, samples: usize) -> Result<SceneDocument> {
    let conv = HopfConvention::default();
    let mut doc = SceneDocument {
        annotations: convention_annotations(&conv),
        ..SceneDocument::default()
    };
    for &rho in latitudes {
        let lt = hopf::latitudinal_torus(rho, fibers_per_torus, samples)?;
        let mut mesh = sample_torus_mesh(lt.torus.major, lt.torus.minor, 64, 32)?;
        mesh.metadata.insert("latitude".into(), rho.to_string());
        mesh.metadata.insert("fit_residual".into(), format!("{:e}", lt.torus.residual));
        mesh.metadata.insert("major_radius".into(), lt.torus.major.to_string());
        mesh.metadata.insert("minor_radius".into(), lt.torus.minor.to_string());
        doc.meshes.push(mesh);
        doc.curves.extend(lt.curves);
    }
    Ok(doc)
}

/// Both Apollonian families of a point pair as planar primitives.
pub fn apollonius_scene(p: Complex, p2: Complex, count: usize) -> Result<SceneDocument> {
    let cfg = apollonian_families(p, p2, count, count)?;
    let mut doc = SceneDocument::default();
    for (family, g) in cfg.circles() {
        let mut item = PlanarItem::from_locus(g);
        let name = match family {
            Family::Elliptic => "elliptic",
            Family::Hyperbolic => "hyperbolic",
        };
        item.metadata.insert("family".into(), name.into());
        doc.planar.push(item);
    }
    for (label, z) in [("p", p), ("p2", p2)] {
        let mut item = PlanarItem::new(PlanarShape::Point { at: [z.re, z.im] });
        item.metadata.insert("label".into(), label.into());
        doc.planar.push(item);
    }
    Ok(doc)
}

/// A closed complex path as a planar primitive.
pub fn path_item(path: &ClosedPath) -> PlanarItem {
    PlanarItem::new(PlanarShape::Path {
        points: path.samples().iter().map(|z| [z.re, z.im]).collect(),
        closed: true,
    })
}

/// Hypercube edges on S^3 seen through the stereographic chart.
pub fn hypercube_document(samples_per_edge: usize) -> SceneDocument {
    let mut doc = SceneDocument {
        curves: crate::stereo::hypercube_scene(samples_per_edge),
        ..SceneDocument::default()
    };
    doc.annotations.insert("chart".into(), hopf::CHART_DESCRIPTION.into());
    doc
}

/// Base sphere mesh together with the chart used to read base points.
pub fn base_sphere_document() -> SceneDocument {
    let mut doc = SceneDocument::default();
    doc.meshes.push(sample_sphere_mesh(48, 24).expect("fixed grid is valid"));
    doc.annotations.insert("chart".into(), "unit sphere S^2; base (x, y, z) has Riemann value (x + iy)/(1 - z)".into());
    doc
}
