use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fields::{shapes, ParametricRegion, ParametricSurface, Path, ScalarField, VectorField};
use crate::geometry::BoxDomain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    BoxIntegral,
    LineIntegral,
    SurfaceIntegral,
    Green,
    Gauss,
    Stokes,
}

impl ScenarioKind {
    pub fn is_two_sided(self) -> bool {
        matches!(
            self,
            ScenarioKind::Green | ScenarioKind::Gauss | ScenarioKind::Stokes
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::BoxIntegral => "box",
            ScenarioKind::LineIntegral => "line",
            ScenarioKind::SurfaceIntegral => "surface",
            ScenarioKind::Green => "green",
            ScenarioKind::Gauss => "gauss",
            ScenarioKind::Stokes => "stokes",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a scenario integrates, and over what.
#[derive(Debug, Clone)]
pub enum Setup {
    Box {
        domain: BoxDomain,
        field: ScalarField,
    },
    ScalarLine {
        path: Path,
        field: ScalarField,
    },
    VectorLine {
        path: Path,
        field: VectorField,
    },
    ScalarSurface {
        surface: ParametricSurface,
        field: ScalarField,
    },
    VectorSurface {
        surface: ParametricSurface,
        field: VectorField,
    },
    Green {
        region: ParametricRegion,
        field: VectorField,
    },
    Gauss {
        region: ParametricRegion,
        field: VectorField,
    },
    Stokes {
        surface: ParametricSurface,
        boundary: Path,
        field: VectorField,
    },
}

impl Setup {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            Setup::Box { .. } => ScenarioKind::BoxIntegral,
            Setup::ScalarLine { .. } | Setup::VectorLine { .. } => ScenarioKind::LineIntegral,
            Setup::ScalarSurface { .. } | Setup::VectorSurface { .. } => {
                ScenarioKind::SurfaceIntegral
            }
            Setup::Green { .. } => ScenarioKind::Green,
            Setup::Gauss { .. } => ScenarioKind::Gauss,
            Setup::Stokes { .. } => ScenarioKind::Stokes,
        }
    }
}

/// A named integration problem with a known answer.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub exact: f64,
    /// Where the exact value comes from.
    pub exact_note: &'static str,
    /// Accepted error (and gap) at the default resolution.
    pub tolerance: f64,
    /// Cells per axis (cells along the path for line integrals).
    pub default_m: usize,
    pub setup: Setup,
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        self.setup.kind()
    }

    /// Boundary cells per axis used when none is requested.
    pub fn default_boundary_m(&self, m: usize) -> Option<usize> {
        match self.kind() {
            ScenarioKind::Green | ScenarioKind::Stokes => Some(16 * m),
            ScenarioKind::Gauss => Some(2 * m),
            _ => None,
        }
    }
}

pub fn registry() -> &'static [Scenario] {
    static REGISTRY: OnceLock<Vec<Scenario>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn lookup(name: &str) -> Result<&'static Scenario> {
    registry()
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_owned()))
}

fn rotation2(scale: f64) -> VectorField {
    VectorField::new(2, move |x, o| {
        o[0] = -scale * x[1];
        o[1] = scale * x[0];
    })
    .with_divergence(|_| 0.0)
    .with_curl(move |_, o| o[0] = 2.0 * scale)
}

fn rotation3() -> VectorField {
    VectorField::new(3, |x, o| {
        o[0] = -x[1];
        o[1] = x[0];
        o[2] = 0.0;
    })
    .with_divergence(|_| 0.0)
    .with_curl(|_, o| o.copy_from_slice(&[0.0, 0.0, 2.0]))
}

fn radial3() -> VectorField {
    VectorField::new(3, |x, o| o.copy_from_slice(x))
        .with_divergence(|_| 3.0)
        .with_curl(|_, o| o.fill(0.0))
}

fn build() -> Vec<Scenario> {
    let unit = |n| BoxDomain::unit(n).expect("unit box");
    let sin1 = (0.5f64).sin();
    vec![
        Scenario {
            name: "box.sin.1d",
            description: "sin x on [0,1]",
            exact: 1.0 - 1.0f64.cos(),
            exact_note: "antiderivative -cos x",
            tolerance: 1e-3,
            default_m: 1000,
            setup: Setup::Box {
                domain: unit(1),
                field: ScalarField::new(1, |x| x[0].sin()).with_bound(1.0),
            },
        },
        Scenario {
            name: "box.sinprod.2d",
            description: "sin x sin y on [0,1]^2",
            exact: 4.0 * sin1.powi(4),
            exact_note: "(2 sin^2(1/2))^2, product of 1D antiderivatives",
            tolerance: 1e-3,
            default_m: 128,
            setup: Setup::Box {
                domain: unit(2),
                field: ScalarField::new(2, |x| x[0].sin() * x[1].sin()).with_bound(1.0),
            },
        },
        Scenario {
            name: "box.poly.3d",
            description: "x^2 + y z on [0,1]^3",
            exact: 7.0 / 12.0,
            exact_note: "1/3 + 1/4 by iterated integration",
            tolerance: 1e-2,
            default_m: 32,
            setup: Setup::Box {
                domain: unit(3),
                field: ScalarField::new(3, |x| x[0] * x[0] + x[1] * x[2]).with_bound(2.0),
            },
        },
        Scenario {
            name: "line.circle.scalar",
            description: "1 + x^2 ds around the unit circle",
            exact: 3.0 * PI,
            exact_note: "integral of 1 + cos^2 t over [0, 2 pi]",
            tolerance: 1e-2,
            default_m: 4096,
            setup: Setup::ScalarLine {
                path: shapes::unit_circle(),
                field: ScalarField::new(2, |x| 1.0 + x[0] * x[0]).with_bound(2.0),
            },
        },
        Scenario {
            name: "line.circle.rotation",
            description: "(-y, x) . ds around the unit circle",
            exact: 2.0 * PI,
            exact_note: "integrand is 1 after substitution",
            tolerance: 1e-2,
            default_m: 4096,
            setup: Setup::VectorLine {
                path: shapes::unit_circle(),
                field: rotation2(1.0),
            },
        },
        Scenario {
            name: "line.segment.linear",
            description: "x ds along (t, 0), t in [0,1]",
            exact: 0.5,
            exact_note: "integral of t over [0,1]",
            tolerance: 1e-2,
            default_m: 8,
            setup: Setup::ScalarLine {
                path: shapes::segment(&[0.0, 0.0], &[1.0, 0.0]),
                field: ScalarField::new(2, |x| x[0]).with_bound(1.0),
            },
        },
        Scenario {
            name: "line.segment.gradient",
            description: "grad(xy) . ds along (t, t), t in [0,1]",
            exact: 1.0,
            exact_note: "potential difference xy(1,1) - xy(0,0)",
            tolerance: 1e-2,
            default_m: 1024,
            setup: Setup::VectorLine {
                path: shapes::segment(&[0.0, 0.0], &[1.0, 1.0]),
                field: VectorField::new(2, |x, o| {
                    o[0] = x[1];
                    o[1] = x[0];
                }),
            },
        },
        Scenario {
            name: "surface.sphere.area",
            description: "area of the unit sphere",
            exact: 4.0 * PI,
            exact_note: "4 pi r^2",
            tolerance: 1e-2,
            default_m: 128,
            setup: Setup::ScalarSurface {
                surface: shapes::unit_sphere(),
                field: ScalarField::constant(3, 1.0),
            },
        },
        Scenario {
            name: "surface.sphere.flux",
            description: "flux of (x, y, z) out of the unit sphere",
            exact: 4.0 * PI,
            exact_note: "F . n = 1 on the sphere",
            tolerance: 1e-2,
            default_m: 128,
            setup: Setup::VectorSurface {
                surface: shapes::unit_sphere(),
                field: radial3(),
            },
        },
        Scenario {
            name: "surface.patch.flux",
            description: "flux of (0, 0, 1) through [0,1]^2 at z = 0",
            exact: 1.0,
            exact_note: "constant flux through a unit patch",
            tolerance: 1e-2,
            default_m: 16,
            setup: Setup::VectorSurface {
                surface: shapes::flat_square_patch(),
                field: VectorField::constant(vec![0.0, 0.0, 1.0]),
            },
        },
        Scenario {
            name: "green.disk.rotation",
            description: "Green, F = (-y, x) on the unit disk",
            exact: 2.0 * PI,
            exact_note: "twice the disk area",
            tolerance: 2e-2,
            default_m: 256,
            setup: Setup::Green {
                region: shapes::unit_disk(),
                field: rotation2(1.0),
            },
        },
        Scenario {
            name: "green.disk.gradient",
            description: "Green, F = grad(x^2 y) on the unit disk",
            exact: 0.0,
            exact_note: "conservative field",
            tolerance: 2e-2,
            default_m: 128,
            setup: Setup::Green {
                region: shapes::unit_disk(),
                field: VectorField::gradient_of(
                    &ScalarField::new(2, |x| x[0] * x[0] * x[1]).with_gradient(|x, o| {
                        o[0] = 2.0 * x[0] * x[1];
                        o[1] = x[0] * x[0];
                    }),
                ),
            },
        },
        Scenario {
            name: "green.square.poly",
            description: "Green, F = (-y^2, x y) on the unit square",
            exact: 1.5,
            exact_note: "integral of 3y over [0,1]^2",
            tolerance: 2e-2,
            default_m: 128,
            setup: Setup::Green {
                region: shapes::unit_square(),
                field: VectorField::new(2, |x, o| {
                    o[0] = -x[1] * x[1];
                    o[1] = x[0] * x[1];
                })
                .with_curl(|x, o| o[0] = 3.0 * x[1]),
            },
        },
        Scenario {
            name: "gauss.ball.identity",
            description: "Gauss, F = (x, y, z) on the unit ball",
            exact: 4.0 * PI,
            exact_note: "div F = 3 times the ball volume",
            tolerance: 5e-2,
            default_m: 64,
            setup: Setup::Gauss {
                region: shapes::unit_ball(),
                field: radial3(),
            },
        },
        Scenario {
            name: "gauss.ball.constant",
            description: "Gauss, constant F on the unit ball",
            exact: 0.0,
            exact_note: "divergence-free, zero net flux",
            tolerance: 5e-2,
            default_m: 32,
            setup: Setup::Gauss {
                region: shapes::unit_ball(),
                field: VectorField::constant(vec![1.0, 2.0, 3.0]),
            },
        },
        Scenario {
            name: "gauss.cube.xfield",
            description: "Gauss, F = (x, 0, 0) on the unit cube",
            exact: 1.0,
            exact_note: "div F = 1 times the cube volume",
            tolerance: 5e-2,
            default_m: 32,
            setup: Setup::Gauss {
                region: shapes::unit_cube(),
                field: VectorField::new(3, |x, o| {
                    o[0] = x[0];
                    o[1] = 0.0;
                    o[2] = 0.0;
                })
                .with_divergence(|_| 1.0),
            },
        },
        Scenario {
            name: "stokes.disk.rotation",
            description: "Stokes, F = (-y, x, 0) on the unit disk in z = 0",
            exact: 2.0 * PI,
            exact_note: "curl F = (0, 0, 2) over the disk area",
            tolerance: 2e-2,
            default_m: 256,
            setup: Setup::Stokes {
                surface: shapes::flat_disk(),
                boundary: shapes::unit_circle_3d(),
                field: rotation3(),
            },
        },
        Scenario {
            name: "stokes.hemisphere.rotation",
            description: "Stokes, F = (-y, x, 0) on the upper unit hemisphere",
            exact: 2.0 * PI,
            exact_note: "same boundary circle as the disk",
            tolerance: 5e-2,
            default_m: 256,
            setup: Setup::Stokes {
                surface: shapes::upper_hemisphere(),
                boundary: shapes::unit_circle_3d(),
                field: rotation3(),
            },
        },
        Scenario {
            name: "stokes.disk.gradient",
            description: "Stokes, F = grad(x y z) on the unit disk in z = 0",
            exact: 0.0,
            exact_note: "curl of a gradient vanishes",
            tolerance: 2e-2,
            default_m: 128,
            setup: Setup::Stokes {
                surface: shapes::flat_disk(),
                boundary: shapes::unit_circle_3d(),
                field: VectorField::gradient_of(
                    &ScalarField::new(3, |x| x[0] * x[1] * x[2]).with_gradient(|x, o| {
                        o[0] = x[1] * x[2];
                        o[1] = x[0] * x[2];
                        o[2] = x[0] * x[1];
                    }),
                ),
            },
        },
    ]
}
