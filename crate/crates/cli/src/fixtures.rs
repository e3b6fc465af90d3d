//! Fixtures shipped inside the binary; `fixtures export` writes them out as model files.

use sparkforge_core::cech_models::{constant_polynomial_system, disk, torus, CechModel, CoefficientSystem, Nerve};
use sparkforge_core::spark_core::{fixtures as sf, SparkComplexTriple};

use crate::schema::{CechSpec, ComplexSpec, Model, ModelFile, ScenarioSpec, TripleSpec};

pub struct Fixture {
    pub name: &'static str,
    pub about: &'static str,
    build: fn() -> Model,
}

impl Fixture {
    pub fn file(&self) -> ModelFile {
        ModelFile { name: Some(self.name.into()), model: (self.build)() }
    }
}

fn triple(t: SparkComplexTriple) -> Model {
    Model::Triple(TripleSpec::of(&t))
}

fn cech(sys: CoefficientSystem) -> Model {
    Model::CechModel(CechSpec::of(&sys))
}

fn torus_nerve() -> Model {
    let m = CechModel::new(torus(1)).expect("torus model");
    Model::Complex(ComplexSpec::of(&m.integral_complex()))
}

fn unipotent_scenario() -> Model {
    let id = || vec![vec!["1".to_string(), "0".to_string()], vec!["0".to_string(), "1".to_string()]];
    let mut g = id();
    g[1][0] = "-2*zb1 + z1*zb2 + 1/2*z2*zb2".into();
    Model::Scenario(ScenarioSpec { n: 2, trunc: 2, hol_cap: None, k: Some(2), g, h: id() })
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "point", about: "triple: F = E = Q, I = Z in degree 0", build: || triple(sf::point()) },
    Fixture { name: "synthetic-T1", about: "triple: F = Q<u,v> -> Q<w>, E = Q<u>, I = Z<alpha> + Z<beta>", build: || triple(sf::synthetic_t1()) },
    Fixture { name: "t1-axiom1-broken", about: "synthetic-T1 with E^1 = Q<w>", build: || triple(sf::t1_axiom1_broken()) },
    Fixture { name: "t1-axiom2-broken", about: "synthetic-T1 with E = 0", build: || triple(sf::t1_axiom2_broken()) },
    Fixture { name: "t1-axiom3-broken", about: "synthetic-T1 with a doubled I^0", build: || triple(sf::t1_axiom3_broken()) },
    Fixture { name: "acyclic", about: "triple: F = E = (Q -> Q), I = 0", build: || triple(sf::acyclic()) },
    Fixture { name: "torus-nerve", about: "complex: integral cochains of the 7-vertex torus nerve", build: torus_nerve },
    Fixture { name: "torus1", about: "cech-model: complex torus, n = 1, on the 7-vertex nerve", build: || cech(torus(1)) },
    Fixture { name: "torus2", about: "cech-model: complex torus, n = 2, on the 7-vertex nerve", build: || cech(torus(2)) },
    Fixture { name: "disk", about: "cech-model: truncated polynomial disk, weight 2", build: || cech(disk(2)) },
    Fixture {
        name: "poly-simplex",
        about: "cech-model: constant polynomial forms of weight 3 on a 2-simplex",
        build: || cech(constant_polynomial_system(Nerve::simplex(2), 3)),
    },
    Fixture { name: "unipotent-2x2", about: "matrix-form-scenario: unipotent g with H = I, n = 2, N = 2", build: unipotent_scenario },
];

/// Looks a fixture up by name, ignoring a leading directory and a `.json` suffix.
pub fn find(name: &str) -> Option<&'static Fixture> {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    let base = base.strip_suffix(".json").unwrap_or(base);
    FIXTURES.iter().find(|f| f.name == base)
}
