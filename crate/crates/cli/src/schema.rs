//! Versioned JSON model files. Every scalar is an exact string ("3", "-1/2", "1/2-3i").

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use sparkforge_core::cech_models::{CoefficientSystem, LocalAlgebra, Nerve, QVec, SimplexId};
use sparkforge_core::chern_weil::{Ctx, MatrixForm, PolyForm, Scenario};
use sparkforge_core::complexes::{CochainComplex, ComplexMorphism, Ring};
use sparkforge_core::exact_linalg::QiMatrix;
use sparkforge_core::scalar::{parse_qi, Qi};
use sparkforge_core::spark_core::SparkComplexTriple;

use crate::CliError;

pub const FORMAT: u32 = 1;

/// Sparse matrix entries `[row, col, value]`.
pub type Triplets = Vec<(usize, usize, String)>;
/// Sparse vector entries `[index, value]`.
pub type Entries = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub ring: String,
    /// Rank in each degree; missing degrees below the top are zero.
    pub degrees: BTreeMap<usize, usize>,
    /// `diff[k]` is `d^k : C^k -> C^{k+1}`.
    #[serde(default)]
    pub diff: BTreeMap<usize, Triplets>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    #[serde(rename = "F")]
    pub f: ComplexSpec,
    #[serde(rename = "E")]
    pub e: ComplexSpec,
    #[serde(rename = "I")]
    pub i: ComplexSpec,
    /// `E^k -> F^k`.
    pub incl: BTreeMap<usize, Triplets>,
    /// `I^k -> F^k`.
    pub psi: BTreeMap<usize, Triplets>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSpec {
    pub bideg: Vec<(usize, usize)>,
    pub del: Triplets,
    pub delbar: Triplets,
    /// Nonzero products of basis elements: `[i, j, product]`.
    pub wedge: Vec<(usize, usize, Entries)>,
    pub one: Entries,
    pub lattice: Vec<usize>,
    /// Bases of holomorphic `(j, 0)` forms, indexed by `j`.
    pub holomorphic: Vec<Vec<Entries>>,
    /// Restrictions from codimension-one faces, keyed like `coeffs`.
    #[serde(default)]
    pub restrict: BTreeMap<String, Triplets>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechSpec {
    pub label: String,
    pub n_vertices: usize,
    pub nerve: Vec<Vec<usize>>,
    #[serde(default = "yes")]
    pub wedge_exact: bool,
    /// Keyed by the simplex's vertices joined with commas.
    pub coeffs: BTreeMap<String, LocalSpec>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub n: usize,
    pub trunc: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hol_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Rows of entries in the form syntax, e.g. `"1 + z1*zb2"`.
    pub g: Vec<Vec<String>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Complex(ComplexSpec),
    Triple(TripleSpec),
    CechModel(CechSpec),
    Scenario(ScenarioSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub name: Option<String>,
    pub model: Model,
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Complex(_) => "complex",
            Model::Triple(_) => "triple",
            Model::CechModel(_) => "cech-model",
            Model::Scenario(_) => "matrix-form-scenario",
        }
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn payload<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| malformed(e.to_string()))
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let Value::Object(mut obj) = v else { return Err(malformed("model file must be a JSON object")) };
        match obj.remove("format") {
            Some(Value::Number(n)) if n.as_u64() == Some(FORMAT as u64) => {}
            Some(other) => return Err(malformed(format!("unsupported format version {other}"))),
            None => return Err(malformed("missing \"format\"")),
        }
        let kind = match obj.remove("kind") {
            Some(Value::String(s)) => s,
            _ => return Err(malformed("missing \"kind\"")),
        };
        let name = match obj.remove("name") {
            Some(Value::String(s)) => Some(s),
            None => None,
            Some(_) => return Err(malformed("\"name\" must be a string")),
        };
        let rest = Value::Object(obj);
        let model = match kind.as_str() {
            "complex" => Model::Complex(payload(rest)?),
            "triple" => Model::Triple(payload(rest)?),
            "cech-model" => Model::CechModel(payload(rest)?),
            "matrix-form-scenario" => Model::Scenario(payload(rest)?),
            other => return Err(malformed(format!("unknown kind {other:?}"))),
        };
        Ok(ModelFile { name, model })
    }

    pub fn to_value(&self) -> Value {
        let body = match &self.model {
            Model::Complex(c) => serde_json::to_value(c),
            Model::Triple(t) => serde_json::to_value(t),
            Model::CechModel(c) => serde_json::to_value(c),
            Model::Scenario(s) => serde_json::to_value(s),
        }
        .expect("model specs serialize");
        let Value::Object(body) = body else { unreachable!("specs are structs") };
        let mut out = Map::new();
        out.insert("format".into(), FORMAT.into());
        out.insert("kind".into(), self.model.kind().into());
        if let Some(n) = &self.name {
            out.insert("name".into(), n.clone().into());
        }
        out.extend(body);
        Value::Object(out)
    }

    /// Pretty for small models; large Cech models are written compactly.
    pub fn to_json(&self) -> String {
        let v = self.to_value();
        let mut s = serde_json::to_string(&v).expect("values serialize");
        if s.len() < 1 << 15 {
            s = serde_json::to_string_pretty(&v).expect("values serialize");
        }
        s.push('\n');
        s
    }
}

// ---- scalars and matrices

fn scalar(s: &str) -> Result<Qi, CliError> {
    parse_qi(s.trim()).map_err(|e| malformed(e.to_string()))
}

fn matrix(rows: usize, cols: usize, ts: &Triplets, what: &str) -> Result<QiMatrix, CliError> {
    let mut out = Vec::with_capacity(ts.len());
    for (i, j, v) in ts {
        if *i >= rows || *j >= cols {
            return Err(malformed(format!("{what}: entry ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
        out.push((*i, *j, scalar(v)?));
    }
    Ok(QiMatrix::from_triplets(rows, cols, out))
}

fn triplets(m: &QiMatrix) -> Triplets {
    m.triplets().map(|(i, j, v)| (i, j, v.to_string())).collect()
}

fn qvec(es: &Entries, dim: usize, what: &str) -> Result<QVec, CliError> {
    let mut v = QVec::new();
    for (i, c) in es {
        if *i >= dim {
            return Err(malformed(format!("{what}: index {i} outside dimension {dim}")));
        }
        let c = scalar(c)?;
        if c != Qi::from_int(0) {
            v.insert(*i, c);
        }
    }
    Ok(v)
}

fn entries(v: &QVec) -> Entries {
    v.iter().map(|(i, c)| (*i, c.to_string())).collect()
}

// ---- complexes and triples

impl ComplexSpec {
    pub fn build(&self) -> Result<CochainComplex, CliError> {
        let ring = Ring::parse(&self.ring).ok_or_else(|| malformed(format!("unknown ring {:?}", self.ring)))?;
        let len = self.degrees.keys().next_back().map_or(0, |k| k + 1);
        let dims: Vec<usize> = (0..len).map(|k| self.degrees.get(&k).copied().unwrap_or(0)).collect();
        if let Some(k) = self.diff.keys().find(|&&k| k + 1 >= len) {
            return Err(malformed(format!("differential d^{k} leaves the stored degrees")));
        }
        let empty = Triplets::new();
        let d = (0..len.saturating_sub(1))
            .map(|k| matrix(dims[k + 1], dims[k], self.diff.get(&k).unwrap_or(&empty), &format!("d^{k}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CochainComplex::new(ring, dims, d)?)
    }

    pub fn of(c: &CochainComplex) -> Self {
        let degrees = c.dims().iter().copied().enumerate().collect();
        let diff = (0..c.len().saturating_sub(1)).map(|k| (k, triplets(&c.diff(k)))).filter(|(_, t)| !t.is_empty()).collect();
        ComplexSpec { ring: c.ring().name().into(), degrees, diff }
    }
}

fn morphism(s: &CochainComplex, t: &CochainComplex, maps: &BTreeMap<usize, Triplets>, what: &str) -> Result<ComplexMorphism, CliError> {
    let n = s.len().max(t.len());
    if let Some(k) = maps.keys().find(|&&k| k >= n) {
        return Err(malformed(format!("{what}: degree {k} is outside both complexes")));
    }
    let empty = Triplets::new();
    let m = (0..n).map(|k| matrix(t.dim(k), s.dim(k), maps.get(&k).unwrap_or(&empty), &format!("{what}^{k}"))).collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexMorphism::new(s.clone(), t.clone(), m)?)
}

fn maps_of(m: &ComplexMorphism, n: usize) -> BTreeMap<usize, Triplets> {
    (0..n).map(|k| (k, triplets(&m.map(k)))).filter(|(_, t)| !t.is_empty()).collect()
}

impl TripleSpec {
    pub fn build(&self) -> Result<SparkComplexTriple, CliError> {
        let (f, e, i) = (self.f.build()?, self.e.build()?, self.i.build()?);
        let incl = morphism(&e, &f, &self.incl, "incl")?;
        let psi = morphism(&i, &f, &self.psi, "psi")?;
        Ok(SparkComplexTriple::new(incl, psi)?)
    }

    pub fn of(t: &SparkComplexTriple) -> Self {
        TripleSpec {
            f: ComplexSpec::of(&t.f),
            e: ComplexSpec::of(&t.e),
            i: ComplexSpec::of(&t.i),
            incl: maps_of(&t.incl, t.e.len().max(t.f.len())),
            psi: maps_of(&t.psi, t.i.len().max(t.f.len())),
        }
    }
}

// ---- Cech models

fn key(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_key(k: &str) -> Result<Vec<usize>, CliError> {
    k.split(',').map(|v| v.trim().parse::<usize>().map_err(|_| malformed(format!("bad simplex key {k:?}")))).collect()
}

impl CechSpec {
    pub fn build(&self) -> Result<CoefficientSystem, CliError> {
        let nerve = Nerve::from_simplices(self.n_vertices, self.nerve.clone())?;
        let mut local = BTreeMap::new();
        let mut codim1: BTreeMap<(SimplexId, SimplexId), QiMatrix> = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for (k, l) in &self.coeffs {
            let s = parse_key(k)?;
            let id = nerve.id_of(&s).ok_or_else(|| malformed(format!("coefficients on {s:?}, which is not in the nerve")))?;
            dims.insert(id, l.bideg.len());
        }
        for id in nerve.ids() {
            if !dims.contains_key(&id) {
                return Err(malformed(format!("no coefficients on {:?}", nerve.simplex_at(id))));
            }
        }
        for (k, l) in &self.coeffs {
            let s = parse_key(k)?;
            let id = nerve.id_of(&s).expect("checked above");
            let n = l.bideg.len();
            let mut wedge = BTreeMap::new();
            for (i, j, p) in &l.wedge {
                if *i >= n || *j >= n {
                    return Err(malformed(format!("{k}: wedge of ({i}, {j}) outside dimension {n}")));
                }
                wedge.insert((*i, *j), qvec(p, n, k)?);
            }
            if let Some(b) = l.lattice.iter().find(|&&b| b >= n) {
                return Err(malformed(format!("{k}: lattice index {b} outside dimension {n}")));
            }
            let holomorphic = l.holomorphic.iter().map(|vs| vs.iter().map(|v| qvec(v, n, k)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
            local.insert(
                id,
                LocalAlgebra {
                    bideg: l.bideg.clone(),
                    del: matrix(n, n, &l.del, &format!("{k}: del"))?,
                    delbar: matrix(n, n, &l.delbar, &format!("{k}: delbar"))?,
                    wedge,
                    one: qvec(&l.one, n, k)?,
                    lattice: l.lattice.clone(),
                    holomorphic,
                },
            );
            for (fk, ts) in &l.restrict {
                let f = parse_key(fk)?;
                let fid = nerve.id_of(&f).filter(|_| f.len() + 1 == s.len() && f.iter().all(|v| s.contains(v)));
                let fid = fid.ok_or_else(|| malformed(format!("{fk:?} is not a codimension-one face of {k:?}")))?;
                codim1.insert((fid, id), matrix(n, dims[&fid], ts, &format!("restriction {fk} -> {k}"))?);
            }
        }
        for id in nerve.ids() {
            let s = nerve.simplex_at(id).to_vec();
            if s.len() < 2 {
                continue;
            }
            for drop in 0..s.len() {
                let mut f = s.clone();
                f.remove(drop);
                if !codim1.contains_key(&(nerve.id_of(&f).expect("faces of nerve simplices"), id)) {
                    return Err(malformed(format!("missing restriction {} -> {}", key(&f), key(&s))));
                }
            }
        }
        let mut sys = CoefficientSystem::new(self.label.clone(), nerve, local, codim1)?;
        sys.wedge_exact = self.wedge_exact;
        Ok(sys)
    }

    pub fn of(sys: &CoefficientSystem) -> Self {
        let nerve = &sys.nerve;
        let mut coeffs = BTreeMap::new();
        let restr = sys.codim1_restrictions();
        for id in nerve.ids() {
            let a = sys.local(id);
            let restrict = restr.iter().filter(|((_, s), _)| *s == id).map(|((f, _), m)| (key(nerve.simplex_at(*f)), triplets(m))).collect();
            coeffs.insert(
                key(nerve.simplex_at(id)),
                LocalSpec {
                    bideg: a.bideg.clone(),
                    del: triplets(&a.del),
                    delbar: triplets(&a.delbar),
                    wedge: a.wedge.iter().map(|(&(i, j), p)| (i, j, entries(p))).collect(),
                    one: entries(&a.one),
                    lattice: a.lattice.clone(),
                    holomorphic: a.holomorphic.iter().map(|vs| vs.iter().map(entries).collect()).collect(),
                    restrict,
                },
            );
        }
        CechSpec { label: sys.label.clone(), n_vertices: nerve.n_vertices(), nerve: nerve.all_simplices(), wedge_exact: sys.wedge_exact, coeffs }
    }
}

// ---- matrix-form scenarios

impl ScenarioSpec {
    pub fn ctx(&self) -> Result<Ctx, CliError> {
        let ctx = Ctx::new(self.n, self.trunc)?;
        Ok(match self.hol_cap {
            Some(c) => ctx.with_hol_cap(c),
            None => ctx,
        })
    }

    fn matrix(ctx: Ctx, rows: &[Vec<String>], what: &str) -> Result<MatrixForm, CliError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(malformed(format!("{what} must be square")));
        }
        let rows = rows.iter().map(|r| r.iter().map(|s| PolyForm::parse(ctx, s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixForm::from_rows(ctx, rows)?)
    }

    pub fn build(&self) -> Result<Scenario, CliError> {
        let ctx = self.ctx()?;
        Ok(Scenario::new(Self::matrix(ctx, &self.g, "g")?, Self::matrix(ctx, &self.h, "H")?)?)
    }

    pub fn of(sc: &Scenario, k: Option<usize>) -> Self {
        let ctx = sc.ctx();
        let rows = |m: &MatrixForm| m.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        ScenarioSpec { n: ctx.n, trunc: ctx.trunc, hol_cap: ctx.hol_cap, k, g: rows(&sc.g), h: rows(&sc.h) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FIXTURES;

    #[test]
    fn every_fixture_round_trips_through_json_and_the_core_types() {
        for f in FIXTURES {
            let file = f.file();
            assert_eq!(ModelFile::from_json(&file.to_json()).unwrap(), file, "{}", f.name);
            let again = match &file.model {
                Model::Complex(c) => Model::Complex(ComplexSpec::of(&c.build().unwrap())),
                Model::Triple(t) => Model::Triple(TripleSpec::of(&t.build().unwrap())),
                Model::CechModel(c) => Model::CechModel(CechSpec::of(&c.build().unwrap())),
                Model::Scenario(s) => Model::Scenario(ScenarioSpec::of(&s.build().unwrap(), s.k)),
            };
            assert_eq!(again, file.model, "{}", f.name);
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let good = crate::fixtures::find("synthetic-T1").unwrap().file().to_json();
        assert!(ModelFile::from_json(&good.replace("\"format\": 1", "\"format\": 2")).is_err());
        assert!(ModelFile::from_json(&good.replace("\"triple\"", "\"tripel\"")).is_err());
        assert!(ModelFile::from_json("[1, 2]").is_err());
        let mut v: Value = serde_json::from_str(&good).unwrap();
        v["extra"] = 1.into();
        assert!(ModelFile::from_json(&v.to_string()).is_err());
        // a float scalar is not an exact string
        let mut v: Value = serde_json::from_str(&good).unwrap();
        v["psi"]["0"][0][2] = 1.0.into();
        assert!(ModelFile::from_json(&v.to_string()).is_err());
        // entries outside the matrix and non-chain maps fail at build time
        let mut v: Value = serde_json::from_str(&good).unwrap();
        v["psi"]["0"][0][0] = 5.into();
        let Model::Triple(t) = ModelFile::from_json(&v.to_string()).unwrap().model else { panic!() };
        assert!(t.build().is_err());
        let mut v: Value = serde_json::from_str(&good).unwrap();
        // alpha -> v is not a chain map since dv = w
        v["psi"]["0"] = serde_json::json!([[0, 1, "1"]]);
        let Model::Triple(t) = ModelFile::from_json(&v.to_string()).unwrap().model else { panic!() };
        assert!(t.build().is_err());
    }

    #[test]
    fn scalars_are_exact_strings() {
        let c = ComplexSpec { ring: "Q(i)".into(), degrees: [(0, 1), (1, 1)].into(), diff: [(0, vec![(0, 0, "1/2-3i".into())])].into() };
        let built = c.build().unwrap();
        assert_eq!(built.diff(0).get(0, 0), Qi::new(sparkforge_core::scalar::rat(1, 2), sparkforge_core::scalar::rat(-3, 1)));
        assert_eq!(ComplexSpec::of(&built), c);
    }
}
