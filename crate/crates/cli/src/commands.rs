//! One function per subcommand. Each returns a report; falsified identities carry a residual.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use sparkforge_core::cech_models::{CechModel, CoefficientSystem, SparkRing};
use sparkforge_core::chern_weil::{
    characteristic_form, curvature, nadel, random_holomorphic_type_connection, transgression, type_vanishing, verify_low_types_vanish,
    verify_top_type_exact, Ctx, Invariant, MatrixForm, PolyForm, Scenario,
};
use sparkforge_core::complexes::CochainComplex;
use sparkforge_core::deligne::{deligne_cohomology, DeligneRing};
use sparkforge_core::exact_linalg::{svec, QZModule};
use sparkforge_core::scalar::fmt_rat;
use sparkforge_core::spark_core::{SparkComplexTriple, Tier, ValidationReport, NODE_NAMES};

use crate::schema::{Model, ModelFile};
use crate::CliError;

pub struct Outcome {
    pub report: Map<String, Value>,
    pub text: Vec<String>,
    /// Present when an identity or axiom was falsified.
    pub residual: Option<Value>,
}

impl Outcome {
    fn new(command: &str, source: &str) -> Self {
        let mut report = Map::new();
        report.insert("command".into(), command.into());
        if !source.is_empty() {
            report.insert("source".into(), source.into());
        }
        Outcome { report, text: Vec::new(), residual: None }
    }

    pub fn empty(command: &str) -> Self {
        Outcome::new(command, "")
    }

    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.report.insert(key.into(), v.into());
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn falsified(&mut self, what: &str, detail: Value) {
        let r = self.residual.get_or_insert_with(|| json!({}));
        r[what] = detail;
    }
}

pub struct Source {
    pub label: String,
    pub file: ModelFile,
}

enum Built {
    Complex(CochainComplex),
    Triple(SparkComplexTriple),
    Cech(CoefficientSystem),
    Scenario(Scenario, Option<usize>),
}

fn build(src: &Source) -> Result<Built, CliError> {
    Ok(match &src.file.model {
        Model::Complex(c) => Built::Complex(c.build()?),
        Model::Triple(t) => Built::Triple(t.build()?),
        Model::CechModel(c) => Built::Cech(c.build()?),
        Model::Scenario(s) => Built::Scenario(s.build()?, s.k),
    })
}

fn inv(m: &QZModule) -> String {
    m.invariants().to_string()
}

fn wrong_kind(src: &Source, want: &str) -> CliError {
    CliError::Malformed(format!("{} is a {} model; this command needs {want}", src.label, src.file.model.kind()))
}

/// The spark triple of a model: a triple as given, or the Cech-Dolbeault triple of a Cech model.
fn triple_of(src: &Source, level: Option<usize>) -> Result<SparkComplexTriple, CliError> {
    match build(src)? {
        Built::Triple(t) => {
            if level.is_some() {
                return Err(CliError::Malformed("--level only applies to cech-model files".into()));
            }
            Ok(t)
        }
        Built::Cech(sys) => {
            let m = CechModel::new(sys)?;
            Ok(match level {
                Some(p) => m.assemble_level_p(p)?,
                None => m.cech_dolbeault_triple(&m.level_complex(None))?,
            })
        }
        _ => Err(wrong_kind(src, "a triple or cech-model")),
    }
}

fn validation_json(r: &ValidationReport) -> Value {
    json!({
        "passes": r.passes(),
        "axiom1_witness": r.axiom1.as_ref().map(|w| json!({"degree": w.degree, "element": w.element.iter().map(|c| c.to_string()).collect::<Vec<_>>()})),
        "axiom2": r.axiom2.degrees.iter().map(|d| json!({"degree": d.degree, "injective": d.injective, "surjective": d.surjective})).collect::<Vec<_>>(),
        "axiom3_witness": r.axiom3.as_ref().map(|w| w.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        "violations": r.violations(),
    })
}

fn report_validation(out: &mut Outcome, t: &SparkComplexTriple) {
    let r = t.validate();
    out.line(format!("axioms: {}", if r.passes() { "pass" } else { "FAIL" }));
    for v in r.violations() {
        out.line(format!("  {v}"));
    }
    let j = validation_json(&r);
    if !r.passes() {
        out.falsified("axioms", j.clone());
    }
    out.put("validation", j);
}

pub fn validate(src: &Source) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("validate", &src.label);
    out.put("kind", src.file.model.kind());
    match build(src)? {
        Built::Complex(c) => {
            out.put("ring", c.ring().name());
            out.put("dims", c.dims().to_vec());
            out.line(format!("complex over {} with dims {:?}: d^2 = 0", c.ring().name(), c.dims()));
        }
        Built::Triple(t) => report_validation(&mut out, &t),
        Built::Cech(sys) => {
            sys.validate(20)?;
            out.put("wedge_exact", sys.wedge_exact);
            let m = CechModel::new(sys)?;
            let rows = m.rows_exact(None);
            out.put("rows_exact", rows);
            out.line(format!("coefficient system valid; Cech rows exact off the first column: {rows}"));
            if !rows {
                out.falsified("rows_exact", false.into());
            }
            report_validation(&mut out, &m.cech_dolbeault_triple(&m.level_complex(None))?);
        }
        Built::Scenario(sc, _) => {
            let ctx = sc.ctx();
            sc.connections()?;
            out.put("size", sc.g.size());
            out.put("unipotent_sub_rank", sc.sub_rank);
            out.put("identity_metric", sc.identity_metric());
            out.line(format!("scenario valid: size {}, n = {}, N = {}, unipotent = {}", sc.g.size(), ctx.n, ctx.trunc, sc.sub_rank.is_some()));
        }
    }
    Ok(out)
}

pub fn cohomology(src: &Source, k: usize) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("cohomology", &src.label);
    out.put("degree", k);
    let mut groups = Map::new();
    match build(src)? {
        Built::Complex(c) => {
            groups.insert("H".into(), inv(&c.cohomology(k)).into());
        }
        Built::Triple(t) => {
            for (name, c) in [("F", &t.f), ("E", &t.e), ("I", &t.i)] {
                groups.insert(name.into(), inv(&c.cohomology(k)).into());
            }
        }
        Built::Cech(sys) => {
            let m = CechModel::new(sys)?;
            let lc = m.level_complex(None);
            groups.insert("cech_dolbeault".into(), inv(&lc.f.cohomology(k)).into());
            groups.insert("global_forms".into(), inv(&lc.global.complex.cohomology(k)).into());
            groups.insert("integral".into(), inv(&m.integral_complex().cohomology(k)).into());
        }
        Built::Scenario(..) => return Err(wrong_kind(src, "a complex, triple or cech-model")),
    }
    for (name, g) in &groups {
        out.line(format!("H^{k}({name}) = {}", g.as_str().unwrap_or_default()));
    }
    out.put("groups", Value::Object(groups));
    Ok(out)
}

pub fn spark_group(src: &Source, k: usize, tier: Tier, level: Option<usize>) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("spark-group", &src.label);
    out.put("degree", k);
    out.put("tier", if tier == Tier::Strict { "strict" } else { "model" });
    if let Some(p) = level {
        out.put("level", p);
    }
    let t = triple_of(src, level)?;
    if tier == Tier::Strict {
        let r = t.validate();
        if !r.passes() {
            out.line("strict tier refused: the triple violates the axioms");
            out.falsified("axioms", validation_json(&r));
            return Ok(out);
        }
    }
    let g = t.spark_class_group(k, tier)?;
    let s = inv(&g.module);
    out.line(format!("spark group in degree {k}: {s}"));
    out.put("invariants", s);
    Ok(out)
}

pub fn grid(src: &Source, k: usize, level: Option<usize>) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("grid", &src.label);
    out.put("degree", k);
    let t = triple_of(src, level)?;
    let g = t.grid_3x3(k);
    let nodes: Map<String, Value> = NODE_NAMES.iter().zip(&g.invariants).map(|(n, i)| (n.to_string(), i.to_string().into())).collect();
    out.text.extend(g.summary());
    let checks = json!({
        "maps_well_defined": g.maps_well_defined,
        "rows_exact": g.rows_exact,
        "cols_exact": g.cols_exact,
        "squares_commute": g.squares_commute,
        "e_quotient_iso": g.e_quotient_iso,
    });
    out.line(format!("all exact: {}", g.all_exact()));
    if !g.all_exact() {
        out.falsified("grid", checks.clone());
    }
    out.put("nodes", Value::Object(nodes));
    out.put("checks", checks);
    out.put("all_exact", g.all_exact());
    Ok(out)
}

/// `k:seed` names the random spark of degree `k` drawn with that seed.
pub fn parse_spark_id(s: &str) -> Result<(usize, u64), CliError> {
    let bad = || CliError::Malformed(format!("spark id {s:?} is not of the form <degree>:<seed>"));
    let (k, seed) = s.split_once(':').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, seed.trim().parse().map_err(|_| bad())?))
}

fn cech_model(src: &Source) -> Result<CechModel, CliError> {
    match build(src)? {
        Built::Cech(sys) => Ok(CechModel::new(sys)?),
        _ => Err(wrong_kind(src, "a cech-model")),
    }
}

pub fn product(src: &Source, alpha: &str, beta: &str) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("product", &src.label);
    let ((k, sa), (l, sb)) = (parse_spark_id(alpha)?, parse_spark_id(beta)?);
    let ring = SparkRing::new(cech_model(src)?)?;
    let top = ring.top_degree();
    if k + l + 1 >= top {
        return Err(CliError::Malformed(format!("degrees {k} + {l} + 1 leave the complex (length {top})")));
    }
    let x = ring.random_spark(k, &mut ChaCha8Rng::seed_from_u64(sa));
    let y = ring.random_spark(l, &mut ChaCha8Rng::seed_from_u64(sb));
    let n = k + l + 1;
    let p = ring.product(k, &x, l, &y);
    let t = &ring.triple;
    let is_spark = ring.group(n).is_spark(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(sa.wrapping_mul(0x9e37_79b9).wrapping_add(sb));
    let x2 = svec::add(&x, &ring.random_boundary(k, &mut rng));
    let y2 = svec::add(&y, &ring.random_boundary(l, &mut rng));
    let independent = ring.same_class(n, &p, &ring.product(k, &x2, l, &y2));
    let d1 = t.delta1(n, &p)? == ring.e_wedge(k + 1, &t.delta1(k, &x)?, l + 1, &t.delta1(l, &y)?);
    let (rx, ry) = (t.spark_parts(k, &x).1, t.spark_parts(l, &y).1);
    let d2 = t.spark_parts(n, &p).1 == ring.model.int_cup(k + 1, &rx, l + 1, &ry);
    let trivial = ring.group(n).module.is_trivial_class(&p);
    out.put("alpha", json!({"degree": k, "seed": sa}));
    out.put("beta", json!({"degree": l, "seed": sb}));
    out.put("degree", n);
    out.put("group", inv(&ring.group(n).module));
    out.put("trivial", trivial);
    let checks = json!({"is_spark": is_spark, "representative_independent": independent, "delta1_compatible": d1, "delta2_compatible": d2});
    out.line(format!("alpha * beta lies in degree {n}, group {}; trivial class: {trivial}", inv(&ring.group(n).module)));
    out.line(format!("spark: {is_spark}, representative independent: {independent}, delta1: {d1}, delta2: {d2}"));
    if !(is_spark && independent && d1 && d2) {
        out.falsified("product", checks.clone());
    }
    out.put("checks", checks);
    Ok(out)
}

pub fn deligne(src: &Source, p: usize, q: usize) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("deligne", &src.label);
    out.put("level", p);
    out.put("degree", q);
    let m = cech_model(src)?;
    let h = inv(&deligne_cohomology(&m, p, q)?);
    out.line(format!("H^{q}_D(Z({p})) = {h}"));
    out.put("invariants", h);
    if p >= 1 && q >= 1 {
        let ring = SparkRing::new(m)?;
        let dr = DeligneRing::new(&ring);
        let iso = dr.phi_hom(p, q)?.is_isomorphism();
        out.line(format!("phi onto ker delta_1 in spark degree {}: isomorphism = {iso}", q - 1));
        out.put("phi_isomorphism", iso);
        if !iso {
            out.falsified("phi", json!({"level": p, "degree": q}));
        }
    }
    Ok(out)
}

pub fn deligne_compare(src: &Source, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("deligne-compare", &src.label);
    out.put("trials", trials);
    out.put("seed", seed);
    let ring = SparkRing::new(cech_model(src)?)?;
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let (p, q, k, l) = crate::draw_deligne_case(&mut rng);
        let x = dr.complex(p)?.random_cocycle(k, &mut rng);
        let y = dr.complex(q)?.random_cocycle(l, &mut rng);
        let c = dr.compare_products(p, &x, q, &y, Some(&mut rng))?;
        if !c.holds() {
            failures.push(json!({
                "trial": trial, "p": p, "q": q, "k": k, "l": l,
                "lifts_valid": c.lifts_valid, "beilinson_closed": c.beilinson_closed, "same_class": c.same_class,
                "residual": format!("{:?}", c.residual),
            }));
        }
    }
    out.line(format!("{} of {trials} Deligne product pairs agree (seed {seed})", trials - failures.len()));
    out.put("agreeing", trials - failures.len());
    if !failures.is_empty() {
        out.falsified("deligne_products", Value::Array(failures));
    }
    Ok(out)
}

// ---- Chern-Weil

pub struct FormArgs {
    pub k: Option<usize>,
    pub dim: usize,
    pub trunc: u32,
    pub seed: u64,
    pub hol_cap: Option<u32>,
    pub size: usize,
}

impl FormArgs {
    fn ctx(&self) -> Result<Ctx, CliError> {
        let ctx = Ctx::new(self.dim, self.trunc)?;
        Ok(self.hol_cap.map_or(ctx, |c| ctx.with_hol_cap(c)))
    }
}

fn form_json(f: &PolyForm) -> Value {
    json!({"form": f.to_string(), "prec": f.prec(), "zero": f.is_zero()})
}

fn types_json(f: &PolyForm) -> Value {
    f.types().iter().map(|&(p, q)| json!([p, q])).collect::<Vec<_>>().into()
}

fn identity_checks(out: &mut Outcome, phi: Invariant, th0: &MatrixForm, th1: &MatrixForm) -> Result<Map<String, Value>, CliError> {
    let tr = transgression(phi, th0, th1)?;
    let want = &characteristic_form(phi, &curvature(th1))? - &characteristic_form(phi, &curvature(th0))?;
    let d_ok = tr.form.d().agrees(&want);
    let mut m = Map::new();
    m.insert("transgression".into(), form_json(&tr.form));
    m.insert("types".into(), types_json(&tr.form));
    m.insert("dT_is_difference".into(), d_ok.into());
    out.line(format!("{phi:?}: dT = Phi(Omega1) - Phi(Omega0): {d_ok}"));
    if !d_ok {
        out.falsified(&format!("{phi:?}.dT"), json!(tr.form.d().residual(&want).to_string()));
    }
    Ok(m)
}

pub fn transgress(scenario: &str, source: Option<&Source>, args: &FormArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("transgress", source.map_or(scenario, |s| s.label.as_str()));
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (sc, k) = match source {
        Some(src) => match build(src)? {
            Built::Scenario(sc, k) => (Some(sc), args.k.or(k)),
            _ => return Err(wrong_kind(src, "a matrix-form-scenario")),
        },
        None => {
            let ctx = args.ctx()?;
            let m = 1.max(args.size / 2);
            let sc = match scenario {
                "unipotent" => Some(Scenario::unipotent(ctx, m, args.size - m, true, &mut rng)),
                "unipotent-metric" => Some(Scenario::unipotent(ctx, m, args.size - m, false, &mut rng)),
                "general" => Some(Scenario::general(ctx, args.size, false, &mut rng)),
                "holomorphic" => None,
                other => return Err(CliError::Malformed(format!("no scenario file, fixture or generator named {other:?}"))),
            };
            (sc, args.k)
        }
    };
    let k = k.ok_or_else(|| CliError::Malformed("--k is required".into()))?;
    if k == 0 {
        return Err(CliError::Malformed("--k must be positive".into()));
    }
    out.put("k", k);
    out.put("seed", args.seed);
    let mut per = Map::new();
    match sc {
        Some(sc) => {
            let ctx = sc.ctx();
            out.put("dim", ctx.n);
            out.put("trunc", ctx.trunc);
            out.put("hol_cap", ctx.hol_cap);
            out.put("scenario", serde_json::to_value(crate::schema::ScenarioSpec::of(&sc, Some(k))).expect("spec serializes"));
            let pair = sc.connections()?;
            for phi in [Invariant::TracePower(k), Invariant::Chern(k)] {
                let mut m = identity_checks(&mut out, phi, &pair.theta0, &pair.theta1)?;
                if sc.sub_rank.is_some() && ctx.hol_cap.is_none_or(|c| c as usize + 2 >= k) {
                    let r = verify_low_types_vanish(&sc, phi)?;
                    out.line(format!("{phi:?}: low types vanish: {} (vacuous: {})", r.holds(), r.vacuous));
                    m.insert("low_types".into(), json!({"holds": r.holds(), "vacuous": r.vacuous, "prec": r.prec,
                        "components": r.components.iter().map(|((p, q), z)| json!({"type": [p, q], "zero": z})).collect::<Vec<_>>(),
                        "omega02_vanishes": r.omega02_vanishes}));
                    if !r.holds() {
                        out.falsified(&format!("{phi:?}.low_types"), json!(format!("{r:?}")));
                    }
                }
                per.insert(format!("{phi:?}"), Value::Object(m));
            }
            if sc.sub_rank.is_some() && sc.identity_metric() && ctx.hol_cap.is_none_or(|c| c as usize + 1 >= k) {
                let r = verify_top_type_exact(&sc, k)?;
                out.line(format!("top type is delbar-exact: {} (vacuous: {})", r.holds(), r.vacuous));
                out.put("top_type", json!({
                    "holds": r.holds(), "vacuous": r.vacuous, "prec": r.prec,
                    "top": form_json(&r.top), "S": form_json(&r.s),
                    "power_identities": r.power_identities.iter().map(|(m, b)| json!({"power": m, "holds": b})).collect::<Vec<_>>(),
                    "bracket_identity": r.bracket_identity,
                }));
                if !r.holds() {
                    out.falsified("top_type", json!(r.residual.to_string()));
                }
            }
        }
        None => {
            let ctx = args.ctx()?;
            out.put("dim", ctx.n);
            out.put("trunc", ctx.trunc);
            out.put("hol_cap", ctx.hol_cap);
            let th0 = random_holomorphic_type_connection(ctx, args.size, &mut rng);
            let th1 = random_holomorphic_type_connection(ctx, args.size, &mut rng);
            for phi in [Invariant::TracePower(k), Invariant::Chern(k)] {
                let mut m = identity_checks(&mut out, phi, &th0, &th1)?;
                let r = type_vanishing(phi, &th0, &th1)?;
                out.line(format!("{phi:?}: no types (p, q) with p < q: {}", r.holds()));
                m.insert("below_diagonal_vanishes".into(), r.holds().into());
                if !r.holds() {
                    out.falsified(&format!("{phi:?}.below_diagonal"), json!(r.below_diagonal));
                }
                per.insert(format!("{phi:?}"), Value::Object(m));
            }
        }
    }
    out.put("invariants", Value::Object(per));
    Ok(out)
}

pub fn nadel_cmd(args: &FormArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("nadel", "");
    let k = args.k.ok_or_else(|| CliError::Malformed("--k is required".into()))?;
    let ctx = args.ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let sc = Scenario::general(ctx, args.size, true, &mut rng);
    let r = nadel(&sc, k)?;
    for (key, v) in [("k", json!(k)), ("dim", json!(ctx.n)), ("trunc", json!(ctx.trunc)), ("hol_cap", json!(ctx.hol_cap)), ("seed", json!(args.seed))] {
        out.put(key, v);
    }
    out.put("coefficient", fmt_rat(&r.coefficient));
    out.put("match", r.holds());
    out.put("vacuous", r.vacuous);
    out.put("prec", r.prec);
    out.put("component", r.component.to_string());
    out.put("closed_form", r.closed_form.to_string());
    out.line(format!("(0,{}) component of T equals {} tr((g^-1 delbar g)^{}): match={}", 2 * k - 1, fmt_rat(&r.coefficient), 2 * k - 1, r.holds()));
    if r.vacuous {
        out.line(format!("note: the (0,{}) type needs dim >= {}, so both sides vanish here", 2 * k - 1, 2 * k - 1));
    }
    if !r.holds() {
        out.falsified("nadel", json!({"residual": r.component.residual(&r.closed_form).to_string(), "omega02_matches": r.omega02_matches}));
    }
    Ok(out)
}
