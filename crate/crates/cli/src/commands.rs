use std::io::Write;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use chevalley_core::chevalley_group::{
    bruhat as bruhat_form, commutator_expand, enumerate as bfs, order_reconciliation, parse_word, poincare_identity,
    render_word, steinberg_center_order, steinberg_check, structure_checks, verify_commutator, BruhatForm, Chevalley,
    Strategy, ENUMERATION_LIMIT,
};
use chevalley_core::hall_oracle::gamma_oracle;
use chevalley_core::lie_algebra::{build_lie, LieData, Scheme};
use chevalley_core::root_category::Section;
use chevalley_core::root_data::{cartan_divisor, exponents, predicted_order};
use chevalley_core::{FieldDescriptor, GroupError, RootDatum};

use crate::{CheckKind, Format, TypeArgs};

pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Inconsistent(_) | GroupError::NoTermination(_) => CliError::Failure(e.to_string()),
            GroupError::TooLarge(n) => CliError::Usage(format!(
                "the group exceeds the enumeration guard of {n} elements; `order` still reports the formula"
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    pub ok: bool,
    result: Value,
    text: Vec<String>,
}

impl Report {
    fn new(command: &str, ty: &TypeArgs) -> Self {
        let mut inputs = Map::new();
        inputs.insert("type".into(), json!(ty.type_name));
        if let Some(o) = &ty.orientation {
            inputs.insert("orientation".into(), json!(o));
        }
        Report { command: command.into(), inputs, ok: true, result: json!({}), text: Vec::new() }
    }

    fn input(&mut self, key: &str, v: Value) {
        self.inputs.insert(key.into(), v);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Writes the report; a closed pipe is not an error.
    pub fn print(&self, format: Format, seed: u64) {
        let _ = self.write(&mut std::io::stdout().lock(), format, seed);
    }

    fn write(&self, out: &mut impl Write, format: Format, seed: u64) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut inputs = self.inputs.clone();
                inputs.insert("seed".into(), json!(seed.to_string()));
                let v = json!({
                    "command": self.command,
                    "inputs": inputs,
                    "ok": self.ok,
                    "result": self.result,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))
            }
            Format::Text => {
                let args: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                writeln!(out, "{} [{}]", self.command, args.join(" "))?;
                for l in &self.text {
                    writeln!(out, "  {l}")?;
                }
                writeln!(out, "  status: {}", if self.ok { "ok" } else { "FAILED" })
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn datum(ty: &TypeArgs) -> Result<RootDatum, CliError> {
    RootDatum::build(&ty.type_name, ty.orientation.as_deref()).map_err(usage)
}

fn field(q: Option<u64>) -> Result<FieldDescriptor, CliError> {
    match q {
        None => Ok(FieldDescriptor::Rationals),
        Some(q) => FieldDescriptor::finite(q).map_err(usage),
    }
}

fn scheme_for(d: &RootDatum, s: Option<&str>) -> Result<Scheme, CliError> {
    let scheme = match s {
        None => Scheme::preferred(d),
        Some(s) => s.parse().map_err(usage)?,
    };
    if !scheme.applies_to(d) {
        return Err(CliError::Usage(format!("scheme {scheme} does not apply to {}", d.type_name())));
    }
    Ok(scheme)
}

fn lie(d: &RootDatum, scheme: Scheme) -> Result<LieData, CliError> {
    build_lie(d, &Section::initial(d), scheme).map_err(usage)
}

fn group(ty: &TypeArgs, f: FieldDescriptor, scheme: Option<&str>) -> Result<Chevalley, CliError> {
    let d = datum(ty)?;
    let s = scheme_for(&d, scheme)?;
    Ok(Chevalley::new(lie(&d, s)?, f))
}

fn finite_q(q: u64) -> Result<FieldDescriptor, CliError> {
    field(Some(q))
}

pub fn order(ty: &TypeArgs, q: u64) -> Result<Report, CliError> {
    let f = finite_q(q)?;
    let d = datum(ty)?;
    let predicted = predicted_order(&d, q).map_err(usage)?;
    let small = predicted <= ENUMERATION_LIMIT.into() && q <= 256;
    let g = Chevalley::new(lie(&d, Scheme::preferred(&d))?, f);
    let r = order_reconciliation(&g, small)?;
    let mut rep = Report::new("order", ty);
    rep.input("q", json!(q.to_string()));
    rep.ok = r.equal;
    let enumerated = r.enumerated.map(|n| n.to_string());
    rep.result = json!({
        "order": r.predicted.to_string(),
        "bruhat_count": r.bruhat_count.to_string(),
        "enumerated": enumerated,
        "divisor": cartan_divisor(&d, q).to_string(),
        "exponents": exponents(&d),
        "consistent": r.equal,
    });
    rep.line(format!("order          {}", r.predicted));
    rep.line(format!("bruhat count   {}", r.bruhat_count));
    rep.line(format!("enumerated     {}", enumerated.as_deref().unwrap_or("skipped (above guard)")));
    rep.line(format!("divisor d      {}", cartan_divisor(&d, q)));
    rep.line(format!("exponents      {:?}", exponents(&d)));
    Ok(rep)
}

pub fn enumerate(ty: &TypeArgs, q: u64) -> Result<Report, CliError> {
    let g = group(ty, finite_q(q)?, None)?;
    let predicted = predicted_order(g.datum(), q).map_err(usage)?;
    let e = bfs(&g)?;
    let mut rep = Report::new("enumerate", ty);
    rep.input("q", json!(q.to_string()));
    let matches = predicted == e.order().into();
    rep.ok = matches;
    rep.result = json!({
        "order": e.order().to_string(),
        "predicted": predicted.to_string(),
        "generators": e.num_generators(),
        "matches_prediction": matches,
    });
    rep.line(format!("order       {}", e.order()));
    rep.line(format!("predicted   {predicted}"));
    rep.line(format!("generators  {}", e.num_generators()));
    Ok(rep)
}

fn form_json(g: &Chevalley, f: &BruhatForm) -> Value {
    let d = g.datum();
    let atoms = |xs: &[(usize, chevalley_core::Scalar)]| -> Vec<Value> {
        xs.iter().map(|(r, t)| json!({"root": d.root_label(*r), "t": t.to_string()})).collect()
    };
    json!({
        "u_prime": atoms(&f.u_prime),
        "torus": f.torus.iter().enumerate().map(|(i, t)| json!({"simple": i + 1, "t": t.to_string()})).collect::<Vec<_>>(),
        "weyl_word": f.weyl_word.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "u_minus": atoms(&f.u_minus),
    })
}

pub fn bruhat(ty: &TypeArgs, q: Option<u64>, word: &str, seed: u64) -> Result<Report, CliError> {
    let g = group(ty, field(q)?, None)?;
    let w = parse_word(g.datum(), g.field(), word).map_err(usage)?;
    let x = g.element(w.clone())?;
    let a = bruhat_form(&g, &x, Strategy::Sequential)?;
    let b = bruhat_form(&g, &x, Strategy::Chunked(seed))?;
    let agree = a == b;
    let mut rep = Report::new("bruhat", ty);
    rep.input("field", json!(g.field().to_string()));
    rep.input("word", json!(render_word(g.datum(), &w)));
    rep.ok = agree;
    let mut result = form_json(&g, &a);
    result["reassembled"] = json!(true);
    result["strategies_agree"] = json!(agree);
    rep.result = result;
    let d = g.datum();
    let show = |xs: &[(usize, chevalley_core::Scalar)]| -> String {
        let v: Vec<String> = xs.iter().map(|(r, t)| format!("E[{}]({t})", d.root_label(*r))).collect();
        if v.is_empty() {
            "1".into()
        } else {
            v.join(" ")
        }
    };
    rep.line(format!("u'         {}", show(&a.u_prime)));
    let torus: Vec<String> = a.torus.iter().enumerate().map(|(i, t)| format!("h[α{}]({t})", i + 1)).collect();
    rep.line(format!("h          {}", torus.join(" ")));
    let ws: Vec<String> = a.weyl_word.iter().map(|i| format!("n[α{}]", i + 1)).collect();
    rep.line(format!("n          {}", if ws.is_empty() { "1".into() } else { ws.join(" ") }));
    rep.line(format!("u          {}", show(&a.u_minus)));
    rep.line(format!("strategies {}", if agree { "agree" } else { "DISAGREE" }));
    Ok(rep)
}

pub fn commutator(
    ty: &TypeArgs,
    x: &str,
    y: &str,
    scheme: Option<&str>,
    q: Option<u64>,
    trials: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let d = datum(ty)?;
    let s = scheme_for(&d, scheme)?;
    let l = lie(&d, s)?;
    let (xi, yi) = (d.parse_root(x).map_err(usage)?, d.parse_root(y).map_err(usage)?);
    if xi == yi || d.neg(xi) == yi {
        return Err(CliError::Usage("the two roots must differ and must not be opposite".into()));
    }
    let f = field(q)?;
    let terms = commutator_expand(&l, xi, yi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verified = verify_commutator(&l, xi, yi, &f, trials, &mut rng)?;
    let mut rep = Report::new("commutator", ty);
    rep.input("x", json!(d.root_label(xi)));
    rep.input("y", json!(d.root_label(yi)));
    rep.input("scheme", json!(s.to_string()));
    rep.input("field", json!(f.to_string()));
    rep.input("trials", json!(trials));
    rep.ok = verified;
    rep.result = json!({
        "terms": terms.iter().map(|t| json!({"root": d.root_label(t.root), "c": t.c, "i": t.i, "j": t.j})).collect::<Vec<_>>(),
        "verified": verified,
    });
    if terms.is_empty() {
        rep.line("the root elements commute");
    }
    for t in &terms {
        rep.line(format!("E[{}]({} t^{} s^{})", d.root_label(t.root), t.c, t.i, t.j));
    }
    rep.line(format!("verified over {f}: {verified}"));
    Ok(rep)
}

pub fn constants(ty: &TypeArgs, scheme: Option<&str>) -> Result<Report, CliError> {
    let d = datum(ty)?;
    let s = scheme_for(&d, scheme)?;
    let l = lie(&d, s)?;
    let mut rep = Report::new("constants", ty);
    rep.input("scheme", json!(s.to_string()));
    let cs = l.constants();
    rep.result = json!({
        "scheme": s.to_string(),
        "constants": cs.iter().map(|c| json!({
            "x": d.root_label(c.x), "y": d.root_label(c.y), "sum": d.root_label(c.l), "gamma": c.gamma
        })).collect::<Vec<_>>(),
    });
    for c in &cs {
        rep.line(format!("γ({}, {}) = {:>2}", d.root_label(c.x), d.root_label(c.y), c.gamma));
    }
    Ok(rep)
}

const EXCEPTIONS: [(&str, u64); 4] = [("A1", 2), ("A1", 3), ("B2", 2), ("G2", 2)];

pub fn check(
    what: CheckKind,
    ty: &TypeArgs,
    q: Option<u64>,
    scheme: Option<&str>,
    trials: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let d = datum(ty)?;
    match what {
        CheckKind::Jacobi => {
            let schemes: Vec<Scheme> = match scheme {
                Some(_) => vec![scheme_for(&d, scheme)?],
                None => Scheme::all().into_iter().filter(|s| s.applies_to(&d)).collect(),
            };
            let mut rep = Report::new("check jacobi", ty);
            let mut rows = Vec::new();
            for s in schemes {
                let n = lie(&d, s)?.jacobi_check().len();
                rep.ok &= n == 0;
                rep.line(format!("{s:<12} violations {n}"));
                rows.push(json!({"scheme": s.to_string(), "violations": n}));
            }
            rep.result = json!({ "schemes": rows });
            Ok(rep)
        }
        CheckKind::Steinberg => {
            let f = field(q)?;
            let g = Chevalley::new(lie(&d, scheme_for(&d, scheme)?)?, f.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = steinberg_check(&g, trials, &mut rng)?;
            let center = q.map(|q| steinberg_center_order(&d, q).to_string());
            let mut rep = Report::new("check steinberg", ty);
            rep.input("field", json!(f.to_string()));
            rep.input("trials", json!(trials));
            rep.ok = r.all();
            rep.result = json!({
                "additive": r.additive,
                "commutator": r.commutator,
                "torus": r.torus,
                "conjugation": r.conjugation,
                "center_order": center,
            });
            rep.line(format!("(1) E(a)E(b) = E(a+b)       {}", r.additive));
            rep.line(format!("(2) commutator formula      {}", r.commutator));
            rep.line(format!("(3) h(a)h(b) = h(ab)        {}", r.torus));
            rep.line(format!("(4) n E n⁻¹ = E_T(t⁻²s)      {}", r.conjugation));
            if let Some(c) = center {
                rep.line(format!("center order             {c}"));
            }
            Ok(rep)
        }
        CheckKind::Poincare => {
            let q = q.unwrap_or(2);
            let p = poincare_identity(&d, q).map_err(usage)?;
            let mut rep = Report::new("check poincare", ty);
            rep.input("q", json!(q.to_string()));
            rep.ok = p.equal;
            let rhs = if p.rhs.denom().is_one() { p.rhs.numer().to_string() } else { p.rhs.to_string() };
            rep.result = json!({"lhs": p.lhs.to_string(), "rhs": rhs, "equal": p.equal});
            rep.line(format!("Σ q^l(w)          {}", p.lhs));
            rep.line(format!("∏ (q^(l+1)-1)/(q^l-1)  {rhs}"));
            Ok(rep)
        }
        CheckKind::Hall => {
            let l = lie(&d, Scheme::EulerCocycle).map_err(|_| {
                CliError::Usage(format!("the Hall oracle needs a simply-laced type, got {}", d.type_name()))
            })?;
            let mut rep = Report::new("check hall", ty);
            let mut rows = Vec::new();
            let r = d.num_positive();
            for x in 0..r {
                for y in 0..r {
                    let Some(s) = d.sum_index(x, y) else { continue };
                    let h = gamma_oracle(&d, d.root(x), d.root(y), d.root(s)).map_err(usage)?;
                    let matches = h.gamma == l.gamma(x, y);
                    rep.ok &= matches;
                    let (pxy, pyx) = (h.phi_xy.eval(1).to_string(), h.phi_yx.eval(1).to_string());
                    rep.line(format!(
                        "{:<10} {:<10} φ_XY(1)={pxy:<3} φ_YX(1)={pyx:<3} γ={:>2} cocycle={:>2} {}",
                        d.root_label(x),
                        d.root_label(y),
                        h.gamma,
                        l.gamma(x, y),
                        if matches { "ok" } else { "MISMATCH" }
                    ));
                    rows.push(json!({
                        "x": d.root_label(x),
                        "y": d.root_label(y),
                        "phi_xy_at_1": pxy,
                        "phi_yx_at_1": pyx,
                        "gamma": h.gamma,
                        "cocycle": l.gamma(x, y),
                        "matches_cocycle": matches,
                    }));
                }
            }
            rep.result = json!({ "rows": rows });
            Ok(rep)
        }
        CheckKind::Simplicity => {
            let q = q.ok_or_else(|| CliError::Usage("check simplicity needs --q".into()))?;
            let g = Chevalley::new(lie(&d, Scheme::preferred(&d))?, finite_q(q)?);
            let e = bfs(&g)?;
            let s = structure_checks(&e);
            let exceptional = EXCEPTIONS.contains(&(d.type_name(), q));
            let consistent = s.simple != exceptional && s.center_trivial;
            let mut rep = Report::new("check simplicity", ty);
            rep.input("q", json!(q.to_string()));
            rep.ok = consistent;
            rep.result = json!({
                "order": s.order.to_string(),
                "derived_order": s.derived_order.to_string(),
                "derived_is_whole": s.derived_is_whole,
                "center_order": s.center_order.to_string(),
                "center_trivial": s.center_trivial,
                "classes": s.classes,
                "simple": s.simple,
                "exceptional": exceptional,
                "consistent": consistent,
            });
            rep.line(format!("order            {}", s.order));
            rep.line(format!("derived order    {}", s.derived_order));
            rep.line(format!("center order     {}", s.center_order));
            rep.line(format!("classes          {}", s.classes));
            rep.line(format!("simple           {}", s.simple));
            rep.line(format!("exception list   {exceptional}"));
            Ok(rep)
        }
    }
}
