//! Batch jobs and the reports behind the command line.

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{hochster_betti, BettiTable};
use crate::ideal::{bpn_ideal, coletterplace_ideal, letterplace_ideal};
use crate::io::{parse_poset, IdealDto, IdealSpec, ResolutionDto};
use crate::linalg::Field;
use crate::m2;
use crate::poset::{HomSpace, Poset, PosetIdeal};
use crate::resolution::{betti_table, check_resolves, coletterplace_resolution, MultigradedComplex};
use crate::simplicial::SimplicialComplex;
use crate::sphere::{bier_poset_ideal, bier_sphere, certify, delta_j, is_exception, sigma_j};
use crate::stable::{colp_resolution, dehomogenized_coletterplace, ek_resolution, StableIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosetSource {
    File(PathBuf),
    Text(String),
    Chain(usize),
    Antichain(usize),
}

impl PosetSource {
    pub fn load(&self) -> Result<Poset> {
        match self {
            PosetSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                parse_poset(&text)
            }
            PosetSource::Text(t) => parse_poset(t),
            PosetSource::Chain(m) => Ok(Poset::chain(*m)),
            PosetSource::Antichain(m) => Ok(Poset::antichain(*m)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Ideals,
    Resolution,
    Betti,
    Sphere,
    Certify,
    Export,
}

fn default_ideal() -> IdealSpec {
    IdealSpec::Keyword("all".into())
}

fn default_field() -> String {
    "q".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub poset: PosetSource,
    pub n: u32,
    #[serde(default = "default_ideal")]
    pub ideal: IdealSpec,
    pub outputs: Vec<Output>,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub timings: bool,
}

/// Named sections in a fixed order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub sections: Vec<(String, Value)>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, value: Value) {
        self.sections.push((name.into(), value));
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.sections.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, Value> = self.sections.iter().cloned().collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.sections {
            out.push_str(&format!("[{name}]\n"));
            out.push_str(&render(value));
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => items
            .iter()
            .map(|s| s.as_str().unwrap_or_default().to_string())
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) if !s.contains('\n') => format!("{k}: {s}"),
                Value::String(s) => format!("{k}:\n{s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

/// Exit status for a failed run: 2 for a failed certificate, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificationFailed { .. } => 2,
        _ => 1,
    }
}

/// `{(i,j):b, ...}` with `j` the total degree.
pub fn coarse_string(t: &BettiTable) -> String {
    let parts: Vec<String> = t
        .coarse()
        .iter()
        .map(|(&(i, j), &b)| format!("({i},{j}):{b}"))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn betti_value(t: &BettiTable, names: &[String]) -> Value {
    let fine: Vec<Value> = t
        .fine()
        .iter()
        .map(|((i, d), &b)| json!({"index": i, "degree": d.render(names), "count": b}))
        .collect();
    json!({"coarse": coarse_string(t), "ranks": t.ranks(), "fine": fine})
}

fn facet_strings(c: &SimplicialComplex) -> Vec<String> {
    c.facet_names()
        .into_iter()
        .map(|f| format!("{{{}}}", f.join(", ")))
        .collect()
}

fn complex_value(c: &SimplicialComplex) -> Value {
    json!({"dim": c.dim(), "f_vector": c.f_vector().0, "facets": facet_strings(c)})
}

/// A poset ideal with a coefficient field.
pub struct Session {
    pub j: PosetIdeal,
    pub field: Field,
}

impl Session {
    pub fn new(poset: Poset, n: u32, ideal: &IdealSpec, field: Field) -> Result<Self> {
        let space = HomSpace::new(poset, n)?;
        let j = ideal.resolve(&space)?;
        if j.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(Session { j, field })
    }

    fn names(&self) -> Vec<String> {
        let v = self.j.space().vars();
        (0..v.len()).map(|k| v.var_name(k)).collect()
    }

    pub fn ideals(&self) -> Value {
        let space = self.j.space();
        let l = coletterplace_ideal(&self.j);
        let dual = l.alexander_dual().map(|d| d.gen_strings()).unwrap_or_default();
        let maps: Vec<String> = self.j.iter().map(|m| format!("{m:?}")).collect();
        json!({
            "poset_ideal": maps,
            "coletterplace": l.gen_strings(),
            "dual": dual,
            "letterplace": letterplace_ideal(space).gen_strings(),
            "bpn": bpn_ideal(space).gen_strings(),
        })
    }

    pub fn resolve(&self) -> Result<MultigradedComplex> {
        coletterplace_resolution(&self.j)
    }

    /// Fails with `CertificationFailed` if the complex does not resolve `L(J)`.
    pub fn verify(&self, c: &MultigradedComplex) -> Result<()> {
        let l = coletterplace_ideal(&self.j);
        let nv = l.vars().len();
        let gens: Vec<_> = l.gens().iter().map(|g| g.to_multidegree(nv)).collect();
        check_resolves(c, &gens, self.field).map_err(|f| Error::CertificationFailed {
            reason: format!("complex does not resolve L(J): {f:?}"),
            face: vec![],
        })
    }

    pub fn resolution(&self, verify: bool) -> Result<Value> {
        let c = self.resolve()?;
        if verify {
            self.verify(&c)?;
        }
        let mut v = serde_json::to_value(ResolutionDto::from_complex(&c)).expect("serializable");
        v["ranks"] = json!(c.ranks());
        if verify {
            v["verified"] = json!(true);
        }
        Ok(v)
    }

    pub fn betti(&self) -> Result<Value> {
        let c = self.resolve()?;
        let t = betti_table(&c)?;
        let h = hochster_betti(&coletterplace_ideal(&self.j), self.field)?;
        if t != h {
            return Err(Error::CertificationFailed {
                reason: "resolution ranks differ from Hochster's formula".into(),
                face: vec![],
            });
        }
        Ok(betti_value(&t, &self.names()))
    }

    pub fn sphere(&self) -> Result<Value> {
        let delta = delta_j(&self.j)?;
        if is_exception(&self.j) {
            return Ok(json!({"delta": complex_value(&delta), "sigma": "none (exception case)"}));
        }
        let sigma = sigma_j(&self.j)?;
        Ok(json!({"delta": complex_value(&delta), "sigma": complex_value(&sigma)}))
    }

    pub fn certify(&self) -> Result<Value> {
        let c = certify(&self.j, self.field)?;
        let mut v = json!({"field": self.field.to_string(), "result": c.summary()});
        if let Some(k) = c.codimension() {
            v["codimension"] = json!(k);
        }
        if c.sigma.is_none() {
            v["dual"] = json!(c.dual.gen_strings());
        }
        Ok(v)
    }

    pub fn export_m2(&self) -> Result<String> {
        let l = coletterplace_ideal(&self.j);
        let c = self.resolve()?;
        let t = betti_table(&c)?;
        let mut s = m2::export_ideal(&l, Some(&t), self.field);
        s.push_str(&m2::export_complex(&c, l.vars(), None, self.field));
        Ok(s)
    }

    pub fn export_json(&self) -> Result<Value> {
        Ok(json!({
            "ideal": serde_json::to_value(IdealDto::from_ideal(&coletterplace_ideal(&self.j))).expect("serializable"),
            "resolution": serde_json::to_value(ResolutionDto::from_complex(&self.resolve()?)).expect("serializable"),
        }))
    }
}

pub fn run(job: &JobSpec) -> Result<Report> {
    if job.n == 0 {
        return Err(Error::InvalidChain);
    }
    let field: Field = job.field.parse()?;
    let session = Session::new(job.poset.load()?, job.n, &job.ideal, field)?;
    let mut report = Report::default();
    let mut timings = serde_json::Map::new();
    for out in &job.outputs {
        let start = Instant::now();
        let (name, value) = match out {
            Output::Ideals => ("ideals", session.ideals()),
            Output::Resolution => ("resolution", session.resolution(true)?),
            Output::Betti => ("betti", session.betti()?),
            Output::Sphere => ("sphere", session.sphere()?),
            Output::Certify => ("certify", session.certify()?),
            Output::Export => ("export", Value::String(session.export_m2()?)),
        };
        timings.insert(name.into(), json!(start.elapsed().as_secs_f64() * 1e3));
        report.push(name, value);
    }
    if job.timings {
        report.push("timings_ms", Value::Object(timings));
    }
    if let Some(path) = &job.output {
        std::fs::write(path, report.to_json())
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Which resolution of a strongly stable ideal to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableMode {
    Ek,
    Colp,
    Compare,
}

fn stable_complex_value(c: &MultigradedComplex, ideal: &StableIdeal, field: Field) -> Result<Value> {
    check_resolves(c, &ideal.monomials(), field).map_err(|f| Error::CertificationFailed {
        reason: format!("complex does not resolve the ideal: {f:?}"),
        face: vec![],
    })?;
    let t = betti_table(c)?;
    let mut v = serde_json::to_value(ResolutionDto::from_complex(c)).expect("serializable");
    v["betti"] = betti_value(&t, &ideal.names());
    Ok(v)
}

pub fn stable_report(ideal: &StableIdeal, mode: StableMode, field: Field) -> Result<Report> {
    let mut report = Report::default();
    report.push("ideal", json!(ideal.gen_strings()));
    report.push("ek_betti_formula", json!(ideal.ek_betti_numbers()));
    match mode {
        StableMode::Ek => report.push("ek", stable_complex_value(&ek_resolution(ideal)?, ideal, field)?),
        StableMode::Colp => report.push("colp", stable_complex_value(&colp_resolution(ideal)?, ideal, field)?),
        StableMode::Compare => {
            let ek = ek_resolution(ideal)?;
            let colp = colp_resolution(ideal)?;
            let sub = dehomogenized_coletterplace(ideal)?;
            stable_complex_value(&ek, ideal, field)?;
            stable_complex_value(&colp, ideal, field)?;
            report.push(
                "compare",
                json!({
                    "same_betti": betti_table(&ek)? == betti_table(&colp)?,
                    "same_matrices": ek.labeled_entries() == colp.labeled_entries(),
                    "colp_equals_substitution": colp.labeled_generators() == sub.labeled_generators()
                        && colp.labeled_entries() == sub.labeled_entries(),
                    "ranks": ek.ranks(),
                }),
            );
        }
    }
    Ok(report)
}

pub fn bier_report(x: &SimplicialComplex, field: Field) -> Result<Report> {
    let b = bier_sphere(x)?;
    let j = bier_poset_ideal(x)?;
    let s = sigma_j(&j)?;
    let mut report = Report::default();
    report.push("bier", complex_value(&b));
    report.push("matches_sigma", json!(b == s));
    let sphere = crate::homology::is_homology_sphere(&b, field)?;
    report.push("homology_sphere", json!(sphere));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1_job(outputs: Vec<Output>) -> JobSpec {
        JobSpec {
            poset: PosetSource::Text("elements: p1 p2\ncovers: p1<p2".into()),
            n: 2,
            ideal: IdealSpec::Generators(vec![vec![1, 2]]),
            outputs,
            field: "q".into(),
            output: None,
            timings: false,
        }
    }

    #[test]
    fn betti_job() {
        let r = run(&e1_job(vec![Output::Betti])).unwrap();
        assert_eq!(r.get("betti").unwrap()["coarse"], json!("{(0,2):2,(1,3):1}"));
    }

    #[test]
    fn certify_exception_job() {
        let job = JobSpec {
            poset: PosetSource::Antichain(2),
            ideal: IdealSpec::Keyword("all".into()),
            ..e1_job(vec![Output::Certify])
        };
        let r = run(&job).unwrap();
        assert_eq!(
            r.get("certify").unwrap()["result"],
            json!("sphere (exception case), complete intersection")
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let all = vec![
            Output::Ideals,
            Output::Resolution,
            Output::Betti,
            Output::Sphere,
            Output::Certify,
            Output::Export,
        ];
        let a = run(&e1_job(all.clone())).unwrap();
        let b = run(&e1_job(all)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        assert!(a.get("export").unwrap().as_str().unwrap().contains("monomialIdeal"));
    }

    #[test]
    fn job_spec_json() {
        let spec: JobSpec = serde_json::from_str(
            r#"{"poset": {"chain": 2}, "n": 2, "ideal": [[1, 2]], "outputs": ["betti"]}"#,
        )
        .unwrap();
        assert_eq!(spec.field, "q");
        assert!(run(&spec).is_ok());
        let bad = JobSpec { n: 0, ..spec };
        assert_eq!(exit_code(&run(&bad).unwrap_err()), 1);
        assert_eq!(
            exit_code(&Error::CertificationFailed { reason: String::new(), face: vec![] }),
            2
        );
    }

    #[test]
    fn stable_and_bier_reports() {
        let i = StableIdeal::from_poset_ideal(
            &PosetIdeal::full(&HomSpace::new(Poset::chain(2), 3).unwrap()),
        )
        .unwrap();
        let r = stable_report(&i, StableMode::Compare, Field::Rational).unwrap();
        let c = r.get("compare").unwrap();
        assert_eq!(c["same_betti"], json!(true));
        assert_eq!(c["same_matrices"], json!(false));
        assert_eq!(c["colp_equals_substitution"], json!(true));
        let v = std::sync::Arc::new(crate::vars::VarSet::numbered_points(2).unwrap());
        let x = SimplicialComplex::new(
            v,
            vec![crate::vars::SqfMonomial::singleton(0), crate::vars::SqfMonomial::singleton(1)],
        );
        let r = bier_report(&x, Field::Rational).unwrap();
        assert_eq!(r.get("matches_sigma"), Some(&json!(true)));
    }
}
