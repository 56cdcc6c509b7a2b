use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

use knot_cluster::alexander::{alexander_matrix, eval_y_minus1, specialize};
use knot_cluster::kauffman::{self, dim_symmetry_check, newton_vertex_check, StatePoset};
use knot_cluster::planner::{self, Execution};
use knot_cluster::{LaurentPoly, LinkDiagram};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::{compute, load, print_value, CliError, Ctx};

pub struct Check {
    pub name: &'static str,
    /// `None` on success, the witness otherwise.
    pub failure: Option<String>,
    pub millis: u128,
}

pub struct VerifyReport {
    pub path: PathBuf,
    pub crossings: usize,
    pub components: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    fn to_json(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({ "name": c.name, "pass": c.failure.is_none(), "witness": c.failure });
                if timings {
                    v["millis"] = json!(c.millis);
                }
                v
            })
            .collect();
        json!({
            "path": self.path.display().to_string(),
            "crossings": self.crossings,
            "components": self.components,
            "checks": checks,
        })
    }
}

/// Terms of `a` missing from `b` and vice versa.
fn poly_diff(a: &LaurentPoly, b: &LaurentPoly) -> String {
    let d = a - b;
    let part = |sign: bool| {
        let terms = d.terms().filter(|(_, c)| c.is_positive() == sign).map(|(e, c)| (e.to_vec(), c.abs()));
        LaurentPoly::from_terms(d.vars(), terms).to_string()
    };
    format!("extra {}, missing {}", part(true), part(false))
}

struct Run<'a> {
    ctx: &'a Ctx,
    d: &'a LinkDiagram,
    checks: Vec<Check>,
}

impl Run<'_> {
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Result<(), String>) {
        let start = Instant::now();
        let failure = f().err();
        self.checks.push(Check { name, failure, millis: start.elapsed().as_millis() });
    }

    fn posets(&self) -> Result<Vec<StatePoset>, String> {
        self.d
            .labels()
            .into_iter()
            .map(|i| kauffman::poset(self.d, i, &self.ctx.cfg).map_err(|e| format!("segment {i}: {e}")))
            .collect()
    }

    fn execution(&self) -> Result<Execution, String> {
        let plan = planner::plan(self.d).map_err(|e| e.to_string())?;
        planner::execute_with(self.d, &plan, &self.ctx.cfg).map_err(|e| e.to_string())
    }
}

fn verify_one(ctx: &Ctx, path: &Path) -> Result<VerifyReport, CliError> {
    let d = load(path)?;
    let mut run = Run { ctx, d: &d, checks: Vec::new() };
    run.check("prime", || match d.primality_scan().first() {
        None => Ok(()),
        Some(v) => Err(format!("segments {} and {} cut the diagram", v.segments.0, v.segments.1)),
    });
    if run.checks[0].failure.is_some() {
        return Ok(VerifyReport {
            path: path.to_path_buf(),
            crossings: d.n(),
            components: d.components().len(),
            checks: run.checks,
        });
    }
    let posets = run.posets();
    run.check("lattice orientation", || posets.as_ref().map(|_| ()).map_err(Clone::clone));
    let posets = posets.unwrap_or_default();
    let classes = d.classify_segments();
    let delta = alexander_matrix(&d, d.labels()[0]);
    run.check("alexander oracles", || {
        for (i, p) in d.labels().into_iter().zip(&posets) {
            let m = alexander_matrix(&d, i);
            if m != delta {
                return Err(format!("matrix at segment {i} is {m}, not {delta}"));
            }
            let s = specialize(&p.f_poly(), &classes);
            if s != delta {
                return Err(format!("lattice at segment {i} specializes to {s}, matrix gives {delta}"));
            }
        }
        Ok(())
    });
    run.check("dimension symmetry", || {
        let r = dim_symmetry_check(&d, &ctx.cfg).map_err(|e| e.to_string())?;
        match (r.asymmetric.first(), r.ok()) {
            (Some((i, j, a, b)), _) => Err(format!("dim T({i})_{j} = {a} but dim T({j})_{i} = {b}")),
            (None, false) => {
                let (j, sum, dim) = r.column_sums[0];
                Err(format!("column {j} sums to {sum}, dim T({j}) is {dim}"))
            }
            _ => Ok(()),
        }
    });
    run.check("newton polytopes", || {
        for (i, p) in d.labels().into_iter().zip(&posets) {
            if !newton_vertex_check(&p.f_poly()) {
                return Err(format!("F_T({i}) has a non-vertex term"));
            }
        }
        Ok(())
    });
    run.check("y = -1", || {
        let knot = d.components().len() == 1;
        for (i, p) in d.labels().into_iter().zip(&posets) {
            let v = eval_y_minus1(&p.f_poly());
            let good = if knot { v.abs() == 1.into() } else { v == 0.into() };
            if !good {
                return Err(format!("F_T({i})(-1) = {v}"));
            }
        }
        Ok(())
    });
    let ex = run.execution();
    run.check("knot cluster", || {
        let ex = ex.as_ref().map_err(Clone::clone)?;
        if !ex.quiver_iso {
            return Err(format!("sigma = {} does not map Q to the opposite of Q_t", ex.sigma));
        }
        if let Some(&i) = ex.f_mismatches.first() {
            let t = ex.sigma.apply(i);
            let lattice = kauffman::poset(&d, t, &ctx.cfg).map_err(|e| e.to_string())?.f_poly();
            return Err(format!("F_{i} vs F_T({t}): {}", poly_diff(&ex.seed.f_polynomial(i), &lattice)));
        }
        Ok(())
    });
    run.check("denominators", || {
        let ex = ex.as_ref().map_err(Clone::clone)?;
        for i in d.labels() {
            let co = d.coregion(ex.sigma.apply(i));
            let den = ex.seed.den_vector(i);
            for j in d.labels() {
                let want = i32::from(!co.contains(&j));
                if den[j as usize - 1] != want {
                    return Err(format!("den(x_{i})_{j} = {}, expected {want}", den[j as usize - 1]));
                }
            }
        }
        Ok(())
    });
    run.check("seed invariants", || {
        let ex = ex.as_ref().map_err(Clone::clone)?;
        match ex.seed.invariant_failures().into_iter().next() {
            None => Ok(()),
            Some(f) => Err(f),
        }
    });
    Ok(VerifyReport {
        path: path.to_path_buf(),
        crossings: d.n(),
        components: d.components().len(),
        checks: run.checks,
    })
}

pub fn run(ctx: &Ctx, paths: &[PathBuf], timings: bool) -> Result<(), CliError> {
    let reports: Vec<Result<VerifyReport, CliError>> = thread::scope(|s| {
        let handles: Vec<_> = paths.iter().map(|p| s.spawn(move || verify_one(ctx, p))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(compute("worker panicked")))).collect()
    });
    let reports: Vec<VerifyReport> = reports.into_iter().collect::<Result<_, _>>()?;
    if ctx.json {
        print_value(&Value::Array(reports.iter().map(|r| r.to_json(timings)).collect()));
    } else {
        for r in &reports {
            println!("== {}: crossings {}, components {}", r.path.display(), r.crossings, r.components);
            for c in &r.checks {
                let time = if timings { format!(" ({} ms)", c.millis) } else { String::new() };
                match &c.failure {
                    None => println!("PASS {}{time}", c.name),
                    Some(w) => println!("FAIL {}: {w}{time}", c.name),
                }
            }
        }
    }
    if reports.iter().all(VerifyReport::ok) {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
