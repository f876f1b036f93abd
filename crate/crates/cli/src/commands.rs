//! One function per CLI subcommand. Each builds a [`Report`]; input errors
//! come back as [`CliError`] and map to exit status 2.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use dbl_core::chars::{gendec_build, GenDecCase};
use dbl_core::config;
use dbl_core::groups::{construct, construct_str, FiniteGroup, GroupSpec};
use serde_json::json;

use crate::checks::{self, BimoduleSetup, Selector};
use crate::corpus::CorpusEntry;
use crate::report::{run_check, Check, Outcome, Report};
use crate::Result;

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Options {
    /// Echoed into the report.
    pub command: Vec<String>,
    pub seed: u64,
    /// Record wall-clock time per check (makes reports non-reproducible).
    pub timing: bool,
    /// Allow work above the default size gate.
    pub extended: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            command: Vec::new(),
            seed: config::DEFAULT_SEED,
            timing: false,
            extended: false,
        }
    }
}

impl Options {
    /// Run `f` under this seed and, for extended runs, the raised limits.
    fn scoped<R>(&self, f: impl FnOnce() -> R) -> R {
        config::with_seed(self.seed, || {
            if self.extended {
                config::with_limits(checks::extended_limits(), f)
            } else {
                f()
            }
        })
    }

    fn report(&self, checks: Vec<Check>) -> Report {
        Report::new(self.command.clone(), self.seed, checks)
    }
}

fn build(spec: &str) -> Result<Arc<FiniteGroup>> {
    let g = construct_str(spec)?;
    g.enumerate()?;
    Ok(Arc::new(g))
}

/// Order, classes, Sylow frame and fusion pattern.
pub fn group_info(spec: &str, opts: &Options) -> Result<Report> {
    opts.scoped(|| {
        let g = build(spec)?;
        let check = run_check("group/info", opts.timing, || -> Result<Outcome> {
            let classes: Vec<_> = g
                .classes()
                .iter()
                .map(|c| json!({ "size": c.size, "element_order": c.element_order, "representative": g.element(c.rep).to_string() }))
                .collect();
            let (frame, fusion, summary_tail) = match checks::fusion_of(&g) {
                Ok((f, fc)) => {
                    let tail = format!("Sylow 2-subgroup of order {}, fusion {}", f.order(), fc.label);
                    (checks::frame_json(&f), json!(fc), tail)
                }
                Err(e) => (json!(null), json!(null), format!("no dihedral Sylow frame ({e})")),
            };
            let summary = format!("{}: order {}, {} classes, {summary_tail}", g.name(), g.order(), classes.len());
            Ok(Outcome::new(
                true,
                summary,
                json!({
                    "group": g.name(),
                    "order": g.order(),
                    "degree": g.degree(),
                    "exponent": g.exponent(),
                    "class_count": classes.len(),
                    "classes": classes,
                    "frame": frame,
                    "fusion": fusion,
                }),
            ))
        });
        Ok(opts.report(vec![check]))
    })
}

/// Scott module relative to the selected subgroup, with Loewy and socle
/// series and projectivity.
pub fn scott(spec: &str, selector: &Selector, opts: &Options) -> Result<Report> {
    opts.scoped(|| {
        let g = build(spec)?;
        checks::select_subgroup(&g, selector)?;
        let check = run_check("scott", opts.timing, || checks::scott_check(&g, selector, true));
        Ok(opts.report(vec![check]))
    })
}

/// Brauer audit of `Sc(G, P)`, or of `Sc(G × G′, ΔP)` for a product.
pub fn brauer(spec: &str, opts: &Options) -> Result<Report> {
    opts.scoped(|| {
        let g = build(spec)?;
        let check = if g.product_info().is_some() {
            run_check("brauer", opts.timing, || {
                checks::brauer_product_check(&checks::product_bimodule(&g, opts.extended)?)
            })
        } else {
            run_check("brauer", opts.timing, || checks::brauer_check(&g, opts.extended))
        };
        Ok(opts.report(vec![check]))
    })
}

/// Transport of the left factor's principal-block simples through
/// `Sc(G × G′, ΔP)`.
pub fn transport(spec: &str, opts: &Options) -> Result<Report> {
    opts.scoped(|| {
        let g = build(spec)?;
        if g.product_info().is_none() {
            return Err(crate::CliError::Usage(format!("{spec} is not a product prod(G,H)")));
        }
        let check = run_check("transport", opts.timing, || {
            checks::transport_check(&checks::product_bimodule(&g, opts.extended)?, None)
        });
        Ok(opts.report(vec![check]))
    })
}

/// The tabulated matrix in text and JSON form.
pub fn gendec_build_report(case: GenDecCase, n: u32, q: Option<u64>, opts: &Options) -> Result<Report> {
    let m = gendec_build(case, n, q)?;
    let check = run_check("gendec/build", opts.timing, || -> Result<Outcome> {
        let summary = format!("case {case}: {}x{} matrix over Z[ζ_{}]", m.rows.len(), m.columns.len(), m.root_order());
        Ok(Outcome::new(true, summary, json!({ "text": m.to_text(), "matrix": m })))
    });
    Ok(opts.report(vec![check]))
}

/// Verify a case against a group's computed character table.
pub fn gendec_verify_report(
    case: GenDecCase,
    spec: &str,
    n: Option<u32>,
    q: Option<u64>,
    opts: &Options,
) -> Result<Report> {
    opts.scoped(|| {
        let g = build(spec)?;
        let n = match n {
            Some(n) => n,
            None => checks::fusion_of(&g)?.0.n,
        };
        let check = run_check("gendec/verify", opts.timing, || checks::gendec_check(&g, case, n, q));
        Ok(opts.report(vec![check]))
    })
}

/// Check kinds a corpus entry declares, in run order.
pub fn entry_check_kinds(entry: &CorpusEntry) -> Vec<&'static str> {
    if entry.is_product() {
        return vec!["fusion", "brauer", "transport"];
    }
    let mut kinds = vec!["fusion"];
    if matches!(entry.spec, GroupSpec::Pgl2 { .. }) {
        kinds.push("centralizers");
    }
    kinds.extend(["blocks", "gendec", "scott", "brauer"]);
    kinds
}

fn selected(entry: &CorpusEntry, kind: &str, filter: Option<&str>) -> bool {
    match filter {
        None => true,
        Some(f) => f == kind || f == entry.id || entry.has_tag(f),
    }
}

/// Run the selected checks of one entry.
pub fn run_entry(entry: &CorpusEntry, filter: Option<&str>, opts: &Options) -> Vec<Check> {
    let kinds: Vec<&str> = entry_check_kinds(entry)
        .into_iter()
        .filter(|k| selected(entry, k, filter))
        .collect();
    if kinds.is_empty() {
        return Vec::new();
    }
    let name = |k: &str| format!("{}/{k}", entry.id);
    let group = match construct(&entry.spec).and_then(|g| g.enumerate().map(|_| Arc::new(g))) {
        Ok(g) => g,
        Err(e) => {
            return vec![run_check(name("construct"), opts.timing, || -> std::result::Result<Outcome, _> {
                Err(e)
            })]
        }
    };
    let bimodule: OnceLock<std::result::Result<BimoduleSetup, String>> = OnceLock::new();
    let setup = || {
        bimodule
            .get_or_init(|| checks::product_bimodule(&group, opts.extended).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    };
    kinds
        .into_iter()
        .map(|kind| {
            run_check(name(kind), opts.timing, || -> std::result::Result<Outcome, String> {
                let r = match kind {
                    "fusion" => checks::fusion_check(&group, Some(entry.expected_case), Some(entry.n)),
                    "centralizers" => checks::centralizer_check(&group),
                    "blocks" => checks::block_check(&group, entry.n),
                    "gendec" => match entry.expected_gendec_case {
                        Some(case) => checks::gendec_check(&group, case, entry.n, None),
                        None => Ok(Outcome::skip("no matrix case recorded (defect group of order < 8)")),
                    },
                    "scott" => match entry.spec {
                        GroupSpec::Psl2 { .. } | GroupSpec::Pgl2 { .. } => {
                            checks::scott_check(&group, &Selector::Borel, false)
                        }
                        GroupSpec::Dihedral { .. } => checks::scott_check(&group, &Selector::Sylow, false),
                        _ => Ok(Outcome::skip("no predicted Scott module structure")),
                    },
                    "brauer" if entry.is_product() => checks::brauer_product_check(setup()?),
                    "brauer" => checks::brauer_check(&group, opts.extended),
                    "transport" => checks::transport_check(setup()?, entry.note("expect")),
                    other => unreachable!("unknown check kind {other}"),
                };
                r.map_err(|e| e.to_string())
            })
        })
        .collect()
}

/// Run every entry concurrently; checks are reported in entry order.
pub fn corpus_run(entries: &[CorpusEntry], filter: Option<&str>, opts: &Options) -> Report {
    let results: Mutex<Vec<Option<Vec<Check>>>> = Mutex::new(vec![None; entries.len()]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(entries.len())
        .max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            std::thread::Builder::new()
                .stack_size(64 << 20)
                .spawn_scoped(scope, || loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= entries.len() {
                        break;
                    }
                    let checks = opts.scoped(|| run_entry(&entries[i], filter, opts));
                    results.lock().expect("no poisoned workers")[i] = Some(checks);
                })
                .expect("spawn corpus worker");
        }
    });
    let checks = results
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .flat_map(Option::unwrap_or_default)
        .collect();
    opts.report(checks)
}
