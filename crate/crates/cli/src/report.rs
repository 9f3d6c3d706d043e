//! Command results, serialised for `--json` or rendered as tables.

use std::fmt::Write;
use std::path::Path;
use std::time::Duration;

use powergame::balanced::BalanceReport;
use powergame::model::{EnvironmentGraph, State, StateVector};
use powergame::scalar::Scalar;
use powergame::solvers::{Infeasibility, Method, Outcome, Solution};
use serde::Serialize;
use serde_json::Value;

/// JSON values print bare; `"1/3"` loses its quotes.
fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn set(items: &[usize]) -> String {
    let inner: Vec<_> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<_> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn state_list(states: &StateVector) -> String {
    let names: Vec<_> = states.iter().map(|s| s.to_string()).collect();
    names.join(", ")
}

#[derive(Serialize)]
pub struct Violation {
    condition: Option<u8>,
    country: Option<usize>,
    message: String,
}

#[derive(Serialize)]
pub struct CheckReport {
    command: &'static str,
    pub balanced: bool,
    violations: Vec<Violation>,
    states: StateVector,
}

impl CheckReport {
    pub fn new<T: Scalar>(report: BalanceReport<T>, states: StateVector) -> Self {
        CheckReport {
            command: "check",
            balanced: report.is_balanced(),
            violations: report
                .violations
                .iter()
                .map(|v| Violation {
                    condition: v.condition(),
                    country: v.country(),
                    message: v.to_string(),
                })
                .collect(),
            states,
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        match self.violations.first() {
            None => out.push_str("balanced: yes\n"),
            Some(first) => {
                let _ = writeln!(out, "balanced: no ({})", first.message);
                for v in &self.violations[1..] {
                    let _ = writeln!(out, "  also: {}", v.message);
                }
            }
        }
        let _ = writeln!(out, "states: {}", state_list(&self.states));
        out
    }
}

#[derive(Serialize)]
pub struct StateRow {
    pub country: usize,
    pub support: Value,
    pub threat: Value,
    pub state: State,
}

#[derive(Serialize)]
pub struct StatesReport {
    pub countries: Vec<StateRow>,
}

impl StatesReport {
    pub fn human(&self) -> String {
        let rows: Vec<_> = self
            .countries
            .iter()
            .map(|r| {
                vec![
                    r.country.to_string(),
                    show(&r.support),
                    show(&r.threat),
                    r.state.to_string(),
                ]
            })
            .collect();
        table(&["country", "support", "threat", "state"], &rows)
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Witness {
    PowerCondition {
        violators: Vec<usize>,
    },
    Unsaturated {
        flow_value: Value,
        sources: Vec<usize>,
        sinks: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        subset: Option<Value>,
    },
    LpResidual {
        residual: Value,
    },
}

#[derive(Serialize)]
pub struct SolveReport {
    command: &'static str,
    method: Method,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Value>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl SolveReport {
    pub fn new<T: Scalar>(g: &EnvironmentGraph<T>, s: &Solution<T>) -> Self {
        let mut report = SolveReport {
            command: "solve",
            method: s.method,
            feasible: s.is_feasible(),
            ordering: None,
            v: None,
            matrix: None,
            witness: None,
        };
        match &s.outcome {
            Outcome::Balanced { v, equilibrium } => {
                report.ordering = Some(g.adversary_edges().collect());
                report.v = Some(v.as_slice().iter().map(Scalar::to_json).collect());
                report.matrix = Some(
                    equilibrium
                        .to_dense()
                        .iter()
                        .map(|r| r.iter().map(Scalar::to_json).collect())
                        .collect(),
                );
            }
            Outcome::Infeasible(why) => {
                report.witness = Some(match why {
                    Infeasibility::PowerCondition { violators } => Witness::PowerCondition {
                        violators: violators.clone(),
                    },
                    Infeasibility::Unsaturated {
                        flow_value,
                        sources,
                        sinks,
                        subset,
                    } => Witness::Unsaturated {
                        flow_value: flow_value.to_json(),
                        sources: sources.clone(),
                        sinks: sinks.clone(),
                        subset: subset
                            .as_ref()
                            .map(|h| serde_json::to_value(h).expect("serialisable")),
                    },
                    Infeasibility::LpResidual { residual } => Witness::LpResidual {
                        residual: residual.to_json(),
                    },
                });
            }
        }
        report
    }

    pub fn human(&self, elapsed: Duration) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method: {}", self.method);
        if let (Some(ordering), Some(v), Some(matrix)) = (&self.ordering, &self.v, &self.matrix) {
            out.push_str("feasible: yes\n");
            let rows: Vec<_> = ordering
                .iter()
                .zip(v)
                .map(|((i, j), x)| vec![format!("({i}, {j})"), show(x)])
                .collect();
            out.push_str(&table(&["pair", "value"], &rows));
            out.push_str("matrix:\n");
            let cells: Vec<Vec<String>> = matrix
                .iter()
                .map(|r| r.iter().map(show).collect())
                .collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in cells {
                let padded: Vec<_> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(out, "  {}", padded.join("  "));
            }
        } else {
            out.push_str("feasible: no\n");
            if let Some(w) = &self.witness {
                let _ = writeln!(out, "infeasible; {}", describe(w));
            }
        }
        let _ = writeln!(out, "solved in {:.3} ms", elapsed.as_secs_f64() * 1e3);
        out
    }
}

fn describe(w: &Witness) -> String {
    match w {
        Witness::PowerCondition { violators } => format!(
            "countries {} outweigh their adversaries combined",
            set(violators)
        ),
        Witness::Unsaturated {
            flow_value,
            sources,
            sinks,
            subset,
        } => {
            let mut parts = vec![format!("max flow {}", show(flow_value))];
            if !sources.is_empty() {
                parts.push(format!("unsaturated source arcs at {}", set(sources)));
            }
            if !sinks.is_empty() {
                parts.push(format!("unsaturated sink arcs at {}", set(sinks)));
            }
            if let Some(h) = subset {
                let ids = |k: &str| -> Vec<usize> {
                    h[k].as_array()
                        .map(|a| {
                            a.iter()
                                .filter_map(|x| x.as_u64())
                                .map(|x| x as usize)
                                .collect()
                        })
                        .unwrap_or_default()
                };
                parts.push(format!(
                    "violating subset {} (power {} > adversary power {} of {})",
                    set(&ids("subset")),
                    show(&h["subset_power"]),
                    show(&h["neighbourhood_power"]),
                    set(&ids("neighbourhood")),
                ));
            }
            parts.join("; ")
        }
        Witness::LpResidual { residual } => {
            format!("phase-one residual {} is positive", show(residual))
        }
    }
}

#[derive(Serialize)]
pub struct GenReport {
    command: &'static str,
    mode: &'static str,
    countries: usize,
    adversary_pairs: usize,
    friend_pairs: usize,
    instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    allocation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lineage: Option<String>,
}

impl GenReport {
    pub fn new<T: Scalar>(
        mode: &'static str,
        g: &EnvironmentGraph<T>,
        instance: &Path,
        allocation: Option<&Path>,
        lineage: Option<&Path>,
    ) -> Self {
        let path = |p: &Path| p.display().to_string();
        GenReport {
            command: "gen",
            mode,
            countries: g.len(),
            adversary_pairs: g.adversary_edge_count(),
            friend_pairs: g.friend_edges().count(),
            instance: path(instance),
            allocation: allocation.map(path),
            lineage: lineage.map(path),
        }
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "wrote {} ({} countries, {} adversary pairs, {} friend pairs)\n",
            self.instance, self.countries, self.adversary_pairs, self.friend_pairs
        );
        for extra in [&self.allocation, &self.lineage].into_iter().flatten() {
            let _ = writeln!(out, "wrote {extra}");
        }
        out
    }
}
