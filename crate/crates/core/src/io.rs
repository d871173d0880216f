//! JSON file formats. Agents and nodes are 1-based in files.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::dynamics::{DynamicsTrace, Outcome, Step};
use crate::error::{Result, TdgError};
use crate::factor::DistanceFactor;
use crate::gadgets::{GadgetOutput, WeightedCompleteGraph, X3cInstance};
use crate::graph::TopologyGraph;
use crate::instance::{Assignment, TdgInstance, UtilityMatrix};
use crate::rational::{IntToken, Rational};

/// A rational written as `[p, q]`, an integer, or a string such as `"-3/2"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Pair(Rational),
    Int(i64),
    Text(String),
}

impl Number {
    fn value(self) -> Result<Rational> {
        match self {
            Number::Pair(r) => Ok(r),
            Number::Int(v) => Ok(Rational::from_integer(v)),
            Number::Text(s) => s.parse(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseEntry {
    from: usize,
    to: usize,
    num: IntToken,
    #[serde(default)]
    den: Option<IntToken>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UtilitiesFile {
    Dense(Vec<Vec<Number>>),
    Sparse(Vec<SparseEntry>),
}

#[derive(Deserialize)]
struct TopologyFile {
    nodes: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FactorFile {
    Reciprocal,
    Table { values: Vec<Number> },
}

#[derive(Deserialize)]
struct InstanceFile {
    #[serde(default)]
    n: Option<usize>,
    utilities: UtilitiesFile,
    topology: TopologyFile,
    #[serde(default)]
    factor: Option<FactorFile>,
    #[serde(default)]
    gadget: Option<GadgetBlock>,
}

#[derive(Deserialize, Default)]
struct GadgetBlock {
    #[serde(default)]
    initial: Option<Vec<usize>>,
    #[serde(default)]
    witness: Option<Vec<usize>>,
    #[serde(default)]
    script: Option<Vec<(usize, usize)>>,
}

fn zero_based(value: usize, what: &str) -> Result<usize> {
    value
        .checked_sub(1)
        .ok_or_else(|| TdgError::Parse(format!("{what} indices are 1-based, found 0")))
}

fn zero_based_all(values: &[usize], what: &str) -> Result<Vec<usize>> {
    values.iter().map(|&v| zero_based(v, what)).collect()
}

fn build_instance(file: InstanceFile) -> Result<TdgInstance> {
    let utilities = match file.utilities {
        UtilitiesFile::Dense(rows) => {
            let rows = rows
                .into_iter()
                .map(|row| row.into_iter().map(Number::value).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if let Some(n) = file.n {
                if n != rows.len() {
                    return Err(TdgError::Parse(format!(
                        "n = {n} but the utility matrix has {} rows",
                        rows.len()
                    )));
                }
            }
            UtilityMatrix::from_rows(rows)?
        }
        UtilitiesFile::Sparse(entries) => {
            let n = file
                .n
                .ok_or_else(|| TdgError::Parse("sparse utilities require `n`".into()))?;
            let mut u = UtilityMatrix::zeros(n);
            for e in entries {
                let num = e.num.to_bigint()?;
                let den = match e.den {
                    Some(d) => d.to_bigint()?,
                    None => 1.into(),
                };
                let from = zero_based(e.from, "agent")?;
                let to = zero_based(e.to, "agent")?;
                if from >= n || to >= n {
                    return Err(TdgError::Parse(format!(
                        "utility entry ({}, {}) outside 1..={n}",
                        e.from, e.to
                    )));
                }
                u.set(from, to, Rational::from_bigints(num, den)?)?;
            }
            u
        }
    };
    let edges = file
        .topology
        .edges
        .iter()
        .map(|&(a, b)| Ok((zero_based(a, "node")?, zero_based(b, "node")?)))
        .collect::<Result<Vec<_>>>()?;
    let topology = TopologyGraph::new(file.topology.nodes, edges)?;
    let factor = match file.factor {
        None | Some(FactorFile::Reciprocal) => DistanceFactor::Reciprocal,
        Some(FactorFile::Table { values }) => {
            DistanceFactor::table(values.into_iter().map(Number::value).collect::<Result<_>>()?)?
        }
    };
    TdgInstance::new(utilities, topology, factor)
}

/// Distinguished assignments and script carried in a gadget file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetExtras {
    pub initial: Option<Assignment>,
    pub witness: Option<Assignment>,
    pub script: Option<Vec<(usize, usize)>>,
}

pub fn parse_instance(text: &str) -> Result<TdgInstance> {
    parse_instance_with_extras(text).map(|(i, _)| i)
}

/// Parses an instance together with its optional `gadget` block.
pub fn parse_instance_with_extras(text: &str) -> Result<(TdgInstance, GadgetExtras)> {
    let mut file: InstanceFile = serde_json::from_str(text)?;
    let block = file.gadget.take().unwrap_or_default();
    let instance = build_instance(file)?;
    let assignment = |p: Option<Vec<usize>>| -> Result<Option<Assignment>> {
        p.map(|p| {
            let a = Assignment::new(zero_based_all(&p, "node")?)?;
            a.validate_for(&instance)?;
            Ok(a)
        })
        .transpose()
    };
    let extras = GadgetExtras {
        initial: assignment(block.initial)?,
        witness: assignment(block.witness)?,
        script: block.script.map(|s| parse_pairs(&s)).transpose()?,
    };
    Ok((instance, extras))
}

fn parse_pairs(pairs: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&(a, b)| Ok((zero_based(a, "script")?, zero_based(b, "script")?)))
        .collect()
}

fn rational_json(r: &Rational) -> Value {
    serde_json::to_value(r).expect("rationals serialize")
}

fn factor_json(factor: &DistanceFactor) -> Value {
    match factor {
        DistanceFactor::Reciprocal => json!({"kind": "reciprocal"}),
        DistanceFactor::Table(values) => {
            json!({"kind": "table", "values": values.iter().map(rational_json).collect::<Vec<_>>()})
        }
    }
}

/// Instance as JSON with sparse utilities.
pub fn instance_to_json(instance: &TdgInstance) -> Value {
    let n = instance.n();
    let u = instance.utilities();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = u.get(i, j);
            if !v.is_zero() {
                entries.push(json!({
                    "from": i + 1,
                    "to": j + 1,
                    "num": rational_json(v)[0],
                    "den": rational_json(v)[1],
                }));
            }
        }
    }
    let edges: Vec<[usize; 2]> = instance
        .topology()
        .edges()
        .iter()
        .map(|&(a, b)| [a + 1, b + 1])
        .collect();
    json!({
        "n": n,
        "utilities": entries,
        "topology": {"nodes": instance.node_count(), "edges": edges},
        "factor": factor_json(instance.factor()),
    })
}

fn one_based(values: &[usize]) -> Vec<usize> {
    values.iter().map(|v| v + 1).collect()
}

pub fn assignment_to_json(lambda: &Assignment) -> Value {
    json!({"placement": one_based(lambda.placement())})
}

/// Reads `{"placement": [...]}`.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    #[derive(Deserialize)]
    struct File {
        placement: Vec<usize>,
    }
    let file: File = serde_json::from_str(text)?;
    Assignment::new(zero_based_all(&file.placement, "node")?)
}

/// Reads a script, either `{"script": [[agent, node], ...]}` or a gadget file.
pub fn parse_script(text: &str) -> Result<Vec<(usize, usize)>> {
    #[derive(Deserialize)]
    struct File {
        #[serde(default)]
        script: Option<Vec<(usize, usize)>>,
        #[serde(default)]
        gadget: Option<GadgetBlock>,
    }
    let file: File = serde_json::from_str(text)?;
    let pairs = file
        .script
        .or(file.gadget.and_then(|g| g.script))
        .ok_or_else(|| TdgError::Parse("no `script` found".into()))?;
    parse_pairs(&pairs)
}

/// Instance fields plus a `gadget` block with name, labels, assignments,
/// script and metadata.
pub fn gadget_to_json(gadget: &GadgetOutput) -> Value {
    let mut value = instance_to_json(&gadget.instance);
    let mut block = serde_json::Map::new();
    block.insert("name".into(), json!(gadget.name));
    block.insert("labels".into(), json!(gadget.agent_labels));
    if let Some(a) = &gadget.initial {
        block.insert("initial".into(), json!(one_based(a.placement())));
    }
    if let Some(a) = &gadget.witness {
        block.insert("witness".into(), json!(one_based(a.placement())));
    }
    if let Some(script) = &gadget.script {
        let pairs: Vec<[usize; 2]> = script.iter().map(|&(a, v)| [a + 1, v + 1]).collect();
        block.insert("script".into(), json!(pairs));
    }
    let metadata: BTreeMap<&String, &Value> = gadget.metadata.iter().collect();
    block.insert("metadata".into(), json!(metadata));
    value["gadget"] = Value::Object(block);
    value
}

fn step_json(step: &Step) -> Value {
    match step {
        Step::Jump {
            agent,
            from,
            to,
            gain,
        } => json!({
            "kind": "jump",
            "agent": agent + 1,
            "from": from + 1,
            "to": to + 1,
            "gain": rational_json(gain),
        }),
        Step::Swap {
            first,
            second,
            gains,
        } => json!({
            "kind": "swap",
            "first": first + 1,
            "second": second + 1,
            "gains": [rational_json(&gains.0), rational_json(&gains.1)],
        }),
    }
}

pub fn outcome_json(outcome: &Outcome) -> Value {
    let mut value = json!({"tag": outcome.tag()});
    match outcome {
        Outcome::Converged(a) | Outcome::ScriptExhausted(a) => {
            value["final"] = json!(one_based(a.placement()));
        }
        Outcome::CycleDetected {
            first_repeat_index,
            period,
        } => {
            value["first_repeat_index"] = json!(first_repeat_index);
            value["period"] = json!(period);
        }
        Outcome::StepLimit => {}
    }
    value
}

/// Step records plus the outcome tag.
pub fn trace_to_json(trace: &DynamicsTrace) -> Value {
    json!({
        "start": one_based(trace.start.placement()),
        "steps": trace.steps.iter().map(step_json).collect::<Vec<_>>(),
        "outcome": outcome_json(&trace.outcome),
        "phi_values": trace.phi_values.iter().map(rational_json).collect::<Vec<_>>(),
    })
}

/// Reads `{"ground_set_size": r, "sets": [[1,2,3], ...], "cover": [...]}`.
pub fn parse_x3c(text: &str) -> Result<(X3cInstance, Option<Vec<usize>>)> {
    #[derive(Deserialize)]
    struct File {
        ground_set_size: usize,
        sets: Vec<[usize; 3]>,
        #[serde(default)]
        cover: Option<Vec<usize>>,
    }
    let file: File = serde_json::from_str(text)?;
    let sets = file
        .sets
        .iter()
        .map(|s| {
            Ok([
                zero_based(s[0], "element")?,
                zero_based(s[1], "element")?,
                zero_based(s[2], "element")?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let x = X3cInstance::new(file.ground_set_size, sets)?;
    let cover = file.cover.map(|c| zero_based_all(&c, "set")).transpose()?;
    Ok((x, cover))
}

/// Reads `{"vertices": t, "edges": [[x, y, w], ...]}` listing every pair once.
pub fn parse_weighted_graph(text: &str) -> Result<WeightedCompleteGraph> {
    #[derive(Deserialize)]
    struct File {
        vertices: usize,
        edges: Vec<(usize, usize, Number)>,
    }
    let file: File = serde_json::from_str(text)?;
    let edges = file
        .edges
        .into_iter()
        .map(|(x, y, w)| Ok((zero_based(x, "vertex")?, zero_based(y, "vertex")?, w.value()?)))
        .collect::<Result<Vec<_>>>()?;
    WeightedCompleteGraph::from_edges(file.vertices, &edges)
}
