//! Constructors for the named instance families: counterexamples, the
//! exponential-dynamics family and the hardness reductions.

mod basic;
mod dynamics;
mod exjump;
mod exponential;
mod reductions;
mod x3c;

use std::collections::BTreeMap;

pub use basic::{
    gadget_cat_and_mouse, gadget_roommates_no_swap, gadget_swap_cycle, gadget_tree_counterexample,
};
pub use dynamics::{dynamics_epsilon, gadget_dyncycle, gadget_dynconv};
pub use exjump::gadget_exjump;
pub use exponential::{exponential_script, gadget_exponential_family};
pub use reductions::{gadget_graph_partitioning_reduction, gadget_maxcut_reduction, WeightedCompleteGraph};
pub use x3c::{pad_x3c_for_dynamics, pad_x3c_for_exjump, PaddedX3c, PaddingFlag, X3cInstance};

use crate::instance::{Assignment, TdgInstance};

/// A constructed instance with its distinguished assignments and, where the
/// construction has one, a sequence of jumps `(agent, node)`.
#[derive(Clone, Debug)]
pub struct GadgetOutput {
    pub name: String,
    pub instance: TdgInstance,
    pub initial: Option<Assignment>,
    pub witness: Option<Assignment>,
    pub script: Option<Vec<(usize, usize)>>,
    pub agent_labels: Vec<String>,
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl GadgetOutput {
    pub(crate) fn new(name: &str, instance: TdgInstance, agent_labels: Vec<String>) -> Self {
        debug_assert_eq!(agent_labels.len(), instance.n());
        Self {
            name: name.to_string(),
            instance,
            initial: None,
            witness: None,
            script: None,
            agent_labels,
            metadata: BTreeMap::new(),
        }
    }

    pub(crate) fn meta(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Index of the agent carrying `label`.
    pub fn agent(&self, label: &str) -> Option<usize> {
        self.agent_labels.iter().position(|l| l == label)
    }
}
