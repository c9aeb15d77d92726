//! Shared fixtures for the pipeline benchmarks.

use dynnet::{generate, random_walks, DynamicNetwork, SynthConfig, WalkConfig, WalkSet};

/// Synthetic network with `nodes` nodes over `timesteps` snapshots.
pub fn network(nodes: usize, timesteps: usize) -> DynamicNetwork {
    let config = SynthConfig {
        nodes,
        timesteps,
        ..SynthConfig::default()
    };
    generate(&config).expect("valid synth config").network
}

pub fn walks(network: &DynamicNetwork, config: &WalkConfig) -> Vec<WalkSet> {
    random_walks(network, config, 0).expect("valid walk config")
}
