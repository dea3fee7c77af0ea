#pragma once

#include <string>
#include <utility>
#include <vector>

#include "friction/paths.hpp"

namespace friction {

enum class TreeMode { Partition, Dyadic };

struct TreeConfig {
    TreeMode mode = TreeMode::Partition;
    double epsilon = 0.1;
    double horizon = 1.0;
    // partition mode: admissible jump times T_1 < ... < T_n < horizon
    std::vector<double> partition;
    // dyadic mode: inter-jump gaps drawn from the depth-k grid, at most
    // max_jumps jumps, grids truncated at i_max
    std::size_t max_jumps = 2;
    int i_max = 64;
    // payoff regularity constant entering the epsilon < ln(1 + 1/L) guard
    double lipschitz_L = 1.0;
    std::size_t node_budget = 200000;
};

// One market state. Levels are stored as integer log offsets so that every
// jump is an exact +-epsilon log step; the real level is exp(offset*epsilon).
struct TreeNode {
    int id = 0;
    int parent = -1;
    int depth = 0;  // jumps so far
    int level_offset = 0;
    double time = 0.0;  // jump time; horizon for absorbed leaves
    bool absorbed = false;
    std::vector<int> children;
};

struct EventTree {
    TreeConfig config;
    std::vector<TreeNode> nodes;
    std::vector<int> leaves;  // absorbed leaves in construction order

    double level(int id) const;
    bool is_leaf(int id) const { return nodes[id].children.empty(); }
    std::vector<int> path_nodes(int id) const;  // root..id
};

// Every admissible path as a finite tree: at each non-absorbed node, children
// are an up and a down jump per remaining admissible time (partition mode) or
// per depth-grid gap with cumulative time < horizon (dyadic mode), plus one
// absorbed leaf running at constant level to the horizon.
EventTree build_tree(const TreeConfig& config);

std::vector<std::pair<int, JumpPath>> enumerate_paths(const EventTree& tree);
JumpPath leaf_path(const EventTree& tree, int leaf);

struct TreeViolation {
    int node = -1;
    std::string what;
};
std::vector<TreeViolation> validate_tree(const EventTree& tree);

// Two-scenario demo instance: one certain jump (up or down) at jump_time, no
// absorption branch at the root. Not produced by build_tree; used by the
// no-arbitrage examples where the one-step martingale measure is unique.
EventTree binary_step_tree(double epsilon, double jump_time, double horizon);

}  // namespace friction
