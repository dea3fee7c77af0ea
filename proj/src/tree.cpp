#include "friction/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "friction/errors.hpp"

namespace friction {

double EventTree::level(int id) const {
    return std::exp(nodes[id].level_offset * config.epsilon);
}

std::vector<int> EventTree::path_nodes(int id) const {
    std::vector<int> out;
    for (int v = id; v != -1; v = nodes[v].parent) out.push_back(v);
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

void validate_config(const TreeConfig& c) {
    if (!(c.epsilon > 0.0)) throw ConfigInvalid("tree epsilon must be positive");
    if (!(c.horizon > 0.0)) throw ConfigInvalid("tree horizon must be positive");
    if (!(c.lipschitz_L > 0.0)) throw ConfigInvalid("lipschitz constant must be positive");
    if (!(c.epsilon < std::log(1.0 + 1.0 / c.lipschitz_L)))
        throw ConfigInvalid("epsilon must be below ln(1 + 1/L)");
    if (c.mode == TreeMode::Partition) {
        if (c.partition.empty()) throw ConfigInvalid("partition mode needs at least one jump time");
        double prev = 0.0;
        for (double t : c.partition) {
            if (!(t > prev) || !(t < c.horizon))
                throw ConfigInvalid("partition times must be strictly increasing inside (0, horizon)");
            if (!(c.epsilon < t - prev))
                throw ConfigInvalid("epsilon must be below every partition gap");
            prev = t;
        }
        if (!(c.epsilon < c.horizon - prev))
            throw ConfigInvalid("epsilon must be below every partition gap");
    } else {
        if (c.max_jumps < 1) throw ConfigInvalid("dyadic mode needs max_jumps >= 1");
        if (c.i_max < 1) throw ConfigInvalid("dyadic mode needs i_max >= 1");
    }
}

}  // namespace

EventTree build_tree(const TreeConfig& config) {
    validate_config(config);

    EventTree tree;
    tree.config = config;
    tree.nodes.push_back(TreeNode{});  // root: offset 0, time 0

    // dyadic gap grids per depth, computed once
    std::vector<std::vector<double>> gap_grid;
    if (config.mode == TreeMode::Dyadic) {
        gap_grid.resize(config.max_jumps);
        for (std::size_t k = 0; k < config.max_jumps; ++k)
            gap_grid[k] =
                grid_elements(GridSpec{config.epsilon, static_cast<int>(k) + 1, config.i_max});
    }

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int vid = queue.front();
        queue.pop_front();
        const TreeNode node = tree.nodes[vid];  // copy: vector may reallocate

        // candidate next jump times from this state
        std::vector<double> next_times;
        if (config.mode == TreeMode::Partition) {
            for (double t : config.partition)
                if (t > node.time) next_times.push_back(t);
        } else if (static_cast<std::size_t>(node.depth) < config.max_jumps) {
            for (double gap : gap_grid[node.depth]) {
                const double t = node.time + gap;
                if (t < config.horizon) next_times.push_back(t);
            }
        }

        auto add_node = [&](int offset_delta, double time, bool absorbed) {
            if (tree.nodes.size() >= config.node_budget)
                throw BudgetExceeded("tree would exceed " + std::to_string(config.node_budget) +
                                     " nodes");
            TreeNode child;
            child.id = static_cast<int>(tree.nodes.size());
            child.parent = vid;
            child.depth = node.depth + (absorbed ? 0 : 1);
            child.level_offset = node.level_offset + offset_delta;
            child.time = time;
            child.absorbed = absorbed;
            tree.nodes.push_back(child);
            tree.nodes[vid].children.push_back(child.id);
            if (absorbed)
                tree.leaves.push_back(child.id);
            else
                queue.push_back(child.id);
        };

        for (double t : next_times) {
            add_node(+1, t, false);
            add_node(-1, t, false);
        }
        add_node(0, config.horizon, true);
    }
    return tree;
}

JumpPath leaf_path(const EventTree& tree, int leaf) {
    JumpPath path;
    path.horizon = tree.config.horizon;
    std::vector<int> chain = tree.path_nodes(leaf);
    path.levels.push_back(1.0);
    for (int v : chain) {
        const TreeNode& n = tree.nodes[v];
        if (v == 0 || n.absorbed) continue;
        path.jump_times.push_back(n.time);
        path.levels.push_back(tree.level(v));
    }
    return path;
}

std::vector<std::pair<int, JumpPath>> enumerate_paths(const EventTree& tree) {
    std::vector<std::pair<int, JumpPath>> out;
    out.reserve(tree.leaves.size());
    for (int leaf : tree.leaves) out.emplace_back(leaf, leaf_path(tree, leaf));
    return out;
}

std::vector<TreeViolation> validate_tree(const EventTree& tree) {
    std::vector<TreeViolation> v;
    auto flag = [&](int id, const std::string& what) { v.push_back(TreeViolation{id, what}); };

    if (tree.nodes.empty()) {
        flag(-1, "empty tree");
        return v;
    }
    const TreeNode& root = tree.nodes[0];
    if (root.level_offset != 0 || root.time != 0.0 || root.parent != -1)
        flag(0, "root must sit at level 1 and time 0");

    for (const TreeNode& n : tree.nodes) {
        if (n.id == 0) continue;
        if (n.parent < 0 || n.parent >= static_cast<int>(tree.nodes.size())) {
            flag(n.id, "dangling parent");
            continue;
        }
        const TreeNode& p = tree.nodes[n.parent];
        if (std::find(p.children.begin(), p.children.end(), n.id) == p.children.end())
            flag(n.id, "not listed among parent's children");
        if (!(n.time > p.time)) flag(n.id, "non-increasing time");
        if (n.absorbed) {
            if (n.level_offset != p.level_offset) flag(n.id, "absorbed node changes level");
            if (!n.children.empty()) flag(n.id, "absorbed node must be a leaf");
            if (n.time != tree.config.horizon) flag(n.id, "absorbed leaf not at horizon");
        } else {
            if (std::abs(n.level_offset - p.level_offset) != 1) flag(n.id, "log-step != epsilon");
            if (!(n.time < tree.config.horizon)) flag(n.id, "jump at or beyond horizon");
            if (tree.config.mode == TreeMode::Partition) {
                bool ok = false;
                for (double t : tree.config.partition) ok = ok || t == n.time;
                if (!ok) flag(n.id, "jump time outside the partition");
            } else {
                const double gap = n.time - p.time;
                if (!grid_contains(GridSpec{tree.config.epsilon, n.depth, tree.config.i_max}, gap,
                                   1e-9))
                    flag(n.id, "inter-jump gap off the depth grid");
            }
        }
    }
    for (const TreeNode& n : tree.nodes) {
        if (n.children.empty() && !n.absorbed) flag(n.id, "leaf that is not absorbed");
        int absorbed_children = 0;
        for (int c : n.children) absorbed_children += tree.nodes[c].absorbed ? 1 : 0;
        if (absorbed_children > 1) flag(n.id, "multiple absorbed children");
    }
    for (int leaf : tree.leaves)
        if (!tree.nodes[leaf].absorbed || !tree.is_leaf(leaf)) flag(leaf, "leaf index invalid");
    return v;
}

EventTree binary_step_tree(double epsilon, double jump_time, double horizon) {
    if (!(epsilon > 0.0) || !(jump_time > 0.0) || !(jump_time < horizon))
        throw ConfigInvalid("binary step tree needs 0 < jump_time < horizon and epsilon > 0");
    EventTree tree;
    tree.config.mode = TreeMode::Partition;
    tree.config.epsilon = epsilon;
    tree.config.horizon = horizon;
    tree.config.partition = {jump_time};

    tree.nodes.push_back(TreeNode{});
    auto add = [&](int parent, int offset, double time, bool absorbed) {
        TreeNode n;
        n.id = static_cast<int>(tree.nodes.size());
        n.parent = parent;
        n.depth = tree.nodes[parent].depth + (absorbed ? 0 : 1);
        n.level_offset = offset;
        n.time = time;
        n.absorbed = absorbed;
        tree.nodes.push_back(n);
        tree.nodes[parent].children.push_back(n.id);
        if (absorbed) tree.leaves.push_back(n.id);
        return n.id;
    };
    const int up = add(0, +1, jump_time, false);
    const int down = add(0, -1, jump_time, false);
    add(up, +1, horizon, true);
    add(down, -1, horizon, true);
    return tree;
}

}  // namespace friction
