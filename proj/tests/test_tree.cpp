#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "friction/errors.hpp"
#include "friction/tree.hpp"

using namespace friction;

namespace {

TreeConfig partition_config(double eps, std::vector<double> times, double horizon = 1.0) {
    TreeConfig c;
    c.mode = TreeMode::Partition;
    c.epsilon = eps;
    c.horizon = horizon;
    c.partition = std::move(times);
    return c;
}

// independent oracle: every subset of partition times with every sign pattern
std::set<std::vector<std::pair<double, int>>> enumerate_by_hand(const std::vector<double>& times) {
    std::set<std::vector<std::pair<double, int>>> out;
    const std::size_t n = times.size();
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) chosen.push_back(i);
        const std::size_t k = chosen.size();
        for (std::size_t signs = 0; signs < (1u << k); ++signs) {
            std::vector<std::pair<double, int>> path;
            for (std::size_t j = 0; j < k; ++j)
                path.emplace_back(times[chosen[j]], (signs & (1u << j)) ? +1 : -1);
            out.insert(path);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("one partition time yields three scenarios") {
    const EventTree tree = build_tree(partition_config(0.1, {0.5}));
    REQUIRE(tree.leaves.size() == 3);
    const auto paths = enumerate_paths(tree);
    std::multiset<std::size_t> jump_counts;
    for (const auto& [leaf, path] : paths) jump_counts.insert(path.jumps());
    CHECK(jump_counts.count(0) == 1);
    CHECK(jump_counts.count(1) == 2);
    std::set<double> one_jump_levels;
    for (const auto& [leaf, path] : paths)
        if (path.jumps() == 1) one_jump_levels.insert(path.levels[1]);
    CHECK(one_jump_levels.count(std::exp(0.1)) == 1);
    CHECK(one_jump_levels.count(std::exp(-0.1)) == 1);
}

TEST_CASE("two partition times match the hand enumeration") {
    const std::vector<double> times{0.3, 0.6};
    const EventTree tree = build_tree(partition_config(0.1, times));
    REQUIRE(tree.leaves.size() == 9);

    std::set<std::vector<std::pair<double, int>>> got;
    for (const auto& [leaf, path] : enumerate_paths(tree)) {
        std::vector<std::pair<double, int>> key;
        int prev = 0;
        double level = 1.0;
        for (std::size_t j = 0; j < path.jumps(); ++j) {
            const int dir = path.levels[j + 1] > level ? +1 : -1;
            key.emplace_back(path.jump_times[j], dir);
            level = path.levels[j + 1];
            prev = dir;
        }
        (void)prev;
        got.insert(key);
    }
    CHECK(got == enumerate_by_hand(times));
}

TEST_CASE("three partition times give 27 scenarios") {
    const EventTree tree = build_tree(partition_config(0.05, {0.25, 0.5, 0.75}));
    CHECK(tree.leaves.size() == 27);
    CHECK(enumerate_paths(tree).size() == tree.leaves.size());
}

TEST_CASE("epsilon guard against the payoff regularity constant") {
    TreeConfig c = partition_config(0.7, {0.5});  // ln(1 + 1/1) = 0.693
    c.lipschitz_L = 1.0;
    CHECK_THROWS_AS(build_tree(c), ConfigInvalid);
}

TEST_CASE("epsilon must fit below partition gaps") {
    CHECK_THROWS_AS(build_tree(partition_config(0.4, {0.3, 0.6})), ConfigInvalid);
}

TEST_CASE("dyadic paths live on the grid") {
    TreeConfig c;
    c.mode = TreeMode::Dyadic;
    c.epsilon = 0.1;
    c.max_jumps = 2;
    c.i_max = 2;
    const EventTree tree = build_tree(c);
    CHECK(validate_tree(tree).empty());
    for (const auto& [leaf, path] : enumerate_paths(tree)) {
        CHECK(is_grid_jump_path(path, c.epsilon, c.i_max, 1e-9));
    }
}

TEST_CASE("exact log lattice and prefix closure") {
    const EventTree tree = build_tree(partition_config(0.1, {0.3, 0.6}));
    for (const TreeNode& n : tree.nodes) {
        CHECK(std::abs(n.level_offset) <= n.depth);
        CHECK(tree.level(n.id) == std::exp(n.level_offset * 0.1));
        if (n.id != 0) {
            const TreeNode& p = tree.nodes[n.parent];
            CHECK(p.time < n.time);
        }
    }
}

TEST_CASE("deterministic construction") {
    const EventTree a = build_tree(partition_config(0.1, {0.3, 0.6}));
    const EventTree b = build_tree(partition_config(0.1, {0.3, 0.6}));
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].parent == b.nodes[i].parent);
        CHECK(a.nodes[i].level_offset == b.nodes[i].level_offset);
        CHECK(a.nodes[i].time == b.nodes[i].time);
    }
    CHECK(a.leaves == b.leaves);
}

TEST_CASE("validator flags corrupted trees") {
    EventTree tree = build_tree(partition_config(0.1, {0.5}));
    CHECK(validate_tree(tree).empty());

    EventTree bad_level = tree;
    bad_level.nodes[1].level_offset = 5;
    bool found = false;
    for (const auto& v : validate_tree(bad_level)) found = found || v.what == "log-step != epsilon";
    CHECK(found);

    EventTree bad_time = tree;
    bad_time.nodes[1].time = -0.2;
    found = false;
    for (const auto& v : validate_tree(bad_time)) found = found || v.what == "non-increasing time";
    CHECK(found);
}

TEST_CASE("node budget guard") {
    TreeConfig c;
    c.mode = TreeMode::Dyadic;
    c.epsilon = 0.05;
    c.max_jumps = 6;
    c.i_max = 64;
    c.node_budget = 5000;
    CHECK_THROWS_AS(build_tree(c), BudgetExceeded);
}

TEST_CASE("binary demo step") {
    const EventTree tree = binary_step_tree(0.1, 0.5, 1.0);
    CHECK(tree.leaves.size() == 2);
    CHECK(validate_tree(tree).empty());
    const auto paths = enumerate_paths(tree);
    CHECK(paths[0].second.levels[1] == doctest::Approx(std::exp(0.1)));
    CHECK(paths[1].second.levels[1] == doctest::Approx(std::exp(-0.1)));
}

}  // TEST_SUITE
