#include "pmanon/prefix_tree.hpp"

#include <algorithm>

namespace pmanon {

PrefixTree::PrefixTree() { nodes_.emplace_back(); }

void PrefixTree::insert(const std::vector<int>& path) {
    int cur = 0;
    ++nodes_[0].count;
    for (int x : path) {
        auto it = nodes_[cur].children.find(x);
        int next;
        if (it == nodes_[cur].children.end()) {
            next = static_cast<int>(nodes_.size());
            Node n;
            n.item = x;
            n.parent = cur;
            nodes_.push_back(std::move(n));
            nodes_[cur].children.emplace(x, next);
            by_item_[x].push_back(next);
        } else {
            next = it->second;
        }
        ++nodes_[next].count;
        cur = next;
    }
}

std::size_t PrefixTree::node_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin() + 1, nodes_.end(), [](const Node& n) { return n.alive; }));
}

bool PrefixTree::has_ancestor_item(int node, int item) const {
    for (int p = nodes_[node].parent; p > 0; p = nodes_[p].parent)
        if (nodes_[p].item == item) return true;
    return false;
}

std::size_t PrefixTree::containing_count(int item) const {
    auto it = by_item_.find(item);
    if (it == by_item_.end()) return 0;
    std::size_t total = 0;
    for (int n : it->second)
        if (nodes_[n].alive && !has_ancestor_item(n, item)) total += nodes_[n].count;
    return total;
}

void PrefixTree::kill_subtree(int node) {
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        nodes_[n].alive = false;
        nodes_[n].count = 0;
        for (auto [x, c] : nodes_[n].children) stack.push_back(c);
        nodes_[n].children.clear();
    }
}

std::size_t PrefixTree::remove_containing(int item) {
    auto it = by_item_.find(item);
    if (it == by_item_.end()) return 0;
    std::size_t removed = 0;
    for (int n : it->second) {
        if (!nodes_[n].alive || has_ancestor_item(n, item)) continue;
        std::size_t c = nodes_[n].count;
        removed += c;
        int parent = nodes_[n].parent;
        nodes_[parent].children.erase(item);
        kill_subtree(n);
        for (int p = parent; p >= 0; p = nodes_[p].parent) {
            nodes_[p].count -= c;
            int up = nodes_[p].parent;
            if (p > 0 && nodes_[p].count == 0) {
                nodes_[up].children.erase(nodes_[p].item);
                kill_subtree(p);
            }
            if (p == 0) break;
        }
    }
    return removed;
}

std::vector<int> PrefixTree::items() const {
    std::vector<int> out;
    for (const auto& [x, ns] : by_item_)
        if (std::any_of(ns.begin(), ns.end(), [&](int n) { return nodes_[n].alive; })) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> PrefixTree::paths() const {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto walk = [&](auto&& self, int n) -> void {
        std::size_t through_children = 0;
        for (auto [x, c] : nodes_[n].children) through_children += nodes_[c].count;
        for (std::size_t k = through_children; k < nodes_[n].count; ++k)
            if (n != 0) out.push_back(path);
        for (auto [x, c] : nodes_[n].children) {
            path.push_back(x);
            self(self, c);
            path.pop_back();
        }
    };
    walk(walk, 0);
    return out;
}

}  // namespace pmanon
