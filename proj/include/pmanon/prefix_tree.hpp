#pragma once

#include <cstddef>
#include <map>
#include <unordered_map>
#include <vector>

namespace pmanon {

// Prefix tree over encoded traces. A node's count is the number of inserted
// paths through it, so the root-to-leaf paths are the inserted traces.
class PrefixTree {
public:
    PrefixTree();

    void insert(const std::vector<int>& path);
    // Number of live paths.
    std::size_t size() const { return nodes_[0].count; }
    bool empty() const { return size() == 0; }
    std::size_t node_count() const;

    // Number of live paths containing item (each path counted once).
    std::size_t containing_count(int item) const;
    // Removes every path containing item; returns how many were removed.
    std::size_t remove_containing(int item);
    // Items that occur on some live path, ascending.
    std::vector<int> items() const;
    std::vector<std::vector<int>> paths() const;

private:
    struct Node {
        int item = -1;
        int parent = -1;
        std::size_t count = 0;
        bool alive = true;
        std::map<int, int> children;
    };
    std::vector<Node> nodes_;
    std::unordered_map<int, std::vector<int>> by_item_;

    bool has_ancestor_item(int node, int item) const;
    void kill_subtree(int node);
};

}  // namespace pmanon
