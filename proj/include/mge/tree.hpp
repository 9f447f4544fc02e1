#pragma once

#include <string>
#include <vector>

namespace mge {

// Labeled ordered tree, flat storage. Node 0 is the root; children are kept
// in insertion order.
class EvalTree {
public:
    int add_node(std::string label, int parent = -1) {
        nodes_.push_back({std::move(label), {}});
        const int id = static_cast<int>(nodes_.size()) - 1;
        if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
        return id;
    }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::string& label(int id) const { return nodes_[static_cast<std::size_t>(id)].label; }
    const std::vector<int>& children(int id) const { return nodes_[static_cast<std::size_t>(id)].children; }

    bool operator==(const EvalTree&) const = default;

    // Parenthesized dump, e.g. sig(+(*(0.5,x1),*(0.3,1))).
    std::string to_string() const;

private:
    struct Node {
        std::string label;
        std::vector<int> children;
        bool operator==(const Node&) const = default;
    };
    std::vector<Node> nodes_;

    void print(int id, std::string& out) const;
};

} // namespace mge
