#pragma once

#include <map>
#include <string>
#include <vector>

#include "resing/blowup.hpp"

namespace resing {

enum class TreeKind { manual, binomial, curve };

inline std::string to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::binomial: return "binomial";
    case TreeKind::curve: return "curve";
    default: return "manual";
  }
}

inline TreeKind tree_kind_from_string(const std::string& s) {
  if (s == "binomial") return TreeKind::binomial;
  if (s == "curve") return TreeKind::curve;
  if (s == "manual") return TreeKind::manual;
  throw DomainError("unknown tree kind '" + s + "'");
}

struct TreeEdge {
  std::size_t parent;
  std::size_t child;
  std::size_t center_dim;
};

/// All charts of one resolution run. Node 0 is the root; nodes are appended
/// in creation order, so every parent id is smaller than its children's ids.
class ChartTree {
 public:
  ChartTree() = default;
  ChartTree(TreeKind kind, Chart root) : kind_(kind) {
    if (root.parent) throw DomainError("root chart must not have a parent");
    nodes_.push_back(std::move(root));
    children_.emplace_back();
  }

  TreeKind kind() const noexcept { return kind_; }
  const std::vector<Chart>& nodes() const noexcept { return nodes_; }
  const Chart& node(std::size_t id) const { return nodes_.at(id); }
  Chart& node(std::size_t id) { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Chart& root() const { return nodes_.front(); }
  const RingPtr& original_ring() const { return nodes_.front().ambient; }
  const std::vector<std::size_t>& children(std::size_t id) const { return children_.at(id); }

  std::size_t add_child(std::size_t parent, Chart chart) {
    if (parent >= nodes_.size()) throw DomainError("parent chart does not exist");
    if (!chart.center_dim) throw DomainError("child chart lacks a center dimension");
    chart.parent = parent;
    nodes_.push_back(std::move(chart));
    children_.emplace_back();
    children_[parent].push_back(nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::vector<TreeEdge> edges() const {
    std::vector<TreeEdge> out;
    for (std::size_t i = 1; i < nodes_.size(); ++i) out.push_back({*nodes_[i].parent, i, *nodes_[i].center_dim});
    return out;
  }

  std::vector<std::size_t> finals() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].final) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (children_[i].empty()) out.push_back(i);
    return out;
  }

  /// Number of blow-up steps, i.e. charts that were blown up.
  std::size_t blowup_count() const {
    std::size_t n = 0;
    for (const auto& c : children_) n += c.empty() ? 0 : 1;
    return n;
  }

  /// Structural invariants; throws InvariantViolation on failure.
  /// `complete` additionally demands finals == leaves.
  void validate(bool complete = true) const {
    if (nodes_.empty()) throw InvariantViolation("tree has no root");
    const auto& root = nodes_.front();
    if (root.parent) throw InvariantViolation("root has a parent");
    if (!root.exceptional.empty()) throw InvariantViolation("root has exceptional divisors");
    if (root.images != identity_images(root.ambient)) throw InvariantViolation("root images are not the identity");
    const std::size_t original = root.ambient->size();
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      const auto& c = nodes_[i];
      if (!c.parent || *c.parent >= i) throw InvariantViolation("chart " + std::to_string(i) + " has no earlier parent");
      if (!c.center_dim) throw InvariantViolation("chart " + std::to_string(i) + " lacks a center dimension");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& c = nodes_[i];
      if (c.images.size() != original) throw InvariantViolation("chart " + std::to_string(i) + " has wrong image count");
      for (const auto& d : c.exceptional)
        if (!d.variable.empty() && !c.ambient->index_of(d.variable))
          throw InvariantViolation("chart " + std::to_string(i) + " names an unknown exceptional variable");
      if (c.final && !children_[i].empty()) throw InvariantViolation("final chart " + std::to_string(i) + " has children");
      if (complete && !c.final && children_[i].empty())
        throw InvariantViolation("childless chart " + std::to_string(i) + " is not final");
    }
  }

  friend bool operator==(const ChartTree& a, const ChartTree& b) {
    return a.kind_ == b.kind_ && a.nodes_ == b.nodes_;
  }

 private:
  TreeKind kind_ = TreeKind::manual;
  std::vector<Chart> nodes_;
  std::vector<std::vector<std::size_t>> children_;
};

/// Thrown when a resolver runs out of blow-ups; carries the tree so far.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t steps, ChartTree partial)
      : Error("step budget of " + std::to_string(steps) + " blow-ups exceeded"), partial_(std::move(partial)) {}
  const ChartTree& partial() const noexcept { return partial_; }

 private:
  ChartTree partial_;
};

struct DivisorMember {
  std::size_t chart;
  std::string variable;
  std::string equation;
};

/// One global exceptional divisor E_index, born at blow-up of chart `birth`.
struct DivisorClass {
  std::size_t index;
  std::size_t birth;
  std::vector<DivisorMember> members;

  std::string name() const { return "E" + std::to_string(index); }
};

struct DivisorTable {
  std::vector<DivisorClass> classes;
  /// visible[chart] = sorted class indices (1-based) of divisors seen in that chart.
  std::vector<std::vector<std::size_t>> visible;
};

/// Groups per-chart exceptional entries by the blow-up that created them.
/// Classes are numbered E1, E2, ... in order of the blown-up chart's id.
inline DivisorTable collect_divisors(const ChartTree& tree) {
  DivisorTable table;
  std::map<std::size_t, std::size_t> by_birth;
  for (std::size_t id = 0; id < tree.size(); ++id) {
    if (tree.children(id).empty()) continue;
    by_birth[id] = table.classes.size();
    table.classes.push_back({table.classes.size() + 1, id, {}});
  }
  table.visible.resize(tree.size());
  for (std::size_t id = 0; id < tree.size(); ++id) {
    for (const auto& d : tree.node(id).exceptional) {
      auto it = by_birth.find(d.birth);
      if (it == by_birth.end())
        throw InvariantViolation("chart " + std::to_string(id) + " carries a divisor with unknown birth " +
                                 std::to_string(d.birth));
      auto& cls = table.classes[it->second];
      cls.members.push_back({id, d.variable, d.equation.to_string()});
      table.visible[id].push_back(cls.index);
    }
    std::sort(table.visible[id].begin(), table.visible[id].end());
  }
  return table;
}

}  // namespace resing
