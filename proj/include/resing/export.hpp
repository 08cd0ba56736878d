#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "resing/tree.hpp"

namespace resing {

enum class ExportFormat { dot, json, text };

inline ExportFormat export_format_from_string(const std::string& s) {
  if (s == "dot") return ExportFormat::dot;
  if (s == "json") return ExportFormat::json;
  if (s == "text") return ExportFormat::text;
  throw DomainError("unknown export format '" + s + "' (expected dot, json or text)");
}

namespace detail {

inline std::string visible_set(const DivisorTable& table, std::size_t id) {
  std::string out = "{";
  for (std::size_t k = 0; k < table.visible.at(id).size(); ++k)
    out += (k ? "," : "") + std::string("E") + std::to_string(table.visible[id][k]);
  return out + "}";
}

inline void check_table(const ChartTree& tree, const DivisorTable& table) {
  if (table.visible.size() != tree.size()) throw DomainError("divisor table does not match the tree");
}

}  // namespace detail

/// Graphviz digraph: one box per chart labelled with its id and visible
/// divisors, one edge per blow-up labelled d=<center dimension>; final
/// charts get a double border.
inline std::string export_dot(const ChartTree& tree, const DivisorTable& table) {
  detail::check_table(tree, table);
  std::ostringstream os;
  os << "digraph resolution {\n";
  os << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& c = tree.node(id);
    os << "  n" << id << " [label=\"" << id << "\\nE=" << detail::visible_set(table, id) << "\"";
    if (c.final) os << ", peripheries=2";
    if (c.empty_variety) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : tree.edges())
    os << "  n" << e.parent << " -> n" << e.child << " [label=\"d=" << e.center_dim << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace detail {

using nlohmann::json;

inline json poly_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"coefficient", to_string(c)}});
  return {{"text", p.to_string()}, {"terms", terms}};
}

inline Polynomial poly_from_json(const json& j, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& t : j.at("terms")) {
    Exponent e = t.at("exponent").get<Exponent>();
    if (e.size() != ring->size()) throw DomainError("term exponent does not match the chart ring");
    p.add_term(e, rational_from_string(t.at("coefficient").get<std::string>()));
  }
  return p;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json chart_to_json(const Chart& c, std::size_t id, const DivisorTable& table) {
  json j;
  j["id"] = id;
  j["parent"] = optional_json(c.parent);
  j["variables"] = c.ambient->names();
  json ideal = json::array();
  for (const auto& g : c.ideal) ideal.push_back(poly_to_json(g));
  j["ideal"] = ideal;
  json exc = json::array();
  for (const auto& d : c.exceptional)
    exc.push_back({{"variable", d.variable}, {"birth", d.birth}, {"equation", poly_to_json(d.equation)}});
  j["exceptional"] = exc;
  json images = json::array();
  for (const auto& g : c.images) images.push_back(poly_to_json(g));
  j["images"] = images;
  if (c.center) {
    json point = json::array();
    for (const auto& q : c.center->point) point.push_back(to_string(q));
    j["center"] = {{"variables", c.center->variables}, {"point", point}};
  } else {
    j["center"] = nullptr;
  }
  j["chart_variable"] = optional_json(c.chart_variable);
  j["center_dim"] = optional_json(c.center_dim);
  j["final"] = c.final;
  j["empty_variety"] = c.empty_variety;
  if (c.invariant) {
    json levels = json::array();
    for (const auto& l : c.invariant->levels)
      levels.push_back({{"order", to_string(l.order)}, {"count", l.exceptional_count}});
    j["invariant"] = {{"pending", c.invariant->pending}, {"levels", levels}};
  } else {
    j["invariant"] = nullptr;
  }
  json visible = json::array();
  for (auto k : table.visible.at(id)) visible.push_back("E" + std::to_string(k));
  j["visible_divisors"] = visible;
  return j;
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

inline Chart chart_from_json(const json& j, FieldSpec field) {
  RingPtr ring = make_ring(j.at("variables").get<std::vector<std::string>>(), field);
  Chart c;
  c.ambient = ring;
  for (const auto& g : j.at("ideal")) c.ideal.push_back(poly_from_json(g, ring));
  for (const auto& d : j.at("exceptional"))
    c.exceptional.push_back(
        {d.at("variable").get<std::string>(), d.at("birth").get<std::size_t>(), poly_from_json(d.at("equation"), ring)});
  for (const auto& g : j.at("images")) c.images.push_back(poly_from_json(g, ring));
  c.parent = optional_from<std::size_t>(j.at("parent"));
  if (!j.at("center").is_null()) {
    Center center;
    center.variables = j["center"].at("variables").get<std::vector<std::size_t>>();
    for (const auto& q : j["center"].at("point")) center.point.push_back(rational_from_string(q.get<std::string>()));
    c.center = center;
  }
  c.chart_variable = optional_from<std::size_t>(j.at("chart_variable"));
  c.center_dim = optional_from<std::size_t>(j.at("center_dim"));
  c.final = j.at("final").get<bool>();
  c.empty_variety = j.at("empty_variety").get<bool>();
  if (!j.at("invariant").is_null()) {
    ResolutionInvariant inv;
    inv.pending = j["invariant"].at("pending").get<std::uint32_t>();
    for (const auto& l : j["invariant"].at("levels"))
      inv.levels.push_back({rational_from_string(l.at("order").get<std::string>()), l.at("count").get<std::uint32_t>()});
    c.invariant = inv;
  }
  return c;
}

}  // namespace detail

inline constexpr const char* kTreeFormat = "resing-chart-tree";
inline constexpr int kTreeFormatVersion = 1;

inline nlohmann::json tree_to_json(const ChartTree& tree, const DivisorTable& table) {
  using nlohmann::json;
  detail::check_table(tree, table);
  json j;
  j["format"] = kTreeFormat;
  j["version"] = kTreeFormatVersion;
  j["kind"] = to_string(tree.kind());
  j["field"] = {{"characteristic", tree.root().ambient->field().characteristic()}};
  json nodes = json::array();
  for (std::size_t id = 0; id < tree.size(); ++id) nodes.push_back(detail::chart_to_json(tree.node(id), id, table));
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back({{"parent", e.parent}, {"child", e.child}, {"center_dim", e.center_dim}});
  j["edges"] = edges;
  json divisors = json::array();
  for (const auto& cls : table.classes) {
    json members = json::array();
    for (const auto& m : cls.members)
      members.push_back({{"chart", m.chart}, {"variable", m.variable}, {"equation", m.equation}});
    divisors.push_back({{"name", cls.name()}, {"index", cls.index}, {"birth", cls.birth}, {"members", members}});
  }
  j["divisors"] = divisors;
  return j;
}

inline std::string export_json(const ChartTree& tree, const DivisorTable& table) {
  return tree_to_json(tree, table).dump(2) + "\n";
}

/// Inverse of export_json. Divisor classes and visibility are derived data
/// and are recomputed rather than read back.
inline ChartTree import_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    if (j.at("format").get<std::string>() != kTreeFormat) throw DomainError("not a chart tree document");
    if (j.at("version").get<int>() != kTreeFormatVersion) throw DomainError("unsupported chart tree version");
    FieldSpec field(j.at("field").at("characteristic").get<std::uint64_t>());
    const auto& nodes = j.at("nodes");
    if (nodes.empty()) throw DomainError("chart tree without nodes");
    ChartTree tree(tree_kind_from_string(j.at("kind").get<std::string>()), detail::chart_from_json(nodes[0], field));
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (nodes[i].at("id").get<std::size_t>() != i) throw DomainError("chart ids must be consecutive");
      Chart c = detail::chart_from_json(nodes[i], field);
      if (!c.parent) throw DomainError("non-root chart " + std::to_string(i) + " has no parent");
      if (*c.parent >= i) throw DomainError("chart " + std::to_string(i) + " precedes its parent");
      tree.add_child(*c.parent, std::move(c));
    }
    const auto edges = tree.edges();
    const auto& jedges = j.at("edges");
    if (jedges.size() != edges.size()) throw DomainError("edge list does not match the node parents");
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (jedges[k].at("parent").get<std::size_t>() != edges[k].parent ||
          jedges[k].at("child").get<std::size_t>() != edges[k].child ||
          jedges[k].at("center_dim").get<std::size_t>() != edges[k].center_dim)
        throw DomainError("edge list does not match the node parents");
    return tree;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed chart tree: ") + e.what());
  }
}

/// Human-readable listing of every chart.
inline std::string export_text(const ChartTree& tree, const DivisorTable& table) {
  detail::check_table(tree, table);
  std::ostringstream os;
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& c = tree.node(id);
    os << "chart " << id;
    if (c.parent) os << " (parent " << *c.parent << ", d=" << *c.center_dim << ")";
    if (c.final) os << " final";
    if (c.empty_variety) os << " empty";
    os << "  E=" << detail::visible_set(table, id) << "\n";
    os << show_chart(c);
  }
  return os.str();
}

inline std::string export_tree(const ChartTree& tree, const DivisorTable& table, ExportFormat format) {
  switch (format) {
    case ExportFormat::dot: return export_dot(tree, table);
    case ExportFormat::json: return export_json(tree, table);
    case ExportFormat::text: return export_text(tree, table);
  }
  throw DomainError("unknown export format");
}

inline std::string export_tree(const ChartTree& tree, const DivisorTable& table, const std::string& format) {
  return export_tree(tree, table, export_format_from_string(format));
}

}  // namespace resing
