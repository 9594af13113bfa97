#pragma once

// Instance file format
// --------------------
// A JSON object with exactly these members:
//
//   "n"      nonnegative integer, the node count. Nodes are 0-based ids 0..n-1
//            (the 1-based consumer [n] of the model maps to id i-1).
//   "edges"  array of [u, v, w] integer triples with 0 <= u < v < n and w >= 1.
//            Each unordered pair appears at most once.
//   "nu"     optional array of n nonnegative integers (intrinsic values).
//            Omitted means all zero.
//
// The writer emits a canonical layout: edges sorted by (u, v), one per line,
// and "nu" always present. Reading and re-writing a canonical file is
// byte-identical.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core.hpp"

namespace netprice {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Money json_integer(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError("instance file: " + where + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Money>::max()))
    throw FormatError("instance file: " + where + " is out of range");
  return j.get<Money>();
}

template <typename Range>
void write_int_list(std::ostream& out, const Range& values) {
  out << '[';
  bool first = true;
  for (auto v : values) {
    if (!first) out << ", ";
    out << v;
    first = false;
  }
  out << ']';
}

}  // namespace detail

inline PncInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("instance file: top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "n" && it.key() != "edges" && it.key() != "nu") throw FormatError("instance file: unknown field \"" + it.key() + "\"");
  if (!doc.contains("n")) throw FormatError("instance file: missing field \"n\"");
  const Money n = detail::json_integer(doc["n"], "\"n\"");
  if (n < 0) throw FormatError("instance file: \"n\" must be nonnegative");

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const auto& list = doc["edges"];
    if (!list.is_array()) throw FormatError("instance file: \"edges\" must be an array");
    edges.reserve(list.size());
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& e = list[k];
      const std::string where = "edges[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 3) throw FormatError("instance file: " + where + " must be a [u, v, w] triple");
      const Money u = detail::json_integer(e[0], where + "[0]");
      const Money v = detail::json_integer(e[1], where + "[1]");
      const Money w = detail::json_integer(e[2], where + "[2]");
      if (u < 0 || v >= n || !(u < v)) throw FormatError("instance file: " + where + " needs 0 <= u < v < n");
      if (w < 1) throw FormatError("instance file: " + where + " needs weight >= 1");
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    }
  }

  std::vector<Money> nu(static_cast<std::size_t>(n), 0);
  if (doc.contains("nu")) {
    const auto& list = doc["nu"];
    if (!list.is_array() || list.size() != static_cast<std::size_t>(n))
      throw FormatError("instance file: \"nu\" must be an array of n = " + std::to_string(n) + " integers");
    for (std::size_t i = 0; i < list.size(); ++i) {
      nu[i] = detail::json_integer(list[i], "nu[" + std::to_string(i) + "]");
      if (nu[i] < 0) throw FormatError("instance file: nu[" + std::to_string(i) + "] is negative");
    }
  }

  try {
    return PncInstance(WeightedGraph(static_cast<std::size_t>(n), edges), std::move(nu));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("instance file: ") + e.what());
  }
}

inline PncInstance read_instance(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("instance file: ") + e.what());
  }
  return instance_from_json(doc);
}

inline PncInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

inline void write_instance(std::ostream& out, const PncInstance& instance) {
  const auto edges = instance.graph().edges();
  out << "{\n  \"n\": " << instance.node_count() << ",\n  \"edges\": [";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out << (k == 0 ? "\n    " : ",\n    ") << '[' << edges[k].u << ", " << edges[k].v << ", " << edges[k].weight << ']';
  }
  out << (edges.empty() ? "],\n" : "\n  ],\n");
  out << "  \"nu\": ";
  detail::write_int_list(out, instance.intrinsic_values());
  out << "\n}\n";
}

inline std::string format_instance(const PncInstance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

inline nlohmann::json trace_to_json(const SaleTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds) rounds.push_back({{"price", r.price}, {"buyers", r.buyers}, {"revenue", r.revenue}});
  return {{"rounds", rounds}, {"residual", trace.residual}, {"total_revenue", trace.total_revenue}};
}

}  // namespace netprice
