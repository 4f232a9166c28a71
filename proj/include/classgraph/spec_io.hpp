#pragma once

// Group spec files: {"name": ..., "construct": node} with node one of
//   {"op":"cyclic","n":int}
//   {"op":"abelian","orders":[int]}
//   {"op":"frobenius","kernel":[primes],"complement":int,"multipliers":[int]}  (multipliers optional)
//   {"op":"semidirect","kernel":[int],"top":[int],"multipliers":[[int]]}
//   {"op":"direct","factors":[node]}
//   {"op":"perm","degree":int,"generators":[[int]]}
// Unknown keys are rejected. Serialization emits keys in the order above so
// that parse -> serialize is byte-stable.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "classgraph/error.hpp"
#include "classgraph/group_expr.hpp"

namespace classgraph {

using Json = nlohmann::ordered_json;

struct GroupSpecFile {
  std::string name;
  GroupExpr construct;

  friend bool operator==(const GroupSpecFile&, const GroupSpecFile&) = default;
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline void expect_keys(const Json& j, std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) parse_fail("expected an object");
  for (auto key : required) {
    if (!j.contains(std::string(key))) parse_fail("missing key \"" + std::string(key) + "\"");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || key == k;
    for (auto k : optional) known = known || key == k;
    if (!known) parse_fail("unknown key \"" + key + "\"");
  }
}

inline std::uint64_t as_uint(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    parse_fail(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::vector<std::uint64_t> as_uint_list(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array");
  std::vector<std::uint64_t> out;
  for (const auto& v : j) out.push_back(as_uint(v, what + " entry"));
  return out;
}

}  // namespace detail

inline GroupExpr parse_group_expr(const Json& j) {
  using namespace detail;
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) parse_fail("node needs a string \"op\"");
  const auto op = j["op"].get<std::string>();
  if (op == "cyclic") {
    expect_keys(j, {"op", "n"});
    return cyclic(as_uint(j["n"], "n"));
  }
  if (op == "abelian") {
    expect_keys(j, {"op", "orders"});
    return abelian(as_uint_list(j["orders"], "orders"));
  }
  if (op == "frobenius") {
    expect_keys(j, {"op", "kernel", "complement"}, {"multipliers"});
    FrobeniusNode node{as_uint_list(j["kernel"], "kernel"), as_uint(j["complement"], "complement"), std::nullopt};
    if (j.contains("multipliers")) node.multipliers = as_uint_list(j["multipliers"], "multipliers");
    return GroupExpr{std::move(node)};
  }
  if (op == "semidirect") {
    expect_keys(j, {"op", "kernel", "top", "multipliers"});
    SemidirectNode node{as_uint_list(j["kernel"], "kernel"), as_uint_list(j["top"], "top"), {}};
    if (!j["multipliers"].is_array()) parse_fail("multipliers must be an array of arrays");
    for (const auto& row : j["multipliers"]) node.multipliers.push_back(as_uint_list(row, "multipliers row"));
    return GroupExpr{std::move(node)};
  }
  if (op == "direct") {
    expect_keys(j, {"op", "factors"});
    if (!j["factors"].is_array()) parse_fail("factors must be an array");
    DirectNode node;
    for (const auto& f : j["factors"]) node.factors.push_back(parse_group_expr(f));
    return GroupExpr{std::move(node)};
  }
  if (op == "perm") {
    expect_keys(j, {"op", "degree", "generators"});
    PermNode node{as_uint(j["degree"], "degree"), {}};
    if (!j["generators"].is_array()) parse_fail("generators must be an array of arrays");
    for (const auto& gen : j["generators"]) {
      std::vector<Point> images;
      for (auto v : as_uint_list(gen, "generator")) images.push_back(static_cast<Point>(v));
      node.generators.push_back(std::move(images));
    }
    return GroupExpr{std::move(node)};
  }
  parse_fail("unknown op \"" + op + "\"");
}

inline Json to_json(const GroupExpr& expr) {
  struct Visitor {
    Json operator()(const CyclicNode& n) const { return Json{{"op", "cyclic"}, {"n", n.n}}; }
    Json operator()(const AbelianNode& n) const { return Json{{"op", "abelian"}, {"orders", n.orders}}; }
    Json operator()(const FrobeniusNode& n) const {
      Json j{{"op", "frobenius"}, {"kernel", n.kernel}, {"complement", n.complement}};
      if (n.multipliers) j["multipliers"] = *n.multipliers;
      return j;
    }
    Json operator()(const SemidirectNode& n) const {
      return Json{{"op", "semidirect"}, {"kernel", n.kernel}, {"top", n.top}, {"multipliers", n.multipliers}};
    }
    Json operator()(const DirectNode& n) const {
      Json factors = Json::array();
      for (const auto& f : n.factors) factors.push_back(to_json(f));
      return Json{{"op", "direct"}, {"factors", factors}};
    }
    Json operator()(const PermNode& n) const {
      return Json{{"op", "perm"}, {"degree", n.degree}, {"generators", n.generators}};
    }
  };
  return std::visit(Visitor{}, expr.node);
}

inline GroupSpecFile parse_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  detail::expect_keys(j, {"name", "construct"});
  if (!j["name"].is_string()) detail::parse_fail("name must be a string");
  return GroupSpecFile{j["name"].get<std::string>(), parse_group_expr(j["construct"])};
}

inline GroupSpecFile load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

inline Json to_json(const GroupSpecFile& spec) {
  return Json{{"name", spec.name}, {"construct", to_json(spec.construct)}};
}

/// Canonical text: two-space indentation, trailing newline.
inline std::string serialize_spec(const GroupSpecFile& spec) { return to_json(spec).dump(2) + "\n"; }

}  // namespace classgraph
