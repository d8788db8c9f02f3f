#pragma once

// JSON encodings of algebra and module specifications.
//
// Algebra: {"field": {"prime": p} | "rationals", "vertices": [...],
//           "arrows": [{"name","from","to"}], "relations": [[{"coeff","path"}]],
//           "nilpotency_bound": N}
// Module:  {"dims": {vertex: int}, "action": {arrow: [[row-major entries]]}}

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cosilt/algebra.hpp"
#include "cosilt/errors.hpp"
#include "cosilt/field.hpp"
#include "cosilt/module.hpp"

namespace cosilt {

using json = nlohmann::json;

struct FieldDescriptor {
  enum class Kind { prime, rationals };
  Kind kind = Kind::prime;
  unsigned prime = 2;

  std::string name() const { return kind == Kind::rationals ? "Q" : "F_" + std::to_string(prime); }
  json to_json() const { return kind == Kind::rationals ? json("rationals") : json{{"prime", prime}}; }
};

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct RawTerm {
  std::string coeff;
  std::vector<std::string> path;
};

struct AlgebraFile {
  FieldDescriptor field;
  Quiver quiver;
  std::vector<std::vector<RawTerm>> relations;
  int nilpotency_bound = 2;
};

namespace detail {

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string scalar_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError(where + ": expected an integer or a fraction string");
}

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline AlgebraFile parse_algebra(const json& j) {
  AlgebraFile out;
  const json& field = detail::member(j, "field", "algebra");
  if (field.is_string()) {
    if (field.get<std::string>() != "rationals") throw InputError("field: expected \"rationals\" or {\"prime\": p}");
    out.field.kind = FieldDescriptor::Kind::rationals;
  } else {
    const json& p = detail::member(field, "prime", "field");
    if (!p.is_number_unsigned() || !is_prime(p.get<unsigned>())) throw InputError("field.prime: expected a prime");
    out.field.prime = p.get<unsigned>();
  }

  const json& vs = detail::member(j, "vertices", "algebra");
  if (!vs.is_array() || vs.empty()) throw InputError("vertices: expected a nonempty array of names");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) throw InputError("vertices[" + std::to_string(i) + "]: expected a string");
    auto name = vs[i].get<std::string>();
    if (out.quiver.find_vertex(name)) throw InputError("vertices[" + std::to_string(i) + "]: duplicate '" + name + "'");
    out.quiver.vertices.push_back(name);
  }

  const json& as = j.contains("arrows") ? j.at("arrows") : json::array();
  if (!as.is_array()) throw InputError("arrows: expected an array");
  for (std::size_t i = 0; i < as.size(); ++i) {
    std::string where = "arrows[" + std::to_string(i) + "]";
    Arrow a;
    const json& name = detail::member(as[i], "name", where);
    const json& from = detail::member(as[i], "from", where);
    const json& to = detail::member(as[i], "to", where);
    if (!name.is_string() || !from.is_string() || !to.is_string()) throw InputError(where + ": fields must be strings");
    a.name = name.get<std::string>();
    for (const auto& other : out.quiver.arrows)
      if (other.name == a.name) throw InputError(where + ": duplicate arrow '" + a.name + "'");
    auto s = out.quiver.find_vertex(from.get<std::string>());
    auto t = out.quiver.find_vertex(to.get<std::string>());
    if (!s) throw InputError(where + ".from: unknown vertex '" + from.get<std::string>() + "'");
    if (!t) throw InputError(where + ".to: unknown vertex '" + to.get<std::string>() + "'");
    a.source = *s;
    a.target = *t;
    out.quiver.arrows.push_back(std::move(a));
  }

  const json& rs = j.contains("relations") ? j.at("relations") : json::array();
  if (!rs.is_array()) throw InputError("relations: expected an array");
  for (std::size_t r = 0; r < rs.size(); ++r) {
    std::string where = "relations[" + std::to_string(r) + "]";
    if (!rs[r].is_array() || rs[r].empty()) throw InputError(where + ": expected a nonempty array of terms");
    std::vector<RawTerm> rel;
    for (std::size_t k = 0; k < rs[r].size(); ++k) {
      std::string tw = where + "[" + std::to_string(k) + "]";
      RawTerm t;
      t.coeff = detail::scalar_text(detail::member(rs[r][k], "coeff", tw), tw + ".coeff");
      const json& path = detail::member(rs[r][k], "path", tw);
      if (!path.is_array()) throw InputError(tw + ".path: expected an array of arrow names");
      for (const auto& a : path) {
        if (!a.is_string()) throw InputError(tw + ".path: expected arrow names");
        t.path.push_back(a.get<std::string>());
      }
      rel.push_back(std::move(t));
    }
    out.relations.push_back(std::move(rel));
  }

  const json& nb = detail::member(j, "nilpotency_bound", "algebra");
  if (!nb.is_number_integer()) throw InputError("nilpotency_bound: expected an integer");
  out.nilpotency_bound = nb.get<int>();
  if (out.nilpotency_bound < 2) throw InputError("nilpotency_bound: must be at least 2");
  return out;
}

inline AlgebraFile parse_algebra_text(const std::string& text) {
  return parse_algebra(detail::parse_text(text, "algebra spec"));
}

inline AlgebraFile load_algebra(const std::string& path) {
  try {
    return parse_algebra_text(detail::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <class F>
QuiverSpec<F> to_quiver_spec(const AlgebraFile& file) {
  QuiverSpec<F> spec;
  spec.quiver = file.quiver;
  spec.nilpotency_bound = file.nilpotency_bound;
  for (std::size_t r = 0; r < file.relations.size(); ++r) {
    Relation<F> rel;
    for (const auto& t : file.relations[r]) {
      PathTerm<F> term{F::parse(t.coeff), {}};
      for (const auto& name : t.path) term.arrows.push_back(file.quiver.arrow(name));
      rel.push_back(std::move(term));
    }
    spec.relations.push_back(std::move(rel));
  }
  return spec;
}

template <class F>
Module<F> parse_module(const Quiver& q, const json& j) {
  Module<F> m;
  m.dims.assign(q.num_vertices(), 0);
  const json& dims = detail::member(j, "dims", "module");
  if (!dims.is_object()) throw InputError("module.dims: expected an object");
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    auto v = q.find_vertex(it.key());
    if (!v) throw InputError("module.dims: unknown vertex '" + it.key() + "'");
    if (!it->is_number_integer() || it->get<int>() < 0) throw InputError("module.dims." + it.key() + ": expected a count");
    m.dims[*v] = it->get<int>();
  }
  const json& action = j.contains("action") ? j.at("action") : json::object();
  if (!action.is_object()) throw InputError("module.action: expected an object");
  for (auto it = action.begin(); it != action.end(); ++it) q.arrow(it.key());
  for (int a = 0; a < q.num_arrows(); ++a) {
    int rows = m.dims[q.arrows[a].target], cols = m.dims[q.arrows[a].source];
    Mat<F> mat = zeros<F>(rows, cols);
    auto it = action.find(q.arrows[a].name);
    if (it != action.end()) {
      std::string where = "module.action." + q.arrows[a].name;
      if (!it->is_array() || static_cast<int>(it->size()) != rows)
        throw InputError(where + ": expected " + std::to_string(rows) + " rows");
      for (int i = 0; i < rows; ++i) {
        const json& row = (*it)[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
          throw InputError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k) mat(i, k) = F::parse(detail::scalar_text(row[k], where));
      }
    } else if (rows * cols != 0) {
      throw InputError("module.action: missing matrix for arrow '" + q.arrows[a].name + "'");
    }
    m.action.push_back(std::move(mat));
  }
  return m;
}

template <class F>
Module<F> load_module(const Algebra<F>& alg, const std::string& path) {
  try {
    Module<F> m = parse_module<F>(alg.quiver(), detail::parse_text(detail::read_file(path), "module spec"));
    validate_module(alg, m);
    return m;
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <class F>
json module_to_json(const Quiver& q, const Module<F>& m) {
  json dims = json::object(), action = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) dims[q.vertices[v]] = m.dims[v];
  for (int a = 0; a < q.num_arrows(); ++a) {
    json rows = json::array();
    for (Index i = 0; i < m.action[a].rows(); ++i) {
      json row = json::array();
      for (Index k = 0; k < m.action[a].cols(); ++k) row.push_back(m.action[a](i, k).to_string());
      rows.push_back(std::move(row));
    }
    action[q.arrows[a].name] = std::move(rows);
  }
  return json{{"dims", dims}, {"action", action}};
}

}  // namespace cosilt
