#pragma once

#include "nilcohom/cocycles.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace nilcohom::io {

using Json = nlohmann::ordered_json;

/// Malformed input document; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
inline Json to_json(const Int& x) {
  if (auto v = to_int64(x)) return *v;
  return x.str();
}

inline Int int_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Int(s);
  }
  throw ParseError("field '" + field + "': expected an integer");
}

inline std::size_t natural_from_json(const Json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::size_t>(j.get<std::int64_t>());
  throw ParseError("field '" + field + "': expected a non-negative integer");
}

inline Json to_json(const IntVector& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(to_json(x));
  return arr;
}

inline IntVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array");
  IntVector v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(int_from_json(j[k], field + "[" + std::to_string(k) + "]"));
  return v;
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.is_object()) throw ParseError("field '" + context + "': expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + (context.empty() ? key : context + "." + key) + "'");
  return *it;
}

// -- presentations ---------------------------------------------------------

inline Json to_json(const GroupPresentation& P) {
  Json brackets = Json::array();
  for (const auto& [key, y] : P.brackets) {
    if (is_zero(y)) continue;
    Json e;
    e["i"] = key.first + 1;
    e["j"] = key.second + 1;
    e["y"] = to_json(y);
    brackets.push_back(std::move(e));
  }
  Json j;
  j["n"] = P.n;
  j["m"] = P.m;
  j["brackets"] = std::move(brackets);
  return j;
}

/// Structural parse only; range and rank conditions are left to validate().
inline GroupPresentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("presentation: expected a JSON object");
  GroupPresentation P;
  P.n = natural_from_json(require(j, "n", ""), "n");
  P.m = natural_from_json(require(j, "m", ""), "m");
  auto it = j.find("brackets");
  if (it == j.end()) return P;
  if (!it->is_array()) throw ParseError("field 'brackets': expected an array");
  for (std::size_t k = 0; k < it->size(); ++k) {
    const std::string ctx = "brackets[" + std::to_string(k) + "]";
    const Json& e = (*it)[k];
    const std::size_t i = natural_from_json(require(e, "i", ctx), ctx + ".i");
    const std::size_t jj = natural_from_json(require(e, "j", ctx), ctx + ".j");
    if (i < 1) throw ParseError("field '" + ctx + ".i': indices are 1-based");
    if (jj < 1) throw ParseError("field '" + ctx + ".j': indices are 1-based");
    IntVector y = vector_from_json(require(e, "y", ctx), ctx + ".y");
    if (!P.brackets.emplace(std::pair{i - 1, jj - 1}, std::move(y)).second)
      throw ParseError("field '" + ctx + "': duplicate bracket (" + std::to_string(i) + "," + std::to_string(jj) + ")");
  }
  return P;
}

inline GroupPresentation parse_presentation(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return presentation_from_json(j);
}

// -- invariants and reports -------------------------------------------------

inline Json to_json(const AbelianGroupInvariants& g) {
  Json j;
  j["free"] = g.free_rank();
  j["torsion"] = to_json(IntVector(g.torsion()));
  return j;
}

inline AbelianGroupInvariants invariants_from_json(const Json& j, const std::string& field) {
  const std::size_t free = natural_from_json(require(j, "free", field), field + ".free");
  IntVector torsion = vector_from_json(require(j, "torsion", field), field + ".torsion");
  return AbelianGroupInvariants::from_orders(free, std::move(torsion));
}

inline Json to_json(const H2Report& r) {
  Json j;
  j["total"] = to_json(r.total);
  j["coker_cstar"] = to_json(r.coker_cstar);
  j["hom_part_rank"] = r.hom_part_rank;
  j["ker_c_rank"] = r.ker_c_rank;
  j["ext_part"] = to_json(r.ext_part);
  j["crosscheck"] = to_json(r.crosscheck);
  j["agree"] = r.agree;
  return j;
}

// -- cocycles ---------------------------------------------------------------

inline Json to_json(const Cocycle& w) {
  Json j;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CocycleLemmaX>) {
          j["kind"] = "lemmax";
          j["data"] = to_json(c.f);
          j["order"] = to_json(c.order);
        } else if constexpr (std::is_same_v<T, CocycleLemmaY>) {
          j["kind"] = "lemmay";
          Json rows = Json::array();
          for (std::size_t t = 0; t < c.phi.rows(); ++t) rows.push_back(to_json(c.phi.row(t)));
          j["data"] = std::move(rows);
          j["order"] = 0;
        } else {
          j["kind"] = "sum";
          Json terms = Json::array();
          for (const auto& term : c.terms) {
            Json e;
            e["coefficient"] = to_json(term.coefficient);
            e["cocycle"] = to_json(term.cocycle);
            terms.push_back(std::move(e));
          }
          j["data"] = std::move(terms);
          j["order"] = 0;
        }
      },
      w.value);
  return j;
}

inline Cocycle cocycle_from_json(const Json& j, const std::string& field = "cocycle") {
  const Json& kind = require(j, "kind", field);
  const Json& data = require(j, "data", field);
  if (!kind.is_string()) throw ParseError("field '" + field + ".kind': expected a string");
  const auto& k = kind.get_ref<const std::string&>();
  if (k == "lemmax") {
    CocycleLemmaX x{vector_from_json(data, field + ".data"), 0};
    if (auto it = j.find("order"); it != j.end()) x.order = int_from_json(*it, field + ".order");
    return x;
  }
  if (k == "lemmay") {
    if (!data.is_array()) throw ParseError("field '" + field + ".data': expected an array of rows");
    std::vector<IntVector> rows;
    for (std::size_t t = 0; t < data.size(); ++t)
      rows.push_back(vector_from_json(data[t], field + ".data[" + std::to_string(t) + "]"));
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    IntMatrix phi(rows.size(), cols);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (rows[t].size() != cols) throw ParseError("field '" + field + ".data': ragged matrix");
      for (std::size_t l = 0; l < cols; ++l) phi(t, l) = rows[t][l];
    }
    return CocycleLemmaY{std::move(phi)};
  }
  if (k == "sum") {
    if (!data.is_array()) throw ParseError("field '" + field + ".data': expected an array of terms");
    CocycleSum s;
    for (std::size_t t = 0; t < data.size(); ++t) {
      const std::string ctx = field + ".data[" + std::to_string(t) + "]";
      s.terms.push_back({int_from_json(require(data[t], "coefficient", ctx), ctx + ".coefficient"),
                         cocycle_from_json(require(data[t], "cocycle", ctx), ctx + ".cocycle")});
    }
    return s;
  }
  throw ParseError("field '" + field + ".kind': unknown kind '" + k + "'");
}

inline Json to_json(const GroupElement& g) {
  Json j;
  j["a"] = to_json(g.a);
  j["b"] = to_json(g.b);
  return j;
}

}  // namespace nilcohom::io
