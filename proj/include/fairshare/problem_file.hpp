// Copyright 2026 The fairshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file fairshare/problem_file.hpp
///
/// JSON problem files. A file holds either an explicit generator list
///
///   {"n": 2, "generators": [[8, 2], [2, 4]], "surplus": false}
///
/// or an application description
///
///   {"application": {"kind": "bankruptcy", "claims": [100, 200, 400], "estate": 300}}
///
/// Numbers may be JSON integers, JSON floats (taken at their exact binary
/// value) or strings such as "1/3" or "0.1" (parsed exactly).

#ifndef FAIRSHARE_PROBLEM_FILE_HPP
#define FAIRSHARE_PROBLEM_FILE_HPP

#include "fairshare/claims.hpp"
#include "fairshare/core.hpp"
#include "fairshare/problems.hpp"
#include "fairshare/scalar.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fairshare {

/// Malformed problem file (bad JSON, missing keys, ragged arrays).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct player_group {
  std::size_t count = 0;
  rational value;
};

struct infrastructure_spec {
  std::vector<point<rational>> options;
  std::optional<std::vector<rational>> costs;
};

struct common_resource_spec {
  std::vector<rational> alpha;
  rational wbar;
};

struct bankruptcy_spec {
  std::vector<rational> claims;
  rational estate;
};

struct division_spec {
  std::vector<rational> valuations;
};

struct public_good_spec {
  std::vector<rational> values;
  rational cost;
  /// Set when the file declared the households as groups of identical players.
  std::vector<player_group> groups;
};

using application_spec =
    std::variant<infrastructure_spec, common_resource_spec, bankruptcy_spec, division_spec, public_good_spec>;

struct problem_file {
  std::size_t n = 0;
  bool surplus = false;
  std::optional<backend> preferred_backend;
  std::vector<point<rational>> generators;
  std::optional<application_spec> application;
};

inline std::string_view application_kind(const application_spec& app) {
  struct {
    std::string_view operator()(const infrastructure_spec&) const { return "infrastructure"; }
    std::string_view operator()(const common_resource_spec&) const { return "common-resource"; }
    std::string_view operator()(const bankruptcy_spec&) const { return "bankruptcy"; }
    std::string_view operator()(const division_spec&) const { return "division"; }
    std::string_view operator()(const public_good_spec&) const { return "public-good"; }
  } visitor;
  return std::visit(visitor, app);
}

namespace detail {

using json = nlohmann::json;

inline rational number_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return rational(integer(j.get<std::uint64_t>()));
      return rational(j.get<std::int64_t>());
    }
    if (j.is_number_float()) return decimal_rational(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw parse_error(where + ": " + e.what());
  }
  throw parse_error(where + ": expected a number");
}

inline std::vector<rational> vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array");
  std::vector<rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<point<rational>> matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array of arrays");
  std::vector<point<rational>> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(vector_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw parse_error(where + ": missing key \"" + key + "\"");
  return *it;
}

inline json number_to_json(const rational& x) {
  if (denominator(x) == 1) {
    const auto& num = numerator(x);
    if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max())
      return num.convert_to<std::int64_t>();
  }
  return format_scalar(x);
}

inline json vector_to_json(const std::vector<rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(number_to_json(x));
  return a;
}

inline application_spec application_from_json(const json& app) {
  if (!app.is_object()) throw parse_error("application: expected an object");
  const std::string kind = require(app, "kind", "application").get<std::string>();
  if (kind == "infrastructure") {
    infrastructure_spec s;
    s.options = matrix_from_json(require(app, "options", "application"), "application.options");
    if (app.contains("costs")) s.costs = vector_from_json(app["costs"], "application.costs");
    return s;
  }
  if (kind == "common-resource") {
    return common_resource_spec{vector_from_json(require(app, "alpha", "application"), "application.alpha"),
                                number_from_json(require(app, "wbar", "application"), "application.wbar")};
  }
  if (kind == "bankruptcy") {
    return bankruptcy_spec{vector_from_json(require(app, "claims", "application"), "application.claims"),
                           number_from_json(require(app, "estate", "application"), "application.estate")};
  }
  if (kind == "division") {
    return division_spec{vector_from_json(require(app, "valuations", "application"), "application.valuations")};
  }
  if (kind == "public-good") {
    public_good_spec s;
    s.cost = number_from_json(require(app, "cost", "application"), "application.cost");
    if (app.contains("groups")) {
      const auto& groups = app["groups"];
      if (!groups.is_array()) throw parse_error("application.groups: expected an array");
      for (std::size_t k = 0; k < groups.size(); ++k) {
        const std::string where = "application.groups[" + std::to_string(k) + "]";
        const auto& count = require(groups[k], "count", where);
        if (!count.is_number_unsigned() || count.get<std::size_t>() == 0)
          throw parse_error(where + ".count: expected a positive integer");
        player_group g{count.get<std::size_t>(), number_from_json(require(groups[k], "value", where), where + ".value")};
        s.values.insert(s.values.end(), g.count, g.value);
        s.groups.push_back(std::move(g));
      }
    } else {
      s.values = vector_from_json(require(app, "values", "application"), "application.values");
    }
    return s;
  }
  throw parse_error("application.kind: unknown kind '" + kind + "'");
}

inline std::size_t application_players(const application_spec& app) {
  struct {
    std::size_t operator()(const infrastructure_spec& s) const { return s.options.empty() ? 0 : s.options.front().size(); }
    std::size_t operator()(const common_resource_spec& s) const { return s.alpha.size(); }
    std::size_t operator()(const bankruptcy_spec& s) const { return s.claims.size(); }
    std::size_t operator()(const division_spec& s) const { return s.valuations.size(); }
    std::size_t operator()(const public_good_spec& s) const { return s.values.size(); }
  } visitor;
  return std::visit(visitor, app);
}

inline bool application_has_surplus(const application_spec& app) {
  if (auto* s = std::get_if<infrastructure_spec>(&app)) return s->costs.has_value();
  return std::holds_alternative<public_good_spec>(app);
}

}  // namespace detail

inline problem_file parse_problem_file(const nlohmann::json& doc) {
  using detail::json;
  if (!doc.is_object()) throw parse_error("problem file: expected a JSON object");
  problem_file f;
  const bool has_generators = doc.contains("generators");
  const bool has_application = doc.contains("application");
  if (has_generators == has_application)
    throw parse_error("problem file: exactly one of \"generators\" or \"application\" is required");

  if (doc.contains("backend")) {
    const auto name = doc["backend"].get<std::string>();
    if (name == "exact") f.preferred_backend = backend::exact;
    else if (name == "float") f.preferred_backend = backend::floating;
    else throw parse_error("backend: expected \"exact\" or \"float\"");
  }
  if (doc.contains("surplus")) {
    if (!doc["surplus"].is_boolean()) throw parse_error("surplus: expected a boolean");
    f.surplus = doc["surplus"].get<bool>();
  }
  std::optional<std::size_t> declared_n;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0)
      throw parse_error("n: expected a positive integer");
    declared_n = doc["n"].get<std::size_t>();
  }

  if (has_generators) {
    if (!declared_n) throw parse_error("problem file: missing key \"n\"");
    f.n = *declared_n;
    f.generators = detail::matrix_from_json(doc["generators"], "generators");
    if (f.generators.empty()) throw parse_error("generators: at least one generator is required");
    const std::size_t dim = f.n + (f.surplus ? 1 : 0);
    for (std::size_t k = 0; k < f.generators.size(); ++k)
      if (f.generators[k].size() != dim)
        throw parse_error("generators[" + std::to_string(k) + "]: expected " + std::to_string(dim) + " entries, got " +
                          std::to_string(f.generators[k].size()));
  } else {
    f.application = detail::application_from_json(doc["application"]);
    f.n = detail::application_players(*f.application);
    if (f.n == 0) throw parse_error("application: no players");
    if (declared_n && *declared_n != f.n)
      throw parse_error("n: file declares " + std::to_string(*declared_n) + " players but the application has " +
                        std::to_string(f.n));
    if (auto* s = std::get_if<infrastructure_spec>(&*f.application)) {
      for (std::size_t k = 0; k < s->options.size(); ++k)
        if (s->options[k].size() != f.n) throw parse_error("application.options: ragged option lengths");
    }
    f.surplus = detail::application_has_surplus(*f.application);
  }
  return f;
}

inline problem_file parse_problem_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_problem_file(doc);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("problem file: ") + e.what());
  }
}

inline problem_file read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

inline nlohmann::json to_json(const problem_file& f) {
  using detail::json;
  json doc = json::object();
  doc["n"] = f.n;
  doc["surplus"] = f.surplus;
  if (f.preferred_backend) doc["backend"] = *f.preferred_backend == backend::exact ? "exact" : "float";
  if (!f.application) {
    json gens = json::array();
    for (const auto& g : f.generators) gens.push_back(detail::vector_to_json(g));
    doc["generators"] = std::move(gens);
    return doc;
  }
  json app = json::object();
  app["kind"] = std::string(application_kind(*f.application));
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, infrastructure_spec>) {
          json opts = json::array();
          for (const auto& o : s.options) opts.push_back(detail::vector_to_json(o));
          app["options"] = std::move(opts);
          if (s.costs) app["costs"] = detail::vector_to_json(*s.costs);
        } else if constexpr (std::is_same_v<S, common_resource_spec>) {
          app["alpha"] = detail::vector_to_json(s.alpha);
          app["wbar"] = detail::number_to_json(s.wbar);
        } else if constexpr (std::is_same_v<S, bankruptcy_spec>) {
          app["claims"] = detail::vector_to_json(s.claims);
          app["estate"] = detail::number_to_json(s.estate);
        } else if constexpr (std::is_same_v<S, division_spec>) {
          app["valuations"] = detail::vector_to_json(s.valuations);
        } else {
          app["cost"] = detail::number_to_json(s.cost);
          if (!s.groups.empty()) {
            json groups = json::array();
            for (const auto& g : s.groups) groups.push_back({{"count", g.count}, {"value", detail::number_to_json(g.value)}});
            app["groups"] = std::move(groups);
          } else {
            app["values"] = detail::vector_to_json(s.values);
          }
        }
      },
      *f.application);
  doc["application"] = std::move(app);
  return doc;
}

/// A problem file turned into solver inputs for scalar type T.
template <Scalar T>
struct resolved_problem {
  std::size_t players = 0;
  std::string kind;  // "generators" or the application kind
  std::optional<bargaining_problem<T>> plain;
  std::optional<surplus_problem<T>> surplus;
  /// Closed-form claims, when the application provides them.
  std::optional<claim_oracle<T>> oracle;
  /// Utilities of the efficient alternative when there is no generator list.
  std::optional<point<T>> alternative;
  /// group_of[i] for applications that declare identical players.
  std::vector<std::size_t> group_of;
  std::vector<player_group> groups;
};

namespace detail {

template <Scalar T>
std::vector<T> cast_all(const std::vector<rational>& xs) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(from_rational<T>(x));
  return out;
}

template <Scalar T>
std::vector<point<T>> cast_all(const std::vector<point<rational>>& xs) {
  std::vector<point<T>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(cast_all<T>(x));
  return out;
}

}  // namespace detail

template <Scalar T>
resolved_problem<T> resolve(const problem_file& f) {
  resolved_problem<T> r;
  r.players = f.n;
  if (!f.application) {
    r.kind = "generators";
    if (f.surplus) r.surplus = make_surplus_problem(detail::cast_all<T>(f.generators));
    else r.plain = make_problem(detail::cast_all<T>(f.generators));
    return r;
  }
  r.kind = std::string(application_kind(*f.application));
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, infrastructure_spec>) {
          auto options = detail::cast_all<T>(s.options);
          if (s.costs) {
            auto costs = detail::cast_all<T>(*s.costs);
            r.surplus = infrastructure<T>(std::move(options), costs);
          } else {
            r.plain = infrastructure<T>(std::move(options));
          }
        } else if constexpr (std::is_same_v<S, common_resource_spec>) {
          if constexpr (scalar_traits<T>::exact) {
            throw error(errc::unsupported, "common-resource claims are irrational; use the float backend");
          } else {
            auto alpha = detail::cast_all<double>(s.alpha);
            auto inst = common_resource(alpha, to_double(s.wbar));
            r.oracle = std::move(inst.oracle);
            r.alternative = std::move(inst.utilities);
          }
        } else if constexpr (std::is_same_v<S, bankruptcy_spec>) {
          auto claims = detail::cast_all<T>(s.claims);
          T estate = from_rational<T>(s.estate);
          r.oracle = bankruptcy_oracle<T>(claims, estate);
          if (claims.size() <= max_bankruptcy_vertex_players) r.plain = bankruptcy_polytope<T>(claims, estate);
        } else if constexpr (std::is_same_v<S, division_spec>) {
          r.plain = indivisible_good<T>(detail::cast_all<T>(s.valuations));
        } else {
          auto values = detail::cast_all<T>(s.values);
          T cost = from_rational<T>(s.cost);
          r.oracle = public_good_oracle<T>(values, cost);
          r.surplus = public_good<T>(values, cost);
          if (!s.groups.empty()) {
            r.groups = s.groups;
            for (std::size_t g = 0; g < s.groups.size(); ++g) r.group_of.insert(r.group_of.end(), s.groups[g].count, g);
          }
        }
      },
      *f.application);
  return r;
}

/// Generator-form file equivalent to `f` (same claims on every coalition).
/// Applications without a generator representation are returned unchanged.
inline problem_file to_generator_form(const problem_file& f) {
  if (!f.application || std::holds_alternative<common_resource_spec>(*f.application)) return f;
  auto r = resolve<rational>(f);
  problem_file out;
  out.n = f.n;
  out.preferred_backend = f.preferred_backend;
  if (r.surplus) {
    out.surplus = true;
    out.generators = r.surplus->generators();
  } else if (r.plain) {
    out.generators = r.plain->generators();
  } else {
    return f;
  }
  return out;
}

}  // namespace fairshare

#endif  // FAIRSHARE_PROBLEM_FILE_HPP
