#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodeg/degrees.hpp"
#include "hodeg/error.hpp"
#include "hodeg/integer.hpp"

namespace hodeg {

// A stratum of complex dimension k. cells[a] counts the a-cells of a CW model
// of the stratum's closure piece; local_degrees[{n, c}] is delta_{n,c} of the
// complement of its link pair (S^{2m-2k+1}, K^{2m-2k-1}).
struct Stratum {
  std::string id;
  std::int64_t dim = 0;
  std::map<std::int64_t, std::int64_t> cells;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> local_degrees;

  std::int64_t theta(std::int64_t a) const {
    auto it = cells.find(a);
    return it == cells.end() ? 0 : it->second;
  }
};

struct StratificationSpec {
  std::int64_t m = 1;
  std::vector<Stratum> strata;
  // Chains of stratum ids with strictly increasing dimension.
  std::vector<std::vector<std::string>> incidence;

  std::size_t index_of(const std::string& id) const {
    for (std::size_t j = 0; j < strata.size(); ++j)
      if (strata[j].id == id) return j;
    throw input_error("incidence: unknown stratum '" + id + "'");
  }
};

// Throws input_error naming the offending field.
inline void validate(const StratificationSpec& s) {
  if (s.m < 1) throw input_error("m: must be at least 1");
  std::set<std::string> ids;
  for (std::size_t j = 0; j < s.strata.size(); ++j) {
    const Stratum& st = s.strata[j];
    std::string where = "strata[" + std::to_string(j) + "]";
    if (st.id.empty()) throw input_error(where + ".id: must be nonempty");
    if (!ids.insert(st.id).second) throw input_error(where + ".id: duplicate id '" + st.id + "'");
    if (st.dim < 0 || st.dim > s.m)
      throw input_error(where + ".dim: " + std::to_string(st.dim) + " is outside [0, " + std::to_string(s.m) + "]");
    for (const auto& [a, count] : st.cells) {
      std::string f = where + ".cells[" + std::to_string(a) + "]";
      if (a < 0) throw input_error(f + ": negative cell dimension");
      if (count < 0) throw input_error(f + ": negative count");
      if (a > 2 * st.dim && count != 0)
        throw input_error(f + ": must be 0 above real dimension " + std::to_string(2 * st.dim));
    }
    for (const auto& [key, value] : st.local_degrees) {
      auto [n, c] = key;
      std::string f = where + ".local_degrees(n=" + std::to_string(n) + ", i=" + std::to_string(c) + ")";
      if (n < 0 || c < 0) throw input_error(f + ": indices must be nonnegative");
      if (value < 0) throw input_error(f + ": negative degree");
      if (c > s.m - st.dim && value != 0)
        throw input_error(f + ": must be 0 for i > m - dim = " + std::to_string(s.m - st.dim));
    }
  }
  for (std::size_t c = 0; c < s.incidence.size(); ++c) {
    std::string where = "incidence[" + std::to_string(c) + "]";
    const auto& chain = s.incidence[c];
    if (chain.empty()) throw input_error(where + ": empty chain");
    for (std::size_t t = 0; t < chain.size(); ++t) {
      if (!ids.count(chain[t])) throw input_error(where + ": unknown stratum '" + chain[t] + "'");
      if (t > 0 && s.strata[s.index_of(chain[t - 1])].dim >= s.strata[s.index_of(chain[t])].dim)
        throw input_error(where + ": dimensions must strictly increase");
    }
  }
}

// {
//   "m": 1,
//   "strata": [{"id": "p", "dim": 0, "cells": {"0": 1},
//               "local_degrees": [{"n": 0, "i": 1, "value": 2}]}],
//   "incidence": [["p", "C"]]
// }
inline StratificationSpec parse_stratification(const nlohmann::json& j) {
  StratificationSpec s;
  auto need = [](const nlohmann::json& obj, const char* key, const std::string& where) -> const nlohmann::json& {
    if (!obj.is_object() || !obj.contains(key)) throw input_error(where + "." + key + ": missing");
    return obj.at(key);
  };
  auto as_int = [](const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw input_error(where + ": expected an integer");
    return v.get<std::int64_t>();
  };
  s.m = as_int(need(j, "m", "spec"), "m");
  const auto& strata = need(j, "strata", "spec");
  if (!strata.is_array()) throw input_error("strata: expected an array");
  for (std::size_t k = 0; k < strata.size(); ++k) {
    std::string where = "strata[" + std::to_string(k) + "]";
    const auto& js = strata[k];
    Stratum st;
    const auto& id = need(js, "id", where);
    if (!id.is_string()) throw input_error(where + ".id: expected a string");
    st.id = id.get<std::string>();
    st.dim = as_int(need(js, "dim", where), where + ".dim");
    if (js.contains("cells")) {
      const auto& cells = js.at("cells");
      if (!cells.is_object()) throw input_error(where + ".cells: expected an object keyed by cell dimension");
      for (const auto& [key, v] : cells.items()) {
        std::int64_t a;
        try {
          a = detail::parse_int(key, key);
        } catch (const input_error&) {
          throw input_error(where + ".cells: key '" + key + "' is not an integer");
        }
        st.cells[a] = as_int(v, where + ".cells[" + key + "]");
      }
    }
    if (js.contains("local_degrees")) {
      const auto& ld = js.at("local_degrees");
      if (!ld.is_array()) throw input_error(where + ".local_degrees: expected an array");
      for (std::size_t t = 0; t < ld.size(); ++t) {
        std::string f = where + ".local_degrees[" + std::to_string(t) + "]";
        std::int64_t n = as_int(need(ld[t], "n", f), f + ".n");
        std::int64_t c = as_int(need(ld[t], "i", f), f + ".i");
        std::int64_t v = as_int(need(ld[t], "value", f), f + ".value");
        if (!st.local_degrees.emplace(std::pair{n, c}, v).second) throw input_error(f + ": duplicate entry");
      }
    }
    s.strata.push_back(std::move(st));
  }
  if (j.contains("incidence")) {
    const auto& inc = j.at("incidence");
    if (!inc.is_array()) throw input_error("incidence: expected an array of chains");
    for (std::size_t c = 0; c < inc.size(); ++c) {
      if (!inc[c].is_array()) throw input_error("incidence[" + std::to_string(c) + "]: expected an array of ids");
      std::vector<std::string> chain;
      for (const auto& id : inc[c]) {
        if (!id.is_string()) throw input_error("incidence[" + std::to_string(c) + "]: ids must be strings");
        chain.push_back(id.get<std::string>());
      }
      s.incidence.push_back(std::move(chain));
    }
  }
  validate(s);
  return s;
}

inline StratificationSpec parse_stratification(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("stratification: ") + e.what());
  }
  return parse_stratification(j);
}

inline StratificationSpec parse_stratification(const std::string& text) {
  std::istringstream in(text);
  return parse_stratification(in);
}

inline nlohmann::json to_json(const StratificationSpec& s) {
  nlohmann::json j;
  j["m"] = s.m;
  j["strata"] = nlohmann::json::array();
  for (const auto& st : s.strata) {
    nlohmann::json js;
    js["id"] = st.id;
    js["dim"] = st.dim;
    js["cells"] = nlohmann::json::object();
    for (const auto& [a, c] : st.cells) js["cells"][std::to_string(a)] = c;
    js["local_degrees"] = nlohmann::json::array();
    for (const auto& [key, v] : st.local_degrees) js["local_degrees"].push_back({{"n", key.first}, {"i", key.second}, {"value", v}});
    j["strata"].push_back(std::move(js));
  }
  if (!s.incidence.empty()) j["incidence"] = s.incidence;
  return j;
}

enum class ChainMode { AllChains, Declared };

// One (stratum, p, a, b) tuple of the local bound with its multiplicity.
struct BoundTerm {
  std::size_t stratum = 0;
  std::int64_t k = 0;
  std::int64_t p = 0;
  std::int64_t a = 0;
  std::int64_t c = 0;  // b - 1
  std::int64_t chains = 0;
  std::int64_t value = 0;  // chains * theta(k, a) * delta_{n,c}
};

namespace detail {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return to_int64(r);
}

// Number of realized chains of length p + 1 ending at each stratum: every
// subsequence of a declared chain, and every stratum on its own.
inline std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> declared_chain_counts(const StratificationSpec& s) {
  std::set<std::vector<std::size_t>> chains;
  for (std::size_t j = 0; j < s.strata.size(); ++j) chains.insert({j});
  for (const auto& names : s.incidence) {
    std::vector<std::size_t> chain;
    for (const auto& id : names) chain.push_back(s.index_of(id));
    if (chain.size() > 20) throw input_error("incidence: chains longer than 20 are not supported");
    for (std::uint32_t mask = 1; mask < (1u << chain.size()); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t t = 0; t < chain.size(); ++t)
        if (mask & (1u << t)) sub.push_back(chain[t]);
      chains.insert(std::move(sub));
    }
  }
  std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> out;
  for (const auto& c : chains) ++out[{c.back(), static_cast<std::int64_t>(c.size()) - 1}];
  return out;
}

}  // namespace detail

// Every nonzero term of the bound on delta_n^i: p + q = i + 1, a + b = q,
// b >= 1, summed over realized chains ending in a stratum of dimension k_p.
inline std::vector<BoundTerm> local_bound_terms(const StratificationSpec& s, std::int64_t i, std::int64_t n,
                                                ChainMode mode = ChainMode::AllChains) {
  if (i < 0 || i > s.m) throw input_error("local_bound: i = " + std::to_string(i) + " must lie in [0, m = " + std::to_string(s.m) + "]");
  if (n < 0) throw input_error("local_bound: n must be nonnegative");
  std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> declared;
  if (mode == ChainMode::Declared) declared = detail::declared_chain_counts(s);
  std::vector<BoundTerm> out;
  for (std::size_t j = 0; j < s.strata.size(); ++j) {
    const Stratum& st = s.strata[j];
    for (std::int64_t p = 0; p <= i + 1; ++p) {
      std::int64_t chains;
      if (mode == ChainMode::AllChains) {
        chains = detail::binomial(st.dim, p);
      } else {
        auto it = declared.find({j, p});
        chains = it == declared.end() ? 0 : it->second;
      }
      if (chains == 0) continue;
      std::int64_t q = i + 1 - p;
      for (std::int64_t b = 1; b <= q; ++b) {
        std::int64_t a = q - b, c = b - 1;
        std::int64_t theta = st.theta(a);
        if (theta == 0 || c > s.m - st.dim) continue;
        auto it = st.local_degrees.find({n, c});
        if (it == st.local_degrees.end())
          throw input_error("strata[" + std::to_string(j) + "].local_degrees: missing entry for n=" + std::to_string(n) +
                            ", i=" + std::to_string(c));
        if (it->second == 0) continue;
        out.push_back({j, st.dim, p, a, c, chains, to_int64(Integer(chains) * theta * it->second)});
      }
    }
  }
  return out;
}

inline std::int64_t local_bound(const StratificationSpec& s, std::int64_t i, std::int64_t n, ChainMode mode = ChainMode::AllChains) {
  Integer total = 0;
  for (const auto& t : local_bound_terms(s, i, n, mode)) total += t.value;
  return to_int64(total);
}

struct AdmissibleRanges {
  std::int64_t m = 0;
  std::int64_t i = 0;
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;

  // Lower end clamped at 0.
  std::pair<std::int64_t, std::int64_t> c_range(std::int64_t k) const {
    return {std::max<std::int64_t>(0, 3 * m - 3 * k - 2 * i), m - k};
  }
  bool contains(std::int64_t k, std::int64_t c) const {
    if (k < k_min || k > k_max) return false;
    auto [lo, hi] = c_range(k);
    return c >= lo && c <= hi;
  }
};

inline AdmissibleRanges admissible_ranges(std::int64_t m, std::int64_t i) {
  if (m < 0 || i < 0 || i > m)
    throw input_error("admissible_ranges: need 0 <= i <= m, got i = " + std::to_string(i) + ", m = " + std::to_string(m));
  return {m, i, m - i, m};
}

enum class BoundVerdict { Pass, Fail, NotRefuted };

inline const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Pass: return "pass";
    case BoundVerdict::Fail: return "fail";
    case BoundVerdict::NotRefuted: return "not-refuted";
  }
  return "?";
}

struct InfinityCheckRow {
  std::int64_t i = 0;
  BoundVerdict verdict = BoundVerdict::NotRefuted;
  std::string detail;
};

// delta_{n,i}(U) <= delta_{n,i}(U_infinity), the right side finite.
inline std::vector<InfinityCheckRow> infinity_bound_check(const std::map<std::int64_t, DegreeResult>& delta_u,
                                                          const std::map<std::int64_t, std::int64_t>& delta_u_inf) {
  std::vector<InfinityCheckRow> rows;
  for (const auto& [i, res] : delta_u) {
    InfinityCheckRow row;
    row.i = i;
    auto it = delta_u_inf.find(i);
    if (it == delta_u_inf.end()) {
      row.detail = "no value at infinity";
      rows.push_back(std::move(row));
      continue;
    }
    std::int64_t bound = it->second;
    std::string rhs = std::to_string(bound);
    switch (res.status) {
      case DegreeStatus::Exact:
        row.verdict = *res.delta <= bound ? BoundVerdict::Pass : BoundVerdict::Fail;
        row.detail = std::to_string(*res.delta) + (row.verdict == BoundVerdict::Pass ? " <= " : " > ") + rhs;
        break;
      case DegreeStatus::Infinite:
        row.verdict = BoundVerdict::Fail;
        row.detail = "infinite > " + rhs;
        break;
      case DegreeStatus::Undecided:
        row.verdict = res.lower_bound > bound ? BoundVerdict::Fail : BoundVerdict::NotRefuted;
        row.detail = "lower bound " + std::to_string(res.lower_bound) + (res.lower_bound > bound ? " > " : " <= ") + rhs;
        break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hodeg
