#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodeg/degrees.hpp"
#include "hodeg/error.hpp"

namespace hodeg {

struct CertificateRecord {
  std::string kind;
  std::size_t level = 0;
  std::string element;
  std::string evidence;
  bool verified = false;
  friend bool operator==(const CertificateRecord&, const CertificateRecord&) = default;
};

// Serializable view of a DegreeResult.
struct Report {
  std::string group;
  std::size_t n = 0;
  std::string status;
  std::optional<std::int64_t> delta;
  std::optional<std::int64_t> delta_bar;
  std::int64_t lower_bound = 0;
  std::optional<std::int64_t> r;
  std::vector<std::string> torsion_polys;
  std::vector<CertificateRecord> certificates;
  std::vector<std::string> undecided;
  std::string move_log_digest;
  std::vector<std::string> move_log;  // filled only when tracing
  std::vector<std::string> notes;
  friend bool operator==(const Report&, const Report&) = default;
};

inline Report make_report(const DegreeResult& res, const std::vector<bool>& verified = {}, bool include_log = false) {
  Report r;
  r.group = res.group;
  r.n = res.n;
  r.status = to_string(res.status);
  r.delta = res.delta;
  r.delta_bar = res.delta_bar;
  r.lower_bound = res.lower_bound;
  r.r = res.r;
  r.torsion_polys = res.torsion_polys;
  for (std::size_t i = 0; i < res.certificates.size(); ++i) {
    const auto& c = res.certificates[i];
    r.certificates.push_back({to_string(c.kind), c.level, c.element_text, c.evidence, i < verified.size() && verified[i]});
  }
  r.undecided = res.undecided;
  r.move_log_digest = res.move_log_digest;
  if (include_log) r.move_log = res.move_log;
  r.notes = res.notes;
  return r;
}

namespace detail {

inline nlohmann::json opt_json(const std::optional<std::int64_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

inline std::optional<std::int64_t> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::int64_t>();
}

}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["group"] = r.group;
  j["n"] = r.n;
  j["status"] = r.status;
  j["delta"] = detail::opt_json(r.delta);
  j["delta_bar"] = detail::opt_json(r.delta_bar);
  j["lower_bound"] = r.lower_bound;
  j["r"] = detail::opt_json(r.r);
  j["torsion_polys"] = r.torsion_polys;
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : r.certificates)
    j["certificates"].push_back(
        {{"kind", c.kind}, {"level", c.level}, {"element", c.element}, {"evidence", c.evidence}, {"verified", c.verified}});
  j["undecided"] = r.undecided;
  j["move_log_digest"] = r.move_log_digest;
  if (!r.move_log.empty()) j["move_log"] = r.move_log;
  j["notes"] = r.notes;
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.group = j.at("group").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.status = j.at("status").get<std::string>();
    r.delta = detail::opt_from(j, "delta");
    r.delta_bar = detail::opt_from(j, "delta_bar");
    r.lower_bound = j.at("lower_bound").get<std::int64_t>();
    r.r = detail::opt_from(j, "r");
    r.torsion_polys = j.at("torsion_polys").get<std::vector<std::string>>();
    for (const auto& c : j.at("certificates"))
      r.certificates.push_back({c.at("kind").get<std::string>(), c.at("level").get<std::size_t>(), c.at("element").get<std::string>(),
                                c.at("evidence").get<std::string>(), c.at("verified").get<bool>()});
    r.undecided = j.at("undecided").get<std::vector<std::string>>();
    r.move_log_digest = j.at("move_log_digest").get<std::string>();
    if (j.contains("move_log")) r.move_log = j.at("move_log").get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("report: ") + e.what());
  }
}

inline std::string format_text(const Report& r) {
  std::ostringstream out;
  out << r.group << "  n=" << r.n << "  " << r.status;
  if (r.delta) out << "  delta=" << *r.delta;
  if (r.delta_bar) out << "  delta_bar=" << *r.delta_bar;
  if (r.r) out << "  r=" << *r.r;
  if (r.status == "undecided") out << "  lower_bound=" << r.lower_bound;
  out << "\n";
  for (const auto& t : r.torsion_polys) out << "  torsion: " << t << "\n";
  for (const auto& u : r.undecided) out << "  undecided: " << u << "\n";
  std::size_t ok = 0;
  for (const auto& c : r.certificates) ok += c.verified;
  out << "  certificates: " << r.certificates.size() << " (" << ok << " re-verified)\n";
  for (const auto& note : r.notes) out << "  note: " << note << "\n";
  out << "  move log digest: " << r.move_log_digest << "\n";
  for (const auto& m : r.move_log) out << "    " << m << "\n";
  return out.str();
}

}  // namespace hodeg
