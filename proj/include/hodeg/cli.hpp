#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hodeg/bounds.hpp"
#include "hodeg/degrees.hpp"
#include "hodeg/report.hpp"

namespace hodeg::cli {

enum ExitCode { Ok = 0, InputError = 1, Undecided = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::size_t> n_levels;
  std::string splitting = "auto";
  bool trace = false;
  std::string format = "text";
  unsigned jobs = 0;
};

// One (file, group, n) line of a batch run; error rows carry no group data.
struct BatchRow {
  std::string file;
  std::string group;
  std::optional<std::size_t> n;
  std::optional<Report> report;
  std::string error;
  std::vector<std::string> tags;
  double wall_ms = 0;
};

inline std::vector<Presentation> load_presentations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error(path + ": cannot open");
  std::string stem = std::filesystem::path(path).stem().string();
  try {
    auto ps = parse_presentations(in, stem);
    if (ps.empty()) throw input_error("no presentation found");
    return ps;
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

inline Report run_one(const Presentation& p, std::size_t n, const RunConfig& cfg, std::ostream* trace_out) {
  DegreeOptions opts;
  if (cfg.splitting != "auto") opts.splitting = cfg.splitting;
  if (cfg.trace && trace_out) opts.trace = [trace_out](const std::string& s) { *trace_out << s << "\n"; };
  DegreeResult res = delta_n(p, n, opts);
  return make_report(res, audit_certificates(p, res), cfg.trace);
}

inline int exit_code_for(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.status == "undecided") return Undecided;
  return Ok;
}

inline int cmd_compute(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  auto ps = load_presentations(file);
  std::vector<Report> reports;
  bool text = cfg.format == "text";
  for (const auto& p : ps)
    for (auto n : cfg.n_levels) {
      if (text && cfg.trace) out << "# trace " << p.name() << " n=" << n << "\n";
      reports.push_back(run_one(p, n, cfg, text ? &out : nullptr));
      if (text) out << format_text(reports.back());
    }
  if (!text) {
    nlohmann::json j;
    j["command"] = "compute";
    j["file"] = file;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    out << j.dump(2) << "\n";
  }
  return exit_code_for(reports);
}

inline int cmd_jacobian(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  auto ps = load_presentations(file);
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : ps) {
    FoxMatrix J = jacobian(p);
    GroupContext ctx(p);
    const auto& names = p.alphabet().names();
    nlohmann::json j;
    j["group"] = p.name();
    j["generators"] = names;
    j["rows"] = nlohmann::json::array();
    j["abelian_rows"] = nlohmann::json::array();
    if (cfg.format == "text") out << p.name() << ": " << J.size() << " x " << names.size() << "\n";
    for (std::size_t i = 0; i < J.size(); ++i) {
      nlohmann::json row = nlohmann::json::array(), ab = nlohmann::json::array();
      for (std::size_t g = 0; g < names.size(); ++g) {
        row.push_back(J[i][g].format(p.alphabet()));
        ab.push_back(ctx.abelian_projection(J[i][g]).format(ctx.abelian().coordinate_names()));
      }
      if (cfg.format == "text") {
        out << "  r" << i + 1 << " = " << p.format(p.relators()[i]) << "\n";
        for (std::size_t g = 0; g < names.size(); ++g)
          out << "    d/d" << names[g] << ": " << row[g].get<std::string>() << "   [abelian: " << ab[g].get<std::string>() << "]\n";
      }
      j["rows"].push_back(std::move(row));
      j["abelian_rows"].push_back(std::move(ab));
    }
    doc.push_back(std::move(j));
  }
  if (cfg.format != "text") out << nlohmann::json{{"command", "jacobian"}, {"file", file}, {"groups", doc}}.dump(2) << "\n";
  return Ok;
}

inline int cmd_abelianize(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  auto ps = load_presentations(file);
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : ps) {
    AbelianStructure h = abelianize(p);
    TorsionQuotient tq = torsion_quotient_detail(p);
    std::vector<std::string> torsion;
    for (const auto& t : h.torsion) torsion.push_back(t.get_str());
    std::string weights;
    for (std::size_t g = 0; g < p.generator_count(); ++g)
      weights += (g ? " " : "") + p.alphabet().name(static_cast<GenId>(g)) + "=" + std::to_string(p.weights()[g]);
    if (cfg.format == "text") {
      out << p.name() << ": Z^" << h.free_rank;
      for (const auto& t : torsion) out << " + Z/" << t;
      out << "\n  weights: " << weights << (p.weights_surjective() ? "" : "  (not surjective)") << "\n";
      if (!tq.killed.empty()) {
        out << "  torsion generators killed:";
        for (const auto& k : tq.killed) out << " " << k;
        out << "\n";
      }
    }
    doc.push_back({{"group", p.name()},
                   {"free_rank", h.free_rank},
                   {"torsion", torsion},
                   {"weights", p.weights()},
                   {"weights_surjective", p.weights_surjective()},
                   {"killed", tq.killed}});
  }
  if (cfg.format != "text") out << nlohmann::json{{"command", "abelianize"}, {"file", file}, {"groups", doc}}.dump(2) << "\n";
  return Ok;
}

struct BoundArgs {
  std::vector<std::int64_t> degrees;  // homological i; all of 0..m when empty
  std::string chains = "all";
  std::string group;
  std::optional<std::int64_t> at_infinity;
};

inline int cmd_bound(const RunConfig& cfg, const BoundArgs& args, const std::string& file, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw input_error(file + ": cannot open");
  StratificationSpec spec;
  try {
    spec = parse_stratification(in);
  } catch (const input_error& e) {
    throw input_error(file + ": " + e.what());
  }
  ChainMode mode;
  if (args.chains == "all") mode = ChainMode::AllChains;
  else if (args.chains == "declared") mode = ChainMode::Declared;
  else throw input_error("--chains must be 'all' or 'declared'");
  if (args.at_infinity && args.group.empty()) throw input_error("--at-infinity needs --group");

  std::vector<std::int64_t> degrees = args.degrees;
  if (degrees.empty())
    for (std::int64_t i = 0; i <= spec.m; ++i) degrees.push_back(i);
  bool text = cfg.format == "text";
  nlohmann::json j;
  j["command"] = "bound";
  j["file"] = file;
  j["m"] = spec.m;
  j["chains"] = args.chains;
  j["bounds"] = nlohmann::json::array();
  j["ranges"] = nlohmann::json::array();
  for (auto i : degrees) {
    AdmissibleRanges rg = admissible_ranges(spec.m, i);
    nlohmann::json cr = nlohmann::json::array();
    if (text) out << "i=" << i << "  k in [" << rg.k_min << ", " << rg.k_max << "]";
    for (std::int64_t k = rg.k_min; k <= rg.k_max; ++k) {
      auto [lo, hi] = rg.c_range(k);
      cr.push_back({{"k", k}, {"c_min", lo}, {"c_max", hi}});
      if (text) out << "  k=" << k << ": c in [" << lo << ", " << hi << "]";
    }
    if (text) out << "\n";
    j["ranges"].push_back({{"i", i}, {"k_min", rg.k_min}, {"k_max", rg.k_max}, {"c", cr}});
    for (auto n : cfg.n_levels) {
      auto terms = local_bound_terms(spec, i, static_cast<std::int64_t>(n), mode);
      std::int64_t total = local_bound(spec, i, static_cast<std::int64_t>(n), mode);
      if (text) out << "  n=" << n << "  bound=" << total << "  (" << terms.size() << " nonzero terms)\n";
      j["bounds"].push_back({{"i", i}, {"n", n}, {"bound", total}, {"terms", terms.size()}});
    }
  }
  int code = Ok;
  if (args.at_infinity) {
    auto ps = load_presentations(args.group);
    j["infinity"] = nlohmann::json::array();
    for (auto n : cfg.n_levels) {
      DegreeResult res = delta_n(ps.front(), n, {});
      auto rows = infinity_bound_check({{1, res}}, {{1, *args.at_infinity}});
      for (const auto& row : rows) {
        if (row.verdict == BoundVerdict::Fail) code = InputError;
        if (text) out << "infinity check n=" << n << " i=" << row.i << ": " << to_string(row.verdict) << " (" << row.detail << ")\n";
        j["infinity"].push_back({{"n", n}, {"i", row.i}, {"verdict", to_string(row.verdict)}, {"detail", row.detail}});
      }
    }
  }
  if (!text) out << j.dump(2) << "\n";
  return code;
}

inline std::vector<std::string> list_inputs(const std::string& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw input_error(dir + ": not a directory");
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".grp") files.push_back(e.path().string());
  std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
    return std::filesystem::path(a).filename() < std::filesystem::path(b).filename();
  });
  return files;
}

// Files run on a worker pool; rows come back sorted by file name, then n.
inline std::vector<BatchRow> run_batch(const std::vector<std::string>& files, const RunConfig& cfg) {
  std::vector<std::vector<BatchRow>> per_file(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t f; (f = next++) < files.size();) {
      std::string name = std::filesystem::path(files[f]).filename().string();
      auto& rows = per_file[f];
      try {
        auto ps = load_presentations(files[f]);
        for (auto n : cfg.n_levels)
          for (const auto& p : ps) {
            BatchRow row{name, p.name(), n, std::nullopt, "", p.tags(), 0};
            auto t0 = std::chrono::steady_clock::now();
            try {
              row.report = run_one(p, n, cfg, nullptr);
            } catch (const std::exception& e) {
              row.error = e.what();
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            rows.push_back(std::move(row));
          }
      } catch (const std::exception& e) {
        rows.assign(1, BatchRow{name, "", std::nullopt, std::nullopt, e.what(), {}, 0});
      }
    }
  };
  unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(files.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<BatchRow> out;
  for (auto& rows : per_file)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

inline nlohmann::json batch_json(const std::vector<BatchRow>& rows, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["file"] = r.file;
    row["group"] = r.group;
    row["n"] = r.n ? nlohmann::json(*r.n) : nlohmann::json(nullptr);
    if (r.report) {
      row["report"] = to_json(*r.report);
    } else {
      row["error"] = r.error;
    }
    row["wall_ms"] = r.wall_ms;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

// A transverse-union row at n >= 1 whose degree is known to be nonzero.
inline bool is_conjecture_candidate(const BatchRow& r) {
  if (!r.report || !r.n || *r.n == 0) return false;
  if (std::find(r.tags.begin(), r.tags.end(), "transverse-union") == r.tags.end()) return false;
  if (r.report->status == "infinite") return true;
  return r.report->status == "exact" && r.report->delta && *r.report->delta != 0;
}

inline int cmd_batch(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
  auto rows = run_batch(list_inputs(dir), cfg);
  bool scan = cfg.command == "conjecture-scan";
  int code = Ok;
  for (const auto& r : rows) {
    if (!r.report) code = InputError;
    else if (r.report->status == "undecided" && code == Ok) code = Undecided;
  }
  if (cfg.format != "text") {
    nlohmann::json j = batch_json(rows, cfg.command);
    if (scan) {
      j["candidates"] = nlohmann::json::array();
      for (const auto& r : rows)
        if (is_conjecture_candidate(r)) j["candidates"].push_back({{"file", r.file}, {"group", r.group}, {"n", *r.n}});
    }
    out << j.dump(2) << "\n";
    return code;
  }
  auto cell = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  out << "file\tgroup\tn\tstatus\tdelta\tdelta_bar\tr\twall_ms\n";
  for (const auto& r : rows) {
    out << r.file << "\t" << (r.group.empty() ? "-" : r.group) << "\t" << (r.n ? std::to_string(*r.n) : "-") << "\t";
    if (r.report) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.1f", r.wall_ms);
      out << r.report->status << "\t" << cell(r.report->delta) << "\t" << cell(r.report->delta_bar) << "\t" << cell(r.report->r) << "\t"
          << ms << "\n";
    } else {
      out << "error\t-\t-\t-\t-\t" << r.error << "\n";
    }
  }
  if (scan) {
    std::size_t found = 0, scanned = 0;
    for (const auto& r : rows) {
      if (r.n && *r.n > 0 && std::find(r.tags.begin(), r.tags.end(), "transverse-union") != r.tags.end()) ++scanned;
      if (!is_conjecture_candidate(r)) continue;
      ++found;
      out << "candidate: " << r.file << " " << r.group << " n=" << *r.n << " " << r.report->status << "\n";
    }
    out << scanned << " transverse-union rows at n >= 1, " << found << " with nonzero degree\n";
  }
  return code;
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order degrees of finitely presented groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string input;
  BoundArgs bargs;
  std::map<std::string, std::vector<std::size_t>> default_levels;

  auto common = [&](CLI::App* sub, bool levels, std::vector<std::size_t> default_n) {
    sub->add_option("input", input, "input file or directory")->required();
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (levels) {
      default_levels[sub->get_name()] = std::move(default_n);
      sub->add_option("--n", cfg.n_levels, "comma separated levels")->delimiter(',');
    }
  };
  auto* compute = app.add_subcommand("compute", "degrees of a presentation file");
  common(compute, true, {0});
  compute->add_option("--splitting", cfg.splitting, "generator of weight 1, or auto");
  compute->add_flag("--trace", cfg.trace, "print every move with the matrix after it");
  auto* jac = app.add_subcommand("jacobian", "Fox Jacobian and its abelian image");
  common(jac, false, {});
  auto* ab = app.add_subcommand("abelianize", "abelianization and weights");
  common(ab, false, {});
  auto* bound = app.add_subcommand("bound", "local stratification bound");
  common(bound, true, {0});
  bound->add_option("--i", bargs.degrees, "homological degrees (default 0..m)")->delimiter(',');
  bound->add_option("--chains", bargs.chains, "all or declared");
  bound->add_option("--group", bargs.group, "presentation of the complement for the infinity check");
  bound->add_option("--at-infinity", bargs.at_infinity, "degree of the link at infinity");
  auto* batch = app.add_subcommand("batch", "run every .grp file of a directory");
  common(batch, true, {0, 1});
  batch->add_option("--jobs", cfg.jobs, "worker threads");
  auto* scan = app.add_subcommand("conjecture-scan", "look for nonzero degrees of transverse unions");
  common(scan, true, {1, 2});
  scan->add_option("--jobs", cfg.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }
  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (auto it = default_levels.find(cfg.command); it != default_levels.end() && chosen->count("--n") == 0) cfg.n_levels = it->second;
  try {
    if (cfg.command != "jacobian" && cfg.command != "abelianize" && cfg.n_levels.empty()) throw input_error("--n: need at least one level");
    if (cfg.command == "compute") return cmd_compute(cfg, input, out);
    if (cfg.command == "jacobian") return cmd_jacobian(cfg, input, out);
    if (cfg.command == "abelianize") return cmd_abelianize(cfg, input, out);
    if (cfg.command == "bound") return cmd_bound(cfg, bargs, input, out);
    return cmd_batch(cfg, input, out);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return InputError;
  }
}

}  // namespace hodeg::cli
