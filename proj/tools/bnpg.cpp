// bnpg: solve, verify, enumerate and generate network-design instances for
// binary networked public goods games.
//
// Exit codes: 0 feasible / verified / done, 2 infeasible or failed
// verification, 1 usage, parse, validation or limit error.

#include "bnpg/error.hpp"
#include "bnpg/gadget.hpp"
#include "bnpg/instance_io.hpp"
#include "bnpg/reductions.hpp"
#include "bnpg/solver.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using namespace bnpg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct SolveConfig {
  std::string instance;
  std::string out;
  std::string dir;
  std::string out_dir;
  std::string solver = "auto";
  std::string dump_gadget;
  int limit = 0;  // 0: environment or default
  int jobs = 1;
  bool paranoid = false;
};

SolverKind parse_solver(const std::string& s) {
  if (s == "auto") return SolverKind::auto_select;
  if (s == "gadget") return SolverKind::gadget;
  if (s == "greedy") return SolverKind::greedy;
  if (s == "oracle") return SolverKind::oracle;
  throw std::invalid_argument("unknown solver " + s);
}

int oracle_limit(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("BNPG_ORACLE_LIMIT")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(fmt::format("BNPG_ORACLE_LIMIT must be a positive integer, got \"{}\"", env));
  }
  return kDefaultOracleLimit;
}

std::string stats_line(const std::string& label, const SolveOutcome& out) {
  const auto& s = out.stats;
  std::string line = fmt::format("{}path={} gadget_nodes={} gadget_edges={} matching_seconds={:.6f} oracle_nodes={}",
                                 label, to_string(s.path), s.gadget_nodes, s.gadget_edges, s.matching_seconds,
                                 s.oracle_nodes);
  if (s.phase1_cost) line += " phase1_cost=" + format_rational(*s.phase1_cost);
  return line;
}

struct SolveResult {
  int code = kExitError;
  std::string document;  // outcome document when code != error
  std::string log;       // stderr text
};

SolveResult solve_file(const std::string& path, const SolveConfig& cfg) {
  SolveResult r;
  try {
    DesignInstance inst = read_instance(read_file(path));
    SolverKind kind = parse_solver(cfg.solver);
    auto diags = validate(inst, kind);
    for (const auto& d : diags) {
      r.log += fmt::format("{}: {}: {}\n", path, d.severity == Diagnostic::Severity::error ? "error" : "warning",
                           d.message);
    }
    if (has_errors(diags)) return r;

    SolveOptions opts;
    opts.oracle_limit = oracle_limit(cfg.limit);
    opts.paranoid = cfg.paranoid;
    if (!cfg.dump_gadget.empty()) {
      if (std::holds_alternative<target::All>(inst.target) && polynomial_applicable(inst)) {
        write_file_atomic(cfg.dump_gadget, dump_gadget(build_gadget(inst)));
      } else {
        r.log += fmt::format("{}: warning: no gadget to dump (needs target all with interval degree sets)\n", path);
      }
    }
    SolveOutcome out = solve(inst, kind, opts);
    if (cfg.paranoid) {
      if (const auto* f = std::get_if<outcome::Feasible>(&out.status)) {
        VerifyReport rep = verify_solution(inst, f->solution);
        if (!rep.ok) throw std::logic_error("paranoid check failed: " + rep.failures.front());
      }
    }
    r.document = write_outcome(out);
    r.log += stats_line(path + ": ", out) + "\n";
    r.code = out.feasible() ? kExitOk : kExitInfeasible;
  } catch (const ParseError& e) {
    r.log += fmt::format("{}: parse error at {}\n", path, e.what());
  } catch (const LimitExceeded& e) {
    r.log += fmt::format("{}: error: {}\n", path, e.what());
  } catch (const std::exception& e) {
    r.log += fmt::format("{}: error: {}\n", path, e.what());
  }
  return r;
}

int cmd_solve(const SolveConfig& cfg) {
  if (cfg.dir.empty()) {
    if (cfg.instance.empty()) {
      std::cerr << "error: solve needs --instance or --dir\n";
      return kExitError;
    }
    SolveResult r = solve_file(cfg.instance, cfg);
    std::cerr << r.log;
    if (r.code == kExitError) return r.code;
    if (cfg.out.empty()) {
      std::cout << r.document;
    } else {
      write_file_atomic(cfg.out, r.document);
    }
    return r.code;
  }

  if (cfg.out_dir.empty()) {
    std::cerr << "error: --dir needs --out-dir\n";
    return kExitError;
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(cfg.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  fs::create_directories(cfg.out_dir);

  std::vector<SolveResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      results[k] = solve_file(files[k], cfg);
      if (results[k].code != kExitError) {
        auto target = fs::path(cfg.out_dir) / (fs::path(files[k]).stem().string() + ".solution.json");
        write_file_atomic(target.string(), results[k].document);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, cfg.jobs); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  int code = kExitOk;
  for (const auto& r : results) {
    std::cerr << r.log;
    if (r.code == kExitError) {
      code = kExitError;
    } else if (r.code == kExitInfeasible && code == kExitOk) {
      code = kExitInfeasible;
    }
  }
  return code;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path) {
  try {
    DesignInstance inst = read_instance(read_file(instance_path));
    std::string text = read_file(solution_path);
    auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("status") && doc["status"] != "feasible") {
      std::cerr << "error: " << solution_path << " holds no solution (status " << doc["status"].dump() << ")\n";
      return kExitError;
    }
    VerifyReport rep = verify_solution(inst, read_solution(text));
    if (rep.ok) {
      std::cout << "ok\n";
      return kExitOk;
    }
    for (const auto& f : rep.failures) std::cout << "fail: " << f << "\n";
    return kExitInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}

std::vector<int> parse_members(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

TargetClass parse_class(const std::string& text) {
  if (text == "all") return target::All{};
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "exact") return target::ExactSet{parse_members(tail)};
  if (head == "superset") return target::SupersetOf{parse_members(tail)};
  if (head == "atleast") return target::AtLeast{std::stoi(tail)};
  throw std::invalid_argument("unknown class \"" + text + "\" (all, exact:i,j, superset:i,j, atleast:r)");
}

int cmd_psne(const std::string& instance_path, const std::string& cls, int limit) {
  try {
    DesignInstance inst = read_instance(read_file(instance_path));
    std::optional<TargetClass> filter;
    if (!cls.empty()) filter = parse_class(cls);
    auto all = enumerate_psne(inst.graph, inst.degsets, limit > 0 ? limit : kDefaultPsneLimit);
    for (const auto& x : all) {
      if (filter && !in_target(*filter, x)) continue;
      std::cout << nlohmann::json(x.investing_set()).dump() << "\n";
    }
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}

struct GenerateConfig {
  std::string kind;
  std::string graph;
  std::vector<std::string> er;  // N P
  int k = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string out_dir;
  std::string manifest;
};

int cmd_generate(const GenerateConfig& cfg) {
  try {
    SourceInstance src;
    src.kind = parse_reduction_kind(cfg.kind);
    src.k = cfg.k;
    std::string description;
    std::string stem;
    if (!cfg.graph.empty()) {
      if (!cfg.er.empty()) throw std::invalid_argument("give either --graph or --er, not both");
      src.h = read_graph(read_file(cfg.graph));
      description = "file:" + fs::path(cfg.graph).filename().string();
      stem = fmt::format("{}_{}_k{}", cfg.kind, fs::path(cfg.graph).stem().string(), cfg.k);
    } else if (cfg.er.size() == 2) {
      int n = std::stoi(cfg.er[0]);
      double p = std::stod(cfg.er[1]);
      src.h = erdos_renyi(n, p, cfg.seed);
      description = fmt::format("er:{}:{}", n, cfg.er[1]);
      stem = fmt::format("{}_er{}_p{}_k{}_seed{}", cfg.kind, n, cfg.er[1], cfg.k, cfg.seed);
    } else {
      throw std::invalid_argument("generate needs --graph FILE or --er N P");
    }
    DesignInstance inst = generate(src);
    std::string text = write_instance(inst);

    std::string target = cfg.out;
    if (target.empty() && !cfg.out_dir.empty()) {
      fs::create_directories(cfg.out_dir);
      target = (fs::path(cfg.out_dir) / (stem + ".json")).string();
    }
    if (target.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(target, text);
    }

    if (!cfg.manifest.empty()) {
      nlohmann::ordered_json row;
      row["kind"] = cfg.kind;
      row["source"] = description;
      row["h_nodes"] = src.h.size();
      row["h_edges"] = edges_to_json(src.h.edges());
      row["k"] = src.k;
      row["seed"] = cfg.seed;
      row["instance"] = target;
      constexpr int kBruteForceSourceLimit = 20;
      if (src.h.size() <= kBruteForceSourceLimit) {
        row["expected_feasible"] = source_answer(src);
      } else {
        row["expected_feasible"] = nullptr;
      }
      std::ofstream m(cfg.manifest, std::ios::app);
      if (!m) throw std::runtime_error("cannot append to " + cfg.manifest);
      m << row.dump() << "\n";
    }
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network design for binary networked public goods games"};
  app.require_subcommand(1);

  SolveConfig solve_cfg;
  auto* solve = app.add_subcommand("solve", "Find a minimum-cost modification inducing the target equilibria");
  solve->add_option("--instance", solve_cfg.instance, "Instance JSON file");
  solve->add_option("--out", solve_cfg.out, "Write the outcome here instead of stdout");
  solve->add_option("--dir", solve_cfg.dir, "Solve every *.json file in this directory");
  solve->add_option("--out-dir", solve_cfg.out_dir, "Output directory for --dir");
  solve->add_option("--solver", solve_cfg.solver, "auto, gadget, greedy or oracle")
      ->check(CLI::IsMember({"auto", "gadget", "greedy", "oracle"}));
  solve->add_option("--limit", solve_cfg.limit, "Oracle player limit (overrides BNPG_ORACLE_LIMIT)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--jobs", solve_cfg.jobs, "Parallel solves for --dir")->check(CLI::PositiveNumber);
  solve->add_option("--dump-gadget", solve_cfg.dump_gadget, "Write the matching gadget as an edge list");
  solve->add_flag("--paranoid", solve_cfg.paranoid, "Re-check gadgets and solutions");

  std::string verify_instance, verify_solution_path;
  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  verify->add_option("--instance", verify_instance, "Instance JSON file")->required();
  verify->add_option("--solution", verify_solution_path, "Solution or outcome JSON file")->required();

  std::string psne_instance, psne_class;
  int psne_limit = 0;
  auto* psne = app.add_subcommand("psne", "List the pure Nash equilibria of the instance's game");
  psne->add_option("--instance", psne_instance, "Instance JSON file")->required();
  psne->add_option("--class", psne_class, "Filter: all, exact:i,j, superset:i,j or atleast:r");
  psne->add_option("--limit", psne_limit, "Player limit for the enumeration")->check(CLI::PositiveNumber);

  GenerateConfig gen_cfg;
  auto* gen = app.add_subcommand("generate", "Build a design instance from a source problem");
  gen->add_option("--kind", gen_cfg.kind, "is, clique or vc")->required()->check(CLI::IsMember({"is", "clique", "vc"}));
  gen->add_option("--graph", gen_cfg.graph, "Source graph JSON {\"n\", \"edges\"}");
  gen->add_option("--er", gen_cfg.er, "Random source graph: N P")->expected(2);
  gen->add_option("--k", gen_cfg.k, "Size parameter")->required();
  gen->add_option("--seed", gen_cfg.seed, "Seed for --er");
  gen->add_option("--out", gen_cfg.out, "Output file (default stdout)");
  gen->add_option("--out-dir", gen_cfg.out_dir, "Output directory; the file name records kind, k and seed");
  gen->add_option("--manifest", gen_cfg.manifest, "Append a JSON line describing the instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_cfg);
    if (*verify) return cmd_verify(verify_instance, verify_solution_path);
    if (*psne) return cmd_psne(psne_instance, psne_class, psne_limit);
    if (*gen) return cmd_generate(gen_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
