#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bfly/bfly.hpp"
#include "bfly/json_io.hpp"

namespace fs = std::filesystem;
using namespace bfly;

namespace {

// Exit codes, stable per error class.
enum exit_code : int {
  ok = 0,
  check_failed = 1,
  invalid_params = 2,
  parse_failed = 3,
  budget_exceeded = 4,
  degree_mismatch = 5,
  invalid_config = 6,
  io_failed = 7,
  infeasible = 8,
  usage = 64,
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path.string());
  out << text;
  if (!out) throw io_error("write failed for " + path.string());
}

bipartite_graph read_graph(const std::string& path) { return parse_bip(read_file(path)); }

// JSON goes to `out` when given, else stdout.
void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct globals {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

int cmd_generate(std::size_t s, std::size_t t, const std::string& out_dir) {
  auto cp = construct_pair(s, t);
  auto rep = verify_construction(cp);
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "g_begin.bip", to_bip(cp.g_begin));
  write_file(fs::path(out_dir) / "g_end.bip", to_bip(cp.g_end));
  write_file(fs::path(out_dir) / "report.json", to_json(rep).dump(2) + "\n");
  std::cerr << "generate s=" << s << " t=" << t << ": butterflies " << rep.butterflies_begin << "/"
            << rep.butterflies_end << ", checks " << (rep.all_passed() ? "passed" : "FAILED") << "\n";
  return rep.all_passed() ? ok : check_failed;
}

int cmd_count(const std::string& path, const std::string& out) {
  auto g = read_graph(path);
  json j;
  j["schema"] = schema_version;
  j["left_count"] = g.left_count();
  j["right_count"] = g.right_count();
  j["edge_count"] = g.edge_count();
  j["degrees"] = to_json(degree_sequences(g));
  j["butterflies"] = butterfly_count(g);
  j["caterpillars"] = caterpillar_count(g);
  emit(j, out);
  std::cerr << "butterflies " << butterfly_count(g) << ", caterpillars " << caterpillar_count(g) << "\n";
  return ok;
}

struct explore_args {
  std::string start;
  std::size_t q_max = 2;
  bool preserve = false;
  std::string target;
  bool iso = false;
  std::string expect;
  std::size_t visited_cap = 10'000'000;
  std::size_t moves_cap = 100'000'000;
  std::string out;
};

int cmd_explore(const explore_args& a, const globals& g) {
  if (a.q_max < 2) {
    std::cerr << "usage: --q-max must be at least 2\n";
    return usage;
  }
  exploration_options opts;
  opts.q_max = a.q_max;
  opts.preserve_butterflies = a.preserve;
  opts.iso_mode = a.iso;
  opts.visited_cap = a.visited_cap;
  opts.moves_cap = a.moves_cap;
  opts.jobs = g.jobs;
  if (!a.target.empty()) opts.target = read_graph(a.target);
  auto rep = reachable_set(read_graph(a.start), opts);
  emit(to_json(rep), a.out);
  std::cerr << "explore: " << to_string(rep.status) << ", visited " << rep.visited_count
            << ", depth " << rep.depth_reached << ", target " << (rep.target_found ? "found" : "absent")
            << "\n";
  if (rep.status == exploration_status::budget_exceeded) return budget_exceeded;
  if (!a.expect.empty() && (a.expect == "found") != rep.target_found) return check_failed;
  return ok;
}

int cmd_connect(const std::string& from_path, const std::string& to_path, const std::string& out) {
  auto from = read_graph(from_path);
  auto to = read_graph(to_path);
  json j;
  j["schema"] = schema_version;
  if (from == to) {
    j["identical"] = true;
    j["swap"] = nullptr;
    emit(j, out);
    std::cerr << "identical, no swap\n";
    return ok;
  }
  auto sw = direct_qbso(from, to);
  const auto reason = validate_qbso(from, sw);
  const bool replay = reason == swap_reason::valid && apply_qbso(from, sw).graph_after == to;
  j["identical"] = false;
  j["q"] = sw.q();
  j["swap"] = to_json(sw);
  j["validation"] = std::string(to_string(reason));
  j["replay_matches"] = replay;
  emit(j, out);
  std::cerr << "connect: q=" << sw.q() << ", replay " << (replay ? "ok" : "FAILED") << "\n";
  return replay ? ok : check_failed;
}

struct mcmc_args {
  std::string start;
  std::size_t q = 2;
  bool preserve = false;
  std::size_t steps = 0;
  std::optional<std::size_t> burn_in;
  std::size_t thinning = 1;
  std::string trace;
  std::string trace_mode = "hash";
  std::string stats;
  std::string catalog;
  std::string watch;
};

int cmd_mcmc(const mcmc_args& a, const globals& g) {
  chain_config cfg;
  cfg.start = read_graph(a.start);
  cfg.move_size_q = a.q;
  cfg.preserve_butterflies = a.preserve;
  cfg.steps = a.steps;
  cfg.burn_in = a.burn_in.value_or(a.steps / 10);
  cfg.thinning = a.thinning;
  cfg.seed = g.seed;
  if (!a.watch.empty()) cfg.watch = read_graph(a.watch);

  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace, std::ios::binary);
    if (!trace) throw io_error("cannot write " + a.trace);
  }
  sample_callback cb;
  if (trace.is_open()) {
    cb = [&](std::size_t step, const bipartite_graph& s) {
      if (a.trace_mode == "bip") {
        trace << to_bip(s) << "\n";
      } else {
        trace << step << " " << hex(canonical_form_of(s).hash()) << "\n";
      }
    };
  }
  auto st = run_chain(cfg, cb);
  auto j = to_json(st);
  j["seed"] = g.seed;
  j["move_size_q"] = cfg.move_size_q;
  j["preserve_butterflies"] = cfg.preserve_butterflies;
  j["burn_in"] = cfg.burn_in;
  j["thinning"] = cfg.thinning;
  if (!a.catalog.empty()) {
    ensemble_catalog cat;
    cat.members = parse_bip_all(read_file(a.catalog));
    for (const auto& m : cat.members) cat.butterflies.push_back(butterfly_count(m));
    j["catalog_size"] = cat.size();
    j["uniformity_distance"] = uniformity_distance(st, cat);
  }
  emit(j, a.stats);
  std::cerr << "mcmc: accepted " << st.accepted << "/" << st.steps << ", watch hits " << st.watch_hits
            << "\n";
  return ok;
}

std::vector<std::size_t> parse_degrees(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw error(errc::parse_error, "bad degree '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_enumerate(const std::string& left, const std::string& right,
                  std::optional<std::uint64_t> butterflies, std::size_t limit,
                  const std::string& out_dir) {
  ensemble_spec spec{{parse_degrees(left), parse_degrees(right)}, butterflies};
  enumeration_limits lim;
  lim.members = limit;
  auto cat = enumerate_ensemble(spec, lim);
  fs::create_directories(out_dir);
  std::string blocks;
  for (const auto& m : cat.members) blocks += to_bip(m) + "\n";
  write_file(fs::path(out_dir) / "catalog.bip", blocks);
  write_file(fs::path(out_dir) / "catalog.json", catalog_index(cat).dump(2) + "\n");
  std::cerr << "enumerate: " << cat.size() << " members\n";
  return ok;
}

int code_for(const error& e) {
  switch (e.code()) {
    case errc::invalid_params: return invalid_params;
    case errc::parse_error:
    case errc::duplicate_edge:
    case errc::id_out_of_range: return parse_failed;
    case errc::limit_exceeded: return budget_exceeded;
    case errc::degree_mismatch:
    case errc::identical_graphs: return degree_mismatch;
    case errc::invalid_config:
    case errc::empty_catalog: return invalid_config;
    case errc::infeasible_degrees: return infeasible;
    case errc::infeasible_size: return usage;
    default: return check_failed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterfly-preserving swap toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  std::size_t s = 0, t = 0;
  std::string out_dir = ".";
  auto* gen = app.add_subcommand("generate", "build the (G_b, G_e) pair and its property report");
  gen->add_option("--s", s)->required();
  gen->add_option("--t", t)->required();
  gen->add_option("--out-dir", out_dir)->capture_default_str();

  std::string count_path, out;
  auto* cnt = app.add_subcommand("count", "degrees, butterflies and caterpillars of a graph");
  cnt->add_option("graph", count_path)->required();
  cnt->add_option("--out", out);

  explore_args ex;
  auto* exp = app.add_subcommand("explore", "BFS over swaps of size 2..q-max");
  exp->add_option("--start", ex.start)->required();
  exp->add_option("--q-max", ex.q_max)->required();
  exp->add_flag("--preserve-butterflies", ex.preserve);
  exp->add_option("--target", ex.target);
  exp->add_flag("--iso", ex.iso, "deduplicate states up to isomorphism");
  exp->add_option("--expect", ex.expect)->check(CLI::IsMember({"found", "absent"}));
  exp->add_option("--visited-cap", ex.visited_cap)->capture_default_str();
  exp->add_option("--moves-cap", ex.moves_cap)->capture_default_str();
  exp->add_option("--out", ex.out);

  std::string from_path, to_path, connect_out;
  auto* con = app.add_subcommand("connect", "single swap taking one graph to another");
  con->add_option("--from", from_path)->required();
  con->add_option("--to", to_path)->required();
  con->add_option("--out", connect_out);

  mcmc_args mc;
  auto* mcmc = app.add_subcommand("mcmc", "run a seeded stay-put swap chain");
  mcmc->add_option("--start", mc.start)->required();
  mcmc->add_option("--q", mc.q)->capture_default_str();
  mcmc->add_flag("--preserve-butterflies", mc.preserve);
  mcmc->add_option("--steps", mc.steps)->required();
  mcmc->add_option("--burn-in", mc.burn_in, "default steps/10");
  mcmc->add_option("--thinning", mc.thinning)->capture_default_str();
  mcmc->add_option("--trace", mc.trace);
  mcmc->add_option("--trace-mode", mc.trace_mode)->check(CLI::IsMember({"hash", "bip"}))->capture_default_str();
  mcmc->add_option("--stats", mc.stats);
  mcmc->add_option("--catalog", mc.catalog, "bip blocks; enables the uniformity distance");
  mcmc->add_option("--watch", mc.watch, "count steps isomorphic to this graph");

  std::string left, right, enum_dir = ".";
  std::optional<std::uint64_t> beta;
  std::size_t limit = 10'000'000;
  auto* en = app.add_subcommand("enumerate", "write every graph with the given degrees");
  en->add_option("--left", left, "comma-separated left degrees")->required();
  en->add_option("--right", right, "comma-separated right degrees")->required();
  en->add_option("--butterflies", beta);
  en->add_option("--limit", limit)->capture_default_str();
  en->add_option("--out-dir", enum_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_generate(s, t, out_dir);
    if (*cnt) return cmd_count(count_path, out);
    if (*exp) return cmd_explore(ex, g);
    if (*con) return cmd_connect(from_path, to_path, connect_out);
    if (*mcmc) return cmd_mcmc(mc, g);
    if (*en) return cmd_enumerate(left, right, beta, limit, enum_dir);
  } catch (const error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return code_for(e);
  } catch (const io_error& e) {
    std::cerr << "IoError: " << e.what() << "\n";
    return io_failed;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "IoError: " << e.what() << "\n";
    return io_failed;
  }
  return usage;
}
