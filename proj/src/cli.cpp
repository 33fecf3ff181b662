#include "menger/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "menger/golab.hpp"
#include "menger/io.hpp"
#include "menger/kernels.hpp"

namespace menger::cli {

namespace {

enum class LogLevel { error = 0, info = 1, debug = 2 };

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("MENGER_LOG");
    const std::string v = env ? env : "error";
    if (v == "info") level_ = LogLevel::info;
    else if (v == "debug") level_ = LogLevel::debug;
  }
  void info(const std::string& msg) const { emit(LogLevel::info, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::debug, "debug", msg); }

 private:
  void emit(LogLevel at, const char* tag, const std::string& msg) const {
    if (level_ >= at) err_ << "[" << tag << "] " << msg << '\n';
  }
  std::ostream& err_;
  LogLevel level_{LogLevel::error};
};

const std::vector<std::string> kSubcommands{"mst", "smt", "lmc", "lim", "lm", "cover", "shape", "golab", "hits"};

struct Options {
  std::string points;
  std::string terminals;
  std::string candidates{"none"};
  double eps{0.0};
  std::string eps_schedule;
  double delta{0.0};
  double grid_pitch{0.0};
  std::uint64_t seed{0};
  int threads{0};
  std::string format;
  std::string out;
  // smt
  std::string mode{"auto"};
  // shape
  std::string kind{"segment"};
  int n{0};
  std::size_t samples{0};
  double base_length{1.0};
  std::string sidecar;
  // golab
  std::string family{"semicircle"};
  int steps{6};
  // hits
  std::string b_set;
};

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) throw ValidationError("bad number '" + tok + "' in --eps-schedule");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("--eps-schedule is empty");
  return out;
}

std::vector<double> schedule_of(const Options& o) {
  if (!o.eps_schedule.empty()) return parse_schedule(o.eps_schedule);
  if (o.eps > 0.0) return {o.eps};
  return {0.2, 0.1, 0.05, 0.025};
}

MetricSpace load_points(const Options& o) {
  if (o.points.empty()) throw ValidationError("--points is required");
  return read_point_set(o.points);
}

IndexSet terminals_of(const Options& o, const MetricSpace& space) {
  IndexSet t = o.terminals.empty() || o.terminals == "all" ? space.all() : parse_index_list(o.terminals);
  t.check_bounds(space.size());
  return t;
}

CandidateSource source_of(const Options& o) {
  if (o.candidates == "none") return {};
  if (o.candidates == "sample") return {CandidateKind::sample, 0.0};
  if (o.candidates == "grid") {
    if (!(o.grid_pitch > 0.0)) throw ValidationError("--candidates grid needs --grid-pitch > 0");
    return {CandidateKind::grid, o.grid_pitch};
  }
  throw ValidationError("--candidates must be none, sample or grid for estimates");
}

json mst_json(const MetricSpace& space, const IndexSet& p) {
  const MstResult r = mst(space, p);
  return json{{"length", number_json(r.length)},
              {"lower", number_json(r.length)},
              {"upper", number_json(r.length)},
              {"method", "mst"},
              {"tree", tree_json(r.tree)}};
}

SmtResult smt_cmd(const Options& o, const MetricSpace& space, const IndexSet& p, const Log& log) {
  log.info("smt: mode " + o.mode + ", |P| = " + std::to_string(p.size()));
  if (o.mode == "euclidean-small") return smt_euclidean_small(space, p);
  if (o.mode == "bounds") return smt_bounds(space, p);
  if (o.mode == "heuristic") return smt_heuristic(space, p);
  if (o.mode == "grid") {
    if (!(o.grid_pitch > 0.0)) throw ValidationError("--mode grid needs --grid-pitch > 0");
    return smt_grid(space, p, o.grid_pitch);
  }
  if (o.mode == "restricted") {
    const IndexSet c = o.candidates == "none" || o.candidates == "all" || o.candidates == "sample"
                           ? space.all()
                           : parse_index_list(o.candidates);
    c.check_bounds(space.size());
    return smt_restricted(space, p, c);
  }
  if (o.mode == "auto") {
    SmtEngine eng;
    if (o.candidates == "sample" || o.candidates == "all") {
      eng.candidates = CandidateKind::sample;
      eng.sample = space.all();
    } else if (o.candidates == "grid") {
      eng.candidates = CandidateKind::grid;
      eng.grid_pitch = o.grid_pitch;
    } else if (o.candidates != "none") {
      eng.candidates = CandidateKind::sample;
      eng.sample = parse_index_list(o.candidates);
      eng.sample.check_bounds(space.size());
    }
    return best_smt(space, p, eng);
  }
  throw ValidationError("unknown --mode '" + o.mode + "'");
}

Ensemble golab_family(const Options& o) {
  if (o.steps < 1) throw ValidationError("--steps must be >= 1");
  const std::size_t per = o.samples ? o.samples : 64;
  ShapeSpec lim;
  lim.kind = ShapeKind::segment;
  lim.samples = 2001;
  std::vector<SampledShape> seq;
  if (o.family == "semicircle") {
    lim.vertices = {{-1.0, 0.0}, {1.0, 0.0}};
    for (int n = 1; n <= o.steps; ++n) seq.push_back(generate(ShapeSpec{ShapeKind::semicircle_chain, n, per, 1.0, {}}));
  } else if (o.family == "shrunk_koch") {
    lim.vertices = {{-1.0, 0.0}, {1.0, 0.0}};
    for (int n = 1; n <= o.steps; ++n) seq.push_back(generate(ShapeSpec{ShapeKind::shrunk_koch, n, per, 1.0, {}}));
  } else if (o.family == "constant") {
    for (int n = 1; n <= o.steps; ++n) seq.push_back(generate(lim));
  } else {
    throw ValidationError("unknown --family '" + o.family + "' (semicircle, shrunk_koch, constant, disconnected)");
  }
  return make_ensemble(generate(lim), seq);
}

void write_text(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ValidationError("cannot write --out file '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int dispatch(const std::string& sub, const Options& o, std::ostream& out, const Log& log) {
  kernels::set_max_threads(o.threads);
  if (o.format != "" && o.format != "csv" && o.format != "json")
    throw ValidationError("--format must be csv or json");

  if (sub == "shape") {
    ShapeSpec spec;
    spec.kind = shape_kind_from_string(o.kind);
    spec.n = o.n;
    spec.base_length = o.base_length;
    if (o.samples) spec.samples = o.samples;
    else if (spec.kind == ShapeKind::segment) spec.samples = 101;
    else if (spec.kind == ShapeKind::square_diagonals) spec.samples = 101;
    else if (spec.kind == ShapeKind::semicircle_chain) spec.samples = 64;
    if (spec.kind == ShapeKind::polyline) throw ValidationError("polyline shapes are built from the library API");
    const SampledShape s = generate(spec);
    log.info("shape: " + std::string(to_string(spec.kind)) + " with " + std::to_string(s.space.size()) + " points");
    const json side = shape_sidecar_json(s);
    if (o.out.empty()) {
      out << point_set_json(s.space).dump() << '\n' << side.dump() << '\n';
      return 0;
    }
    write_text(o, out, point_set_json(s.space).dump() + "\n");
    std::string side_path = o.sidecar;
    if (side_path.empty()) {
      const std::filesystem::path p(o.out);
      side_path = (p.parent_path() / (p.stem().string() + ".meta.json")).string();
    }
    std::ofstream f(side_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write sidecar file '" + side_path + "'");
    f << dump(side);
    return 0;
  }

  if (sub == "golab") {
    ExperimentConfig cfg;
    cfg.eps_schedule = schedule_of(o);
    cfg.seed = o.seed;
    cfg.source = source_of(o);
    const ConvergenceReport rep = o.family == "disconnected" ? counterexample_disconnected(o.steps, cfg)
                                                              : convergence_experiment(golab_family(o), cfg);
    log.info("golab: verdict " + rep.verdict);
    write_text(o, out, o.format == "json" ? dump(convergence_json(rep)) : convergence_csv(rep));
    return 0;
  }

  const MetricSpace space = load_points(o);
  const IndexSet p = terminals_of(o, space);
  log.debug("loaded " + std::to_string(space.size()) + " points");
  json result;
  if (sub == "mst") {
    result = mst_json(space, p);
  } else if (sub == "smt") {
    result = smt_result_json(smt_cmd(o, space, p, log));
  } else if (sub == "lmc") {
    result = estimate_json(L_MC_estimate(space, p, schedule_of(o), source_of(o), o.seed));
  } else if (sub == "lim") {
    result = estimate_json(L_IM_estimate(space, p, schedule_of(o), o.seed));
  } else if (sub == "lm") {
    result = estimate_json(L_M_estimate(space, p, schedule_of(o), o.seed));
  } else if (sub == "cover") {
    if (!(o.delta > 0.0)) throw ValidationError("--delta must be positive");
    result = cover_json(proof_cover(space, p, o.delta, schedule_of(o), o.seed));
  } else if (sub == "hits") {
    if (!(o.eps > 0.0)) throw ValidationError("--eps must be positive");
    ExperimentConfig cfg;
    cfg.eps_schedule = o.eps_schedule.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.025} : parse_schedule(o.eps_schedule);
    cfg.seed = o.seed;
    cfg.source = source_of(o);
    const HitCollection hc = hit_collection(space, p, o.eps, cfg);
    const IndexSet b = o.b_set.empty() ? p : parse_index_list(o.b_set);
    b.check_bounds(space.size());
    const HitContract hcon = hit_contract(space, b, hc);
    result = json{{"centers", index_set_json(hc.centers)},
                  {"radius", number_json(hc.radius)},
                  {"eps", number_json(hc.eps)},
                  {"smt_centers", number_json(hc.smt_centers)},
                  {"smt_centers_lower", number_json(hc.smt_centers_lower)},
                  {"hit", hcon.hit}};
    if (hcon.hit) {
      result["witnesses"] = index_set_json(hcon.witnesses);
      result["smt_witnesses"] = number_json(hcon.smt_witnesses);
      result["augmented"] = number_json(hcon.augmented);
      result["holds"] = hcon.holds;
    } else {
      result["note"] = "not hit";
    }
  }
  if (o.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : result.items())
      if (v.is_primitive()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    write_text(o, out, os.str());
  } else {
    write_text(o, out, dump(result));
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << "usage: menger <subcommand> [flags]; subcommands: mst smt lmc lim lm cover shape golab hits\n";
    return 2;
  }
  const std::string sub = args[0];
  if (sub == "-h" || sub == "--help") {
    out << "usage: menger <subcommand> [flags]; subcommands: mst smt lmc lim lm cover shape golab hits\n";
    return 0;
  }
  if (std::find(kSubcommands.begin(), kSubcommands.end(), sub) == kSubcommands.end()) {
    err << "error: unknown subcommand '" << sub << "'\n";
    return 2;
  }

  Options o;
  CLI::App app{"menger " + sub};
  app.name("menger " + sub);
  app.add_option("--points", o.points, "point-set JSON file");
  app.add_option("--terminals", o.terminals, "index list such as 0,1,2 or 0-4 (default all)");
  app.add_option("--candidates", o.candidates, "none, sample, grid, all or an index list");
  app.add_option("--eps", o.eps, "single resolution");
  app.add_option("--eps-schedule", o.eps_schedule, "comma list of decreasing resolutions");
  app.add_option("--delta", o.delta, "cover scale");
  app.add_option("--grid-pitch", o.grid_pitch, "candidate grid pitch");
  app.add_option("--seed", o.seed, "random seed")->default_val(0);
  app.add_option("--threads", o.threads, "thread cap (0 = all)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--mode", o.mode, "smt: auto, euclidean-small, restricted, grid, bounds, heuristic");
  app.add_option("--kind", o.kind, "shape: segment, semicircle, koch, shrunk_koch, diagonals");
  app.add_option("--n", o.n, "shape depth");
  app.add_option("--samples", o.samples, "samples per piece");
  app.add_option("--base-length", o.base_length, "koch base length");
  app.add_option("--sidecar", o.sidecar, "shape sidecar file");
  app.add_option("--family", o.family, "golab: semicircle, shrunk_koch, constant, disconnected");
  app.add_option("--steps", o.steps, "golab: sequence length");
  app.add_option("--b", o.b_set, "hits: index list of B (default the terminals)");

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: bad flags for '" << sub << "': " << e.what() << '\n';
    return 2;
  }

  const Log log(err);
  try {
    return dispatch(sub, o, out, log);
  } catch (const MalformedInput& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace menger::cli
