#include "menger/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace menger {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json number_json(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::stod(format_number(x));
}

MetricSpace parse_point_set(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("malformed point-set file: ") + e.what());
  }
  if (!j.is_object()) throw MalformedInput("malformed point-set file: top level must be an object");
  try {
    if (j.contains("matrix")) {
      auto m = j.at("matrix").get<std::vector<std::vector<double>>>();
      return MetricSpace::from_matrix(m);
    }
    if (!j.contains("points")) throw MalformedInput("malformed point-set file: needs \"points\" or \"matrix\"");
    auto pts = j.at("points").get<std::vector<std::vector<double>>>();
    if (j.contains("dim")) {
      const auto d = j.at("dim").get<std::size_t>();
      std::vector<double> flat;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != d)
          throw MalformedInput("malformed point-set file: point " + std::to_string(i) + " has " +
                               std::to_string(pts[i].size()) + " coordinates, dim is " + std::to_string(d));
        flat.insert(flat.end(), pts[i].begin(), pts[i].end());
      }
      return MetricSpace::euclidean(d, std::move(flat));
    }
    return MetricSpace::euclidean(pts);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("malformed point-set file: ") + e.what());
  }
}

MetricSpace read_point_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read point-set file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_point_set(ss.str());
}

json point_set_json(const MetricSpace& space) {
  json j = json::object();
  if (space.is_euclidean()) {
    j["dim"] = space.dim();
    json pts = json::array();
    for (Index i = 0; i < space.size(); ++i) {
      json p = json::array();
      for (double c : space.point(i)) p.push_back(number_json(c));
      pts.push_back(std::move(p));
    }
    j["points"] = std::move(pts);
  } else {
    json m = json::array();
    for (Index i = 0; i < space.size(); ++i) {
      json row = json::array();
      for (Index k = 0; k < space.size(); ++k) row.push_back(number_json(space(i, k)));
      m.push_back(std::move(row));
    }
    j["matrix"] = std::move(m);
  }
  return j;
}

IndexSet parse_index_list(std::string_view text) {
  std::vector<Index> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string tok;
  auto to_index = [&](const std::string& t) -> Index {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (t.empty() || t[0] == '-' || t[0] == '+') throw std::invalid_argument("sign");
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw ValidationError("bad index '" + t + "' in list '" + s + "'");
    return static_cast<Index>(v);
  };
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dash = tok.find('-');
    if (dash != std::string::npos && dash > 0) {
      const Index lo = to_index(tok.substr(0, dash));
      const Index hi = to_index(tok.substr(dash + 1));
      if (hi < lo) throw ValidationError("empty index range '" + tok + "'");
      for (Index i = lo; i <= hi; ++i) out.push_back(i);
    } else {
      out.push_back(to_index(tok));
    }
  }
  return IndexSet(std::move(out));
}

json index_set_json(const IndexSet& s) { return json(s.values()); }

json tree_json(const SteinerTree& tree) {
  json edges = json::array();
  for (const Edge& e : tree.edges()) edges.push_back({e.a, e.b});
  return json{{"vertices", index_set_json(tree.vertices())},
              {"edges", std::move(edges)},
              {"terminals", index_set_json(tree.terminals())}};
}

json smt_result_json(const SmtResult& r) {
  json j{{"length", number_json(r.length)},
         {"lower", number_json(r.lower)},
         {"upper", number_json(r.upper)},
         {"method", std::string(to_string(r.method))},
         {"tree", tree_json(r.tree)}};
  if (!r.steiner_coords.empty()) {
    const std::size_t n = r.steiner_coords.size() / 2;
    json pts = json::array();
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back({number_json(r.steiner_coords[2 * i]), number_json(r.steiner_coords[2 * i + 1])});
    j["tree"]["steiner_base"] = r.base_size;
    j["tree"]["steiner_coords"] = std::move(pts);
  }
  return j;
}

namespace {

json params_json(const EstimateParams& p) {
  json j{{"eps", number_json(p.eps)},
         {"delta", number_json(p.delta)},
         {"grid_pitch", number_json(p.grid_pitch)},
         {"seed", p.seed}};
  for (const auto& [k, v] : p.extra) j[k] = number_json(v);
  return j;
}

}  // namespace

json estimate_json(const LengthEstimate& e) {
  json levels = json::array();
  for (const auto& l : e.levels)
    levels.push_back({{"eps", number_json(l.eps)},
                      {"net_size", l.net_size},
                      {"value", number_json(l.value)},
                      {"lower", number_json(l.lower)},
                      {"method", l.method}});
  json witness{{"net", index_set_json(e.witness_net)}};
  if (e.witness_tree) witness["tree"] = smt_result_json(*e.witness_tree);
  json params = params_json(e.params);
  params["levels"] = std::move(levels);
  return json{{"functional", std::string(to_string(e.functional))},
              {"value", number_json(e.value)},
              {"direction", std::string(to_string(e.direction))},
              {"params", std::move(params)},
              {"witness", std::move(witness)}};
}

json cover_json(const ProofCover& pc) {
  json elems = json::array();
  for (const auto& u : pc.cover.elements) elems.push_back(index_set_json(u));
  return json{{"functional", std::string(to_string(Functional::Lstar_delta_upper))},
              {"value", number_json(pc.sum)},
              {"direction", std::string(to_string(Direction::upper))},
              {"params",
               {{"delta", number_json(pc.cover.delta)},
                {"eps", number_json(pc.eps)},
                {"bound", number_json(pc.bound)},
                {"lmc_est", number_json(pc.lmc_est)},
                {"net_size", pc.net_size},
                {"extended_net_size", pc.extended_net_size},
                {"chains", pc.chains},
                {"pieces", pc.pieces},
                {"large_components", pc.large_components},
                {"split_components", pc.split_components},
                {"engine", pc.engine},
                {"within_bound", pc.within_bound()}}},
              {"witness", {{"delta", number_json(pc.cover.delta)}, {"elements", std::move(elems)}}}};
}

json shape_sidecar_json(const SampledShape& s) {
  json meta = json::object();
  for (const auto& [k, v] : s.meta) meta[k] = number_json(v);
  json comps = json::array();
  for (const auto& c : s.components) comps.push_back(c);
  return json{{"true_length", number_json(s.true_length)},
              {"polyline_length", number_json(polyline_length(s))},
              {"components", std::move(comps)},
              {"meta", std::move(meta)}};
}

json convergence_json(const ConvergenceReport& rep) {
  json steps = json::array();
  for (const auto& s : rep.steps)
    steps.push_back({{"step", s.step},
                     {"excess", number_json(s.excess)},
                     {"hausdorff", number_json(s.hausdorff)},
                     {"lmc_lower", number_json(s.lmc_lower)},
                     {"lmc_certified", number_json(s.lmc_certified)},
                     {"lstar", number_json(s.lstar)},
                     {"true_length", number_json(s.true_length)},
                     {"params_eps", number_json(s.eps)}});
  return json{{"steps", std::move(steps)},
              {"limit",
               {{"lmc_lower", number_json(rep.limit_lmc_lower)},
                {"lmc_certified", number_json(rep.limit_lmc_certified)},
                {"params_eps", number_json(rep.limit_eps)}}},
              {"liminf_estimate", number_json(rep.liminf_estimate)},
              {"semicontinuity_gap", number_json(rep.semicontinuity_gap)},
              {"tolerance", number_json(rep.tolerance)},
              {"verdict", rep.verdict},
              {"note", rep.note}};
}

std::string convergence_csv(const ConvergenceReport& rep) {
  std::ostringstream os;
  os << "step,excess,lmc_lower,params_eps,verdict\n";
  for (const auto& s : rep.steps)
    os << s.step << ',' << format_number(s.excess) << ',' << format_number(s.lmc_lower) << ','
       << format_number(s.eps) << ',' << rep.verdict << '\n';
  os << "limit,0," << format_number(rep.limit_lmc_lower) << ',' << format_number(rep.limit_eps) << ','
     << rep.verdict << '\n';
  os << "liminf,," << format_number(rep.liminf_estimate) << ",," << rep.verdict << '\n';
  os << "gap,," << format_number(rep.semicontinuity_gap) << ",," << rep.verdict << '\n';
  return os.str();
}

}  // namespace menger
