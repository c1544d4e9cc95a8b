#include "pwgraph/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwgraph/error.hpp"
#include "pwgraph/reconstruct.hpp"
#include "pwgraph/spectral.hpp"
#include "pwgraph/spline.hpp"

namespace pwgraph::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::string_view kModule = "cli";

[[noreturn]] void invalid(const std::string& what) {
  throw Error(kModule, Errc::ConfigInvalid, what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::size_t to_size(std::string_view s, std::string_view context) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    invalid("bad integer '" + std::string(s) + "' in " + std::string(context));
  return v;
}

std::vector<std::size_t> to_sizes(std::string_view s, char sep, std::string_view context) {
  std::vector<std::size_t> out;
  for (auto part : split(s, sep)) out.push_back(to_size(part, context));
  return out;
}

std::string format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) invalid("cannot write " + path.string());
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Vertex lists of successive indices; cycles wrap, everything else must fit.
std::vector<Vertex> run_of(const GraphSource& g, std::size_t start, std::size_t len) {
  const std::size_t n = g.graph.vertex_count();
  if (len == 0) invalid("segment length must be >= 1");
  if (g.kind == "cycle") {
    if (len > n) invalid("segment longer than the cycle");
  } else if (start + len > n) {
    invalid("segment " + std::to_string(start) + "+" + std::to_string(len) + " leaves the graph");
  }
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back((start + i) % n);
  return out;
}

bool closures_disjoint(std::span<const RemovalPart> parts, std::size_t n) {
  std::vector<char> used(n, 0);
  for (const auto& p : parts)
    for (Vertex v : p.set.closure()) {
      if (used[v]) return false;
      used[v] = 1;
    }
  return true;
}

// Segment bounds hold on a cycle once the wrap adds no length-two paths.
std::optional<double> certified_bound(const GraphSource& g, const Removal& r) {
  if (g.kind != "cycle" || r.parts.empty()) return std::nullopt;
  double worst = 0.0;
  for (const auto& p : r.parts) {
    if (!p.segment_length || *p.segment_length + 2 > g.graph.vertex_count()) return std::nullopt;
    worst = std::max(worst, segment_bound(*p.segment_length));
  }
  if (r.parts.size() > 1 && !closures_disjoint(r.parts, g.graph.vertex_count())) return std::nullopt;
  return worst;
}

json vertices(const std::vector<Vertex>& v) { return json(v); }

json spectrum_json(const SpectralDecomposition& d, bool with_basis) {
  json j;
  j["vertices"] = d.size();
  j["eigenvalues"] = d.eigenvalues();
  j["residual"] = d.residual();
  j["omega_star"] = omega_star(d.graph());
  if (with_basis) {
    json rows = json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
      auto r = d.basis().row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    j["basis"] = std::move(rows);
  }
  return j;
}

json lambda_json(const ExperimentConfig& c, const GraphSource& g, const SpectralDecomposition& d,
                 const Removal& r, double lambda) {
  json j;
  j["graph"] = c.graph;
  j["remove"] = c.remove;
  j["set"] = vertices(r.set.members());
  j["boundary"] = vertices(r.set.boundary());
  j["lambda"] = lambda;
  j["method"] = to_string(LambdaMethod::BruteForce);
  j["uniqueness_threshold"] = uniqueness_threshold(lambda);
  j["omega_star"] = omega_star(g.graph);
  const auto bound = certified_bound(g, r);
  j["closed_form_bound"] = bound ? json(*bound) : json(nullptr);
  j["closed_form_gap"] = bound ? json(*bound - lambda) : json(nullptr);

  json parts = json::array();
  std::vector<double> lambdas;
  for (const auto& p : r.parts) {
    json pj;
    pj["shape"] = p.shape;
    pj["members"] = vertices(p.set.members());
    const double lp = poincare_constant(d, p.set);
    lambdas.push_back(lp);
    pj["lambda"] = lp;
    if (p.segment_length) pj["segment_bound"] = segment_bound(*p.segment_length);
    if (!p.solid_dims.empty()) pj["solid_formula"] = rectangular_bound(p.solid_dims);
    parts.push_back(std::move(pj));
  }
  j["parts"] = std::move(parts);
  if (r.parts.size() > 1 && closures_disjoint(r.parts, g.graph.vertex_count())) {
    std::vector<VertexSet> sets;
    for (const auto& p : r.parts) sets.push_back(p.set);
    j["union_lambda"] = union_lambda(g.graph, sets, lambdas).lambda;
  } else {
    j["union_lambda"] = nullptr;
  }
  return j;
}

std::string trace_csv(const ReconstructionTrace& t) {
  std::string out = "l,k,error,bound,gram_condition\n";
  for (const auto& e : t.entries) {
    out += std::to_string(e.l) + "," + std::to_string(e.k) + ",";
    if (e.error) out += format(*e.error);
    out += "," + format(e.bound) + "," + format(e.gram_condition) + "\n";
  }
  return out;
}

struct Trial {
  std::uint64_t seed = 0;
  double f_norm = 0.0;
  ReconstructionTrace trace;
};

std::vector<double> read_numbers(const fs::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open samples '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  std::string body = text.str();
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream tokens(body);
  std::vector<double> out;
  std::string tok;
  while (tokens >> tok) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
      invalid("bad sample value '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Trial> run_trials(const SpectralDecomposition& d, const VertexSet& s,
                              const ReconstructOptions& base, std::uint64_t seed, unsigned count,
                              unsigned threads) {
  std::vector<Trial> trials(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<unsigned> next{0};
  const auto u = s.complement();
  auto work = [&] {
    for (unsigned i = next++; i < count; i = next++) {
      try {
        Trial& t = trials[i];
        t.seed = seed + i;
        const Signal f = synthesize_pw_signal(d, base.omega, t.seed);
        std::vector<double> samples;
        samples.reserve(u.size());
        for (Vertex v : u) samples.push_back(f[v]);
        ReconstructOptions opt = base;
        opt.ground_truth = f;
        t.f_norm = f.norm();
        t.trace = reconstruct(d, s, samples, opt).trace;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min(threads, count));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return trials;
}

int cmd_spectrum(const ExperimentConfig& c, std::ostream& out) {
  const auto g = parse_graph(c.graph);
  const auto d = decompose(g.graph);
  write_file(c.out_dir / "spectrum.json", dump(spectrum_json(d, c.with_basis)));
  for (double x : d.eigenvalues()) out << short_format(x) << '\n';
  return 0;
}

int cmd_lambda(const ExperimentConfig& c, std::ostream& out) {
  const auto g = parse_graph(c.graph);
  const auto d = decompose(g.graph);
  const auto r = parse_removal(g, c.remove);
  const double lambda = poincare_constant(d, r.set);
  const json j = lambda_json(c, g, d, r, lambda);
  write_file(c.out_dir / "lambda.json", dump(j));
  out << "lambda_exact " << short_format(lambda) << '\n';
  if (!j["closed_form_bound"].is_null())
    out << "segment_bound " << short_format(j["closed_form_bound"].get<double>()) << '\n';
  out << "uniqueness_threshold " << short_format(uniqueness_threshold(lambda)) << '\n';
  out << "omega_star " << short_format(omega_star(g.graph)) << '\n';
  return 0;
}

int cmd_uniqueness(const ExperimentConfig& c, std::ostream& out) {
  const auto g = parse_graph(c.graph);
  const auto d = decompose(g.graph);
  const auto r = parse_removal(g, c.remove);
  const double lambda = poincare_constant(d, r.set);
  const auto u = VertexSet::make(g.graph, r.set.complement());
  if (u.empty()) throw Error("sampling", Errc::EmptySet, "removal covers every vertex");
  const auto res = verify_uniqueness(d, u, c.omega);
  json j;
  j["graph"] = c.graph;
  j["remove"] = c.remove;
  j["omega"] = c.omega;
  j["lambda"] = lambda;
  j["lambda_omega"] = lambda * c.omega;
  j["guaranteed"] = lambda * c.omega < 1.0;
  j["band_size"] = d.band_size(c.omega);
  j["samples"] = u.size();
  j["unique"] = res.unique;
  j["margin"] = res.margin;
  write_file(c.out_dir / "uniqueness.json", dump(j));
  out << "unique " << (res.unique ? "true" : "false") << " margin " << short_format(res.margin)
      << " lambda_omega " << short_format(lambda * c.omega) << '\n';
  return 0;
}

int cmd_spline(const ExperimentConfig& c, std::ostream& out) {
  if (!c.eps) invalid("spline needs a numeric --eps");
  const auto g = parse_graph(c.graph);
  const auto d = decompose(g.graph);
  const auto w = parse_removal(g, c.at).set.members();
  std::vector<double> y = c.values;
  if (y.empty()) {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    for (std::size_t i = 0; i < w.size(); ++i) y.push_back(normal(rng));
  }
  const auto m = fit_spline(d, w, y, c.order, *c.eps);
  json j;
  j["graph"] = c.graph;
  j["constraint_set"] = vertices(m.constraint_set);
  j["values"] = m.targets;
  j["order"] = m.order;
  j["eps"] = m.eps;
  j["alpha"] = m.alpha;
  j["solution"] = m.solution.vector();
  j["sobolev_energy"] = m.sobolev_energy;
  j["gram_condition"] = m.gram_condition;
  write_file(c.out_dir / "spline.json", dump(j));
  out << "sobolev_energy " << short_format(m.sobolev_energy) << " gram_condition "
      << short_format(m.gram_condition) << '\n';
  return 0;
}

int cmd_reconstruct(const ExperimentConfig& c, std::ostream& out) {
  const auto g = parse_graph(c.graph);
  const auto d = decompose(g.graph);
  const auto r = parse_removal(g, c.remove);
  const double lambda = poincare_constant(d, r.set);

  ReconstructOptions opt;
  opt.omega = c.omega;
  opt.eps = c.eps ? *c.eps : choose_epsilon(lambda, c.omega, c.eps_floor, d.smallest());
  opt.l_max = c.l_max;
  opt.lambda = lambda;

  std::vector<Trial> trials;
  if (c.samples.empty()) {
    trials = run_trials(d, r.set, opt, c.seed, c.trials, c.parallel_trials);
  } else {
    Trial t;
    t.seed = c.seed;
    t.f_norm = 1.0;
    t.trace = reconstruct(d, r.set, read_numbers(c.samples), opt).trace;
    trials.push_back(std::move(t));
  }
  const bool observed = !c.samples.empty();

  write_file(c.out_dir / "spectrum.json", dump(spectrum_json(d, c.with_basis)));
  write_file(c.out_dir / "lambda.json", dump(lambda_json(c, g, d, r, lambda)));

  json summary;
  summary["graph"] = c.graph;
  summary["remove"] = c.remove;
  summary["vertices"] = g.graph.vertex_count();
  summary["removed"] = r.set.size();
  summary["omega"] = c.omega;
  summary["eps"] = opt.eps;
  summary["eps_auto"] = !c.eps.has_value();
  summary["lambda"] = lambda;
  summary["gamma"] = lambda * (c.omega + opt.eps);
  summary["uniqueness_threshold"] = uniqueness_threshold(lambda);
  summary["omega_star"] = omega_star(g.graph);
  summary["l_max"] = c.l_max;
  bool all_hold = true;
  json runs = json::array();
  for (const auto& t : trials) {
    const std::string name =
        trials.size() == 1 ? "trace.csv" : "trace_seed" + std::to_string(t.seed) + ".csv";
    write_file(c.out_dir / name, trace_csv(t.trace));
    const bool holds = t.trace.bound_holds(t.f_norm);
    all_hold = all_hold && holds;
    if (observed) {
      json tj;
      tj["samples"] = c.samples.string();
      tj["trace"] = name;
      tj["iterations"] = t.trace.entries.size();
      tj["stop_reason"] = to_string(t.trace.stop_reason);
      runs.push_back(std::move(tj));
      continue;
    }
    json tj;
    tj["seed"] = t.seed;
    tj["trace"] = name;
    tj["iterations"] = t.trace.entries.size();
    tj["stop_reason"] = to_string(t.trace.stop_reason);
    tj["final_error"] = t.trace.entries.empty() || !t.trace.entries.back().error
                            ? json(nullptr)
                            : json(*t.trace.entries.back().error);
    tj["bound_holds"] = holds;
    runs.push_back(std::move(tj));
  }
  summary["trials"] = std::move(runs);
  summary["bound_is_relative"] = observed;
  summary["bound_holds"] = observed ? json(nullptr) : json(all_hold);
  write_file(c.out_dir / "summary.json", dump(summary));

  out << "lambda " << short_format(lambda) << " eps " << short_format(opt.eps) << " gamma "
      << short_format(lambda * (c.omega + opt.eps)) << '\n';
  for (const auto& t : trials) {
    if (observed) {
      out << t.trace.entries.size() << " iterations, stop " << to_string(t.trace.stop_reason) << '\n';
      continue;
    }
    out << "seed " << t.seed << ": " << t.trace.entries.size() << " iterations, stop "
        << to_string(t.trace.stop_reason) << ", bound " << (t.trace.bound_holds(t.f_norm) ? "holds" : "VIOLATED")
        << '\n';
  }
  return 0;
}

int cmd_gen(const ExperimentConfig& c, std::ostream& out) {
  const auto g = parse_graph(c.graph);
  if (c.out.empty()) {
    write_edge_list(out, g.graph);
  } else {
    std::ostringstream s;
    write_edge_list(s, g.graph);
    write_file(c.out, s.str());
  }
  return 0;
}

}  // namespace

GraphSource parse_graph(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) invalid("graph spec '" + std::string(spec) + "' has no ':'");
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  const std::string name(kind);
  if (kind == "cycle") return {cycle_graph(to_size(arg, "cycle")), name, {}};
  if (kind == "path") return {path_graph(to_size(arg, "path")), name, {}};
  if (kind == "torus") {
    auto dims = to_sizes(arg, 'x', "torus");
    return {torus_graph(dims), name, std::move(dims)};
  }
  if (kind == "file") {
    std::ifstream f{std::string(arg)};
    if (!f) invalid("cannot open edge list '" + std::string(arg) + "'");
    return {read_edge_list(f), name, {}};
  }
  invalid("unknown graph kind '" + name + "'");
}

Removal parse_removal(const GraphSource& g, std::string_view spec) {
  if (spec.empty()) invalid("empty vertex set spec");
  const std::size_t n = g.graph.vertex_count();
  Removal r;
  std::vector<Vertex> all;
  for (auto item : split(spec, '+')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) invalid("set spec '" + std::string(item) + "' has no ':'");
    const auto kind = item.substr(0, colon);
    auto arg = item.substr(colon + 1);
    std::vector<RemovalPart> parts;
    if (kind == "segment") {
      std::size_t start = 0;
      if (const auto at = arg.find('@'); at != std::string_view::npos) {
        start = to_size(arg.substr(at + 1), "segment start");
        arg = arg.substr(0, at);
      }
      const std::size_t len = to_size(arg, "segment length");
      if (start >= n) invalid("segment start " + std::to_string(start) + " out of range");
      parts.push_back({VertexSet::make(g.graph, run_of(g, start, len)), "segment", len, {}});
    } else if (kind == "segments") {
      const auto cn = to_sizes(arg, 'x', "segments");
      if (cn.size() != 2 || cn[0] == 0) invalid("segments needs CxN with C >= 1");
      const std::size_t stride = n / cn[0];
      for (std::size_t i = 0; i < cn[0]; ++i)
        parts.push_back({VertexSet::make(g.graph, run_of(g, i * stride, cn[1])), "segment", cn[1], {}});
      if (!closures_disjoint(parts, n))
        throw Error("sampling", Errc::OverlappingClosures,
                    "segments:" + std::string(arg) + " does not fit with disjoint closures");
    } else if (kind == "solid") {
      if (g.kind != "torus") invalid("solid sets need a torus graph");
      std::vector<std::size_t> corner(g.dims.size(), 0);
      if (const auto at = arg.find('@'); at != std::string_view::npos) {
        corner = to_sizes(arg.substr(at + 1), ',', "solid corner");
        arg = arg.substr(0, at);
      }
      const auto sides = to_sizes(arg, 'x', "solid");
      if (sides.size() != g.dims.size() || corner.size() != g.dims.size())
        invalid("solid dimension does not match the torus");
      for (std::size_t i = 0; i < sides.size(); ++i)
        if (sides[i] == 0 || sides[i] > g.dims[i] || corner[i] >= g.dims[i])
          invalid("solid does not fit in the torus");
      std::vector<Vertex> members;
      std::vector<std::size_t> offset(sides.size(), 0);
      while (true) {
        Vertex v = 0;
        for (std::size_t i = 0; i < sides.size(); ++i)
          v = v * g.dims[i] + (corner[i] + offset[i]) % g.dims[i];
        members.push_back(v);
        std::size_t i = sides.size();
        while (i-- > 0 && ++offset[i] == sides[i]) offset[i] = 0;
        if (i == std::size_t(-1)) break;
      }
      parts.push_back({VertexSet::make(g.graph, members), "solid", std::nullopt, sides});
    } else if (kind == "list") {
      parts.push_back({VertexSet::make(g.graph, to_sizes(arg, ',', "list")), "list", std::nullopt, {}});
    } else {
      invalid("unknown set kind '" + std::string(kind) + "'");
    }
    for (auto& p : parts) {
      all.insert(all.end(), p.set.members().begin(), p.set.members().end());
      r.parts.push_back(std::move(p));
    }
  }
  r.set = VertexSet::make(g.graph, std::move(all));
  return r;
}

void apply_json(ExperimentConfig& c, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "graph") c.graph = value.get<std::string>();
      else if (key == "remove") c.remove = value.get<std::string>();
      else if (key == "at") c.at = value.get<std::string>();
      else if (key == "values") c.values = value.get<std::vector<double>>();
      else if (key == "omega") c.omega = value.get<double>();
      else if (key == "eps") {
        if (value.is_string() && value.get<std::string>() == "auto") c.eps.reset();
        else c.eps = value.get<double>();
      }
      else if (key == "eps_floor") c.eps_floor = value.get<double>();
      else if (key == "order") c.order = value.get<double>();
      else if (key == "lmax") c.l_max = value.get<unsigned>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "trials") c.trials = value.get<unsigned>();
      else if (key == "parallel_trials") c.parallel_trials = value.get<unsigned>();
      else if (key == "with_basis") c.with_basis = value.get<bool>();
      else if (key == "out_dir") c.out_dir = value.get<std::string>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "samples") c.samples = value.get<std::string>();
      else invalid("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    invalid(std::string("config value has the wrong type: ") + e.what());
  }
}

void validate(const ExperimentConfig& c) {
  static const std::vector<std::string> commands{"spectrum", "lambda", "spline",
                                                 "reconstruct", "uniqueness", "gen"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    invalid("unknown command '" + c.command + "'");
  if (c.graph.empty()) invalid("--graph is required");
  const bool needs_set = c.command == "lambda" || c.command == "reconstruct" || c.command == "uniqueness";
  if (needs_set && c.remove.empty()) invalid("--remove is required for " + c.command);
  if (c.command == "spline" && c.at.empty()) invalid("--at is required for spline");
  if (!(c.omega >= 0.0) || !std::isfinite(c.omega)) invalid("omega must be >= 0");
  if (c.eps && !(*c.eps >= 0.0)) invalid("eps must be >= 0");
  if (!(c.eps_floor > 0.0)) invalid("eps floor must be > 0");
  if (!(c.order > 0.0)) invalid("order must be > 0");
  if (c.l_max > 40) invalid("lmax above 40 overflows k = 2^l");
  if (c.trials == 0) invalid("trials must be >= 1");
  if (c.parallel_trials == 0) invalid("parallel trials must be >= 1");
  if (!c.samples.empty() && c.trials != 1) invalid("--samples runs a single trial");
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.command == "spectrum") return cmd_spectrum(c, out);
    if (c.command == "lambda") return cmd_lambda(c, out);
    if (c.command == "uniqueness") return cmd_uniqueness(c, out);
    if (c.command == "spline") return cmd_spline(c, out);
    if (c.command == "reconstruct") return cmd_reconstruct(c, out);
    return cmd_gen(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: cli::IoError: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational splines and Paley-Wiener reconstruction on graphs"};
  app.require_subcommand(1);

  std::string config_path, graph, remove, at, eps;
  std::vector<double> values;
  double omega = 0.0, eps_floor = 1.0, order = 2.0;
  unsigned lmax = 6, trials = 1, parallel = 1;
  std::uint64_t seed = 0;
  bool with_basis = false;
  std::string out_dir, out_file, samples;

  struct Flags {
    CLI::Option *graph, *remove, *at, *values, *omega, *eps, *eps_floor, *order, *lmax, *seed,
        *trials, *parallel, *with_basis, *out_dir, *out, *samples;
  };
  std::vector<std::pair<CLI::App*, Flags>> subs;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    Flags f{};
    s->add_option("--config", config_path, "JSON config; flags override it");
    f.graph = s->add_option("--graph", graph, "cycle:m, path:m, torus:AxB, file:<path>");
    f.out_dir = s->add_option("--out-dir", out_dir, "directory for reports");
    if (name == "lambda" || name == "reconstruct" || name == "uniqueness")
      f.remove = s->add_option("--remove", remove, "removed set S");
    if (name == "reconstruct" || name == "uniqueness")
      f.omega = s->add_option("--omega", omega, "bandwidth");
    if (name == "reconstruct" || name == "spline") {
      f.eps = s->add_option("--eps", eps, "shift, or 'auto'");
      f.seed = s->add_option("--seed", seed, "random seed");
    }
    if (name == "reconstruct") {
      f.eps_floor = s->add_option("--eps-floor", eps_floor, "upper clamp for automatic eps");
      f.lmax = s->add_option("--lmax", lmax, "largest l, with k = 2^l");
      f.trials = s->add_option("--trials", trials, "number of seeds, starting at --seed");
      f.parallel = s->add_option("--parallel-trials", parallel, "worker threads");
      f.samples = s->add_option("--samples", samples, "observed values off S, in vertex order");
    }
    if (name == "spectrum" || name == "reconstruct")
      f.with_basis = s->add_flag("--with-basis", with_basis, "include eigenvectors in spectrum.json");
    if (name == "spline") {
      f.at = s->add_option("--at", at, "constraint set W");
      f.values = s->add_option("--values", values, "values on sorted W")->delimiter(',');
      f.order = s->add_option("--order", order, "Sobolev order t");
    }
    if (name == "gen") f.out = s->add_option("--out", out_file, "edge-list file (stdout if absent)");
    subs.emplace_back(s, f);
  };
  add("spectrum", "eigenvalues of the normalized Laplacian");
  add("lambda", "exact Poincare constant of a vertex set");
  add("spline", "fit a variational spline");
  add("reconstruct", "iterative spline reconstruction experiment");
  add("uniqueness", "check that the complement of S is a uniqueness set");
  add("gen", "write a generated graph as an edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: cli::ConfigInvalid: " << e.what() << '\n';
    return 1;
  }

  ExperimentConfig c;
  try {
    for (auto& [s, f] : subs) {
      if (!s->parsed()) continue;
      c.command = s->get_name();
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) invalid("cannot open config '" + config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        apply_json(c, text.str());
        c.command = s->get_name();
      }
      auto given = [](CLI::Option* o) { return o && o->count() > 0; };
      if (given(f.graph)) c.graph = graph;
      if (given(f.remove)) c.remove = remove;
      if (given(f.at)) c.at = at;
      if (given(f.values)) c.values = values;
      if (given(f.omega)) c.omega = omega;
      if (given(f.eps)) {
        if (eps == "auto") {
          c.eps.reset();
        } else {
          double v = 0.0;
          const auto [end, ec] = std::from_chars(eps.data(), eps.data() + eps.size(), v);
          if (eps.empty() || ec != std::errc{} || end != eps.data() + eps.size())
            invalid("--eps must be a number or 'auto'");
          c.eps = v;
        }
      }
      if (given(f.eps_floor)) c.eps_floor = eps_floor;
      if (given(f.order)) c.order = order;
      if (given(f.lmax)) c.l_max = lmax;
      if (given(f.seed)) c.seed = seed;
      if (given(f.trials)) c.trials = trials;
      if (given(f.parallel)) c.parallel_trials = parallel;
      if (given(f.with_basis)) c.with_basis = with_basis;
      if (given(f.out_dir)) c.out_dir = out_dir;
      if (given(f.out)) c.out = out_file;
      if (given(f.samples)) c.samples = samples;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return run(c, out, err);
}

}  // namespace pwgraph::cli
