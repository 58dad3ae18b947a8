// uniso: construct unitals, search arcs, evaluate and certify isoperimetric
// numbers of their incidence graphs.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 budget exhausted.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "uniso/uniso.hpp"

namespace {

using nlohmann::json;
using namespace uniso;

struct Globals {
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string manifest;
  bool timing = false;
};

// Collects what a run read and wrote so it can be replayed and compared.
class Manifest {
 public:
  explicit Manifest(std::string command) { doc_ = {{"tool", "uniso"}, {"version", kVersion}, {"command", std::move(command)}}; }

  void arg(const std::string& key, json value) { doc_["args"][key] = std::move(value); }
  void input(const std::string& key, const std::string& path) {
    doc_["inputs"][key] = {{"file", std::filesystem::path(path).filename().string()},
                           {"sha256", io::sha256_hex(io::read_file(path))}};
  }
  void output(const std::string& key, const std::string& path, const std::string& data) {
    doc_["outputs"][key] = {{"file", path.empty() ? "-" : std::filesystem::path(path).filename().string()},
                            {"sha256", io::sha256_hex(data)}};
  }
  void stat(const std::string& key, json value) { stats_[key] = std::move(value); }

  void write(const Globals& g, double elapsed_ms) {
    if (g.manifest.empty()) return;
    json out = doc_;
    if (g.timing) {
      out["timing_ms"] = elapsed_ms;
      out["stats"] = stats_;
    }
    io::write_file(g.manifest, io::dump(out));
  }

 private:
  json doc_;
  json stats_ = json::object();
};

// Writes to a file, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& data) {
  if (path.empty()) std::cout << data;
  else io::write_file(path, data);
}

std::uint64_t work_guard_from_env() {
  BruteForceOptions defaults;
  const char* env = std::getenv("ISO_WORK_GUARD");
  if (!env || !*env) return defaults.work_guard;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("ISO_WORK_GUARD is not a number: ") + env);
  }
}

std::uint64_t require_unital(const Design& d) {
  const auto n = d.unital_order();
  if (!n) throw InvalidInput("design " + d.params().to_string() + " is not a unital");
  return *n;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::uint32_t q = 0;
  std::optional<std::uint32_t> alpha, beta;
  bool list = false;
  std::string in, out;
};

int run_construct(const ConstructArgs& a, const Globals& g) {
  Manifest m("construct");
  m.arg("kind", a.kind);
  std::string data;
  if (a.kind == "hermitian") {
    m.arg("q", a.q);
    SecantStats st;
    const Design d = construct_hermitian(a.q, &st);
    std::cerr << "hermitian q=" << a.q << ": " << d.params().to_string() << ", " << st.secant_lines << " secant and "
              << st.tangent_lines << " tangent lines\n";
    data = io::dump(io::design_json(d));
  } else if (a.kind == "bm") {
    m.arg("q", a.q);
    auto field = GaloisField::quadratic_over(a.q);
    if (a.list) {
      json pairs = json::array();
      for (const auto& [al, be] : admissible_bm_pairs(*field))
        pairs.push_back({{"alpha", al}, {"beta", be}, {"beta_in_subfield", field->in_subfield(field->element(be))}});
      m.arg("list", true);
      data = io::dump({{"q", a.q}, {"field", detail::field_json(*field)}, {"admissible", pairs}});
    } else {
      if (!a.alpha || !a.beta) throw InvalidInput("bm needs --alpha and --beta (or --list)");
      if (*a.alpha >= field->order() || *a.beta >= field->order()) throw InvalidInput("alpha/beta index out of range");
      m.arg("alpha", *a.alpha);
      m.arg("beta", *a.beta);
      SecantStats st;
      const Design d = construct_bm(field, field->element(*a.alpha), field->element(*a.beta), &st);
      std::cerr << "bm q=" << a.q << ": " << d.params().to_string() << "\n";
      data = io::dump(io::design_json(d));
    }
  } else if (a.kind == "order2") {
    data = io::dump(io::design_json(construct_order2_unital()));
  } else if (a.kind == "import") {
    if (a.in.empty()) throw InvalidInput("import needs --in");
    m.input("design", a.in);
    const json j = io::load_json(a.in);
    const Design d = io::design_from_json(j);
    json prov = j.value("provenance", json::object());
    if (prov.empty()) prov = {{"kind", "import"}};
    data = io::dump(io::design_json(d.with_provenance(prov)));
  } else {
    throw InvalidInput("unknown construction '" + a.kind + "'");
  }
  emit(a.out, data);
  m.output("design", a.out, data);
  m.write(g, 0);
  return 0;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::string design;
  std::uint64_t arc_target = 0;
  bool exact = false;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  bool audit = false;
  bool brute = false;
  std::string certificate, out;
};

int run_bounds(const BoundsArgs& a, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  Manifest m("bounds");
  m.input("design", a.design);
  m.arg("arc_target", a.arc_target);
  m.arg("exact_arc", a.exact);
  m.arg("seed", a.seed);
  m.arg("budget", a.budget);
  m.arg("audit", a.audit);
  m.arg("brute", a.brute);

  const Design d = io::load_design(a.design);
  const std::uint64_t n = require_unital(d);
  const std::uint64_t fc = floor_c(n);
  const std::uint64_t target = std::max<std::uint64_t>(3, a.arc_target ? std::min(a.arc_target, fc) : fc);

  ArcSearchOptions opts;
  opts.mode = a.exact ? ArcMode::exact : ArcMode::greedy;
  opts.seed = a.seed;
  opts.budget = a.budget;
  opts.threads = g.threads;
  ArcSearchResult found = find_arc(d, target, opts);
  m.stat("arc_nodes", found.nodes);
  std::vector<std::uint32_t> arc = found.arc;
  if (found.status != ArcStatus::found) {
    // Fall back to the largest greedy arc for an unpinched upper bound.
    arc = detail::greedy_arc(d, d.v() + 1, a.seed, ArcSearchOptions::kDefaultGreedyRestarts).arc;
    std::cerr << "arc search for size " << target << ": " << to_string(found.status) << "; using a greedy "
              << arc.size() << "-arc\n";
  }
  if (arc.size() < 3) throw InvalidInput("no arc of size >= 3 found");

  const Certificate cert = construct_extremal_set(d, arc);
  const BoundReport br = theorem1_bounds(n, arc.size());
  json report = {{"design", {{"hash", io::design_hash(d)}, {"provenance", d.provenance()}}},
                 {"n", n},
                 {"floor_c", fc},
                 {"arc_search",
                  {{"mode", a.exact ? "exact" : "greedy"},
                   {"target", target},
                   {"status", to_string(found.status)},
                   {"arc", arc}}},
                 {"bounds", io::bound_json(br)},
                 {"certified_value", io::fraction_json(cert.claimed)},
                 {"exact_value_certified", br.pinch && cert.claimed == br.lower},
                 {"nonincidence_value", io::fraction_json(theorem2_value(n))},
                 {"m_cap_from_value", io::fraction_json(corollary4_m_bound(n, cert.claimed))}};

  int rc = 0;
  if (a.brute) {
    const IsoGraph graph(d, Flavor::incidence);
    const IsoResult r = brute_force_iso(graph, {work_guard_from_env(), g.threads});
    report["brute"] = io::iso_json(graph, r);
    const bool agrees = r.ratio == cert.claimed;
    report["brute"]["equals_certificate"] = agrees;
    if (br.pinch && !agrees) rc = 1;
    if (r.ratio < br.lower) rc = 1;
  }
  if (a.audit) {
    if (n < 3) {
      report["audit"] = {{"skipped", "n = 2 is covered by brute force"}};
    } else {
      AuditOptions ao;
      ao.threads = g.threads;
      ao.seed = a.seed;
      const AuditReport ar = audit_lowerbound_machinery(n, ao);
      report["audit"] = io::audit_json(ar);
      if (!ar.passed()) rc = 1;
    }
  }

  const std::string rep = io::dump(report);
  emit(a.out, rep);
  m.output("report", a.out, rep);
  if (!a.certificate.empty()) {
    const std::string c = io::dump(io::certificate_json(d, cert));
    io::write_file(a.certificate, c);
    m.output("certificate", a.certificate, c);
  }
  m.write(g, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  return rc;
}

// ---------------------------------------------------------------------------

struct IsoArgs {
  std::string design;
  std::string flavor = "incidence";
  bool brute = false, heuristic = false;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string out;
};

int run_iso(const IsoArgs& a, const Globals& g) {
  const auto t0 = std::chrono::steady_clock::now();
  Manifest m("iso");
  m.input("design", a.design);
  m.arg("flavor", a.flavor);
  m.arg("method", a.heuristic ? "heuristic" : "brute");
  const Design d = io::load_design(a.design);
  const IsoGraph graph(d, parse_flavor(a.flavor));
  IsoResult r;
  if (a.heuristic) {
    HeuristicOptions ho;
    ho.seed = a.seed;
    if (a.budget) ho.restarts = a.budget;
    ho.threads = g.threads;
    m.arg("seed", a.seed);
    m.arg("restarts", ho.restarts);
    r = heuristic_iso(graph, ho);
  } else {
    BruteForceOptions bo{a.budget ? a.budget : work_guard_from_env(), g.threads};
    m.arg("work_guard", bo.work_guard);
    r = brute_force_iso(graph, bo);
  }
  json out = io::iso_json(graph, r);
  out["design"] = {{"hash", io::design_hash(d)}, {"provenance", d.provenance()}};
  if (const auto n = d.unital_order()) {
    if (graph.flavor() == Flavor::incidence) out["lower_bound"] = io::fraction_json(theorem1_bounds(*n, 3).lower);
    else out["nonincidence_value"] = io::fraction_json(theorem2_value(*n));
  }
  const std::string data = io::dump(out);
  emit(a.out, data);
  m.output("result", a.out, data);
  m.write(g, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& cert_path, const std::string& design_path) {
  std::optional<Design> d;
  try {
    d = io::load_design(design_path);
  } catch (const std::exception& e) {
    std::cerr << "FAIL design: " << e.what() << "\n";
    return 1;
  }
  if (cert_path.empty()) {
    std::cout << "OK design " << d->params().to_string() << " " << io::design_hash(*d) << "\n";
    return 0;
  }
  const json cert = io::load_json(cert_path);
  const io::VerifyReport rep = io::verify_certificate(cert, *d);
  for (const auto& f : rep.failures) std::cerr << "FAIL " << f << "\n";
  if (!rep.ok()) return 1;
  std::cout << "OK certificate value " << to_string(io::fraction_from_json(cert["claimed"])) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ArcArgs {
  std::string design;
  std::uint64_t target = 0;
  bool greedy = false;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string out;
};

int run_arc(const ArcArgs& a, const Globals& g) {
  Manifest m("arc");
  m.input("design", a.design);
  m.arg("target", a.target);
  m.arg("greedy", a.greedy);
  m.arg("seed", a.seed);
  m.arg("budget", a.budget);
  const Design d = io::load_design(a.design);
  json out;
  int rc = 0;
  if (a.target) {
    ArcSearchOptions o;
    o.mode = a.greedy ? ArcMode::greedy : ArcMode::exact;
    o.seed = a.seed;
    o.budget = a.budget;
    o.threads = g.threads;
    const ArcSearchResult r = find_arc(d, a.target, o);
    out = {{"target", a.target}, {"status", to_string(r.status)}, {"arc", r.arc}};
    if (r.status == ArcStatus::found) out["complete"] = is_complete_arc(d, r.arc);
    if (r.status == ArcStatus::budget_exhausted) rc = 3;
  } else {
    const MaxArcResult r = max_arc(d, a.budget, g.threads, a.seed);
    out = {{"max_size", r.size}, {"proven_optimal", r.proven_optimal}, {"witness", r.witness}};
  }
  const std::string data = io::dump(out);
  emit(a.out, data);
  m.output("result", a.out, data);
  m.write(g, 0);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitals, arcs and vertex-isoperimetric numbers of incidence graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_option("--manifest", g.manifest, "write a run manifest to this path");
  app.add_flag("--timing", g.timing, "include timing and search statistics in the manifest");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a design and write it as JSON");
  construct->add_option("kind", ca.kind, "hermitian | bm | order2 | import")->required();
  construct->add_option("--q", ca.q, "subfield order q");
  construct->add_option("--alpha", ca.alpha, "alpha as a GF(q^2) element index");
  construct->add_option("--beta", ca.beta, "beta as a GF(q^2) element index");
  construct->add_flag("--list", ca.list, "bm: list all admissible (alpha, beta) pairs");
  construct->add_option("--in", ca.in, "import: design JSON to revalidate");
  construct->add_option("-o,--out", ca.out, "output path (default stdout)");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "arc search, bound report and extremal certificate for a unital");
  bounds->add_option("design", ba.design)->required()->check(CLI::ExistingFile);
  bounds->add_option("--arc-target", ba.arc_target, "arc size to search for (capped at floor c(n))");
  bounds->add_flag("--exact-arc", ba.exact, "branch-and-bound arc search instead of greedy");
  bounds->add_option("--seed", ba.seed);
  bounds->add_option("--budget", ba.budget, "greedy restarts or exact node limit (0 = default)");
  bounds->add_flag("--audit", ba.audit, "also audit the lower-bound inequalities for this n");
  bounds->add_flag("--brute", ba.brute, "cross-check by exhaustive enumeration");
  bounds->add_option("--certificate", ba.certificate, "write the certificate here");
  bounds->add_option("-o,--out", ba.out, "report path (default stdout)");

  IsoArgs ia;
  auto* iso = app.add_subcommand("iso", "isoperimetric number of a design's (non-)incidence graph");
  iso->add_option("design", ia.design)->required()->check(CLI::ExistingFile);
  iso->add_option("--flavor", ia.flavor, "incidence | nonincidence");
  auto* brute_flag = iso->add_flag("--brute", ia.brute, "exact enumeration (default)");
  iso->add_flag("--heuristic", ia.heuristic, "seeded local search (upper bound)")->excludes(brute_flag);
  iso->add_option("--seed", ia.seed);
  iso->add_option("--budget", ia.budget, "heuristic restarts, or brute-force work guard");
  iso->add_option("-o,--out", ia.out);

  std::string cert_path, design_path;
  auto* verify = app.add_subcommand("verify", "re-verify a certificate against a design, or a design alone");
  verify->add_option("certificate", cert_path)->check(CLI::ExistingFile);
  verify->add_option("design", design_path)->check(CLI::ExistingFile);

  std::uint32_t plane_order = 0;
  std::string plane_out;
  auto* plane = app.add_subcommand("plane", "export PG(2, N)");
  plane->add_option("--order", plane_order, "prime power N")->required();
  plane->add_option("-o,--out", plane_out);

  std::string graph_design, graph_flavor = "incidence", graph_format = "json", graph_out;
  auto* graph = app.add_subcommand("graph", "export a (non-)incidence graph");
  graph->add_option("design", graph_design)->required()->check(CLI::ExistingFile);
  graph->add_option("--flavor", graph_flavor);
  graph->add_option("--format", graph_format)->check(CLI::IsMember({"json", "dimacs"}));
  graph->add_option("-o,--out", graph_out);

  ArcArgs aa;
  auto* arc = app.add_subcommand("arc", "find an arc of a given size, or the maximum arc size");
  arc->add_option("design", aa.design)->required()->check(CLI::ExistingFile);
  arc->add_option("--target", aa.target, "stop at the first arc of this size (0 = maximum)");
  arc->add_flag("--greedy", aa.greedy);
  arc->add_option("--seed", aa.seed);
  arc->add_option("--budget", aa.budget);
  arc->add_option("-o,--out", aa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*construct) return run_construct(ca, g);
    if (*bounds) return run_bounds(ba, g);
    if (*iso) return run_iso(ia, g);
    if (*verify) {
      // A single positional is the design.
      if (design_path.empty()) std::swap(cert_path, design_path);
      if (design_path.empty()) throw InvalidInput("verify needs a design file");
      return run_verify(cert_path, design_path);
    }
    if (*plane) {
      const auto [p, k] = GaloisField::factor_prime_power(plane_order);
      ProjectivePlane pl(std::make_shared<const GaloisField>(p, k));
      emit(plane_out, io::dump(io::plane_json(pl)));
      return 0;
    }
    if (*graph) {
      const Design d = io::load_design(graph_design);
      const IsoGraph gr(d, parse_flavor(graph_flavor));
      emit(graph_out, graph_format == "dimacs" ? io::graph_dimacs(gr) : io::dump(io::graph_json(gr)));
      return 0;
    }
    if (*arc) return run_arc(aa, g);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
