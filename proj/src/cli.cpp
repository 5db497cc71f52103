#include "qmetric/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmetric/json_io.hpp"
#include "qmetric/suites.hpp"

namespace qmetric::cli {

namespace {

using io::json;
using io::number;

struct Outcome {
  Report report;
  json result = json::object();
  std::vector<std::string> warnings;
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw io::InputError("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw io::InputError("descriptor needs a string field \"kind\"");
  }
  return j.at("kind").get<std::string>();
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw io::InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

QsmOptions qsm_options(const RunConfig& cfg) {
  QsmOptions q;
  q.seed = cfg.seed;
  q.ratio.seed = cfg.seed;
  return q;
}

json seminorm_summary(const QsmStructure& q) {
  return json{{"kind", to_string(q.seminorm.kind())}, {"algebra", q.seminorm.algebra().describe()},
              {"radius", number(q.radius)}, {"quantum_metric", q.quantum_metric}, {"degenerate", q.degenerate}};
}

Report prefixed(const Report& in, const std::string& prefix) {
  Report out(in.subject());
  for (const auto& c : in.checks()) {
    Check& copy = out.add_flag(prefix + c.id, c.passed);
    copy = c;
    copy.id = prefix + c.id;
  }
  return out;
}

Outcome cmd_validate(const json& j, const RunConfig& cfg) {
  Outcome o;
  const std::string kind = kind_of(j);
  o.result["kind"] = kind;
  o.report = Report(kind);
  if (kind == "qsm") {
    const Algebra alg = io::parse_algebra(require(j, "algebra"));
    try {
      const QsmStructure q = make_qsm(io::parse_seminorm(require(j, "seminorm"), alg), qsm_options(cfg));
      o.report.merge(q.axioms);
      o.result["structure"] = seminorm_summary(q);
    } catch (const io::InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      o.report.add_flag("construction", false, e.what());
    }
  } else if (kind == "homomorphism") {
    const StarHomomorphism phi = io::parse_homomorphism(j);
    const HomomorphismReport h = validate_homomorphism(phi);
    o.report.add("hom.unital", h.unitality, h.tolerance, 1, "phi(1) = 1");
    o.report.add("hom.star", h.star, h.tolerance, static_cast<std::size_t>(phi.source().dim()), "phi(a*) = phi(a)*");
    o.report.add("hom.multiplicative", h.multiplicativity, h.tolerance,
                 static_cast<std::size_t>(phi.source().dim() * phi.source().dim()), "phi(ab) = phi(a) phi(b)");
  } else if (kind == "family") {
    try {
      const io::FamilyDescriptor f = io::parse_family(j);
      o.report.add_flag("family.phi", true, "validated *-homomorphism into B ⊗ C");
      const QsmStructure q = make_qsm(f.base, qsm_options(cfg));
      o.report.merge(prefixed(q.axioms, "base."));
      o.result["base"] = seminorm_summary(q);
      o.result["A"] = f.family.source().describe();
      o.result["B"] = f.family.averaged().describe();
      o.result["C"] = f.family.parameter().describe();
    } catch (const io::InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      o.report.add_flag("family.phi", false, e.what());
    }
  } else if (kind == "classical") {
    const ClassicalFamily fam = io::parse_classical(j);
    const HomomorphismReport h = validate_homomorphism(compile_family(fam).phi());
    o.report.add("classical.compile", std::max({h.unitality, h.star, h.multiplicativity}), 0.0, 1,
                 "compiled map is a *-homomorphism");
    o.report.add_flag("classical.d1", check_semimetric(d1_direct(fam).matrix()).passed(), "d1 is a semi-metric");
    o.result["d1"] = io::to_json(d1_direct(fam).matrix());
  } else {
    throw io::InputError("unknown descriptor kind \"" + kind + "\"");
  }
  return o;
}

Outcome cmd_dist(const json& j, const RunConfig& cfg) {
  if (kind_of(j) != "qsm") throw io::InputError("dist needs a qsm descriptor");
  const Algebra alg = io::parse_algebra(require(j, "algebra"));
  Seminorm l = [&] {
    try {
      return io::parse_seminorm(require(j, "seminorm"), alg);
    } catch (const io::InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw io::InputError(std::string("invalid seminorm: ") + e.what());
    }
  }();
  if (!j.contains("states")) throw io::InputError("missing field \"states\"");
  const std::vector<State> states = io::parse_states(j.at("states"), alg);
  const int n = static_cast<int>(states.size());
  if (cfg.first < 0 || cfg.first >= n || cfg.second < 0 || cfg.second >= n) {
    throw io::InputError("state index out of range (have " + std::to_string(n) + " states)");
  }
  const State& mu = states[static_cast<std::size_t>(cfg.first)];
  const State& nu = states[static_cast<std::size_t>(cfg.second)];
  DistanceOptions opts;
  opts.ratio.seed = cfg.seed;

  Outcome o;
  o.report = Report("dist");
  o.result["pair"] = {cfg.first, cfg.second};
  DistanceResult r;
  if (cfg.method == "auto") {
    r = rho(mu, nu, l, opts);
  } else if (cfg.method == "lp_dual") {
    r = rho_lp_dual(mu, nu, l, opts.lp);
  } else if (cfg.method == "ratio") {
    r = rho_ratio(mu, nu, l, opts.ratio);
  } else if (cfg.method == "lp_primal") {
    if (l.kind() != SeminormKind::lipschitz) throw io::InputError("lp_primal needs a Lipschitz seminorm");
    r = kantorovich_primal(mu, nu, *l.space(), opts.lp);
  } else {
    throw io::InputError("unknown method \"" + cfg.method + "\"");
  }
  o.result["rho"] = io::to_json(r);
  o.report.add("dist.witness", r.residual, 1e-9, 1, "witness reproduces the value");
  if (l.kind() == SeminormKind::lipschitz) {
    const DistanceResult dual = rho_lp_dual(mu, nu, l, opts.lp);
    const DistanceResult primal = kantorovich_primal(mu, nu, *l.space(), opts.lp);
    o.result["lp_dual"] = number(dual.value);
    o.result["lp_primal"] = number(primal.value);
    o.report.add("duality.kantorovich", std::abs(dual.value - primal.value), cfg.tol_lp, 1,
                 "lp_dual and lp_primal agree");
  }
  if (!r.exact) {
    const RadiusResult radius = seminorm_radius(l, opts.ratio);
    const double envelope = radius.value * functional_distance(mu, nu);
    o.result["envelope"] = number(envelope);
    o.result["upper"] = number(r.upper);
    o.report
        .add("dist.envelope", std::max(0.0, r.value - envelope), cfg.tol_iter, 1,
             "lower bound within R ||mu - nu|| (R itself estimated)")
        .advisory = true;
    o.warnings.push_back("value from " + to_string(r.method) + " is a certified lower bound, not exact");
  }
  return o;
}

Outcome cmd_induce(const json& j, const RunConfig& cfg) {
  const std::string kind = kind_of(j);
  std::optional<io::FamilyDescriptor> fd;
  std::optional<SemiMetricSpace> d1;
  std::optional<ProbeSet> probes;
  if (kind == "classical") {
    const ClassicalFamily fam = io::parse_classical(j);
    QuantumFamily qf = compile_family(fam);
    probes = build_probes(qf.parameter(), 0, cfg.probes_mixed, cfg.seed);
    fd.emplace(io::FamilyDescriptor{std::move(qf), Seminorm::lipschitz(fam.x), std::nullopt});
    d1.emplace(d1_direct(fam));
  } else if (kind == "family") {
    try {
      fd.emplace(io::parse_family(j));
    } catch (const io::InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw io::InputError(std::string("invalid family: ") + e.what());
    }
    if (fd->probes) {
      probes = ProbeSet{fd->family.parameter(), *fd->probes,
                        std::vector<Provenance>(fd->probes->size(), Provenance::sampled), cfg.seed};
    } else {
      probes = build_probes(fd->family.parameter(), cfg.probes_pure, cfg.probes_mixed, cfg.seed);
    }
  } else {
    throw io::InputError("induce needs a family or classical descriptor");
  }
  const QuantumFamily& fam = fd->family;
  if (probes->size() == 0) throw io::InputError("empty probe set");
  InduceOptions induce;
  induce.seed = cfg.seed;
  induce.distance.ratio.seed = cfg.seed;
  const StateSemiMetric m = induced_state_semimetric(fam, fd->base, *probes, induce);
  const QsmStructure q = make_qsm(Seminorm::state_metric(m), qsm_options(cfg));

  Outcome o;
  o.report = Report("induce");
  o.report.merge(q.axioms);
  o.report.merge(check_prop2(q, qsm_options(cfg), induce.distance));
  const DensityResult density = check_prop4_density(fam, spanning_states(fam.averaged(), cfg.seed));
  o.report.merge(density.report);
  if (d1) {
    double res = 0.0;
    for (int z = 0; z < d1->size(); ++z) {
      for (int w = 0; w < d1->size(); ++w) res = std::max(res, std::abs(m.d(z, w) - (*d1)(z, w)));
    }
    o.report.add("theorem.d", res, cfg.tol_lp, static_cast<std::size_t>(d1->size() * d1->size()),
                 "d on point masses equals d1");
  }
  json ps = json::array();
  for (std::size_t k = 0; k < probes->size(); ++k) {
    json s = io::to_json(probes->states[k]);
    s["provenance"] = to_string(probes->provenance[k]);
    ps.push_back(std::move(s));
  }
  json exact = json::array();
  for (Eigen::Index r = 0; r < m.exact.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.exact.cols(); ++c) row.push_back(m.exact(r, c) != 0);
    exact.push_back(std::move(row));
  }
  json basis = json::array();
  const HermitianFrame frame(fam.parameter());
  for (int k = 0; k < frame.dim(); ++k) {
    const Element e = frame.element(Eigen::VectorXd::Unit(frame.dim(), k));
    basis.push_back(json{{"element", io::to_json(e)}, {"L_d", number(q.seminorm(e))},
                         {"in_domain", q.seminorm.in_domain(e)}});
  }
  o.result = json{{"A", fam.source().describe()}, {"B", fam.averaged().describe()},
                  {"C", fam.parameter().describe()}, {"probes", std::move(ps)},
                  {"d", io::to_json(m.d)}, {"exact", std::move(exact)},
                  {"all_exact", m.all_exact()}, {"degenerate", m.degenerate()},
                  {"basis", std::move(basis)}, {"structure", seminorm_summary(q)},
                  {"density_rank", density.rank}, {"density_full", density.full}};
  if (m.degenerate()) o.warnings.push_back("induced d vanishes on every probe pair");
  return o;
}

Outcome cmd_verify(const std::string& suite, const RunConfig& cfg) {
  if (!is_suite(suite)) throw io::InputError("unknown suite \"" + suite + "\"");
  SuiteConfig sc{suite, cfg.count, cfg.seed, cfg.tol_lp, cfg.tol_iter, cfg.probes_pure, cfg.probes_mixed};
  SuiteResult sr = run_suite(sc);
  Outcome o;
  o.report = std::move(sr.report);
  o.warnings = std::move(sr.warnings);
  json worst = json::object();
  for (const auto& c : o.report.checks()) {
    if (!c.advisory) worst[c.id] = number(c.residual);
  }
  o.result = json{{"suite", suite}, {"count", cfg.count}, {"instances", sr.instances}, {"worst", std::move(worst)}};
  return o;
}

std::string timestamp_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"tol_lp", cfg.tol_lp},
              {"tol_iter", cfg.tol_iter},
              {"probes_pure", cfg.probes_pure},
              {"probes_mixed", cfg.probes_mixed},
              {"input", cfg.input}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& os, const RunConfig& cfg, const Outcome& o) {
  std::ostringstream seed;
  seed << cfg.seed;
  const std::string prefix = csv_field(cfg.command) + "," + seed.str() + "," + scalar_text(json(cfg.tol_lp)) + "," +
                             scalar_text(json(cfg.tol_iter)) + ",";
  os << "command,seed,tol_lp,tol_iter,id,passed,advisory,residual,tolerance,samples,value,note\n";
  for (const auto& c : o.report.checks()) {
    os << prefix << csv_field(c.id) << ',' << (c.passed ? "true" : "false") << ','
       << (c.advisory ? "true" : "false") << ',' << scalar_text(number(c.residual)) << ','
       << scalar_text(number(c.tolerance)) << ',' << c.samples << ",," << csv_field(c.note) << '\n';
  }
  for (const auto& [key, v] : o.result.items()) {
    if (v.is_primitive()) os << prefix << csv_field("result." + key) << ",,,,,," << csv_field(scalar_text(v)) << ",\n";
  }
  for (const auto& w : o.warnings) os << prefix << "warning,,,,,,," << csv_field(w) << '\n';
  if (cfg.timestamp) os << prefix << "timestamp,,,,,," << timestamp_now() << ",\n";
}

void write_json(std::ostream& os, const RunConfig& cfg, const Outcome& o) {
  json doc{{"tool", "qmetric"},
           {"command", cfg.command},
           {"config", config_json(cfg)},
           {"passed", o.report.passed()},
           {"report", io::to_json(o.report)},
           {"result", o.result},
           {"warnings", o.warnings}};
  if (cfg.timestamp) doc["timestamp"] = timestamp_now();
  os << doc.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum metric structures on finite-dimensional C*-algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "json";
  std::string output;
  bool no_timestamp = false;
  app.add_option("--seed", cfg.seed, "Seed for every random choice");
  app.add_option("--tol-lp", cfg.tol_lp, "Tolerance for statements computed by exact LPs");
  app.add_option("--tol-iter", cfg.tol_iter, "Tolerance for statements from the ratio engine or sampled sups");
  app.add_option("--probes-pure", cfg.probes_pure, "Random pure probe states per matrix block")->check(CLI::NonNegativeNumber);
  app.add_option("--probes-mixed", cfg.probes_mixed, "Random mixed probe states")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", output, "Write the report here instead of stdout");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field");
  app.add_flag("-v,--verbose", cfg.verbose, "Progress and timing on stderr");

  auto* validate = app.add_subcommand("validate", "Validate a descriptor");
  validate->add_option("input", cfg.input, "Descriptor path or - for stdin")->required();
  auto* dist = app.add_subcommand("dist", "Distance between two states of a descriptor");
  dist->add_option("input", cfg.input, "Descriptor path or - for stdin")->required();
  std::vector<int> pair;
  dist->add_option("--pair", pair, "Indices of the two states")->expected(2);
  dist->add_option("--method", cfg.method, "auto, lp_dual, lp_primal or ratio")
      ->check(CLI::IsMember({"auto", "lp_dual", "lp_primal", "ratio"}));
  auto* induce = app.add_subcommand("induce", "Induced structure of a family");
  induce->add_option("input", cfg.input, "Family or classical descriptor, or - for stdin")->required();
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  std::string suite;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--count", cfg.count, "Number of instances")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.timestamp = !no_timestamp;
  if (pair.size() == 2) {
    cfg.first = pair[0];
    cfg.second = pair[1];
  }

  Outcome o;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (validate->parsed()) {
      cfg.command = "validate";
      o = cmd_validate(io::parse(read_input(cfg.input)), cfg);
    } else if (dist->parsed()) {
      cfg.command = "dist";
      o = cmd_dist(io::parse(read_input(cfg.input)), cfg);
    } else if (induce->parsed()) {
      cfg.command = "induce";
      o = cmd_induce(io::parse(read_input(cfg.input)), cfg);
    } else {
      cfg.command = "verify";
      cfg.input = suite;
      o = cmd_verify(suite, cfg);
    }
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      err << "error: cannot write " << output << '\n';
      return kExitInput;
    }
  }
  std::ostream& os = output.empty() ? out : file;
  if (cfg.format == Format::csv) {
    write_csv(os, cfg, o);
  } else {
    write_json(os, cfg, o);
  }
  for (const auto& w : o.warnings) err << "warning: " << w << '\n';
  if (cfg.verbose) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    err << cfg.command << " " << cfg.input << ": " << o.report.checks().size() << " checks, "
        << (o.report.passed() ? "passed" : "failed") << " in " << secs << " s\n";
  }
  return o.report.passed() ? kExitOk : kExitFailed;
}

}  // namespace qmetric::cli
