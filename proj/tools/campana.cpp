#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "campana/approx.hpp"
#include "campana/campana_check.hpp"
#include "campana/enumeration.hpp"
#include "campana/io.hpp"
#include "campana/solubility.hpp"

using namespace campana;
using nlohmann::json;

namespace {

// Domain failures (exit 1) as opposed to usage errors (exit 2).
struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::string output;
  std::string orbifold;
  std::string point;
  std::string prime;
  std::vector<std::string> exclude;
  std::vector<std::string> targets;
  std::string a;
  long m = 0;
  long long bound = 0;
  unsigned depth = 0;
  std::string emit;
};

json envelope(const Options& o, const std::string& command) {
  return {{"schema", 1}, {"seed", o.seed}, {"command", command}};
}

void write_json(const Options& o, const json& j) {
  if (o.output.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw std::invalid_argument("--output: cannot write '" + o.output + "'");
  out << j.dump(2) << '\n';
}

PrimeSet parse_primes(const std::vector<std::string>& items) {
  PrimeSet out;
  for (const auto& s : items) {
    Integer p = parse_integer(s);
    require_prime(p);
    out.insert(p);
  }
  return out;
}

json valuations_json(const std::vector<Valuation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json transcript_json(const std::vector<TranscriptEntry>& transcript) {
  json out = json::array();
  for (const auto& e : transcript) {
    out.push_back({{"prime", e.prime.get_str()},
                   {"valuations", valuations_json(e.valuations)},
                   {"target", e.is_target},
                   {"approximation_margin", e.approximation_margin},
                   {"campana", e.is_campana}});
  }
  return out;
}

json certificate_json(const PowerCertificate& c) {
  json primes = json::array(), powers = json::array();
  for (const auto& [p, k] : c.explicit_primes) primes.push_back({p.get_str(), k});
  for (const auto& [b, e] : c.powers) powers.push_back({b.get_str(), e});
  return {{"primes", primes}, {"powers", powers}};
}

json point_json(const SmallPoint& x) {
  json out = json::array();
  for (auto c : x) out.push_back(c);
  return out;
}

void run_check(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  const ProjectivePoint point(parse_integer_list(o.point));
  if (point.dimension() != orbifold.dimension())
    throw std::invalid_argument("--point: expected " + std::to_string(orbifold.dimension() + 1) + " coordinates");
  json j = envelope(o, "check");
  j["point"] = to_json(point);
  if (!o.prime.empty()) {
    const Integer p = parse_integer(o.prime);
    const auto verdict = is_local_campana(point, orbifold, p);
    j["prime"] = p.get_str();
    j["verdict"] = verdict.is_campana;
    j["multiplicities"] = valuations_json(verdict.multiplicities);
  } else {
    const auto verdict = global_campana_verdict(point, orbifold, parse_primes(o.exclude));
    j["exclude"] = o.exclude;
    j["verdict"] = verdict.is_campana;
    json primes = json::array();
    for (const auto& r : verdict.primes)
      primes.push_back({{"prime", r.prime.get_str()},
                        {"campana", r.verdict.is_campana},
                        {"multiplicities", valuations_json(r.verdict.multiplicities)}});
    j["primes"] = primes;
  }
  write_json(o, j);
}

void run_solubility(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  const Integer p = parse_integer(o.prime);
  require_prime(p);
  SolubilityVerdict verdict;
  if (o.depth > 0) {
    verdict = emptiness_search(orbifold, p, o.depth);
  } else {
    verdict = sufficient_witness(orbifold, p);
    if (verdict.status == SolubilityStatus::Unknown)
      verdict = emptiness_search(orbifold, p, static_cast<unsigned>(orbifold.max_finite_multiplicity()) + 2);
  }
  json j = envelope(o, "solubility");
  j["prime"] = p.get_str();
  j["status"] = to_string(verdict.status);
  j["reason"] = verdict.reason;
  if (verdict.depth) j["depth"] = verdict.depth;
  if (verdict.witness) j["witness"] = to_json(*verdict.witness);
  write_json(o, j);
}

void run_conic(const Options& o) {
  const auto report = conic_remark_report(o.depth);
  json j = envelope(o, "remark-conic");
  j["depth"] = o.depth;
  j["verdict"] = report.holds;
  j["solutions"] = report.solutions;
  if (report.counterexample) j["counterexample"] = *report.counterexample;
  write_json(o, j);
  if (!report.holds) throw DomainFailure("the 2-adic conic check failed");
}

std::vector<LocalTarget> parse_targets(const std::vector<std::string>& items) {
  std::vector<LocalTarget> out;
  for (const auto& s : items) out.push_back(parse_target(s));
  return out;
}

void run_solve_hyperplanes(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  const auto solution = solve_cwa_hyperplanes(orbifold, parse_targets(o.targets));
  json j = envelope(o, "solve hyperplanes");
  j["point"] = to_json(solution.point);
  j["d"] = solution.d;
  json alphas = json::array();
  for (const auto& a : solution.alphas) alphas.push_back(a.get_str());
  j["alphas"] = alphas;
  json certs = json::array();
  for (const auto& c : solution.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  j["used_S"] = json::array();
  j["transcript"] = transcript_json(solution.transcript);
  j["verified"] = true;
  write_json(o, j);
}

void run_solve_quad(const Options& o) {
  const QuadraticOrbifoldP1 orbifold(parse_integer(o.a), o.m);
  const auto solution = solve_cwa_quad(orbifold, parse_targets(o.targets), o.seed);
  json j = envelope(o, "solve quad");
  j["a"] = orbifold.a().get_str();
  j["m"] = orbifold.m();
  j["point"] = to_json(solution.point);
  json used = json::array();
  for (const auto& p : solution.used_S) used.push_back(p.get_str());
  j["used_S"] = used;
  j["v0"] = solution.v0.get_str();
  j["attempts"] = solution.attempts;
  j["certificate"] = certificate_json(solution.certificate);
  j["transcript"] = transcript_json(solution.transcript);
  j["verified"] = true;
  write_json(o, j);
}

void write_csv(const std::string& path, const std::vector<SmallPoint>& points) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("--emit: cannot write '" + path + "'");
  for (const auto& x : points) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
    out << '\n';
  }
}

void run_enumerate(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  const auto points = enumerate_campana(orbifold, o.bound);
  json j = envelope(o, "enumerate");
  j["bound"] = o.bound;
  j["count"] = points.size();
  if (!o.emit.empty()) {
    write_csv(o.emit, points);
    j["emit"] = o.emit;
  } else {
    json list = json::array();
    for (const auto& x : points) list.push_back(point_json(x));
    j["points"] = list;
  }
  write_json(o, j);
}

void run_count(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  json j = envelope(o, "count");
  j["bound"] = o.bound;
  j["count"] = count_campana(orbifold, o.bound);
  write_json(o, j);
}

void run_density(const Options& o) {
  const auto orbifold = load_orbifold(o.orbifold);
  const Integer p = parse_integer(o.prime);
  if (!p.fits_ulong_p()) throw std::invalid_argument("--prime: too large");
  const auto report = density_stats(orbifold, o.bound, p.get_ui(), o.depth);
  json j = envelope(o, "density");
  j["bound"] = o.bound;
  j["prime"] = report.prime;
  j["depth"] = report.depth;
  j["total"] = report.total;
  json hist = json::array();
  for (const auto& [cls, c] : report.histogram)
    hist.push_back({{"class", cls},
                    {"count", c},
                    {"feasible", std::binary_search(report.feasible_classes.begin(),
                                                    report.feasible_classes.end(), cls)}});
  j["histogram"] = hist;
  j["feasible_classes"] = report.feasible_classes;
  j["attained_feasible"] = report.attained_feasible;
  j["infeasible_hits"] = report.infeasible_hits;
  j["all_feasible_attained"] = report.all_feasible_attained();
  if (!o.emit.empty()) {
    std::ofstream out(o.emit);
    if (!out) throw std::invalid_argument("--emit: cannot write '" + o.emit + "'");
    out << j.dump(2) << '\n';
  }
  write_json(o, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Campana points on hyperplane orbifolds"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized procedures")->capture_default_str();
  app.add_option("--output", o.output, "Write the JSON result to this file");

  auto* check = app.add_subcommand("check", "Local or global Campana test of a point");
  check->add_option("--orbifold", o.orbifold, "Orbifold descriptor (JSON)")->required();
  check->add_option("--point", o.point, "Comma-separated coordinates")->required();
  auto* prime_opt = check->add_option("--prime", o.prime, "Test only at this prime");
  check->add_flag("--global", "Global test outside S (the default without --prime)")->excludes(prime_opt);
  check->add_option("--exclude", o.exclude, "Primes in S (global test)")->delimiter(',')->excludes(prime_opt);

  auto* solubility = app.add_subcommand("solubility", "Local solubility at a prime");
  solubility->add_option("--orbifold", o.orbifold)->required();
  solubility->add_option("--prime", o.prime)->required();
  solubility->add_option("--depth", o.depth, "Residue search depth K (default: sufficient conditions, then K = max m + 2)");

  auto* conic = app.add_subcommand("remark-conic", "2-adic conic valuation check");
  conic->add_option("--depth", o.depth)->required()->check(CLI::Range(4u, 16u));

  auto* solve = app.add_subcommand("solve", "Campana weak approximation solvers");
  solve->require_subcommand(1);
  auto* hyper = solve->add_subcommand("hyperplanes", "Standard arrangement with r <= n");
  hyper->add_option("--orbifold", o.orbifold)->required();
  hyper->add_option("--target", o.targets, "p:y0,y1,...:N")->take_all();
  auto* quad = solve->add_subcommand("quad", "Quadratic point on P^1");
  quad->add_option("--a", o.a)->required();
  quad->add_option("--m", o.m)->required();
  quad->add_option("--target", o.targets, "p:y0,y1:N")->take_all();
  quad->add_option("--seed", o.seed);

  auto* enumerate = app.add_subcommand("enumerate", "List Campana points of bounded height");
  enumerate->add_option("--orbifold", o.orbifold)->required();
  enumerate->add_option("--bound", o.bound)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--emit", o.emit, "CSV output, one point per line");

  auto* count = app.add_subcommand("count", "Count Campana points of bounded height");
  count->add_option("--orbifold", o.orbifold)->required();
  count->add_option("--bound", o.bound)->required()->check(CLI::PositiveNumber);

  auto* density = app.add_subcommand("density", "Residue class statistics of Campana points");
  density->add_option("--orbifold", o.orbifold)->required();
  density->add_option("--bound", o.bound)->required()->check(CLI::PositiveNumber);
  density->add_option("--prime", o.prime)->required();
  density->add_option("--depth", o.depth)->required()->check(CLI::PositiveNumber);
  density->add_option("--emit", o.emit, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) run_check(o);
    else if (solubility->parsed()) run_solubility(o);
    else if (conic->parsed()) run_conic(o);
    else if (hyper->parsed()) run_solve_hyperplanes(o);
    else if (quad->parsed()) run_solve_quad(o);
    else if (enumerate->parsed()) run_enumerate(o);
    else if (count->parsed()) run_count(o);
    else if (density->parsed()) run_density(o);
  } catch (const InfeasibleTarget& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 1;
  } catch (const DomainFailure& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
