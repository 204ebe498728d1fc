// qls: exact computations on latin squares: transversal counts, projection
// decompositions, combinatorial ranks, spectral mixing parameters, and the
// closed-quotient enumeration, with machine-readable reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qls/crank.hpp"
#include "qls/degen.hpp"
#include "qls/fourier.hpp"
#include "qls/latin.hpp"
#include "qls/spectral.hpp"
#include "qls/verify.hpp"

using json = nlohmann::ordered_json;
using namespace qls;

namespace {

constexpr const char* kSchemaVersion = "1";

struct CommonOpts {
  std::string format = "json";  // json|csv|text
  std::string out;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::uint64_t budget = 100'000'000;
  int threads = 2;
};

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(opts.out);
    f << text;
    if (text.empty() || text.back() != '\n') f << "\n";
  }
}

json envelope(const std::string& command, const CommonOpts& opts) {
  json j;
  j["command"] = command;
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"seed", opts.seed}, {"tol", opts.tol}, {"budget", opts.budget}};
  return j;
}

LatinSquare load_square(const std::string& in, const std::string& group, int n,
                        std::uint64_t steps, std::uint64_t seed) {
  if (!in.empty()) {
    std::ifstream f(in);
    if (!f) fail("NotLatin", "cannot open " + in);
    std::stringstream ss;
    ss << f.rdbuf();
    return LatinSquare::from_text(ss.str());
  }
  if (!group.empty()) return group_square(group);
  if (n > 0) return jm_sample(n, steps ? steps : jm_default_steps(n), seed);
  fail("NotLatin", "need --in, --group, or --n");
}

json square_json(const LatinSquare& L) {
  json j;
  j["n"] = L.order();
  j["grid"] = L.grid();
  return j;
}

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return arr;
}

// exact partial sums of the transversal-count constant: sum (-1)^k / (2^k k!)
// over 2k <= m; alternating, so the first omitted term bounds the error
std::pair<Rat, Rat> sigma_m_value(int m) {
  Rat sum = 0;
  for (int k = 0; 2 * k <= m; ++k) {
    Rat term(1, int_pow(Int(2), k) * factorial(k));
    term.canonicalize();
    sum += (k % 2 == 0) ? term : -term;
  }
  const int next = m / 2 + 1;
  Rat bound(1, int_pow(Int(2), next) * factorial(next));
  bound.canonicalize();
  return {sum, bound};
}

int run_verify(const std::string& suite, const CommonOpts& opts) {
  VerifyOptions vopt;
  vopt.seed = opts.seed;
  vopt.threads = opts.threads;
  try {
    const SuiteResult res = run_suite(suite, vopt);
    json j = envelope("verify", opts);
    j["suite"] = suite;
    j["checks"] = checks_json(res.checks);
    j["pass"] = res.pass();
    if (opts.format == "text") {
      std::ostringstream out;
      for (const auto& c : res.checks)
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.detail << "\n";
      out << (res.pass() ? "suite passed" : "suite FAILED") << "\n";
      emit(opts, out.str());
    } else {
      emit(opts, j.dump(2));
    }
    return res.pass() ? 0 : 1;
  } catch (const Error& e) {
    const std::string code = e.code();
    std::cerr << "error: " << e.what() << "\n";
    return (code == "BudgetExceeded" || code == "Infeasible" || code == "GroundTooLarge" ||
            code == "OrderTooLarge" || code == "GroupTooLarge" || code == "Timeout")
               ? 2
               : 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for latin-square transversal structure"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts opts;
  app.add_option("--format", opts.format, "json|csv|text")->capture_default_str();
  app.add_option("--out", opts.out, "write output to file");
  app.add_option("--seed", opts.seed, "rng seed (recorded in output)")->capture_default_str();
  app.add_option("--tol", opts.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--budget", opts.budget, "enumeration budget")->capture_default_str();
  app.add_option("--threads", opts.threads, "worker threads")->capture_default_str();

  std::string group, infile, suite = "all";
  int n = 0, m = 0;
  std::uint64_t steps = 0;
  int samples = 20;
  std::string certificate;

  auto* c_gen = app.add_subcommand("gen", "emit a built-in group multiplication table");
  c_gen->add_option("--group", group, "catalog name, e.g. Z5, S3, Q8, A5")->required();

  auto* c_sample = app.add_subcommand("sample", "Jacobson-Matthews random square");
  c_sample->add_option("--n", n, "order")->required();
  c_sample->add_option("--steps", steps, "chain steps (default: ceil(n^3 ln n) + 10 n^3)");

  auto* c_trans = app.add_subcommand("transversals", "exact transversal count");
  c_trans->add_option("--in", infile, "square file (text format)");
  c_trans->add_option("--group", group, "catalog name");
  c_trans->add_option("--n", n, "sample a random square of this order");
  c_trans->add_option("--steps", steps, "chain steps for --n");

  auto* c_rho = app.add_subcommand("rho", "spectral mixing parameter of A - U");
  c_rho->add_option("--in", infile, "square file");
  c_rho->add_option("--group", group, "catalog name");
  c_rho->add_option("--n", n, "sample a random square of this order");
  c_rho->add_option("--steps", steps, "chain steps for --n");

  auto* c_spec = app.add_subcommand("spectrum", "group table spectrum vs prediction");
  c_spec->add_option("--group", group, "catalog name")->required();

  auto* c_tr6 = app.add_subcommand("trace6", "tr A^6 by matrix power and by walk count");
  c_tr6->add_option("--in", infile, "square file");
  c_tr6->add_option("--group", group, "catalog name");
  c_tr6->add_option("--n", n, "sample a random square of this order");
  c_tr6->add_option("--steps", steps, "chain steps for --n");

  auto* c_fourier = app.add_subcommand("fourier-check", "projection identities at order n");
  c_fourier->add_option("--n", n, "order (3..5)")->required();

  auto* c_crank = app.add_subcommand("crank-check", "rank/lambda records for all triples");
  c_crank->add_option("--m", m, "ground size (<= 4)")->required();
  c_crank->add_option("--group", group, "catalog name (default Z3)");

  auto* c_degen = app.add_subcommand("degenerations", "closed-quotient enumeration report");
  c_degen->add_option("--certificate", certificate, "also write witness merges to file");

  auto* c_sigma = app.add_subcommand("sigma-m", "exact partial sums of sum (-1)^k/(2^k k!)");
  c_sigma->add_option("--m", m, "index")->required();

  auto* c_probe = app.add_subcommand("probe", "statistical transversal/spectral probe");
  c_probe->add_option("--n", n, "order (<= 12)")->required();
  c_probe->add_option("--samples", samples, "sample count")->capture_default_str();
  c_probe->add_option("--steps", steps, "chain steps per sample");

  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite, "transversals|fourier|crank|spectral|degenerations|all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_gen->parsed()) {
      const LatinSquare L = group_square(group);
      if (opts.format == "text") {
        emit(opts, L.to_text());
      } else {
        json j = envelope("gen", opts);
        j["group"] = group;
        j["square"] = square_json(L);
        emit(opts, j.dump(2));
      }
    } else if (c_sample->parsed()) {
      const std::uint64_t used = steps ? steps : jm_default_steps(n);
      const LatinSquare L = jm_sample(n, used, opts.seed);
      if (opts.format == "text") {
        emit(opts, L.to_text());
      } else {
        json j = envelope("sample", opts);
        j["config"]["n"] = n;
        j["config"]["steps"] = used;
        j["square"] = square_json(L);
        emit(opts, j.dump(2));
      }
    } else if (c_trans->parsed()) {
      const LatinSquare L = load_square(infile, group, n, steps, opts.seed);
      const std::uint64_t count = count_transversals(L);
      const TransversalAsymptotic asym = transversal_asymptotic(L.order());
      json j = envelope("transversals", opts);
      j["n"] = L.order();
      j["count"] = count;
      j["asymptotic"] = asym.value;
      j["exact_ratio"] = rat_str(asym.exact_ratio);
      j["count_over_asymptotic"] = asym.value > 0 ? count / asym.value : 0.0;
      if (opts.format == "text") {
        std::ostringstream out;
        out << "n=" << L.order() << " transversals=" << count << " reference=" << asym.value;
        emit(opts, out.str());
      } else {
        emit(opts, j.dump(2));
      }
    } else if (c_rho->parsed()) {
      const LatinSquare L = load_square(infile, group, n, steps, opts.seed);
      const MarkovOperator op = build_operator(L);
      const SpectralReport rep = rho(op, opts.tol, 16, opts.seed);
      json j = envelope("rho", opts);
      j["n"] = rep.n;
      j["rho"] = rep.rho;
      j["residual"] = rep.residual;
      j["method"] = rep.method;
      j["converged"] = rep.converged;
      if (L.order() <= 16) {  // exact matrix powers cap at n = 16
        const Rat tr6 = trace_power(op, 6);
        j["trace6_num"] = tr6.get_num().get_str();
        j["trace6_den"] = tr6.get_den().get_str();
      } else {
        j["trace6_num"] = nullptr;
        j["trace6_den"] = nullptr;
      }
      emit(opts, opts.format == "text"
                     ? "rho=" + std::to_string(rep.rho) + " (" + rep.method + ")"
                     : j.dump(2));
    } else if (c_spec->parsed()) {
      const LatinSquare L = group_square(group);
      const GroupSpec spec = group_spec(group);
      const auto cmp = compare_group_spectrum(L, spec, 1e-8);
      json j = envelope("spectrum", opts);
      j["group"] = group;
      j["irrep_dims"] = spec.irrep_dims;
      json pred = json::array();
      for (const auto& [value, count] : predict_group_spectrum(spec))
        pred.push_back({{"eigenvalue", rat_str(value)}, {"multiplicity", count}});
      j["predicted"] = pred;
      j["match"] = cmp.match;
      j["worst_deviation"] = cmp.worst;
      emit(opts, j.dump(2));
      return cmp.match ? 0 : 1;
    } else if (c_tr6->parsed()) {
      const LatinSquare L = load_square(infile, group, n, steps, opts.seed);
      const MarkovOperator op = build_operator(L);
      const Rat tr6 = trace_power(op, 6);
      const Int configs = trace6_configurations(L);
      const bool equal = Rat(configs) == rat_pow(Rat(L.order()), 6) * tr6;
      json j = envelope("trace6", opts);
      j["n"] = L.order();
      j["configurations"] = configs.get_str();
      j["trace6"] = rat_str(tr6);
      j["identity_holds"] = equal;
      emit(opts, j.dump(2));
      return equal ? 0 : 1;
    } else if (c_fourier->parsed()) {
      if (n < 2 || n > 5) fail("BudgetExceeded", "fourier-check supports 2 <= n <= 5");
      std::vector<CheckResult> results;
      const LatinSquare L = group_square("Z" + std::to_string(n));
      results.push_back(checks::fourier_decomposition(L, "Z" + std::to_string(n)));
      if (n <= 4)
        results.push_back(
            checks::fourier_diagonality(L, "Z" + std::to_string(n), 3, opts.threads));
      results.push_back(checks::sparseval_all(n));
      results.push_back(checks::sign_law(n, std::min(4, n)));
      results.push_back(checks::mobius_inversion_pointwise(n, std::min(4, n)));
      results.push_back(checks::kernel_formula_matches_projector(n, std::min(4, n)));
      bool pass = true;
      for (const auto& c : results) pass = pass && c.pass;
      json j = envelope("fourier-check", opts);
      j["n"] = n;
      j["checks"] = checks_json(results);
      j["pass"] = pass;
      emit(opts, j.dump(2));
      return pass ? 0 : 1;
    } else if (c_crank->parsed()) {
      if (m < 0 || m > 4) fail("GroundTooLarge", "crank-check supports m <= 4");
      const LatinSquare L = group_square(group.empty() ? "Z3" : group);
      json records = json::array();
      bool all_ok = true;
      const auto parts = enumerate_partitions(m);
      for (const auto& a : parts)
        for (const auto& b : parts)
          for (const auto& c : parts) {
            const PartitionTriple t(a, b, c);
            const Rat lam = lambda_indicator(L, t);
            const int cr = crank(t);
            const bool ok = lam >= 0 && lam * rat_pow(Rat(L.order()), cr) <= 1;
            all_ok = all_ok && ok;
            json rec;
            rec["psi"] = {a.rgs(), b.rgs(), c.rgs()};
            rec["crank"] = cr;
            rec["trank"] = trank(t);
            rec["lrank"] = rat_str(lrank(t));
            if (t.is_system()) rec["cx"] = complexity(t);
            rec["lambda"] = rat_str(lam);
            rec["bound_ok"] = ok;
            records.push_back(std::move(rec));
          }
      json j = envelope("crank-check", opts);
      j["m"] = m;
      j["n"] = L.order();
      j["records"] = records;
      j["pass"] = all_ok;
      emit(opts, j.dump(2));
      return all_ok ? 0 : 1;
    } else if (c_degen->parsed()) {
      const DegenReport rep = degeneration_report(opts.threads);
      const bool swapped_convention = rep.class_count_swapped == 154;
      const auto& classes = swapped_convention ? rep.classes_swapped : rep.classes_fixed;
      json j = envelope("degenerations", opts);
      j["k"] = rep.k;
      j["class_count"] = swapped_convention ? rep.class_count_swapped : rep.class_count_fixed;
      j["convention"] = swapped_convention ? "roles_permutable" : "roles_fixed";
      j["class_count_fixed"] = rep.class_count_fixed;
      j["class_count_swapped"] = rep.class_count_swapped;
      json hist = json::array();
      for (const auto& [ve, count] : rep.ve_histogram)
        hist.push_back({{"v", ve.first}, {"e", ve.second}, {"quotients", count}});
      j["ve_histogram"] = hist;
      json cls = json::array();
      json ve5 = json::array();
      for (const auto& dc : classes) {
        cls.push_back({{"v", dc.v},
                       {"e", dc.e},
                       {"members", dc.members},
                       {"margin", dc.margin},
                       {"quantity", dc.quantity}});
        if (dc.v - dc.e == 5)
          ve5.push_back({{"v", dc.v}, {"e", dc.e}, {"canonical", dc.canon}});
      }
      j["classes"] = cls;
      j["ve5_classes"] = ve5;
      emit(opts, j.dump(2));
      if (!certificate.empty()) {
        json cert = json::array();
        for (const auto& dc : classes) {
          json witness = json::array();
          for (const auto& [c, u, v] : dc.witness)
            witness.push_back({{"class", c}, {"u", u}, {"v", v}});
          cert.push_back({{"canonical", dc.canon}, {"merges", witness}});
        }
        std::ofstream f(certificate);
        f << cert.dump(2) << "\n";
      }
    } else if (c_sigma->parsed()) {
      if (m < 0) fail("GroundTooLarge", "m must be nonnegative");
      const auto [value, bound] = sigma_m_value(m);
      json j = envelope("sigma-m", opts);
      j["m"] = m;
      j["value"] = rat_str(value);
      j["value_float"] = rat_double(value);
      j["error_bound_vs_exp_minus_half"] = rat_str(bound);
      emit(opts, j.dump(2));
    } else if (c_probe->parsed()) {
      if (n < 1 || n > 12) fail("OrderTooLarge", "probe supports n <= 12");
      const std::uint64_t used = steps ? steps : jm_default_steps(n);
      const TransversalAsymptotic asym = transversal_asymptotic(n);
      json rows = json::array();
      std::ostringstream csv;
      csv << "sample,seed,count,ratio,trace6,trace4,rho\n";
      double sum_ratio = 0, min_ratio = 1e300, max_ratio = 0;
      for (int i = 0; i < samples; ++i) {
        const std::uint64_t s = opts.seed + i;
        const LatinSquare L = jm_sample(n, used, s);
        const std::uint64_t count = count_transversals(L);
        const double ratio = asym.value > 0 ? count / asym.value : 0;
        const MarkovOperator op = build_operator(L);
        const Rat tr6 = trace_power(op, 6);
        const Rat tr4 = trace_power(op, 4);
        const SpectralReport rep = rho(op, opts.tol, 16, opts.seed);
        rows.push_back({{"sample", i},
                        {"seed", s},
                        {"count", count},
                        {"ratio", ratio},
                        {"trace6", rat_str(tr6)},
                        {"trace6_float", rat_double(tr6)},
                        {"trace4_float", rat_double(tr4)},
                        {"rho", rep.rho}});
        csv << i << "," << s << "," << count << "," << ratio << "," << rat_double(tr6) << ","
            << rat_double(tr4) << "," << rep.rho << "\n";
        sum_ratio += ratio;
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
      }
      json j = envelope("probe", opts);
      j["config"]["n"] = n;
      j["config"]["samples"] = samples;
      j["config"]["steps"] = used;
      j["reference_count"] = asym.value;
      j["samples"] = rows;
      j["summary"] = {{"mean_ratio", samples ? sum_ratio / samples : 0},
                      {"min_ratio", min_ratio},
                      {"max_ratio", max_ratio}};
      emit(opts, opts.format == "csv" ? csv.str() : j.dump(2));
    } else if (c_verify->parsed()) {
      return run_verify(suite, opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string code = e.code();
    return (code == "BudgetExceeded" || code == "Infeasible" || code == "GroundTooLarge" ||
            code == "OrderTooLarge" || code == "GroupTooLarge" || code == "Timeout")
               ? 2
               : 1;
  }
  return 0;
}
