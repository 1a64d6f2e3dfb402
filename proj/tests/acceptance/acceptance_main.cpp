// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Every check is exact; nothing here is relaxed to make a
// criterion pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conetri/bpft.hpp"
#include "conetri/cli/commands.hpp"
#include "conetri/cli/formats.hpp"
#include "conetri/generators.hpp"
#include "conetri/numtheory.hpp"
#include "conetri/random.hpp"
#include "conetri/unimodular.hpp"
#include "conetri/verify.hpp"

using namespace conetri;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const BoundReport& report_named(const std::vector<BoundReport>& reports, const std::string& name) {
  for (const auto& r : reports)
    if (r.bound_name == name) return r;
  throw InvariantViolation("acceptance: missing report " + name);
}

bool has_threshold_prime(const SimplicialCone& c) {
  return c.multiplicity() > 1 && threshold_exceeded(p_max(c.multiplicity()), static_cast<unsigned>(c.dimension()));
}

// Shared by criteria 1 to 4.
struct BpftRun {
  SimplicialCone root;
  TriangulationState state;
  std::vector<BoundReport> reports;
};

std::vector<BpftRun> g_runs;
double g_bpft_seconds = 0;

Outcome criterion1() {
  Outcome o;
  std::size_t f_failures = 0;
  std::size_t steps = 0;
  double audit_seconds = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < 200; ++i) {
    ConeSpec spec;
    spec.d = i < 100 ? 2 : 3;
    spec.seed = 10000 + i;
    spec.max_entry = 20;
    const SimplicialCone root = random_cone(spec, has_threshold_prime);
    TriangulationState state = run_bpft(root);
    if (!check_f_triangulation(state.current_cones(), threshold_log(spec.d))) ++f_failures;
    steps += state.steps.size();
    const auto audit_start = Clock::now();
    std::vector<BoundReport> reports = audit_bpft_bounds(state, 10000);
    audit_seconds += seconds_since(audit_start);
    g_runs.push_back(BpftRun{root, std::move(state), std::move(reports)});
  }
  g_bpft_seconds = seconds_since(start) - audit_seconds;
  o.pass = f_failures == 0 && g_bpft_seconds < 300;
  std::ostringstream s;
  s << "200 runs (100 with d=2, 100 with d=3), " << steps << " subdivision steps, f-triangulation failures "
    << f_failures << ", BPFT time " << g_bpft_seconds << " s (limit 300 s)";
  o.detail = s.str();
  return o;
}

Outcome criterion2() {
  if (g_runs.size() != 200) return {false, "criterion 1 did not complete its runs"};
  Outcome o;
  std::size_t checked = 0, violations = 0, h_violations = 0;
  for (const auto& run : g_runs) {
    const BoundReport& r = report_named(run.reports, "xi_dilation_le_d_2^s");
    const BoundReport& h = report_named(run.reports, "xi_dilation_le_h_s");
    checked += r.checked;
    violations += r.violations;
    h_violations += h.violations;
  }
  o.pass = violations == 0 && checked > 0;
  o.detail = std::to_string(checked) + " labelled vectors checked, " + std::to_string(violations) +
             " exceed d 2^s; " + std::to_string(h_violations) + " exceed h_s";
  return o;
}

Outcome criterion3() {
  if (g_runs.size() != 200) return {false, "criterion 1 did not complete its runs"};
  Outcome o;
  std::size_t edges = 0, phi_violations = 0, cones = 0, chi_violations = 0;
  for (const auto& run : g_runs) {
    const BoundReport& phi_r = report_named(run.reports, "phi_child_le_phi_parent_minus_1");
    const BoundReport& chi_r = report_named(run.reports, "chi_le_phi_mu_root_minus_1");
    edges += phi_r.checked;
    phi_violations += phi_r.violations;
    cones += chi_r.checked;
    chi_violations += chi_r.violations;
  }
  o.pass = phi_violations == 0 && chi_violations == 0 && edges > 0;
  o.detail = std::to_string(edges) + " provenance edges, " + std::to_string(phi_violations) +
             " potential violations; " + std::to_string(cones) + " cones, " + std::to_string(chi_violations) +
             " chi violations";
  return o;
}

Outcome criterion4() {
  if (g_runs.size() != 200) return {false, "criterion 1 did not complete its runs"};
  Outcome o;
  std::size_t checked = 0, violations = 0, skipped_runs = 0;
  for (const auto& run : g_runs) {
    const BoundReport& r = report_named(run.reports, "hilbert_dilation_le_d_mu_over_4");
    checked += r.checked;
    violations += r.violations;
    if (!r.note.empty()) ++skipped_runs;
  }
  o.pass = violations == 0 && checked > 0;
  o.detail = std::to_string(checked) + " Hilbert basis elements checked, " + std::to_string(violations) +
             " violations; runs with cones above mu 10^4 skipped: " + std::to_string(skipped_runs);
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::ostringstream s;
  for (unsigned d : {2u, 4u, 6u, 10u, 12u}) {
    const bool ok = verify_prime_example_property(prime_example(d), d);
    o.pass = o.pass && ok;
    s << "d=" << d << (ok ? " ok " : " FAILED ");
  }
  o.detail = s.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t searches = 0, failures = 0;
  auto run = [&](unsigned d, std::size_t count, long min_prime, std::uint64_t base) {
    for (std::size_t i = 0; i < count; ++i) {
      ConeSpec spec;
      spec.d = d;
      spec.seed = base + i;
      spec.max_entry = 20;
      const SimplicialCone c = random_cone(spec, [&](const SimplicialCone& k) {
        return k.multiplicity() > 1 && p_max(k.multiplicity()) >= min_prime;
      });
      std::vector<std::size_t> all(d);
      for (std::size_t j = 0; j < d; ++j) all[j] = j;
      const QuotientGroup g = c.quotient_group();
      for (const auto& pp : factorize(c.multiplicity())) {
        if (pp.prime < min_prime) continue;
        ++searches;
        if (!find_avoiding(g, pp.prime, all)) ++failures;
      }
    }
  };
  run(2, 100, 13, 20000);
  run(3, 50, 47, 21000);
  o.pass = failures == 0 && searches >= 150;
  o.detail = std::to_string(searches) + " constrained searches (100 cones d=2 with p >= 13, 50 cones d=3 with p >= 47), " +
             std::to_string(failures) + " not found";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t transfers = 0, pieces = 0, mu_violations = 0, det_violations = 0, dil_violations = 0,
              index_violations = 0, dilations_checked = 0;
  std::string first_counterexample;
  for (std::size_t i = 0; i < 50; ++i) {
    ConeSpec spec;
    spec.d = i % 2 == 0 ? 2 : 3;
    spec.seed = 30000 + i;
    spec.max_entry = 6;
    spec.target_mu_range = std::make_pair(Integer(2), Integer(200));
    const SimplicialCone c = random_cone(spec);
    const std::size_t d = c.dimension();
    for (const auto& pp : factorize(c.multiplicity())) {
      const Integer& p = pp.prime;
      const TransferResult r = prime_transfer(c, p);
      ++transfers;
      Integer p_pow = 1;
      for (std::size_t k = 1; k < d; ++k) p_pow *= p;
      for (std::size_t k = 0; k < r.pieces.size(); ++k) {
        ++pieces;
        if (r.pieces[k].multiplicity() * p != c.multiplicity()) {
          ++mu_violations;
          if (first_counterexample.empty()) {
            std::ostringstream s;
            s << "root " << c.generators() << " p=" << p << " piece mu=" << r.pieces[k].multiplicity()
              << " transferred rows " << r.certificate.transferred_rows[k];
            first_counterexample = s.str();
          }
        }
        if (abs(r.certificate.lattice_indices[k]) * p != c.multiplicity()) ++index_violations;
        if (determinant(r.certificate.coefficient_matrices[k]) != p_pow) ++det_violations;
        for (std::size_t j = 0; j < d; ++j) {
          dilations_checked += 2;
          if (dilation(c, r.pieces[k].generator(j)) > r.certificate.measured_k) ++dil_violations;
          if (dilation(c, r.certificate.transferred_rows[k].row(j)) > r.certificate.measured_k) ++dil_violations;
        }
      }
    }
  }
  o.pass = mu_violations == 0 && det_violations == 0 && dil_violations == 0;
  std::ostringstream s;
  s << transfers << " transfers, " << pieces << " pieces; mu(D_i) p != mu(C) for " << mu_violations
    << " pieces; det(A/p) != 1/p for " << det_violations << "; dilation above measured_k for " << dil_violations
    << " of " << dilations_checked << "; lattice index |det W^i| p != mu(C) for " << index_violations
    << " pieces";
  if (mu_violations > 0) {
    s << ". The multiplicity identity fails when a transferred generator w = a V / p is not primitive:"
         " the lattice spanned by the w has index mu(C)/p, but the cone they span has smaller multiplicity."
         " First case: "
      << first_counterexample;
  }
  o.detail = s.str();
  for (auto& ch : o.detail)
    if (ch == '\n') ch = ' ';
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t runs = 0, singular = 0, partition_failures = 0, bound_failures = 0, exponent_failures = 0,
              near_ties = 0;
  HighPrecision worst_slack = 1e9;
  const auto start = Clock::now();
  const std::vector<PipelineStrategy> strategies{PipelineStrategy::naive, PipelineStrategy::bpft_then_naive,
                                                 PipelineStrategy::bpft_then_transfer};
  for (std::size_t i = 0; i < 100; ++i) {
    ConeSpec spec;
    spec.d = i % 2 == 0 ? 2 : 3;
    spec.seed = 40000 + i;
    spec.max_entry = 8;
    spec.target_mu_range = std::make_pair(Integer(2), Integer(500));
    const SimplicialCone c = random_cone(spec);
    const HighPrecision exponent_limit =
        finres_exponent(spec.d) +
        boost::multiprecision::log(HighPrecision(spec.d) / 4) / boost::multiprecision::log(to_high_precision(c.multiplicity()));
    for (PipelineStrategy strategy : strategies) {
      ++runs;
      const UnimodularTriangulation t = pipeline_finres(c, strategy);
      for (const auto& piece : t.pieces)
        if (!piece.is_unimodular()) ++singular;
      if (!check_partition(c, t.pieces, 10000, spec.seed).valid()) ++partition_failures;
      const BoundReport r = audit_unimodular_bounds(t, c);
      if (!r.satisfied) ++bound_failures;
      if (r.near_tie) ++near_ties;
      if (!r.implied_exponent || *r.implied_exponent > exponent_limit + HighPrecision("1e-20")) ++exponent_failures;
      if (r.implied_exponent) worst_slack = std::min(worst_slack, exponent_limit - *r.implied_exponent);
    }
  }
  o.pass = singular == 0 && partition_failures == 0 && bound_failures == 0 && exponent_failures == 0;
  std::ostringstream s;
  s << runs << " pipeline runs (100 cones x 3 strategies) in " << seconds_since(start) << " s; singular pieces "
    << singular << ", partition failures " << partition_failures << ", bound failures " << bound_failures
    << " (near ties " << near_ties << "), implied exponent failures " << exponent_failures
    << ", least exponent slack " << to_decimal_string(worst_slack, 6);
  o.detail = s.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::ostringstream s;
  Rng rng(9);

  std::size_t phi_failures = 0;
  const Phi zero(Integer(1), Integer(1), 0);
  for (int i = 0; i < 10000; ++i) {
    const Integer a = rng.in_range(1, 1000000000);
    const Integer b = rng.in_range(1, 1000000000);
    if (!(phi(a * b) == phi(a) + phi(b))) ++phi_failures;
    if (phi(a) < zero || phi(b) < zero) ++phi_failures;
  }
  s << "phi: " << phi_failures << " failures in 10^4 pairs; ";

  std::size_t h_failures = 0;
  for (unsigned d = 2; d <= 16; ++d)
    for (long k = 0; k <= 64; ++k)
      if (h_sequence(d, k) > (Integer(d) << k)) ++h_failures;
  s << "h_k <= d 2^k: " << h_failures << " failures; ";

  std::size_t snf_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.below(4);
    IntMatrix m(n, n);
    do {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.in_range(-20, 20);
    } while (determinant(m) == 0);
    const SNFDecomposition snf = smith_normal_form(m);
    IntMatrix diag(n, n);
    for (std::size_t k = 0; k < n; ++k) diag(k, k) = snf.diag[k];
    bool ok = snf.left * m * snf.right == diag && abs(determinant(snf.left)) == 1 &&
              abs(determinant(snf.right)) == 1;
    for (std::size_t k = 0; k + 1 < n && ok; ++k)
      ok = snf.diag[k] > 0 && mpz_divisible_p(snf.diag[k + 1].get_mpz_t(), snf.diag[k].get_mpz_t());
    if (!ok) ++snf_failures;
  }
  s << "SNF: " << snf_failures << " failures in 10^3 matrices; ";

  std::size_t file_failures = 0, files = 0;
  std::vector<SimplicialCone> roots{two_dim_prime(13), prime_example(4)};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    ConeSpec spec;
    spec.d = 2 + static_cast<unsigned>(seed % 2);
    spec.seed = 50000 + seed;
    spec.target_mu_range = std::make_pair(Integer(2), Integer(300));
    roots.push_back(random_cone(spec));
  }
  for (const auto& root : roots) {
    for (const std::string method : {"bpft", "naive", "bpft-naive", "bpft-transfer"}) {
      ++files;
      const std::string a = cli::dump(cli::triangulation_to_json(cli::triangulate(root, method, true, 7, 1000, nullptr)));
      const std::string b = cli::dump(cli::triangulation_to_json(cli::triangulate(root, method, true, 7, 1000, nullptr)));
      const std::string back = cli::dump(cli::triangulation_to_json(cli::triangulation_from_json(cli::Json::parse(a))));
      if (a != b || a != back) ++file_failures;
    }
  }
  s << "files: " << file_failures << " of " << files << " not byte-identical across runs or round trip";

  o.pass = phi_failures == 0 && h_failures == 0 && snf_failures == 0 && file_failures == 0;
  o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"BPFT terminates with an e^(tau d)-triangulation", criterion1},
      {"subdivision vectors within d 2^s", criterion2},
      {"potential drop and chi bound", criterion3},
      {"Hilbert bases within (d/4) mu(C)", criterion4},
      {"prime example admits no composite-only vector", criterion5},
      {"constrained order-p search succeeds above the threshold", criterion6},
      {"prime transfer exactness", criterion7},
      {"unimodular pipeline", criterion8},
      {"property suites", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ["
              << o.detail << "] (" << seconds_since(start) << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
