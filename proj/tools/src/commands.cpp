#include "conetri/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "conetri/bpft.hpp"
#include "conetri/generators.hpp"
#include "conetri/limits.hpp"
#include "conetri/unimodular.hpp"

namespace conetri::cli {

namespace {

const std::vector<std::string> kPipelineMethods{"naive", "bpft-naive", "bpft-transfer"};

bool is_pipeline_method(const std::string& m) {
  return std::find(kPipelineMethods.begin(), kPipelineMethods.end(), m) != kPipelineMethods.end();
}

void validate_method(const std::string& m) {
  if (m != "bpft" && !is_pipeline_method(m))
    throw FormatError("method: unknown method '" + m + "' (expected bpft, naive, bpft-naive or bpft-transfer)");
}

BoundReport partition_report(const ValidityReport& v) {
  BoundReport r;
  r.bound_name = "partition_covered_exactly_once";
  r.measured = Quantity::of(Rational(Integer(static_cast<unsigned long>(v.covered_once))));
  r.bound_value = Quantity::of(Rational(Integer(static_cast<unsigned long>(v.samples))));
  r.checked = v.samples;
  r.violations = v.uncovered + v.multiply_covered + v.containment_failures;
  r.satisfied = v.valid();
  r.note = "uncovered=" + std::to_string(v.uncovered) + " multiply_covered=" + std::to_string(v.multiply_covered) +
           " containment_failures=" + std::to_string(v.containment_failures) +
           " redraws=" + std::to_string(v.redraws);
  return r;
}

bool all_ok(const std::vector<BoundReport>& reports) { return all_satisfied(reports); }

void emit(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (path)
    write_file_atomic(*path, text);
  else
    out << text;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

TriangulationFile triangulate(const SimplicialCone& root, const std::string& method, bool audit,
                              std::uint64_t seed, std::size_t samples, std::vector<BoundReport>* reports) {
  validate_method(method);
  const EnumerationLimits limits = EnumerationLimits::from_environment();
  TriangulationFile file{root, method, {}, {}, Json::array()};
  std::vector<BoundReport> local;
  std::vector<SimplicialCone> pieces;

  if (method == "bpft") {
    const TriangulationState state = run_bpft(root);
    for (std::size_t id : state.current) {
      const LabeledCone& lc = state.ancestry[id].labeled;
      file.pieces.push_back(PieceEntry{lc.cone.generators(), lc.cone.multiplicity(), lc.chi()});
      pieces.push_back(lc.cone);
    }
    // One entry per distinct (label, vector) pair, in order of first use.
    std::set<std::pair<long, IntVector>> seen;
    for (const auto& node : state.ancestry) {
      for (long s = 0; s <= node.labeled.chi(); ++s) {
        const IntVector* v = node.labeled.xi_at(s);
        if (v == nullptr || is_zero(*v) || !seen.emplace(s, *v).second) continue;
        file.subdivision_vectors.push_back(SubdivisionEntry{s, *v, dilation(root, *v)});
      }
    }
    if (audit) local = audit_bpft_bounds(state, limits.hilbert_cap);
  } else {
    const UnimodularTriangulation t = pipeline_finres(root, *parse_strategy(method), limits);
    for (std::size_t i = 0; i < t.pieces.size(); ++i) {
      file.pieces.push_back(PieceEntry{t.pieces[i].generators(), t.pieces[i].multiplicity(), t.piece_depth[i] - 1});
    }
    for (std::size_t i = 0; i < t.subdivision_vectors.size(); ++i) {
      const IntVector& v = t.subdivision_vectors[i];
      file.subdivision_vectors.push_back(SubdivisionEntry{static_cast<long>(i), v, dilation(root, v)});
    }
    pieces = t.pieces;
    if (audit) local.push_back(audit_unimodular_bounds(t, root));
  }

  if (audit) {
    if (samples > 0) local.push_back(partition_report(check_partition(root, pieces, samples, seed)));
    for (const auto& r : local) file.bounds.push_back(bound_report_to_json(r));
    if (reports) *reports = std::move(local);
  }
  return file;
}

std::vector<BoundReport> audit_file(const TriangulationFile& t, std::size_t samples, std::uint64_t seed,
                                    std::vector<std::string>& mismatches) {
  validate_method(t.method);
  const EnumerationLimits limits = EnumerationLimits::from_environment();
  const SimplicialCone& root = t.root;
  std::vector<SimplicialCone> pieces;
  for (std::size_t i = 0; i < t.pieces.size(); ++i) {
    const PieceEntry& p = t.pieces[i];
    if (determinant(p.generators) == 0) {
      mismatches.push_back("pieces[" + std::to_string(i) + "]: generators are linearly dependent");
      continue;
    }
    SimplicialCone cone = SimplicialCone::make(p.generators);
    if (cone.multiplicity() != p.multiplicity) {
      mismatches.push_back("pieces[" + std::to_string(i) + "].multiplicity: stored " + p.multiplicity.get_str() +
                           ", recomputed " + cone.multiplicity().get_str());
    }
    pieces.push_back(std::move(cone));
  }

  std::vector<std::pair<long, IntVector>> labelled;
  for (std::size_t i = 0; i < t.subdivision_vectors.size(); ++i) {
    const SubdivisionEntry& e = t.subdivision_vectors[i];
    const std::string where = "subdivision_vectors[" + std::to_string(i) + "]";
    if (!contains(root, e.vector, Containment::closed)) {
      mismatches.push_back(where + ".vector: " + to_string(e.vector) + " is not in the root cone");
      continue;
    }
    const Rational dil = dilation(root, e.vector);
    if (dil != e.dilation) {
      mismatches.push_back(where + ".dilation: stored " + to_string(e.dilation) + ", recomputed " +
                           to_string(dil));
    }
    labelled.emplace_back(e.index, e.vector);
  }

  std::vector<BoundReport> reports;
  const unsigned d = static_cast<unsigned>(root.dimension());
  if (t.method == "bpft") {
    reports.push_back(audit_f_triangulation(pieces, d));
    for (auto& r : audit_final_cones(pieces, root, limits.hilbert_cap)) reports.push_back(std::move(r));
    for (auto& r : audit_labelled_vectors(root, labelled)) reports.push_back(std::move(r));
    std::vector<long> chis;
    for (const auto& p : t.pieces) chis.push_back(p.chi);
    reports.push_back(audit_chi(root, chis));
  } else {
    reports.push_back(audit_unimodular_bounds(pieces, root));
  }
  if (samples > 0) reports.push_back(partition_report(check_partition(root, pieces, samples, seed)));
  return reports;
}

void print_reports(const std::vector<BoundReport>& reports, std::ostream& out) {
  std::size_t width = 10;
  for (const auto& r : reports) width = std::max(width, r.bound_name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "bound" << "  status    checked  violations  measured"
      << "  <=  bound\n";
  for (const auto& r : reports) {
    const char* status = r.skipped ? "skipped" : (r.satisfied ? "ok" : "VIOLATED");
    out << std::left << std::setw(static_cast<int>(width)) << r.bound_name << "  " << std::setw(8) << status
        << "  " << std::right << std::setw(7) << r.checked << "  " << std::setw(10) << r.violations << "  "
        << r.measured.to_string() << "  <=  " << r.bound_value.to_string();
    if (r.near_tie) out << "  (near tie)";
    if (!r.note.empty()) out << "  [" << r.note << "]";
    out << '\n';
  }
}

int cmd_triangulate(const TriangulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_method(options.method);
    const SimplicialCone root = cone_from_json(parse_json_file(options.input), "input");
    std::vector<BoundReport> reports;
    TriangulationFile file = triangulate(root, options.method, options.audit, options.seed, options.samples, &reports);
    emit(options.out, dump(triangulation_to_json(file)), out);
    if (options.audit) {
      std::ostream& table = options.out ? out : err;
      print_reports(reports, table);
      if (!all_ok(reports)) return kExitViolation;
    }
    return kExitOk;
  });
}

int cmd_example(const ExampleOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SimplicialCone cone = SimplicialCone::make(IntMatrix::identity(2));
    if (options.family == "prime") {
      if (!options.d) throw FormatError("--d: required for the prime family");
      cone = prime_example(*options.d);
    } else if (options.family == "two-dim-prime") {
      if (!options.n) throw FormatError("--N: required for the two-dim-prime family");
      cone = two_dim_prime(integer_from_json(Json(*options.n), "--N"));
    } else {
      throw FormatError("--family: unknown family '" + options.family + "' (expected prime or two-dim-prime)");
    }
    emit(options.out, dump(cone_to_json(cone)), out);
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> methods;
    for (const auto& m : options.methods) {
      if (m == "all") {
        methods.insert(methods.end(), kPipelineMethods.begin(), kPipelineMethods.end());
      } else if (is_pipeline_method(m)) {
        methods.push_back(m);
      } else {
        throw FormatError("--method: '" + m + "' is not a unimodular strategy (naive, bpft-naive, bpft-transfer, all)");
      }
    }
    const EnumerationLimits limits = EnumerationLimits::from_environment();
    std::ostringstream csv;
    csv << kBenchCsvHeader << '\n';
    bool all_satisfied_rows = true;
    for (std::size_t i = 0; i < options.count; ++i) {
      ConeSpec spec;
      spec.d = options.d;
      spec.seed = options.seed + i;
      spec.max_entry = options.max_entry;
      const SimplicialCone cone =
          random_cone(spec, [](const SimplicialCone& c) { return !c.is_unimodular(); });
      for (const auto& m : methods) {
        const auto start = std::chrono::steady_clock::now();
        const UnimodularTriangulation t = pipeline_finres(cone, *parse_strategy(m), limits);
        const auto stop = std::chrono::steady_clock::now();
        const BoundReport r = audit_unimodular_bounds(t, cone);
        all_satisfied_rows = all_satisfied_rows && r.satisfied;
        const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        csv << spec.seed << ',' << cone.multiplicity().get_str() << ',' << m << ',' << t.pieces.size() << ','
            << t.max_dilation.get_num().get_str() << ',' << t.max_dilation.get_den().get_str() << ','
            << (r.implied_exponent ? to_decimal_string(*r.implied_exponent, 20) : std::string()) << ','
            << to_decimal_string(r.bound_value.approx, 20) << ',' << (r.satisfied ? "true" : "false") << ','
            << std::fixed << std::setprecision(3) << ms << std::defaultfloat << '\n';
      }
    }
    emit(options.csv, csv.str(), out);
    return all_satisfied_rows ? kExitOk : kExitViolation;
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TriangulationFile t = triangulation_from_json(parse_json_file(options.input));
    std::vector<std::string> mismatches;
    const std::vector<BoundReport> reports = audit_file(t, options.samples, options.seed, mismatches);
    if (options.samples == 0) out << "notice: --samples 0, partition check skipped\n";
    for (const auto& m : mismatches) out << "mismatch: " << m << '\n';
    print_reports(reports, out);
    if (!mismatches.empty() || !all_ok(reports)) return kExitViolation;
    return kExitOk;
  });
}

}  // namespace conetri::cli
