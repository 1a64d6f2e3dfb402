#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conetri/cli/formats.hpp"

namespace conetri::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct TriangulateOptions {
  std::filesystem::path input;
  std::string method = "bpft";
  std::optional<std::filesystem::path> out;  // stdout when unset
  std::uint64_t seed = 0;
  bool audit = false;
  std::size_t samples = 10000;  // partition samples used by --audit
};

struct ExampleOptions {
  std::string family;
  std::optional<unsigned> d;
  std::optional<std::string> n;
  std::optional<std::filesystem::path> out;
};

struct BenchOptions {
  unsigned d = 2;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  long max_entry = 10;
  std::vector<std::string> methods{"all"};
  std::optional<std::filesystem::path> csv;  // stdout when unset
};

struct VerifyOptions {
  std::filesystem::path input;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

inline const char* const kBenchCsvHeader =
    "seed,mu,method,pieces,max_dilation_num,max_dilation_den,implied_exponent,bound_value,satisfied,wall_ms";

// Builds the file contents without touching the filesystem; `reports`
// receives the audit results when audit is set.
TriangulationFile triangulate(const SimplicialCone& root, const std::string& method, bool audit,
                              std::uint64_t seed, std::size_t samples, std::vector<BoundReport>* reports);

// Audits a triangulation file as cmd_verify does; returns the reports and
// appends structural mismatches (multiplicities, stored dilations) to
// `mismatches`.
std::vector<BoundReport> audit_file(const TriangulationFile& t, std::size_t samples, std::uint64_t seed,
                                    std::vector<std::string>& mismatches);

void print_reports(const std::vector<BoundReport>& reports, std::ostream& out);

int cmd_triangulate(const TriangulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_example(const ExampleOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace conetri::cli
