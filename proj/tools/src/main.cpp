#include <iostream>

#include <CLI11.hpp>

#include "conetri/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace conetri::cli;
  CLI::App app{"conetri: triangulations of simplicial cones with bounded subdivision vectors"};
  app.require_subcommand(1);

  TriangulateOptions tri;
  auto* triangulate = app.add_subcommand("triangulate", "Triangulate a cone read from a JSON file");
  triangulate->add_option("input", tri.input, "Cone file {\"d\": int, \"generators\": [[int]]}")->required();
  triangulate->add_option("--method", tri.method, "bpft, naive, bpft-naive or bpft-transfer")
      ->check(CLI::IsMember({"bpft", "naive", "bpft-naive", "bpft-transfer"}));
  triangulate->add_option("--out", tri.out, "Output file (stdout when omitted)");
  triangulate->add_option("--seed", tri.seed, "Seed for the partition sampling done by --audit");
  triangulate->add_flag("--audit", tri.audit, "Audit all bounds and embed the reports");
  triangulate->add_option("--samples", tri.samples, "Partition samples used by --audit")->capture_default_str();

  ExampleOptions ex;
  auto* example = app.add_subcommand("example", "Write a cone from a named family");
  example->add_option("--family", ex.family, "prime or two-dim-prime")->required();
  example->add_option("--d", ex.d, "Dimension (prime family, d + 1 prime)");
  example->add_option("--N", ex.n, "Prime N (two-dim-prime family)");
  example->add_option("--out", ex.out, "Output file (stdout when omitted)");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Run unimodular strategies on seeded random cones and write CSV");
  bench->add_option("--d", bench_opts.d, "Dimension")->capture_default_str()->check(CLI::Range(2u, 64u));
  bench->add_option("--count", bench_opts.count, "Number of cones")->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "First seed; cone i uses seed + i")->capture_default_str();
  bench->add_option("--max-entry", bench_opts.max_entry, "Entry bound for random generators")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--method", bench_opts.methods, "Strategies (naive, bpft-naive, bpft-transfer, all)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--csv", bench_opts.csv, "CSV output file (stdout when omitted)");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Recheck a triangulation file");
  verify->add_option("input", ver.input, "Triangulation file")->required();
  verify->add_option("--samples", ver.samples, "Partition samples (0 skips the check)")->capture_default_str();
  verify->add_option("--seed", ver.seed, "Sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*triangulate) return cmd_triangulate(tri, std::cout, std::cerr);
  if (*example) return cmd_example(ex, std::cout, std::cerr);
  if (*bench) return cmd_bench(bench_opts, std::cout, std::cerr);
  if (*verify) return cmd_verify(ver, std::cout, std::cerr);
  return kExitError;
}
