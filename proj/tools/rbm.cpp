// rbm: spin and spin^c structures on real Bott manifolds.
//
//   rbm analyze matrix.txt [--format table|csv|json-lines] [--all-oracles]
//   rbm census --dims 4..8 [--workers N] [--format ...] [--allow-long] [--no-timing]
//   rbm verify [--max-exhaustive 6] [--samples 1000] [--seed 42]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rbm/cli.hpp"

int main(int argc, char** argv) {
  using namespace rbm::cli;

  CLI::App app{"Spin and spin^c structures on real Bott manifolds"};
  app.require_subcommand(1);

  std::string format_name = "table";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json-lines", "jsonl"}));
  };

  auto* analyze = app.add_subcommand("analyze", "Invariants of one Bott matrix");
  std::string path;
  bool all_oracles = false;
  analyze->add_option("file", path, "Matrix file (n rows of n 0/1 tokens)")->required();
  analyze->add_flag("--all-oracles", all_oracles, "Report every spin^c decision procedure");
  add_format(analyze);

  auto* census = app.add_subcommand("census", "Count spin^c and spin orientable Bott matrices");
  CensusCommand cmd;
  std::string dims = "4..8";
  census->add_option("--dims", dims, "Dimension range A..B within [4, 10]");
  census->add_option("--workers", cmd.workers, "Worker threads")->check(CLI::PositiveNumber);
  census->add_flag("--allow-long", cmd.allow_long, "Permit n = 10");
  bool no_timing = false;
  census->add_flag("--no-timing", no_timing, "Omit wall-clock timings");
  census->add_flag("--crosscheck", cmd.crosscheck,
                   "Re-classify every 1024th matrix with the cohomology oracles");
  add_format(census);

  auto* verify = app.add_subcommand("verify", "Cross-check every decision procedure");
  std::size_t max_exhaustive = 6;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 42;
  verify->add_option("--max-exhaustive", max_exhaustive, "Largest exhaustively checked n (<= 7)");
  verify->add_option("--samples", samples, "Random orientable matrices per remaining n up to 10");
  verify->add_option("--seed", seed, "Sampling seed");

  CLI11_PARSE(app, argc, argv);

  const OutputFormat format = parse_format(format_name).value_or(OutputFormat::Table);

  if (*analyze) return run_analyze(path, format, all_oracles, std::cout, std::cerr);

  if (*census) {
    const auto range = parse_dims(dims);
    if (!range) {
      std::cerr << "census: cannot parse --dims '" << dims << "', expected A..B\n";
      return exit_code::parse;
    }
    cmd.dim_lo = range->first;
    cmd.dim_hi = range->second;
    cmd.format = format;
    cmd.timing = !no_timing;
    return run_census(cmd, std::cout, std::cerr);
  }

  return run_verify(max_exhaustive, samples, seed, std::cout, std::cerr);
}
