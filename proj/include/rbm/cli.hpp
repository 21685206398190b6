#pragma once

// Command implementations behind the `rbm` executable. Each returns the
// process exit status and writes to the given streams.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "rbm/analysis.hpp"
#include "rbm/bott_matrix.hpp"
#include "rbm/census.hpp"
#include "rbm/cohomology.hpp"

namespace rbm::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int parse = 2;
inline constexpr int refused_long_run = 3;
inline constexpr int verification_failed = 4;
}  // namespace exit_code

enum class OutputFormat { Table, Csv, JsonLines };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json-lines" || s == "jsonl") return OutputFormat::JsonLines;
  return std::nullopt;
}

// "A..B" or a single "A".
inline std::optional<std::pair<std::size_t, std::size_t>> parse_dims(std::string_view s) {
  auto number = [](std::string_view t) -> std::optional<std::size_t> {
    if (t.empty() || t.size() > 3) return std::nullopt;
    std::size_t v = 0;
    for (char c : t) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  const auto sep = s.find("..");
  if (sep == std::string_view::npos) {
    auto v = number(s);
    if (!v) return std::nullopt;
    return std::pair{*v, *v};
  }
  auto lo = number(s.substr(0, sep));
  auto hi = number(s.substr(sep + 2));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return std::pair{*lo, *hi};
}

namespace detail {

inline std::string flag(const std::optional<bool>& b) {
  if (!b) return "n/a";
  return *b ? "true" : "false";
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline nlohmann::json json_flag(const std::optional<bool>& b) {
  if (!b) return "n/a";
  return *b;
}

}  // namespace detail

inline int analyze_text(std::string_view text, OutputFormat format, bool all_oracles,
                        std::ostream& out, std::ostream& err) {
  BottMatrix a(2);
  try {
    a = parse(text);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse;
  }

  const AnalysisReport r = analyze(a);
  const std::string h1 = render_group(r.homology.h1_free, r.homology.h1_torsion);
  const std::string h2 = render_group(r.homology.h2_free, r.homology.h2_torsion);
  std::optional<std::string> w2, w2_sf, derived;
  if (r.orientable) {
    w2 = w2_reduced(a).to_string();
    w2_sf = w2_square_free(a).to_string();
    derived = to_text(derived_matrix(a));
  }
  const auto& oracles = r.spinc_by_oracle;

  switch (format) {
    case OutputFormat::Table: {
      out << "n: " << r.n << '\n'
          << "orientable: " << detail::bool_str(r.orientable) << '\n'
          << "b1: " << r.b1 << '\n'
          << "b2: " << r.b2 << '\n'
          << "H1: " << h1 << '\n'
          << "H2(Z): " << h2 << '\n'
          << "dim_img_rho2: " << r.homology.dim_img_rho2 << '\n'
          << "w2: " << w2.value_or("n/a") << '\n'
          << "w2_square_free: " << w2_sf.value_or("n/a") << '\n';
      if (derived)
        out << "derived_matrix:\n" << *derived;
      else
        out << "derived_matrix: n/a\n";
      out << "spin: " << detail::flag(r.spin) << '\n' << "spinc: " << detail::flag(r.spinc) << '\n';
      if (all_oracles && oracles) {
        out << "spinc_combinatorial: " << detail::bool_str(oracles->combinatorial) << '\n'
            << "spinc_alpha_condition: " << detail::bool_str(oracles->alpha_condition) << '\n'
            << "spinc_linear: " << detail::bool_str(oracles->linear) << '\n'
            << "spinc_bockstein: " << detail::bool_str(oracles->bockstein) << '\n'
            << "oracles_agree: " << detail::bool_str(oracles->agree()) << '\n';
      }
      break;
    }
    case OutputFormat::Csv: {
      out << "n,orientable,b1,b2,h1,h2,dim_img_rho2,w2,w2_square_free,spin,spinc";
      if (all_oracles) out << ",spinc_combinatorial,spinc_alpha_condition,spinc_linear,spinc_bockstein";
      out << '\n';
      out << r.n << ',' << detail::bool_str(r.orientable) << ',' << r.b1 << ',' << r.b2 << ',' << h1
          << ',' << h2 << ',' << r.homology.dim_img_rho2 << ',' << w2.value_or("n/a") << ','
          << w2_sf.value_or("n/a") << ',' << detail::flag(r.spin) << ',' << detail::flag(r.spinc);
      if (all_oracles) {
        if (oracles)
          out << ',' << detail::bool_str(oracles->combinatorial) << ','
              << detail::bool_str(oracles->alpha_condition) << ',' << detail::bool_str(oracles->linear)
              << ',' << detail::bool_str(oracles->bockstein);
        else
          out << ",n/a,n/a,n/a,n/a";
      }
      out << '\n';
      break;
    }
    case OutputFormat::JsonLines: {
      nlohmann::json j;
      j["n"] = r.n;
      j["orientable"] = r.orientable;
      j["b1"] = r.b1;
      j["b2"] = r.b2;
      j["h1"] = h1;
      j["h2"] = h2;
      j["dim_img_rho2"] = r.homology.dim_img_rho2;
      j["w2"] = w2.value_or("n/a");
      j["w2_square_free"] = w2_sf.value_or("n/a");
      if (r.orientable) {
        nlohmann::json rows = nlohmann::json::array();
        std::istringstream lines(*derived);
        for (std::string line; std::getline(lines, line);) rows.push_back(line);
        j["derived_matrix"] = rows;
      } else {
        j["derived_matrix"] = "n/a";
      }
      j["spin"] = detail::json_flag(r.spin);
      j["spinc"] = detail::json_flag(r.spinc);
      if (all_oracles && oracles) {
        j["spinc_by_oracle"] = {{"combinatorial", oracles->combinatorial},
                                {"alpha_condition", oracles->alpha_condition},
                                {"linear", oracles->linear},
                                {"bockstein", oracles->bockstein}};
      }
      out << j.dump() << '\n';
      break;
    }
  }
  return exit_code::ok;
}

inline int run_analyze(const std::string& path, OutputFormat format, bool all_oracles,
                       std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot read " << path << '\n';
    return exit_code::io;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    err << "error reading " << path << '\n';
    return exit_code::io;
  }
  return analyze_text(buffer.str(), format, all_oracles, out, err);
}

struct CensusCommand {
  std::size_t dim_lo = 4;
  std::size_t dim_hi = 8;
  unsigned workers = 1;
  OutputFormat format = OutputFormat::Table;
  bool allow_long = false;
  bool timing = true;
  bool crosscheck = false;
};

inline int run_census(const CensusCommand& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.dim_lo < kCensusMinDim || cmd.dim_hi > kCensusMaxDim || cmd.dim_lo > cmd.dim_hi) {
    err << "census: dimensions must satisfy 4 <= A <= B <= 10\n";
    return exit_code::parse;
  }
  if (cmd.workers == 0) {
    err << "census: need at least one worker\n";
    return exit_code::parse;
  }
  if (cmd.dim_hi >= 10 && !cmd.allow_long) {
    err << "census: n = 10 enumerates 2^36 = " << orientable_count(10)
        << " matrices, 256 times the n = 9 run (CPU-hours on one core); pass --allow-long to run it\n";
    return exit_code::refused_long_run;
  }

  if (cmd.format == OutputFormat::Csv) out << "dimension,orientable,spinc,spin,elapsed_s\n";
  if (cmd.format == OutputFormat::Table)
    out << std::setw(9) << "dimension" << std::setw(14) << "orientable" << std::setw(12) << "spinc"
        << std::setw(10) << "spin" << std::setw(12) << "elapsed_s" << '\n';

  int status = exit_code::ok;
  for (std::size_t n = cmd.dim_lo; n <= cmd.dim_hi; ++n) {
    CensusOptions options;
    options.workers = cmd.workers;
    options.crosscheck = cmd.crosscheck;
    const CensusRow row = census(n, options);

    std::ostringstream elapsed;
    if (cmd.timing) elapsed << std::fixed << std::setprecision(3) << row.elapsed_s;

    switch (cmd.format) {
      case OutputFormat::Table:
        out << std::setw(9) << row.n << std::setw(14) << row.orientable_count << std::setw(12)
            << row.spinc_count << std::setw(10) << row.spin_count << std::setw(12)
            << (cmd.timing ? elapsed.str() : "-") << '\n';
        break;
      case OutputFormat::Csv:
        out << row.n << ',' << row.orientable_count << ',' << row.spinc_count << ',' << row.spin_count
            << ',' << elapsed.str() << '\n';
        break;
      case OutputFormat::JsonLines: {
        nlohmann::json j{{"dimension", row.n},
                         {"orientable", row.orientable_count},
                         {"spinc", row.spinc_count},
                         {"spin", row.spin_count}};
        if (cmd.timing) j["elapsed_s"] = row.elapsed_s;
        if (cmd.crosscheck) j["crosschecked"] = row.crosschecked;
        out << j.dump() << '\n';
        break;
      }
    }
    if (cmd.crosscheck) {
      err << "n=" << n << ": cross-checked " << row.crosschecked << " matrices, "
          << row.crosscheck_mismatches << " mismatches\n";
      if (row.crosscheck_mismatches != 0) status = exit_code::verification_failed;
    }
  }
  return status;
}

inline int run_verify(std::size_t max_exhaustive, std::uint64_t samples, std::uint64_t seed,
                      std::ostream& out, std::ostream& err, const OracleSet& oracles = {}) {
  if (max_exhaustive > 7) {
    err << "verify: exhaustive range is capped at n = 7\n";
    return exit_code::parse;
  }
  const VerifyReport report = verify_oracles(max_exhaustive, samples, seed, oracles);
  if (report.ok) {
    out << "ok: " << report.checked << " matrices checked\n";
    return exit_code::ok;
  }
  out << "FAILED after " << report.checked << " matrices: " << report.failure << '\n';
  out << "# counterexample\n" << to_text(*report.counterexample);
  return exit_code::verification_failed;
}

}  // namespace rbm::cli
