#pragma once

#include <cstddef>
#include <optional>

#include "rbm/bott_matrix.hpp"
#include "rbm/cohomology.hpp"

namespace rbm {

// Verdicts of the independent spin^c procedures. They must coincide.
struct SpincOracles {
  bool combinatorial = false;    // columns of the derived matrix
  bool alpha_condition = false;  // alpha'_j in {0, alpha_j}
  bool linear = false;           // w2 in span(S1 u S2)
  bool bockstein = false;        // beta2(w2) = 0

  bool agree() const noexcept {
    return combinatorial == alpha_condition && alpha_condition == linear && linear == bockstein;
  }
  friend bool operator==(const SpincOracles&, const SpincOracles&) = default;
};

inline SpincOracles spinc_oracles(const BottMatrix& a) {
  return {has_spinc_combinatorial(a), alpha_prime_condition(a), has_spinc_linear(a),
          has_spinc_bockstein(a)};
}

// Everything known about one matrix. Spin data is present only for
// orientable matrices; the per-oracle verdicts need n <= kMaxCohomologyDim.
struct AnalysisReport {
  std::size_t n = 0;
  bool orientable = false;
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  HomologyReport homology;
  std::optional<bool> spin;
  std::optional<bool> spinc;
  std::optional<SpincOracles> spinc_by_oracle;
};

inline AnalysisReport analyze(const BottMatrix& a) {
  AnalysisReport r;
  r.n = a.size();
  r.orientable = is_orientable(a);
  r.b1 = betti1(a);
  r.b2 = betti2(a);
  r.homology = homology_report(a);
  if (r.orientable) {
    r.spin = has_spin(a);
    r.spinc = has_spinc_combinatorial(a);
    if (r.n <= kMaxCohomologyDim) r.spinc_by_oracle = spinc_oracles(a);
  }
  return r;
}

}  // namespace rbm
