#ifndef BFZETA_ACCEPTANCE_HPP
#define BFZETA_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace bfzeta {

constexpr int kAcceptanceCriteria = 12;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double metric = 0.0;     // worst residual or mismatch count
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

/// Runs criterion 1..12 with its pinned tolerance, sample sizes and seed.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();
/// `PASS  3  decomposition identity  metric=... tol=... time=...s/1s  detail`
std::string format_criterion(const CriterionResult& r);

/// Fixed points of A^j on the torus counted as lattice points of (A^j - I)[0,1)², row by row.
long long lattice_fixed_points(const int a[2][2], int j);

}  // namespace bfzeta

#endif  // BFZETA_ACCEPTANCE_HPP
