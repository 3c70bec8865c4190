#include "bfzeta/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "bfzeta/anosov_orbits.hpp"
#include "bfzeta/bv_gauge.hpp"
#include "bfzeta/bv_observables.hpp"
#include "bfzeta/errors.hpp"
#include "bfzeta/graded_linalg.hpp"
#include "bfzeta/random_complexes.hpp"
#include "bfzeta/ruelle_zeta.hpp"
#include "bfzeta/twisted_complex.hpp"

namespace bfzeta {

namespace {

using std::numbers::pi;
using i64 = long long;

const int kCat[2][2] = {{2, 1}, {1, 1}};
const int kTrace4[2][2] = {{3, 1}, {2, 1}};
const int kTrace5[2][2] = {{3, 2}, {1, 1}};
const int kNegative[2][2] = {{-2, 1}, {1, -1}};
const int kFlip[2][2] = {{3, 1}, {1, 0}};

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

std::pair<i64, i64> solve_range(i64 a, i64 c, i64 lo, i64 hi) {
  constexpr i64 big = std::numeric_limits<i64>::max() / 4;
  if (a == 0) return (lo <= c && c <= hi) ? std::pair{-big, big} : std::pair{i64{1}, i64{0}};
  if (a > 0) return {ceil_div(lo - c, a), floor_div(hi - c, a)};
  return {ceil_div(hi - c, a), floor_div(lo - c, a)};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// Shared sample for criteria 6 and 7.
std::vector<TwistedComplex> self_dual_sample(int& max_cells, int& max_top, int& max_rank) {
  Rng rng(2024);
  std::vector<TwistedComplex> out;
  max_cells = max_top = max_rank = 0;
  for (int i = 0; i < 100; ++i) {
    const ComplexFile f = random_self_dual_complex(rng, 5, 2);
    auto tc = build_from_file(f);
    max_top = std::max(max_top, tc.top_degree());
    max_rank = std::max(max_rank, f.rep.rank);
    for (int k = 0; k <= tc.top_degree(); ++k) max_cells = std::max(max_cells, tc.dim(k) / f.rep.rank);
    out.push_back(std::move(tc));
  }
  return out;
}

std::vector<Matrix> real_rotation(Rng& rng, const TwistedComplex& tc) {
  std::vector<Matrix> out;
  for (int k = 0; k <= tc.top_degree(); ++k) {
    const Eigen::MatrixXd g = random_gaussian(rng, tc.dim(k), tc.dim(k)).real();
    out.push_back((g - g.transpose()).cast<cplx>());
  }
  return out;
}

struct Outcome {
  double metric = 0.0;
  bool ok = false;
  std::string detail;
};

Outcome lefschetz_counts() {
  int mismatches = 0, checked = 0;
  for (const auto* a : {&kCat, &kNegative, &kFlip, &kTrace4, &kTrace5}) {
    const auto t = ToralAutomorphism::from(*a);
    for (int j = 1; j <= 12; ++j, ++checked) {
      if (count_fixed_points(t, j) != BigInt(lattice_fixed_points(*a, j))) ++mismatches;
    }
  }
  return {double(mismatches), mismatches == 0, std::to_string(checked) + " counts, 5 maps, j<=12"};
}

Outcome per_orbit_identity() {
  double worst = 0.0;
  for (const auto* a : {&kCat, &kTrace4, &kTrace5}) {
    const auto s = enumerate_primitive_orbits(ToralAutomorphism::from(*a), 12);
    for (const auto& r : s.records) {
      for (int j = 1; j <= 12; ++j) {
        for (int k = 0; k <= 2; ++k) worst = std::max(worst, double(poincare_data(r.eig1, r.eig2, j, k).identity_residual));
      }
    }
  }
  return {worst, worst < 1e-12, "traces 3,4,5, periods and iterates <=12"};
}

Outcome decomposition() {
  double worst = 0.0;
  for (const auto* a : {&kCat, &kTrace4, &kTrace5}) {
    const auto s = enumerate_primitive_orbits(ToralAutomorphism::from(*a), 30);
    for (double theta : {0.0, pi / 2, pi}) {
      for (cplx lambda : {cplx(2.0), cplx(3.0), cplx(3.0, 2.0)}) {
        worst = std::max(worst, decomposition_residual(s, theta, lambda, 30));
      }
    }
  }
  return {worst, worst < 1e-12, "lambda in {2,3,3+2i}, J=30"};
}

Outcome euler_vs_closed() {
  double worst = 0.0;
  bool within_tail = true;
  const auto t = ToralAutomorphism::from(kCat);
  const auto s = enumerate_primitive_orbits(t, 40);
  for (double theta : {0.0, pi / 2, pi}) {
    for (cplx lambda : {cplx(3.0), cplx(3.0, 1.5), cplx(4.5, -2.0), cplx(6.0)}) {
      const auto closed = closed_form_suspension(t, theta, lambda);
      for (int k = 0; k <= 2; ++k) {
        const auto e = log_zeta_k(s, theta, lambda, k, 40);
        const double err = std::abs(e.value - closed_form_log(closed, k));
        within_tail = within_tail && err <= e.tail_bound;
        worst = std::max(worst, err);
      }
    }
  }
  return {worst, within_tail && worst < 1e-8, within_tail ? "all errors inside the tail bound" : "tail bound exceeded"};
}

Outcome mellin_vs_direct() {
  double worst = 0.0;
  const auto s = enumerate_primitive_orbits(ToralAutomorphism::from(kCat), 40);
  for (double theta : {0.0, pi / 2, pi}) {
    for (cplx lambda : {cplx(3.0), cplx(3.5, 1.0)}) {
      for (int k = 0; k <= 2; ++k) {
        worst = std::max(worst, std::abs(mellin_log_zeta(s, theta, lambda, k, 40).value -
                                         log_zeta_k(s, theta, lambda, k, 40).value));
      }
    }
  }
  return {worst, worst < 1e-8, "18 points, J=40"};
}

Outcome schwarz_vs_torsion() {
  int cells, top, rank;
  const auto sample = self_dual_sample(cells, top, rank);
  double worst = 0.0;
  for (const auto& tc : sample) {
    for (int sigma : {1, -1}) worst = std::max(worst, relative(schwarz_partition(tc, sigma), analytic_torsion(tc, sigma)));
  }
  const bool shape = cells <= 6 && top <= 5 && rank <= 2;
  std::ostringstream os;
  os << "100 complexes, cells/degree<=" << cells << " top<=" << top << " rank<=" << rank;
  return {worst, shape && worst < 1e-10, os.str()};
}

Outcome determinant_relations() {
  int cells, top, rank;
  const auto sample = self_dual_sample(cells, top, rank);
  double worst = 0.0;
  for (const auto& tc : sample) {
    const auto r = det_relations_report(tc);
    worst = std::max({worst, r.max_relation1(), r.max_relation3()});
  }
  int dual = 0;
  for (const auto& tc : {circle_complex(pi), circle_complex(pi / 2), circle_complex(2 * pi / 3), torus_complex(pi / 2, pi / 3),
                         torus_complex(pi, 0.7)}) {
    const auto r = det_relations_report(tc);
    worst = std::max({worst, r.max_relation1(), r.max_relation3()});
    if (r.duality) {
      ++dual;
      worst = std::max(worst, r.max_relation2());
    }
  }
  return {worst, dual == 5 && worst < 1e-10, "relations 1,3 on 100 complexes; 2 on " + std::to_string(dual) + " circles/tori"};
}

Outcome gauge_independence() {
  Rng rng(31);
  double worst = 0.0;
  int contractions = 0;
  for (int c = 0; c < 20; ++c) {
    const auto tc = random_acyclic_complex(rng, 5, 6, c % 2 == 1);
    const auto fs = build_bf_fields(tc);
    for (int sigma : {1, -1}) {
      const double tau = analytic_torsion(tc, sigma);
      worst = std::max(worst, relative(partition_function(fs, metric_gauge(fs), sigma).value, tau));
    }
    for (int i = 0; i < 5; ++i, ++contractions) {
      const auto gs = contraction_gauge(fs, random_normalized_contraction(rng, tc));
      worst = std::max(worst, relative(partition_function(fs, gs, 1).value, analytic_torsion(tc, 1)));
    }
  }
  return {worst, worst < 1e-9, std::to_string(contractions) + " contractions over 20 complexes"};
}

Outcome homotopy_paths() {
  Rng rng(37);
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    const auto tc = random_acyclic_complex(rng, 4, 5, p % 2 == 0);
    const auto fs = build_bf_fields(tc);
    const auto family = unitary_family(random_normalized_contraction(rng, tc), random_antihermitian(rng, tc));
    worst = std::max(worst, homotopy_scan(fs, family, 10).max_deviation);
  }
  return {worst, worst < 1e-8, "20 paths x 10 samples"};
}

Outcome bv_algebra() {
  Rng rng(41);
  bool square_zero = true;
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = random_observable(rng, n, n, kDefaultMaxDegree, 10, std::nullopt);
      square_zero = square_zero && bv_laplacian(bv_laplacian(p)).is_zero();
    }
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const int pf = trial % 2, pg = (trial / 2) % 2;
    const auto f = random_observable(rng, n, n, 2, 4, pf);
    const auto g = random_observable(rng, n, n, 2, 4, pg);
    const cplx sf = pf ? -1.0 : 1.0;
    const auto leibniz = bv_laplacian(f * g) - bv_laplacian(f) * g - f * bv_laplacian(g) * sf - bv_bracket(f, g) * sf;
    const auto derivation =
        bv_laplacian(bv_bracket(f, g)) - bv_bracket(bv_laplacian(f), g) + bv_bracket(f, bv_laplacian(g)) * sf;
    worst = std::max({worst, leibniz.max_abs_coefficient(), derivation.max_abs_coefficient()});
  }
  double worst_integral = 0.0;
  int integrals = 0;
  const std::vector<TwistedComplex> bases = {circle_complex(pi), mapping_torus_complex(kCat, pi), torus_complex(pi, pi)};
  for (std::size_t b = 0; integrals < 50; b = (b + 1) % bases.size()) {
    const auto& tc = bases[b];
    const auto fs = build_bf_fields(tc);
    const auto chart = bf_darboux_chart(fs);
    const auto gs = integrals % 2 ? contraction_gauge(fs, unitary_family(hodge_contraction(tc), real_rotation(rng, tc))(0.6))
                                  : metric_gauge(fs);
    const auto l = lagrangian_chart(chart, gs);
    GaussianWeight w{Matrix::Identity(chart.pairs, chart.pairs), Matrix()};
    if (integrals % 4 >= 2) {
      const Eigen::MatrixXd g = random_gaussian(rng, chart.pairs, chart.pairs).real();
      w.odd = (g - g.transpose()).cast<cplx>();
    }
    const auto h = random_observable(rng, chart.pairs, chart.pairs, 3, 8, integrals % 3 == 0 ? std::nullopt : std::optional<int>(integrals % 2));
    const auto e = gaussian_expectation_report(damped_laplacian(h, w), l, w);
    worst_integral = std::max(worst_integral, std::abs(e.value) / std::max(1.0, e.magnitude));
    ++integrals;
  }
  std::ostringstream os;
  os << "Delta^2=0 " << (square_zero ? "exact" : "FAILED") << ", relations " << fmt(worst) << ", 50 integrals "
     << fmt(worst_integral);
  return {std::max(worst, worst_integral), square_zero && worst < 1e-12 && worst_integral < 1e-10, os.str()};
}

Outcome fried() {
  double worst = 0.0;
  for (const auto* a : {&kCat, &kTrace4, &kTrace5}) {
    const auto t = ToralAutomorphism::from(*a);
    for (double theta : {pi / 2, 2 * pi / 3, pi}) {
      for (int sigma : {1, -1}) worst = std::max(worst, fried_residual(t, theta, sigma));
    }
  }
  const double inverse_zeta = 1.0 / std::abs(closed_form_suspension(ToralAutomorphism::from(kCat), pi, 0.0).full);
  const double anchor = std::max({std::abs(inverse_zeta - 0.8), std::abs(analytic_torsion(mapping_torus_complex(kCat, pi), 1) - 0.8),
                                  std::abs(analytic_torsion(mapping_torus_complex(kCat, pi), -1) - 1.25)});
  worst = std::max(worst, anchor);
  return {worst, worst < 1e-8, "traces 3,4,5; anchor 4/5 vs 5/4 off by " + fmt(anchor)};
}

Outcome flat_det_modes() {
  Rng rng(43);
  std::uniform_real_distribution<double> eig(0.3, 6.0);
  std::uniform_int_distribution<int> dim(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = eig(rng);
    const Matrix p = random_gaussian(rng, n, n) + 3.0 * Matrix::Identity(n, n);
    const Matrix m = p * d * p.inverse();
    const cplx spectral = flat_det(m).value;
    worst = std::max(worst, std::abs(flat_det(m, 0.0, FlatDetMode::Mellin).value - spectral) / std::abs(spectral));
  }
  return {worst, worst < 1e-6, "50 matrices, dim<=8"};
}

struct Definition {
  const char* title;
  double tolerance;
  double time_limit;
  Outcome (*run)();
};

const Definition kDefinitions[kAcceptanceCriteria] = {
    {"Lefschetz counts vs lattice oracle", 0.0, 1.0, lefschetz_counts},
    {"per-orbit trace identity", 1e-12, 1.0, per_orbit_identity},
    {"zeta decomposition identity", 1e-12, 5.0, decomposition},
    {"Euler product vs closed form", 1e-8, 5.0, euler_vs_closed},
    {"Mellin vs direct orbit sum", 1e-8, 10.0, mellin_vs_direct},
    {"Schwarz partition = torsion", 1e-10, 30.0, schwarz_vs_torsion},
    {"determinant relations", 1e-10, 10.0, determinant_relations},
    {"gauge independence of Z", 1e-9, 60.0, gauge_independence},
    {"homotopy invariance of Z", 1e-8, 30.0, homotopy_paths},
    {"BV algebra and exact integrals", 1e-10, 30.0, bv_algebra},
    {"discrete Fried identity", 1e-8, 10.0, fried},
    {"flat det Mellin vs spectral", 1e-6, 10.0, flat_det_modes},
};

}  // namespace

long long lattice_fixed_points(const int a[2][2], int j) {
  i64 p[2][2] = {{1, 0}, {0, 1}};
  for (int step = 0; step < j; ++step) {
    i64 q[2][2];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) q[r][c] = p[r][0] * a[0][c] + p[r][1] * a[1][c];
    }
    std::copy(&q[0][0], &q[0][0] + 4, &p[0][0]);
  }
  const i64 m00 = p[0][0] - 1, m01 = p[0][1], m10 = p[1][0], m11 = p[1][1] - 1;
  const i64 det = m00 * m11 - m01 * m10;
  if (det == 0) throw NotHyperbolic("A^j - I is singular");
  const i64 adj[2][2] = {{m11, -m01}, {-m10, m00}};
  const i64 lo = det > 0 ? 0 : det + 1, hi = det > 0 ? det - 1 : 0;
  const i64 ys[4] = {0, m10, m11, m10 + m11};
  const i64 y_min = *std::min_element(ys, ys + 4), y_max = *std::max_element(ys, ys + 4);
  i64 count = 0;
  for (i64 y = y_min; y <= y_max; ++y) {
    const auto r0 = solve_range(adj[0][0], adj[0][1] * y, lo, hi);
    const auto r1 = solve_range(adj[1][0], adj[1][1] * y, lo, hi);
    const i64 first = std::max(r0.first, r1.first), last = std::min(r0.second, r1.second);
    if (last >= first) count += last - first + 1;
  }
  return count;
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kAcceptanceCriteria) throw ShapeMismatch("criterion id must lie in [1, 12]");
  const Definition& spec = kDefinitions[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = spec.title;
  r.tolerance = spec.tolerance;
  r.time_limit = spec.time_limit;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = spec.run();
  } catch (const std::exception& e) {
    o = {std::numeric_limits<double>::infinity(), false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.metric = o.metric;
  r.detail = o.detail;
  r.passed = o.ok && r.seconds < r.time_limit;
  if (o.ok && !r.passed) r.detail += "; over time limit";
  return r;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << ' ' << std::setw(2) << r.id << "  " << std::left << std::setw(36) << r.title
     << std::right << std::setprecision(3) << " metric=" << r.metric << " tol=" << r.tolerance << " time=" << std::fixed
     << r.seconds << "s/" << std::defaultfloat << r.time_limit << "s  " << r.detail;
  return os.str();
}

}  // namespace bfzeta
