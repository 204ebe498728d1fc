#include "qls/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qls {

MarkovOperator build_operator(const LatinSquare& L) {
  const int n = L.order();
  MarkovOperator op;
  op.n = n;
  op.dim = n * n;
  op.rows.resize(op.dim);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::map<int, int> counts;
      for (int z = 0; z < n; ++z) {
        const int x2 = L.row_of(y, z);
        const int y2 = L.col_of(x, z);
        ++counts[x2 * n + y2];
      }
      op.rows[x * n + y].assign(counts.begin(), counts.end());
    }
  return op;
}

namespace {

Eigen::MatrixXd dense_markov(const MarkovOperator& op) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(op.dim, op.dim);
  for (int r = 0; r < op.dim; ++r)
    for (const auto& [c, cnt] : op.rows[r]) A(r, c) = static_cast<double>(cnt) / op.n;
  return A;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// w = (A - U) v for mean-zero v is A v; re-subtract the mean to stay in the
// zero-mean subspace numerically
void apply_deflated(const MarkovOperator& op, const std::vector<double>& v,
                    std::vector<double>& w) {
  const double inv_n = 1.0 / op.n;
  for (int r = 0; r < op.dim; ++r) {
    double acc = 0;
    for (const auto& [c, cnt] : op.rows[r]) acc += cnt * v[c];
    w[r] = acc * inv_n;
  }
  double mean = 0;
  for (double x : w) mean += x;
  mean /= op.dim;
  for (double& x : w) x -= mean;
}

}  // namespace

SpectralReport rho(const MarkovOperator& op, double tol, int dense_cap, std::uint64_t seed,
                   std::uint64_t max_iters) {
  if (tol <= 0) fail("DeltaOutOfRange", "tol must be positive");
  SpectralReport rep;
  rep.n = op.n;
  if (op.n <= dense_cap) {
    rep.method = "dense";
    Eigen::MatrixXd A = dense_markov(op);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + op.dim);
    Eigen::MatrixXd B = A - Eigen::MatrixXd::Constant(op.dim, op.dim, 1.0 / op.dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esb(B);
    double r = 0;
    for (int i = 0; i < op.dim; ++i) r = std::max(r, std::abs(esb.eigenvalues()[i]));
    rep.rho = r;
    rep.residual = 1e-12;
    return rep;
  }

  rep.method = "iterative";
  std::uint64_t state = seed * 0x2545f4914f6cdd1dULL + 1;
  std::vector<double> v(op.dim), w(op.dim), w2(op.dim);
  for (double& x : v)
    x = static_cast<double>(splitmix64(state) >> 11) / 9007199254740992.0 - 0.5;
  {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= op.dim;
    for (double& x : v) x -= mean;
  }
  double rho_est = 0, resid = 1;
  rep.converged = false;
  for (std::uint64_t it = 0; it < max_iters; ++it) {
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) {  // (A-U)^2 annihilates v: spectral radius 0
      rep.rho = 0;
      rep.residual = 0;
      rep.converged = true;
      return rep;
    }
    for (double& x : v) x /= norm;
    apply_deflated(op, v, w);
    apply_deflated(op, w, w2);  // w2 = B^2 v
    double theta = 0;
    for (int i = 0; i < op.dim; ++i) theta += v[i] * w2[i];
    double r2 = 0;
    for (int i = 0; i < op.dim; ++i) {
      const double d = w2[i] - theta * v[i];
      r2 += d * d;
    }
    r2 = std::sqrt(r2);
    rho_est = std::sqrt(std::max(theta, 0.0));
    resid = rho_est > 1e-12 ? r2 / rho_est : std::sqrt(r2);
    v = w2;
    if (resid <= tol) {
      rep.converged = true;
      break;
    }
  }
  rep.rho = rho_est;
  rep.residual = resid;
  return rep;
}

namespace {

using DenseInt = std::vector<long long>;  // dim x dim row-major

DenseInt dense_counts(const MarkovOperator& op) {
  DenseInt M(static_cast<size_t>(op.dim) * op.dim, 0);
  for (int r = 0; r < op.dim; ++r)
    for (const auto& [c, cnt] : op.rows[r]) M[static_cast<size_t>(r) * op.dim + c] = cnt;
  return M;
}

DenseInt multiply(const DenseInt& a, const DenseInt& b, int dim) {
  DenseInt out(static_cast<size_t>(dim) * dim, 0);
  for (int i = 0; i < dim; ++i)
    for (int t = 0; t < dim; ++t) {
      const long long av = a[static_cast<size_t>(i) * dim + t];
      if (av == 0) continue;
      const long long* brow = &b[static_cast<size_t>(t) * dim];
      long long* orow = &out[static_cast<size_t>(i) * dim];
      for (int j = 0; j < dim; ++j) orow[j] += av * brow[j];
    }
  return out;
}

}  // namespace

Rat trace_power(const MarkovOperator& op, int k) {
  if (k != 2 && k != 4 && k != 6 && k != 8) fail("BudgetExceeded", "k must be 2, 4, 6, or 8");
  if (op.n > 16) fail("BudgetExceeded", "trace_power caps at n = 16");
  const int dim = op.dim;
  const DenseInt m1 = dense_counts(op);
  DenseInt half;  // M^{k/2}
  switch (k / 2) {
    case 1: half = m1; break;
    case 2: half = multiply(m1, m1, dim); break;
    case 3: half = multiply(multiply(m1, m1, dim), m1, dim); break;
    default: {
      const DenseInt m2 = multiply(m1, m1, dim);
      half = multiply(m2, m2, dim);
    }
  }
  // tr M^k = sum_{ij} (M^{k/2})_{ij}^2 by symmetry
  Int tr = 0;
  for (long long v : half) {
    const Int iv(static_cast<long>(v));
    tr += iv * iv;
  }
  Rat out(tr, int_pow(Int(op.n), static_cast<unsigned long>(k)));
  out.canonicalize();
  return out;
}

Int trace6_configurations(const LatinSquare& L) {
  const int n = L.order();
  std::uint64_t count = 0;
  // walk the chain literally: z_1..z_6 free, count returns to the start
  std::vector<int> zs(6, 0);
  for (int x0 = 0; x0 < n; ++x0)
    for (int y0 = 0; y0 < n; ++y0) {
      std::fill(zs.begin(), zs.end(), 0);
      bool more = true;
      while (more) {
        int x = x0, y = y0;
        for (int step = 0; step < 6; ++step) {
          const int z = zs[step];
          const int x2 = L.row_of(y, z);
          const int y2 = L.col_of(x, z);
          x = x2;
          y = y2;
        }
        if (x == x0 && y == y0) ++count;
        more = false;
        for (int i = 5; i >= 0; --i) {
          if (++zs[i] < n) {
            more = true;
            break;
          }
          zs[i] = 0;
        }
      }
    }
  return Int(static_cast<unsigned long>(count));
}

std::vector<std::pair<Rat, long>> predict_group_spectrum(const GroupSpec& spec) {
  long sum_sq = 0;
  for (int d : spec.irrep_dims) sum_sq += static_cast<long>(d) * d;
  if (sum_sq != spec.order) fail("BadIrrepDims", "sum of squared dimensions must equal order");
  std::map<Rat, long> mult;
  long sum_fourth = 0;
  for (int d : spec.irrep_dims) {
    const long d3 = static_cast<long>(d) * d * d;
    mult[Rat(1, d)] += d3 * (d + 1) / 2;
    if (d > 1) mult[Rat(-1, d)] += d3 * (d - 1) / 2;
    sum_fourth += d3 * d;
  }
  const long zeros = static_cast<long>(spec.order) * spec.order - sum_fourth;
  if (zeros > 0) mult[Rat(0)] += zeros;
  std::vector<std::pair<Rat, long>> out(mult.begin(), mult.end());
  return out;
}

SpectrumComparison compare_group_spectrum(const LatinSquare& L, const GroupSpec& spec,
                                          double tol) {
  const MarkovOperator op = build_operator(L);
  const SpectralReport rep = rho(op, 1e-10, 16);
  if (rep.method != "dense") fail("BudgetExceeded", "dense comparison caps at n = 16");
  std::vector<double> predicted;
  for (const auto& [value, count] : predict_group_spectrum(spec))
    for (long i = 0; i < count; ++i) predicted.push_back(rat_double(value));
  std::sort(predicted.begin(), predicted.end());
  SpectrumComparison cmp;
  if (predicted.size() != rep.eigenvalues.size()) {
    cmp.match = false;
    cmp.worst = std::numeric_limits<double>::infinity();
    return cmp;
  }
  for (size_t i = 0; i < predicted.size(); ++i)
    cmp.worst = std::max(cmp.worst, std::abs(predicted[i] - rep.eigenvalues[i]));
  cmp.match = cmp.worst <= tol;
  return cmp;
}

QuasiUseResult quasi_use_check(const LatinSquare& L, const std::vector<int>& A, double tol) {
  const int n = L.order();
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i;
  const TupleFunction one_s = indicator_injective(n, n, full);
  const TupleFunction pa = p_project(one_s, A);
  QuasiUseResult out;
  out.lambda = lambda_eval(L, pa, pa, pa);
  out.norm_sq = norm2sq(pa);
  const SpectralReport rep = rho(build_operator(L), 1e-10);
  out.rho_used = rep.rho + rep.residual;
  out.lhs = std::abs(rat_double(out.lambda));
  out.rhs = std::pow(out.rho_used + tol, static_cast<double>(A.size()) / 2.0) *
            std::pow(rat_double(out.norm_sq), 1.5);
  out.holds = out.lhs <= out.rhs * (1 + 1e-12) + 1e-300;
  return out;
}

}  // namespace qls
