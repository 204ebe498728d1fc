#include "qls/fourier.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace qls {

namespace {

std::size_t checked_pow_size(int n, std::size_t k, std::uint64_t budget) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= static_cast<std::uint64_t>(n);
    if (out > budget) fail("BudgetExceeded", "table of size n^" + std::to_string(k));
  }
  return static_cast<std::size_t>(out);
}

// lexicographic odometer over `digits` base-n counters; returns false after
// the last assignment
bool next_tuple(std::vector<int>& digits, int n) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < n) return true;
    digits[i] = 0;
  }
  return false;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// place values for indexing a function with support `sup` by the digits of a
// tuple over `positions` (sup must be a subset of positions)
std::vector<std::pair<int, std::size_t>> places_in(const std::vector<int>& sup,
                                                   const std::vector<int>& positions, int n) {
  std::vector<std::pair<int, std::size_t>> out;  // (digit index, place value)
  std::size_t place = 1;
  for (auto it = sup.rbegin(); it != sup.rend(); ++it) {
    const auto pos = std::lower_bound(positions.begin(), positions.end(), *it);
    if (pos == positions.end() || *pos != *it) fail("Internal", "support not inside positions");
    out.emplace_back(static_cast<int>(pos - positions.begin()), place);
    place *= static_cast<std::size_t>(n);
  }
  return out;
}

std::size_t index_from(const std::vector<std::pair<int, std::size_t>>& places,
                       const std::vector<int>& digits) {
  std::size_t idx = 0;
  for (const auto& [d, p] : places) idx += static_cast<std::size_t>(digits[d]) * p;
  return idx;
}

}  // namespace

TupleFunction::TupleFunction(int n, int m, std::vector<int> support)
    : n_(n), m_(m), support_(std::move(support)) {
  if (n < 1) fail("BudgetExceeded", "alphabet must be nonempty");
  std::sort(support_.begin(), support_.end());
  for (size_t i = 0; i + 1 < support_.size(); ++i)
    if (support_[i] == support_[i + 1]) fail("Internal", "duplicate support index");
  if (!support_.empty() && (support_.front() < 0 || support_.back() >= m))
    fail("Internal", "support index out of range");
  values_.assign(checked_pow_size(n, support_.size(), 10'000'000), Rat(0));
}

std::size_t TupleFunction::index_of(const std::vector<int>& x) const {
  std::size_t idx = 0;
  for (int a : support_) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x[a]);
  return idx;
}

TupleFunction TupleFunction::constant(int n, int m, const Rat& value) {
  TupleFunction f(n, m, {});
  f.values()[0] = value;
  return f;
}

TupleFunction indicator_injective(int n, int m, const std::vector<int>& A, std::uint64_t budget) {
  TupleFunction f(n, m, A);
  const int k = static_cast<int>(f.support().size());
  checked_pow_size(n, k, budget);
  std::vector<int> digits(k, 0);
  std::size_t idx = 0;
  do {
    bool inj = true;
    for (int i = 0; i < k && inj; ++i)
      for (int j = i + 1; j < k; ++j)
        if (digits[i] == digits[j]) {
          inj = false;
          break;
        }
    f.values()[idx++] = inj ? 1 : 0;
  } while (next_tuple(digits, n));
  return f;
}

TupleFunction measurability_indicator(int n, int m, const Partition& pi,
                                      const std::vector<int>& support) {
  TupleFunction f(n, m, support);
  const auto& sup = f.support();
  // positions of each nonsingleton cell inside the support
  std::vector<std::vector<int>> cells;
  for (const auto& cell : pi.cells()) {
    if (cell.size() < 2) continue;
    std::vector<int> local;
    for (int p : cell) {
      const auto it = std::lower_bound(sup.begin(), sup.end(), p);
      if (it == sup.end() || *it != p)
        fail("GroundMismatch", "partition support not inside function support");
      local.push_back(static_cast<int>(it - sup.begin()));
    }
    cells.push_back(std::move(local));
  }
  std::vector<int> digits(sup.size(), 0);
  std::size_t idx = 0;
  do {
    bool ok = true;
    for (const auto& cell : cells) {
      for (size_t i = 1; i < cell.size() && ok; ++i)
        if (digits[cell[i]] != digits[cell[0]]) ok = false;
      if (!ok) break;
    }
    f.values()[idx++] = ok ? 1 : 0;
  } while (next_tuple(digits, n));
  return f;
}

TupleFunction q_project(const TupleFunction& f, const std::vector<int>& B) {
  std::vector<int> Bs = B;
  std::sort(Bs.begin(), Bs.end());
  std::vector<int> keep;
  std::set_intersection(f.support().begin(), f.support().end(), Bs.begin(), Bs.end(),
                        std::back_inserter(keep));
  TupleFunction out(f.n(), f.m(), keep);
  const auto places = places_in(keep, f.support(), f.n());
  std::vector<int> digits(f.support().size(), 0);
  std::size_t idx = 0;
  do {
    out.values()[index_from(places, digits)] += f.values()[idx++];
  } while (next_tuple(digits, f.n()));
  const unsigned long averaged = static_cast<unsigned long>(f.support().size() - keep.size());
  const Rat denom(int_pow(Int(f.n()), averaged));
  for (Rat& v : out.values()) v /= denom;
  return out;
}

TupleFunction p_project(const TupleFunction& f, const std::vector<int>& A) {
  std::vector<int> As = A;
  std::sort(As.begin(), As.end());
  if (!std::includes(f.support().begin(), f.support().end(), As.begin(), As.end()))
    fail("GroundMismatch", "p_project needs A inside the support of f");
  const int k = static_cast<int>(As.size());
  TupleFunction out(f.n(), f.m(), As);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> B;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) B.push_back(As[i]);
    const TupleFunction qb = q_project(f, B);
    const int sign = ((k - static_cast<int>(B.size())) % 2 == 0) ? 1 : -1;
    const auto places = places_in(qb.support(), As, f.n());
    std::vector<int> digits(As.size(), 0);
    std::size_t idx = 0;
    do {
      const Rat& v = qb.values()[index_from(places, digits)];
      if (sign > 0)
        out.values()[idx] += v;
      else
        out.values()[idx] -= v;
      ++idx;
    } while (next_tuple(digits, f.n()));
  }
  return out;
}

Rat mean(const TupleFunction& f) {
  Rat sum = 0;
  for (const Rat& v : f.values()) sum += v;
  return sum / Rat(int_pow(Int(f.n()), static_cast<unsigned long>(f.support().size())));
}

Rat inner(const TupleFunction& f, const TupleFunction& g) {
  if (f.n() != g.n()) fail("GroundMismatch", "inner: alphabet mismatch");
  const std::vector<int> U = sorted_union(f.support(), g.support());
  const auto pf = places_in(f.support(), U, f.n());
  const auto pg = places_in(g.support(), U, f.n());
  std::vector<int> digits(U.size(), 0);
  Rat sum = 0;
  do {
    sum += f.values()[index_from(pf, digits)] * g.values()[index_from(pg, digits)];
  } while (next_tuple(digits, f.n()));
  return sum / Rat(int_pow(Int(f.n()), static_cast<unsigned long>(U.size())));
}

Rat norm2sq(const TupleFunction& f) { return inner(f, f); }

namespace {

TupleFunction combine(const TupleFunction& f, const TupleFunction& g, int sign) {
  if (f.n() != g.n() || f.m() != g.m()) fail("GroundMismatch", "combine");
  const std::vector<int> U = sorted_union(f.support(), g.support());
  TupleFunction out(f.n(), f.m(), U);
  const auto pf = places_in(f.support(), U, f.n());
  const auto pg = places_in(g.support(), U, f.n());
  std::vector<int> digits(U.size(), 0);
  std::size_t idx = 0;
  do {
    out.values()[idx++] = f.values()[index_from(pf, digits)] +
                          Rat(sign) * g.values()[index_from(pg, digits)];
  } while (next_tuple(digits, f.n()));
  return out;
}

}  // namespace

TupleFunction add(const TupleFunction& f, const TupleFunction& g) { return combine(f, g, 1); }
TupleFunction subtract(const TupleFunction& f, const TupleFunction& g) {
  return combine(f, g, -1);
}

UPoly UPoly::one() { return UPoly{{Rat(1)}}; }

UPoly UPoly::linear(const Rat& c0, const Rat& c1) {
  UPoly p{{c0, c1}};
  while (!p.coeff.empty() && p.coeff.back() == 0) p.coeff.pop_back();
  return p;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (coeff.empty() || o.coeff.empty()) return UPoly{};
  UPoly out;
  out.coeff.assign(coeff.size() + o.coeff.size() - 1, Rat(0));
  for (size_t i = 0; i < coeff.size(); ++i)
    for (size_t j = 0; j < o.coeff.size(); ++j) out.coeff[i + j] += coeff[i] * o.coeff[j];
  while (!out.coeff.empty() && out.coeff.back() == 0) out.coeff.pop_back();
  return out;
}

Rat u_apply(const UPoly& p, int n) {
  Rat out = 0;
  for (size_t k = 0; k < p.coeff.size(); ++k) {
    if (static_cast<int>(k) > n) break;  // U(z^k) = 0 beyond degree n
    if (p.coeff[k] == 0) continue;
    Rat term(int_pow(Int(n), k), falling(Int(n), k));
    term.canonicalize();
    out += p.coeff[k] * term;
  }
  return out;
}

namespace {

Rat density(int n) {
  Rat d(factorial(static_cast<unsigned long>(n)), int_pow(Int(n), static_cast<unsigned long>(n)));
  d.canonicalize();
  return d;
}

UPoly kernel_poly(const Partition& pi) {
  UPoly p = UPoly::one();
  for (const auto& cell : pi.cells())
    p = p * UPoly::linear(Rat(-1), Rat(static_cast<long>(cell.size())));
  return p;
}

}  // namespace

Rat pa1s_kernel_formula(int n, const std::vector<int>& x_on_A) {
  std::vector<int> all(x_on_A.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  const Partition pi = kernel(x_on_A, all);
  const Rat u = u_apply(kernel_poly(pi), n);
  const int sign = (pi.rank() % 2 == 0) ? 1 : -1;
  return Rat(sign) * density(n) * u;
}

SparsevalResult sparseval(int n, const std::vector<int>& A) {
  if (static_cast<int>(A.size()) > n) fail("BudgetExceeded", "sparseval needs |A| <= n");
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i;
  const TupleFunction one_s = indicator_injective(n, n, full);
  const TupleFunction pa = p_project(one_s, A);
  SparsevalResult out;
  out.lhs = norm2sq(pa);
  UPoly zm1 = UPoly::one();
  for (size_t i = 0; i < A.size(); ++i) zm1 = zm1 * UPoly::linear(Rat(-1), Rat(1));
  out.rhs = density(n) * density(n) * u_apply(zm1, n);
  out.equal = (out.lhs == out.rhs);
  return out;
}

std::vector<PositivityRow> u_positivity_scan(int n_max, int m_max) {
  std::vector<PositivityRow> out;
  for (int n = 1; n <= n_max; ++n) {
    UPoly zm1 = UPoly::one();
    for (int m = 0; m <= std::min(n, m_max); ++m) {
      PositivityRow row;
      row.n = n;
      row.m = m;
      row.value = u_apply(zm1, n);
      if (row.value < 0)
        fail("Internal", "U((z-1)^m) negative at n=" + std::to_string(n) +
                             ", m=" + std::to_string(m));
      row.ratio = m == 0 ? rat_double(row.value)
                         : rat_double(row.value) *
                               std::pow(static_cast<double>(n) / m, m / 2.0);
      out.push_back(row);
      zm1 = zm1 * UPoly::linear(Rat(-1), Rat(1));
    }
  }
  return out;
}

SignCheckResult sign_check(int n, const std::vector<int>& A) {
  SignCheckResult out{true, {}};
  const int k = static_cast<int>(A.size());
  std::vector<int> digits(k, 0);
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  do {
    const Rat v = pa1s_kernel_formula(n, digits);
    const int expected = (kernel(digits, all).rank() % 2 == 0) ? 1 : -1;
    if (v == 0) {
      out.zero_points.push_back(digits);
    } else if ((v > 0 ? 1 : -1) != expected) {
      out.holds = false;
    }
  } while (next_tuple(digits, n));
  return out;
}

namespace {

// smallest-effort rational upper bound on sqrt(d): Newton from above with
// denominators clamped to 2^64
Rat sqrt_upper(const Rat& d) {
  if (d < 0) fail("DeltaOutOfRange", "sqrt of a negative");
  if (d == 0) return 0;
  const Int clamp = Int(1) << 64;
  Rat x = (d + 1) / 2;  // AM-GM: >= sqrt(d)
  for (int i = 0; i < 48; ++i) {
    x = (x + d / x) / 2;
    Int num = x.get_num() * clamp;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    x = Rat(q, clamp);
    x.canonicalize();
  }
  return x;
}

// rational upper bound on e^u for u >= 0: truncated series plus a geometric
// tail bound
Rat exp_upper(const Rat& u) {
  if (u < 0) fail("DeltaOutOfRange", "exp_upper needs u >= 0");
  const long J = 32 + 4 * static_cast<long>(std::ceil(rat_double(u)));
  Rat sum = 0, term = 1;
  for (long j = 0; j <= J; ++j) {
    sum += term;
    term *= u / Rat(j + 1);
  }
  // term now = u^{J+1}/(J+1)!; tail <= term / (1 - u/(J+2))
  const Rat q = u / Rat(J + 2);
  if (q >= 1) fail("Internal", "exp_upper truncation too short");
  return sum + term / (1 - q);
}

}  // namespace

MajorantReport majorant_check(int n, int m, const Rat& C) {
  Rat delta2 = C * Rat(m) / Rat(n);
  if (delta2 > 1 || (m > 0 && delta2 <= 0)) fail("DeltaOutOfRange", "need 0 < Cm/n <= 1");
  MajorantReport rep;
  const Rat delta_up = sqrt_upper(delta2);
  rep.exp_upper = exp_upper(delta_up * Rat(m));
  const Rat d = density(n);
  const Rat rhs_base2 = d * d * rep.exp_upper * rep.exp_upper;
  const double delta_d = std::sqrt(rat_double(delta2));

  std::vector<int> digits(m, 0);
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  do {
    ++rep.points;
    const Partition pi = kernel(digits, all);
    const Rat v = pa1s_kernel_formula(n, digits);
    int singles = 0;
    Int big_part = 1;
    for (const auto& cell : pi.cells()) {
      if (cell.size() == 1)
        ++singles;
      else
        big_part *= static_cast<long>(cell.size() - 1);
    }
    // |v| <= D e^{dm} delta^singles K  <=>  v^2 <= D^2 E^2 (delta^2)^singles K^2
    const Rat rhs2 = rhs_base2 * rat_pow(delta2, singles) * Rat(big_part * big_part);
    if (v * v > rhs2) ++rep.violations;
    const double sig = std::pow(delta_d, singles) * big_part.get_d();
    const double denom = rat_double(d) * std::exp(delta_d * m) * sig;
    if (denom > 0)
      rep.max_ratio = std::max(rep.max_ratio, std::abs(rat_double(v)) / denom);
  } while (m > 0 && next_tuple(digits, n));
  return rep;
}

std::pair<TupleFunction, TupleFunction> sharp_flat_split(int n, const std::vector<int>& A,
                                                         const Rat& eps, Rat* flat_l1) {
  const int k = static_cast<int>(A.size());
  const int m_carrier = A.empty() ? 0 : A.back() + 1;
  TupleFunction sharp(n, m_carrier, A);
  TupleFunction flat(n, m_carrier, A);
  std::vector<int> digits(k, 0);
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  Rat l1 = 0;
  std::size_t idx = 0;
  bool more = true;
  while (more) {
    const Partition pi = kernel(digits, all);
    Rat r = pa1s_kernel_formula(n, digits);
    if (r < 0) r = -r;
    if (Rat(pi.r3plus()) < eps * Rat(k)) {
      sharp.values()[idx] = r;
    } else {
      flat.values()[idx] = r;
      l1 += r;
    }
    ++idx;
    more = (k > 0) && next_tuple(digits, n);
  }
  if (flat_l1 != nullptr)
    *flat_l1 = l1 / Rat(int_pow(Int(n), static_cast<unsigned long>(k)));
  return {std::move(sharp), std::move(flat)};
}

namespace {

struct ScaledFunction {
  std::vector<Int> ints;
  Int denom = 1;
  Int max_abs = 0;
};

ScaledFunction scale_to_ints(const TupleFunction& f) {
  ScaledFunction out;
  for (const Rat& v : f.values()) {
    Int l;
    mpz_lcm(l.get_mpz_t(), out.denom.get_mpz_t(), v.get_den().get_mpz_t());
    out.denom = l;
  }
  out.ints.reserve(f.values().size());
  for (const Rat& v : f.values()) {
    Int scaled = v.get_num() * (out.denom / v.get_den());
    Int a = abs(scaled);
    if (a > out.max_abs) out.max_abs = a;
    out.ints.push_back(std::move(scaled));
  }
  return out;
}

Int int128_to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  Int out = Int(static_cast<unsigned long>(u >> 64));
  out <<= 64;
  out += Int(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  return neg ? -out : out;
}

}  // namespace

std::string tuple_function_to_json(const TupleFunction& f) {
  nlohmann::ordered_json j;
  j["n"] = f.n();
  j["m"] = f.m();
  j["A"] = f.support();
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (const Rat& v : f.values()) vals.push_back(rat_str(v));
  j["values"] = std::move(vals);
  return j.dump();
}

TupleFunction tuple_function_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TupleFunction f(j.at("n").get<int>(), j.at("m").get<int>(),
                  j.at("A").get<std::vector<int>>());
  const auto& vals = j.at("values");
  if (vals.size() != f.values().size())
    fail("BadRational", "value table has the wrong size");
  for (size_t i = 0; i < f.values().size(); ++i)
    f.values()[i] = rat_parse(vals[i].get<std::string>());
  return f;
}

Rat lambda_eval(const LatinSquare& L, const TupleFunction& f, const TupleFunction& g,
                const TupleFunction& h, std::uint64_t budget) {
  const int n = L.order();
  if (f.n() != n || g.n() != n || h.n() != n) fail("GroundMismatch", "alphabet mismatch");
  if (f.m() != g.m() || g.m() != h.m()) fail("GroundMismatch", "tuple length mismatch");
  const std::vector<int> U = sorted_union(sorted_union(f.support(), g.support()), h.support());
  const int mu = static_cast<int>(U.size());
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * mu; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total > budget) fail("BudgetExceeded", "lambda_eval needs n^{2|U|} <= budget");
  }

  const ScaledFunction sf = scale_to_ints(f);
  const ScaledFunction sg = scale_to_ints(g);
  const ScaledFunction sh = scale_to_ints(h);

  const auto pf = places_in(f.support(), U, n);
  const auto pg = places_in(g.support(), U, n);
  const auto ph = places_in(h.support(), U, n);

  const Int fits_bound = sf.max_abs * sg.max_abs * sh.max_abs * Int(static_cast<unsigned long>(total));
  const auto small = [](const Int& v) {
    return v == 0 || mpz_sizeinbase(v.get_mpz_t(), 2) <= 62;
  };
  const bool fast = small(sf.max_abs) && small(sg.max_abs) && small(sh.max_abs) &&
                    mpz_sizeinbase(fits_bound.get_mpz_t(), 2) <= 120;

  std::vector<int> x(mu, 0), y(mu, 0), z(mu, 0);
  Int acc_big = 0;
  __int128 acc = 0;
  bool more_x = true;
  while (more_x) {
    const std::size_t fi = index_from(pf, x);
    std::fill(y.begin(), y.end(), 0);
    bool more_y = true;
    while (more_y) {
      for (int i = 0; i < mu; ++i) z[i] = L.sym_at(x[i], y[i]);
      const std::size_t gi = index_from(pg, y);
      const std::size_t hi = index_from(ph, z);
      if (fast) {
        acc += static_cast<__int128>(sf.ints[fi].get_si()) * sg.ints[gi].get_si() *
               sh.ints[hi].get_si();
      } else {
        acc_big += sf.ints[fi] * sg.ints[gi] * sh.ints[hi];
      }
      more_y = mu > 0 && next_tuple(y, n);
    }
    more_x = mu > 0 && next_tuple(x, n);
  }
  const Int numerator = fast ? int128_to_mpz(acc) : acc_big;
  Rat out(numerator, sf.denom * sg.denom * sh.denom *
                         int_pow(Int(n), 2ul * static_cast<unsigned long>(mu)));
  out.canonicalize();
  return out;
}

}  // namespace qls
