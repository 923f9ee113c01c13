#include "foliage/modular.hpp"

#include "foliage/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace foliage {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimePowerRing::PrimePowerRing(std::int64_t p, int level) : p_(p), level_(level), modulus_(1) {
  if (!is_prime(p)) throw Error(Errc::InvalidPrime, std::to_string(p) + " is not prime");
  if (level < 1) throw Error(Errc::WrongLevel, "truncation level must be >= 1");
  powers_.reserve(static_cast<std::size_t>(level) + 1);
  powers_.push_back(1);
  for (int e = 1; e <= level; ++e) {
    if (modulus_ > kMaxModulus / p) {
      throw Error(Errc::BoundExceeded, std::to_string(p) + "^" + std::to_string(level) +
                                           " exceeds the supported modulus");
    }
    modulus_ *= p;
    powers_.push_back(modulus_);
  }
}

int PrimePowerRing::valuation(std::int64_t x) const noexcept {
  x = reduce(x);
  if (x == 0) return level_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

std::int64_t PrimePowerRing::inverse_unit(std::int64_t u) const {
  std::int64_t a = reduce(u), m = modulus_;
  std::int64_t x0 = 1, x1 = 0;
  while (m != 0) {
    const std::int64_t q = a / m;
    std::tie(a, m) = std::pair{m, a - q * m};
    std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
  }
  if (a != 1) throw Error(Errc::InvariantViolation, "inverse of a non-unit residue requested");
  return reduce(x0);
}

ModMatrix PrimePowerRing::reduce(const ModMatrix& m) const {
  return m.unaryExpr([this](std::int64_t x) { return reduce(x); });
}

ModMatrix PrimePowerRing::multiply(const ModMatrix& a, const ModMatrix& b) const {
  ModMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += static_cast<__int128>(a(i, k)) * b(k, j);
      out(i, j) = static_cast<std::int64_t>(acc % modulus_);
    }
  }
  return reduce(out);
}

namespace {

void axpy_row(const PrimePowerRing& ring, ModRow& target, std::int64_t factor, const ModRow& source) {
  if (factor == 0) return;
  for (Eigen::Index j = 0; j < target.cols(); ++j) {
    target(j) = ring.reduce(target(j) - ring.mul(factor, source(j)));
  }
}

ModRow scaled(const PrimePowerRing& ring, const ModRow& row, std::int64_t factor) {
  return row.unaryExpr([&](std::int64_t x) { return ring.mul(x, factor); });
}

ModMatrix stack(const std::vector<ModRow>& rows, Eigen::Index cols) {
  ModMatrix out(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i];
  return out;
}

}  // namespace

ModMatrix howell_form(const PrimePowerRing& ring, const ModMatrix& rows) {
  const Eigen::Index cols = rows.cols();
  std::vector<ModRow> pool;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    ModRow r = ring.reduce(ModMatrix(rows.row(i)));
    if (!r.isZero()) pool.push_back(std::move(r));
  }

  std::vector<ModRow> echelon;
  std::vector<std::pair<Eigen::Index, int>> pivots;  // (column, valuation)
  for (Eigen::Index c = 0; c < cols && !pool.empty(); ++c) {
    std::size_t best = pool.size();
    int best_v = ring.level();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int v = ring.valuation(pool[i](c));
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == pool.size()) continue;

    ModRow pivot = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const std::int64_t unit = pivot(c) / ring.power_of_p(best_v);
    pivot = scaled(ring, pivot, ring.inverse_unit(unit));

    for (auto& r : pool) axpy_row(ring, r, r(c) / ring.power_of_p(best_v), pivot);
    if (best_v > 0) pool.push_back(scaled(ring, pivot, ring.power_of_p(ring.level() - best_v)));
    std::erase_if(pool, [](const ModRow& r) { return r.isZero(); });

    echelon.push_back(std::move(pivot));
    pivots.emplace_back(c, best_v);
  }

  for (std::size_t i = 0; i < echelon.size(); ++i) {
    const auto [c, v] = pivots[i];
    for (std::size_t j = 0; j < i; ++j) {
      axpy_row(ring, echelon[j], echelon[j](c) / ring.power_of_p(v), echelon[i]);
    }
  }
  return stack(echelon, cols);
}

ModMatrix kernel_basis(const PrimePowerRing& ring, const ModMatrix& a) {
  const Eigen::Index q = a.rows(), k = a.cols();
  ModMatrix augmented = ModMatrix::Zero(k, q + k);
  augmented.leftCols(q) = a.transpose();
  augmented.rightCols(k) = ModMatrix::Identity(k, k);
  const ModMatrix h = howell_form(ring, augmented);

  std::vector<ModRow> solutions;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (h.row(i).leftCols(q).isZero()) solutions.push_back(h.row(i).rightCols(k));
  }
  return howell_form(ring, stack(solutions, k));
}

bool span_contains(const PrimePowerRing& ring, const ModMatrix& howell, const ModRow& v) {
  ModRow rest = ring.reduce(ModMatrix(v));
  for (Eigen::Index i = 0; i < howell.rows(); ++i) {
    Eigen::Index c = 0;
    while (howell(i, c) == 0) ++c;
    const int e = ring.valuation(howell(i, c));
    if (ring.valuation(rest(c)) < e) return false;
    const ModRow row = howell.row(i);
    axpy_row(ring, rest, rest(c) / ring.power_of_p(e), row);
  }
  return rest.isZero();
}

int span_order_exponent(const PrimePowerRing& ring, const ModMatrix& howell) {
  int total = 0;
  for (Eigen::Index i = 0; i < howell.rows(); ++i) {
    Eigen::Index c = 0;
    while (howell(i, c) == 0) ++c;
    total += ring.level() - ring.valuation(howell(i, c));
  }
  return total;
}

std::vector<int> smith_valuations(const PrimePowerRing& ring, const ModMatrix& input) {
  ModMatrix a = ring.reduce(input);
  std::vector<int> vals;
  const Eigen::Index n = std::min(a.rows(), a.cols());
  for (Eigen::Index t = 0; t < n; ++t) {
    Eigen::Index bi = -1, bj = -1;
    int best = ring.level();
    for (Eigen::Index i = t; i < a.rows(); ++i) {
      for (Eigen::Index j = t; j < a.cols(); ++j) {
        const int v = ring.valuation(a(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    a.row(t).swap(a.row(bi));
    a.col(t).swap(a.col(bj));
    const std::int64_t pv = ring.power_of_p(best);
    const std::int64_t inv = ring.inverse_unit(a(t, t) / pv);
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(t, j) = ring.mul(a(t, j), inv);
    for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
      const std::int64_t f = a(i, t) / pv;
      for (Eigen::Index j = t; j < a.cols(); ++j) a(i, j) = ring.reduce(a(i, j) - ring.mul(f, a(t, j)));
    }
    for (Eigen::Index j = t + 1; j < a.cols(); ++j) a(t, j) = 0;
    vals.push_back(best);
  }
  return vals;
}

int kernel_order_exponent(const PrimePowerRing& ring, const ModMatrix& a) {
  const std::vector<int> vals = smith_valuations(ring, a);
  int total = static_cast<int>(a.cols() - static_cast<Eigen::Index>(vals.size())) * ring.level();
  for (int v : vals) total += v;
  return total;
}

}  // namespace foliage
