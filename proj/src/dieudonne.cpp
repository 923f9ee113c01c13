#include "foliage/dieudonne.hpp"

#include "foliage/errors.hpp"

#include <algorithm>
#include <string>

namespace foliage {

TruncatedDieudonneModule::TruncatedDieudonneModule(const PrimePowerRing& ring, ModMatrix frobenius,
                                                   ModMatrix verschiebung, NewtonPolygon label)
    : p_(ring.prime()),
      level_(ring.level()),
      frobenius_(ring.reduce(frobenius)),
      verschiebung_(ring.reduce(verschiebung)),
      label_(std::move(label)) {
  if (frobenius_.rows() != frobenius_.cols() || verschiebung_.rows() != frobenius_.rows() ||
      verschiebung_.cols() != frobenius_.cols()) {
    throw Error(Errc::InvariantViolation, "F and V must be square of the same size");
  }
}

ModMatrix uniformizer_power(int height, int k, std::int64_t p) {
  ModMatrix out = ModMatrix::Zero(height, height);
  for (int i = 0; i < height; ++i) {
    std::int64_t coeff = 1;
    for (int w = 0; w < (i + k) / height; ++w) coeff *= p;
    out((i + k) % height, i) = coeff;
  }
  return out;
}

TruncatedDieudonneModule minimal_module(int m, int n, int level, std::int64_t p) {
  const SlopePair pair(m, n);
  const PrimePowerRing ring(p, level);
  const int h = pair.height();
  const ModMatrix f = ring.reduce(uniformizer_power(h, n, p));
  const ModMatrix v = ring.reduce(uniformizer_power(h, m, p));

  const ModMatrix p_identity = ring.reduce(ModMatrix(ModMatrix::Identity(h, h) * p));
  auto power = [&](const ModMatrix& base, int e) {
    ModMatrix acc = ModMatrix::Identity(h, h);
    for (int i = 0; i < e; ++i) acc = ring.multiply(acc, base);
    return acc;
  };
  if (ring.multiply(f, v) != p_identity || ring.multiply(v, f) != p_identity || power(f, m) != power(v, n)) {
    throw Error(Errc::InvariantViolation, "H_{" + std::to_string(m) + "," + std::to_string(n) +
                                              "} violates FV = VF = p or F^m = V^n");
  }
  return TruncatedDieudonneModule(ring, f, v, NewtonPolygon::from_pairs({{m, n, 1}}));
}

TruncatedDieudonneModule minimal_module(const NewtonPolygon& beta, int level, std::int64_t p) {
  std::vector<TruncatedDieudonneModule> summands;
  for (const auto& [pair, r] : beta.parts()) {
    const auto simple = minimal_module(pair.m(), pair.n(), level, p);
    summands.insert(summands.end(), static_cast<std::size_t>(r), simple);
  }
  if (summands.empty()) return {};
  return direct_sum(summands);
}

TruncatedDieudonneModule direct_sum(std::span<const TruncatedDieudonneModule> modules) {
  if (modules.empty()) return {};
  const auto p = modules.front().prime();
  const int level = modules.front().level();
  Eigen::Index total = 0;
  std::vector<PairMultiplicity> parts;
  for (const auto& mod : modules) {
    if (mod.prime() != p || mod.level() != level) {
      throw Error(Errc::MixedPrimeOrLevel, "direct sum of modules over different Z/p^a");
    }
    total += mod.rank();
    for (const auto& [pair, r] : mod.label().parts()) parts.push_back({pair.m(), pair.n(), r});
  }
  ModMatrix f = ModMatrix::Zero(total, total);
  ModMatrix v = ModMatrix::Zero(total, total);
  Eigen::Index offset = 0;
  for (const auto& mod : modules) {
    const Eigen::Index h = mod.rank();
    f.block(offset, offset, h, h) = mod.frobenius();
    v.block(offset, offset, h, h) = mod.verschiebung();
    offset += h;
  }
  NewtonPolygon label = parts.empty() ? NewtonPolygon() : NewtonPolygon::from_pairs(parts);
  return TruncatedDieudonneModule(PrimePowerRing(p, level), f, v, std::move(label));
}

RationalMatrix frobenius_lift(const NewtonPolygon& beta, std::int64_t p) {
  const int h = beta.height();
  RationalMatrix out = RationalMatrix::Zero(h, h);
  int offset = 0;
  for (const auto& [pair, r] : beta.parts()) {
    const ModMatrix block = uniformizer_power(pair.height(), pair.n(), p);
    for (int copy = 0; copy < r; ++copy) {
      for (int i = 0; i < pair.height(); ++i) {
        for (int j = 0; j < pair.height(); ++j) out(offset + i, offset + j) = Rational(block(i, j));
      }
      offset += pair.height();
    }
  }
  return out;
}

ModRow flatten(const ModMatrix& m) {
  ModRow out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  }
  return out;
}

ModMatrix unflatten(const ModRow& v, Eigen::Index rows, Eigen::Index cols) {
  ModMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  }
  return out;
}

int HomGroup::order_exponent() const {
  int total = 0;
  for (int e : elementary_divisor_exponents) total += e;
  return total;
}

std::vector<ModMatrix> HomGroup::generators() const {
  std::vector<ModMatrix> out;
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    out.push_back(unflatten(basis.row(i), target_rank, source_rank));
  }
  return out;
}

namespace {

// Rows: entries of (phi A1 - A2 phi) as linear forms in the row-major entries of phi.
void append_intertwining(const PrimePowerRing& ring, const ModMatrix& a1, const ModMatrix& a2,
                         Eigen::Index row0, ModMatrix& system) {
  const Eigen::Index h1 = a1.rows(), h2 = a2.rows();
  for (Eigen::Index i = 0; i < h2; ++i) {
    for (Eigen::Index j = 0; j < h1; ++j) {
      const Eigen::Index eq = row0 + i * h1 + j;
      for (Eigen::Index k = 0; k < h1; ++k) {
        system(eq, i * h1 + k) = ring.reduce(system(eq, i * h1 + k) + a1(k, j));
      }
      for (Eigen::Index k = 0; k < h2; ++k) {
        system(eq, k * h1 + j) = ring.reduce(system(eq, k * h1 + j) - a2(i, k));
      }
    }
  }
}

}  // namespace

HomGroup hom_group(const TruncatedDieudonneModule& source, const TruncatedDieudonneModule& target) {
  if (source.prime() != target.prime() || source.level() != target.level()) {
    throw Error(Errc::MixedPrimeOrLevel, "Hom between modules over different Z/p^a");
  }
  const PrimePowerRing ring = source.ring();
  const Eigen::Index h1 = source.rank(), h2 = target.rank();
  const Eigen::Index unknowns = h1 * h2;
  HomGroup out{ring, h1, h2, ModMatrix(0, unknowns), {}};
  if (unknowns == 0) return out;

  ModMatrix system = ModMatrix::Zero(2 * unknowns, unknowns);
  append_intertwining(ring, source.frobenius(), target.frobenius(), 0, system);
  append_intertwining(ring, source.verschiebung(), target.verschiebung(), unknowns, system);
  out.basis = kernel_basis(ring, system);

  for (int v : smith_valuations(ring, out.basis)) out.elementary_divisor_exponents.push_back(ring.level() - v);
  std::sort(out.elementary_divisor_exponents.begin(), out.elementary_divisor_exponents.end());
  return out;
}

RestrictionChain restriction_image_chain(const NewtonPolygon& beta, std::int64_t p, int n, int max_level,
                                         int level_bound) {
  if (n < 1 || max_level <= n || max_level > level_bound) {
    throw Error(Errc::BoundExceeded, "need 1 <= n < N_max <= " + std::to_string(level_bound) + ", got n = " +
                                         std::to_string(n) + ", N_max = " + std::to_string(max_level));
  }
  const PrimePowerRing base(p, n);
  PrimePowerRing(p, max_level);  // rejects moduli that do not fit before doing any work

  RestrictionChain chain{n, max_level, {}, max_level};
  for (int level = n; level <= max_level; ++level) {
    const auto module = minimal_module(beta, level, p);
    const HomGroup end = hom_group(module, module);
    chain.images.push_back(howell_form(base, base.reduce(end.basis)));
  }
  while (chain.stabilization_index > n &&
         chain.images[static_cast<std::size_t>(chain.stabilization_index - 1 - n)] == chain.images.back()) {
    --chain.stabilization_index;
  }
  return chain;
}

namespace {

// Slopes of the lower convex hull of integer points sorted by abscissa.
std::vector<Rational> lower_hull_slopes(const std::vector<std::pair<int, int>>& points) {
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2) {
      const auto& [x1, y1] = hull[hull.size() - 2];
      const auto& [x2, y2] = hull.back();
      // drop the middle point when it is not strictly below the chord
      const long long cross = static_cast<long long>(x2 - x1) * (pt.second - y1) -
                              static_cast<long long>(y2 - y1) * (pt.first - x1);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<Rational> slopes;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const int run = hull[i].first - hull[i - 1].first;
    const Rational slope(hull[i].second - hull[i - 1].second, run);
    slopes.insert(slopes.end(), static_cast<std::size_t>(run), slope);
  }
  return slopes;
}

}  // namespace

NewtonPolygon frobenius_newton_polygon(const RationalMatrix& frobenius, std::int64_t p) {
  if (!is_prime(p)) throw Error(Errc::InvalidPrime, std::to_string(p) + " is not prime");
  if (frobenius.rows() != frobenius.cols() || frobenius.rows() == 0) {
    throw Error(Errc::ParseError, "Frobenius matrix must be square and nonempty");
  }
  const auto coeffs = characteristic_polynomial(frobenius);
  if (coeffs.back() == 0) throw Error(Errc::SingularMatrix, "det F = 0");

  // coeffs[j] multiplies t^{h-j}; root valuations are the hull slopes of (j, v(coeffs[j]))
  std::vector<std::pair<int, int>> points;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] != 0) points.emplace_back(static_cast<int>(j), p_adic_valuation(coeffs[j], p));
  }
  return NewtonPolygon::from_slopes(lower_hull_slopes(points));
}

int a_number(const TruncatedDieudonneModule& module) {
  if (module.level() != 1) throw Error(Errc::WrongLevel, "a-number needs the level-1 module");
  const Eigen::Index h = module.rank();
  ModMatrix stacked(2 * h, h);
  stacked << module.frobenius(), module.verschiebung();
  return static_cast<int>(kernel_basis(module.ring(), stacked).rows());
}

}  // namespace foliage
