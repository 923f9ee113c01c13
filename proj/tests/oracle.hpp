#pragma once

// Brute-force reference computations written without the library's linear algebra.

#include "foliage/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Int = long long;
using Mat = std::vector<std::vector<Int>>;

inline Int ipow(Int base, int e) {
  Int out = 1;
  while (e-- > 0) out *= base;
  return out;
}

inline Int mod(Int x, Int q) { return ((x % q) + q) % q; }

inline Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, std::vector<Int>(cols, 0)); }

inline Mat mul(const Mat& a, const Mat& b, Int q) {
  Mat out = zero(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = mod(out[i][j] + a[i][k] * b[k][j], q);
    }
  }
  return out;
}

/// Matrix of b_i -> b_{i+k} (or p b_{i+k-h} on wrap-around) over the integers.
inline Mat shift(int h, int k, Int p) {
  Mat out = zero(h, h);
  for (int i = 0; i < h; ++i) {
    int target = i + k;
    Int coeff = 1;
    while (target >= h) {
      target -= h;
      coeff *= p;
    }
    out[target][i] = coeff;
  }
  return out;
}

struct Module {
  Mat f;
  Mat v;
};

inline Mat block_diag(const std::vector<Mat>& blocks) {
  std::size_t h = 0;
  for (const auto& b : blocks) h += b.size();
  Mat out = zero(h, h);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out[off + i][off + j] = b[i][j];
    }
    off += b.size();
  }
  return out;
}

/// H(beta) for beta given as (m, n, multiplicity) triples, entries mod q.
inline Module minimal(const std::vector<std::array<int, 3>>& parts, Int p, Int q) {
  std::vector<Mat> fs, vs;
  for (const auto& [m, n, r] : parts) {
    for (int k = 0; k < r; ++k) {
      fs.push_back(shift(m + n, n, p));
      vs.push_back(shift(m + n, m, p));
    }
  }
  Module out{block_diag(fs), block_diag(vs)};
  for (auto& row : out.f) for (auto& x : row) x = mod(x, q);
  for (auto& row : out.v) for (auto& x : row) x = mod(x, q);
  return out;
}

/// Linear equations (coefficient rows over the h2*h1 entries of phi, row-major)
/// expressing phi A1 = A2 phi.
inline std::vector<std::vector<Int>> intertwining_equations(const Mat& a1, const Mat& a2, Int q) {
  const std::size_t h1 = a1.size(), h2 = a2.size();
  std::vector<std::vector<Int>> eqs;
  for (std::size_t i = 0; i < h2; ++i) {
    for (std::size_t j = 0; j < h1; ++j) {
      std::vector<Int> row(h1 * h2, 0);
      for (std::size_t k = 0; k < h1; ++k) row[i * h1 + k] = mod(row[i * h1 + k] + a1[k][j], q);
      for (std::size_t k = 0; k < h2; ++k) row[k * h1 + j] = mod(row[k * h1 + j] - a2[i][k], q);
      eqs.push_back(std::move(row));
    }
  }
  return eqs;
}

/// Number of phi over Z/q with phi F1 = F2 phi and phi V1 = V2 phi, by full enumeration.
inline Int count_homs(const Module& m1, const Module& m2, Int q) {
  const std::size_t h1 = m1.f.size(), h2 = m2.f.size();
  const std::size_t cells = h1 * h2;
  std::vector<Int> phi(cells, 0);
  Int count = 0;
  while (true) {
    Mat x = zero(h2, h1);
    for (std::size_t c = 0; c < cells; ++c) x[c / h1][c % h1] = phi[c];
    if (mul(x, m1.f, q) == mul(m2.f, x, q) && mul(x, m1.v, q) == mul(m2.v, x, q)) ++count;
    std::size_t c = 0;
    while (c < cells && ++phi[c] == q) phi[c++] = 0;
    if (c == cells) break;
  }
  return count;
}

/// End(M) mod p^big reduced mod p^small, split along the connected components
/// of the intertwining equations. Each component is solved by enumeration.
struct ComponentImage {
  std::vector<std::size_t> cells;
  std::set<std::vector<Int>> residues;
};

inline std::vector<ComponentImage> end_image_by_component(const Module& m, Int p, int big, int small,
                                                          std::size_t max_component = 6) {
  const Int q = ipow(p, big), q_small = ipow(p, small);
  auto eqs = intertwining_equations(m.f, m.f, q);
  for (auto& row : intertwining_equations(m.v, m.v, q)) eqs.push_back(std::move(row));
  const std::size_t cells = m.f.size() * m.f.size();

  std::vector<std::size_t> parent(cells);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (const auto& row : eqs) {
    std::size_t first = cells;
    for (std::size_t c = 0; c < cells; ++c) {
      if (row[c] == 0) continue;
      if (first == cells) {
        first = c;
      } else {
        parent[root(c)] = root(first);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < cells; ++c) groups[root(c)].push_back(c);

  std::vector<ComponentImage> out;
  for (const auto& [r, members] : groups) {
    if (members.size() > max_component) throw std::runtime_error("component too large to enumerate");
    std::vector<const std::vector<Int>*> local;
    for (const auto& row : eqs) {
      for (std::size_t c : members) {
        if (row[c] != 0) {
          local.push_back(&row);
          break;
        }
      }
    }
    ComponentImage image{members, {}};
    std::vector<Int> x(members.size(), 0);
    while (true) {
      bool ok = true;
      for (const auto* row : local) {
        Int acc = 0;
        for (std::size_t k = 0; k < members.size(); ++k) acc += (*row)[members[k]] * x[k];
        if (mod(acc, q) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<Int> reduced(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) reduced[k] = mod(x[k], q_small);
        image.residues.insert(reduced);
      }
      std::size_t k = 0;
      while (k < x.size() && ++x[k] == q) x[k++] = 0;
      if (k == x.size()) break;
    }
    out.push_back(std::move(image));
  }
  return out;
}

/// Determinant by Gaussian elimination over the rationals.
inline foliage::Rational determinant(std::vector<std::vector<foliage::Rational>> a) {
  const std::size_t n = a.size();
  foliage::Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      const foliage::Rational factor = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  return det;
}

/// Lattice points (x, y) with 1 <= x <= g and ordinate(x) <= y <= x - 1, by scanning y.
inline int lattice_points_below_diagonal(const std::function<foliage::Rational(int)>& ordinate, int g) {
  int count = 0;
  for (int x = 1; x <= g; ++x) {
    for (int y = 0; y <= x - 1; ++y) {
      if (foliage::Rational(y) >= ordinate(x)) ++count;
    }
  }
  return count;
}

}  // namespace oracle
