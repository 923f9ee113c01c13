#include "foliage/newton_polygon.hpp"

#include "foliage/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace foliage {

SlopePair::SlopePair(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0) {
    throw Error(Errc::ParseError, "negative slope pair (" + std::to_string(m) + "," + std::to_string(n) + ")");
  }
  if (m == 0 && n == 0) throw Error(Errc::ZeroPair, "(0,0) is not a slope pair");
  if (std::gcd(m, n) != 1) {
    throw Error(Errc::NonCoprimePair, "(" + std::to_string(m) + "," + std::to_string(n) + ") is not coprime");
  }
}

NewtonPolygon::NewtonPolygon(std::vector<Part> parts) : parts_(std::move(parts)) {
  for (const auto& part : parts_) {
    height_ += part.multiplicity * part.pair.height();
    dimension_ += part.multiplicity * part.pair.m();
  }
}

NewtonPolygon NewtonPolygon::from_pairs(std::span<const PairMultiplicity> pairs) {
  if (pairs.empty()) throw Error(Errc::EmptyInput, "a Newton polygon needs at least one part");
  std::vector<Part> parts;
  for (const auto& [m, n, r] : pairs) {
    SlopePair pair(m, n);
    if (r < 1) throw Error(Errc::EmptyInput, "multiplicity must be >= 1");
    auto it = std::find_if(parts.begin(), parts.end(), [&](const Part& p) { return p.pair == pair; });
    if (it == parts.end()) {
      parts.push_back({pair, r});
    } else {
      it->multiplicity += r;
    }
  }
  std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.pair < b.pair; });
  return NewtonPolygon(std::move(parts));
}

NewtonPolygon NewtonPolygon::from_slopes(std::span<const Rational> slopes) {
  if (slopes.empty()) throw Error(Errc::EmptyInput, "no slopes given");
  std::map<Rational, int> counts;
  for (const auto& s : slopes) {
    if (s < 0 || s > 1) throw Error(Errc::SlopeOutOfRange, "slope " + to_string(s) + " outside [0,1]");
    ++counts[s];
  }
  std::vector<PairMultiplicity> pairs;
  for (const auto& [s, k] : counts) {
    const int num = numerator(s).convert_to<int>();
    const int den = denominator(s).convert_to<int>();
    if (k % den != 0) {
      throw Error(Errc::NonIntegralBreakpoints,
                  "slope " + to_string(s) + " occurs " + std::to_string(k) + " times");
    }
    pairs.push_back({den - num, num, k / den});
  }
  return from_pairs(pairs);
}

NewtonPolygon NewtonPolygon::ordinary(int g) { return from_pairs({{1, 0, g}, {0, 1, g}}); }

NewtonPolygon NewtonPolygon::supersingular(int g) { return from_pairs({{1, 1, g}}); }

std::vector<Rational> NewtonPolygon::slopes() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(height_));
  for (const auto& [pair, r] : parts_) {
    out.insert(out.end(), static_cast<std::size_t>(r * pair.height()), pair.slope());
  }
  return out;
}

Rational NewtonPolygon::evaluate(int x) const {
  if (x < 0 || x > height_) {
    throw Error(Errc::AbscissaOutOfRange, std::to_string(x) + " not in [0," + std::to_string(height_) + "]");
  }
  Rational y(0);
  int remaining = x;
  for (const auto& [pair, r] : parts_) {
    const int run = std::min(remaining, r * pair.height());
    y += pair.slope() * run;
    remaining -= run;
    if (remaining == 0) break;
  }
  return y;
}

Rational NewtonPolygon::dual_upper(int x) const {
  if (x < 0 || x > height_) {
    throw Error(Errc::AbscissaOutOfRange, std::to_string(x) + " not in [0," + std::to_string(height_) + "]");
  }
  // the steepest x slopes come first
  return Rational(codimension()) - evaluate(height_ - x);
}

bool NewtonPolygon::is_symmetric() const {
  return std::all_of(parts_.begin(), parts_.end(), [this](const Part& part) {
    return multiplicity_of(part.pair.dual()) == part.multiplicity;
  });
}

int NewtonPolygon::p_rank() const noexcept { return multiplicity_of(SlopePair(1, 0)); }

int NewtonPolygon::multiplicity_of(const SlopePair& pair) const noexcept {
  for (const auto& part : parts_) {
    if (part.pair == pair) return part.multiplicity;
  }
  return 0;
}

std::strong_ordering compare_slope_sequences(const NewtonPolygon& a, const NewtonPolygon& b) {
  const auto sa = a.slopes();
  const auto sb = b.slopes();
  const std::size_t n = std::min(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] < sb[i]) return std::strong_ordering::less;
    if (sb[i] < sa[i]) return std::strong_ordering::greater;
  }
  return sa.size() <=> sb.size();
}

bool precedes(const NewtonPolygon& gamma, const NewtonPolygon& beta) {
  if (gamma.dimension() != beta.dimension() || gamma.codimension() != beta.codimension()) return false;
  for (int j = 1; j < gamma.height(); ++j) {
    if (gamma.evaluate(j) < beta.evaluate(j)) return false;
  }
  return true;
}

namespace {

void extend(const std::vector<SlopePair>& candidates, std::size_t from, int d_left, int c_left,
            std::vector<PairMultiplicity>& current, std::vector<NewtonPolygon>& out) {
  if (d_left == 0 && c_left == 0) {
    out.push_back(NewtonPolygon::from_pairs(current));
    return;
  }
  for (std::size_t k = from; k < candidates.size(); ++k) {
    const SlopePair& pair = candidates[k];
    // a pair can only be used when it fits in the remaining lattice vector
    for (int r = 1; r * pair.m() <= d_left && r * pair.n() <= c_left; ++r) {
      current.push_back({pair.m(), pair.n(), r});
      extend(candidates, k + 1, d_left - r * pair.m(), c_left - r * pair.n(), current, out);
      current.pop_back();
    }
  }
}

}  // namespace

std::vector<NewtonPolygon> enumerate(int d, int c, int height_bound) {
  if (d < 0 || c < 0 || d + c > height_bound) {
    throw Error(Errc::BoundExceeded, "enumerate(" + std::to_string(d) + "," + std::to_string(c) +
                                         ") outside height bound " + std::to_string(height_bound));
  }
  std::vector<SlopePair> candidates;
  for (int m = 0; m <= d; ++m) {
    for (int n = 0; n <= c; ++n) {
      if ((m != 0 || n != 0) && std::gcd(m, n) == 1) candidates.emplace_back(m, n);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<NewtonPolygon> out;
  if (d + c == 0) return out;
  std::vector<PairMultiplicity> current;
  extend(candidates, 0, d, c, current, out);
  std::sort(out.begin(), out.end(),
            [](const NewtonPolygon& a, const NewtonPolygon& b) { return compare_slope_sequences(a, b) < 0; });
  return out;
}

std::vector<NewtonPolygon> enumerate_symmetric(int g, int height_bound) {
  if (g < 1 || 2 * g > height_bound) {
    throw Error(Errc::BoundExceeded, "g = " + std::to_string(g) + " outside height bound " +
                                         std::to_string(height_bound));
  }
  auto all = enumerate(g, g, height_bound);
  std::erase_if(all, [](const NewtonPolygon& np) { return !np.is_symmetric(); });
  return all;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_diagram(std::span<const NewtonPolygon> polygons) {
  const std::size_t n = polygons.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (polygons[i] == polygons[j]) throw Error(Errc::DuplicateInput, to_string(polygons[i]) + " repeated");
    }
  }
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) below[i][j] = (i != j) && precedes(polygons[i], polygons[j]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) direct = !(below[i][k] && below[k][j]);
      if (direct) covers.emplace_back(i, j);
    }
  }
  return covers;
}

std::string to_string(const NewtonPolygon& np) {
  std::string out;
  for (const auto& [pair, r] : np.parts()) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(pair.m()) + "," + std::to_string(pair.n()) + ")";
    if (r != 1) out += "^" + std::to_string(r);
  }
  return out;
}

std::string to_table_string(const NewtonPolygon& np) {
  std::string out;
  for (const auto& [pair, r] : np.parts()) {
    if (!out.empty()) out += "+";
    out += "(" + std::to_string(r * pair.m()) + "," + std::to_string(r * pair.n()) + ")";
  }
  return out;
}

namespace {

class PolygonParser {
 public:
  explicit PolygonParser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  NewtonPolygon parse() {
    if (text_.empty()) throw Error(Errc::EmptyInput, "empty polygon");
    std::vector<PairMultiplicity> terms;
    do {
      expect('(');
      const int m = number();
      expect(',');
      const int n = number();
      expect(')');
      int r = 1;
      if (peek() == '^') {
        ++pos_;
        r = number();
      }
      if (m == 0 && n == 0) throw Error(Errc::ZeroPair, "(0,0) in '" + text_ + "'");
      const int k = std::gcd(m, n);
      terms.push_back({m / k, n / k, r * k});
    } while (consume('+'));
    if (pos_ != text_.size()) fail();
    return NewtonPolygon::from_pairs(terms);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool consume(char ch) {
    if (peek() != ch) return false;
    ++pos_;
    return true;
  }
  void expect(char ch) {
    if (!consume(ch)) fail();
  }
  int number() {
    const std::size_t start = pos_;
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > 1'000'000) fail();
    }
    if (pos_ == start) fail();
    return static_cast<int>(value);
  }
  [[noreturn]] void fail() const {
    throw Error(Errc::ParseError, "cannot parse polygon '" + text_ + "' at offset " + std::to_string(pos_));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

NewtonPolygon parse_polygon(std::string_view text) { return PolygonParser(text).parse(); }

}  // namespace foliage
