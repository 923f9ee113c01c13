#include "foliage/polarization.hpp"

#include "foliage/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace foliage {

namespace {

NewtonPolygon polygon_of(const std::vector<SsBlock>& ss, const std::vector<PartExponents>& parts) {
  std::vector<PairMultiplicity> pairs;
  int s = 0;
  for (const auto& block : ss) s += block.kind == SsBlockKind::I ? 1 : 2;
  if (s > 0) pairs.push_back({1, 1, s});
  for (const auto& part : parts) {
    const int k = static_cast<int>(part.exponents.size());
    pairs.push_back({part.pair.m(), part.pair.n(), k});
    pairs.push_back({part.pair.n(), part.pair.m(), k});
  }
  return NewtonPolygon::from_pairs(pairs);
}

}  // namespace

QuasiPolarizationForm::QuasiPolarizationForm(std::vector<SsBlock> ss_blocks, std::vector<PartExponents> parts)
    : ss_blocks_(std::move(ss_blocks)), parts_(std::move(parts)) {
  if (ss_blocks_.empty() && parts_.empty()) throw Error(Errc::EmptyInput, "a form needs at least one block");
  for (const auto& block : ss_blocks_) {
    if (block.r < 0) throw Error(Errc::ParseError, "block index must be >= 0");
  }
  for (const auto& part : parts_) {
    if (part.pair.m() <= part.pair.n()) {
      throw Error(Errc::ParseError, "parts are indexed by (m,n) with m > n");
    }
    if (part.exponents.empty()) throw Error(Errc::EmptyInput, "a part needs at least one exponent");
    if (std::any_of(part.exponents.begin(), part.exponents.end(), [](int d) { return d < 0; })) {
      throw Error(Errc::ParseError, "exponents must be >= 0");
    }
  }
  std::sort(ss_blocks_.begin(), ss_blocks_.end());
  std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) { return a.pair < b.pair; });
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
    if (parts_[i].pair == parts_[i + 1].pair) throw Error(Errc::DuplicateInput, "repeated part");
  }
  for (auto& part : parts_) std::sort(part.exponents.begin(), part.exponents.end());
  xi_ = polygon_of(ss_blocks_, parts_);
}

int degree_exponent(const QuasiPolarizationForm& form) {
  int e = 0;
  for (const auto& block : form.ss_blocks()) e += block.kind == SsBlockKind::I ? 2 * block.r : 4 * block.r + 2;
  for (const auto& part : form.parts()) {
    for (int d : part.exponents) e += 2 * d;
  }
  return e;
}

namespace {

void require_symmetric(const NewtonPolygon& xi) {
  if (!xi.is_symmetric() || xi.empty()) throw Error(Errc::NotSymmetric, to_string(xi) + " is not symmetric");
}

struct Shape {
  int s = 0;
  std::vector<std::pair<SlopePair, int>> parts;  // (m,n) with m > n, multiplicity
};

Shape shape_of(const NewtonPolygon& xi) {
  Shape shape;
  for (const auto& [pair, r] : xi.parts()) {
    if (pair.m() == pair.n()) {
      shape.s = r;
    } else if (pair.m() > pair.n()) {
      shape.parts.emplace_back(pair, r);
    }
  }
  return shape;
}

/// Non-decreasing lists of `length` non-negative integers summing to `sum`.
void nondecreasing_lists(int length, int sum, int floor, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (length == 0) {
    if (sum == 0) out.push_back(prefix);
    return;
  }
  for (int v = floor; v * length <= sum; ++v) {
    prefix.push_back(v);
    nondecreasing_lists(length - 1, sum - v, v, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> nondecreasing_lists(int length, int sum) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  nondecreasing_lists(length, sum, 0, prefix, out);
  return out;
}

}  // namespace

QuasiPolarizationForm principal_form(const NewtonPolygon& xi) {
  require_symmetric(xi);
  const Shape shape = shape_of(xi);
  std::vector<SsBlock> ss(static_cast<std::size_t>(shape.s), SsBlock{SsBlockKind::I, 0});
  std::vector<PartExponents> parts;
  for (const auto& [pair, r] : shape.parts) parts.push_back({pair, std::vector<int>(static_cast<std::size_t>(r), 0)});
  return QuasiPolarizationForm(std::move(ss), std::move(parts));
}

std::vector<QuasiPolarizationForm> enumerate_forms(const NewtonPolygon& xi, int e, int exponent_bound) {
  require_symmetric(xi);
  if (e < 0 || e > exponent_bound) {
    throw Error(Errc::BoundExceeded, "degree exponent " + std::to_string(e) + " outside [0, " +
                                         std::to_string(exponent_bound) + "]");
  }
  std::vector<QuasiPolarizationForm> out;
  if (e % 2 != 0) return out;
  const int half = e / 2;
  const Shape shape = shape_of(xi);

  for (int pairs_of_ii = 0; 2 * pairs_of_ii <= shape.s; ++pairs_of_ii) {
    const int type_i = shape.s - 2 * pairs_of_ii;
    // components: I list, II list, then one list per part; budgets in units of p^2
    std::vector<std::vector<std::vector<int>>> choices_i(half + 1), choices_ii(half + 1);
    for (int b = 0; b <= half; ++b) {
      choices_i[b] = nondecreasing_lists(type_i, b);
      if (b >= pairs_of_ii && (b - pairs_of_ii) % 2 == 0) {
        choices_ii[b] = nondecreasing_lists(pairs_of_ii, (b - pairs_of_ii) / 2);
      }
    }
    std::vector<std::vector<std::vector<std::vector<int>>>> choices_parts;
    for (const auto& [pair, r] : shape.parts) {
      choices_parts.emplace_back(half + 1);
      for (int b = 0; b <= half; ++b) choices_parts.back()[b] = nondecreasing_lists(r, b);
    }

    std::vector<PartExponents> parts;
    for (const auto& [pair, r] : shape.parts) parts.push_back({pair, {}});
    auto fill_parts = [&](auto&& self, std::size_t k, int budget, const std::vector<SsBlock>& ss) -> void {
      if (k == parts.size()) {
        if (budget == 0) out.emplace_back(ss, parts);
        return;
      }
      for (int b = 0; b <= budget; ++b) {
        for (const auto& list : choices_parts[k][b]) {
          parts[k].exponents = list;
          self(self, k + 1, budget - b, ss);
        }
      }
    };
    for (int bi = 0; bi <= half; ++bi) {
      for (int bii = 0; bi + bii <= half; ++bii) {
        for (const auto& list_i : choices_i[bi]) {
          for (const auto& list_ii : choices_ii[bii]) {
            std::vector<SsBlock> ss;
            for (int r : list_i) ss.push_back({SsBlockKind::I, r});
            for (int r : list_ii) ss.push_back({SsBlockKind::II, r});
            fill_parts(fill_parts, 0, half - bi - bii, ss);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return to_string(a) < to_string(b); });
  return out;
}

std::string_view to_string(IsogenyMove move) noexcept {
  switch (move) {
    case IsogenyMove::I: return "i";
    case IsogenyMove::IIBeta: return "ii-beta";
    case IsogenyMove::IIGamma: return "ii-gamma";
    case IsogenyMove::III: return "iii";
  }
  return "?";
}

int degree_change(IsogenyMove move) noexcept {
  switch (move) {
    case IsogenyMove::I: return -2;
    case IsogenyMove::IIBeta: return 2;
    case IsogenyMove::IIGamma: return -6;
    case IsogenyMove::III: return -2;
  }
  return 0;
}

namespace {

std::vector<SsBlock> replace_blocks(const std::vector<SsBlock>& ss, std::vector<SsBlock> remove,
                                    const std::vector<SsBlock>& add) {
  std::vector<SsBlock> out;
  for (const auto& block : ss) {
    auto hit = std::find(remove.begin(), remove.end(), block);
    if (hit != remove.end()) {
      remove.erase(hit);
    } else {
      out.push_back(block);
    }
  }
  out.insert(out.end(), add.begin(), add.end());
  return out;
}

std::vector<SsBlock> distinct(const std::vector<SsBlock>& ss) {
  std::vector<SsBlock> out(ss);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void push_unique(std::vector<MoveEdge>& edges, IsogenyMove move, QuasiPolarizationForm target) {
  for (const auto& edge : edges) {
    if (edge.move == move && edge.target == target) return;
  }
  edges.push_back({move, std::move(target)});
}

/// Forms obtained by adding `delta` to one exponent of one part.
void shift_part_exponents(const QuasiPolarizationForm& form, int delta, IsogenyMove move,
                          std::vector<MoveEdge>& edges) {
  for (std::size_t k = 0; k < form.parts().size(); ++k) {
    const auto& exponents = form.parts()[k].exponents;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      if (j > 0 && exponents[j] == exponents[j - 1]) continue;
      if (exponents[j] + delta < 0) continue;
      auto parts = form.parts();
      parts[k].exponents[j] += delta;
      push_unique(edges, move, QuasiPolarizationForm(form.ss_blocks(), std::move(parts)));
    }
  }
}

}  // namespace

std::vector<MoveEdge> isogeny_moves(const QuasiPolarizationForm& form) {
  std::vector<MoveEdge> edges;
  const auto& ss = form.ss_blocks();
  for (const auto& block : distinct(ss)) {
    if (block.kind == SsBlockKind::I) {
      if (block.r >= 1) {
        push_unique(edges, IsogenyMove::I,
                    QuasiPolarizationForm(replace_blocks(ss, {block}, {{SsBlockKind::I, block.r - 1}}), form.parts()));
      }
      if (std::count(ss.begin(), ss.end(), block) >= 2) {
        push_unique(edges, IsogenyMove::IIBeta,
                    QuasiPolarizationForm(replace_blocks(ss, {block, block}, {{SsBlockKind::II, block.r}}),
                                          form.parts()));
      }
    } else if (block.r >= 1) {
      const SsBlock lower{SsBlockKind::I, block.r - 1};
      push_unique(edges, IsogenyMove::IIGamma,
                  QuasiPolarizationForm(replace_blocks(ss, {block}, {lower, lower}), form.parts()));
    }
  }
  shift_part_exponents(form, -1, IsogenyMove::III, edges);

  const int e = degree_exponent(form);
  for (const auto& edge : edges) {
    if (degree_exponent(edge.target) - e != degree_change(edge.move)) {
      throw Error(Errc::InvariantViolation, "move " + std::string(to_string(edge.move)) + " from " +
                                                to_string(form) + " changes the degree by an unexpected amount");
    }
  }
  return edges;
}

std::vector<MoveEdge> inverse_isogeny_moves(const QuasiPolarizationForm& form) {
  std::vector<MoveEdge> edges;
  const auto& ss = form.ss_blocks();
  for (const auto& block : distinct(ss)) {
    if (block.kind == SsBlockKind::I) {
      push_unique(edges, IsogenyMove::I,
                  QuasiPolarizationForm(replace_blocks(ss, {block}, {{SsBlockKind::I, block.r + 1}}), form.parts()));
      if (std::count(ss.begin(), ss.end(), block) >= 2) {
        push_unique(edges, IsogenyMove::IIGamma,
                    QuasiPolarizationForm(replace_blocks(ss, {block, block}, {{SsBlockKind::II, block.r + 1}}),
                                          form.parts()));
      }
    } else {
      const SsBlock split{SsBlockKind::I, block.r};
      push_unique(edges, IsogenyMove::IIBeta,
                  QuasiPolarizationForm(replace_blocks(ss, {block}, {split, split}), form.parts()));
    }
  }
  shift_part_exponents(form, 1, IsogenyMove::III, edges);
  return edges;
}

namespace {

struct Visit {
  int depth;
  std::string toward;  // key of the next form on the path to the search root
  IsogenyMove move;
};

class BackwardSearch {
 public:
  explicit BackwardSearch(const QuasiPolarizationForm& root) {
    const std::string key = to_string(root);
    forms_.emplace(key, root);
    visits_.emplace(key, Visit{0, {}, IsogenyMove::I});
    frontier_.push_back(key);
  }

  void expand() {
    std::vector<std::string> next;
    for (const auto& key : frontier_) {
      const int depth = visits_.at(key).depth;
      for (auto& edge : inverse_isogeny_moves(forms_.at(key))) {
        std::string source = to_string(edge.target);
        if (visits_.contains(source)) continue;
        visits_.emplace(source, Visit{depth + 1, key, edge.move});
        forms_.emplace(source, std::move(edge.target));
        next.push_back(std::move(source));
      }
    }
    frontier_ = std::move(next);
  }

  const Visit* find(const std::string& key) const {
    auto it = visits_.find(key);
    return it == visits_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, QuasiPolarizationForm>& forms() const noexcept { return forms_; }

  std::vector<IsogenyMove> path_from(std::string key) const {
    std::vector<IsogenyMove> moves;
    for (const Visit* v = find(key); v->depth > 0; v = find(key)) {
      moves.push_back(v->move);
      key = v->toward;
    }
    return moves;
  }

 private:
  std::map<std::string, QuasiPolarizationForm> forms_;
  std::map<std::string, Visit> visits_;
  std::vector<std::string> frontier_;
};

}  // namespace

CommonSource common_source(const QuasiPolarizationForm& first, const QuasiPolarizationForm& second, int max_depth) {
  if (!(first.xi() == second.xi())) {
    throw Error(Errc::MismatchedPolygon, to_string(first.xi()) + " vs " + to_string(second.xi()));
  }
  BackwardSearch from_first(first), from_second(second);
  for (int depth = 0; depth <= max_depth; ++depth) {
    if (depth > 0) {
      from_first.expand();
      from_second.expand();
    }
    const std::string* best = nullptr;
    int best_total = 0;
    for (const auto& [key, form] : from_first.forms()) {
      const Visit* other = from_second.find(key);
      if (other == nullptr) continue;
      const int total = from_first.find(key)->depth + other->depth;
      if (best == nullptr || total < best_total) {
        best = &key;
        best_total = total;
      }
    }
    if (best != nullptr) {
      return {from_first.forms().at(*best), from_first.path_from(*best), from_second.path_from(*best)};
    }
  }
  throw Error(Errc::SearchDepthExceeded, "no common source within depth " + std::to_string(max_depth));
}

std::string to_string(const QuasiPolarizationForm& form) {
  std::string out = "ss:[";
  for (std::size_t i = 0; i < form.ss_blocks().size(); ++i) {
    const auto& block = form.ss_blocks()[i];
    if (i > 0) out += ",";
    out += (block.kind == SsBlockKind::I ? "I(" : "II(") + std::to_string(block.r) + ")";
  }
  out += "];parts:[";
  for (std::size_t i = 0; i < form.parts().size(); ++i) {
    const auto& part = form.parts()[i];
    if (i > 0) out += ",";
    out += "(" + std::to_string(part.pair.m()) + "," + std::to_string(part.pair.n()) + "):[";
    for (std::size_t j = 0; j < part.exponents.size(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(part.exponents[j]);
    }
    out += "]";
  }
  return out + "]";
}

namespace {

class FormParser {
 public:
  explicit FormParser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  QuasiPolarizationForm parse() {
    expect("ss:[");
    std::vector<SsBlock> ss;
    if (!accept(']')) {
      do {
        SsBlockKind kind = SsBlockKind::I;
        expect("I");
        if (accept('I')) kind = SsBlockKind::II;
        expect("(");
        const int r = integer();
        expect(")");
        ss.push_back({kind, r});
      } while (accept(','));
      expect("]");
    }
    expect(";parts:[");
    std::vector<PartExponents> parts;
    if (!accept(']')) {
      do {
        expect("(");
        const int m = integer();
        expect(",");
        const int n = integer();
        expect("):[");
        std::vector<int> exponents;
        if (!accept(']')) {
          do {
            exponents.push_back(integer());
          } while (accept(','));
          expect("]");
        }
        parts.push_back({SlopePair(m, n), std::move(exponents)});
      } while (accept(','));
      expect("]");
    }
    if (pos_ != text_.size()) fail("trailing input");
    return QuasiPolarizationForm(std::move(ss), std::move(parts));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in form '" + text_ + "'");
  }
  bool accept(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) != 0) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }
  int integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("expected a small non-negative integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuasiPolarizationForm parse_form(std::string_view text) { return FormParser(text).parse(); }

std::string move_graph_dot(std::span<const QuasiPolarizationForm> forms) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(to_string(forms[i]), i);
  std::ostringstream out;
  out << "digraph moves {\n";
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(forms[i]) << "\\ne=" << degree_exponent(forms[i]) << "\"];\n";
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (const auto& edge : isogeny_moves(forms[i])) {
      auto it = index.find(to_string(edge.target));
      if (it == index.end()) continue;
      out << "  n" << i << " -> n" << it->second << " [label=\"" << to_string(edge.move) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace foliage
