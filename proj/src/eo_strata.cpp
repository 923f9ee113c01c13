#include "foliage/eo_strata.hpp"

#include "foliage/dieudonne.hpp"
#include "foliage/errors.hpp"

#include <algorithm>
#include <deque>

namespace foliage {

BT1Module::BT1Module(std::int64_t p, ModMatrix frobenius, ModMatrix verschiebung)
    : p_(p), frobenius_(std::move(frobenius)), verschiebung_(std::move(verschiebung)) {
  const PrimePowerRing f = field();
  frobenius_ = f.reduce(frobenius_);
  verschiebung_ = f.reduce(verschiebung_);
  if (frobenius_.rows() != frobenius_.cols() || verschiebung_.rows() != frobenius_.rows() ||
      verschiebung_.cols() != frobenius_.cols()) {
    throw Error(Errc::InvariantViolation, "F and V must be square of the same size");
  }
  if (!f.multiply(frobenius_, verschiebung_).isZero() || !f.multiply(verschiebung_, frobenius_).isZero()) {
    throw Error(Errc::InvariantViolation, "FV = VF = 0 fails");
  }
}

BT1Module bt1_of_xi(const NewtonPolygon& xi, std::int64_t p) {
  if (!xi.is_symmetric()) throw Error(Errc::NotSymmetric, to_string(xi) + " is not symmetric");
  const auto m = minimal_module(xi, 1, p);
  return BT1Module(p, m.frobenius(), m.verschiebung());
}

Subspace image(const PrimePowerRing& field, const ModMatrix& op, const Subspace& s) {
  return howell_form(field, field.multiply(s, op.transpose()));
}

Subspace preimage(const PrimePowerRing& field, const ModMatrix& op, const Subspace& s) {
  const Eigen::Index k = op.cols(), r = s.rows();
  ModMatrix system(op.rows(), k + r);
  system.leftCols(k) = op;
  system.rightCols(r) = field.reduce(ModMatrix(-s.transpose()));
  const ModMatrix kernel = kernel_basis(field, system);
  return howell_form(field, kernel.leftCols(k));
}

bool contains(const PrimePowerRing& field, const Subspace& big, const Subspace& small) {
  for (Eigen::Index i = 0; i < small.rows(); ++i) {
    if (!span_contains(field, big, small.row(i))) return false;
  }
  return true;
}

namespace {

bool same(const Subspace& a, const Subspace& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

std::vector<Subspace> canonical_filtration(const BT1Module& m) {
  const PrimePowerRing field = m.field();
  const Eigen::Index k = m.dimension();
  std::vector<Subspace> found{Subspace(0, k)};
  if (k > 0) found.push_back(howell_form(field, ModMatrix::Identity(k, k)));

  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < found.size(); ++i) queue.push_back(i);
  while (!queue.empty()) {
    const Subspace current = found[queue.front()];
    queue.pop_front();
    for (const Subspace& next :
         {image(field, m.frobenius(), current), preimage(field, m.verschiebung(), current)}) {
      if (std::none_of(found.begin(), found.end(), [&](const Subspace& s) { return same(s, next); })) {
        found.push_back(next);
        queue.push_back(found.size() - 1);
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const Subspace& a, const Subspace& b) { return a.rows() < b.rows(); });
  for (std::size_t j = 0; j + 1 < found.size(); ++j) {
    const Subspace& lower = found[j];
    const Subspace& upper = found[j + 1];
    if (lower.rows() == upper.rows() || !contains(field, upper, lower)) {
      throw Error(Errc::GradedPieceAssertionFailed, "canonical subspaces do not form a chain");
    }
    const Eigen::Index gap = upper.rows() - lower.rows();
    const Eigen::Index rise = image(field, m.frobenius(), upper).rows() - image(field, m.frobenius(), lower).rows();
    if (rise != 0 && rise != gap) {
      throw Error(Errc::GradedPieceAssertionFailed, "F is neither injective nor zero on a graded piece");
    }
  }
  return found;
}

bool is_elementary_sequence(const std::vector<int>& psi) noexcept {
  int previous = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i] < previous || psi[i] > previous + 1 || psi[i] > static_cast<int>(i) + 1) return false;
    previous = psi[i];
  }
  return true;
}

ElementarySequence::ElementarySequence(std::vector<int> psi) : psi_(std::move(psi)) {
  if (!is_elementary_sequence(psi_)) throw Error(Errc::InvariantViolation, "not an elementary sequence");
}

ElementarySequence elementary_sequence(const BT1Module& m) {
  const PrimePowerRing field = m.field();
  const Eigen::Index dim = m.dimension();
  const Eigen::Index g = dim / 2;
  const Eigen::Index v_rank = howell_form(field, m.verschiebung().transpose()).rows();
  if (dim % 2 != 0 || v_rank != g) {
    throw Error(Errc::NotSelfDualShape, "need dim M = 2g and dim V(M) = g, got dim " + std::to_string(dim) +
                                            " and rank V " + std::to_string(v_rank));
  }

  const auto flag = canonical_filtration(m);
  std::vector<int> psi(static_cast<std::size_t>(dim) + 1, 0);
  for (std::size_t j = 0; j + 1 < flag.size(); ++j) {
    const auto lo = flag[j].rows(), hi = flag[j + 1].rows();
    const auto f_lo = image(field, m.frobenius(), flag[j]).rows();
    const bool injective = image(field, m.frobenius(), flag[j + 1]).rows() != f_lo;
    for (auto x = lo; x <= hi; ++x) {
      psi[static_cast<std::size_t>(x)] = static_cast<int>(f_lo + (injective ? x - lo : 0));
    }
  }
  return ElementarySequence(std::vector<int>(psi.begin() + 1, psi.begin() + 1 + g));
}

std::string to_string(const ElementarySequence& es) {
  std::string out = "(";
  for (std::size_t i = 0; i < es.values().size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(es.values()[i]);
  }
  return out + ")";
}

}  // namespace foliage
