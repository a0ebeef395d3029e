#include "posetdim/multiset_orders.hpp"

#include <algorithm>
#include <numeric>

#include "posetdim/error.hpp"

namespace posetdim {

PartOrder::PartOrder(std::shared_ptr<const WeightVector> weights, PartMask part,
                     PartRanking ranking, int restricted_tiebreak,
                     nlohmann::json provenance)
    : weights_(std::move(weights)),
      part_(std::move(part)),
      ranking_(ranking),
      restricted_tiebreak_(restricted_tiebreak),
      eps_index_(-1),
      provenance_(std::move(provenance)) {
  if (static_cast<int>(part_.size()) != weights_->size()) {
    throw PreconditionError("part mask length does not match weights");
  }
  eps_index_ = weights_->min_weight_index(part_);
}

int PartOrder::restricted_lex(const Multiset& s, const Multiset& t) const {
  for (std::size_t i = 0; i < part_.size(); ++i) {
    if (!part_[i] || s.x[i] == t.x[i]) continue;
    return s.x[i] < t.x[i] ? -1 : 1;
  }
  return 0;
}

int PartOrder::compare(const Multiset& s, const Multiset& t) const {
  if (degenerate()) return graded_lex_compare(s, t);
  const cpp_int xs = weights_->scaled_size(s, part_);
  const cpp_int xt = weights_->scaled_size(t, part_);
  if (ranking_ == PartRanking::kBySize) {
    if (xs != xt) return xs < xt ? -1 : 1;
  } else {
    const bool shifted = ranking_ == PartRanking::kShiftedIntervals;
    const cpp_int bs = weights_->bucket(xs, eps_index_, shifted);
    const cpp_int bt = weights_->bucket(xt, eps_index_, shifted);
    if (bs != bt) return bs < bt ? -1 : 1;
    // Inside one interval the order is reversed.
    if (xs != xt) return xs > xt ? -1 : 1;
  }
  if (restricted_tiebreak_ != 0) {
    if (const int c = restricted_lex(s, t); c != 0) return c * restricted_tiebreak_;
  }
  return graded_lex_compare(s, t);
}

LinearExtension linearize(const MultisetOrder& order, const Poset& poset,
                          std::span<const Multiset> elements) {
  return extension_from_comparator(poset, [&](std::size_t a, std::size_t b) {
    return order.compare(elements[a], elements[b]) < 0;
  });
}

std::vector<LinearExtension> linearize_family(const ExtensionFamily& family,
                                              const Poset& poset,
                                              std::span<const Multiset> elements) {
  std::vector<LinearExtension> out;
  out.reserve(family.size());
  for (const auto& order : family.orders) out.push_back(linearize(*order, poset, elements));
  return out;
}

ExtensionFamily rotation_family(int n, const std::string& family_name) {
  ExtensionFamily f;
  for (int top = 0; top < n; ++top) {
    // sigma lists bottom to top: top+1, ..., n-1, 0, ..., top.
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sigma[i] = (top + 1 + i) % n;
    f.orders.push_back(std::make_shared<LexOrder>(
        std::move(sigma),
        nlohmann::json{{"family", family_name}, {"rotation", top}}));
  }
  return f;
}

}  // namespace posetdim
