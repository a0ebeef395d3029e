#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "posetdim/multiset.hpp"

namespace posetdim {

/// A total order on multisets over a fixed ground set.
class MultisetOrder {
 public:
  virtual ~MultisetOrder() = default;
  /// Negative if s < t, zero iff s == t, positive if s > t.
  virtual int compare(const Multiset& s, const Multiset& t) const = 0;
  /// Where the order came from, e.g. {"family":"L1","index":3}.
  virtual nlohmann::json provenance() const = 0;
};

using OrderPtr = std::shared_ptr<const MultisetOrder>;

/// M_0 as a standalone order.
class GradedLexOrder final : public MultisetOrder {
 public:
  int compare(const Multiset& s, const Multiset& t) const override {
    return graded_lex_compare(s, t);
  }
  nlohmann::json provenance() const override { return {{"family", "M0"}}; }
};

/// L_sigma for a total order sigma on the ground set.
class LexOrder final : public MultisetOrder {
 public:
  LexOrder(std::vector<int> sigma, nlohmann::json provenance)
      : sigma_(std::move(sigma)), provenance_(std::move(provenance)) {}
  int compare(const Multiset& s, const Multiset& t) const override {
    return lex_compare(sigma_, s, t);
  }
  nlohmann::json provenance() const override { return provenance_; }
  const std::vector<int>& sigma() const { return sigma_; }

 private:
  std::vector<int> sigma_;
  nlohmann::json provenance_;
};

/// How a part order ranks the v-size x of the restriction S_R.
enum class PartRanking {
  kBySize,          // plain x
  kIntervals,       // K_1: floor(x / eps) ascending, x descending inside
  kShiftedIntervals // K_2: floor(x / eps - 1/2) ascending, x descending inside
};

/// Orders multisets by their restriction to one part R of a partition.
/// Ties on the ranked value are broken by comparing the restrictions
/// lexicographically (ascending for M_1, descending for M_2) when
/// `restricted_tiebreak` is set, and finally by M_0 on the full multisets.
/// An empty part degenerates to M_0.
class PartOrder final : public MultisetOrder {
 public:
  PartOrder(std::shared_ptr<const WeightVector> weights, PartMask part,
            PartRanking ranking, int restricted_tiebreak,
            nlohmann::json provenance);

  int compare(const Multiset& s, const Multiset& t) const override;
  nlohmann::json provenance() const override { return provenance_; }

  bool degenerate() const { return eps_index_ < 0; }
  int eps_index() const { return eps_index_; }
  const PartMask& part() const { return part_; }

 private:
  int restricted_lex(const Multiset& s, const Multiset& t) const;

  std::shared_ptr<const WeightVector> weights_;
  PartMask part_;
  PartRanking ranking_;
  int restricted_tiebreak_;  // 0 none, +1 ascending, -1 descending
  int eps_index_;
  nlohmann::json provenance_;
};

/// A sequence of multiset orders, each meant to be a linear extension of
/// the ambient multiset poset.
struct ExtensionFamily {
  std::vector<OrderPtr> orders;

  std::size_t size() const { return orders.size(); }
  void append(const ExtensionFamily& other) {
    orders.insert(orders.end(), other.orders.begin(), other.orders.end());
  }
};

/// Sorts the given multisets (poset indices) by an order.
LinearExtension linearize(const MultisetOrder& order, const Poset& poset,
                          std::span<const Multiset> elements);

/// Realiser of a multiset poset from a family.
std::vector<LinearExtension> linearize_family(const ExtensionFamily& family,
                                              const Poset& poset,
                                              std::span<const Multiset> elements);

/// The n lexicographic orders putting each ground element on top; together
/// they realise any multiset poset over {0..n-1}.
ExtensionFamily rotation_family(int n, const std::string& family_name);

}  // namespace posetdim
