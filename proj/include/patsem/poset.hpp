#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patsem/bits.hpp"
#include "patsem/error.hpp"

namespace patsem {

class FinPoset;
using PosetPtr = std::shared_ptr<const FinPoset>;

// A finite poset with interned labels and the order stored in closed form
// (reflexive-transitive closure computed at construction), so leq queries
// are O(1) bit tests. Values are immutable after construction.
class FinPoset {
public:
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  // {b : a <= b} and {b : b <= a} as bitsets over the carrier.
  const Bits& up_set(std::size_t a) const { return up_[a]; }
  const Bits& down_set(std::size_t a) const { return down_[a]; }

  bool discrete() const;
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool same_as(const FinPoset& o) const {
    return this == &o || (labels_ == o.labels_ && up_ == o.up_);
  }

  std::size_t content_hash() const;

  friend PosetPtr make_poset(std::vector<std::string> labels,
                             const std::vector<std::pair<std::size_t, std::size_t>>& order_pairs);
  friend PosetPtr make_poset_closed(std::vector<std::string> labels, std::vector<Bits> up);

private:
  FinPoset() = default;
  std::vector<std::string> labels_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

inline bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  return a == b || a->same_as(*b);
}

// Construction. order_pairs generate the order; the closure must be
// antisymmetric or construction fails.
PosetPtr make_poset(std::vector<std::string> labels,
                    const std::vector<std::pair<std::size_t, std::size_t>>& order_pairs);
// Trusted path for internally computed closed orders.
PosetPtr make_poset_closed(std::vector<std::string> labels, std::vector<Bits> up);

PosetPtr singleton_poset();
PosetPtr chain_poset(std::size_t n);     // 0 <= 1 <= ... <= n-1
PosetPtr discrete_poset(std::size_t n);  // labels "a0".."a{n-1}"

PosetPtr product(const PosetPtr& p, const PosetPtr& q);
PosetPtr opposite(const PosetPtr& p);
// Left-contravariant product: ltimes(P,Q) = opposite(P) x Q, carrier P x Q.
PosetPtr ltimes(const PosetPtr& p, const PosetPtr& q);

inline std::size_t pair_index(const PosetPtr& p, const PosetPtr& q, std::size_t a, std::size_t b) {
  (void)p;
  return a * q->size() + b;
}
inline std::pair<std::size_t, std::size_t> unpair_index(const PosetPtr& p, const PosetPtr& q,
                                                        std::size_t i) {
  (void)p;
  return {i / q->size(), i % q->size()};
}

// A total monotone function between posets, stored as an image table.
struct MonotoneFn {
  PosetPtr source;
  PosetPtr target;
  std::vector<std::size_t> table;

  std::size_t operator()(std::size_t a) const { return table[a]; }
  bool operator==(const MonotoneFn& o) const {
    return same_poset(source, o.source) && same_poset(target, o.target) && table == o.table;
  }
  // Pointwise order.
  bool leq(const MonotoneFn& g) const;
};

MonotoneFn make_monotone_fn(PosetPtr src, PosetPtr tgt, std::vector<std::size_t> table);
bool is_monotone_table(const FinPoset& src, const FinPoset& tgt,
                       const std::vector<std::size_t>& table);
MonotoneFn identity_fn(const PosetPtr& p);
MonotoneFn compose_fn(const MonotoneFn& f, const MonotoneFn& g);  // diagrammatic: g after f

// An upward closed subset of a poset.
struct Updeal {
  PosetPtr base;
  Bits members;
  bool operator==(const Updeal& o) const {
    return same_poset(base, o.base) && members == o.members;
  }
};

enum class UpdealOrientation { BySuperset, BySubset };

Updeal up_closure(const PosetPtr& p, const Bits& subset);
bool is_up_closed(const FinPoset& p, const Bits& subset);
// Exhaustive, deterministic: sorted by (cardinality, then bit pattern).
std::vector<Bits> enumerate_updeals(const PosetPtr& p);
// The poset of all updeals of p, ordered by superset (U B) or subset (Uop B).
PosetPtr updeal_lattice(const PosetPtr& p, UpdealOrientation orientation);

std::vector<MonotoneFn> enumerate_monotone_fns(const PosetPtr& p, const PosetPtr& q);
std::optional<std::size_t> minimum_of(const PosetPtr& p, const Bits& subset);

std::string set_label(const FinPoset& p, const Bits& subset);

// Cached updeal enumeration with a bitset->index lookup. Poset values are
// immutable, so entries are keyed by content and shared.
class UpdealList {
public:
  static std::shared_ptr<const UpdealList> of(const PosetPtr& p);
  const PosetPtr& poset() const { return poset_; }
  std::size_t size() const { return sets_.size(); }
  const Bits& at(std::size_t i) const { return sets_[i]; }
  const std::vector<Bits>& sets() const { return sets_; }
  std::size_t index_of(const Bits& b) const;

private:
  PosetPtr poset_;
  std::vector<Bits> sets_;
  std::unordered_map<Bits, std::size_t, BitsHash> index_;
};

using UpdealListPtr = std::shared_ptr<const UpdealList>;

}  // namespace patsem
