#include "patsem/poset.hpp"

#include <algorithm>
#include <mutex>

namespace patsem {

Limits& limits() {
  static Limits l;
  return l;
}

bool FinPoset::discrete() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (up_[a].count() != 1) return false;
  return true;
}

std::optional<std::size_t> FinPoset::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t FinPoset::content_hash() const {
  std::size_t h = 14695981039346656037ull;
  for (const auto& l : labels_) h = h * 1099511628211ull ^ std::hash<std::string>{}(l);
  for (const auto& b : up_) h = h * 1099511628211ull ^ b.hash();
  return h;
}

static void check_capacity(std::size_t n, const char* what) {
  if (n > limits().max_poset_elements)
    throw CapacityError(std::string(what) + " would have " + std::to_string(n) +
                        " elements; limit is " + std::to_string(limits().max_poset_elements));
}

PosetPtr make_poset_closed(std::vector<std::string> labels, std::vector<Bits> up) {
  check_capacity(labels.size(), "poset");
  auto p = std::shared_ptr<FinPoset>(new FinPoset());
  p->labels_ = std::move(labels);
  p->up_ = std::move(up);
  std::size_t n = p->labels_.size();
  p->down_.assign(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a)
    p->up_[a].for_each([&](std::size_t b) { p->down_[b].set(a); });
  return p;
}

PosetPtr make_poset(std::vector<std::string> labels,
                    const std::vector<std::pair<std::size_t, std::size_t>>& order_pairs) {
  std::size_t n = labels.size();
  check_capacity(n, "poset");
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a) up[a].set(a);
  for (auto [a, b] : order_pairs) {
    if (a >= n || b >= n) throw UserError("order pair index out of range");
    up[a].set(b);
  }
  // Reflexive-transitive closure, one Warshall pass over bit rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (up[a].test(k)) up[a] |= up[k];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (up[a].test(b) && up[b].test(a))
        throw UserError("not antisymmetric: cycle through '" + labels[a] + "' and '" + labels[b] +
                        "'");
  return make_poset_closed(std::move(labels), std::move(up));
}

PosetPtr singleton_poset() {
  static PosetPtr p = make_poset({"*"}, {});
  return p;
}

PosetPtr chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i + 1 < n) pairs.emplace_back(i, i + 1);
  }
  return make_poset(std::move(labels), pairs);
}

PosetPtr discrete_poset(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return make_poset(std::move(labels), {});
}

PosetPtr product(const PosetPtr& p, const PosetPtr& q) {
  std::size_t n = p->size() * q->size();
  check_capacity(n, "product poset");
  std::vector<std::string> labels;
  labels.reserve(n);
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t a = 0; a < p->size(); ++a)
    for (std::size_t b = 0; b < q->size(); ++b)
      labels.push_back("(" + p->label(a) + "," + q->label(b) + ")");
  for (std::size_t a = 0; a < p->size(); ++a)
    for (std::size_t b = 0; b < q->size(); ++b) {
      std::size_t i = a * q->size() + b;
      p->up_set(a).for_each([&](std::size_t a2) {
        q->up_set(b).for_each([&](std::size_t b2) { up[i].set(a2 * q->size() + b2); });
      });
    }
  return make_poset_closed(std::move(labels), std::move(up));
}

PosetPtr opposite(const PosetPtr& p) {
  std::size_t n = p->size();
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a) up[a] = p->down_set(a);
  return make_poset_closed(p->labels(), std::move(up));
}

PosetPtr ltimes(const PosetPtr& p, const PosetPtr& q) { return product(opposite(p), q); }

bool MonotoneFn::leq(const MonotoneFn& g) const {
  for (std::size_t a = 0; a < source->size(); ++a)
    if (!target->leq(table[a], g.table[a])) return false;
  return true;
}

bool is_monotone_table(const FinPoset& src, const FinPoset& tgt,
                       const std::vector<std::size_t>& table) {
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b)
      if (src.leq(a, b) && !tgt.leq(table[a], table[b])) return false;
  return true;
}

MonotoneFn make_monotone_fn(PosetPtr src, PosetPtr tgt, std::vector<std::size_t> table) {
  if (table.size() != src->size()) throw UserError("monotone function table is not total");
  for (auto v : table)
    if (v >= tgt->size()) throw UserError("monotone function image out of range");
  if (!is_monotone_table(*src, *tgt, table))
    throw UserError("function table violates monotonicity");
  return MonotoneFn{std::move(src), std::move(tgt), std::move(table)};
}

MonotoneFn identity_fn(const PosetPtr& p) {
  std::vector<std::size_t> t(p->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return MonotoneFn{p, p, std::move(t)};
}

MonotoneFn compose_fn(const MonotoneFn& f, const MonotoneFn& g) {
  if (!same_poset(f.target, g.source)) throw UserError("compose_fn: poset mismatch");
  std::vector<std::size_t> t(f.source->size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = g.table[f.table[a]];
  return MonotoneFn{f.source, g.target, std::move(t)};
}

bool is_up_closed(const FinPoset& p, const Bits& subset) {
  bool ok = true;
  subset.for_each([&](std::size_t a) {
    if (!p.up_set(a).is_subset_of(subset)) ok = false;
  });
  return ok;
}

Updeal up_closure(const PosetPtr& p, const Bits& subset) {
  Bits m(p->size());
  subset.for_each([&](std::size_t a) { m |= p->up_set(a); });
  return Updeal{p, m};
}

std::vector<Bits> enumerate_updeals(const PosetPtr& p) {
  std::size_t n = p->size();
  // Cheap lower bounds on the updeal count: every subset of the maximal
  // elements is an updeal, and so is every cofinite set missing only
  // minimal elements. Bail out before walking an exponential space.
  {
    std::size_t maximal = 0, minimal = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (p->up_set(a).count() == 1) ++maximal;
      if (p->down_set(a).count() == 1) ++minimal;
    }
    std::size_t w = std::max(maximal, minimal);
    if (w >= 64 || (std::size_t(1) << w) > limits().max_enumeration)
      throw CapacityError("updeal enumeration exceeds the configured budget (antichain of " +
                          std::to_string(w) + " elements)");
  }
  // Decide membership element by element, uppers first: an element may be
  // included only if all its strict uppers already are.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p->up_set(a).count() < p->up_set(b).count();
  });
  std::vector<Bits> out;
  Bits cur(n);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (out.size() > limits().max_enumeration)
      throw CapacityError("updeal enumeration exceeds the configured budget");
    if (k == n) {
      out.push_back(cur);
      return;
    }
    std::size_t e = order[k];
    self(self, k + 1);
    Bits uppers = p->up_set(e);
    uppers.reset(e);
    if (uppers.is_subset_of(cur)) {
      cur.set(e);
      self(self, k + 1);
      cur.reset(e);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) { return a.canon_less(b); });
  return out;
}

std::string set_label(const FinPoset& p, const Bits& subset) {
  std::string s = "{";
  bool first = true;
  subset.for_each([&](std::size_t i) {
    if (!first) s += ",";
    s += p.label(i);
    first = false;
  });
  s += "}";
  if (s.size() > 96) s = "{..." + std::to_string(subset.count()) + " elems#" +
                         std::to_string(subset.hash() % 100000) + "}";
  return s;
}

PosetPtr updeal_lattice(const PosetPtr& p, UpdealOrientation orientation) {
  const auto& sets = UpdealList::of(p)->sets();
  check_capacity(sets.size(), "updeal lattice");
  std::size_t n = sets.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& s : sets) labels.push_back(set_label(*p, s));
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool le = orientation == UpdealOrientation::BySuperset ? sets[j].is_subset_of(sets[i])
                                                             : sets[i].is_subset_of(sets[j]);
      if (le) up[i].set(j);
    }
  return make_poset_closed(std::move(labels), std::move(up));
}

std::vector<MonotoneFn> enumerate_monotone_fns(const PosetPtr& p, const PosetPtr& q) {
  std::size_t n = p->size(), m = q->size();
  // Assign images along a linear extension of p (lowers first) so the
  // monotonicity constraint against decided elements prunes early.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p->down_set(a).count() < p->down_set(b).count();
  });
  std::vector<MonotoneFn> out;
  std::vector<std::size_t> img(n, 0);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (out.size() > limits().max_enumeration)
      throw CapacityError("monotone function enumeration exceeds the configured budget");
    if (k == n) {
      out.push_back(MonotoneFn{p, q, img});
      return;
    }
    std::size_t e = order[k];
    for (std::size_t v = 0; v < m; ++v) {
      bool ok = true;
      for (std::size_t k2 = 0; k2 < k && ok; ++k2) {
        std::size_t d = order[k2];
        if (p->leq(d, e) && !q->leq(img[d], v)) ok = false;
        if (p->leq(e, d) && !q->leq(v, img[d])) ok = false;
      }
      if (!ok) continue;
      img[e] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const MonotoneFn& a, const MonotoneFn& b) { return a.table < b.table; });
  return out;
}

std::optional<std::size_t> minimum_of(const PosetPtr& p, const Bits& subset) {
  // A least element is unique by antisymmetry, so the first hit wins.
  std::optional<std::size_t> best;
  subset.for_each([&](std::size_t a) {
    if (best) return;
    bool least = true;
    subset.for_each([&](std::size_t b) {
      if (!p->leq(a, b)) least = false;
    });
    if (least) best = a;
  });
  return best;
}

std::shared_ptr<const UpdealList> UpdealList::of(const PosetPtr& p) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::vector<std::shared_ptr<const UpdealList>>> cache;
  static std::unordered_map<std::size_t, std::vector<PosetPtr>> over_budget;
  std::size_t h = p->content_hash();
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(h);
    if (it != cache.end())
      for (const auto& ul : it->second)
        if (ul->poset()->same_as(*p)) return ul;
    auto ob = over_budget.find(h);
    if (ob != over_budget.end())
      for (const auto& q : ob->second)
        if (q->same_as(*p))
          throw CapacityError("updeal enumeration exceeds the configured budget");
  }
  auto ul = std::make_shared<UpdealList>();
  ul->poset_ = p;
  try {
    ul->sets_ = enumerate_updeals(p);
  } catch (const CapacityError&) {
    std::lock_guard<std::mutex> g(mu);
    over_budget[h].push_back(p);
    throw;
  }
  for (std::size_t i = 0; i < ul->sets_.size(); ++i) ul->index_[ul->sets_[i]] = i;
  {
    std::lock_guard<std::mutex> g(mu);
    cache[h].push_back(ul);
  }
  return ul;
}

std::size_t UpdealList::index_of(const Bits& b) const {
  auto it = index_.find(b);
  if (it == index_.end()) throw UserError("subset is not an updeal of this poset");
  return it->second;
}

}  // namespace patsem
