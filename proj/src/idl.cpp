#include "patsem/idl.hpp"

#include <algorithm>

namespace patsem {

bool Ideal::subset_of(const Ideal& o) const {
  for (std::size_t a = 0; a < rows.size(); ++a)
    if (!rows[a].is_subset_of(o.rows[a])) return false;
  return true;
}

Bits Ideal::pair_mask() const {
  Bits m(source->size() * target->size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    rows[a].for_each([&](std::size_t b) { m.set(a * target->size() + b); });
  return m;
}

std::size_t Ideal::pair_count() const {
  std::size_t c = 0;
  for (const auto& r : rows) c += r.count();
  return c;
}

bool is_ideal(const PosetPtr& src, const PosetPtr& tgt, const std::vector<Bits>& rows) {
  // Up-right closure rowwise, down-left closure across rows.
  for (std::size_t a = 0; a < src->size(); ++a) {
    Bits want(tgt->size());
    rows[a].for_each([&](std::size_t b) { want |= tgt->up_set(b); });
    if (!want.is_subset_of(rows[a])) return false;
  }
  for (std::size_t a = 0; a < src->size(); ++a)
    for (std::size_t a2 = 0; a2 < src->size(); ++a2)
      if (src->leq(a2, a) && !rows[a].is_subset_of(rows[a2])) return false;
  return true;
}

Ideal make_ideal(PosetPtr src, PosetPtr tgt, std::vector<Bits> rows) {
  if (!is_ideal(src, tgt, rows)) throw UserError("relation violates ideal closure");
  return Ideal{std::move(src), std::move(tgt), std::move(rows)};
}

Ideal empty_ideal(const PosetPtr& src, const PosetPtr& tgt) {
  return Ideal{src, tgt, std::vector<Bits>(src->size(), Bits(tgt->size()))};
}

Ideal full_ideal(const PosetPtr& src, const PosetPtr& tgt) {
  return Ideal{src, tgt, std::vector<Bits>(src->size(), Bits::full(tgt->size()))};
}

Ideal id_ideal(const PosetPtr& p) {
  std::vector<Bits> rows(p->size());
  for (std::size_t a = 0; a < p->size(); ++a) rows[a] = p->up_set(a);
  return Ideal{p, p, std::move(rows)};
}

Ideal ideal_closure(const PosetPtr& src, const PosetPtr& tgt, const std::vector<Bits>& rows) {
  std::vector<Bits> up(src->size(), Bits(tgt->size()));
  for (std::size_t a = 0; a < src->size(); ++a)
    rows[a].for_each([&](std::size_t b) { up[a] |= tgt->up_set(b); });
  std::vector<Bits> out(src->size(), Bits(tgt->size()));
  for (std::size_t a = 0; a < src->size(); ++a)
    src->up_set(a).for_each([&](std::size_t a2) { out[a] |= up[a2]; });
  return Ideal{src, tgt, std::move(out)};
}

Ideal compose(const Ideal& r, const Ideal& s) {
  if (!same_poset(r.target, s.source)) throw UserError("compose: poset mismatch");
  std::vector<Bits> rows(r.source->size(), Bits(s.target->size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    r.rows[a].for_each([&](std::size_t b) { rows[a] |= s.rows[b]; });
  return Ideal{r.source, s.target, std::move(rows)};
}

Ideal union_ideal(const Ideal& r, const Ideal& s) {
  if (!same_poset(r.source, s.source) || !same_poset(r.target, s.target))
    throw UserError("union: poset mismatch");
  std::vector<Bits> rows = r.rows;
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a] |= s.rows[a];
  return Ideal{r.source, r.target, std::move(rows)};
}

Ideal intersect_ideal(const Ideal& r, const Ideal& s) {
  if (!same_poset(r.source, s.source) || !same_poset(r.target, s.target))
    throw UserError("intersect: poset mismatch");
  std::vector<Bits> rows = r.rows;
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a] &= s.rows[a];
  return Ideal{r.source, r.target, std::move(rows)};
}

Ideal graph(const MonotoneFn& f) {
  std::vector<Bits> rows(f.source->size());
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a] = f.target->up_set(f.table[a]);
  return Ideal{f.source, f.target, std::move(rows)};
}

Ideal opgraph(const MonotoneFn& f) {
  // c (Rg f) b iff c <= f(b); this is the left adjoint of Gr f.
  std::vector<Bits> rows(f.target->size(), Bits(f.source->size()));
  for (std::size_t b = 0; b < f.source->size(); ++b)
    f.target->down_set(f.table[b]).for_each([&](std::size_t c) { rows[c].set(b); });
  return Ideal{f.target, f.source, std::move(rows)};
}

bool is_comap(const Ideal& r) {
  for (std::size_t a = 0; a < r.source->size(); ++a)
    if (!minimum_of(r.target, r.rows[a])) return false;
  std::vector<std::size_t> table(r.source->size());
  for (std::size_t a = 0; a < r.source->size(); ++a) table[a] = *minimum_of(r.target, r.rows[a]);
  if (!is_monotone_table(*r.source, *r.target, table)) return false;
  return graph(MonotoneFn{r.source, r.target, table}) == r;
}

MonotoneFn comap_to_fn(const Ideal& r) {
  std::vector<std::size_t> table(r.source->size());
  for (std::size_t a = 0; a < r.source->size(); ++a) {
    auto m = minimum_of(r.target, r.rows[a]);
    if (!m) throw UserError("not a comap: row '" + r.source->label(a) + "' has no minimum");
    table[a] = *m;
  }
  if (!is_monotone_table(*r.source, *r.target, table))
    throw UserError("not a comap: recovered function is not monotone");
  MonotoneFn f{r.source, r.target, std::move(table)};
  if (!(graph(f) == r)) throw UserError("not a comap: graph of recovered function differs");
  return f;
}

Ideal left_adjoint(const Ideal& r) { return opgraph(comap_to_fn(r)); }

Ideal pair_ideal(const Ideal& r, const Ideal& s) {
  if (!same_poset(r.source, s.source)) throw UserError("pair_ideal: source mismatch");
  PosetPtr tgt = product(r.target, s.target);
  std::size_t m = s.target->size();
  std::vector<Bits> rows(r.source->size(), Bits(tgt->size()));
  for (std::size_t d = 0; d < rows.size(); ++d)
    r.rows[d].for_each([&](std::size_t a) {
      s.rows[d].for_each([&](std::size_t b) { rows[d].set(a * m + b); });
    });
  return Ideal{r.source, tgt, std::move(rows)};
}

MonotoneFn proj_fn(const PosetPtr& p, const PosetPtr& q, Side side) {
  PosetPtr src = product(p, q);
  PosetPtr tgt = side == Side::Left ? p : q;
  std::vector<std::size_t> t(src->size());
  for (std::size_t a = 0; a < p->size(); ++a)
    for (std::size_t b = 0; b < q->size(); ++b)
      t[a * q->size() + b] = side == Side::Left ? a : b;
  return MonotoneFn{src, tgt, std::move(t)};
}

Ideal proj_ideal(const PosetPtr& p, const PosetPtr& q, Side side) {
  return graph(proj_fn(p, q, side));
}

MonotoneFn pair_fn(const MonotoneFn& f, const MonotoneFn& g) {
  if (!same_poset(f.source, g.source)) throw UserError("pair_fn: source mismatch");
  PosetPtr tgt = product(f.target, g.target);
  std::vector<std::size_t> t(f.source->size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = f.table[a] * g.target->size() + g.table[a];
  return MonotoneFn{f.source, tgt, std::move(t)};
}

MonotoneFn prod_fn(const MonotoneFn& f, const MonotoneFn& g) {
  PosetPtr src = product(f.source, g.source);
  PosetPtr tgt = product(f.target, g.target);
  std::vector<std::size_t> t(src->size());
  for (std::size_t a = 0; a < f.source->size(); ++a)
    for (std::size_t b = 0; b < g.source->size(); ++b)
      t[a * g.source->size() + b] = f.table[a] * g.target->size() + g.table[b];
  return MonotoneFn{src, tgt, std::move(t)};
}

Ideal prod_ideal(const Ideal& q, const Ideal& r) {
  PosetPtr src = product(q.source, r.source);
  PosetPtr tgt = product(q.target, r.target);
  std::vector<Bits> rows(src->size(), Bits(tgt->size()));
  for (std::size_t a = 0; a < q.source->size(); ++a)
    for (std::size_t c = 0; c < r.source->size(); ++c) {
      std::size_t i = a * r.source->size() + c;
      q.rows[a].for_each([&](std::size_t b) {
        r.rows[c].for_each([&](std::size_t d) { rows[i].set(b * r.target->size() + d); });
      });
    }
  return Ideal{src, tgt, std::move(rows)};
}

MonotoneFn lambda_direct_image(const Ideal& r) {
  PosetPtr u = updeal_lattice(r.target, UpdealOrientation::BySuperset);
  auto ul = UpdealList::of(r.target);
  std::vector<std::size_t> t(r.source->size());
  for (std::size_t b = 0; b < t.size(); ++b) t[b] = ul->index_of(r.rows[b]);
  return make_monotone_fn(r.source, u, std::move(t));
}

Ideal membership_ideal(const PosetPtr& p) {
  PosetPtr u = updeal_lattice(p, UpdealOrientation::BySuperset);
  auto ul = UpdealList::of(p);
  std::vector<Bits> rows(u->size());
  for (std::size_t i = 0; i < u->size(); ++i) rows[i] = ul->at(i);
  return make_ideal(u, p, std::move(rows));
}

Ideal cur_x(const Ideal& r, const PosetPtr& a, const PosetPtr& b) {
  // r : a x b -> c becomes a -> (b ltimes c)
  if (r.source->size() != a->size() * b->size()) throw UserError("cur_x: shape mismatch");
  PosetPtr c = r.target;
  PosetPtr bc = ltimes(b, c);
  std::vector<Bits> rows(a->size(), Bits(bc->size()));
  for (std::size_t ai = 0; ai < a->size(); ++ai)
    for (std::size_t bi = 0; bi < b->size(); ++bi)
      r.rows[ai * b->size() + bi].for_each(
          [&](std::size_t ci) { rows[ai].set(bi * c->size() + ci); });
  return make_ideal(a, bc, std::move(rows));
}

Ideal uncur_x(const Ideal& s, const PosetPtr& b, const PosetPtr& c) {
  // s : a -> (b ltimes c) becomes a x b -> c
  if (s.target->size() != b->size() * c->size()) throw UserError("uncur_x: shape mismatch");
  PosetPtr a = s.source;
  PosetPtr ab = product(a, b);
  std::vector<Bits> rows(ab->size(), Bits(c->size()));
  for (std::size_t ai = 0; ai < a->size(); ++ai)
    s.rows[ai].for_each([&](std::size_t i) {
      rows[ai * b->size() + i / c->size()].set(i % c->size());
    });
  return make_ideal(ab, c, std::move(rows));
}

std::vector<Ideal> enumerate_ideals(const PosetPtr& p, const PosetPtr& q) {
  // Ideals p -> q are exactly the updeals of p ltimes q. The cached list
  // also remembers over-budget shapes, so repeated attempts fail fast.
  const auto& sets = UpdealList::of(ltimes(p, q))->sets();
  std::vector<Ideal> out;
  out.reserve(sets.size());
  for (const auto& s : sets) {
    std::vector<Bits> rows(p->size(), Bits(q->size()));
    s.for_each([&](std::size_t i) { rows[i / q->size()].set(i % q->size()); });
    out.push_back(Ideal{p, q, std::move(rows)});
  }
  return out;
}

std::size_t HomObjectIdl::index_of(const Ideal& r) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].rows == r.rows) return i;
  throw UserError("ideal is not an element of this hom object");
}

HomIdlPtr hom_object_idl(const PosetPtr& b, const PosetPtr& c) {
  auto h = std::make_shared<HomObjectIdl>();
  h->domain = b;
  h->codomain = c;
  h->points = enumerate_ideals(b, c);
  std::size_t n = h->points.size();
  if (n > limits().max_poset_elements)
    throw CapacityError("hom object over posets of size " + std::to_string(b->size()) + " and " +
                        std::to_string(c->size()) + " would have " + std::to_string(n) +
                        " elements");
  std::vector<std::string> labels;
  labels.reserve(n);
  std::vector<Bits> up(n, Bits(n));
  std::vector<Bits> masks;
  masks.reserve(n);
  for (const auto& r : h->points) masks.push_back(r.pair_mask());
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "{";
    bool first = true;
    for (std::size_t a = 0; a < b->size(); ++a)
      h->points[i].rows[a].for_each([&](std::size_t bb) {
        if (!first) s += ",";
        s += "(" + b->label(a) + "," + c->label(bb) + ")";
        first = false;
      });
    s += "}";
    if (s.size() > 96)
      s = "{..." + std::to_string(masks[i].count()) + " pairs#" +
          std::to_string(masks[i].hash() % 100000) + "}";
    labels.push_back(s);
    for (std::size_t j = 0; j < n; ++j)
      if (masks[j].is_subset_of(masks[i])) up[i].set(j);  // homset order is superset
  }
  h->poset = make_poset_closed(std::move(labels), std::move(up));
  return h;
}

Ideal cur_i(const Ideal& r, const PosetPtr& a, const PosetPtr& b, const HomObjectIdl& bc) {
  // relates x in a to every ideal contained in { (b,c) : (x,b) R c }.
  if (r.source->size() != a->size() * b->size()) throw UserError("cur_i: shape mismatch");
  std::size_t m = r.target->size();
  std::vector<Bits> rows(a->size(), Bits(bc.poset->size()));
  for (std::size_t ai = 0; ai < a->size(); ++ai) {
    std::vector<Bits> slice(b->size(), Bits(m));
    for (std::size_t bi = 0; bi < b->size(); ++bi) slice[bi] = r.rows[ai * b->size() + bi];
    for (std::size_t v = 0; v < bc.points.size(); ++v) {
      bool inside = true;
      for (std::size_t bi = 0; bi < b->size() && inside; ++bi)
        if (!bc.points[v].rows[bi].is_subset_of(slice[bi])) inside = false;
      if (inside) rows[ai].set(v);
    }
  }
  return make_ideal(a, bc.poset, std::move(rows));
}

Ideal uncur_i(const Ideal& s, const HomObjectIdl& bc) {
  // (a,b) (uncur_i S) c iff exists R with a S R and b R c.
  if (!same_poset(s.target, bc.poset)) throw UserError("uncur_i: shape mismatch");
  PosetPtr b = bc.domain, c = bc.codomain;
  PosetPtr ab = product(s.source, b);
  std::vector<Bits> rows(ab->size(), Bits(c->size()));
  for (std::size_t ai = 0; ai < s.source->size(); ++ai)
    s.rows[ai].for_each([&](std::size_t v) {
      for (std::size_t bi = 0; bi < b->size(); ++bi)
        rows[ai * b->size() + bi] |= bc.points[v].rows[bi];
    });
  return make_ideal(ab, c, std::move(rows));
}

Ideal ap_i(const HomObjectIdl& bc) {
  PosetPtr src = product(bc.poset, bc.domain);
  std::size_t m = bc.domain->size();
  std::vector<Bits> rows(src->size(), Bits(bc.codomain->size()));
  for (std::size_t v = 0; v < bc.points.size(); ++v)
    for (std::size_t b = 0; b < m; ++b) rows[v * m + b] = bc.points[v].rows[b];
  return make_ideal(src, bc.codomain, std::move(rows));
}

Ideal hom_i_action(const Ideal& r, const Ideal& s, const HomObjectIdl& bc,
                   const HomObjectIdl& ad) {
  // U (R -oi S) V iff R ; U ; S  contains  V
  if (!same_poset(r.target, bc.domain) || !same_poset(s.source, bc.codomain) ||
      !same_poset(r.source, ad.domain) || !same_poset(s.target, ad.codomain))
    throw UserError("hom_i_action: poset mismatch");
  std::vector<Bits> rows(bc.poset->size(), Bits(ad.poset->size()));
  for (std::size_t u = 0; u < bc.points.size(); ++u) {
    Ideal rus = compose(compose(r, bc.points[u]), s);
    for (std::size_t v = 0; v < ad.points.size(); ++v)
      if (ad.points[v].subset_of(rus)) rows[u].set(v);
  }
  return make_ideal(bc.poset, ad.poset, std::move(rows));
}

Ideal internal_gr(const HomObjectIdl& bc, const PosetPtr& fn_poset,
                  const std::vector<MonotoneFn>& fn_points) {
  std::vector<Bits> rows(fn_poset->size(), Bits(bc.poset->size()));
  for (std::size_t fi = 0; fi < fn_points.size(); ++fi) {
    Ideal g = graph(fn_points[fi]);
    for (std::size_t v = 0; v < bc.points.size(); ++v)
      if (bc.points[v].subset_of(g)) rows[fi].set(v);
  }
  return make_ideal(fn_poset, bc.poset, std::move(rows));
}

RawRelation internal_rg(const PosetPtr& fn_poset, const std::vector<MonotoneFn>& fn_points,
                        const HomObjectIdl& cb) {
  // f relates to Rg f and everything within it; equivalent inside a sandwich
  // to the bare graph of the anti-monotonic function f |-> Rg f.
  std::vector<Bits> rows(fn_poset->size(), Bits(cb.poset->size()));
  for (std::size_t fi = 0; fi < fn_points.size(); ++fi) {
    Ideal rg = opgraph(fn_points[fi]);
    for (std::size_t v = 0; v < cb.points.size(); ++v)
      if (cb.points[v].subset_of(rg)) rows[fi].set(v);
  }
  return RawRelation{fn_poset, cb.poset, std::move(rows)};
}

Ideal internal_comp(const HomObjectIdl& bc, const HomObjectIdl& cd, const HomObjectIdl& bd) {
  PosetPtr src = product(bc.poset, cd.poset);
  std::vector<Bits> rows(src->size(), Bits(bd.poset->size()));
  for (std::size_t i = 0; i < bc.points.size(); ++i)
    for (std::size_t j = 0; j < cd.points.size(); ++j) {
      Ideal rs = compose(bc.points[i], cd.points[j]);
      std::size_t row = i * cd.points.size() + j;
      for (std::size_t v = 0; v < bd.points.size(); ++v)
        if (bd.points[v].subset_of(rs)) rows[row].set(v);
    }
  return make_ideal(src, bd.poset, std::move(rows));
}

Ideal sandwich(const Ideal& q, const RawRelation& raw, const Ideal& s) {
  if (!same_poset(q.target, raw.source) || !same_poset(raw.target, s.source))
    throw UserError("sandwich: poset mismatch");
  std::vector<Bits> mid(q.source->size(), Bits(raw.target->size()));
  for (std::size_t a = 0; a < mid.size(); ++a)
    q.rows[a].for_each([&](std::size_t f) { mid[a] |= raw.rows[f]; });
  std::vector<Bits> rows(q.source->size(), Bits(s.target->size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    mid[a].for_each([&](std::size_t v) { rows[a] |= s.rows[v]; });
  return make_ideal(q.source, s.target, std::move(rows));
}

std::string dump_ideal(const Ideal& r) {
  std::string out;
  for (std::size_t a = 0; a < r.source->size(); ++a)
    r.rows[a].for_each([&](std::size_t b) {
      out += r.source->label(a) + " ~ " + r.target->label(b) + "\n";
    });
  return out;
}

}  // namespace patsem
