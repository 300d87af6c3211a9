#include "patsem/heap.hpp"

namespace patsem {

std::size_t HeapModel::heap_index(
    const std::vector<std::optional<std::pair<std::size_t, std::size_t>>>& cells) const {
  std::size_t radix = 1 + (num_refs + 1) * (num_refs + 1);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < num_refs; ++i) {
    std::size_t digit = 0;
    if (cells[i]) digit = 1 + cells[i]->first * (num_refs + 1) + cells[i]->second;
    idx = idx * radix + digit;
  }
  return idx;
}

std::vector<std::optional<std::pair<std::size_t, std::size_t>>> HeapModel::heap_cells(
    std::size_t idx) const {
  std::size_t radix = 1 + (num_refs + 1) * (num_refs + 1);
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> cells(num_refs);
  for (std::size_t i = num_refs; i-- > 0;) {
    std::size_t digit = idx % radix;
    idx /= radix;
    if (digit)
      cells[i] = std::make_pair((digit - 1) / (num_refs + 1), (digit - 1) % (num_refs + 1));
  }
  return cells;
}

std::string HeapModel::heap_label(std::size_t idx) const {
  auto cells = heap_cells(idx);
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < num_refs; ++i) {
    if (!cells[i]) continue;
    if (!first) s += " ";
    s += ref_poset->label(i + 1) + "->(" + ref_poset->label(cells[i]->first) + "," +
         ref_poset->label(cells[i]->second) + ")";
    first = false;
  }
  return s + "}";
}

HeapModel build_heap_model(std::size_t num_refs) {
  if (num_refs < 1) throw UserError("heap model needs at least one non-nil reference");
  HeapModel hm;
  hm.num_refs = num_refs;

  std::vector<std::string> ref_labels = {"nil"};
  for (std::size_t i = 1; i <= num_refs; ++i) ref_labels.push_back("r" + std::to_string(i));
  hm.ref_poset = make_poset(ref_labels, {});

  std::size_t radix = 1 + (num_refs + 1) * (num_refs + 1);
  std::size_t heap_count = 1;
  for (std::size_t i = 0; i < num_refs; ++i) {
    if (heap_count > limits().max_poset_elements / radix + 1)
      throw CapacityError("heap poset for " + std::to_string(num_refs) +
                          " references exceeds the poset capacity");
    heap_count *= radix;
  }
  std::vector<std::string> heap_labels(heap_count);
  for (std::size_t h = 0; h < heap_count; ++h) heap_labels[h] = hm.heap_label(h);
  hm.heap_poset = make_poset(heap_labels, {});

  Model& m = hm.model;
  m.bases["Ref"] = hm.ref_poset;
  m.bases["Heap"] = hm.heap_poset;
  TypePtr tref = t_base("Ref"), theap = t_base("Heap");
  std::size_t nrefs = num_refs + 1;

  // cell : Ref * (Ref * Ref) -> Heap, the one-cell heap, undefined at nil
  {
    PosetPtr src = product(hm.ref_poset, product(hm.ref_poset, hm.ref_poset));
    std::vector<Bits> rows(src->size(), Bits(heap_count));
    for (std::size_t r = 1; r <= num_refs; ++r)
      for (std::size_t nx = 0; nx < nrefs; ++nx)
        for (std::size_t pv = 0; pv < nrefs; ++pv) {
          std::vector<std::optional<std::pair<std::size_t, std::size_t>>> cells(num_refs);
          cells[r - 1] = std::make_pair(nx, pv);
          rows[r * nrefs * nrefs + nx * nrefs + pv].set(hm.heap_index(cells));
        }
    ConstantDecl cell{"cell", t_arrow(t_prod(tref, t_prod(tref, tref)), theap), std::nullopt,
                      Ideal{src, hm.heap_poset, std::move(rows)}, std::nullopt};
    cell.t_lifted = true;
    m.constants["cell"] = std::move(cell);
  }

  // star : Heap * Heap -> Heap, union of disjoint heaps
  {
    PosetPtr src = product(hm.heap_poset, hm.heap_poset);
    std::vector<Bits> rows(src->size(), Bits(heap_count));
    for (std::size_t h1 = 0; h1 < heap_count; ++h1) {
      auto c1 = hm.heap_cells(h1);
      for (std::size_t h2 = 0; h2 < heap_count; ++h2) {
        auto c2 = hm.heap_cells(h2);
        bool disjoint = true;
        std::vector<std::optional<std::pair<std::size_t, std::size_t>>> u(num_refs);
        for (std::size_t i = 0; i < num_refs && disjoint; ++i) {
          if (c1[i] && c2[i]) disjoint = false;
          u[i] = c1[i] ? c1[i] : c2[i];
        }
        if (disjoint) rows[h1 * heap_count + h2].set(hm.heap_index(u));
      }
    }
    ConstantDecl star{"star", t_arrow(t_prod(theap, theap), theap), std::nullopt,
                      Ideal{src, hm.heap_poset, std::move(rows)}, std::nullopt};
    star.t_lifted = true;
    m.constants["star"] = std::move(star);
  }

  // new : Heap -> Ref, any non-nil reference outside the domain
  {
    std::vector<Bits> rows(heap_count, Bits(nrefs));
    for (std::size_t h = 0; h < heap_count; ++h) {
      auto cells = hm.heap_cells(h);
      for (std::size_t i = 0; i < num_refs; ++i)
        if (!cells[i]) rows[h].set(i + 1);
    }
    ConstantDecl nu{"new", t_arrow(theap, tref), std::nullopt,
                    Ideal{hm.heap_poset, hm.ref_poset, std::move(rows)}, std::nullopt};
    nu.t_lifted = true;
    m.constants["new"] = std::move(nu);
  }

  // reference literals, usable at every level
  for (std::size_t r = 0; r < nrefs; ++r) {
    std::string name = r == 0 ? "nil" : "r" + std::to_string(r);
    ConstantDecl c{name, tref, constant_fn_point(hm.ref_poset, r), std::nullopt, std::nullopt};
    c.r_interp = lift_gr(c);
    c.t_lifted = true;
    m.constants[name] = std::move(c);
  }
  return hm;
}

std::vector<std::size_t> run_rev1_step(const HeapModel& hm, std::size_t input_heap,
                                       std::size_t p, std::size_t n) {
  Model m = hm.model;
  // the scenario's parameters enter as constants
  auto add_ref = [&](const std::string& name, std::size_t r) {
    ConstantDecl c{name, t_base("Ref"), constant_fn_point(hm.ref_poset, r), std::nullopt,
                   std::nullopt};
    c.r_interp = lift_gr(c);
    c.t_lifted = true;
    m.constants[name] = std::move(c);
  };
  add_ref("pp", p);
  add_ref("nn", n);
  {
    ConstantDecl c{"h0", t_base("Heap"), constant_fn_point(hm.heap_poset, input_heap),
                   std::nullopt, std::nullopt};
    c.r_interp = lift_gr(c);
    c.t_lifted = true;
    m.constants["h0"] = std::move(c);
  }
  Denoter d(std::move(m));

  TermPtr pattern =
      parse_term("star <cell <pp, <q, nil>>, cell <nn, <nil, nil>>>");
  TermPtr body = parse_term("star <cell <pp, <q, nn>>, cell <nn, <pp, nil>>>");
  TermPtr plam = m_plam("q", t_base("Ref"), pattern, body);
  TermPtr arg = parse_term("h0");
  (void)typecheck({}, m_app(plam, arg), Level::T, d.model());

  std::vector<std::size_t> out;
  for (std::size_t h = 0; h < hm.heap_poset->size(); ++h) {
    Bits z(hm.heap_poset->size());
    z.set(h);
    if (d.direct_tran_wp({}, plam, arg, z, 0)) out.push_back(h);
  }
  return out;
}

}  // namespace patsem
