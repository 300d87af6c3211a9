#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "patsem/idl.hpp"

namespace patsem {

// A monotonic predicate transformer A -> B: a monotone function from
// updeals of B to updeals of A, stored as an explicit table over the
// canonical updeal enumerations of both posets.
struct Transformer {
  PosetPtr source;
  PosetPtr target;
  UpdealListPtr src_updeals;
  UpdealListPtr tgt_updeals;
  std::vector<std::size_t> table;  // tgt updeal index -> src updeal index

  const Bits& apply_idx(std::size_t zi) const { return src_updeals->at(table[zi]); }
  Bits apply(const Bits& z) const { return src_updeals->at(table[tgt_updeals->index_of(z)]); }
  bool operator==(const Transformer& o) const {
    return same_poset(source, o.source) && same_poset(target, o.target) && table == o.table;
  }
  bool operator!=(const Transformer& o) const { return !(*this == o); }
};

Transformer make_transformer(PosetPtr src, PosetPtr tgt, std::vector<std::size_t> table);
Transformer make_transformer_fn(const PosetPtr& src, const PosetPtr& tgt,
                                const std::function<Bits(const Bits&)>& wp);

Transformer id_tran(const PosetPtr& p);
Transformer compose_t(const Transformer& t, const Transformer& u);  // (t;u)(X) = t(u(X))
bool refines(const Transformer& t, const Transformer& u);           // forall X: t X <= u X
Transformer meet_t(const Transformer& t, const Transformer& u);     // demonic, pointwise meet
Transformer join_t(const Transformer& t, const Transformer& u);     // angelic, pointwise join

// Universal image: a in (A R) X iff every R-successor of a is in X.
Transformer universal_image(const Ideal& r);
// Existential image of R : A -> B, an arrow B -> A of Tran (direct image).
Transformer existential_image(const Ideal& r);

bool is_strict(const Transformer& t);
bool is_costrict(const Transformer& t);
bool is_conjunctive(const Transformer& t);  // binary intersections
bool is_map(const Transformer& t);          // universally conjunctive
bool is_comap(const Transformer& t);        // universally disjunctive
bool is_bimap(const Transformer& t);
Ideal map_to_ideal(const Transformer& t);

// Adjoint partners, asserted to satisfy the adjunction inequations.
Transformer comap_partner_of_map(const Transformer& t);  // for map t: A->B gives comap B->A
Transformer map_partner_of_comap(const Transformer& t);  // for comap t: A->B gives map B->A

Transformer pair_t(const Transformer& t, const Transformer& u);
Transformer prod_t(const Transformer& t, const Transformer& u);
Transformer proj_t(const PosetPtr& p, const PosetPtr& q, Side side);

std::vector<Transformer> enumerate_transformers(const PosetPtr& p, const PosetPtr& q);

// The exponent object B -ot C: all transformers B -> C ordered by refinement.
struct HomObjectTran {
  PosetPtr domain;
  PosetPtr codomain;
  PosetPtr poset;
  std::vector<Transformer> points;
  std::map<std::vector<std::size_t>, std::size_t> by_table;
  std::size_t index_of(const Transformer& t) const;
};
using HomTranPtr = std::shared_ptr<const HomObjectTran>;
HomTranPtr hom_object_tran(const PosetPtr& b, const PosetPtr& c);

Transformer ap_t(const HomObjectTran& bc);  // ap(Z) = {(t,b) : b in t Z}
// cur_t v = A(Gr g) with g a = (Z |-> { b : (a,b) in v Z }).
Transformer cur_t(const Transformer& v, const PosetPtr& a, const PosetPtr& b,
                  const HomObjectTran& bc);
Transformer uncur_t(const Transformer& s, const HomObjectTran& bc);
Transformer hom_t_action(const Transformer& t, const Transformer& u, const HomObjectTran& bc,
                         const HomObjectTran& ad);

// Internal universal image (B -oi C) -> (B -ot C), the bimap R |-> A R.
Transformer unim(const HomObjectIdl& bc, const HomObjectTran& bct);
// Internal existential image (B -oi C) -> (C -ot B) per the universal-preimage
// formula exim(Y) = { R : forall S within R, E S in Y }.
Transformer exim(const HomObjectIdl& bc, const HomObjectTran& cbt);
// Internal composition, fixed pointwise as A(Gr compose).
Transformer internal_comp_t(const HomObjectTran& bc, const HomObjectTran& cd,
                            const HomObjectTran& bd);

std::string dump_transformer(const Transformer& t);

}  // namespace patsem
