#pragma once

#include <string>
#include <vector>

#include "patsem/poset.hpp"

namespace patsem {

// An ideal relation between posets: closed down-left and up-right,
// i.e. a' <= a, a R b, b <= b' imply a' R b'. Arrow of the category Idl.
// Rows are stored as dense bitsets indexed by canonical element order.
struct Ideal {
  PosetPtr source;
  PosetPtr target;
  std::vector<Bits> rows;  // rows[a] = { b : a R b }

  bool contains(std::size_t a, std::size_t b) const { return rows[a].test(b); }
  bool operator==(const Ideal& o) const {
    return same_poset(source, o.source) && same_poset(target, o.target) && rows == o.rows;
  }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
  // Set inclusion of pair sets (NB: the homset order of Idl is superset).
  bool subset_of(const Ideal& o) const;
  Bits pair_mask() const;  // flattened a*|target|+b bitset
  std::size_t pair_count() const;
};

// A relation with no closure invariant. Outputs of internal_rg live here;
// only sandwich composition accepts this type.
struct RawRelation {
  PosetPtr source;
  PosetPtr target;
  std::vector<Bits> rows;
};

Ideal make_ideal(PosetPtr src, PosetPtr tgt, std::vector<Bits> rows);  // checks closure
Ideal empty_ideal(const PosetPtr& src, const PosetPtr& tgt);
Ideal full_ideal(const PosetPtr& src, const PosetPtr& tgt);
Ideal id_ideal(const PosetPtr& p);
bool is_ideal(const PosetPtr& src, const PosetPtr& tgt, const std::vector<Bits>& rows);
Ideal ideal_closure(const PosetPtr& src, const PosetPtr& tgt, const std::vector<Bits>& rows);
Ideal compose(const Ideal& r, const Ideal& s);
Ideal union_ideal(const Ideal& r, const Ideal& s);
Ideal intersect_ideal(const Ideal& r, const Ideal& s);

// Gr f = f ; <= , the graph embedding of Mofun into Idl.
Ideal graph(const MonotoneFn& f);
// Rg f = (Gr f)^*: c (Rg f) b iff c <= f(b). Left adjoint of Gr f.
Ideal opgraph(const MonotoneFn& f);

bool is_comap(const Ideal& r);
// Recovers f with Gr f = r via row minima; throws UserError("not a comap") otherwise.
MonotoneFn comap_to_fn(const Ideal& r);
Ideal left_adjoint(const Ideal& r);

Ideal pair_ideal(const Ideal& r, const Ideal& s);        // d <R,S> (a,b) iff dRa and dSb
Ideal prod_ideal(const Ideal& q, const Ideal& r);        // componentwise
enum class Side { Left, Right };
Ideal proj_ideal(const PosetPtr& p, const PosetPtr& q, Side side);  // Gr pi
MonotoneFn proj_fn(const PosetPtr& p, const PosetPtr& q, Side side);
MonotoneFn pair_fn(const MonotoneFn& f, const MonotoneFn& g);
MonotoneFn prod_fn(const MonotoneFn& f, const MonotoneFn& g);

// Power adjunction. Lambda R sends b to its direct image as an element of
// U C (updeal lattice by superset); the membership converse is an ideal.
MonotoneFn lambda_direct_image(const Ideal& r);
Ideal membership_ideal(const PosetPtr& p);  // U P -> P

// Coordinate-shifting curry for the ltimes adjunction:
// a (cur_x R) (b,c) iff (a,b) R c.
Ideal cur_x(const Ideal& r, const PosetPtr& a, const PosetPtr& b);
Ideal uncur_x(const Ideal& s, const PosetPtr& b, const PosetPtr& c);

// The relation-space exponent B -oi C = U(B ltimes C): the poset of all
// ideals B -> C ordered by superset, with the witnessing Ideal per element.
struct HomObjectIdl {
  PosetPtr domain;
  PosetPtr codomain;
  PosetPtr poset;
  std::vector<Ideal> points;
  std::size_t index_of(const Ideal& r) const;
};
using HomIdlPtr = std::shared_ptr<const HomObjectIdl>;
HomIdlPtr hom_object_idl(const PosetPtr& b, const PosetPtr& c);

std::vector<Ideal> enumerate_ideals(const PosetPtr& p, const PosetPtr& q);

// cur_i R = Gr(Lambda(cur_x R)); relates a to every ideal within the slice.
Ideal cur_i(const Ideal& r, const PosetPtr& a, const PosetPtr& b, const HomObjectIdl& bc);
Ideal uncur_i(const Ideal& s, const HomObjectIdl& bc);
Ideal ap_i(const HomObjectIdl& bc);  // (R,b) ap c iff b R c

// R -oi S on morphisms: U (R -oi S) V iff R;U;S contains V. A comap.
Ideal hom_i_action(const Ideal& r, const Ideal& s, const HomObjectIdl& bc,
                   const HomObjectIdl& ad);

// Internalizations. gr relates f to every ideal within Gr f. rg is the
// anti-monotonic opgraph leg and is NOT an ideal; it only composes inside
// a sandwich. comp relates (R,S) to every ideal within R;S.
Ideal internal_gr(const HomObjectIdl& bc, const PosetPtr& fn_poset,
                  const std::vector<MonotoneFn>& fn_points);
RawRelation internal_rg(const PosetPtr& fn_poset, const std::vector<MonotoneFn>& fn_points,
                        const HomObjectIdl& cb);
Ideal internal_comp(const HomObjectIdl& bc, const HomObjectIdl& cd, const HomObjectIdl& bd);

// Q ; Raw ; S for ideals Q,S. The result is an ideal by the sandwich lemma
// and its closure is asserted.
Ideal sandwich(const Ideal& q, const RawRelation& raw, const Ideal& s);

std::string dump_ideal(const Ideal& r);  // sorted pair list, one per line

}  // namespace patsem
