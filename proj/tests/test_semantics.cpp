#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "patsem/semantics.hpp"

using namespace patsem;

namespace {

// int3 = {-1,0,1} with clamped arithmetic, plus booleans: the registry the
// worked examples use.
Model int3_model() {
  Model m;
  auto b = make_poset({"-1", "0", "1"}, {});
  auto bb = product(b, b);
  m.bases["b"] = b;
  auto clamp = [](long v) { return std::size_t(std::max(-1L, std::min(1L, v)) + 1); };
  std::vector<std::size_t> minus_tab(9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      minus_tab[i * 3 + j] = clamp(long(i) - long(j));
  ConstantDecl minus{"minus", t_arrow(t_prod(t_base("b"), t_base("b")), t_base("b")),
                     MonotoneFn{bb, b, minus_tab}, std::nullopt, std::nullopt};
  minus.r_interp = lift_gr(minus);
  minus.t_interp = lift_univ(minus);
  m.constants["minus"] = minus;
  for (long v = -1; v <= 1; ++v) {
    std::string name = v < 0 ? "m1" : std::to_string(v);
    ConstantDecl c{name, t_base("b"), constant_fn_point(b, std::size_t(v + 1)), std::nullopt,
                   std::nullopt};
    c.r_interp = lift_gr(c);
    c.t_interp = lift_univ(c);
    m.constants[name] = c;
  }
  return m;
}

Model two_model(PosetPtr base) {
  Model m;
  m.bases["b"] = base;
  MonotoneFn id = identity_fn(base);
  ConstantDecl f{"f", t_arrow(t_base("b"), t_base("b")), id, graph(id), universal_image(graph(id))};
  m.constants["f"] = f;
  std::vector<std::size_t> ct(base->size(), base->size() - 1);
  MonotoneFn topf{base, base, ct};
  ConstantDecl g{"g", t_arrow(t_base("b"), t_base("b")), topf, graph(topf),
                 universal_image(graph(topf))};
  m.constants["g"] = g;
  ConstantDecl k0{"k0", t_base("b"), constant_fn_point(base, 0), std::nullopt, std::nullopt};
  k0.r_interp = lift_gr(k0);
  k0.t_interp = lift_univ(k0);
  m.constants["k0"] = k0;
  ConstantDecl k1{"k1", t_base("b"), constant_fn_point(base, base->size() - 1), std::nullopt,
                  std::nullopt};
  k1.r_interp = lift_gr(k1);
  k1.t_interp = lift_univ(k1);
  m.constants["k1"] = k1;
  return m;
}

Bits bits_of(std::size_t n, std::initializer_list<std::size_t> xs) {
  Bits b(n);
  for (auto x : xs) b.set(x);
  return b;
}

}  // namespace

TEST_CASE("denote_type shapes") {
  Denoter d(two_model(discrete_poset(2)));
  CHECK(d.type_poset(Level::R, parse_type("b -> b"))->size() == 16);
  Denoter d2(two_model(chain_poset(2)));
  CHECK(d2.type_poset(Level::F, parse_type("b -> b"))->size() == 3);
  // arrow-free types agree across levels
  for (const auto& ty : {"b", "b * b", "1", "(b * b) * b"}) {
    PosetPtr pf = d.type_poset(Level::F, parse_type(ty));
    CHECK(pf->same_as(*d.type_poset(Level::R, parse_type(ty))));
    CHECK(pf->same_as(*d.type_poset(Level::T, parse_type(ty))));
  }
}

TEST_CASE("functional semantics basics") {
  Denoter d(two_model(chain_poset(2)));
  // identity lambda denotes the identity point of the hom poset
  MonotoneFn idl = d.denote_fun({}, parse_term("\\x:b. x"));
  auto h = d.fn_hom(d.type_poset(Level::F, t_base("b")), d.type_poset(Level::F, t_base("b")));
  CHECK(idl.table[0] == h->index_of(identity_fn(d.model().base("b"))));

  // constant clause: x:b |- k1 is the constant function
  Context ctx;
  ctx.vars.emplace_back("x", t_base("b"));
  MonotoneFn c = d.denote_fun(ctx, parse_term("k1"));
  CHECK(c.table == std::vector<std::size_t>{1, 1});

  // fst/snd application
  MonotoneFn sw = d.denote_fun(ctx, parse_term("<snd <x, k1>, fst <x, k1>>"));
  CHECK(sw.table[0] == 1 * 2 + 0);
}

TEST_CASE("beta is an equality at level F on a tiny corpus") {
  for (const auto& base : {chain_poset(2), discrete_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    for (const auto& [lam, arg] : std::vector<std::pair<std::string, std::string>>{
             {"\\x:b. x", "y"},
             {"\\x:b. f x", "g y"},
             {"\\x:b. <x, x>", "f y"},
             {"\\x:b. k1", "y"}}) {
      TermPtr l = parse_term(lam), a = parse_term(arg);
      TermPtr app = m_app(l, a);
      TermPtr subst = substitute(l->a, l->binder, a);
      MonotoneFn lhs = d.denote_fun(ctx, app);
      MonotoneFn rhs = d.denote_fun(ctx, subst);
      CHECK(lhs.table == rhs.table);
    }
  }
}

TEST_CASE("app fast paths agree with the ap composites") {
  // audit: constant application by composition equals the table route
  // through the materialized hom object
  for (const auto& base : {chain_poset(2), discrete_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    TermPtr viaconst = parse_term("g y");
    // eta-expanded form forces the generic ap route
    TermPtr vialam = parse_term("(\\x:b. g x) y");
    CHECK(d.denote_fun(ctx, viaconst).table == d.denote_fun(ctx, vialam).table);
    CHECK(d.denote_rel(ctx, viaconst) == d.denote_rel(ctx, vialam));
    CHECK(d.denote_tran(ctx, viaconst) == d.denote_tran(ctx, vialam));
  }
}

TEST_CASE("the by-value example over clamped int3 minus") {
  Denoter d(int3_model());
  // [(\x. minus<x,x>)(0 |~| 1)] relates unit to exactly {0}
  TermPtr byvalue = parse_term("(\\x:b. minus <x, x>) (0 |~| 1)");
  Ideal r = d.denote_rel({}, byvalue);
  CHECK(r.rows[0] == bits_of(3, {1}));
  // [minus<0|~|1, 0|~|1>] relates unit to {-1,0,1}, a proper superset
  TermPtr byname = parse_term("minus <0 |~| 1, 0 |~| 1>");
  Ideal r2 = d.denote_rel({}, byname);
  CHECK(r2.rows[0] == bits_of(3, {0, 1, 2}));
  CHECK(r.subset_of(r2));
  CHECK(r != r2);
}

TEST_CASE("simulation families") {
  for (const auto& base : {chain_poset(2), discrete_poset(2)}) {
    Denoter d(two_model(base));
    // simi at a base type is the identity ideal
    CHECK(d.simi(t_base("b")) == id_ideal(base));
    // psim at products of bases is the identity transformer
    TypePtr bb = t_prod(t_base("b"), t_base("b"));
    CHECK(d.psim(bb) == id_tran(d.type_poset(Level::R, bb)));
    // arrow case: comap / bimap as stated
    TypePtr arr = t_arrow(t_base("b"), t_base("b"));
    CHECK(is_comap(d.simi(arr)));
    CHECK(is_bimap(d.psim(arr)));
    // adjoints satisfy the inequations (asserted inside the constructors)
    (void)d.simi_star(arr);
    (void)d.psim_star(arr);
  }
}

TEST_CASE("arrow-free corollaries of the simulation theorems") {
  for (const auto& base : {chain_poset(2), discrete_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    for (const auto& s : {"y", "g y", "<y, f y>", "f (g y)", "fst <y, y>"}) {
      TermPtr t = parse_term(s);
      // R[M] >= Gr F[M]
      CHECK(graph(d.denote_fun(ctx, t)).subset_of(d.denote_rel(ctx, t)));
      // T[N] refines A(R[N])
      CHECK(refines(d.denote_tran(ctx, t), universal_image(d.denote_rel(ctx, t))));
    }
    for (const auto& s : {"y |~| g y", "f y |~| k0"}) {
      TermPtr t = parse_term(s);
      CHECK(refines(d.denote_tran(ctx, t), universal_image(d.denote_rel(ctx, t))));
    }
  }
}

TEST_CASE("single-clause converse idiom") {
  // \\x. f x => x applied to v relates to every preimage of v under f
  auto base = discrete_poset(2);
  Model m = two_model(base);
  std::vector<std::size_t> swap_tab = {1, 0};
  m.constants["sw"] = ConstantDecl{"sw", t_arrow(t_base("b"), t_base("b")),
                                   MonotoneFn{base, base, swap_tab}, std::nullopt, std::nullopt};
  m.constants["sw"].r_interp = lift_gr(m.constants["sw"]);
  m.constants["sw"].t_interp = lift_univ(m.constants["sw"]);
  Denoter d(m);
  TermPtr conv = parse_term("(\\\\x:b. sw x => x) k0");
  Ideal r = d.denote_rel({}, conv);
  // sw(1) = 0, so the only preimage of k0-value 0 is 1
  CHECK(r.rows[0] == bits_of(2, {1}));

  // and via the direct evaluator
  TermPtr pl = parse_term("\\\\x:b. sw x => x");
  Ideal rd = d.direct_rel_pattern_app({}, pl, parse_term("k0"));
  CHECK(rd == r);
}

TEST_CASE("direct relational evaluator agrees with Table 2 exhaustively") {
  // all pattern/body/arg combinations over 2-element bases, contexts with
  // one variable, patterns drawn from functional terms
  for (const auto& base : {discrete_poset(2), chain_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    std::vector<std::string> pats = {"x", "f x", "g x", "k1", "y"};
    std::vector<std::string> bodies = {"x", "g x", "y", "k0", "x |~| k1"};
    std::vector<std::string> args = {"y", "g y", "k0", "k0 |~| k1"};
    for (const auto& p : pats)
      for (const auto& b : bodies)
        for (const auto& a : args) {
          TermPtr pl = m_plam("x", t_base("b"), parse_term(p), parse_term(b));
          TermPtr app = m_app(pl, parse_term(a));
          Ideal cat = d.denote_rel(ctx, app);
          Ideal dir = d.direct_rel_pattern_app(ctx, pl, parse_term(a));
          CHECK(cat == dir);
        }
  }
}

TEST_CASE("direct transformer evaluator agrees with Table 3 exhaustively") {
  for (const auto& base : {discrete_poset(2), chain_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    std::vector<std::string> pats = {"x", "f x", "k1", "x |~| k0"};
    std::vector<std::string> bodies = {"x", "y", "k0 |_| x", "g x"};
    std::vector<std::string> args = {"y", "k0", "k0 |~| k1"};
    for (const auto& p : pats)
      for (const auto& b : bodies)
        for (const auto& a : args) {
          TermPtr pl = m_plam("x", t_base("b"), parse_term(p), parse_term(b));
          TermPtr app = m_app(pl, parse_term(a));
          Transformer cat = d.denote_tran(ctx, app);
          Transformer dir = d.direct_tran_pattern_app(ctx, pl, parse_term(a));
          CHECK(cat == dir);
        }
  }
}

TEST_CASE("first-order evaluators match full denotations") {
  for (const auto& base : {discrete_poset(2), chain_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    ctx.vars.emplace_back("y", t_base("b"));
    for (const auto& s : {"y", "g y", "<y, f y>", "f (g y)", "y |~| k0"}) {
      TermPtr t = parse_term(s);
      Ideal full = d.denote_rel(ctx, t);
      for (std::size_t v = 0; v < base->size(); ++v)
        CHECK(full.rows[0 * base->size() + v] == d.rel_eval(ctx, t, {v}));
      // wp of the transformer denotation at every updeal
      Transformer tf = d.denote_tran(ctx, t);
      for (std::size_t zi = 0; zi < tf.tgt_updeals->size(); ++zi) {
        const Bits& z = tf.tgt_updeals->at(zi);
        for (std::size_t v = 0; v < base->size(); ++v) {
          bool direct = false;
          for (const auto& row : d.angel_eval(ctx, t, {v}))
            if (row.is_subset_of(z)) direct = true;
          CHECK(direct == tf.apply_idx(zi).test(v));
        }
      }
    }
    // angelic terms as well
    for (const auto& s : {"y |_| k0", "g y |_| (y |~| k1)"}) {
      TermPtr t = parse_term(s);
      Transformer tf = d.denote_tran(ctx, t);
      for (std::size_t zi = 0; zi < tf.tgt_updeals->size(); ++zi) {
        const Bits& z = tf.tgt_updeals->at(zi);
        for (std::size_t v = 0; v < base->size(); ++v) {
          bool direct = false;
          for (const auto& row : d.angel_eval(ctx, t, {v}))
            if (row.is_subset_of(z)) direct = true;
          CHECK(direct == tf.apply_idx(zi).test(v));
        }
      }
    }
  }
}

TEST_CASE("angelic pattern law on tiny instances") {
  for (const auto& base : {discrete_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    std::vector<std::string> ns = {"x", "f x", "k0"};
    std::vector<std::string> bodies = {"x", "k1"};
    for (const auto& n1 : ns)
      for (const auto& n2 : ns)
        for (const auto& b : bodies) {
          TermPtr lhs = m_plam("x", t_base("b"),
                               m_dchoice(parse_term(n1), parse_term(n2)), parse_term(b));
          TermPtr rhs = m_achoice(m_plam("x", t_base("b"), parse_term(n1), parse_term(b)),
                                  m_plam("x", t_base("b"), parse_term(n2), parse_term(b)));
          CHECK(d.denote_tran(ctx, lhs) == d.denote_tran(ctx, rhs));
        }
  }
}

TEST_CASE("tran pattern clause agrees with the stepwise pairing on singleton shapes") {
  // assemble <leg1, T[\x.P]> ; comp explicitly, with leg1 materialized as a
  // transformer, and compare with the fused clause
  Model m;
  m.bases["u"] = singleton_poset();
  ConstantDecl cu{"cu", t_base("u"), constant_fn_point(singleton_poset(), 0), std::nullopt,
                  std::nullopt};
  cu.r_interp = lift_gr(cu);
  cu.t_interp = lift_univ(cu);
  m.constants["cu"] = cu;
  Denoter d(m);
  Context ctx;
  TermPtr pl = parse_term("\\\\x:u. x => x");
  Transformer fused = d.denote_tran(ctx, pl);

  PosetPtr s1 = singleton_poset();
  auto h1 = d.tran_hom(s1, s1);
  auto hres = d.tran_hom(s1, s1);
  Context ctx2 = ctx;
  ctx2.vars.emplace_back("x", t_base("u"));
  Ideal nden = d.denote_rel(ctx2, parse_term("x"));
  Transformer pdenl = d.denote_tran(ctx, m_lam("x", t_base("u"), parse_term("x")));

  // leg1: raw existential-image atoms of the pattern, up-closed
  PosetPtr gR = d.context_poset(Level::R, ctx);
  auto ugr = UpdealList::of(gR);
  auto uh1 = UpdealList::of(h1->poset);
  std::vector<std::size_t> leg1_table(uh1->size());
  for (std::size_t yi = 0; yi < uh1->size(); ++yi) {
    Bits raw(gR->size());
    for (std::size_t gr = 0; gr < gR->size(); ++gr) {
      bool hit = false;
      for (std::size_t b = 0; b < 1 && !hit; ++b)
        nden.rows[gr * 1 + b].for_each([&](std::size_t c) {
          std::vector<Bits> rows(1, Bits(1));
          rows[b].set(c);
          Transformer e = existential_image(ideal_closure(s1, s1, rows));
          if (uh1->at(yi).test(h1->index_of(e))) hit = true;
        });
      if (hit) raw.set(gr);
    }
    leg1_table[yi] = ugr->index_of(up_closure(gR, raw).members);
  }
  Transformer leg1{gR, h1->poset, ugr, uh1, leg1_table};
  Transformer stepwise =
      compose_t(pair_t(leg1, pdenl), internal_comp_t(*h1, *h1, *hres));
  CHECK(fused == stepwise);
}

TEST_CASE("coherence checks") {
  Model m = two_model(discrete_poset(2));
  Denoter d(m);
  CHECK(d.check_constant_coherence().ok());
  // break a constant: remove a required pair from its R interpretation
  Model bad = m;
  Ideal r = *bad.constants["g"].r_interp;
  r.rows[0] = Bits(2);  // g's graph needs (0, top)
  bad.constants["g"].r_interp = r;
  Denoter d2(bad);
  CHECK_FALSE(d2.check_constant_coherence().ok());
}

TEST_CASE("eta and beta are lax at level R") {
  for (const auto& base : {chain_poset(2), discrete_poset(2)}) {
    Denoter d(two_model(base));
    Context ctx;
    // eta: [\x. N x] >= [N]
    for (const auto& n : {"f", "g"}) {
      TermPtr nt = parse_term(n);
      TermPtr eta = m_lam("x", t_base("b"), m_app(nt, m_var("x")));
      CHECK(d.denote_rel(ctx, eta).subset_of(d.denote_rel(ctx, nt)));
    }
    // beta: [N[N'/x]] >= [(\x.N)N'], strict witness via duplicated demonic arg
    TermPtr lam = parse_term("\\x:b. <x, x>");
    TermPtr argnd = parse_term("k0 |~| k1");
    Ideal applied = d.denote_rel(ctx, m_app(lam, argnd));
    Ideal substd = d.denote_rel(ctx, m_pair(argnd, argnd));
    CHECK(applied.subset_of(substd));
    if (base->discrete()) CHECK(applied != substd);
  }
}

TEST_CASE("psim arrow coherence display") {
  // T-level denotation of a functional term is simulated through psim
  Denoter d(two_model(chain_poset(2)));
  Context ctx;
  ctx.vars.emplace_back("y", t_base("b"));
  for (const auto& s : {"y", "g y", "y |~| k0"}) {
    TermPtr t = parse_term(s);
    // arrow-free: psim is the identity, theorem reduces to the corollary
    Transformer lhs = d.denote_tran(ctx, t);
    Transformer rhs = universal_image(d.denote_rel(ctx, t));
    CHECK(refines(lhs, rhs));
  }
}
