#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "patsem/laws.hpp"

using namespace patsem;

TEST_CASE("gen_posets counts match the iso classification") {
  CHECK(gen_posets(1).size() == 1);
  CHECK(gen_posets(2).size() == 3);
  CHECK(gen_posets(3).size() == 8);  // 1 + 2 + 5
  // all antisymmetric, distinct up to iso is by construction of the list
  for (const auto& p : gen_posets(3))
    for (std::size_t a = 0; a < p->size(); ++a) CHECK(p->leq(a, a));
}

TEST_CASE("gen_terms produces well-typed terms with redexes") {
  Model m = suite_model(discrete_poset(2));
  auto terms =
      gen_terms(Level::F, {t_base("b")}, t_base("b"), 3, 42, 50, true);
  REQUIRE(terms.size() == 50);
  Context ctx;
  ctx.vars.emplace_back("x0", t_base("b"));
  bool redex = false;
  for (const auto& t : terms) {
    CHECK(type_equal(typecheck(ctx, t, Level::F, m), t_base("b")));
    if (t->kind == TermExpr::Kind::App && t->a->kind == TermExpr::Kind::Lam) redex = true;
    std::string s = term_to_string(t);
    if (s.find("(\\") != std::string::npos) redex = true;
  }
  CHECK(redex);
  // determinism under the seed
  auto terms2 = gen_terms(Level::F, {t_base("b")}, t_base("b"), 3, 42, 50, true);
  for (std::size_t i = 0; i < terms.size(); ++i)
    CHECK(term_to_string(terms[i]) == term_to_string(terms2[i]));
}

TEST_CASE("suite_idl passes with strict witnesses") {
  LawReport rep = suite_idl(3);
  std::cout << rep.summary() << "\n";
  for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
  CHECK(rep.failures == 0);
  CHECK(rep.instances > 1000);
  bool pra = false, apx = false, curnat = false, cu = false, prb = false;
  for (const auto& n : rep.notes) {
    if (n.find("eq:pra") != std::string::npos && n.find("found") != std::string::npos) pra = true;
    if (n.find("eq:prb") != std::string::npos && n.find("found") != std::string::npos) prb = true;
    if (n.find("eq:apx") != std::string::npos && n.find("found") != std::string::npos) apx = true;
    if (n.find("eq:curnat") != std::string::npos && n.find("found") != std::string::npos)
      curnat = true;
    if (n.find("curi-uncuri") != std::string::npos && n.find("found") != std::string::npos)
      cu = true;
  }
  CHECK(pra);
  CHECK(prb);
  CHECK(apx);
  CHECK(curnat);
  CHECK(cu);
}

TEST_CASE("suite_tran passes with dropped-condition counterexamples") {
  LawReport rep = suite_tran();
  std::cout << rep.summary() << "\n";
  for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
  CHECK(rep.failures == 0);
  CHECK(rep.notes.size() == 4);
}

TEST_CASE("simulation suites pass on 500+ terms") {
  for (Level lv : {Level::R, Level::T}) {
    LawReport rep = suite_simulation(lv, 7, 500);
    std::cout << rep.summary() << "\n";
    for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
    CHECK(rep.failures == 0);
    CHECK(rep.instances >= 500);
  }
}

TEST_CASE("beta/eta/substitution suites pass") {
  for (Level lv : {Level::R, Level::T}) {
    LawReport rep = suite_beta_eta_subst(lv, 11, 200);
    std::cout << rep.summary() << "\n";
    for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("monotonicity suites pass") {
  for (Level lv : {Level::R, Level::T}) {
    LawReport rep = suite_monotonicity(lv, 13, 100);
    std::cout << rep.summary() << "\n";
    for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("pattern suite passes") {
  LawReport rep = suite_patterns(3);
  std::cout << rep.summary() << "\n";
  for (const auto& c : rep.counterexamples) std::cout << "  CX " << c << "\n";
  CHECK(rep.failures == 0);
}

TEST_CASE("hexagon experiment is reproducible and report-only") {
  LawReport r1 = experiment_hexagon(5, 200);
  LawReport r2 = experiment_hexagon(5, 200);
  std::cout << r1.summary() << "\n  " << r1.notes[0] << "\n";
  CHECK(r1.report_only);
  CHECK(r1.instances >= 100);
  CHECK(r1.notes == r2.notes);
  CHECK(r1.passed());
}

TEST_CASE("report JSON shape") {
  LawReport rep;
  rep.suite = "demo";
  rep.instances = 3;
  rep.notes.push_back("a \"note\"");
  std::string j = rep.to_json();
  CHECK(j.find("\"suite\":\"demo\"") != std::string::npos);
  CHECK(j.find("\\\"note\\\"") != std::string::npos);
}
