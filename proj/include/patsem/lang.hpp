#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patsem/tran.hpp"

namespace patsem {

// ---- types ----------------------------------------------------------------

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  enum class Kind { Base, Unit, Product, Arrow };
  Kind kind;
  std::string base;  // Base
  TypePtr left, right;
};

TypePtr t_base(const std::string& name);
TypePtr t_unit();
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_arrow(TypePtr a, TypePtr b);
bool type_equal(const TypePtr& a, const TypePtr& b);
bool arrow_free(const TypePtr& t);
std::string type_to_string(const TypePtr& t);

// ---- terms ----------------------------------------------------------------

struct TermExpr;
using TermPtr = std::shared_ptr<const TermExpr>;

// fst and snd are builtin constants that must appear applied.
struct TermExpr {
  enum class Kind { Var, Const, Fst, Snd, Pair, App, Lam, Plam, DChoice, AChoice };
  Kind kind;
  std::string name;      // Var, Const
  std::string binder;    // Lam, Plam
  TypePtr binder_type;   // Lam, Plam
  TermPtr a, b;          // Pair/App/DChoice/AChoice children; Lam body in a;
                         // Plam pattern in a, body in b
  int pos = -1;
};

TermPtr m_var(const std::string& n);
TermPtr m_const(const std::string& n);
TermPtr m_fst();
TermPtr m_snd();
TermPtr m_pair(TermPtr a, TermPtr b);
TermPtr m_app(TermPtr f, TermPtr x);
TermPtr m_lam(const std::string& x, TypePtr t, TermPtr body);
TermPtr m_plam(const std::string& x, TypePtr t, TermPtr pattern, TermPtr body);
TermPtr m_dchoice(TermPtr a, TermPtr b);
TermPtr m_achoice(TermPtr a, TermPtr b);

std::string term_to_string(const TermPtr& t);
bool term_alpha_eq(const TermPtr& a, const TermPtr& b);

// ---- parsing --------------------------------------------------------------

// Concrete syntax: \x:t. e   \\x:t. p => e   e |~| e   e |_| e   <e,e>
// fst e, snd e, application by juxtaposition; types use * and ->, with ->
// binding loosest and right-associative.
TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);

// ---- levels and the constant registry -------------------------------------

enum class Level { F, R, T };
std::string level_name(Level l);

// A constant is declared at the language type `type`; its interpretations
// are stored in first-order form: for arrow-free types the source poset is
// the singleton, for sigma -> sigma' it is the denotation of sigma.
struct ConstantDecl {
  std::string name;
  TypePtr type;
  std::optional<MonotoneFn> f_interp;
  std::optional<Ideal> r_interp;
  std::optional<Transformer> t_interp;
  // The T interpretation is the universal image of the R one, kept
  // implicit so that large state spaces never materialize updeal tables.
  bool t_lifted = false;
  bool has_interp(Level l) const {
    switch (l) {
      case Level::F: return f_interp.has_value();
      case Level::R: return r_interp.has_value();
      default: return t_interp.has_value() || (t_lifted && r_interp.has_value());
    }
  }
};

struct Model {
  std::map<std::string, PosetPtr> bases;
  std::map<std::string, ConstantDecl> constants;

  const PosetPtr& base(const std::string& n) const;
  const ConstantDecl& constant(const std::string& n) const;
  bool has_constant(const std::string& n) const { return constants.count(n) != 0; }
};

// ---- contexts and typechecking ---------------------------------------------

struct Context {
  std::vector<std::pair<std::string, TypePtr>> vars;  // names distinct
  std::optional<std::size_t> lookup(const std::string& n) const;
};

// Typechecks `term` under the level discipline: patterns at level R must be
// functional terms whose constants carry F interpretations; at level T they
// are relational terms with R-interpreted constants; demonic choice needs
// R, angelic choice needs T. Throws UserError naming the violated rule.
TypePtr typecheck(const Context& ctx, const TermPtr& term, Level level, const Model& model);

std::set<std::string> free_vars(const TermPtr& t);
bool occurs_in_pattern(const TermPtr& t, const std::string& name);
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement);

struct MatchClause {
  std::string binder;
  TypePtr binder_type;
  TermPtr pattern;
  TermPtr body;
};
// match e with |x1:t1. M1 => N1 | ... desugars to an angelic choice of
// pattern abstractions applied to e; a single clause needs only level R.
TermPtr desugar_match(const TermPtr& scrutinee, const std::vector<MatchClause>& clauses,
                      Level level);

}  // namespace patsem
