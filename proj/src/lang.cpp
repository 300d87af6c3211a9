#include "patsem/lang.hpp"

#include <algorithm>
#include <cctype>

namespace patsem {

// ---- types ----------------------------------------------------------------

TypePtr t_base(const std::string& name) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Base;
  t->base = name;
  return t;
}
TypePtr t_unit() {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Unit;
  return t;
}
TypePtr t_prod(TypePtr a, TypePtr b) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Product;
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}
TypePtr t_arrow(TypePtr a, TypePtr b) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = TypeExpr::Kind::Arrow;
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeExpr::Kind::Base: return a->base == b->base;
    case TypeExpr::Kind::Unit: return true;
    default: return type_equal(a->left, b->left) && type_equal(a->right, b->right);
  }
}

bool arrow_free(const TypePtr& t) {
  switch (t->kind) {
    case TypeExpr::Kind::Base:
    case TypeExpr::Kind::Unit: return true;
    case TypeExpr::Kind::Product: return arrow_free(t->left) && arrow_free(t->right);
    default: return false;
  }
}

std::string type_to_string(const TypePtr& t) {
  switch (t->kind) {
    case TypeExpr::Kind::Base: return t->base;
    case TypeExpr::Kind::Unit: return "1";
    case TypeExpr::Kind::Product: {
      auto wrap = [](const TypePtr& s) {
        std::string out = type_to_string(s);
        if (s->kind == TypeExpr::Kind::Arrow || s->kind == TypeExpr::Kind::Product)
          return "(" + out + ")";
        return out;
      };
      return wrap(t->left) + " * " + wrap(t->right);
    }
    default: {
      std::string l = type_to_string(t->left);
      if (t->left->kind == TypeExpr::Kind::Arrow) l = "(" + l + ")";
      return l + " -> " + type_to_string(t->right);
    }
  }
}

// ---- term constructors ----------------------------------------------------

static TermPtr mk(TermExpr e) { return std::make_shared<TermExpr>(std::move(e)); }

TermPtr m_var(const std::string& n) {
  return mk({TermExpr::Kind::Var, n, "", nullptr, nullptr, nullptr, -1});
}
TermPtr m_const(const std::string& n) {
  return mk({TermExpr::Kind::Const, n, "", nullptr, nullptr, nullptr, -1});
}
TermPtr m_fst() { return mk({TermExpr::Kind::Fst, "", "", nullptr, nullptr, nullptr, -1}); }
TermPtr m_snd() { return mk({TermExpr::Kind::Snd, "", "", nullptr, nullptr, nullptr, -1}); }
TermPtr m_pair(TermPtr a, TermPtr b) {
  return mk({TermExpr::Kind::Pair, "", "", nullptr, std::move(a), std::move(b), -1});
}
TermPtr m_app(TermPtr f, TermPtr x) {
  return mk({TermExpr::Kind::App, "", "", nullptr, std::move(f), std::move(x), -1});
}
TermPtr m_lam(const std::string& x, TypePtr t, TermPtr body) {
  return mk({TermExpr::Kind::Lam, "", x, std::move(t), std::move(body), nullptr, -1});
}
TermPtr m_plam(const std::string& x, TypePtr t, TermPtr pattern, TermPtr body) {
  return mk({TermExpr::Kind::Plam, "", x, std::move(t), std::move(pattern), std::move(body), -1});
}
TermPtr m_dchoice(TermPtr a, TermPtr b) {
  return mk({TermExpr::Kind::DChoice, "", "", nullptr, std::move(a), std::move(b), -1});
}
TermPtr m_achoice(TermPtr a, TermPtr b) {
  return mk({TermExpr::Kind::AChoice, "", "", nullptr, std::move(a), std::move(b), -1});
}

// ---- printing ----------------------------------------------------------------

namespace {

int prec_of(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Lam:
    case TermExpr::Kind::Plam: return 0;
    case TermExpr::Kind::DChoice:
    case TermExpr::Kind::AChoice: return 1;
    case TermExpr::Kind::App: return 2;
    default: return 3;
  }
}

std::string print(const TermPtr& t, int min_prec) {
  std::string out;
  switch (t->kind) {
    case TermExpr::Kind::Var:
    case TermExpr::Kind::Const: out = t->name; break;
    case TermExpr::Kind::Fst: out = "fst"; break;
    case TermExpr::Kind::Snd: out = "snd"; break;
    case TermExpr::Kind::Pair: out = "<" + print(t->a, 0) + ", " + print(t->b, 0) + ">"; break;
    case TermExpr::Kind::App: out = print(t->a, 2) + " " + print(t->b, 3); break;
    case TermExpr::Kind::Lam:
      out = "\\" + t->binder + ":" + type_to_string(t->binder_type) + ". " + print(t->a, 0);
      break;
    case TermExpr::Kind::Plam:
      out = "\\\\" + t->binder + ":" + type_to_string(t->binder_type) + ". " + print(t->a, 2) +
            " => " + print(t->b, 0);
      break;
    case TermExpr::Kind::DChoice: out = print(t->a, 2) + " |~| " + print(t->b, 2); break;
    case TermExpr::Kind::AChoice: out = print(t->a, 2) + " |_| " + print(t->b, 2); break;
  }
  if (prec_of(t) < min_prec) out = "(" + out + ")";
  return out;
}

}  // namespace

std::string term_to_string(const TermPtr& t) { return print(t, 0); }

bool term_alpha_eq(const TermPtr& a, const TermPtr& b) {
  static int fresh = 0;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermExpr::Kind::Var:
    case TermExpr::Kind::Const: return a->name == b->name;
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd: return true;
    case TermExpr::Kind::Pair:
    case TermExpr::Kind::App:
    case TermExpr::Kind::DChoice:
    case TermExpr::Kind::AChoice:
      return term_alpha_eq(a->a, b->a) && term_alpha_eq(a->b, b->b);
    case TermExpr::Kind::Lam: {
      if (!type_equal(a->binder_type, b->binder_type)) return false;
      std::string v = "#" + std::to_string(fresh++);
      return term_alpha_eq(substitute(a->a, a->binder, m_var(v)),
                           substitute(b->a, b->binder, m_var(v)));
    }
    case TermExpr::Kind::Plam: {
      if (!type_equal(a->binder_type, b->binder_type)) return false;
      std::string v = "#" + std::to_string(fresh++);
      return term_alpha_eq(substitute(a->a, a->binder, m_var(v)),
                           substitute(b->a, b->binder, m_var(v))) &&
             term_alpha_eq(substitute(a->b, a->binder, m_var(v)),
                           substitute(b->b, b->binder, m_var(v)));
    }
  }
  return false;
}

// ---- parsing --------------------------------------------------------------

namespace {

struct Lexer {
  std::string src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool starts_with(const std::string& s) {
    skip_ws();
    return src.compare(pos, s.size(), s) == 0;
  }
  bool eat(const std::string& s) {
    if (!starts_with(s)) return false;
    pos += s.size();
    return true;
  }
  void expect(const std::string& s) {
    if (!eat(s))
      throw UserError("syntax error at position " + std::to_string(pos) + ": expected '" + s +
                      "'");
  }
  bool at_ident() {
    skip_ws();
    return pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_');
  }
  std::string ident() {
    skip_ws();
    if (!at_ident())
      throw UserError("syntax error at position " + std::to_string(pos) +
                      ": expected identifier");
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                src[pos] == '_' || src[pos] == '\''))
      ++pos;
    return src.substr(start, pos - start);
  }
  std::string peek_ident() {
    skip_ws();
    std::size_t save = pos;
    std::string s = at_ident() ? ident() : "";
    pos = save;
    return s;
  }
  bool done() {
    skip_ws();
    return pos >= src.size();
  }
};

TypePtr parse_type_arrow(Lexer& lx);

TypePtr parse_type_atom(Lexer& lx) {
  if (lx.eat("(")) {
    TypePtr t = parse_type_arrow(lx);
    lx.expect(")");
    return t;
  }
  if (lx.eat("1")) return t_unit();
  return t_base(lx.ident());
}

TypePtr parse_type_prod(Lexer& lx) {
  TypePtr t = parse_type_atom(lx);
  while (lx.eat("*")) t = t_prod(t, parse_type_atom(lx));
  return t;
}

TypePtr parse_type_arrow(Lexer& lx) {
  TypePtr t = parse_type_prod(lx);
  if (lx.eat("->")) return t_arrow(t, parse_type_arrow(lx));
  return t;
}

TermPtr parse_term_at(Lexer& lx, bool stop_at_patarrow);

bool at_atom_start(Lexer& lx) {
  if (lx.starts_with("(") || lx.starts_with("<")) return true;
  std::string id = lx.peek_ident();
  return !id.empty() && id != "match" && id != "with" && id != "end";
}

TermPtr parse_atom(Lexer& lx) {
  if (lx.eat("(")) {
    TermPtr t = parse_term_at(lx, false);
    lx.expect(")");
    return t;
  }
  if (lx.eat("<")) {
    TermPtr a = parse_term_at(lx, false);
    lx.expect(",");
    TermPtr b = parse_term_at(lx, false);
    lx.expect(">");
    return m_pair(a, b);
  }
  std::string id = lx.peek_ident();
  if (id == "fst") {
    lx.ident();
    return m_fst();
  }
  if (id == "snd") {
    lx.ident();
    return m_snd();
  }
  if (!id.empty() && id != "match" && id != "with" && id != "end") return m_var(lx.ident());
  throw UserError("syntax error at position " + std::to_string(lx.pos) + ": expected a term");
}

TermPtr parse_app(Lexer& lx) {
  TermPtr t = parse_atom(lx);
  while (at_atom_start(lx)) t = m_app(t, parse_atom(lx));
  return t;
}

TermPtr parse_choice(Lexer& lx, bool stop) {
  TermPtr t = parse_app(lx);
  while (true) {
    if (stop && lx.starts_with("=>")) break;
    if (lx.eat("|~|"))
      t = m_dchoice(t, parse_app(lx));
    else if (lx.eat("|_|"))
      t = m_achoice(t, parse_app(lx));
    else
      break;
  }
  return t;
}

TermPtr parse_term_at(Lexer& lx, bool stop_at_patarrow) {
  if (lx.starts_with("\\\\")) {
    lx.expect("\\\\");
    std::string x = lx.ident();
    lx.expect(":");
    TypePtr t = parse_type_arrow(lx);
    lx.expect(".");
    TermPtr pat = parse_term_at(lx, true);
    lx.expect("=>");
    TermPtr body = parse_term_at(lx, stop_at_patarrow);
    return m_plam(x, t, pat, body);
  }
  if (lx.starts_with("\\")) {
    lx.expect("\\");
    std::string x = lx.ident();
    lx.expect(":");
    TypePtr t = parse_type_arrow(lx);
    lx.expect(".");
    return m_lam(x, t, parse_term_at(lx, stop_at_patarrow));
  }
  if (lx.peek_ident() == "match") {
    lx.ident();
    TermPtr scrutinee = parse_choice(lx, false);
    if (lx.peek_ident() != "with") throw UserError("syntax error: expected 'with' in match");
    lx.ident();
    std::vector<MatchClause> clauses;
    while (lx.eat("|")) {
      MatchClause c;
      c.binder = lx.ident();
      lx.expect(":");
      c.binder_type = parse_type_arrow(lx);
      lx.expect(".");
      c.pattern = parse_term_at(lx, true);
      lx.expect("=>");
      c.body = parse_term_at(lx, false);
      clauses.push_back(std::move(c));
    }
    if (lx.peek_ident() != "end") throw UserError("syntax error: expected 'end' after match");
    lx.ident();
    if (clauses.empty()) throw UserError("match needs at least one clause");
    return desugar_match(scrutinee, clauses, clauses.size() > 1 ? Level::T : Level::R);
  }
  return parse_choice(lx, stop_at_patarrow);
}

}  // namespace

TermPtr parse_term(const std::string& text) {
  Lexer lx{text, 0};
  TermPtr t = parse_term_at(lx, false);
  if (!lx.done())
    throw UserError("syntax error at position " + std::to_string(lx.pos) + ": trailing input");
  return t;
}

TypePtr parse_type(const std::string& text) {
  Lexer lx{text, 0};
  TypePtr t = parse_type_arrow(lx);
  if (!lx.done())
    throw UserError("syntax error at position " + std::to_string(lx.pos) + ": trailing input");
  return t;
}

// ---- model helpers ----------------------------------------------------------

const PosetPtr& Model::base(const std::string& n) const {
  auto it = bases.find(n);
  if (it == bases.end()) throw UserError("undeclared base type '" + n + "'");
  return it->second;
}

const ConstantDecl& Model::constant(const std::string& n) const {
  auto it = constants.find(n);
  if (it == constants.end()) throw UserError("undeclared constant '" + n + "'");
  return it->second;
}

// ---- free variables, substitution ------------------------------------------

std::set<std::string> free_vars(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Var: return {t->name};
    case TermExpr::Kind::Const:
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd: return {};
    case TermExpr::Kind::Pair:
    case TermExpr::Kind::App:
    case TermExpr::Kind::DChoice:
    case TermExpr::Kind::AChoice: {
      auto s = free_vars(t->a);
      auto s2 = free_vars(t->b);
      s.insert(s2.begin(), s2.end());
      return s;
    }
    case TermExpr::Kind::Lam: {
      auto s = free_vars(t->a);
      s.erase(t->binder);
      return s;
    }
    case TermExpr::Kind::Plam: {
      auto s = free_vars(t->a);
      auto s2 = free_vars(t->b);
      s.insert(s2.begin(), s2.end());
      s.erase(t->binder);
      return s;
    }
  }
  return {};
}

bool occurs_in_pattern(const TermPtr& t, const std::string& name) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
    case TermExpr::Kind::Const:
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd: return false;
    case TermExpr::Kind::Pair:
    case TermExpr::Kind::App:
    case TermExpr::Kind::DChoice:
    case TermExpr::Kind::AChoice:
      return occurs_in_pattern(t->a, name) || occurs_in_pattern(t->b, name);
    case TermExpr::Kind::Lam: return t->binder != name && occurs_in_pattern(t->a, name);
    case TermExpr::Kind::Plam: {
      if (t->binder == name) return false;
      if (free_vars(t->a).count(name)) return true;
      return occurs_in_pattern(t->a, name) || occurs_in_pattern(t->b, name);
    }
  }
  return false;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  int i = 0;
  while (avoid.count(n)) n = base + "_" + std::to_string(i++);
  return n;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
  switch (t->kind) {
    case TermExpr::Kind::Var: return t->name == name ? replacement : t;
    case TermExpr::Kind::Const:
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd: return t;
    case TermExpr::Kind::Pair:
      return m_pair(substitute(t->a, name, replacement), substitute(t->b, name, replacement));
    case TermExpr::Kind::App:
      return m_app(substitute(t->a, name, replacement), substitute(t->b, name, replacement));
    case TermExpr::Kind::DChoice:
      return m_dchoice(substitute(t->a, name, replacement), substitute(t->b, name, replacement));
    case TermExpr::Kind::AChoice:
      return m_achoice(substitute(t->a, name, replacement), substitute(t->b, name, replacement));
    case TermExpr::Kind::Lam: {
      if (t->binder == name) return t;
      auto fv = free_vars(replacement);
      if (fv.count(t->binder)) {
        auto avoid = fv;
        auto bodyfv = free_vars(t->a);
        avoid.insert(bodyfv.begin(), bodyfv.end());
        std::string nb = fresh_name(t->binder, avoid);
        TermPtr body = substitute(t->a, t->binder, m_var(nb));
        return m_lam(nb, t->binder_type, substitute(body, name, replacement));
      }
      return m_lam(t->binder, t->binder_type, substitute(t->a, name, replacement));
    }
    case TermExpr::Kind::Plam: {
      if (t->binder == name) return t;
      auto fv = free_vars(replacement);
      if (fv.count(t->binder)) {
        auto avoid = fv;
        for (const auto& v : free_vars(t->a)) avoid.insert(v);
        for (const auto& v : free_vars(t->b)) avoid.insert(v);
        std::string nb = fresh_name(t->binder, avoid);
        TermPtr pat = substitute(t->a, t->binder, m_var(nb));
        TermPtr body = substitute(t->b, t->binder, m_var(nb));
        return m_plam(nb, t->binder_type, substitute(pat, name, replacement),
                      substitute(body, name, replacement));
      }
      return m_plam(t->binder, t->binder_type, substitute(t->a, name, replacement),
                    substitute(t->b, name, replacement));
    }
  }
  return t;
}

// ---- typechecking -----------------------------------------------------------

std::optional<std::size_t> Context::lookup(const std::string& n) const {
  for (std::size_t i = vars.size(); i-- > 0;)
    if (vars[i].first == n) return i;
  return std::nullopt;
}

namespace {

// A free identifier that names a declared constant is a constant reference;
// bound variables shadow constants.
bool is_constant_ref(const TermPtr& t, const std::set<std::string>& bound, const Model& model) {
  if (t->kind == TermExpr::Kind::Const) return true;
  return t->kind == TermExpr::Kind::Var && !bound.count(t->name) && model.has_constant(t->name);
}

void check_pattern_constants(const TermPtr& t, std::set<std::string> bound, Level pat_level,
                             const Model& model) {
  if (is_constant_ref(t, bound, model)) {
    if (!model.constant(t->name).has_interp(pat_level))
      throw UserError("level violation: constant '" + t->name + "' lacks a level-" +
                      level_name(pat_level) + " interpretation required inside a pattern");
    return;
  }
  if (t->kind == TermExpr::Kind::Lam || t->kind == TermExpr::Kind::Plam) bound.insert(t->binder);
  if (t->a) check_pattern_constants(t->a, bound, pat_level, model);
  if (t->b) check_pattern_constants(t->b, bound, pat_level, model);
}

// Membership in the term class of `level` (F within R within T), including
// the pattern restriction: patterns sit one level below and their constants
// must be interpreted there.
void check_term_class(const TermPtr& t, std::set<std::string> bound, Level level,
                      const Model& model) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
    case TermExpr::Kind::Const:
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd: return;
    case TermExpr::Kind::Pair:
    case TermExpr::Kind::App:
      check_term_class(t->a, bound, level, model);
      check_term_class(t->b, bound, level, model);
      return;
    case TermExpr::Kind::Lam: {
      bound.insert(t->binder);
      check_term_class(t->a, bound, level, model);
      return;
    }
    case TermExpr::Kind::DChoice:
      if (level == Level::F)
        throw UserError("level violation: demonic choice |~| is not a functional term");
      check_term_class(t->a, bound, level, model);
      check_term_class(t->b, bound, level, model);
      return;
    case TermExpr::Kind::AChoice:
      if (level != Level::T)
        throw UserError("level violation: angelic choice |_| needs the transformer level");
      check_term_class(t->a, bound, level, model);
      check_term_class(t->b, bound, level, model);
      return;
    case TermExpr::Kind::Plam: {
      if (level == Level::F)
        throw UserError("level violation: pattern abstraction is not a functional term");
      Level pat_level = level == Level::R ? Level::F : Level::R;
      bound.insert(t->binder);
      check_term_class(t->a, bound, pat_level, model);
      check_pattern_constants(t->a, bound, pat_level, model);
      check_term_class(t->b, bound, level, model);
      return;
    }
  }
}

void check_bases_declared(const TypePtr& t, const Model& model) {
  switch (t->kind) {
    case TypeExpr::Kind::Base: (void)model.base(t->base); return;
    case TypeExpr::Kind::Unit: return;
    default:
      check_bases_declared(t->left, model);
      check_bases_declared(t->right, model);
  }
}

void check_annotation_bases(const TermPtr& t, const Model& model) {
  if (t->binder_type) check_bases_declared(t->binder_type, model);
  if (t->a) check_annotation_bases(t->a, model);
  if (t->b) check_annotation_bases(t->b, model);
}

Context push_var(const Context& ctx, const std::string& name, const TypePtr& ty) {
  Context out = ctx;
  out.vars.erase(std::remove_if(out.vars.begin(), out.vars.end(),
                                [&](const auto& p) { return p.first == name; }),
                 out.vars.end());
  out.vars.emplace_back(name, ty);
  return out;
}

TypePtr infer(const Context& ctx, const TermPtr& t, Level level, const Model& model) {
  switch (t->kind) {
    case TermExpr::Kind::Var: {
      auto i = ctx.lookup(t->name);
      if (i) return ctx.vars[*i].second;
      if (model.has_constant(t->name)) return model.constant(t->name).type;
      throw UserError("unbound variable '" + t->name + "'");
    }
    case TermExpr::Kind::Const: {
      if (!model.has_constant(t->name)) throw UserError("undeclared constant '" + t->name + "'");
      return model.constant(t->name).type;
    }
    case TermExpr::Kind::Fst:
    case TermExpr::Kind::Snd:
      throw UserError("fst/snd must be applied to an argument (their type is schematic)");
    case TermExpr::Kind::Pair:
      return t_prod(infer(ctx, t->a, level, model), infer(ctx, t->b, level, model));
    case TermExpr::Kind::App: {
      if (t->a->kind == TermExpr::Kind::Fst || t->a->kind == TermExpr::Kind::Snd) {
        TypePtr at = infer(ctx, t->b, level, model);
        if (at->kind != TypeExpr::Kind::Product)
          throw UserError("type error: fst/snd applied to non-product " + type_to_string(at));
        return t->a->kind == TermExpr::Kind::Fst ? at->left : at->right;
      }
      TypePtr ft = infer(ctx, t->a, level, model);
      if (ft->kind != TypeExpr::Kind::Arrow)
        throw UserError("type error: applying a non-function of type " + type_to_string(ft));
      TypePtr at = infer(ctx, t->b, level, model);
      if (!type_equal(ft->left, at))
        throw UserError("type error: function expects " + type_to_string(ft->left) + " but got " +
                        type_to_string(at));
      return ft->right;
    }
    case TermExpr::Kind::Lam: {
      Context ctx2 = push_var(ctx, t->binder, t->binder_type);
      return t_arrow(t->binder_type, infer(ctx2, t->a, level, model));
    }
    case TermExpr::Kind::Plam: {
      Context ctx2 = push_var(ctx, t->binder, t->binder_type);
      Level pat_level = level == Level::R ? Level::F : Level::R;
      TypePtr pt = infer(ctx2, t->a, pat_level, model);
      TypePtr bt = infer(ctx2, t->b, level, model);
      return t_arrow(pt, bt);
    }
    case TermExpr::Kind::DChoice:
    case TermExpr::Kind::AChoice: {
      TypePtr at = infer(ctx, t->a, level, model);
      TypePtr bt = infer(ctx, t->b, level, model);
      if (!type_equal(at, bt))
        throw UserError("type error: choice branches have types " + type_to_string(at) + " and " +
                        type_to_string(bt));
      return at;
    }
  }
  throw UserError("unreachable");
}

}  // namespace

std::string level_name(Level l) {
  switch (l) {
    case Level::F: return "F";
    case Level::R: return "R";
    default: return "T";
  }
}

TypePtr typecheck(const Context& ctx, const TermPtr& term, Level level, const Model& model) {
  for (std::size_t i = 0; i < ctx.vars.size(); ++i)
    for (std::size_t j = i + 1; j < ctx.vars.size(); ++j)
      if (ctx.vars[i].first == ctx.vars[j].first)
        throw UserError("context declares variable '" + ctx.vars[i].first + "' twice");
  check_annotation_bases(term, model);
  std::set<std::string> bound;
  for (const auto& [n, ty] : ctx.vars) bound.insert(n);
  check_term_class(term, bound, level, model);
  return infer(ctx, term, level, model);
}

TermPtr desugar_match(const TermPtr& scrutinee, const std::vector<MatchClause>& clauses,
                      Level level) {
  if (clauses.empty()) throw UserError("match needs at least one clause");
  if (clauses.size() > 1 && level != Level::T)
    throw UserError(
        "level violation: a multi-clause match needs angelic choice, available only at level T");
  TermPtr acc;
  for (const auto& c : clauses) {
    TermPtr arm = m_plam(c.binder, c.binder_type, c.pattern, c.body);
    acc = acc ? m_achoice(acc, arm) : arm;
  }
  return m_app(acc, scrutinee);
}

}  // namespace patsem
