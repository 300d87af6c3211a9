#pragma once

#include <map>
#include <string>
#include <vector>

#include "patsem/lang.hpp"

namespace patsem {

// The function-space object of Mofun: all monotone functions dom -> cod,
// ordered pointwise.
struct HomObjectFun {
  PosetPtr domain;
  PosetPtr codomain;
  PosetPtr poset;
  std::vector<MonotoneFn> points;
  std::size_t index_of(const MonotoneFn& f) const;
};
using HomFunPtr = std::shared_ptr<const HomObjectFun>;
HomFunPtr hom_object_fun(const PosetPtr& dom, const PosetPtr& cod);

// A denotation at one of the three levels.
struct Denotation {
  Level level;
  Context context;
  TypePtr type;
  std::optional<MonotoneFn> fn;
  std::optional<Ideal> rel;
  std::optional<Transformer> tran;
};

struct CoherenceReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Evaluation context: a model plus memoized type denotations and hom
// objects. Not safe for concurrent mutation; use one per worker.
class Denoter {
public:
  explicit Denoter(Model model) : model_(std::move(model)) {}
  const Model& model() const { return model_; }

  PosetPtr type_poset(Level level, const TypePtr& t);
  PosetPtr context_poset(Level level, const Context& ctx);

  HomFunPtr fn_hom(const PosetPtr& dom, const PosetPtr& cod);
  HomIdlPtr idl_hom(const PosetPtr& dom, const PosetPtr& cod);
  HomTranPtr tran_hom(const PosetPtr& dom, const PosetPtr& cod);

  MonotoneFn denote_fun(const Context& ctx, const TermPtr& term);
  Ideal denote_rel(const Context& ctx, const TermPtr& term);
  Transformer denote_tran(const Context& ctx, const TermPtr& term);
  Denotation denote(Level level, const Context& ctx, const TermPtr& term);

  // Simulation families. simi is a comap F[t] -> R[t]; psim is a bimap
  // R[t] -> T[t]; the starred versions are the adjoint partners.
  Ideal simi(const TypePtr& t);
  Ideal simi_star(const TypePtr& t);
  Ideal simi_ctx(const Context& ctx);
  Ideal simi_star_ctx(const Context& ctx);
  Transformer psim(const TypePtr& t);
  Transformer psim_star(const TypePtr& t);
  Transformer psim_ctx(const Context& ctx);
  Transformer psim_star_ctx(const Context& ctx);

  CoherenceReport check_constant_coherence();

  // Direct (non-hom-materializing) evaluators for saturated first-order
  // pattern applications. Must agree exactly with the categorical route.
  Ideal direct_rel_pattern_app(const Context& ctx, const TermPtr& plam, const TermPtr& arg);
  // wp membership query for the transformer-level direct evaluator: does
  // context element gamma belong to wp((plam) arg)(Z)?
  bool direct_tran_wp(const Context& ctx, const TermPtr& plam, const TermPtr& arg, const Bits& z,
                      std::size_t gamma);
  Transformer direct_tran_pattern_app(const Context& ctx, const TermPtr& plam,
                                      const TermPtr& arg);

  // First-order evaluators used by the direct route (exposed for tests).
  std::size_t fun_eval(const Context& ctx, const TermPtr& t, const std::vector<std::size_t>& env);
  Bits rel_eval(const Context& ctx, const TermPtr& t, const std::vector<std::size_t>& env);
  std::vector<Bits> angel_eval(const Context& ctx, const TermPtr& t,
                               const std::vector<std::size_t>& env);

private:
  Model model_;
  std::map<std::string, PosetPtr> type_memo_;
  std::map<std::string, Ideal> simi_memo_;
  std::map<std::string, Transformer> psim_memo_;
  std::map<std::size_t, std::vector<HomFunPtr>> fn_hom_memo_;
  std::map<std::size_t, std::vector<HomIdlPtr>> idl_hom_memo_;
  std::map<std::size_t, std::vector<HomTranPtr>> tran_hom_memo_;

  Transformer t_interp_of(const ConstantDecl& c);
  MonotoneFn ctx_projection(Level level, const Context& ctx, std::size_t k);
  MonotoneFn unit_projection(Level level, const Context& ctx);
  TypePtr infer_type(const Context& ctx, const TermPtr& t, Level level);
  Ideal rel_constant_point(const ConstantDecl& c, const Context& ctx);
  Transformer tran_constant_point(const ConstantDecl& c, const Context& ctx);
  Ideal rel_plam(const Context& ctx, const TermPtr& t);
  Transformer tran_plam(const Context& ctx, const TermPtr& t);
};

// Model construction helpers shared by tests, the heap realization and the
// definition-file loader.
MonotoneFn constant_fn_point(const PosetPtr& value_poset, std::size_t value);
Ideal lift_gr(const ConstantDecl& c);          // default R interpretation Gr(F)
Transformer lift_univ(const ConstantDecl& c);  // default T interpretation A(R)

}  // namespace patsem
