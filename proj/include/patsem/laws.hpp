#pragma once

#include <cstdint>

#include "patsem/heap.hpp"

namespace patsem {

struct LawReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // replayable instance dumps
  std::vector<std::string> notes;            // strict witnesses etc.
  double wall_ms = 0;
  bool report_only = false;
  bool passed() const { return report_only || failures == 0; }
  std::string to_json() const;
  std::string summary() const;
};

// All posets up to isomorphism for sizes <= 3, plus nothing else: the
// standard shapes every exhaustive suite ranges over.
std::vector<PosetPtr> gen_posets(std::size_t max_size);

// The tiny registry for term corpora: a chosen base poset with element and
// endofunction constants, a purely relational constant and a non-map
// transformer constant; int3 brings clamped minus.
Model suite_model(const PosetPtr& base);
Model int3_suite_model();

// Seeded well-typed term generation at a level, for a goal type, in a
// context. Deterministic under (seed); guaranteed to contain redexes.
std::vector<TermPtr> gen_terms(Level level, const std::vector<TypePtr>& ctx_types,
                               const TypePtr& goal, int depth, std::uint64_t seed,
                               std::size_t count, bool allow_arrows,
                               bool allow_patterns = true);

LawReport suite_idl(std::size_t max_size);
LawReport suite_tran();
LawReport suite_simulation(Level level, std::uint64_t seed, std::size_t count);
LawReport suite_beta_eta_subst(Level level, std::uint64_t seed, std::size_t count);
LawReport suite_monotonicity(Level level, std::uint64_t seed, std::size_t count);
LawReport suite_patterns(std::uint64_t seed);
LawReport suite_heap();
LawReport experiment_hexagon(std::uint64_t seed, std::size_t count);

std::vector<std::string> law_suite_names();
LawReport run_suite(const std::string& name, std::size_t max_size, std::uint64_t seed);

}  // namespace patsem
