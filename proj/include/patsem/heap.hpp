#pragma once

#include "patsem/semantics.hpp"

namespace patsem {

// The separation-algebra realization: a discrete poset of references with a
// distinguished nil, the discrete poset of finite partial maps from non-nil
// references to reference pairs, and the constants cell, star and new at
// their natural levels.
struct HeapModel {
  std::size_t num_refs = 0;  // non-nil references r1..rN
  PosetPtr ref_poset;        // nil, r1, ..., rN
  PosetPtr heap_poset;
  Model model;  // bases Ref/Heap plus cell, star, new, nil and ref constants

  std::size_t nil() const { return 0; }
  std::size_t ref(std::size_t i) const { return i; }  // 1-based non-nil index

  // Heap encoding: one digit per non-nil ref, 0 = absent, 1 + next*(N+1)+prev
  // otherwise.
  std::size_t heap_index(
      const std::vector<std::optional<std::pair<std::size_t, std::size_t>>>& cells) const;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> heap_cells(
      std::size_t idx) const;
  std::string heap_label(std::size_t idx) const;
};

HeapModel build_heap_model(std::size_t num_refs);

// Runs the first rev1 clause, with the frame left empty as in the two-cell
// situation: match input against  p |-> q,nil * n |-> nil,nil  and produce
// p |-> q,n * n |-> p,nil,  binding q angelically. Returns the set of heaps
// the clause admits (empty when the pattern cannot match).
std::vector<std::size_t> run_rev1_step(const HeapModel& model, std::size_t input_heap,
                                       std::size_t p, std::size_t n);

}  // namespace patsem
