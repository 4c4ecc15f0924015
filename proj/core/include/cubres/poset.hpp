#pragma once

#include <string>
#include <vector>

#include "cubres/arrangement.hpp"

namespace cubres {

// Finite orderable index category.  Orderability forces the hom-preorder to
// be a partial order with only identity endomorphisms, so the categories the
// engine indexes over (points, arrows, cubes, and their products) are all
// poset categories: at most one arrow between any two objects.  We store the
// reflexive-transitive closure and reject generators that create a cycle.
class FinOrdCat {
 public:
  FinOrdCat() = default;

  // Builds from generators; throws validation_error when a non-identity
  // endomorphism or isomorphism would arise (the category is not orderable).
  static FinOrdCat from_generators(int n_objects, const std::vector<std::pair<int, int>>& gens,
                                   std::vector<std::string> names = {});

  static FinOrdCat point();
  static FinOrdCat arrow();  // two objects, one arrow 0 -> 1

  int objects() const { return n_; }
  bool leq(int i, int j) const { return leq_[static_cast<size_t>(i) * n_ + j]; }
  const std::string& name(int i) const { return names_[i]; }

  // Generating arrows: covering pairs of the order.
  std::vector<std::pair<int, int>> covers() const;
  // All non-identity arrows (i < j with i <= j).
  std::vector<std::pair<int, int>> strict_pairs() const;
  // Objects listed in a linearization compatible with the order.
  std::vector<int> linearization() const;

  bool operator==(const FinOrdCat&) const = default;

 private:
  int n_ = 0;
  std::vector<char> leq_;
  std::vector<std::string> names_;
};

FinOrdCat product(const FinOrdCat& a, const FinOrdCat& b);

}  // namespace cubres
