#include "cubres/poset.hpp"

#include <algorithm>
#include <numeric>

namespace cubres {

FinOrdCat FinOrdCat::from_generators(int n_objects, const std::vector<std::pair<int, int>>& gens,
                                     std::vector<std::string> names) {
  FinOrdCat c;
  c.n_ = n_objects;
  c.leq_.assign(static_cast<size_t>(n_objects) * n_objects, 0);
  for (int i = 0; i < n_objects; ++i) c.leq_[static_cast<size_t>(i) * n_objects + i] = 1;
  for (auto [s, t] : gens) {
    if (s < 0 || t < 0 || s >= n_objects || t >= n_objects)
      throw validation_error("category generator out of range");
    if (s == t) throw validation_error("non-identity endomorphism generator: category not orderable");
    c.leq_[static_cast<size_t>(s) * n_objects + t] = 1;
  }
  // Warshall closure.
  for (int k = 0; k < n_objects; ++k)
    for (int i = 0; i < n_objects; ++i)
      if (c.leq(i, k))
        for (int j = 0; j < n_objects; ++j)
          if (c.leq(k, j)) c.leq_[static_cast<size_t>(i) * n_objects + j] = 1;
  for (int i = 0; i < n_objects; ++i)
    for (int j = 0; j < n_objects; ++j)
      if (i != j && c.leq(i, j) && c.leq(j, i))
        throw validation_error("isomorphism between distinct objects: category not orderable");
  if (names.empty()) {
    for (int i = 0; i < n_objects; ++i) names.push_back(std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n_objects) throw validation_error("object name count mismatch");
  c.names_ = std::move(names);
  return c;
}

FinOrdCat FinOrdCat::point() { return from_generators(1, {}); }

FinOrdCat FinOrdCat::arrow() { return from_generators(2, {{0, 1}}); }

std::vector<std::pair<int, int>> FinOrdCat::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool covered = true;
      for (int k = 0; k < n_ && covered; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) covered = false;
      if (covered) out.emplace_back(i, j);
    }
  return out;
}

std::vector<std::pair<int, int>> FinOrdCat::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && leq(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<int> FinOrdCat::linearization() const {
  std::vector<int> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int below_a = 0, below_b = 0;
    for (int k = 0; k < n_; ++k) {
      below_a += leq(k, a);
      below_b += leq(k, b);
    }
    return below_a < below_b;
  });
  return order;
}

FinOrdCat product(const FinOrdCat& a, const FinOrdCat& b) {
  int n = a.objects() * b.objects();
  std::vector<std::pair<int, int>> gens;
  std::vector<std::string> names;
  auto id = [&](int i, int j) { return i * b.objects() + j; };
  for (int i = 0; i < a.objects(); ++i)
    for (int j = 0; j < b.objects(); ++j) {
      names.push_back(a.name(i) + "*" + b.name(j));
      for (int i2 = 0; i2 < a.objects(); ++i2)
        if (i2 != i && a.leq(i, i2)) gens.emplace_back(id(i, j), id(i2, j));
      for (int j2 = 0; j2 < b.objects(); ++j2)
        if (j2 != j && b.leq(j, j2)) gens.emplace_back(id(i, j), id(i, j2));
    }
  return FinOrdCat::from_generators(n, gens, names);
}

}  // namespace cubres
