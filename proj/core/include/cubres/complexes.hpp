#pragma once

#include <map>
#include <vector>

#include "cubres/matrix.hpp"

namespace cubres {

// Bounded cochain complex of finite-dimensional rational vector spaces.
// Degrees with zero dimension are simply absent.
struct Complex {
  std::map<int, int> dims;   // degree -> dimension, entries > 0 only
  std::map<int, MatQ> diff;  // d^n : C^n -> C^{n+1}, stored when both ends exist

  int dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  MatQ d(int n) const {  // always well-shaped, zero when absent
    auto it = diff.find(n);
    if (it != diff.end()) return it->second;
    return MatQ::zero(dim(n + 1), dim(n));
  }
  int min_degree() const { return dims.empty() ? 0 : dims.begin()->first; }
  int max_degree() const { return dims.empty() ? -1 : dims.rbegin()->first; }
  bool zero() const { return dims.empty(); }

  void validate() const;  // shapes and d after d = 0
  bool operator==(const Complex&) const = default;
};

// Degree-zero complex with the given dimension.
Complex concentrated(int degree, int dimension);

// C[k]^n = C^{n+k}, differential scaled by (-1)^k.
Complex shift(const Complex& c, int k);

Complex direct_sum(const Complex& a, const Complex& b);

// Tensor product with the Koszul sign: d(a@b) = da@b + (-1)^{deg a} a@db.
// Basis order in degree n: blocks (p, q = n-p) by ascending p, Kronecker
// ordering within a block.
Complex tensor(const Complex& a, const Complex& b);

std::map<int, int> cohomology_dims(const Complex& c);

// Per-degree kernel representatives spanning H^n (columns), modulo image.
struct Cohomology {
  std::map<int, int> dims;
  std::map<int, MatQ> representatives;
};
Cohomology cohomology(const Complex& c);

int euler_characteristic(const Complex& c);

struct ChainMap {
  Complex source;
  Complex target;
  std::map<int, MatQ> comp;  // degree -> matrix target.dim(n) x source.dim(n)

  MatQ at(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    return MatQ::zero(target.dim(n), source.dim(n));
  }
  void validate() const;  // commutes with differentials
  bool operator==(const ChainMap&) const = default;
};

// Cone of f: C^n = A^{n+1} (+) B^n with d(a,b) = (-da, f a + db).
Complex cone(const ChainMap& f);

// Quasi-isomorphism test by exact ranks (cone acyclicity).
bool quasi_iso(const ChainMap& f);

ChainMap tensor_map(const ChainMap& f, const ChainMap& g);

}  // namespace cubres
