#pragma once

#include <vector>

#include "pgkit/errors.hpp"

namespace pgkit {

// Arithmetic in GF(q) for the supported orders q in {2,3,4,5,7,8,9}.
//
// Elements are canonical integers in [0, q): for prime q the residue itself;
// for q = p^k the base-p digit encoding of the polynomial representative
// (value = c0 + c1*p + ... + c_{k-1}*p^{k-1}). All operations are lookups in
// tables precomputed at construction, so a Field is immutable afterwards and
// safe to share across threads.
//
// Fixed reduction polynomials (for deterministic labels across runs):
//   GF(4): x^2 + x + 1     GF(8): x^3 + x + 1     GF(9): x^2 + 1
class Field {
 public:
  // Throws Error for orders outside the supported set (e.g. 6).
  static Field make(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  // Coefficients c0..ck of the monic reduction polynomial (ck = 1);
  // empty for prime fields.
  const std::vector<int>& reduction_poly() const { return poly_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { check(a); return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  // Throws Error for a = 0.
  int inv(int a) const;

  // Smallest element generating the multiplicative group.
  int primitive_element() const { return gen_; }

 private:
  Field() = default;
  std::size_t idx(int a, int b) const {
    check(a);
    check(b);
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) +
           static_cast<std::size_t>(b);
  }
  void check(int a) const {
    if (a < 0 || a >= q_) throw Error("field element out of range");
  }

  int q_ = 0, p_ = 0, k_ = 0, gen_ = 0;
  std::vector<int> poly_;
  std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace pgkit
