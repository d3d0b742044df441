#include "pgkit/gf.hpp"

#include <string>

namespace pgkit {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Digits of v in base p, least significant first, padded to k entries.
std::vector<int> digits(int v, int p, int k) {
  std::vector<int> d(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = v % p;
    v /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p, int k) {
  int v = 0;
  for (int i = k - 1; i >= 0; --i) v = v * p + d[static_cast<std::size_t>(i)];
  return v;
}

// Polynomial multiplication over GF(p) followed by reduction modulo the
// monic polynomial with coefficients poly[0..k] (poly[k] = 1).
int poly_mul_mod(int a, int b, int p, int k, const std::vector<int>& poly) {
  std::vector<int> da = digits(a, p, k), db = digits(b, p, k);
  std::vector<int> prod(static_cast<std::size_t>(2 * k - 1), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] +
           da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
  for (int deg = 2 * k - 2; deg >= k; --deg) {
    int c = prod[static_cast<std::size_t>(deg)];
    if (c == 0) continue;
    // x^deg = -poly[0..k-1] * x^(deg-k) since poly is monic.
    prod[static_cast<std::size_t>(deg)] = 0;
    for (int i = 0; i < k; ++i) {
      int t = prod[static_cast<std::size_t>(deg - k + i)] -
              c * poly[static_cast<std::size_t>(i)];
      prod[static_cast<std::size_t>(deg - k + i)] = ((t % p) + p) % p;
    }
  }
  prod.resize(static_cast<std::size_t>(k));
  return undigits(prod, p, k);
}

}  // namespace

Field Field::make(int q) {
  Field f;
  f.q_ = q;
  if (is_prime(q)) {
    f.p_ = q;
    f.k_ = 1;
  } else if (q == 4) {
    f.p_ = 2;
    f.k_ = 2;
    f.poly_ = {1, 1, 1};  // x^2 + x + 1
  } else if (q == 8) {
    f.p_ = 2;
    f.k_ = 3;
    f.poly_ = {1, 1, 0, 1};  // x^3 + x + 1
  } else if (q == 9) {
    f.p_ = 3;
    f.k_ = 2;
    f.poly_ = {1, 0, 1};  // x^2 + 1
  } else {
    throw Error("unsupported field order " + std::to_string(q) +
                " (supported: any prime, and 4, 8, 9)");
  }
  if (q > 16) {
    // Geometry sizes cap the useful orders; keep the tables small.
    throw Error("unsupported field order " + std::to_string(q) +
                " (supported: 2, 3, 4, 5, 7, 8, 9)");
  }

  std::size_t n = static_cast<std::size_t>(q);
  f.add_.assign(n * n, 0);
  f.mul_.assign(n * n, 0);
  f.neg_.assign(n, 0);
  f.inv_.assign(n, 0);

  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      int s, m;
      if (f.k_ == 1) {
        s = (a + b) % q;
        m = (a * b) % q;
      } else {
        std::vector<int> da = digits(a, f.p_, f.k_), db = digits(b, f.p_, f.k_);
        std::vector<int> ds(static_cast<std::size_t>(f.k_));
        for (int i = 0; i < f.k_; ++i)
          ds[static_cast<std::size_t>(i)] =
              (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % f.p_;
        s = undigits(ds, f.p_, f.k_);
        m = poly_mul_mod(a, b, f.p_, f.k_, f.poly_);
      }
      f.add_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = s;
      f.mul_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = m;
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (f.add_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] == 0)
        f.neg_[static_cast<std::size_t>(a)] = b;
      if (a != 0 &&
          f.mul_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] == 1)
        f.inv_[static_cast<std::size_t>(a)] = b;
    }
  }
  // Smallest multiplicative generator.
  for (int g = 1; g < q; ++g) {
    int x = g, order = 1;
    while (x != 1) {
      x = f.mul_[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(g)];
      ++order;
    }
    if (order == q - 1) {
      f.gen_ = g;
      break;
    }
  }
  return f;
}

int Field::inv(int a) const {
  check(a);
  if (a == 0) throw Error("division by zero: inv(0) is undefined");
  return inv_[static_cast<std::size_t>(a)];
}

}  // namespace pgkit
