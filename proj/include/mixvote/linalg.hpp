#pragma once

// Exact linear algebra over prime fields GF(p) for small p.  Used to decide
// membership of vectors in column spaces and to put subspaces and coset
// representatives into a canonical form so they can be compared by value.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixvote::linalg {

inline int mod_inverse(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::invalid_argument("mod_inverse: not invertible");
}

// Incrementally maintained reduced basis for a subspace of GF(p)^n.  Each
// basis vector has a distinct pivot coordinate with value 1 and zeros in all
// other basis vectors' pivot coordinates, so the basis (ordered by pivot) is a
// canonical representation of the subspace and residuals are canonical coset
// representatives.
class ColSpace {
 public:
  ColSpace(int p, int n) : p_(p), n_(n) {
    if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("ColSpace: unsupported modulus");
    if (n < 0) throw std::invalid_argument("ColSpace: negative dimension");
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient() const { return n_; }

  // Reduces v against the basis; the remainder is the canonical coset
  // representative of v + span(basis).
  std::vector<int> residual(std::vector<int> v) const {
    normalize(v);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      int coef = v[static_cast<std::size_t>(pivots_[k])];
      if (coef == 0) continue;
      subtract_scaled(v, basis_[k], coef);
    }
    return v;
  }

  bool contains(const std::vector<int>& v) const { return is_zero(residual(v)); }

  // Adds v to the spanning set; returns true when the dimension grew.
  bool insert(const std::vector<int>& v) {
    std::vector<int> r = residual(v);
    int pivot = -1;
    for (int i = 0; i < n_; ++i)
      if (r[static_cast<std::size_t>(i)] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    int inv = mod_inverse(r[static_cast<std::size_t>(pivot)], p_);
    for (auto& x : r) x = x * inv % p_;
    // Back-eliminate the new pivot from existing basis vectors, keeping the
    // basis fully reduced.
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      int coef = basis_[k][static_cast<std::size_t>(pivot)];
      if (coef != 0) subtract_scaled(basis_[k], r, coef);
    }
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot) ++at;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(at), r);
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
    return true;
  }

  // Canonical, comparable encoding of the subspace itself.
  std::string key() const {
    std::string out;
    for (const auto& b : basis_) {
      for (int x : b) out.push_back(static_cast<char>('0' + x));
      out.push_back('|');
    }
    return out;
  }

  bool operator==(const ColSpace& other) const {
    return p_ == other.p_ && n_ == other.n_ && pivots_ == other.pivots_ && basis_ == other.basis_;
  }

  static bool is_zero(const std::vector<int>& v) {
    for (int x : v)
      if (x != 0) return false;
    return true;
  }

 private:
  void normalize(std::vector<int>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("ColSpace: dimension mismatch");
    for (auto& x : v) {
      x %= p_;
      if (x < 0) x += p_;
    }
  }
  void subtract_scaled(std::vector<int>& v, const std::vector<int>& w, int coef) const {
    for (int i = 0; i < n_; ++i) {
      auto& x = v[static_cast<std::size_t>(i)];
      x = (x - coef * w[static_cast<std::size_t>(i)] % p_ + p_ * p_) % p_;
    }
  }

  int p_;
  int n_;
  std::vector<std::vector<int>> basis_;   // ordered by pivot coordinate
  std::vector<int> pivots_;
};

// Column-major matrix helper: columns are vectors in GF(p)^rows.
inline ColSpace column_space(int p, const std::vector<std::vector<int>>& columns, int rows) {
  ColSpace cs(p, rows);
  for (const auto& col : columns) cs.insert(col);
  return cs;
}

}  // namespace mixvote::linalg
