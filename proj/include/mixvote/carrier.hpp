#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/rng.hpp"

namespace mixvote {

// Protocol code is templated over a carrier policy so one implementation can
// run in two ways:
//   ConcreteCarrier - real group elements, draws from a RandomSource
//   AffineCarrier   - symbolic affine expressions over Z_g in the randomness
//                     and secret coordinates (abelian carriers only), used by
//                     the exact audit engine
struct ConcreteCarrier {
  using Value = GroupElement;

  GroupSpec spec;
  RandomSource* rng = nullptr;

  Value sample() { return groups::sample_uniform(spec, *rng); }
  Value constant(const GroupElement& e) const {
    if (e.spec != spec) throw std::invalid_argument("carrier: mismatched element spec");
    return e;
  }
  Value op(const Value& a, const Value& b) const { return groups::op(a, b); }
  Value inv(const Value& a) const { return groups::inverse(a); }
  Value identity() const { return groups::identity(spec); }

  // Uniform permutation of v slot indices (0-based), via Fisher-Yates.
  std::vector<int> sample_slot_perm(int v) {
    std::vector<int> a(static_cast<std::size_t>(v));
    std::iota(a.begin(), a.end(), 0);
    for (int i = v - 1; i >= 1; --i) {
      const auto j = static_cast<int>(rng->below(static_cast<std::uint64_t>(i) + 1));
      std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    }
    return a;
  }
};

// One digit of an affine expression: constant + sum of randomness coords +
// sum of secret coords, all mod g.
struct AffineDigit {
  std::map<int, int> r;  // randomness coordinate -> coefficient
  std::map<int, int> s;  // secret coordinate -> coefficient
  int c = 0;

  friend bool operator==(const AffineDigit& a, const AffineDigit& b) {
    return a.c == b.c && a.r == b.r && a.s == b.s;
  }
};

struct AffineElement {
  GroupSpec spec;
  std::vector<AffineDigit> digits;
};

// Allocates fresh coordinates and holds the scripted discrete draws (the
// slot permutations) for one enumeration branch.
struct AffineContext {
  int next_r = 0;
  int next_s = 0;
  std::vector<std::vector<int>> scripted_perms;
  std::size_t perm_pos = 0;

  void reset_branch(std::vector<std::vector<int>> perms) {
    next_r = 0;
    next_s = 0;
    scripted_perms = std::move(perms);
    perm_pos = 0;
  }
};

struct AffineCarrier {
  using Value = AffineElement;

  GroupSpec spec;
  AffineContext* ctx = nullptr;

  int modulus() const {
    switch (spec.kind) {
      case GroupKind::Bitstring: return 2;
      case GroupKind::DigitVector: return 10;
      default: throw std::logic_error("affine carrier requires an abelian group");
    }
  }

  Value sample() {
    Value e{spec, std::vector<AffineDigit>(static_cast<std::size_t>(spec.length))};
    for (auto& d : e.digits) d.r[ctx->next_r++] = 1;
    return e;
  }

  // A fresh secret element: one secret coordinate per digit.
  Value secret() {
    Value e{spec, std::vector<AffineDigit>(static_cast<std::size_t>(spec.length))};
    for (auto& d : e.digits) d.s[ctx->next_s++] = 1;
    return e;
  }

  Value constant(const GroupElement& g) const {
    if (g.spec != spec) throw std::invalid_argument("carrier: mismatched element spec");
    Value e{spec, std::vector<AffineDigit>(g.v.size())};
    for (std::size_t i = 0; i < g.v.size(); ++i) e.digits[i].c = g.v[i];
    return e;
  }

  Value op(const Value& a, const Value& b) const {
    const int m = modulus();
    Value r = a;
    for (std::size_t i = 0; i < r.digits.size(); ++i) {
      auto& d = r.digits[i];
      const auto& e = b.digits[i];
      d.c = (d.c + e.c) % m;
      for (const auto& [k, coef] : e.r) {
        int nv = (d.r[k] + coef) % m;
        if (nv == 0) d.r.erase(k); else d.r[k] = nv;
      }
      for (const auto& [k, coef] : e.s) {
        int nv = (d.s[k] + coef) % m;
        if (nv == 0) d.s.erase(k); else d.s[k] = nv;
      }
    }
    return r;
  }

  Value inv(const Value& a) const {
    const int m = modulus();
    Value r = a;
    for (auto& d : r.digits) {
      d.c = (m - d.c) % m;
      for (auto& [k, coef] : d.r) coef = m - coef;
      for (auto& [k, coef] : d.s) coef = m - coef;
    }
    return r;
  }

  Value identity() const {
    return Value{spec, std::vector<AffineDigit>(static_cast<std::size_t>(spec.length))};
  }

  std::vector<int> sample_slot_perm(int v) {
    if (ctx->perm_pos >= ctx->scripted_perms.size())
      throw std::logic_error("affine carrier: slot permutation script exhausted");
    const auto& p = ctx->scripted_perms[ctx->perm_pos++];
    if (static_cast<int>(p.size()) != v)
      throw std::logic_error("affine carrier: scripted permutation has wrong size");
    return p;
  }
};

}  // namespace mixvote
