#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixvote/rng.hpp"

namespace mixvote {

// The three carrier groups elements travel through:
//   Bitstring   - fixed-length bit vectors under XOR
//   DigitVector - fixed-length base-10 digit vectors under componentwise
//                 addition mod 10 (the human-friendly carrier)
//   Permutation - S_c under composition, stored as 1-based image arrays
enum class GroupKind : std::uint8_t { Bitstring, DigitVector, Permutation };

struct GroupSpec {
  GroupKind kind = GroupKind::Bitstring;
  // Length l for the vector carriers, degree c for permutations.
  int length = 1;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.kind == b.kind && a.length == b.length;
  }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

  bool abelian() const { return kind != GroupKind::Permutation; }
};

inline GroupSpec bitstring_spec(int l) { return GroupSpec{GroupKind::Bitstring, l}; }
inline GroupSpec digit_spec(int l) { return GroupSpec{GroupKind::DigitVector, l}; }
inline GroupSpec perm_spec(int c) { return GroupSpec{GroupKind::Permutation, c}; }

inline void validate_spec(const GroupSpec& spec) {
  if (spec.length < 1)
    throw std::invalid_argument("group spec: length/degree must be >= 1");
}

// A group element.  Storage is uniform: bits hold 0/1, digits hold 0..9,
// permutations hold 1-based images (entry i-1 is the image of i).
struct GroupElement {
  GroupSpec spec;
  std::vector<std::uint8_t> v;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.spec == b.spec && a.v == b.v;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.v < b.v; }
};

namespace groups {

inline void validate_element(const GroupElement& e) {
  validate_spec(e.spec);
  if (static_cast<int>(e.v.size()) != e.spec.length)
    throw std::invalid_argument("group element: wrong component count");
  switch (e.spec.kind) {
    case GroupKind::Bitstring:
      for (auto d : e.v)
        if (d > 1) throw std::invalid_argument("bitstring component out of range");
      break;
    case GroupKind::DigitVector:
      for (auto d : e.v)
        if (d > 9) throw std::invalid_argument("digit component out of range");
      break;
    case GroupKind::Permutation: {
      std::vector<bool> seen(e.v.size(), false);
      for (auto d : e.v) {
        if (d < 1 || d > e.v.size() || seen[d - 1])
          throw std::invalid_argument("permutation images must be a bijection on 1..c");
        seen[d - 1] = true;
      }
      break;
    }
  }
}

inline GroupElement make_element(const GroupSpec& spec, std::vector<std::uint8_t> vals) {
  GroupElement e{spec, std::move(vals)};
  validate_element(e);
  return e;
}

// Unchecked construction.  Only for modeling values written down by a
// fallible human, which may no longer satisfy the group invariants.
inline GroupElement raw_element(const GroupSpec& spec, std::vector<std::uint8_t> vals) {
  return GroupElement{spec, std::move(vals)};
}

inline GroupElement identity(const GroupSpec& spec) {
  validate_spec(spec);
  GroupElement e{spec, std::vector<std::uint8_t>(spec.length, 0)};
  if (spec.kind == GroupKind::Permutation)
    for (int i = 0; i < spec.length; ++i) e.v[i] = static_cast<std::uint8_t>(i + 1);
  return e;
}

// Group operation.  For permutations op(a, b) means a after b: the composite
// sends x to a(b(x)).
inline GroupElement op(const GroupElement& a, const GroupElement& b) {
  if (a.spec != b.spec) throw std::invalid_argument("op: mismatched group specs");
  GroupElement r{a.spec, std::vector<std::uint8_t>(a.v.size(), 0)};
  switch (a.spec.kind) {
    case GroupKind::Bitstring:
      for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[i] ^ b.v[i];
      break;
    case GroupKind::DigitVector:
      for (std::size_t i = 0; i < a.v.size(); ++i)
        r.v[i] = static_cast<std::uint8_t>((a.v[i] + b.v[i]) % 10);
      break;
    case GroupKind::Permutation:
      for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[b.v[i] - 1];
      break;
  }
  return r;
}

inline GroupElement inverse(const GroupElement& a) {
  GroupElement r{a.spec, std::vector<std::uint8_t>(a.v.size(), 0)};
  switch (a.spec.kind) {
    case GroupKind::Bitstring:
      r.v = a.v;
      break;
    case GroupKind::DigitVector:
      for (std::size_t i = 0; i < a.v.size(); ++i)
        r.v[i] = static_cast<std::uint8_t>((10 - a.v[i]) % 10);
      break;
    case GroupKind::Permutation:
      for (std::size_t i = 0; i < a.v.size(); ++i) r.v[a.v[i] - 1] = static_cast<std::uint8_t>(i + 1);
      break;
  }
  return r;
}

inline GroupElement sample_uniform(const GroupSpec& spec, RandomSource& rng) {
  validate_spec(spec);
  GroupElement e{spec, std::vector<std::uint8_t>(spec.length, 0)};
  switch (spec.kind) {
    case GroupKind::Bitstring:
      for (auto& d : e.v) d = static_cast<std::uint8_t>(rng.below(2));
      break;
    case GroupKind::DigitVector:
      for (auto& d : e.v) d = static_cast<std::uint8_t>(rng.below(10));
      break;
    case GroupKind::Permutation: {
      std::vector<std::uint8_t> a(spec.length);
      std::iota(a.begin(), a.end(), std::uint8_t{1});
      for (int i = spec.length - 1; i >= 1; --i) {
        const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(a[i], a[j]);
      }
      e.v = std::move(a);
      break;
    }
  }
  return e;
}

// Canonical text encodings: "1010" for bits, "0734" for digits, "2,3,1" for
// permutation image lists.
inline std::string encode(const GroupElement& e) {
  std::string s;
  switch (e.spec.kind) {
    case GroupKind::Bitstring:
    case GroupKind::DigitVector:
      s.reserve(e.v.size());
      for (auto d : e.v) s.push_back(static_cast<char>('0' + d));
      break;
    case GroupKind::Permutation:
      for (std::size_t i = 0; i < e.v.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(static_cast<int>(e.v[i]));
      }
      break;
  }
  return s;
}

inline GroupElement parse_element(const GroupSpec& spec, const std::string& s) {
  validate_spec(spec);
  std::vector<std::uint8_t> vals;
  if (spec.kind == GroupKind::Permutation) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw std::invalid_argument("parse_element: empty image");
      vals.push_back(static_cast<std::uint8_t>(std::stoi(tok)));
    }
  } else {
    vals.reserve(s.size());
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("parse_element: bad digit");
      vals.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
  }
  return make_element(spec, std::move(vals));
}

// Number of elements, saturating at 2^63 to keep feasibility checks simple.
inline std::uint64_t order_saturated(const GroupSpec& spec) {
  validate_spec(spec);
  const std::uint64_t cap = std::uint64_t{1} << 63;
  std::uint64_t n = 1;
  switch (spec.kind) {
    case GroupKind::Bitstring:
      for (int i = 0; i < spec.length; ++i) {
        if (n >= cap / 2) return cap;
        n *= 2;
      }
      return n;
    case GroupKind::DigitVector:
      for (int i = 0; i < spec.length; ++i) {
        if (n >= cap / 10) return cap;
        n *= 10;
      }
      return n;
    case GroupKind::Permutation:
      for (int i = 2; i <= spec.length; ++i) {
        if (n >= cap / static_cast<std::uint64_t>(i)) return cap;
        n *= static_cast<std::uint64_t>(i);
      }
      return n;
  }
  return n;
}

}  // namespace groups
}  // namespace mixvote
