#pragma once

#include <stdexcept>
#include <vector>

#include "mixvote/carrier.hpp"
#include "mixvote/group.hpp"

namespace mixvote {

// (t+1)-of-(t+1) sharing.  Abelian carriers use additive sharing; the
// permutation carrier uses ordered multiplicative sharing where the secret is
// the composition s_1 o s_2 o ... o s_{t+1} taken left to right.
enum class ShareScheme : std::uint8_t { Additive, Multiplicative };

inline ShareScheme scheme_for(const GroupSpec& spec) {
  return spec.kind == GroupKind::Permutation ? ShareScheme::Multiplicative
                                             : ShareScheme::Additive;
}

struct ShareBundle {
  GroupSpec spec;
  ShareScheme scheme = ShareScheme::Additive;
  std::vector<GroupElement> shares;  // size t+1, ordered

  int threshold() const { return static_cast<int>(shares.size()) - 1; }
};

namespace detail {

// Ordered fold of shares; the reconstruction rule for both schemes.
template <class C>
typename C::Value combine_shares(C& cr, const std::vector<typename C::Value>& shares) {
  if (shares.empty()) throw std::invalid_argument("combine: no shares");
  auto acc = shares[0];
  for (std::size_t i = 1; i < shares.size(); ++i) acc = cr.op(acc, shares[i]);
  return acc;
}

// Deal t+1 shares of a secret: the first t are fresh uniform draws, the last
// is inverse(prefix) o secret so the ordered fold reconstructs.
template <class C>
std::vector<typename C::Value> deal_shares(C& cr, const typename C::Value& secret, int t) {
  if (t < 0) throw std::invalid_argument("deal_shares: t must be >= 0");
  std::vector<typename C::Value> shares;
  shares.reserve(static_cast<std::size_t>(t) + 1);
  auto prefix = cr.identity();
  for (int j = 0; j < t; ++j) {
    shares.push_back(cr.sample());
    prefix = cr.op(prefix, shares.back());
  }
  shares.push_back(cr.op(cr.inv(prefix), secret));
  return shares;
}

// Redistribution of an additive sharing: row j is a fresh sharing of old
// share j, and the new share i is the i-th column sum.
template <class C>
std::vector<std::vector<typename C::Value>> deal_subshares(
    C& cr, const std::vector<typename C::Value>& old_shares) {
  const int t = static_cast<int>(old_shares.size()) - 1;
  std::vector<std::vector<typename C::Value>> rows;
  rows.reserve(old_shares.size());
  for (const auto& s : old_shares) rows.push_back(deal_shares(cr, s, t));
  return rows;
}

template <class C>
std::vector<typename C::Value> column_sums(
    C& cr, const std::vector<std::vector<typename C::Value>>& rows) {
  const std::size_t n = rows.at(0).size();
  std::vector<typename C::Value> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto acc = rows[0][i];
    for (std::size_t j = 1; j < rows.size(); ++j) acc = cr.op(acc, rows[j][i]);
    out.push_back(acc);
  }
  return out;
}

}  // namespace detail

inline ShareBundle share(const GroupElement& secret, int t, RandomSource& rng) {
  groups::validate_element(secret);
  if (t < 0) throw std::invalid_argument("share: t must be >= 0");
  ConcreteCarrier cr{secret.spec, &rng};
  ShareBundle b{secret.spec, scheme_for(secret.spec), detail::deal_shares(cr, secret, t)};
  return b;
}

inline GroupElement reconstruct(const ShareBundle& b) {
  if (b.shares.empty()) throw std::invalid_argument("reconstruct: empty bundle");
  for (const auto& s : b.shares)
    if (s.spec != b.spec) throw std::invalid_argument("reconstruct: mismatched share spec");
  ConcreteCarrier cr{b.spec, nullptr};
  return detail::combine_shares(cr, b.shares);
}

// Subshare matrix produced by a redistribution step.  Row j is a fresh
// sharing of old share j; column sums are the new shares.
struct ReshareMatrix {
  GroupSpec spec;
  std::vector<std::vector<GroupElement>> subshares;  // (t+1) x (t+1)
};

inline std::pair<ReshareMatrix, ShareBundle> redistribute(const ShareBundle& b,
                                                          RandomSource& rng) {
  if (b.scheme != ShareScheme::Additive)
    throw std::invalid_argument("redistribute: additive sharings only");
  if (b.shares.empty()) throw std::invalid_argument("redistribute: empty bundle");
  ConcreteCarrier cr{b.spec, &rng};
  ReshareMatrix m{b.spec, detail::deal_subshares(cr, b.shares)};
  ShareBundle nb{b.spec, b.scheme, detail::column_sums(cr, m.subshares)};
  return {std::move(m), std::move(nb)};
}

// Apply a per-share modifier on the left: share_j := omega_j op share_j.
// Reconstruction of the result equals op(sum/composition of modifiers, old
// secret) for abelian carriers.
inline ShareBundle apply_modifier(const ShareBundle& b,
                                  const std::vector<GroupElement>& modifier_shares) {
  if (modifier_shares.size() != b.shares.size())
    throw std::invalid_argument("apply_modifier: share-count mismatch");
  ShareBundle out = b;
  for (std::size_t j = 0; j < out.shares.size(); ++j) {
    if (modifier_shares[j].spec != b.spec)
      throw std::invalid_argument("apply_modifier: mismatched modifier spec");
    out.shares[j] = groups::op(modifier_shares[j], out.shares[j]);
  }
  return out;
}

}  // namespace mixvote
