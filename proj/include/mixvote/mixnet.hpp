#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mixvote/carrier.hpp"
#include "mixvote/group.hpp"
#include "mixvote/setsystem.hpp"
#include "mixvote/sharing.hpp"
#include "mixvote/transcript.hpp"

namespace mixvote {

// P1: didactic single-pass mix over a disjoint set system (b = t+1 blocks,
//     every server used once), abelian carrier, permute-then-modify.
// P2: production mix over any verified set system; servers may repeat across
//     blocks.  Reshare mode redistributes shares after every modifier step
//     (including once more before delivery); Confinement mode hands shares
//     across position-to-position and requires the t-confinement property.
// P3: multi-seat mix over the permutation carrier; blinders are composed via
//     a shared group-product subprotocol and the final blinder is applied by
//     the first block, which also delivers.
enum class Protocol : std::uint8_t { P1, P2, P3 };
enum class ProductEngine : std::uint8_t { Ideal, Concrete };

struct MixConfig {
  SetSystem system;
  TransferMode mode = TransferMode::Reshare;
  GroupSpec carrier;
  Protocol protocol = Protocol::P2;
  ProductEngine engine = ProductEngine::Ideal;
};

template <class V>
struct BlockSecretsT {
  std::vector<int> rho;                 // 0-based slot permutation (identity if unused)
  std::vector<std::vector<V>> omega;    // [slot][share j]
  std::vector<V> omega_total;           // [slot]
};

template <class V>
struct MixSecretsT {
  std::vector<BlockSecretsT<V>> blocks;  // index k-1 for block k
};

template <class V>
struct MixForwardT {
  MixSecretsT<V> secrets;
  // delivered[slot][code][share j]; multi-seat runs have one code per slot.
  std::vector<std::vector<std::vector<V>>> delivered;
  TranscriptT<V> transcript;
  // sigma[i] = original slot whose payload was delivered to voter i+1.
  std::vector<int> sigma;
};

using MixSecrets = MixSecretsT<GroupElement>;
using MixForward = MixForwardT<GroupElement>;

namespace detail {

inline bool blocks_disjoint(const SetSystem& s) {
  std::set<int> seen;
  for (const auto& block : s.blocks)
    for (int id : block)
      if (!seen.insert(id).second) return false;
  return true;
}

inline int leader_of(const SetSystem& s, int k) {
  return s.blocks[static_cast<std::size_t>(k - 1)][0];
}

inline int member_of(const SetSystem& s, int k, int j) {
  return s.blocks[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)];
}

inline std::size_t union_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> u(a.begin(), a.end());
  u.insert(b.begin(), b.end());
  return u.size();
}

}  // namespace detail

inline void validate_mix_config(const MixConfig& cfg) {
  validate_spec(cfg.carrier);
  auto v = verify_verifiers(cfg.system);
  if (!v.ok)
    throw std::invalid_argument("mix config: set system fails verification (" + v.reason + ")");
  switch (cfg.protocol) {
    case Protocol::P1:
      if (!cfg.carrier.abelian())
        throw std::invalid_argument("mix config: P1 requires an abelian carrier");
      if (!detail::blocks_disjoint(cfg.system) || cfg.system.b() != cfg.system.t + 1)
        throw std::invalid_argument(
            "mix config: P1 requires a disjoint set system with b = t+1 blocks");
      break;
    case Protocol::P2:
      if (!cfg.carrier.abelian())
        throw std::invalid_argument("mix config: P2 requires an abelian carrier");
      if (cfg.mode == TransferMode::Confinement) {
        auto conf = check_confinement(cfg.system);
        if (!conf.ok)
          throw std::invalid_argument(
              "mix config: set system fails t-confinement; confinement transfer mode requires it (" +
              conf.reason + ")");
      }
      break;
    case Protocol::P3:
      if (cfg.carrier.kind != GroupKind::Permutation)
        throw std::invalid_argument("mix config: P3 requires the permutation carrier");
      if (cfg.engine == ProductEngine::Concrete) {
        if (cfg.system.t > 1)
          throw std::invalid_argument(
              "mix config: the concrete product engine supports t <= 1; use the ideal engine");
        const auto& blocks = cfg.system.blocks;
        for (int k = 2; k <= cfg.system.b(); ++k) {
          if (detail::union_size(blocks[static_cast<std::size_t>(k - 2)],
                                 blocks[static_cast<std::size_t>(k - 1)]) <
              static_cast<std::size_t>(2 * cfg.system.t + 1))
            throw std::invalid_argument(
                "mix config: concrete product engine needs >= 2t+1 distinct participants per step");
        }
        if (cfg.system.b() > 1 &&
            detail::union_size(blocks.back(), blocks.front()) <
                static_cast<std::size_t>(2 * cfg.system.t + 1))
          throw std::invalid_argument(
              "mix config: concrete product engine needs >= 2t+1 distinct participants per step");
      }
      break;
  }
}

namespace detail {

// Forward pass shared by P1 and P2.  payload[slot][code] are the carrier
// values entrusted to the mix; every code of a slot travels under the same
// slot permutation and the same modifier.
template <class C>
MixForwardT<typename C::Value> mix_forward_abelian(
    const std::vector<std::vector<typename C::Value>>& payload, const MixConfig& cfg, C& cr,
    const std::string& run_id) {
  using V = typename C::Value;
  validate_mix_config(cfg);
  if (cfg.protocol == Protocol::P3)
    throw std::invalid_argument("mix_forward_abelian: use forward_p3 for the multi-seat protocol");
  const int v = static_cast<int>(payload.size());
  if (v < 1) throw std::invalid_argument("mix forward: need at least one slot");
  const int c = static_cast<int>(payload[0].size());
  for (const auto& row : payload)
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("mix forward: ragged payload matrix");
  const int t = cfg.system.t;
  const int b = cfg.system.b();
  const bool reshare = cfg.protocol == Protocol::P2 && cfg.mode == TransferMode::Reshare;

  MixForwardT<V> out;
  out.transcript.run_id = run_id;
  auto& tr = out.transcript;

  // Dealer: share every code of every slot toward block 1.
  std::vector<std::vector<std::vector<V>>> matrix(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) {
    matrix[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(c));
    for (int a = 0; a < c; ++a) {
      auto shares = deal_shares(cr, payload[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)], t);
      for (int j = 0; j <= t; ++j)
        tr.emit(kPartyCge, party_srv(member_of(cfg.system, 1, j)), EventKind::Share, i + 1, 1,
                Payload<V>::element(shares[static_cast<std::size_t>(j)]));
      matrix[static_cast<std::size_t>(i)].push_back(std::move(shares));
    }
  }

  std::vector<int> orig_of(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) orig_of[static_cast<std::size_t>(i)] = i;

  out.secrets.blocks.resize(static_cast<std::size_t>(b));
  for (int k = 1; k <= b; ++k) {
    auto& sec = out.secrets.blocks[static_cast<std::size_t>(k - 1)];
    const int leader = leader_of(cfg.system, k);

    // Slot permutation, announced once to the whole block.
    sec.rho = cr.sample_slot_perm(v);
    tr.emit(party_srv(leader), party_blk(k), EventKind::PermAnnounce, 0, k,
            Payload<V>::slot_perm(sec.rho));
    std::vector<std::vector<std::vector<V>>> permuted(static_cast<std::size_t>(v));
    std::vector<int> new_orig(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) {
      permuted[static_cast<std::size_t>(i)] =
          std::move(matrix[static_cast<std::size_t>(sec.rho[static_cast<std::size_t>(i)])]);
      new_orig[static_cast<std::size_t>(i)] = orig_of[static_cast<std::size_t>(sec.rho[static_cast<std::size_t>(i)])];
    }
    matrix = std::move(permuted);
    orig_of = std::move(new_orig);

    // Modifier shares, distributed column-wise by the leader.
    sec.omega.resize(static_cast<std::size_t>(v));
    sec.omega_total.reserve(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) {
      auto& row = sec.omega[static_cast<std::size_t>(i)];
      row.reserve(static_cast<std::size_t>(t) + 1);
      for (int j = 0; j <= t; ++j) {
        row.push_back(cr.sample());
        tr.emit(party_srv(leader), party_srv(member_of(cfg.system, k, j)), EventKind::Modifier,
                i + 1, k, Payload<V>::element(row.back()));
      }
      auto total = row[0];
      for (int j = 1; j <= t; ++j) total = cr.op(total, row[static_cast<std::size_t>(j)]);
      sec.omega_total.push_back(std::move(total));
      for (int a = 0; a < c; ++a)
        for (int j = 0; j <= t; ++j) {
          auto& cell = matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
          cell = cr.op(row[static_cast<std::size_t>(j)], cell);
        }
    }

    // Hand shares onward: redistribute in Reshare mode (also once more within
    // the last block before delivery), or pass position-to-position.
    if (reshare) {
      const int dest = k < b ? k + 1 : b;
      for (int i = 0; i < v; ++i)
        for (int a = 0; a < c; ++a) {
          auto rows = deal_subshares(cr, matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]);
          for (int j = 0; j <= t; ++j)
            for (int j2 = 0; j2 <= t; ++j2)
              tr.emit(party_srv(member_of(cfg.system, k, j)),
                      party_srv(member_of(cfg.system, dest, j2)), EventKind::Reshare, i + 1, dest,
                      Payload<V>::element(rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(j2)]));
          matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = column_sums(cr, rows);
        }
    } else if (k < b) {
      for (int i = 0; i < v; ++i)
        for (int a = 0; a < c; ++a)
          for (int j = 0; j <= t; ++j)
            tr.emit(party_srv(member_of(cfg.system, k, j)),
                    party_srv(member_of(cfg.system, k + 1, j)), EventKind::Share, i + 1, k + 1,
                    Payload<V>::element(
                        matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)][static_cast<std::size_t>(j)]));
    }
  }

  // Delivery: share j of every code goes to device j of the slot's voter.
  for (int i = 0; i < v; ++i)
    for (int a = 0; a < c; ++a)
      for (int j = 0; j <= t; ++j)
        tr.emit(party_srv(member_of(cfg.system, b, j)), party_dev(i + 1, j + 1),
                EventKind::Delivery, i + 1, b,
                Payload<V>::element(
                    matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)][static_cast<std::size_t>(j)]));

  out.delivered = std::move(matrix);
  out.sigma = std::move(orig_of);
  return out;
}

// Reverse pass shared by P1 and P2.  Each cast enters at the last block's
// leader; every leader strips its own slot modifier and inverts its slot
// permutation, in reverse block order.  Batches move slot-sorted.
template <class C>
std::vector<std::pair<int, typename C::Value>> mix_reply_abelian(
    const std::vector<std::pair<int, typename C::Value>>& casts,
    const MixSecretsT<typename C::Value>& secrets, const MixConfig& cfg, C& cr,
    TranscriptT<typename C::Value>& tr) {
  using V = typename C::Value;
  const int b = cfg.system.b();
  std::vector<std::pair<int, V>> batch;
  batch.reserve(casts.size());
  for (const auto& [slot, value] : casts) {
    tr.emit(party_voter(slot), party_srv(leader_of(cfg.system, b)), EventKind::Reply, slot, b,
            Payload<V>::element(value));
    batch.emplace_back(slot - 1, value);
  }
  std::sort(batch.begin(), batch.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (int k = b; k >= 1; --k) {
    const auto& sec = secrets.blocks[static_cast<std::size_t>(k - 1)];
    for (auto& [slot, value] : batch) {
      value = cr.op(cr.inv(sec.omega_total[static_cast<std::size_t>(slot)]), value);
      slot = sec.rho[static_cast<std::size_t>(slot)];
    }
    std::sort(batch.begin(), batch.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    const std::string to = k > 1 ? party_srv(leader_of(cfg.system, k - 1)) : std::string(kPartyCge);
    for (const auto& [slot, value] : batch)
      tr.emit(party_srv(leader_of(cfg.system, k)), to, EventKind::Reply, slot + 1, k,
              Payload<V>::element(value));
  }
  std::vector<std::pair<int, V>> arrivals;
  arrivals.reserve(batch.size());
  for (auto& [slot, value] : batch) arrivals.emplace_back(slot + 1, std::move(value));
  return arrivals;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Concrete public entry points.

inline MixForward forward_p1(const std::vector<GroupElement>& pads, const MixConfig& cfg,
                             RandomSource& rng, const std::string& run_id = "p1") {
  if (cfg.protocol != Protocol::P1) throw std::invalid_argument("forward_p1: config is not P1");
  std::vector<std::vector<GroupElement>> payload;
  payload.reserve(pads.size());
  for (const auto& p : pads) {
    groups::validate_element(p);
    if (p.spec != cfg.carrier) throw std::invalid_argument("forward_p1: pad spec mismatch");
    payload.push_back({p});
  }
  ConcreteCarrier cr{cfg.carrier, &rng};
  return detail::mix_forward_abelian(payload, cfg, cr, run_id);
}

inline MixForward forward_p2(const std::vector<std::vector<GroupElement>>& codes,
                             const MixConfig& cfg, RandomSource& rng,
                             const std::string& run_id = "p2") {
  if (cfg.protocol != Protocol::P2) throw std::invalid_argument("forward_p2: config is not P2");
  for (const auto& row : codes)
    for (const auto& e : row) {
      groups::validate_element(e);
      if (e.spec != cfg.carrier) throw std::invalid_argument("forward_p2: code spec mismatch");
    }
  ConcreteCarrier cr{cfg.carrier, &rng};
  return detail::mix_forward_abelian(codes, cfg, cr, run_id);
}

// View of one delivered code as a share bundle.
inline ShareBundle delivered_bundle(const MixForward& f, const GroupSpec& spec, int slot,
                                    int code = 1) {
  const auto& shares =
      f.delivered.at(static_cast<std::size_t>(slot - 1)).at(static_cast<std::size_t>(code - 1));
  return ShareBundle{spec, scheme_for(spec), shares};
}

// casts: (delivered slot, carrier value), one per replying sender.
inline std::vector<std::pair<int, GroupElement>> reply_abelian(
    const std::vector<std::pair<int, GroupElement>>& casts, const MixSecrets& secrets,
    const MixConfig& cfg, Transcript& tr) {
  ConcreteCarrier cr{cfg.carrier, nullptr};
  return detail::mix_reply_abelian(casts, secrets, cfg, cr, tr);
}

// ---------------------------------------------------------------------------
// Shared group-product subprotocol: from shares of pi (held by the previous
// block) and shares of omega (held by the next block, drawn by its leader),
// produce a fresh sharing of omega o pi held by the next block.

namespace detail {

struct ProductParties {
  std::vector<int> holders;    // previous block members (pi shares)
  std::vector<int> receivers;  // next block members (omega shares, output)
  int level = 0;
};

// Ideal engine: a sealed functionality absorbs both sharings and re-deals the
// composition.  Internal values never appear in any server's view; each
// receiver only sees its own fresh output share.
inline std::vector<GroupElement> product_ideal(const std::vector<GroupElement>& pi_shares,
                                               const std::vector<GroupElement>& omega_shares,
                                               const ProductParties& pp, RandomSource& rng,
                                               Transcript* tr, int slot) {
  ConcreteCarrier cr{pi_shares[0].spec, &rng};
  auto pi = combine_shares(cr, pi_shares);
  auto omega = combine_shares(cr, omega_shares);
  auto product = cr.op(omega, pi);
  const int t = static_cast<int>(pi_shares.size()) - 1;
  if (tr) {
    for (std::size_t j = 0; j < pp.holders.size(); ++j)
      tr->emit(party_srv(pp.holders[j]), kPartyIdeal, EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(pi_shares[j]));
    for (std::size_t j = 0; j < pp.receivers.size(); ++j)
      tr->emit(party_srv(pp.receivers[j]), kPartyIdeal, EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(omega_shares[j]));
  }
  auto out = deal_shares(cr, product, t);
  if (tr)
    for (std::size_t j = 0; j < pp.receivers.size(); ++j)
      tr->emit(kPartyIdeal, party_srv(pp.receivers[j]), EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(out[j]));
  return out;
}

// Concrete engine (t <= 1): the receiving leader blinds with a fresh u, the
// previous block's members fold their pi shares into the traveling value in
// order, and the blinded prefix cancels on reconstruction:
//   z_1 = omega o u^-1 (kept by the leader), z_last = u o pi.
inline std::vector<GroupElement> product_concrete(const std::vector<GroupElement>& pi_shares,
                                                  const std::vector<GroupElement>& omega_shares,
                                                  const ProductParties& pp, RandomSource& rng,
                                                  Transcript* tr, int slot) {
  ConcreteCarrier cr{pi_shares[0].spec, &rng};
  const int t = static_cast<int>(pi_shares.size()) - 1;
  if (t > 1)
    throw std::invalid_argument("group_product: concrete engine supports t <= 1");
  auto omega = combine_shares(cr, omega_shares);
  auto u = cr.sample();
  auto traveling = u;
  const int leader = pp.receivers[0];
  for (std::size_t j = 0; j < pi_shares.size(); ++j) {
    if (tr)
      tr->emit(j == 0 ? party_srv(leader) : party_srv(pp.holders[j - 1]),
               party_srv(pp.holders[j]), EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(traveling));
    traveling = cr.op(traveling, pi_shares[j]);
  }
  std::vector<GroupElement> out;
  out.push_back(cr.op(omega, cr.inv(u)));
  if (t == 0) {
    if (tr)
      tr->emit(party_srv(pp.holders.back()), party_srv(leader), EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(traveling));
    out[0] = cr.op(out[0], traveling);
  } else {
    const int last = pp.receivers.back();
    if (tr)
      tr->emit(party_srv(pp.holders.back()), party_srv(last), EventKind::Product, slot, pp.level,
               Payload<GroupElement>::element(traveling));
    out.push_back(traveling);
  }
  return out;
}

}  // namespace detail

inline ShareBundle group_product(const ShareBundle& pi, const ShareBundle& omega,
                                 ProductEngine engine, RandomSource& rng,
                                 Transcript* tr = nullptr,
                                 const detail::ProductParties* parties = nullptr, int slot = 0) {
  if (pi.spec.kind != GroupKind::Permutation || omega.spec != pi.spec)
    throw std::invalid_argument("group_product: both inputs must share a permutation carrier");
  if (pi.shares.size() != omega.shares.size())
    throw std::invalid_argument("group_product: share-count mismatch");
  detail::ProductParties fallback;
  if (!parties) {
    for (int j = 0; j < static_cast<int>(pi.shares.size()); ++j) {
      fallback.holders.push_back(j + 1);
      fallback.receivers.push_back(static_cast<int>(pi.shares.size()) + j + 1);
    }
    parties = &fallback;
  }
  auto shares = engine == ProductEngine::Ideal
                    ? detail::product_ideal(pi.shares, omega.shares, *parties, rng, tr, slot)
                    : detail::product_concrete(pi.shares, omega.shares, *parties, rng, tr, slot);
  return ShareBundle{pi.spec, ShareScheme::Multiplicative, std::move(shares)};
}

// ---------------------------------------------------------------------------
// P3 forward and reply (multi-seat, permutation carrier, concrete only).

inline MixForward forward_p3(const std::vector<GroupElement>& perms, const MixConfig& cfg,
                             RandomSource& rng, const std::string& run_id = "p3") {
  if (cfg.protocol != Protocol::P3) throw std::invalid_argument("forward_p3: config is not P3");
  validate_mix_config(cfg);
  const int v = static_cast<int>(perms.size());
  if (v < 1) throw std::invalid_argument("forward_p3: need at least one slot");
  for (const auto& p : perms) {
    groups::validate_element(p);
    if (p.spec != cfg.carrier) throw std::invalid_argument("forward_p3: element spec mismatch");
  }
  const int t = cfg.system.t;
  const int b = cfg.system.b();
  ConcreteCarrier cr{cfg.carrier, &rng};

  MixForward out;
  out.transcript.run_id = run_id;
  auto& tr = out.transcript;

  std::vector<std::vector<GroupElement>> matrix(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) {
    auto shares = detail::deal_shares(cr, perms[static_cast<std::size_t>(i)], t);
    for (int j = 0; j <= t; ++j)
      tr.emit(kPartyCge, party_srv(detail::member_of(cfg.system, 1, j)), EventKind::Share, i + 1, 1,
              Payload<GroupElement>::element(shares[static_cast<std::size_t>(j)]));
    matrix[static_cast<std::size_t>(i)] = std::move(shares);
  }

  std::vector<int> orig_of(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) orig_of[static_cast<std::size_t>(i)] = i;
  out.secrets.blocks.resize(static_cast<std::size_t>(b));
  for (auto& sec : out.secrets.blocks) {
    sec.rho.resize(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) sec.rho[static_cast<std::size_t>(i)] = i;
  }

  auto blind_block = [&](int holder_block, int blinder_block) {
    auto& sec = out.secrets.blocks[static_cast<std::size_t>(blinder_block - 1)];
    const int leader = detail::leader_of(cfg.system, blinder_block);
    sec.omega.resize(static_cast<std::size_t>(v));
    sec.omega_total.clear();
    detail::ProductParties pp;
    pp.holders = cfg.system.blocks[static_cast<std::size_t>(holder_block - 1)];
    pp.receivers = cfg.system.blocks[static_cast<std::size_t>(blinder_block - 1)];
    pp.level = blinder_block;
    for (int i = 0; i < v; ++i) {
      auto& row = sec.omega[static_cast<std::size_t>(i)];
      row.reserve(static_cast<std::size_t>(t) + 1);
      for (int j = 0; j <= t; ++j) {
        row.push_back(cr.sample());
        tr.emit(party_srv(leader), party_srv(detail::member_of(cfg.system, blinder_block, j)),
                EventKind::Modifier, i + 1, blinder_block,
                Payload<GroupElement>::element(row.back()));
      }
      auto total = row[0];
      for (int j = 1; j <= t; ++j) total = cr.op(total, row[static_cast<std::size_t>(j)]);
      sec.omega_total.push_back(total);
      ShareBundle pi{cfg.carrier, ShareScheme::Multiplicative, matrix[static_cast<std::size_t>(i)]};
      ShareBundle om{cfg.carrier, ShareScheme::Multiplicative, row};
      auto product = group_product(pi, om, cfg.engine, rng, &tr, &pp, i + 1);
      matrix[static_cast<std::size_t>(i)] = std::move(product.shares);
    }
  };

  for (int k = 2; k <= b; ++k) {
    blind_block(k - 1, k);
    auto& sec = out.secrets.blocks[static_cast<std::size_t>(k - 1)];
    sec.rho = cr.sample_slot_perm(v);
    tr.emit(party_srv(detail::leader_of(cfg.system, k)), party_blk(k), EventKind::PermAnnounce, 0,
            k, Payload<GroupElement>::slot_perm(sec.rho));
    std::vector<std::vector<GroupElement>> permuted(static_cast<std::size_t>(v));
    std::vector<int> new_orig(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) {
      permuted[static_cast<std::size_t>(i)] =
          std::move(matrix[static_cast<std::size_t>(sec.rho[static_cast<std::size_t>(i)])]);
      new_orig[static_cast<std::size_t>(i)] =
          orig_of[static_cast<std::size_t>(sec.rho[static_cast<std::size_t>(i)])];
    }
    matrix = std::move(permuted);
    orig_of = std::move(new_orig);
  }

  // Final blinding by block 1's leader; block 1 holds and delivers.
  blind_block(b, 1);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j <= t; ++j)
      tr.emit(party_srv(detail::member_of(cfg.system, 1, j)), party_dev(i + 1, j + 1),
              EventKind::Delivery, i + 1, 1,
              Payload<GroupElement>::element(matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));

  out.delivered.resize(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i)
    out.delivered[static_cast<std::size_t>(i)] = {std::move(matrix[static_cast<std::size_t>(i)])};
  out.sigma = std::move(orig_of);
  return out;
}

// casts: (delivered slot, image under the delivered permutation).  Leaders
// strip their blinders pointwise in reverse block order and invert the slot
// maps; arrivals surface at the original slot as images under the original
// permutation.
inline std::vector<std::pair<int, int>> reply_p3(const std::vector<std::pair<int, int>>& casts,
                                                 const MixSecrets& secrets, const MixConfig& cfg,
                                                 Transcript& tr) {
  const int b = cfg.system.b();
  const int degree = cfg.carrier.length;
  auto apply_inv = [&](const GroupElement& p, int y) {
    if (y < 1 || y > degree) throw std::invalid_argument("reply_p3: image out of range");
    for (int x = 0; x < degree; ++x)
      if (p.v[static_cast<std::size_t>(x)] == y) return x + 1;
    throw std::logic_error("reply_p3: not a permutation");
  };

  std::vector<std::pair<int, int>> batch;
  batch.reserve(casts.size());
  for (const auto& [slot, image] : casts) {
    tr.emit(party_voter(slot), party_srv(detail::leader_of(cfg.system, 1)), EventKind::Reply, slot,
            1, Payload<GroupElement>::image_of(image));
    batch.emplace_back(slot - 1, image);
  }
  std::sort(batch.begin(), batch.end());

  // Block 1 applied the last blinder and applied no slot permutation.
  for (auto& [slot, image] : batch)
    image = apply_inv(secrets.blocks[0].omega_total[static_cast<std::size_t>(slot)], image);
  {
    const std::string to =
        b >= 2 ? party_srv(detail::leader_of(cfg.system, b)) : std::string(kPartyCge);
    for (const auto& [slot, image] : batch)
      tr.emit(party_srv(detail::leader_of(cfg.system, 1)), to, EventKind::Reply, slot + 1, 1,
              Payload<GroupElement>::image_of(image));
  }
  for (int k = b; k >= 2; --k) {
    const auto& sec = secrets.blocks[static_cast<std::size_t>(k - 1)];
    for (auto& [slot, image] : batch) {
      slot = sec.rho[static_cast<std::size_t>(slot)];
      image = apply_inv(sec.omega_total[static_cast<std::size_t>(slot)], image);
    }
    std::sort(batch.begin(), batch.end());
    const std::string to =
        k > 2 ? party_srv(detail::leader_of(cfg.system, k - 1)) : std::string(kPartyCge);
    for (const auto& [slot, image] : batch)
      tr.emit(party_srv(detail::leader_of(cfg.system, k)), to, EventKind::Reply, slot + 1, k,
              Payload<GroupElement>::image_of(image));
  }
  std::vector<std::pair<int, int>> arrivals;
  arrivals.reserve(batch.size());
  for (const auto& [slot, image] : batch) arrivals.emplace_back(slot + 1, image);
  return arrivals;
}

}  // namespace mixvote
