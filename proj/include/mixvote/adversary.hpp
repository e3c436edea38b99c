#pragma once

// Passive-adversary auditing.  A corruption set picks parties; capture()
// projects a run transcript onto exactly what those parties saw; the audit
// functions then decide -- exactly, never by sampling -- whether that view's
// distribution depends on the protected data.
//
// Two interchangeable engines do the deciding:
//  * pointwise: enumerate every value of every randomness draw and compare
//    the resulting view distributions verbatim (budget-capped);
//  * affine: for abelian carriers, run the protocol once per slot-permutation
//    branch with every view digit kept as an affine form over draw and secret
//    coordinates, then settle distribution questions with exact linear
//    algebra mod 2 / mod 5.
// Where both engines fit, they must agree; the tests cross-check that.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mixvote/carrier.hpp"
#include "mixvote/group.hpp"
#include "mixvote/linalg.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/setsystem.hpp"
#include "mixvote/sharing.hpp"
#include "mixvote/transcript.hpp"

namespace mixvote {

// Hard cap on exhaustive enumeration; beyond it an audit reports
// "intractable" rather than ever falling back to sampling.
constexpr long long kEnumerationBudget = 10'000'000;

// ---------------------------------------------------------------------------
// Corruption sets and view capture
// ---------------------------------------------------------------------------

struct CorruptionSet {
  std::vector<std::string> parties;  // "srv:3", "dev:2:1", "cge"

  bool contains(const std::string& id) const {
    return std::find(parties.begin(), parties.end(), id) != parties.end();
  }
  bool empty() const { return parties.empty(); }

  int corrupted_servers(const SetSystem& sys) const {
    int n = 0;
    for (int s = 1; s <= sys.m; ++s)
      if (contains(party_srv(s))) ++n;
    return n;
  }
};

inline CorruptionSet corrupt_servers(std::initializer_list<int> ids) {
  CorruptionSet cs;
  for (int id : ids) cs.parties.push_back(party_srv(id));
  return cs;
}

// Existential honesty: at least one block has no corrupted member.
inline bool has_honest_block(const SetSystem& sys, const CorruptionSet& cs) {
  for (const auto& block : sys.blocks) {
    bool clean = true;
    for (int s : block)
      if (cs.contains(party_srv(s))) {
        clean = false;
        break;
      }
    if (clean) return true;
  }
  return false;
}

namespace detail {

template <class V>
bool record_visible(const RecordT<V>& r, const CorruptionSet& cs, const SetSystem& sys) {
  // The code issuer is an observer: it contributes its codebook and what
  // arrives back at it, but the shares it deals ride private channels and
  // are charged to their recipients, not to it.
  if (cs.contains(r.from) && r.from != kPartyCge) return true;
  if (cs.contains(r.to)) return true;
  // A block broadcast reaches every member, so any corrupted member sees it.
  if (r.to.rfind("blk:", 0) == 0) {
    const int k = std::stoi(r.to.substr(4));
    if (k >= 1 && k <= sys.b())
      for (int s : sys.blocks[static_cast<std::size_t>(k - 1)])
        if (cs.contains(party_srv(s))) return true;
  }
  return false;
}

}  // namespace detail

// The adversary's view: every record sent to, received by, or generated at a
// corrupted party (a generating party is always the sender of the value).
template <class V>
std::vector<RecordT<V>> capture(const TranscriptT<V>& tr, const CorruptionSet& cs,
                                const SetSystem& sys) {
  std::vector<RecordT<V>> out;
  for (const auto& r : tr.records)
    if (detail::record_visible(r, cs, sys)) out.push_back(r);
  return out;
}

namespace detail {

template <class V>
std::string record_header(const RecordT<V>& r) {
  std::string s = std::to_string(r.step);
  s += '|';
  s += r.from;
  s += '|';
  s += r.to;
  s += '|';
  s += kind_name(r.kind);
  s += '|';
  s += std::to_string(r.slot);
  s += '|';
  s += std::to_string(r.level);
  s += '|';
  return s;
}

// Concrete serialized view: the exact bytes the coalition observed.
inline std::string concrete_view(const Transcript& tr, const CorruptionSet& cs,
                                 const SetSystem& sys) {
  std::string out;
  for (const auto& r : tr.records) {
    if (!record_visible(r, cs, sys)) continue;
    out += record_header(r);
    out += payload_text(r.payload);
    out.push_back('\n');
  }
  return out;
}

// Symbolic view: discrete content (routing, announced permutations, images)
// goes into the skeleton; every carrier digit becomes an affine row.
struct SymbolicView {
  std::string skeleton;
  std::vector<AffineDigit> rows;
};

inline void append_symbolic_element(SymbolicView& v, const AffineElement& e) {
  v.skeleton += "#" + std::to_string(e.digits.size());
  v.rows.insert(v.rows.end(), e.digits.begin(), e.digits.end());
}

inline SymbolicView symbolic_view(const TranscriptT<AffineElement>& tr, const CorruptionSet& cs,
                                  const SetSystem& sys) {
  SymbolicView v;
  for (const auto& r : tr.records) {
    if (!record_visible(r, cs, sys)) continue;
    v.skeleton += record_header(r);
    switch (r.payload.type) {
      case Payload<AffineElement>::Type::None:
        v.skeleton += "-";
        break;
      case Payload<AffineElement>::Type::SlotPerm:
        for (std::size_t i = 0; i < r.payload.perm.size(); ++i) {
          if (i) v.skeleton.push_back(',');
          v.skeleton += std::to_string(r.payload.perm[i] + 1);
        }
        break;
      case Payload<AffineElement>::Type::Image:
        v.skeleton += std::to_string(r.payload.image);
        break;
      case Payload<AffineElement>::Type::Element:
        append_symbolic_element(v, r.payload.elem);
        break;
    }
    v.skeleton.push_back('\n');
  }
  return v;
}

// ---------------------------------------------------------------------------
// Exact distributions and total-variation distance
// ---------------------------------------------------------------------------

struct ViewDistribution {
  std::map<std::string, long long> counts;
  long long total = 0;

  void add(const std::string& view) {
    ++counts[view];
    ++total;
  }
};

struct Distance {
  bool exactly_zero = true;
  double value = 0.0;
};

// Exact TV distance between two normalized count maps; the zero test is an
// integer comparison, never a float one.
inline Distance tv_distance(const ViewDistribution& a, const ViewDistribution& b) {
  if (a.total == 0 || b.total == 0)
    throw std::invalid_argument("tv_distance: empty distribution");
  __int128 num = 0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    long long ca = 0, cb = 0;
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      ca = (ia++)->second;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      cb = (ib++)->second;
    } else {
      ca = (ia++)->second;
      cb = (ib++)->second;
    }
    __int128 diff = static_cast<__int128>(ca) * b.total - static_cast<__int128>(cb) * a.total;
    num += diff < 0 ? -diff : diff;
  }
  Distance d;
  d.exactly_zero = num == 0;
  d.value = d.exactly_zero
                ? 0.0
                : static_cast<double>(static_cast<long double>(num) /
                                      (2.0L * static_cast<long double>(a.total) *
                                       static_cast<long double>(b.total)));
  return d;
}

// ---------------------------------------------------------------------------
// Pointwise engine: iterate the protocol over every randomness vector
// ---------------------------------------------------------------------------

struct EnumStats {
  bool intractable = false;
  long long states = 0;
};

// fn: RandomSource& -> view string.  The first call probes the draw layout;
// afterwards every combination of draw values is replayed exactly once.
template <class ViewFn>
EnumStats enumerate_views(ViewFn&& fn, long long budget, ViewDistribution& dist) {
  RangeProbe probe;
  (void)fn(probe);
  const auto ranges = probe.ranges();
  long long states = 1;
  for (auto r : ranges) {
    states *= static_cast<long long>(r);
    if (states > budget) return {true, states};
  }
  std::vector<std::uint64_t> values(ranges.size(), 0);
  for (long long n = 0; n < states; ++n) {
    ScriptedSource src(values, ranges);
    dist.add(fn(src));
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (++values[i] < ranges[i]) break;
      values[i] = 0;
    }
  }
  return {false, states};
}

// Number of states one run would enumerate, without running them.
template <class ViewFn>
long long probe_states(ViewFn&& fn, long long cap) {
  RangeProbe probe;
  (void)fn(probe);
  long long states = 1;
  for (auto r : probe.ranges()) {
    states *= static_cast<long long>(r);
    if (states > cap) return cap + 1;
  }
  return states;
}

// ---------------------------------------------------------------------------
// Affine engine: exact linear algebra over the view digits
// ---------------------------------------------------------------------------

inline std::vector<int> primes_for(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Bitstring: return {2};
    case GroupKind::DigitVector: return {2, 5};  // Z_10 splits into Z_2 x Z_5
    default: throw std::invalid_argument("affine engine requires an abelian carrier");
  }
}

struct AffineAnalysis {
  linalg::ColSpace draw_space;                     // span of the randomness columns
  std::vector<std::vector<int>> secret_residuals;  // one canonical residual per secret coord
  std::vector<int> const_residual;
};

inline AffineAnalysis analyze_rows(const std::vector<AffineDigit>& rows, int p, int secret_count) {
  const int n = static_cast<int>(rows.size());
  std::set<int> rcoords;
  for (const auto& row : rows)
    for (const auto& [k, coef] : row.r)
      if (coef % p != 0) rcoords.insert(k);
  linalg::ColSpace cs(p, n);
  std::vector<int> col(static_cast<std::size_t>(n));
  for (int k : rcoords) {
    for (int i = 0; i < n; ++i) {
      auto it = rows[static_cast<std::size_t>(i)].r.find(k);
      col[static_cast<std::size_t>(i)] = it == rows[static_cast<std::size_t>(i)].r.end()
                                             ? 0
                                             : it->second % p;
    }
    cs.insert(col);
  }
  AffineAnalysis a{std::move(cs), {}, {}};
  for (int k = 0; k < secret_count; ++k) {
    for (int i = 0; i < n; ++i) {
      auto it = rows[static_cast<std::size_t>(i)].s.find(k);
      col[static_cast<std::size_t>(i)] = it == rows[static_cast<std::size_t>(i)].s.end()
                                             ? 0
                                             : it->second % p;
    }
    a.secret_residuals.push_back(a.draw_space.residual(col));
  }
  for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)].c % p;
  a.const_residual = a.draw_space.residual(col);
  return a;
}

// No secret coordinate reaches outside the span of the randomness columns:
// then for every fixed secret assignment the view distribution is one and
// the same coset distribution, i.e. the view is independent of the secrets.
inline bool rows_hide_secrets(const std::vector<AffineDigit>& rows, const GroupSpec& spec,
                              int secret_count) {
  for (int p : primes_for(spec)) {
    auto a = analyze_rows(rows, p, secret_count);
    for (const auto& res : a.secret_residuals)
      if (!linalg::ColSpace::is_zero(res)) return false;
  }
  return true;
}

inline std::string digits_key(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s.push_back(static_cast<char>('0' + x));
  return s;
}

// Canonical label of one branch's view distribution: discrete skeleton plus,
// per prime, the canonical coset data (randomness span, the secret
// dependence reduced mod that span, the constant offset likewise reduced).
// Two branches with equal labels have identical view distributions for every
// secret assignment; multiset equality of labels across two worlds therefore
// certifies distance exactly zero.
inline std::string branch_label(const SymbolicView& view, const GroupSpec& spec,
                                int secret_count) {
  std::string key = view.skeleton;
  for (int p : primes_for(spec)) {
    auto a = analyze_rows(view.rows, p, secret_count);
    key += "@p" + std::to_string(p) + "=" + a.draw_space.key() + "/s:";
    for (const auto& res : a.secret_residuals) {
      key += digits_key(res);
      key.push_back(',');
    }
    key += "/c:" + digits_key(a.const_residual);
  }
  return key;
}

inline std::vector<std::vector<int>> all_slot_perms(int v) {
  std::vector<int> idx(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// Every combination of per-block slot permutations, in block order.
inline std::vector<std::vector<std::vector<int>>> all_branches(int blocks, int v) {
  std::vector<std::vector<std::vector<int>>> out{{}};
  const auto perms = all_slot_perms(v);
  for (int k = 0; k < blocks; ++k) {
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& partial : out)
      for (const auto& p : perms) {
        auto grown = partial;
        grown.push_back(p);
        next.push_back(std::move(grown));
      }
    out = std::move(next);
  }
  return out;
}

// (v!)^blocks, or -1 once it exceeds the budget.
inline long long branch_total(int blocks, int v, long long budget) {
  long long perms = 1;
  for (int i = 2; i <= v; ++i) perms *= i;
  long long total = 1;
  for (int k = 0; k < blocks; ++k) {
    if (total > budget / perms) return -1;
    total *= perms;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Shared audit runners, templated over the carrier
// ---------------------------------------------------------------------------

template <class C>
typename C::Value fold_shares(C& cr, const std::vector<typename C::Value>& shares) {
  auto acc = shares.at(0);
  for (std::size_t j = 1; j < shares.size(); ++j) acc = cr.op(acc, shares[j]);
  return acc;
}

// One-time-pad transmission round trip: uniform pads forward, then each
// sender masks its message with its delivered pad and the reply path walks
// the mask back to the receiver.
template <class C>
MixForwardT<typename C::Value> run_pad_roundtrip(const MixConfig& cfg,
                                                 const std::vector<typename C::Value>& messages,
                                                 C& cr) {
  const int v = static_cast<int>(messages.size());
  std::vector<std::vector<typename C::Value>> pads(static_cast<std::size_t>(v));
  for (auto& row : pads) row.push_back(cr.sample());
  auto fwd = mix_forward_abelian(pads, cfg, cr, "audit");
  std::vector<std::pair<int, typename C::Value>> casts;
  for (int i = 1; i <= v; ++i)
    casts.emplace_back(i, cr.op(messages[static_cast<std::size_t>(i - 1)],
                                fold_shares(cr, fwd.delivered[static_cast<std::size_t>(i - 1)][0])));
  (void)mix_reply_abelian(casts, fwd.secrets, cfg, cr, fwd.transcript);
  return fwd;
}

// Full single-seat pipeline with independent uniform codes.  (Production
// codebooks additionally reject colliding codes; tiny audit carriers cannot
// satisfy that, and conditioning on distinctness is a property of the code
// values, which here are part of the enumerated randomness.)
template <class C>
MixForwardT<typename C::Value> run_cast_pipeline(const MixConfig& cfg, int v, int c,
                                                 const std::vector<int>& intents, C& cr,
                                                 std::vector<std::vector<typename C::Value>>* book = nullptr) {
  std::vector<std::vector<typename C::Value>> codes(static_cast<std::size_t>(v));
  for (auto& row : codes)
    for (int a = 0; a < c; ++a) row.push_back(cr.sample());
  if (book) *book = codes;
  auto fwd = mix_forward_abelian(codes, cfg, cr, "audit");
  std::vector<std::pair<int, typename C::Value>> casts;
  for (int i = 1; i <= v; ++i) {
    const int cand = intents[static_cast<std::size_t>(i - 1)];
    casts.emplace_back(
        i, fold_shares(cr, fwd.delivered[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(cand - 1)]));
  }
  (void)mix_reply_abelian(casts, fwd.secrets, cfg, cr, fwd.transcript);
  return fwd;
}

// The delivered plaintexts, which the receiving end learns by design.  The
// anonymity distinguisher gets them alongside the corrupted view.
inline void append_outputs(std::string& view, const MixForwardT<GroupElement>& fwd,
                           ConcreteCarrier& cr) {
  for (std::size_t i = 0; i < fwd.delivered.size(); ++i)
    for (std::size_t a = 0; a < fwd.delivered[i].size(); ++a) {
      view += "out|" + std::to_string(i + 1) + "|" + std::to_string(a + 1) + "|" +
              groups::encode(fold_shares(cr, fwd.delivered[i][a]));
      view.push_back('\n');
    }
}

inline void append_outputs(SymbolicView& view, const MixForwardT<AffineElement>& fwd,
                           AffineCarrier& cr) {
  for (std::size_t i = 0; i < fwd.delivered.size(); ++i)
    for (std::size_t a = 0; a < fwd.delivered[i].size(); ++a) {
      view.skeleton += "out|" + std::to_string(i + 1) + "|" + std::to_string(a + 1) + "|";
      append_symbolic_element(view, fold_shares(cr, fwd.delivered[i][a]));
      view.skeleton.push_back('\n');
    }
}

// The issuer's own knowledge: which code value was printed for which
// original slot and candidate.
inline void append_codebook(std::string& view, const std::vector<std::vector<GroupElement>>& book) {
  for (std::size_t o = 0; o < book.size(); ++o)
    for (std::size_t a = 0; a < book[o].size(); ++a) {
      view += "book|" + std::to_string(o + 1) + "|" + std::to_string(a + 1) + "|" +
              groups::encode(book[o][a]);
      view.push_back('\n');
    }
}

inline void append_codebook(SymbolicView& view, const std::vector<std::vector<AffineElement>>& book) {
  for (std::size_t o = 0; o < book.size(); ++o)
    for (std::size_t a = 0; a < book[o].size(); ++a) {
      view.skeleton += "book|" + std::to_string(o + 1) + "|" + std::to_string(a + 1) + "|";
      append_symbolic_element(view, book[o][a]);
      view.skeleton.push_back('\n');
    }
}

inline std::vector<GroupElement> all_abelian_elements(const GroupSpec& spec) {
  if (!spec.abelian()) throw std::invalid_argument("all_abelian_elements: abelian carriers only");
  const int g = spec.kind == GroupKind::Bitstring ? 2 : 10;
  std::vector<GroupElement> out;
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(spec.length), 0);
  while (true) {
    out.push_back(groups::make_element(spec, digits));
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (++digits[i] < g) break;
      digits[i] = 0;
    }
    if (i == digits.size()) break;
  }
  return out;
}

inline std::vector<GroupElement> all_permutations(int degree) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
  std::vector<GroupElement> out;
  do {
    out.push_back(groups::make_element(perm_spec(degree), v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Audit interface
// ---------------------------------------------------------------------------

enum class AuditBackend { Auto, Pointwise, Affine };
enum class AuditVerdict { Pass, Fail, Intractable };

inline const char* verdict_name(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Pass: return "pass";
    case AuditVerdict::Fail: return "fail";
    case AuditVerdict::Intractable: return "intractable";
  }
  return "?";
}

struct AuditOutcome {
  AuditVerdict verdict = AuditVerdict::Fail;
  bool exactly_zero = false;
  double distance = -1.0;  // >= 0 only when an exact value was computed
  long long states = 0;    // pointwise protocol evaluations
  long long branches = 0;  // affine branches analyzed
  std::string method;
  std::string note;
};

struct AuditRequest {
  MixConfig cfg;
  int v = 2;      // slots
  int width = 1;  // carrier values per slot
  CorruptionSet corruption;
  AuditBackend backend = AuditBackend::Auto;
  long long budget = kEnumerationBudget;
};

namespace detail {

// Every within-bound corruption set on a verified system must leave an
// honest block; hitting this means the set system was never verified.
inline void assert_existential_honesty(const AuditRequest& req) {
  if (req.corruption.corrupted_servers(req.cfg.system) <= req.cfg.system.t &&
      !has_honest_block(req.cfg.system, req.corruption))
    throw std::logic_error(
        "audit: corruption within the t bound left no honest block; set system unverified");
}

inline AuditOutcome intractable_outcome(long long states, const std::string& note) {
  AuditOutcome out;
  out.verdict = AuditVerdict::Intractable;
  out.states = states;
  out.method = "pointwise";
  out.note = note;
  return out;
}

inline AuditOutcome finish_pointwise(AuditOutcome out, bool zero, double value) {
  out.exactly_zero = zero;
  out.distance = zero ? 0.0 : value;
  out.verdict = zero ? AuditVerdict::Pass : AuditVerdict::Fail;
  out.method = "pointwise";
  return out;
}

inline AuditOutcome finish_affine(AuditOutcome out, bool zero, const std::string& fail_note) {
  out.exactly_zero = zero;
  out.distance = zero ? 0.0 : -1.0;
  out.verdict = zero ? AuditVerdict::Pass : AuditVerdict::Fail;
  out.method = "affine";
  if (!zero) out.note = fail_note;
  return out;
}

// Decode one world index into a payload matrix over the element universe.
inline std::vector<std::vector<GroupElement>> world_payload(
    const std::vector<GroupElement>& universe, long long world, int v, int width) {
  std::vector<std::vector<GroupElement>> payload(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i)
    for (int a = 0; a < width; ++a) {
      payload[static_cast<std::size_t>(i)].push_back(
          universe[static_cast<std::size_t>(world % static_cast<long long>(universe.size()))]);
      world /= static_cast<long long>(universe.size());
    }
  return payload;
}

inline long long world_count(std::size_t universe, int cells, long long cap) {
  long long n = 1;
  for (int i = 0; i < cells; ++i) {
    n *= static_cast<long long>(universe);
    if (n > cap) return cap + 1;
  }
  return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Privacy of transported payloads against the corrupted coalition's view
// ---------------------------------------------------------------------------

inline AuditOutcome audit_privacy(const AuditRequest& req) {
  validate_mix_config(req.cfg);
  detail::assert_existential_honesty(req);
  const auto& sys = req.cfg.system;

  const auto pointwise = [&](long long budget) -> AuditOutcome {
    AuditOutcome out;
    const auto universe = detail::all_abelian_elements(req.cfg.carrier);
    const int cells = req.v * req.width;
    const long long worlds = detail::world_count(universe.size(), cells, budget);
    auto view_of = [&](const std::vector<std::vector<GroupElement>>& payload,
                       RandomSource& r) -> std::string {
      ConcreteCarrier cr{req.cfg.carrier, &r};
      auto fwd = detail::mix_forward_abelian(payload, req.cfg, cr, "audit");
      return detail::concrete_view(fwd.transcript, req.corruption, sys);
    };
    const long long per_world = detail::probe_states(
        [&](RandomSource& r) { return view_of(detail::world_payload(universe, 0, req.v, req.width), r); },
        budget);
    if (worlds > budget || per_world > budget || worlds * per_world > budget)
      return detail::intractable_outcome(worlds * per_world, "enumeration budget exceeded");

    std::vector<detail::ViewDistribution> dists(static_cast<std::size_t>(worlds));
    for (long long w = 0; w < worlds; ++w) {
      auto payload = detail::world_payload(universe, w, req.v, req.width);
      auto st = detail::enumerate_views(
          [&](RandomSource& r) { return view_of(payload, r); }, budget, dists[static_cast<std::size_t>(w)]);
      out.states += st.states;
    }
    bool zero = true;
    double worst = 0.0;
    for (long long w = 1; w < worlds; ++w) {
      auto d = detail::tv_distance(dists[0], dists[static_cast<std::size_t>(w)]);
      zero = zero && d.exactly_zero;
      worst = std::max(worst, d.value);
    }
    return detail::finish_pointwise(std::move(out), zero, worst);
  };

  const auto affine = [&]() -> AuditOutcome {
    AuditOutcome out;
    AffineContext ctx;
    AffineCarrier cr{req.cfg.carrier, &ctx};
    bool zero = true;
    if (detail::branch_total(sys.b(), req.v, req.budget) < 0)
      return detail::intractable_outcome(0, "branch budget exceeded");
    for (const auto& branch : detail::all_branches(sys.b(), req.v)) {
      ctx.reset_branch(branch);
      std::vector<std::vector<AffineElement>> payload(static_cast<std::size_t>(req.v));
      for (auto& row : payload)
        for (int a = 0; a < req.width; ++a) row.push_back(cr.secret());
      auto fwd = detail::mix_forward_abelian(payload, req.cfg, cr, "audit");
      auto view = detail::symbolic_view(fwd.transcript, req.corruption, sys);
      zero = zero && detail::rows_hide_secrets(view.rows, req.cfg.carrier, ctx.next_s);
      ++out.branches;
    }
    return detail::finish_affine(std::move(out), zero,
                                 "a secret coordinate escapes the randomness span");
  };

  switch (req.backend) {
    case AuditBackend::Pointwise: return pointwise(req.budget);
    case AuditBackend::Affine: return affine();
    case AuditBackend::Auto: {
      auto attempt = pointwise(req.budget);
      if (attempt.verdict != AuditVerdict::Intractable) return attempt;
      return affine();
    }
  }
  throw std::logic_error("audit_privacy: unreachable");
}

// Privacy of the senders' messages over the full pad round trip: pads are
// protocol randomness, the messages are the protected secrets.
inline AuditOutcome audit_privacy_roundtrip(const AuditRequest& req) {
  validate_mix_config(req.cfg);
  detail::assert_existential_honesty(req);
  if (req.width != 1)
    throw std::invalid_argument("audit_privacy_roundtrip: one pad per slot");
  const auto& sys = req.cfg.system;

  const auto pointwise = [&](long long budget) -> AuditOutcome {
    AuditOutcome out;
    const auto universe = detail::all_abelian_elements(req.cfg.carrier);
    const long long worlds = detail::world_count(universe.size(), req.v, budget);
    auto view_of = [&](const std::vector<GroupElement>& messages, RandomSource& r) {
      ConcreteCarrier cr{req.cfg.carrier, &r};
      auto fwd = detail::run_pad_roundtrip(req.cfg, messages, cr);
      return detail::concrete_view(fwd.transcript, req.corruption, sys);
    };
    auto messages_of = [&](long long w) {
      std::vector<GroupElement> m;
      for (int i = 0; i < req.v; ++i) {
        m.push_back(universe[static_cast<std::size_t>(w % static_cast<long long>(universe.size()))]);
        w /= static_cast<long long>(universe.size());
      }
      return m;
    };
    const long long per_world =
        detail::probe_states([&](RandomSource& r) { return view_of(messages_of(0), r); }, budget);
    if (worlds > budget || per_world > budget || worlds * per_world > budget)
      return detail::intractable_outcome(worlds * per_world, "enumeration budget exceeded");

    std::vector<detail::ViewDistribution> dists(static_cast<std::size_t>(worlds));
    for (long long w = 0; w < worlds; ++w) {
      auto messages = messages_of(w);
      auto st = detail::enumerate_views([&](RandomSource& r) { return view_of(messages, r); },
                                        budget, dists[static_cast<std::size_t>(w)]);
      out.states += st.states;
    }
    bool zero = true;
    double worst = 0.0;
    for (long long w = 1; w < worlds; ++w) {
      auto d = detail::tv_distance(dists[0], dists[static_cast<std::size_t>(w)]);
      zero = zero && d.exactly_zero;
      worst = std::max(worst, d.value);
    }
    return detail::finish_pointwise(std::move(out), zero, worst);
  };

  const auto affine = [&]() -> AuditOutcome {
    AuditOutcome out;
    AffineContext ctx;
    AffineCarrier cr{req.cfg.carrier, &ctx};
    bool zero = true;
    if (detail::branch_total(sys.b(), req.v, req.budget) < 0)
      return detail::intractable_outcome(0, "branch budget exceeded");
    for (const auto& branch : detail::all_branches(sys.b(), req.v)) {
      ctx.reset_branch(branch);
      std::vector<AffineElement> messages;
      for (int i = 0; i < req.v; ++i) messages.push_back(cr.secret());
      auto fwd = detail::run_pad_roundtrip(req.cfg, messages, cr);
      auto view = detail::symbolic_view(fwd.transcript, req.corruption, sys);
      zero = zero && detail::rows_hide_secrets(view.rows, req.cfg.carrier, ctx.next_s);
      ++out.branches;
    }
    return detail::finish_affine(std::move(out), zero,
                                 "a message coordinate escapes the randomness span");
  };

  switch (req.backend) {
    case AuditBackend::Pointwise: return pointwise(req.budget);
    case AuditBackend::Affine: return affine();
    case AuditBackend::Auto: {
      auto attempt = pointwise(req.budget);
      if (attempt.verdict != AuditVerdict::Intractable) return attempt;
      return affine();
    }
  }
  throw std::logic_error("audit_privacy_roundtrip: unreachable");
}

// ---------------------------------------------------------------------------
// Anonymity: swapping which payload entered which slot must not change the
// joint distribution of (corrupted view, delivered outputs)
// ---------------------------------------------------------------------------

inline AuditOutcome audit_anonymity(const AuditRequest& req) {
  validate_mix_config(req.cfg);
  detail::assert_existential_honesty(req);
  if (req.v != 2) throw std::invalid_argument("audit_anonymity: two slots");
  const auto& sys = req.cfg.system;

  const auto pointwise = [&](long long budget) -> AuditOutcome {
    AuditOutcome out;
    const auto universe = detail::all_abelian_elements(req.cfg.carrier);
    const int cells = 2 * req.width;
    const long long worlds = detail::world_count(universe.size(), cells, budget);
    auto view_of = [&](const std::vector<std::vector<GroupElement>>& payload, RandomSource& r) {
      ConcreteCarrier cr{req.cfg.carrier, &r};
      auto fwd = detail::mix_forward_abelian(payload, req.cfg, cr, "audit");
      auto view = detail::concrete_view(fwd.transcript, req.corruption, sys);
      detail::append_outputs(view, fwd, cr);
      return view;
    };
    const long long per_world = detail::probe_states(
        [&](RandomSource& r) { return view_of(detail::world_payload(universe, 0, 2, req.width), r); },
        budget);
    if (worlds > budget || per_world > budget || worlds * per_world > budget)
      return detail::intractable_outcome(worlds * per_world, "enumeration budget exceeded");

    // world index is digits base |E|: slot 1's tuple first, then slot 2's.
    std::map<long long, detail::ViewDistribution> dists;
    auto dist_of = [&](long long w) -> detail::ViewDistribution& {
      auto [it, fresh] = dists.try_emplace(w);
      if (fresh) {
        auto payload = detail::world_payload(universe, w, 2, req.width);
        auto st = detail::enumerate_views([&](RandomSource& r) { return view_of(payload, r); },
                                          budget, it->second);
        out.states += st.states;
      }
      return it->second;
    };
    long long tuple_space = 1;
    for (int a = 0; a < req.width; ++a) tuple_space *= static_cast<long long>(universe.size());
    bool zero = true;
    double worst = 0.0;
    for (long long w = 0; w < worlds; ++w) {
      const long long first = w % tuple_space;
      const long long second = w / tuple_space;
      if (first >= second) continue;  // swap of equal tuples is trivial
      const long long swapped = second + first * tuple_space;
      auto d = detail::tv_distance(dist_of(w), dist_of(swapped));
      zero = zero && d.exactly_zero;
      worst = std::max(worst, d.value);
    }
    return detail::finish_pointwise(std::move(out), zero, worst);
  };

  const auto affine = [&]() -> AuditOutcome {
    AuditOutcome out;
    AffineContext ctx;
    AffineCarrier cr{req.cfg.carrier, &ctx};
    std::map<std::string, long long> straight, swapped;
    auto label_of = [&](const std::vector<std::vector<int>>& branch, bool swap) {
      ctx.reset_branch(branch);
      // Allocate the secret coordinates in a fixed order first so that both
      // worlds talk about the same concrete payload values.
      std::vector<std::vector<AffineElement>> tuples(2);
      for (auto& row : tuples)
        for (int a = 0; a < req.width; ++a) row.push_back(cr.secret());
      if (swap) std::swap(tuples[0], tuples[1]);
      auto fwd = detail::mix_forward_abelian(tuples, req.cfg, cr, "audit");
      auto view = detail::symbolic_view(fwd.transcript, req.corruption, sys);
      detail::append_outputs(view, fwd, cr);
      return detail::branch_label(view, req.cfg.carrier, ctx.next_s);
    };
    if (detail::branch_total(sys.b(), 2, req.budget) < 0)
      return detail::intractable_outcome(0, "branch budget exceeded");
    for (const auto& branch : detail::all_branches(sys.b(), 2)) {
      ++straight[label_of(branch, false)];
      ++swapped[label_of(branch, true)];
      ++out.branches;
    }
    return detail::finish_affine(std::move(out), straight == swapped,
                                 "branch view cosets differ between the two assignments");
  };

  switch (req.backend) {
    case AuditBackend::Pointwise: return pointwise(req.budget);
    case AuditBackend::Affine: return affine();
    case AuditBackend::Auto: {
      auto attempt = pointwise(req.budget);
      if (attempt.verdict != AuditVerdict::Intractable) return attempt;
      return affine();
    }
  }
  throw std::logic_error("audit_anonymity: unreachable");
}

// Receiver-colluding anonymity over the cast/reply pipeline: swapping two
// voters' candidate choices must not change the distribution of the
// coalition's view, even when the coalition includes the code issuer (whose
// view holds the dealt codes and the reply-path arrivals).
inline AuditOutcome audit_anonymity_pipeline(const AuditRequest& req) {
  validate_mix_config(req.cfg);
  detail::assert_existential_honesty(req);
  if (req.v != 2) throw std::invalid_argument("audit_anonymity_pipeline: two voters");
  if (req.width < 2) throw std::invalid_argument("audit_anonymity_pipeline: need >= 2 candidates");
  const auto& sys = req.cfg.system;
  const bool issuer = req.corruption.contains(kPartyCge);
  const std::vector<int> world_a{1, 2};
  const std::vector<int> world_b{2, 1};

  const auto pointwise = [&](long long budget) -> AuditOutcome {
    AuditOutcome out;
    auto view_of = [&](const std::vector<int>& intents, RandomSource& r) {
      ConcreteCarrier cr{req.cfg.carrier, &r};
      std::vector<std::vector<GroupElement>> book;
      auto fwd = detail::run_cast_pipeline(req.cfg, 2, req.width, intents, cr, &book);
      auto view = detail::concrete_view(fwd.transcript, req.corruption, sys);
      if (issuer) detail::append_codebook(view, book);
      return view;
    };
    const long long per_world =
        detail::probe_states([&](RandomSource& r) { return view_of(world_a, r); }, budget);
    if (per_world > budget || 2 * per_world > budget)
      return detail::intractable_outcome(2 * per_world, "enumeration budget exceeded");
    detail::ViewDistribution da, db;
    out.states += detail::enumerate_views([&](RandomSource& r) { return view_of(world_a, r); },
                                          budget, da)
                      .states;
    out.states += detail::enumerate_views([&](RandomSource& r) { return view_of(world_b, r); },
                                          budget, db)
                      .states;
    auto d = detail::tv_distance(da, db);
    return detail::finish_pointwise(std::move(out), d.exactly_zero, d.value);
  };

  const auto affine = [&]() -> AuditOutcome {
    AuditOutcome out;
    AffineContext ctx;
    AffineCarrier cr{req.cfg.carrier, &ctx};
    std::map<std::string, long long> da, db;
    auto label_of = [&](const std::vector<std::vector<int>>& branch, const std::vector<int>& intents) {
      ctx.reset_branch(branch);
      std::vector<std::vector<AffineElement>> book;
      auto fwd = detail::run_cast_pipeline(req.cfg, 2, req.width, intents, cr, &book);
      auto view = detail::symbolic_view(fwd.transcript, req.corruption, sys);
      if (issuer) detail::append_codebook(view, book);
      return detail::branch_label(view, req.cfg.carrier, ctx.next_s);
    };
    if (detail::branch_total(sys.b(), 2, req.budget) < 0)
      return detail::intractable_outcome(0, "branch budget exceeded");
    for (const auto& branch : detail::all_branches(sys.b(), 2)) {
      ++da[label_of(branch, world_a)];
      ++db[label_of(branch, world_b)];
      ++out.branches;
    }
    return detail::finish_affine(std::move(out), da == db,
                                 "branch view cosets differ between the two intent orders");
  };

  switch (req.backend) {
    case AuditBackend::Pointwise: return pointwise(req.budget);
    case AuditBackend::Affine: return affine();
    case AuditBackend::Auto: {
      auto attempt = pointwise(req.budget);
      if (attempt.verdict != AuditVerdict::Intractable) return attempt;
      return affine();
    }
  }
  throw std::logic_error("audit_anonymity_pipeline: unreachable");
}

// ---------------------------------------------------------------------------
// Group-product subprotocol privacy: no single participant's view may depend
// on the permutation input, whatever the modifier is
// ---------------------------------------------------------------------------

inline AuditOutcome audit_product_privacy(int degree, int t, ProductEngine engine,
                                          const std::string& server,
                                          long long budget = kEnumerationBudget) {
  AuditOutcome out;
  const auto spec = perm_spec(degree);
  detail::ProductParties parties;
  for (int j = 1; j <= t + 1; ++j) parties.holders.push_back(j);
  for (int j = 1; j <= t + 1; ++j) parties.receivers.push_back(t + 1 + j);
  parties.level = 1;
  CorruptionSet cs;
  cs.parties.push_back(server);
  SetSystem routing;  // only used to expand block broadcasts; none occur here
  routing.m = 2 * (t + 1);
  routing.t = t;
  routing.blocks = {parties.holders, parties.receivers};

  auto view_of = [&](const GroupElement& omega, const GroupElement& pi, RandomSource& r) {
    Transcript tr;
    tr.run_id = "audit";
    ConcreteCarrier cr{spec, &r};
    ShareBundle pi_b{spec, scheme_for(spec), detail::deal_shares(cr, cr.constant(pi), t)};
    for (int j = 0; j <= t; ++j)
      tr.emit(kPartyCge, party_srv(parties.holders[static_cast<std::size_t>(j)]), EventKind::Share,
              1, 0, Payload<GroupElement>::element(pi_b.shares[static_cast<std::size_t>(j)]));
    ShareBundle om_b{spec, scheme_for(spec), detail::deal_shares(cr, cr.constant(omega), t)};
    for (int j = 0; j <= t; ++j)
      tr.emit(party_srv(parties.receivers[0]), party_srv(parties.receivers[static_cast<std::size_t>(j)]),
              EventKind::Modifier, 1, 1, Payload<GroupElement>::element(om_b.shares[static_cast<std::size_t>(j)]));
    (void)group_product(pi_b, om_b, engine, r, &tr, &parties, 1);
    return detail::concrete_view(tr, cs, routing);
  };

  const auto perms = detail::all_permutations(degree);
  const long long per_world = detail::probe_states(
      [&](RandomSource& r) { return view_of(perms[0], perms[0], r); }, budget);
  const long long worlds = static_cast<long long>(perms.size()) * static_cast<long long>(perms.size());
  if (per_world > budget || worlds * per_world > budget)
    return detail::intractable_outcome(worlds * per_world, "enumeration budget exceeded");

  bool zero = true;
  double worst = 0.0;
  // The modifier's holder legitimately knows the modifier, so views are
  // compared across permutation inputs with the modifier held fixed.
  for (const auto& omega : perms) {
    std::vector<detail::ViewDistribution> dists;
    for (const auto& pi : perms) {
      detail::ViewDistribution d;
      out.states +=
          detail::enumerate_views([&](RandomSource& r) { return view_of(omega, pi, r); }, budget, d)
              .states;
      dists.push_back(std::move(d));
    }
    for (std::size_t i = 1; i < dists.size(); ++i) {
      auto d = detail::tv_distance(dists[0], dists[i]);
      zero = zero && d.exactly_zero;
      worst = std::max(worst, d.value);
    }
  }
  auto result = detail::finish_pointwise(std::move(out), zero, worst);
  if (engine == ProductEngine::Ideal)
    result.note = "modulo ideal functionality: internal composition values are never emitted";
  return result;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json audit_report(const std::string& scenario, const AuditRequest& req,
                                           const AuditOutcome& out, double wall_seconds = 0.0) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["corruption_set"] = req.corruption.parties;
  if (out.distance >= 0.0)
    j["distance"] = out.distance;
  else
    j["distance"] = nullptr;
  j["verdict"] = verdict_name(out.verdict);
  j["states_enumerated"] = out.states;
  j["branches"] = out.branches;
  j["method"] = out.method;
  j["note"] = out.note;
  j["wall_time"] = wall_seconds;
  return j;
}

}  // namespace mixvote
