#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mixvote/group.hpp"

namespace mixvote {

// Message event kinds.  "product" marks messages internal to the shared
// group-product subprotocol; the other kinds follow the wire vocabulary of
// the transcript format.
enum class EventKind : std::uint8_t {
  Share,
  Modifier,
  PermAnnounce,
  Reshare,
  Delivery,
  Reply,
  Product,
};

inline const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Share: return "share";
    case EventKind::Modifier: return "modifier";
    case EventKind::PermAnnounce: return "perm_announce";
    case EventKind::Reshare: return "reshare";
    case EventKind::Delivery: return "delivery";
    case EventKind::Reply: return "reply";
    case EventKind::Product: return "product";
  }
  return "?";
}

// Party id helpers.  Servers are corrupted by id, devices by (voter, device)
// pair; "cge" is the receiver / code generation entity; "blk:k" addresses a
// broadcast to every member of block k (1-based).
inline std::string party_srv(int id) { return "srv:" + std::to_string(id); }
inline std::string party_blk(int k) { return "blk:" + std::to_string(k); }
inline std::string party_voter(int i) { return "voter:" + std::to_string(i); }
inline std::string party_dev(int voter, int device) {
  return "dev:" + std::to_string(voter) + ":" + std::to_string(device);
}
inline constexpr const char* kPartyCge = "cge";
inline constexpr const char* kPartyIdeal = "ideal";

// Payloads are either a carrier value, a slot permutation (always concrete,
// even in symbolic runs), or a small integer (a cast image).
template <class V>
struct Payload {
  enum class Type : std::uint8_t { None, Element, SlotPerm, Image } type = Type::None;
  V elem{};
  std::vector<int> perm;  // 0-based slot images
  int image = 0;

  static Payload none() { return {}; }
  static Payload element(V v) {
    Payload p;
    p.type = Type::Element;
    p.elem = std::move(v);
    return p;
  }
  static Payload slot_perm(std::vector<int> sp) {
    Payload p;
    p.type = Type::SlotPerm;
    p.perm = std::move(sp);
    return p;
  }
  static Payload image_of(int img) {
    Payload p;
    p.type = Type::Image;
    p.image = img;
    return p;
  }
};

template <class V>
struct RecordT {
  int step = 0;
  std::string from;
  std::string to;
  EventKind kind = EventKind::Share;
  int slot = 0;   // 1-based; 0 when not slot-addressed
  int level = 0;  // block level; 0 for dealer-side events
  Payload<V> payload;
};

template <class V>
struct TranscriptT {
  std::string run_id;
  std::vector<RecordT<V>> records;

  RecordT<V>& emit(std::string from, std::string to, EventKind kind, int slot, int level,
                   Payload<V> payload) {
    RecordT<V> r;
    r.step = static_cast<int>(records.size()) + 1;
    r.from = std::move(from);
    r.to = std::move(to);
    r.kind = kind;
    r.slot = slot;
    r.level = level;
    r.payload = std::move(payload);
    records.push_back(std::move(r));
    return records.back();
  }
};

using Transcript = TranscriptT<GroupElement>;

inline std::string payload_text(const Payload<GroupElement>& p) {
  switch (p.type) {
    case Payload<GroupElement>::Type::None: return "";
    case Payload<GroupElement>::Type::Element: return groups::encode(p.elem);
    case Payload<GroupElement>::Type::SlotPerm: {
      std::string s;
      for (std::size_t i = 0; i < p.perm.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(p.perm[i] + 1);
      }
      return s;
    }
    case Payload<GroupElement>::Type::Image: return std::to_string(p.image);
  }
  return "";
}

// Line-delimited JSON, one record per line, stable field order.
inline std::string transcript_to_jsonl(const Transcript& tr) {
  std::string out;
  for (const auto& r : tr.records) {
    nlohmann::ordered_json j;
    j["run_id"] = tr.run_id;
    j["step"] = r.step;
    j["from"] = r.from;
    j["to"] = r.to;
    j["kind"] = kind_name(r.kind);
    j["slot"] = r.slot;
    j["level"] = r.level;
    j["payload"] = payload_text(r.payload);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace mixvote
