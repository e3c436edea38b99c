#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace mixvote {

// All protocol randomness flows through this interface so that a run is a
// deterministic function of an explicit draw sequence.  The audit engine
// swaps in scripted sources to enumerate every possible draw.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, n).  n must be >= 1.
  virtual std::uint64_t below(std::uint64_t n) = 0;
};

// Seeded deterministic source.  Uses rejection sampling on top of the
// engine output so the draw sequence depends only on the seed.
class SeededRng final : public RandomSource {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) override {
    if (n == 0) throw std::invalid_argument("SeededRng::below: n must be >= 1");
    if (n == 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

// Records the range of every draw and always returns 0.  Used to discover
// the draw layout of a protocol before enumerating it.
class RangeProbe final : public RandomSource {
 public:
  std::uint64_t below(std::uint64_t n) override {
    if (n == 0) throw std::invalid_argument("RangeProbe::below: n must be >= 1");
    ranges_.push_back(n);
    return 0;
  }

  const std::vector<std::uint64_t>& ranges() const { return ranges_; }

 private:
  std::vector<std::uint64_t> ranges_;
};

// Replays a fixed draw sequence.  Ranges are checked against the script so
// a drifting protocol shape is caught immediately.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<std::uint64_t> values,
                          std::vector<std::uint64_t> ranges)
      : values_(std::move(values)), ranges_(std::move(ranges)) {}

  std::uint64_t below(std::uint64_t n) override {
    if (pos_ >= values_.size())
      throw std::logic_error("ScriptedSource: draw sequence exhausted");
    if (ranges_[pos_] != n)
      throw std::logic_error("ScriptedSource: draw range mismatch");
    return values_[pos_++];
  }

  bool exhausted() const { return pos_ == values_.size(); }

 private:
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> ranges_;
  std::size_t pos_ = 0;
};

}  // namespace mixvote
