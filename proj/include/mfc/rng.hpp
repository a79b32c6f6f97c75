#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace mfc {

/// Deterministic RNG stream. Bounded draws are hand-rolled (modulo rejection)
/// instead of std::uniform_int_distribution so that sequences are identical
/// across standard libraries and platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Unbiased draw in [0, n).
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  void deserialize(const std::string& text) {
    std::istringstream is(text);
    is >> engine_;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace mfc
