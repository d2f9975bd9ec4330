#pragma once

#include <cstdint>

namespace ehma {

enum class Draw : std::uint64_t { kTransition = 0, kTransmit = 1, kHarvest = 2 };

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double to_unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
}

/// Counter-based generator keyed by (seed, replication, slot, node, purpose).
/// Every draw is a pure function of its coordinates, so replications can run
/// on any thread layout without changing a single sample.
class SlotRng {
 public:
  SlotRng(std::uint64_t seed, std::uint64_t replication)
      : rep_key_(mix64(mix64(seed) ^ replication)) {}

  void begin_slot(std::uint64_t slot) { slot_key_ = mix64(rep_key_ ^ slot); }

  double uniform(std::uint32_t node, Draw purpose) const {
    const std::uint64_t key =
        static_cast<std::uint64_t>(node) * 4u + static_cast<std::uint64_t>(purpose);
    return to_unit_interval(mix64(slot_key_ ^ key));
  }

 private:
  std::uint64_t rep_key_;
  std::uint64_t slot_key_ = 0;
};

}  // namespace ehma
