#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "qcrypt/baker.hpp"
#include "qcrypt/plan.hpp"

namespace qcrypt {

struct StageEntry {
  BakerPartition partition;
  std::uint64_t iterations = 1;
  friend bool operator==(const StageEntry&, const StageEntry&) = default;
};

struct StageKey {
  unsigned radix = 2;
  std::vector<int> left, right;
  std::vector<StageEntry> entries;  // indexed by the control-digit value
  friend bool operator==(const StageKey&, const StageKey&) = default;
};

/// Sine gains of one diffusion system instance per color (one entry unless
/// the scheme keys each color separately); f is the yan7d coefficient.
struct BlockKey {
  std::vector<std::vector<double>> gains;
  double f = 7.2;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
};

struct KeyFile {
  static constexpr int kVersion = 1;

  int version = kVersion;
  std::string preset;
  bool full = false;
  int n = 0;                // preset size override, 0 = default
  std::uint64_t images = 0; // declared image count the layout was sized for

  // Filled by encryption: plaintext-dependent seeds and the real image count.
  std::uint64_t plaintext_count = 0;
  std::vector<std::vector<double>> seeds;

  std::vector<StageKey> stages;
  std::vector<BlockKey> blocks;

  PresetOptions options() const { return {full, images, n}; }
  friend bool operator==(const KeyFile&, const KeyFile&) = default;
};

void write_key(std::ostream& out, const KeyFile& key);
KeyFile read_key(std::istream& in);
void save_key(const std::filesystem::path& path, const KeyFile& key);
KeyFile load_key(const std::filesystem::path& path);

/// Throws qcrypt::DataError unless the key matches the plan: stage count,
/// split shapes, entry counts, admissible partitions, system count.
void check_key(const SchemePlan& plan, const KeyFile& key);

struct KeygenOptions {
  std::uint64_t max_iterations = 1'000'000;
};

/// Uniformly sampled admissible partitions, iterations in [1, max], gains in
/// [0.5, 7.5), f in (6.3, 15.3); mixed stages get a random split.
KeyFile generate_key(const SchemePlan& plan, const PresetOptions& opts, std::mt19937_64& rng,
                     const KeygenOptions& kopts = {});

}  // namespace qcrypt
