#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcrypt/keyfile.hpp"
#include "qcrypt/kernels.hpp"
#include "qcrypt/plan.hpp"
#include "qcrypt/raster.hpp"
#include "qcrypt/repr.hpp"

namespace qcrypt {

enum class Backend { serial, omp };

/// (v + k) mod 4 and its inverse. Throws std::invalid_argument for values >= 4.
std::uint8_t a_gate(std::uint8_t k, std::uint8_t v);
std::uint8_t a_gate_inv(std::uint8_t k, std::uint8_t v);

/// Plaintext-dependent seeds, one per chaotic system of a block.
std::vector<std::vector<double>> plaintext_seeds(const SchemePlan& plan, const MultiImageState& state);

/// Chaotic parameters of system `color` in block `block`.
chaos::ChaoticParams system_params(const SchemePlan& plan, const KeyFile& key, std::uint64_t block, int color);

/// Sequences of one system instance, generated from the stored seed.
chaos::KeyStream key_stream(const SchemePlan& plan, const KeyFile& key, std::uint64_t block, int color);

kernels::ScrambleSpec scramble_spec(const SchemePlan& plan, const KeyFile& key, std::size_t stage);
/// Key table over every key-digit value. Needs the plaintext seeds in the key.
kernels::DiffusionSpec diffusion_spec(const SchemePlan& plan, const KeyFile& key, Backend backend = Backend::omp);

void scramble(MultiImageState& state, const kernels::ScrambleSpec& spec, bool inverse, Backend backend = Backend::omp);
void diffuse(MultiImageState& state, const kernels::DiffusionSpec& spec, Backend backend = Backend::omp);
void undiffuse(MultiImageState& state, const kernels::DiffusionSpec& spec, Backend backend = Backend::omp);

/// pack, seed from the plaintext (stored in key.seeds with the image count),
/// every stage in order, diffuse. The returned state keeps blank images.
MultiImageState encrypt(const SchemePlan& plan, KeyFile& key, std::span<const Raster> images,
                        Backend backend = Backend::omp);
/// Exact inverse of encrypt; blank images are dropped. A wrong key is not
/// detected, it only yields garbage.
std::vector<Raster> decrypt(const SchemePlan& plan, const KeyFile& key, MultiImageState state,
                            Backend backend = Backend::omp);

/// The plan a key was generated for.
SchemePlan plan_for(const KeyFile& key);

}  // namespace qcrypt
