#include "qcrypt/cipher.hpp"

#include <stdexcept>

#include "qcrypt/error.hpp"

namespace qcrypt {

std::uint8_t a_gate(std::uint8_t k, std::uint8_t v) {
  if (k > 3 || v > 3) throw std::invalid_argument("a_gate: quart out of range");
  return static_cast<std::uint8_t>((v + k) & 3u);
}

std::uint8_t a_gate_inv(std::uint8_t k, std::uint8_t v) {
  if (k > 3 || v > 3) throw std::invalid_argument("a_gate_inv: quart out of range");
  return static_cast<std::uint8_t>((v - k) & 3u);
}

SchemePlan plan_for(const KeyFile& key) {
  try {
    return preset(key.preset, key.options());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("key: ") + e.what());
  }
}

std::vector<std::vector<double>> plaintext_seeds(const SchemePlan& plan, const MultiImageState& state) {
  if (plan.diffusion.formula == KeyFormula::ququart) return {chaos::seed_ququart(state)};
  if (plan.diffusion.per_color) {
    std::vector<std::vector<double>> out;
    for (int c = 0; c < plan.systems_per_block(); ++c) out.push_back(chaos::seed_per_color(state, c));
    return out;
  }
  return {chaos::seed_quoctit(state)};
}

chaos::ChaoticParams system_params(const SchemePlan& plan, const KeyFile& key, std::uint64_t block, int color) {
  const auto& bk = key.blocks.at(block);
  const auto& gains = bk.gains.at(static_cast<std::size_t>(color));
  return plan.diffusion.system == chaos::System::yan7d ? chaos::ChaoticParams::yan7d(gains, bk.f)
                                                       : chaos::ChaoticParams::wang4d(gains);
}

chaos::KeyStream key_stream(const SchemePlan& plan, const KeyFile& key, std::uint64_t block, int color) {
  if (key.seeds.empty()) throw DataError("key: no plaintext seeds recorded (encrypt first)");
  const auto& seed = key.seeds.at(plan.diffusion.per_color ? static_cast<std::size_t>(color) : 0);
  auto counts = plan.sequence_counts();
  const bool ququart = plan.diffusion.formula == KeyFormula::ququart;
  // The ququart stream skips the first coordinate.
  if (ququart) counts.insert(counts.begin(), 0);
  auto seq = chaos::generate_sequences(system_params(plan, key, block, color), seed, counts);
  if (ququart) seq.erase(seq.begin());
  return chaos::KeyStream::from(std::move(seq));
}

kernels::ScrambleSpec scramble_spec(const SchemePlan& plan, const KeyFile& key, std::size_t stage) {
  const auto& sk = key.stages.at(stage);
  kernels::ScrambleSpec spec{sk.left, sk.right, plan.stages.at(stage).controls, {}, {}};
  for (const auto& e : sk.entries) {
    spec.partitions.push_back(BakerPartition{plan.layout.radix(), static_cast<int>(sk.left.size()), e.partition.parts});
    spec.iterations.push_back(e.iterations);
  }
  return spec;
}

namespace {

std::uint32_t key_word(KeyFormula f, const chaos::KeyStream& ks, std::uint64_t i, std::uint64_t j, std::uint64_t l) {
  using chaos::Secret;
  switch (f) {
    case KeyFormula::ququart: {
      const auto b = chaos::key_bytes_ququart(ks, i, j);
      return b[0] | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16);
    }
    case KeyFormula::triple_rgb24: {
      const auto v = static_cast<std::uint32_t>(chaos::secret_value(Secret::triple_rgb24, ks, i, i, i));
      return ((v >> 16) & 0xFFu) | (((v >> 8) & 0xFFu) << 8) | ((v & 0xFFu) << 16);
    }
    case KeyFormula::triple_bit: return static_cast<std::uint32_t>(chaos::secret_value(Secret::triple_bit, ks, i, j, l));
    case KeyFormula::triple_byte: return static_cast<std::uint32_t>(chaos::secret_value(Secret::triple_byte, ks, i, i, i));
    case KeyFormula::pair_byte: return static_cast<std::uint32_t>(chaos::secret_value(Secret::pair_byte, ks, i, j, 0));
    case KeyFormula::pair_bit: return static_cast<std::uint32_t>(chaos::secret_value(Secret::pair_bit, ks, i, j, 0));
  }
  throw std::invalid_argument("unknown key formula");
}

}  // namespace

kernels::DiffusionSpec diffusion_spec(const SchemePlan& plan, const KeyFile& key, Backend backend) {
  const DiffusionPlan& dp = plan.diffusion;
  const int d = plan.layout.d;
  const auto span_of = [d](const std::vector<int>& g) { return std::uint64_t{1} << (d * static_cast<int>(g.size())); };
  const std::uint64_t Li = span_of(dp.i_digits), Lj = span_of(dp.j_digits), Ll = span_of(dp.l_digits);
  const std::uint64_t local = Li * Lj * Ll;
  const std::uint64_t blocks = span_of(dp.block_digits);

  kernels::DiffusionSpec spec{dp.key_digits(), dp.plane_digits, {}};
  spec.words.assign(local * blocks, 0);
  for (std::uint64_t b = 0; b < blocks; ++b)
    for (int c = 0; c < plan.systems_per_block(); ++c) {
      const chaos::KeyStream ks = key_stream(plan, key, b, c);
      const unsigned shift = dp.per_color ? 8u * static_cast<unsigned>(c) : 0u;
      std::uint32_t* out = spec.words.data() + b * local;
      const auto n = static_cast<std::int64_t>(local);
#pragma omp parallel for schedule(static) if (backend == Backend::omp)
      for (std::int64_t q = 0; q < n; ++q) {
        const auto u = static_cast<std::uint64_t>(q);
        out[u] |= key_word(dp.formula, ks, u % Li, (u / Li) % Lj, u / (Li * Lj)) << shift;
      }
    }
  return spec;
}

void scramble(MultiImageState& state, const kernels::ScrambleSpec& spec, bool inverse, Backend backend) {
  std::vector<std::uint8_t> out(state.cells.size());
  if (backend == Backend::serial) kernels::scramble_serial(state.layout, state.cells, out, spec, inverse);
  else kernels::scramble_omp(state.layout, state.cells, out, spec, inverse);
  state.cells = std::move(out);
}

void diffuse(MultiImageState& state, const kernels::DiffusionSpec& spec, Backend backend) {
  if (backend == Backend::serial) kernels::diffuse_serial(state.layout, state.cells, spec, false);
  else kernels::diffuse_omp(state.layout, state.cells, spec, false);
}

void undiffuse(MultiImageState& state, const kernels::DiffusionSpec& spec, Backend backend) {
  if (backend == Backend::serial) kernels::diffuse_serial(state.layout, state.cells, spec, true);
  else kernels::diffuse_omp(state.layout, state.cells, spec, true);
}

MultiImageState encrypt(const SchemePlan& plan, KeyFile& key, std::span<const Raster> images, Backend backend) {
  check_key(plan, key);
  if (images.empty()) throw DataError("encrypt: no images");
  if (images.size() > plan.layout.capacity())
    throw DataError("encrypt: " + std::to_string(images.size()) + " images exceed the key's capacity of " +
                    std::to_string(plan.layout.capacity()));
  MultiImageState st = pack(images, plan.layout);
  key.seeds = plaintext_seeds(plan, st);
  key.plaintext_count = images.size();
  for (std::size_t s = 0; s < plan.stages.size(); ++s) scramble(st, scramble_spec(plan, key, s), false, backend);
  diffuse(st, diffusion_spec(plan, key, backend), backend);
  st.blank.assign(st.blank.size(), false);
  st.image_count = plan.layout.capacity();
  return st;
}

std::vector<Raster> decrypt(const SchemePlan& plan, const KeyFile& key, MultiImageState state, Backend backend) {
  check_key(plan, key);
  if (!(state.layout == plan.layout)) throw DataError("decrypt: ciphertext layout does not match the key");
  if (state.cells.size() != plan.layout.cell_count()) throw DataError("decrypt: ciphertext has the wrong size");
  if (key.plaintext_count == 0 || key.plaintext_count > plan.layout.capacity())
    throw DataError("decrypt: key records no valid plaintext image count");
  undiffuse(state, diffusion_spec(plan, key, backend), backend);
  for (std::size_t s = plan.stages.size(); s-- > 0;) scramble(state, scramble_spec(plan, key, s), true, backend);
  state.blank.assign(plan.layout.capacity(), true);
  for (std::uint64_t g = 0; g < key.plaintext_count; ++g) state.blank[g] = false;
  state.image_count = key.plaintext_count;
  return unpack(state, false);
}

}  // namespace qcrypt
