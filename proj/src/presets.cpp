#include <algorithm>
#include <map>
#include <stdexcept>

#include "qcrypt/plan.hpp"
#include "qcrypt/raster.hpp"

namespace qcrypt {

std::vector<int> DiffusionPlan::key_digits() const {
  std::vector<int> out;
  for (const auto* g : {&i_digits, &j_digits, &l_digits, &block_digits}) out.insert(out.end(), g->begin(), g->end());
  return out;
}

int SchemePlan::systems_per_block() const { return diffusion.per_color ? layout.value_digits() : 1; }

std::uint64_t SchemePlan::system_count() const {
  return (std::uint64_t{1} << (layout.d * static_cast<int>(diffusion.block_digits.size()))) *
         static_cast<std::uint64_t>(systems_per_block());
}

std::uint64_t SchemePlan::stage_entries(std::size_t stage) const {
  return std::uint64_t{1} << (layout.d * static_cast<int>(stages.at(stage).controls.size()));
}

std::vector<std::size_t> SchemePlan::sequence_counts() const {
  const auto len = [&](const std::vector<int>& g) { return std::size_t{1} << (layout.d * static_cast<int>(g.size())); };
  switch (diffusion.formula) {
    case KeyFormula::ququart: return std::vector<std::size_t>(6, len(diffusion.i_digits));
    case KeyFormula::triple_bit: return {len(diffusion.i_digits), len(diffusion.j_digits), len(diffusion.l_digits)};
    case KeyFormula::triple_rgb24:
    case KeyFormula::triple_byte: return std::vector<std::size_t>(3, len(diffusion.i_digits));
    case KeyFormula::pair_byte:
    case KeyFormula::pair_bit: return {len(diffusion.i_digits), len(diffusion.j_digits)};
  }
  return {};
}

std::uint64_t SchemePlan::diffusion_key_size() const {
  const int digits = static_cast<int>(diffusion.key_digits().size() + diffusion.plane_digits.size());
  return std::uint64_t{1} << (layout.d * digits);
}

namespace {

Word plain(std::string name, std::vector<FieldBits> fields, int d) {
  int bits = 0;
  for (const auto& f : fields) bits += f.bits;
  if (bits % d != 0) throw std::logic_error("preset: plain word does not fill whole digits");
  return Word{std::move(name), false, std::move(fields), bits / d};
}

Word curve(std::string name, std::vector<Field> fields, int n) {
  std::vector<FieldBits> fb;
  for (const auto f : fields) fb.push_back({f, n});
  return Word{std::move(name), true, std::move(fb), n};
}

int block_digits_for(std::uint64_t images, std::uint64_t ipb, int d) {
  const std::uint64_t T = std::max<std::uint64_t>(1, (images + ipb - 1) / ipb);
  int B = 0;
  while ((std::uint64_t{1} << (d * B)) < T) ++B;
  return B;
}

std::vector<int> range(const std::vector<int>& v, std::size_t from, std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + count)};
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<int> top(const std::vector<int>& v, std::size_t count) { return range(v, v.size() - count, count); }

StagePlan mixed_stage(const std::vector<int>& pool) {
  if (pool.size() % 2 != 0) throw std::logic_error("preset: mixed pool must have even size");
  const std::size_t h = pool.size() / 2;
  return StagePlan{"mixed", range(pool, 0, h), range(pool, h, h), {}, true};
}

std::vector<std::string> palette_names(int size) {
  std::vector<std::string> out;
  for (const auto& c : palette(size)) out.emplace_back(c.name);
  return out;
}

void set_rgb(AxisLayout& l, int bpp) {
  l.channels = 3;
  l.palette = false;
  l.bits_per_plane = bpp;
  l.channel_names = {"R", "G", "B"};
}

void set_palette(AxisLayout& l, int colors) {
  l.channels = colors;
  l.palette = true;
  l.bits_per_plane = 1;
  l.channel_names = palette_names(colors);
}

std::uint64_t default_images(const AxisLayout& l, const PresetOptions& o) {
  return o.images > 0 ? o.images : l.images_per_block();
}

// Ququart schemes: z = pixel curve, m = image, q = quart plane, then blocks.
SchemePlan ququart(const PresetOptions& o, bool gray, bool neqr) {
  const int n = o.n > 0 ? o.n : (o.full ? 8 : 2);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 2;
  l.words = {curve("z", {Field::row, Field::col}, n), plain("m", {{Field::image, 2 * n}}, 2)};
  if (!neqr) l.words.push_back(plain("q", {{Field::plane, 2}}, 2));
  const int B = block_digits_for(default_images(l, o), l.images_per_block(), 2);
  if (B > 0) l.words.push_back(plain("block", {{Field::block, 2 * B}}, 2));
  if (gray) {
    l.channels = 1;
    l.bits_per_plane = 2;
    l.channel_names = {"P"};
  } else {
    set_rgb(l, 2);
  }
  l.value_planes = neqr ? 4 : 0;

  const auto m = l.word_digits("m"), z = l.word_digits("z");
  const auto q = neqr ? std::vector<int>{} : l.word_digits("q");
  const auto blk = B > 0 ? l.word_digits("block") : std::vector<int>{};
  p.stages = {StagePlan{"images-pixels", m, z, concat(q, blk), false}};
  p.diffusion = DiffusionPlan{KeyFormula::ququart, chaos::System::yan7d, m, z, {}, q, blk, false};
  return p;
}

SchemePlan three_stage(const PresetOptions& o) {
  const int k = o.n > 0 ? o.n : (o.full ? 3 : 2);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {plain("x", {{Field::col, 3 * k}}, 3), plain("y", {{Field::row, 3 * k}}, 3),
             curve("triple", {Field::color, Field::image, Field::plane}, k)};
  set_palette(l, 1 << k);
  const int B = block_digits_for(default_images(l, o), l.images_per_block(), 3);
  if (B > 0) l.words.push_back(plain("block", {{Field::block, 3 * B}}, 3));

  const auto x = l.word_digits("x"), y = l.word_digits("y"), tr = l.word_digits("triple");
  const auto blk = B > 0 ? l.word_digits("block") : std::vector<int>{};
  p.stages = {StagePlan{"x-triple", x, tr, {}, false}, StagePlan{"y-triple", y, tr, {}, false},
              StagePlan{"x-y", x, y, {}, false}};
  p.diffusion = DiffusionPlan{KeyFormula::triple_bit, chaos::System::wang4d, x, y, tr, {}, blk, false};
  return p;
}

SchemePlan mixed_a(const PresetOptions& o) {
  const int m = o.n > 0 ? o.n : (o.full ? 9 : 5);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {curve("k", {Field::col, Field::row, Field::image}, m), plain("plane", {{Field::plane, 3}}, 3)};
  set_rgb(l, 1);
  const int B = block_digits_for(default_images(l, o), l.images_per_block(), 3);
  if (B > 0) l.words.push_back(plain("block", {{Field::block, 3 * B}}, 3));

  const auto k = l.word_digits("k"), pl = l.word_digits("plane");
  const auto blk = B > 0 ? l.word_digits("block") : std::vector<int>{};
  p.stages = {mixed_stage(concat(k, pl))};
  p.diffusion = DiffusionPlan{KeyFormula::triple_rgb24, chaos::System::wang4d, k, {}, {}, pl, blk, false};
  return p;
}

SchemePlan mixed_b(const PresetOptions& o) {
  const int m = o.n > 0 ? o.n : (o.full ? 8 : 4);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {curve("k", {Field::col, Field::row, Field::image}, m), plain("color", {{Field::color, 3}}, 3),
             plain("plane", {{Field::plane, 3}}, 3)};
  set_palette(l, 8);
  const int B = block_digits_for(default_images(l, o), l.images_per_block(), 3);
  if (B > 0) l.words.push_back(plain("block", {{Field::block, 3 * B}}, 3));

  const auto k = l.word_digits("k"), c = l.word_digits("color"), pl = l.word_digits("plane");
  const auto blk = B > 0 ? l.word_digits("block") : std::vector<int>{};
  p.stages = {mixed_stage(concat(concat(k, c), pl))};
  // one chaotic system per palette color (and per block)
  p.diffusion = DiffusionPlan{KeyFormula::triple_byte, chaos::System::wang4d, k, {}, {}, pl, concat(c, blk), false};
  return p;
}

SchemePlan mixed_c(const PresetOptions& o) {
  const int a = o.n > 0 ? o.n : (o.full ? 3 : 1);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {plain("pixel", {{Field::row, 3 * a}, {Field::col, 3 * a}}, 3),
             curve("triple", {Field::image, Field::color, Field::plane}, 4)};
  set_palette(l, 16);
  const int B = block_digits_for(default_images(l, o), l.images_per_block(), 3);
  if (B > 0) l.words.push_back(plain("block", {{Field::block, 3 * B}}, 3));

  const auto px = l.word_digits("pixel"), tr = l.word_digits("triple");
  const auto blk = B > 0 ? l.word_digits("block") : std::vector<int>{};
  p.stages = {mixed_stage(concat(px, tr))};
  const auto col = range(px, 0, static_cast<std::size_t>(a)), row = range(px, static_cast<std::size_t>(a), static_cast<std::size_t>(a));
  p.diffusion = DiffusionPlan{KeyFormula::triple_bit, chaos::System::wang4d, col, row, tr, {}, blk, false};
  return p;
}

AxisLayout alpha_layout(int c) {
  AxisLayout l;
  l.d = 3;
  l.words = {curve("k", {Field::col, Field::row, Field::image}, c), plain("block", {{Field::block, 3 * (c / 2)}}, 3),
             plain("plane", {{Field::plane, 3}}, 3)};
  set_rgb(l, 1);
  return l;
}

SchemePlan alpha(const PresetOptions& o, bool mixed) {
  const int c = o.n > 0 ? o.n : (o.full ? 8 : 4);
  if (c % 2 != 0) throw std::invalid_argument("alpha preset: size parameter must be even");
  SchemePlan p;
  p.full = o.full;
  p.layout = alpha_layout(c);
  const AxisLayout& l = p.layout;
  const auto k = l.word_digits("k"), blk = l.word_digits("block"), pl = l.word_digits("plane");
  const auto h = static_cast<std::size_t>(c / 2);
  const auto A = range(k, 0, h), Bh = range(k, h, h);
  if (mixed) {
    p.stages = {mixed_stage(concat(k, blk))};
  } else {
    p.stages = {StagePlan{"low-block", A, blk, {}, false}, StagePlan{"high-block", Bh, blk, {}, false},
                StagePlan{"low-high", A, Bh, {}, false}};
  }
  // same diffusion in every block
  p.diffusion = DiffusionPlan{KeyFormula::triple_rgb24, chaos::System::wang4d, k, {}, {}, pl, {}, false};
  return p;
}

SchemePlan beta(const PresetOptions& o) {
  const int a = o.n > 0 ? o.n : (o.full ? 3 : 1);
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {plain("pixel", {{Field::row, 3 * a}, {Field::col, 3 * a}}, 3), plain("images", {{Field::image, 9}}, 3),
             curve("triple", {Field::block, Field::color, Field::plane}, 3)};
  set_palette(l, 8);
  const auto px = l.word_digits("pixel"), im = l.word_digits("images"), tr = l.word_digits("triple");
  p.stages = {StagePlan{"triple-images", tr, im, {}, false}};
  const auto col = range(px, 0, static_cast<std::size_t>(a)), row = range(px, static_cast<std::size_t>(a), static_cast<std::size_t>(a));
  p.diffusion = DiffusionPlan{KeyFormula::triple_bit, chaos::System::wang4d, col, row, tr, {}, {}, false};
  return p;
}

SchemePlan beta_mixed(const PresetOptions& o) {
  const int c = o.n > 0 ? o.n : (o.full ? 8 : 2);
  const std::size_t ctrl = o.full ? 3 : 2;
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {curve("triple", {Field::image, Field::color, Field::plane}, 4),
             curve("k", {Field::block, Field::col, Field::row}, c)};
  set_palette(l, 16);
  const auto tr = l.word_digits("triple"), k = l.word_digits("k");
  if (k.size() < ctrl) throw std::invalid_argument("beta-mixed preset: size parameter too small");
  p.stages = {mixed_stage(concat(tr, k))};
  p.diffusion = DiffusionPlan{KeyFormula::pair_bit, chaos::System::wang4d, top(tr, ctrl), top(k, ctrl), {}, {}, {}, false};
  return p;
}

SchemePlan monster(const PresetOptions& o) {
  const int c = o.n > 0 ? o.n : (o.full ? 8 : 3);
  const std::size_t ctrl = o.full ? 3 : 2;
  SchemePlan p;
  p.full = o.full;
  AxisLayout& l = p.layout;
  l.d = 3;
  l.words = {curve("k", {Field::col, Field::row, Field::block}, c), plain("images", {{Field::image, 3 * c}}, 3),
             plain("plane", {{Field::plane, 3}}, 3)};
  set_rgb(l, 1);
  const auto k = l.word_digits("k"), im = l.word_digits("images"), pl = l.word_digits("plane");
  if (k.size() < ctrl) throw std::invalid_argument("monster preset: size parameter too small");
  p.stages = {StagePlan{"pixels-images", k, im, {}, false}};
  p.diffusion = DiffusionPlan{KeyFormula::pair_byte, chaos::System::wang4d, top(k, ctrl), top(im, ctrl), {}, pl, {}, true};
  return p;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> m = {
      {"three-stage", "scheme1"}, {"mixed-a", "scheme2"},         {"mixed-b", "scheme3"},
      {"mixed-c", "scheme4"},     {"alpha", "scheme5"},           {"alpha-mixed", "scheme5-mixed"},
      {"beta", "scheme6"},        {"beta-mixed", "scheme6-mixed"}, {"monster", "scheme7"},
  };
  return m;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"ququart", "ququart-gray", "ququart-neqr", "scheme1", "scheme2",       "scheme3",
          "scheme4", "scheme5",      "scheme5-mixed", "scheme6", "scheme6-mixed", "scheme7"};
}

std::string canonical_preset(const std::string& name) {
  const auto it = aliases().find(name);
  const std::string canon = it == aliases().end() ? name : it->second;
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), canon) == names.end())
    throw std::invalid_argument("unknown preset '" + name + "'");
  return canon;
}

SchemePlan preset(const std::string& name, const PresetOptions& opts) {
  const std::string canon = canonical_preset(name);
  SchemePlan p;
  if (canon == "ququart") p = ququart(opts, false, false);
  else if (canon == "ququart-gray") p = ququart(opts, true, false);
  else if (canon == "ququart-neqr") p = ququart(opts, true, true);
  else if (canon == "scheme1") p = three_stage(opts);
  else if (canon == "scheme2") p = mixed_a(opts);
  else if (canon == "scheme3") p = mixed_b(opts);
  else if (canon == "scheme4") p = mixed_c(opts);
  else if (canon == "scheme5") p = alpha(opts, false);
  else if (canon == "scheme5-mixed") p = alpha(opts, true);
  else if (canon == "scheme6") p = beta(opts);
  else if (canon == "scheme6-mixed") p = beta_mixed(opts);
  else p = monster(opts);
  p.name = canon;
  p.layout.validate();
  if (opts.images > p.layout.capacity())
    throw std::invalid_argument("preset " + canon + ": " + std::to_string(opts.images) +
                                " images exceed its capacity of " + std::to_string(p.layout.capacity()));
  return p;
}

}  // namespace qcrypt
