#include "qcrypt/container.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "qcrypt/error.hpp"

namespace qcrypt {

namespace {

constexpr char kMagic[8] = {'Q', 'D', 'C', 'I', 'P', 'H', 'E', 'R'};
constexpr std::size_t kHeaderSize = 64;

template <class T>
void put_le(unsigned char*& p, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) *p++ = static_cast<unsigned char>(v >> (8 * i));
}

template <class T>
T get_le(const unsigned char*& p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(*p++) << (8 * i);
  return v;
}

}  // namespace

ContainerHeader ContainerHeader::of(const AxisLayout& layout) {
  if (layout.words.size() > kMaxWords) throw std::invalid_argument("container: too many address words");
  ContainerHeader h;
  h.radix = layout.radix();
  h.word_count = static_cast<std::uint32_t>(layout.words.size());
  for (std::size_t i = 0; i < layout.words.size(); ++i) h.word_digits[i] = static_cast<std::uint32_t>(layout.words[i].digits);
  h.value_digits = static_cast<std::uint32_t>(layout.value_digits());
  h.cell_count = layout.cell_count();
  return h;
}

void write_container(std::ostream& out, const MultiImageState& state) {
  const ContainerHeader h = ContainerHeader::of(state.layout);
  if (state.cells.size() != h.cell_count) throw std::invalid_argument("container: state size does not match its layout");
  unsigned char buf[kHeaderSize] = {};
  std::memcpy(buf, kMagic, sizeof kMagic);
  unsigned char* p = buf + sizeof kMagic;
  put_le(p, h.version);
  put_le(p, h.radix);
  put_le(p, h.word_count);
  for (const auto w : h.word_digits) put_le(p, w);
  put_le(p, h.value_digits);
  put_le(p, h.cell_count);
  out.write(reinterpret_cast<const char*>(buf), kHeaderSize);
  out.write(reinterpret_cast<const char*>(state.cells.data()), static_cast<std::streamsize>(state.cells.size()));
  if (!out) throw DataError("container: write failed");
}

RawContainer read_container(std::istream& in) {
  unsigned char buf[kHeaderSize];
  if (!in.read(reinterpret_cast<char*>(buf), kHeaderSize)) throw DataError("container: truncated header");
  if (std::memcmp(buf, kMagic, sizeof kMagic) != 0) throw DataError("container: bad magic");
  const unsigned char* p = buf + sizeof kMagic;
  RawContainer raw;
  ContainerHeader& h = raw.header;
  h.version = get_le<std::uint32_t>(p);
  if (h.version != ContainerHeader::kVersion) throw DataError("container: unsupported version " + std::to_string(h.version));
  h.radix = get_le<std::uint32_t>(p);
  h.word_count = get_le<std::uint32_t>(p);
  for (auto& w : h.word_digits) w = get_le<std::uint32_t>(p);
  h.value_digits = get_le<std::uint32_t>(p);
  h.cell_count = get_le<std::uint64_t>(p);
  if (h.radix != 4 && h.radix != 8) throw DataError("container: radix must be 4 or 8");
  if (h.word_count > ContainerHeader::kMaxWords) throw DataError("container: bad word count");
  if (h.cell_count > (std::uint64_t{1} << 34)) throw DataError("container: implausible cell count");
  raw.cells.resize(h.cell_count);
  if (!in.read(reinterpret_cast<char*>(raw.cells.data()), static_cast<std::streamsize>(h.cell_count)))
    throw DataError("container: truncated digit data");
  if (std::any_of(raw.cells.begin(), raw.cells.end(), [&](std::uint8_t v) { return v >= h.radix; }))
    throw DataError("container: digit out of range");
  return raw;
}

void save_container(const std::filesystem::path& path, const MultiImageState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write container " + path.string());
  write_container(out, state);
}

RawContainer load_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open container " + path.string());
  return read_container(in);
}

MultiImageState to_state(RawContainer raw, const AxisLayout& layout) {
  if (!raw.header.matches(layout)) throw DataError("container: layout does not match the key's preset");
  MultiImageState st;
  st.layout = layout;
  st.cells = std::move(raw.cells);
  st.blank.assign(layout.capacity(), false);
  st.image_count = layout.capacity();
  return st;
}

}  // namespace qcrypt
