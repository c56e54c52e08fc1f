#include "qcrypt/keyfile.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcrypt/error.hpp"

namespace qcrypt {

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

std::string ints(const std::vector<int>& v) {
  return join(v, [](int x) { return std::to_string(x); });
}

std::string reals(const std::vector<double>& v) { return join(v, real); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Parser {
  int line_no = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("key file line " + std::to_string(line_no) + ": " + what);
  }

  template <class T>
  T integer(const std::string& s) const {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }

  double number(const std::string& s) const {
    if (s.empty()) fail("empty real");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail("bad real '" + s + "'");
    return v;
  }

  template <class F>
  auto list(const std::string& s, F item) const {
    std::vector<decltype(item(std::string{}))> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      out.push_back(item(trim(s.substr(start, comma - start))));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  std::vector<int> int_list(const std::string& s) const {
    return list(s, [this](const std::string& x) { return integer<int>(x); });
  }
  std::vector<double> real_list(const std::string& s) const {
    return list(s, [this](const std::string& x) { return number(x); });
  }
};

// "stage.3.entry.7" -> {"stage", 3, "entry", 7}
std::vector<std::string> split_dots(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) out.push_back(part);
  return out;
}

}  // namespace

void write_key(std::ostream& out, const KeyFile& key) {
  out << "version = " << key.version << '\n';
  out << "preset = " << key.preset << '\n';
  out << "scale = " << (key.full ? "full" : "desk") << '\n';
  out << "n = " << key.n << '\n';
  out << "images = " << key.images << '\n';
  if (!key.seeds.empty() || key.plaintext_count > 0) {
    out << "\n[plaintext]\n";
    out << "count = " << key.plaintext_count << '\n';
    for (std::size_t i = 0; i < key.seeds.size(); ++i) out << "seed." << i << " = " << reals(key.seeds[i]) << '\n';
  }
  for (std::size_t s = 0; s < key.stages.size(); ++s) {
    const auto& st = key.stages[s];
    out << "\n[stage." << s << "]\n";
    out << "radix = " << st.radix << '\n';
    out << "left = " << ints(st.left) << '\n';
    out << "right = " << ints(st.right) << '\n';
    for (std::size_t e = 0; e < st.entries.size(); ++e) {
      out << "[stage." << s << ".entry." << e << "]\n";
      out << "partition = " << ints(st.entries[e].partition.parts) << '\n';
      out << "iterations = " << st.entries[e].iterations << '\n';
    }
  }
  for (std::size_t b = 0; b < key.blocks.size(); ++b) {
    out << "\n[block." << b << "]\n";
    out << "f = " << real(key.blocks[b].f) << '\n';
    for (std::size_t c = 0; c < key.blocks[b].gains.size(); ++c)
      out << "gains." << c << " = " << reals(key.blocks[b].gains[c]) << '\n';
  }
}

KeyFile read_key(std::istream& in) {
  KeyFile key;
  Parser P;
  std::string line;
  std::vector<std::string> section;
  bool saw_version = false;
  while (std::getline(in, line)) {
    ++P.line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!saw_version && line.rfind("version", 0) != 0) P.fail("the version line must come first");
    if (line.front() == '[') {
      if (line.back() != ']') P.fail("unterminated section header");
      section = split_dots(line.substr(1, line.size() - 2));
      const auto& s = section;
      if (s.size() == 1 && s[0] == "plaintext") continue;
      if (s.size() == 2 && s[0] == "stage") {
        if (P.integer<std::size_t>(s[1]) != key.stages.size()) P.fail("stage sections out of order");
        key.stages.emplace_back();
        continue;
      }
      if (s.size() == 4 && s[0] == "stage" && s[2] == "entry") {
        if (key.stages.empty() || P.integer<std::size_t>(s[1]) != key.stages.size() - 1 ||
            P.integer<std::size_t>(s[3]) != key.stages.back().entries.size())
          P.fail("entry sections out of order");
        key.stages.back().entries.emplace_back();
        continue;
      }
      if (s.size() == 2 && s[0] == "block") {
        if (P.integer<std::size_t>(s[1]) != key.blocks.size()) P.fail("block sections out of order");
        key.blocks.emplace_back();
        continue;
      }
      P.fail("unknown section '" + line + "'");
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) P.fail("expected 'key = value'");
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));

    if (section.empty()) {
      if (k == "version") {
        key.version = P.integer<int>(v);
        if (key.version != KeyFile::kVersion) P.fail("unsupported key file version " + v);
        saw_version = true;
      } else if (k == "preset") {
        key.preset = v;
      } else if (k == "scale") {
        if (v != "full" && v != "desk") P.fail("scale must be 'full' or 'desk'");
        key.full = v == "full";
      } else if (k == "n") {
        key.n = P.integer<int>(v);
      } else if (k == "images") {
        key.images = P.integer<std::uint64_t>(v);
      } else {
        P.fail("unknown field '" + k + "'");
      }
    } else if (section[0] == "plaintext") {
      if (k == "count") {
        key.plaintext_count = P.integer<std::uint64_t>(v);
      } else if (k.rfind("seed.", 0) == 0) {
        if (P.integer<std::size_t>(k.substr(5)) != key.seeds.size()) P.fail("seeds out of order");
        key.seeds.push_back(P.real_list(v));
      } else {
        P.fail("unknown plaintext field '" + k + "'");
      }
    } else if (section[0] == "stage" && section.size() == 2) {
      if (k == "radix") key.stages.back().radix = P.integer<unsigned>(v);
      else if (k == "left") key.stages.back().left = P.int_list(v);
      else if (k == "right") key.stages.back().right = P.int_list(v);
      else P.fail("unknown stage field '" + k + "'");
    } else if (section[0] == "stage") {
      auto& e = key.stages.back().entries.back();
      if (k == "partition") e.partition.parts = P.int_list(v);
      else if (k == "iterations") e.iterations = P.integer<std::uint64_t>(v);
      else P.fail("unknown entry field '" + k + "'");
    } else {
      auto& b = key.blocks.back();
      if (k == "f") {
        b.f = P.number(v);
      } else if (k.rfind("gains.", 0) == 0) {
        if (P.integer<std::size_t>(k.substr(6)) != b.gains.size()) P.fail("gains out of order");
        b.gains.push_back(P.real_list(v));
      } else {
        P.fail("unknown block field '" + k + "'");
      }
    }
  }
  if (!saw_version) throw DataError("key file: missing version line");
  if (key.preset.empty()) throw DataError("key file: missing preset");
  for (auto& st : key.stages)
    for (auto& e : st.entries) {
      e.partition.base = st.radix;
      e.partition.n = static_cast<int>(st.left.size());
    }
  return key;
}

void save_key(const std::filesystem::path& path, const KeyFile& key) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write key file " + path.string());
  write_key(out, key);
  if (!out) throw DataError("failed writing key file " + path.string());
}

KeyFile load_key(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open key file " + path.string());
  return read_key(in);
}

void check_key(const SchemePlan& plan, const KeyFile& key) {
  const unsigned t = plan.layout.radix();
  if (key.stages.size() != plan.stages.size()) throw DataError("key: stage count does not match the preset");
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const auto& sp = plan.stages[s];
    const auto& sk = key.stages[s];
    const std::string where = "key stage " + std::to_string(s) + ": ";
    if (sk.left.size() != sp.left.size() || sk.right.size() != sp.right.size())
      throw DataError(where + "selection sizes do not match the preset");
    if (sp.mixed) {
      auto want = sp.left;
      want.insert(want.end(), sp.right.begin(), sp.right.end());
      auto got = sk.left;
      got.insert(got.end(), sk.right.begin(), sk.right.end());
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) throw DataError(where + "split is not a partition of the stage digits");
    } else if (sk.left != sp.left || sk.right != sp.right) {
      throw DataError(where + "selection differs from the preset");
    }
    if (sk.radix != t) throw DataError(where + "radix does not match the preset");
    if (sk.entries.size() != plan.stage_entries(s)) throw DataError(where + "wrong number of entries");
    for (const auto& e : sk.entries) {
      BakerPartition p{t, static_cast<int>(sk.left.size()), e.partition.parts};
      try {
        if (!is_admissible(p)) throw DataError(where + "inadmissible partition");
      } catch (const std::invalid_argument& ex) {
        throw DataError(where + ex.what());
      }
      if (e.iterations < 1) throw DataError(where + "iterations must be >= 1");
    }
  }
  const std::uint64_t blocks = plan.system_count() / static_cast<std::uint64_t>(plan.systems_per_block());
  if (key.blocks.size() != blocks) throw DataError("key: expected " + std::to_string(blocks) + " block sections");
  const std::size_t dim = plan.diffusion.system == chaos::System::yan7d ? 7 : 4;
  for (const auto& b : key.blocks) {
    if (b.gains.size() != static_cast<std::size_t>(plan.systems_per_block()))
      throw DataError("key: wrong number of gain vectors in a block section");
    for (const auto& g : b.gains)
      if (g.size() != dim) throw DataError("key: gain vector has the wrong dimension");
  }
}

KeyFile generate_key(const SchemePlan& plan, const PresetOptions& opts, std::mt19937_64& rng,
                     const KeygenOptions& kopts) {
  KeyFile key;
  key.preset = plan.name;
  key.full = opts.full;
  key.n = opts.n;
  key.images = opts.images > 0 ? opts.images : plan.layout.images_per_block();
  const unsigned t = plan.layout.radix();
  std::uniform_int_distribution<std::uint64_t> iters(1, std::max<std::uint64_t>(1, kopts.max_iterations));
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const auto& sp = plan.stages[s];
    StageKey sk{t, sp.left, sp.right, {}};
    if (sp.mixed) {
      auto pool = sp.left;
      pool.insert(pool.end(), sp.right.begin(), sp.right.end());
      std::shuffle(pool.begin(), pool.end(), rng);
      sk.left.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(sp.left.size()));
      sk.right.assign(pool.begin() + static_cast<std::ptrdiff_t>(sp.left.size()), pool.end());
    }
    const auto n = static_cast<int>(sp.left.size());
    for (std::uint64_t e = 0; e < plan.stage_entries(s); ++e)
      sk.entries.push_back(StageEntry{sample_admissible(t, n, rng), iters(rng)});
    key.stages.push_back(std::move(sk));
  }
  std::uniform_real_distribution<double> gain(0.5, 7.5);
  std::uniform_real_distribution<double> fcoef(6.3, 15.3);
  const std::size_t dim = plan.diffusion.system == chaos::System::yan7d ? 7 : 4;
  const std::uint64_t blocks = plan.system_count() / static_cast<std::uint64_t>(plan.systems_per_block());
  for (std::uint64_t b = 0; b < blocks; ++b) {
    BlockKey bk;
    for (int c = 0; c < plan.systems_per_block(); ++c) {
      std::vector<double> g(dim);
      for (auto& v : g) v = gain(rng);
      bk.gains.push_back(std::move(g));
    }
    if (plan.diffusion.system == chaos::System::yan7d) {
      double f = fcoef(rng);
      while (f <= 6.3) f = fcoef(rng);
      bk.f = f;
    }
    key.blocks.push_back(std::move(bk));
  }
  return key;
}

}  // namespace qcrypt
